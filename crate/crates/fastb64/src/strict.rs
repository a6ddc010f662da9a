//! Canonical-encoding validation of the final quad.
//!
//! A padded base64 string decodes successfully as long as every character is
//! in the alphabet and the pads sit at the end, yet it may still not be the
//! encoding of *any* byte string: the unused low bits of the last data
//! character must be zero. These checks are opt-in (`strict` in
//! [`CodecConfig`](crate::config::CodecConfig)) because the base64 standard
//! does not require them.

use crate::alphabet::Alphabet;
use crate::config::Padding;
use crate::error::DecodeError;

/// With two pads the final group carries one payload byte; the second
/// character contributes its high 2 bits and the remaining 4 must be zero:
/// `(A(c) * 16) % 256 == 0`.
#[inline]
pub(crate) fn two_pad_bits_ok(value: u8) -> bool {
    (u32::from(value) * 16) % 256 == 0
}

/// With one pad the final group carries two payload bytes; the third
/// character's low 2 bits must be zero: `(A(c) * 64) % 256 == 0`.
#[inline]
pub(crate) fn one_pad_bits_ok(value: u8) -> bool {
    (u32::from(value) * 64) % 256 == 0
}

/// Validates the final four characters of a padded stream.
///
/// Accepts exactly the quads that can appear at the end of an encoder's
/// output: zero, one or two trailing pads, with zero trailing bits beyond
/// the payload. Error offsets are relative to the quad.
pub fn validate_final_quad(quad: &[u8; 4], alphabet: &Alphabet) -> Result<(), DecodeError> {
    let mut sink = Vec::with_capacity(3);
    crate::scalar::decode_tail_group(&mut sink, quad, alphabet, Padding::Required, true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::STANDARD;
    use crate::config::CodecConfig;
    use crate::error::DecodeErrorKind;
    use crate::scalar;

    #[test]
    fn accepts_canonical_two_pad() {
        // 'g' = 32 and 32 * 16 = 512 is divisible by 256.
        assert!(validate_final_quad(b"Zg==", &STANDARD).is_ok());
    }

    #[test]
    fn rejects_noncanonical_two_pad() {
        // 'h' = 33 and 33 * 16 = 528 leaves a remainder of 16.
        let err = validate_final_quad(b"Zh==", &STANDARD).unwrap_err();
        assert_eq!(err.kind, DecodeErrorKind::NonCanonicalTrailingBits);
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn accepts_unpadded_quad() {
        assert!(validate_final_quad(b"AAAA", &STANDARD).is_ok());
    }

    #[test]
    fn rejects_three_pads() {
        let err = validate_final_quad(b"A===", &STANDARD).unwrap_err();
        assert_eq!(err.kind, DecodeErrorKind::InvalidPadding);
        assert_eq!(err.offset, 1);
    }

    #[test]
    fn one_pad_cases() {
        assert!(validate_final_quad(b"Zm8=", &STANDARD).is_ok());
        let err = validate_final_quad(b"Zm9=", &STANDARD).unwrap_err();
        assert_eq!(err.kind, DecodeErrorKind::NonCanonicalTrailingBits);
        assert_eq!(err.offset, 2);
    }

    #[test]
    fn accepts_every_encoder_tail() {
        // The final quad of any encoding passes, exhaustively over the
        // payloads that produce each pad pattern.
        let cfg = CodecConfig::default();
        for b0 in 0..=255u8 {
            let text = scalar::encode(&[b0], &cfg);
            let quad: &[u8; 4] = text.as_slice().try_into().unwrap();
            assert!(validate_final_quad(quad, &STANDARD).is_ok(), "input {b0}");
            let text = scalar::encode(&[0x55, b0], &cfg);
            let quad: &[u8; 4] = text.as_slice().try_into().unwrap();
            assert!(
                validate_final_quad(quad, &STANDARD).is_ok(),
                "input 55 {b0}"
            );
            let text = scalar::encode(&[0x55, 0xAA, b0], &cfg);
            let quad: &[u8; 4] = text.as_slice().try_into().unwrap();
            assert!(
                validate_final_quad(quad, &STANDARD).is_ok(),
                "input 55 aa {b0}"
            );
        }
    }
}

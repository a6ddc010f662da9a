//! Base64 alphabets: the 64-entry value-to-character map, its 256-entry
//! inverse, and the padding character.
//!
//! Two variants are supported: the standard alphabet (`+`, `/`) and the
//! url-safe alphabet (`-`, `_`). The inverse table marks every byte outside
//! the alphabet with [`INVALID`]; the padding character is also `INVALID`
//! because padding is handled structurally by the decoders, never through
//! the value table.

/// Sentinel stored in the inverse table for bytes outside the alphabet.
///
/// Any value >= 64 would do; using a single constant makes membership a
/// one-comparison check.
pub const INVALID: u8 = 0xFF;

/// The padding character `'='`.
pub const PAD: u8 = b'=';

/// Which 64-character alphabet is in use.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    /// `A-Z a-z 0-9 + /`
    #[default]
    Standard,
    /// `A-Z a-z 0-9 - _`
    UrlSafe,
}

/// Forward and inverse character tables for one alphabet variant.
pub struct Alphabet {
    forward: [u8; 64],
    inverse: [u8; 256],
    variant: Variant,
}

pub(crate) const STANDARD_CHARS: &[u8; 64] =
    b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789+/";
pub(crate) const URL_SAFE_CHARS: &[u8; 64] =
    b"ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789-_";

const fn build_inverse(forward: &[u8; 64]) -> [u8; 256] {
    let mut table = [INVALID; 256];
    let mut v = 0;
    while v < 64 {
        table[forward[v] as usize] = v as u8;
        v += 1;
    }
    table
}

/// The standard alphabet.
pub static STANDARD: Alphabet = Alphabet {
    forward: *STANDARD_CHARS,
    inverse: build_inverse(STANDARD_CHARS),
    variant: Variant::Standard,
};

/// The url-safe alphabet.
pub static URL_SAFE: Alphabet = Alphabet {
    forward: *URL_SAFE_CHARS,
    inverse: build_inverse(URL_SAFE_CHARS),
    variant: Variant::UrlSafe,
};

impl Alphabet {
    /// Returns the alphabet for a variant.
    pub fn for_variant(variant: Variant) -> &'static Alphabet {
        match variant {
            Variant::Standard => &STANDARD,
            Variant::UrlSafe => &URL_SAFE,
        }
    }

    /// Maps a 6-bit value to its ASCII character. Callers must pass `v < 64`.
    #[inline]
    pub fn lookup_forward(&self, v: u8) -> u8 {
        debug_assert!(v < 64);
        self.forward[v as usize]
    }

    /// Maps an ASCII byte to its 6-bit value, or [`INVALID`].
    #[inline]
    pub fn lookup_inverse(&self, b: u8) -> u8 {
        self.inverse[b as usize]
    }

    /// True when `b` is one of the 64 data characters.
    #[inline]
    pub fn is_data_char(&self, b: u8) -> bool {
        self.inverse[b as usize] != INVALID
    }

    /// The variant this alphabet encodes.
    pub fn variant(&self) -> Variant {
        self.variant
    }

    #[cfg(test)]
    pub(crate) fn forward_table(&self) -> &[u8; 64] {
        &self.forward
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn forward_matches_standard_table() {
        assert_eq!(STANDARD.lookup_forward(17), b'R');
        assert_eq!(STANDARD.lookup_forward(0), b'A');
        assert_eq!(STANDARD.lookup_forward(25), b'Z');
        assert_eq!(STANDARD.lookup_forward(26), b'a');
        assert_eq!(STANDARD.lookup_forward(51), b'z');
        assert_eq!(STANDARD.lookup_forward(52), b'0');
        assert_eq!(STANDARD.lookup_forward(61), b'9');
        assert_eq!(STANDARD.lookup_forward(62), b'+');
        assert_eq!(STANDARD.lookup_forward(63), b'/');
    }

    #[test]
    fn url_safe_differs_only_at_62_and_63() {
        for v in 0..62 {
            assert_eq!(STANDARD.lookup_forward(v), URL_SAFE.lookup_forward(v));
        }
        assert_eq!(URL_SAFE.lookup_forward(62), b'-');
        assert_eq!(URL_SAFE.lookup_forward(63), b'_');
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(STANDARD.lookup_inverse(b'R'), 17);
        assert_eq!(STANDARD.lookup_inverse(b'='), INVALID);
        assert_eq!(STANDARD.lookup_inverse(0xC3), INVALID);
        assert_eq!(URL_SAFE.lookup_inverse(b'-'), 62);
        assert_eq!(URL_SAFE.lookup_inverse(b'+'), INVALID);
    }

    #[test]
    fn round_trip_both_variants() {
        for alpha in [&STANDARD, &URL_SAFE] {
            for v in 0..64u8 {
                assert_eq!(alpha.lookup_inverse(alpha.lookup_forward(v)), v);
            }
        }
    }

    #[test]
    fn inverse_valid_iff_in_forward_image() {
        for alpha in [&STANDARD, &URL_SAFE] {
            for b in 0..=255u8 {
                let in_image = alpha.forward_table().contains(&b);
                assert_eq!(
                    alpha.lookup_inverse(b) != INVALID,
                    in_image,
                    "byte {b:#04x}"
                );
            }
        }
    }
}

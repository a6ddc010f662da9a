//! Vectorized decoder: 32 base64 characters become 24 bytes per iteration.
//!
//! Translation and validation run together ([`translate_from_ascii`]): the
//! low and high nibble of every character index two bitset tables whose AND
//! is zero exactly for alphabet characters, while a third table supplies the
//! per-range offset that turns the character into its 6-bit value. Packing
//! ([`pack_from_sixbit`]) merges the values with two multiply-add steps and
//! two shuffles.
//!
//! Validation only says *whether* a 32-byte block is clean; on failure the
//! block is rescanned bytewise for the exact offset. The final quads of the
//! stream never enter the vector loop (it stops 45 bytes short), so all
//! padding is handled by the scalar tail.

use crate::alphabet::{Alphabet, Variant, INVALID};
use crate::config::CodecConfig;
use crate::error::DecodeError;
use crate::scalar;
use crate::vector::{reference, VectorBackend, VectorBlock32};

// Valid characters by nibble pair: lut_lo[low] AND lut_hi[high] is zero
// exactly for bytes in the alphabet.
const LUT_LO_STANDARD: VectorBlock32 = VectorBlock32::from_lanes([
    0x15, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x13, 0x1A, 0x1B, 0x1B, 0x1B, 0x1A,
]);
const LUT_HI_STANDARD: VectorBlock32 = VectorBlock32::from_lanes([
    0x10, 0x10, 0x01, 0x02, 0x04, 0x08, 0x04, 0x08, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10,
]);

/// Offsets from ASCII to 6-bit value, indexed by high nibble; '/' shares
/// high nibble 2 with '+' and is shifted to index 1 by the equality mask.
const LUT_ROLL_STANDARD: VectorBlock32 =
    VectorBlock32::from_lanes_i8([0, 16, 19, 4, -65, -65, -71, -71, 0, 0, 0, 0, 0, 0, 0, 0]);

/// `'/'`; also serves as the nibble-extraction mask (only the low four bits
/// of a shuffle index matter, so the extra bit 5 is harmless).
const MASK_2F: VectorBlock32 = VectorBlock32::splat(0x2F);

// Url-safe tables. '-' is the only character with high nibble 2, and '_'
// (0x5F) joins 'P'..'Z' in high nibble 5, so nibble 5 and nibble 7 need
// distinct bits (0x08 and 0x20) to keep validation exact.
const LUT_LO_URL_SAFE: VectorBlock32 = VectorBlock32::from_lanes([
    0x15, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x11, 0x13, 0x3B, 0x3B, 0x3A, 0x3B, 0x33,
]);
const LUT_HI_URL_SAFE: VectorBlock32 = VectorBlock32::from_lanes([
    0x10, 0x10, 0x01, 0x02, 0x04, 0x08, 0x04, 0x20, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10, 0x10,
]);

/// Url-safe offsets by high nibble. '_' cannot share the nibble-5 offset of
/// 'P'..'Z' (-65 versus -32), so the roll maps the whole class to -65 and an
/// equality mask against '_' adds the missing 33 afterwards.
const LUT_ROLL_URL_SAFE: VectorBlock32 =
    VectorBlock32::from_lanes_i8([0, 0, 17, 4, -65, -65, -71, -71, 0, 0, 0, 0, 0, 0, 0, 0]);
const UNDERSCORE: VectorBlock32 = VectorBlock32::splat(0x5F);
const UNDERSCORE_FIX: VectorBlock32 = VectorBlock32::splat(33);

// Packing constants: pairwise 6-bit merges within 16-bit words, then within
// 32-bit words, then byte/word shuffles to make the 24 bytes contiguous.
const PACK_MADDUBS: VectorBlock32 = VectorBlock32::splat_u32(0x0140_0140);
const PACK_MADD: VectorBlock32 = VectorBlock32::splat_u32(0x0001_1000);
const PACK_SHUFFLE: VectorBlock32 =
    VectorBlock32::from_lanes_i8([2, 1, 0, 6, 5, 4, 10, 9, 8, 14, 13, 12, -1, -1, -1, -1]);
const PACK_PERMUTE: [i32; 8] = [0, 1, 2, 4, 5, 6, -1, -1];

/// The vector loop keeps running while at least this many bytes remain;
/// below it the scalar decoder handles everything, including padding.
const TAIL_THRESHOLD: usize = 45;

/// Maps 32 ASCII characters to their 6-bit values and reports whether every
/// byte is in the alphabet. When `ok` is true each output byte equals
/// `lookup_inverse` of the corresponding input byte; when false the values
/// are meaningless and at least one input byte is invalid.
pub fn translate_from_ascii(chars: VectorBlock32, variant: Variant) -> (bool, VectorBlock32) {
    let hi = reference::and(reference::shr32(chars, 4), MASK_2F);
    let lo_n = reference::and(chars, MASK_2F);
    match variant {
        Variant::Standard => {
            let lo = reference::shuffle_bytes_in_lanes(LUT_LO_STANDARD, lo_n);
            let hiv = reference::shuffle_bytes_in_lanes(LUT_HI_STANDARD, hi);
            let eq = reference::cmpeq_i8(chars, MASK_2F);
            let roll = reference::shuffle_bytes_in_lanes(
                LUT_ROLL_STANDARD,
                reference::add_i8_wrapping(eq, hi),
            );
            let ok = reference::testz(lo, hiv);
            (ok, reference::add_i8_wrapping(chars, roll))
        }
        Variant::UrlSafe => {
            let lo = reference::shuffle_bytes_in_lanes(LUT_LO_URL_SAFE, lo_n);
            let hiv = reference::shuffle_bytes_in_lanes(LUT_HI_URL_SAFE, hi);
            let roll = reference::shuffle_bytes_in_lanes(LUT_ROLL_URL_SAFE, hi);
            let eq = reference::cmpeq_i8(chars, UNDERSCORE);
            let ok = reference::testz(lo, hiv);
            let base = reference::add_i8_wrapping(chars, roll);
            let six = reference::add_i8_wrapping(base, reference::and(eq, UNDERSCORE_FIX));
            (ok, six)
        }
    }
}

/// Packs 32 six-bit values (one per byte, each < 64) into 24 output bytes,
/// equal to the scalar quad arithmetic applied in stream order.
pub fn pack_from_sixbit(sixbit: VectorBlock32) -> [u8; 24] {
    debug_assert!(sixbit.bytes().iter().all(|&b| b < 64));
    let merged = reference::maddubs(sixbit, PACK_MADDUBS);
    let words = reference::madd_i16(merged, PACK_MADD);
    let shuffled = reference::shuffle_bytes_in_lanes(words, PACK_SHUFFLE);
    let packed = reference::permute32_across_lanes(shuffled, PACK_PERMUTE);
    let mut out = [0u8; 24];
    packed.store24(&mut out);
    out
}

/// Hardware twin of [`translate_from_ascii`].
///
/// # Safety
/// Requires AVX2.
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
pub unsafe fn translate_from_ascii_accel(
    chars: VectorBlock32,
    variant: Variant,
) -> (bool, VectorBlock32) {
    use crate::vector::accel;
    let hi = accel::and(accel::shr32(chars, 4), MASK_2F);
    let lo_n = accel::and(chars, MASK_2F);
    match variant {
        Variant::Standard => {
            let lo = accel::shuffle_bytes_in_lanes(LUT_LO_STANDARD, lo_n);
            let hiv = accel::shuffle_bytes_in_lanes(LUT_HI_STANDARD, hi);
            let eq = accel::cmpeq_i8(chars, MASK_2F);
            let roll =
                accel::shuffle_bytes_in_lanes(LUT_ROLL_STANDARD, accel::add_i8_wrapping(eq, hi));
            let ok = accel::testz(lo, hiv);
            (ok, accel::add_i8_wrapping(chars, roll))
        }
        Variant::UrlSafe => {
            let lo = accel::shuffle_bytes_in_lanes(LUT_LO_URL_SAFE, lo_n);
            let hiv = accel::shuffle_bytes_in_lanes(LUT_HI_URL_SAFE, hi);
            let roll = accel::shuffle_bytes_in_lanes(LUT_ROLL_URL_SAFE, hi);
            let eq = accel::cmpeq_i8(chars, UNDERSCORE);
            let ok = accel::testz(lo, hiv);
            let base = accel::add_i8_wrapping(chars, roll);
            let six = accel::add_i8_wrapping(base, accel::and(eq, UNDERSCORE_FIX));
            (ok, six)
        }
    }
}

/// Hardware twin of [`pack_from_sixbit`].
///
/// # Safety
/// Requires AVX2.
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
pub unsafe fn pack_from_sixbit_accel(sixbit: VectorBlock32) -> [u8; 24] {
    use crate::vector::accel;
    let merged = accel::maddubs(sixbit, PACK_MADDUBS);
    let words = accel::madd_i16(merged, PACK_MADD);
    let shuffled = accel::shuffle_bytes_in_lanes(words, PACK_SHUFFLE);
    let packed = accel::permute32_across_lanes(shuffled, PACK_PERMUTE);
    let mut out = [0u8; 24];
    packed.store24(&mut out);
    out
}

/// Finds the exact error for a block that failed vector validation. Any
/// `'='` here is at least 13 bytes from the end of the input, so it can
/// never be legal padding.
fn rescan_block(window: &[u8], alpha: &Alphabet, base: usize) -> DecodeError {
    for (k, &ch) in window.iter().enumerate() {
        if alpha.lookup_inverse(ch) == INVALID {
            return scalar::reject_byte(ch, base + k);
        }
    }
    unreachable!("vector validation flagged a block with no invalid byte")
}

fn decode_blocks_emulated(
    out: &mut Vec<u8>,
    input: &[u8],
    variant: Variant,
) -> Result<usize, DecodeError> {
    let alpha = Alphabet::for_variant(variant);
    let n = input.len();
    let mut i = 0;
    while n - i >= TAIL_THRESHOLD {
        let chars = VectorBlock32::load(&input[i..]);
        let (ok, sixbit) = translate_from_ascii(chars, variant);
        if !ok {
            return Err(rescan_block(&input[i..i + 32], alpha, i));
        }
        out.extend_from_slice(&pack_from_sixbit(sixbit));
        i += 32;
    }
    Ok(i)
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
unsafe fn decode_blocks_accel(
    out: &mut Vec<u8>,
    input: &[u8],
    variant: Variant,
) -> Result<usize, DecodeError> {
    let alpha = Alphabet::for_variant(variant);
    let n = input.len();
    let mut i = 0;
    while n - i >= TAIL_THRESHOLD {
        let chars = VectorBlock32::load(&input[i..]);
        let (ok, sixbit) = translate_from_ascii_accel(chars, variant);
        if !ok {
            return Err(rescan_block(&input[i..i + 32], alpha, i));
        }
        out.extend_from_slice(&pack_from_sixbit_accel(sixbit));
        i += 32;
    }
    Ok(i)
}

/// Decodes with the vector kernel on the detected backend.
pub fn decode(input: &[u8], config: &CodecConfig) -> Result<Vec<u8>, DecodeError> {
    decode_with(input, config, VectorBackend::detect())
}

/// [`decode`] on an explicit backend.
pub fn decode_with(
    input: &[u8],
    config: &CodecConfig,
    backend: VectorBackend,
) -> Result<Vec<u8>, DecodeError> {
    let mut out = Vec::new();
    decode_into_with(&mut out, input, config, backend)?;
    Ok(out)
}

/// [`decode`], appending to a caller-owned buffer.
pub fn decode_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
) -> Result<(), DecodeError> {
    decode_into_with(out, input, config, VectorBackend::detect())
}

/// [`decode_into`] on an explicit backend. Results, error kinds and error
/// offsets are identical to [`scalar::decode`] for every input.
pub fn decode_into_with(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
    backend: VectorBackend,
) -> Result<(), DecodeError> {
    out.reserve(input.len() / 4 * 3 + 3);
    let consumed = match backend {
        VectorBackend::Emulated => decode_blocks_emulated(out, input, config.variant)?,
        VectorBackend::Accelerated => {
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            {
                assert!(
                    crate::vector::accelerated_available(),
                    "accelerated backend forced on a CPU without AVX2"
                );
                unsafe { decode_blocks_accel(out, input, config.variant)? }
            }
            #[cfg(not(any(target_arch = "x86", target_arch = "x86_64")))]
            {
                panic!("accelerated backend is not available on this architecture")
            }
        }
    };
    scalar::decode_into(out, &input[consumed..], config).map_err(|e| e.offset_by(consumed))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::DecodeErrorKind;

    const GOLDEN_BLOCK: &[u8; 32] = b"R0lGODlhAQABAIAAAP///wAAACwAAAAA";
    const GOLDEN_SIXBIT: [u8; 32] = [
        17, 52, 37, 6, 14, 3, 37, 33, 0, 16, 0, 1, 0, 8, 0, 0, 0, 15, 63, 63, 63, 48, 0, 0, 0, 2,
        48, 0, 0, 0, 0, 0,
    ];

    #[test]
    fn translate_golden_block() {
        let (ok, six) = translate_from_ascii(VectorBlock32::new(*GOLDEN_BLOCK), Variant::Standard);
        assert!(ok);
        assert_eq!(six.bytes(), GOLDEN_SIXBIT);
    }

    #[test]
    fn translate_all_a_block() {
        let (ok, six) = translate_from_ascii(VectorBlock32::splat(b'A'), Variant::Standard);
        assert!(ok);
        assert_eq!(six, VectorBlock32::splat(0));
    }

    #[test]
    fn pad_fails_block_validation() {
        let mut block = *GOLDEN_BLOCK;
        block[20] = b'=';
        let (ok, _) = translate_from_ascii(VectorBlock32::new(block), Variant::Standard);
        assert!(!ok);
    }

    #[test]
    fn validation_exact_over_all_bytes() {
        // Every byte value at every position: accepted exactly when the
        // byte is a data character of the variant.
        for variant in [Variant::Standard, Variant::UrlSafe] {
            let alpha = Alphabet::for_variant(variant);
            for pos in 0..32 {
                for b in 0..=255u8 {
                    let mut block = [b'A'; 32];
                    block[pos] = b;
                    let (ok, six) = translate_from_ascii(VectorBlock32::new(block), variant);
                    assert_eq!(
                        ok,
                        alpha.is_data_char(b),
                        "{variant:?} pos {pos} byte {b:#04x}"
                    );
                    if ok {
                        assert_eq!(six.bytes()[pos], alpha.lookup_inverse(b));
                    }
                }
            }
        }
    }

    #[test]
    fn pack_golden_block() {
        let packed = pack_from_sixbit(VectorBlock32::new(GOLDEN_SIXBIT));
        assert_eq!(
            packed,
            [
                71, 73, 70, 56, 57, 97, 1, 0, 1, 0, 128, 0, 0, 255, 255, 255, 0, 0, 0, 44, 0, 0, 0,
                0
            ]
        );
    }

    #[test]
    fn pack_boundary_values() {
        assert_eq!(pack_from_sixbit(VectorBlock32::splat(0)), [0u8; 24]);
        assert_eq!(pack_from_sixbit(VectorBlock32::splat(63)), [0xFF; 24]);
    }

    #[test]
    fn pack_matches_scalar_quad_packing() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x6B17);
        for _ in 0..100_000 {
            let sixbit: [u8; 32] = core::array::from_fn(|_| rng.gen_range(0..64));
            let packed = pack_from_sixbit(VectorBlock32::new(sixbit));
            let mut expected = [0u8; 24];
            for (quad, out) in sixbit.chunks_exact(4).zip(expected.chunks_exact_mut(3)) {
                out[0] = (quad[0] << 2) | (quad[1] >> 4);
                out[1] = (quad[1] << 4) | (quad[2] >> 2);
                out[2] = (quad[2] << 6) | quad[3];
            }
            assert_eq!(packed, expected);
        }
    }

    #[test]
    fn kernel_matches_scalar_including_errors() {
        let cfg = CodecConfig::default();
        for len in [0usize, 4, 44, 48, 64, 96, 200] {
            let data: Vec<u8> = (0..len).map(|i| (i * 89 + 3) as u8).collect();
            let text = scalar::encode(&data, &cfg);
            assert_eq!(
                decode_with(&text, &cfg, VectorBackend::Emulated).unwrap(),
                data,
                "len {len}"
            );
        }
        // A pad deep inside a long stream is found by rescan with the same
        // offset the scalar decoder reports.
        let mut text = scalar::encode(&[0xABu8; 120], &cfg);
        text[10] = b'=';
        let simd_err = decode_with(&text, &cfg, VectorBackend::Emulated).unwrap_err();
        let scalar_err = scalar::decode(&text, &cfg).unwrap_err();
        assert_eq!(simd_err, scalar_err);
        assert_eq!(simd_err.kind, DecodeErrorKind::InvalidPadding);
        assert_eq!(simd_err.offset, 10);
    }
}

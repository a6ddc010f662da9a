//! Vectorized encoder: 24 input bytes become 32 base64 characters per
//! iteration.
//!
//! Each block runs in two steps. First the 24 bytes are unpacked so every
//! 6-bit field lands right-aligned in its own byte ([`unpack_to_sixbit`]),
//! then the 32 values are translated to ASCII with range arithmetic instead
//! of a table lookup ([`translate_to_ascii`]). Heads shorter than a window
//! and tails under 28 bytes go through the scalar encoder.

use crate::alphabet::Variant;
use crate::config::CodecConfig;
use crate::scalar;
use crate::vector::{reference, VectorBackend, VectorBlock32};

/// Byte-shuffle indices that copy each lane's four 3-byte chunks into
/// separate 32-bit words as [byte1, byte0, byte2, byte1]. Indices assume
/// the window was loaded 4 bytes before the chunk data, so each lane holds
/// exactly four chunks.
const LANE_SHUFFLE: VectorBlock32 = VectorBlock32::new([
    5, 4, 6, 5, 8, 7, 9, 8, 11, 10, 12, 11, 14, 13, 15, 14, //
    1, 0, 2, 1, 4, 3, 5, 4, 7, 6, 8, 7, 10, 9, 11, 10,
]);

// Masks and 16-bit multipliers that move fields a and c right (via the
// high half of a multiply) and fields b and d left (via the low half).
const MASK_AC: VectorBlock32 = VectorBlock32::splat_u32(0x0FC0_FC00);
const MULHI_CONST: VectorBlock32 = VectorBlock32::splat_u32(0x0400_0040);
const MASK_BD: VectorBlock32 = VectorBlock32::splat_u32(0x003F_03F0);
const MULLO_CONST: VectorBlock32 = VectorBlock32::splat_u32(0x0100_0010);

/// Offsets from a 6-bit value to its ASCII code, indexed by the reduced
/// code: 0 for values 26-51 (+71), 1-10 for 52-61 (-4), 11 for 62, 12 for
/// 63, and 13 for 0-25 (+65).
const OFFSETS_STANDARD: VectorBlock32 = VectorBlock32::from_lanes_i8([
    71, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -19, -16, 65, 0, 0,
]);

/// Url-safe variant: only the rows for 62 ('-' is -17) and 63 ('_' is +32)
/// change.
const OFFSETS_URL_SAFE: VectorBlock32 = VectorBlock32::from_lanes_i8([
    71, -4, -4, -4, -4, -4, -4, -4, -4, -4, -4, -17, 32, 65, 0, 0,
]);

const SPLAT_51: VectorBlock32 = VectorBlock32::splat(51);
const SPLAT_26: VectorBlock32 = VectorBlock32::splat(26);
const SPLAT_13: VectorBlock32 = VectorBlock32::splat(13);

/// Below this many remaining input bytes the scalar tail takes over; the
/// window load needs 28 bytes past the current position.
const TAIL_THRESHOLD: usize = 28;

fn offsets_for(variant: Variant) -> VectorBlock32 {
    match variant {
        Variant::Standard => OFFSETS_STANDARD,
        Variant::UrlSafe => OFFSETS_URL_SAFE,
    }
}

/// Unpacks a window of eight 3-byte chunks (four per lane; the window
/// starts 4 bytes before the chunk data) into 32 six-bit values, one per
/// byte. Each 32-bit word of the result holds one chunk's fields as bytes
/// [a, b, c, d].
pub fn unpack_to_sixbit(window: VectorBlock32) -> VectorBlock32 {
    let chunks = reference::shuffle_bytes_in_lanes(window, LANE_SHUFFLE);
    let ac = reference::mulhi_u16(reference::and(chunks, MASK_AC), MULHI_CONST);
    let bd = reference::mullo_i16(reference::and(chunks, MASK_BD), MULLO_CONST);
    reference::or(ac, bd)
}

/// Translates 32 six-bit values (every byte must be < 64) to their ASCII
/// characters: collapse each value to a 4-bit reduced code, look up the
/// per-range offset, and add it to the value.
pub fn translate_to_ascii(sixbit: VectorBlock32, variant: Variant) -> VectorBlock32 {
    debug_assert!(sixbit.bytes().iter().all(|&b| b < 64));
    let offsets = offsets_for(variant);
    let reduced = reference::saturating_sub_u8(sixbit, SPLAT_51);
    // Values below 26 would reduce to 0 like the 26-51 range; force their
    // code to 13. The signed compare is safe because inputs are < 64.
    let low = reference::cmpgt_i8(SPLAT_26, sixbit);
    let reduced = reference::or(reduced, reference::and(low, SPLAT_13));
    let delta = reference::shuffle_bytes_in_lanes(offsets, reduced);
    reference::add_i8_wrapping(sixbit, delta)
}

/// Hardware twin of [`unpack_to_sixbit`].
///
/// # Safety
/// Requires AVX2.
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
pub unsafe fn unpack_to_sixbit_accel(window: VectorBlock32) -> VectorBlock32 {
    use crate::vector::accel;
    let chunks = accel::shuffle_bytes_in_lanes(window, LANE_SHUFFLE);
    let ac = accel::mulhi_u16(accel::and(chunks, MASK_AC), MULHI_CONST);
    let bd = accel::mullo_i16(accel::and(chunks, MASK_BD), MULLO_CONST);
    accel::or(ac, bd)
}

/// Hardware twin of [`translate_to_ascii`].
///
/// # Safety
/// Requires AVX2.
#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
pub unsafe fn translate_to_ascii_accel(sixbit: VectorBlock32, variant: Variant) -> VectorBlock32 {
    use crate::vector::accel;
    let offsets = offsets_for(variant);
    let reduced = accel::saturating_sub_u8(sixbit, SPLAT_51);
    let low = accel::cmpgt_i8(SPLAT_26, sixbit);
    let reduced = accel::or(reduced, accel::and(low, SPLAT_13));
    let delta = accel::shuffle_bytes_in_lanes(offsets, reduced);
    accel::add_i8_wrapping(sixbit, delta)
}

/// Stages the first window through a zeroed scratch buffer: the steady-state
/// load starts 4 bytes before the current position, which would underrun the
/// buffer on the first iteration.
#[inline(always)]
fn first_window(input: &[u8]) -> VectorBlock32 {
    let mut scratch = [0u8; 32];
    scratch[4..].copy_from_slice(&input[..28]);
    VectorBlock32::new(scratch)
}

fn encode_blocks_emulated(out: &mut Vec<u8>, input: &[u8], variant: Variant) -> usize {
    let n = input.len();
    let mut i = 0;
    while n - i >= TAIL_THRESHOLD {
        let window = if i == 0 {
            first_window(input)
        } else {
            VectorBlock32::load(&input[i - 4..])
        };
        let ascii = translate_to_ascii(unpack_to_sixbit(window), variant);
        let mut block = [0u8; 32];
        ascii.store(&mut block);
        out.extend_from_slice(&block);
        i += 24;
    }
    i
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "avx2")]
unsafe fn encode_blocks_accel(out: &mut Vec<u8>, input: &[u8], variant: Variant) -> usize {
    let n = input.len();
    let mut i = 0;
    while n - i >= TAIL_THRESHOLD {
        let window = if i == 0 {
            first_window(input)
        } else {
            VectorBlock32::load(&input[i - 4..])
        };
        let ascii = translate_to_ascii_accel(unpack_to_sixbit_accel(window), variant);
        let mut block = [0u8; 32];
        ascii.store(&mut block);
        out.extend_from_slice(&block);
        i += 24;
    }
    i
}

/// Encodes with the vector kernel on the detected backend.
pub fn encode(input: &[u8], config: &CodecConfig) -> Vec<u8> {
    encode_with(input, config, VectorBackend::detect())
}

/// [`encode`] on an explicit backend.
pub fn encode_with(input: &[u8], config: &CodecConfig, backend: VectorBackend) -> Vec<u8> {
    let mut out = Vec::new();
    encode_into_with(&mut out, input, config, backend);
    out
}

/// [`encode`], appending to a caller-owned buffer.
pub fn encode_into(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig) {
    encode_into_with(out, input, config, VectorBackend::detect());
}

/// [`encode_into`] on an explicit backend. Output is identical to
/// [`scalar::encode`] for every input and configuration.
pub fn encode_into_with(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
    backend: VectorBackend,
) {
    out.reserve(scalar::encoded_len(input.len(), config.padding));
    let consumed = match backend {
        VectorBackend::Emulated => encode_blocks_emulated(out, input, config.variant),
        VectorBackend::Accelerated => {
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            {
                assert!(
                    crate::vector::accelerated_available(),
                    "accelerated backend forced on a CPU without AVX2"
                );
                unsafe { encode_blocks_accel(out, input, config.variant) }
            }
            #[cfg(not(any(target_arch = "x86", target_arch = "x86_64")))]
            {
                panic!("accelerated backend is not available on this architecture")
            }
        }
    };
    scalar::encode_into(out, &input[consumed..], config);
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alphabet::Alphabet;

    #[test]
    fn unpack_single_chunk_fields() {
        // Chunk bytes 71, 73, 70 split into the fields 17, 52, 37, 6.
        let mut raw = [0u8; 32];
        raw[4..7].copy_from_slice(&[71, 73, 70]);
        let six = unpack_to_sixbit(VectorBlock32::new(raw));
        assert_eq!(&six.bytes()[..4], &[17, 52, 37, 6]);
    }

    #[test]
    fn unpack_extreme_chunks() {
        let mut raw = [0u8; 32];
        raw[7..10].copy_from_slice(&[0xFF, 0xFF, 0xFF]);
        let six = unpack_to_sixbit(VectorBlock32::new(raw));
        assert_eq!(&six.bytes()[..4], &[0, 0, 0, 0]);
        assert_eq!(&six.bytes()[4..8], &[63, 63, 63, 63]);
    }

    #[test]
    fn translate_matches_forward_table_exhaustively() {
        for variant in [Variant::Standard, Variant::UrlSafe] {
            let alpha = Alphabet::for_variant(variant);
            for v in 0..64u8 {
                let out = translate_to_ascii(VectorBlock32::splat(v), variant);
                assert_eq!(
                    out,
                    VectorBlock32::splat(alpha.lookup_forward(v)),
                    "value {v} ({variant:?})"
                );
            }
        }
    }

    #[test]
    fn translate_spot_values() {
        let out = translate_to_ascii(VectorBlock32::splat(0), Variant::Standard);
        assert_eq!(out.bytes()[0], b'A');
        let out = translate_to_ascii(VectorBlock32::splat(62), Variant::Standard);
        assert_eq!(out.bytes()[0], b'+');
        let out = translate_to_ascii(VectorBlock32::splat(62), Variant::UrlSafe);
        assert_eq!(out.bytes()[0], b'-');
    }

    #[test]
    fn kernel_matches_scalar_across_block_boundaries() {
        let cfg = CodecConfig::default();
        let pattern: Vec<u8> = [71u8, 73, 70].repeat(10);
        let expected = scalar::encode(&pattern, &cfg);
        assert_eq!(expected, b"R0lG".repeat(10));
        assert_eq!(
            encode_with(&pattern, &cfg, VectorBackend::Emulated),
            expected
        );
        for len in [0usize, 1, 27, 28, 29, 47, 48, 49, 100, 255] {
            let data: Vec<u8> = (0..len).map(|i| (i * 131 + 7) as u8).collect();
            assert_eq!(
                encode_with(&data, &cfg, VectorBackend::Emulated),
                scalar::encode(&data, &cfg),
                "len {len}"
            );
        }
    }
}

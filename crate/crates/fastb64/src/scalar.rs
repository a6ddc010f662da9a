//! Scalar reference codec and its table-optimized variants.
//!
//! [`encode`] and [`decode`] follow the textbook group arithmetic directly:
//! each 3-byte group maps to four 6-bit values and back. They are the
//! correctness oracle for everything else in the crate and the tail path of
//! the vector kernels. [`encode_fast`] and [`decode_fast`] implement the
//! classic 256-entry-table optimizations with identical observable behavior,
//! including error kinds and offsets.
//!
//! Decoders assume whitespace-free input; use [`crate::whitespace`] first
//! when the input may contain spaces or line breaks. Errors are reported in
//! stream order: the offset of the first offending byte, scanning left to
//! right.

use crate::alphabet::{Alphabet, INVALID, PAD};
use crate::config::{CodecConfig, Padding};
use crate::error::{DecodeError, DecodeErrorKind};
use crate::strict;

/// Encoded length of `n` input bytes under the given padding policy.
pub fn encoded_len(n: usize, padding: Padding) -> usize {
    match padding {
        Padding::Required => n.div_ceil(3) * 4,
        Padding::AllowUnpadded => match n % 3 {
            0 => n / 3 * 4,
            1 => n / 3 * 4 + 2,
            _ => n / 3 * 4 + 3,
        },
    }
}

/// Encodes with per-group arithmetic and a single 64-byte table.
pub fn encode(input: &[u8], config: &CodecConfig) -> Vec<u8> {
    let mut out = Vec::with_capacity(encoded_len(input.len(), config.padding));
    encode_into(&mut out, input, config);
    out
}

/// [`encode`], appending to a caller-owned buffer.
pub fn encode_into(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig) {
    let alpha = Alphabet::for_variant(config.variant);
    let groups = input.chunks_exact(3);
    let leftover = groups.remainder();
    for group in groups {
        let (s0, s1, s2) = (
            u32::from(group[0]),
            u32::from(group[1]),
            u32::from(group[2]),
        );
        out.push(alpha.lookup_forward((s0 / 4) as u8));
        out.push(alpha.lookup_forward(((s0 * 16) % 64 + s1 / 16) as u8));
        out.push(alpha.lookup_forward(((s1 * 4) % 64 + s2 / 64) as u8));
        out.push(alpha.lookup_forward((s2 % 64) as u8));
    }
    encode_leftover(out, leftover, alpha, config.padding);
}

/// Encodes the final 1 or 2 bytes of a stream, with pads per policy.
fn encode_leftover(out: &mut Vec<u8>, leftover: &[u8], alpha: &Alphabet, padding: Padding) {
    let pad = padding == Padding::Required;
    match *leftover {
        [] => {}
        [s0] => {
            let s0 = u32::from(s0);
            out.push(alpha.lookup_forward((s0 / 4) as u8));
            out.push(alpha.lookup_forward(((s0 * 16) % 64) as u8));
            if pad {
                out.push(PAD);
                out.push(PAD);
            }
        }
        [s0, s1] => {
            let (s0, s1) = (u32::from(s0), u32::from(s1));
            out.push(alpha.lookup_forward((s0 / 4) as u8));
            out.push(alpha.lookup_forward(((s0 * 16) % 64 + s1 / 16) as u8));
            out.push(alpha.lookup_forward(((s1 * 4) % 64) as u8));
            if pad {
                out.push(PAD);
            }
        }
        _ => unreachable!("chunks_exact(3) remainder"),
    }
}

struct FastEncodeTables {
    hi: [u8; 256],
    lo: [u8; 256],
}

const fn build_fast_encode(forward: &[u8; 64]) -> FastEncodeTables {
    let mut hi = [0u8; 256];
    let mut lo = [0u8; 256];
    let mut x = 0;
    while x < 256 {
        hi[x] = forward[x >> 2];
        lo[x] = forward[x & 63];
        x += 1;
    }
    FastEncodeTables { hi, lo }
}

static FAST_ENCODE_STANDARD: FastEncodeTables = build_fast_encode(crate::alphabet::STANDARD_CHARS);
static FAST_ENCODE_URL_SAFE: FastEncodeTables = build_fast_encode(crate::alphabet::URL_SAFE_CHARS);

/// Encodes via two 256-byte tables indexed by whole input bytes, skipping
/// the shift/mask before each lookup. Output is identical to [`encode`].
pub fn encode_fast(input: &[u8], config: &CodecConfig) -> Vec<u8> {
    let mut out = Vec::with_capacity(encoded_len(input.len(), config.padding));
    encode_fast_into(&mut out, input, config);
    out
}

/// [`encode_fast`], appending to a caller-owned buffer.
pub fn encode_fast_into(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig) {
    let alpha = Alphabet::for_variant(config.variant);
    let tables = match config.variant {
        crate::alphabet::Variant::Standard => &FAST_ENCODE_STANDARD,
        crate::alphabet::Variant::UrlSafe => &FAST_ENCODE_URL_SAFE,
    };
    let groups = input.chunks_exact(3);
    let leftover = groups.remainder();
    for group in groups {
        let (s0, s1, s2) = (group[0], group[1], group[2]);
        out.push(tables.hi[s0 as usize]);
        out.push(tables.lo[((s0 << 4) | (s1 >> 4)) as usize]);
        out.push(tables.lo[((s1 << 2) | (s2 >> 6)) as usize]);
        out.push(tables.lo[s2 as usize]);
    }
    encode_leftover(out, leftover, alpha, config.padding);
}

// Quad arithmetic shared by every decoder.
#[inline]
pub(crate) fn quad_byte0(a: u8, b: u8) -> u8 {
    ((u32::from(a) * 4) + (u32::from(b) / 16)) as u8
}

#[inline]
pub(crate) fn quad_byte1(b: u8, c: u8) -> u8 {
    (((u32::from(b) * 16) % 256) + (u32::from(c) / 4)) as u8
}

#[inline]
pub(crate) fn quad_byte2(c: u8, d: u8) -> u8 {
    (((u32::from(c) * 64) % 256) + u32::from(d)) as u8
}

/// Error for a byte that cannot appear where a data character is required.
#[inline]
pub(crate) fn reject_byte(byte: u8, offset: usize) -> DecodeError {
    let kind = if byte == PAD {
        DecodeErrorKind::InvalidPadding
    } else {
        DecodeErrorKind::InvalidCharacter
    };
    DecodeError::new(kind, offset)
}

/// Decodes with a per-character inverse table lookup.
pub fn decode(input: &[u8], config: &CodecConfig) -> Result<Vec<u8>, DecodeError> {
    let mut out = Vec::with_capacity(input.len() / 4 * 3 + 3);
    decode_into(&mut out, input, config)?;
    Ok(out)
}

/// [`decode`], appending to a caller-owned buffer.
///
/// On error the buffer holds the bytes decoded before the failure.
pub fn decode_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
) -> Result<(), DecodeError> {
    let alpha = Alphabet::for_variant(config.variant);
    let tail_start = tail_start(input.len());
    let mut i = 0;
    while i < tail_start {
        let mut vals = [0u8; 4];
        for (k, &ch) in input[i..i + 4].iter().enumerate() {
            let v = alpha.lookup_inverse(ch);
            if v == INVALID {
                return Err(reject_byte(ch, i + k));
            }
            vals[k] = v;
        }
        push_quad(out, vals);
        i += 4;
    }
    decode_tail_group(
        out,
        &input[tail_start..],
        alpha,
        config.padding,
        config.strict,
    )
    .map_err(|e| e.offset_by(tail_start))
}

const FAST_DECODE_FLAG: u32 = 0x0100_0000;

const fn build_fast_decode(forward: &[u8; 64]) -> [[u32; 256]; 4] {
    let mut t = [[FAST_DECODE_FLAG; 256]; 4];
    let mut v = 0;
    while v < 64 {
        let ch = forward[v] as usize;
        let val = v as u32;
        // Little-endian word holding the three output bytes of one quad:
        // byte0 = a*4 + b/16, byte1 = (b*16)%256 + c/4, byte2 = (c*64)%256 + d.
        t[0][ch] = val << 2;
        t[1][ch] = (val >> 4) | ((val & 0x0F) << 12);
        t[2][ch] = ((val >> 2) << 8) | ((val & 0x03) << 22);
        t[3][ch] = val << 16;
        v += 1;
    }
    t
}

static FAST_DECODE_STANDARD: [[u32; 256]; 4] = build_fast_decode(crate::alphabet::STANDARD_CHARS);
static FAST_DECODE_URL_SAFE: [[u32; 256]; 4] = build_fast_decode(crate::alphabet::URL_SAFE_CHARS);

/// Decodes via four 256-entry 32-bit tables whose bitwise OR yields the
/// three output bytes; any illegal character sets the flag byte. Behavior
/// is identical to [`decode`], including error kinds and offsets.
pub fn decode_fast(input: &[u8], config: &CodecConfig) -> Result<Vec<u8>, DecodeError> {
    let mut out = Vec::with_capacity(input.len() / 4 * 3 + 3);
    decode_fast_into(&mut out, input, config)?;
    Ok(out)
}

/// [`decode_fast`], appending to a caller-owned buffer.
pub fn decode_fast_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
) -> Result<(), DecodeError> {
    let alpha = Alphabet::for_variant(config.variant);
    let tables = match config.variant {
        crate::alphabet::Variant::Standard => &FAST_DECODE_STANDARD,
        crate::alphabet::Variant::UrlSafe => &FAST_DECODE_URL_SAFE,
    };
    let tail_start = tail_start(input.len());
    let mut i = 0;
    while i < tail_start {
        let quad = &input[i..i + 4];
        let w = tables[0][quad[0] as usize]
            | tables[1][quad[1] as usize]
            | tables[2][quad[2] as usize]
            | tables[3][quad[3] as usize];
        if w >= FAST_DECODE_FLAG {
            // Rescan the quad to recover the exact offset and kind.
            for (k, &ch) in quad.iter().enumerate() {
                if alpha.lookup_inverse(ch) == INVALID {
                    return Err(reject_byte(ch, i + k));
                }
            }
            unreachable!("flagged quad contains an invalid byte");
        }
        out.extend_from_slice(&[w as u8, (w >> 8) as u8, (w >> 16) as u8]);
        i += 4;
    }
    decode_tail_group(
        out,
        &input[tail_start..],
        alpha,
        config.padding,
        config.strict,
    )
    .map_err(|e| e.offset_by(tail_start))
}

/// Start of the final group: the last quad when the length is divisible by
/// 4, otherwise the trailing partial group. Everything before it must be
/// plain data quads.
#[inline]
pub(crate) fn tail_start(n: usize) -> usize {
    if n.is_multiple_of(4) {
        n.saturating_sub(4)
    } else {
        n - n % 4
    }
}

#[inline]
fn push_quad(out: &mut Vec<u8>, [a, b, c, d]: [u8; 4]) {
    out.push(quad_byte0(a, b));
    out.push(quad_byte1(b, c));
    out.push(quad_byte2(c, d));
}

/// Decodes the final group of a stream (0 to 4 characters). Pads are legal
/// only here. Error offsets are relative to the start of `tail`.
pub(crate) fn decode_tail_group(
    out: &mut Vec<u8>,
    tail: &[u8],
    alpha: &Alphabet,
    padding: Padding,
    strict: bool,
) -> Result<(), DecodeError> {
    let data = |ch: u8, k: usize| -> Result<u8, DecodeError> {
        let v = alpha.lookup_inverse(ch);
        if v == INVALID {
            Err(reject_byte(ch, k))
        } else {
            Ok(v)
        }
    };
    match *tail {
        [] => Ok(()),
        [_] => Err(DecodeError::new(DecodeErrorKind::TruncatedInput, 0)),
        [_, _] | [_, _, _] if padding == Padding::Required => {
            Err(DecodeError::new(DecodeErrorKind::TruncatedInput, 0))
        }
        [c0, c1] => {
            let a = data(c0, 0)?;
            let b = data(c1, 1)?;
            if strict && !strict::two_pad_bits_ok(b) {
                return Err(DecodeError::new(
                    DecodeErrorKind::NonCanonicalTrailingBits,
                    1,
                ));
            }
            out.push(quad_byte0(a, b));
            Ok(())
        }
        [c0, c1, c2] => {
            let a = data(c0, 0)?;
            let b = data(c1, 1)?;
            let c = data(c2, 2)?;
            if strict && !strict::one_pad_bits_ok(c) {
                return Err(DecodeError::new(
                    DecodeErrorKind::NonCanonicalTrailingBits,
                    2,
                ));
            }
            out.push(quad_byte0(a, b));
            out.push(quad_byte1(b, c));
            Ok(())
        }
        [c0, c1, c2, c3] => {
            let a = data(c0, 0)?;
            let b = data(c1, 1)?;
            if c2 != PAD {
                let c = data(c2, 2)?;
                if c3 != PAD {
                    let d = data(c3, 3)?;
                    push_quad(out, [a, b, c, d]);
                    return Ok(());
                }
                // One pad: two output bytes.
                if strict && !strict::one_pad_bits_ok(c) {
                    return Err(DecodeError::new(
                        DecodeErrorKind::NonCanonicalTrailingBits,
                        2,
                    ));
                }
                out.push(quad_byte0(a, b));
                out.push(quad_byte1(b, c));
                Ok(())
            } else if c3 == PAD {
                // Two pads: one output byte.
                if strict && !strict::two_pad_bits_ok(b) {
                    return Err(DecodeError::new(
                        DecodeErrorKind::NonCanonicalTrailingBits,
                        1,
                    ));
                }
                out.push(quad_byte0(a, b));
                Ok(())
            } else if alpha.is_data_char(c3) {
                // "=x": the pad is not at the end of the stream.
                Err(DecodeError::new(DecodeErrorKind::InvalidPadding, 3))
            } else {
                Err(DecodeError::new(DecodeErrorKind::InvalidCharacter, 3))
            }
        }
        _ => unreachable!("tail group is at most 4 characters"),
    }
}

//! In-place removal of space (0x20), line feed (0x0A) and carriage return
//! (0x0D) from byte buffers, ahead of decoding.
//!
//! Exactly these three byte values are removed; anything else (tabs
//! included) stays and is rejected later by the decoder. The vector path
//! classifies 16 bytes at a time, turns the whitespace positions into a
//! 16-bit mask, and compacts the kept bytes to the front with a shuffle
//! looked up from a per-mask table.

use crate::vector::{reference, VectorBackend, VectorBlock16};
use std::sync::OnceLock;

const SPACE: u8 = 0x20;
const LINE_FEED: u8 = 0x0A;
const CARRIAGE_RETURN: u8 = 0x0D;

/// 1 for bytes to keep, 0 for the three whitespace bytes.
static KEEP_FLAG: [u8; 256] = build_keep_flag();

const fn build_keep_flag() -> [u8; 256] {
    let mut table = [1u8; 256];
    table[SPACE as usize] = 0;
    table[LINE_FEED as usize] = 0;
    table[CARRIAGE_RETURN as usize] = 0;
    table
}

/// For each 16-bit whitespace mask, the byte shuffle that moves the kept
/// bytes (zero bits) to the front in order. 65536 entries of 16 bytes,
/// built on first use.
static COMPACTION: OnceLock<Box<[[u8; 16]]>> = OnceLock::new();

fn compaction_table() -> &'static [[u8; 16]] {
    COMPACTION.get_or_init(|| {
        let mut table = vec![[0x80u8; 16]; 1 << 16];
        for (mask, entry) in table.iter_mut().enumerate() {
            let mut k = 0;
            for pos in 0..16 {
                if mask & (1 << pos) == 0 {
                    entry[k] = pos as u8;
                    k += 1;
                }
            }
            // Remaining indices keep the 0x80 fill: shuffle writes zeros.
        }
        table.into_boxed_slice()
    })
}

/// Builds the compaction table now instead of on first use, so table
/// construction cannot land inside a timed region.
pub fn warm_compaction_table() {
    let _ = compaction_table();
}

/// Removes whitespace in place, one byte at a time. Returns the new length;
/// `buf[..len]` holds the kept bytes in order, the rest is unspecified.
pub fn despace_scalar(buf: &mut [u8]) -> usize {
    let mut p = 0;
    for i in 0..buf.len() {
        let v = buf[i];
        buf[p] = v;
        p += KEEP_FLAG[v as usize] as usize;
    }
    p
}

/// Vectorized whitespace removal; result is identical to
/// [`despace_scalar`], including the returned length.
pub fn despace_simd(buf: &mut [u8]) -> usize {
    despace_simd_with(buf, VectorBackend::detect())
}

/// [`despace_simd`] on an explicit backend.
pub fn despace_simd_with(buf: &mut [u8], backend: VectorBackend) -> usize {
    match backend {
        VectorBackend::Emulated => despace_blocks_emulated(buf),
        VectorBackend::Accelerated => {
            #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
            {
                assert!(
                    crate::vector::accelerated_available(),
                    "accelerated backend forced on a CPU without SSSE3"
                );
                unsafe { despace_blocks_accel(buf) }
            }
            #[cfg(not(any(target_arch = "x86", target_arch = "x86_64")))]
            {
                panic!("accelerated backend is not available on this architecture")
            }
        }
    }
}

/// Scalar cleanup for the final partial block, continuing at write cursor
/// `p` from read cursor `i`.
fn despace_tail(buf: &mut [u8], mut i: usize, mut p: usize) -> usize {
    while i < buf.len() {
        let v = buf[i];
        buf[p] = v;
        p += KEEP_FLAG[v as usize] as usize;
        i += 1;
    }
    p
}

fn despace_blocks_emulated(buf: &mut [u8]) -> usize {
    let table = compaction_table();
    let n = buf.len();
    let spaces = VectorBlock16::splat(SPACE);
    let newlines = VectorBlock16::splat(LINE_FEED);
    let carriages = VectorBlock16::splat(CARRIAGE_RETURN);
    let mut i = 0;
    let mut p = 0;
    while n - i >= 16 {
        let v = VectorBlock16::load(&buf[i..]);
        let white = reference::or16(
            reference::or16(
                reference::cmpeq_i8_16(v, spaces),
                reference::cmpeq_i8_16(v, newlines),
            ),
            reference::cmpeq_i8_16(v, carriages),
        );
        let mask = reference::movemask16(white);
        let packed = reference::shuffle_bytes16(v, VectorBlock16::new(table[mask as usize]));
        // The 16-byte store stays within the buffer: p <= i and i + 16 <= n.
        packed.store(&mut buf[p..]);
        p += 16 - mask.count_ones() as usize;
        i += 16;
    }
    despace_tail(buf, i, p)
}

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
#[target_feature(enable = "ssse3")]
unsafe fn despace_blocks_accel(buf: &mut [u8]) -> usize {
    use crate::vector::accel;
    let table = compaction_table();
    let n = buf.len();
    let spaces = VectorBlock16::splat(SPACE);
    let newlines = VectorBlock16::splat(LINE_FEED);
    let carriages = VectorBlock16::splat(CARRIAGE_RETURN);
    let mut i = 0;
    let mut p = 0;
    while n - i >= 16 {
        let v = VectorBlock16::load(&buf[i..]);
        let white = accel::or16(
            accel::or16(
                accel::cmpeq_i8_16(v, spaces),
                accel::cmpeq_i8_16(v, newlines),
            ),
            accel::cmpeq_i8_16(v, carriages),
        );
        let mask = accel::movemask16(white);
        let packed = accel::shuffle_bytes16(v, VectorBlock16::new(table[mask as usize]));
        packed.store(&mut buf[p..]);
        p += 16 - mask.count_ones() as usize;
        i += 16;
    }
    despace_tail(buf, i, p)
}

//! Portable wide-value abstraction used by the vector kernels.
//!
//! [`VectorBlock32`] is a 32-byte value treated as two independent 16-byte
//! lanes by byte shuffles; [`VectorBlock16`] is the 16-byte value used by
//! the despacer. Byte 0 is the lowest-addressed byte; 16- and 32-bit lane
//! views are little-endian.
//!
//! The [`reference`] module gives the normative semantics of every
//! operation in plain Rust. The [`accel`] module implements the same
//! operations with hardware vector instructions; it must match the
//! reference bit for bit, which the test suite checks by differential
//! fuzzing. Kernels select a backend at runtime via [`VectorBackend`].

pub mod reference;

#[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
pub mod accel;

/// A 32-byte wide value: two 16-byte lanes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(C, align(32))]
pub struct VectorBlock32(pub(crate) [u8; 32]);

/// A 16-byte wide value.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(C, align(16))]
pub struct VectorBlock16(pub(crate) [u8; 16]);

impl VectorBlock32 {
    pub const fn new(bytes: [u8; 32]) -> Self {
        VectorBlock32(bytes)
    }

    /// Every byte set to `b`.
    pub const fn splat(b: u8) -> Self {
        VectorBlock32([b; 32])
    }

    /// Every 32-bit word set to `w` (little-endian bytes).
    pub const fn splat_u32(w: u32) -> Self {
        let le = w.to_le_bytes();
        let mut bytes = [0u8; 32];
        let mut i = 0;
        while i < 32 {
            bytes[i] = le[i % 4];
            i += 1;
        }
        VectorBlock32(bytes)
    }

    /// The same 16 bytes repeated in both lanes.
    pub const fn from_lanes(lane: [u8; 16]) -> Self {
        let mut bytes = [0u8; 32];
        let mut i = 0;
        while i < 16 {
            bytes[i] = lane[i];
            bytes[i + 16] = lane[i];
            i += 1;
        }
        VectorBlock32(bytes)
    }

    /// The same 16 signed bytes repeated in both lanes.
    pub const fn from_lanes_i8(lane: [i8; 16]) -> Self {
        let mut bytes = [0u8; 32];
        let mut i = 0;
        while i < 16 {
            bytes[i] = lane[i] as u8;
            bytes[i + 16] = lane[i] as u8;
            i += 1;
        }
        VectorBlock32(bytes)
    }

    /// Loads the first 32 bytes of `buf`.
    #[inline(always)]
    pub fn load(buf: &[u8]) -> Self {
        debug_assert!(buf.len() >= 32);
        let mut bytes = [0u8; 32];
        bytes.copy_from_slice(&buf[..32]);
        VectorBlock32(bytes)
    }

    /// Loads `min(buf.len(), 32)` bytes, zero-filling the rest. Never reads
    /// past the end of `buf`.
    #[inline]
    pub fn load_partial(buf: &[u8]) -> Self {
        let mut bytes = [0u8; 32];
        let n = buf.len().min(32);
        bytes[..n].copy_from_slice(&buf[..n]);
        VectorBlock32(bytes)
    }

    /// Writes all 32 bytes to the start of `out`.
    #[inline(always)]
    pub fn store(&self, out: &mut [u8]) {
        debug_assert!(out.len() >= 32);
        out[..32].copy_from_slice(&self.0);
    }

    /// Writes the first 24 bytes to the start of `out`.
    #[inline(always)]
    pub fn store24(&self, out: &mut [u8]) {
        debug_assert!(out.len() >= 24);
        out[..24].copy_from_slice(&self.0[..24]);
    }

    pub const fn bytes(&self) -> [u8; 32] {
        self.0
    }

    #[inline(always)]
    pub(crate) fn to_u16_lanes(self) -> [u16; 16] {
        let mut lanes = [0u16; 16];
        let mut i = 0;
        while i < 16 {
            lanes[i] = u16::from_le_bytes([self.0[2 * i], self.0[2 * i + 1]]);
            i += 1;
        }
        lanes
    }

    #[inline(always)]
    pub(crate) fn from_u16_lanes(lanes: [u16; 16]) -> Self {
        let mut bytes = [0u8; 32];
        for (i, lane) in lanes.iter().enumerate() {
            bytes[2 * i..2 * i + 2].copy_from_slice(&lane.to_le_bytes());
        }
        VectorBlock32(bytes)
    }

    #[inline(always)]
    pub(crate) fn to_u32_words(self) -> [u32; 8] {
        let mut words = [0u32; 8];
        for (i, word) in words.iter_mut().enumerate() {
            *word = u32::from_le_bytes([
                self.0[4 * i],
                self.0[4 * i + 1],
                self.0[4 * i + 2],
                self.0[4 * i + 3],
            ]);
        }
        words
    }

    #[inline(always)]
    pub(crate) fn from_u32_words(words: [u32; 8]) -> Self {
        let mut bytes = [0u8; 32];
        for (i, word) in words.iter().enumerate() {
            bytes[4 * i..4 * i + 4].copy_from_slice(&word.to_le_bytes());
        }
        VectorBlock32(bytes)
    }
}

impl VectorBlock16 {
    pub const fn new(bytes: [u8; 16]) -> Self {
        VectorBlock16(bytes)
    }

    pub const fn splat(b: u8) -> Self {
        VectorBlock16([b; 16])
    }

    #[inline(always)]
    pub fn load(buf: &[u8]) -> Self {
        debug_assert!(buf.len() >= 16);
        let mut bytes = [0u8; 16];
        bytes.copy_from_slice(&buf[..16]);
        VectorBlock16(bytes)
    }

    #[inline(always)]
    pub fn store(&self, out: &mut [u8]) {
        debug_assert!(out.len() >= 16);
        out[..16].copy_from_slice(&self.0);
    }

    pub const fn bytes(&self) -> [u8; 16] {
        self.0
    }
}

/// Which implementation of the vector operations to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VectorBackend {
    /// Hardware vector instructions (requires AVX2 and SSSE3).
    Accelerated,
    /// The software reference semantics.
    Emulated,
}

impl VectorBackend {
    /// Hardware when the CPU supports it, the reference engine otherwise.
    pub fn detect() -> Self {
        if accelerated_available() {
            VectorBackend::Accelerated
        } else {
            VectorBackend::Emulated
        }
    }
}

/// True when the hardware backend can run on this CPU.
pub fn accelerated_available() -> bool {
    #[cfg(any(target_arch = "x86", target_arch = "x86_64"))]
    {
        std::is_x86_feature_detected!("avx2") && std::is_x86_feature_detected!("ssse3")
    }
    #[cfg(not(any(target_arch = "x86", target_arch = "x86_64")))]
    {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn load_partial_matches_zero_padded_load() {
        let buf: Vec<u8> = (1..=32).collect();
        for k in 0..=32 {
            let partial = VectorBlock32::load_partial(&buf[..k]);
            let mut padded = [0u8; 32];
            padded[..k].copy_from_slice(&buf[..k]);
            assert_eq!(partial, VectorBlock32::load(&padded), "k = {k}");
        }
    }

    #[test]
    fn word_lane_round_trip() {
        let v = VectorBlock32::new(core::array::from_fn(|i| (i as u8).wrapping_mul(37)));
        assert_eq!(VectorBlock32::from_u16_lanes(v.to_u16_lanes()), v);
        assert_eq!(VectorBlock32::from_u32_words(v.to_u32_words()), v);
    }

    #[test]
    fn splat_u32_layout() {
        let v = VectorBlock32::splat_u32(0x0FC0_FC00);
        assert_eq!(&v.bytes()[..4], &[0x00, 0xFC, 0xC0, 0x0F]);
        assert_eq!(v.to_u32_words(), [0x0FC0_FC00; 8]);
    }
}

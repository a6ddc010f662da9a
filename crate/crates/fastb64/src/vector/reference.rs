//! Normative software semantics for every vector operation.
//!
//! These functions define what each operation means; the hardware backend
//! in [`super::accel`] is an optimization proven equivalent by differential
//! tests. All operations are pure.

// Lockstep indexing over multiple fixed-size arrays reads better here than
// nested iterator adapters.
#![allow(clippy::needless_range_loop)]

use super::{VectorBlock16, VectorBlock32};

/// Byte shuffle within each 16-byte lane. For each output byte `i`:
/// zero when the high bit of `idx[i]` is set, otherwise the byte of `v` at
/// position `idx[i] mod 16` inside `i`'s own lane. Never crosses lanes.
pub fn shuffle_bytes_in_lanes(v: VectorBlock32, idx: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        let m = idx.0[i];
        if m & 0x80 == 0 {
            let lane_base = i & !15;
            out[i] = v.0[lane_base + (m & 15) as usize];
        }
    }
    VectorBlock32(out)
}

/// Sixteen unsigned 16-bit products, keeping the high halves.
pub fn mulhi_u16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let (a, b) = (a.to_u16_lanes(), b.to_u16_lanes());
    let mut out = [0u16; 16];
    for i in 0..16 {
        out[i] = ((u32::from(a[i]) * u32::from(b[i])) >> 16) as u16;
    }
    VectorBlock32::from_u16_lanes(out)
}

/// Sixteen 16-bit products, keeping the low halves.
pub fn mullo_i16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let (a, b) = (a.to_u16_lanes(), b.to_u16_lanes());
    let mut out = [0u16; 16];
    for i in 0..16 {
        out[i] = a[i].wrapping_mul(b[i]);
    }
    VectorBlock32::from_u16_lanes(out)
}

/// For each adjacent byte pair: multiply `a`'s bytes (unsigned) by `b`'s
/// bytes (signed), then add the two 16-bit products with signed saturation.
pub fn maddubs(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u16; 16];
    for (i, slot) in out.iter_mut().enumerate() {
        let p0 = i32::from(a.0[2 * i]) * i32::from(b.0[2 * i] as i8);
        let p1 = i32::from(a.0[2 * i + 1]) * i32::from(b.0[2 * i + 1] as i8);
        *slot = (p0 + p1).clamp(i32::from(i16::MIN), i32::from(i16::MAX)) as i16 as u16;
    }
    VectorBlock32::from_u16_lanes(out)
}

/// For each adjacent pair of signed 16-bit lanes: multiply into 32-bit
/// products and add them (wrapping) into one 32-bit word.
pub fn madd_i16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let (a, b) = (a.to_u16_lanes(), b.to_u16_lanes());
    let mut out = [0u32; 8];
    for (i, slot) in out.iter_mut().enumerate() {
        let p0 = i32::from(a[2 * i] as i16) * i32::from(b[2 * i] as i16);
        let p1 = i32::from(a[2 * i + 1] as i16) * i32::from(b[2 * i + 1] as i16);
        *slot = p0.wrapping_add(p1) as u32;
    }
    VectorBlock32::from_u32_words(out)
}

/// Per-byte wrapping addition.
pub fn add_i8_wrapping(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = a.0[i].wrapping_add(b.0[i]);
    }
    VectorBlock32(out)
}

/// Per-byte unsigned subtraction, clamping at zero.
pub fn saturating_sub_u8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = a.0[i].saturating_sub(b.0[i]);
    }
    VectorBlock32(out)
}

pub fn and(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = a.0[i] & b.0[i];
    }
    VectorBlock32(out)
}

pub fn or(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = a.0[i] | b.0[i];
    }
    VectorBlock32(out)
}

/// Per-byte equality: 0xFF where equal, 0x00 elsewhere.
pub fn cmpeq_i8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = if a.0[i] == b.0[i] { 0xFF } else { 0x00 };
    }
    VectorBlock32(out)
}

/// Per-byte signed greater-than: 0xFF where `a > b`, 0x00 elsewhere.
pub fn cmpgt_i8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    let mut out = [0u8; 32];
    for i in 0..32 {
        out[i] = if (a.0[i] as i8) > (b.0[i] as i8) {
            0xFF
        } else {
            0x00
        };
    }
    VectorBlock32(out)
}

/// Logical right shift of each 32-bit word by `k` bits; zero when `k >= 32`.
pub fn shr32(v: VectorBlock32, k: u32) -> VectorBlock32 {
    let mut words = v.to_u32_words();
    for word in &mut words {
        *word = if k >= 32 { 0 } else { *word >> k };
    }
    VectorBlock32::from_u32_words(words)
}

/// 32-bit word shuffle that crosses the lane boundary: output word `j` is
/// input word `idx[j] mod 8` (only the low 3 bits of each selector matter).
pub fn permute32_across_lanes(v: VectorBlock32, idx: [i32; 8]) -> VectorBlock32 {
    let words = v.to_u32_words();
    let mut out = [0u32; 8];
    for (j, slot) in out.iter_mut().enumerate() {
        *slot = words[(idx[j] as u32 & 7) as usize];
    }
    VectorBlock32::from_u32_words(out)
}

/// True when `a AND b` is all zero.
pub fn testz(a: VectorBlock32, b: VectorBlock32) -> bool {
    (0..32).all(|i| a.0[i] & b.0[i] == 0)
}

/// Byte shuffle over a full 16-byte value, same index rules as
/// [`shuffle_bytes_in_lanes`].
pub fn shuffle_bytes16(v: VectorBlock16, idx: VectorBlock16) -> VectorBlock16 {
    let mut out = [0u8; 16];
    for i in 0..16 {
        let m = idx.0[i];
        if m & 0x80 == 0 {
            out[i] = v.0[(m & 15) as usize];
        }
    }
    VectorBlock16(out)
}

/// Per-byte equality on 16-byte values.
pub fn cmpeq_i8_16(a: VectorBlock16, b: VectorBlock16) -> VectorBlock16 {
    let mut out = [0u8; 16];
    for i in 0..16 {
        out[i] = if a.0[i] == b.0[i] { 0xFF } else { 0x00 };
    }
    VectorBlock16(out)
}

pub fn or16(a: VectorBlock16, b: VectorBlock16) -> VectorBlock16 {
    let mut out = [0u8; 16];
    for i in 0..16 {
        out[i] = a.0[i] | b.0[i];
    }
    VectorBlock16(out)
}

/// Packs the most significant bit of each byte into a 16-bit integer;
/// bit `i` comes from byte `i`.
pub fn movemask16(v: VectorBlock16) -> u16 {
    let mut mask = 0u16;
    for i in 0..16 {
        mask |= u16::from(v.0[i] >> 7) << i;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;

    fn counting32() -> VectorBlock32 {
        VectorBlock32::new(core::array::from_fn(|i| i as u8))
    }

    #[test]
    fn shuffle_identity_and_high_bit() {
        let v = counting32();
        let identity = VectorBlock32::from_lanes_i8(core::array::from_fn(|i| i as i8));
        assert_eq!(shuffle_bytes_in_lanes(v, identity), v);
        assert_eq!(
            shuffle_bytes_in_lanes(v, VectorBlock32::splat(0x80)),
            VectorBlock32::splat(0)
        );
    }

    #[test]
    fn shuffle_stays_in_lane() {
        // Index 3 in both lanes picks each lane's own byte 3.
        let v = counting32();
        let out = shuffle_bytes_in_lanes(v, VectorBlock32::splat(3));
        assert_eq!(&out.bytes()[..16], &[0x03; 16]);
        assert_eq!(&out.bytes()[16..], &[0x13; 16]);
    }

    #[test]
    fn mulhi_cases() {
        let r = mulhi_u16(
            VectorBlock32::from_u16_lanes([0x0400; 16]),
            VectorBlock32::from_u16_lanes([0x0040; 16]),
        );
        assert_eq!(r.to_u16_lanes(), [0x0001; 16]);
        let zero = mulhi_u16(VectorBlock32::splat(0), counting32());
        assert_eq!(zero, VectorBlock32::splat(0));
        let r = mulhi_u16(
            VectorBlock32::from_u16_lanes([0xFFFF; 16]),
            VectorBlock32::from_u16_lanes([0xFFFF; 16]),
        );
        assert_eq!(r.to_u16_lanes(), [0xFFFE; 16]);
    }

    #[test]
    fn mullo_cases() {
        let x = counting32();
        assert_eq!(mullo_i16(x, VectorBlock32::from_u16_lanes([1; 16])), x);
        let r = mullo_i16(
            VectorBlock32::from_u16_lanes([0x0010; 16]),
            VectorBlock32::from_u16_lanes([0x0100; 16]),
        );
        assert_eq!(r.to_u16_lanes(), [0x1000; 16]);
        let r = mullo_i16(
            VectorBlock32::from_u16_lanes([0x8000; 16]),
            VectorBlock32::from_u16_lanes([2; 16]),
        );
        assert_eq!(r.to_u16_lanes(), [0x0000; 16]);
    }

    #[test]
    fn maddubs_cases() {
        let mut a = [0u8; 32];
        a[0] = 0x3F;
        let mut b = [0u8; 32];
        b[0] = 0x40;
        b[1] = 0x01;
        let r = maddubs(VectorBlock32::new(a), VectorBlock32::new(b));
        assert_eq!(r.to_u16_lanes()[0], 0x0FC0);
        assert_eq!(
            maddubs(counting32(), VectorBlock32::splat(0)),
            VectorBlock32::splat(0)
        );
        // 255*127 + 255*127 = 64770 saturates to 0x7FFF.
        let r = maddubs(VectorBlock32::splat(255), VectorBlock32::splat(127));
        assert_eq!(r.to_u16_lanes(), [0x7FFF; 16]);
    }

    #[test]
    fn madd_cases() {
        let r = madd_i16(
            VectorBlock32::from_u16_lanes([0x0001; 16]),
            VectorBlock32::from_u16_lanes([0x1000; 16]),
        );
        assert_eq!(r.to_u32_words(), [0x2000; 8]);
        assert_eq!(
            madd_i16(counting32(), VectorBlock32::splat(0)),
            VectorBlock32::splat(0)
        );
        // (-32768)^2 + (-32768)^2 wraps to 0x80000000.
        let r = madd_i16(
            VectorBlock32::from_u16_lanes([0x8000; 16]),
            VectorBlock32::from_u16_lanes([0x8000; 16]),
        );
        assert_eq!(r.to_u32_words(), [0x8000_0000; 8]);
    }

    #[test]
    fn add_and_bitwise_cases() {
        let x = counting32();
        assert_eq!(add_i8_wrapping(x, VectorBlock32::splat(0)), x);
        let r = add_i8_wrapping(VectorBlock32::splat(200), VectorBlock32::splat(100));
        assert_eq!(r, VectorBlock32::splat(44));
        let r = add_i8_wrapping(VectorBlock32::splat(0xFF), VectorBlock32::splat(1));
        assert_eq!(r, VectorBlock32::splat(0));
        assert_eq!(and(x, VectorBlock32::splat(0xFF)), x);
        assert_eq!(and(x, VectorBlock32::splat(0)), VectorBlock32::splat(0));
        assert_eq!(or(x, VectorBlock32::splat(0)), x);
        assert_eq!(
            or(VectorBlock32::splat(0xF0), VectorBlock32::splat(0x0F)),
            VectorBlock32::splat(0xFF)
        );
        assert_eq!(cmpeq_i8(x, x), VectorBlock32::splat(0xFF));
        let mut b = x.bytes();
        b[7] ^= 1;
        let r = cmpeq_i8(x, VectorBlock32::new(b));
        assert_eq!(r.bytes()[7], 0x00);
        assert_eq!(r.bytes()[6], 0xFF);
    }

    #[test]
    fn saturating_sub_and_compare() {
        let r = saturating_sub_u8(VectorBlock32::splat(10), VectorBlock32::splat(51));
        assert_eq!(r, VectorBlock32::splat(0));
        let r = saturating_sub_u8(VectorBlock32::splat(63), VectorBlock32::splat(51));
        assert_eq!(r, VectorBlock32::splat(12));
        // cmpgt is signed: -1 > 0 is false.
        let r = cmpgt_i8(VectorBlock32::splat(0xFF), VectorBlock32::splat(0));
        assert_eq!(r, VectorBlock32::splat(0));
        let r = cmpgt_i8(VectorBlock32::splat(26), VectorBlock32::splat(25));
        assert_eq!(r, VectorBlock32::splat(0xFF));
    }

    #[test]
    fn permute_cases() {
        let v = counting32();
        assert_eq!(permute32_across_lanes(v, [0, 1, 2, 3, 4, 5, 6, 7]), v);
        let dropped = permute32_across_lanes(v, [0, 1, 2, 4, 5, 6, -1, -1]);
        let words = v.to_u32_words();
        assert_eq!(
            dropped.to_u32_words(),
            [words[0], words[1], words[2], words[4], words[5], words[6], words[7], words[7]]
        );
        let broadcast = permute32_across_lanes(v, [0; 8]);
        assert_eq!(broadcast.to_u32_words(), [words[0]; 8]);
    }

    #[test]
    fn testz_and_movemask() {
        assert!(testz(
            VectorBlock32::splat(0b0101),
            VectorBlock32::splat(0b1010)
        ));
        assert!(!testz(
            VectorBlock32::splat(0b0110),
            VectorBlock32::splat(0b1010)
        ));
        let mut b = [0u8; 16];
        b[0] = 0x80;
        b[15] = 0xFF;
        assert_eq!(movemask16(VectorBlock16::new(b)), 0x8001);
    }

    #[test]
    fn shr32_cases() {
        let v = VectorBlock32::splat_u32(0x0000_F00F);
        assert_eq!(shr32(v, 4).to_u32_words(), [0x0000_0F00; 8]);
        assert_eq!(shr32(v, 0), v);
        assert_eq!(shr32(v, 32), VectorBlock32::splat(0));
    }
}

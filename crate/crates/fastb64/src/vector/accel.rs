//! Hardware backend for the vector operations.
//!
//! Every function mirrors its namesake in [`super::reference`] and must
//! produce bit-identical results; the acceptance suite fuzzes the pair.
//!
//! Safety: all functions require AVX2 (the 16-byte ones SSSE3). Callers
//! gate on [`super::accelerated_available`] before taking this path.

#![allow(clippy::missing_safety_doc)] // the module-level contract above

#[cfg(target_arch = "x86")]
use core::arch::x86::*;
#[cfg(target_arch = "x86_64")]
use core::arch::x86_64::*;

use super::{VectorBlock16, VectorBlock32};

#[inline(always)]
fn m256(v: VectorBlock32) -> __m256i {
    // [u8; 32] and __m256i have identical size and bit layout.
    unsafe { core::mem::transmute(v.0) }
}

#[inline(always)]
fn vb32(v: __m256i) -> VectorBlock32 {
    VectorBlock32(unsafe { core::mem::transmute::<__m256i, [u8; 32]>(v) })
}

#[inline(always)]
fn m128(v: VectorBlock16) -> __m128i {
    unsafe { core::mem::transmute(v.0) }
}

#[inline(always)]
fn vb16(v: __m128i) -> VectorBlock16 {
    VectorBlock16(unsafe { core::mem::transmute::<__m128i, [u8; 16]>(v) })
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn shuffle_bytes_in_lanes(v: VectorBlock32, idx: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_shuffle_epi8(m256(v), m256(idx)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn mulhi_u16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_mulhi_epu16(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn mullo_i16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_mullo_epi16(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn maddubs(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_maddubs_epi16(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn madd_i16(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_madd_epi16(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn add_i8_wrapping(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_add_epi8(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn saturating_sub_u8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_subs_epu8(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn and(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_and_si256(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn or(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_or_si256(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn cmpeq_i8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_cmpeq_epi8(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn cmpgt_i8(a: VectorBlock32, b: VectorBlock32) -> VectorBlock32 {
    vb32(_mm256_cmpgt_epi8(m256(a), m256(b)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn shr32(v: VectorBlock32, k: u32) -> VectorBlock32 {
    vb32(_mm256_srl_epi32(m256(v), _mm_cvtsi32_si128(k as i32)))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn permute32_across_lanes(v: VectorBlock32, idx: [i32; 8]) -> VectorBlock32 {
    let selectors: __m256i = core::mem::transmute(idx);
    vb32(_mm256_permutevar8x32_epi32(m256(v), selectors))
}

#[target_feature(enable = "avx2")]
#[inline]
pub unsafe fn testz(a: VectorBlock32, b: VectorBlock32) -> bool {
    _mm256_testz_si256(m256(a), m256(b)) != 0
}

#[target_feature(enable = "ssse3")]
#[inline]
pub unsafe fn shuffle_bytes16(v: VectorBlock16, idx: VectorBlock16) -> VectorBlock16 {
    vb16(_mm_shuffle_epi8(m128(v), m128(idx)))
}

#[target_feature(enable = "sse2")]
#[inline]
pub unsafe fn cmpeq_i8_16(a: VectorBlock16, b: VectorBlock16) -> VectorBlock16 {
    vb16(_mm_cmpeq_epi8(m128(a), m128(b)))
}

#[target_feature(enable = "sse2")]
#[inline]
pub unsafe fn or16(a: VectorBlock16, b: VectorBlock16) -> VectorBlock16 {
    vb16(_mm_or_si128(m128(a), m128(b)))
}

#[target_feature(enable = "sse2")]
#[inline]
pub unsafe fn movemask16(v: VectorBlock16) -> u16 {
    _mm_movemask_epi8(m128(v)) as u16
}

#[cfg(test)]
mod tests {
    use super::super::{accelerated_available, reference};
    use super::*;
    use rand::{RngCore, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random32(rng: &mut ChaCha8Rng) -> VectorBlock32 {
        let mut bytes = [0u8; 32];
        rng.fill_bytes(&mut bytes);
        VectorBlock32::new(bytes)
    }

    fn random16(rng: &mut ChaCha8Rng) -> VectorBlock16 {
        let mut bytes = [0u8; 16];
        rng.fill_bytes(&mut bytes);
        VectorBlock16::new(bytes)
    }

    // Smoke-level differential check; the acceptance suite runs the full
    // 10^5-operand sweep.
    #[test]
    fn matches_reference_on_random_operands() {
        if !accelerated_available() {
            eprintln!("skipping: hardware vector backend unavailable");
            return;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(0x5EED);
        for _ in 0..2000 {
            let a = random32(&mut rng);
            let b = random32(&mut rng);
            unsafe {
                assert_eq!(
                    shuffle_bytes_in_lanes(a, b),
                    reference::shuffle_bytes_in_lanes(a, b)
                );
                assert_eq!(mulhi_u16(a, b), reference::mulhi_u16(a, b));
                assert_eq!(mullo_i16(a, b), reference::mullo_i16(a, b));
                assert_eq!(maddubs(a, b), reference::maddubs(a, b));
                assert_eq!(madd_i16(a, b), reference::madd_i16(a, b));
                assert_eq!(add_i8_wrapping(a, b), reference::add_i8_wrapping(a, b));
                assert_eq!(saturating_sub_u8(a, b), reference::saturating_sub_u8(a, b));
                assert_eq!(and(a, b), reference::and(a, b));
                assert_eq!(or(a, b), reference::or(a, b));
                assert_eq!(cmpeq_i8(a, b), reference::cmpeq_i8(a, b));
                assert_eq!(cmpgt_i8(a, b), reference::cmpgt_i8(a, b));
                assert_eq!(testz(a, b), reference::testz(a, b));
                let k = rng.next_u32() % 40;
                assert_eq!(shr32(a, k), reference::shr32(a, k));
                let mut idx = [0i32; 8];
                for slot in &mut idx {
                    *slot = rng.next_u32() as i32;
                }
                assert_eq!(
                    permute32_across_lanes(a, idx),
                    reference::permute32_across_lanes(a, idx)
                );
                let a16 = random16(&mut rng);
                let b16 = random16(&mut rng);
                assert_eq!(
                    shuffle_bytes16(a16, b16),
                    reference::shuffle_bytes16(a16, b16)
                );
                assert_eq!(cmpeq_i8_16(a16, b16), reference::cmpeq_i8_16(a16, b16));
                assert_eq!(or16(a16, b16), reference::or16(a16, b16));
                assert_eq!(movemask16(a16), reference::movemask16(a16));
            }
        }
    }
}

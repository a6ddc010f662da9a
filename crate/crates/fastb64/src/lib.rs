//! Base64 and base64url codec with vectorized kernels, strict validation,
//! whitespace stripping, and a benchmark harness.
//!
//! Encoding maps each 3-byte group to four characters of a 64-character
//! alphabet; decoding reverses it with exact error reporting (kind plus
//! byte offset). The hot paths process 24 input bytes (encode) or 32
//! characters (decode) per step on wide vectors, with a software reference
//! engine that defines the semantics bit for bit on every platform; the
//! scalar codec in [`scalar`] doubles as the correctness oracle and the
//! tail path.
//!
//! ```
//! use fastb64::{decode, encode, CodecConfig};
//!
//! let cfg = CodecConfig::default();
//! let text = encode(b"foobar", &cfg);
//! assert_eq!(text, b"Zm9vYmFy");
//! assert_eq!(decode(&text, &cfg).unwrap(), b"foobar");
//! ```
//!
//! Engine selection is explicit when you need it: [`Engine::resolve`]
//! yields a [`Backend`] (`scalar`, `simd`, or `emulated`), and the
//! `*_with` entry points run on it. All backends produce byte-identical
//! results, including error kinds and offsets.

pub mod alphabet;
pub mod bench;
pub mod config;
pub mod error;
pub mod scalar;
pub mod simd_decode;
pub mod simd_encode;
pub mod strict;
pub mod vector;
pub mod whitespace;

pub use alphabet::Variant;
pub use config::{Backend, CodecConfig, Engine, EngineUnavailable, Padding, Whitespace};
pub use error::{DecodeError, DecodeErrorKind};
pub use vector::accelerated_available as simd_available;

use vector::VectorBackend;

/// Encodes `input`, picking the fastest backend for this CPU.
pub fn encode(input: &[u8], config: &CodecConfig) -> Vec<u8> {
    let backend = Engine::Auto.resolve().expect("auto engine always resolves");
    encode_with(input, config, backend)
}

/// Encodes `input` on an explicit backend.
pub fn encode_with(input: &[u8], config: &CodecConfig, backend: Backend) -> Vec<u8> {
    let mut out = Vec::new();
    encode_into_with(&mut out, input, config, backend);
    out
}

/// [`encode_with`], appending to a caller-owned buffer.
pub fn encode_into_with(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig, backend: Backend) {
    match backend {
        Backend::Scalar => scalar::encode_fast_into(out, input, config),
        Backend::Simd => {
            simd_encode::encode_into_with(out, input, config, VectorBackend::Accelerated)
        }
        Backend::Emulated => {
            simd_encode::encode_into_with(out, input, config, VectorBackend::Emulated)
        }
    }
}

/// Decodes `input`, picking the fastest backend for this CPU.
///
/// Applies the configured whitespace policy first, then decodes. Errors
/// carry the offset of the first offending byte; with
/// [`Whitespace::Ignore`] offsets refer to the whitespace-stripped stream.
pub fn decode(input: &[u8], config: &CodecConfig) -> Result<Vec<u8>, DecodeError> {
    let backend = Engine::Auto.resolve().expect("auto engine always resolves");
    decode_with(input, config, backend)
}

/// Decodes `input` on an explicit backend.
pub fn decode_with(
    input: &[u8],
    config: &CodecConfig,
    backend: Backend,
) -> Result<Vec<u8>, DecodeError> {
    let mut out = Vec::new();
    decode_into_with(&mut out, input, config, backend)?;
    Ok(out)
}

/// [`decode_with`], appending to a caller-owned buffer.
///
/// On error the buffer holds the bytes decoded before the failure.
pub fn decode_into_with(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
    backend: Backend,
) -> Result<(), DecodeError> {
    if config.whitespace == Whitespace::Ignore {
        let mut stripped = input.to_vec();
        let len = match backend {
            Backend::Scalar => whitespace::despace_scalar(&mut stripped),
            Backend::Simd => {
                whitespace::despace_simd_with(&mut stripped, VectorBackend::Accelerated)
            }
            Backend::Emulated => {
                whitespace::despace_simd_with(&mut stripped, VectorBackend::Emulated)
            }
        };
        stripped.truncate(len);
        decode_clean_into(out, &stripped, config, backend)
    } else {
        decode_clean_into(out, input, config, backend)
    }
}

fn decode_clean_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
    backend: Backend,
) -> Result<(), DecodeError> {
    match backend {
        Backend::Scalar => scalar::decode_fast_into(out, input, config),
        Backend::Simd => {
            simd_decode::decode_into_with(out, input, config, VectorBackend::Accelerated)
        }
        Backend::Emulated => {
            simd_decode::decode_into_with(out, input, config, VectorBackend::Emulated)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn backends_agree_on_a_round_trip() {
        let cfg = CodecConfig::default().with_whitespace(Whitespace::Ignore);
        let data: Vec<u8> = (0..300).map(|i| (i * 7) as u8).collect();
        let scalar_text = encode_with(&data, &cfg, Backend::Scalar);
        let emulated_text = encode_with(&data, &cfg, Backend::Emulated);
        assert_eq!(scalar_text, emulated_text);
        let mut spaced = Vec::new();
        for (i, &b) in scalar_text.iter().enumerate() {
            spaced.push(b);
            if i % 7 == 6 {
                spaced.push(b'\n');
            }
        }
        assert_eq!(decode_with(&spaced, &cfg, Backend::Scalar).unwrap(), data);
        assert_eq!(decode_with(&spaced, &cfg, Backend::Emulated).unwrap(), data);
        if simd_available() {
            assert_eq!(encode_with(&data, &cfg, Backend::Simd), scalar_text);
            assert_eq!(decode_with(&spaced, &cfg, Backend::Simd).unwrap(), data);
        }
    }
}

//! Codec configuration and execution-engine selection.

use std::{error, fmt, str::FromStr};

use crate::alphabet::Variant;

/// Padding policy.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Padding {
    /// Encode emits `'='`; decode requires the input length to be divisible
    /// by 4, with pads only in the final quad.
    #[default]
    Required,
    /// Encode omits `'='`; decode additionally accepts a final partial quad
    /// of 2 or 3 data characters (padded input still decodes).
    AllowUnpadded,
}

/// What to do with whitespace on decode.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Whitespace {
    /// Whitespace is an error like any other byte outside the alphabet.
    #[default]
    Reject,
    /// Strip space, LF and CR before decoding.
    Ignore,
}

/// Options shared by every encode/decode entry point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct CodecConfig {
    pub variant: Variant,
    pub padding: Padding,
    pub whitespace: Whitespace,
    /// Reject non-canonical trailing bits in the final group.
    pub strict: bool,
}

impl CodecConfig {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_variant(mut self, variant: Variant) -> Self {
        self.variant = variant;
        self
    }

    pub fn with_padding(mut self, padding: Padding) -> Self {
        self.padding = padding;
        self
    }

    pub fn with_whitespace(mut self, whitespace: Whitespace) -> Self {
        self.whitespace = whitespace;
        self
    }

    pub fn with_strict(mut self, strict: bool) -> Self {
        self.strict = strict;
        self
    }
}

/// User-facing engine selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Engine {
    /// Hardware vector kernels when the CPU supports them, scalar otherwise.
    #[default]
    Auto,
    /// Table-driven scalar codec.
    Scalar,
    /// Hardware vector kernels; unavailable on CPUs without the ISA.
    Simd,
    /// The vector kernels run on the software reference engine.
    Emulated,
}

/// A resolved execution path; obtain one through [`Engine::resolve`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Backend {
    Scalar,
    Simd,
    Emulated,
}

/// Returned when `Engine::Simd` is requested on a host without the vector ISA.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineUnavailable;

impl fmt::Display for EngineUnavailable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("simd engine requested but this CPU lacks the required vector instructions")
    }
}

impl error::Error for EngineUnavailable {}

impl Engine {
    /// Picks the backend, checking CPU capabilities for `Simd` and `Auto`.
    pub fn resolve(self) -> Result<Backend, EngineUnavailable> {
        match self {
            Engine::Auto => {
                if crate::vector::accelerated_available() {
                    Ok(Backend::Simd)
                } else {
                    Ok(Backend::Scalar)
                }
            }
            Engine::Scalar => Ok(Backend::Scalar),
            Engine::Simd => {
                if crate::vector::accelerated_available() {
                    Ok(Backend::Simd)
                } else {
                    Err(EngineUnavailable)
                }
            }
            Engine::Emulated => Ok(Backend::Emulated),
        }
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "auto" => Ok(Engine::Auto),
            "scalar" => Ok(Engine::Scalar),
            "simd" => Ok(Engine::Simd),
            "emulated" => Ok(Engine::Emulated),
            other => Err(format!(
                "unknown engine {other:?}, expected auto|scalar|simd|emulated"
            )),
        }
    }
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Engine::Auto => "auto",
            Engine::Scalar => "scalar",
            Engine::Simd => "simd",
            Engine::Emulated => "emulated",
        };
        f.write_str(name)
    }
}

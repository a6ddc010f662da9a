//! Decode errors with exact byte offsets.

use std::{error, fmt};

/// What went wrong while decoding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecodeErrorKind {
    /// A byte outside the alphabet where a data character was required.
    InvalidCharacter,
    /// A `'='` anywhere other than the last one or two positions of the
    /// final quad, or a data character after a pad.
    InvalidPadding,
    /// The bits beyond the payload in the final characters are not zero,
    /// so the input cannot be the canonical encoding of any byte string.
    NonCanonicalTrailingBits,
    /// The input ends in the middle of a group: a final quad of length 1,
    /// or a length not divisible by 4 when padding is required.
    TruncatedInput,
}

impl fmt::Display for DecodeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DecodeErrorKind::InvalidCharacter => "InvalidCharacter",
            DecodeErrorKind::InvalidPadding => "InvalidPadding",
            DecodeErrorKind::NonCanonicalTrailingBits => "NonCanonicalTrailingBits",
            DecodeErrorKind::TruncatedInput => "TruncatedInput",
        };
        f.write_str(name)
    }
}

/// A decode failure: the kind plus the byte index where it was detected.
///
/// The offset always points at the first offending byte and is strictly
/// less than the input length.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DecodeError {
    pub kind: DecodeErrorKind,
    pub offset: usize,
}

impl DecodeError {
    pub(crate) fn new(kind: DecodeErrorKind, offset: usize) -> Self {
        DecodeError { kind, offset }
    }

    /// Shifts the offset by `delta`, for errors produced on a sub-slice.
    #[must_use]
    pub(crate) fn offset_by(mut self, delta: usize) -> Self {
        self.offset += delta;
        self
    }
}

impl fmt::Display for DecodeError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} at byte {}", self.kind, self.offset)
    }
}

impl error::Error for DecodeError {}

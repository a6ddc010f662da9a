//! Benchmark harness: per-byte cost of each codec across input sizes.
//!
//! For every size, seeded random binary data is generated once; encode is
//! timed over the binary input and decode over its encoding, for each
//! requested codec plus a plain memory-copy baseline. Timings take the
//! minimum over at least [`MIN_REPETITIONS`] runs (the mean is reported
//! alongside, with a warning when the two disagree by more than 5%).
//! A cycles-per-byte column is filled in when the platform exposes a cycle
//! counter. Inputs are deterministic for a given seed; timings, of course,
//! are not. Measurement is single-threaded; frequency scaling will affect
//! absolute numbers.
//!
//! Every codec's output is checked against the reference scalar codec on
//! the benchmark inputs before any timing runs.

use std::fmt::Write as _;
use std::hint::black_box;
use std::str::FromStr;
use std::time::Instant;

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::config::CodecConfig;
use crate::error::DecodeError;
use crate::vector::{self, VectorBackend};
use crate::{scalar, simd_decode, simd_encode};

/// Tests are repeated at least this many times; the row reports the
/// minimum and the mean.
pub const MIN_REPETITIONS: u32 = 500;

/// Warn when mean and minimum differ by more than this factor.
const NOISE_TOLERANCE: f64 = 1.05;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchCodec {
    /// Per-group arithmetic scalar codec.
    Scalar,
    /// Table-optimized scalar codec.
    ScalarFast,
    /// Hardware vector kernels.
    Simd,
    /// Vector kernels on the software reference engine.
    Emulated,
}

impl BenchCodec {
    pub const ALL: [BenchCodec; 4] = [
        BenchCodec::Scalar,
        BenchCodec::ScalarFast,
        BenchCodec::Simd,
        BenchCodec::Emulated,
    ];

    pub fn name(self) -> &'static str {
        match self {
            BenchCodec::Scalar => "scalar",
            BenchCodec::ScalarFast => "scalar-fast",
            BenchCodec::Simd => "simd",
            BenchCodec::Emulated => "emulated",
        }
    }
}

impl FromStr for BenchCodec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scalar" => Ok(BenchCodec::Scalar),
            "scalar-fast" => Ok(BenchCodec::ScalarFast),
            "simd" => Ok(BenchCodec::Simd),
            "emulated" => Ok(BenchCodec::Emulated),
            other => Err(format!(
                "unknown codec {other:?}, expected scalar|scalar-fast|simd|emulated"
            )),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Encode,
    Decode,
}

impl Direction {
    pub fn name(self) -> &'static str {
        match self {
            Direction::Encode => "encode",
            Direction::Decode => "decode",
        }
    }
}

/// One timed (codec, direction, size) cell.
#[derive(Debug, Clone, Copy)]
pub struct Measurement {
    pub reps: u32,
    pub min_ns: u64,
    pub mean_ns: f64,
    pub ns_per_byte: f64,
    pub cycles_per_byte: Option<f64>,
    pub baseline_ns_per_byte: f64,
    /// Mean exceeded the minimum by more than 5%.
    pub noisy: bool,
}

#[derive(Debug, Clone)]
pub enum RowOutcome {
    Measured(Measurement),
    Skipped(&'static str),
}

#[derive(Debug, Clone)]
pub struct BenchRow {
    pub codec: BenchCodec,
    pub direction: Direction,
    /// Input size of the operation: binary bytes for encode, base64
    /// characters for decode.
    pub size: usize,
    pub outcome: RowOutcome,
}

#[derive(Debug, Clone)]
pub struct BenchReport {
    pub seed: u64,
    pub rows: Vec<BenchRow>,
}

type EncodeFn = fn(&mut Vec<u8>, &[u8], &CodecConfig);
type DecodeFn = fn(&mut Vec<u8>, &[u8], &CodecConfig) -> Result<(), DecodeError>;

fn simd_encode_into(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig) {
    simd_encode::encode_into_with(out, input, config, VectorBackend::Accelerated);
}

fn emulated_encode_into(out: &mut Vec<u8>, input: &[u8], config: &CodecConfig) {
    simd_encode::encode_into_with(out, input, config, VectorBackend::Emulated);
}

fn simd_decode_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
) -> Result<(), DecodeError> {
    simd_decode::decode_into_with(out, input, config, VectorBackend::Accelerated)
}

fn emulated_decode_into(
    out: &mut Vec<u8>,
    input: &[u8],
    config: &CodecConfig,
) -> Result<(), DecodeError> {
    simd_decode::decode_into_with(out, input, config, VectorBackend::Emulated)
}

fn codec_fns(codec: BenchCodec) -> (EncodeFn, DecodeFn) {
    match codec {
        BenchCodec::Scalar => (scalar::encode_into, scalar::decode_into),
        BenchCodec::ScalarFast => (scalar::encode_fast_into, scalar::decode_fast_into),
        BenchCodec::Simd => (simd_encode_into, simd_decode_into),
        BenchCodec::Emulated => (emulated_encode_into, emulated_decode_into),
    }
}

#[cfg(target_arch = "x86_64")]
#[inline]
fn cycle_counter() -> Option<u64> {
    Some(unsafe { core::arch::x86_64::_rdtsc() })
}

#[cfg(not(target_arch = "x86_64"))]
#[inline]
fn cycle_counter() -> Option<u64> {
    None
}

fn time<F: FnMut()>(reps: u32, mut op: F) -> (u64, f64, Option<u64>) {
    let mut min_ns = u64::MAX;
    let mut total_ns: u128 = 0;
    let mut min_cycles: Option<u64> = None;
    for _ in 0..reps {
        let start_cycles = cycle_counter();
        let start = Instant::now();
        op();
        let elapsed = start.elapsed().as_nanos() as u64;
        if let (Some(c0), Some(c1)) = (start_cycles, cycle_counter()) {
            let cycles = c1.wrapping_sub(c0);
            min_cycles = Some(min_cycles.map_or(cycles, |m| m.min(cycles)));
        }
        min_ns = min_ns.min(elapsed);
        total_ns += u128::from(elapsed);
    }
    (min_ns, total_ns as f64 / f64::from(reps), min_cycles)
}

fn measure<F: FnMut()>(
    reps: u32,
    input_len: usize,
    baseline_ns_per_byte: f64,
    op: F,
) -> Measurement {
    let (min_ns, mean_ns, min_cycles) = time(reps, op);
    let len = input_len.max(1) as f64;
    Measurement {
        reps,
        min_ns,
        mean_ns,
        ns_per_byte: min_ns as f64 / len,
        cycles_per_byte: min_cycles.map(|c| c as f64 / len),
        baseline_ns_per_byte,
        noisy: mean_ns > min_ns as f64 * NOISE_TOLERANCE,
    }
}

/// Minimum time to copy `input` into a reused buffer, per byte.
fn baseline_copy(reps: u32, input: &[u8]) -> f64 {
    let mut sink = vec![0u8; input.len()];
    let (min_ns, _, _) = time(reps, || {
        sink.copy_from_slice(black_box(input));
        black_box(sink.last().copied());
    });
    min_ns as f64 / input.len().max(1) as f64
}

/// Runs the full measurement matrix. Inputs are derived from `seed` alone,
/// so report contents (not timings) reproduce across runs.
///
/// Codecs that need hardware support are reported as skipped when the CPU
/// lacks it. Panics if `sizes` is empty, `reps` is below
/// [`MIN_REPETITIONS`], or a codec disagrees with the reference output
/// (the correctness precheck).
pub fn run_bench(sizes: &[usize], codecs: &[BenchCodec], seed: u64, reps: u32) -> BenchReport {
    assert!(!sizes.is_empty(), "bench needs at least one input size");
    assert!(
        reps >= MIN_REPETITIONS,
        "bench repetitions must be at least {MIN_REPETITIONS}"
    );
    let config = CodecConfig::default();
    let mut rows = Vec::new();
    for &size in sizes {
        let mut rng =
            ChaCha8Rng::seed_from_u64(seed ^ (size as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15));
        let mut data = vec![0u8; size];
        rng.fill_bytes(&mut data);
        let text = scalar::encode(&data, &config);

        let encode_baseline = baseline_copy(reps, &data);
        let decode_baseline = baseline_copy(reps, &text);

        for &codec in codecs {
            let hw_needed = codec == BenchCodec::Simd;
            if hw_needed && !vector::accelerated_available() {
                for direction in [Direction::Encode, Direction::Decode] {
                    rows.push(BenchRow {
                        codec,
                        direction,
                        size: match direction {
                            Direction::Encode => data.len(),
                            Direction::Decode => text.len(),
                        },
                        outcome: RowOutcome::Skipped("skipped: no hardware backend"),
                    });
                }
                continue;
            }
            let (encode_fn, decode_fn) = codec_fns(codec);

            // Correctness precheck: identical bytes out of every codec
            // before a single timing sample.
            let mut check = Vec::new();
            encode_fn(&mut check, &data, &config);
            assert_eq!(
                check,
                text,
                "{} encode mismatch at size {size}",
                codec.name()
            );
            check.clear();
            decode_fn(&mut check, &text, &config).expect("precheck decode failed");
            assert_eq!(
                check,
                data,
                "{} decode mismatch at size {size}",
                codec.name()
            );

            let mut out = Vec::with_capacity(text.len().max(size) + 8);
            rows.push(BenchRow {
                codec,
                direction: Direction::Encode,
                size: data.len(),
                outcome: RowOutcome::Measured(measure(reps, data.len(), encode_baseline, || {
                    out.clear();
                    encode_fn(&mut out, black_box(&data), &config);
                    black_box(out.len());
                })),
            });
            rows.push(BenchRow {
                codec,
                direction: Direction::Decode,
                size: text.len(),
                outcome: RowOutcome::Measured(measure(reps, text.len(), decode_baseline, || {
                    out.clear();
                    decode_fn(&mut out, black_box(&text), &config).expect("prechecked input");
                    black_box(out.len());
                })),
            });
        }
    }
    BenchReport { seed, rows }
}

/// Human-readable table, one row per (codec, direction, size).
pub fn render_table(report: &BenchReport) -> String {
    let mut s = String::new();
    let _ = writeln!(
        s,
        "seed: {:#018x}  (min of N reps; ! marks mean > min + 5%)",
        report.seed
    );
    let _ = writeln!(
        s,
        "{:<12} {:<7} {:>9} {:>6} {:>12} {:>12} {:>9} {:>9} {:>13}",
        "codec", "dir", "size", "reps", "min_ns", "mean_ns", "ns/byte", "cyc/byte", "copy ns/byte"
    );
    for row in &report.rows {
        match &row.outcome {
            RowOutcome::Measured(m) => {
                let cycles = m
                    .cycles_per_byte
                    .map_or_else(|| "-".to_string(), |c| format!("{c:.3}"));
                let _ = writeln!(
                    s,
                    "{:<12} {:<7} {:>9} {:>6} {:>12} {:>12.1} {:>9.3} {:>9} {:>13.4}{}",
                    row.codec.name(),
                    row.direction.name(),
                    row.size,
                    m.reps,
                    m.min_ns,
                    m.mean_ns,
                    m.ns_per_byte,
                    cycles,
                    m.baseline_ns_per_byte,
                    if m.noisy { " !" } else { "" },
                );
            }
            RowOutcome::Skipped(reason) => {
                let _ = writeln!(
                    s,
                    "{:<12} {:<7} {:>9} {reason}",
                    row.codec.name(),
                    row.direction.name(),
                    row.size,
                );
            }
        }
    }
    s
}

/// Machine-readable CSV. Skipped rows leave the numeric fields empty.
pub fn render_csv(report: &BenchReport) -> String {
    let mut s = String::from(
        "codec,direction,size,reps,min_ns,mean_ns,ns_per_byte,cycles_per_byte,baseline_ns_per_byte\n",
    );
    for row in &report.rows {
        match &row.outcome {
            RowOutcome::Measured(m) => {
                let cycles = m
                    .cycles_per_byte
                    .map_or_else(String::new, |c| format!("{c:.4}"));
                let _ = writeln!(
                    s,
                    "{},{},{},{},{},{:.1},{:.4},{},{:.4}",
                    row.codec.name(),
                    row.direction.name(),
                    row.size,
                    m.reps,
                    m.min_ns,
                    m.mean_ns,
                    m.ns_per_byte,
                    cycles,
                    m.baseline_ns_per_byte,
                );
            }
            RowOutcome::Skipped(_) => {
                let _ = writeln!(
                    s,
                    "{},{},{},,,,,,",
                    row.codec.name(),
                    row.direction.name(),
                    row.size,
                );
            }
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_shape_and_determinism() {
        let sizes = [64usize, 256];
        let codecs = [BenchCodec::Scalar, BenchCodec::ScalarFast];
        let report = run_bench(&sizes, &codecs, 7, MIN_REPETITIONS);
        assert_eq!(report.rows.len(), sizes.len() * codecs.len() * 2);
        for row in &report.rows {
            assert!(matches!(row.outcome, RowOutcome::Measured(_)));
        }
        let csv = render_csv(&report);
        assert!(csv.starts_with("codec,direction,size,reps,"));
        assert_eq!(csv.lines().count(), 1 + report.rows.len());
        let table = render_table(&report);
        assert!(table.contains("scalar-fast"));
    }
}

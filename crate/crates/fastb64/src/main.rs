//! `fastb64`: encode/decode files or standard streams, and benchmark the
//! codecs.
//!
//! Exit codes: 0 on success, 1 on a decode error (reported to standard
//! error as `error: <kind> at byte <offset>`), 2 on usage or I/O errors.

use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use fastb64::bench::{self, BenchCodec};
use fastb64::vector::VectorBackend;
use fastb64::{
    whitespace, Backend, CodecConfig, DecodeError, DecodeErrorKind, Engine, Padding, Variant,
    Whitespace,
};

/// Encode reads multiples of three bytes and decode multiples of four, so
/// chunk boundaries never split a group and streaming output equals
/// whole-buffer output.
const ENCODE_CHUNK: usize = 3 << 16;
const DECODE_CHUNK: usize = 4 << 16;

#[derive(Parser)]
#[command(
    name = "fastb64",
    version,
    about = "Fast base64/base64url encoder and decoder"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode a file or standard input to base64
    Encode(EncodeArgs),
    /// Decode a base64 file or standard input
    Decode(DecodeArgs),
    /// Measure per-byte cost of the codecs
    Bench(BenchArgs),
}

#[derive(clap::Args)]
struct CommonArgs {
    /// Input file; "-" or absent reads standard input
    file: Option<PathBuf>,

    /// Write output to this file instead of standard output
    #[arg(short, long, value_name = "FILE")]
    output: Option<PathBuf>,

    /// Use the url-safe alphabet ('-' and '_')
    #[arg(long)]
    url_safe: bool,

    /// Encode: omit '=' padding. Decode: accept unpadded tails
    #[arg(long)]
    no_pad: bool,

    /// Execution engine: auto, scalar, simd or emulated
    #[arg(long, env = "FASTB64_ENGINE", default_value_t = Engine::Auto)]
    engine: Engine,
}

#[derive(clap::Args)]
struct EncodeArgs {
    #[command(flatten)]
    common: CommonArgs,
}

#[derive(clap::Args)]
struct DecodeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Strip space, LF and CR before decoding
    #[arg(long)]
    ignore_whitespace: bool,

    /// Reject non-canonical trailing bits in the final group
    #[arg(long)]
    strict: bool,
}

#[derive(clap::Args)]
struct BenchArgs {
    /// Comma-separated input sizes in bytes
    #[arg(long, value_delimiter = ',', default_values_t = vec![64usize, 1024, 8192, 65536])]
    sizes: Vec<usize>,

    /// Comma-separated codecs: scalar, scalar-fast, simd, emulated
    #[arg(long, value_delimiter = ',')]
    codecs: Option<Vec<BenchCodec>>,

    /// Seed for the deterministic benchmark inputs
    #[arg(long, default_value_t = 0xB64_B64)]
    seed: u64,

    /// Repetitions per measurement
    #[arg(long, default_value_t = 500, value_parser = clap::value_parser!(u32).range(500..))]
    reps: u32,

    /// Output format
    #[arg(long, value_enum, default_value_t = OutputFormat::Table)]
    format: OutputFormat,
}

#[derive(Clone, Copy, ValueEnum)]
enum OutputFormat {
    Table,
    Csv,
}

struct CliError {
    code: i32,
    message: String,
}

impl CliError {
    fn usage(message: impl Into<String>) -> Self {
        CliError {
            code: 2,
            message: message.into(),
        }
    }

    fn decode(err: DecodeError) -> Self {
        CliError {
            code: 1,
            message: err.to_string(),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(err: io::Error) -> Self {
        CliError {
            code: 2,
            message: err.to_string(),
        }
    }
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {}", err.message);
            err.code
        }
    };
    std::process::exit(code);
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Encode(args) => run_encode(args),
        Command::Decode(args) => run_decode(args),
        Command::Bench(args) => run_bench(args),
    }
}

fn resolve_engine(engine: Engine) -> Result<Backend, CliError> {
    engine.resolve().map_err(|e| CliError::usage(e.to_string()))
}

fn open_input(path: &Option<PathBuf>) -> Result<Box<dyn Read>, CliError> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            let file = File::open(p)
                .map_err(|e| CliError::usage(format!("cannot open {}: {e}", p.display())))?;
            Ok(Box::new(file))
        }
        _ => Ok(Box::new(io::stdin().lock())),
    }
}

fn open_output(path: &Option<PathBuf>) -> Result<BufWriter<Box<dyn Write>>, CliError> {
    let sink: Box<dyn Write> = match path {
        Some(p) => {
            let file = File::create(p)
                .map_err(|e| CliError::usage(format!("cannot create {}: {e}", p.display())))?;
            Box::new(file)
        }
        None => Box::new(io::stdout().lock()),
    };
    Ok(BufWriter::new(sink))
}

/// Reads until `buf` is full or the stream ends; returns bytes read.
fn read_full(reader: &mut dyn Read, buf: &mut [u8]) -> io::Result<usize> {
    let mut filled = 0;
    while filled < buf.len() {
        match reader.read(&mut buf[filled..]) {
            Ok(0) => break,
            Ok(n) => filled += n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(e),
        }
    }
    Ok(filled)
}

fn codec_config(common: &CommonArgs) -> CodecConfig {
    CodecConfig {
        variant: if common.url_safe {
            Variant::UrlSafe
        } else {
            Variant::Standard
        },
        padding: if common.no_pad {
            Padding::AllowUnpadded
        } else {
            Padding::Required
        },
        whitespace: Whitespace::Reject,
        strict: false,
    }
}

fn run_encode(args: EncodeArgs) -> Result<(), CliError> {
    let backend = resolve_engine(args.common.engine)?;
    let config = codec_config(&args.common);
    let mut reader = open_input(&args.common.file)?;
    let mut writer = open_output(&args.common.output)?;
    let mut buf = vec![0u8; ENCODE_CHUNK];
    let mut out = Vec::with_capacity(ENCODE_CHUNK / 3 * 4 + 4);
    loop {
        let len = read_full(reader.as_mut(), &mut buf)?;
        if len == 0 {
            break;
        }
        out.clear();
        fastb64::encode_into_with(&mut out, &buf[..len], &config, backend);
        writer.write_all(&out)?;
        if len < buf.len() {
            break;
        }
    }
    writer.flush()?;
    Ok(())
}

fn run_decode(args: DecodeArgs) -> Result<(), CliError> {
    let backend = resolve_engine(args.common.engine)?;
    let config = codec_config(&args.common).with_strict(args.strict);
    if args.ignore_whitespace {
        whitespace::warm_compaction_table();
    }
    let mut reader = open_input(&args.common.file)?;
    let mut writer = open_output(&args.common.output)?;
    let mut buf = vec![0u8; DECODE_CHUNK];
    let mut pending: Vec<u8> = Vec::new();
    let mut out = Vec::with_capacity(DECODE_CHUNK / 4 * 3 + 3);
    // Offset of pending[0] within the (whitespace-stripped) stream, for
    // error reporting.
    let mut decoded_base = 0usize;
    loop {
        let len = read_full(reader.as_mut(), &mut buf)?;
        let eof = len < buf.len();
        if args.ignore_whitespace {
            let kept = match backend {
                Backend::Scalar => whitespace::despace_scalar(&mut buf[..len]),
                Backend::Simd => {
                    whitespace::despace_simd_with(&mut buf[..len], VectorBackend::Accelerated)
                }
                Backend::Emulated => {
                    whitespace::despace_simd_with(&mut buf[..len], VectorBackend::Emulated)
                }
            };
            pending.extend_from_slice(&buf[..kept]);
        } else {
            pending.extend_from_slice(&buf[..len]);
        }
        if eof {
            out.clear();
            fastb64::decode_into_with(&mut out, &pending, &config, backend).map_err(|mut e| {
                e.offset += decoded_base;
                CliError::decode(e)
            })?;
            writer.write_all(&out)?;
            break;
        }
        // More input follows: hold back the last whole-or-partial quad and
        // decode the aligned rest, where no pad can be legal.
        let keep = 4 + pending.len() % 4;
        if pending.len() > keep {
            let cut = pending.len() - keep;
            decode_middle(&pending[..cut], &config, backend, decoded_base, &mut out)?;
            writer.write_all(&out)?;
            pending.drain(..cut);
            decoded_base += cut;
        }
    }
    writer.flush()?;
    Ok(())
}

/// Decodes a 4-aligned chunk that is not the end of the stream. Strict
/// checks do not apply here, and a pad in the chunk's last quad is a
/// mid-stream pad because more input follows.
fn decode_middle(
    chunk: &[u8],
    config: &CodecConfig,
    backend: Backend,
    base: usize,
    out: &mut Vec<u8>,
) -> Result<(), CliError> {
    let mid_config = CodecConfig {
        strict: false,
        ..*config
    };
    out.clear();
    fastb64::decode_into_with(out, chunk, &mid_config, backend).map_err(|mut e| {
        e.offset += base;
        CliError::decode(e)
    })?;
    let pad_at = if chunk[chunk.len() - 2] == b'=' {
        Some(chunk.len() - 2)
    } else if chunk[chunk.len() - 1] == b'=' {
        Some(chunk.len() - 1)
    } else {
        None
    };
    if let Some(pos) = pad_at {
        return Err(CliError::decode(DecodeError {
            kind: DecodeErrorKind::InvalidPadding,
            offset: base + pos,
        }));
    }
    Ok(())
}

fn run_bench(args: BenchArgs) -> Result<(), CliError> {
    if args.sizes.is_empty() {
        return Err(CliError::usage("at least one --sizes value is required"));
    }
    let codecs = args.codecs.unwrap_or_else(|| BenchCodec::ALL.to_vec());
    let report = bench::run_bench(&args.sizes, &codecs, args.seed, args.reps);
    let rendered = match args.format {
        OutputFormat::Table => bench::render_table(&report),
        OutputFormat::Csv => bench::render_csv(&report),
    };
    print!("{rendered}");
    Ok(())
}

//! `qpixel` command-line front end.
//!
//! Exit codes: 2 usage, 3 I/O (including unreadable image files), 4 domain
//! errors, 5 simulation qubit budget exceeded.

use std::collections::BTreeMap;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Instant, SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use qpixel::bench::time_transforms;
use qpixel::circuit::emit_qasm;
use qpixel::encoding::vectorize;
use qpixel::error::{CircuitError, Error, NetpbmError, SimError};
use qpixel::netpbm::{load_image, read_image, write_image, NetpbmFormat};
use qpixel::pipeline::{decode, encode, Encoded};
use qpixel::sim::{
    compare, image_quality, oracle_state, simulate_with_budget, DEFAULT_QUBIT_BUDGET,
};
use qpixel::{CompressionReport, GateCounts, ImageBuffer, Mapping, QualityMetrics};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Parser)]
#[command(
    name = "qpixel",
    version,
    about = "Quantum pixel representation circuits"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Synthesize a state-preparation circuit and write it as OPENQASM 2.0.
    Encode(EncodeArgs),
    /// Encode, simulate, reconstruct and report quality against the input.
    Roundtrip(RoundtripArgs),
    /// Time the angle transforms and print CSV (n,op,median_ms).
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// PGM or PPM image (PPM with --alpha for INCQI).
    #[arg(long)]
    pub input: PathBuf,
    /// PGM alpha mask paired with an RGB --input.
    #[arg(long)]
    pub alpha: Option<PathBuf>,
    /// frqi, ifrqi, neqr, mcrqi or incqi.
    #[arg(long, value_parser = parse_mapping)]
    pub mapping: Mapping,
    /// Percentage of smallest circuit angles to drop, 0 to 100.
    #[arg(long, default_value_t = 0.0, allow_negative_numbers = true)]
    pub compress: f64,
    /// Metrics JSON path; standard output when omitted.
    #[arg(long)]
    pub metrics: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct EncodeArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// QASM output path. Without it only metrics are produced.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct RoundtripArgs {
    #[command(flatten)]
    pub input: InputArgs,
    /// Reconstructed image (PGM or PPM).
    #[arg(long)]
    pub recon: PathBuf,
    /// Alpha plane of a reconstructed INCQI image; defaults to `<recon>_alpha.pgm`.
    #[arg(long)]
    pub recon_alpha: Option<PathBuf>,
    /// Optional QASM output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Refuse to simulate circuits wider than this.
    #[arg(long, default_value_t = DEFAULT_QUBIT_BUDGET)]
    pub max_qubits: usize,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    #[arg(long, default_value_t = 10)]
    pub min_n: u32,
    #[arg(long, default_value_t = 20)]
    pub max_n: u32,
    #[arg(long, default_value_t = 5)]
    pub reps: usize,
    /// CSV output path; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

fn parse_mapping(s: &str) -> Result<Mapping, String> {
    s.parse()
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Image { path: PathBuf, source: NetpbmError },
    #[error(transparent)]
    Domain(#[from] Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Io { .. } | CliError::Image { .. } => 3,
            CliError::Domain(Error::Sim(SimError::QubitBudget { .. })) => 5,
            CliError::Domain(Error::Netpbm(_)) => 3,
            CliError::Domain(Error::Circuit(CircuitError::Io(_))) => 3,
            CliError::Domain(_) => 4,
        }
    }
}

fn io_err(path: &Path) -> impl FnOnce(io::Error) -> CliError + '_ {
    move |source| CliError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn image_err(path: &Path) -> impl FnOnce(NetpbmError) -> CliError + '_ {
    move |source| match source {
        NetpbmError::Io(source) => CliError::Io {
            path: path.to_path_buf(),
            source,
        },
        source => CliError::Image {
            path: path.to_path_buf(),
            source,
        },
    }
}

/// One JSON record per invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricsRecord {
    pub schema: u32,
    pub command: String,
    pub input: PathBuf,
    pub alpha: Option<PathBuf>,
    pub mapping: Mapping,
    pub width: usize,
    pub height: usize,
    pub bit_depth: u32,
    pub n: u32,
    pub color_qubits: usize,
    pub padded_pixel_count: usize,
    pub compression_percent: f64,
    pub gate_counts: GateCounts,
    /// One report per color plane.
    pub compression: Vec<CompressionReport>,
    pub quality: Option<QualityMetrics>,
    pub wall_times_ms: BTreeMap<String, f64>,
    /// Seconds since the Unix epoch; the only nondeterministic field.
    pub timestamp: u64,
}

impl MetricsRecord {
    fn new(command: &str, args: &InputArgs, enc: &Encoded) -> Self {
        let spec = &enc.spec;
        Self {
            schema: SCHEMA_VERSION,
            command: command.into(),
            input: args.input.clone(),
            alpha: args.alpha.clone(),
            mapping: spec.mapping,
            width: spec.width,
            height: spec.height,
            bit_depth: spec.bit_depth,
            n: spec.n,
            color_qubits: spec.color_qubits,
            padded_pixel_count: spec.padded_pixel_count,
            compression_percent: spec.compression_percent,
            gate_counts: enc.circuit.counts(),
            compression: enc.reports.clone(),
            quality: None,
            wall_times_ms: BTreeMap::new(),
            timestamp: SystemTime::now()
                .duration_since(UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        }
    }
}

/// Records wall time per phase.
struct Timer(BTreeMap<String, f64>);

impl Timer {
    fn time<T>(&mut self, phase: &str, f: impl FnOnce() -> T) -> T {
        let start = Instant::now();
        let out = f();
        self.0
            .insert(phase.into(), start.elapsed().as_secs_f64() * 1e3);
        out
    }
}

fn load_input(args: &InputArgs) -> Result<ImageBuffer, CliError> {
    match &args.alpha {
        None => read_image(&args.input).map_err(image_err(&args.input)),
        Some(alpha_path) => {
            if args.mapping != Mapping::Incqi {
                return Err(CliError::Usage(
                    "--alpha is only meaningful with --mapping incqi".into(),
                ));
            }
            let rgb = load_image(&args.input, NetpbmFormat::Ppm).map_err(image_err(&args.input))?;
            let alpha = load_image(alpha_path, NetpbmFormat::Pgm).map_err(image_err(alpha_path))?;
            Ok(ImageBuffer::with_alpha(&rgb, &alpha).map_err(Error::from)?)
        }
    }
}

fn write_qasm(path: &Path, enc: &Encoded) -> Result<(), CliError> {
    let file = File::create(path).map_err(io_err(path))?;
    let mut w = BufWriter::new(file);
    emit_qasm(&enc.circuit, &mut w).map_err(|e| match e {
        CircuitError::Io(source) => CliError::Io {
            path: path.to_path_buf(),
            source,
        },
        e => CliError::Domain(e.into()),
    })?;
    w.flush().map_err(io_err(path))
}

fn write_metrics(path: Option<&Path>, record: &MetricsRecord) -> Result<(), CliError> {
    let json = serde_json::to_string_pretty(record).expect("metrics serialize");
    match path {
        Some(p) => std::fs::write(p, json + "\n").map_err(io_err(p)),
        None => {
            let mut out = io::stdout().lock();
            writeln!(out, "{json}").map_err(io_err(Path::new("<stdout>")))
        }
    }
}

fn sibling_alpha_path(recon: &Path) -> PathBuf {
    let stem = recon
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "recon".into());
    recon.with_file_name(format!("{stem}_alpha.pgm"))
}

pub fn cmd_encode(args: &EncodeArgs) -> Result<MetricsRecord, CliError> {
    let mut timer = Timer(BTreeMap::new());
    let img = timer.time("load", || load_input(&args.input))?;
    let enc = timer.time("encode", || {
        encode(&img, args.input.mapping, args.input.compress)
    })?;
    if let Some(out) = &args.out {
        timer.time("emit", || write_qasm(out, &enc))?;
    }
    let mut record = MetricsRecord::new("encode", &args.input, &enc);
    record.wall_times_ms = timer.0;
    write_metrics(args.input.metrics.as_deref(), &record)?;
    Ok(record)
}

pub fn cmd_roundtrip(args: &RoundtripArgs) -> Result<MetricsRecord, CliError> {
    let mut timer = Timer(BTreeMap::new());
    let img = timer.time("load", || load_input(&args.input))?;
    let enc = timer.time("encode", || {
        encode(&img, args.input.mapping, args.input.compress)
    })?;
    if let Some(out) = &args.out {
        timer.time("emit", || write_qasm(out, &enc))?;
    }
    let state = timer
        .time("simulate", || {
            simulate_with_budget(&enc.circuit, args.max_qubits)
        })
        .map_err(Error::from)?;
    let recon = timer.time("reconstruct", || decode(&enc.spec, &state))?;
    let quality = timer.time("compare", || -> Result<_, Error> {
        let oracle = oracle_state(&enc.spec, &vectorize(&img).channels)?;
        let state_cmp = compare(&state, &oracle)?;
        let image_cmp = image_quality(&img, &recon)?;
        Ok(QualityMetrics::new(state_cmp, image_cmp))
    })?;
    timer.time("write", || -> Result<(), CliError> {
        match recon.split_alpha() {
            Some((rgb, alpha)) => {
                write_image(&args.recon, &rgb).map_err(image_err(&args.recon))?;
                let alpha_path = args
                    .recon_alpha
                    .clone()
                    .unwrap_or_else(|| sibling_alpha_path(&args.recon));
                write_image(&alpha_path, &alpha).map_err(image_err(&alpha_path))
            }
            None => write_image(&args.recon, &recon).map_err(image_err(&args.recon)),
        }
    })?;
    let mut record = MetricsRecord::new("roundtrip", &args.input, &enc);
    record.quality = Some(quality);
    record.wall_times_ms = timer.0;
    write_metrics(args.input.metrics.as_deref(), &record)?;
    Ok(record)
}

pub fn cmd_bench(args: &BenchArgs) -> Result<(), CliError> {
    if args.max_n < args.min_n {
        return Err(CliError::Usage(format!(
            "--max-n ({}) is below --min-n ({})",
            args.max_n, args.min_n
        )));
    }
    if args.max_n >= usize::BITS - 4 {
        return Err(CliError::Usage(format!(
            "--max-n {} is too large",
            args.max_n
        )));
    }
    let report = time_transforms(args.min_n, args.max_n, args.reps);
    for n in &report.skipped {
        eprintln!("note: skipped n={n}: could not allocate 2^{n} values");
    }
    let mut csv = String::from("n,op,median_ms\n");
    for row in &report.rows {
        csv.push_str(&format!("{},{},{:.6}\n", row.n, row.op, row.median_ms));
    }
    match &args.out {
        Some(p) => std::fs::write(p, csv).map_err(io_err(p)),
        None => io::stdout()
            .lock()
            .write_all(csv.as_bytes())
            .map_err(io_err(Path::new("<stdout>"))),
    }
}

pub fn run(cli: &Cli) -> Result<(), CliError> {
    match &cli.command {
        Command::Encode(a) => cmd_encode(a).map(|_| ()),
        Command::Roundtrip(a) => cmd_roundtrip(a).map(|_| ()),
        Command::Bench(a) => cmd_bench(a),
    }
}

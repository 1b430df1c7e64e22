//! The `ldpc` command line.
//!
//! Output goes to `--out` when given and to stdout otherwise. Every failure
//! is reported as one line starting with `PARSE/`, `DOMAIN/`, `BUDGET/` or
//! `IO/`.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};

use crate::codes::{
    binary_image, build_gallager, build_ru, fixtures, qc_expand_circulant, qc_expand_tailbiting, random_labeling,
    read_alist, write_alist, write_label_file, LinearCode, QcPolynomialMatrix,
};
use crate::error::{Error, Result};
use crate::gf2::GfField;
use crate::rng::derive_seed;
use crate::sim::{records_to_csv, records_to_plot, run_sweep, Channel, DecoderKind, SweepSpec};
use crate::spectra::{ensemble_avg_spectrum, parse_grid, BoundTable, SpectrumKind, SpectrumTable};
use crate::structure::{analyze, extend_rpc_auto, AnalysisOptions, Budget, RhoMethod};

#[derive(Parser, Debug)]
#[command(name = "ldpc", version, about = "Build, analyze, decode and bound short LDPC codes")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generate a parity-check matrix and write it as alist.
    Gen(GenArgs),
    /// Report distances, stopping distance, girth and degree profile.
    Analyze(AnalyzeArgs),
    /// Append redundant dual codewords of lowest weight to H.
    Extend(ExtendArgs),
    /// Exact ensemble-average weight or stopping-set spectrum as CSV.
    Spectrum(SpectrumArgs),
    /// Union-type BEC bounds from a spectrum CSV.
    Bound(BoundArgs),
    /// Monte Carlo FER sweep.
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Family {
    Gallager,
    Ru,
    Qc,
    Nonbinary,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Expansion {
    Tailbiting,
    Circulant,
}

#[derive(clap::Args, Debug)]
struct GenArgs {
    #[arg(long, value_enum)]
    family: Family,
    /// Column weight.
    #[arg(long, default_value_t = 3)]
    j: usize,
    /// Row weight.
    #[arg(long, default_value_t = 6)]
    k: usize,
    /// Length (in symbols for the nonbinary family).
    #[arg(long, default_value_t = 48)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Exponent matrix file for the QC family; the bundled one if omitted.
    #[arg(long)]
    qc: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Expansion::Circulant)]
    expansion: Expansion,
    /// Extension degree of GF(2^m) for the nonbinary family.
    #[arg(long, default_value_t = 4)]
    m: u32,
    /// Where to write the symbol labels of a nonbinary code.
    #[arg(long)]
    labels_out: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct AnalyzeArgs {
    /// Parity-check matrix in alist format.
    input: PathBuf,
    #[arg(long, default_value_t = 16)]
    distance_cap: usize,
    #[arg(long, default_value_t = 8)]
    stopping_cap: usize,
    /// Comma-separated stopping redundancy levels.
    #[arg(long, value_delimiter = ',')]
    rho_levels: Vec<usize>,
    /// Greedy search over all dual codewords instead of the sampled estimate.
    #[arg(long, conflicts_with = "rho_counted")]
    rho_exact: bool,
    /// Exact stopping-set counts from the census instead of sampling.
    #[arg(long)]
    rho_counted: bool,
    #[arg(long, default_value_t = 100_000)]
    rho_samples: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Time limit per computation.
    #[arg(long, default_value_t = Budget::DEFAULT_SECONDS)]
    seconds: u64,
    /// One CSV row with header instead of key=value lines.
    #[arg(long)]
    csv: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct ExtendArgs {
    input: PathBuf,
    #[arg(long)]
    rpc_rows: usize,
    #[arg(long, default_value_t = Budget::DEFAULT_SECONDS)]
    seconds: u64,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum KindArg {
    Weight,
    Stopping,
    Both,
}

#[derive(clap::Args, Debug)]
struct SpectrumArgs {
    #[arg(long)]
    j: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, default_value_t = 2)]
    q: u64,
    /// Length in q-ary symbols.
    #[arg(long)]
    n: usize,
    #[arg(long, value_enum, default_value_t = KindArg::Both)]
    kind: KindArg,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(clap::Args, Debug)]
struct BoundArgs {
    /// Spectrum CSV as written by `spectrum`.
    input: PathBuf,
    /// Values and `start:step:stop` ranges, comma separated.
    #[arg(long, default_value = "0.05:0.05:0.95")]
    eps: String,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ChannelArg {
    Bec,
    Awgn,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum DecoderArg {
    Bp,
    Ml,
    Rpc,
}

#[derive(clap::Args, Debug)]
struct SimulateArgs {
    input: PathBuf,
    #[arg(long, value_enum)]
    channel: ChannelArg,
    /// Erasure probabilities (BEC).
    #[arg(long)]
    eps: Option<String>,
    /// Eb/N0 values in dB (AWGN).
    #[arg(long)]
    ebno_db: Option<String>,
    #[arg(long, value_enum, default_value_t = DecoderArg::Bp)]
    decoder: DecoderArg,
    /// Redundant rows for the RPC decoder.
    #[arg(long, default_value_t = 0)]
    rpc_rows: usize,
    #[arg(long, default_value_t = SweepSpec::DEFAULT_MAX_FRAMES)]
    max_frames: u64,
    #[arg(long, default_value_t = SweepSpec::DEFAULT_TARGET_ERRORS)]
    target_errors: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Sum-product iteration limit.
    #[arg(long, default_value_t = 50)]
    max_iter: usize,
    /// Emit `curve,x,y` plot data instead of the record CSV.
    #[arg(long)]
    plot: bool,
    #[arg(long)]
    out: Option<PathBuf>,
}

fn read_text(path: &PathBuf) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display()))))
}

fn read_code(path: &PathBuf) -> Result<LinearCode> {
    Ok(LinearCode::new(read_alist(&read_text(path)?)?))
}

fn emit(out: &Option<PathBuf>, text: &str, stdout: &mut dyn Write) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))),
        None => Ok(stdout.write_all(text.as_bytes())?),
    }
}

fn gen(a: &GenArgs, stdout: &mut dyn Write) -> Result<()> {
    let code = match a.family {
        Family::Gallager => build_gallager(a.j, a.k, a.n, a.seed)?,
        Family::Ru => build_ru(a.j, a.k, a.n, a.seed)?.0,
        Family::Qc => {
            let q = match &a.qc {
                Some(path) => QcPolynomialMatrix::parse(&read_text(path)?)?,
                None => fixtures::qc48_exponents(),
            };
            match a.expansion {
                Expansion::Tailbiting => qc_expand_tailbiting(&q)?,
                Expansion::Circulant => qc_expand_circulant(&q)?,
            }
        }
        Family::Nonbinary => {
            let base = build_gallager(a.j, a.k, a.n, a.seed)?;
            let field = GfField::new(a.m)?;
            let labeled = random_labeling(base.h(), &field, derive_seed(a.seed, 1));
            if let Some(path) = &a.labels_out {
                emit(&Some(path.clone()), &write_label_file(&labeled), stdout)?;
            }
            binary_image(&labeled)
        }
    };
    emit(&a.out, &write_alist(code.h()), stdout)
}

fn analyze_cmd(a: &AnalyzeArgs, stdout: &mut dyn Write) -> Result<()> {
    let code = read_code(&a.input)?;
    let opts = AnalysisOptions {
        distance_cap: a.distance_cap,
        stopping_cap: a.stopping_cap,
        rho_levels: a.rho_levels.clone(),
        rho_method: if a.rho_exact {
            RhoMethod::ExactGreedy { max_candidates: 1 << 20 }
        } else if a.rho_counted {
            RhoMethod::Counted
        } else {
            RhoMethod::Sampled {
                samples: a.rho_samples,
                seed: a.seed,
            }
        },
        seconds: a.seconds,
    };
    let report = analyze(&code, &opts)?;
    let text = if a.csv {
        format!("{}\n{}\n", crate::structure::AnalysisReport::CSV_HEADER, report.csv_row())
    } else {
        report.key_values()
    };
    emit(&a.out, &text, stdout)
}

fn extend_cmd(a: &ExtendArgs, stdout: &mut dyn Write) -> Result<()> {
    let code = read_code(&a.input)?;
    let budget = Budget::from_now(std::time::Duration::from_secs(a.seconds));
    let ext = extend_rpc_auto(&code, a.rpc_rows, &budget)?;
    emit(&a.out, &write_alist(ext.h()), stdout)
}

fn spectrum_cmd(a: &SpectrumArgs, stdout: &mut dyn Write) -> Result<()> {
    let kinds: &[SpectrumKind] = match a.kind {
        KindArg::Weight => &[SpectrumKind::Weight],
        KindArg::Stopping => &[SpectrumKind::Stopping],
        KindArg::Both => &[SpectrumKind::Weight, SpectrumKind::Stopping],
    };
    let mut text = format!("{}\n", SpectrumTable::CSV_HEADER);
    for &kind in kinds {
        text.push_str(&ensemble_avg_spectrum(a.j, a.k, a.q, a.n, kind)?.to_csv_rows());
    }
    emit(&a.out, &text, stdout)
}

fn bound_cmd(a: &BoundArgs, stdout: &mut dyn Write) -> Result<()> {
    let spectra = SpectrumTable::parse_csv(&read_text(&a.input)?)?;
    let grid = parse_grid(&a.eps)?;
    emit(&a.out, &BoundTable::from_spectra(&spectra, &grid)?.to_csv(), stdout)
}

fn simulate_cmd(a: &SimulateArgs, stdout: &mut dyn Write) -> Result<()> {
    let code = read_code(&a.input)?;
    let (channel, grid) = match (a.channel, &a.eps, &a.ebno_db) {
        (ChannelArg::Bec, Some(g), None) => (Channel::Bec, parse_grid(g)?),
        (ChannelArg::Awgn, None, Some(g)) => (Channel::Awgn, parse_grid(g)?),
        (ChannelArg::Bec, _, _) => return Err(Error::Parse("the BEC needs --eps and no --ebno-db".into())),
        (ChannelArg::Awgn, _, _) => return Err(Error::Parse("AWGN needs --ebno-db and no --eps".into())),
    };
    let decoder = match a.decoder {
        DecoderArg::Bp => DecoderKind::Bp,
        DecoderArg::Ml => DecoderKind::Ml,
        DecoderArg::Rpc => DecoderKind::Rpc(a.rpc_rows),
    };
    let spec = SweepSpec {
        max_frames: a.max_frames,
        target_frame_errors: a.target_errors,
        base_seed: a.seed,
        bp: crate::decoders::BpConfig {
            max_iter: a.max_iter,
            ..Default::default()
        },
        ..SweepSpec::new(channel, grid, decoder)
    };
    let records = run_sweep(&code, &spec)?;
    let text = if a.plot {
        records_to_plot(&records)
    } else {
        records_to_csv(&records)
    };
    emit(&a.out, &text, stdout)
}

/// Parses `args` (program name first) and runs the subcommand.
pub fn run<I, T>(args: I, stdout: &mut dyn Write) -> Result<()>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            write!(stdout, "{e}")?;
            return Ok(());
        }
        Err(e) => {
            let text = e.to_string();
            let first = text.lines().next().unwrap_or("invalid arguments");
            return Err(Error::Parse(first.trim_start_matches("error: ").to_string()));
        }
    };
    match &cli.command {
        Command::Gen(a) => gen(a, stdout),
        Command::Analyze(a) => analyze_cmd(a, stdout),
        Command::Extend(a) => extend_cmd(a, stdout),
        Command::Spectrum(a) => spectrum_cmd(a, stdout),
        Command::Bound(a) => bound_cmd(a, stdout),
        Command::Simulate(a) => simulate_cmd(a, stdout),
    }
}

/// Runs the command line and returns the process exit status. Errors are
/// printed to stderr on one line.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let mut lock = stdout.lock();
    match run(args, &mut lock) {
        Ok(()) => 0,
        Err(e) => {
            let line = e.to_string().replace('\n', " ");
            eprintln!("{line}");
            2
        }
    }
}

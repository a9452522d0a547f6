//! The `psldpc` command line.
//!
//! Every stage reads and writes plain files, with defaults chosen so that a
//! bare pipeline run in one directory chains together:
//!
//! ```text
//! psldpc gen-base gcd --p 64 --l 8        # -> base.exp
//! psldpc gen-mask h --m 4 --n 8           # -> masks.mask
//! psldpc splice --n 4 --latin circulant   # base.exp + masks.mask -> compound.exp
//! psldpc girth --cap 12                   # reads compound.exp
//! ```
//!
//! `--out -` writes to stdout.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::construct::{
    extend_maskset, gcd_base, splice_binary, splice_exponent, splice_special_n2, LatinSquare,
    MaskSet, Partition,
};
use crate::error::{Error, Result};
use crate::girth::{girth_exponent, girth_graph, shortest_cycle, GirthResult, DEFAULT_CAP};
use crate::io::{
    read_alist, read_exponent, read_file, read_latin, read_maskset, write_alist, write_exponent,
    write_latin, write_maskset, write_results_csv,
};
use crate::matrix::{expand, profile, CodeProfile, ExponentMatrix, SparseBinaryMatrix};
use crate::simulate::{run_ber, ChannelPoint, SimConfig, StopRule};

const BASE_FILE: &str = "base.exp";
const MASK_FILE: &str = "masks.mask";
const LATIN_FILE: &str = "latin.latin";
const COMPOUND_FILE: &str = "compound.exp";

#[derive(Debug, Parser)]
#[command(name = "psldpc", version, about = "Partition-and-splicing QC-LDPC construction toolkit")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Generate a base exponent matrix.
    GenBase(GenBaseArgs),
    /// Generate a partition mask set.
    GenMask(GenMaskArgs),
    /// Generate a Latin square.
    GenLatin(GenLatinArgs),
    /// Splice a base code into a longer one.
    Splice(SpliceArgs),
    /// Compute the girth of an exponent matrix or an alist matrix.
    Girth(GirthArgs),
    /// Expand an exponent matrix into an alist parity-check matrix.
    Expand(ExpandArgs),
    /// Monte-Carlo BER/FER simulation over BPSK/AWGN.
    Simulate(SimulateArgs),
    /// Row/column weight distribution and designed rate.
    Profile(ProfileArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum BaseKind {
    Gcd,
}

#[derive(Debug, Args)]
pub struct GenBaseArgs {
    pub kind: BaseKind,
    /// Lift (circulant) size.
    #[arg(long)]
    pub p: u32,
    /// Number of block columns.
    #[arg(long)]
    pub l: u32,
    #[arg(long, default_value = BASE_FILE)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MaskKind {
    D,
    T,
    H,
    Custom,
}

#[derive(Debug, Args)]
pub struct GenMaskArgs {
    pub kind: MaskKind,
    #[arg(long, required_if_eq_any([("kind", "d"), ("kind", "t"), ("kind", "h")]))]
    pub m: Option<usize>,
    #[arg(long, required_if_eq_any([("kind", "d"), ("kind", "t"), ("kind", "h")]))]
    pub n: Option<usize>,
    /// Mask file to validate for `custom`.
    #[arg(long, required_if_eq("kind", "custom"))]
    pub from: Option<PathBuf>,
    /// Pad a two-mask set with zero masks up to this many masks.
    #[arg(long)]
    pub count: Option<usize>,
    #[arg(long, default_value = MASK_FILE)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum LatinKind {
    Circulant,
    Random,
    Custom,
}

#[derive(Debug, Args)]
pub struct GenLatinArgs {
    pub kind: LatinKind,
    /// Order of the square.
    #[arg(long, required_unless_present = "from")]
    pub n: Option<usize>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Latin-square file to validate for `custom`.
    #[arg(long, required_if_eq("kind", "custom"))]
    pub from: Option<PathBuf>,
    #[arg(long, default_value = LATIN_FILE)]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SpliceArgs {
    /// Base exponent matrix.
    #[arg(long, conflicts_with = "alist")]
    pub base: Option<PathBuf>,
    /// Base binary matrix (binary splicing); needs `--lift`.
    #[arg(long, requires = "lift")]
    pub alist: Option<PathBuf>,
    /// Block size of the binary base.
    #[arg(long)]
    pub lift: Option<u32>,
    #[arg(long, default_value = MASK_FILE)]
    pub mask: PathBuf,
    /// Number of components N (defaults to the Latin square order or 2).
    #[arg(long)]
    pub n: Option<usize>,
    /// `circulant`, `random`, or a Latin-square file.
    #[arg(long, default_value = "circulant")]
    pub latin: String,
    /// Seed for `--latin random`.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Two-fold splice with triangular masks, ignoring mask and Latin options.
    #[arg(long, conflicts_with = "alist")]
    pub special: bool,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct MatrixInput {
    #[arg(long, conflicts_with = "alist")]
    pub exponent: Option<PathBuf>,
    #[arg(long)]
    pub alist: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct GirthArgs {
    #[command(flatten)]
    pub input: MatrixInput,
    #[arg(long, default_value_t = DEFAULT_CAP)]
    pub cap: u32,
    /// Print a shortest cycle (exponent input only).
    #[arg(long)]
    pub witness: bool,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ExpandArgs {
    #[arg(long, default_value = COMPOUND_FILE)]
    pub exponent: PathBuf,
    #[arg(long, default_value = "compound.alist")]
    pub out: PathBuf,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[arg(long)]
    pub alist: Option<PathBuf>,
    #[arg(long, conflicts_with = "alist")]
    pub exponent: Option<PathBuf>,
    /// `start:step:stop` in dB, or a comma-separated list.
    #[arg(long, default_value = "1.0:0.5:4.0")]
    pub snr: String,
    #[arg(long, default_value_t = crate::simulate::DEFAULT_MAX_ITER)]
    pub max_iter: usize,
    #[arg(long, default_value_t = 100)]
    pub min_errors: u64,
    #[arg(long, default_value_t = 10_000_000)]
    pub max_frames: u64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long)]
    pub threads: Option<usize>,
    #[arg(long, default_value = "-")]
    pub out: PathBuf,
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct ProfileArgs {
    #[command(flatten)]
    pub input: MatrixInput,
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub quiet: bool,
}

fn write_output(path: &Path, text: &str, stdout: &mut dyn Write) -> Result<()> {
    if path == Path::new("-") {
        stdout.write_all(text.as_bytes())?;
    } else {
        std::fs::write(path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
    }
    Ok(())
}

fn load_matrix(input: &MatrixInput) -> Result<(SparseBinaryMatrix, Option<ExponentMatrix>)> {
    match (&input.exponent, &input.alist) {
        (_, Some(a)) => Ok((read_file(a, read_alist)?, None)),
        (e, None) => {
            let path = e.clone().unwrap_or_else(|| COMPOUND_FILE.into());
            let e = read_file(&path, read_exponent)?;
            Ok((expand(&e), Some(e)))
        }
    }
}

/// Parses `start:step:stop` or `a,b,c`.
pub fn parse_snr_list(spec: &str) -> Result<Vec<f64>> {
    let bad = || Error::InvalidArgument(format!("cannot parse SNR list `{spec}`"));
    let num = |t: &str| t.trim().parse::<f64>().map_err(|_| bad());
    if spec.contains(':') {
        let parts: Vec<f64> = spec.split(':').map(num).collect::<Result<_>>()?;
        let [start, step, stop] = parts[..] else {
            return Err(bad());
        };
        if !(step > 0.0) || stop < start {
            return Err(bad());
        }
        let count = ((stop - start) / step + 1e-9).floor() as usize + 1;
        Ok((0..count).map(|k| start + k as f64 * step).collect())
    } else {
        spec.split(',').map(num).collect()
    }
}

/// Per-point seed from the run seed and the SNR value.
fn point_seed(seed: u64, snr: f64) -> u64 {
    let mut z = seed ^ snr.to_bits().wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

fn resolve_latin(spec: &str, order: Option<usize>, seed: u64) -> Result<LatinSquare> {
    match spec {
        "circulant" => LatinSquare::circulant(order.unwrap_or(2)),
        "random" => LatinSquare::random(order.unwrap_or(2), &mut ChaCha8Rng::seed_from_u64(seed)),
        path => {
            let a = read_file(Path::new(path), read_latin)?;
            if let Some(n) = order {
                if n != a.order() {
                    return Err(Error::InvalidArgument(format!(
                        "--n {n} does not match the order {} of {path}",
                        a.order()
                    )));
                }
            }
            Ok(a)
        }
    }
}

fn fit_maskset(ms: MaskSet, order: usize) -> Result<MaskSet> {
    if ms.count() == order {
        Ok(ms)
    } else if ms.count() == 2 {
        extend_maskset(&ms, order)
    } else {
        Err(Error::InvalidArgument(format!(
            "{} masks cannot be used with a Latin square of order {order}",
            ms.count()
        )))
    }
}

fn profile_lines(p: &CodeProfile) -> Vec<String> {
    let hist = |h: &std::collections::BTreeMap<usize, usize>| {
        h.iter()
            .map(|(w, c)| format!("{w}:{c}"))
            .collect::<Vec<_>>()
            .join(",")
    };
    let rate = p
        .designed_rate
        .map_or_else(|| "undefined".to_string(), |r| r.to_string());
    let mut lines = vec![
        format!("rows={} cols={}", p.rows, p.cols),
        format!("column_weights={}", hist(&p.column_weights)),
        format!("row_weights={}", hist(&p.row_weights)),
        format!("designed_rate={rate}"),
    ];
    if let Some((j, l)) = p.regular_weights() {
        lines.push(format!("regular=({j},{l})"));
    }
    lines
}

pub fn run(cli: Cli, stdout: &mut dyn Write) -> Result<()> {
    match cli.command {
        Command::GenBase(a) => {
            let e = match a.kind {
                BaseKind::Gcd => gcd_base(a.p, a.l)?,
            };
            write_output(&a.out, &write_exponent(&e), stdout)
        }
        Command::GenMask(a) => {
            let ms = match a.kind {
                MaskKind::Custom => {
                    read_file(a.from.as_deref().expect("required by clap"), read_maskset)?
                }
                kind => {
                    let partition = match kind {
                        MaskKind::D => Partition::Diagonal,
                        MaskKind::T => Partition::Triangle,
                        _ => Partition::Hamming,
                    };
                    partition.masks(a.m.expect("required"), a.n.expect("required"))?
                }
            };
            let ms = match a.count {
                Some(c) => fit_maskset(ms, c)?,
                None => ms,
            };
            write_output(&a.out, &write_maskset(&ms), stdout)
        }
        Command::GenLatin(a) => {
            let sq = match a.kind {
                LatinKind::Circulant => LatinSquare::circulant(a.n.expect("required"))?,
                LatinKind::Random => LatinSquare::random(
                    a.n.expect("required"),
                    &mut ChaCha8Rng::seed_from_u64(a.seed),
                )?,
                LatinKind::Custom => {
                    read_file(a.from.as_deref().expect("required by clap"), read_latin)?
                }
            };
            write_output(&a.out, &write_latin(&sq), stdout)
        }
        Command::Splice(a) => run_splice(a, stdout),
        Command::Girth(a) => run_girth(a, stdout),
        Command::Expand(a) => {
            let e = read_file(&a.exponent, read_exponent)?;
            write_output(&a.out, &write_alist(&expand(&e)), stdout)
        }
        Command::Simulate(a) => run_simulate(a, stdout),
        Command::Profile(a) => {
            let (h, _) = load_matrix(&a.input)?;
            let p = profile(&h);
            if a.json {
                writeln!(stdout, "{}", serde_json::to_string(&p).expect("serializable"))?;
            } else if a.quiet {
                writeln!(stdout, "{}", profile_lines(&p).join(" "))?;
            } else {
                for line in profile_lines(&p) {
                    writeln!(stdout, "{line}")?;
                }
            }
            Ok(())
        }
    }
}

fn run_splice(a: SpliceArgs, stdout: &mut dyn Write) -> Result<()> {
    if let Some(alist) = &a.alist {
        let lift = a.lift.expect("required by clap");
        let h0 = read_file(alist, read_alist)?;
        let ms = read_file(&a.mask, read_maskset)?;
        let latin = resolve_latin(&a.latin, a.n.or(Some(ms.count())), a.seed)?;
        let ms = fit_maskset(ms, latin.order())?;
        let h = splice_binary(&h0, lift, &ms, &latin)?;
        let out = a.out.unwrap_or_else(|| "compound.alist".into());
        return write_output(&out, &write_alist(&h), stdout);
    }
    let base_path = a.base.clone().unwrap_or_else(|| BASE_FILE.into());
    let e0 = read_file(&base_path, read_exponent)?;
    let e = if a.special {
        splice_special_n2(&e0)?
    } else {
        let ms = read_file(&a.mask, read_maskset)?;
        let latin = resolve_latin(&a.latin, a.n.or(Some(ms.count())), a.seed)?;
        let ms = fit_maskset(ms, latin.order())?;
        splice_exponent(&e0, &ms, &latin)?
    };
    let out = a.out.unwrap_or_else(|| COMPOUND_FILE.into());
    write_output(&out, &write_exponent(&e), stdout)
}

fn run_girth(a: GirthArgs, stdout: &mut dyn Write) -> Result<()> {
    let (result, witness) = if a.input.alist.is_some() {
        if a.witness {
            return Err(Error::InvalidArgument(
                "--witness needs an exponent matrix".into(),
            ));
        }
        let (h, _) = load_matrix(&a.input)?;
        (girth_graph(&h, a.cap)?, None)
    } else {
        let path = a.input.exponent.clone().unwrap_or_else(|| COMPOUND_FILE.into());
        let e = read_file(&path, read_exponent)?;
        if a.witness {
            let w = shortest_cycle(&e, a.cap)?;
            let r = match &w {
                Some(w) => GirthResult::Exact {
                    value: w.len() as u32,
                },
                None => GirthResult::ExceedsCap { cap: a.cap },
            };
            (r, w)
        } else {
            (girth_exponent(&e, a.cap)?, None)
        }
    };
    if a.json {
        let value = json!({ "result": result, "line": result.to_string(), "witness": witness });
        writeln!(stdout, "{value}")?;
        return Ok(());
    }
    writeln!(stdout, "{result}")?;
    if let (Some(w), false) = (witness, a.quiet) {
        writeln!(stdout, "{w}")?;
    }
    Ok(())
}

fn run_simulate(a: SimulateArgs, stdout: &mut dyn Write) -> Result<()> {
    let h = match (&a.alist, &a.exponent) {
        (Some(p), _) => read_file(p, read_alist)?,
        (None, Some(p)) => expand(&read_file(p, read_exponent)?),
        (None, None) => {
            return Err(Error::InvalidArgument(
                "simulate needs --alist or --exponent".into(),
            ))
        }
    };
    let rate = profile(&h)
        .designed_rate_f64()
        .filter(|&r| r > 0.0)
        .ok_or_else(|| Error::InvalidArgument("designed rate must be positive".into()))?;
    let points = parse_snr_list(&a.snr)?
        .into_iter()
        .map(|snr| ChannelPoint::new(snr, rate, point_seed(a.seed, snr)))
        .collect::<Result<Vec<_>>>()?;
    let config = SimConfig {
        stop: StopRule {
            min_frame_errors: a.min_errors,
            max_frames: a.max_frames,
        },
        max_iter: a.max_iter,
        threads: a.threads,
        ..SimConfig::default()
    };
    let result = run_ber(&h, &points, &config)?;
    if !a.quiet {
        for p in &result.points {
            eprintln!(
                "Eb/N0={:.2} dB frames={} frame_errors={} BER={:.3e} FER={:.3e} wrong_codewords={:?}",
                p.eb_n0_db,
                p.frames_sent,
                p.frame_errors,
                p.ber(),
                p.fer(),
                p.wrong_codeword_weights
            );
        }
    }
    if a.out == Path::new("-") {
        write_results_csv(&result, &mut *stdout)
    } else {
        let file = std::fs::File::create(&a.out)
            .map_err(|e| Error::Io(format!("{}: {e}", a.out.display())))?;
        write_results_csv(&result, file)
    }
}

//! Command-line front end: encode/decode files, run channel simulations and
//! sweeps, tabulate closed-form estimates, and evaluate the exhaustive
//! oracle. Every randomized command is reproducible from `--seed`; omitting
//! it draws a seed from system entropy and prints it.
//!
//! Exit codes: 0 on success, 2 for configuration errors, 3 for I/O or
//! format errors.

use std::fmt::Write as _;
use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use twofaced::{
    ber_bound_bsc, ber_bound_ec, compute_delta, decode_bsc, decode_ec, encode, exact_ber,
    run_monte_carlo, BitWord, BranchCounts, ChannelKind, ChannelSpec, CodeParams, Domain, Error,
    ReceivedWord, SimulationConfig, Substream, WordPolicy,
};

const EXIT_CONFIG: u8 = 2;
const EXIT_FORMAT: u8 = 3;

#[derive(Parser)]
#[command(name = "twofaced", version, about = "Scrambling-based error correction toolkit")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scramble a bit-text file under a shared context word
    Encode(EncodeArgs),
    /// Correct a received word and descramble it back to the source
    Decode(DecodeArgs),
    /// Monte Carlo estimate of the residual bit error rate
    Simulate(SimulateArgs),
    /// Tabulate the closed-form estimate over a range of memory lengths
    Bounds(BoundsArgs),
    /// Run simulations for every row of a parameter grid file
    Sweep(SweepArgs),
    /// Exact pipeline error rate by exhaustive enumeration (small instances)
    Oracle(OracleArgs),
}

#[derive(Args)]
struct EncodeArgs {
    /// Memory length
    #[arg(long)]
    l: usize,
    /// Context word as bit text of length l
    #[arg(long, conflicts_with = "w_seed")]
    w: Option<String>,
    /// Draw the context word uniformly from this seed instead
    #[arg(long)]
    w_seed: Option<u64>,
    /// Source probability of zero
    #[arg(long, default_value_t = 0.9)]
    p: f64,
    /// Input bit-text file; standard input when omitted
    #[arg(long)]
    input: Option<PathBuf>,
    /// Output file; standard output when omitted
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecodeArgs {
    /// Channel the word came through: ec or bsc
    #[arg(long)]
    channel: ChannelArg,
    #[arg(long)]
    l: usize,
    /// Context word as bit text of length l (the shared secret)
    #[arg(long)]
    w: String,
    /// Source probability of zero
    #[arg(long)]
    p: f64,
    /// Channel symbol error probability (required for bsc)
    #[arg(long)]
    pi: Option<f64>,
    /// Seed for the coin-flip fills of the erasure decoder
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long)]
    output: Option<PathBuf>,
    /// Write the decode report here instead of standard error
    #[arg(long)]
    report: Option<PathBuf>,
}

#[derive(Args)]
struct SimulateArgs {
    #[arg(long)]
    channel: ChannelArg,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    pi: f64,
    #[arg(long)]
    l: usize,
    /// Word length per trial
    #[arg(long)]
    n: usize,
    #[arg(long)]
    trials: u64,
    #[arg(long)]
    seed: Option<u64>,
    /// Fixed context word; a fresh uniform word per trial when omitted
    #[arg(long)]
    w: Option<String>,
    /// Worker threads (results are identical for any value)
    #[arg(long, default_value_t = 1)]
    workers: usize,
    /// Also write the JSON result to this file
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct BoundsArgs {
    #[arg(long)]
    channel: ChannelArg,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    pi: f64,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    l_min: usize,
    #[arg(long)]
    l_max: usize,
    /// Output CSV file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct SweepArgs {
    #[arg(long)]
    channel: ChannelArg,
    /// Grid file: one `l,p,pi,n,trials` combination per line
    #[arg(long)]
    grid: PathBuf,
    /// Output CSV file; standard output when omitted
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value_t = 1)]
    workers: usize,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long)]
    channel: ChannelArg,
    #[arg(long)]
    l: usize,
    /// Context word as bit text of length l
    #[arg(long)]
    w: String,
    #[arg(long)]
    p: f64,
    #[arg(long)]
    pi: f64,
    #[arg(long)]
    n: usize,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum ChannelArg {
    Ec,
    Bsc,
}

impl From<ChannelArg> for ChannelKind {
    fn from(value: ChannelArg) -> ChannelKind {
        match value {
            ChannelArg::Ec => ChannelKind::Ec,
            ChannelArg::Bsc => ChannelKind::Bsc,
        }
    }
}

enum CliError {
    Config(String),
    Format(String),
}

impl From<Error> for CliError {
    fn from(e: Error) -> CliError {
        match e {
            Error::Format(m) => CliError::Format(format!("format error: {m}")),
            other => CliError::Config(other.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> CliError {
        CliError::Format(format!("i/o error: {e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Encode(args) => cmd_encode(args),
        Command::Decode(args) => cmd_decode(args),
        Command::Simulate(args) => cmd_simulate(args),
        Command::Bounds(args) => cmd_bounds(args),
        Command::Sweep(args) => cmd_sweep(args),
        Command::Oracle(args) => cmd_oracle(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Config(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_CONFIG)
        }
        Err(CliError::Format(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_FORMAT)
        }
    }
}

fn read_input(path: Option<&Path>) -> Result<String, CliError> {
    match path {
        Some(p) => Ok(fs::read_to_string(p)?),
        None => {
            let mut buf = String::new();
            std::io::stdin().read_to_string(&mut buf)?;
            Ok(buf)
        }
    }
}

fn write_output(path: Option<&Path>, contents: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, contents)?,
        None => std::io::stdout().write_all(contents.as_bytes())?,
    }
    Ok(())
}

fn entropy_seed(explicit: Option<u64>) -> u64 {
    match explicit {
        Some(s) => s,
        None => {
            let s: u64 = rand::random();
            eprintln!("seed={s}");
            s
        }
    }
}

fn parse_word(text: &str, l: usize) -> Result<BitWord, CliError> {
    let w: BitWord = text.parse()?;
    if w.len() != l {
        return Err(CliError::Config(format!(
            "context word {text:?} has length {}, expected l = {l}",
            w.len()
        )));
    }
    Ok(w)
}

fn cmd_encode(args: EncodeArgs) -> Result<(), CliError> {
    let w = match (&args.w, args.w_seed) {
        (Some(text), _) => parse_word(text, args.l)?,
        (None, Some(seed)) => {
            let mut rng = Substream::derived(seed, Domain::Context, 0).rng();
            twofaced::sample_bernoulli(args.l, 0.5, &mut rng)
        }
        (None, None) => {
            return Err(CliError::Config("either --w or --w-seed is required".into()));
        }
    };
    let params = CodeParams::new(args.l, w, args.p)?;
    let text = read_input(args.input.as_deref())?;
    let x: BitWord = text.parse()?;
    if x.is_empty() {
        return Err(CliError::Format("empty input word".into()));
    }
    let v = encode(&x, &params);
    eprintln!("w={}", params.w());
    write_output(args.output.as_deref(), &format!("{v}\n"))
}

fn cmd_decode(args: DecodeArgs) -> Result<(), CliError> {
    let w = parse_word(&args.w, args.l)?;
    let params = CodeParams::new(args.l, w, args.p)?;
    let text = read_input(args.input.as_deref())?;
    let kind = ChannelKind::from(args.channel);
    let (report, mut report_text) = match kind {
        ChannelKind::Ec => {
            let vstar: ReceivedWord = text.parse()?;
            let seed = entropy_seed(args.seed);
            let coins = Substream::derived(seed, Domain::Decoder, 0);
            let report = decode_ec(&vstar, &params, &coins)?;
            (report, format!("channel=ec seed={seed}\n"))
        }
        ChannelKind::Bsc => {
            let pi = args
                .pi
                .ok_or_else(|| CliError::Config("--pi is required for the bsc decoder".into()))?;
            let vstar: ReceivedWord = text.parse()?;
            let Some(bits) = vstar.to_bitword() else {
                return Err(CliError::Config(
                    "erasure symbol '*' is not valid for the bsc decoder".into(),
                ));
            };
            ChannelSpec::new(kind, pi)?;
            let delta = compute_delta(args.l, args.p, pi)?;
            let report = decode_bsc(&bits, &params, pi)?;
            (report, format!("channel=bsc delta={}\n", delta.delta()))
        }
    };
    match report.branches {
        BranchCounts::Ec { passthrough, ml, coin } => {
            let _ = writeln!(report_text, "passthrough={passthrough} ml={ml} coin={coin}");
        }
        BranchCounts::Bsc { kept, flipped, tail } => {
            let _ = writeln!(report_text, "kept={kept} flipped={flipped} tail={tail}");
        }
    }
    match &args.report {
        Some(path) => fs::write(path, &report_text)?,
        None => eprint!("{report_text}"),
    }
    write_output(args.output.as_deref(), &format!("{}\n", report.decoded))
}

#[allow(clippy::too_many_arguments)]
fn simulation_config(
    kind: ChannelKind,
    l: usize,
    p: f64,
    pi: f64,
    n: usize,
    trials: u64,
    seed: u64,
    w: Option<&str>,
    workers: usize,
) -> Result<SimulationConfig, CliError> {
    let w_policy = match w {
        Some(text) => WordPolicy::Explicit(parse_word(text, l)?),
        None => WordPolicy::FreshPerTrial,
    };
    Ok(SimulationConfig {
        l,
        p,
        channel: ChannelSpec::new(kind, pi)?,
        n,
        trials,
        seed,
        w_policy,
        workers,
    })
}

fn cmd_simulate(args: SimulateArgs) -> Result<(), CliError> {
    let seed = entropy_seed(args.seed);
    let config = simulation_config(
        args.channel.into(),
        args.l,
        args.p,
        args.pi,
        args.n,
        args.trials,
        seed,
        args.w.as_deref(),
        args.workers,
    )?;
    let result = run_monte_carlo(&config)?;
    let json = serde_json::to_string(&result).expect("result serializes");
    if let Some(path) = &args.json {
        fs::write(path, format!("{json}\n"))?;
    }
    println!("{json}");
    Ok(())
}

fn cmd_bounds(args: BoundsArgs) -> Result<(), CliError> {
    if args.l_min == 0 || args.l_min > args.l_max {
        return Err(CliError::Config(format!(
            "need 1 <= l-min <= l-max, got {}..{}",
            args.l_min, args.l_max
        )));
    }
    if args.l_max >= args.n {
        return Err(CliError::Config(format!(
            "l-max = {} must stay below n = {}",
            args.l_max, args.n
        )));
    }
    let kind = ChannelKind::from(args.channel);
    ChannelSpec::new(kind, args.pi)?;
    if !(args.p > 0.5 && args.p < 1.0) {
        return Err(CliError::Config(format!(
            "probability of zero p = {} must lie in (1/2, 1)",
            args.p
        )));
    }
    let mut csv = String::from("l,p,pi,n,delta,bound\n");
    let mut best: Option<(usize, f64)> = None;
    for l in args.l_min..=args.l_max {
        let (delta_col, bound) = match kind {
            ChannelKind::Ec => (String::new(), Some(ber_bound_ec(l, args.p, args.pi, args.n))),
            ChannelKind::Bsc => match compute_delta(l, args.p, args.pi) {
                Ok(d) => (
                    d.delta().to_string(),
                    Some(ber_bound_bsc(l, args.p, args.pi, args.n)?),
                ),
                Err(Error::Config(msg)) => {
                    eprintln!("l={l}: skipped ({msg})");
                    (String::new(), None)
                }
                Err(e) => return Err(e.into()),
            },
        };
        let bound_col = match bound {
            Some(b) => {
                if best.is_none_or(|(_, v)| b < v) {
                    best = Some((l, b));
                }
                format!("{b:e}")
            }
            None => String::new(),
        };
        let _ = writeln!(csv, "{l},{},{},{},{delta_col},{bound_col}", args.p, args.pi, args.n);
    }
    if let Some((l, b)) = best {
        let _ = writeln!(csv, "# minimum: l={l} bound={b:e}");
    }
    write_output(args.out.as_deref(), &csv)
}

fn cmd_sweep(args: SweepArgs) -> Result<(), CliError> {
    let kind = ChannelKind::from(args.channel);
    let seed = entropy_seed(args.seed);
    let grid = fs::read_to_string(&args.grid)?;
    let mut csv = String::from("l,p,pi,n,trials,ber,ci95,bound,seed\n");
    let mut attempted = 0usize;
    let mut succeeded = 0usize;
    for (line_no, line) in grid.lines().enumerate() {
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') || trimmed == "l,p,pi,n,trials" {
            continue;
        }
        attempted += 1;
        let row_seed = seed.wrapping_add(line_no as u64);
        match sweep_row(kind, trimmed, row_seed, args.workers) {
            Ok(row) => {
                succeeded += 1;
                csv.push_str(&row);
            }
            Err(msg) => {
                eprintln!("grid line {}: skipped ({msg})", line_no + 1);
            }
        }
    }
    write_output(args.out.as_deref(), &csv)?;
    if attempted > 0 && succeeded == 0 {
        return Err(CliError::Config("every grid row failed".into()));
    }
    Ok(())
}

fn sweep_row(kind: ChannelKind, line: &str, seed: u64, workers: usize) -> Result<String, String> {
    let fields: Vec<&str> = line.split(',').map(str::trim).collect();
    let [l, p, pi, n, trials] = fields.as_slice() else {
        return Err(format!("expected `l,p,pi,n,trials`, got {line:?}"));
    };
    let l: usize = l.parse().map_err(|e| format!("l: {e}"))?;
    let p: f64 = p.parse().map_err(|e| format!("p: {e}"))?;
    let pi: f64 = pi.parse().map_err(|e| format!("pi: {e}"))?;
    let n: usize = n.parse().map_err(|e| format!("n: {e}"))?;
    let trials: u64 = trials.parse().map_err(|e| format!("trials: {e}"))?;
    let config = simulation_config(kind, l, p, pi, n, trials, seed, None, workers)
        .map_err(|e| match e {
            CliError::Config(m) | CliError::Format(m) => m,
        })?;
    let result = run_monte_carlo(&config).map_err(|e| e.to_string())?;
    Ok(format!(
        "{l},{p},{pi},{n},{trials},{:e},{:e},{:e},{seed}\n",
        result.ber, result.ci95, result.bound
    ))
}

fn cmd_oracle(args: OracleArgs) -> Result<(), CliError> {
    let w = parse_word(&args.w, args.l)?;
    let params = CodeParams::new(args.l, w, args.p)?;
    let kind = ChannelKind::from(args.channel);
    let channel = ChannelSpec::new(kind, args.pi)?;
    let value = exact_ber(&params, &channel, args.n)?;
    let bound = match kind {
        ChannelKind::Ec => ber_bound_ec(args.l, args.p, args.pi, args.n),
        ChannelKind::Bsc => ber_bound_bsc(args.l, args.p, args.pi, args.n)?,
    };
    #[derive(serde::Serialize)]
    struct OracleOutput<'a> {
        params: &'a CodeParams,
        n: usize,
        channel: ChannelSpec,
        exact_ber: f64,
        bound: f64,
    }
    let out = OracleOutput {
        params: &params,
        n: args.n,
        channel,
        exact_ber: value,
        bound,
    };
    println!("{}", serde_json::to_string(&out).expect("oracle output serializes"));
    Ok(())
}

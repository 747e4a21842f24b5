//! Command-line front end: sweep the schemes over cycle counts, dump
//! conditioned states, and print the large-N reference values.
//!
//! Exit codes: 0 success, 1 internal error, 2 usage error, 3 empty
//! conditioned state, 4 oracle divergence.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;

use qisim::{
    limits, run, run_sweep, state_dump, Error, SchemeConfig, SchemeKind, SchemeOutput, SweepJob,
};

#[derive(Parser)]
#[command(name = "qisim", version, about = "Quantum interrogation entanglement simulator")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scheme over a range of cycle counts and emit one row per N.
    Sweep(SweepArgs),
    /// Dump the conditioned output state at a single cycle count.
    State(StateArgs),
    /// Print the analytic large-N values for a conditioned scheme.
    Limits(LimitsArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum SchemeArg {
    Bell,
    W,
    Ghz,
    Photon,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Csv,
    Json,
}

#[derive(Args)]
struct ConfigArgs {
    /// Scheme to run.
    #[arg(long, value_enum)]
    scheme: SchemeArg,
    /// Number of atoms (w and ghz only; default 3).
    #[arg(long)]
    atoms: Option<usize>,
    /// Number of photons (photon scheme only; default 2).
    #[arg(long)]
    photons: Option<usize>,
    /// Initial atom amplitudes as comma-separated real pairs a1,b1,a2,b2,...
    /// one pair per atom; each pair is normalised. Default: balanced.
    #[arg(long, value_name = "AMPS", allow_hyphen_values = true)]
    alpha_beta: Option<String>,
}

#[derive(Args)]
struct SweepArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Smallest cycle count.
    #[arg(long)]
    n_min: u32,
    /// Largest cycle count.
    #[arg(long)]
    n_max: u32,
    /// Stride through the cycle range.
    #[arg(long, default_value_t = 1)]
    step: u32,
    /// Cross-check every row against the closed form; diverging rows abort.
    #[arg(long)]
    oracle_check: bool,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Csv)]
    format: FormatArg,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct StateArgs {
    #[command(flatten)]
    config: ConfigArgs,
    /// Cycle count to evaluate.
    #[arg(long)]
    cycles: u32,
    /// Output format.
    #[arg(long, value_enum, default_value_t = FormatArg::Json)]
    format: FormatArg,
    /// Output path; standard output when omitted.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct LimitsArgs {
    /// Scheme to report; the photon scheme has no conditioned limit table.
    #[arg(long, value_enum)]
    scheme: SchemeArg,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Sweep(args) => cmd_sweep(args),
        Command::State(args) => cmd_state(args),
        Command::Limits(args) => cmd_limits(args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("qisim: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

/// Usage problems are 2, an empty conditioned state is 3, oracle divergence
/// is 4; anything else is an internal numerical failure.
fn exit_code(err: &Error) -> u8 {
    match err {
        Error::EmptyConditionedState(_) => 3,
        Error::OracleDivergence { .. } => 4,
        Error::InvalidConfig(_)
        | Error::UnsupportedVariant(_)
        | Error::UnsupportedClosedForm(_)
        | Error::ZeroCycles
        | Error::NotNormalised(_) => 2,
        _ => 1,
    }
}

fn build_config(args: &ConfigArgs, cycles: u32) -> Result<SchemeConfig, Error> {
    let usage = |msg: &str| Error::InvalidConfig(msg.to_string());
    let mut config = match args.scheme {
        SchemeArg::Bell => {
            if args.atoms.is_some_and(|k| k != 2) {
                return Err(usage("the bell scheme uses exactly 2 atoms"));
            }
            SchemeConfig::bell(cycles)
        }
        SchemeArg::W => SchemeConfig::w(cycles, args.atoms.unwrap_or(3)),
        SchemeArg::Ghz => SchemeConfig::ghz(cycles, args.atoms.unwrap_or(3)),
        SchemeArg::Photon => {
            if args.atoms.is_some() {
                return Err(usage("the photon scheme takes --photons, not --atoms"));
            }
            SchemeConfig::photon(cycles, args.photons.unwrap_or(2))
        }
    };
    if !matches!(args.scheme, SchemeArg::Photon) && args.photons.is_some() {
        return Err(usage("--photons applies to the photon scheme only"));
    }
    if let Some(text) = &args.alpha_beta {
        let amps = parse_amplitudes(text, config.atoms)?;
        config = config.with_amplitudes(amps);
    }
    config.validate()?;
    Ok(config)
}

/// Comma-separated real pairs, one per atom, each normalised here so callers
/// can pass unnormalised weights.
fn parse_amplitudes(text: &str, atoms: usize) -> Result<Vec<(Complex64, Complex64)>, Error> {
    let usage = |msg: String| Error::InvalidConfig(msg);
    let values: Vec<f64> = text
        .split(',')
        .map(|part| part.trim().parse::<f64>())
        .collect::<Result<_, _>>()
        .map_err(|e| usage(format!("bad --alpha-beta entry: {e}")))?;
    if values.len() != 2 * atoms {
        return Err(usage(format!(
            "--alpha-beta needs {} values for {} atoms, got {}",
            2 * atoms,
            atoms,
            values.len()
        )));
    }
    values
        .chunks_exact(2)
        .map(|pair| {
            let norm = pair[0].hypot(pair[1]);
            if !norm.is_finite() || norm == 0.0 {
                return Err(usage("each --alpha-beta pair must have nonzero finite norm".into()));
            }
            Ok((Complex64::new(pair[0] / norm, 0.0), Complex64::new(pair[1] / norm, 0.0)))
        })
        .collect()
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::InvalidConfig(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_sweep(args: SweepArgs) -> Result<(), Error> {
    let config = build_config(&args.config, args.n_min)?;
    let mut job = SweepJob::new(config, args.n_min, args.n_max, args.step)?;
    job.oracle_check = args.oracle_check;
    let rows = run_sweep(&job)?;
    let text = match args.format {
        FormatArg::Csv => qisim::render_csv(&job.config, &rows),
        FormatArg::Json => qisim::render_json(&job.config, &rows),
    };
    emit(&args.out, &text)
}

fn cmd_state(args: StateArgs) -> Result<(), Error> {
    let config = build_config(&args.config, args.cycles)?;
    if config.scheme == SchemeKind::Photon {
        return Err(Error::InvalidConfig(
            "the photon scheme yields a density matrix, not a conditioned state; \
             use sweep instead"
                .into(),
        ));
    }
    let report = run(&config)?;
    let SchemeOutput::Pure(state) = &report.output else {
        return Err(Error::InvalidConfig("scheme did not produce a pure conditioned state".into()));
    };
    let dump = state_dump(&config, report.probability, state);
    let text = match args.format {
        FormatArg::Csv => dump.render_csv(),
        FormatArg::Json => dump.render_json(),
    };
    emit(&args.out, &text)
}

fn cmd_limits(args: LimitsArgs) -> Result<(), Error> {
    let scheme = match args.scheme {
        SchemeArg::Bell => SchemeKind::Bell,
        SchemeArg::W => SchemeKind::W,
        SchemeArg::Ghz => SchemeKind::Ghz,
        SchemeArg::Photon => {
            return Err(Error::InvalidConfig(
                "the photon scheme is deterministic and has no conditioned limit table".into(),
            ))
        }
    };
    let table = limits(scheme)?;
    print!("{}", table.render_text());
    Ok(())
}

//! Command implementations behind the `altramsey` binary. Each `cmd_*`
//! returns the process exit code: 0 ok, 1 verification failure, 2 unmet
//! precondition, 3 malformed input.

pub mod check;
pub mod format;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use altramsey::randgen::{gen_bgh_lower, gen_uniform, GenSpec};
use altramsey::{solve_with, verify_witness, AltSpace, FieldCtx, Hypergraph, SolveOptions, SolveTrace, Witness};
use clap::{Args, Parser, Subcommand};

pub use check::{cmd_check, CheckCommand};
pub use format::{InstanceFile, WitnessFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_PRECONDITION: i32 = 2;
pub const EXIT_MALFORMED: i32 = 3;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("malformed input: {0}")]
    Malformed(String),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Verification(_) => EXIT_VERIFY,
            CliError::Precondition(_) => EXIT_PRECONDITION,
            CliError::Malformed(_) | CliError::Io { .. } => EXIT_MALFORMED,
        }
    }
}

impl From<altramsey::Error> for CliError {
    fn from(e: altramsey::Error) -> Self {
        use altramsey::Error as E;
        match e {
            E::PreconditionFailed(msg) => CliError::Precondition(msg),
            E::EvenCharacteristic | E::NotGraph(_) | E::BudgetExceeded { .. } | E::TooLarge(_) => {
                CliError::Precondition(e.to_string())
            }
            E::NotPrime(_)
            | E::NotAlternating { .. }
            | E::ShapeMismatch(_)
            | E::IndexOutOfRange { .. }
            | E::InvalidHypergraph(_) => CliError::Malformed(e.to_string()),
            _ => CliError::Verification(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "altramsey", version, about = "Certified Ramsey witnesses for alternating bilinear maps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Find a verified isotropic or complete subspace.
    Solve(SolveArgs),
    /// Check a witness file against an instance.
    Verify(VerifyArgs),
    /// Write an instance file.
    #[command(subcommand)]
    Gen(GenCommand),
    /// Run one of the exhaustive checks.
    #[command(subcommand)]
    Check(CheckCommand),
}

#[derive(Debug, Clone, Args)]
pub struct SolveArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
    /// Return a complete witness of dimension t rather than t + 1.
    #[arg(long)]
    pub truncate_to_t: bool,
    #[arg(long)]
    pub out: PathBuf,
}

#[derive(Debug, Clone, Args)]
pub struct VerifyArgs {
    #[arg(long)]
    pub instance: PathBuf,
    #[arg(long)]
    pub witness: PathBuf,
    #[arg(long)]
    pub s: usize,
    #[arg(long)]
    pub t: usize,
}

#[derive(Debug, Clone, Subcommand)]
pub enum GenCommand {
    /// Uniform random alternating matrices.
    Uniform {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Random instance at the lower-bound sizes derived from (s, t).
    Bgh {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The graph map of an edge-list text file.
    Hypergraph {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub(crate) fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub(crate) fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn load_instance(path: &Path) -> Result<AltSpace, CliError> {
    format::parse_json::<InstanceFile>(&read(path)?, &path.display().to_string())?.to_altspace()
}

pub(crate) fn report(r: Result<(), CliError>) -> i32 {
    match r {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

/// Solves and writes the witness file; also hands back the solver trace.
pub fn run_solve(args: &SolveArgs) -> Result<(WitnessFile, SolveTrace), CliError> {
    let a = load_instance(&args.instance)?;
    let opts = SolveOptions { truncate_to_t: args.truncate_to_t };
    let (w, trace) = solve_with(&a, args.s, args.t, &opts)?;
    let rep = verify_witness(&a, &w, args.s, args.t);
    let file = WitnessFile::new(&w, rep.ok, rep.measured_dim);
    write(&args.out, &serde_json::to_string_pretty(&file).expect("witness serializes"))?;
    if !rep.ok {
        return Err(CliError::Verification(format!("{} witness of dim {} did not verify", file.kind, file.dim)));
    }
    Ok((file, trace))
}

pub fn cmd_solve(args: &SolveArgs, out: &mut dyn Write) -> i32 {
    report(run_solve(args).map(|(file, trace)| {
        let _ = writeln!(
            out,
            "{} witness of dim {} (measured {}), {} restarts, {} injections",
            file.kind, file.dim, file.measured_dim, trace.step2_restarts, trace.step4_injections
        );
    }))
}

pub fn run_verify(args: &VerifyArgs) -> Result<altramsey::WitnessReport, CliError> {
    let a = load_instance(&args.instance)?;
    let path = &args.witness;
    let file: WitnessFile = format::parse_json(&read(path)?, &path.display().to_string())?;
    let w: Witness = file.to_witness(a.field(), a.n())?;
    Ok(verify_witness(&a, &w, args.s, args.t))
}

pub fn cmd_verify(args: &VerifyArgs, out: &mut dyn Write) -> i32 {
    report(run_verify(args).and_then(|rep| {
        let _ =
            writeln!(out, "kind={} dim={} measured_dim={} ok={}", rep.kind.as_str(), rep.dim, rep.measured_dim, rep.ok);
        if rep.ok {
            Ok(())
        } else {
            Err(CliError::Verification(format!(
                "{} witness of dim {} has restricted dimension {}",
                rep.kind.as_str(),
                rep.dim,
                rep.measured_dim
            )))
        }
    }))
}

fn emit(a: &AltSpace, dest: &Option<PathBuf>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = serde_json::to_string(&InstanceFile::from_altspace(a)).expect("instance serializes");
    match dest {
        Some(path) => write(path, &text),
        None => {
            let _ = writeln!(out, "{text}");
            Ok(())
        }
    }
}

pub fn cmd_gen(cmd: &GenCommand, out: &mut dyn Write) -> i32 {
    let mut run = || -> Result<(), CliError> {
        match cmd {
            GenCommand::Uniform { p, n, m, seed, out: dest } => {
                emit(&gen_uniform(&GenSpec::uniform(*p, *n, *m, *seed))?, dest, out)
            }
            GenCommand::Bgh { s, t, p, seed, out: dest } => {
                let (a, (n, m)) = gen_bgh_lower(*s, *t, *p, *seed)?;
                if dest.is_some() {
                    let _ = writeln!(out, "n={n} m={m}");
                }
                emit(&a, dest, out)
            }
            GenCommand::Hypergraph { input, p, out: dest } => {
                let h = Hypergraph::parse(&read(input)?)?;
                emit(&h.to_altspace(FieldCtx::new(*p)?)?, dest, out)
            }
        }
    };
    report(run())
}

pub fn run(cli: &Cli, out: &mut dyn Write) -> i32 {
    match &cli.command {
        Command::Solve(a) => cmd_solve(a, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Gen(g) => cmd_gen(g, out),
        Command::Check(c) => cmd_check(c, out),
    }
}

//! `slocc`: command-line access to the invariant, criteria, comparison and
//! verification routines of `slocc-core`.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, ensure, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use slocc_core::classify::{compare, compare_with_witness, Outcome};
use slocc_core::criteria::{criteria_signature, f_enumerate, CriteriaSet, CriteriaSignature, F_MAX_QUBITS, F_RULE_NOTE};
use slocc_core::invariant::{invariant_report, InvariantReport, InvariantVanishing, DEFAULT_TOL};
use slocc_core::io::{parse_ops, parse_state, state_to_json, to_json_pretty};
use slocc_core::oracle::{oracle_values, OracleValue};
use slocc_core::signtab::SignTable;
use slocc_core::slocc::{apply_chain, det_product, verify_theorem1, verify_theorem2, VerifyReport};
use slocc_core::statevec::MAX_QUBITS;
use slocc_core::{Complex64, StateVector};

/// Default cap on qubit counts accepted from the command line.
const DEFAULT_MAX_N: usize = 26;

/// `verify` exits 0 iff the maximum relative error is at most this.
const VERIFY_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Parser)]
#[command(name = "slocc", version, about = "SLOCC invariants and residual entanglement for n-qubit states")]
struct Cli {
    /// Vanishing tolerance (scaled by the state norm)
    #[arg(long, global = true, default_value_t = DEFAULT_TOL)]
    tol: f64,

    /// Seed for random states, chains and verification trials
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Largest accepted qubit count (hard limit 30)
    #[arg(long = "max-n", global = true, default_value_t = DEFAULT_MAX_N)]
    max_n: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Write a state file
    Make(MakeArgs),
    /// Invariant values and residual entanglement of a state
    Invariant(InvariantArgs),
    /// D/F criteria of a state, or the F subscript list
    Criteria(CriteriaArgs),
    /// Invariants and criteria in one document
    Report(InputArg),
    /// Compare two states (exit 2 when provably inequivalent)
    Compare(CompareArgs),
    /// Apply a local operator chain to a state
    Apply(ApplyArgs),
    /// Check the determinant transform law on random trials (exit 1 on failure)
    Verify(VerifyArgs),
    /// Dump a sign table
    Signs(SignsArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Kind {
    Ghz,
    W,
    ClusterC,
    Random,
    Product,
    Complement,
}

#[derive(Debug, Args)]
struct MakeArgs {
    kind: Kind,
    /// Qubit count for ghz, w and random
    #[arg(long)]
    n: Option<usize>,
    /// Input state files for product (two) and complement (one)
    inputs: Vec<PathBuf>,
    /// Output file; stdout when omitted
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct InputArg {
    #[arg(long)]
    input: PathBuf,
}

#[derive(Debug, Args)]
struct InvariantArgs {
    #[arg(long)]
    input: PathBuf,
    /// Include the literal small-n expressions (diagnostics only)
    #[arg(long)]
    oracle: bool,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum SetArg {
    D,
    F,
    All,
}

#[derive(Debug, Args)]
#[command(args_conflicts_with_subcommands = true)]
struct CriteriaArgs {
    #[command(subcommand)]
    action: Option<CriteriaAction>,
    #[arg(long)]
    input: Option<PathBuf>,
    #[arg(long = "set", value_enum, default_value = "all")]
    set: SetArg,
}

#[derive(Debug, Subcommand)]
enum CriteriaAction {
    /// List every valid F subscript tuple for n qubits
    Enumerate {
        #[arg(long)]
        n: usize,
    },
}

#[derive(Debug, Args)]
struct CompareArgs {
    first: PathBuf,
    second: PathBuf,
    /// Operator file claimed to map the second state onto the first
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct ApplyArgs {
    #[arg(long)]
    input: PathBuf,
    #[arg(long)]
    ops: PathBuf,
    /// Output state file; stdout when omitted
    #[arg(long)]
    output: Option<PathBuf>,
    /// Print the per-qubit determinants and their product
    #[arg(long)]
    print_dets: bool,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2))]
    theorem: u8,
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 200)]
    trials: usize,
}

#[derive(Debug, Args)]
struct SignsArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    star: bool,
}

/// Validated global settings.
#[derive(Debug, Clone, Copy)]
struct RunConfig {
    tol: f64,
    seed: u64,
    max_n: usize,
}

impl RunConfig {
    fn from_cli(cli: &Cli) -> Result<Self> {
        ensure!(cli.tol.is_finite() && cli.tol > 0.0, "--tol must be a positive number");
        ensure!(
            (1..=MAX_QUBITS).contains(&cli.max_n),
            "--max-n must be within 1..={MAX_QUBITS}"
        );
        Ok(Self {
            tol: cli.tol,
            seed: cli.seed,
            max_n: cli.max_n,
        })
    }

    fn check_n(&self, n: usize) -> Result<usize> {
        ensure!(
            (1..=self.max_n).contains(&n),
            "qubit count {n} outside 1..={} (raise with --max-n)",
            self.max_n
        );
        Ok(n)
    }

    fn load(&self, path: &Path) -> Result<StateVector> {
        let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
        let s = parse_state(&text).with_context(|| format!("parsing {}", path.display()))?;
        self.check_n(s.n())?;
        Ok(s)
    }
}

fn emit(output: Option<&Path>, text: &str) -> Result<()> {
    match output {
        Some(p) => fs::write(p, format!("{text}\n")).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            match writeln!(out, "{text}") {
                Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
                _ => Ok(()),
            }
        }
    }
}

fn cmd_make(cfg: &RunConfig, args: &MakeArgs) -> Result<()> {
    let need_n = || -> Result<usize> {
        let n = args.n.context("--n is required for this kind")?;
        cfg.check_n(n)
    };
    let expect_inputs = |k: usize| -> Result<()> {
        ensure!(args.inputs.len() == k, "expected {k} input file(s), got {}", args.inputs.len());
        Ok(())
    };
    let state = match args.kind {
        Kind::Ghz => StateVector::ghz(need_n()?)?,
        Kind::W => StateVector::w(need_n()?)?,
        Kind::ClusterC => StateVector::cluster_c(),
        Kind::Random => StateVector::random(need_n()?, cfg.seed)?,
        Kind::Product => {
            expect_inputs(2)?;
            let a = cfg.load(&args.inputs[0])?;
            let b = cfg.load(&args.inputs[1])?;
            cfg.check_n(a.n() + b.n())?;
            a.tensor(&b)?
        }
        Kind::Complement => {
            expect_inputs(1)?;
            cfg.load(&args.inputs[0])?.complement()
        }
    };
    if !matches!(args.kind, Kind::Product | Kind::Complement) {
        ensure!(args.inputs.is_empty(), "this kind takes no input files");
    }
    emit(args.output.as_deref(), &state_to_json(&state))?;
    eprintln!("n = {}, norm = {:.16e}", state.n(), state.norm());
    Ok(())
}

#[derive(Serialize)]
struct InvariantOutput {
    #[serde(flatten)]
    report: InvariantReport,
    tol: f64,
    vanishing: InvariantVanishing,
    #[serde(skip_serializing_if = "Option::is_none")]
    oracle: Option<Vec<OracleValue>>,
}

fn cmd_invariant(cfg: &RunConfig, args: &InvariantArgs) -> Result<()> {
    let s = cfg.load(&args.input)?;
    let report = invariant_report(&s)?;
    let out = InvariantOutput {
        vanishing: report.vanishing(cfg.tol),
        report,
        tol: cfg.tol,
        oracle: args.oracle.then(|| oracle_values(&s)),
    };
    emit(None, &to_json_pretty(&out))
}

#[derive(Serialize)]
struct EnumerateOutput {
    n: usize,
    count: usize,
    rule: &'static str,
    tuples: Vec<[usize; 8]>,
}

fn cmd_criteria(cfg: &RunConfig, args: &CriteriaArgs) -> Result<()> {
    if let Some(CriteriaAction::Enumerate { n }) = args.action {
        let n = cfg.check_n(n)?;
        let list = f_enumerate(n)?;
        let out = EnumerateOutput {
            n,
            count: list.len(),
            rule: F_RULE_NOTE,
            tuples: list.iter().map(|&t| t.into()).collect(),
        };
        return emit(None, &to_json_pretty(&out));
    }
    let Some(input) = &args.input else {
        bail!("criteria needs --input <file> or the `enumerate` subcommand");
    };
    let s = cfg.load(input)?;
    let set = match args.set {
        SetArg::D => CriteriaSet::D,
        SetArg::F => CriteriaSet::F,
        SetArg::All => CriteriaSet::All,
    };
    let sig = criteria_signature(&s, set, cfg.tol)?;
    emit(None, &to_json_pretty(&sig))
}

#[derive(Serialize)]
struct FullReport {
    n: usize,
    tol: f64,
    tau: f64,
    invariants: InvariantReport,
    vanishing: InvariantVanishing,
    criteria: Option<CriteriaSignature>,
}

/// Criteria families that can be evaluated for `n` qubits.
fn default_set(n: usize) -> Option<CriteriaSet> {
    match n {
        0..=2 => None,
        3 => Some(CriteriaSet::F),
        n if n <= F_MAX_QUBITS => Some(CriteriaSet::All),
        _ => Some(CriteriaSet::D),
    }
}

fn cmd_report(cfg: &RunConfig, args: &InputArg) -> Result<()> {
    let s = cfg.load(&args.input)?;
    let invariants = invariant_report(&s)?;
    let criteria = default_set(s.n())
        .map(|set| criteria_signature(&s, set, cfg.tol))
        .transpose()?;
    let out = FullReport {
        n: s.n(),
        tol: cfg.tol,
        tau: invariants.tau,
        vanishing: invariants.vanishing(cfg.tol),
        invariants,
        criteria,
    };
    emit(None, &to_json_pretty(&out))
}

fn cmd_compare(cfg: &RunConfig, args: &CompareArgs) -> Result<ExitCode> {
    let a = cfg.load(&args.first)?;
    let b = cfg.load(&args.second)?;
    let verdict = match &args.witness {
        Some(path) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
            compare_with_witness(&a, &b, &parse_ops(&text)?, cfg.tol)?
        }
        None => compare(&a, &b, cfg.tol)?,
    };
    emit(None, &to_json_pretty(&verdict))?;
    Ok(match verdict.outcome {
        Outcome::ProvablyInequivalent => ExitCode::from(2),
        _ => ExitCode::SUCCESS,
    })
}

#[derive(Serialize)]
struct DetsOutput {
    dets: Vec<Complex64>,
    det_product: Complex64,
}

fn cmd_apply(cfg: &RunConfig, args: &ApplyArgs) -> Result<()> {
    let s = cfg.load(&args.input)?;
    let text = fs::read_to_string(&args.ops).with_context(|| format!("reading {}", args.ops.display()))?;
    let chain = parse_ops(&text).with_context(|| format!("parsing {}", args.ops.display()))?;
    let out = apply_chain(&chain, &s)?;
    emit(args.output.as_deref(), &state_to_json(&out))?;
    if args.print_dets {
        let dets = DetsOutput {
            dets: chain.dets(),
            det_product: det_product(&chain),
        };
        let text = to_json_pretty(&dets);
        if args.output.is_some() {
            emit(None, &text)?;
        } else {
            eprintln!("{text}");
        }
    }
    Ok(())
}

#[derive(Serialize)]
struct VerifyOutput {
    #[serde(flatten)]
    report: VerifyReport,
    threshold: f64,
    pass: bool,
}

fn cmd_verify(cfg: &RunConfig, args: &VerifyArgs) -> Result<ExitCode> {
    let n = cfg.check_n(args.n)?;
    ensure!(args.trials >= 1, "--trials must be at least 1");
    let report = match args.theorem {
        1 => verify_theorem1(n, args.trials, cfg.seed)?,
        _ => verify_theorem2(n, args.trials, cfg.seed)?,
    };
    let pass = report.max_rel_error <= VERIFY_THRESHOLD;
    emit(
        None,
        &to_json_pretty(&VerifyOutput {
            report,
            threshold: VERIFY_THRESHOLD,
            pass,
        }),
    )?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(1) })
}

fn cmd_signs(cfg: &RunConfig, args: &SignsArgs) -> Result<()> {
    let n = cfg.check_n(args.n)?;
    let table = if args.star {
        SignTable::sign_star(n)?
    } else {
        SignTable::sign(n)?
    };
    emit(None, &to_json_pretty(&table.to_vec()))
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let cfg = RunConfig::from_cli(cli)?;
    match &cli.command {
        Command::Make(a) => cmd_make(&cfg, a)?,
        Command::Invariant(a) => cmd_invariant(&cfg, a)?,
        Command::Criteria(a) => cmd_criteria(&cfg, a)?,
        Command::Report(a) => cmd_report(&cfg, a)?,
        Command::Compare(a) => return cmd_compare(&cfg, a),
        Command::Apply(a) => cmd_apply(&cfg, a)?,
        Command::Verify(a) => return cmd_verify(&cfg, a),
        Command::Signs(a) => cmd_signs(&cfg, a)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}


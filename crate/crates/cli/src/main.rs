use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use elkat::el::entails;
use elkat::elk::{conjunctive_sat_witnessed, elk_sat, elk_sat_witnessed, ElkError, SatVerdict};
use elkat::learning::{run_session, run_thm2, LearningError, SessionConfig};
use elkat::semantics::{brute_force_elk_sat, check_elk, BruteBounds, BruteVerdict, PointedElk};
use elkat::syntax::{
    parse_axiom, parse_formula_file, parse_ontology, to_conjunctive, ElkFormula, SyntaxError,
};

const SEED_VAR: &str = "ELKAT_SEED";

/// Satisfiability, entailment and learning simulations for ELK.
#[derive(Parser)]
#[command(name = "elkat", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Conjunctive,
    Full,
    Brute,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability of the formula in FILE.
    Sat {
        #[arg(long, value_enum, default_value = "full")]
        mode: Mode,
        /// Print a model checked against the formula.
        #[arg(long)]
        witness: bool,
        /// Print the full verdict as JSON.
        #[arg(long)]
        json: bool,
        /// World bound for brute mode; defaults to one plus the total
        /// K-depth of the formula.
        #[arg(long)]
        max_worlds: Option<usize>,
        /// Domain bound for brute mode.
        #[arg(long, default_value_t = 3)]
        max_domain: usize,
        file: PathBuf,
    },
    /// Decide whether the ontology entails an axiom.
    Entail {
        ontology: PathBuf,
        #[arg(long)]
        axiom: String,
    },
    /// Print a model of the formula in FILE.
    Model { file: PathBuf },
    /// Run a learning session described by a JSON config.
    Learn { config: PathBuf },
    /// Run an experiment.
    Experiment {
        #[command(subcommand)]
        which: Experiment,
    },
}

#[derive(Subcommand)]
enum Experiment {
    /// Example queries against the adversarial oracle versus one
    /// equivalence query.
    Thm2 {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

/// Bad input: exit code 2.
#[derive(Debug)]
struct InputError(String);

impl std::fmt::Display for InputError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn input(msg: impl std::fmt::Display) -> anyhow::Error {
    InputError(msg.to_string()).into()
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| input(format!("{}: {e}", path.display())))
}

fn syntax(e: SyntaxError) -> anyhow::Error {
    input(e)
}

fn elk(e: ElkError) -> anyhow::Error {
    match e {
        ElkError::Fragment(_) => input(e),
        other => anyhow!(other),
    }
}

fn learning(e: LearningError) -> anyhow::Error {
    match e {
        LearningError::Input(_) => input(e),
        other => anyhow!(other),
    }
}

fn seed_override() -> Result<Option<u64>> {
    match std::env::var(SEED_VAR) {
        Ok(s) => s
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| input(format!("{SEED_VAR} is not an unsigned integer: {s}"))),
        Err(_) => Ok(None),
    }
}

/// Writes to stdout; a closed pipe ends output quietly.
fn emit(text: &str) -> Result<()> {
    let mut out = io::stdout().lock();
    match writeln!(out, "{text}").and_then(|_| out.flush()) {
        Err(e) if e.kind() != io::ErrorKind::BrokenPipe => Err(e.into()),
        _ => Ok(()),
    }
}

fn pretty(v: &impl serde::Serialize) -> Result<String> {
    serde_json::to_string_pretty(v).context("serializing output")
}

/// Refuses to hand out a model that does not satisfy the formula.
fn certify(model: &PointedElk, phi: &ElkFormula) -> Result<()> {
    match check_elk(model, phi) {
        Ok(true) => Ok(()),
        Ok(false) => Err(anyhow!("witness does not satisfy the formula")),
        Err(e) => Err(anyhow!("malformed witness: {e}")),
    }
}

fn decide(phi: &ElkFormula, mode: Mode, witness: bool) -> Result<SatVerdict> {
    match mode {
        Mode::Conjunctive => {
            let c = to_conjunctive(phi).map_err(syntax)?;
            let mut v = conjunctive_sat_witnessed(&c, Some(phi)).map_err(elk)?;
            if !witness {
                v.witness = None;
            }
            Ok(v)
        }
        Mode::Full if witness => elk_sat_witnessed(phi).map_err(elk),
        Mode::Full => Ok(elk_sat(phi)),
        Mode::Brute => unreachable!(),
    }
}

fn cmd_sat(
    file: &Path,
    mode: Mode,
    witness: bool,
    as_json: bool,
    max_worlds: Option<usize>,
    max_domain: usize,
) -> Result<()> {
    let phi = parse_formula_file(&read(file)?).map_err(syntax)?;
    if let Mode::Brute = mode {
        if !(1..=4).contains(&max_domain) {
            return Err(input("--max-domain must be between 1 and 4"));
        }
        let depth: usize = phi.atoms().iter().map(|(w, _)| w.len()).sum();
        let bounds = BruteBounds {
            max_worlds: max_worlds.unwrap_or(1 + depth),
            max_domain,
        };
        let verdict = brute_force_elk_sat(&phi, bounds);
        let model = match &verdict {
            BruteVerdict::Sat(m) => {
                certify(m, &phi)?;
                Some(m)
            }
            BruteVerdict::NoModelWithinBounds => None,
        };
        let line = if model.is_some() { "SAT" } else { "NO-MODEL-WITHIN-BOUNDS" };
        if as_json {
            let j = json!({
                "sat": model.is_some(),
                "max_worlds": bounds.max_worlds,
                "max_domain": bounds.max_domain,
                "witness": if witness { model } else { None },
            });
            emit(&pretty(&j)?)?;
        } else {
            emit(line)?;
            if let (true, Some(m)) = (witness, model) {
                emit(&pretty(m)?)?;
            }
        }
        return Ok(());
    }
    let verdict = decide(&phi, mode, witness)?;
    if let Some(m) = &verdict.witness {
        certify(m, &phi)?;
    }
    if as_json {
        emit(&pretty(&verdict)?)?;
        return Ok(());
    }
    emit(if verdict.satisfiable { "SAT" } else { "UNSAT" })?;
    if let Some(check) = &verdict.failing_check {
        emit(&serde_json::to_string(check)?)?;
    }
    if let Some(m) = &verdict.witness {
        emit(&pretty(m)?)?;
    }
    Ok(())
}

fn cmd_entail(ontology: &Path, axiom: &str) -> Result<()> {
    let o = parse_ontology(&read(ontology)?).map_err(syntax)?;
    let ax = parse_axiom(axiom).map_err(syntax)?;
    emit(if entails(&o, &ax) { "ENTAILED" } else { "NOT-ENTAILED" })?;
    Ok(())
}

fn cmd_model(file: &Path) -> Result<()> {
    let phi = parse_formula_file(&read(file)?).map_err(syntax)?;
    let verdict = elk_sat_witnessed(&phi).map_err(elk)?;
    match &verdict.witness {
        Some(m) => {
            certify(m, &phi)?;
            emit(&pretty(m)?)?;
        }
        None => emit("UNSAT")?,
    }
    Ok(())
}

fn cmd_learn(config: &Path) -> Result<()> {
    let text = read(config)?;
    let mut cfg: SessionConfig =
        serde_json::from_str(&text).map_err(|e| input(format!("{}: {e}", config.display())))?;
    if let Some(seed) = seed_override()? {
        cfg.seed = seed;
    }
    let target_path = match config.parent() {
        Some(dir) if cfg.target_file.is_relative() => dir.join(&cfg.target_file),
        _ => cfg.target_file.clone(),
    };
    let report = run_session(&cfg, &read(&target_path)?).map_err(learning)?;
    emit(&pretty(&report)?)?;
    Ok(())
}

fn cmd_thm2(n: usize, seed: u64) -> Result<()> {
    let seed = seed_override()?.unwrap_or(seed);
    let counts = run_thm2(n, seed).map_err(learning)?;
    emit(&pretty(&counts)?)?;
    Ok(())
}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Sat {
            mode,
            witness,
            json,
            max_worlds,
            max_domain,
            file,
        } => cmd_sat(&file, mode, witness, json, max_worlds, max_domain),
        Command::Entail { ontology, axiom } => cmd_entail(&ontology, &axiom),
        Command::Model { file } => cmd_model(&file),
        Command::Learn { config } => cmd_learn(&config),
        Command::Experiment {
            which: Experiment::Thm2 { n, seed },
        } => cmd_thm2(n, seed),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.downcast_ref::<InputError>().is_some() => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

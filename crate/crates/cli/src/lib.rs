//! `normsynth` command-line front end.
//!
//! Exit codes: 0 success or solution, 1 clean negative (no solution, or a
//! violation found by `check`), 2 input or usage error, 3 resource limit.

mod report;

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use normsynth::monitor::{self, NormFileError};
use normsynth::reductions::{self, ReductionError, StateEncoding, ThreeSatInstance};
use normsynth::revision::{self, Budget, RevisionOutcome, RevisionProblem};
use normsynth::sat::{Engine, SolverConfig};
use normsynth::synthesis::{
    self, SynthesisEngine, SynthesisError, SynthesisOutcome, DEFAULT_BRUTE_FORCE_CAP,
};
use normsynth::trace::{IndexedTraces, TraceError};
use normsynth::{ConditionalNorm, LabeledTraceSet, NormKind};
use serde_json::{json, Value};

use report::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

/// Result of one invocation: what to print and how to exit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CommandOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl CommandOutcome {
    fn ok(code: i32, stdout: String) -> Self {
        CommandOutcome {
            code,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "normsynth", version, about = "Check, synthesize and revise conditional norms over labeled traces")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Human, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Prohibition,
    Obligation,
}

impl From<KindArg> for NormKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Prohibition => NormKind::Prohibition,
            KindArg::Obligation => NormKind::Obligation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EngineArg {
    Sat,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SolverArg {
    Cdcl,
    Dpll,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EncodingArg {
    Onehot,
    Binary,
}

#[derive(Debug, Args)]
struct SolverArgs {
    /// SAT procedure.
    #[arg(long, value_enum, default_value_t = SolverArg::Cdcl)]
    solver: SolverArg,
    /// Budget on solver decisions plus conflicts (0 = unlimited).
    #[arg(long, default_value_t = 50_000_000)]
    max_steps: u64,
}

impl SolverArgs {
    fn config(&self) -> SolverConfig {
        SolverConfig {
            engine: match self.solver {
                SolverArg::Cdcl => Engine::Cdcl,
                SolverArg::Dpll => Engine::Dpll,
            },
            max_steps: (self.max_steps > 0).then_some(self.max_steps),
        }
    }

    fn name(&self) -> &'static str {
        match self.solver {
            SolverArg::Cdcl => "cdcl",
            SolverArg::Dpll => "dpll",
        }
    }
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check a norm against every trace of a trace file.
    Check {
        #[arg(long)]
        norm: PathBuf,
        #[arg(long)]
        traces: PathBuf,
    },
    /// Synthesize a norm violated by every negative trace and no positive one.
    Synth {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        traces: PathBuf,
        #[arg(long, value_enum, default_value_t = EngineArg::Sat)]
        engine: EngineArg,
        #[command(flatten)]
        solver: SolverArgs,
        /// Enumeration cap in bits (3 per observed state) for the brute engine.
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        /// Also write the synthesized norm file here.
        #[arg(long)]
        emit_norm: Option<PathBuf>,
    },
    /// Minimally revise a norm so that it classifies the traces.
    Revise {
        #[arg(long)]
        norm: PathBuf,
        #[arg(long)]
        traces: PathBuf,
        /// Maximal allowed distance.
        #[arg(long, conflicts_with = "minimize", required_unless_present = "minimize")]
        max_dist: Option<usize>,
        /// Find the smallest feasible distance.
        #[arg(long)]
        minimize: bool,
        #[command(flatten)]
        solver: SolverArgs,
        #[arg(long)]
        emit_norm: Option<PathBuf>,
    },
    /// Generate a synthesis instance from a 3SAT instance.
    Gen3sat {
        #[arg(long, value_enum)]
        kind: KindArg,
        /// Number of variables of the random instance.
        #[arg(long, required_unless_present = "input")]
        vars: Option<usize>,
        /// Number of clauses of the random instance.
        #[arg(long, required_unless_present = "input")]
        clauses: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Read the 3SAT instance from a DIMACS file instead of generating one.
        #[arg(long, conflicts_with_all = ["vars", "clauses"])]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = EncodingArg::Onehot)]
        encoding: EncodingArg,
        /// Trace file destination; stdout if omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        /// DIMACS copy of the 3SAT instance; defaults to OUT with a `.cnf` extension.
        #[arg(long)]
        dimacs: Option<PathBuf>,
    },
    /// Enumerate every classifying triple by brute force.
    Oracle {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        traces: PathBuf,
        #[arg(long, default_value_t = DEFAULT_BRUTE_FORCE_CAP)]
        cap: usize,
        /// Print at most this many solutions.
        #[arg(long, default_value_t = 20)]
        limit: usize,
    },
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Resource(String),
}

impl From<TraceError> for CliError {
    fn from(e: TraceError) -> Self {
        CliError::Input(format!("trace file: {e}"))
    }
}

impl From<NormFileError> for CliError {
    fn from(e: NormFileError) -> Self {
        CliError::Input(format!("norm file: {e}"))
    }
}

impl From<ReductionError> for CliError {
    fn from(e: ReductionError) -> Self {
        CliError::Input(e.to_string())
    }
}

impl From<SynthesisError> for CliError {
    fn from(e: SynthesisError) -> Self {
        match e {
            SynthesisError::Solve(normsynth::sat::SolveError::ResourceLimit { .. }) => CliError::Resource(e.to_string()),
            SynthesisError::CapExceeded { .. } => CliError::Resource(e.to_string()),
            other => CliError::Input(other.to_string()),
        }
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))
}

/// Parses `argv` (including the program name) and runs the command.
pub fn dispatch<I, T>(argv: I) -> CommandOutcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
            let text = e.render().to_string();
            return if e.use_stderr() {
                CommandOutcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CommandOutcome::ok(code, text)
            };
        }
    };
    match run(&cli) {
        Ok(outcome) => outcome,
        Err(err) => {
            let (code, message) = match err {
                CliError::Input(m) => (EXIT_INPUT, m),
                CliError::Resource(m) => (EXIT_RESOURCE, m),
            };
            let stdout = match cli.format {
                Format::Json => render_json(&json!({"schema": SCHEMA, "error": message, "exit": code})),
                Format::Human => String::new(),
            };
            CommandOutcome {
                code,
                stdout,
                stderr: format!("error: {message}\n"),
            }
        }
    }
}

fn run(cli: &Cli) -> Result<CommandOutcome, CliError> {
    match &cli.command {
        Command::Check { norm, traces } => check(cli.format, norm, traces),
        Command::Synth {
            kind,
            traces,
            engine,
            solver,
            cap,
            emit_norm,
        } => synth(cli.format, (*kind).into(), traces, *engine, solver, *cap, emit_norm.as_deref()),
        Command::Revise {
            norm,
            traces,
            max_dist,
            minimize,
            solver,
            emit_norm,
        } => {
            let budget = match (max_dist, minimize) {
                (Some(m), false) => Budget::AtMost(*m),
                _ => Budget::Minimize,
            };
            revise(cli.format, norm, traces, budget, solver, emit_norm.as_deref())
        }
        Command::Gen3sat {
            kind,
            vars,
            clauses,
            seed,
            input,
            encoding,
            out,
            dimacs,
        } => {
            let instance = match input {
                Some(path) => {
                    let text = std::fs::read_to_string(path)
                        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
                    ThreeSatInstance::from_dimacs(&text)?
                }
                None => {
                    let (vars, clauses) = (vars.unwrap_or(0), clauses.unwrap_or(0));
                    if vars == 0 || clauses == 0 {
                        return Err(CliError::Input("--vars and --clauses must be at least 1".into()));
                    }
                    reductions::random_3sat(vars, clauses, *seed)
                }
            };
            let encoding = match encoding {
                EncodingArg::Onehot => StateEncoding::OneHot,
                EncodingArg::Binary => StateEncoding::Binary,
            };
            gen3sat(cli.format, (*kind).into(), &instance, encoding, out.as_deref(), dimacs.as_deref())
        }
        Command::Oracle {
            kind,
            traces,
            cap,
            limit,
        } => oracle(cli.format, (*kind).into(), traces, *cap, *limit),
    }
}

fn check(format: Format, norm_path: &Path, traces_path: &Path) -> Result<CommandOutcome, CliError> {
    let gamma = LabeledTraceSet::load(traces_path)?;
    let norm = ConditionalNorm::load(norm_path, gamma.vocab())?;
    let mut rows = Vec::new();
    for (label, index, trace) in gamma.labeled() {
        let verdict = monitor::check(&norm, trace).map_err(|e| CliError::Input(e.to_string()))?;
        rows.push((label, index, trace.len(), verdict));
    }
    let violations = rows.iter().filter(|r| r.3.is_violated()).count();
    let code = if violations > 0 { EXIT_NEGATIVE } else { EXIT_OK };
    let vocab = gamma.vocab();
    let stdout = match format {
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "command": "check",
            "norm": norm.to_json(vocab),
            "traces": rows.iter().map(|(label, index, len, verdict)| {
                let mut row = json!({"label": label.as_str(), "index": index, "length": len});
                if let (Value::Object(row), Value::Object(v)) = (&mut row, verdict_json(*verdict)) {
                    row.extend(v);
                }
                row
            }).collect::<Vec<_>>(),
            "violations": violations,
            "total": rows.len(),
        })),
        Format::Human => {
            let mut out = String::new();
            writeln!(out, "norm: {}", norm_line(&norm, vocab)).unwrap();
            writeln!(out, "{:<16} {:>6}  {:<9} witness", "trace", "length", "verdict").unwrap();
            for (label, index, len, verdict) in &rows {
                let (v, w) = match verdict {
                    normsynth::Verdict::Violated(w) => ("violated", w.to_string()),
                    normsynth::Verdict::Obeyed => ("obeyed", "-".to_string()),
                };
                writeln!(out, "{:<16} {:>6}  {:<9} {}", format!("{label}[{index}]"), len, v, w).unwrap();
            }
            writeln!(out, "violations: {violations} of {} traces", rows.len()).unwrap();
            out
        }
    };
    Ok(CommandOutcome::ok(code, stdout))
}

fn norm_line(norm: &ConditionalNorm, vocab: &normsynth::Vocabulary) -> String {
    format!(
        "({}, {}({}), {})",
        norm.condition.display(vocab),
        norm.kind.letter(),
        norm.target.display(vocab),
        norm.deadline.display(vocab)
    )
}

fn norm_human(norm: &ConditionalNorm, vocab: &normsynth::Vocabulary, out: &mut String) {
    writeln!(out, "  condition: {}", norm.condition.display(vocab)).unwrap();
    writeln!(out, "  target:    {}", norm.target.display(vocab)).unwrap();
    writeln!(out, "  deadline:  {}", norm.deadline.display(vocab)).unwrap();
}

fn emit(path: Option<&Path>, norm: &ConditionalNorm, vocab: &normsynth::Vocabulary) -> Result<(), CliError> {
    if let Some(path) = path {
        write_file(path, &render_json(&norm.to_json(vocab)))?;
    }
    Ok(())
}

fn synth(
    format: Format,
    kind: NormKind,
    traces_path: &Path,
    engine: EngineArg,
    solver: &SolverArgs,
    cap: usize,
    emit_norm: Option<&Path>,
) -> Result<CommandOutcome, CliError> {
    let gamma = LabeledTraceSet::load(traces_path)?;
    let universe = gamma.universe();
    let vocab = gamma.vocab();
    let (engine_cfg, engine_name) = match engine {
        EngineArg::Sat => (SynthesisEngine::Sat(solver.config()), format!("sat ({})", solver.name())),
        EngineArg::Brute => (SynthesisEngine::BruteForce { cap }, "brute".to_string()),
    };
    let result = synthesis::synthesize(&gamma, kind, &engine_cfg)?;
    let solution = result.outcome.solution();
    // re-check through the emitted formulas, independently of the engine
    let verification = solution.map(|s| synthesis::verify_norm(&s.norm, &gamma));
    if let Some(sol) = solution {
        emit(emit_norm, &sol.norm, vocab)?;
    }
    let code = if solution.is_some() { EXIT_OK } else { EXIT_NEGATIVE };
    let stdout = match format {
        Format::Json => {
            let mut doc = json!({
                "schema": SCHEMA,
                "command": "synth",
                "kind": kind.as_str(),
                "engine": engine_name,
                "universe_size": universe.len(),
                "positive": gamma.positive().len(),
                "negative": gamma.negative().len(),
                "result": if solution.is_some() { "solution" } else { "no_solution" },
            });
            let obj = doc.as_object_mut().expect("object");
            if let (Some(sol), Some(v)) = (solution, &verification) {
                obj.insert("trivial".into(), json!(sol.trivial));
                obj.insert("triple".into(), triple_json(&sol.triple, &universe, vocab));
                obj.insert("norm".into(), sol.norm.to_json(vocab));
                obj.insert("verification".into(), verification_json(v));
            }
            obj.insert("stats".into(), engine_stats_json(&result.stats));
            render_json(&doc)
        }
        Format::Human => {
            let mut out = String::new();
            writeln!(out, "kind:      {kind}").unwrap();
            writeln!(out, "engine:    {engine_name}").unwrap();
            writeln!(
                out,
                "traces:    {} positive, {} negative, {} distinct states",
                gamma.positive().len(),
                gamma.negative().len(),
                universe.len()
            )
            .unwrap();
            match (&result.outcome, &verification) {
                (SynthesisOutcome::Solution(sol), Some(v)) => {
                    writeln!(out, "result:    SOLUTION{}", if sol.trivial { " (trivial: no negative traces)" } else { "" }).unwrap();
                    writeln!(out, "state sets:").unwrap();
                    triple_human(&sol.triple, &universe, vocab, &mut out);
                    writeln!(out, "norm:").unwrap();
                    norm_human(&sol.norm, vocab, &mut out);
                    writeln!(out, "verification: {}", verification_human(v)).unwrap();
                }
                _ => writeln!(out, "result:    NO SOLUTION").unwrap(),
            }
            writeln!(out, "stats:     {}", engine_stats_human(&result.stats)).unwrap();
            out
        }
    };
    Ok(CommandOutcome::ok(code, stdout))
}

fn revise(
    format: Format,
    norm_path: &Path,
    traces_path: &Path,
    budget: Budget,
    solver: &SolverArgs,
    emit_norm: Option<&Path>,
) -> Result<CommandOutcome, CliError> {
    let gamma = LabeledTraceSet::load(traces_path)?;
    let reference = ConditionalNorm::load(norm_path, gamma.vocab())?;
    let universe = gamma.universe();
    let vocab = gamma.vocab();
    let problem = RevisionProblem {
        gamma: &gamma,
        reference: &reference,
        budget,
    };
    let result = revision::revise(&problem, &solver.config())?;
    let verification = result
        .outcome
        .revision()
        .map(|r| synthesis::verify_norm(&r.solution.norm, &gamma));
    if let Some(r) = result.outcome.revision() {
        emit(emit_norm, &r.solution.norm, vocab)?;
    }
    let reference_triple = match &result.outcome {
        RevisionOutcome::Revised(r) => &r.reference,
        RevisionOutcome::NoSolution { reference } => reference,
    };
    let budget_value = match budget {
        Budget::AtMost(m) => json!(m),
        Budget::Minimize => json!("minimize"),
    };
    let note = "formulas are compared as state sets over the observed states; distance counts added and removed states";
    let code = if result.outcome.revision().is_some() { EXIT_OK } else { EXIT_NEGATIVE };
    let stdout = match format {
        Format::Json => {
            let mut doc = json!({
                "schema": SCHEMA,
                "command": "revise",
                "kind": reference.kind.as_str(),
                "budget": budget_value,
                "max_distance": revision::max_distance(universe.len()),
                "universe_size": universe.len(),
                "note": note,
                "reference": {
                    "norm": reference.to_json(vocab),
                    "triple": triple_json(reference_triple, &universe, vocab),
                },
                "result": if result.outcome.revision().is_some() { "revised" } else { "no_solution" },
            });
            let obj = doc.as_object_mut().expect("object");
            if let (Some(r), Some(v)) = (result.outcome.revision(), &verification) {
                obj.insert("distance".into(), json!(r.distance));
                obj.insert("triple".into(), triple_json(&r.solution.triple, &universe, vocab));
                obj.insert("norm".into(), r.solution.norm.to_json(vocab));
                let changes: serde_json::Map<String, Value> = r
                    .changes()
                    .into_iter()
                    .map(|c| {
                        (
                            c.role.as_str().to_string(),
                            json!({
                                "added": states_json(c.added, &universe, vocab),
                                "removed": states_json(c.removed, &universe, vocab),
                            }),
                        )
                    })
                    .collect();
                obj.insert("changes".into(), Value::Object(changes));
                obj.insert("verification".into(), verification_json(v));
            }
            obj.insert(
                "probes".into(),
                Value::Array(result.probes.iter().map(|(m, ok)| json!({"budget": m, "feasible": ok})).collect()),
            );
            obj.insert("stats".into(), solve_stats_json(&result.stats));
            render_json(&doc)
        }
        Format::Human => {
            let mut out = String::new();
            writeln!(out, "kind:      {}", reference.kind).unwrap();
            let budget_text = match budget {
                Budget::AtMost(m) => format!("at most {m}"),
                Budget::Minimize => "minimize".into(),
            };
            writeln!(out, "budget:    {budget_text} (max {})", revision::max_distance(universe.len())).unwrap();
            writeln!(out, "note:      {note}").unwrap();
            writeln!(out, "reference: {}", norm_line(&reference, vocab)).unwrap();
            triple_human(reference_triple, &universe, vocab, &mut out);
            match (result.outcome.revision(), &verification) {
                (Some(r), Some(v)) => {
                    writeln!(out, "result:    REVISED at distance {}", r.distance).unwrap();
                    triple_human(&r.solution.triple, &universe, vocab, &mut out);
                    writeln!(out, "changes:").unwrap();
                    for c in r.changes() {
                        let role = report::role_label(c.role, &r.solution.triple);
                        writeln!(
                            out,
                            "  {:<14} +{} -{}",
                            format!("{role}:"),
                            states_human(c.added, &universe, vocab),
                            states_human(c.removed, &universe, vocab)
                        )
                        .unwrap();
                    }
                    writeln!(out, "norm:").unwrap();
                    norm_human(&r.solution.norm, vocab, &mut out);
                    writeln!(out, "verification: {}", verification_human(v)).unwrap();
                }
                _ => writeln!(out, "result:    NO SOLUTION").unwrap(),
            }
            let probes: Vec<String> = result
                .probes
                .iter()
                .map(|(m, ok)| format!("{m}:{}", if *ok { "sat" } else { "unsat" }))
                .collect();
            writeln!(out, "probes:    {}", probes.join(" ")).unwrap();
            writeln!(out, "stats:     {}", solve_stats_human(&result.stats)).unwrap();
            out
        }
    };
    Ok(CommandOutcome::ok(code, stdout))
}

fn gen3sat(
    format: Format,
    kind: NormKind,
    instance: &ThreeSatInstance,
    encoding: StateEncoding,
    out: Option<&Path>,
    dimacs: Option<&Path>,
) -> Result<CommandOutcome, CliError> {
    let artifacts = reductions::generate(kind, instance, encoding);
    let text = artifacts.gamma.to_canonical_json();
    let Some(out) = out else {
        if let Some(d) = dimacs {
            write_file(d, &instance.to_dimacs())?;
        }
        return Ok(CommandOutcome::ok(EXIT_OK, text));
    };
    let sidecar = dimacs.map(Path::to_path_buf).unwrap_or_else(|| out.with_extension("cnf"));
    write_file(out, &text)?;
    write_file(&sidecar, &instance.to_dimacs())?;
    let gamma = &artifacts.gamma;
    let stdout = match format {
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "command": "gen3sat",
            "kind": kind.as_str(),
            "variables": instance.num_vars(),
            "clauses": instance.clauses().len(),
            "propositions": gamma.vocab().len(),
            "states": gamma.universe().len(),
            "positive": gamma.positive().len(),
            "negative": gamma.negative().len(),
            "traces_file": out.display().to_string(),
            "dimacs_file": sidecar.display().to_string(),
        })),
        Format::Human => format!(
            "wrote {}: {} negative and {} positive traces over {} states ({} propositions)\nwrote {}: {} variables, {} clauses\n",
            out.display(),
            gamma.negative().len(),
            gamma.positive().len(),
            gamma.universe().len(),
            gamma.vocab().len(),
            sidecar.display(),
            instance.num_vars(),
            instance.clauses().len()
        ),
    };
    Ok(CommandOutcome::ok(EXIT_OK, stdout))
}

fn oracle(format: Format, kind: NormKind, traces_path: &Path, cap: usize, limit: usize) -> Result<CommandOutcome, CliError> {
    let gamma = LabeledTraceSet::load(traces_path)?;
    let universe = gamma.universe();
    let vocab = gamma.vocab();
    let traces = IndexedTraces::new(&gamma, &universe);
    let mut shown = Vec::new();
    let mut count: u64 = 0;
    let candidates = synthesis::enumerate_solutions(kind, &traces, cap, |t| {
        count += 1;
        if shown.len() < limit {
            shown.push(t);
        }
        true
    })?;
    let code = if count > 0 { EXIT_OK } else { EXIT_NEGATIVE };
    let stdout = match format {
        Format::Json => render_json(&json!({
            "schema": SCHEMA,
            "command": "oracle",
            "kind": kind.as_str(),
            "universe_size": universe.len(),
            "candidates": candidates,
            "solutions": count,
            "shown": shown.iter().map(|t| triple_json(t, &universe, vocab)).collect::<Vec<_>>(),
        })),
        Format::Human => {
            let mut out = String::new();
            writeln!(out, "kind:      {kind}").unwrap();
            writeln!(out, "universe:  {} states, {candidates} candidate triples", universe.len()).unwrap();
            if count == 0 {
                writeln!(out, "result:    NO SOLUTION").unwrap();
            } else {
                writeln!(out, "result:    {count} solutions (showing {})", shown.len()).unwrap();
                for (i, t) in shown.iter().enumerate() {
                    writeln!(out, "#{}", i + 1).unwrap();
                    triple_human(t, &universe, vocab, &mut out);
                }
            }
            out
        }
    };
    Ok(CommandOutcome::ok(code, stdout))
}

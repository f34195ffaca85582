//! `satisficing`: solve ordinal games, run prevalence and dynamics
//! experiments, build the standard constructions, and check potentials and
//! axioms.
//!
//! Exit codes: 0 success, 1 verification failure, 2 input error.

mod output;
mod parse;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::json;

use output::{write_document, Format, Table};
use satisficing::axioms::{axiom_domain, check_axioms, AllProfiles, KSat, Mutant, SolutionMap};
use satisficing::constructions::{
    eleven_twenty, matching_pennies, mixed_equilibria, no_sat_counterexample, travelers_dilemma,
    verify_mixed_equilibrium, CardinalBimatrix,
};
use satisficing::dynamics::{
    convergence_experiment, run_dynamic, DynamicsConfig, ExperimentConfig, Outcome, DEFAULT_LAMBDA, DEFAULT_MAX_STEPS,
};
use satisficing::exec::default_workers;
use satisficing::format::{game_from_json, game_to_json, witness_from_json, WitnessFile};
use satisficing::potentials::{
    find_potential, potential_nash_bridge, verify_approximate_potential, PotentialSearch, DEFAULT_NODE_BUDGET,
};
use satisficing::prevalence::{run_prevalence_experiment, ExperimentRow, PrevalenceRecord};
use satisficing::{satisficing_equilibria, ActionProfile, OrdinalGame, Thresholds};

/// Seed used when `--seed` is not given.
const DEFAULT_SEED: u64 = 20_240_601;

#[derive(Parser)]
#[command(
    name = "satisficing",
    version,
    about = "Satisficing equilibria of finite ordinal games"
)]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Master seed for randomized commands [default: 20240601].
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Worker threads; outputs do not depend on it [default: available cores].
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    format: Format,
    /// Output file instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

impl Common {
    fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    fn workers(&self) -> usize {
        self.workers.unwrap_or_else(default_workers).max(1)
    }

    fn out(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

#[derive(Subcommand)]
enum Command {
    /// List the k-satisficing equilibria of a game file.
    Solve {
        /// Game file, or `-` for standard input.
        #[arg(long, default_value = "-")]
        game: String,
        /// Thresholds: one value for every agent, or one per agent.
        #[arg(long, default_value = "1")]
        k: String,
    },
    /// Estimate the prevalence of one property on uniformly random games.
    SampleGamma {
        #[command(flatten)]
        ensemble: Ensemble,
        /// Property as `d=..,k=..,z=..,S=..`; S is `all` or 0-based agents joined by `+`.
        #[arg(long, default_value = "d=0,z=1")]
        spec: String,
    },
    /// Prevalence experiment with Poisson references, Chen-Stein bounds and verdicts.
    Prevalence {
        #[command(flatten)]
        ensemble: Ensemble,
        /// Property rows, evaluated on the same sampled games (repeatable).
        #[arg(long, default_values_t = ["d=0,z=1".to_string()])]
        spec: Vec<String>,
    },
    /// Run the top-k response dynamic on one game or on random games.
    Dynamics(DynamicsArgs),
    /// Emit a constructed game.
    #[command(subcommand)]
    Construct(Construct),
    /// Verify a potential witness, or search for one.
    CheckPotential {
        #[arg(long, default_value = "-")]
        game: String,
        #[arg(long, default_value = "1")]
        k: String,
        /// Witness file `{"scores":[...]}` to verify; searches when omitted.
        #[arg(long)]
        witness: Option<String>,
        /// Placement budget for the search.
        #[arg(long, default_value_t = DEFAULT_NODE_BUDGET)]
        budget: u64,
        /// Write a found witness to this file.
        #[arg(long)]
        save_witness: Option<PathBuf>,
    },
    /// Exact mixed equilibria of a bimatrix game by support enumeration.
    Mixed {
        /// Bimatrix file as written by `construct ... --payoffs`, or `-`.
        #[arg(long, default_value = "-")]
        bimatrix: String,
    },
    /// Check the one-person, consistency and converse consistency axioms
    /// exhaustively over small strict games.
    CheckAxioms {
        #[arg(long, default_value_t = 3)]
        max_agents: usize,
        #[arg(long, default_value_t = 2)]
        actions: usize,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Solution::KSat)]
        solution: Solution,
    },
}

#[derive(Args)]
struct Ensemble {
    /// Number of agents when `--m` is a single count.
    #[arg(long)]
    n: Option<usize>,
    /// Actions per agent: one count, or one per agent joined by `x`.
    #[arg(long)]
    m: String,
    #[arg(long, default_value_t = 10_000)]
    samples: u64,
}

#[derive(Args)]
struct DynamicsArgs {
    /// Game file for a single run; random games are used when omitted.
    #[arg(long)]
    game: Option<String>,
    /// Starting profile for a single run, e.g. `0,1,0` [default: all zeros].
    #[arg(long)]
    start: Option<String>,
    /// Step history kept for a single run (JSON output only).
    #[arg(long, default_value_t = 0)]
    history: usize,
    #[arg(long, default_value_t = 10)]
    n: usize,
    #[arg(long, default_value = "2")]
    m: String,
    #[arg(long, default_value_t = 2)]
    k: usize,
    #[arg(long, default_value_t = DEFAULT_LAMBDA)]
    lambda: f64,
    #[arg(long, default_value_t = DEFAULT_MAX_STEPS)]
    max_steps: u64,
    #[arg(long, default_value_t = 500)]
    games: u64,
    #[arg(long, default_value_t = 1)]
    runs: u64,
}

#[derive(Subcommand)]
enum Construct {
    /// A strict game with no (m - ceil(m/n))-satisficing equilibrium.
    Counterexample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// The traveler's dilemma with claims 2..=max-claim.
    Travelers {
        #[arg(long, default_value_t = 100)]
        max_claim: i64,
        #[arg(long, default_value_t = 2)]
        bonus: i64,
        /// Emit the cardinal bimatrix instead of the ordinal game.
        #[arg(long)]
        payoffs: bool,
    },
    /// The 11-20 money request game.
    ElevenTwenty {
        #[arg(long)]
        payoffs: bool,
    },
    /// Matching pennies.
    MatchingPennies {
        #[arg(long)]
        payoffs: bool,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Solution {
    KSat,
    AllProfiles,
    DropFirst,
    AddFirst,
    PureNash,
}

fn read_input(path: &str) -> Result<String> {
    let mut text = String::new();
    if path == "-" {
        std::io::stdin()
            .read_to_string(&mut text)
            .context("cannot read standard input")?;
    } else {
        text = std::fs::read_to_string(path).with_context(|| format!("cannot read {path}"))?;
    }
    Ok(text)
}

fn load_game(path: &str) -> Result<OrdinalGame> {
    game_from_json(&read_input(path)?).with_context(|| format!("malformed game file {path}"))
}

fn spaced<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

#[derive(Serialize)]
struct SolveRow {
    index: usize,
    profile: String,
}

fn solve(c: &Common, game: &str, k: &str) -> Result<bool> {
    let g = load_game(game)?;
    let k = Thresholds::new(parse::thresholds(k, g.agents())?)?;
    let rows: Vec<SolveRow> = satisficing_equilibria(&g, &k)?
        .iter()
        .map(|a| SolveRow {
            index: g.grid().index_of(a).expect("equilibria are valid profiles"),
            profile: spaced(a.actions()),
        })
        .collect();
    Table {
        seed: None,
        rows: &rows,
        extra: vec![("k", json!(k.as_slice())), ("count", json!(rows.len()))],
        empty_header: &["index", "profile"],
    }
    .write(c.format, c.out())?;
    Ok(true)
}

fn ensemble_rows(c: &Common, e: &Ensemble, specs: &[String]) -> Result<Vec<PrevalenceRecord>> {
    let m = parse::action_counts(&e.m, e.n)?;
    let rows = specs
        .iter()
        .map(|s| {
            Ok(ExperimentRow {
                m: m.clone(),
                spec: parse::property(s, m.len())?,
                samples: e.samples,
                seed: c.seed(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    run_prevalence_experiment(&rows, c.workers())
        .into_iter()
        .map(|r| Ok(r?.to_record()))
        .collect()
}

#[derive(Serialize)]
struct GammaRow {
    n: usize,
    m: String,
    d: usize,
    #[serde(rename = "|S|")]
    s_size: usize,
    k: usize,
    z: u64,
    samples: u64,
    estimate: f64,
    ci_low: f64,
    ci_high: f64,
    poisson_ref: f64,
    chen_stein_bound: f64,
    seed: u64,
}

fn sample_gamma(c: &Common, e: &Ensemble, spec: &str) -> Result<bool> {
    let rows: Vec<GammaRow> = ensemble_rows(c, e, &[spec.to_string()])?
        .into_iter()
        .map(|r| GammaRow {
            n: r.n,
            m: r.m,
            d: r.d,
            s_size: r.s_size,
            k: r.k,
            z: r.z,
            samples: r.samples,
            estimate: r.estimate,
            ci_low: r.ci_low,
            ci_high: r.ci_high,
            poisson_ref: r.poisson_ref,
            chen_stein_bound: r.chen_stein_bound,
            seed: r.seed,
        })
        .collect();
    Table {
        seed: Some(c.seed()),
        rows: &rows,
        extra: Vec::new(),
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(true)
}

fn prevalence(c: &Common, e: &Ensemble, specs: &[String]) -> Result<bool> {
    let rows = ensemble_rows(c, e, specs)?;
    Table {
        seed: Some(c.seed()),
        rows: &rows,
        extra: Vec::new(),
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(rows.iter().all(|r| r.verdict == "pass"))
}

#[derive(Serialize)]
struct SingleRun {
    seed: u64,
    k: usize,
    lambda: f64,
    converged: bool,
    outcome: Outcome,
    absorb_time: Option<u64>,
    steps: u64,
    final_profile: String,
}

fn dynamics(c: &Common, a: &DynamicsArgs) -> Result<bool> {
    let Some(path) = &a.game else {
        let cfg = ExperimentConfig {
            m: parse::action_counts(&a.m, Some(a.n))?,
            k: a.k,
            lambda: a.lambda,
            games: a.games,
            runs_per_game: a.runs,
            max_steps: a.max_steps,
            seed: c.seed(),
        };
        let (summary, records) = convergence_experiment(&cfg, c.workers())?;
        if c.format == Format::Csv {
            eprintln!(
                "converged {}/{} (frozen {}, unfinished {})",
                summary.converged, summary.runs, summary.frozen, summary.unfinished
            );
        }
        Table {
            seed: Some(c.seed()),
            rows: &records,
            extra: vec![("summary", serde_json::to_value(&summary)?)],
            empty_header: &[],
        }
        .write(c.format, c.out())?;
        return Ok(true);
    };
    let g = load_game(path)?;
    let start = match &a.start {
        Some(s) => parse::profile(s)?,
        None => vec![0; g.agents()],
    };
    let config = DynamicsConfig {
        lambda: a.lambda,
        max_steps: a.max_steps,
        history: a.history,
        ..DynamicsConfig::new(a.k, ActionProfile::new(start), c.seed())
    };
    let t = run_dynamic(&g, &config)?;
    let row = SingleRun {
        seed: c.seed(),
        k: a.k,
        lambda: a.lambda,
        converged: t.converged,
        outcome: t.outcome,
        absorb_time: t.absorb_time,
        steps: t.steps,
        final_profile: spaced(t.final_profile.actions()),
    };
    let mut extra = Vec::new();
    if let Some(h) = &t.history {
        extra.push(("history", serde_json::to_value(h)?));
    }
    Table {
        seed: Some(c.seed()),
        rows: &[row],
        extra,
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(true)
}

fn bimatrix_document(b: &CardinalBimatrix) -> String {
    serde_json::to_string(b).expect("bimatrix serializes")
}

fn construct(c: &Common, which: &Construct) -> Result<bool> {
    let doc = match *which {
        Construct::Counterexample { n, m } => game_to_json(&no_sat_counterexample(n, m)?),
        Construct::Travelers {
            max_claim,
            bonus,
            payoffs,
        } => {
            let b = travelers_dilemma(max_claim, bonus)?;
            if payoffs {
                bimatrix_document(&b)
            } else {
                game_to_json(&b.to_ordinal())
            }
        }
        Construct::ElevenTwenty { payoffs } => {
            let b = eleven_twenty();
            if payoffs {
                bimatrix_document(&b)
            } else {
                game_to_json(&b.to_ordinal())
            }
        }
        Construct::MatchingPennies { payoffs } => {
            let b = matching_pennies();
            if payoffs {
                bimatrix_document(&b)
            } else {
                game_to_json(&b.to_ordinal())
            }
        }
    };
    write_document(&doc, c.out())?;
    Ok(true)
}

#[derive(Serialize)]
struct ViolationRow {
    agent: usize,
    profile: String,
    rank: usize,
    potential_rank: usize,
}

#[derive(Serialize)]
struct SearchRow {
    status: &'static str,
    potential_nash: Option<usize>,
    bridge: Option<bool>,
    scores: String,
}

fn check_potential(
    c: &Common,
    game: &str,
    k: &str,
    witness: Option<&str>,
    budget: u64,
    save: Option<&Path>,
) -> Result<bool> {
    let g = load_game(game)?;
    let k = Thresholds::new(parse::thresholds(k, g.agents())?)?;
    if let Some(w) = witness {
        let scores = witness_from_json(&read_input(w)?, &g).with_context(|| format!("malformed witness file {w}"))?;
        let rows: Vec<ViolationRow> = verify_approximate_potential(&g, &k, &scores)?
            .into_iter()
            .map(|v| ViolationRow {
                agent: v.agent,
                profile: spaced(v.profile.actions()),
                rank: v.rank,
                potential_rank: v.potential_rank,
            })
            .collect();
        let ok = rows.is_empty();
        Table {
            seed: None,
            rows: &rows,
            extra: vec![("verified", json!(ok))],
            empty_header: &["agent", "profile", "rank", "potential_rank"],
        }
        .write(c.format, c.out())?;
        return Ok(ok);
    }
    let result = find_potential(&g, &k, budget)?;
    let (row, ok) = match &result {
        PotentialSearch::Found(scores) => {
            let bridge = potential_nash_bridge(&g, &k, scores)?;
            if let Some(p) = save {
                let doc = serde_json::to_string(&WitnessFile { scores: scores.clone() })?;
                write_document(&doc, Some(p))?;
            }
            let passed = bridge.passed();
            let row = SearchRow {
                status: "found",
                potential_nash: Some(bridge.potential_nash.len()),
                bridge: Some(passed),
                scores: spaced(scores),
            };
            (row, passed)
        }
        PotentialSearch::NoWitness => (
            SearchRow {
                status: "no_witness",
                potential_nash: None,
                bridge: None,
                scores: String::new(),
            },
            false,
        ),
        PotentialSearch::BudgetExhausted => (
            SearchRow {
                status: "budget_exhausted",
                potential_nash: None,
                bridge: None,
                scores: String::new(),
            },
            false,
        ),
    };
    Table {
        seed: None,
        rows: &[row],
        extra: vec![("k", json!(k.as_slice()))],
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(ok)
}

#[derive(Serialize)]
struct MixedRow {
    row: String,
    col: String,
    row_value: String,
    col_value: String,
    degenerate: bool,
    verified: bool,
}

fn mixed(c: &Common, path: &str) -> Result<bool> {
    let raw: CardinalBimatrix =
        serde_json::from_str(&read_input(path)?).with_context(|| format!("malformed bimatrix file {path}"))?;
    let b = CardinalBimatrix::new(raw.row_labels, raw.col_labels, raw.payoff1, raw.payoff2)
        .with_context(|| format!("malformed bimatrix file {path}"))?;
    let eqs = mixed_equilibria(&b, c.workers())?;
    let rows: Vec<MixedRow> = eqs
        .iter()
        .map(|e| MixedRow {
            row: spaced(&e.row),
            col: spaced(&e.col),
            row_value: e.row_value.to_string(),
            col_value: e.col_value.to_string(),
            degenerate: e.degenerate,
            verified: verify_mixed_equilibrium(&b, e),
        })
        .collect();
    Table {
        seed: None,
        rows: &rows,
        extra: vec![("row_labels", json!(b.row_labels)), ("col_labels", json!(b.col_labels))],
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(rows.iter().all(|r| r.verified))
}

#[derive(Serialize)]
struct AxiomRow {
    axiom: &'static str,
    solution: String,
    games_checked: usize,
    violations: usize,
    witness_game: Option<usize>,
    witness_profile: Option<String>,
    witness_subset: Option<String>,
    detail: Option<String>,
}

fn check_axioms_cmd(c: &Common, max_agents: usize, actions: usize, k: usize, which: Solution) -> Result<bool> {
    if k == 0 {
        bail!("k must be at least 1");
    }
    let games = axiom_domain(max_agents, actions)?;
    let solution: Box<dyn SolutionMap> = match which {
        Solution::KSat => Box::new(KSat(k)),
        Solution::AllProfiles => Box::new(AllProfiles),
        Solution::DropFirst => Box::new(Mutant::DropFirst(k)),
        Solution::AddFirst => Box::new(Mutant::AddFirstNonEquilibrium(k)),
        Solution::PureNash => Box::new(Mutant::PureNashInstead(k)),
    };
    let reports = check_axioms(solution.as_ref(), k, &games, c.workers());
    let rows: Vec<AxiomRow> = reports
        .iter()
        .map(|r| {
            let w = r.first_witness.as_ref();
            AxiomRow {
                axiom: r.axiom,
                solution: r.solution.clone(),
                games_checked: r.games_checked,
                violations: r.violations,
                witness_game: w.map(|w| w.game),
                witness_profile: w.map(|w| spaced(w.profile.actions())),
                witness_subset: w.and_then(|w| w.subset.as_ref().map(|s| spaced(s))),
                detail: w.map(|w| w.detail.clone()),
            }
        })
        .collect();
    Table {
        seed: None,
        rows: &rows,
        extra: vec![("games", json!(games.len()))],
        empty_header: &[],
    }
    .write(c.format, c.out())?;
    Ok(reports.iter().all(|r| r.passed()))
}

fn run(cli: &Cli) -> Result<bool> {
    let c = &cli.common;
    match &cli.command {
        Command::Solve { game, k } => solve(c, game, k),
        Command::SampleGamma { ensemble, spec } => sample_gamma(c, ensemble, spec),
        Command::Prevalence { ensemble, spec } => prevalence(c, ensemble, spec),
        Command::Dynamics(a) => dynamics(c, a),
        Command::Construct(which) => construct(c, which),
        Command::CheckPotential {
            game,
            k,
            witness,
            budget,
            save_witness,
        } => check_potential(c, game, k, witness.as_deref(), *budget, save_witness.as_deref()),
        Command::Mixed { bimatrix } => mixed(c, bimatrix),
        Command::CheckAxioms {
            max_agents,
            actions,
            k,
            solution,
        } => check_axioms_cmd(c, *max_agents, *actions, *k, *solution),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

//! The top-`k` response dynamic with memory and inertia.
//!
//! At each step every agent is independently active with probability `λ`.
//! An active agent that has never been active, or whose last activation at
//! `t'` was followed by a profile change, draws uniformly among its actions
//! of rank at most `k` against `a_{-i}(t-1)`; an active agent that saw no
//! change since `t'` keeps its action, and inactive agents keep theirs.
//! All active agents respond to the same previous profile.

use std::collections::VecDeque;

use serde::Serialize;

use crate::ensembles::LazyGame;
use crate::error::{invalid, Result};
use crate::exec;
use crate::game::{is_equilibrium_at, ActionProfile, RankSource};
use crate::rng::{derive_seed, tag, Stream};

pub const DEFAULT_LAMBDA: f64 = 0.5;
pub const DEFAULT_MAX_STEPS: u64 = 100_000;

#[derive(Debug, Clone, PartialEq)]
pub struct DynamicsConfig {
    pub k: usize,
    pub lambda: f64,
    pub max_steps: u64,
    pub seed: u64,
    pub initial: ActionProfile,
    /// Capacity of the step history ring buffer; 0 disables it.
    pub history: usize,
}

impl DynamicsConfig {
    pub fn new(k: usize, initial: ActionProfile, seed: u64) -> Self {
        DynamicsConfig {
            k,
            lambda: DEFAULT_LAMBDA,
            max_steps: DEFAULT_MAX_STEPS,
            seed,
            initial,
            history: 0,
        }
    }

    pub fn validate<G: RankSource + ?Sized>(&self, game: &G) -> Result<()> {
        if self.k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        if !(self.lambda > 0.0 && self.lambda < 1.0) {
            return Err(invalid(format!("lambda must lie in (0, 1), got {}", self.lambda)));
        }
        game.grid().index_of(&self.initial)?;
        Ok(())
    }
}

/// Current profile plus the bookkeeping the memory rule needs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DynamicsState {
    profile: Vec<usize>,
    index: usize,
    time: u64,
    last_active: Vec<Option<u64>>,
    /// Last step at which the profile changed; 0 if it never did.
    last_change: u64,
    active: Vec<bool>,
    redrew: Vec<bool>,
    next: Vec<usize>,
    candidates: Vec<usize>,
}

impl DynamicsState {
    pub fn new<G: RankSource + ?Sized>(game: &G, initial: &ActionProfile) -> Result<Self> {
        let index = game.grid().index_of(initial)?;
        let n = initial.len();
        Ok(DynamicsState {
            profile: initial.actions().to_vec(),
            index,
            time: 0,
            last_active: vec![None; n],
            last_change: 0,
            active: vec![false; n],
            redrew: vec![false; n],
            next: vec![0; n],
            candidates: Vec::new(),
        })
    }

    pub fn profile(&self) -> ActionProfile {
        ActionProfile::new(self.profile.clone())
    }

    pub fn actions(&self) -> &[usize] {
        &self.profile
    }

    pub fn index(&self) -> usize {
        self.index
    }

    pub fn time(&self) -> u64 {
        self.time
    }

    pub fn last_active(&self) -> &[Option<u64>] {
        &self.last_active
    }

    pub fn last_change(&self) -> u64 {
        self.last_change
    }

    /// Agents active in the most recent step.
    pub fn active(&self) -> &[bool] {
        &self.active
    }

    /// Agents that re-drew among their top responses in the most recent step.
    pub fn redrew(&self) -> &[bool] {
        &self.redrew
    }

    /// True when every agent has been active since the last profile change,
    /// so that no agent will ever re-draw again.
    pub fn is_settled(&self) -> bool {
        self.last_active
            .iter()
            .all(|t| matches!(t, Some(t) if *t >= self.last_change))
    }
}

/// Advances the dynamic by one step.
pub fn step<G: RankSource + ?Sized>(state: &mut DynamicsState, game: &G, k: usize, lambda: f64, rng: &mut Stream) {
    let t = state.time + 1;
    let n = state.profile.len();
    for i in 0..n {
        state.active[i] = rng.bernoulli(lambda);
    }
    let grid = game.grid();
    for i in 0..n {
        let a_i = state.profile[i];
        state.redrew[i] = false;
        state.next[i] = a_i;
        if !state.active[i] {
            continue;
        }
        let redraw = match state.last_active[i] {
            None => true,
            Some(tp) => state.last_change > tp,
        };
        if !redraw {
            continue;
        }
        let stride = grid.stride(i);
        let base = state.index - a_i * stride;
        state.candidates.clear();
        for x in 0..grid.action_count(i) {
            if game.rank_at(i, base + x * stride) <= k {
                state.candidates.push(x);
            }
        }
        let pick = rng.uniform_below(state.candidates.len() as u64) as usize;
        state.next[i] = state.candidates[pick];
        state.redrew[i] = true;
    }
    if state.next != state.profile {
        state.last_change = t;
        std::mem::swap(&mut state.profile, &mut state.next);
        state.index = grid.index_unchecked(&state.profile);
    }
    for i in 0..n {
        if state.active[i] {
            state.last_active[i] = Some(t);
        }
    }
    state.time = t;
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    /// Settled at a satisficing equilibrium.
    Converged,
    /// Settled at a profile that is not a satisficing equilibrium: simultaneous
    /// moves left some agent outside its top `k`, and nobody will re-draw.
    Frozen,
    /// The step limit was reached before the dynamic settled.
    MaxSteps,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HistoryEntry {
    pub step: u64,
    pub active: Vec<usize>,
    pub profile: ActionProfile,
}

#[derive(Debug, Clone)]
pub struct DynamicsTrace {
    pub outcome: Outcome,
    pub converged: bool,
    pub absorb_time: Option<u64>,
    pub steps: u64,
    pub final_profile: ActionProfile,
    pub history: Option<VecDeque<HistoryEntry>>,
    pub state: DynamicsState,
}

/// Runs the dynamic until it settles or `max_steps` steps have been taken.
///
/// A converged trace's final profile is re-checked against the game.
pub fn run_dynamic<G: RankSource + ?Sized>(game: &G, config: &DynamicsConfig) -> Result<DynamicsTrace> {
    config.validate(game)?;
    let mut state = DynamicsState::new(game, &config.initial)?;
    let mut rng = Stream::new(config.seed, tag::RUN, &[]);
    let thresholds = vec![config.k; game.grid().agents()];
    let mut history = (config.history > 0).then(|| VecDeque::with_capacity(config.history));
    let mut outcome = Outcome::MaxSteps;
    while state.time < config.max_steps {
        step(&mut state, game, config.k, config.lambda, &mut rng);
        if let Some(h) = history.as_mut() {
            if h.len() == config.history {
                h.pop_front();
            }
            h.push_back(HistoryEntry {
                step: state.time,
                active: (0..state.active.len()).filter(|&i| state.active[i]).collect(),
                profile: state.profile(),
            });
        }
        if state.is_settled() {
            outcome = if is_equilibrium_at(game, &thresholds, state.index) {
                Outcome::Converged
            } else {
                Outcome::Frozen
            };
            break;
        }
    }
    let converged = outcome == Outcome::Converged;
    Ok(DynamicsTrace {
        outcome,
        converged,
        absorb_time: converged.then_some(state.time),
        steps: state.time,
        final_profile: state.profile(),
        history,
        state,
    })
}

/// One run of a convergence experiment.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunRecord {
    pub game_seed: u64,
    pub run_seed: u64,
    pub k: usize,
    pub lambda: f64,
    pub converged: bool,
    pub outcome: Outcome,
    pub absorb_time: Option<u64>,
    pub steps: u64,
    pub final_profile: String,
    #[serde(skip)]
    pub final_actions: Vec<usize>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Quantiles {
    pub min: u64,
    pub p50: u64,
    pub p90: u64,
    pub p99: u64,
    pub max: u64,
}

impl Quantiles {
    /// Nearest-rank quantiles; `None` for an empty sample.
    pub fn of(values: &[u64]) -> Option<Quantiles> {
        let mut v = values.to_vec();
        v.sort_unstable();
        let at = |q: f64| v[((q * v.len() as f64).ceil() as usize).clamp(1, v.len()) - 1];
        (!v.is_empty()).then(|| Quantiles {
            min: v[0],
            p50: at(0.5),
            p90: at(0.9),
            p99: at(0.99),
            max: v[v.len() - 1],
        })
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ConvergenceSummary {
    pub m: Vec<usize>,
    pub k: usize,
    pub lambda: f64,
    pub max_steps: u64,
    pub seed: u64,
    pub runs: usize,
    pub converged: usize,
    pub frozen: usize,
    pub unfinished: usize,
    pub fraction_converged: f64,
    pub absorb_time: Option<Quantiles>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentConfig {
    pub m: Vec<usize>,
    pub k: usize,
    pub lambda: f64,
    pub games: u64,
    pub runs_per_game: u64,
    pub max_steps: u64,
    pub seed: u64,
}

pub fn dynamics_game_seed(master: u64, game: u64) -> u64 {
    derive_seed(master, tag::DYN_GAME, &[game])
}

pub fn dynamics_run_seed(master: u64, game: u64, run: u64) -> u64 {
    derive_seed(master, tag::RUN, &[game, run])
}

/// Runs `runs_per_game` dynamics on each of `games` random games, each
/// started at a uniformly drawn profile.
pub fn convergence_experiment(cfg: &ExperimentConfig, workers: usize) -> Result<(ConvergenceSummary, Vec<RunRecord>)> {
    LazyGame::new(&cfg.m, 0)?;
    let probe = DynamicsConfig {
        lambda: cfg.lambda,
        ..DynamicsConfig::new(cfg.k, ActionProfile::new(vec![0; cfg.m.len()]), 0)
    };
    probe.validate(&LazyGame::new(&cfg.m, 0)?)?;
    let total = cfg.games * cfg.runs_per_game;
    let records = exec::map_indexed(
        workers,
        total,
        || (),
        |_, j| {
            let g = j / cfg.runs_per_game;
            let r = j % cfg.runs_per_game;
            let game_seed = dynamics_game_seed(cfg.seed, g);
            let run_seed = dynamics_run_seed(cfg.seed, g, r);
            let game = LazyGame::new(&cfg.m, game_seed).expect("grid validated above");
            let mut start = Stream::from_id(run_seed ^ 0x5354_4152_5450_524F);
            let initial = cfg.m.iter().map(|&c| start.uniform_below(c as u64) as usize).collect();
            let config = DynamicsConfig {
                k: cfg.k,
                lambda: cfg.lambda,
                max_steps: cfg.max_steps,
                seed: run_seed,
                initial: ActionProfile::new(initial),
                history: 0,
            };
            let trace = run_dynamic(&game, &config).expect("config validated above");
            RunRecord {
                game_seed,
                run_seed,
                k: cfg.k,
                lambda: cfg.lambda,
                converged: trace.converged,
                outcome: trace.outcome,
                absorb_time: trace.absorb_time,
                steps: trace.steps,
                final_profile: trace.final_profile.to_string(),
                final_actions: trace.final_profile.into_inner(),
            }
        },
    );
    let times: Vec<u64> = records.iter().filter_map(|r| r.absorb_time).collect();
    let count = |o: Outcome| records.iter().filter(|r| r.outcome == o).count();
    let summary = ConvergenceSummary {
        m: cfg.m.clone(),
        k: cfg.k,
        lambda: cfg.lambda,
        max_steps: cfg.max_steps,
        seed: cfg.seed,
        runs: records.len(),
        converged: times.len(),
        frozen: count(Outcome::Frozen),
        unfinished: count(Outcome::MaxSteps),
        fraction_converged: if records.is_empty() {
            0.0
        } else {
            times.len() as f64 / records.len() as f64
        },
        absorb_time: Quantiles::of(&times),
    };
    Ok((summary, records))
}

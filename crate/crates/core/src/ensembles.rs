//! Uniform random games, exhaustive enumeration of strict labeled games, and
//! per-game counting of profiles with a prescribed satisficing pattern.
//!
//! A uniform strict game is obtained by drawing, independently for every agent
//! and every line of that agent, a uniform ordering of the line. Orderings of
//! different lines never interact, so full preference relations are never
//! materialized.

use std::cell::Cell;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::exec;
use crate::game::{Grid, OrdinalGame, RankSource};
use crate::rng::{derive_seed, tag, Stream};

pub const DEFAULT_ENUMERATION_CAP: u64 = 10_000_000;

/// A random strict game whose lines are sampled on first touch and memoized.
///
/// The ordering of the `agent`-line with fixed coordinates `b` is a
/// Fisher–Yates permutation drawn from the stream keyed by
/// `(master_seed, LINE, agent, b)`, so answers do not depend on the order in
/// which queries arrive. Not `Sync`: one instance per worker.
#[derive(Debug)]
pub struct LazyGame {
    grid: Grid,
    seed: u64,
    memo: Vec<Vec<Cell<u16>>>,
}

impl LazyGame {
    pub fn new(m: &[usize], seed: u64) -> Result<Self> {
        if let Some(i) = m.iter().position(|&c| c < 2) {
            return Err(invalid(format!(
                "random games need at least 2 actions per agent (agent {i})"
            )));
        }
        if m.iter().any(|&c| c > u16::MAX as usize) {
            return Err(invalid("too many actions for a sampled game"));
        }
        let grid = Grid::new(m)?;
        let memo = (0..grid.agents())
            .map(|_| (0..grid.len()).map(|_| Cell::new(0)).collect())
            .collect();
        Ok(LazyGame { grid, seed, memo })
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    /// Forgets every sampled line and switches to a new master seed.
    pub fn reseed(&mut self, seed: u64) {
        self.seed = seed;
        for table in &mut self.memo {
            for c in table.iter_mut() {
                *c.get_mut() = 0;
            }
        }
    }

    fn sample_line(&self, agent: usize, index: usize) {
        let base = self.grid.line_base(index, agent);
        let stride = self.grid.stride(agent);
        let m = self.grid.action_count(agent);
        let cells = &self.memo[agent];
        let mut stream = Stream::new(self.seed, tag::LINE, &[agent as u64, base as u64]);
        // Inside-out Fisher–Yates: a uniform assignment of ranks 1..=m to the
        // actions of the line.
        for x in 0..m {
            let j = stream.uniform_below(x as u64 + 1) as usize;
            if j != x {
                cells[base + x * stride].set(cells[base + j * stride].get());
            }
            cells[base + j * stride].set((x + 1) as u16);
        }
    }

    /// Samples every line and returns the resulting stored game.
    pub fn materialize(&self) -> OrdinalGame {
        let ranks = (0..self.grid.agents())
            .map(|i| (0..self.grid.len()).map(|p| self.rank_at(i, p)).collect())
            .collect();
        OrdinalGame::with_strictness(self.grid.actions(), ranks, true).expect("sampled lines are permutations")
    }
}

impl RankSource for LazyGame {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    fn rank_at(&self, agent: usize, index: usize) -> usize {
        let cell = &self.memo[agent][index];
        if cell.get() == 0 {
            self.sample_line(agent, index);
        }
        cell.get() as usize
    }
}

/// Convenience constructor mirroring the ensemble law `U[G_{n,m}]`.
pub fn sample_game(m: &[usize], seed: u64) -> Result<LazyGame> {
    LazyGame::new(m, seed)
}

/// "At least `z` profiles where some set of at most `d` agents from `agents`
/// are `k`-satisficed and everyone else is 1-satisficed."
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PropertySpec {
    pub d: usize,
    /// The agent subset, 0-based, strictly increasing.
    pub agents: Vec<usize>,
    pub k: usize,
    pub z: u64,
}

impl PropertySpec {
    pub fn new(d: usize, mut agents: Vec<usize>, k: usize, z: u64) -> Result<Self> {
        agents.sort_unstable();
        if agents.windows(2).any(|w| w[0] == w[1]) {
            return Err(invalid("agent subset contains duplicates"));
        }
        if d > agents.len() {
            return Err(invalid(format!("d = {d} exceeds |S| = {}", agents.len())));
        }
        if k == 0 {
            return Err(invalid("k must be at least 1"));
        }
        Ok(PropertySpec { d, agents, k, z })
    }

    /// Pure Nash existence-type property: `d = 0`, `S` empty, `k = 1`.
    pub fn pure_nash(z: u64) -> Self {
        PropertySpec {
            d: 0,
            agents: Vec::new(),
            k: 1,
            z,
        }
    }

    pub fn all_agents(n: usize, d: usize, k: usize, z: u64) -> Result<Self> {
        Self::new(d, (0..n).collect(), k, z)
    }

    pub fn validate(&self, n: usize) -> Result<()> {
        if let Some(&a) = self.agents.last() {
            if a >= n {
                return Err(Error::AgentOutOfRange { agent: a, n });
            }
        }
        if self.d > self.agents.len() || self.k == 0 {
            return Err(invalid("malformed property spec"));
        }
        Ok(())
    }
}

/// Agents that must be best-responding, followed by the relaxable ones with
/// their effective thresholds.
struct CountPlan {
    mandatory: Vec<usize>,
    relaxed: Vec<(usize, usize)>,
    d: usize,
}

impl CountPlan {
    fn new(grid: &Grid, spec: &PropertySpec) -> Self {
        let n = grid.agents();
        let mut in_s = vec![false; n];
        for &a in &spec.agents {
            in_s[a] = true;
        }
        CountPlan {
            mandatory: (0..n).filter(|&i| !in_s[i]).collect(),
            relaxed: spec
                .agents
                .iter()
                .map(|&i| (i, spec.k.min(grid.action_count(i))))
                .collect(),
            d: spec.d,
        }
    }

    #[inline]
    fn qualifies<G: RankSource + ?Sized>(&self, game: &G, p: usize) -> bool {
        if self.mandatory.iter().any(|&i| game.rank_at(i, p) != 1) {
            return false;
        }
        let mut loosened = 0;
        for &(i, k) in &self.relaxed {
            let r = game.rank_at(i, p);
            if r > 1 {
                if r > k {
                    return false;
                }
                loosened += 1;
                if loosened > self.d {
                    return false;
                }
            }
        }
        true
    }

    fn count<G: RankSource + ?Sized>(&self, game: &G) -> u64 {
        (0..game.grid().len()).filter(|&p| self.qualifies(game, p)).count() as u64
    }
}

/// Number of profiles at which some `T ⊆ S` with `|T| <= d` has every member
/// `k`-satisficed and every agent outside `T` 1-satisficed.
pub fn count_profiles<G: RankSource + ?Sized>(game: &G, spec: &PropertySpec) -> Result<u64> {
    spec.validate(game.grid().agents())?;
    Ok(CountPlan::new(game.grid(), spec).count(game))
}

/// Streams every strict labeled game on the grid `m` exactly once.
pub struct GameEnumerator {
    m: Vec<usize>,
    grid: Grid,
    slots: Vec<(usize, usize)>,
    radix: Vec<u64>,
    digits: Vec<u64>,
    done: bool,
    total: u64,
}

fn factorial(k: usize) -> u64 {
    (1..=k as u64).product()
}

/// `∏_i (m_i!)^(|A| / m_i)`, in floating point.
pub fn enumeration_size(m: &[usize]) -> f64 {
    let cells: f64 = m.iter().map(|&c| c as f64).product();
    m.iter()
        .map(|&c| (cells / c as f64) * (1..=c).map(|j| (j as f64).ln()).sum::<f64>())
        .sum::<f64>()
        .exp()
}

pub fn enumerate_games(m: &[usize], cap: u64) -> Result<GameEnumerator> {
    let grid = Grid::new(m)?;
    let estimate = enumeration_size(m);
    if m.iter().any(|&c| c > 20) || estimate > cap as f64 * (1.0 + 1e-9) {
        return Err(Error::TooManyGames { estimate, cap });
    }
    let mut slots = Vec::new();
    let mut radix = Vec::new();
    for (agent, &count) in m.iter().enumerate() {
        for base in grid.line_bases(agent) {
            slots.push((agent, base));
            radix.push(factorial(count));
        }
    }
    let total = radix.iter().product();
    Ok(GameEnumerator {
        m: m.to_vec(),
        grid,
        digits: vec![0; slots.len()],
        slots,
        radix,
        done: false,
        total,
    })
}

impl GameEnumerator {
    pub fn total(&self) -> u64 {
        self.total
    }

    fn build(&self) -> OrdinalGame {
        let mut ranks = vec![vec![0; self.grid.len()]; self.grid.agents()];
        let mut pool = Vec::new();
        for (slot, &(agent, base)) in self.slots.iter().enumerate() {
            let m = self.m[agent];
            // Lehmer decoding of the slot digit into a rank permutation.
            pool.clear();
            pool.extend(1..=m);
            let mut code = self.digits[slot];
            for x in 0..m {
                let f = factorial(m - 1 - x);
                let pick = (code / f) as usize;
                code %= f;
                ranks[agent][base + x * self.grid.stride(agent)] = pool.remove(pick);
            }
        }
        OrdinalGame::with_strictness(&self.m, ranks, true).expect("enumerated lines are permutations")
    }
}

impl Iterator for GameEnumerator {
    type Item = OrdinalGame;

    fn next(&mut self) -> Option<OrdinalGame> {
        if self.done {
            return None;
        }
        let game = self.build();
        let mut j = 0;
        loop {
            if j == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[j] += 1;
            if self.digits[j] < self.radix[j] {
                break;
            }
            self.digits[j] = 0;
            j += 1;
        }
        Some(game)
    }
}

/// Two-sided 95% normal quantile.
const Z95: f64 = 1.959_963_984_540_054;

/// Monte Carlo estimate of a fraction with its binomial uncertainty.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GammaEstimate {
    pub samples: u64,
    pub successes: u64,
    pub estimate: f64,
    /// `sqrt(p(1-p)/samples)` at the estimate.
    pub std_error: f64,
    /// Wilson score interval at 95%.
    pub ci_low: f64,
    pub ci_high: f64,
}

impl GammaEstimate {
    pub fn from_counts(successes: u64, samples: u64) -> Self {
        let n = samples as f64;
        let p = successes as f64 / n;
        let z2 = Z95 * Z95;
        let denom = 1.0 + z2 / n;
        let center = (p + z2 / (2.0 * n)) / denom;
        let half = Z95 / denom * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt();
        GammaEstimate {
            samples,
            successes,
            estimate: p,
            std_error: (p * (1.0 - p) / n).sqrt(),
            ci_low: if successes == 0 { 0.0 } else { (center - half).max(0.0) },
            ci_high: if successes == samples {
                1.0
            } else {
                (center + half).min(1.0)
            },
        }
    }
}

/// Exact integer tallies for one property over a batch of sampled games.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
pub struct EnsembleTally {
    pub samples: u64,
    /// Games with `count >= z`.
    pub successes: u64,
    pub count_sum: u64,
    pub count_sq_sum: u128,
}

impl EnsembleTally {
    fn merge(self, o: EnsembleTally) -> EnsembleTally {
        EnsembleTally {
            samples: self.samples + o.samples,
            successes: self.successes + o.successes,
            count_sum: self.count_sum + o.count_sum,
            count_sq_sum: self.count_sq_sum + o.count_sq_sum,
        }
    }

    pub fn gamma(&self) -> GammaEstimate {
        GammaEstimate::from_counts(self.successes, self.samples)
    }

    pub fn mean_count(&self) -> f64 {
        self.count_sum as f64 / self.samples as f64
    }

    /// Standard error of [`Self::mean_count`].
    pub fn mean_count_std_error(&self) -> f64 {
        let n = self.samples as f64;
        let mean = self.mean_count();
        let var = (self.count_sq_sum as f64 / n - mean * mean).max(0.0) * n / (n - 1.0).max(1.0);
        (var / n).sqrt()
    }
}

/// Seed of the `index`-th game of an ensemble run.
pub fn game_seed(master_seed: u64, index: u64) -> u64 {
    derive_seed(master_seed, tag::GAME, &[index])
}

/// Samples `samples` games from `U[G_{n,m}]` and evaluates every spec on each.
///
/// Game `j` is keyed by `(master_seed, j)` alone, so the tallies are the same
/// for any worker count and any grouping of specs.
pub fn sample_ensemble(
    m: &[usize],
    specs: &[PropertySpec],
    samples: u64,
    master_seed: u64,
    workers: usize,
) -> Result<Vec<EnsembleTally>> {
    if samples == 0 {
        return Err(invalid("at least one sample is required"));
    }
    let probe = LazyGame::new(m, master_seed)?;
    let plans: Vec<CountPlan> = specs
        .iter()
        .map(|s| {
            s.validate(m.len())?;
            Ok(CountPlan::new(probe.grid(), s))
        })
        .collect::<Result<_>>()?;
    drop(probe);
    let zs: Vec<u64> = specs.iter().map(|s| s.z).collect();
    let identity = vec![EnsembleTally::default(); specs.len()];
    let tallies = exec::reduce_indexed(
        workers,
        samples,
        || LazyGame::new(m, 0).expect("grid validated above"),
        |game, j| {
            game.reseed(game_seed(master_seed, j));
            plans
                .iter()
                .zip(&zs)
                .map(|(plan, &z)| {
                    let c = plan.count(&*game);
                    EnsembleTally {
                        samples: 1,
                        successes: (c >= z) as u64,
                        count_sum: c,
                        count_sq_sum: (c as u128) * (c as u128),
                    }
                })
                .collect::<Vec<_>>()
        },
        identity,
        |a, b| a.into_iter().zip(b).map(|(x, y)| x.merge(y)).collect(),
    );
    Ok(tallies)
}

/// Fraction of sampled games satisfying `spec`, with a binomial 95% interval.
pub fn estimate_gamma(
    m: &[usize],
    spec: &PropertySpec,
    samples: u64,
    master_seed: u64,
    workers: usize,
) -> Result<GammaEstimate> {
    let t = sample_ensemble(m, std::slice::from_ref(spec), samples, master_seed, workers)?;
    Ok(t[0].gamma())
}

/// Exact fraction over all strict labeled games on the grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ExactGamma {
    pub satisfying: u64,
    pub total: u64,
    pub count_sum: u64,
}

impl ExactGamma {
    pub fn fraction(&self) -> f64 {
        self.satisfying as f64 / self.total as f64
    }

    pub fn mean_count(&self) -> f64 {
        self.count_sum as f64 / self.total as f64
    }
}

pub fn exact_gamma(m: &[usize], spec: &PropertySpec, cap: u64) -> Result<ExactGamma> {
    spec.validate(m.len())?;
    let games = enumerate_games(m, cap)?;
    let total = games.total();
    let mut satisfying = 0;
    let mut count_sum = 0;
    for g in games {
        let c = count_profiles(&g, spec)?;
        count_sum += c;
        if c >= spec.z {
            satisfying += 1;
        }
    }
    Ok(ExactGamma {
        satisfying,
        total,
        count_sum,
    })
}

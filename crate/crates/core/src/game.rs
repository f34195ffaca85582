//! Finite ordinal games and the rank / satisficing primitives.
//!
//! Profiles are linearized in mixed-radix row-major order with agent 0 the
//! slowest-varying coordinate, so ascending profile index is lexicographic
//! order on action indices. Agent `i`'s preferences are stored as a rank table
//! over all profiles: `rank_i(a) = 1 + #{x : (x, a_-i) strictly better than a}`.
//! Only comparisons along a line (profiles differing in coordinate `i` alone)
//! carry meaning, so the table is validated line by line.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A point of the action grid, one 0-based action index per agent.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ActionProfile(Vec<usize>);

impl ActionProfile {
    pub fn new(actions: Vec<usize>) -> Self {
        ActionProfile(actions)
    }

    pub fn actions(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn into_inner(self) -> Vec<usize> {
        self.0
    }

    /// The unilateral deviation `(x, a_-i)`.
    pub fn with_action(&self, agent: usize, action: usize) -> ActionProfile {
        let mut v = self.0.clone();
        v[agent] = action;
        ActionProfile(v)
    }
}

impl From<Vec<usize>> for ActionProfile {
    fn from(v: Vec<usize>) -> Self {
        ActionProfile(v)
    }
}

impl fmt::Display for ActionProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (j, a) in self.0.iter().enumerate() {
            if j > 0 {
                write!(f, ",")?;
            }
            write!(f, "{a}")?;
        }
        write!(f, ")")
    }
}

/// Per-agent satisficing thresholds `k_i >= 1`. Values above an agent's action
/// count are allowed and saturate.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Thresholds(Vec<usize>);

impl Thresholds {
    pub fn new(k: Vec<usize>) -> Result<Self> {
        if let Some(pos) = k.iter().position(|&x| x == 0) {
            return Err(invalid(format!("threshold k[{pos}] must be at least 1")));
        }
        Ok(Thresholds(k))
    }

    pub fn uniform(n: usize, k: usize) -> Result<Self> {
        Self::new(vec![k; n])
    }

    pub fn ones(n: usize) -> Self {
        Thresholds(vec![1; n])
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn get(&self, agent: usize) -> usize {
        self.0[agent]
    }

    fn check_for(&self, n: usize) -> Result<()> {
        if self.0.len() != n {
            return Err(invalid(format!(
                "{} thresholds given for a game with {n} agents",
                self.0.len()
            )));
        }
        Ok(())
    }
}

/// The mixed-radix profile grid shared by stored and lazily sampled games.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Grid {
    m: Vec<usize>,
    strides: Vec<usize>,
    len: usize,
}

impl Grid {
    pub fn new(m: &[usize]) -> Result<Self> {
        if m.is_empty() {
            return Err(invalid("a game needs at least one agent"));
        }
        if let Some(i) = m.iter().position(|&c| c == 0) {
            return Err(invalid(format!("agent {i} has no actions")));
        }
        let mut strides = vec![0; m.len()];
        let mut len: usize = 1;
        for i in (0..m.len()).rev() {
            strides[i] = len;
            len = len
                .checked_mul(m[i])
                .ok_or_else(|| invalid("profile grid is too large to index"))?;
        }
        Ok(Grid {
            m: m.to_vec(),
            strides,
            len,
        })
    }

    pub fn agents(&self) -> usize {
        self.m.len()
    }

    pub fn actions(&self) -> &[usize] {
        &self.m
    }

    pub fn action_count(&self, agent: usize) -> usize {
        self.m[agent]
    }

    /// Number of profiles.
    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn stride(&self, agent: usize) -> usize {
        self.strides[agent]
    }

    pub fn check_agent(&self, agent: usize) -> Result<()> {
        if agent >= self.agents() {
            return Err(Error::AgentOutOfRange {
                agent,
                n: self.agents(),
            });
        }
        Ok(())
    }

    pub fn index_of(&self, profile: &ActionProfile) -> Result<usize> {
        let a = profile.actions();
        if a.len() != self.m.len() || a.iter().zip(&self.m).any(|(&x, &c)| x >= c) {
            return Err(Error::InvalidProfile {
                profile: a.to_vec(),
                m: self.m.clone(),
            });
        }
        Ok(self.index_unchecked(a))
    }

    pub fn index_unchecked(&self, actions: &[usize]) -> usize {
        actions.iter().zip(&self.strides).map(|(a, s)| a * s).sum()
    }

    pub fn profile_at(&self, index: usize) -> ActionProfile {
        ActionProfile((0..self.agents()).map(|i| self.action_at(index, i)).collect())
    }

    #[inline]
    pub fn action_at(&self, index: usize, agent: usize) -> usize {
        (index / self.strides[agent]) % self.m[agent]
    }

    /// Index of the profile on the same `agent`-line with that agent's action zeroed.
    #[inline]
    pub fn line_base(&self, index: usize, agent: usize) -> usize {
        index - self.action_at(index, agent) * self.strides[agent]
    }

    /// Profile indices of the `agent`-line through `index`, by ascending action.
    #[inline]
    pub fn line(&self, index: usize, agent: usize) -> impl Iterator<Item = usize> {
        let base = self.line_base(index, agent);
        let stride = self.strides[agent];
        (0..self.m[agent]).map(move |x| base + x * stride)
    }

    /// Base indices of every `agent`-line, ascending.
    pub fn line_bases(&self, agent: usize) -> impl Iterator<Item = usize> {
        let stride = self.strides[agent];
        let block = stride * self.m[agent];
        let outer = self.len / block;
        (0..outer).flat_map(move |hi| (0..stride).map(move |lo| hi * block + lo))
    }

    pub fn lines_per_agent(&self, agent: usize) -> usize {
        self.len / self.m[agent]
    }
}

/// Anything that can answer rank queries on a grid: stored games and lazily
/// sampled ones.
pub trait RankSource {
    fn grid(&self) -> &Grid;

    /// Rank of the profile at `index` for `agent`; both assumed in range.
    fn rank_at(&self, agent: usize, index: usize) -> usize;
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum RankStore {
    Narrow(Vec<u8>),
    Wide(Vec<u16>),
}

impl RankStore {
    fn build(values: &[usize], m: usize) -> Result<Self> {
        if m <= u8::MAX as usize {
            Ok(RankStore::Narrow(values.iter().map(|&r| r as u8).collect()))
        } else if m <= u16::MAX as usize {
            Ok(RankStore::Wide(values.iter().map(|&r| r as u16).collect()))
        } else {
            Err(invalid(format!(
                "{m} actions exceeds the supported maximum of {}",
                u16::MAX
            )))
        }
    }

    #[inline]
    fn get(&self, index: usize) -> usize {
        match self {
            RankStore::Narrow(v) => v[index] as usize,
            RankStore::Wide(v) => v[index] as usize,
        }
    }

    fn to_vec(&self) -> Vec<usize> {
        match self {
            RankStore::Narrow(v) => v.iter().map(|&r| r as usize).collect(),
            RankStore::Wide(v) => v.iter().map(|&r| r as usize).collect(),
        }
    }
}

/// A finite ordinal game, immutable after construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrdinalGame {
    grid: Grid,
    ranks: Vec<RankStore>,
    strict: bool,
}

impl OrdinalGame {
    /// Builds a game from per-agent rank tables, inferring the strict flag
    /// (set iff every line of every agent is a permutation of `1..=m_i`).
    pub fn from_ranks(m: &[usize], ranks: Vec<Vec<usize>>) -> Result<Self> {
        let (grid, stores, strict) = Self::validate(m, &ranks)?;
        Ok(OrdinalGame {
            grid,
            ranks: stores,
            strict,
        })
    }

    /// Builds a game with a declared strict flag. Declaring `strict = true`
    /// for a table with ties on some line is an error.
    pub fn with_strictness(m: &[usize], ranks: Vec<Vec<usize>>, strict: bool) -> Result<Self> {
        let (grid, stores, all_permutations) = Self::validate(m, &ranks)?;
        if strict && !all_permutations {
            return Err(invalid("game declared strict but some line contains tied ranks"));
        }
        Ok(OrdinalGame {
            grid,
            ranks: stores,
            strict,
        })
    }

    fn validate(m: &[usize], ranks: &[Vec<usize>]) -> Result<(Grid, Vec<RankStore>, bool)> {
        let grid = Grid::new(m)?;
        if ranks.len() != grid.agents() {
            return Err(invalid(format!(
                "expected rank tables for {} agents, got {}",
                grid.agents(),
                ranks.len()
            )));
        }
        let mut strict = true;
        let mut buf = Vec::new();
        for (agent, table) in ranks.iter().enumerate() {
            if table.len() != grid.len() {
                return Err(invalid(format!(
                    "rank table of agent {agent} has {} entries, expected {}",
                    table.len(),
                    grid.len()
                )));
            }
            for base in grid.line_bases(agent) {
                buf.clear();
                buf.extend(grid.line(base, agent).map(|p| table[p]));
                buf.sort_unstable();
                for j in 0..buf.len() {
                    let fresh = j == 0 || buf[j] != buf[j - 1];
                    if fresh && buf[j] != j + 1 {
                        return Err(Error::LineInconsistent {
                            agent,
                            profile: grid.profile_at(base).into_inner(),
                            detail: format!("sorted ranks {buf:?} are not of the form 1 + #strictly-better"),
                        });
                    }
                    if !fresh {
                        strict = false;
                    }
                }
            }
        }
        let stores = ranks
            .iter()
            .enumerate()
            .map(|(i, t)| RankStore::build(t, m[i]))
            .collect::<Result<Vec<_>>>()?;
        Ok((grid, stores, strict))
    }

    /// Ordinalizes cardinal payoffs: `rank_i(a) = 1 + #{x : u_i(x, a_-i) > u_i(a)}`.
    pub fn from_cardinal(m: &[usize], payoffs: &[Vec<f64>]) -> Result<Self> {
        let grid = Grid::new(m)?;
        if payoffs.len() != grid.agents() {
            return Err(invalid(format!(
                "expected payoff tables for {} agents, got {}",
                grid.agents(),
                payoffs.len()
            )));
        }
        let mut ranks = Vec::with_capacity(grid.agents());
        for (agent, table) in payoffs.iter().enumerate() {
            if table.len() != grid.len() {
                return Err(invalid(format!(
                    "payoff table of agent {agent} has {} entries, expected {}",
                    table.len(),
                    grid.len()
                )));
            }
            if let Some(p) = table.iter().position(|v| v.is_nan()) {
                return Err(invalid(format!(
                    "payoff of agent {agent} at profile {} is NaN",
                    grid.profile_at(p)
                )));
            }
            let mut r = vec![0; grid.len()];
            for base in grid.line_bases(agent) {
                for p in grid.line(base, agent) {
                    r[p] = 1 + grid.line(base, agent).filter(|&q| table[q] > table[p]).count();
                }
            }
            ranks.push(r);
        }
        Self::from_ranks(m, ranks)
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn agents(&self) -> usize {
        self.grid.agents()
    }

    pub fn actions(&self) -> &[usize] {
        self.grid.actions()
    }

    pub fn is_strict(&self) -> bool {
        self.strict
    }

    pub fn rank_table(&self, agent: usize) -> Vec<usize> {
        self.ranks[agent].to_vec()
    }

    pub fn rank_of(&self, agent: usize, profile: &ActionProfile) -> Result<usize> {
        rank_of(self, agent, profile)
    }

    pub fn is_satisficed(&self, agent: usize, profile: &ActionProfile, k: usize) -> Result<bool> {
        is_satisficed(self, agent, profile, k)
    }
}

impl RankSource for OrdinalGame {
    fn grid(&self) -> &Grid {
        &self.grid
    }

    #[inline]
    fn rank_at(&self, agent: usize, index: usize) -> usize {
        self.ranks[agent].get(index)
    }
}

pub fn rank_of<G: RankSource + ?Sized>(game: &G, agent: usize, profile: &ActionProfile) -> Result<usize> {
    game.grid().check_agent(agent)?;
    let idx = game.grid().index_of(profile)?;
    Ok(game.rank_at(agent, idx))
}

pub fn is_satisficed<G: RankSource + ?Sized>(
    game: &G,
    agent: usize,
    profile: &ActionProfile,
    k: usize,
) -> Result<bool> {
    if k == 0 {
        return Err(invalid("satisficing threshold must be at least 1"));
    }
    Ok(rank_of(game, agent, profile)? <= k)
}

/// True iff every agent `i` has rank at most `k[i]` at the profile `index`.
#[inline]
pub fn is_equilibrium_at<G: RankSource + ?Sized>(game: &G, k: &[usize], index: usize) -> bool {
    k.iter().enumerate().all(|(i, &ki)| game.rank_at(i, index) <= ki)
}

/// All `k`-satisficing equilibria in lexicographic order.
pub fn satisficing_equilibria<G: RankSource + ?Sized>(game: &G, k: &Thresholds) -> Result<Vec<ActionProfile>> {
    let grid = game.grid();
    k.check_for(grid.agents())?;
    Ok((0..grid.len())
        .filter(|&p| is_equilibrium_at(game, k.as_slice(), p))
        .map(|p| grid.profile_at(p))
        .collect())
}

pub fn pure_nash<G: RankSource + ?Sized>(game: &G) -> Vec<ActionProfile> {
    let n = game.grid().agents();
    satisficing_equilibria(game, &Thresholds::ones(n)).expect("all-ones thresholds match the game")
}

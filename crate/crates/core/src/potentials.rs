//! `k`-approximate potentials.
//!
//! A score on profiles induces a common weak order `⊵`; it is a
//! `k`-approximate potential when `rank_i(a) − rank_i(a | ⊵) < k_i` at every
//! agent and profile, where `rank_i(a | ⊵)` is one plus the number of
//! deviations of `i` with strictly higher score.

use serde::Serialize;

use crate::error::{invalid, Result};
use crate::game::{is_equilibrium_at, ActionProfile, Grid, RankSource, Thresholds};

/// A violated inequality at agent `agent` and profile `profile`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub agent: usize,
    pub profile: ActionProfile,
    pub rank: usize,
    pub potential_rank: usize,
}

/// One plus the number of `agent`-deviations from `index` with strictly
/// higher score.
pub fn potential_rank(grid: &Grid, scores: &[u64], agent: usize, index: usize) -> usize {
    let s = scores[index];
    1 + grid.line(index, agent).filter(|&q| scores[q] > s).count()
}

fn check_inputs<G: RankSource + ?Sized>(game: &G, k: &Thresholds, scores: &[u64]) -> Result<()> {
    let grid = game.grid();
    if k.as_slice().len() != grid.agents() {
        return Err(invalid(format!(
            "expected {} thresholds, got {}",
            grid.agents(),
            k.as_slice().len()
        )));
    }
    if scores.len() != grid.len() {
        return Err(invalid(format!("expected {} scores, got {}", grid.len(), scores.len())));
    }
    Ok(())
}

/// Every `(agent, profile)` at which `scores` fails the potential inequality;
/// empty when `scores` is a `k`-approximate potential. Ties in the game are
/// allowed.
pub fn verify_approximate_potential<G: RankSource + ?Sized>(
    game: &G,
    k: &Thresholds,
    scores: &[u64],
) -> Result<Vec<Violation>> {
    check_inputs(game, k, scores)?;
    let grid = game.grid();
    let mut out = Vec::new();
    for index in 0..grid.len() {
        for agent in 0..grid.agents() {
            let rank = game.rank_at(agent, index);
            let potential_rank = potential_rank(grid, scores, agent, index);
            if rank >= potential_rank + k.get(agent) {
                out.push(Violation {
                    agent,
                    profile: grid.profile_at(index),
                    rank,
                    potential_rank,
                });
            }
        }
    }
    Ok(out)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "scores", rename_all = "snake_case")]
pub enum PotentialSearch {
    /// A verified witness; the top level carries the largest score.
    Found(Vec<u64>),
    /// No score function satisfies the inequalities.
    NoWitness,
    /// The placement budget ran out first; nothing is claimed.
    BudgetExhausted,
}

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

/// Searches for a `k`-approximate potential.
///
/// The inequality at `(i, a)` asks for at least `rank_i(a) − k_i` deviations
/// scored strictly above `a`. Levels are filled top-down: a profile joins the
/// current level once every such demand is met by profiles on strictly higher
/// levels. Joining early never hurts anyone else, so if some weak order works
/// every profile is placed no later than in that order, and a level that
/// admits nobody proves that no witness exists. Each placement costs one unit
/// of `node_budget`.
pub fn find_potential<G: RankSource + ?Sized>(game: &G, k: &Thresholds, node_budget: u64) -> Result<PotentialSearch> {
    let grid = game.grid();
    let n = grid.agents();
    check_inputs(game, k, &vec![0; grid.len()])?;
    let len = grid.len();
    // Remaining demand per (profile, agent).
    let mut need: Vec<usize> = Vec::with_capacity(len * n);
    for index in 0..len {
        for agent in 0..n {
            need.push(game.rank_at(agent, index).saturating_sub(k.get(agent)));
        }
    }
    let mut level: Vec<Option<usize>> = vec![None; len];
    let mut placed = 0usize;
    let mut spent = 0u64;
    let mut frontier: Vec<usize> = (0..len)
        .filter(|&p| need[p * n..(p + 1) * n].iter().all(|&d| d == 0))
        .collect();
    let mut depth = 0;
    while placed < len {
        if frontier.is_empty() {
            return Ok(PotentialSearch::NoWitness);
        }
        for &p in &frontier {
            if spent == node_budget {
                return Ok(PotentialSearch::BudgetExhausted);
            }
            spent += 1;
            level[p] = Some(depth);
        }
        placed += frontier.len();
        let mut next = Vec::new();
        for &p in &frontier {
            for agent in 0..n {
                for q in grid.line(p, agent) {
                    if level[q].is_none() && need[q * n + agent] > 0 {
                        need[q * n + agent] -= 1;
                        if need[q * n + agent] == 0 && need[q * n..(q + 1) * n].iter().all(|&d| d == 0) {
                            next.push(q);
                        }
                    }
                }
            }
        }
        next.sort_unstable();
        next.dedup();
        frontier = next;
        depth += 1;
    }
    let top = depth as u64 - 1;
    let scores: Vec<u64> = level.iter().map(|l| top - l.expect("all placed") as u64).collect();
    debug_assert!(verify_approximate_potential(game, k, &scores)?.is_empty());
    Ok(PotentialSearch::Found(scores))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BridgeReport {
    /// Profiles where no agent has a deviation with strictly higher score.
    pub potential_nash: Vec<ActionProfile>,
    /// The first of them that is not a satisficing equilibrium, if any.
    pub counterexample: Option<ActionProfile>,
}

impl BridgeReport {
    pub fn passed(&self) -> bool {
        !self.potential_nash.is_empty() && self.counterexample.is_none()
    }
}

/// Checks that every maximal profile of the score order is a
/// `k`-satisficing equilibrium of the game. Fails on scores that are not a
/// `k`-approximate potential.
pub fn potential_nash_bridge<G: RankSource + ?Sized>(game: &G, k: &Thresholds, scores: &[u64]) -> Result<BridgeReport> {
    let violations = verify_approximate_potential(game, k, scores)?;
    if let Some(v) = violations.first() {
        return Err(invalid(format!(
            "scores are not an approximate potential: agent {} at {}",
            v.agent, v.profile
        )));
    }
    let grid = game.grid();
    let nash: Vec<usize> = (0..grid.len())
        .filter(|&p| (0..grid.agents()).all(|i| potential_rank(grid, scores, i, p) == 1))
        .collect();
    let counterexample = nash
        .iter()
        .find(|&&p| !is_equilibrium_at(game, k.as_slice(), p))
        .map(|&p| grid.profile_at(p));
    Ok(BridgeReport {
        potential_nash: nash.into_iter().map(|p| grid.profile_at(p)).collect(),
        counterexample,
    })
}

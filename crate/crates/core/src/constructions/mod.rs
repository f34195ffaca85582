//! Concrete games: Latin-hypercube games without satisficing equilibria, the
//! traveler's dilemma, the 11-20 money request game, and exact mixed
//! equilibria of bimatrix games.

mod mixed;

pub use mixed::{mixed_equilibria, verify_mixed_equilibrium, MixedEquilibrium, MAX_ACTIONS};

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};
use crate::game::{Grid, OrdinalGame};

/// An `n`-dimensional array over `m` symbols in which every line carries each
/// symbol exactly once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymbolCube {
    grid: Grid,
    symbols: Vec<usize>,
    m: usize,
}

impl SymbolCube {
    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn symbol_at(&self, index: usize) -> usize {
        self.symbols[index]
    }

    pub fn symbols(&self) -> &[usize] {
        &self.symbols
    }

    pub fn is_latin(&self) -> bool {
        (0..self.grid.agents()).all(|i| {
            self.grid.line_bases(i).all(|base| {
                let mut seen = vec![false; self.m];
                self.grid
                    .line(base, i)
                    .all(|p| !std::mem::replace(&mut seen[self.symbols[p]], true))
            })
        })
    }
}

/// `symbol(a) = (Σ a_i) mod m`.
pub fn latin_hypercube(n: usize, m: usize) -> Result<SymbolCube> {
    if n == 0 || m < 2 {
        return Err(invalid(format!(
            "a Latin hypercube needs n >= 1 and m >= 2, got n={n}, m={m}"
        )));
    }
    let grid = Grid::new(&vec![m; n])?;
    let symbols = (0..grid.len())
        .map(|p| grid.profile_at(p).actions().iter().sum::<usize>() % m)
        .collect();
    Ok(SymbolCube { grid, symbols, m })
}

/// Symbol `s` belongs to agent `s mod n`.
fn symbol_owner(s: usize, n: usize) -> usize {
    s % n
}

/// Number of symbols owned by each agent.
pub fn symbol_counts(n: usize, m: usize) -> Vec<usize> {
    (0..n).map(|i| m / n + usize::from(i < m % n)).collect()
}

/// The common threshold `m − ⌈m/n⌉` below which the counterexample has no
/// satisficing equilibrium.
pub fn counterexample_threshold(n: usize, m: usize) -> usize {
    m - m.div_ceil(n)
}

/// A strict game on `m` actions per agent with no
/// `(m − ⌈m/n⌉, …)`-satisficing equilibrium.
///
/// On each of its lines, agent `i` ranks the profiles carrying its own symbols
/// last (by symbol id) and the others first (by action index).
pub fn no_sat_counterexample(n: usize, m: usize) -> Result<OrdinalGame> {
    if n < 2 || m < 2 {
        return Err(invalid(format!(
            "the construction needs n >= 2 and m >= 2, got n={n}, m={m}"
        )));
    }
    let cube = latin_hypercube(n, m)?;
    let grid = cube.grid();
    let sigma = symbol_counts(n, m);
    let mut ranks = vec![vec![0; grid.len()]; n];
    for i in 0..n {
        for base in grid.line_bases(i) {
            let (mut own, mut other): (Vec<usize>, Vec<usize>) = grid
                .line(base, i)
                .partition(|&p| symbol_owner(cube.symbol_at(p), n) == i);
            own.sort_by_key(|&p| cube.symbol_at(p));
            other.sort_unstable();
            for (r, p) in other.into_iter().chain(own).enumerate() {
                ranks[i][p] = r + 1;
            }
        }
        debug_assert!(grid.line_bases(i).all(|b| {
            grid.line(b, i)
                .filter(|&p| ranks[i][p] > m - sigma[i])
                .all(|p| symbol_owner(cube.symbol_at(p), n) == i)
        }));
    }
    OrdinalGame::with_strictness(&vec![m; n], ranks, true)
}

/// A two-agent game with integer payoffs and labeled actions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CardinalBimatrix {
    pub row_labels: Vec<i64>,
    pub col_labels: Vec<i64>,
    /// `payoff1[r][c]`, the row agent's payoff.
    pub payoff1: Vec<Vec<i64>>,
    /// `payoff2[r][c]`, the column agent's payoff.
    pub payoff2: Vec<Vec<i64>>,
}

impl CardinalBimatrix {
    pub fn new(
        row_labels: Vec<i64>,
        col_labels: Vec<i64>,
        payoff1: Vec<Vec<i64>>,
        payoff2: Vec<Vec<i64>>,
    ) -> Result<Self> {
        let shape_ok = |t: &Vec<Vec<i64>>| t.len() == row_labels.len() && t.iter().all(|r| r.len() == col_labels.len());
        if row_labels.is_empty() || col_labels.is_empty() {
            return Err(invalid("a bimatrix needs at least one action per agent"));
        }
        if !shape_ok(&payoff1) || !shape_ok(&payoff2) {
            return Err(invalid("payoff tables do not match the label counts"));
        }
        Ok(CardinalBimatrix {
            row_labels,
            col_labels,
            payoff1,
            payoff2,
        })
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.row_labels.len(), self.col_labels.len())
    }

    pub fn row_index(&self, label: i64) -> Option<usize> {
        self.row_labels.iter().position(|&l| l == label)
    }

    pub fn col_index(&self, label: i64) -> Option<usize> {
        self.col_labels.iter().position(|&l| l == label)
    }

    /// Payoffs at the cell with the given action labels.
    pub fn payoffs_at(&self, row: i64, col: i64) -> Option<(i64, i64)> {
        let r = self.row_index(row)?;
        let c = self.col_index(col)?;
        Some((self.payoff1[r][c], self.payoff2[r][c]))
    }

    pub fn to_ordinal(&self) -> OrdinalGame {
        let flat = |t: &Vec<Vec<i64>>| t.iter().flatten().map(|&v| v as f64).collect::<Vec<f64>>();
        let (r, c) = self.shape();
        OrdinalGame::from_cardinal(&[r, c], &[flat(&self.payoff1), flat(&self.payoff2)])
            .expect("integer payoffs ordinalize")
    }

    fn symmetric(labels: Vec<i64>, payoff: impl Fn(i64, i64) -> i64) -> Self {
        let p1 = labels
            .iter()
            .map(|&a| labels.iter().map(|&b| payoff(a, b)).collect())
            .collect();
        let p2 = labels
            .iter()
            .map(|&a| labels.iter().map(|&b| payoff(b, a)).collect())
            .collect();
        CardinalBimatrix {
            row_labels: labels.clone(),
            col_labels: labels,
            payoff1: p1,
            payoff2: p2,
        }
    }
}

/// Claims `2..=max_claim`; equal claims are paid, otherwise both get the lower
/// claim plus `bonus` for the lower claimer and minus `bonus` for the other.
pub fn travelers_dilemma(max_claim: i64, bonus: i64) -> Result<CardinalBimatrix> {
    if max_claim < 3 {
        return Err(invalid(format!("max_claim must be at least 3, got {max_claim}")));
    }
    Ok(CardinalBimatrix::symmetric((2..=max_claim).collect(), |own, other| {
        use std::cmp::Ordering::*;
        match own.cmp(&other) {
            Equal => own,
            Less => own + bonus,
            Greater => other - bonus,
        }
    }))
}

/// Requests `11..=20`; each agent receives its request plus 20 when it asked
/// for exactly one less than the other.
pub fn eleven_twenty() -> CardinalBimatrix {
    CardinalBimatrix::symmetric((11..=20).collect(), |own, other| {
        own + if own == other - 1 { 20 } else { 0 }
    })
}

/// Matching pennies with payoffs ±1; the row agent wants to match.
pub fn matching_pennies() -> CardinalBimatrix {
    CardinalBimatrix {
        row_labels: vec![0, 1],
        col_labels: vec![0, 1],
        payoff1: vec![vec![1, -1], vec![-1, 1]],
        payoff2: vec![vec![-1, 1], vec![1, -1]],
    }
}

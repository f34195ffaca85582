#![allow(dead_code)]

pub mod tables;

use satisficing::constructions::CardinalBimatrix;
use satisficing::rng::Stream;
use satisficing::{ActionProfile, Grid, OrdinalGame, RankSource};

/// Rank pair `(row agent within its column, column agent within its row)` at
/// the labeled cell.
pub fn rank_pair(b: &CardinalBimatrix, g: &OrdinalGame, row: i64, col: i64) -> (usize, usize) {
    let p = ActionProfile::new(vec![b.row_index(row).unwrap(), b.col_index(col).unwrap()]);
    (g.rank_of(0, &p).unwrap(), g.rank_of(1, &p).unwrap())
}

/// `(row, col, reference, computed)`.
pub type RankMismatch = (i64, i64, (usize, usize), (usize, usize));

pub struct TableCheck {
    pub payoff_mismatches: Vec<(i64, i64)>,
    pub rank_mismatches: Vec<RankMismatch>,
}

pub fn check_table(b: &CardinalBimatrix, cells: &[tables::Cell]) -> TableCheck {
    let g = b.to_ordinal();
    let mut out = TableCheck {
        payoff_mismatches: Vec::new(),
        rank_mismatches: Vec::new(),
    };
    for c in cells {
        if b.payoffs_at(c.row, c.col) != Some(c.payoff) {
            out.payoff_mismatches.push((c.row, c.col));
        }
        let computed = rank_pair(b, &g, c.row, c.col);
        if computed != c.rank {
            out.rank_mismatches.push((c.row, c.col, c.rank, computed));
        }
    }
    out
}

/// A random grid with at most `max_agents` agents and `max_actions` actions
/// each, and small integer payoffs so that ties occur.
pub fn random_cardinal(s: &mut Stream, max_agents: u64, max_actions: u64) -> (Vec<usize>, Vec<Vec<f64>>) {
    let n = 1 + s.uniform_below(max_agents) as usize;
    let m: Vec<usize> = (0..n).map(|_| 1 + s.uniform_below(max_actions) as usize).collect();
    let len: usize = m.iter().product();
    let payoffs = (0..n)
        .map(|_| (0..len).map(|_| s.uniform_below(5) as f64).collect())
        .collect();
    (m, payoffs)
}

/// Pure Nash equilibria straight from payoffs: no agent has a strictly
/// profitable unilateral deviation.
pub fn brute_nash(m: &[usize], payoffs: &[Vec<f64>]) -> Vec<ActionProfile> {
    let grid = Grid::new(m).unwrap();
    let mut out = Vec::new();
    for p in 0..grid.len() {
        let a = grid.profile_at(p);
        let stable = (0..m.len()).all(|i| {
            (0..m[i]).all(|x| {
                let q = grid.index_of(&a.with_action(i, x)).unwrap();
                payoffs[i][q] <= payoffs[i][p]
            })
        });
        if stable {
            out.push(a);
        }
    }
    out
}

/// The approximate-potential inequality evaluated from its definition.
pub fn is_approximate_potential<G: RankSource>(game: &G, k: &[usize], scores: &[u64]) -> bool {
    let grid = game.grid();
    (0..grid.len()).all(|p| {
        let a = grid.profile_at(p);
        (0..grid.agents()).all(|i| {
            let deviations: Vec<usize> = (0..grid.action_count(i))
                .map(|x| grid.index_of(&a.with_action(i, x)).unwrap())
                .collect();
            let better = deviations
                .iter()
                .filter(|&&q| game.rank_at(i, q) < game.rank_at(i, p))
                .count();
            let above = deviations.iter().filter(|&&q| scores[q] > scores[p]).count();
            (1 + better) - (1 + above).min(1 + better) < k[i]
        })
    })
}

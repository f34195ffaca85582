//! Residual games and the axioms characterizing satisficing equilibrium:
//! one-person `k`-satisficing behavior, consistency and converse consistency.

use serde::Serialize;

use crate::ensembles::{enumerate_games, DEFAULT_ENUMERATION_CAP};
use crate::error::{invalid, Result};
use crate::exec;
use crate::game::{is_equilibrium_at, ActionProfile, Grid, OrdinalGame, RankSource};

/// A solution concept: maps a game to a set of profile indices, ascending.
pub trait SolutionMap: Sync {
    fn name(&self) -> String;
    fn solve(&self, game: &OrdinalGame) -> Vec<usize>;
}

fn k_sat(game: &OrdinalGame, k: usize) -> Vec<usize> {
    let k = vec![k; game.agents()];
    (0..game.grid().len())
        .filter(|&p| is_equilibrium_at(game, &k, p))
        .collect()
}

/// `(k, …, k)`-satisficing equilibria.
#[derive(Debug, Clone, Copy)]
pub struct KSat(pub usize);

impl SolutionMap for KSat {
    fn name(&self) -> String {
        format!("{}-SAT", self.0)
    }
    fn solve(&self, game: &OrdinalGame) -> Vec<usize> {
        k_sat(game, self.0)
    }
}

/// Every profile of every game.
#[derive(Debug, Clone, Copy)]
pub struct AllProfiles;

impl SolutionMap for AllProfiles {
    fn name(&self) -> String {
        "all-profiles".into()
    }
    fn solve(&self, game: &OrdinalGame) -> Vec<usize> {
        (0..game.grid().len()).collect()
    }
}

/// Deliberately wrong variants of `k`-SAT. Each agrees with `k`-SAT on
/// one-agent games and differs on games with two or more agents.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mutant {
    /// Drops the lexicographically first equilibrium.
    DropFirst(usize),
    /// Adds the lexicographically first non-equilibrium.
    AddFirstNonEquilibrium(usize),
    /// Returns the pure Nash equilibria instead.
    PureNashInstead(usize),
}

impl SolutionMap for Mutant {
    fn name(&self) -> String {
        match self {
            Mutant::DropFirst(k) => format!("{k}-SAT minus first equilibrium"),
            Mutant::AddFirstNonEquilibrium(k) => format!("{k}-SAT plus first non-equilibrium"),
            Mutant::PureNashInstead(k) => format!("pure Nash in place of {k}-SAT"),
        }
    }

    fn solve(&self, game: &OrdinalGame) -> Vec<usize> {
        let (Mutant::DropFirst(k) | Mutant::AddFirstNonEquilibrium(k) | Mutant::PureNashInstead(k)) = *self;
        let mut base = k_sat(game, k);
        if game.agents() < 2 {
            return base;
        }
        match self {
            Mutant::DropFirst(_) => {
                if !base.is_empty() {
                    base.remove(0);
                }
                base
            }
            Mutant::AddFirstNonEquilibrium(_) => {
                if let Some(p) = (0..game.grid().len()).find(|p| base.binary_search(p).is_err()) {
                    base.push(p);
                    base.sort_unstable();
                }
                base
            }
            Mutant::PureNashInstead(_) => k_sat(game, 1),
        }
    }
}

fn check_subset(n: usize, subset: &[usize]) -> Result<()> {
    if subset.is_empty() || subset.len() >= n {
        return Err(invalid(format!("S must be a nonempty proper subset of the {n} agents")));
    }
    if subset.windows(2).any(|w| w[0] >= w[1]) || subset[subset.len() - 1] >= n {
        return Err(invalid("S must be strictly increasing agent indices"));
    }
    Ok(())
}

/// The residual game `g^{S,a}`: agents in `subset` play while everyone else
/// is pinned to `a`. Residual lines are lines of the original game, so ranks
/// carry over unchanged.
pub fn restrict(game: &OrdinalGame, subset: &[usize], a: &ActionProfile) -> Result<OrdinalGame> {
    let grid = game.grid();
    check_subset(grid.agents(), subset)?;
    grid.index_of(a)?;
    let m: Vec<usize> = subset.iter().map(|&i| grid.action_count(i)).collect();
    let sub = Grid::new(&m)?;
    let mut full = a.actions().to_vec();
    let embed: Vec<usize> = (0..sub.len())
        .map(|q| {
            for (j, &i) in subset.iter().enumerate() {
                full[i] = sub.action_at(q, j);
            }
            grid.index_unchecked(&full)
        })
        .collect();
    let ranks = subset
        .iter()
        .map(|&i| embed.iter().map(|&p| game.rank_at(i, p)).collect())
        .collect();
    OrdinalGame::with_strictness(&m, ranks, game.is_strict())
}

fn proper_subsets(n: usize) -> Vec<Vec<usize>> {
    (1u32..(1 << n) - 1)
        .map(|mask| (0..n).filter(|&i| mask >> i & 1 == 1).collect())
        .collect()
}

fn project(grid: &Grid, index: usize, subset: &[usize]) -> usize {
    let actions = grid.profile_at(index);
    let m: Vec<usize> = subset.iter().map(|&i| grid.action_count(i)).collect();
    let sub = Grid::new(&m).expect("subset of a valid grid");
    sub.index_unchecked(&subset.iter().map(|&i| actions.actions()[i]).collect::<Vec<_>>())
}

/// A concrete failure of an axiom.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    /// Index into the checked game list.
    pub game: usize,
    pub profile: ActionProfile,
    pub subset: Option<Vec<usize>>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub axiom: &'static str,
    pub solution: String,
    pub games_checked: usize,
    pub violations: usize,
    pub first_witness: Option<Witness>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

fn collect(
    axiom: &'static str,
    solution: &dyn SolutionMap,
    games: &[OrdinalGame],
    workers: usize,
    applies: impl Fn(&OrdinalGame) -> bool,
    check: impl Fn(usize, &OrdinalGame) -> Vec<Witness> + Sync + Send,
) -> AxiomReport {
    let chosen: Vec<usize> = (0..games.len()).filter(|&g| applies(&games[g])).collect();
    let per_game = exec::map_indexed(
        workers,
        chosen.len() as u64,
        || (),
        |_, j| {
            let g = chosen[j as usize];
            check(g, &games[g])
        },
    );
    let checked = per_game.len();
    let mut all = per_game.into_iter().flatten();
    let first_witness = all.next();
    let violations = first_witness.iter().count() + all.count();
    AxiomReport {
        axiom,
        solution: solution.name(),
        games_checked: checked,
        violations,
        first_witness,
    }
}

/// On every one-agent game the solution must be exactly the top-`k` actions.
pub fn check_one_person(solution: &dyn SolutionMap, k: usize, games: &[OrdinalGame], workers: usize) -> AxiomReport {
    collect(
        "one-person",
        solution,
        games,
        workers,
        |g| g.agents() == 1,
        |gi, g| {
            let want = k_sat(g, k);
            let got = solution.solve(g);
            if got == want {
                return Vec::new();
            }
            let p = (0..g.grid().len())
                .find(|p| want.contains(p) != got.contains(p))
                .expect("sets differ");
            vec![Witness {
                game: gi,
                profile: g.grid().profile_at(p),
                subset: None,
                detail: if want.contains(&p) {
                    format!("top-{k} action missing from the solution")
                } else {
                    format!("action outside the top {k} selected")
                },
            }]
        },
    )
}

/// For every selected profile `a` and proper `S`, `a_S` must be selected in
/// `g^{S,a}`.
pub fn check_consistency(solution: &dyn SolutionMap, games: &[OrdinalGame], workers: usize) -> AxiomReport {
    collect(
        "consistency",
        solution,
        games,
        workers,
        |_| true,
        |gi, g| {
            let grid = g.grid();
            let subsets = proper_subsets(grid.agents());
            let mut out = Vec::new();
            for p in solution.solve(g) {
                let a = grid.profile_at(p);
                for s in &subsets {
                    let residual = restrict(g, s, &a).expect("valid subset");
                    if solution.solve(&residual).binary_search(&project(grid, p, s)).is_err() {
                        out.push(Witness {
                            game: gi,
                            profile: a.clone(),
                            subset: Some(s.clone()),
                            detail: "selected profile's restriction is not selected in the residual game".into(),
                        });
                    }
                }
            }
            out
        },
    )
}

/// Every profile whose restrictions are selected in all residual games must
/// itself be selected. One-agent games have no proper `S`, so the premise is
/// vacuous there and they are skipped.
pub fn check_converse_consistency(solution: &dyn SolutionMap, games: &[OrdinalGame], workers: usize) -> AxiomReport {
    collect(
        "converse consistency",
        solution,
        games,
        workers,
        |g| g.agents() >= 2,
        |gi, g| {
            let grid = g.grid();
            let subsets = proper_subsets(grid.agents());
            let chosen = solution.solve(g);
            let mut out = Vec::new();
            for p in (0..grid.len()).filter(|p| chosen.binary_search(p).is_err()) {
                let a = grid.profile_at(p);
                let all_selected = subsets.iter().all(|s| {
                    let residual = restrict(g, s, &a).expect("valid subset");
                    solution.solve(&residual).binary_search(&project(grid, p, s)).is_ok()
                });
                if all_selected {
                    out.push(Witness {
                        game: gi,
                        profile: a,
                        subset: None,
                        detail: "every restriction is selected but the profile is not".into(),
                    });
                }
            }
            out
        },
    )
}

/// All three axioms in order: one-person, consistency, converse consistency.
pub fn check_axioms(solution: &dyn SolutionMap, k: usize, games: &[OrdinalGame], workers: usize) -> Vec<AxiomReport> {
    vec![
        check_one_person(solution, k, games, workers),
        check_consistency(solution, games, workers),
        check_converse_consistency(solution, games, workers),
    ]
}

/// Every strict game with `1..=max_agents` agents and `m` actions each.
pub fn axiom_domain(max_agents: usize, m: usize) -> Result<Vec<OrdinalGame>> {
    let mut out = Vec::new();
    for n in 1..=max_agents {
        out.extend(enumerate_games(&vec![m; n], DEFAULT_ENUMERATION_CAP)?);
    }
    Ok(out)
}

use std::collections::HashMap;

use proptest::prelude::*;
use satisficing::ensembles::{
    count_profiles, enumerate_games, estimate_gamma, exact_gamma, sample_ensemble, LazyGame, PropertySpec,
};
use satisficing::prevalence::psi;
use satisficing::rng::Stream;
use satisficing::{OrdinalGame, RankSource};

/// Counts qualifying profiles straight from the definition.
fn brute_count<G: RankSource>(g: &G, spec: &PropertySpec) -> u64 {
    let grid = g.grid();
    (0..grid.len())
        .filter(|&p| {
            let off: Vec<usize> = (0..grid.agents()).filter(|&i| g.rank_at(i, p) > 1).collect();
            off.len() <= spec.d
                && off
                    .iter()
                    .all(|i| spec.agents.contains(i) && g.rank_at(*i, p) <= spec.k)
        })
        .count() as u64
}

fn chi_square(counts: &HashMap<Vec<Vec<usize>>, u64>, cells: usize, samples: u64) -> f64 {
    assert_eq!(counts.len(), cells);
    let e = samples as f64 / cells as f64;
    counts.values().map(|&c| (c as f64 - e).powi(2) / e).sum()
}

fn tables(g: &LazyGame) -> Vec<Vec<usize>> {
    let o = g.materialize();
    (0..o.agents()).map(|i| o.rank_table(i)).collect()
}

#[test]
fn single_agent_lines_are_uniform() {
    let mut counts = HashMap::new();
    let mut g = LazyGame::new(&[4], 0).unwrap();
    for s in 0..10_000u64 {
        g.reseed(s);
        *counts.entry(tables(&g)).or_insert(0) += 1;
    }
    // 23 degrees of freedom, 0.1% critical value.
    assert!(chi_square(&counts, 24, 10_000) < 49.73);
}

#[test]
fn two_by_two_games_are_uniform() {
    let mut counts = HashMap::new();
    let mut g = LazyGame::new(&[2, 2], 0).unwrap();
    for s in 0..100_000u64 {
        g.reseed(s);
        *counts.entry(tables(&g)).or_insert(0) += 1;
    }
    // 15 degrees of freedom, 0.1% critical value.
    assert!(chi_square(&counts, 16, 100_000) < 37.70);
}

#[test]
fn lazy_answers_ignore_query_order() {
    let m = [3, 2, 4];
    let a = LazyGame::new(&m, 99).unwrap();
    let b = LazyGame::new(&m, 99).unwrap();
    let len = a.grid().len();
    let mut s = Stream::new(5, 5, &[]);
    for _ in 0..40 {
        let p = s.uniform_below(len as u64) as usize;
        let i = s.uniform_below(3) as usize;
        a.rank_at(i, p);
    }
    assert_eq!(a.materialize(), b.materialize());
    assert_ne!(a.materialize(), LazyGame::new(&m, 100).unwrap().materialize());
}

#[test]
fn enumeration_covers_every_strict_game_once() {
    let games: Vec<OrdinalGame> = enumerate_games(&[2, 3], 1_000_000).unwrap().collect();
    assert_eq!(games.len(), 2usize.pow(3) * 6usize.pow(2));
    let mut seen: Vec<_> = games.iter().map(|g| (g.rank_table(0), g.rank_table(1))).collect();
    seen.sort();
    seen.dedup();
    assert_eq!(seen.len(), games.len());
    assert!(enumerate_games(&[3, 3, 3], 1_000_000).is_err());
}

#[test]
fn exact_mean_count_equals_psi() {
    for m in [vec![2, 2], vec![2, 3], vec![3, 3], vec![2, 2, 2]] {
        let n = m.len();
        for (d, k) in [(0, 1), (1, 2), (2, 2), (1, 3)] {
            if d > n {
                continue;
            }
            let spec = PropertySpec::all_agents(n, d, k, 1).unwrap();
            let exact = exact_gamma(&m, &spec, 1_000_000).unwrap();
            assert!(
                (exact.mean_count() - psi(&m, &spec).unwrap()).abs() < 1e-9,
                "{m:?} d={d} k={k}"
            );
        }
    }
}

#[test]
fn sampled_fraction_tracks_exact() {
    for (m, spec) in [
        (vec![2, 3], PropertySpec::pure_nash(1)),
        (vec![3, 3], PropertySpec::all_agents(2, 1, 2, 2).unwrap()),
        (vec![2, 2, 2], PropertySpec::new(1, vec![1], 2, 2).unwrap()),
    ] {
        let p = exact_gamma(&m, &spec, 1_000_000).unwrap().fraction();
        let est = estimate_gamma(&m, &spec, 40_000, 3, 2).unwrap();
        let se = (p * (1.0 - p) / 40_000.0).sqrt().max(1e-9);
        assert!((est.estimate - p).abs() <= 4.0 * se, "{m:?}: {} vs {p}", est.estimate);
    }
}

#[test]
fn tallies_do_not_depend_on_workers() {
    let m = vec![2, 3, 2, 2];
    let specs = vec![
        PropertySpec::pure_nash(1),
        PropertySpec::all_agents(4, 2, 2, 1).unwrap(),
        PropertySpec::new(1, vec![1, 3], 3, 3).unwrap(),
    ];
    let base = sample_ensemble(&m, &specs, 5_000, 11, 1).unwrap();
    for w in [2, 8] {
        assert_eq!(sample_ensemble(&m, &specs, 5_000, 11, w).unwrap(), base);
    }
    // Grouping rows does not change any row.
    for (j, s) in specs.iter().enumerate() {
        assert_eq!(
            sample_ensemble(&m, std::slice::from_ref(s), 5_000, 11, 1).unwrap()[0],
            base[j]
        );
    }
}

#[test]
fn invalid_specs_are_rejected() {
    assert!(PropertySpec::new(2, vec![0], 2, 1).is_err());
    assert!(PropertySpec::new(0, vec![1, 1], 2, 1).is_err());
    assert!(PropertySpec::new(0, vec![], 0, 1).is_err());
    let spec = PropertySpec::new(1, vec![4], 2, 1).unwrap();
    assert!(sample_ensemble(&[2, 2], &[spec], 10, 0, 1).is_err());
    assert!(sample_ensemble(&[2, 2], &[PropertySpec::pure_nash(1)], 0, 0, 1).is_err());
    assert!(LazyGame::new(&[2, 1], 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn count_matches_definition(seed in any::<u64>(), n in 1usize..4, d in 0usize..4, k in 1usize..4, mask in 0u8..16) {
        let m: Vec<usize> = (0..n).map(|i| 2 + (seed as usize >> (3 * i)) % 3).collect();
        let agents: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        let d = d.min(agents.len());
        let spec = PropertySpec::new(d, agents, k, 1).unwrap();
        let g = LazyGame::new(&m, seed).unwrap();
        prop_assert_eq!(count_profiles(&g, &spec).unwrap(), brute_count(&g, &spec));
    }

    #[test]
    fn count_is_monotone_in_d_and_k(seed in any::<u64>(), d in 0usize..3, k in 1usize..3) {
        let m = [3, 2, 3];
        let g = LazyGame::new(&m, seed).unwrap();
        let c = |d, k| count_profiles(&g, &PropertySpec::all_agents(3, d, k, 1).unwrap()).unwrap();
        prop_assert!(c(d, k) <= c(d + 1, k));
        prop_assert!(c(d, k) <= c(d, k + 1));
    }
}

//! Satisficing equilibria of finite ordinal games.
//!
//! An agent is `k`-satisficed at a profile when its action is among its `k`
//! best responses to the others' actions; a profile where every agent `i` is
//! `k_i`-satisficed is a satisficing equilibrium. The crate provides exact
//! solvers, random-game ensembles with Poisson prevalence estimates, the
//! top-`k` response dynamic, approximate-potential search, the classical
//! constructions, and an axiom checker.

pub mod axioms;
pub mod constructions;
pub mod dynamics;
pub mod ensembles;
pub mod error;
pub mod exec;
pub mod format;
pub mod game;
pub mod potentials;
pub mod prevalence;
pub mod rng;

pub use error::{Error, Result};
pub use game::{
    is_equilibrium_at, is_satisficed, pure_nash, rank_of, satisficing_equilibria, ActionProfile, Grid, OrdinalGame,
    RankSource, Thresholds,
};

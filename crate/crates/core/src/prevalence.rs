//! Poisson approximation for the prevalence of satisficing profiles in
//! uniformly random games, and an experiment runner that compares Monte Carlo
//! estimates against it.

use serde::Serialize;

use crate::ensembles::{sample_ensemble, EnsembleTally, GammaEstimate, PropertySpec};
use crate::error::{invalid, Result};

/// `Σ_{T ⊆ S, |T| ≤ d} ∏_{i ∈ T} (min(k, m_i) − 1)`.
///
/// Computed from the elementary symmetric polynomials `e_0..e_d` of the
/// per-agent factors with the one-pass product recurrence.
pub fn psi(m: &[usize], spec: &PropertySpec) -> Result<f64> {
    spec.validate(m.len())?;
    let mut e = vec![0.0f64; spec.d + 1];
    e[0] = 1.0;
    for (seen, &i) in spec.agents.iter().enumerate() {
        let x = (spec.k.min(m[i]) - 1) as f64;
        for j in (1..=spec.d.min(seen + 1)).rev() {
            e[j] += x * e[j - 1];
        }
    }
    Ok(e.iter().sum())
}

/// `∏ m_i / max_i m_i`.
pub fn delta(m: &[usize]) -> Result<f64> {
    let max = *m.iter().max().ok_or_else(|| invalid("no agents"))?;
    if max == 0 {
        return Err(invalid("action counts must be positive"));
    }
    Ok(m.iter().map(|&c| c as f64).product::<f64>() / max as f64)
}

fn check_poisson(lambda: f64) -> Result<()> {
    if lambda.is_nan() || lambda < 0.0 || !lambda.is_finite() {
        return Err(invalid(format!(
            "Poisson mean must be finite and nonnegative, got {lambda}"
        )));
    }
    Ok(())
}

/// Kahan-compensated accumulator.
#[derive(Default)]
struct Compensated {
    sum: f64,
    carry: f64,
}

impl Compensated {
    fn add(&mut self, x: f64) {
        let y = x - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Above this mean `e^{-λ}` underflows and terms are formed from logarithms.
const LOG_SPACE_MEAN: f64 = 700.0;

/// `Pr[X ≤ upto]` summed term by term; only used when `upto < λ`.
fn lower_sum(lambda: f64, upto: u64) -> f64 {
    let mut acc = Compensated::default();
    if lambda <= LOG_SPACE_MEAN {
        let mut t = (-lambda).exp();
        acc.add(t);
        for j in 1..=upto {
            t *= lambda / j as f64;
            acc.add(t);
        }
    } else {
        let ln_l = lambda.ln();
        let mut log_t = -lambda;
        acc.add(log_t.exp());
        for j in 1..=upto {
            log_t += ln_l - (j as f64).ln();
            acc.add(log_t.exp());
        }
    }
    acc.sum
}

/// `Pr[X ≥ z]` summed over the decreasing upper tail; only used when `z > λ`.
fn upper_sum(lambda: f64, z: u64) -> f64 {
    // Log of the first tail term, then the tail relative to it.
    let log_first = if lambda <= LOG_SPACE_MEAN {
        let mut t = (-lambda).exp();
        for j in 1..=z {
            t *= lambda / j as f64;
            if t == 0.0 {
                break;
            }
        }
        if t > 0.0 && t.is_normal() {
            t.ln()
        } else {
            log_term(lambda, z)
        }
    } else {
        log_term(lambda, z)
    };
    let mut rel = Compensated::default();
    let mut r = 1.0;
    let mut j = z;
    while r > 1e-18 * rel.sum.max(1.0) || j == z {
        rel.add(r);
        j += 1;
        r *= lambda / j as f64;
    }
    (log_first + rel.sum.ln()).exp()
}

fn log_term(lambda: f64, z: u64) -> f64 {
    let ln_l = if lambda > 0.0 { lambda.ln() } else { f64::NEG_INFINITY };
    let mut log_t = -lambda;
    for j in 1..=z {
        log_t += ln_l - (j as f64).ln();
    }
    log_t
}

/// `Pr[X ≥ z]` for `X ~ Poisson(λ)`.
pub fn poisson_ccdf(lambda: f64, z: u64) -> Result<f64> {
    check_poisson(lambda)?;
    Ok(if z == 0 {
        1.0
    } else if lambda == 0.0 {
        0.0
    } else if (z as f64) <= lambda {
        (1.0 - lower_sum(lambda, z - 1)).max(0.0)
    } else {
        upper_sum(lambda, z).min(1.0)
    })
}

/// `Pr[X ≤ z]` for `X ~ Poisson(λ)`.
pub fn poisson_cdf(lambda: f64, z: u64) -> Result<f64> {
    check_poisson(lambda)?;
    Ok(if lambda == 0.0 {
        1.0
    } else if (z as f64) < lambda {
        lower_sum(lambda, z).min(1.0)
    } else {
        (1.0 - upper_sum(lambda, z + 1)).max(0.0)
    })
}

/// The Chen–Stein error bound for the Poisson approximation of a property.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChenStein {
    pub psi: f64,
    pub delta: f64,
    /// `Pr[Poisson(ψ) ≥ z]`.
    pub poisson_ref: f64,
    /// Bound on `|γ / poisson_ref − 1|`.
    pub relative: f64,
    /// Bound on `|γ − poisson_ref|`.
    pub absolute: f64,
}

/// `(n + 4 Σ_{i∈S} (min(k,m_i) − 1)²) · ψ² / (δ · Pr[Poisson(1) ≥ z])`,
/// together with its absolute form.
pub fn chen_stein_bound(m: &[usize], spec: &PropertySpec) -> Result<ChenStein> {
    let psi = psi(m, spec)?;
    let delta = delta(m)?;
    let poisson_ref = poisson_ccdf(psi, spec.z)?;
    let spread: f64 = spec
        .agents
        .iter()
        .map(|&i| {
            let x = (spec.k.min(m[i]) - 1) as f64;
            x * x
        })
        .sum();
    let relative = (m.len() as f64 + 4.0 * spread) * psi * psi / (delta * poisson_ccdf(1.0, spec.z)?);
    Ok(ChenStein {
        psi,
        delta,
        poisson_ref,
        relative,
        absolute: relative * poisson_ref,
    })
}

/// One experiment row: a property evaluated on `samples` games from
/// `U[G_{n,m}]` drawn under `seed`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentRow {
    pub m: Vec<usize>,
    pub spec: PropertySpec,
    pub samples: u64,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrevalenceReport {
    pub row: ExperimentRow,
    pub gamma: GammaEstimate,
    pub tally: EnsembleTally,
    pub bound: ChenStein,
    /// `bound.absolute + 3 · SE`.
    pub tolerance: f64,
    pub verdict: bool,
}

impl PrevalenceReport {
    fn new(row: ExperimentRow, tally: EnsembleTally) -> Result<Self> {
        let bound = chen_stein_bound(&row.m, &row.spec)?;
        let gamma = tally.gamma();
        let tolerance = bound.absolute + 3.0 * gamma.std_error;
        let verdict = (gamma.estimate - bound.poisson_ref).abs() <= tolerance;
        Ok(PrevalenceReport {
            row,
            gamma,
            tally,
            bound,
            tolerance,
            verdict,
        })
    }

    pub fn to_record(&self) -> PrevalenceRecord {
        let r = &self.row;
        PrevalenceRecord {
            n: r.m.len(),
            m: join_counts(&r.m),
            d: r.spec.d,
            s_size: r.spec.agents.len(),
            k: r.spec.k,
            z: r.spec.z,
            samples: r.samples,
            estimate: self.gamma.estimate,
            ci_low: self.gamma.ci_low,
            ci_high: self.gamma.ci_high,
            poisson_ref: self.bound.poisson_ref,
            chen_stein_bound: self.bound.absolute,
            seed: r.seed,
            psi: self.bound.psi,
            delta: self.bound.delta,
            relative_bound: self.bound.relative,
            mean_count: self.tally.mean_count(),
            verdict: if self.verdict { "pass" } else { "fail" },
        }
    }
}

/// Action counts rendered as `2x2x3`.
pub fn join_counts(m: &[usize]) -> String {
    m.iter().map(|c| c.to_string()).collect::<Vec<_>>().join("x")
}

/// Flat row for CSV/JSON output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PrevalenceRecord {
    pub n: usize,
    pub m: String,
    pub d: usize,
    #[serde(rename = "|S|")]
    pub s_size: usize,
    pub k: usize,
    pub z: u64,
    pub samples: u64,
    pub estimate: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub poisson_ref: f64,
    pub chen_stein_bound: f64,
    pub seed: u64,
    pub psi: f64,
    pub delta: f64,
    pub relative_bound: f64,
    pub mean_count: f64,
    pub verdict: &'static str,
}

/// Runs every row and reports each independently; a malformed row yields an
/// error in its slot without affecting the others.
///
/// Rows that share `(m, samples, seed)` are evaluated on the same sampled
/// games in a single pass.
pub fn run_prevalence_experiment(rows: &[ExperimentRow], workers: usize) -> Vec<Result<PrevalenceReport>> {
    let mut out: Vec<Option<Result<PrevalenceReport>>> = (0..rows.len()).map(|_| None).collect();
    let mut groups: Vec<(&[usize], u64, u64, Vec<usize>)> = Vec::new();
    for (idx, row) in rows.iter().enumerate() {
        if let Err(e) = row
            .spec
            .validate(row.m.len())
            .and_then(|_| chen_stein_bound(&row.m, &row.spec))
        {
            out[idx] = Some(Err(e));
            continue;
        }
        match groups
            .iter_mut()
            .find(|g| g.0 == row.m.as_slice() && g.1 == row.samples && g.2 == row.seed)
        {
            Some(g) => g.3.push(idx),
            None => groups.push((&row.m, row.samples, row.seed, vec![idx])),
        }
    }
    for (m, samples, seed, members) in groups {
        let specs: Vec<PropertySpec> = members.iter().map(|&i| rows[i].spec.clone()).collect();
        match sample_ensemble(m, &specs, samples, seed, workers) {
            Ok(tallies) => {
                for (&i, t) in members.iter().zip(tallies) {
                    out[i] = Some(PrevalenceReport::new(rows[i].clone(), t));
                }
            }
            Err(e) => {
                for &i in &members {
                    out[i] = Some(Err(invalid(e.to_string())));
                }
            }
        }
    }
    out.into_iter().map(|r| r.expect("every row is resolved")).collect()
}

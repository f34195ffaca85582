//! Parsers for compact command-line values.

use anyhow::{anyhow, bail, Context, Result};
use satisficing::ensembles::PropertySpec;

/// Action counts from `--m` and an optional `--n`: `--m 2 --n 12` repeats a
/// single count, `--m 2x3x4` lists one per agent.
pub fn action_counts(m: &str, n: Option<usize>) -> Result<Vec<usize>> {
    let counts = m
        .split('x')
        .map(|c| {
            c.trim()
                .parse::<usize>()
                .with_context(|| format!("bad action count `{c}` in --m {m}"))
        })
        .collect::<Result<Vec<_>>>()?;
    match (counts.len(), n) {
        (1, Some(n)) => Ok(vec![counts[0]; n]),
        (len, Some(n)) if len != n => bail!("--m lists {len} agents but --n is {n}"),
        (_, _) => Ok(counts),
    }
}

/// A comma-separated list of thresholds; a single value is broadcast to
/// every agent.
pub fn thresholds(k: &str, n: usize) -> Result<Vec<usize>> {
    let v = k
        .split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .with_context(|| format!("bad threshold `{x}` in --k {k}"))
        })
        .collect::<Result<Vec<_>>>()?;
    match v.len() {
        1 => Ok(vec![v[0]; n]),
        len if len == n => Ok(v),
        len => bail!("--k lists {len} thresholds for a game with {n} agents"),
    }
}

/// A property such as `d=1,k=2,z=1,S=all` or `d=1,S=0+3`. Defaults:
/// `d=0`, `k=1`, `z=1`, and `S` = all agents when `d > 0`, empty otherwise.
/// Agents in `S` are 0-based and joined with `+`.
pub fn property(text: &str, n: usize) -> Result<PropertySpec> {
    let (mut d, mut k, mut z, mut agents) = (0usize, 1usize, 1u64, None);
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| anyhow!("expected key=value in --spec, got `{part}`"))?;
        let bad = || format!("bad value for `{key}` in --spec {text}");
        match key {
            "d" => d = value.parse().with_context(bad)?,
            "k" => k = value.parse().with_context(bad)?,
            "z" => z = value.parse().with_context(bad)?,
            "S" | "s" => {
                agents = Some(if value == "all" {
                    (0..n).collect()
                } else {
                    value
                        .split('+')
                        .map(|a| a.parse::<usize>().with_context(bad))
                        .collect::<Result<Vec<_>>>()?
                })
            }
            _ => bail!("unknown key `{key}` in --spec (expected d, k, z or S)"),
        }
    }
    let agents = agents.unwrap_or_else(|| if d > 0 { (0..n).collect() } else { Vec::new() });
    let spec = PropertySpec::new(d, agents, k, z)?;
    spec.validate(n)?;
    Ok(spec)
}

/// Actions as a comma-separated list of 0-based indices.
pub fn profile(text: &str) -> Result<Vec<usize>> {
    text.split(',')
        .map(|x| {
            x.trim()
                .parse::<usize>()
                .with_context(|| format!("bad action `{x}` in profile {text}"))
        })
        .collect()
}

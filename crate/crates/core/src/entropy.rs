//! Plug-in entropies (in bits) over empirical or exact distributions, and the
//! entropy/L1 and Pinsker bound checks.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;

use serde::Serialize;

use crate::contingency::Contingency;
use crate::dataset::{Alphabet, DiscreteDataset};
use crate::error::{Error, Result};
use crate::models::JointDistribution;

/// Slack used when asserting the bound inequalities.
pub const BOUND_SLACK: f64 = 1e-12;

/// Where marginal probabilities come from.
#[derive(Debug, Clone, Copy)]
pub enum DistributionSource<'a> {
    Empirical(&'a DiscreteDataset),
    Exact(&'a JointDistribution),
}

impl<'a> From<&'a DiscreteDataset> for DistributionSource<'a> {
    fn from(ds: &'a DiscreteDataset) -> Self {
        DistributionSource::Empirical(ds)
    }
}

impl<'a> From<&'a JointDistribution> for DistributionSource<'a> {
    fn from(j: &'a JointDistribution) -> Self {
        DistributionSource::Exact(j)
    }
}

impl DistributionSource<'_> {
    pub fn p(&self) -> usize {
        match self {
            DistributionSource::Empirical(ds) => ds.p(),
            DistributionSource::Exact(j) => j.p(),
        }
    }

    pub fn alphabet(&self) -> &Alphabet {
        match self {
            DistributionSource::Empirical(ds) => ds.alphabet(),
            DistributionSource::Exact(j) => j.alphabet(),
        }
    }

    /// Marginal over `vars` in the given order.
    pub fn contingency(&self, vars: &[usize]) -> Result<Contingency> {
        match self {
            DistributionSource::Empirical(ds) => ds.counts(vars),
            DistributionSource::Exact(j) => j.contingency(vars),
        }
    }
}

fn canonical(vars: &[usize]) -> Vec<usize> {
    let mut v = vars.to_vec();
    v.sort_unstable();
    v.dedup();
    v
}

/// `H(X_A)` in bits; `H(∅) = 0`.
pub fn entropy(src: &DistributionSource<'_>, vars: &[usize]) -> Result<f64> {
    let vars = canonical(vars);
    if vars.is_empty() {
        return Ok(0.0);
    }
    Ok(src.contingency(&vars)?.entropy_bits())
}

/// `H(X_i | X_A) = H(X_{A∪i}) - H(X_A)`, both read off one contingency table.
pub fn conditional_entropy(src: &DistributionSource<'_>, i: usize, given: &[usize]) -> Result<f64> {
    let given = canonical(given);
    if given.contains(&i) {
        return Err(Error::argument(format!(
            "target {i} is part of the conditioning set"
        )));
    }
    let mut vars = Vec::with_capacity(given.len() + 1);
    vars.push(i);
    vars.extend_from_slice(&given);
    let joint = src.contingency(&vars)?;
    let h_joint = joint.entropy_bits();
    let h_given = if given.is_empty() {
        0.0
    } else {
        joint.marginalize_first().entropy_bits()
    };
    Ok((h_joint - h_given).max(0.0))
}

/// `I(X_i; X_j) = H(X_i) - H(X_i | X_j)`.
pub fn mutual_information(src: &DistributionSource<'_>, i: usize, j: usize) -> Result<f64> {
    if i == j {
        return Err(Error::argument(
            "mutual information needs two distinct variables",
        ));
    }
    let hi = entropy(src, &[i])?;
    let hij = conditional_entropy(src, i, &[j])?;
    Ok((hi - hij).max(0.0))
}

fn aligned_marginals(
    p: &DistributionSource<'_>,
    q: &DistributionSource<'_>,
    vars: &[usize],
) -> Result<Vec<(f64, f64)>> {
    if p.alphabet() != q.alphabet() {
        return Err(Error::argument("sources use different alphabets"));
    }
    let vars = canonical(vars);
    let mut cells: BTreeMap<u64, (f64, f64)> = BTreeMap::new();
    for (k, w) in p.contingency(&vars)?.probabilities() {
        cells.entry(k).or_default().0 = w;
    }
    for (k, w) in q.contingency(&vars)?.probabilities() {
        cells.entry(k).or_default().1 = w;
    }
    Ok(cells.into_values().collect())
}

/// `Σ_{x_A} |P(x_A) - Q(x_A)|`, in `[0, 2]`.
pub fn l1_distance(
    p: &DistributionSource<'_>,
    q: &DistributionSource<'_>,
    vars: &[usize],
) -> Result<f64> {
    Ok(aligned_marginals(p, q, vars)?
        .into_iter()
        .map(|(a, b)| (a - b).abs())
        .sum())
}

/// Outcome of checking `|H(P) - H(Q)| ≤ -‖P-Q‖₁ log(‖P-Q‖₁ / |X|^|A|)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub enum EntropyL1Check {
    /// The bound is only valid for `‖P-Q‖₁ ≤ 1/2`.
    Inapplicable { l1: f64 },
    Checked {
        l1: f64,
        lhs: f64,
        rhs: f64,
        holds: bool,
    },
}

impl EntropyL1Check {
    /// `true` unless the bound applied and failed.
    pub fn ok(&self) -> bool {
        match self {
            EntropyL1Check::Inapplicable { .. } => true,
            EntropyL1Check::Checked { holds, .. } => *holds,
        }
    }
}

pub fn check_entropy_l1_bound(
    p: &DistributionSource<'_>,
    q: &DistributionSource<'_>,
    vars: &[usize],
) -> Result<EntropyL1Check> {
    let vars = canonical(vars);
    let l1 = l1_distance(p, q, &vars)?;
    if l1 > 0.5 {
        return Ok(EntropyL1Check::Inapplicable { l1 });
    }
    let lhs = (entropy(p, &vars)? - entropy(q, &vars)?).abs();
    let support = (p.alphabet().len() as f64).powi(vars.len() as i32);
    let rhs = if l1 == 0.0 {
        0.0
    } else {
        -l1 * (l1 / support).log2()
    };
    Ok(EntropyL1Check::Checked {
        l1,
        lhs,
        rhs,
        holds: lhs <= rhs + BOUND_SLACK,
    })
}

/// Outcome of checking Pinsker's inequality `D(P‖Q) ≥ ‖P-Q‖₁² / (2 ln 2)` in bits.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PinskerCheck {
    /// `+∞` when `P` puts mass where `Q` has none.
    pub kl_bits: f64,
    pub l1: f64,
    pub holds: bool,
}

pub fn check_pinsker(
    p: &DistributionSource<'_>,
    q: &DistributionSource<'_>,
    vars: &[usize],
) -> Result<PinskerCheck> {
    let cells = aligned_marginals(p, q, vars)?;
    let l1: f64 = cells.iter().map(|(a, b)| (a - b).abs()).sum();
    let mut kl_bits = 0.0;
    for (a, b) in &cells {
        if *a == 0.0 {
            continue;
        }
        if *b == 0.0 {
            kl_bits = f64::INFINITY;
            break;
        }
        kl_bits += a * (a / b).log2();
    }
    let kl_bits = kl_bits.max(0.0);
    Ok(PinskerCheck {
        kl_bits,
        l1,
        holds: kl_bits + BOUND_SLACK >= l1 * l1 / (2.0 * LN_2),
    })
}

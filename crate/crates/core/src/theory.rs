//! Closed-form sample/girth bounds and exact measurements of the
//! non-degeneracy gap and correlation decay on small models.

use std::collections::BTreeMap;
use std::f64::consts::LN_2;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use crate::entropy::{conditional_entropy, DistributionSource};
use crate::error::{Error, Result};
use crate::models::{
    bfs_distances, logistic, tree_conditional_plus, Adjacency, JointDistribution, MarkovGraph,
    RootedTree,
};

/// Largest neighbourhood whose subsets are enumerated for the gap measurement.
pub const MAX_GAP_DEGREE: usize = 12;
/// Largest variable count of a marginal used by the decay measurement.
pub const MAX_DECAY_VARS: usize = 16;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    pub name: String,
    pub inputs: BTreeMap<String, f64>,
    pub value: f64,
    pub formula_ref: String,
}

impl BoundReport {
    fn new(name: &str, inputs: &[(&str, f64)], value: f64, formula: &str) -> Self {
        BoundReport {
            name: name.to_string(),
            inputs: inputs.iter().map(|(k, v)| (k.to_string(), *v)).collect(),
            value,
            formula_ref: formula.to_string(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LogBase {
    #[default]
    Two,
    Natural,
}

impl LogBase {
    fn log(self, x: f64) -> f64 {
        match self {
            LogBase::Two => x.log2(),
            LogBase::Natural => x.ln(),
        }
    }
}

impl FromStr for LogBase {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" | "two" | "bits" => Ok(LogBase::Two),
            "e" | "natural" | "nats" => Ok(LogBase::Natural),
            _ => Err(Error::argument(format!("unknown log base '{s}'"))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::Natural => "e",
        })
    }
}

fn positive(name: &str, x: f64) -> Result<()> {
    if x.is_finite() && x > 0.0 {
        Ok(())
    } else {
        Err(Error::argument(format!(
            "{name} must be positive and finite, got {x}"
        )))
    }
}

fn alphabet_ok(k: usize) -> Result<()> {
    if k >= 2 {
        Ok(())
    } else {
        Err(Error::argument("alphabet size must be at least 2"))
    }
}

/// `h = ε² |X|^{-2(D+1)²} / 64`.
pub fn theorem1_h(epsilon: f64, degree: usize, alphabet: usize) -> Result<f64> {
    positive("epsilon", epsilon)?;
    alphabet_ok(alphabet)?;
    let d1 = (degree + 1) as f64;
    let h = epsilon * epsilon * (alphabet as f64).powf(-2.0 * d1 * d1) / 64.0;
    if h == 0.0 {
        return Err(Error::argument(format!(
            "h underflows to zero for D = {degree}, |X| = {alphabet}"
        )));
    }
    Ok(h)
}

/// Right-hand side `2^15 ε^-4 |X|^{4(D+2)} ((D+2) log 2|X| + 2 log(p/δ))`.
pub fn lemma5_rhs(
    epsilon: f64,
    degree: usize,
    alphabet: usize,
    p: usize,
    delta: f64,
    base: LogBase,
) -> Result<f64> {
    positive("epsilon", epsilon)?;
    alphabet_ok(alphabet)?;
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::argument(format!(
            "delta must lie in (0, 1), got {delta}"
        )));
    }
    if p < 1 {
        return Err(Error::argument("p must be at least 1"));
    }
    let k = alphabet as f64;
    let d2 = (degree + 2) as f64;
    let lead = 2f64.powi(15) * epsilon.powi(-4) * k.powf(4.0 * d2);
    let logs = d2 * base.log(2.0 * k) + 2.0 * base.log(p as f64 / delta);
    Ok(lead * logs)
}

/// Smallest integer sample count strictly above [`lemma5_rhs`].
pub fn lemma5_sample_bound(
    epsilon: f64,
    degree: usize,
    alphabet: usize,
    p: usize,
    delta: f64,
    base: LogBase,
) -> Result<f64> {
    Ok(lemma5_rhs(epsilon, degree, alphabet, p, delta, base)?.floor() + 1.0)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Theorem2Params {
    pub epsilon: f64,
    pub girth_bound: f64,
}

/// `ε = 2^-10 sinh²(2β)` and `g > (2^15 / ln 2)(D² ln 2 - ln sinh 2β)`.
pub fn theorem2_params(beta: f64, degree: usize) -> Result<Theorem2Params> {
    if degree < 1 {
        return Err(Error::argument("degree must be at least 1"));
    }
    let limit = LN_2 / (2.0 * degree as f64);
    if !(beta > 0.0 && beta < limit) {
        return Err(Error::argument(format!(
            "beta = {beta} violates 0 < beta < |theta_ij| < ln 2 / (2D) = {limit}"
        )));
    }
    let s = (2.0 * beta).sinh();
    let d = degree as f64;
    Ok(Theorem2Params {
        epsilon: s * s / 1024.0,
        girth_bound: (2f64.powi(15) / LN_2) * (d * d * LN_2 - s.ln()),
    })
}

/// `ε = 2^-7 e^{-6γD} sinh²(2β)`.
pub fn lemma6_epsilon(beta: f64, gamma: f64, degree: usize) -> Result<f64> {
    positive("beta", beta)?;
    positive("gamma", gamma)?;
    if beta >= gamma {
        return Err(Error::argument(format!(
            "need 0 < beta < gamma, got beta = {beta}, gamma = {gamma}"
        )));
    }
    let s = (2.0 * beta).sinh();
    Ok((-6.0 * gamma * degree as f64).exp() * s * s / 128.0)
}

/// Inputs for [`bound_reports`]; each report is produced when its inputs are present.
#[derive(Debug, Clone, Copy, Default)]
pub struct BoundParams {
    pub epsilon: Option<f64>,
    pub beta: Option<f64>,
    pub gamma: Option<f64>,
    pub degree: usize,
    pub alphabet: usize,
    pub p: Option<usize>,
    pub delta: Option<f64>,
    pub log_base: LogBase,
}

pub fn bound_reports(bp: &BoundParams) -> Result<Vec<BoundReport>> {
    let d = bp.degree as f64;
    let k = bp.alphabet as f64;
    let mut out = Vec::new();
    if let Some(eps) = bp.epsilon {
        out.push(BoundReport::new(
            "theorem1_h",
            &[("epsilon", eps), ("degree", d), ("alphabet", k)],
            theorem1_h(eps, bp.degree, bp.alphabet)?,
            "h = eps^2 * |X|^(-2(D+1)^2) / 64",
        ));
        if let (Some(p), Some(delta)) = (bp.p, bp.delta) {
            let formula = match bp.log_base {
                LogBase::Two => "n > 2^15 eps^-4 |X|^(4(D+2)) ((D+2) log2(2|X|) + 2 log2(p/delta))",
                LogBase::Natural => "n > 2^15 eps^-4 |X|^(4(D+2)) ((D+2) ln(2|X|) + 2 ln(p/delta))",
            };
            out.push(BoundReport::new(
                "lemma5_sample_bound",
                &[
                    ("epsilon", eps),
                    ("degree", d),
                    ("alphabet", k),
                    ("p", p as f64),
                    ("delta", delta),
                ],
                lemma5_sample_bound(eps, bp.degree, bp.alphabet, p, delta, bp.log_base)?,
                formula,
            ));
        }
    }
    if let Some(beta) = bp.beta {
        let t2 = theorem2_params(beta, bp.degree)?;
        out.push(BoundReport::new(
            "theorem2_epsilon",
            &[("beta", beta), ("degree", d)],
            t2.epsilon,
            "eps = 2^-10 sinh^2(2 beta)",
        ));
        out.push(BoundReport::new(
            "theorem2_girth",
            &[("beta", beta), ("degree", d)],
            t2.girth_bound,
            "g > (2^15 / ln 2) (D^2 ln 2 - ln sinh(2 beta))",
        ));
        if let Some(gamma) = bp.gamma {
            out.push(BoundReport::new(
                "lemma6_epsilon",
                &[("beta", beta), ("gamma", gamma), ("degree", d)],
                lemma6_epsilon(beta, gamma, bp.degree)?,
                "eps = 2^-7 exp(-6 gamma D) sinh^2(2 beta)",
            ));
        }
    }
    Ok(out)
}

/// Smallest entropy reduction a true neighbour gives at vertex `i`.
///
/// Minimises, over `A ⊆ N(i)`, `j ∈ N(i)∖A` and `l ∈ N(j)∖{i}`, both
/// `H(X_i|X_A) - H(X_i|X_A,X_j)` and `H(X_i|X_A,X_l) - H(X_i|X_A,X_j,X_l)`.
/// Returns `+∞` when `i` has no neighbours.
pub fn measure_nondegeneracy(joint: &JointDistribution, g: &MarkovGraph, i: usize) -> Result<f64> {
    check_model(joint, g)?;
    if i >= g.p() {
        return Err(Error::Bounds { index: i, p: g.p() });
    }
    let nb: Vec<usize> = g.neighbors(i).to_vec();
    if nb.len() > MAX_GAP_DEGREE {
        return Err(Error::Capacity(format!(
            "vertex {i} has degree {} (subset enumeration limit {MAX_GAP_DEGREE})",
            nb.len()
        )));
    }
    let src = DistributionSource::Exact(joint);
    let h = |set: &[usize]| -> Result<f64> {
        let mut s = set.to_vec();
        s.sort_unstable();
        s.dedup();
        conditional_entropy(&src, i, &s)
    };
    let masks: Vec<u32> = (0..1u32 << nb.len()).collect();
    let per_mask: Vec<f64> = masks
        .par_iter()
        .map(|&mask| {
            let a: Vec<usize> = (0..nb.len())
                .filter(|b| mask >> b & 1 == 1)
                .map(|b| nb[b])
                .collect();
            let h_a = h(&a)?;
            let mut best = f64::INFINITY;
            for (bj, &j) in nb.iter().enumerate() {
                if mask >> bj & 1 == 1 {
                    continue;
                }
                let mut aj = a.clone();
                aj.push(j);
                best = best.min(h_a - h(&aj)?);
                for &l in g.neighbors(j) {
                    if l == i {
                        continue;
                    }
                    let mut al = a.clone();
                    al.push(l);
                    let mut ajl = aj.clone();
                    ajl.push(l);
                    best = best.min(h(&al)? - h(&ajl)?);
                }
            }
            Ok(best)
        })
        .collect::<Result<_>>()?;
    Ok(per_mask.into_iter().fold(f64::INFINITY, f64::min))
}

/// Minimum of [`measure_nondegeneracy`] over all vertices.
pub fn model_nondegeneracy(joint: &JointDistribution, g: &MarkovGraph) -> Result<f64> {
    let gaps: Vec<f64> = (0..g.p())
        .map(|i| measure_nondegeneracy(joint, g, i))
        .collect::<Result<_>>()?;
    Ok(gaps.into_iter().fold(f64::INFINITY, f64::min))
}

fn check_model(joint: &JointDistribution, g: &MarkovGraph) -> Result<()> {
    if joint.p() != g.p() {
        return Err(Error::argument(format!(
            "joint has {} variables but graph has {}",
            joint.p(),
            g.p()
        )));
    }
    Ok(())
}

/// Largest observed influence of distant conditioning sets on a local marginal.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DecayProfile {
    pub node: usize,
    pub max_set_size: usize,
    /// Variables of the local marginal: the node and its 1- and 2-hop neighbours.
    pub local: Vec<usize>,
    /// Hop distance `d(i, B)` → max deviation over sets at that distance.
    pub by_distance: BTreeMap<usize, f64>,
}

impl DecayProfile {
    /// Consecutive distances `(d, d')` where the value grows by more than `tol`.
    pub fn increases(&self, tol: f64) -> Vec<(usize, usize)> {
        let v: Vec<(usize, f64)> = self.by_distance.iter().map(|(d, x)| (*d, *x)).collect();
        v.windows(2)
            .filter(|w| w[1].1 > w[0].1 + tol)
            .map(|w| (w[0].0, w[1].0))
            .collect()
    }

    pub fn is_non_increasing(&self, tol: f64) -> bool {
        self.increases(tol).is_empty()
    }
}

fn subsets_up_to(items: &[usize], max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn rec(
        items: &[usize],
        start: usize,
        max: usize,
        cur: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        for k in start..items.len() {
            cur.push(items[k]);
            out.push(cur.clone());
            if cur.len() < max {
                rec(items, k + 1, max, cur, out);
            }
            cur.pop();
        }
    }
    rec(items, 0, max, &mut cur, &mut out);
    out
}

/// `max |P(x_I | x_B) - P(x_I)|` over nonempty `B` outside
/// `I = {i} ∪ N¹(i) ∪ N²(i)` with `|B| ≤ max_set_size`, grouped by `d(i, B)`.
///
/// Sets unreachable from `i` are skipped. Restricting `|B|` makes each value a
/// lower bound on the supremum over all sets.
pub fn measure_decay_profile(
    joint: &JointDistribution,
    g: &MarkovGraph,
    i: usize,
    max_set_size: usize,
) -> Result<DecayProfile> {
    check_model(joint, g)?;
    let p = g.p();
    if i >= p {
        return Err(Error::Bounds { index: i, p });
    }
    if max_set_size < 1 {
        return Err(Error::argument("max_set_size must be at least 1"));
    }
    let dist = bfs_distances(g, i);
    let local: Vec<usize> = (0..p)
        .filter(|v| matches!(dist[*v], Some(d) if d <= 2))
        .collect();
    if local.len() + max_set_size > MAX_DECAY_VARS {
        return Err(Error::Capacity(format!(
            "local marginal of {} variables plus sets of {max_set_size} exceeds {MAX_DECAY_VARS}",
            local.len()
        )));
    }
    let outside: Vec<usize> = (0..p).filter(|v| dist[*v].is_some_and(|d| d > 2)).collect();
    let k = joint.alphabet().len();
    let local_cells = k.pow(local.len() as u32);
    let prior = joint.marginal(&local)?;
    let sets = subsets_up_to(&outside, max_set_size);
    let scored: Vec<(usize, f64)> = sets
        .par_iter()
        .map(|b| {
            let d = b.iter().filter_map(|v| dist[*v]).min().expect("reachable");
            let mut vars = local.clone();
            vars.extend_from_slice(b);
            let m = joint.marginal(&vars)?;
            let mut worst: f64 = 0.0;
            for chunk in m.chunks(local_cells) {
                let pb: f64 = chunk.iter().sum();
                if pb <= 0.0 {
                    continue;
                }
                for (c, q) in chunk.iter().zip(&prior) {
                    worst = worst.max((c / pb - q).abs());
                }
            }
            Ok((d, worst))
        })
        .collect::<Result<_>>()?;
    let mut by_distance = BTreeMap::new();
    for (d, w) in scored {
        let e = by_distance.entry(d).or_insert(0.0f64);
        *e = e.max(w);
    }
    Ok(DecayProfile {
        node: i,
        max_set_size,
        local,
        by_distance,
    })
}

/// `P(X_r = +1 | x_L)` for every leaf configuration, from the exact joint.
///
/// Entry `m` conditions on leaf `leaves[b]` being `+1` iff bit `b` of `m` is set.
pub fn leaf_conditional_table(
    joint: &JointDistribution,
    root: usize,
    leaves: &[usize],
) -> Result<Vec<f64>> {
    if joint.alphabet().len() != 2 {
        return Err(Error::argument("leaf tables need a binary alphabet"));
    }
    let mut vars = vec![root];
    vars.extend_from_slice(leaves);
    let m = joint.marginal(&vars)?;
    Ok(m.chunks(2).map(|c| c[1] / (c[0] + c[1])).collect())
}

/// Outcome of the leaf-flip and worst-case checks on a tree.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LeafMonotonicity {
    pub configurations: usize,
    /// `(config, leaf)` pairs where raising the leaf to `+1` did not raise `P(X_r=+1)`.
    pub violations: Vec<(usize, usize)>,
    /// `max |P(x_r|x_L) - P(x_r)|` over all root values and leaf configurations.
    pub max_deviation: f64,
    /// The same deviation at `x_r = +1`, all leaves `+1`.
    pub all_ones_deviation: f64,
}

impl LeafMonotonicity {
    pub fn all_ones_is_max(&self, tol: f64) -> bool {
        self.all_ones_deviation >= self.max_deviation - tol
    }
}

/// Exhaustive leaf-flip monotonicity of `P(X_r=+1 | x_L)` on a tree model.
pub fn check_leaf_monotonicity(
    joint: &JointDistribution,
    tree: &RootedTree<'_>,
) -> Result<LeafMonotonicity> {
    let leaves = tree.leaves();
    if leaves.len() > MAX_DECAY_VARS {
        return Err(Error::Capacity(format!(
            "{} leaves is too many",
            leaves.len()
        )));
    }
    let table = leaf_conditional_table(joint, tree.root(), &leaves)?;
    let prior = joint.marginal(&[tree.root()])?[1];
    let mut violations = Vec::new();
    let mut max_deviation: f64 = 0.0;
    for (m, f) in table.iter().enumerate() {
        max_deviation = max_deviation.max((f - prior).abs());
        for b in 0..leaves.len() {
            if m >> b & 1 == 0 && table[m | 1 << b] <= *f {
                violations.push((m, leaves[b]));
            }
        }
    }
    let all = table.len() - 1;
    Ok(LeafMonotonicity {
        configurations: table.len(),
        violations,
        max_deviation,
        all_ones_deviation: (table[all] - prior).abs(),
    })
}

const FIELD_MERGE: f64 = 1e-12;

fn dedupe(mut v: Vec<f64>) -> Vec<f64> {
    v.sort_by(f64::total_cmp);
    v.dedup_by(|a, b| (*a - *b).abs() <= FIELD_MERGE * (1.0 + b.abs()));
    v
}

fn sumset(a: &[f64], b: &[f64]) -> Vec<f64> {
    dedupe(
        a.iter()
            .flat_map(|x| b.iter().map(move |y| x + y))
            .collect(),
    )
}

/// Every log-odds `log P(X_v=+1|x_Lv)/P(X_v=-1|x_Lv)` of `v` given the leaves
/// of its subtree, computed within that subtree, as `x_Lv` ranges over all
/// configurations. Values closer than `1e-12` are merged.
pub fn subtree_field_values(tree: &RootedTree<'_>, v: usize) -> Result<Vec<f64>> {
    let kids = tree.children(v);
    if kids.is_empty() {
        return Err(Error::argument(format!("vertex {v} is a leaf")));
    }
    let mut acc = vec![0.0];
    for &c in kids {
        let t = tree.model().theta(v, c).expect("tree edge");
        let msgs = if tree.children(c).is_empty() {
            dedupe(vec![-2.0 * t, 2.0 * t])
        } else {
            let th = t.tanh();
            dedupe(
                subtree_field_values(tree, c)?
                    .into_iter()
                    .map(|h| 2.0 * (th * (h / 2.0).tanh()).atanh())
                    .collect(),
            )
        };
        acc = sumset(&acc, &msgs);
    }
    Ok(acc)
}

/// Every value of `P(X_r = +1 | x_L)` over leaf configurations.
pub fn root_conditional_values(tree: &RootedTree<'_>) -> Result<Vec<f64>> {
    Ok(subtree_field_values(tree, tree.root())?
        .into_iter()
        .map(logistic)
        .collect())
}

/// Root and child deviations on a tree, maximised over leaf configurations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TreeDecay {
    /// Hop distance from the root to the nearest leaf.
    pub depth: usize,
    /// `max |P(x_r | x_L) - P(x_r)|`.
    pub root: f64,
    /// `max |P(x_c | x_r, x_L) - P(x_c | x_r)|` over children `c` of the root.
    pub child: f64,
}

fn leaf_depth(tree: &RootedTree<'_>) -> usize {
    let depth = tree.depths();
    tree.leaves().iter().map(|l| depth[*l]).min().unwrap_or(0)
}

/// Exact [`TreeDecay`] over every leaf configuration, via achievable field sets.
pub fn tree_decay_exhaustive(tree: &RootedTree<'_>) -> Result<TreeDecay> {
    let model = tree.model();
    let r = tree.root();
    let prior = tree_conditional_plus(model, &[], r)?;
    let root = root_conditional_values(tree)?
        .into_iter()
        .map(|q| (q - prior).abs())
        .fold(0.0, f64::max);
    let mut child: f64 = 0.0;
    for &c in tree.children(r) {
        let t = model.theta(r, c).expect("tree edge");
        let fields = if tree.children(c).is_empty() {
            vec![f64::NEG_INFINITY, f64::INFINITY]
        } else {
            subtree_field_values(tree, c)?
        };
        for s in [-1i8, 1] {
            let base = tree_conditional_plus(model, &[(r, s)], c)?;
            for h in &fields {
                let q = logistic(2.0 * t * f64::from(s) + h);
                child = child.max((q - base).abs());
            }
        }
    }
    Ok(TreeDecay {
        depth: leaf_depth(tree),
        root,
        child,
    })
}

/// [`TreeDecay`] at the all-`+1` leaf configuration only.
pub fn tree_decay_all_ones(tree: &RootedTree<'_>) -> Result<TreeDecay> {
    let model = tree.model();
    let r = tree.root();
    let ones: Vec<(usize, i8)> = tree.leaves().into_iter().map(|l| (l, 1)).collect();
    let prior = tree_conditional_plus(model, &[], r)?;
    let root = (tree_conditional_plus(model, &ones, r)? - prior).abs();
    let mut child: f64 = 0.0;
    for &c in tree.children(r) {
        for s in [-1i8, 1] {
            let base = tree_conditional_plus(model, &[(r, s)], c)?;
            let mut ev = ones.clone();
            ev.retain(|(v, _)| *v != c);
            ev.push((r, s));
            let q = tree_conditional_plus(model, &ev, c)?;
            child = child.max((q - base).abs());
        }
    }
    Ok(TreeDecay {
        depth: leaf_depth(tree),
        root,
        child,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::Alphabet;
    use crate::generators::{chain, complete_dary_tree};
    use crate::models::IsingModel;

    fn rel(a: f64, b: f64) -> f64 {
        ((a - b) / b).abs()
    }

    #[test]
    fn h_examples() {
        assert!(rel(theorem1_h(0.8, 1, 2).unwrap(), 3.90625e-5) < 1e-12);
        assert!(rel(theorem1_h(1.0, 0, 2).unwrap(), 0.00390625) < 1e-12);
        let a = theorem1_h(0.3, 2, 3).unwrap();
        assert!(rel(theorem1_h(0.6, 2, 3).unwrap(), 4.0 * a) < 1e-12);
        assert!(theorem1_h(0.0, 1, 2).is_err());
        assert!(theorem1_h(1.0, 40, 2).is_err());
    }

    #[test]
    fn sample_bound_example() {
        let raw = lemma5_rhs(0.5, 2, 2, 16, 0.05, LogBase::Two).unwrap();
        assert!(rel(raw, 846_756_451_059.276_9) < 1e-9);
        let n = lemma5_sample_bound(0.5, 2, 2, 16, 0.05, LogBase::Two).unwrap();
        assert_eq!(n, 846_756_451_060.0);
        let nat = lemma5_rhs(0.5, 2, 2, 16, 0.05, LogBase::Natural).unwrap();
        assert!(rel(nat, 586_926_846_672.683_1) < 1e-9);
        assert!(lemma5_rhs(0.5, 2, 2, 16, 1.0, LogBase::Two).is_err());
    }

    #[test]
    fn theorem2_example() {
        let t = theorem2_params(0.1, 2).unwrap();
        assert!(rel(t.epsilon, 3.958_611_906_174_552_6e-5) < 1e-9);
        assert!(rel(t.girth_bound, 206_842.197_423_968_6) < 1e-9);
        assert!(theorem2_params(0.2, 2).is_err());
        assert!(theorem2_params(0.0, 2).is_err());
    }

    #[test]
    fn lemma6_example() {
        assert!(
            rel(
                lemma6_epsilon(0.25, 0.3, 2).unwrap(),
                5.796_478_332_887_176e-5
            ) < 1e-9
        );
        assert!(lemma6_epsilon(0.3, 0.25, 2).is_err());
        let s = 0.5f64.sinh();
        assert!(rel(lemma6_epsilon(0.25, 0.3, 0).unwrap(), s * s / 128.0) < 1e-12);
    }

    #[test]
    fn reports_follow_inputs() {
        let r = bound_reports(&BoundParams {
            beta: Some(0.1),
            degree: 2,
            alphabet: 2,
            ..Default::default()
        })
        .unwrap();
        let names: Vec<&str> = r.iter().map(|b| b.name.as_str()).collect();
        assert_eq!(names, ["theorem2_epsilon", "theorem2_girth"]);
        assert_eq!(r[0].inputs["beta"], 0.1);
    }

    fn exact(g: MarkovGraph, theta: f64) -> (IsingModel, JointDistribution) {
        let m = IsingModel::uniform(g, theta).unwrap();
        let j = m.exact_joint().unwrap();
        (m, j)
    }

    #[test]
    fn gap_examples() {
        let g = MarkovGraph::empty(3);
        let j = JointDistribution::new(3, Alphabet::spins(), vec![0.125; 8]).unwrap();
        assert_eq!(measure_nondegeneracy(&j, &g, 0).unwrap(), f64::INFINITY);

        let (m, j) = exact(chain(3).unwrap(), 0.5);
        assert!(measure_nondegeneracy(&j, m.graph(), 1).unwrap() > 0.0);

        let (m, j) = exact(chain(2).unwrap(), 0.5);
        let q = logistic(1.0);
        let hb = -(q * q.log2() + (1.0 - q) * (1.0 - q).log2());
        let gap = measure_nondegeneracy(&j, m.graph(), 0).unwrap();
        assert!((gap - (1.0 - hb)).abs() < 1e-12);
    }

    #[test]
    fn decay_examples() {
        let (m, j) = exact(chain(5).unwrap(), 0.5);
        let prof = measure_decay_profile(&j, m.graph(), 0, 1).unwrap();
        assert_eq!(prof.local, vec![0, 1, 2]);
        assert_eq!(
            prof.by_distance.keys().copied().collect::<Vec<_>>(),
            vec![3, 4]
        );
        assert!(prof.by_distance[&4] < prof.by_distance[&3]);
        assert!(prof.is_non_increasing(0.0));

        let uniform = JointDistribution::new(5, Alphabet::spins(), vec![1.0 / 32.0; 32]).unwrap();
        let prof = measure_decay_profile(&uniform, m.graph(), 0, 2).unwrap();
        assert!(prof.by_distance.values().all(|v| *v < 1e-15));
    }

    #[test]
    fn field_sets_match_enumeration() {
        let m = IsingModel::from_edges(
            7,
            &[
                (0, 1, 0.3),
                (0, 2, 0.5),
                (1, 3, 0.7),
                (1, 4, 0.2),
                (2, 5, 0.4),
                (2, 6, 0.6),
            ],
        )
        .unwrap();
        let tree = RootedTree::new(&m, 0).unwrap();
        let leaves = tree.leaves();
        let mut brute = Vec::new();
        for mask in 0..1usize << leaves.len() {
            let ev: Vec<(usize, i8)> = leaves
                .iter()
                .enumerate()
                .map(|(b, l)| (*l, if mask >> b & 1 == 1 { 1 } else { -1 }))
                .collect();
            brute.push(tree_conditional_plus(&m, &ev, 0).unwrap());
        }
        brute.sort_by(f64::total_cmp);
        let fast = root_conditional_values(&tree).unwrap();
        assert_eq!(fast.len(), brute.len());
        for (a, b) in fast.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-12);
        }
        let j = m.exact_joint().unwrap();
        let table = leaf_conditional_table(&j, 0, &leaves).unwrap();
        let mut t = table.clone();
        t.sort_by(f64::total_cmp);
        for (a, b) in t.iter().zip(&brute) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn decay_modes_agree_on_small_tree() {
        let g = complete_dary_tree(2, 3).unwrap();
        let (m, j) = exact(g, 0.2);
        let tree = RootedTree::new(&m, 0).unwrap();
        let ex = tree_decay_exhaustive(&tree).unwrap();
        let ones = tree_decay_all_ones(&tree).unwrap();
        assert_eq!(ex.depth, 3);
        assert!((ex.root - ones.root).abs() < 1e-12);
        assert!((ex.child - ones.child).abs() < 1e-12);
        let mono = check_leaf_monotonicity(&j, &tree).unwrap();
        assert_eq!(mono.configurations, 256);
        assert!(mono.violations.is_empty());
        assert!(mono.all_ones_is_max(1e-12));
        assert!((mono.max_deviation - ex.root).abs() < 1e-12);
    }
}

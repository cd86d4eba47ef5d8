//! Greedy neighbourhood selection, pruning, symmetrisation and the Chow–Liu
//! tree baseline.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use serde::{Deserialize, Serialize, Serializer};

use crate::entropy::{conditional_entropy, mutual_information, DistributionSource};
use crate::error::{Error, Result};
use crate::models::MarkovGraph;

/// Two conditional entropies closer than this are treated as tied.
pub const TIE_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TieBreak {
    /// Among (near-)equal candidates the smallest vertex index wins.
    #[default]
    LowestIndex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Symmetrization {
    /// Keep `{i, j}` only if each lists the other.
    #[default]
    And,
    /// Keep `{i, j}` if either lists the other.
    Or,
}

impl FromStr for Symmetrization {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "and" => Ok(Symmetrization::And),
            "or" => Ok(Symmetrization::Or),
            _ => Err(Error::argument(format!("unknown symmetrization '{s}'"))),
        }
    }
}

impl fmt::Display for Symmetrization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Symmetrization::And => "and",
            Symmetrization::Or => "or",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LearnerConfig {
    pub epsilon: f64,
    /// Upper limit on `|N̂(i)|`; `None` means unbounded.
    pub max_neighborhood: Option<usize>,
    pub tie_break: TieBreak,
    pub symmetrization: Symmetrization,
    /// Run [`prune_neighborhood`] on each greedy neighbourhood before assembly.
    pub prune: bool,
}

impl LearnerConfig {
    pub fn new(epsilon: f64) -> Self {
        LearnerConfig {
            epsilon,
            max_neighborhood: None,
            tie_break: TieBreak::LowestIndex,
            symmetrization: Symmetrization::And,
            prune: false,
        }
    }

    /// Caps neighbourhoods at twice the expected degree.
    pub fn with_degree_hint(mut self, degree: usize) -> Self {
        self.max_neighborhood = Some(2 * degree.max(1));
        self
    }

    pub fn with_symmetrization(mut self, rule: Symmetrization) -> Self {
        self.symmetrization = rule;
        self
    }

    pub fn with_prune(mut self, prune: bool) -> Self {
        self.prune = prune;
        self
    }

    pub fn with_cap(mut self, cap: Option<usize>) -> Self {
        self.max_neighborhood = cap;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.epsilon.is_finite() && self.epsilon > 0.0) {
            return Err(Error::argument(format!(
                "epsilon must be positive, got {}",
                self.epsilon
            )));
        }
        if self.max_neighborhood == Some(0) {
            return Err(Error::argument("neighborhood cap must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopReason {
    /// The best candidate did not lower the entropy by more than `ε/2`.
    Threshold,
    /// The neighbourhood cap was hit while a qualifying candidate remained.
    Cap,
    /// Every other vertex was already selected.
    Exhausted,
}

impl fmt::Display for StopReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StopReason::Threshold => "threshold",
            StopReason::Cap => "cap",
            StopReason::Exhausted => "exhausted",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Pick {
    pub vertex: usize,
    pub entropy_before: f64,
    pub entropy_after: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborhoodTrace {
    pub node: usize,
    pub picks: Vec<Pick>,
    pub stop_reason: StopReason,
}

impl NeighborhoodTrace {
    /// Selected vertices in pick order.
    pub fn selected(&self) -> Vec<usize> {
        self.picks.iter().map(|p| p.vertex).collect()
    }

    /// Selected vertices, ascending.
    pub fn neighborhood(&self) -> Vec<usize> {
        let mut v = self.selected();
        v.sort_unstable();
        v
    }
}

fn serialize_edges<S: Serializer>(g: &MarkovGraph, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(g.edges().map(|(u, v)| [u, v]))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LearnResult {
    pub config: LearnerConfig,
    pub traces: Vec<NeighborhoodTrace>,
    /// Neighbourhood used for assembly (after pruning when enabled), ascending.
    pub neighborhoods: Vec<Vec<usize>>,
    #[serde(rename = "edges", serialize_with = "serialize_edges")]
    pub graph: MarkovGraph,
    /// `(i, j)` with `j ∈ N̂(i)` but `i ∉ N̂(j)`, ascending.
    pub asymmetric_pairs: Vec<(usize, usize)>,
}

impl LearnResult {
    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    /// One line per vertex: picks with before/after entropies and the stop reason.
    pub fn trace_text(&self, names: Option<&[String]>) -> String {
        let name = |v: usize| match names {
            Some(n) => n[v].clone(),
            None => v.to_string(),
        };
        let mut out = String::new();
        for t in &self.traces {
            out.push_str(&format!("node {}:", name(t.node)));
            for p in &t.picks {
                out.push_str(&format!(
                    " {} ({:.6} -> {:.6})",
                    name(p.vertex),
                    p.entropy_before,
                    p.entropy_after
                ));
            }
            out.push_str(&format!(" [stop: {}]\n", t.stop_reason));
        }
        out
    }
}

fn check_source(src: &DistributionSource<'_>, i: usize) -> Result<usize> {
    let p = src.p();
    if p < 2 {
        return Err(Error::argument(
            "structure learning needs at least 2 variables",
        ));
    }
    if i >= p {
        return Err(Error::Bounds { index: i, p });
    }
    Ok(p)
}

/// Greedily grows `N̂(i)` from the empty set.
///
/// Each round scores every remaining vertex `k` by `H(X_i | X_N̂, X_k)` and
/// keeps the smallest; it is accepted only if it beats the current
/// `H(X_i | X_N̂)` by more than `ε/2`.
pub fn greedy_neighborhood(
    src: &DistributionSource<'_>,
    i: usize,
    cfg: &LearnerConfig,
) -> Result<NeighborhoodTrace> {
    cfg.validate()?;
    let p = check_source(src, i)?;
    let half = cfg.epsilon / 2.0;
    let mut chosen: Vec<usize> = Vec::new();
    let mut in_set = vec![false; p];
    in_set[i] = true;
    let mut current = conditional_entropy(src, i, &[])?;
    let mut picks = Vec::new();
    let stop_reason = loop {
        let candidates: Vec<usize> = (0..p).filter(|k| !in_set[*k]).collect();
        if candidates.is_empty() {
            break StopReason::Exhausted;
        }
        let mut best: Option<(usize, f64)> = None;
        let mut set = chosen.clone();
        for &k in &candidates {
            set.push(k);
            let h = conditional_entropy(src, i, &set)?;
            set.pop();
            match best {
                Some((_, hb)) if h >= hb - TIE_TOLERANCE => {}
                _ => best = Some((k, h)),
            }
        }
        let (k, h) = best.expect("nonempty candidates");
        // NaN never qualifies
        if h.partial_cmp(&(current - half)) != Some(std::cmp::Ordering::Less) {
            break StopReason::Threshold;
        }
        if cfg.max_neighborhood.is_some_and(|cap| chosen.len() >= cap) {
            break StopReason::Cap;
        }
        picks.push(Pick {
            vertex: k,
            entropy_before: current,
            entropy_after: h,
        });
        chosen.push(k);
        in_set[k] = true;
        current = h;
    };
    Ok(NeighborhoodTrace {
        node: i,
        picks,
        stop_reason,
    })
}

/// Repeatedly drops the member of `candidates` whose removal raises
/// `H(X_i | X_set)` the least, as long as that rise is at most `ε/2`.
pub fn prune_neighborhood(
    src: &DistributionSource<'_>,
    i: usize,
    candidates: &[usize],
    cfg: &LearnerConfig,
) -> Result<Vec<usize>> {
    cfg.validate()?;
    let p = check_source(src, i)?;
    let mut set: Vec<usize> = candidates.to_vec();
    set.sort_unstable();
    set.dedup();
    if let Some(&bad) = set.iter().find(|v| **v >= p) {
        return Err(Error::Bounds { index: bad, p });
    }
    if set.contains(&i) {
        return Err(Error::argument(format!(
            "vertex {i} cannot be its own neighbor"
        )));
    }
    let half = cfg.epsilon / 2.0;
    while !set.is_empty() {
        let full = conditional_entropy(src, i, &set)?;
        let mut weakest: Option<(usize, f64)> = None;
        for pos in 0..set.len() {
            let mut rest = set.clone();
            rest.remove(pos);
            let gain = conditional_entropy(src, i, &rest)? - full;
            match weakest {
                Some((_, g)) if gain >= g - TIE_TOLERANCE => {}
                _ => weakest = Some((pos, gain)),
            }
        }
        let (pos, gain) = weakest.expect("nonempty set");
        if gain > half {
            break;
        }
        set.remove(pos);
    }
    Ok(set)
}

/// Combines per-vertex neighbourhoods into a graph.
///
/// Returns the graph and the ordered pairs `(i, j)` with `j ∈ N̂(i)`, `i ∉ N̂(j)`.
pub fn symmetrize(
    neighborhoods: &[Vec<usize>],
    rule: Symmetrization,
) -> Result<(MarkovGraph, Vec<(usize, usize)>)> {
    let p = neighborhoods.len();
    let mut member = vec![vec![false; p]; p];
    for (i, nb) in neighborhoods.iter().enumerate() {
        for &j in nb {
            if j >= p {
                return Err(Error::Bounds { index: j, p });
            }
            member[i][j] = true;
        }
    }
    let mut graph = MarkovGraph::empty(p);
    let mut asymmetric = Vec::new();
    for (i, row) in member.iter().enumerate() {
        for (j, &ij) in row.iter().enumerate() {
            if i == j {
                continue;
            }
            let ji = member[j][i];
            if ij && !ji {
                asymmetric.push((i, j));
            }
            let keep = match rule {
                Symmetrization::And => ij && ji,
                Symmetrization::Or => ij || ji,
            };
            if keep && i < j {
                graph.add_edge(i, j)?;
            }
        }
    }
    Ok((graph, asymmetric))
}

/// Runs the greedy search at every vertex (in parallel) and assembles a graph.
pub fn learn_structure(src: &DistributionSource<'_>, cfg: &LearnerConfig) -> Result<LearnResult> {
    cfg.validate()?;
    let p = src.p();
    check_source(src, 0)?;
    let per_node: Vec<(NeighborhoodTrace, Vec<usize>)> = (0..p)
        .into_par_iter()
        .map(|i| {
            let trace = greedy_neighborhood(src, i, cfg)?;
            let nb = if cfg.prune {
                prune_neighborhood(src, i, &trace.selected(), cfg)?
            } else {
                trace.neighborhood()
            };
            Ok((trace, nb))
        })
        .collect::<Result<_>>()?;
    let (traces, neighborhoods): (Vec<_>, Vec<_>) = per_node.into_iter().unzip();
    let (graph, asymmetric_pairs) = symmetrize(&neighborhoods, cfg.symmetrization)?;
    Ok(LearnResult {
        config: *cfg,
        traces,
        neighborhoods,
        graph,
        asymmetric_pairs,
    })
}

/// Maximum-weight spanning tree under pairwise mutual information.
///
/// Weights equal to within [`TIE_TOLERANCE`] are ordered by `(u, v)`.
pub fn chow_liu(src: &DistributionSource<'_>) -> Result<MarkovGraph> {
    let p = check_source(src, 0)?;
    let pairs: Vec<(usize, usize)> = (0..p)
        .flat_map(|u| (u + 1..p).map(move |v| (u, v)))
        .collect();
    let weights: Vec<f64> = pairs
        .par_iter()
        .map(|&(u, v)| mutual_information(src, u, v))
        .collect::<Result<_>>()?;
    let mut order: Vec<usize> = (0..pairs.len()).collect();
    let quantized: Vec<i64> = weights
        .iter()
        .map(|w| (w / TIE_TOLERANCE).round() as i64)
        .collect();
    order.sort_by(|&a, &b| {
        quantized[b]
            .cmp(&quantized[a])
            .then(pairs[a].cmp(&pairs[b]))
    });

    let mut parent: Vec<usize> = (0..p).collect();
    fn root(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut tree = MarkovGraph::empty(p);
    for idx in order {
        let (u, v) = pairs[idx];
        let (ru, rv) = (root(&mut parent, u), root(&mut parent, v));
        if ru != rv {
            parent[ru] = rv;
            tree.add_edge(u, v)?;
            if tree.edge_count() + 1 == p {
                break;
            }
        }
    }
    Ok(tree)
}

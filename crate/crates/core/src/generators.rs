//! Topologies and edge-weight rules for synthetic Ising models.
//!
//! Specs have a compact text form used on the command line:
//!
//! | family                    | text                      |
//! |---------------------------|---------------------------|
//! | `k × k` grid (row-major)  | `grid:K`                  |
//! | path on `p` vertices      | `chain:P`                 |
//! | cycle on `p` vertices     | `cycle:P`                 |
//! | complete `D`-ary tree     | `tree:D:DEPTH`            |
//! | star with `L` leaves      | `star:L`                  |
//! | two hubs over `D` middles | `counterexample:D`        |
//! | connected G(p, prob)      | `er:P:PROB:SEED`          |
//! | uniform random tree       | `random-tree:P:SEED`      |
//!
//! | weights                   | text                      |
//! |---------------------------|---------------------------|
//! | constant θ                | `const:THETA`             |
//! | uniform in `[lo, hi)`     | `uniform:LO:HI:SEED`      |
//! | `±θ` with random signs    | `signed:THETA:SEED`       |

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::models::{IsingModel, MarkovGraph};

/// Attempts at drawing a connected Erdős–Rényi graph before giving up.
pub const ER_MAX_RETRIES: usize = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Family {
    Grid { k: usize },
    Chain { p: usize },
    Cycle { p: usize },
    CompleteDaryTree { d: usize, depth: usize },
    Star { leaves: usize },
    Counterexample { d: usize },
    ErdosRenyi { p: usize, prob: f64, seed: u64 },
    RandomTree { p: usize, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Weights {
    Constant { theta: f64 },
    UniformRange { lo: f64, hi: f64, seed: u64 },
    RandomSign { theta: f64, seed: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: Family,
    pub weights: Weights,
}

impl ModelSpec {
    pub fn new(family: Family, weights: Weights) -> Self {
        ModelSpec { family, weights }
    }

    pub fn build(&self) -> Result<IsingModel> {
        build(self)
    }
}

/// Builds the Ising model described by `spec`.
pub fn build(spec: &ModelSpec) -> Result<IsingModel> {
    let graph = build_graph(&spec.family)?;
    let edges: Vec<(usize, usize)> = graph.edges().collect();
    let thetas = assign_weights(&spec.weights, edges.len())?;
    let weighted: Vec<(usize, usize, f64)> = edges
        .iter()
        .zip(thetas)
        .map(|(&(u, v), t)| (u, v, t))
        .collect();
    IsingModel::from_edges(graph.p(), &weighted)
}

/// The graph of `family` alone.
pub fn build_graph(family: &Family) -> Result<MarkovGraph> {
    match *family {
        Family::Grid { k } => grid(k),
        Family::Chain { p } => chain(p),
        Family::Cycle { p } => cycle(p),
        Family::CompleteDaryTree { d, depth } => complete_dary_tree(d, depth),
        Family::Star { leaves } => star(leaves),
        Family::Counterexample { d } => counterexample(d),
        Family::ErdosRenyi { p, prob, seed } => erdos_renyi(p, prob, seed),
        Family::RandomTree { p, seed } => random_tree(p, seed),
    }
}

/// `k × k` lattice; vertex `(r, c)` is `r * k + c`.
pub fn grid(k: usize) -> Result<MarkovGraph> {
    if k < 2 {
        return Err(Error::argument("grid side must be at least 2"));
    }
    let mut edges = Vec::with_capacity(2 * k * (k - 1));
    for r in 0..k {
        for c in 0..k {
            let v = r * k + c;
            if c + 1 < k {
                edges.push((v, v + 1));
            }
            if r + 1 < k {
                edges.push((v, v + k));
            }
        }
    }
    MarkovGraph::new(k * k, edges)
}

pub fn chain(p: usize) -> Result<MarkovGraph> {
    if p < 2 {
        return Err(Error::argument("chain needs at least 2 vertices"));
    }
    MarkovGraph::new(p, (1..p).map(|v| (v - 1, v)))
}

pub fn cycle(p: usize) -> Result<MarkovGraph> {
    if p < 3 {
        return Err(Error::argument("cycle needs at least 3 vertices"));
    }
    MarkovGraph::new(p, (0..p).map(|v| (v, (v + 1) % p)))
}

/// Complete `d`-ary tree of the given depth, vertices in BFS order with the
/// root at 0 and the children of `v` at `d*v + 1 ..= d*v + d`.
pub fn complete_dary_tree(d: usize, depth: usize) -> Result<MarkovGraph> {
    if d < 1 || depth < 1 {
        return Err(Error::argument("tree arity and depth must be at least 1"));
    }
    let mut p = 0usize;
    let mut level = 1usize;
    for _ in 0..=depth {
        p = p
            .checked_add(level)
            .ok_or_else(|| Error::argument("tree too large"))?;
        level = level
            .checked_mul(d)
            .ok_or_else(|| Error::argument("tree too large"))?;
    }
    MarkovGraph::new(p, (1..p).map(|v| ((v - 1) / d, v)))
}

/// Hub 0 joined to leaves `1..=leaves`.
pub fn star(leaves: usize) -> Result<MarkovGraph> {
    if leaves < 1 {
        return Err(Error::argument("star needs at least one leaf"));
    }
    MarkovGraph::new(leaves + 1, (1..=leaves).map(|v| (0, v)))
}

/// Vertices `0` and `D+1` both joined to each of `1..=D`, and not to each other.
pub fn counterexample(d: usize) -> Result<MarkovGraph> {
    if d < 1 {
        return Err(Error::argument("counterexample needs D >= 1"));
    }
    MarkovGraph::new(d + 2, (1..=d).flat_map(|i| [(0, i), (i, d + 1)]))
}

/// `G(p, prob)`, redrawn until connected.
pub fn erdos_renyi(p: usize, prob: f64, seed: u64) -> Result<MarkovGraph> {
    if p < 2 {
        return Err(Error::argument("random graph needs at least 2 vertices"));
    }
    if !(prob > 0.0 && prob < 1.0) {
        return Err(Error::argument("edge probability must lie in (0, 1)"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ER_MAX_RETRIES {
        let mut g = MarkovGraph::empty(p);
        for u in 0..p {
            for v in u + 1..p {
                if rng.random::<f64>() < prob {
                    g.add_edge(u, v)?;
                }
            }
        }
        if g.is_connected() {
            return Ok(g);
        }
    }
    Err(Error::argument(format!(
        "no connected G({p}, {prob}) after {ER_MAX_RETRIES} draws"
    )))
}

/// Uniform labelled tree on `p` vertices via a random Prüfer sequence.
pub fn random_tree(p: usize, seed: u64) -> Result<MarkovGraph> {
    if p < 2 {
        return Err(Error::argument("random tree needs at least 2 vertices"));
    }
    if p == 2 {
        return MarkovGraph::new(2, [(0, 1)]);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let code: Vec<usize> = (0..p - 2).map(|_| rng.random_range(0..p)).collect();
    let mut degree = vec![1usize; p];
    for &c in &code {
        degree[c] += 1;
    }
    let mut edges = Vec::with_capacity(p - 1);
    for &c in &code {
        let leaf = (0..p).find(|v| degree[*v] == 1).expect("a leaf remains");
        edges.push((leaf, c));
        degree[leaf] -= 1;
        degree[c] -= 1;
    }
    let rest: Vec<usize> = (0..p).filter(|v| degree[*v] == 1).collect();
    edges.push((rest[0], rest[1]));
    MarkovGraph::new(p, edges)
}

/// Weights for `m` edges in sorted edge order.
pub fn assign_weights(weights: &Weights, m: usize) -> Result<Vec<f64>> {
    match *weights {
        Weights::Constant { theta } => {
            check_theta(theta)?;
            Ok(vec![theta; m])
        }
        Weights::UniformRange { lo, hi, seed } => {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::argument("uniform range needs finite lo < hi"));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut out = Vec::with_capacity(m);
            while out.len() < m {
                let t = lo + (hi - lo) * rng.random::<f64>();
                if t != 0.0 {
                    out.push(t);
                }
            }
            Ok(out)
        }
        Weights::RandomSign { theta, seed } => {
            check_theta(theta)?;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Ok((0..m)
                .map(|_| if rng.random::<bool>() { theta } else { -theta })
                .collect())
        }
    }
}

fn check_theta(theta: f64) -> Result<()> {
    if theta.is_finite() && theta != 0.0 {
        Ok(())
    } else {
        Err(Error::argument(format!(
            "edge weight {theta} must be finite and nonzero"
        )))
    }
}

fn field<T: FromStr>(parts: &[&str], i: usize, what: &str, text: &str) -> Result<T> {
    parts
        .get(i)
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::argument(format!("bad {what} in '{text}'")))
}

fn arity(parts: &[&str], n: usize, text: &str) -> Result<()> {
    if parts.len() == n + 1 {
        Ok(())
    } else {
        Err(Error::argument(format!(
            "'{text}' expects {n} parameter(s) after '{}'",
            parts[0]
        )))
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let f = match parts[0] {
            "grid" => {
                arity(&parts, 1, s)?;
                Family::Grid {
                    k: field(&parts, 1, "side", s)?,
                }
            }
            "chain" => {
                arity(&parts, 1, s)?;
                Family::Chain {
                    p: field(&parts, 1, "length", s)?,
                }
            }
            "cycle" => {
                arity(&parts, 1, s)?;
                Family::Cycle {
                    p: field(&parts, 1, "length", s)?,
                }
            }
            "tree" => {
                arity(&parts, 2, s)?;
                Family::CompleteDaryTree {
                    d: field(&parts, 1, "arity", s)?,
                    depth: field(&parts, 2, "depth", s)?,
                }
            }
            "star" => {
                arity(&parts, 1, s)?;
                Family::Star {
                    leaves: field(&parts, 1, "leaf count", s)?,
                }
            }
            "counterexample" => {
                arity(&parts, 1, s)?;
                Family::Counterexample {
                    d: field(&parts, 1, "D", s)?,
                }
            }
            "er" => {
                arity(&parts, 3, s)?;
                Family::ErdosRenyi {
                    p: field(&parts, 1, "vertex count", s)?,
                    prob: field(&parts, 2, "edge probability", s)?,
                    seed: field(&parts, 3, "seed", s)?,
                }
            }
            "random-tree" => {
                arity(&parts, 2, s)?;
                Family::RandomTree {
                    p: field(&parts, 1, "vertex count", s)?,
                    seed: field(&parts, 2, "seed", s)?,
                }
            }
            other => return Err(Error::argument(format!("unknown model family '{other}'"))),
        };
        Ok(f)
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let w = match parts[0] {
            "const" => {
                arity(&parts, 1, s)?;
                Weights::Constant {
                    theta: field(&parts, 1, "theta", s)?,
                }
            }
            "uniform" => {
                arity(&parts, 3, s)?;
                Weights::UniformRange {
                    lo: field(&parts, 1, "lower bound", s)?,
                    hi: field(&parts, 2, "upper bound", s)?,
                    seed: field(&parts, 3, "seed", s)?,
                }
            }
            "signed" => {
                arity(&parts, 2, s)?;
                Weights::RandomSign {
                    theta: field(&parts, 1, "theta", s)?,
                    seed: field(&parts, 2, "seed", s)?,
                }
            }
            other => return Err(Error::argument(format!("unknown weight rule '{other}'"))),
        };
        Ok(w)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Grid { k } => write!(f, "grid:{k}"),
            Family::Chain { p } => write!(f, "chain:{p}"),
            Family::Cycle { p } => write!(f, "cycle:{p}"),
            Family::CompleteDaryTree { d, depth } => write!(f, "tree:{d}:{depth}"),
            Family::Star { leaves } => write!(f, "star:{leaves}"),
            Family::Counterexample { d } => write!(f, "counterexample:{d}"),
            Family::ErdosRenyi { p, prob, seed } => write!(f, "er:{p}:{prob}:{seed}"),
            Family::RandomTree { p, seed } => write!(f, "random-tree:{p}:{seed}"),
        }
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Weights::Constant { theta } => write!(f, "const:{theta}"),
            Weights::UniformRange { lo, hi, seed } => write!(f, "uniform:{lo}:{hi}:{seed}"),
            Weights::RandomSign { theta, seed } => write!(f, "signed:{theta}:{seed}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::girth;

    fn spec(f: &str, w: &str) -> ModelSpec {
        ModelSpec::new(f.parse().unwrap(), w.parse().unwrap())
    }

    #[test]
    fn grid3_shape() {
        let m = spec("grid:3", "const:0.5").build().unwrap();
        assert_eq!(m.p(), 9);
        assert_eq!(m.graph().edge_count(), 12);
        assert_eq!(girth(m.graph()), Some(4));
        assert!(m.thetas().values().all(|t| *t == 0.5));
        // row-major: (0,0)-(0,1) and (0,0)-(1,0)
        assert!(m.graph().has_edge(0, 1) && m.graph().has_edge(0, 3));
        assert!(!m.graph().has_edge(2, 3));
    }

    #[test]
    fn chain3_edges() {
        let g = chain(3).unwrap();
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 1), (1, 2)]);
        assert_eq!(girth(&g), None);
    }

    #[test]
    fn counterexample_degrees() {
        let g = counterexample(8).unwrap();
        assert_eq!(g.p(), 10);
        assert_eq!(g.edge_count(), 16);
        assert_eq!(g.degree(0), 8);
        assert_eq!(g.degree(9), 8);
        assert!((1..=8).all(|v| g.degree(v) == 2));
        assert!(!g.has_edge(0, 9));
        assert_eq!(girth(&g), Some(4));
    }

    #[test]
    fn girths_by_family() {
        for k in 2..6 {
            assert_eq!(girth(&grid(k).unwrap()), Some(4));
        }
        for p in 3..9 {
            assert_eq!(girth(&cycle(p).unwrap()), Some(p));
        }
        assert_eq!(girth(&complete_dary_tree(3, 3).unwrap()), None);
        for d in 2..6 {
            assert_eq!(girth(&counterexample(d).unwrap()), Some(4));
        }
    }

    #[test]
    fn dary_tree_layout() {
        let g = complete_dary_tree(3, 2).unwrap();
        assert_eq!(g.p(), 13);
        assert_eq!(g.degree(0), 3);
        assert_eq!(g.max_degree(), 4);
        assert!(g.has_edge(1, 4) && g.has_edge(3, 12));
        assert_eq!(complete_dary_tree(2, 3).unwrap().p(), 15);
    }

    #[test]
    fn random_families_are_seeded() {
        let a = erdos_renyi(12, 0.3, 5).unwrap();
        assert!(a.is_connected());
        assert_eq!(a, erdos_renyi(12, 0.3, 5).unwrap());
        let t = random_tree(20, 9).unwrap();
        assert_eq!(t.edge_count(), 19);
        assert!(t.is_connected());
        assert_eq!(t, random_tree(20, 9).unwrap());
    }

    #[test]
    fn weight_rules() {
        let m = spec("grid:3", "uniform:0.1:0.3:4").build().unwrap();
        assert!(m.thetas().values().all(|t| (0.1..0.3).contains(t)));
        assert_eq!(m, spec("grid:3", "uniform:0.1:0.3:4").build().unwrap());
        let s = spec("cycle:40", "signed:0.5:2").build().unwrap();
        assert!(s.thetas().values().all(|t| t.abs() == 0.5));
        assert!(s.thetas().values().any(|t| *t < 0.0));
        assert!(s.thetas().values().any(|t| *t > 0.0));
    }

    #[test]
    fn dary_tree_under_decay_range() {
        let d = 3usize;
        let hi = std::f64::consts::LN_2 / (2.0 * d as f64);
        let m = ModelSpec::new(
            Family::CompleteDaryTree { d, depth: 2 },
            Weights::UniformRange {
                lo: 0.0,
                hi,
                seed: 1,
            },
        )
        .build()
        .unwrap();
        assert!(m.thetas().values().all(|t| t.abs() < hi && *t != 0.0));
    }

    #[test]
    fn invalid_parameters() {
        assert!(grid(1).is_err());
        assert!(counterexample(0).is_err());
        assert!(complete_dary_tree(2, 0).is_err());
        assert!(erdos_renyi(5, 1.0, 0).is_err());
        assert!(erdos_renyi(5, 0.0, 0).is_err());
        assert!("const:0"
            .parse::<Weights>()
            .unwrap()
            .eq(&Weights::Constant { theta: 0.0 }));
        assert!(spec("chain:3", "const:0").build().is_err());
        assert!("blob:3".parse::<Family>().is_err());
        assert!("grid:3:4".parse::<Family>().is_err());
        assert!("grid:x".parse::<Family>().is_err());
    }

    #[test]
    fn text_round_trip() {
        for s in [
            "grid:3",
            "chain:5",
            "cycle:7",
            "tree:2:3",
            "star:4",
            "counterexample:8",
            "er:10:0.3:42",
            "random-tree:8:7",
        ] {
            assert_eq!(s.parse::<Family>().unwrap().to_string(), s);
        }
        for s in ["const:0.5", "uniform:0.1:0.4:3", "signed:0.25:9"] {
            assert_eq!(s.parse::<Weights>().unwrap().to_string(), s);
        }
    }
}

//! Zero-field Ising models: exact enumeration and single-site Gibbs sampling.
//!
//! Spins are stored as alphabet indices with 0 for -1 and 1 for +1.

use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::graph::{Adjacency, MarkovGraph};
use super::joint::{JointDistribution, ENUMERATION_CAP};
use crate::dataset::{Alphabet, DiscreteDataset};
use crate::error::{Error, Result};

/// Spin value (`-1` or `+1`) of alphabet index `x`.
#[inline]
pub fn spin(x: u16) -> f64 {
    if x == 0 {
        -1.0
    } else {
        1.0
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IsingModel {
    graph: MarkovGraph,
    theta: BTreeMap<(usize, usize), f64>,
    // per-vertex (neighbor, theta) lists for fast local fields
    couplings: Vec<Vec<(usize, f64)>>,
}

impl IsingModel {
    /// `theta` must have exactly one nonzero finite entry per graph edge,
    /// keyed `(u, v)` with `u < v`.
    pub fn new(graph: MarkovGraph, theta: BTreeMap<(usize, usize), f64>) -> Result<Self> {
        if theta.len() != graph.edge_count() || !graph.edges().all(|e| theta.contains_key(&e)) {
            return Err(Error::argument(
                "edge parameters must be keyed by exactly the graph's edges",
            ));
        }
        if let Some((e, t)) = theta.iter().find(|(_, t)| !(t.is_finite() && **t != 0.0)) {
            return Err(Error::argument(format!(
                "edge {e:?} has invalid parameter {t}"
            )));
        }
        let mut couplings = vec![Vec::new(); graph.p()];
        for (&(u, v), &t) in &theta {
            couplings[u].push((v, t));
            couplings[v].push((u, t));
        }
        couplings
            .iter_mut()
            .for_each(|c| c.sort_by_key(|(w, _)| *w));
        Ok(IsingModel {
            graph,
            theta,
            couplings,
        })
    }

    /// Builds the graph and parameters from `(u, v, theta)` triples.
    pub fn from_edges(p: usize, edges: &[(usize, usize, f64)]) -> Result<Self> {
        let graph = MarkovGraph::new(p, edges.iter().map(|(u, v, _)| (*u, *v)))?;
        let theta = edges
            .iter()
            .map(|(u, v, t)| ((*u.min(v), *u.max(v)), *t))
            .collect();
        Self::new(graph, theta)
    }

    /// Same graph with every edge set to `theta`.
    pub fn uniform(graph: MarkovGraph, theta: f64) -> Result<Self> {
        let params = graph.edges().map(|e| (e, theta)).collect();
        Self::new(graph, params)
    }

    pub fn graph(&self) -> &MarkovGraph {
        &self.graph
    }

    pub fn p(&self) -> usize {
        self.graph.p()
    }

    pub fn theta(&self, u: usize, v: usize) -> Option<f64> {
        self.theta.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn thetas(&self) -> &BTreeMap<(usize, usize), f64> {
        &self.theta
    }

    /// `(neighbor, theta)` pairs of vertex `v`.
    pub fn couplings(&self, v: usize) -> &[(usize, f64)] {
        &self.couplings[v]
    }

    /// `Σ_j θ_vj x_j` for spins given as alphabet indices.
    pub fn local_field(&self, v: usize, state: &[u16]) -> f64 {
        self.couplings[v]
            .iter()
            .map(|(w, t)| t * spin(state[*w]))
            .sum()
    }

    /// `P(X_v = +1 | x_rest) = σ(2 Σ_j θ_vj x_j)`.
    pub fn full_conditional_plus(&self, v: usize, state: &[u16]) -> f64 {
        logistic(2.0 * self.local_field(v, state))
    }

    /// `Σ_{ij} θ_ij x_i x_j` for a full state.
    pub fn energy(&self, state: &[u16]) -> f64 {
        self.theta
            .iter()
            .map(|(&(u, v), t)| t * spin(state[u]) * spin(state[v]))
            .sum()
    }

    /// Same model with vertex `v` renamed to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Self> {
        let edges: Vec<(usize, usize, f64)> = self
            .theta
            .iter()
            .map(|(&(u, v), t)| (perm[u], perm[v], *t))
            .collect();
        Self::from_edges(self.p(), &edges)
    }

    /// Dense joint `P(x) ∝ exp(Σ θ_ij x_i x_j)` over all `2^p` states.
    pub fn exact_joint(&self) -> Result<JointDistribution> {
        let p = self.p();
        if p > ENUMERATION_CAP {
            return Err(Error::Capacity(format!(
                "exact enumeration supports at most {ENUMERATION_CAP} variables, got {p}"
            )));
        }
        let edges: Vec<(usize, usize, f64)> =
            self.theta.iter().map(|(&(u, v), t)| (u, v, *t)).collect();
        let energy = |idx: usize| -> f64 {
            edges
                .iter()
                .map(|(u, v, t)| {
                    if ((idx >> u) ^ (idx >> v)) & 1 == 0 {
                        *t
                    } else {
                        -*t
                    }
                })
                .sum()
        };
        let mut logw: Vec<f64> = (0..1usize << p).into_par_iter().map(energy).collect();
        let max = logw.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        logw.par_iter_mut().for_each(|e| *e = (*e - max).exp());
        JointDistribution::from_weights(p, Alphabet::spins(), logw)
    }

    /// Single-site Gibbs chain; see [`GibbsConfig`].
    pub fn gibbs_sample(&self, n: usize, cfg: &GibbsConfig) -> Result<DiscreteDataset> {
        if n == 0 {
            return Err(Error::argument("sample count must be positive"));
        }
        if cfg.thinning == 0 {
            return Err(Error::argument("thinning must be at least one sweep"));
        }
        let p = self.p();
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        let mut state: Vec<u16> = (0..p).map(|_| u16::from(rng.random::<bool>())).collect();
        let sweep = |state: &mut Vec<u16>, rng: &mut ChaCha8Rng| {
            for v in 0..p {
                let plus = self.full_conditional_plus(v, state);
                state[v] = u16::from(rng.random::<f64>() < plus);
            }
        };
        for _ in 0..cfg.burn_in_sweeps(p) {
            sweep(&mut state, &mut rng);
        }
        let mut columns = vec![Vec::with_capacity(n); p];
        for _ in 0..n {
            for _ in 0..cfg.thinning {
                sweep(&mut state, &mut rng);
            }
            for (col, x) in columns.iter_mut().zip(&state) {
                col.push(*x);
            }
        }
        DiscreteDataset::from_columns(
            DiscreteDataset::default_names(p),
            Alphabet::spins(),
            columns,
        )
    }
}

impl Adjacency for IsingModel {
    fn vertex_count(&self) -> usize {
        self.graph.p()
    }

    fn neighbors(&self, v: usize) -> &[usize] {
        self.graph.neighbors(v)
    }
}

/// Gibbs chain settings. `burn_in` defaults to `1000 * p` sweeps.
#[derive(Debug, Clone, Copy)]
pub struct GibbsConfig {
    pub burn_in: Option<usize>,
    pub thinning: usize,
    pub seed: u64,
}

impl GibbsConfig {
    pub fn with_seed(seed: u64) -> Self {
        GibbsConfig {
            burn_in: None,
            thinning: 10,
            seed,
        }
    }

    pub fn burn_in_sweeps(&self, p: usize) -> usize {
        self.burn_in.unwrap_or(1000 * p)
    }
}

#[inline]
pub fn logistic(x: f64) -> f64 {
    1.0 / (1.0 + (-x).exp())
}

//! Markov graphs, factor graphs, zero-field Ising models and exact joints.

pub mod graph;
pub mod ising;
pub mod joint;
pub mod tree;

pub use graph::{
    bfs_distances, factor_graph, girth, graph_distance, maximal_cliques, Adjacency, FactorGraph,
    MarkovGraph,
};
pub use ising::{logistic, spin, GibbsConfig, IsingModel};
pub use joint::{exact_sample, JointDistribution, ENUMERATION_CAP};
pub use tree::{tree_conditional_plus, RootedTree};

//! Greedy structure learning for discrete Markov random fields.
//!
//! Each vertex's neighbourhood is grown one variable at a time by picking the
//! candidate that most reduces the empirical conditional entropy, stopping once
//! the best reduction falls below `ε/2`. Around the learner sit a dataset layer,
//! Ising model generators with exact and Gibbs samplers, an experiment harness
//! and calculators for the sample-complexity bounds.

pub mod cli;
pub mod contingency;
pub mod dataset;
pub mod entropy;
pub mod error;
pub mod generators;
pub mod learner;
pub mod models;
pub mod theory;

pub use dataset::{Alphabet, Assignment, DiscreteDataset, IngestOptions};
pub use entropy::{
    check_entropy_l1_bound, check_pinsker, conditional_entropy, entropy, l1_distance,
    mutual_information, DistributionSource, EntropyL1Check, PinskerCheck,
};
pub use error::{Error, Result};
pub use generators::{Family, ModelSpec, Weights};
pub use learner::{
    chow_liu, greedy_neighborhood, learn_structure, prune_neighborhood, LearnResult, LearnerConfig,
    NeighborhoodTrace, StopReason, Symmetrization,
};
pub use models::{Adjacency, GibbsConfig, IsingModel, JointDistribution, MarkovGraph};

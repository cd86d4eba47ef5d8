//! Learn a graph from a CSV of discrete samples.
//!
//! `cargo run --example learn_from_csv -- data.csv 0.05`
//!
//! Without arguments a chain of five spins is sampled and learned instead.

use greedy_mrf::dataset::load_csv;
use greedy_mrf::generators::chain;
use greedy_mrf::{learn_structure, DistributionSource, IngestOptions, IsingModel, LearnerConfig};

fn main() -> greedy_mrf::Result<()> {
    let mut args = std::env::args().skip(1);
    let data = match args.next() {
        Some(path) => load_csv(path, &IngestOptions::default())?,
        None => {
            let model = IsingModel::uniform(chain(5)?, 0.6)?;
            model.exact_joint()?.sample(5000, 1)?
        }
    };
    let epsilon: f64 = args.next().map_or(0.05, |s| s.parse().expect("epsilon"));

    let result = learn_structure(
        &DistributionSource::from(&data),
        &LearnerConfig::new(epsilon),
    )?;
    print!("{}", result.trace_text(Some(data.names())));
    println!();
    print!("{}", result.graph.to_dot(Some(data.names())));
    Ok(())
}

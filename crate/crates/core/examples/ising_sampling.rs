//! Exact enumeration and Gibbs sampling of the same model, compared by the
//! empirical agreement rate of each edge.

use greedy_mrf::generators::cycle;
use greedy_mrf::{GibbsConfig, IsingModel};

fn agreement(data: &greedy_mrf::DiscreteDataset, u: usize, v: usize) -> f64 {
    let same = data
        .column(u)
        .iter()
        .zip(data.column(v))
        .filter(|(a, b)| a == b)
        .count();
    same as f64 / data.n() as f64
}

fn main() -> greedy_mrf::Result<()> {
    let model = IsingModel::uniform(cycle(6)?, 0.4)?;
    let exact = model.exact_joint()?.sample(20_000, 3)?;
    let gibbs = model.gibbs_sample(20_000, &GibbsConfig::with_seed(3))?;

    println!("edge    exact   gibbs");
    for (u, v) in model.graph().edges() {
        println!(
            "{u}-{v}     {:.4}  {:.4}",
            agreement(&exact, u, v),
            agreement(&gibbs, u, v)
        );
    }
    Ok(())
}

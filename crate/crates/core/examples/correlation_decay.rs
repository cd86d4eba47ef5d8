//! How much a node's conditional law moves when far-away variables are fixed,
//! by graph distance, and the same quantity on regular trees via field sets.

use greedy_mrf::generators::{complete_dary_tree, cycle};
use greedy_mrf::models::RootedTree;
use greedy_mrf::theory::{measure_decay_profile, tree_decay_exhaustive};
use greedy_mrf::IsingModel;

fn main() -> greedy_mrf::Result<()> {
    let model = IsingModel::uniform(cycle(10)?, 0.5)?;
    let joint = model.exact_joint()?;
    let prof = measure_decay_profile(&joint, model.graph(), 0, 2)?;
    println!("cycle:10 node 0");
    for (dist, dev) in &prof.by_distance {
        println!("  distance {dist}: {dev:.6}");
    }

    let d = 3;
    let theta = 0.9 * std::f64::consts::LN_2 / (2.0 * d as f64);
    for depth in 1..=3 {
        let model = IsingModel::uniform(complete_dary_tree(d, depth)?, theta)?;
        let decay = tree_decay_exhaustive(&RootedTree::new(&model, 0)?)?;
        println!(
            "tree:{d}:{depth}: root {:.3e}, child {:.3e}",
            decay.root, decay.child
        );
    }
    Ok(())
}

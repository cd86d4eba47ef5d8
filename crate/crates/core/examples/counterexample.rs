//! The two-hub construction where plain greedy first picks a non-neighbor.
//! Node 0 is joined to hubs, every hub also touches node `d + 1`.
//! With strong couplings the far node explains more of node 0 than any single hub.

use greedy_mrf::generators::counterexample;
use greedy_mrf::{greedy_neighborhood, prune_neighborhood, Adjacency, IsingModel, LearnerConfig};

fn main() -> greedy_mrf::Result<()> {
    for d in 2..=6 {
        let model = IsingModel::uniform(counterexample(d)?, 0.9)?;
        let joint = model.exact_joint()?;
        let src = (&joint).into();
        let cfg = LearnerConfig::new(0.001);
        let trace = greedy_neighborhood(&src, 0, &cfg)?;
        let pruned = prune_neighborhood(&src, 0, &trace.selected(), &cfg)?;
        println!(
            "d={d}: first pick {:?}, selected {:?}, after pruning {:?}, truth {:?}",
            trace.picks.first().map(|p| p.vertex),
            trace.neighborhood(),
            pruned,
            model.graph().neighbors(0),
        );
    }
    Ok(())
}

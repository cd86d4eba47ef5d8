//! Greedy selection against the exact distribution of a small grid, with the
//! threshold set from the measured non-degeneracy gap.

use greedy_mrf::theory::model_nondegeneracy;
use greedy_mrf::{learn_structure, LearnerConfig, ModelSpec};

fn main() -> greedy_mrf::Result<()> {
    let spec = ModelSpec::new("grid:3".parse()?, "const:0.5".parse()?);
    let model = spec.build()?;
    let joint = model.exact_joint()?;

    let gap = model_nondegeneracy(&joint, model.graph())?;
    println!("{}: gap {gap:.6}", spec.family);

    let result = learn_structure(&(&joint).into(), &LearnerConfig::new(gap / 2.0))?;
    print!("{}", result.trace_text(None));
    println!("recovered: {}", &result.graph == model.graph());
    Ok(())
}

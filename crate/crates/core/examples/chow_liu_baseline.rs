use greedy_mrf::theory::model_nondegeneracy;
use greedy_mrf::{chow_liu, learn_structure, Family, LearnerConfig, ModelSpec, Weights};

fn main() -> greedy_mrf::Result<()> {
    for seed in 0..5 {
        let spec = ModelSpec::new(
            Family::RandomTree { p: 10, seed },
            Weights::UniformRange {
                lo: 0.3,
                hi: 0.8,
                seed,
            },
        );
        let model = spec.build()?;
        let joint = model.exact_joint()?;
        let src = (&joint).into();
        let gap = model_nondegeneracy(&joint, model.graph())?;

        let greedy = learn_structure(&src, &LearnerConfig::new(gap / 2.0))?.graph;
        let tree = chow_liu(&src)?;
        println!(
            "{}: greedy == chow-liu: {}, both correct: {}",
            spec.family,
            greedy == tree,
            &tree == model.graph() && greedy == tree
        );
    }
    Ok(())
}

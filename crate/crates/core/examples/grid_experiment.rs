//! Success rate against sample count on a 3x3 grid.

use greedy_mrf::cli::{run_experiment, ExperimentSpec, RESULTS_HEADER};
use greedy_mrf::ModelSpec;

fn main() -> greedy_mrf::Result<()> {
    let model = ModelSpec::new("grid:3".parse()?, "const:0.5".parse()?);
    let mut spec = ExperimentSpec::new(model, vec![200, 400, 800, 1600], vec![0.03, 0.05]);
    spec.trials = 20;
    spec.seed = 7;

    println!("{RESULTS_HEADER}");
    let result = run_experiment(&spec, &mut |row| {
        println!("{}", row.csv_row());
        Ok(())
    })?;
    for eps in &spec.epsilons {
        println!("eps={eps}: min n = {:?}", result.min_n(*eps));
    }
    Ok(())
}

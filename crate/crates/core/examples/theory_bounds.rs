use greedy_mrf::theory::{bound_reports, BoundParams, LogBase};

fn main() -> greedy_mrf::Result<()> {
    let params = BoundParams {
        epsilon: Some(0.05),
        beta: Some(0.1),
        gamma: Some(0.3),
        degree: 3,
        alphabet: 2,
        p: Some(100),
        delta: Some(0.05),
        log_base: LogBase::Two,
    };
    for r in bound_reports(&params)? {
        println!("{:<20} {:<24e} {}", r.name, r.value, r.formula_ref);
    }
    Ok(())
}

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::json;

use super::{out_dir, write_file, LearnerFlags, MODEL_HELP, THETA_HELP};
use crate::entropy::DistributionSource;
use crate::error::{Error, Result};
use crate::generators::{Family, ModelSpec, Weights};
use crate::learner::{learn_structure, LearnerConfig};
use crate::models::{GibbsConfig, MarkovGraph, ENUMERATION_CAP};

pub const RESULTS_HEADER: &str = "n,epsilon,trials,successes,success_rate,mean_runtime_s";

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Sampler {
    /// i.i.d. draws from the enumerated joint (p <= 24).
    Exact,
    /// Single-site Gibbs chain.
    Gibbs,
}

#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub model: ModelSpec,
    /// Strictly ascending sample counts.
    pub n_values: Vec<usize>,
    pub trials: usize,
    /// Thresholds tried on every dataset.
    pub epsilons: Vec<f64>,
    pub success_target: f64,
    pub seed: u64,
    pub sampler: Sampler,
    pub gibbs_burn_in: Option<usize>,
    pub gibbs_thinning: usize,
    /// Learner settings; `epsilon` is replaced by each entry of `epsilons`.
    pub learner: LearnerConfig,
    /// Record wall-clock learning time (otherwise runtimes are written as 0).
    pub timing: bool,
    /// Run the trials of a cell concurrently.
    pub parallel_trials: bool,
}

impl ExperimentSpec {
    pub fn new(model: ModelSpec, n_values: Vec<usize>, epsilons: Vec<f64>) -> Self {
        ExperimentSpec {
            model,
            n_values,
            trials: 50,
            epsilons,
            success_target: 0.95,
            seed: 0,
            sampler: Sampler::Exact,
            gibbs_burn_in: None,
            gibbs_thinning: 10,
            learner: LearnerConfig::new(1.0),
            timing: true,
            parallel_trials: true,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n_values.is_empty() || self.n_values.contains(&0) {
            return Err(Error::argument("need at least one positive sample count"));
        }
        if self.n_values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::argument("sample counts must be strictly ascending"));
        }
        if self.trials == 0 {
            return Err(Error::argument("trials must be at least 1"));
        }
        if !(self.success_target > 0.0 && self.success_target <= 1.0) {
            return Err(Error::argument("success target must lie in (0, 1]"));
        }
        if self.epsilons.is_empty() {
            return Err(Error::argument("need at least one epsilon"));
        }
        for &e in &self.epsilons {
            LearnerConfig {
                epsilon: e,
                ..self.learner
            }
            .validate()?;
        }
        Ok(())
    }
}

/// Aggregate over the trials of one `(n, ε)` cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CellResult {
    pub n: usize,
    pub epsilon: f64,
    pub trials: usize,
    pub successes: usize,
    pub success_rate: f64,
    pub mean_runtime_s: f64,
    pub mean_precision: f64,
    pub mean_recall: f64,
}

impl CellResult {
    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{:.6}",
            self.n,
            self.epsilon,
            self.trials,
            self.successes,
            self.success_rate,
            self.mean_runtime_s
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    /// One row per `(n, ε)`, `n` ascending then `ε` in spec order.
    pub rows: Vec<CellResult>,
    pub success_target: f64,
}

impl ExperimentResult {
    pub fn rows_for(&self, epsilon: f64) -> impl Iterator<Item = &CellResult> {
        self.rows.iter().filter(move |r| r.epsilon == epsilon)
    }

    /// Smallest `n` whose success rate reaches the target at this `ε`.
    pub fn min_n(&self, epsilon: f64) -> Option<usize> {
        self.rows_for(epsilon)
            .find(|r| r.success_rate >= self.success_target)
            .map(|r| r.n)
    }

    /// Per `n`, the row with the highest success rate (earliest `ε` on ties).
    pub fn best_by_n(&self) -> Vec<&CellResult> {
        let mut out: Vec<&CellResult> = Vec::new();
        for r in &self.rows {
            match out.last_mut() {
                Some(best) if best.n == r.n => {
                    if r.success_rate > best.success_rate {
                        *best = r;
                    }
                }
                _ => out.push(r),
            }
        }
        out
    }

    /// Largest drop of the success rate below an earlier (smaller-`n`) value.
    pub fn worst_drop(&self, epsilon: f64) -> f64 {
        let mut peak: f64 = 0.0;
        let mut drop: f64 = 0.0;
        for r in self.rows_for(epsilon) {
            drop = drop.max(peak - r.success_rate);
            peak = peak.max(r.success_rate);
        }
        drop
    }
}

struct TrialOutcome {
    success: bool,
    precision: f64,
    recall: f64,
    runtime: f64,
}

fn score(learned: &MarkovGraph, truth: &MarkovGraph) -> (f64, f64) {
    let hit = learned
        .edges()
        .filter(|(u, v)| truth.has_edge(*u, *v))
        .count() as f64;
    let precision = if learned.edge_count() == 0 {
        1.0
    } else {
        hit / learned.edge_count() as f64
    };
    let recall = if truth.edge_count() == 0 {
        1.0
    } else {
        hit / truth.edge_count() as f64
    };
    (precision, recall)
}

/// Runs the full `(n, ε, trial)` grid. `on_row` sees each cell as soon as
/// it is complete. Trial `t` draws its dataset with seed `seed ^ t` for every `n`.
pub fn run_experiment(
    spec: &ExperimentSpec,
    on_row: &mut dyn FnMut(&CellResult) -> Result<()>,
) -> Result<ExperimentResult> {
    spec.validate()?;
    let model = spec.model.build()?;
    let truth = model.graph();
    let joint = match spec.sampler {
        Sampler::Exact => Some(model.exact_joint()?),
        Sampler::Gibbs => None,
    };
    let mut rows = Vec::new();
    for &n in &spec.n_values {
        let trial = |t: usize| -> Result<Vec<TrialOutcome>> {
            let seed = spec.seed ^ t as u64;
            let data = match &joint {
                Some(j) => j.sample(n, seed)?,
                None => model.gibbs_sample(
                    n,
                    &GibbsConfig {
                        burn_in: spec.gibbs_burn_in,
                        thinning: spec.gibbs_thinning,
                        seed,
                    },
                )?,
            };
            let src = DistributionSource::Empirical(&data);
            spec.epsilons
                .iter()
                .map(|&epsilon| {
                    let cfg = LearnerConfig {
                        epsilon,
                        ..spec.learner
                    };
                    let start = Instant::now();
                    let learned = learn_structure(&src, &cfg)?.graph;
                    let runtime = start.elapsed().as_secs_f64();
                    let (precision, recall) = score(&learned, truth);
                    Ok(TrialOutcome {
                        success: &learned == truth,
                        precision,
                        recall,
                        runtime,
                    })
                })
                .collect()
        };
        let outcomes: Vec<Vec<TrialOutcome>> = if spec.parallel_trials {
            (0..spec.trials)
                .into_par_iter()
                .map(trial)
                .collect::<Result<_>>()?
        } else {
            (0..spec.trials).map(trial).collect::<Result<_>>()?
        };
        for (k, &epsilon) in spec.epsilons.iter().enumerate() {
            let cell: Vec<&TrialOutcome> = outcomes.iter().map(|o| &o[k]).collect();
            let m = spec.trials as f64;
            let successes = cell.iter().filter(|o| o.success).count();
            let row = CellResult {
                n,
                epsilon,
                trials: spec.trials,
                successes,
                success_rate: successes as f64 / m,
                mean_runtime_s: if spec.timing {
                    cell.iter().map(|o| o.runtime).sum::<f64>() / m
                } else {
                    0.0
                },
                mean_precision: cell.iter().map(|o| o.precision).sum::<f64>() / m,
                mean_recall: cell.iter().map(|o| o.recall).sum::<f64>() / m,
            };
            on_row(&row)?;
            rows.push(row);
        }
    }
    Ok(ExperimentResult {
        rows,
        success_target: spec.success_target,
    })
}

#[derive(Debug, Clone, Args)]
pub struct ExperimentArgs {
    #[arg(long, help = MODEL_HELP)]
    pub model: Family,
    #[arg(long, default_value = "const:0.5", help = THETA_HELP)]
    pub theta: Weights,
    /// Comma-separated, strictly ascending sample counts.
    #[arg(long = "n", value_delimiter = ',', required = true)]
    pub n_values: Vec<usize>,
    /// Comma-separated thresholds; more than one runs a sweep on the same datasets.
    #[arg(long, value_delimiter = ',', required = true)]
    pub epsilon: Vec<f64>,
    #[arg(long, default_value_t = 50)]
    pub trials: usize,
    /// Success rate that defines the minimal sample count in summary.json.
    #[arg(long, default_value_t = 0.95)]
    pub success_target: f64,
    /// Base seed; trial t uses seed XOR t.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampler; defaults to exact when p <= 24, otherwise gibbs.
    #[arg(long, value_enum)]
    pub sampler: Option<Sampler>,
    /// Gibbs burn-in sweeps (default 1000 * p).
    #[arg(long)]
    pub burn_in: Option<usize>,
    /// Gibbs sweeps between retained samples.
    #[arg(long, default_value_t = 10)]
    pub thinning: usize,
    /// Write zero runtimes so reruns are byte-identical.
    #[arg(long)]
    pub no_timing: bool,
    /// Output directory for results.csv and summary.json.
    #[arg(long, short, default_value = "out")]
    pub out: PathBuf,
    #[command(flatten)]
    pub learner: LearnerFlags,
}

impl ExperimentArgs {
    pub fn spec(&self) -> Result<ExperimentSpec> {
        let model = ModelSpec::new(self.model, self.theta);
        let sampler = match self.sampler {
            Some(s) => s,
            None if model.build()?.p() <= ENUMERATION_CAP => Sampler::Exact,
            None => Sampler::Gibbs,
        };
        Ok(ExperimentSpec {
            model,
            n_values: self.n_values.clone(),
            trials: self.trials,
            epsilons: self.epsilon.clone(),
            success_target: self.success_target,
            seed: self.seed,
            sampler,
            gibbs_burn_in: self.burn_in,
            gibbs_thinning: self.thinning,
            learner: self
                .learner
                .config(self.epsilon.first().copied().unwrap_or(1.0))?,
            timing: !self.no_timing,
            parallel_trials: true,
        })
    }
}

/// Writes `results.csv` row by row and `summary.json` at the end.
pub fn cmd_experiment(args: &ExperimentArgs) -> Result<ExperimentResult> {
    let spec = args.spec()?;
    spec.validate()?;
    let dir = out_dir(&args.out)?;
    let path = dir.join("results.csv");
    let file = File::create(&path).map_err(|e| Error::io(&path, e))?;
    let mut csv = BufWriter::new(file);
    let io = |e| Error::io(&path, e);
    writeln!(csv, "{RESULTS_HEADER}").map_err(io)?;
    let result = run_experiment(&spec, &mut |row| {
        writeln!(csv, "{}", row.csv_row()).map_err(io)?;
        csv.flush().map_err(io)
    })?;
    drop(csv);

    let per_epsilon: Vec<_> = spec
        .epsilons
        .iter()
        .map(|&e| json!({ "epsilon": e, "min_n": result.min_n(e) }))
        .collect();
    let per_n: Vec<_> = result
        .best_by_n()
        .iter()
        .map(|r| json!({ "n": r.n, "epsilon": r.epsilon, "success_rate": r.success_rate }))
        .collect();
    let summary = json!({
        "model": spec.model.family.to_string(),
        "theta": spec.model.weights.to_string(),
        "sampler": spec.sampler,
        "seed": spec.seed,
        "trials": spec.trials,
        "success_target": spec.success_target,
        "n_values": spec.n_values,
        "epsilons": spec.epsilons,
        "learner": spec.learner,
        "min_n_by_epsilon": per_epsilon,
        "best_epsilon_by_n": per_n,
        "rows": result.rows,
    });
    write_file(
        &dir,
        "summary.json",
        &(serde_json::to_string_pretty(&summary)? + "\n"),
    )?;
    Ok(result)
}

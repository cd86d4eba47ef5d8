//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

use std::fs;
use std::path::Path;
use std::process::Command;
use std::time::Instant;

use greedy_mrf::cli::{run_experiment, ExperimentSpec, Sampler};
use greedy_mrf::entropy::{
    check_entropy_l1_bound, check_pinsker, conditional_entropy, DistributionSource, EntropyL1Check,
};
use greedy_mrf::generators::{self, Family, ModelSpec, Weights};
use greedy_mrf::learner::{
    chow_liu, greedy_neighborhood, learn_structure, prune_neighborhood, LearnerConfig,
};
use greedy_mrf::models::{bfs_distances, factor_graph, IsingModel, JointDistribution, RootedTree};
use greedy_mrf::theory::{
    check_leaf_monotonicity, lemma5_rhs, lemma5_sample_bound, lemma6_epsilon, model_nondegeneracy,
    theorem1_h, theorem2_params, tree_decay_all_ones, tree_decay_exhaustive, LogBase,
};
use greedy_mrf::{Adjacency, Alphabet};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn exact_model(family: &str, theta: f64) -> (IsingModel, JointDistribution) {
    let spec = ModelSpec::new(family.parse().unwrap(), Weights::Constant { theta });
    let m = spec.build().unwrap();
    let j = m.exact_joint().unwrap();
    (m, j)
}

fn recovery_models() -> Vec<String> {
    let mut v: Vec<String> = (3..=8).map(|p| format!("chain:{p}")).collect();
    v.push("star:5".into());
    v.push("tree:2:3".into());
    v.extend((5..=9).map(|p| format!("cycle:{p}")));
    v.push("grid:3".into());
    v
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let mut details = Vec::new();
    for family in recovery_models() {
        let (m, j) = exact_model(&family, 0.5);
        let gap = model_nondegeneracy(&j, m.graph()).map_err(|e| e.to_string())?;
        ensure(gap > 0.0 && gap.is_finite(), || {
            format!("{family}: gap {gap}")
        })?;
        let r = learn_structure(&(&j).into(), &LearnerConfig::new(gap / 2.0))
            .map_err(|e| e.to_string())?;
        ensure(&r.graph == m.graph(), || {
            format!("{family}: learned {:?}", r.graph.edge_set())
        })?;
        details.push(format!("{family} gap={gap:.4}"));
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 60.0, || format!("took {secs:.1}s"))?;
    Ok(format!("{} models recovered in {secs:.1}s", details.len()))
}

fn first_pick(d: usize, theta: f64) -> Result<usize, String> {
    let (_, j) = exact_model(&format!("counterexample:{d}"), theta);
    let cfg = LearnerConfig::new(1e-9).with_cap(Some(1));
    let t = greedy_neighborhood(&(&j).into(), 0, &cfg).map_err(|e| e.to_string())?;
    t.picks
        .first()
        .map(|p| p.vertex)
        .ok_or_else(|| format!("D={d}: no pick"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    let mut threshold = None;
    for d in 1..=16 {
        if first_pick(d, 0.9)? == d + 1 {
            threshold = Some(d);
            break;
        }
    }
    let t = threshold.ok_or("first pick never switched to D+1 for D <= 16")?;
    for d in 1..t {
        let k = first_pick(d, 0.9)?;
        ensure((1..=d).contains(&k), || {
            format!("D={d}: first pick {k} is not a neighbor")
        })?;
    }
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 120.0, || format!("took {secs:.1}s"))?;
    Ok(format!(
        "D_thresh = {t} at theta = 0.9; D < {t} pick a true neighbor ({secs:.1}s)"
    ))
}

fn criterion_3() -> Outcome {
    let mut cases: Vec<(String, f64)> = recovery_models().into_iter().map(|f| (f, 0.5)).collect();
    cases.extend((2..=8).map(|d| (format!("counterexample:{d}"), 0.9)));
    let mut spurious = 0;
    for (family, theta) in &cases {
        let (m, j) = exact_model(family, *theta);
        let src = DistributionSource::from(&j);
        let gap = model_nondegeneracy(&j, m.graph()).map_err(|e| e.to_string())?;
        let cfg = LearnerConfig::new(gap / 2.0);
        for i in 0..m.p() {
            let truth: Vec<usize> = m.graph().neighbors(i).to_vec();
            let t = greedy_neighborhood(&src, i, &cfg).map_err(|e| e.to_string())?;
            let picks = t.neighborhood();
            ensure(truth.iter().all(|v| picks.contains(v)), || {
                format!("{family} node {i}: picks {picks:?} miss part of {truth:?}")
            })?;
            spurious += picks.len() - truth.len();
            let pruned = prune_neighborhood(&src, i, &picks, &cfg).map_err(|e| e.to_string())?;
            ensure(pruned == truth, || {
                format!("{family} node {i}: pruned {pruned:?} != {truth:?}")
            })?;
        }
    }
    ensure(spurious > 0, || {
        "no spurious picks exercised pruning".into()
    })?;
    Ok(format!(
        "{} models; {spurious} spurious picks, all removed by pruning",
        cases.len()
    ))
}

fn criterion_4() -> Outcome {
    let mut checked = 0;
    for seed in 0..24u64 {
        let p = 3 + (seed as usize % 8);
        let spec = ModelSpec::new(
            Family::RandomTree { p, seed },
            Weights::UniformRange {
                lo: 0.3,
                hi: 0.6,
                seed: seed + 100,
            },
        );
        let m = spec.build().unwrap();
        let j = m.exact_joint().unwrap();
        let src = DistributionSource::from(&j);
        let gap = model_nondegeneracy(&j, m.graph()).map_err(|e| e.to_string())?;
        let greedy = learn_structure(&src, &LearnerConfig::new(gap / 2.0))
            .map_err(|e| e.to_string())?
            .graph;
        let cl = chow_liu(&src).map_err(|e| e.to_string())?;
        ensure(greedy == cl, || {
            format!(
                "p={p} seed={seed}: greedy {:?} vs chow-liu {:?}",
                greedy.edge_set(),
                cl.edge_set()
            )
        })?;
        ensure(&cl == m.graph(), || {
            format!("p={p} seed={seed}: chow-liu missed the tree")
        })?;
        checked += 1;
    }
    Ok(format!(
        "{checked} random trees, greedy == Chow-Liu == truth"
    ))
}

fn random_joint(rng: &mut ChaCha8Rng, p: usize, k: usize) -> JointDistribution {
    let cells = k.pow(p as u32);
    let w: Vec<f64> = (0..cells)
        .map(|_| {
            let u: f64 = rng.random();
            if u < 0.1 {
                0.0
            } else {
                -u.ln()
            }
        })
        .collect();
    JointDistribution::from_weights(p, Alphabet::numeric(k).unwrap(), w).unwrap()
}

fn perturb(rng: &mut ChaCha8Rng, j: &JointDistribution, t: f64) -> JointDistribution {
    let noise: Vec<f64> = j
        .probs()
        .iter()
        .map(|_| -rng.random::<f64>().ln())
        .collect();
    let z: f64 = noise.iter().sum();
    let probs: Vec<f64> = j
        .probs()
        .iter()
        .zip(&noise)
        .map(|(p, n)| (1.0 - t) * p + t * n / z)
        .collect();
    JointDistribution::from_weights(j.p(), j.alphabet().clone(), probs).unwrap()
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let (mut applicable, mut pinsker) = (0, 0);
    for case in 0..1000 {
        let p = rng.random_range(3..=5);
        let k = rng.random_range(2..=3);
        let j = random_joint(&mut rng, p, k);
        let sampled;
        let src = if case % 2 == 0 {
            DistributionSource::from(&j)
        } else {
            sampled = j.sample(rng.random_range(20..400), case as u64).unwrap();
            DistributionSource::from(&sampled)
        };
        let mut vars: Vec<usize> = (0..p).collect();
        for s in (1..p).rev() {
            vars.swap(s, rng.random_range(0..=s));
        }
        let i = vars[0];
        let j_var = vars[1];
        let a: Vec<usize> = vars[2..2 + rng.random_range(0..=p - 2)].to_vec();
        let h_a = conditional_entropy(&src, i, &a).unwrap();
        let mut aj = a.clone();
        aj.push(j_var);
        let h_aj = conditional_entropy(&src, i, &aj).unwrap();
        ensure(h_aj <= h_a + 1e-12, || {
            format!("case {case}: {h_aj} > {h_a}")
        })?;

        let t = [0.01, 0.05, 0.2, 0.6][case % 4];
        let q = perturb(&mut rng, &j, t);
        let (ps, qs) = (DistributionSource::from(&j), DistributionSource::from(&q));
        let subset: Vec<usize> = vars[..rng.random_range(1..=p)].to_vec();
        match check_entropy_l1_bound(&ps, &qs, &subset).unwrap() {
            EntropyL1Check::Checked {
                lhs, rhs, holds, ..
            } => {
                applicable += 1;
                ensure(holds, || format!("case {case}: entropy gap {lhs} > {rhs}"))?;
            }
            EntropyL1Check::Inapplicable { .. } => {}
        }
        let pk = check_pinsker(&ps, &qs, &subset).unwrap();
        ensure(pk.holds, || {
            format!(
                "case {case}: KL {} below bound for L1 {}",
                pk.kl_bits, pk.l1
            )
        })?;
        pinsker += 1;
    }
    ensure(applicable > 100, || {
        format!("only {applicable} cases had L1 <= 1/2")
    })?;
    Ok(format!(
        "1000 conditioning cases; entropy/L1 bound on {applicable} cases, Pinsker on {pinsker}"
    ))
}

fn criterion_6() -> Outcome {
    let mut checked = 0;
    let mut tightest: f64 = 0.0;
    for d in [2usize, 3] {
        let theta = 0.9 * std::f64::consts::LN_2 / (2.0 * d as f64);
        for depth in 1..=5 {
            let g = generators::complete_dary_tree(d, depth).unwrap();
            let m = IsingModel::uniform(g, theta).unwrap();
            let tree = RootedTree::new(&m, 0).unwrap();
            let dec = if depth <= 3 {
                tree_decay_exhaustive(&tree)
            } else {
                tree_decay_all_ones(&tree)
            }
            .map_err(|e| e.to_string())?;
            let bound = 2f64.powf(-(depth as f64) / 3.0);
            ensure(dec.root < bound, || {
                format!(
                    "D={d} depth={depth}: root deviation {} >= {bound}",
                    dec.root
                )
            })?;
            ensure(dec.child < 4.0 * bound, || {
                format!(
                    "D={d} depth={depth}: child deviation {} >= {}",
                    dec.child,
                    4.0 * bound
                )
            })?;
            tightest = tightest
                .max(dec.root / bound)
                .max(dec.child / (4.0 * bound));
            checked += 1;
        }
    }
    Ok(format!(
        "{checked} trees; largest deviation/bound ratio {tightest:.3}"
    ))
}

/// Random rooted tree with depth <= `max_depth` and every degree <= 3.
fn bounded_tree(rng: &mut ChaCha8Rng, max_depth: usize) -> Vec<(usize, usize)> {
    let mut edges = Vec::new();
    let mut frontier = vec![(0usize, 0usize)];
    let mut next = 1;
    while let Some((v, depth)) = frontier.pop() {
        if depth == max_depth {
            continue;
        }
        let max_kids = if v == 0 { 3 } else { 2 };
        let min_kids = usize::from(v == 0);
        let kids = rng.random_range(min_kids..=max_kids);
        for _ in 0..kids {
            edges.push((v, next));
            frontier.push((next, depth + 1));
            next += 1;
        }
    }
    edges
}

fn criterion_7() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut trees = 0;
    let mut configs = 0;
    let mut shapes: Vec<Vec<(usize, usize)>> = (1..=3)
        .map(|depth| {
            generators::complete_dary_tree(2, depth)
                .unwrap()
                .edges()
                .collect()
        })
        .collect();
    for k in 0..30 {
        shapes.push(bounded_tree(&mut rng, 1 + k % 3));
    }
    for edges in shapes {
        let p = edges.len() + 1;
        let weighted: Vec<(usize, usize, f64)> = edges
            .iter()
            .map(|&(u, v)| (u, v, rng.random_range(0.05..1.2)))
            .collect();
        let m = IsingModel::from_edges(p, &weighted).unwrap();
        ensure(m.graph().max_degree() <= 3, || "degree above 3".into())?;
        let tree = RootedTree::new(&m, 0).unwrap();
        ensure(tree.depths().into_iter().max().unwrap() <= 3, || {
            "depth above 3".into()
        })?;
        let j = m.exact_joint().unwrap();
        let mono = check_leaf_monotonicity(&j, &tree).map_err(|e| e.to_string())?;
        ensure(mono.violations.is_empty(), || {
            format!("p={p}: flips {:?} did not raise P(X_r=+1)", mono.violations)
        })?;
        ensure(mono.all_ones_is_max(1e-12), || {
            format!(
                "p={p}: all-ones deviation {} < max {}",
                mono.all_ones_deviation, mono.max_deviation
            )
        })?;
        trees += 1;
        configs += mono.configurations;
    }
    Ok(format!(
        "{trees} positive trees, {configs} leaf configurations"
    ))
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut pairs = 0;
    for g_idx in 0..100u64 {
        let p = rng.random_range(2..=12);
        let prob = rng.random_range(0.15..0.7);
        let g = generators::erdos_renyi(p, prob, g_idx).unwrap();
        let fg = factor_graph(&g);
        for u in 0..p {
            let d = bfs_distances(&g, u);
            let df = bfs_distances(&fg, u);
            for v in 0..p {
                let (a, b) = (d[v].unwrap(), df[v].unwrap());
                ensure(b == 2 * a, || {
                    format!("graph {g_idx}: d({u},{v}) = {a}, d_f = {b}")
                })?;
                pairs += 1;
            }
        }
    }
    Ok(format!(
        "100 connected graphs, {pairs} ordered pairs with d_f = 2d"
    ))
}

fn criterion_9() -> Outcome {
    let start = Instant::now();
    let n_values = vec![100, 200, 400, 800, 1600, 3200, 6400, 12800, 25600];
    let epsilons = vec![0.01, 0.02, 0.03, 0.05, 0.08, 0.12];
    let mut spec = ExperimentSpec::new(
        ModelSpec::new(Family::Grid { k: 3 }, Weights::Constant { theta: 0.5 }),
        n_values,
        epsilons.clone(),
    );
    spec.trials = 50;
    spec.seed = 2024;
    spec.sampler = Sampler::Exact;
    let res = run_experiment(&spec, &mut |_| Ok(())).map_err(|e| e.to_string())?;
    let best = epsilons
        .iter()
        .filter_map(|&e| res.min_n(e).map(|n| (n, res.worst_drop(e), e)))
        .min_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
    let (n_star, drop, eps) = best.ok_or("no epsilon reached 0.95 on the grid")?;
    let curve: Vec<String> = res
        .rows_for(eps)
        .map(|r| format!("{}:{:.2}", r.n, r.success_rate))
        .collect();
    ensure(n_star <= 1_000_000, || format!("min n {n_star}"))?;
    ensure(drop <= 0.1, || {
        format!("eps={eps}: success drops by {drop} ({curve:?})")
    })?;
    let secs = start.elapsed().as_secs_f64();
    ensure(secs < 900.0, || format!("took {secs:.0}s"))?;
    Ok(format!(
        "tuned eps={eps}: rate >= 0.95 from n={n_star}, max drop {drop:.2}; curve {} ({secs:.1}s)",
        curve.join(" ")
    ))
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

fn criterion_10() -> Outcome {
    let tol = 1e-9;
    let fixed = [
        (theorem1_h(0.8, 1, 2).unwrap(), 3.90625e-5),
        (theorem1_h(1.0, 0, 2).unwrap(), 0.00390625),
        (
            lemma5_rhs(0.5, 2, 2, 16, 0.05, LogBase::Two).unwrap(),
            846_756_451_059.276_9,
        ),
        (
            lemma5_rhs(0.5, 2, 2, 16, 0.05, LogBase::Natural).unwrap(),
            586_926_846_672.683_1,
        ),
        (
            theorem2_params(0.1, 2).unwrap().epsilon,
            3.958_611_906_174_552_6e-5,
        ),
        (
            theorem2_params(0.1, 2).unwrap().girth_bound,
            206_842.197_423_968_6,
        ),
        (
            lemma6_epsilon(0.25, 0.3, 2).unwrap(),
            5.796_478_332_887_176e-5,
        ),
    ];
    for (k, (got, want)) in fixed.iter().enumerate() {
        ensure(rel(*got, *want) < tol, || {
            format!("example {k}: {got} vs {want}")
        })?;
    }
    ensure(
        lemma5_sample_bound(0.5, 2, 2, 16, 0.05, LogBase::Two).unwrap() == 846_756_451_060.0,
        || "integer sample bound".into(),
    )?;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for case in 0..100 {
        let eps = rng.random_range(0.05..2.0);
        let d = rng.random_range(0..4usize);
        let k = rng.random_range(2..4usize);
        let h = theorem1_h(eps, d, k).unwrap();
        ensure(
            rel(theorem1_h(2.0 * eps, d, k).unwrap(), 4.0 * h) < tol,
            || format!("h case {case}"),
        )?;

        let p = rng.random_range(2..1000usize);
        let delta = rng.random_range(0.001..0.5);
        let n = lemma5_rhs(eps, d, k, p, delta, LogBase::Two).unwrap();
        ensure(
            rel(
                lemma5_rhs(eps / 2.0, d, k, p, delta, LogBase::Two).unwrap(),
                16.0 * n,
            ) < tol,
            || format!("quartic case {case}"),
        )?;
        ensure(
            lemma5_rhs(eps, d, k, p + 1, delta, LogBase::Two).unwrap() > n,
            || format!("p monotone case {case}"),
        )?;
        ensure(
            lemma5_rhs(eps, d, k, p, delta * 0.9, LogBase::Two).unwrap() > n,
            || format!("delta monotone case {case}"),
        )?;

        let dd = rng.random_range(1..5usize);
        let limit = std::f64::consts::LN_2 / (2.0 * dd as f64);
        let b1 = rng.random_range(0.01..0.98) * limit;
        let b2 = b1 + (limit - b1) * rng.random_range(0.01..0.99);
        let (t1, t2) = (
            theorem2_params(b1, dd).unwrap(),
            theorem2_params(b2, dd).unwrap(),
        );
        ensure(
            t2.epsilon > t1.epsilon && t2.girth_bound < t1.girth_bound,
            || format!("beta monotone case {case}"),
        )?;

        let gamma = b1 + rng.random_range(0.01..1.0);
        let e = lemma6_epsilon(b1, gamma, dd).unwrap();
        ensure(lemma6_epsilon(b1, gamma, dd + 1).unwrap() < e, || {
            format!("D monotone case {case}")
        })?;
        let s = (2.0 * b1).sinh();
        ensure(
            rel(lemma6_epsilon(b1, gamma, 0).unwrap(), s * s / 128.0) < tol,
            || format!("limit case {case}"),
        )?;
    }
    Ok("example values within 1e-9; identities on 100 random inputs".into())
}

fn run_cli(args: &[&str]) -> Result<Vec<u8>, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_greedy-mrf"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!(
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        ));
    }
    Ok(out.stdout)
}

fn dir_bytes(dir: &Path) -> Vec<(String, Vec<u8>)> {
    let mut files: Vec<(String, Vec<u8>)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let e = e.unwrap();
            (
                e.file_name().to_string_lossy().into_owned(),
                fs::read(e.path()).unwrap(),
            )
        })
        .collect();
    files.sort();
    files
}

fn criterion_11() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let (m, _) = exact_model("chain:4", 0.5);
    let data = m.exact_joint().unwrap().sample(3000, 11).unwrap();
    let csv = tmp.path().join("chain.csv");
    data.write_csv(&csv).map_err(|e| e.to_string())?;
    let csv = csv.to_str().unwrap().to_string();

    let commands: Vec<(&str, Vec<String>)> = vec![
        (
            "learn",
            vec![
                "learn".into(),
                csv.clone(),
                "--epsilon".into(),
                "0.05".into(),
            ],
        ),
        (
            "experiment",
            [
                "experiment",
                "--model",
                "grid:3",
                "--n",
                "200,800",
                "--epsilon",
                "0.03,0.05",
                "--trials",
                "8",
                "--seed",
                "11",
                "--no-timing",
            ]
            .map(String::from)
            .to_vec(),
        ),
        (
            "experiment-gibbs",
            [
                "experiment",
                "--model",
                "chain:4",
                "--n",
                "300",
                "--epsilon",
                "0.05",
                "--trials",
                "4",
                "--seed",
                "11",
                "--sampler",
                "gibbs",
                "--burn-in",
                "200",
                "--no-timing",
            ]
            .map(String::from)
            .to_vec(),
        ),
        (
            "oracle",
            [
                "oracle",
                "--model",
                "counterexample:4",
                "--theta",
                "const:0.9",
            ]
            .map(String::from)
            .to_vec(),
        ),
        (
            "oracle-chow-liu",
            ["oracle", "--model", "random-tree:7:3", "--chow-liu"]
                .map(String::from)
                .to_vec(),
        ),
    ];
    let mut compared = 0;
    for (name, args) in &commands {
        let mut runs = Vec::new();
        for rep in 0..2 {
            let dir = tmp.path().join(format!("{name}-{rep}"));
            let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
            let d = dir.to_str().unwrap().to_string();
            full.push("--out");
            full.push(&d);
            let stdout = run_cli(&full)?;
            let mut files = dir_bytes(&dir);
            files.push(("stdout".into(), stdout));
            runs.push(files);
        }
        ensure(runs[0] == runs[1], || {
            format!("{name}: outputs differ between reruns")
        })?;
        compared += runs[0].len();
    }
    for args in [
        vec![
            "bounds",
            "--degree",
            "2",
            "--beta",
            "0.1",
            "--gamma",
            "0.3",
            "--epsilon",
            "0.5",
            "--p",
            "16",
            "--delta",
            "0.05",
        ],
        vec!["bounds", "--degree", "2", "--beta", "0.1", "--json"],
    ] {
        ensure(run_cli(&args)? == run_cli(&args)?, || {
            format!("{args:?} differs")
        })?;
        compared += 1;
    }
    Ok(format!("{compared} artifacts byte-identical across reruns"))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() {
    let criteria: [Criterion; 11] = [
        ("exact-oracle recovery", criterion_1),
        ("counter-example first pick", criterion_2),
        ("super-neighborhood and pruning", criterion_3),
        ("Chow-Liu equivalence on trees", criterion_4),
        ("conditioning and distance bounds", criterion_5),
        ("tree correlation decay", criterion_6),
        ("leaf monotonicity and worst case", criterion_7),
        ("factor-graph distance doubling", criterion_8),
        ("finite-sample recovery protocol", criterion_9),
        ("bound calculators", criterion_10),
        ("CLI determinism", criterion_11),
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    let mut failed = 0;
    for (k, (name, f)) in criteria.iter().enumerate() {
        let id = (k + 1).to_string();
        if !filter.is_empty() && !filter.contains(&id) {
            continue;
        }
        let start = Instant::now();
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {id:>2} PASS  {name} [{secs:.1}s]: {msg}"),
            Err(msg) => {
                failed += 1;
                println!("criterion {id:>2} FAIL  {name} [{secs:.1}s]: {msg}");
            }
        }
    }
    if failed > 0 {
        println!("{failed} criterion(s) failed");
        std::process::exit(1);
    }
}

//! Acceptance gate. Each criterion prints one PASS or FAIL line with the
//! measured values; the process exits non-zero if any criterion fails.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use corrsets::commands::{load, InputOptions};
use corrsets_core::estimators::{
    correction_exact, correction_relaxed, correction_upper, entropy, expected_mi_permutation, m0_relaxed,
    relaxed_correction_sum,
};
use corrsets_core::search::{exhaustive, greedy, SearchNode, SearchSpace, Unlimited};
use corrsets_core::synth::{chance_demo, run_regret, sample_joint_in_band, Scorer, SyntheticSpec};
use corrsets_core::{branch_and_bound, score_subset, EncodedDataset, Estimator, SearchConfig};
use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn data_dir() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data")
}

fn tictactoe() -> EncodedDataset {
    load(&InputOptions::new(data_dir().join("tic-tac-toe.csv"))).expect("tic-tac-toe.csv").dataset
}

/// Random categorical data with planted noisy functional structure.
fn random_dataset(seed: u64, d: usize, n: usize, max_domain: u32) -> EncodedDataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut columns: Vec<Vec<u32>> = Vec::with_capacity(d);
    for j in 0..d {
        let domain = rng.gen_range(1..=max_domain);
        let col: Vec<u32> = if j > 0 && rng.gen_bool(0.5) {
            let (a, b) = (rng.gen_range(0..j), rng.gen_range(0..j));
            let noise = rng.gen_range(0.0..0.6);
            (0..n)
                .map(|r| {
                    if rng.gen_bool(noise) {
                        rng.gen_range(0..domain)
                    } else {
                        (columns[a][r] + 2 * columns[b][r]) % domain
                    }
                })
                .collect()
        } else {
            (0..n).map(|_| rng.gen_range(0..domain)).collect()
        };
        columns.push(col);
    }
    EncodedDataset::from_columns(&columns).unwrap()
}

fn random_datasets(count: u64, max_d: usize, max_n: usize, salt: u64) -> Vec<EncodedDataset> {
    (0..count)
        .map(|i| {
            let mut rng = ChaCha8Rng::seed_from_u64(i ^ salt);
            let d = rng.gen_range(2..=max_d);
            let n = rng.gen_range(2..=max_n);
            random_dataset(i.wrapping_mul(31) ^ salt, d, n, rng.gen_range(2..=5))
        })
        .collect()
}

fn tictactoe_reproduction() -> Outcome {
    let ds = tictactoe();
    let start = Instant::now();
    let out = branch_and_bound(&ds, &SearchConfig::new(1, 1.0), &mut Unlimited).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let top = out.top.best().unwrap().value();
    let s = &out.stats;
    let pass = (top - 0.08).abs() <= 0.01
        && s.solution_depth == 4
        && s.max_depth_reached.abs_diff(7) <= 1
        && secs < 10.0
        && (5.0..=25.0).contains(&s.prune_percent);
    outcome(
        pass,
        format!(
            "top-1 {top:.4}, solution depth {}, max depth {}, prune {:.2}%, {secs:.3}s",
            s.solution_depth, s.max_depth_reached, s.prune_percent
        ),
    )
}

fn greedy_gap() -> Outcome {
    let ds = tictactoe();
    let exact = branch_and_bound(&ds, &SearchConfig::new(1, 1.0), &mut Unlimited).unwrap();
    let g = greedy(&ds, 1, &mut Unlimited).unwrap();
    let (b, h) = (exact.top.best().unwrap().value(), g.top.best().unwrap().value());
    let gap = b - h;
    outcome((0.0..=0.01).contains(&gap), format!("bnb {b:.4}, greedy {h:.4}, gap {gap:.4}"))
}

fn exhaustive_equivalence() -> Outcome {
    let start = Instant::now();
    let mut sets = random_datasets(24, 12, 500, 0x51);
    sets.push(tictactoe());
    let mut mismatches = 0;
    for ds in &sets {
        let out = branch_and_bound(ds, &SearchConfig::new(5, 1.0), &mut Unlimited).unwrap();
        if out.top.scores() != exhaustive(ds, 5, Estimator::Relaxed).unwrap().scores() {
            mismatches += 1;
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(
        mismatches == 0 && secs < 60.0,
        format!("{} datasets (incl. tic-tac-toe, d=10), {mismatches} mismatches, {secs:.2}s", sets.len()),
    )
}

fn node_for(space: &SearchSpace, positions: &[usize]) -> SearchNode {
    let members: Vec<usize> = positions.iter().map(|&p| space.attribute_at(p)).collect();
    let score = score_subset(space.dataset(), &members, Estimator::Relaxed).unwrap();
    SearchNode {
        positions: positions.to_vec(),
        entropy_sum: score.entropy_sum,
        score: Some(score),
        partition: None,
        potential: 1.0,
    }
}

fn admissibility_sweep() -> Outcome {
    let sets = random_datasets(15, 10, 200, 0xad);
    let (mut pairs, mut violations) = (0u64, 0u64);
    for ds in &sets {
        let space = SearchSpace::new(ds);
        let d = space.d();
        let positions_of = |mask: usize| -> Vec<usize> { (0..d).filter(|p| mask & (1 << p) != 0).collect() };
        let mut value = vec![0.0; 1 << d];
        for mask in 1usize..(1 << d) {
            if mask.count_ones() >= 2 {
                value[mask] = node_for(&space, &positions_of(mask)).value();
            }
        }
        for mask in 1usize..(1 << d) {
            if mask.count_ones() < 2 {
                continue;
            }
            let positions = positions_of(mask);
            let node = node_for(&space, &positions);
            let (mon, refined) = (node.bound_mon(), space.bound_ref(&node));
            let last = *positions.last().unwrap();
            let free = ((1usize << d) - 1) & !((1usize << (last + 1)) - 1);
            let mut extra = free;
            loop {
                pairs += 1;
                if value[mask | extra] > mon || value[mask | extra] > refined {
                    violations += 1;
                }
                if extra == 0 {
                    break;
                }
                extra = (extra - 1) & free;
            }
        }
    }
    outcome(violations == 0, format!("{} datasets, {pairs} node/extension pairs, {violations} violations", sets.len()))
}

fn mi_from_table(x: &[u32], y: &[u32]) -> f64 {
    let n = x.len() as f64;
    let mut joint: BTreeMap<(u32, u32), f64> = BTreeMap::new();
    let mut a: BTreeMap<u32, f64> = BTreeMap::new();
    let mut b: BTreeMap<u32, f64> = BTreeMap::new();
    for (&u, &v) in x.iter().zip(y) {
        *joint.entry((u, v)).or_default() += 1.0;
        *a.entry(u).or_default() += 1.0;
        *b.entry(v).or_default() += 1.0;
    }
    joint.iter().map(|(&(u, v), &c)| c / n * (n * c / (a[&u] * b[&v])).log2()).sum()
}

fn label_counts(labels: &[u32]) -> Vec<u32> {
    let mut m: BTreeMap<u32, u32> = BTreeMap::new();
    for &l in labels {
        *m.entry(l).or_default() += 1;
    }
    m.into_values().collect()
}

fn dominance_chain() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0xd0);
    let (mut checked, mut order_violations) = (0, 0);
    while checked < 120 {
        let m = rng.gen_range(2..=6);
        let n = rng.gen_range(2..=60);
        let ds = random_dataset(rng.gen(), m, n, 4);
        let cols: Vec<usize> = (0..m).collect();
        let hs: Vec<f64> = cols.iter().map(|&c| ds.attribute(c).entropy()).collect();
        let norm = hs.iter().sum::<f64>() - hs.iter().copied().fold(0.0, f64::max);
        if norm <= 0.0 {
            continue;
        }
        let sizes: Vec<u32> = cols.iter().map(|&c| ds.attribute(c).domain_size()).collect();
        let exact = correction_exact(&ds, &cols).unwrap();
        let upper = correction_upper(&ds, &cols).unwrap();
        let relaxed = correction_relaxed(&sizes, n as u64, norm).unwrap();
        if !(exact <= upper && upper <= relaxed) {
            order_violations += 1;
        }
        checked += 1;
    }
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let n = rng.gen_range(2..=8);
        let (dx, dy) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..dx)).collect();
        let y: Vec<u32> = (0..n).map(|_| rng.gen_range(0..dy)).collect();
        let mut total = 0.0;
        let mut count = 0.0;
        for perm in (0..n).permutations(n) {
            let yp: Vec<u32> = perm.iter().map(|&i| y[i]).collect();
            total += mi_from_table(&x, &yp);
            count += 1.0;
        }
        let got = expected_mi_permutation(&label_counts(&x), &label_counts(&y), n as u64).unwrap();
        worst = worst.max((got - total / count).abs());
    }
    outcome(
        order_violations == 0 && worst < 1e-9,
        format!("{checked} datasets, {order_violations} order violations; max |EMI - enumeration| {worst:.2e} over 100 cases"),
    )
}

fn sort_maximization() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x50);
    let mut mismatches = 0;
    for _ in 0..150 {
        let m = rng.gen_range(2..=6);
        let sizes: Vec<u32> = (0..m).map(|_| rng.gen_range(1..=9)).collect();
        let n: u64 = rng.gen_range(2..=500);
        let brute = sizes
            .iter()
            .copied()
            .permutations(m)
            .map(|order| {
                let mut bits = f64::from(order[0]).log2();
                let mut sum = 0.0;
                for &d in &order[1..] {
                    sum += m0_relaxed(bits, u64::from(d), n).unwrap();
                    bits += f64::from(d).log2();
                }
                sum
            })
            .fold(f64::NEG_INFINITY, f64::max);
        if relaxed_correction_sum(&sizes, n).unwrap() != brute {
            mismatches += 1;
        }
    }
    outcome(mismatches == 0, format!("150 domain-size tuples, {mismatches} inexact"))
}

fn joint_entropy(ds: &EncodedDataset, cols: &[usize]) -> f64 {
    let mut m: BTreeMap<Vec<u32>, u32> = BTreeMap::new();
    for r in 0..ds.n() {
        *m.entry(cols.iter().map(|&c| ds.attribute(c).codes()[r]).collect()).or_default() += 1;
    }
    entropy(&m.into_values().collect::<Vec<_>>(), ds.n() as u64)
}

fn chain_rule_and_range() -> Outcome {
    let mut sets = random_datasets(30, 8, 300, 0xc4);
    sets.push(tictactoe());
    let (mut subsets, mut bad) = (0u64, 0u64);
    for ds in &sets {
        let d = ds.d();
        for mask in 1u32..(1 << d) {
            if mask.count_ones() < 2 {
                continue;
            }
            let cols: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
            let s = score_subset(ds, &cols, Estimator::Plugin).unwrap();
            let sum: f64 = cols.iter().map(|&c| ds.attribute(c).entropy()).sum();
            subsets += 1;
            let chain_ok = s.is_degenerate() || (sum - joint_entropy(ds, &cols) - s.total_correlation).abs() < 1e-9;
            if !chain_ok || !(0.0..=1.0).contains(&s.w_plugin) {
                bad += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0xfd);
    let mut dependence_ok = true;
    for _ in 0..50 {
        let n = rng.gen_range(4..=300);
        let x: Vec<u32> = (0..n).map(|_| rng.gen_range(0..6)).collect();
        let y: Vec<u32> = x.iter().map(|v| (v * 7 + 3) % 11).collect();
        let z: Vec<u32> = x.iter().map(|v| v / 2).collect();
        let ds = EncodedDataset::from_columns(&[x, y, z]).unwrap();
        for cols in [&[0, 1][..], &[0, 1, 2][..]] {
            let s = score_subset(&ds, cols, Estimator::Plugin).unwrap();
            if !s.is_degenerate() && s.w_plugin != 1.0 {
                dependence_ok = false;
            }
        }
    }
    outcome(
        bad == 0 && dependence_ok,
        format!("{subsets} subsets over {} datasets, {bad} violations; functional dependence exact: {dependence_ok}", sets.len()),
    )
}

fn correlation_by_chance() -> Outcome {
    let start = Instant::now();
    let points = chance_demo(10, 4, 1000, 0).unwrap();
    let secs = start.elapsed().as_secs_f64();
    let p3 = points.iter().find(|p| p.cardinality == 3).unwrap();
    let p10 = points.iter().find(|p| p.cardinality == 10).unwrap();
    let below = points.iter().all(|p| p.corrected <= p.plugin && p.corrected_normalized < 0.05);
    let max_corr = points.iter().map(|p| p.corrected_normalized).fold(f64::NEG_INFINITY, f64::max);
    outcome(
        p10.plugin > p3.plugin && below && secs < 5.0,
        format!(
            "plug-in {:.3} bits at 3 -> {:.3} bits at 10; max corrected (normalized) {max_corr:.4}; {secs:.3}s",
            p3.plugin, p10.plugin
        ),
    )
}

fn regret_ordering() -> Outcome {
    let start = Instant::now();
    let scorers = [Scorer::Estimator(Estimator::Plugin), Scorer::Estimator(Estimator::Relaxed)];
    let mut cells = Vec::new();
    let mut pass = true;
    let mut seed = 0u64;
    for d in [2usize, 3] {
        for (lo, hi) in [(0.1, 0.3), (0.3, 0.5)] {
            let joint = sample_joint_in_band(d, lo, hi, seed, 200_000).unwrap();
            let spec = SyntheticSpec::new(joint).unwrap();
            let curves = run_regret(&spec, &scorers, &[50, 100], 100, seed).unwrap();
            seed += 1;
            let (plugin, relaxed) = (&curves[0].mean_regret, &curves[1].mean_regret);
            let ok = relaxed.iter().zip(plugin).all(|(r, p)| r <= p);
            pass &= ok;
            cells.push(format!(
                "d={d} [{lo},{hi}): plug-in {:.3}/{:.3} relaxed {:.3}/{:.3}",
                plugin[0], plugin[1], relaxed[0], relaxed[1]
            ));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    outcome(pass && secs < 600.0, format!("n=50/100, 100 trials: {}; {secs:.1}s", cells.join("; ")))
}

fn alpha_guarantee() -> Outcome {
    let sets = random_datasets(30, 12, 300, 0xa1);
    let (mut checked, mut failures) = (0, 0);
    for ds in &sets {
        let best = exhaustive(ds, 1, Estimator::Relaxed).unwrap().best().unwrap().value();
        for alpha in [0.5, 0.8] {
            let got = branch_and_bound(ds, &SearchConfig::new(1, alpha), &mut Unlimited).unwrap();
            let got = got.top.best().unwrap().value();
            // for a negative optimum the only admissible answer is the optimum
            let floor = if best >= 0.0 { alpha * best } else { best };
            checked += 1;
            if got < floor {
                failures += 1;
            }
        }
    }
    outcome(failures == 0, format!("{checked} runs on {} datasets, {failures} below alpha x optimum", sets.len()))
}

/// Runs the CLI, returning the exit code and the JSON report with its
/// `timing` member removed.
fn cli_json(args: &[&str], dir: &std::path::Path, name: &str) -> (i32, serde_json::Value) {
    let json = dir.join(name);
    let mut argv: Vec<String> = std::iter::once("corrsets").chain(args.iter().copied()).map(String::from).collect();
    argv.push("--json".into());
    argv.push(json.display().to_string());
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = corrsets::cli::run(argv, &mut out, &mut err);
    let mut value: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&json).unwrap_or_else(|_| "null".into())).unwrap();
    if let Some(obj) = value.as_object_mut() {
        obj.remove("timing");
        // the JSON path is part of the echoed command line; drop it
        if let Some(cmd) = obj.get_mut("command").and_then(|c| c.as_array_mut()) {
            cmd.truncate(cmd.len().saturating_sub(2));
        }
    }
    (code, value)
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let ttt = data_dir().join("tic-tac-toe.csv").display().to_string();
    let commands: Vec<(&str, Vec<&str>)> = vec![
        ("discover bnb", vec!["discover", "--input", &ttt, "--k", "9"]),
        ("discover greedy", vec!["discover", "--input", &ttt, "--algo", "greedy", "--k", "3"]),
        ("score", vec!["score", "--input", &ttt, "--set", "top-left-square,Class", "--estimator", "exact"]),
        ("chance", vec!["chance", "--seed", "7"]),
        ("regret", vec!["regret", "--dims", "2", "--bands", "0.1:0.3", "--n", "20,40", "--trials", "10", "--seed", "3"]),
    ];
    let mut differing = Vec::new();
    for (label, args) in &commands {
        let (c1, a) = cli_json(args, dir.path(), "a.json");
        let (c2, b) = cli_json(args, dir.path(), "b.json");
        if c1 != 0 || c2 != 0 || a != b || a.is_null() {
            differing.push(*label);
        }
    }
    outcome(
        differing.is_empty(),
        format!("{} commands run twice; differing: {:?}", commands.len(), differing),
    )
}

fn main() {
    let criteria: [Criterion; 11] = [
        ("tic-tac-toe reproduction", tictactoe_reproduction),
        ("greedy vs branch-and-bound gap", greedy_gap),
        ("exhaustive-oracle equivalence", exhaustive_equivalence),
        ("bound admissibility sweep", admissibility_sweep),
        ("estimator dominance chain", dominance_chain),
        ("sort-maximization", sort_maximization),
        ("chain rule and range", chain_rule_and_range),
        ("correlation by chance", correlation_by_chance),
        ("regret ordering", regret_ordering),
        ("alpha guarantee", alpha_guarantee),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    let total = Instant::now();
    for (name, check) in criteria {
        let o = check();
        println!("[{}] {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
        if !o.pass {
            failed += 1;
        }
    }
    let elapsed: Duration = total.elapsed();
    println!("acceptance: {} passed, {failed} failed in {:.1}s", criteria.len() - failed, elapsed.as_secs_f64());
    if failed > 0 {
        std::process::exit(1);
    }
}

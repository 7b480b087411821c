//! One PASS/FAIL line per acceptance criterion. Runs without the libtest
//! harness so the lines are always printed; exits non-zero if any fails.

mod common;

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::Instant;

use common::{
    full_space_eps, pairwise_pareto, peeling_ranks, random_front, rng, sweep_hv_2d, whole_space,
};
use mnkbench::analysis::{
    estimate_ert, fit_multiple, ideal_point, pareto_pmf_view, regression_report, CensoredMode, ErtRecord,
    FeatureTable,
};
use mnkbench::bayesnet::{fit_parameters, joint_pmf, sample, BayesianNetwork, BnStructure, Cpts, Dataset};
use mnkbench::cli::{cmd_all, cmd_ert, cmd_regress, ExperimentConfig};
use mnkbench::enumeration::{enumerate_pareto, epsilon_success, nondominated_sort, Individual};
use mnkbench::features::{hypervolume_exact, hypervolume_monte_carlo, FeatureVector};
use mnkbench::landscape::{generate_instance, ObjectiveVector, Solution};
use mnkbench::optimizers::{mboa_run, Algorithm, RunParams, RunRecord};
use mnkbench::Error;
use num_rational::Ratio;
use rand::Rng;

type Outcome = Result<String, String>;

fn check(cond: bool, detail: String) -> Outcome {
    if cond {
        Ok(detail)
    } else {
        Err(detail)
    }
}

// 1 -------------------------------------------------------------------------

/// `(1 + N_jk) / (2 + N_j)` counted directly from the rows.
fn rational_theta(rows: &[&str], child: usize, parents: &[usize], config: &[bool], value: bool) -> Ratio<i64> {
    let bit = |r: &str, i: usize| r.as_bytes()[i] == b'1';
    let matching: Vec<&&str> = rows
        .iter()
        .filter(|r| parents.iter().zip(config).all(|(&p, &c)| bit(r, p) == c))
        .collect();
    let n_jk = matching.iter().filter(|r| bit(r, child) == value).count() as i64;
    Ratio::new(1 + n_jk, 2 + matching.len() as i64)
}

fn ratio_f64(r: Ratio<i64>) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

fn criterion_1() -> Outcome {
    let fit = |rows: &[&str], parents: Vec<Vec<usize>>, ordering: Vec<usize>| {
        let data: Vec<Vec<bool>> = rows.iter().map(|r| Solution::parse(r).unwrap().bits).collect();
        let data = Dataset::new(rows[0].len(), data).unwrap();
        fit_parameters(&BnStructure::new(parents, ordering).unwrap(), &data).unwrap()
    };
    let mut mismatches = 0;
    let mut compare = |got: f64, want: Ratio<i64>| {
        if got != ratio_f64(want) {
            mismatches += 1;
        }
    };

    let parentless = ["1", "0", "1", "1", "0"];
    let c = fit(&parentless, vec![vec![]], vec![0]);
    compare(c.tables[0][0][1], Ratio::new(4, 7));
    compare(c.tables[0][0][1], rational_theta(&parentless, 0, &[], &[], true));

    // x1 given x0: (0,1) twice, (0,0) once, (1,0) twice, (1,1) once.
    let one = ["01", "01", "00", "10", "10", "11"];
    let c = fit(&one, vec![vec![], vec![0]], vec![0, 1]);
    compare(c.tables[1][0][1], Ratio::new(3, 5));
    compare(c.tables[1][1][1], Ratio::new(2, 5));
    for (j, cfg) in [[false], [true]].iter().enumerate() {
        compare(c.tables[1][j][0], rational_theta(&one, 1, &[0], cfg, false));
    }

    // x2 given (x0, x1); the configuration (1, 1) never occurs.
    let two = ["000", "001", "011", "011", "101", "100", "010"];
    let c = fit(&two, vec![vec![], vec![], vec![0, 1]], vec![0, 1, 2]);
    compare(c.tables[2][0][1], Ratio::new(2, 4));
    compare(c.tables[2][1][1], Ratio::new(3, 5));
    compare(c.tables[2][2][1], Ratio::new(2, 4));
    compare(c.tables[2][3][1], Ratio::new(1, 2));
    for j in 0..4 {
        let cfg = [j & 2 != 0, j & 1 != 0];
        compare(c.tables[2][j][1], rational_theta(&two, 2, &[0, 1], &cfg, true));
    }

    // x0 given x2, with x2 placed first in the ordering.
    let late = ["001", "101", "101", "100", "000", "000", "011"];
    let c = fit(&late, vec![vec![2], vec![], vec![]], vec![2, 0, 1]);
    compare(c.tables[0][0][1], Ratio::new(2, 5));
    compare(c.tables[0][1][1], Ratio::new(3, 6));
    for (j, cfg) in [[false], [true]].iter().enumerate() {
        compare(c.tables[0][j][1], rational_theta(&late, 0, &[2], cfg, true));
    }
    check(mismatches == 0, format!("{mismatches} mismatches against rational counts"))
}

// 2 -------------------------------------------------------------------------

fn criterion_2() -> Outcome {
    let mut worst = 0f64;
    let mut edges = 0;
    for seed in 0..50u64 {
        let inst = generate_instance(seed, 10, 2 + (seed % 2) as usize, 1 + (seed % 4) as usize).unwrap();
        let exact = enumerate_pareto(&inst).unwrap();
        let mut params = RunParams::with_defaults(10, seed);
        params.epsilon = 0.0;
        params.t_max = 1100;
        let model = mboa_run(&inst, &exact, &params).unwrap().final_model.expect("a learned model");
        edges += model.structure.edge_count();
        let total: f64 = (0..1u64 << 10)
            .map(|i| model.joint_pmf(&Solution::from_index(i, 10)).unwrap())
            .sum();
        worst = worst.max((total - 1.0).abs());
    }
    check(worst <= 1e-9, format!("max |sum - 1| = {worst:.2e} over 50 networks ({edges} edges)"))
}

// 3 -------------------------------------------------------------------------

fn criterion_3() -> Outcome {
    let s = BnStructure::new(vec![vec![], vec![0], vec![1]], vec![0, 1, 2]).unwrap();
    let cpts = Cpts {
        tables: vec![
            vec![[0.35, 0.65]],
            vec![[0.8, 0.2], [0.3, 0.7]],
            vec![[0.55, 0.45], [0.1, 0.9]],
        ],
    };
    let data = sample(&s, &cpts, 100_000, 2024).unwrap();
    let mut counts = [0usize; 8];
    for row in data.rows() {
        counts[Solution::new(row.clone()).index() as usize] += 1;
    }
    let l1: f64 = (0..8u64)
        .map(|i| {
            let b = common::bits_of(i, 3);
            let exact = cpts.tables[0][0][b[0] as usize]
                * cpts.tables[1][b[0] as usize][b[1] as usize]
                * cpts.tables[2][b[1] as usize][b[2] as usize];
            (counts[i as usize] as f64 / 1e5 - exact).abs()
        })
        .sum();
    check(l1 <= 0.02, format!("L1 = {l1:.5}"))
}

// 4 -------------------------------------------------------------------------

fn criterion_4() -> Outcome {
    let mut r = rng(44);
    let mut sort_bad = 0;
    for p in 0..1000 {
        let m = 2 + p % 4;
        let size = r.gen_range(1..80);
        let levels = [4.0, 10.0, 1e6][p % 3];
        let points: Vec<Vec<f64>> = (0..size)
            .map(|_| (0..m).map(|_| (r.gen::<f64>() * levels).floor() / levels).collect())
            .collect();
        let pop: Vec<Individual> = points
            .iter()
            .enumerate()
            .map(|(i, z)| Individual::new(Solution::from_index(i as u64, 8), ObjectiveVector(z.clone())))
            .collect();
        if nondominated_sort(pop).unwrap().rank != peeling_ranks(&points) {
            sort_bad += 1;
        }
    }

    let mut enum_bad = 0;
    for i in 0..20u64 {
        let n = [8, 10, 12][i as usize % 3];
        let inst = generate_instance(400 + i, n, 2 + i as usize % 4, 1 + i as usize % 5).unwrap();
        let p = enumerate_pareto(&inst).unwrap();
        let got: Vec<(String, Vec<f64>)> =
            p.solutions.iter().zip(&p.objectives).map(|(s, z)| (s.to_string(), z.0.clone())).collect();
        if got != pairwise_pareto(&inst) {
            enum_bad += 1;
        }
    }

    let mut eps_bad = 0;
    let mut successes = 0;
    let mut checks = 0;
    for i in 0..20u64 {
        let n = [6, 8, 10][i as usize % 3];
        let inst = generate_instance(500 + i, n, 2 + i as usize % 3, 1 + i as usize % 4).unwrap();
        let exact = enumerate_pareto(&inst).unwrap();
        let space: Vec<Vec<f64>> = whole_space(&inst).into_iter().map(|(_, z)| z).collect();
        for trial in 0..10 {
            let mut cands: Vec<Vec<f64>> = (0..30).map(|_| space[r.gen_range(0..space.len())].clone()).collect();
            if trial % 2 == 0 {
                cands.extend(exact.objectives.iter().filter(|_| r.gen_bool(0.7)).map(|z| z.0.clone()));
            }
            for eps in [0.0, 0.05, 0.1, 0.25] {
                let got = epsilon_success(&cands, &exact, eps).unwrap();
                checks += 1;
                successes += usize::from(got);
                if got != full_space_eps(&cands, &space, eps) {
                    eps_bad += 1;
                }
            }
        }
    }
    check(
        sort_bad + enum_bad + eps_bad == 0,
        format!(
            "mismatches: sort {sort_bad}/1000, enumeration {enum_bad}/20, epsilon {eps_bad}/{checks} ({successes} successes)"
        ),
    )
}

// 5 -------------------------------------------------------------------------

fn criterion_5() -> Outcome {
    let mut r = rng(55);
    let mut worst_2d = 0f64;
    for _ in 0..200 {
        let size = r.gen_range(1..60);
        let front = random_front(&mut r, 2, size);
        let d = (hypervolume_exact(&front, &[0.0, 0.0]).unwrap() - sweep_hv_2d(&front, &[0.0, 0.0])).abs();
        worst_2d = worst_2d.max(d);
    }
    let mut worst_z = 0f64;
    for i in 0..20 {
        let front = random_front(&mut r, 3, 40);
        let exact = hypervolume_exact(&front, &[0.0; 3]).unwrap();
        let mc = hypervolume_monte_carlo(&front, &[0.0; 3], 1_000_000, 5000 + i).unwrap();
        worst_z = worst_z.max((mc.value - exact).abs() / mc.std_error);
    }
    check(
        worst_2d <= 1e-12 && worst_z <= 3.0,
        format!("2-D max error {worst_2d:.1e}; 3-D max |MC - exact| = {worst_z:.2} SE"),
    )
}

// 6 -------------------------------------------------------------------------

fn records(outcomes: &[(bool, usize)]) -> Vec<RunRecord> {
    outcomes
        .iter()
        .enumerate()
        .map(|(i, &(success, evaluations))| RunRecord {
            instance_id: "acc".into(),
            algorithm: Algorithm::Mboa,
            run_index: i,
            success,
            evaluations,
            generations: 1,
        })
        .collect()
}

fn criterion_6() -> Outcome {
    let mut half = vec![(true, 10); 50];
    half.extend(vec![(false, 100); 50]);
    let a = estimate_ert(&records(&half), 100).unwrap().value().unwrap();
    let b = estimate_ert(&records(&[(true, 10); 100]), 100).unwrap().value().unwrap();
    let c = estimate_ert(&records(&[(false, 100); 100]), 100).unwrap();
    let censored = matches!(c.value(), Err(Error::Censored { .. })) && c.csv_row().ends_with(",NA");
    check(
        a == 110.0 && b == 10.0 && censored,
        format!("half = {a}, all = {b}, censored error = {censored}"),
    )
}

// 7 -------------------------------------------------------------------------

fn criterion_7() -> Outcome {
    let mut r = rng(77);
    let n = 40;
    let cols: Vec<Vec<f64>> = (0..3).map(|_| (0..n).map(|_| r.gen_range(-2.0..2.0)).collect()).collect();
    let beta = [0.7, 1.5, -2.25, 0.125];
    let ys: Vec<f64> = (0..n).map(|i| beta[0] + (0..3).map(|j| beta[j + 1] * cols[j][i]).sum::<f64>()).collect();
    let table = FeatureTable::new(vec!["a".into(), "b".into(), "c".into()], cols).unwrap();
    let (model, stats) = fit_multiple(&table, &ys).unwrap();
    let beta_err = model.coefficients.iter().zip(beta).map(|(g, w)| (g - w).abs()).fold(0.0, f64::max);
    let exact = beta_err <= 1e-9 && (stats.r - 1.0).abs() <= 1e-9 && stats.mae <= 1e-9 && stats.rmse <= 1e-9;

    // Synthetic instances whose log(ert) is linear in the transformed features.
    let features: Vec<FeatureVector> = (0..40)
        .map(|i| FeatureVector {
            instance_id: format!("syn{i:02}"),
            m: r.gen_range(2..9),
            k: r.gen_range(1..11),
            npo: r.gen_range(1..500),
            hv: r.gen(),
            avgd: r.gen_range(1.0..9.0),
            maxd: r.gen_range(9.0..18.0),
            nconnec: r.gen_range(1..40),
            lconnec: r.gen_range(0.05..1.0),
            kconnec: r.gen_range(1..9),
        })
        .collect();
    let erts: Vec<ErtRecord> = features
        .iter()
        .map(|f| {
            let y = 3.0 + 0.8 * (f.k as f64).ln() - 0.2 * f.hv + 0.05 * f.maxd + 0.1 * f.kconnec as f64;
            ErtRecord {
                instance_id: f.instance_id.clone(),
                algorithm: "nsga3".into(),
                runs: 10,
                successes: 10,
                success_times: vec![],
                t_max: 1_000_000,
                p_hat: 1.0,
                ert: Some(y.exp()),
            }
        })
        .collect();
    let report = regression_report("nsga3", &features, &erts, 10, 7, CensoredMode::Exclude).unwrap();
    let none = &report.simple[0];
    let none_ok = none.feature == "none" && none.fit.r == 0.0 && none.cv.r == 0.0;
    let ladder = report.elimination.expect("ladder");
    let last = ladder.steps.last().unwrap();
    let ladder_ok = ladder.all.remaining.len() == 9
        && (ladder.all.fit.r - 1.0).abs() < 1e-9
        && ladder.steps.len() == 9
        && last.remaining.is_empty()
        && last.fit.r == 0.0;
    check(
        exact && none_ok && ladder_ok,
        format!(
            "max beta error {beta_err:.1e}, r = {:.12}, mae = {:.1e}, rmse = {:.1e}; none r = {:.2}; ladder {} steps ending at r = {:.2}",
            stats.r,
            stats.mae,
            stats.rmse,
            none.fit.r,
            ladder.steps.len(),
            last.fit.r
        ),
    )
}

// 8 -------------------------------------------------------------------------

/// Average ranks, ties sharing the mean of their positions.
fn ranks(xs: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..xs.len()).collect();
    idx.sort_by(|&a, &b| xs[a].total_cmp(&xs[b]));
    let mut out = vec![0.0; xs.len()];
    let mut i = 0;
    while i < idx.len() {
        let mut j = i;
        while j + 1 < idx.len() && xs[idx[j + 1]] == xs[idx[i]] {
            j += 1;
        }
        for &t in &idx[i..=j] {
            out[t] = (i + j) as f64 / 2.0 + 1.0;
        }
        i = j + 1;
    }
    out
}

fn spearman(xs: &[f64], ys: &[f64]) -> f64 {
    let (a, b) = (ranks(xs), ranks(ys));
    let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
    let (ma, mb) = (mean(&a), mean(&b));
    let cov: f64 = a.iter().zip(&b).map(|(x, y)| (x - ma) * (y - mb)).sum();
    let va: f64 = a.iter().map(|x| (x - ma).powi(2)).sum();
    let vb: f64 = b.iter().map(|y| (y - mb).powi(2)).sum();
    cov / (va * vb).sqrt()
}

fn criterion_8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let config = ExperimentConfig {
        master_seed: 0,
        n_vars: 14,
        k_values: vec![2, 6, 10],
        m_values: vec![2, 3],
        landscapes_per_cell: 5,
        runs_per_instance: 30,
        epsilon: 0.1,
        t_max: Some(1638),
        output_dir: dir.path().to_path_buf(),
        ..ExperimentConfig::default()
    };
    assert_eq!(config.t_max(), (1usize << 14) / 10);
    cmd_all(&config).map_err(|e| format!("pipeline failed: {e}"))?;
    let erts = cmd_ert(&config).unwrap();
    let reports = cmd_regress(&config).unwrap();

    let by_instance = |alg: &str| -> BTreeMap<String, Option<f64>> {
        erts.iter().filter(|e| e.algorithm == alg).map(|e| (e.instance_id.clone(), e.ert)).collect()
    };
    let (mboa, nsga) = (by_instance("mboa"), by_instance("nsga3"));
    let paired: Vec<(f64, f64)> = mboa
        .iter()
        .filter_map(|(id, a)| Some(((*a)?, nsga[id]?)))
        .collect();
    let mean_m = paired.iter().map(|p| p.0).sum::<f64>() / paired.len() as f64;
    let mean_n = paired.iter().map(|p| p.1).sum::<f64>() / paired.len() as f64;
    let a_ok = !paired.is_empty() && mean_m < mean_n;

    let mut cells: BTreeMap<(usize, usize), Vec<f64>> = BTreeMap::new();
    for spec in config.instances() {
        if let Some(e) = nsga[&spec.id] {
            cells.entry((spec.m, spec.k)).or_default().push(e.ln());
        }
    }
    let ks: Vec<f64> = cells.keys().map(|&(_, k)| k as f64).collect();
    let means: Vec<f64> = cells.values().map(|v| v.iter().sum::<f64>() / v.len() as f64).collect();
    let rho = spearman(&ks, &means);

    let report = reports.iter().find(|r| r.algorithm == "nsga3").unwrap();
    let mut simple: Vec<(&str, f64)> =
        report.simple.iter().skip(1).map(|s| (s.feature.as_str(), s.fit.r)).collect();
    simple.sort_by(|a, b| b.1.total_cmp(&a.1));
    let logk_rank = 1 + simple.iter().position(|s| s.0 == "log(k)").unwrap();
    let b_ok = rho > 0.3 && logk_rank == 1;

    let censored = erts.iter().filter(|e| e.is_censored()).count();
    check(
        a_ok && b_ok,
        format!(
            "(a) paired mean ert over {} instances: mboa {mean_m:.1} vs nsga3 {mean_n:.1} [{}]; \
             (b) nsga3 Spearman(K, cell mean log ert) = {rho:.3} over {} cells, log(k) simple-model rank {logk_rank} \
             (best {} r = {:.3}, log(k) r = {:.3}) [{}]; {censored} censored estimates",
            paired.len(),
            if a_ok { "ok" } else { "fail" },
            cells.len(),
            simple[0].0,
            simple[0].1,
            simple[logk_rank - 1].1,
            if b_ok { "ok" } else { "fail" },
        ),
    )
}

// 9 -------------------------------------------------------------------------

fn criterion_9() -> Outcome {
    let inst = generate_instance(9, 10, 3, 3).unwrap();
    let pareto = enumerate_pareto(&inst).unwrap();
    let s = BnStructure::empty(10);
    let uniform = BayesianNetwork::new(s.clone(), Cpts::uniform(&s)).unwrap();
    let rows = pareto_pmf_view(&[uniform], &pareto).unwrap();
    let constant = rows.iter().all(|r| r.mean_pmf == 2f64.powi(-10))
        && (0..1u64 << 10).all(|i| joint_pmf(&s, &Cpts::uniform(&s), &Solution::from_index(i, 10)).unwrap() == 2f64.powi(-10));
    let maxima: Vec<f64> = (0..3)
        .map(|j| pareto.objectives.iter().map(|z| z[j]).fold(f64::NEG_INFINITY, f64::max))
        .collect();
    let ideal_ok = ideal_point(&pareto) == maxima;
    let sorted = rows.windows(2).all(|w| w[0].dist_to_ideal <= w[1].dist_to_ideal)
        && rows.iter().enumerate().all(|(i, r)| r.rank == i + 1);
    check(
        constant && ideal_ok && sorted,
        format!(
            "{} front members: constant 2^-10 = {constant}, ideal = maxima = {ideal_ok}, ascending = {sorted}",
            rows.len()
        ),
    )
}

// 10 ------------------------------------------------------------------------

fn tree(root: &Path) -> Vec<(String, Vec<u8>)> {
    let mut out = Vec::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(dir) = stack.pop() {
        for entry in fs::read_dir(&dir).unwrap() {
            let path = entry.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                out.push((path.strip_prefix(root).unwrap().display().to_string(), fs::read(&path).unwrap()));
            }
        }
    }
    out.sort();
    out
}

fn criterion_10() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for jobs in ["1", "8"] {
        let out = dir.path().join(format!("jobs{jobs}"));
        let config = serde_json::json!({
            "master_seed": 42,
            "n_vars": 10,
            "k_values": [1, 3],
            "m_values": [2, 3],
            "landscapes_per_cell": 4,
            "runs_per_instance": 6,
            "t_max": 1000,
            "k_folds": 4,
            "output_dir": out,
        });
        let path = dir.path().join(format!("config{jobs}.json"));
        fs::write(&path, config.to_string()).unwrap();
        let status = Command::new(env!("CARGO_BIN_EXE_mnkbench"))
            .args(["--config", path.to_str().unwrap(), "--jobs", jobs, "all"])
            .status()
            .unwrap();
        if !status.success() {
            return Err(format!("mnkbench --jobs {jobs} all exited with {status}"));
        }
        outputs.push(tree(&out));
    }
    let reports = |t: &[(String, Vec<u8>)]| -> Vec<(String, Vec<u8>)> {
        t.iter().filter(|(p, _)| p.starts_with("reports")).cloned().collect()
    };
    let (r1, r8) = (reports(&outputs[0]), reports(&outputs[1]));
    check(
        !r1.is_empty() && r1 == r8 && outputs[0] == outputs[1],
        format!(
            "{} report files, {} files in total, identical = {}",
            r1.len(),
            outputs[0].len(),
            outputs[0] == outputs[1]
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("parameter estimates match rational counts", criterion_1),
        ("learned joint pmfs sum to one", criterion_2),
        ("ancestral sampling fidelity", criterion_3),
        ("sorting, enumeration and epsilon oracles", criterion_4),
        ("hypervolume oracles", criterion_5),
        ("ert estimator", criterion_6),
        ("regression recovery, baseline and ladder", criterion_7),
        ("desk-scale directional reproduction", criterion_8),
        ("pmf view sanity", criterion_9),
        ("determinism across --jobs", criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        let (tag, detail) = match &outcome {
            Ok(d) => ("PASS", d),
            Err(d) => ("FAIL", d),
        };
        println!("criterion {:>2} {tag}: {name} ({secs:.1} s) - {detail}", i + 1);
        failed += usize::from(outcome.is_err());
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}

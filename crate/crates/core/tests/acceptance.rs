//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Runs as a plain binary (`harness = false`) so the verdicts are always
//! printed. The process exits non-zero if any criterion fails.

use std::time::{Duration, Instant};

use brickshadow::estimation::{
    advantage_probability, compare, estimate, threshold_sweep, variance_separation, z_string,
    EstimationConfig, EstimationResult,
};
use brickshadow::frame::{
    frame_eigenvalue, s_open_closed, s_open_exact, s_per_closed, s_per_exact, t_open_exact,
    t_periodic_exact, EvalMode,
};
use brickshadow::oracle::dense::relative_error_int;
use brickshadow::oracle::{
    brute_force_frame_eigenvalue, dense_topen, dense_tper, HaarSampler, SamplerMode,
};
use brickshadow::stabilizer::{
    measure_all, random_brickwork, snapshot_value_general, snapshot_value_ztype,
};
use brickshadow::{BoundaryCondition, Ensemble, PauliString, SeedTree};
use num_rational::BigRational;
use num_traits::{Pow, ToPrimitive};
use rand::Rng;

const CLOSED_FORM_RTOL: f64 = 1e-12;
const CLOSED_FORM_MAX_N: usize = 60;
const CLOSED_FORM_BUDGET: Duration = Duration::from_secs(1);

const DENSE_RTOL: f64 = 1e-9;
const DENSE_BUDGET: Duration = Duration::from_secs(30);

const MIXED_VAR_BW: f64 = 57_899.0;
const MIXED_VAR_BW_ABS_TOL: f64 = 1.0;

const BOUNDS_MAX_N: usize = 100;

const MC_SHOTS: u64 = 100_000;
const MC_SIGMAS: f64 = 4.0;
const MC_BUDGET: Duration = Duration::from_secs(120);
const MC_SEED: u64 = 20231030;

const EST_N: usize = 10;
const EST_RUNS: u64 = 100;
const EST_SHOTS: u64 = 1_000;
const EST_SIGMAS: f64 = 4.0;
const EST_BUDGET: Duration = Duration::from_secs(300);
const EST_SEED: u64 = 20231030;

const FAST_PATH_SHOTS: u64 = 10_000;
const FAST_PATH_N: usize = 10;

const SWEEP_SAMPLES: u64 = 1 << 16;
const SWEEP_MIN_FINAL: f64 = 0.9;
const SWEEP_BUDGET: Duration = Duration::from_secs(60);
const SWEEP_SEED: u64 = 20231030;

const THRESHOLD_MAX_N: usize = 100;

struct Verdicts {
    failed: Vec<String>,
}

impl Verdicts {
    fn report(&mut self, id: &str, ok: bool, detail: String) {
        println!("{id} {}: {detail}", if ok { "PASS" } else { "FAIL" });
        if !ok {
            self.failed.push(id.to_string());
        }
    }
}

fn rational(num: i64, den: i64) -> BigRational {
    BigRational::new(num.into(), den.into())
}

fn rpow(base: &BigRational, exp: usize) -> BigRational {
    Pow::pow(base.clone(), exp)
}

fn ac1(v: &mut Verdicts) {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for n in (2..=CLOSED_FORM_MAX_N).step_by(2) {
        let exact = s_per_exact(n).unwrap().to_f64().unwrap();
        worst = worst.max(((s_per_closed(n).unwrap() - exact) / exact).abs());
        if n >= 4 {
            let exact = s_open_exact(n).unwrap().to_f64().unwrap();
            worst = worst.max(((s_open_closed(n).unwrap() - exact) / exact).abs());
        }
    }
    let elapsed = start.elapsed();
    v.report(
        "AC1",
        worst <= CLOSED_FORM_RTOL && elapsed < CLOSED_FORM_BUDGET,
        format!("recurrence vs closed form, max rel err {worst:.2e} for n <= {CLOSED_FORM_MAX_N}, {elapsed:.2?}"),
    );
}

fn ac2(v: &mut Verdicts) {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut values = Vec::new();
    for n in [2, 4, 6, 8] {
        let d = dense_tper(n).unwrap();
        worst = worst.max(relative_error_int(d, &t_periodic_exact(n).unwrap().t_per()));
        values.push(format!("tper({n})={d}"));
        if n >= 4 {
            let d = dense_topen(n).unwrap();
            worst = worst.max(relative_error_int(d, &t_open_exact(n).unwrap().t_open()));
            values.push(format!("topen({n})={d}"));
        }
    }
    let elapsed = start.elapsed();
    v.report(
        "AC2",
        worst <= DENSE_RTOL && elapsed < DENSE_BUDGET,
        format!(
            "dense traces {} ; max rel err {worst:.1e}, {elapsed:.2?}",
            values.join(" ")
        ),
    );
}

fn ac3(v: &mut Verdicts) {
    let v1 = z_string(18, &[1, 2, 3, 7, 8, 9, 11, 12, 15]).unwrap();
    let v2 = z_string(18, &[1, 2, 3, 4, 7, 8, 9, 10, 11, 12, 15]).unwrap();
    let r1 = compare(&v1, BoundaryCondition::Periodic);
    let r2 = compare(&v2, BoundaryCondition::Periodic);
    let ok = r1.partition.parts == [3, 2, 1]
        && r2.partition.parts == [3, 2, 1]
        && (r1.var_bw - MIXED_VAR_BW).abs() <= MIXED_VAR_BW_ABS_TOL
        && (r2.var_bw - MIXED_VAR_BW).abs() <= MIXED_VAR_BW_ABS_TOL
        && r1.var_lc == 19_683.0
        && r2.var_lc == 177_147.0
        && !r1.satisfied
        && r2.satisfied;
    v.report(
        "AC3",
        ok,
        format!(
            "parts {} ; varBW {:.3} / {:.3} ; varLC {} / {} ; threshold v1={} v2={}",
            r1.partition, r1.var_bw, r2.var_bw, r1.var_lc, r2.var_lc, r1.satisfied, r2.satisfied
        ),
    );
}

fn ac4(v: &mut Verdicts) {
    let e = frame_eigenvalue(
        &"ZZ".parse().unwrap(),
        BoundaryCondition::Periodic,
        EvalMode::Exact,
    );
    let ok = e.exact.as_ref() == Some(&rational(1, 5));
    v.report(
        "AC4",
        ok,
        format!("n=2 periodic eigenvalue {}", e.exact.unwrap()),
    );
}

fn ac5(v: &mut Verdicts) {
    let two = rational(2, 1);
    let low_per = rational(4, 5);
    let base = rational(21, 10);
    let low_open = rational(3, 10);
    let high_open = rational(3, 5);
    let mut bad = Vec::new();
    for n in (2..=BOUNDS_MAX_N).step_by(2) {
        let inv = s_per_exact(n).unwrap().recip();
        if !(&low_per * rpow(&two, n) < inv && inv < rpow(&base, n + 1)) {
            bad.push(format!("per n={n}"));
        }
        if n >= 4 {
            let inv = s_open_exact(n).unwrap().recip();
            if !(&low_open * rpow(&two, n) < inv && inv < &high_open * rpow(&base, n)) {
                bad.push(format!("open n={n}"));
            }
        }
    }
    v.report(
        "AC5",
        bad.is_empty(),
        format!("exact bounds for even n <= {BOUNDS_MAX_N}; violations: {bad:?}"),
    );
}

fn ac6(v: &mut Verdicts) {
    let cases = [
        ("ZZ", BoundaryCondition::Periodic),
        ("XI", BoundaryCondition::Periodic),
        ("IZZI", BoundaryCondition::Open),
        ("ZIIZ", BoundaryCondition::Periodic),
        ("XYZX", BoundaryCondition::Periodic),
        ("ZIII", BoundaryCondition::Open),
        ("ZZIIII", BoundaryCondition::Periodic),
        ("XZYYZX", BoundaryCondition::Periodic),
        ("IXIIYI", BoundaryCondition::Open),
    ];
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    let mut details = Vec::new();
    for (k, (text, boundary)) in cases.iter().enumerate() {
        let p: PauliString = text.parse().unwrap();
        let analytic = frame_eigenvalue(&p, *boundary, EvalMode::Exact).float;
        let sampler = HaarSampler::new(MC_SEED + k as u64, SamplerMode::HaarTwoQubit);
        let est = brute_force_frame_eigenvalue(&p, *boundary, &sampler, MC_SHOTS).unwrap();
        let z = est.z_score(analytic);
        worst = worst.max(z);
        details.push(format!(
            "{text}/{boundary} {:.4}±{:.4} vs {analytic:.4}",
            est.mean, est.stderr
        ));
    }
    let elapsed = start.elapsed();
    v.report(
        "AC6",
        worst <= MC_SIGMAS && elapsed < MC_BUDGET,
        format!(
            "max z {worst:.2} over {} cases ({}), {elapsed:.2?}",
            cases.len(),
            details.join("; ")
        ),
    );
}

fn ac7(v: &mut Verdicts) {
    let start = Instant::now();
    let observables = [
        (
            "v_full",
            z_string(EST_N, &(0..EST_N).collect::<Vec<_>>()).unwrap(),
        ),
        (
            "v_thres",
            z_string(EST_N, &[0, 1, 2, 3, 4, 6, 8, 9]).unwrap(),
        ),
        ("v_half", z_string(EST_N, &[0, 2, 4, 6, 8]).unwrap()),
    ];
    let run = |p: &PauliString, ensemble: Ensemble, salt: u64| -> EstimationResult {
        let config = EstimationConfig::new(
            p.clone(),
            ensemble,
            EST_SHOTS,
            EST_RUNS,
            SeedTree::new(EST_SEED).derive(salt).seed(),
        );
        estimate(&config).unwrap()
    };
    let mut all_ok = true;
    let mut sub = |v: &mut Verdicts, id: String, ok: bool, detail: String| {
        all_ok &= ok;
        v.report(&id, ok, detail);
    };
    for (k, (name, p)) in observables.iter().enumerate() {
        let bw = run(p, Ensemble::BwPeriodic, 2 * k as u64);
        let lc = run(p, Ensemble::LocalClifford, 2 * k as u64 + 1);
        for (label, r) in [("BW", &bw), ("LC", &lc)] {
            let sigma = r.single_shot_variance.sqrt();
            let tol = EST_SIGMAS * sigma / (r.total_shots as f64).sqrt();
            sub(
                v,
                format!("AC7.unbiased.{name}.{label}"),
                (r.grand_mean - 1.0).abs() <= tol,
                format!("grand mean {:.4}, tolerance {tol:.4}", r.grand_mean),
            );
            let slack = EST_SIGMAS * r.single_shot_variance_stderr;
            sub(
                v,
                format!("AC7.bound.{name}.{label}"),
                r.single_shot_variance <= r.variance_bound + slack,
                format!(
                    "variance {:.1} <= bound {:.1} + {slack:.1}",
                    r.single_shot_variance, r.variance_bound
                ),
            );
        }
        let (winner, loser, expect) = if *name == "v_half" {
            (&lc, &bw, "LC")
        } else {
            (&bw, &lc, "BW")
        };
        let sep = variance_separation(winner, loser);
        sub(
            v,
            format!("AC7.order.{name}"),
            sep >= EST_SIGMAS,
            format!(
                "{expect} smaller: var BW {:.1} vs LC {:.1}, separation {sep:.2} sigma",
                bw.single_shot_variance, lc.single_shot_variance
            ),
        );
    }
    let elapsed = start.elapsed();
    let ok = all_ok && elapsed < EST_BUDGET;
    v.report(
        "AC7",
        ok,
        format!("estimator reproduction at n={EST_N}, {EST_RUNS}x{EST_SHOTS} shots, {elapsed:.2?}"),
    );
}

fn ac8(v: &mut Verdicts) {
    let root = SeedTree::new(8);
    let mut mismatches = 0u64;
    let mut nonzero = 0u64;
    for shot in 0..FAST_PATH_SHOTS {
        let seed = root.derive(shot);
        let boundary = if shot % 2 == 0 {
            BoundaryCondition::Periodic
        } else {
            BoundaryCondition::Open
        };
        let u = random_brickwork(FAST_PATH_N, boundary, seed.derive(0)).unwrap();
        let outcome = measure_all(&u, &mut seed.derive(1).rng());
        let mut rng = seed.derive(2).rng();
        let qubits: Vec<usize> = (0..FAST_PATH_N).filter(|_| rng.random::<bool>()).collect();
        let p = z_string(FAST_PATH_N, &qubits).unwrap();
        let fast = snapshot_value_ztype(&u, &p).unwrap();
        let general = snapshot_value_general(&u, &outcome, &p);
        mismatches += (fast != general) as u64;
        nonzero += (general != 0) as u64;
    }
    v.report(
        "AC8",
        mismatches == 0,
        format!("{mismatches} disagreements in {FAST_PATH_SHOTS} shots at n={FAST_PATH_N} ({nonzero} non-zero values)"),
    );
}

fn ac9(v: &mut Verdicts) {
    let start = Instant::now();
    let ns: Vec<usize> = (4..=24).step_by(2).collect();
    let ps: Vec<f64> = ns
        .iter()
        .map(|&n| {
            advantage_probability(n, SWEEP_SAMPLES, SWEEP_SEED, BoundaryCondition::Periodic)
                .unwrap()
                .p_hat
        })
        .collect();
    let k = ns.len() as f64;
    let mx = ns.iter().map(|&n| n as f64).sum::<f64>() / k;
    let my = ps.iter().sum::<f64>() / k;
    let slope = ns
        .iter()
        .zip(&ps)
        .map(|(&n, p)| (n as f64 - mx) * (p - my))
        .sum::<f64>()
        / ns.iter().map(|&n| (n as f64 - mx).powi(2)).sum::<f64>();
    let last = *ps.last().unwrap();
    let elapsed = start.elapsed();
    let ok = slope > 0.0 && last > SWEEP_MIN_FINAL && last > ps[0] && elapsed < SWEEP_BUDGET;
    let table: Vec<String> = ns
        .iter()
        .zip(&ps)
        .map(|(n, p)| format!("{n}:{p:.3}"))
        .collect();
    v.report(
        "AC9",
        ok,
        format!(
            "p_hat {} ; OLS slope {slope:.2e}/qubit, {elapsed:.2?}",
            table.join(" ")
        ),
    );
}

fn ac10(v: &mut Verdicts) {
    let rows = threshold_sweep(THRESHOLD_MAX_N).unwrap();
    let bad: Vec<usize> = rows
        .iter()
        .filter(|r| r.min_support > r.sufficient_bound)
        .map(|r| r.n)
        .collect();
    let last = rows.last().unwrap();
    v.report(
        "AC10",
        bad.is_empty(),
        format!(
            "minimal support within ceil(0.68n+0.12)+1 for even n <= {THRESHOLD_MAX_N}; violations {bad:?}; ratio at n={} is {:.3}",
            last.n, last.ratio
        ),
    );
}

fn main() {
    let mut v = Verdicts { failed: Vec::new() };
    ac1(&mut v);
    ac2(&mut v);
    ac3(&mut v);
    ac4(&mut v);
    ac5(&mut v);
    ac6(&mut v);
    ac7(&mut v);
    ac8(&mut v);
    ac9(&mut v);
    ac10(&mut v);
    if v.failed.is_empty() {
        println!("acceptance: all criteria passed");
    } else {
        println!("acceptance: failed {}", v.failed.join(", "));
        std::process::exit(1);
    }
}

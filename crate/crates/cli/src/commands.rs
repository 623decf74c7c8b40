use std::fs::File;
use std::io::BufWriter;

use brickshadow::estimation::{
    self, advantage_probability, advantage_probability_exhaustive, EstimationConfig, Estimator,
};
use brickshadow::frame::{t_open_exact, t_periodic_exact};
use brickshadow::oracle::dense::MAX_DENSE_QUBITS;
use brickshadow::oracle::sampling::{MAX_SAMPLED_QUBITS, MIN_SHOTS};
use brickshadow::oracle::{
    brute_force_frame_eigenvalue, dense_frame_eigenvalue, dense_topen, dense_tper, HaarSampler,
    SamplerMode,
};
use brickshadow::stabilizer::write_snapshots_csv;
use brickshadow::{
    brick_support, bw_partition, frame_eigenvalue, BoundaryCondition, Ensemble, EvalMode,
    PauliString, SeedTree,
};
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::output::{emit, RunManifest};
use crate::{
    CliError, CompareArgs, EnsembleArg, EstimateArgs, EstimatorArg, FrameEigArgs, ModeArg,
    OracleCheckArgs, SweepProbArgs, ThresholdSweepArgs,
};

/// Dense contractions are floating point over at most 4⁸ terms.
const DENSE_REL_TOL: f64 = 1e-9;
const SAMPLED_Z_LIMIT: f64 = 4.0;

#[derive(Debug, Serialize)]
struct FrameEigRow {
    n: usize,
    pauli: String,
    boundary: BoundaryCondition,
    exact_num: Option<String>,
    exact_den: Option<String>,
    float: f64,
    partition: String,
    supported_bricks: usize,
}

pub fn frame_eig(a: &FrameEigArgs) -> Result<(), CliError> {
    let paulis = match (a.n, a.all_supported) {
        (Some(n), true) => vec![PauliString::z_on(n, 0..n)?],
        _ => a.pauli.clone(),
    };
    let mode = match a.mode {
        ModeArg::Exact => EvalMode::Exact,
        ModeArg::Float => EvalMode::Float,
    };
    let rows: Vec<FrameEigRow> = paulis
        .iter()
        .map(|v| {
            let s = frame_eigenvalue(v, a.boundary, mode);
            let partition = bw_partition(&brick_support(v, a.boundary));
            FrameEigRow {
                n: v.num_qubits(),
                pauli: v.to_string(),
                boundary: a.boundary,
                exact_num: s.exact.as_ref().map(|r| r.numer().to_string()),
                exact_den: s.exact.as_ref().map(|r| r.denom().to_string()),
                float: s.float,
                partition: partition.to_string(),
                supported_bricks: partition.total(),
            }
        })
        .collect();
    let mut manifest = RunManifest::new("frame-eig", a, None)?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    manifest.finish()
}

#[derive(Debug, Serialize)]
struct OracleRow {
    quantity: String,
    analytic: f64,
    dense: f64,
    sampled: Option<f64>,
    stderr: Option<f64>,
    pass: bool,
}

fn rel(a: f64, b: f64) -> f64 {
    ((a - b) / b).abs()
}

pub fn oracle_check(a: &OracleCheckArgs) -> Result<(), CliError> {
    let n = a.n;
    if n < 2 || n % 2 == 1 || n > MAX_DENSE_QUBITS {
        return Err(CliError::Usage(format!(
            "--n must be even and between 2 and {MAX_DENSE_QUBITS}, got {n}"
        )));
    }
    if a.shots != 0 && a.shots < MIN_SHOTS {
        return Err(CliError::Usage(format!(
            "--shots must be 0 or at least {MIN_SHOTS}"
        )));
    }
    let mut rows = Vec::new();
    let tper = t_periodic_exact(n)?.t_per().to_f64().expect("finite");
    let dense = dense_tper(n)?;
    rows.push(OracleRow {
        quantity: format!("t_per({n})"),
        analytic: tper,
        dense,
        sampled: None,
        stderr: None,
        pass: rel(dense, tper) <= DENSE_REL_TOL,
    });
    if n >= 4 {
        let topen = t_open_exact(n)?.t_open().to_f64().expect("finite");
        let dense = dense_topen(n)?;
        rows.push(OracleRow {
            quantity: format!("t_open({n})"),
            analytic: topen,
            dense,
            sampled: None,
            stderr: None,
            pass: rel(dense, topen) <= DENSE_REL_TOL,
        });
    }

    let root = SeedTree::new(a.seed);
    let mut strings = vec![
        PauliString::z_on(n, [1 % n, 2 % n])?,
        PauliString::z_on(n, 0..n)?,
        PauliString::random(n, &mut root.derive(0).rng())?,
    ];
    strings.dedup();
    let boundaries: &[BoundaryCondition] = if n >= 4 {
        &[BoundaryCondition::Periodic, BoundaryCondition::Open]
    } else {
        &[BoundaryCondition::Periodic]
    };
    let sample = a.shots > 0 && n <= MAX_SAMPLED_QUBITS;
    let mut label = 1u64;
    for &b in boundaries {
        for v in &strings {
            let analytic = frame_eigenvalue(v, b, EvalMode::Exact).float;
            let dense = dense_frame_eigenvalue(v, b)?;
            let mut pass = rel(dense, analytic) <= DENSE_REL_TOL;
            let (sampled, stderr) = if sample {
                let sampler =
                    HaarSampler::new(root.derive(label).seed(), SamplerMode::HaarTwoQubit);
                let est = brute_force_frame_eigenvalue(v, b, &sampler, a.shots)?;
                pass &= est.z_score(analytic) <= SAMPLED_Z_LIMIT;
                (Some(est.mean), Some(est.stderr))
            } else {
                (None, None)
            };
            label += 1;
            rows.push(OracleRow {
                quantity: format!("<{v}|S|{v}> {b}"),
                analytic,
                dense,
                sampled,
                stderr,
                pass,
            });
        }
    }

    let mut manifest = RunManifest::new("oracle-check", a, Some(a.seed))?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    manifest.finish()?;
    let failed: Vec<&str> = rows
        .iter()
        .filter(|r| !r.pass)
        .map(|r| r.quantity.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(CliError::CrossCheck(failed.join(", ")))
    }
}

#[derive(Debug, Serialize)]
struct EstimateRow {
    run: u64,
    shots: u64,
    estimate: f64,
}

pub fn estimate(a: &EstimateArgs) -> Result<(), CliError> {
    if let Some(n) = a.n {
        if n != a.pauli.num_qubits() {
            return Err(CliError::Usage(format!(
                "--n {n} does not match the {}-qubit Pauli string",
                a.pauli.num_qubits()
            )));
        }
    }
    let ensemble = match a.ensemble {
        EnsembleArg::Bw => Ensemble::brickwork(a.boundary),
        EnsembleArg::Lc => Ensemble::LocalClifford,
    };
    let mut config = EstimationConfig::new(a.pauli.clone(), ensemble, a.shots, a.runs, a.seed);
    config.cross_check = a.cross_check;
    config.estimator = match a.estimator {
        EstimatorArg::Mean => Estimator::Mean,
        EstimatorArg::MedianOfMeans => Estimator::MedianOfMeans { batches: a.batches },
    };
    let result = estimation::estimate(&config)?;
    let rows: Vec<EstimateRow> = result
        .per_run
        .iter()
        .enumerate()
        .map(|(run, &estimate)| EstimateRow {
            run: run as u64,
            shots: a.shots,
            estimate,
        })
        .collect();

    let mut manifest = RunManifest::new("estimate", a, Some(a.seed))?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    if let Some(path) = &a.snapshots {
        let snaps = estimation::simulate_run(&config, 0)?;
        write_snapshots_csv(BufWriter::new(File::create(path)?), &snaps)?;
        manifest.outputs.push(path.clone());
    }
    manifest.finish()?;
    eprintln!(
        "{} under {ensemble}: mean {:.6} ± {:.6} over {} shots; eigenvalue {:.6e}, variance bound {:.4}, single-shot variance {:.4} ± {:.4}",
        a.pauli,
        result.grand_mean,
        result.grand_mean_stderr(),
        result.total_shots,
        result.eigenvalue,
        result.variance_bound,
        result.single_shot_variance,
        result.single_shot_variance_stderr,
    );
    Ok(())
}

#[derive(Debug, Serialize)]
struct CompareRow {
    pauli: String,
    var_bw: f64,
    var_lc: f64,
    lhs: usize,
    rhs: f64,
    satisfied: bool,
    partition: String,
    bw_advantage: bool,
}

pub fn compare(a: &CompareArgs) -> Result<(), CliError> {
    let rows: Vec<CompareRow> = a
        .pauli
        .iter()
        .map(|v| {
            let r = estimation::compare(v, a.boundary);
            CompareRow {
                pauli: r.pauli,
                var_bw: r.var_bw,
                var_lc: r.var_lc,
                lhs: r.threshold_lhs,
                rhs: r.threshold_rhs,
                satisfied: r.satisfied,
                partition: r.partition.to_string(),
                bw_advantage: r.bw_advantage,
            }
        })
        .collect();
    let mut manifest = RunManifest::new("compare", a, None)?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    manifest.finish()
}

#[derive(Debug, Serialize)]
struct SweepRow {
    n: usize,
    samples: u64,
    p_hat: f64,
    stderr: f64,
}

pub fn sweep_prob(a: &SweepProbArgs) -> Result<(), CliError> {
    let (lo, hi) = a.n.map_or((a.n_min, a.n_max), |n| (n, n));
    if lo < 2 || lo % 2 == 1 || hi < lo {
        return Err(CliError::Usage(format!(
            "qubit range must start at an even n >= 2 and be non-empty, got {lo}..={hi}"
        )));
    }
    let mut rows = Vec::new();
    for n in (lo..=hi).step_by(2) {
        rows.push(if a.exhaustive {
            SweepRow {
                n,
                samples: 4u64.checked_pow(n as u32).unwrap_or(u64::MAX),
                p_hat: advantage_probability_exhaustive(n, a.boundary)?,
                stderr: 0.0,
            }
        } else {
            let p = advantage_probability(n, a.samples, a.seed, a.boundary)?;
            SweepRow {
                n,
                samples: p.samples,
                p_hat: p.p_hat,
                stderr: p.stderr,
            }
        });
    }
    let mut manifest = RunManifest::new("sweep-prob", a, Some(a.seed))?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    manifest.finish()
}

pub fn threshold_sweep(a: &ThresholdSweepArgs) -> Result<(), CliError> {
    let rows = estimation::threshold_sweep(a.n_max)?;
    let mut manifest = RunManifest::new("threshold-sweep", a, None)?;
    emit(&rows, a.output.json, a.output.out.as_deref(), &mut manifest)?;
    manifest.finish()
}

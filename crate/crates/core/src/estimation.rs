//! Shadow estimators for Pauli expectation values and the brickwork vs.
//! local-Clifford comparison.

use num_bigint::BigInt;
use num_traits::{Pow, ToPrimitive};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::frame::{ensemble_eigenvalue, frame_eigenvalue, s_per_exact, Ensemble, EvalMode};
use crate::pauli::{
    brick_support, bw_partition, lc_support_size, BoundaryCondition, BwPartition, PauliString,
};
use crate::rng::SeedTree;
use crate::stabilizer::{
    measure_all, random_brickwork, random_local_layer, snapshot_value_general,
    snapshot_value_ztype, CliffordElement, Snapshot,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum Estimator {
    Mean,
    MedianOfMeans { batches: u64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationConfig {
    pub pauli: PauliString,
    pub ensemble: Ensemble,
    pub shots: u64,
    pub runs: u64,
    pub estimator: Estimator,
    pub seed: u64,
    /// Evaluate Z-type observables on both snapshot paths and fail on any
    /// disagreement.
    pub cross_check: bool,
}

impl EstimationConfig {
    pub fn new(pauli: PauliString, ensemble: Ensemble, shots: u64, runs: u64, seed: u64) -> Self {
        EstimationConfig {
            pauli,
            ensemble,
            shots,
            runs,
            estimator: Estimator::Mean,
            seed,
            cross_check: cfg!(debug_assertions),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.pauli.num_qubits()
    }

    pub fn validate(&self) -> Result<()> {
        if self.shots == 0 {
            return Err(invalid("shots", "must be at least 1"));
        }
        if self.runs == 0 {
            return Err(invalid("runs", "must be at least 1"));
        }
        if let Estimator::MedianOfMeans { batches } = self.estimator {
            if batches == 0 || !self.shots.is_multiple_of(batches) {
                return Err(invalid(
                    "batches",
                    format!("{batches} does not divide {} shots", self.shots),
                ));
            }
        }
        if self.pauli.is_identity() {
            return Err(Error::IdentityPauli);
        }
        Ok(())
    }
}

pub fn sample_circuit(n: usize, ensemble: Ensemble, seed: SeedTree) -> Result<CliffordElement> {
    match ensemble.boundary() {
        Some(b) => random_brickwork(n, b, seed),
        None => random_local_layer(n, seed),
    }
}

fn shot_seed(master: u64, run: u64, shot: u64) -> SeedTree {
    SeedTree::new(master).derive(run).derive(shot)
}

/// One snapshot of `v` under `ensemble` on `|0…0⟩`.
pub fn simulate_shot(
    v: &PauliString,
    ensemble: Ensemble,
    seed: SeedTree,
    shot_index: u64,
    cross_check: bool,
) -> Result<Snapshot> {
    let u = sample_circuit(v.num_qubits(), ensemble, seed.derive(0))?;
    let outcome = measure_all(&u, &mut seed.derive(1).rng());
    let value = if v.is_z_type() {
        let fast = snapshot_value_ztype(&u, v)?;
        if cross_check {
            let general = snapshot_value_general(&u, &outcome, v);
            if general != fast {
                return Err(Error::FastPathMismatch {
                    shot: shot_index,
                    fast,
                    general,
                });
            }
        }
        fast
    } else {
        snapshot_value_general(&u, &outcome, v)
    };
    Ok(Snapshot {
        shot_index,
        seed: seed.seed(),
        outcome,
        value,
    })
}

/// All snapshots of one run, ordered by shot index.
pub fn simulate_run(config: &EstimationConfig, run: u64) -> Result<Vec<Snapshot>> {
    (0..config.shots)
        .into_par_iter()
        .map(|shot| {
            simulate_shot(
                &config.pauli,
                config.ensemble,
                shot_seed(config.seed, run, shot),
                shot,
                config.cross_check,
            )
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimationResult {
    pub per_run: Vec<f64>,
    pub grand_mean: f64,
    /// Sample standard deviation of the per-run estimates.
    pub run_std: f64,
    pub eigenvalue: f64,
    /// `1/⟨v|S|v⟩`.
    pub variance_bound: f64,
    /// Single-shot statistics of the rescaled snapshot `f/⟨v|S|v⟩`.
    pub single_shot_mean: f64,
    pub single_shot_variance: f64,
    pub single_shot_variance_stderr: f64,
    pub total_shots: u64,
}

impl EstimationResult {
    /// Standard error of the grand mean from the single-shot variance.
    pub fn grand_mean_stderr(&self) -> f64 {
        (self.single_shot_variance / self.total_shots as f64).sqrt()
    }
}

fn median(values: &mut [f64]) -> f64 {
    values.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
    let k = values.len();
    if k % 2 == 1 {
        values[k / 2]
    } else {
        0.5 * (values[k / 2 - 1] + values[k / 2])
    }
}

fn run_estimate(values: &[i8], scale: f64, estimator: Estimator) -> f64 {
    match estimator {
        Estimator::Mean => {
            scale * values.iter().map(|&v| v as f64).sum::<f64>() / values.len() as f64
        }
        Estimator::MedianOfMeans { batches } => {
            let size = values.len() / batches as usize;
            let mut means: Vec<f64> = values
                .chunks(size)
                .map(|c| scale * c.iter().map(|&v| v as f64).sum::<f64>() / size as f64)
                .collect();
            median(&mut means)
        }
    }
}

pub fn estimate(config: &EstimationConfig) -> Result<EstimationResult> {
    config.validate()?;
    let eigenvalue = ensemble_eigenvalue(&config.pauli, config.ensemble, EvalMode::Exact).float;
    let scale = 1.0 / eigenvalue;
    let runs: Vec<Vec<i8>> = (0..config.runs)
        .into_par_iter()
        .map(|run| {
            simulate_run(config, run)
                .map(|snaps| snaps.into_iter().map(|s| s.value).collect::<Vec<_>>())
        })
        .collect::<Result<_>>()?;

    let per_run: Vec<f64> = runs
        .iter()
        .map(|r| run_estimate(r, scale, config.estimator))
        .collect();
    let r = per_run.len() as f64;
    let grand_mean = per_run.iter().sum::<f64>() / r;
    let run_std = if per_run.len() > 1 {
        (per_run
            .iter()
            .map(|x| (x - grand_mean).powi(2))
            .sum::<f64>()
            / (r - 1.0))
            .sqrt()
    } else {
        0.0
    };

    // Rescaled snapshots take the values ±scale and 0.
    let mut counts = [0u64; 3];
    for &v in runs.iter().flatten() {
        counts[(v + 1) as usize] += 1;
    }
    let total = counts.iter().sum::<u64>();
    let m = total as f64;
    let levels = [-scale, 0.0, scale];
    let mean = levels
        .iter()
        .zip(&counts)
        .map(|(x, &c)| x * c as f64)
        .sum::<f64>()
        / m;
    let central = |p: i32| {
        levels
            .iter()
            .zip(&counts)
            .map(|(x, &c)| (x - mean).powi(p) * c as f64)
            .sum::<f64>()
            / m
    };
    let m2 = central(2);
    let m4 = central(4);
    let variance = if total > 1 { m2 * m / (m - 1.0) } else { 0.0 };
    let variance_stderr = ((m4 - m2 * m2).max(0.0) / m).sqrt();

    Ok(EstimationResult {
        per_run,
        grand_mean,
        run_std,
        eigenvalue,
        variance_bound: scale,
        single_shot_mean: mean,
        single_shot_variance: variance,
        single_shot_variance_stderr: variance_stderr,
        total_shots: total,
    })
}

/// `(var(b) - var(a)) / combined stderr`: positive when `a` has the smaller
/// single-shot variance.
pub fn variance_separation(a: &EstimationResult, b: &EstimationResult) -> f64 {
    let se = (a.single_shot_variance_stderr.powi(2) + b.single_shot_variance_stderr.powi(2)).sqrt();
    (b.single_shot_variance - a.single_shot_variance) / se
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonReport {
    pub pauli: String,
    pub boundary: BoundaryCondition,
    pub var_bw: f64,
    pub var_lc: f64,
    /// `|suppLC(v)|`
    pub threshold_lhs: usize,
    /// `0.8 |partBW(v)| + 1.4 |ṽ|`
    pub threshold_rhs: f64,
    pub satisfied: bool,
    pub partition: BwPartition,
    pub supported_bricks: usize,
    /// `var_bw ≤ var_lc`, decided in exact arithmetic.
    pub bw_advantage: bool,
}

/// Exact test of `1/⟨v|S_BW|v⟩ ≤ 3^{|suppLC(v)|}`.
pub fn bw_at_most_lc(v: &PauliString, boundary: BoundaryCondition) -> bool {
    let s = frame_eigenvalue(v, boundary, EvalMode::Exact)
        .exact
        .expect("exact mode");
    let k = lc_support_size(v);
    let three_k: BigInt = Pow::pow(BigInt::from(3), k);
    s.denom() <= &(three_k * s.numer())
}

pub fn compare(v: &PauliString, boundary: BoundaryCondition) -> ComparisonReport {
    let bw = frame_eigenvalue(v, boundary, EvalMode::Exact)
        .exact
        .expect("exact mode");
    let k = lc_support_size(v);
    let support = brick_support(v, boundary);
    let partition = bw_partition(&support);
    let rhs = 0.8 * partition.num_parts() as f64 + 1.4 * partition.total() as f64;
    ComparisonReport {
        pauli: v.to_string(),
        boundary,
        var_bw: bw.recip().to_f64().expect("finite"),
        var_lc: 3f64.powi(k as i32),
        threshold_lhs: k,
        threshold_rhs: rhs,
        satisfied: k as f64 >= rhs,
        supported_bricks: partition.total(),
        partition,
        bw_advantage: bw_at_most_lc(v, boundary),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProbabilityEstimate {
    pub n: usize,
    pub samples: u64,
    pub p_hat: f64,
    pub stderr: f64,
}

/// Fraction of uniformly random Pauli strings with `var_BW ≤ var_LC`.
pub fn advantage_probability(
    n: usize,
    samples: u64,
    seed: u64,
    boundary: BoundaryCondition,
) -> Result<ProbabilityEstimate> {
    crate::pauli::check_qubits(n)?;
    if samples == 0 {
        return Err(invalid("samples", "must be at least 1"));
    }
    let root = SeedTree::new(seed).derive(n as u64);
    let hits: u64 = (0..samples)
        .into_par_iter()
        .map(|i| {
            let v = PauliString::random(n, &mut root.derive(i).rng()).expect("n checked");
            bw_at_most_lc(&v, boundary) as u64
        })
        .sum();
    let p = hits as f64 / samples as f64;
    Ok(ProbabilityEstimate {
        n,
        samples,
        p_hat: p,
        stderr: (p * (1.0 - p) / samples as f64).sqrt(),
    })
}

/// Exact probability by enumerating weight vectors: a pattern with `k`
/// non-identity positions stands for `3^k` strings.
pub fn advantage_probability_exhaustive(n: usize, boundary: BoundaryCondition) -> Result<f64> {
    crate::pauli::check_qubits(n)?;
    if n > 24 {
        return Err(Error::TooLarge {
            what: "weight-vector enumeration",
            n,
            max: 24,
        });
    }
    let hits: u128 = (0..1u64 << n)
        .into_par_iter()
        .map(|mask| {
            let v = PauliString::z_on(n, (0..n).filter(|q| mask >> q & 1 == 1)).expect("n checked");
            if bw_at_most_lc(&v, boundary) {
                3u128.pow(mask.count_ones())
            } else {
                0
            }
        })
        .sum();
    Ok(hits as f64 / 4f64.powi(n as i32))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ThresholdRow {
    pub n: usize,
    /// Smallest `|suppLC|` of a fully supported periodic string with `var_BW ≤ var_LC`.
    pub min_support: usize,
    pub ratio: f64,
    /// `0.68 (n + 1)`
    pub analytic_line: f64,
    /// `ceil(0.68 n + 0.12) + 1`
    pub sufficient_bound: usize,
}

pub fn threshold_sweep(n_max: usize) -> Result<Vec<ThresholdRow>> {
    if n_max < 2 || n_max % 2 == 1 {
        return Err(invalid(
            "n_max",
            format!("expected an even integer >= 2, got {n_max}"),
        ));
    }
    let mut rows = Vec::new();
    for n in (2..=n_max).step_by(2) {
        let s = s_per_exact(n)?;
        // Every brick needs a supported qubit, so at least n/2 positions.
        let mut k = n / 2;
        let mut three_k: BigInt = Pow::pow(BigInt::from(3), k);
        while s.denom() > &(&three_k * s.numer()) {
            k += 1;
            three_k *= 3;
        }
        rows.push(ThresholdRow {
            n,
            min_support: k,
            ratio: k as f64 / n as f64,
            analytic_line: 0.68 * (n as f64 + 1.0),
            sufficient_bound: (0.68 * n as f64 + 0.12).ceil() as usize + 1,
        });
    }
    Ok(rows)
}

/// Z on the given 0-based qubits.
pub fn z_string(n: usize, qubits: &[usize]) -> Result<PauliString> {
    PauliString::z_on(n, qubits.iter().copied())
}

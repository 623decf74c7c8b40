//! Monte-Carlo evaluation of the defining frame-operator expression.
//!
//! `⟨v|S|v⟩ = E_U 2^{-n} Σ_i ⟨i|U W(v) U†|i⟩²`; by invariance of the
//! measurement layer under bit flips this equals `E ⟨ψ|W(v)|ψ⟩²` with
//! `ψ = U†|0⟩`, built here by applying independent random bricks to
//! `|0…0⟩`: first the measurement layer, then the shifted layer.

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::clifford_group::two_qubit_cliffords;
use super::statevector::{Mat4, StateVector, C};
use crate::error::{invalid, Error, Result};
use crate::pauli::{BoundaryCondition, PauliString};
use crate::rng::SeedTree;
use crate::stabilizer::{measurement_bricks, state_bricks};

pub const MAX_SAMPLED_QUBITS: usize = 6;
pub const MIN_SHOTS: u64 = 10_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SamplerMode {
    HaarTwoQubit,
    CliffordTwoQubit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct HaarSampler {
    pub seed: SeedTree,
    pub mode: SamplerMode,
}

/// Haar-random 4×4 unitary: Gram–Schmidt on a complex Gaussian matrix.
/// Normalising each column against the previous ones gives the QR factor
/// with positive diagonal, which is Haar distributed.
pub fn haar_unitary<R: Rng + ?Sized>(rng: &mut R) -> Mat4 {
    let mut cols: Vec<[C; 4]> = (0..4)
        .map(|_| {
            let mut col = [C::new(0.0, 0.0); 4];
            for z in &mut col {
                *z = C::new(rng.sample(StandardNormal), rng.sample(StandardNormal));
            }
            col
        })
        .collect();
    for k in 0..4 {
        for j in 0..k {
            let proj: C = (0..4).map(|r| cols[j][r].conj() * cols[k][r]).sum();
            for r in 0..4 {
                let sub = proj * cols[j][r];
                cols[k][r] -= sub;
            }
        }
        let norm = cols[k].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for z in &mut cols[k] {
            *z /= norm;
        }
    }
    let mut m = [C::new(0.0, 0.0); 16];
    for (c, col) in cols.iter().enumerate() {
        for r in 0..4 {
            m[4 * r + c] = col[r];
        }
    }
    Mat4(m)
}

impl HaarSampler {
    pub fn new(seed: u64, mode: SamplerMode) -> Self {
        HaarSampler {
            seed: SeedTree::new(seed),
            mode,
        }
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> Mat4 {
        match self.mode {
            SamplerMode::HaarTwoQubit => haar_unitary(rng),
            SamplerMode::CliffordTwoQubit => {
                let group = two_qubit_cliffords();
                group[rng.random_range(0..group.len())]
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub shots: u64,
}

impl MonteCarloEstimate {
    pub fn from_samples(values: &[f64]) -> Self {
        let m = values.len() as f64;
        let mean = values.iter().sum::<f64>() / m;
        let var = if values.len() > 1 {
            values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0)
        } else {
            0.0
        };
        MonteCarloEstimate {
            mean,
            stderr: (var / m).sqrt(),
            shots: values.len() as u64,
        }
    }

    /// `|mean - target|` in units of the standard error (0 if both vanish).
    pub fn z_score(&self, target: f64) -> f64 {
        let diff = (self.mean - target).abs();
        if diff < 1e-12 {
            0.0
        } else {
            diff / self.stderr
        }
    }
}

pub fn brute_force_frame_eigenvalue(
    v: &PauliString,
    boundary: BoundaryCondition,
    sampler: &HaarSampler,
    shots: u64,
) -> Result<MonteCarloEstimate> {
    let n = v.num_qubits();
    if n > MAX_SAMPLED_QUBITS {
        return Err(Error::TooLarge {
            what: "sampled state vector",
            n,
            max: MAX_SAMPLED_QUBITS,
        });
    }
    if shots < MIN_SHOTS {
        return Err(invalid(
            "shots",
            format!("at least {MIN_SHOTS} shots are required, got {shots}"),
        ));
    }
    let first = measurement_bricks(n);
    let second = state_bricks(n, boundary);
    let values: Vec<f64> = (0..shots)
        .into_par_iter()
        .map(|shot| {
            let mut rng = sampler.seed.derive(shot).rng();
            let mut psi = StateVector::zero(n);
            for &(a, b) in first.iter().chain(&second) {
                psi.apply_2q(&sampler.draw(&mut rng), a, b);
            }
            psi.expectation(v).powi(2)
        })
        .collect();
    Ok(MonteCarloEstimate::from_samples(&values))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SecondMomentReport {
    pub shots: u64,
    /// Largest entrywise deviation in standard errors, per twirled input.
    pub max_z_zero_state: f64,
    pub max_z_pauli: f64,
    pub max_abs_identity: f64,
    pub passed: bool,
}

const Z_LIMIT: f64 = 5.0;

/// Row-major 16×16 complex matrix on two copies of C⁴, index `c₁ + 4 c₂`.
type Mat16 = Vec<C>;

fn kron_self(m: &Mat4) -> Mat16 {
    let mut out = vec![C::new(0.0, 0.0); 256];
    for r1 in 0..4 {
        for r2 in 0..4 {
            for c1 in 0..4 {
                for c2 in 0..4 {
                    out[16 * (r1 + 4 * r2) + (c1 + 4 * c2)] = m.at(r1, c1) * m.at(r2, c2);
                }
            }
        }
    }
    out
}

fn conj_by(u: &Mat16, x: &Mat16) -> Mat16 {
    let mul = |a: &Mat16, b: &Mat16| -> Mat16 {
        let mut out = vec![C::new(0.0, 0.0); 256];
        for r in 0..16 {
            for k in 0..16 {
                let av = a[16 * r + k];
                if av == C::new(0.0, 0.0) {
                    continue;
                }
                for c in 0..16 {
                    out[16 * r + c] += av * b[16 * k + c];
                }
            }
        }
        out
    };
    let mut ud = vec![C::new(0.0, 0.0); 256];
    for r in 0..16 {
        for c in 0..16 {
            ud[16 * r + c] = u[16 * c + r].conj();
        }
    }
    mul(&mul(u, x), &ud)
}

fn swap16() -> Mat16 {
    let mut f = vec![C::new(0.0, 0.0); 256];
    for c1 in 0..4 {
        for c2 in 0..4 {
            f[16 * (c2 + 4 * c1) + (c1 + 4 * c2)] = C::new(1.0, 0.0);
        }
    }
    f
}

fn id16() -> Mat16 {
    let mut m = vec![C::new(0.0, 0.0); 256];
    for i in 0..16 {
        m[17 * i] = C::new(1.0, 0.0);
    }
    m
}

/// Worst entrywise z-score of the sample mean of `samples` against `target`,
/// treating real and imaginary parts separately.
fn max_z(samples: &[Mat16], target: &Mat16) -> f64 {
    let m = samples.len() as f64;
    let mut worst: f64 = 0.0;
    for e in 0..256 {
        for part in [|z: C| z.re, |z: C| z.im] {
            let xs: Vec<f64> = samples.iter().map(|s| part(s[e])).collect();
            let mean = xs.iter().sum::<f64>() / m;
            let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (m - 1.0);
            let diff = (mean - part(target[e])).abs();
            let z = if diff < 1e-12 {
                0.0
            } else {
                diff / (var / m).sqrt()
            };
            worst = worst.max(z);
        }
    }
    worst
}

/// Two-copy twirls of a single brick against their analytic forms:
/// `|0⟩⟨0|^{⊗2} → (𝟙 + F)/20`, `(Z⊗𝟙)^{⊗2} → (4F − 𝟙)/15`, `𝟙 → 𝟙`.
pub fn second_moment_check(sampler: &HaarSampler, shots: u64) -> Result<SecondMomentReport> {
    if shots < 2 {
        return Err(invalid("shots", "need at least two samples"));
    }
    let unitaries: Vec<Mat16> = (0..shots)
        .into_par_iter()
        .map(|shot| kron_self(&sampler.draw(&mut sampler.seed.derive(shot).rng())))
        .collect();
    let mut zero = vec![C::new(0.0, 0.0); 256];
    zero[0] = C::new(1.0, 0.0);
    let mut zz = vec![C::new(0.0, 0.0); 256];
    for c1 in 0..4usize {
        for c2 in 0..4usize {
            let sign = if (c1 & 1) ^ (c2 & 1) == 1 { -1.0 } else { 1.0 };
            zz[17 * (c1 + 4 * c2)] = C::new(sign, 0.0);
        }
    }
    let id = id16();
    let f = swap16();
    let sym: Mat16 = id.iter().zip(&f).map(|(a, b)| (a + b) / 20.0).collect();
    let q: Mat16 = id
        .iter()
        .zip(&f)
        .map(|(a, b)| (4.0 * b - a) / 15.0)
        .collect();

    let zero_tw: Vec<Mat16> = unitaries.par_iter().map(|u| conj_by(u, &zero)).collect();
    let pauli_tw: Vec<Mat16> = unitaries.par_iter().map(|u| conj_by(u, &zz)).collect();
    let max_abs_identity = unitaries
        .iter()
        .map(|u| {
            conj_by(u, &id)
                .iter()
                .zip(&id)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0, f64::max)
        })
        .fold(0.0, f64::max);
    let max_z_zero_state = max_z(&zero_tw, &sym);
    let max_z_pauli = max_z(&pauli_tw, &q);
    Ok(SecondMomentReport {
        shots,
        max_z_zero_state,
        max_z_pauli,
        max_abs_identity,
        passed: max_z_zero_state <= Z_LIMIT && max_z_pauli <= Z_LIMIT && max_abs_identity < 1e-10,
    })
}

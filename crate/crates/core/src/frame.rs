//! Diagonal frame-operator elements ⟨v|S|v⟩ for brickwork and local-Clifford
//! shadows.
//!
//! The brickwork values are products over the runs of supported bricks.
//! Exact values come from integer recurrences, since every denominator is
//! a product of powers of 10, 15 and 20. The float path evaluates the
//! closed forms in √41.
//!
//! Circuit orientation: the shifted layer (bricks on qubit pairs `(2i, 2i+1)`,
//! 1-based) acts on the state first and the unshifted layer sits next to the
//! measurement. Under open boundary conditions qubits 1 and n are therefore
//! only touched by the measurement layer. If either of them is supported the
//! run-product formula does not apply, and the value is computed by
//! contracting the two-copy chain directly with 2×2 transfer matrices.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Pow, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};
use crate::pauli::{
    brick_support, bw_partition, lc_support_size, weight_vector, BoundaryCondition, BwPartition,
    PauliString,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Ensemble {
    BwPeriodic,
    BwOpen,
    LocalClifford,
}

impl Ensemble {
    pub fn brickwork(boundary: BoundaryCondition) -> Self {
        match boundary {
            BoundaryCondition::Periodic => Ensemble::BwPeriodic,
            BoundaryCondition::Open => Ensemble::BwOpen,
        }
    }

    pub fn boundary(self) -> Option<BoundaryCondition> {
        match self {
            Ensemble::BwPeriodic => Some(BoundaryCondition::Periodic),
            Ensemble::BwOpen => Some(BoundaryCondition::Open),
            Ensemble::LocalClifford => None,
        }
    }
}

impl std::fmt::Display for Ensemble {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Ensemble::BwPeriodic => "bw-periodic",
            Ensemble::BwOpen => "bw-open",
            Ensemble::LocalClifford => "lc",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum EvalMode {
    Exact,
    Float,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FrameEigenvalue {
    pub exact: Option<BigRational>,
    pub float: f64,
    pub ensemble: Ensemble,
}

impl FrameEigenvalue {
    fn from_exact(exact: BigRational, ensemble: Ensemble) -> Self {
        let float = exact.to_f64().expect("frame eigenvalues are finite");
        FrameEigenvalue {
            exact: Some(exact),
            float,
            ensemble,
        }
    }

    pub fn is_one(&self) -> bool {
        match &self.exact {
            Some(e) => e.is_one(),
            None => self.float == 1.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodicRecurrenceState {
    pub n: usize,
    pub t1: BigInt,
    pub t2: BigInt,
    pub t3: BigInt,
}

impl PeriodicRecurrenceState {
    pub fn base() -> Self {
        PeriodicRecurrenceState {
            n: 2,
            t1: BigInt::zero(),
            t2: BigInt::from(60),
            t3: BigInt::from(24),
        }
    }

    pub fn step(&self) -> Self {
        PeriodicRecurrenceState {
            n: self.n + 2,
            t1: &self.t3 * 24,
            t2: &self.t3 * 24 + &self.t2 * 60,
            t3: &self.t1 * 24 + &self.t3 * 60,
        }
    }

    pub fn t_per(&self) -> BigInt {
        &self.t1 + &self.t2
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OpenRecurrenceState {
    pub n: usize,
    pub t1: BigInt,
    pub t2: BigInt,
}

impl OpenRecurrenceState {
    pub fn base() -> Self {
        OpenRecurrenceState {
            n: 4,
            t1: BigInt::from(48),
            t2: BigInt::from(216),
        }
    }

    pub fn step(&self) -> Self {
        OpenRecurrenceState {
            n: self.n + 2,
            t1: &self.t2 * 24,
            t2: &self.t1 * 24 + &self.t2 * 60,
        }
    }

    pub fn t_open(&self) -> BigInt {
        &self.t1 * 4 + &self.t2 * 2
    }
}

fn check_even(name: &'static str, m: usize, min: usize) -> Result<()> {
    if m < min || m % 2 == 1 {
        Err(invalid(
            name,
            format!("expected an even integer >= {min}, got {m}"),
        ))
    } else {
        Ok(())
    }
}

pub fn t_periodic_exact(n: usize) -> Result<PeriodicRecurrenceState> {
    check_even("n", n, 2)?;
    let mut state = PeriodicRecurrenceState::base();
    while state.n < n {
        state = state.step();
    }
    Ok(state)
}

pub fn t_open_exact(n: usize) -> Result<OpenRecurrenceState> {
    check_even("n", n, 4)?;
    let mut state = OpenRecurrenceState::base();
    while state.n < n {
        state = state.step();
    }
    Ok(state)
}

/// `t_open(4), t_open(6), …, t_open(m_max)` in one pass.
fn t_open_table(m_max: usize) -> Vec<BigInt> {
    let mut out = Vec::new();
    let mut state = OpenRecurrenceState::base();
    while state.n <= m_max {
        out.push(state.t_open());
        state = state.step();
    }
    out
}

fn big_pow(base: u32, exp: usize) -> BigInt {
    Pow::pow(BigInt::from(base), exp)
}

fn ratio(num: BigInt, den: BigInt) -> BigRational {
    BigRational::new(num, den)
}

/// Exact s_per(m) = t_per(m) / (10^m · 3^{m/2}).
pub fn s_per_exact(m: usize) -> Result<BigRational> {
    let t = t_periodic_exact(m)?.t_per();
    Ok(ratio(t, big_pow(10, m) * big_pow(3, m / 2)))
}

/// Exact s_open(m) = t_open(m) / (15^{m/2-1} · 20^{m/2}).
pub fn s_open_exact(m: usize) -> Result<BigRational> {
    let t = t_open_exact(m)?.t_open();
    Ok(ratio(t, big_pow(15, m / 2 - 1) * big_pow(20, m / 2)))
}

pub fn s_per_closed(m: usize) -> Result<f64> {
    check_even("m", m, 2)?;
    let r = 41f64.sqrt();
    let h = (m / 2) as i32;
    let sign = if h % 2 == 0 { 1.0 } else { -1.0 };
    // (5√2)^m = 50^{m/2}
    Ok(((r + 5.0).powi(h) + sign * (r - 5.0).powi(h)) / 50f64.powi(h))
}

pub fn s_open_closed(m: usize) -> Result<f64> {
    check_even("m", m, 4)?;
    let r = 41f64.sqrt();
    let h = (m / 2) as i32;
    let sign = if h % 2 == 0 { -1.0 } else { 1.0 };
    let num = (25.0 - 3.0 * r) * (r + 5.0).powi(h) + sign * (25.0 + 3.0 * r) * (r - 5.0).powi(h);
    Ok(5.0 / (2.0 * r) * num / 50f64.powi(h))
}

fn edge_supported(v: &PauliString) -> bool {
    let wt = weight_vector(v);
    wt.get(0) || wt.get(v.num_qubits() - 1)
}

/// The run-product formula applies: everything except open boundaries with
/// a supported edge qubit.
pub fn product_formula_applies(v: &PauliString, boundary: BoundaryCondition) -> bool {
    boundary == BoundaryCondition::Periodic || !edge_supported(v)
}

/// ⟨v|S|v⟩ for one round of a brickwork circuit.
pub fn frame_eigenvalue(
    v: &PauliString,
    boundary: BoundaryCondition,
    mode: EvalMode,
) -> FrameEigenvalue {
    let ensemble = Ensemble::brickwork(boundary);
    let n = v.num_qubits();
    if v.is_identity() {
        return FrameEigenvalue::from_exact(BigRational::one(), ensemble);
    }
    if !product_formula_applies(v, boundary) {
        let exact = transfer_matrix_eigenvalue(v, boundary);
        return match mode {
            EvalMode::Exact => FrameEigenvalue::from_exact(exact, ensemble),
            EvalMode::Float => FrameEigenvalue {
                float: exact.to_f64().expect("finite"),
                exact: None,
                ensemble,
            },
        };
    }
    let support = brick_support(v, boundary);
    let partition = bw_partition(&support);
    match mode {
        EvalMode::Exact => {
            FrameEigenvalue::from_exact(partition_eigenvalue_exact(&partition, n), ensemble)
        }
        EvalMode::Float => FrameEigenvalue {
            exact: None,
            float: partition_eigenvalue_closed(&partition, n),
            ensemble,
        },
    }
}

/// Exact eigenvalue from a partition, using the single 15^{|ṽ|} prefactor form:
/// `15^{-|ṽ|} ∏ t_open(2l+2) / 20^{l+1}`, or `t_per(n) / (10^n 3^{n/2})` for a
/// full cycle.
pub fn partition_eigenvalue_exact(partition: &BwPartition, n: usize) -> BigRational {
    if partition.is_full_cycle {
        return s_per_exact(n).expect("n validated by PauliString");
    }
    let Some(&largest) = partition.parts.first() else {
        return BigRational::one();
    };
    let table = t_open_table(2 * largest + 2);
    let mut num = BigInt::one();
    let mut den = big_pow(15, partition.total());
    for &l in &partition.parts {
        num *= &table[l - 1];
        den *= big_pow(20, l + 1);
    }
    ratio(num, den)
}

/// The same eigenvalue written as a plain product of `s_open(2l+2)` factors.
pub fn partition_eigenvalue_factored(partition: &BwPartition, n: usize) -> BigRational {
    if partition.is_full_cycle {
        return s_per_exact(n).expect("n validated by PauliString");
    }
    partition
        .parts
        .iter()
        .map(|&l| s_open_exact(2 * l + 2).expect("parts are positive"))
        .fold(BigRational::one(), |acc, s| acc * s)
}

pub fn partition_eigenvalue_closed(partition: &BwPartition, n: usize) -> f64 {
    if partition.is_full_cycle {
        return s_per_closed(n).expect("n validated by PauliString");
    }
    partition
        .parts
        .iter()
        .map(|&l| s_open_closed(2 * l + 2).expect("parts are positive"))
        .product()
}

type Mat2 = [[BigInt; 2]; 2];

fn mat(a: i64, b: i64, c: i64, d: i64) -> Mat2 {
    [[a.into(), b.into()], [c.into(), d.into()]]
}

fn mat_mul(a: &Mat2, b: &Mat2) -> Mat2 {
    let e = |i: usize, j: usize| &a[i][0] * &b[0][j] + &a[i][1] * &b[1][j];
    [[e(0, 0), e(0, 1)], [e(1, 0), e(1, 1)]]
}

/// Direct contraction of ⟨v|S|v⟩ as a chain of 2×2 transfer matrices.
///
/// Each measurement-layer brick contributes `𝟙 + F_(2)` and each state-layer
/// brick its twirled operator, so every qubit carries a power of the copy
/// swap `F` and contributes a trace factor of 4 (even) or 2 (odd). Summing
/// over the choices of each measurement brick gives, per state-layer brick,
/// `[[0, 24], [24, 60]] / 15` when supported and `[[16, 8], [8, 4]]`
/// otherwise. An untouched edge qubit contributes `(4, 2)` when idle and
/// `(0, 2)` when supported. The total is normalised by `20^{n/2}`.
pub fn transfer_matrix_eigenvalue(v: &PauliString, boundary: BoundaryCondition) -> BigRational {
    let n = v.num_qubits();
    let support = brick_support(v, boundary);
    let brick_matrix = |i: usize| {
        if support.bits().get(i) {
            mat(0, 24, 24, 60)
        } else {
            mat(16, 8, 8, 4)
        }
    };
    let den = big_pow(15, support.weight()) * big_pow(20, n / 2);
    let num = match boundary {
        BoundaryCondition::Periodic => {
            let mut acc = mat(1, 0, 0, 1);
            for i in 0..n / 2 {
                acc = mat_mul(&acc, &brick_matrix(i));
            }
            &acc[0][0] + &acc[1][1]
        }
        BoundaryCondition::Open => {
            let wt = weight_vector(v);
            let edge = |supported: bool| -> [BigInt; 2] {
                if supported {
                    [0.into(), 2.into()]
                } else {
                    [4.into(), 2.into()]
                }
            };
            let mut row = edge(wt.get(0));
            for i in 0..n / 2 - 1 {
                let m = brick_matrix(i);
                row = [
                    &row[0] * &m[0][0] + &row[1] * &m[1][0],
                    &row[0] * &m[0][1] + &row[1] * &m[1][1],
                ];
            }
            let right = edge(wt.get(n - 1));
            &row[0] * &right[0] + &row[1] * &right[1]
        }
    };
    ratio(num, den)
}

/// ⟨v|S_LC|v⟩ = 3^{-|supp(v)|}.
pub fn lc_frame_eigenvalue(v: &PauliString) -> FrameEigenvalue {
    let k = lc_support_size(v);
    FrameEigenvalue::from_exact(ratio(BigInt::one(), big_pow(3, k)), Ensemble::LocalClifford)
}

pub fn ensemble_eigenvalue(v: &PauliString, ensemble: Ensemble, mode: EvalMode) -> FrameEigenvalue {
    match ensemble.boundary() {
        Some(b) => frame_eigenvalue(v, b, mode),
        None => lc_frame_eigenvalue(v),
    }
}

/// Second-moment bound 1/⟨v|S|v⟩ on the single-snapshot variance.
pub fn variance_bound(v: &PauliString, ensemble: Ensemble) -> Result<f64> {
    if v.is_identity() {
        return Err(Error::IdentityPauli);
    }
    let eig = ensemble_eigenvalue(v, ensemble, EvalMode::Exact);
    let exact = eig.exact.expect("exact mode");
    Ok(exact.recip().to_f64().expect("finite"))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct BoundConstants {
    pub a: f64,
    /// Modulus of the purely imaginary constant b.
    pub b: f64,
    pub c: f64,
    pub d: f64,
    #[serde(rename = "Gamma")]
    pub gamma: f64,
    #[serde(rename = "Delta")]
    pub delta: f64,
}

pub fn bound_constants() -> BoundConstants {
    let r = 41f64.sqrt();
    let norm = 5.0 * 2f64.sqrt();
    let a = (r + 5.0).sqrt() / norm;
    let b = (r - 5.0).sqrt() / norm;
    let c = 5.0 * (25.0 - 3.0 * r) / (2.0 * r);
    let d = 5.0 * (25.0 + 3.0 * r) / (2.0 * r);
    let gamma = (1.0 / c) / (1.0 - (d / c) * (b / a).powi(4));
    BoundConstants {
        a,
        b,
        c,
        d,
        gamma,
        delta: 1.0 / a,
    }
}

/// `2.2^{#parts} · 4.4^{Σ parts}`.
pub fn general_variance_bound(partition: &BwPartition) -> Result<f64> {
    if partition.is_full_cycle {
        return Err(invalid(
            "partition",
            "the bound covers open components only",
        ));
    }
    Ok(2.2f64.powi(partition.parts.len() as i32) * 4.4f64.powi(partition.total() as i32))
}

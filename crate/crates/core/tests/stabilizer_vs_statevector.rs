//! Random H/S/CNOT/Pauli circuits run through the tableau simulator and a
//! dense state vector must agree on conjugated Paulis, snapshot values and
//! outcome distributions.

use brickshadow::oracle::statevector::{pauli_matrix, Mat2, Mat4, StateVector, C};
use brickshadow::stabilizer::{
    snapshot_value_general, snapshot_value_ztype, CliffordElement, LocalClifford,
};
use brickshadow::{F2Vec, PauliString, SeedTree};
use rand::Rng;

const N: usize = 4;
const DIM: usize = 1 << N;
const GATES: usize = 40;
const CIRCUITS: u64 = 25;
const MEASURE_SHOTS: usize = 20_000;
const TV_LIMIT: f64 = 0.05;
const EPS: f64 = 1e-9;

enum Gate {
    One(LocalClifford, Mat2),
    Two(LocalClifford, Mat4),
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

fn hadamard() -> Mat2 {
    let s = 0.5f64.sqrt();
    Mat2([c(s, 0.0), c(s, 0.0), c(s, 0.0), c(-s, 0.0)])
}

fn phase() -> Mat2 {
    Mat2([c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)])
}

fn cnot() -> Mat4 {
    let mut m = [c(0.0, 0.0); 16];
    for (r, col) in [(0, 0), (3, 1), (2, 2), (1, 3)] {
        m[4 * r + col] = c(1.0, 0.0);
    }
    Mat4(m)
}

fn letter_bits(letter: char) -> F2Vec {
    let (z, x) = match letter {
        'X' => (false, true),
        'Y' => (true, true),
        'Z' => (true, false),
        _ => unreachable!(),
    };
    F2Vec::from_bools([z, x])
}

/// A random circuit applied to both representations; returns the tableau
/// and the dense unitary as columns `U|j⟩`.
fn random_circuit(seed: u64) -> (CliffordElement, Vec<StateVector>) {
    let mut rng = SeedTree::new(seed).rng();
    let mut u = CliffordElement::identity(N);
    let mut columns: Vec<StateVector> = (0..DIM)
        .map(|j| {
            let mut s = StateVector::zero(N);
            for q in (0..N).filter(|q| j >> q & 1 == 1) {
                s.apply_1q(&pauli_matrix('X'), q);
            }
            s
        })
        .collect();
    for _ in 0..GATES {
        let gate = match rng.random_range(0..4) {
            0 => Gate::One(LocalClifford::hadamard(), hadamard()),
            1 => Gate::One(LocalClifford::phase_gate(), phase()),
            2 => Gate::Two(LocalClifford::cnot(), cnot()),
            _ => {
                let l = ['X', 'Y', 'Z'][rng.random_range(0..3)];
                Gate::One(LocalClifford::pauli(&letter_bits(l)), pauli_matrix(l))
            }
        };
        match gate {
            Gate::One(g, m) => {
                let q = rng.random_range(0..N);
                u.apply_local(&g, &[q]);
                columns.iter_mut().for_each(|s| s.apply_1q(&m, q));
            }
            Gate::Two(g, m) => {
                let a = rng.random_range(0..N);
                let b = (a + rng.random_range(1..N)) % N;
                u.apply_local(&g, &[a, b]);
                columns.iter_mut().for_each(|s| s.apply_2q(&m, a, b));
            }
        }
    }
    (u, columns)
}

fn pauli_from_index(index: usize) -> PauliString {
    let text: String = (0..N)
        .map(|q| ['I', 'X', 'Y', 'Z'][(index >> (2 * q)) & 3])
        .collect();
    text.parse().unwrap()
}

/// `U W(v) U†` as a row-major matrix.
fn conjugated_matrix(columns: &[StateVector], v: &PauliString) -> Vec<C> {
    // W(v)|l⟩ is a phase times a single basis state.
    let w: Vec<(usize, C)> = (0..DIM)
        .map(|l| {
            let mut s = StateVector::zero(N);
            for q in (0..N).filter(|q| l >> q & 1 == 1) {
                s.apply_1q(&pauli_matrix('X'), q);
            }
            let s = s.apply_pauli(v);
            let k = (0..DIM).find(|&k| s.amplitudes()[k].norm() > 0.5).unwrap();
            (k, s.amplitudes()[k])
        })
        .collect();
    let mut m = vec![c(0.0, 0.0); DIM * DIM];
    for r in 0..DIM {
        for col in 0..DIM {
            m[r * DIM + col] = (0..DIM)
                .map(|l| {
                    let (k, w_kl) = w[l];
                    columns[k].amplitudes()[r] * w_kl * columns[l].amplitudes()[col].conj()
                })
                .sum();
        }
    }
    m
}

/// `i^p Z^z X^x` as a matrix entry `⟨r|·|c⟩`.
fn pauli_op_entry(bits: &F2Vec, phase: u8, r: usize, col: usize) -> C {
    let x: usize = (0..N)
        .filter(|&q| bits.get(2 * q + 1))
        .map(|q| 1 << q)
        .sum();
    if r != col ^ x {
        return c(0.0, 0.0);
    }
    let z_parity = (0..N)
        .filter(|&q| bits.get(2 * q) && r >> q & 1 == 1)
        .count()
        % 2;
    let sign = if z_parity == 1 { -1.0 } else { 1.0 };
    [c(1.0, 0.0), c(0.0, 1.0), c(-1.0, 0.0), c(0.0, -1.0)][phase as usize % 4] * sign
}

fn outcome_bits(i: usize) -> F2Vec {
    F2Vec::from_bools((0..N).map(|q| i >> q & 1 == 1))
}

#[test]
fn conjugation_matches_dense_matrices() {
    for seed in 0..CIRCUITS {
        let (u, columns) = random_circuit(seed);
        for index in 1..4usize.pow(N as u32) {
            let v = pauli_from_index(index);
            let image = u.conjugate(&v);
            let m = conjugated_matrix(&columns, &v);
            for r in 0..DIM {
                for col in 0..DIM {
                    let dense = m[r * DIM + col];
                    let tableau = pauli_op_entry(&image.bits, image.phase, r, col);
                    assert!(
                        (dense - tableau).norm() < EPS,
                        "seed {seed}, {v}, entry ({r},{col})"
                    );
                }
            }
        }
    }
}

#[test]
fn snapshot_values_match_dense_diagonal() {
    for seed in 0..CIRCUITS {
        let (u, columns) = random_circuit(100 + seed);
        let psi = &columns[0];
        for index in 1..4usize.pow(N as u32) {
            let v = pauli_from_index(index);
            let m = conjugated_matrix(&columns, &v);
            for i in 0..DIM {
                let dense = m[i * DIM + i];
                assert!(dense.im.abs() < EPS);
                let value = snapshot_value_general(&u, &outcome_bits(i), &v);
                assert!(
                    (dense.re - value as f64).abs() < EPS,
                    "seed {seed}, {v}, outcome {i}"
                );
                if v.is_z_type() && psi.probabilities()[i] > EPS {
                    assert_eq!(snapshot_value_ztype(&u, &v).unwrap(), value);
                }
            }
        }
    }
}

#[test]
fn outcome_distributions_match() {
    for seed in 0..CIRCUITS {
        let (u, columns) = random_circuit(200 + seed);
        let probs = columns[0].probabilities();
        let mut rng = SeedTree::new(seed).derive(7).rng();
        let mut counts = [0usize; DIM];
        for _ in 0..MEASURE_SHOTS {
            let outcome = brickshadow::stabilizer::measure_all(&u, &mut rng);
            let i: usize = outcome.iter_ones().map(|q| 1 << q).sum();
            assert!(probs[i] > EPS, "seed {seed}: impossible outcome {i}");
            counts[i] += 1;
        }
        let tv: f64 = 0.5
            * (0..DIM)
                .map(|i| (counts[i] as f64 / MEASURE_SHOTS as f64 - probs[i]).abs())
                .sum::<f64>();
        assert!(tv < TV_LIMIT, "seed {seed}: total variation {tv}");
    }
}

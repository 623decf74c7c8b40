//! The two-qubit Clifford group as explicit 4×4 matrices, generated by
//! breadth-first search from H, S and CNOT. Used as an independent 2-design
//! for the sampling oracle.

use std::collections::{HashSet, VecDeque};
use std::sync::OnceLock;

use super::statevector::{pauli_matrix, Mat2, Mat4, C};

pub const TWO_QUBIT_CLIFFORD_ORDER: usize = 11_520;

fn canonical_key(m: &Mat4) -> Vec<(i64, i64)> {
    let lead =
        m.0.iter()
            .find(|z| z.norm() > 0.1)
            .expect("unitary matrices are non-zero");
    let phase = lead / lead.norm();
    m.0.iter()
        .map(|z| {
            let w = z / phase;
            ((w.re * 1e6).round() as i64, (w.im * 1e6).round() as i64)
        })
        .collect()
}

fn generators() -> Vec<Mat4> {
    let s2 = 0.5f64.sqrt();
    let h = Mat2([
        C::new(s2, 0.0),
        C::new(s2, 0.0),
        C::new(s2, 0.0),
        C::new(-s2, 0.0),
    ]);
    let s = Mat2([
        C::new(1.0, 0.0),
        C::new(0.0, 0.0),
        C::new(0.0, 0.0),
        C::new(0.0, 1.0),
    ]);
    let id = pauli_matrix('I');
    let mut cnot = [C::new(0.0, 0.0); 16];
    // control on the low bit: |1,b⟩ ↦ |1, b⊕1⟩
    for (r, c) in [(0, 0), (1, 3), (2, 2), (3, 1)] {
        cnot[4 * r + c] = C::new(1.0, 0.0);
    }
    vec![
        Mat4::kron(&h, &id),
        Mat4::kron(&id, &h),
        Mat4::kron(&s, &id),
        Mat4::kron(&id, &s),
        Mat4(cnot),
    ]
}

/// All 11520 elements modulo global phase.
pub fn two_qubit_cliffords() -> &'static [Mat4] {
    static GROUP: OnceLock<Vec<Mat4>> = OnceLock::new();
    GROUP.get_or_init(|| {
        let gens = generators();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let mut queue = VecDeque::from([Mat4::identity()]);
        seen.insert(canonical_key(&Mat4::identity()));
        while let Some(m) = queue.pop_front() {
            for g in &gens {
                let next = g.mul(&m);
                if seen.insert(canonical_key(&next)) {
                    queue.push_back(next);
                }
            }
            out.push(m);
        }
        out
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_order_and_unitarity() {
        let g = two_qubit_cliffords();
        assert_eq!(g.len(), TWO_QUBIT_CLIFFORD_ORDER);
        assert!(g.iter().all(|m| m.unitarity_error() < 1e-12));
    }
}

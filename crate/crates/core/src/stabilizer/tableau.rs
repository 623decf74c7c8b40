use rand::Rng;

use super::pauli_op::PauliOp;
use crate::bits::F2Vec;

/// Stabilizer generators `(-1)^{s_j} W(r_j)` of an n-qubit state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<F2Vec>,
    signs: Vec<bool>,
}

impl StabilizerTableau {
    pub fn new(n: usize, rows: Vec<F2Vec>, signs: Vec<bool>) -> Self {
        debug_assert_eq!(rows.len(), n);
        debug_assert_eq!(signs.len(), n);
        StabilizerTableau { n, rows, signs }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn signs(&self) -> &[bool] {
        &self.signs
    }

    fn ops(&self) -> Vec<PauliOp> {
        self.rows
            .iter()
            .zip(&self.signs)
            .map(|(r, &s)| {
                let mut p = PauliOp::hermitian(r.clone());
                if s {
                    p.phase = (p.phase + 2) % 4;
                }
                p
            })
            .collect()
    }

    /// Z-type constraints `z · i = b` satisfied by every outcome in the
    /// support: the stabilizers left with no X part after eliminating the
    /// X parts of the generators.
    pub fn z_constraints(&self) -> Vec<(F2Vec, bool)> {
        let mut ops = self.ops();
        let mut rank = 0;
        for q in 0..self.n {
            let Some(pivot) = (rank..self.n).find(|&r| ops[r].bits.get(2 * q + 1)) else {
                continue;
            };
            ops.swap(rank, pivot);
            let pivot_op = ops[rank].clone();
            for (r, op) in ops.iter_mut().enumerate() {
                if r != rank && op.bits.get(2 * q + 1) {
                    op.mul_assign(&pivot_op);
                }
            }
            rank += 1;
        }
        ops[rank..]
            .iter()
            .map(|op| {
                let z = F2Vec::from_bools((0..self.n).map(|q| op.bits.get(2 * q)));
                let sign = op
                    .hermitian_sign()
                    .expect("products of commuting generators are Hermitian");
                (z, sign)
            })
            .collect()
    }

    /// Computational-basis outcome drawn from `|⟨i|ψ⟩|²`.
    pub fn measure_all<R: Rng + ?Sized>(&self, rng: &mut R) -> F2Vec {
        let mut eqs = self.z_constraints();
        // Reduced row echelon form over the outcome bits.
        let mut pivots = Vec::new();
        let mut rank = 0;
        for q in 0..self.n {
            let Some(p) = (rank..eqs.len()).find(|&r| eqs[r].0.get(q)) else {
                continue;
            };
            eqs.swap(rank, p);
            let (pz, pb) = eqs[rank].clone();
            for (r, (z, b)) in eqs.iter_mut().enumerate() {
                if r != rank && z.get(q) {
                    z.xor_assign(&pz);
                    *b ^= pb;
                }
            }
            pivots.push(q);
            rank += 1;
        }
        let mut outcome = F2Vec::zeros(self.n);
        let mut is_pivot = vec![false; self.n];
        for &q in &pivots {
            is_pivot[q] = true;
        }
        for q in 0..self.n {
            if !is_pivot[q] {
                outcome.set(q, rng.random::<bool>());
            }
        }
        for (row, &q) in pivots.iter().enumerate() {
            let (z, b) = &eqs[row];
            // Pivot variable: the row's other entries are all free variables.
            let rest = z.dot(&outcome) ^ outcome.get(q);
            outcome.set(q, b ^ rest);
        }
        outcome
    }
}

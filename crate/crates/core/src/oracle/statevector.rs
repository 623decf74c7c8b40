//! Small dense state vectors and 4×4 unitaries, for reference checks only.

use num_complex::Complex64;

use crate::pauli::PauliString;

pub type C = Complex64;

/// Row-major 4×4 complex matrix acting on `|b₀ b₁⟩` with index `b₀ + 2 b₁`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat4(pub [C; 16]);

/// Row-major 2×2 complex matrix.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2(pub [C; 4]);

impl Mat4 {
    pub fn identity() -> Self {
        let mut m = [C::new(0.0, 0.0); 16];
        for i in 0..4 {
            m[5 * i] = C::new(1.0, 0.0);
        }
        Mat4(m)
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> C {
        self.0[4 * r + c]
    }

    pub fn mul(&self, other: &Mat4) -> Mat4 {
        let mut out = [C::new(0.0, 0.0); 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = (0..4).map(|k| self.at(r, k) * other.at(k, c)).sum();
            }
        }
        Mat4(out)
    }

    pub fn adjoint(&self) -> Mat4 {
        let mut out = [C::new(0.0, 0.0); 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = self.at(c, r).conj();
            }
        }
        Mat4(out)
    }

    /// `a ⊗ b` with `a` on the low bit.
    pub fn kron(a: &Mat2, b: &Mat2) -> Mat4 {
        let mut out = [C::new(0.0, 0.0); 16];
        for r in 0..4 {
            for c in 0..4 {
                out[4 * r + c] = a.0[2 * (r & 1) + (c & 1)] * b.0[2 * (r >> 1) + (c >> 1)];
            }
        }
        Mat4(out)
    }

    pub fn unitarity_error(&self) -> f64 {
        let p = self.mul(&self.adjoint());
        let id = Mat4::identity();
        p.0.iter()
            .zip(id.0.iter())
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }
}

fn c(re: f64, im: f64) -> C {
    C::new(re, im)
}

pub fn pauli_matrix(letter: char) -> Mat2 {
    let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
    match letter {
        'I' => Mat2([o, z, z, o]),
        'X' => Mat2([z, o, o, z]),
        'Y' => Mat2([z, c(0.0, -1.0), c(0.0, 1.0), z]),
        'Z' => Mat2([o, z, z, -o]),
        _ => panic!("not a Pauli letter: {letter}"),
    }
}

#[derive(Clone, Debug)]
pub struct StateVector {
    n: usize,
    amps: Vec<C>,
}

impl StateVector {
    pub fn zero(n: usize) -> Self {
        let mut amps = vec![c(0.0, 0.0); 1 << n];
        amps[0] = c(1.0, 0.0);
        StateVector { n, amps }
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn apply_1q(&mut self, m: &Mat2, q: usize) {
        let bit = 1 << q;
        for base in 0..self.amps.len() {
            if base & bit != 0 {
                continue;
            }
            let (a0, a1) = (self.amps[base], self.amps[base | bit]);
            self.amps[base] = m.0[0] * a0 + m.0[1] * a1;
            self.amps[base | bit] = m.0[2] * a0 + m.0[3] * a1;
        }
    }

    /// Apply `m` with its low local bit on `q0` and high bit on `q1`.
    pub fn apply_2q(&mut self, m: &Mat4, q0: usize, q1: usize) {
        let (b0, b1) = (1 << q0, 1 << q1);
        for base in 0..self.amps.len() {
            if base & (b0 | b1) != 0 {
                continue;
            }
            let idx = [base, base | b0, base | b1, base | b0 | b1];
            let old = idx.map(|i| self.amps[i]);
            for r in 0..4 {
                self.amps[idx[r]] = (0..4).map(|k| m.at(r, k) * old[k]).sum();
            }
        }
    }

    /// `W(v) |ψ⟩`, with qubit `q` of `v` on bit `q` of the basis index.
    pub fn apply_pauli(&self, v: &PauliString) -> StateVector {
        let mut out = self.clone();
        for q in 0..self.n {
            let l = v.letter(q);
            if l != 'I' {
                out.apply_1q(&pauli_matrix(l), q);
            }
        }
        out
    }

    pub fn inner(&self, other: &StateVector) -> C {
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    pub fn expectation(&self, v: &PauliString) -> f64 {
        self.inner(&self.apply_pauli(v)).re
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amps.iter().map(|a| a.norm_sqr()).collect()
    }
}

//! Dense two-copy contractions.
//!
//! Each qubit carries a 4-dimensional site `|a⟩ ⊗ |b⟩` (first and second
//! copy), indexed `a + 2b`. An operator is a tensor product of dense local
//! factors on disjoint groups of sites, and `Tr(A B)` is summed over the
//! non-zero entries of `A` with the matching entries of `B` looked up
//! factor by factor. Neither operator is ever materialised, which keeps
//! n = 8 (dimension 4⁸) cheap.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;

use super::statevector::pauli_matrix;
use crate::error::{Error, Result};
use crate::pauli::{check_qubits, BoundaryCondition, PauliString};

pub const MAX_DENSE_QUBITS: usize = 8;

/// Dense real matrix on `k` sites, dimension `4^k`, row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct DenseOperator {
    pub dim: usize,
    pub entries: Vec<f64>,
}

impl DenseOperator {
    pub fn zeros(dim: usize) -> Self {
        DenseOperator {
            dim,
            entries: vec![0.0; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m.entries[i * dim + i] = 1.0;
        }
        m
    }

    #[inline]
    pub fn at(&self, r: usize, c: usize) -> f64 {
        self.entries[r * self.dim + c]
    }

    /// Copy swap `F` on `sites` sites simultaneously (`F_(2)` for two sites).
    pub fn flip(sites: usize) -> Self {
        let dim = 1 << (2 * sites);
        let mut m = Self::zeros(dim);
        for col in 0..dim {
            let mut row = 0;
            for s in 0..sites {
                let local = (col >> (2 * s)) & 3;
                let swapped = ((local & 1) << 1) | (local >> 1);
                row |= swapped << (2 * s);
            }
            m.entries[row * dim + col] = 1.0;
        }
        m
    }

    /// `α A + β B`.
    pub fn combine(alpha: f64, a: &Self, beta: f64, b: &Self) -> Self {
        DenseOperator {
            dim: a.dim,
            entries: a
                .entries
                .iter()
                .zip(&b.entries)
                .map(|(x, y)| alpha * x + beta * y)
                .collect(),
        }
    }

    /// `W ⊗ W` on one site; real because the two factors' phases cancel.
    pub fn pauli_pair(letter: char) -> Self {
        let w = pauli_matrix(letter);
        let mut m = Self::zeros(4);
        for r in 0..4 {
            for c in 0..4 {
                let v = w.0[2 * (r & 1) + (c & 1)] * w.0[2 * (r >> 1) + (c >> 1)];
                debug_assert!(v.im.abs() < 1e-15);
                m.entries[r * 4 + c] = v.re;
            }
        }
        m
    }

    fn nonzeros(&self) -> Vec<(usize, usize, f64)> {
        let mut out = Vec::new();
        for r in 0..self.dim {
            for c in 0..self.dim {
                let v = self.at(r, c);
                if v != 0.0 {
                    out.push((r, c, v));
                }
            }
        }
        out
    }
}

/// A tensor product of local factors on disjoint site groups.
#[derive(Clone, Debug)]
pub struct ProductOperator {
    n_sites: usize,
    factors: Vec<(Vec<usize>, DenseOperator)>,
}

impl ProductOperator {
    pub fn new(n_sites: usize) -> Self {
        ProductOperator {
            n_sites,
            factors: Vec::new(),
        }
    }

    pub fn with(mut self, sites: Vec<usize>, op: DenseOperator) -> Self {
        debug_assert_eq!(op.dim, 1 << (2 * sites.len()));
        self.factors.push((sites, op));
        self
    }

    fn covered(&self) -> Vec<bool> {
        let mut seen = vec![false; self.n_sites];
        for (sites, _) in &self.factors {
            for &s in sites {
                assert!(!seen[s], "site {s} covered twice");
                seen[s] = true;
            }
        }
        seen
    }

    fn local_index(global: usize, sites: &[usize]) -> usize {
        sites.iter().enumerate().fold(0, |acc, (k, &s)| {
            acc | (((global >> (2 * s)) & 3) << (2 * k))
        })
    }

    /// Entry `⟨row| B |col⟩`; sites without a factor act as identity.
    fn entry(&self, row: usize, col: usize, idle_mask: usize) -> f64 {
        if (row ^ col) & idle_mask != 0 {
            return 0.0;
        }
        let mut acc = 1.0;
        for (sites, op) in &self.factors {
            acc *= op.at(Self::local_index(row, sites), Self::local_index(col, sites));
            if acc == 0.0 {
                return 0.0;
            }
        }
        acc
    }

    fn idle_mask(&self) -> usize {
        self.covered()
            .iter()
            .enumerate()
            .filter(|(_, &c)| !c)
            .fold(0, |m, (s, _)| m | (3 << (2 * s)))
    }

    /// `Tr(self · other)`. Every site must be covered by `self`.
    pub fn trace_product(&self, other: &ProductOperator) -> f64 {
        assert!(
            self.covered().iter().all(|&c| c),
            "left operand must cover all sites"
        );
        let idle = other.idle_mask();
        let lists: Vec<_> = self
            .factors
            .iter()
            .map(|(sites, op)| (sites, op.nonzeros()))
            .collect();
        let mut total = 0.0;
        let mut stack = vec![(0usize, 0usize, 0usize, 1.0f64)];
        while let Some((depth, row, col, weight)) = stack.pop() {
            if depth == lists.len() {
                // Tr(AB) = Σ A[row, col] B[col, row]
                total += weight * other.entry(col, row, idle);
                continue;
            }
            let (sites, entries) = &lists[depth];
            for &(r, c, v) in entries {
                let mut gr = row;
                let mut gc = col;
                for (k, &s) in sites.iter().enumerate() {
                    gr |= ((r >> (2 * k)) & 3) << (2 * s);
                    gc |= ((c >> (2 * k)) & 3) << (2 * s);
                }
                stack.push((depth + 1, gr, gc, weight * v));
            }
        }
        total
    }
}

fn check_dense(n: usize) -> Result<()> {
    check_qubits(n)?;
    if n > MAX_DENSE_QUBITS {
        return Err(Error::TooLarge {
            what: "dense two-copy operator",
            n,
            max: MAX_DENSE_QUBITS,
        });
    }
    Ok(())
}

fn measurement_side(n: usize, scale: f64) -> ProductOperator {
    let sym = DenseOperator::combine(
        scale,
        &DenseOperator::identity(16),
        scale,
        &DenseOperator::flip(2),
    );
    (0..n / 2).fold(ProductOperator::new(n), |acc, j| {
        acc.with(vec![2 * j, 2 * j + 1], sym.clone())
    })
}

fn q_factor(scale: f64) -> DenseOperator {
    DenseOperator::combine(
        4.0 * scale,
        &DenseOperator::flip(2),
        -scale,
        &DenseOperator::identity(16),
    )
}

/// `Tr[(𝟙+F_(2))^{⊗n/2} D (4F_(2) − 𝟙)^{⊗n/2} D⁻¹]`.
pub fn dense_tper(n: usize) -> Result<f64> {
    check_dense(n)?;
    let a = measurement_side(n, 1.0);
    let b = (0..n / 2).fold(ProductOperator::new(n), |acc, j| {
        acc.with(vec![2 * j + 1, (2 * j + 2) % n], q_factor(1.0))
    });
    Ok(a.trace_product(&b))
}

/// `Tr[(𝟙+F_(2))^{⊗n/2} (𝟙₄ ⊗ (4F_(2) − 𝟙)^{⊗(n/2−1)} ⊗ 𝟙₄)]`.
pub fn dense_topen(n: usize) -> Result<f64> {
    check_dense(n)?;
    if n < 4 {
        return Err(crate::error::invalid(
            "n",
            "open chains need at least 4 qubits",
        ));
    }
    let a = measurement_side(n, 1.0);
    let b = (0..n / 2 - 1).fold(ProductOperator::new(n), |acc, j| {
        acc.with(vec![2 * j + 1, 2 * j + 2], q_factor(1.0))
    });
    Ok(a.trace_product(&b))
}

/// `⟨v|S|v⟩` by direct two-copy contraction: the averaged first layer maps
/// `|0⟩⟨0|^{⊗2}` to `(𝟙 + F_(2))/20` per brick, and the twirled shifted layer
/// maps `W ⊗ W` to `𝟙` or `(4F_(2) − 𝟙)/15` per brick. Untouched edge qubits
/// keep their bare `W ⊗ W`.
pub fn dense_frame_eigenvalue(v: &PauliString, boundary: BoundaryCondition) -> Result<f64> {
    let n = v.num_qubits();
    check_dense(n)?;
    let a = measurement_side(n, 1.0 / 20.0);
    let active = |q: usize| v.letter(q) != 'I';
    let mut b = ProductOperator::new(n);
    let pairs: Vec<(usize, usize)> = match boundary {
        BoundaryCondition::Periodic => (0..n / 2).map(|j| (2 * j + 1, (2 * j + 2) % n)).collect(),
        BoundaryCondition::Open => (0..n / 2 - 1).map(|j| (2 * j + 1, 2 * j + 2)).collect(),
    };
    for &(p, q) in &pairs {
        if active(p) || active(q) {
            b = b.with(vec![p, q], q_factor(1.0 / 15.0));
        }
    }
    if boundary == BoundaryCondition::Open {
        for q in [0, n - 1] {
            if active(q) {
                b = b.with(vec![q], DenseOperator::pauli_pair(v.letter(q)));
            }
        }
    }
    Ok(a.trace_product(&b))
}

/// Relative difference between a dense value and an exact rational.
pub fn relative_error(value: f64, exact: &BigRational) -> f64 {
    let e = exact.to_f64().expect("finite");
    ((value - e) / e).abs()
}

pub fn relative_error_int(value: f64, exact: &BigInt) -> f64 {
    let e = exact.to_f64().expect("finite");
    ((value - e) / e).abs()
}

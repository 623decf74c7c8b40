//! The binary symplectic group Sp(2n, 2) and uniform sampling from it.
//!
//! Sampling follows the König–Smolin construction: an element is built one
//! symplectic pair at a time, each level picking the image of `e₁` (any
//! non-zero vector) and of `e₂` (any vector pairing to one with it) via at
//! most four transvections. The level choices form a mixed-radix index, so
//! the map from `0..|Sp(2n,2)|` onto the group is a bijection.

use rand::Rng;

use crate::bits::F2Vec;
use crate::error::{invalid, Result};

const Z_MASK: u64 = 0x5555_5555_5555_5555;

/// `[u, v] = Σ_q z_u x_v + x_u z_v` for interleaved `(z, x)` bits.
#[inline]
pub fn symplectic_form(u: &F2Vec, v: &F2Vec) -> bool {
    let ones: u32 = u
        .words()
        .iter()
        .zip(v.words())
        .map(|(&a, &b)| (((a >> 1) & b & Z_MASK) ^ (a & (b >> 1) & Z_MASK)).count_ones())
        .sum();
    ones & 1 == 1
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SymplecticMatrix {
    n: usize,
    rows: Vec<F2Vec>,
}

impl SymplecticMatrix {
    pub fn identity(n: usize) -> Self {
        SymplecticMatrix {
            n,
            rows: (0..2 * n).map(|r| F2Vec::unit(2 * n, r)).collect(),
        }
    }

    /// Build `g` from the images `g e_k` of the basis vectors.
    pub fn from_columns(columns: &[F2Vec]) -> Self {
        let dim = columns.len();
        let mut rows = vec![F2Vec::zeros(dim); dim];
        for (k, col) in columns.iter().enumerate() {
            debug_assert_eq!(col.len(), dim);
            for r in col.iter_ones() {
                rows[r].set(k, true);
            }
        }
        SymplecticMatrix { n: dim / 2, rows }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[F2Vec] {
        &self.rows
    }

    pub fn column(&self, k: usize) -> F2Vec {
        F2Vec::from_bools(self.rows.iter().map(|row| row.get(k)))
    }

    pub fn apply(&self, v: &F2Vec) -> F2Vec {
        F2Vec::from_bools(self.rows.iter().map(|row| row.dot(v)))
    }

    /// Matrix product `self · other`.
    pub fn compose(&self, other: &SymplecticMatrix) -> SymplecticMatrix {
        let cols: Vec<F2Vec> = (0..2 * self.n)
            .map(|k| self.apply(&other.column(k)))
            .collect();
        SymplecticMatrix::from_columns(&cols)
    }

    pub fn is_symplectic(&self) -> bool {
        let cols: Vec<F2Vec> = (0..2 * self.n).map(|k| self.column(k)).collect();
        for i in 0..cols.len() {
            for j in i..cols.len() {
                let paired = i / 2 == j / 2 && i != j;
                if symplectic_form(&cols[i], &cols[j]) != paired {
                    return false;
                }
            }
        }
        true
    }

    /// Element number `index` of Sp(2n, 2), for `index < |Sp(2n, 2)|`.
    pub fn from_index(index: u128, n: usize) -> Result<Self> {
        let order = symplectic_group_order(n)
            .ok_or_else(|| invalid("n", "group order exceeds 128 bits"))?;
        if index >= order {
            return Err(invalid(
                "index",
                format!("{index} is not below the group order {order}"),
            ));
        }
        let mut rest = index;
        let images = build(n, &mut |m| {
            let nn = 2 * m as u32;
            let cosets = (1u128 << nn) - 1;
            let k = (rest % cosets) as u64 + 1;
            rest /= cosets;
            let bits = (rest % (1u128 << (nn - 1))) as u64;
            rest >>= nn - 1;
            (
                int_to_bits(k, nn as usize),
                int_to_bits(bits, nn as usize - 1),
            )
        });
        Ok(SymplecticMatrix::from_columns(&images))
    }

    /// Uniformly random element of Sp(2n, 2).
    pub fn sample<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let images = build(n, &mut |m| {
            let nn = 2 * m;
            let k = loop {
                let k = F2Vec::from_bools((0..nn).map(|_| rng.random::<bool>()));
                if !k.is_zero() {
                    break k;
                }
            };
            (
                k,
                F2Vec::from_bools((0..nn - 1).map(|_| rng.random::<bool>())),
            )
        });
        SymplecticMatrix::from_columns(&images)
    }
}

/// `|Sp(2n, 2)| = ∏_{j=1}^{n} 2^{2j-1} (4^j - 1)`, or `None` on overflow.
pub fn symplectic_group_order(n: usize) -> Option<u128> {
    let mut acc: u128 = 1;
    for j in 1..=n as u32 {
        let cosets = 1u128
            .checked_shl(2 * j - 1)?
            .checked_mul(1u128.checked_shl(2 * j)? - 1)?;
        acc = acc.checked_mul(cosets)?;
    }
    Some(acc)
}

fn int_to_bits(value: u64, len: usize) -> F2Vec {
    F2Vec::from_bools((0..len).map(|j| (value >> j) & 1 == 1))
}

fn transvection(k: &F2Vec, v: &mut F2Vec) {
    if symplectic_form(k, v) {
        v.xor_assign(k);
    }
}

fn is_nonzero_pair(v: &F2Vec, q: usize) -> bool {
    v.get(2 * q) || v.get(2 * q + 1)
}

/// Two transvection vectors whose composition maps `x` to `y` (both non-zero).
fn find_transvection(x: &F2Vec, y: &F2Vec) -> (F2Vec, F2Vec) {
    let len = x.len();
    let zero = F2Vec::zeros(len);
    if x == y {
        return (zero.clone(), zero);
    }
    if symplectic_form(x, y) {
        let mut h = x.clone();
        h.xor_assign(y);
        return (h, zero);
    }
    let with_z = |z: &F2Vec| {
        let mut a = x.clone();
        a.xor_assign(z);
        let mut b = y.clone();
        b.xor_assign(z);
        (a, b)
    };
    let pairs = len / 2;
    let mut z = F2Vec::zeros(len);
    for q in 0..pairs {
        let (i, j) = (2 * q, 2 * q + 1);
        if is_nonzero_pair(x, q) && is_nonzero_pair(y, q) {
            z.set(i, x.get(i) ^ y.get(i));
            z.set(j, x.get(j) ^ y.get(j));
            if !z.get(i) && !z.get(j) {
                z.set(j, true);
                if x.get(i) != x.get(j) {
                    z.set(i, true);
                }
            }
            return with_z(&z);
        }
    }
    for q in 0..pairs {
        let (i, j) = (2 * q, 2 * q + 1);
        if is_nonzero_pair(x, q) && !is_nonzero_pair(y, q) {
            if x.get(i) == x.get(j) {
                z.set(j, true);
            } else {
                z.set(j, x.get(i));
                z.set(i, x.get(j));
            }
            break;
        }
    }
    for q in 0..pairs {
        let (i, j) = (2 * q, 2 * q + 1);
        if !is_nonzero_pair(x, q) && is_nonzero_pair(y, q) {
            if y.get(i) == y.get(j) {
                z.set(j, true);
            } else {
                z.set(j, y.get(i));
                z.set(i, y.get(j));
            }
            break;
        }
    }
    with_z(&z)
}

/// Images of the basis vectors, drawing the image of `e₁` (non-zero, `2m`
/// bits) and the `2m - 1` coset bits once per level, from the top down.
fn build(n: usize, draw: &mut dyn FnMut(usize) -> (F2Vec, F2Vec)) -> Vec<F2Vec> {
    let nn = 2 * n;
    let (mut f1, bits) = draw(n);
    let e1 = F2Vec::unit(nn, 0);
    let (t0, t1) = find_transvection(&e1, &f1);
    let mut h0 = e1.clone();
    for j in 2..nn {
        h0.set(j, bits.get(j - 1));
    }
    transvection(&t0, &mut h0);
    transvection(&t1, &mut h0);
    if bits.get(0) {
        f1 = F2Vec::zeros(nn);
    }

    let mut g: Vec<F2Vec> = vec![F2Vec::unit(nn, 0), F2Vec::unit(nn, 1)];
    if n > 1 {
        for sub in build(n - 1, draw) {
            let mut padded = F2Vec::zeros(nn);
            for one in sub.iter_ones() {
                padded.set(one + 2, true);
            }
            g.push(padded);
        }
    }
    for row in &mut g {
        transvection(&t0, row);
        transvection(&t1, row);
        transvection(&h0, row);
        transvection(&f1, row);
    }
    g
}

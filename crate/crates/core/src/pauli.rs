//! Pauli strings in binary symplectic form and brickwork combinatorics.
//!
//! A qubit letter is a pair `(z, x)` with `I = (0,0)`, `X = (0,1)`,
//! `Z = (1,0)`, `Y = (1,1)`. An `n`-qubit string stores the pairs
//! interleaved, `z` of qubit `q` at bit `2q` and `x` at bit `2q + 1`.
//! Qubit 1 (index 0) is the leftmost character of the text form.
//!
//! Second-layer brick `i` (0-based) covers qubits `2i + 1` and `2i + 2`
//! (0-based, wrapping to qubit 0 for the last brick). Under open boundary
//! conditions the last brick does not exist.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::bits::F2Vec;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoundaryCondition {
    Periodic,
    Open,
}

impl fmt::Display for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryCondition::Periodic => f.write_str("periodic"),
            BoundaryCondition::Open => f.write_str("open"),
        }
    }
}

impl FromStr for BoundaryCondition {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "periodic" | "per" => Ok(BoundaryCondition::Periodic),
            "open" => Ok(BoundaryCondition::Open),
            other => Err(crate::error::invalid(
                "boundary",
                format!("expected `periodic` or `open`, got {other:?}"),
            )),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliString {
    n: usize,
    bits: F2Vec,
}

pub(crate) fn check_qubits(n: usize) -> Result<()> {
    if n < 2 || n % 2 == 1 {
        Err(Error::OddQubitCount(n))
    } else {
        Ok(())
    }
}

impl PauliString {
    pub fn identity(n: usize) -> Result<Self> {
        check_qubits(n)?;
        Ok(PauliString {
            n,
            bits: F2Vec::zeros(2 * n),
        })
    }

    /// Builds a string from an interleaved `(z, x)` bit-vector of length `2n`.
    pub fn from_bits(bits: F2Vec) -> Result<Self> {
        if bits.len() % 2 == 1 {
            return Err(Error::OddQubitCount(bits.len()));
        }
        let n = bits.len() / 2;
        check_qubits(n)?;
        Ok(PauliString { n, bits })
    }

    /// Z on every listed qubit (0-based), identity elsewhere.
    pub fn z_on(n: usize, qubits: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut p = Self::identity(n)?;
        for q in qubits {
            if q >= n {
                return Err(crate::error::invalid(
                    "qubits",
                    format!("qubit {q} out of range for n = {n}"),
                ));
            }
            p.bits.set(2 * q, true);
        }
        Ok(p)
    }

    /// Uniformly random element of F₂²ⁿ.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<Self> {
        let mut p = Self::identity(n)?;
        for k in 0..2 * n {
            p.bits.set(k, rng.random());
        }
        Ok(p)
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn bits(&self) -> &F2Vec {
        &self.bits
    }

    #[inline]
    pub fn z(&self, qubit: usize) -> bool {
        self.bits.get(2 * qubit)
    }

    #[inline]
    pub fn x(&self, qubit: usize) -> bool {
        self.bits.get(2 * qubit + 1)
    }

    pub fn set_letter(&mut self, qubit: usize, z: bool, x: bool) {
        self.bits.set(2 * qubit, z);
        self.bits.set(2 * qubit + 1, x);
    }

    pub fn letter(&self, qubit: usize) -> char {
        match (self.z(qubit), self.x(qubit)) {
            (false, false) => 'I',
            (false, true) => 'X',
            (true, false) => 'Z',
            (true, true) => 'Y',
        }
    }

    pub fn is_identity(&self) -> bool {
        self.bits.is_zero()
    }

    /// First qubit carrying an X or Y letter, if any.
    pub fn first_x_qubit(&self) -> Option<usize> {
        (0..self.n).find(|&q| self.x(q))
    }

    pub fn is_z_type(&self) -> bool {
        self.first_x_qubit().is_none()
    }

    /// Z part as an `n`-bit vector.
    pub fn z_part(&self) -> F2Vec {
        F2Vec::from_bools((0..self.n).map(|q| self.z(q)))
    }

    /// X part as an `n`-bit vector.
    pub fn x_part(&self) -> F2Vec {
        F2Vec::from_bools((0..self.n).map(|q| self.x(q)))
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for q in 0..self.n {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl fmt::Debug for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliString({self})")
    }
}

impl Serialize for PauliString {
    fn serialize<S: serde::Serializer>(
        &self,
        serializer: S,
    ) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for PauliString {
    fn deserialize<D: serde::Deserializer<'de>>(
        deserializer: D,
    ) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for PauliString {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_pauli(s)
    }
}

pub fn parse_pauli(text: &str) -> Result<PauliString> {
    let letters: Vec<char> = text.chars().collect();
    if letters.is_empty() {
        return Err(Error::EmptyPauli);
    }
    let mut bits = F2Vec::zeros(2 * letters.len());
    for (position, &c) in letters.iter().enumerate() {
        let (z, x) = match c {
            'I' | 'i' => (false, false),
            'X' | 'x' => (false, true),
            'Z' | 'z' => (true, false),
            'Y' | 'y' => (true, true),
            found => return Err(Error::InvalidPauliLetter { position, found }),
        };
        bits.set(2 * position, z);
        bits.set(2 * position + 1, x);
    }
    check_qubits(letters.len())?;
    Ok(PauliString {
        n: letters.len(),
        bits,
    })
}

/// Per-qubit indicator of a non-identity letter.
pub fn weight_vector(v: &PauliString) -> F2Vec {
    F2Vec::from_bools((0..v.n).map(|q| v.z(q) || v.x(q)))
}

/// Number of qubits on which `v` acts non-trivially.
pub fn lc_support_size(v: &PauliString) -> usize {
    (0..v.n).filter(|&q| v.z(q) || v.x(q)).count()
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BrickSupport {
    bits: F2Vec,
    boundary: BoundaryCondition,
}

impl BrickSupport {
    pub fn new(bits: F2Vec, boundary: BoundaryCondition) -> Result<Self> {
        if bits.is_empty() {
            return Err(crate::error::invalid(
                "bits",
                "at least one brick is required",
            ));
        }
        if boundary == BoundaryCondition::Open && bits.get(bits.len() - 1) {
            return Err(crate::error::invalid(
                "bits",
                "the last brick does not exist under open boundary conditions",
            ));
        }
        Ok(BrickSupport { bits, boundary })
    }

    pub fn n_bricks(&self) -> usize {
        self.bits.len()
    }

    pub fn bits(&self) -> &F2Vec {
        &self.bits
    }

    pub fn boundary(&self) -> BoundaryCondition {
        self.boundary
    }

    /// Hamming weight of the brick vector.
    pub fn weight(&self) -> usize {
        self.bits.count_ones()
    }
}

pub fn brick_support(v: &PauliString, boundary: BoundaryCondition) -> BrickSupport {
    let n = v.n;
    let wt = weight_vector(v);
    let mut bits =
        F2Vec::from_bools((0..n / 2).map(|i| wt.get(2 * i + 1) || wt.get((2 * i + 2) % n)));
    if boundary == BoundaryCondition::Open {
        bits.set(n / 2 - 1, false);
    }
    BrickSupport { bits, boundary }
}

/// Sizes of the maximal runs of supported bricks.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BwPartition {
    /// Descending order. Empty when `is_full_cycle` is set.
    pub parts: Vec<usize>,
    /// Every brick supported under periodic boundary conditions: one
    /// component of size `n/2` that closes on itself.
    pub is_full_cycle: bool,
    n_bricks: usize,
}

impl BwPartition {
    /// Number of components (a full cycle counts as one).
    pub fn num_parts(&self) -> usize {
        if self.is_full_cycle {
            1
        } else {
            self.parts.len()
        }
    }

    /// Sum of component sizes, i.e. the number of supported bricks.
    pub fn total(&self) -> usize {
        if self.is_full_cycle {
            self.n_bricks
        } else {
            self.parts.iter().sum()
        }
    }

    pub fn n_bricks(&self) -> usize {
        self.n_bricks
    }
}

impl fmt::Display for BwPartition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_full_cycle {
            return write!(f, "cycle({})", self.n_bricks);
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn bw_partition(s: &BrickSupport) -> BwPartition {
    let h = s.n_bricks();
    let bits = &s.bits;
    if s.boundary == BoundaryCondition::Periodic && bits.count_ones() == h {
        return BwPartition {
            parts: Vec::new(),
            is_full_cycle: true,
            n_bricks: h,
        };
    }
    // Periodic: start scanning just after a zero so no run straddles the origin.
    let start = match s.boundary {
        BoundaryCondition::Periodic => (0..h).find(|&i| !bits.get(i)).map_or(0, |z| z + 1),
        BoundaryCondition::Open => 0,
    };
    let mut parts = Vec::new();
    let mut run = 0;
    for k in 0..h {
        if bits.get((start + k) % h) {
            run += 1;
        } else if run > 0 {
            parts.push(run);
            run = 0;
        }
    }
    if run > 0 {
        parts.push(run);
    }
    parts.sort_unstable_by(|a, b| b.cmp(a));
    BwPartition {
        parts,
        is_full_cycle: false,
        n_bricks: h,
    }
}

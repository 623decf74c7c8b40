use crate::bits::F2Vec;
use crate::pauli::PauliString;

const Z_MASK: u64 = 0x5555_5555_5555_5555;

/// `i^phase · ⊗_q Z^{z_q} X^{x_q}` over interleaved `(z, x)` bits.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PauliOp {
    pub bits: F2Vec,
    pub phase: u8,
}

/// Number of qubits carrying `x` in `a` and `z` in `b`.
#[inline]
fn x_then_z(a: &F2Vec, b: &F2Vec) -> u32 {
    a.words()
        .iter()
        .zip(b.words())
        .map(|(&wa, &wb)| ((wa >> 1) & wb & Z_MASK).count_ones())
        .sum()
}

#[inline]
fn y_count(bits: &F2Vec) -> u32 {
    bits.words()
        .iter()
        .map(|&w| ((w >> 1) & w & Z_MASK).count_ones())
        .sum()
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        PauliOp {
            bits: F2Vec::zeros(2 * n),
            phase: 0,
        }
    }

    /// The Hermitian operator `W(v)`, i.e. `(-i)^{|z∧x|} Z^z X^x`.
    pub fn hermitian(bits: F2Vec) -> Self {
        let phase = ((3 * y_count(&bits)) % 4) as u8;
        PauliOp { bits, phase }
    }

    pub fn from_pauli(v: &PauliString) -> Self {
        Self::hermitian(v.bits().clone())
    }

    pub fn num_qubits(&self) -> usize {
        self.bits.len() / 2
    }

    /// In-place right multiplication `self ← self · other`.
    pub fn mul_assign(&mut self, other: &PauliOp) {
        let sign = x_then_z(&self.bits, &other.bits) & 1;
        self.phase = ((self.phase as u32 + other.phase as u32 + 2 * sign) % 4) as u8;
        self.bits.xor_assign(&other.bits);
    }

    pub fn has_x(&self) -> bool {
        self.bits.words().iter().any(|&w| (w >> 1) & Z_MASK != 0)
    }

    /// Sign `s` with `self = (-1)^s W(bits)`, or `None` if not Hermitian.
    pub fn hermitian_sign(&self) -> Option<bool> {
        let rel = (self.phase as u32 + 4 - (3 * y_count(&self.bits)) % 4) % 4;
        match rel {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    /// Local bits of `qubit` as `z | x << 1`.
    #[inline]
    pub(crate) fn local(&self, qubit: usize) -> u8 {
        self.bits.get(2 * qubit) as u8 | (self.bits.get(2 * qubit + 1) as u8) << 1
    }

    #[inline]
    pub(crate) fn set_local(&mut self, qubit: usize, code: u8) {
        self.bits.set(2 * qubit, code & 1 == 1);
        self.bits.set(2 * qubit + 1, code & 2 == 2);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn op(s: &str) -> PauliOp {
        PauliOp::from_pauli(&s.parse().unwrap())
    }

    #[test]
    fn single_qubit_products() {
        // X · Z = -i Y ; Z · X = i Y
        let mut xz = op("XI");
        xz.mul_assign(&op("ZI"));
        let y = op("YI");
        assert_eq!(xz.bits, y.bits);
        assert_eq!(xz.phase, (y.phase + 3) % 4);
        let mut zx = op("ZI");
        zx.mul_assign(&op("XI"));
        assert_eq!(zx.phase, (y.phase + 1) % 4);
        let mut yy = op("YZ");
        yy.mul_assign(&op("YZ"));
        assert_eq!(yy, PauliOp::identity(2));
    }

    #[test]
    fn hermitian_signs() {
        assert_eq!(op("XYZY").hermitian_sign(), Some(false));
        let mut m = op("XI");
        m.mul_assign(&op("ZI"));
        assert_eq!(m.hermitian_sign(), None);
        let mut m = op("XX");
        m.mul_assign(&op("ZZ"));
        // XZ ⊗ XZ = (-iY)(-iY) = -YY
        assert_eq!(m.hermitian_sign(), Some(true));
        assert!(m.has_x());
        assert!(!op("ZIZI").has_x());
    }
}

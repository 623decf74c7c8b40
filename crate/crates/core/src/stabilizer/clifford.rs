//! Clifford unitaries stored as the images of the single-qubit Paulis.
//!
//! `images[2q]` is `U Z_q U†` and `images[2q+1]` is `U X_q U†`, each with an
//! exact phase. Composing with a one- or two-qubit gate rewrites only the
//! local bits of every image, through a lookup table of the gate's action on
//! its 4 or 16 local Paulis.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::pauli_op::PauliOp;
use super::symplectic::{symplectic_form, SymplecticMatrix};
use super::tableau::StabilizerTableau;
use crate::bits::F2Vec;
use crate::error::{invalid, Error, Result};
use crate::pauli::{check_qubits, BoundaryCondition, PauliString};
use crate::rng::SeedTree;

/// A Clifford on one or two qubits, given by `(g, a)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalClifford {
    g: SymplecticMatrix,
    a: F2Vec,
    /// Indexed by local code `Σ_q (z_q | x_q << 1) << 2q`: image code and phase.
    table: Vec<(u8, u8)>,
}

impl LocalClifford {
    /// The Clifford with `C W(e_k) C† = (-1)^{[a, e_k]} W(g e_k)`.
    pub fn new(g: SymplecticMatrix, a: F2Vec) -> Result<Self> {
        let width = g.num_qubits();
        if !(1..=2).contains(&width) || a.len() != 2 * width {
            return Err(invalid("g", "local Cliffords act on one or two qubits"));
        }
        if !g.is_symplectic() {
            return Err(invalid("g", "matrix is not symplectic"));
        }
        let images = (0..2 * width)
            .map(|k| {
                let mut p = PauliOp::hermitian(g.column(k));
                if symplectic_form(&a, &F2Vec::unit(2 * width, k)) {
                    p.phase = (p.phase + 2) % 4;
                }
                p
            })
            .collect::<Vec<_>>();
        let table = (0..1u8 << (2 * width))
            .map(|code| {
                let mut acc = PauliOp::identity(width);
                for k in 0..2 * width {
                    if code >> k & 1 == 1 {
                        acc.mul_assign(&images[k]);
                    }
                }
                (acc.bits.words()[0] as u8, acc.phase)
            })
            .collect();
        Ok(LocalClifford { g, a, table })
    }

    pub fn width(&self) -> usize {
        self.g.num_qubits()
    }

    pub fn symplectic(&self) -> &SymplecticMatrix {
        &self.g
    }

    pub fn phase_vector(&self) -> &F2Vec {
        &self.a
    }

    pub fn hadamard() -> Self {
        let g = SymplecticMatrix::from_columns(&[F2Vec::unit(2, 1), F2Vec::unit(2, 0)]);
        LocalClifford::new(g, F2Vec::zeros(2)).expect("valid gate")
    }

    pub fn phase_gate() -> Self {
        let g =
            SymplecticMatrix::from_columns(&[F2Vec::unit(2, 0), F2Vec::from_bools([true, true])]);
        LocalClifford::new(g, F2Vec::zeros(2)).expect("valid gate")
    }

    /// CNOT with control on local qubit 0.
    pub fn cnot() -> Self {
        let col = |bits: [bool; 4]| F2Vec::from_bools(bits);
        let g = SymplecticMatrix::from_columns(&[
            col([true, false, false, false]),
            col([false, true, false, true]),
            col([true, false, true, false]),
            col([false, false, false, true]),
        ]);
        LocalClifford::new(g, F2Vec::zeros(4)).expect("valid gate")
    }

    /// Pauli `W(p)`, as a Clifford: flips the sign of every anticommuting image.
    pub fn pauli(p: &F2Vec) -> Self {
        let width = p.len() / 2;
        LocalClifford::new(SymplecticMatrix::identity(width), p.clone()).expect("valid gate")
    }
}

/// Uniform over the two-qubit Clifford group modulo phases.
pub fn sample_local_clifford<R: Rng + ?Sized>(rng: &mut R) -> LocalClifford {
    sample_width(2, rng)
}

/// Uniform over the 24 single-qubit Cliffords modulo phases.
pub fn sample_single_qubit_clifford<R: Rng + ?Sized>(rng: &mut R) -> LocalClifford {
    sample_width(1, rng)
}

fn sample_width<R: Rng + ?Sized>(width: usize, rng: &mut R) -> LocalClifford {
    let g = SymplecticMatrix::sample(width, rng);
    let a = F2Vec::from_bools((0..2 * width).map(|_| rng.random::<bool>()));
    LocalClifford::new(g, a).expect("sampled element is symplectic")
}

/// Per-brick seeds used to draw every local gate of a circuit.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayerSeeds {
    pub measurement: Vec<u64>,
    pub state: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliffordElement {
    n: usize,
    images: Vec<PauliOp>,
    pub layer_seeds: LayerSeeds,
}

/// Qubit pairs of the layer next to the measurement: `(2j, 2j+1)`.
pub fn measurement_bricks(n: usize) -> Vec<(usize, usize)> {
    (0..n / 2).map(|j| (2 * j, 2 * j + 1)).collect()
}

/// Qubit pairs of the shifted layer, which acts on the state first:
/// `(2j+1, 2j+2 mod n)`, without the wraparound brick under open boundaries.
pub fn state_bricks(n: usize, boundary: BoundaryCondition) -> Vec<(usize, usize)> {
    let count = match boundary {
        BoundaryCondition::Periodic => n / 2,
        BoundaryCondition::Open => n / 2 - 1,
    };
    (0..count).map(|j| (2 * j + 1, (2 * j + 2) % n)).collect()
}

impl CliffordElement {
    pub fn identity(n: usize) -> Self {
        let images = (0..2 * n)
            .map(|k| PauliOp::hermitian(F2Vec::unit(2 * n, k)))
            .collect();
        CliffordElement {
            n,
            images,
            layer_seeds: LayerSeeds::default(),
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn images(&self) -> &[PauliOp] {
        &self.images
    }

    /// `U ← C U` with `C` acting on `qubits` (local qubit `k` ↦ `qubits[k]`).
    pub fn apply_local(&mut self, gate: &LocalClifford, qubits: &[usize]) {
        debug_assert_eq!(gate.width(), qubits.len());
        for image in &mut self.images {
            let mut code = 0u8;
            for (k, &q) in qubits.iter().enumerate() {
                code |= image.local(q) << (2 * k);
            }
            if code == 0 {
                continue;
            }
            let (new_code, phase) = gate.table[code as usize];
            for (k, &q) in qubits.iter().enumerate() {
                image.set_local(q, (new_code >> (2 * k)) & 3);
            }
            image.phase = (image.phase + phase) % 4;
        }
    }

    /// `U W(v) U†` with exact phase.
    pub fn conjugate(&self, v: &PauliString) -> PauliOp {
        let start = PauliOp::from_pauli(v);
        let mut acc = PauliOp {
            bits: F2Vec::zeros(2 * self.n),
            phase: start.phase,
        };
        for q in 0..self.n {
            if v.z(q) {
                acc.mul_assign(&self.images[2 * q]);
            }
            if v.x(q) {
                acc.mul_assign(&self.images[2 * q + 1]);
            }
        }
        acc
    }

    /// The symplectic part `g`, with `g e_k` the support of `images[k]`.
    pub fn symplectic(&self) -> SymplecticMatrix {
        let cols: Vec<F2Vec> = self.images.iter().map(|p| p.bits.clone()).collect();
        SymplecticMatrix::from_columns(&cols)
    }

    /// Image signs `s_k` with `U W(e_k) U† = (-1)^{s_k} W(g e_k)`.
    pub fn signs(&self) -> Vec<bool> {
        self.images
            .iter()
            .map(|p| {
                p.hermitian_sign()
                    .expect("images of Hermitian Paulis are Hermitian")
            })
            .collect()
    }

    /// The phase vector `a`, defined by `[a, e_k] = s_k`.
    pub fn phase_vector(&self) -> F2Vec {
        let s = self.signs();
        let mut a = F2Vec::zeros(2 * self.n);
        for q in 0..self.n {
            a.set(2 * q + 1, s[2 * q]);
            a.set(2 * q, s[2 * q + 1]);
        }
        a
    }

    /// Stabilizer generators `U Z_q U†` of `U|0…0⟩`.
    pub fn stabilizer_tableau(&self) -> StabilizerTableau {
        let rows = (0..self.n)
            .map(|q| self.images[2 * q].bits.clone())
            .collect();
        let signs = (0..self.n)
            .map(|q| self.images[2 * q].hermitian_sign().expect("Hermitian"))
            .collect();
        StabilizerTableau::new(self.n, rows, signs)
    }
}

/// Compose a one-round brickwork circuit. `measurement` holds the `n/2`
/// gates next to the measurement, `state` the gates of the shifted layer
/// (`n/2` periodic, `n/2 - 1` open), which act on the state first.
pub fn assemble_brickwork(
    measurement: &[LocalClifford],
    state: &[LocalClifford],
    boundary: BoundaryCondition,
) -> Result<CliffordElement> {
    let n = 2 * measurement.len();
    check_qubits(n)?;
    let state_pairs = state_bricks(n, boundary);
    if state.len() != state_pairs.len() {
        return Err(Error::BrickCount {
            layer: 2,
            expected: state_pairs.len(),
            found: state.len(),
        });
    }
    if let Some(bad) = measurement.iter().chain(state).find(|c| c.width() != 2) {
        return Err(invalid(
            "brick",
            format!("brick gates act on two qubits, got width {}", bad.width()),
        ));
    }
    let mut u = CliffordElement::identity(n);
    for (gate, &(a, b)) in state.iter().zip(&state_pairs) {
        u.apply_local(gate, &[a, b]);
    }
    for (gate, (a, b)) in measurement.iter().zip(measurement_bricks(n)) {
        u.apply_local(gate, &[a, b]);
    }
    Ok(u)
}

/// Brickwork Clifford with every brick drawn from its own derived seed.
pub fn random_brickwork(
    n: usize,
    boundary: BoundaryCondition,
    seed: SeedTree,
) -> Result<CliffordElement> {
    check_qubits(n)?;
    let draw = |layer: u64, count: usize| -> (Vec<LocalClifford>, Vec<u64>) {
        (0..count)
            .map(|j| {
                let s = seed.derive(layer).derive(j as u64);
                (sample_local_clifford(&mut s.rng()), s.seed())
            })
            .unzip()
    };
    let (meas, meas_seeds) = draw(1, n / 2);
    let (state, state_seeds) = draw(2, state_bricks(n, boundary).len());
    let mut u = assemble_brickwork(&meas, &state, boundary)?;
    u.layer_seeds = LayerSeeds {
        measurement: meas_seeds,
        state: state_seeds,
    };
    Ok(u)
}

/// Tensor product of independent single-qubit Cliffords.
pub fn random_local_layer(n: usize, seed: SeedTree) -> Result<CliffordElement> {
    check_qubits(n)?;
    let mut u = CliffordElement::identity(n);
    let mut seeds = Vec::with_capacity(n);
    for q in 0..n {
        let s = seed.derive(q as u64);
        u.apply_local(&sample_single_qubit_clifford(&mut s.rng()), &[q]);
        seeds.push(s.seed());
    }
    u.layer_seeds = LayerSeeds {
        measurement: seeds,
        state: Vec::new(),
    };
    Ok(u)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    fn p(s: &str) -> PauliString {
        s.parse().unwrap()
    }

    fn single(n: usize, gate: &LocalClifford, qubits: &[usize]) -> CliffordElement {
        let mut u = CliffordElement::identity(n);
        u.apply_local(gate, qubits);
        u
    }

    #[test]
    fn gate_actions() {
        let h = single(2, &LocalClifford::hadamard(), &[1]);
        assert_eq!(h.conjugate(&p("IZ")), PauliOp::from_pauli(&p("IX")));
        let mut y = PauliOp::from_pauli(&p("IY"));
        y.phase = (y.phase + 2) % 4;
        assert_eq!(h.conjugate(&p("IY")), y);
        let s = single(2, &LocalClifford::phase_gate(), &[0]);
        assert_eq!(s.conjugate(&p("XI")), PauliOp::from_pauli(&p("YI")));
        let cx = single(2, &LocalClifford::cnot(), &[0, 1]);
        assert_eq!(cx.conjugate(&p("XI")), PauliOp::from_pauli(&p("XX")));
        assert_eq!(cx.conjugate(&p("IZ")), PauliOp::from_pauli(&p("ZZ")));
        assert_eq!(cx.conjugate(&p("YI")), PauliOp::from_pauli(&p("YX")));
    }

    #[test]
    fn reversed_qubit_order() {
        let cx = single(4, &LocalClifford::cnot(), &[3, 0]);
        assert_eq!(cx.conjugate(&p("IIIX")), PauliOp::from_pauli(&p("XIIX")));
        assert_eq!(cx.conjugate(&p("ZIII")), PauliOp::from_pauli(&p("ZIIZ")));
    }

    #[test]
    fn conjugation_is_a_homomorphism() {
        let u = random_brickwork(6, BoundaryCondition::Periodic, SeedTree::new(5)).unwrap();
        let mut rng = SeedTree::new(6).rng();
        for _ in 0..50 {
            let a = PauliString::random(6, &mut rng).unwrap();
            let b = PauliString::random(6, &mut rng).unwrap();
            let mut lhs = PauliOp::from_pauli(&a);
            lhs.mul_assign(&PauliOp::from_pauli(&b));
            let mut expect = u.conjugate(&a);
            expect.mul_assign(&u.conjugate(&b));
            // U (ab) U† computed from the product's Hermitian form.
            let ab = PauliString::from_bits(lhs.bits.clone()).unwrap();
            let mut got = u.conjugate(&ab);
            let offset = (lhs.phase + 4 - PauliOp::from_pauli(&ab).phase) % 4;
            got.phase = (got.phase + offset) % 4;
            assert_eq!(got, expect);
        }
    }

    #[test]
    fn images_stay_symplectic() {
        for n in [2, 4, 10, 64] {
            for b in [BoundaryCondition::Periodic, BoundaryCondition::Open] {
                let u = random_brickwork(n, b, SeedTree::new(n as u64)).unwrap();
                assert!(u.symplectic().is_symplectic(), "n = {n}, {b}");
                let v = F2Vec::unit(2 * n, 3);
                let image = u.conjugate(&PauliString::from_bits(v.clone()).unwrap());
                assert_eq!(image.bits, u.symplectic().apply(&v));
            }
        }
    }

    #[test]
    fn identity_bricks_assemble_to_identity() {
        let id = LocalClifford::new(SymplecticMatrix::identity(2), F2Vec::zeros(4)).unwrap();
        let u = assemble_brickwork(
            &vec![id.clone(); 3],
            &vec![id.clone(); 3],
            BoundaryCondition::Periodic,
        )
        .unwrap();
        assert_eq!(u.symplectic(), SymplecticMatrix::identity(6));
        assert!(u.phase_vector().is_zero());
        assert_eq!(u.conjugate(&p("IZIIII")), PauliOp::from_pauli(&p("IZIIII")));
        let err = assemble_brickwork(
            &vec![id.clone(); 3],
            &vec![id.clone(); 3],
            BoundaryCondition::Open,
        );
        assert_eq!(
            err,
            Err(Error::BrickCount {
                layer: 2,
                expected: 2,
                found: 3
            })
        );
    }

    #[test]
    fn two_qubit_periodic_is_a_plain_product() {
        let mut rng = SeedTree::new(9).rng();
        let first = sample_local_clifford(&mut rng);
        let second = sample_local_clifford(&mut rng);
        let u = assemble_brickwork(
            std::slice::from_ref(&second),
            std::slice::from_ref(&first),
            BoundaryCondition::Periodic,
        )
        .unwrap();
        let mut direct = CliffordElement::identity(2);
        direct.apply_local(&first, &[1, 0]);
        direct.apply_local(&second, &[0, 1]);
        assert_eq!(u.images(), direct.images());
    }

    #[test]
    fn phase_vector_encodes_signs() {
        let mut w = F2Vec::zeros(4);
        w.set(1, true); // X on qubit 0
        let x0 = single(2, &LocalClifford::pauli(&w), &[0, 1]);
        // X Z X = -Z
        assert_eq!(x0.signs(), vec![true, false, false, false]);
        assert_eq!(x0.phase_vector(), w);
    }

    #[test]
    fn local_sampling_hits_all_single_qubit_cliffords() {
        let mut rng = SeedTree::new(1).rng();
        let seen: HashSet<_> = (0..2000)
            .map(|_| {
                let c = sample_single_qubit_clifford(&mut rng);
                (
                    c.symplectic().clone().rows().to_vec(),
                    c.phase_vector().clone(),
                )
            })
            .collect();
        assert_eq!(seen.len(), 24);
    }

    #[test]
    fn seeds_reproduce_circuits() {
        let a = random_brickwork(8, BoundaryCondition::Open, SeedTree::new(42)).unwrap();
        let b = random_brickwork(8, BoundaryCondition::Open, SeedTree::new(42)).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.layer_seeds.measurement.len(), 4);
        assert_eq!(a.layer_seeds.state.len(), 3);
    }
}

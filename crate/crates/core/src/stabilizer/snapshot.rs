use std::io;

use serde::Serialize;

use super::clifford::CliffordElement;
use crate::bits::F2Vec;
use crate::error::{Error, Result};
use crate::pauli::PauliString;

/// One shot: the circuit seed, the outcome `i` and `⟨i|U W(v) U†|i⟩`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub shot_index: u64,
    pub seed: u64,
    pub outcome: F2Vec,
    pub value: i8,
}

#[derive(Serialize)]
struct SnapshotRow<'a> {
    shot_index: u64,
    seed: u64,
    outcome_hex: &'a str,
    value: i8,
}

pub fn write_snapshots_csv<W: io::Write>(out: W, snapshots: &[Snapshot]) -> io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    for s in snapshots {
        let hex = s.outcome.to_hex();
        w.serialize(SnapshotRow {
            shot_index: s.shot_index,
            seed: s.seed,
            outcome_hex: &hex,
            value: s.value,
        })?;
    }
    w.flush()
}

/// `⟨i|U W(v) U†|i⟩ ∈ {-1, 0, +1}` by sign-tracked conjugation.
pub fn snapshot_value_general(u: &CliffordElement, outcome: &F2Vec, v: &PauliString) -> i8 {
    let image = u.conjugate(v);
    if image.has_x() {
        return 0;
    }
    let sign = image
        .hermitian_sign()
        .expect("conjugates of Hermitian Paulis are Hermitian");
    let parity = outcome
        .iter_ones()
        .fold(false, |acc, q| acc ^ image.bits.get(2 * q));
    if sign ^ parity {
        -1
    } else {
        1
    }
}

/// Snapshot value of a Z-type `v` when the outcome was measured on `U|0…0⟩`.
///
/// `U Z^z U†` is then a product of stabilizers of the measured state, so a
/// diagonal image always evaluates to `+1` and only its X part is needed.
pub fn snapshot_value_ztype(u: &CliffordElement, v: &PauliString) -> Result<i8> {
    if let Some(q) = v.first_x_qubit() {
        return Err(Error::NotZType {
            qubit: q,
            letter: v.letter(q),
        });
    }
    let n = u.num_qubits();
    let images = u.images();
    let mut x = F2Vec::zeros(2 * n);
    for q in (0..n).filter(|&q| v.z(q)) {
        x.xor_assign(&images[2 * q].bits);
    }
    let image = super::pauli_op::PauliOp { bits: x, phase: 0 };
    Ok(if image.has_x() { 0 } else { 1 })
}

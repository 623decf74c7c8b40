//! Stabilizer simulation of the shadow protocol on `|0…0⟩`.

pub mod clifford;
pub mod pauli_op;
pub mod snapshot;
pub mod symplectic;
pub mod tableau;

pub use clifford::{
    assemble_brickwork, measurement_bricks, random_brickwork, random_local_layer,
    sample_local_clifford, sample_single_qubit_clifford, state_bricks, CliffordElement, LayerSeeds,
    LocalClifford,
};
pub use pauli_op::PauliOp;
pub use snapshot::{snapshot_value_general, snapshot_value_ztype, write_snapshots_csv, Snapshot};
pub use symplectic::{symplectic_form, symplectic_group_order, SymplecticMatrix};
pub use tableau::StabilizerTableau;

use rand::Rng;

/// Outcome of measuring `U|0…0⟩` in the computational basis.
pub fn measure_all<R: Rng + ?Sized>(u: &CliffordElement, rng: &mut R) -> crate::bits::F2Vec {
    u.stabilizer_tableau().measure_all(rng)
}

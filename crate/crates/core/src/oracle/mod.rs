//! Independent reference evaluations for small systems.

pub mod clifford_group;
pub mod dense;
pub mod sampling;
pub mod statevector;

pub use clifford_group::two_qubit_cliffords;
pub use dense::{dense_frame_eigenvalue, dense_topen, dense_tper, DenseOperator, ProductOperator};
pub use sampling::{
    brute_force_frame_eigenvalue, haar_unitary, second_moment_check, HaarSampler,
    MonteCarloEstimate, SamplerMode, SecondMomentReport,
};

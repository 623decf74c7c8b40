//! Classical shadows with one-round brickwork circuits.
//!
//! - [`pauli`]: Pauli strings in binary symplectic form and brickwork combinatorics.
//! - [`frame`]: exact and closed-form frame-operator eigenvalues and variance bounds.
//! - [`stabilizer`]: random Cliffords, computational-basis measurement, snapshot values.
//! - [`oracle`]: dense and sampled reference evaluations for small systems.
//! - [`estimation`]: shadow estimators and brickwork vs. local-Clifford analytics.

pub mod bits;
pub mod error;
pub mod estimation;
pub mod frame;
pub mod oracle;
pub mod pauli;
pub mod rng;
pub mod stabilizer;

pub use bits::F2Vec;
pub use error::{Error, Result};
pub use frame::{
    bound_constants, frame_eigenvalue, general_variance_bound, lc_frame_eigenvalue, variance_bound,
    BoundConstants, Ensemble, EvalMode, FrameEigenvalue,
};
pub use pauli::{
    brick_support, bw_partition, lc_support_size, parse_pauli, weight_vector, BoundaryCondition,
    BrickSupport, BwPartition, PauliString,
};
pub use rng::SeedTree;

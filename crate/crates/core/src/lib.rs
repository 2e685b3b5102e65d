//! Dynamics and asymmetry measures for a pair of spin-1/2 magnetic dipoles.
//!
//! The library models two qubits coupled by the magnetic dipole-dipole
//! interaction, evolves product states (pure and mixed) under that
//! Hamiltonian, and quantifies how asymmetric the states are with respect to
//! the interaction via Wigner-Yanase skew information: globally, locally
//! (single-dipole reductions), and relative to the evolution operator itself.
//! Concurrence ties the asymmetry production to entanglement generation.
//!
//! Every closed-form expression has a generic matrix-level counterpart
//! (eigendecomposition, operator square roots, partial traces) and the
//! [`verify`] module can replay the agreement checks with a fixed seed. The
//! [`scan`] module rasterizes any measure over two-parameter grids.

pub mod asymmetry;
pub mod entanglement;
mod error;
pub mod linalg;
pub mod model;
pub mod scan;
pub mod verify;

pub use error::{Error, Result};
pub use linalg::{commutator, ComplexMatrix, EigenSystem, Subsystem};
pub use model::{
    bell_coefficients, bloch_product_state, evolve_bloch_closed, evolve_density,
    evolve_pure_closed, pure_product_state, BellCoefficients, BlochAxis, BlochProductParams,
    DensityMatrix, MdiHamiltonian, PureProductParams,
};
pub use num_complex::Complex64;

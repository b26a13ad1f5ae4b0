//! Superconnection Chern characters on finite-dimensional models.
//!
//! The crate realizes graded matrix algebras, the universal differential
//! algebra of a graded algebra, Connes' X-extension of a cycle with its
//! cyclic cocycles, graph projections of odd Hermitian operators, the
//! Duhamel heat expansion of a superconnection, and the Bott projection on
//! the two-sphere.

pub mod cycle_core;
pub mod error;
pub mod heat_kernel;
pub mod index_theory;
pub mod linalg;
pub mod quad;
pub mod random;
pub mod sphere_chern;
pub mod super_algebra;
pub mod universal_forms;

pub use cycle_core::{
    cocycle_phi_tau, cocycle_psi, k_pair, matrix_model_build, CrossedElement, CycleDescriptor,
    XExtElement,
};
pub use error::{Error, Result};
pub use heat_kernel::{CombClass, DuhamelRequest, SpectralChain};
pub use index_theory::{FredholmRealization, SpectralFrame};
pub use super_algebra::{ModelElement, Parity, SmoothFunction, SuperMatrix};
pub use universal_forms::{Chain, Form, Gen, Word};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
/// Dense complex matrix.
pub type Mat = nalgebra::DMatrix<C64>;

/// Largest absolute entry of a matrix.
pub fn max_abs(m: &Mat) -> f64 {
    m.iter().fold(0.0_f64, |acc, z| acc.max(z.norm()))
}

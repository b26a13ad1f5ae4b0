//! Superconnection heat expansion: Duhamel coefficients, the `(K, σ)`
//! combinatorics, the chains `ψ_n` and their realizations.

pub mod chains;
pub mod comb;
pub mod duhamel;
pub mod expansion;
pub mod grassmann;
pub mod main_theorem;

pub use chains::{chi_realized, psi_chain, SpectralChain, Spectrum};
pub use comb::{check_class_map, enumerate_classes, CombClass};
pub use duhamel::{duhamel_coeff, DuhamelCache, DuhamelRequest};
pub use expansion::{
    commutator_residual, heat_dense, heat_oracle, omega_recurrence, realize_phi, realize_psi,
    time_derivative_residual, triple_agreement, FrameModel, RecurrenceSide, TripleReport,
};
pub use main_theorem::{default_samples, verify_main, verify_thm412, MainReport, Thm412Report};

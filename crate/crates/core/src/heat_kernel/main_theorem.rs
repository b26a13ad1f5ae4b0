//! Cycle identities for the heat chains and the polynomial-in-`st` check.

use nalgebra::{DMatrix, DVector};
use serde::Serialize;

use super::chains::{check_zeta_independence, tilde_decomposition_residual, psi_chain, Spectrum};
use super::expansion::heat_oracle;
use crate::cycle_core::{k_pair_difference, CycleDescriptor};
use crate::error::{Error, Result};
use crate::index_theory::{graph_projection_crossed, reference_projection, FredholmRealization, SpectralFrame};
use crate::linalg::condition_number;
use crate::C64;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Thm412Report {
    pub n: usize,
    pub t: f64,
    /// `‖b(ψ_{n+1}) + ψ̃_n‖_max`.
    pub boundary_residual: f64,
    /// `‖N ψ̃_n‖_max`.
    pub norm_residual: f64,
    /// `‖ψ_{n+1}‖_max`, the scale of the chains involved.
    pub scale: f64,
    pub zeta_spread: f64,
    pub tilde_decomposition_residual: f64,
}

impl Thm412Report {
    pub fn max_residual(&self) -> f64 {
        self.boundary_residual.max(self.norm_residual)
    }
}

/// Boundary and cyclic-norm identities on the spectrum of `H`.
pub fn verify_thm412_spectrum(n: usize, t: f64, spectrum: &Spectrum) -> Result<Thm412Report> {
    let psi_next = psi_chain(n + 1, t, spectrum, false)?;
    let psit = psi_chain(n, t, spectrum, true)?;
    let boundary_residual = psi_next.b_grad()?.add(&psit)?.max_abs();
    let norm_residual = psit.cyclic_norm().max_abs();
    let zeta_spread = check_zeta_independence(n, t, spectrum)?.max_spread;
    let tilde_decomposition_residual = tilde_decomposition_residual(n, t, spectrum)?;
    Ok(Thm412Report {
        n,
        t,
        boundary_residual,
        norm_residual,
        scale: psi_next.max_abs(),
        zeta_spread,
        tilde_decomposition_residual,
    })
}

pub fn verify_thm412(n: usize, t: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<Thm412Report> {
    if cycle.p() != r.p() || cycle.q() != r.q() {
        return Err(Error::Dimension("operator and cycle gradings differ".into()));
    }
    let frame = SpectralFrame::new(r)?;
    verify_thm412_spectrum(n, t, &Spectrum::from_frame(&frame))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MainReport {
    pub m: usize,
    pub samples: Vec<f64>,
    /// Fitted coefficients of `u ↦ τ(exp(−(H + uη)²))`, constant first.
    pub coefficients: Vec<[f64; 2]>,
    pub top: [f64; 2],
    pub lower_max: f64,
    /// `(−1)^m · k_pair([e₀] − [p], m)`.
    pub reference: [f64; 2],
    pub abs_error: f64,
    pub rel_error: f64,
    pub condition: f64,
}

/// Smallest reference magnitude used as the denominator of the relative
/// error; below it the comparison is effectively absolute.
pub const REL_ERROR_FLOOR: f64 = 1e-6;

/// Default sample points `0.3, 0.6, …, 0.3(2m+1)`.
pub fn default_samples(m: usize) -> Vec<f64> {
    (1..=2 * m + 1).map(|i| 0.3 * i as f64).collect()
}

/// Fits `τ(exp(−t(H + sη)²))` as a polynomial of degree `2m = k` in
/// `u = s√t`, sampling at `t = 1`, and compares the top coefficient with the
/// K-pairing of the graph projection.
pub fn verify_main(cycle: &CycleDescriptor, r: &FredholmRealization, samples: &[f64]) -> Result<MainReport> {
    let k = cycle.k();
    let m = k / 2;
    if samples.len() != 2 * m + 1 {
        return Err(Error::Invalid(format!("need {} sample points for degree {}", 2 * m + 1, 2 * m)));
    }
    let deg = 2 * m;
    let vand = DMatrix::<f64>::from_fn(deg + 1, deg + 1, |i, j| samples[i].powi(j as i32));
    let condition = condition_number(&vand);
    if !condition.is_finite() || condition > 1e12 {
        return Err(Error::IllConditioned(format!("Vandermonde condition number {condition:.3e}")));
    }
    let mut rhs = DVector::<C64>::zeros(deg + 1);
    for (i, &u) in samples.iter().enumerate() {
        rhs[i] = cycle.tau(&heat_oracle(cycle, r, u, 1.0)?);
    }
    let vc = vand.map(|x| C64::new(x, 0.0));
    let coeffs = vc
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::IllConditioned("singular Vandermonde system".into()))?;
    let e0 = reference_projection(r.p(), r.q());
    let p = graph_projection_crossed(r)?;
    let kp = k_pair_difference(cycle, &e0, &p, m)?;
    let reference = if m.is_multiple_of(2) { kp } else { -kp };
    let top = coeffs[deg];
    let lower_max = (0..deg).map(|j| coeffs[j].norm()).fold(0.0, f64::max);
    let abs_error = (top - reference).norm();
    Ok(MainReport {
        m,
        samples: samples.to_vec(),
        coefficients: coeffs.iter().map(|c| [c.re, c.im]).collect(),
        top: [top.re, top.im],
        lower_max,
        reference: [reference.re, reference.im],
        abs_error,
        rel_error: abs_error / reference.norm().max(REL_ERROR_FLOOR),
        condition,
    })
}

//! Simplex integrals of exponentials via divided differences.

use std::collections::HashMap;

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::expm;

/// Nodes `μ_0..μ_n` and time `t` of a Duhamel coefficient.
#[derive(Debug, Clone, PartialEq)]
pub struct DuhamelRequest {
    pub nodes: Vec<f64>,
    pub t: f64,
}

impl DuhamelRequest {
    pub fn new(nodes: Vec<f64>, t: f64) -> Self {
        DuhamelRequest { nodes, t }
    }

    pub fn coefficient(&self) -> Result<f64> {
        duhamel_coeff(&self.nodes, self.t)
    }
}

/// `E_n(μ; t) = ∫_{tΔ_n} Π e^{−t_i μ_i} dV`, normalized so that
/// `Vol(tΔ_n) = t^n/n!`.
///
/// Computed as `(−1)^n` times the divided difference of `λ ↦ e^{−tλ}` at the
/// nodes, read off the corner of the exponential of the bidiagonal matrix
/// with `−tμ_i` on the diagonal and `−t` above it. Nodes are shifted by their
/// minimum so the exponential stays bounded.
pub fn duhamel_coeff(nodes: &[f64], t: f64) -> Result<f64> {
    if t < 0.0 || t.is_nan() {
        return Err(Error::NegativeTime(t));
    }
    if nodes.is_empty() {
        return Err(Error::Invalid("Duhamel coefficient needs at least one node".into()));
    }
    let n = nodes.len() - 1;
    let shift = nodes.iter().copied().fold(f64::INFINITY, f64::min);
    if n == 0 {
        return Ok((-t * nodes[0]).exp());
    }
    let mut a = DMatrix::<f64>::zeros(n + 1, n + 1);
    for i in 0..=n {
        a[(i, i)] = -t * (nodes[i] - shift);
        if i < n {
            a[(i, i + 1)] = -t;
        }
    }
    let corner = expm(&a)[(0, n)];
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    Ok(sign * corner * (-t * shift).exp())
}

/// Memoized coefficients for node multisets drawn from a fixed list of
/// distinct values, keyed by the sorted value indices.
#[derive(Debug, Clone)]
pub struct DuhamelCache {
    values: Vec<f64>,
    t: f64,
    map: HashMap<Vec<usize>, f64>,
}

impl DuhamelCache {
    pub fn new(values: Vec<f64>, t: f64) -> Result<Self> {
        if t < 0.0 {
            return Err(Error::NegativeTime(t));
        }
        Ok(DuhamelCache { values, t, map: HashMap::new() })
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    /// Coefficient for nodes `values[idx[0]], values[idx[1]], …`.
    pub fn get(&mut self, idx: &[usize]) -> f64 {
        let mut key = idx.to_vec();
        key.sort_unstable();
        if let Some(v) = self.map.get(&key) {
            return *v;
        }
        let nodes: Vec<f64> = key.iter().map(|&i| self.values[i]).collect();
        let v = duhamel_coeff(&nodes, self.t).expect("time checked at construction");
        self.map.insert(key, v);
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        assert!((duhamel_coeff(&[2.0], 0.7).unwrap() - (-1.4f64).exp()).abs() < 1e-16);
        let mu = 1.3;
        let t = 0.9;
        assert!((duhamel_coeff(&[mu, mu], t).unwrap() - t * (-t * mu).exp()).abs() < 1e-15);
        let v = duhamel_coeff(&[0.0, 1.0], 1.0).unwrap();
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-15);
        assert!((v - 0.632_120_558_828_557_7).abs() < 1e-15);
    }

    #[test]
    fn zero_nodes_give_simplex_volume() {
        let t = 1.7f64;
        for n in 0..6 {
            let nodes = vec![0.0; n + 1];
            let fact: f64 = (1..=n).map(|j| j as f64).product();
            assert!((duhamel_coeff(&nodes, t).unwrap() - t.powi(n as i32) / fact).abs() < 1e-13);
        }
    }

    #[test]
    fn negative_time_is_rejected() {
        assert!(matches!(duhamel_coeff(&[1.0], -0.1), Err(Error::NegativeTime(_))));
    }
}

//! Spectral tensors: chains `Σ F(j) P_{j_0} ⊗ … ⊗ P_{j_n}` over the rank-one
//! eigenprojectors of `H`, and the heat chains `ψ_n`, `ψ̃_n`.

use serde::Serialize;

use super::comb::{combinations, enumerate_classes, m_of_l, CombClass};
use super::duhamel::DuhamelCache;
use crate::error::{Error, Result};
use crate::index_theory::SpectralFrame;

/// Eigenvalue data a spectral tensor is evaluated on.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Spectrum {
    pub lambda: Vec<f64>,
    /// Involution with `λ_{π(j)} = −λ_j`.
    pub pi: Vec<usize>,
    pub mu_class: Vec<usize>,
    pub mu: Vec<f64>,
}

impl Spectrum {
    pub fn from_frame(f: &SpectralFrame) -> Self {
        Spectrum { lambda: f.lambda.clone(), pi: f.pi.clone(), mu_class: f.mu_class.clone(), mu: f.mu.clone() }
    }

    /// Spectrum `{±x_i}` with `π` swapping signs; zero values are fixed points.
    pub fn symmetric(xs: &[f64]) -> Self {
        let mut s = Spectrum { lambda: vec![], pi: vec![], mu_class: vec![], mu: vec![] };
        for &x in xs {
            let cls = s.mu.len();
            s.mu.push(x * x);
            let j = s.lambda.len();
            if x == 0.0 {
                s.lambda.push(0.0);
                s.pi.push(j);
                s.mu_class.push(cls);
            } else {
                s.lambda.extend([x, -x]);
                s.pi.extend([j + 1, j]);
                s.mu_class.extend([cls, cls]);
            }
        }
        s
    }

    pub fn dim(&self) -> usize {
        self.lambda.len()
    }
}

/// Degree-`n` chain with `n + 1` slots, stored densely over index tuples
/// (slot 0 most significant).
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralChain {
    n: usize,
    dim: usize,
    pi: Vec<usize>,
    data: Vec<f64>,
}

impl SpectralChain {
    pub fn zeros(n: usize, spectrum: &Spectrum) -> Self {
        let dim = spectrum.dim();
        SpectralChain { n, dim, pi: spectrum.pi.clone(), data: vec![0.0; dim.pow(n as u32 + 1)] }
    }

    /// Fills every entry from `f(tuple)`.
    pub fn from_fn<F: FnMut(&[usize]) -> f64>(n: usize, spectrum: &Spectrum, mut f: F) -> Self {
        let mut c = Self::zeros(n, spectrum);
        let mut idx = vec![0usize; n + 1];
        for pos in 0..c.data.len() {
            c.decode(pos, &mut idx);
            c.data[pos] = f(&idx);
        }
        c
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn pi(&self) -> &[usize] {
        &self.pi
    }

    pub fn values(&self) -> &[f64] {
        &self.data
    }

    fn decode(&self, mut pos: usize, idx: &mut [usize]) {
        for s in (0..=self.n).rev() {
            idx[s] = pos % self.dim;
            pos /= self.dim;
        }
    }

    fn encode(&self, idx: &[usize]) -> usize {
        idx.iter().fold(0, |acc, &j| acc * self.dim + j)
    }

    pub fn get(&self, idx: &[usize]) -> f64 {
        self.data[self.encode(idx)]
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|x| x.abs()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &SpectralChain) -> Result<SpectralChain> {
        self.same_shape(other)?;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect();
        Ok(SpectralChain { data, ..self.clone() })
    }

    pub fn scale(&self, c: f64) -> SpectralChain {
        SpectralChain { data: self.data.iter().map(|x| x * c).collect(), ..self.clone() }
    }

    fn same_shape(&self, other: &SpectralChain) -> Result<()> {
        if self.n != other.n || self.dim != other.dim {
            return Err(Error::Dimension("spectral chains of different shape".into()));
        }
        Ok(())
    }

    /// `½(F(z, w) ± F(z, πw))` with the last slot as `w`.
    fn last_part(&self, z: &[usize], w: usize, odd: bool) -> f64 {
        let mut idx = z.to_vec();
        idx.push(w);
        let a = self.get(&idx);
        *idx.last_mut().unwrap() = self.pi[w];
        let b = self.get(&idx);
        if odd {
            0.5 * (a - b)
        } else {
            0.5 * (a + b)
        }
    }

    /// Wrap-around term shared by `b_grad` and `t`: the even part of the
    /// last factor moves to the front untouched, the odd part picks up `α`
    /// on the factors it passes.
    fn wrap(&self, rest: &[usize], w: usize) -> f64 {
        let flipped: Vec<usize> = rest.iter().map(|&j| self.pi[j]).collect();
        self.last_part(rest, w, false) + self.last_part(&flipped, w, true)
    }

    /// The graded Hochschild boundary.
    pub fn b_grad(&self) -> Result<SpectralChain> {
        let n = self.n;
        if n == 0 {
            return Err(Error::DegreeZero);
        }
        let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let out_spec = Spectrum { lambda: vec![0.0; self.dim], pi: self.pi.clone(), mu_class: vec![], mu: vec![] };
        Ok(SpectralChain::from_fn(n - 1, &out_spec, |y| {
            let mut tot = 0.0;
            let mut args = Vec::with_capacity(n + 1);
            for j in 0..n {
                args.clear();
                args.extend_from_slice(&y[..=j]);
                args.extend_from_slice(&y[j..]);
                let s = if j % 2 == 0 { 1.0 } else { -1.0 };
                tot += s * self.get(&args);
            }
            tot + sign_n * self.wrap(y, y[0])
        }))
    }

    /// The cyclic operator.
    pub fn cyclic_t(&self) -> SpectralChain {
        let n = self.n;
        let sign_n = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
        let out_spec = Spectrum { lambda: vec![0.0; self.dim], pi: self.pi.clone(), mu_class: vec![], mu: vec![] };
        SpectralChain::from_fn(n, &out_spec, |y| sign_n * self.wrap(&y[1..], y[0]))
    }

    /// `N = Σ_{k=0}^{n} t^k`.
    pub fn cyclic_norm(&self) -> SpectralChain {
        let mut acc = self.clone();
        let mut cur = self.clone();
        for _ in 0..self.n {
            cur = cur.cyclic_t();
            acc = acc.add(&cur).expect("same shape");
        }
        acc
    }
}

fn power(x: f64, e: u32) -> f64 {
    x.powi(e as i32)
}

/// `χ_{K,σ}` (or `χ̃_{K,σ}` with an extra leading slot) evaluated on the
/// spectrum: slots in `K` carry `e^{−t_p x²} x^{i_p}`, others the unit.
pub fn chi_realized(cls: &CombClass, t: f64, spectrum: &Spectrum, tilde: bool, cache: &mut DuhamelCache) -> SpectralChain {
    let deg = if tilde { cls.n + 1 } else { cls.n };
    let off = tilde as usize;
    let sign = cls.sign();
    debug_assert_eq!(cache.t(), t);
    let mut nodes = Vec::with_capacity(cls.k.len() + 1);
    SpectralChain::from_fn(deg, spectrum, |j| {
        nodes.clear();
        if tilde {
            nodes.push(spectrum.mu_class[j[0]]);
        }
        nodes.extend(cls.k.iter().map(|&p| spectrum.mu_class[j[p + off]]));
        let mut v = sign * cache.get(&nodes);
        for (p, &e) in cls.exponents.iter().enumerate() {
            if e > 0 {
                v *= power(spectrum.lambda[j[p + off]], e);
            }
        }
        v
    })
}

/// `ψ_n(t) = Σ_{C_n} χ_{K,σ}(t)`; with `tilde`, `ψ̃_n(t) = Σ_{C_{n−1}} χ̃_{K,σ}(t)`,
/// a chain of degree `n` (zero for `n = 0`).
pub fn psi_chain(n: usize, t: f64, spectrum: &Spectrum, tilde: bool) -> Result<SpectralChain> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mut cache = DuhamelCache::new(spectrum.mu.clone(), t)?;
    if tilde && n == 0 {
        return Ok(SpectralChain::zeros(0, spectrum));
    }
    let classes = if tilde { enumerate_classes(n - 1) } else { enumerate_classes(n) };
    let mut acc = SpectralChain::zeros(n, spectrum);
    for cls in &classes {
        acc = acc.add(&chi_realized(cls, t, spectrum, tilde, &mut cache))?;
    }
    Ok(acc)
}

/// `ζ_{L,M}` on slots `−1..n` (stored at positions `0..n+1`):
/// `Σ_{M_1} (−1)^{|M_1|} ∫ ζ_{L,M,M_1}` over `M_1 ⊆ {−1..n} \ (L ∪ M)`.
pub fn zeta_chain(n: usize, l: &[usize], m: &[i64], t: f64, spectrum: &Spectrum) -> Result<SpectralChain> {
    let mut cache = DuhamelCache::new(spectrum.mu.clone(), t)?;
    let slots: Vec<i64> = (-1..=n as i64).collect();
    let in_l = |p: i64| p >= 0 && l.contains(&(p as usize));
    let rest: Vec<usize> = slots
        .iter()
        .filter(|&&p| !in_l(p) && !m.contains(&p))
        .map(|&p| (p + 1) as usize)
        .collect();
    let subsets: Vec<Vec<usize>> = (0..=rest.len()).flat_map(|r| combinations(&rest, r)).collect();
    let mut nodes = Vec::with_capacity(n + 2);
    Ok(SpectralChain::from_fn(n + 1, spectrum, |j| {
        let mut tot = 0.0;
        for m1 in &subsets {
            if m1.len() == n + 2 {
                continue;
            }
            nodes.clear();
            let mut val = 1.0;
            for (pos, &jp) in j.iter().enumerate().take(n + 2) {
                if m1.contains(&pos) {
                    continue;
                }
                nodes.push(spectrum.mu_class[jp]);
                let p = pos as i64 - 1;
                let x = spectrum.lambda[jp];
                if in_l(p) {
                    val *= x;
                } else if !m.contains(&p) {
                    val *= x * x;
                }
            }
            let s = if m1.len() % 2 == 0 { 1.0 } else { -1.0 };
            tot += s * val * cache.get(&nodes);
        }
        tot
    }))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ZetaIndependenceReport {
    pub n: usize,
    pub sets_checked: usize,
    pub max_spread: f64,
}

/// Spread of `ζ_{L,M}` over all admissible `M ∋ −1` of size
/// `(n − |L|)/2 + 2`, maximized over `L`.
pub fn check_zeta_independence(n: usize, t: f64, spectrum: &Spectrum) -> Result<ZetaIndependenceReport> {
    let mut rep = ZetaIndependenceReport { n, sets_checked: 0, max_spread: 0.0 };
    let all: Vec<usize> = (0..=n).collect();
    for r in (0..=n + 1).filter(|r| (n + 1 - r) % 2 == 1) {
        for l in combinations(&all, r) {
            let comp: Vec<usize> = all.iter().copied().filter(|p| !l.contains(p)).collect();
            let size = (n - r) / 2 + 1;
            let mut first: Option<SpectralChain> = None;
            for ms in combinations(&comp, size) {
                let mut m: Vec<i64> = vec![-1];
                m.extend(ms.iter().map(|&p| p as i64));
                let z = zeta_chain(n, &l, &m, t, spectrum)?;
                rep.sets_checked += 1;
                match &first {
                    None => first = Some(z),
                    Some(f) => {
                        let d = z.add(&f.scale(-1.0))?.max_abs();
                        rep.max_spread = rep.max_spread.max(d);
                    }
                }
            }
        }
    }
    Ok(rep)
}

/// `‖ψ̃_{n+1} − (−1)^n Σ_L (−1)^{Σ(L)} ζ_{L, M(L) ∪ {−1}}‖` where
/// `Σ(L) = Σ_{k∈L}(n − k)`.
pub fn tilde_decomposition_residual(n: usize, t: f64, spectrum: &Spectrum) -> Result<f64> {
    let all: Vec<usize> = (0..=n).collect();
    let mut acc = SpectralChain::zeros(n + 1, spectrum);
    for r in (0..=n + 1).filter(|r| (n + 1 - r) % 2 == 1) {
        for l in combinations(&all, r) {
            let mut m: Vec<i64> = vec![-1];
            m.extend(m_of_l(&l, n).iter().map(|&p| p as i64));
            let sigma: usize = l.iter().map(|k| n - k).sum();
            let z = zeta_chain(n, &l, &m, t, spectrum)?;
            acc = acc.add(&z.scale(if sigma.is_multiple_of(2) { 1.0 } else { -1.0 }))?;
        }
    }
    let sign = if n.is_multiple_of(2) { 1.0 } else { -1.0 };
    let psit = psi_chain(n + 1, t, spectrum, true)?;
    Ok(psit.add(&acc.scale(-sign))?.max_abs())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn psi_zero_is_heat_diagonal() {
        let s = Spectrum::symmetric(&[0.7, 1.3]);
        let c = psi_chain(0, 0.5, &s, false).unwrap();
        for j in 0..s.dim() {
            let x = s.lambda[j];
            assert!((c.get(&[j]) - (-0.5 * x * x).exp()).abs() < 1e-15);
        }
    }

    #[test]
    fn boundary_squares_to_zero() {
        let s = Spectrum::symmetric(&[0.4, -1.1, 0.0]);
        let c = psi_chain(3, 0.8, &s, false).unwrap();
        let bb = c.b_grad().unwrap().b_grad().unwrap();
        assert!(bb.max_abs() < 1e-13);
    }

    #[test]
    fn cyclic_order() {
        let s = Spectrum::symmetric(&[0.4, 0.9]);
        let c = SpectralChain::from_fn(2, &s, |j| (j[0] * 7 + j[1] * 3 + j[2]) as f64 + 0.5);
        let t3 = c.cyclic_t().cyclic_t().cyclic_t();
        assert!(t3.add(&c.scale(-1.0)).unwrap().max_abs() < 1e-14);
    }
}

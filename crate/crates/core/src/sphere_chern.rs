//! Polynomial differential forms on the unit sphere `S² ⊂ ℝ³` with exact
//! integration, the Bott projection and its Chern number.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::random::normal;
use crate::super_algebra::shuffle_sign;
use crate::C64;

const ZERO: C64 = C64 { re: 0.0, im: 0.0 };

/// Exponents `(a, b, c)` of `x^a y^b z^c`.
pub type Monomial = [u32; 3];

/// Polynomial in `x, y, z`, not reduced.
pub type RawPoly = BTreeMap<Monomial, C64>;

fn push(terms: &mut RawPoly, m: Monomial, c: C64) {
    if c == ZERO {
        return;
    }
    let e = terms.entry(m).or_insert(ZERO);
    *e += c;
    if *e == ZERO {
        terms.remove(&m);
    }
}

/// Polynomial on the sphere in canonical form: every monomial has `z`-degree
/// at most one.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SpherePoly {
    terms: RawPoly,
}

/// Rewrites `z² → 1 − x² − y²` until every monomial has `z`-degree ≤ 1.
pub fn reduce(raw: &RawPoly) -> SpherePoly {
    let mut out = RawPoly::new();
    let mut stack: Vec<(Monomial, C64)> = raw.iter().map(|(m, c)| (*m, *c)).collect();
    while let Some(([a, b, c], coef)) = stack.pop() {
        if c < 2 {
            push(&mut out, [a, b, c], coef);
        } else {
            stack.push(([a, b, c - 2], coef));
            stack.push(([a + 2, b, c - 2], -coef));
            stack.push(([a, b + 2, c - 2], -coef));
        }
    }
    SpherePoly { terms: out }
}

impl SpherePoly {
    pub fn zero() -> Self {
        SpherePoly::default()
    }

    pub fn constant(c: C64) -> Self {
        let mut terms = RawPoly::new();
        push(&mut terms, [0, 0, 0], c);
        SpherePoly { terms }
    }

    pub fn monomial(m: Monomial, c: C64) -> Self {
        let mut terms = RawPoly::new();
        push(&mut terms, m, c);
        reduce(&terms)
    }

    pub fn x() -> Self {
        Self::monomial([1, 0, 0], C64::new(1.0, 0.0))
    }
    pub fn y() -> Self {
        Self::monomial([0, 1, 0], C64::new(1.0, 0.0))
    }
    pub fn z() -> Self {
        Self::monomial([0, 0, 1], C64::new(1.0, 0.0))
    }

    pub fn terms(&self) -> &RawPoly {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    pub fn add(&self, other: &SpherePoly) -> SpherePoly {
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            push(&mut terms, *m, *c);
        }
        SpherePoly { terms }
    }

    pub fn scale(&self, s: C64) -> SpherePoly {
        let mut terms = RawPoly::new();
        for (m, c) in &self.terms {
            push(&mut terms, *m, c * s);
        }
        SpherePoly { terms }
    }

    pub fn sub(&self, other: &SpherePoly) -> SpherePoly {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, other: &SpherePoly) -> SpherePoly {
        let mut raw = RawPoly::new();
        for (m, c) in &self.terms {
            for (n, d) in &other.terms {
                push(&mut raw, [m[0] + n[0], m[1] + n[1], m[2] + n[2]], c * d);
            }
        }
        reduce(&raw)
    }

    /// Ambient partial derivative `∂/∂x_i` of the canonical representative.
    pub fn partial(&self, i: usize) -> SpherePoly {
        let mut raw = RawPoly::new();
        for (m, c) in &self.terms {
            if m[i] > 0 {
                let mut n = *m;
                n[i] -= 1;
                push(&mut raw, n, c * m[i] as f64);
            }
        }
        reduce(&raw)
    }

    pub fn eval(&self, p: [f64; 3]) -> C64 {
        self.terms
            .iter()
            .map(|(m, c)| c * (p[0].powi(m[0] as i32) * p[1].powi(m[1] as i32) * p[2].powi(m[2] as i32)))
            .sum()
    }

    /// `p ↦ p ∘ R` for a linear map `R`, i.e. `x_i ↦ Σ_j R_ij x_j`.
    pub fn compose_linear(&self, r: &[[f64; 3]; 3]) -> SpherePoly {
        let lin: Vec<SpherePoly> = (0..3)
            .map(|i| {
                let mut raw = RawPoly::new();
                for j in 0..3 {
                    let mut m = [0, 0, 0];
                    m[j] = 1;
                    push(&mut raw, m, C64::new(r[i][j], 0.0));
                }
                reduce(&raw)
            })
            .collect();
        let mut out = SpherePoly::zero();
        for (m, c) in &self.terms {
            let mut term = SpherePoly::constant(*c);
            for i in 0..3 {
                for _ in 0..m[i] {
                    term = term.mul(&lin[i]);
                }
            }
            out = out.add(&term);
        }
        out
    }

    /// `∫_{S²} p dA` from the moment formula.
    pub fn integrate(&self) -> C64 {
        self.terms.iter().map(|(m, c)| c * sphere_moment(*m)).sum()
    }
}

fn double_factorial_odd(k: i64) -> f64 {
    // (k)!! for odd k ≥ −1
    let mut acc = 1.0;
    let mut j = k;
    while j > 1 {
        acc *= j as f64;
        j -= 2;
    }
    acc
}

/// `∫_{S²} x^a y^b z^c dA`: zero if an exponent is odd, otherwise
/// `4π (a−1)!!(b−1)!!(c−1)!! / (a+b+c+1)!!`.
pub fn sphere_moment(m: Monomial) -> f64 {
    if m.iter().any(|e| e % 2 == 1) {
        return 0.0;
    }
    let num: f64 = m.iter().map(|&e| double_factorial_odd(e as i64 - 1)).product();
    4.0 * PI * num / double_factorial_odd((m[0] + m[1] + m[2]) as i64 + 1)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MomentCheck {
    pub samples: usize,
    /// `(monomial, exact, estimate, standard error)`.
    pub rows: Vec<(Monomial, f64, f64, f64)>,
    /// Largest `|exact − estimate|` in units of the standard error.
    pub max_sigma: f64,
}

/// Uniform Monte Carlo estimates of low even moments, for cross-checking
/// [`sphere_moment`].
pub fn validate_moments<R: Rng>(rng: &mut R, samples: usize) -> MomentCheck {
    let monos: Vec<Monomial> = vec![[0, 0, 0], [2, 0, 0], [0, 0, 2], [4, 0, 0], [2, 2, 0], [2, 2, 2], [0, 4, 2], [1, 1, 0]];
    let mut sum = vec![0.0; monos.len()];
    let mut sum2 = vec![0.0; monos.len()];
    for _ in 0..samples {
        let mut v = [normal(rng), normal(rng), normal(rng)];
        let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
        if r == 0.0 {
            continue;
        }
        v.iter_mut().for_each(|c| *c /= r);
        for (i, m) in monos.iter().enumerate() {
            let f = v[0].powi(m[0] as i32) * v[1].powi(m[1] as i32) * v[2].powi(m[2] as i32);
            sum[i] += f;
            sum2[i] += f * f;
        }
    }
    let nf = samples as f64;
    let mut rows = Vec::new();
    let mut max_sigma: f64 = 0.0;
    for (i, m) in monos.iter().enumerate() {
        let mean = sum[i] / nf;
        let var = (sum2[i] / nf - mean * mean).max(0.0);
        let est = 4.0 * PI * mean;
        let se = 4.0 * PI * (var / nf).sqrt();
        let exact = sphere_moment(*m);
        let sigma = if se > 0.0 {
            (exact - est).abs() / se
        } else if (exact - est).abs() <= 1e-9 * exact.abs().max(1.0) {
            0.0
        } else {
            f64::INFINITY
        };
        max_sigma = max_sigma.max(sigma);
        rows.push((*m, exact, est, se));
    }
    MomentCheck { samples, rows, max_sigma }
}

/// Differential form on `ℝ³` with polynomial coefficients, restricted to the
/// sphere; component `S` (a bitmask over `dx, dy, dz`) multiplies `dx_S`.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct SphereFormAmbient {
    comps: [SpherePoly; 8],
}

/// Bitmasks of the 2-form basis `dy∧dz`, `dx∧dz`, `dx∧dy`.
const DYDZ: usize = 0b110;
const DXDZ: usize = 0b101;
const DXDY: usize = 0b011;

impl SphereFormAmbient {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn function(f: SpherePoly) -> Self {
        let mut w = Self::zero();
        w.comps[0] = f;
        w
    }

    /// `f dx_S`.
    pub fn term(mask: usize, f: SpherePoly) -> Self {
        assert!(mask < 8);
        let mut w = Self::zero();
        w.comps[mask] = f;
        w
    }

    /// `A dy∧dz + B dz∧dx + C dx∧dy`.
    pub fn two_form(a: SpherePoly, b: SpherePoly, c: SpherePoly) -> Self {
        let mut w = Self::zero();
        w.comps[DYDZ] = a;
        w.comps[DXDZ] = b.scale(C64::new(-1.0, 0.0));
        w.comps[DXDY] = c;
        w
    }

    pub fn component(&self, mask: usize) -> &SpherePoly {
        &self.comps[mask]
    }

    pub fn is_zero(&self) -> bool {
        self.comps.iter().all(|c| c.is_zero())
    }

    pub fn max_coeff(&self) -> f64 {
        self.comps.iter().map(|c| c.max_coeff()).fold(0.0, f64::max)
    }

    /// Degree part.
    pub fn degree_part(&self, deg: u32) -> Self {
        let mut w = Self::zero();
        for s in 0..8usize {
            if (s as u32).count_ones() == deg {
                w.comps[s] = self.comps[s].clone();
            }
        }
        w
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut w = self.clone();
        for s in 0..8 {
            w.comps[s] = w.comps[s].add(&other.comps[s]);
        }
        w
    }

    pub fn scale(&self, c: C64) -> Self {
        let mut w = self.clone();
        for s in 0..8 {
            w.comps[s] = w.comps[s].scale(c);
        }
        w
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn wedge(&self, other: &Self) -> Self {
        let mut w = Self::zero();
        for s in 0..8usize {
            if self.comps[s].is_zero() {
                continue;
            }
            for t in 0..8usize {
                if s & t != 0 || other.comps[t].is_zero() {
                    continue;
                }
                let e = shuffle_sign(s as u32, t as u32) as f64;
                let prod = self.comps[s].mul(&other.comps[t]).scale(C64::new(e, 0.0));
                w.comps[s | t] = w.comps[s | t].add(&prod);
            }
        }
        w
    }

    /// Ambient exterior derivative.
    pub fn d(&self) -> Self {
        let mut w = Self::zero();
        for s in 0..8usize {
            for i in 0..3 {
                let bit = 1usize << i;
                if s & bit != 0 {
                    continue;
                }
                let e = shuffle_sign(bit as u32, s as u32) as f64;
                let part = self.comps[s].partial(i).scale(C64::new(e, 0.0));
                w.comps[s | bit] = w.comps[s | bit].add(&part);
            }
        }
        w
    }

    /// Values seen by the tangent plane at a unit vector `n`: the function
    /// value, the projected 1-form `(1 − nnᵀ)(a, b, c)`, and the 2-form on an
    /// oriented tangent basis `(A, B, C)·n`.
    pub fn tangential(&self, n: [f64; 3]) -> Vec<C64> {
        let f = self.comps[0].eval(n);
        let one: Vec<C64> = (0..3).map(|i| self.comps[1 << i].eval(n)).collect();
        let dot: C64 = (0..3).map(|i| one[i] * n[i]).sum();
        let mut out = vec![f];
        out.extend((0..3).map(|i| one[i] - dot * n[i]));
        let a = self.comps[DYDZ].eval(n);
        let b = -self.comps[DXDZ].eval(n);
        let c = self.comps[DXDY].eval(n);
        out.push(a * n[0] + b * n[1] + c * n[2]);
        out
    }
}

/// `∫_{S²} ω` for a 2-form `A dy∧dz + B dz∧dx + C dx∧dy`, i.e.
/// `∫ (Ax + By + Cz) dA` with the outward orientation.
pub fn integrate2(w: &SphereFormAmbient) -> Result<C64> {
    for s in 0..8usize {
        if (s as u32).count_ones() != 2 && !w.comps[s].is_zero() {
            return Err(Error::NotTopDegree);
        }
    }
    let a = &w.comps[DYDZ];
    let b = w.comps[DXDZ].scale(C64::new(-1.0, 0.0));
    let c = &w.comps[DXDY];
    let integrand = a.mul(&SpherePoly::x()).add(&b.mul(&SpherePoly::y())).add(&c.mul(&SpherePoly::z()));
    Ok(integrand.integrate())
}

/// Square matrix of forms.
#[derive(Debug, Clone, PartialEq)]
pub struct FormMatrix {
    n: usize,
    e: Vec<SphereFormAmbient>,
}

impl FormMatrix {
    pub fn zeros(n: usize) -> Self {
        FormMatrix { n, e: vec![SphereFormAmbient::zero(); n * n] }
    }

    pub fn from_polys(n: usize, f: impl Fn(usize, usize) -> SpherePoly) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m.e[i * n + j] = SphereFormAmbient::function(f(i, j));
            }
        }
        m
    }

    pub fn identity(n: usize) -> Self {
        Self::from_polys(n, |i, j| if i == j { SpherePoly::constant(C64::new(1.0, 0.0)) } else { SpherePoly::zero() })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &SphereFormAmbient {
        &self.e[i * self.n + j]
    }

    pub fn mul(&self, other: &FormMatrix) -> FormMatrix {
        let n = self.n;
        let mut out = FormMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                let mut acc = SphereFormAmbient::zero();
                for l in 0..n {
                    acc = acc.add(&self.get(i, l).wedge(other.get(l, j)));
                }
                out.e[i * n + j] = acc;
            }
        }
        out
    }

    pub fn add(&self, other: &FormMatrix) -> FormMatrix {
        FormMatrix { n: self.n, e: self.e.iter().zip(&other.e).map(|(a, b)| a.add(b)).collect() }
    }

    pub fn sub(&self, other: &FormMatrix) -> FormMatrix {
        FormMatrix { n: self.n, e: self.e.iter().zip(&other.e).map(|(a, b)| a.sub(b)).collect() }
    }

    pub fn scale(&self, c: C64) -> FormMatrix {
        FormMatrix { n: self.n, e: self.e.iter().map(|a| a.scale(c)).collect() }
    }

    pub fn d(&self) -> FormMatrix {
        FormMatrix { n: self.n, e: self.e.iter().map(|a| a.d()).collect() }
    }

    pub fn trace(&self) -> SphereFormAmbient {
        (0..self.n).fold(SphereFormAmbient::zero(), |acc, i| acc.add(self.get(i, i)))
    }

    pub fn max_coeff(&self) -> f64 {
        self.e.iter().map(|a| a.max_coeff()).fold(0.0, f64::max)
    }

    /// Block-diagonal sum.
    pub fn direct_sum(&self, other: &FormMatrix) -> FormMatrix {
        let n = self.n + other.n;
        let mut out = FormMatrix::zeros(n);
        for i in 0..self.n {
            for j in 0..self.n {
                out.e[i * n + j] = self.get(i, j).clone();
            }
        }
        for i in 0..other.n {
            for j in 0..other.n {
                out.e[(self.n + i) * n + self.n + j] = other.get(i, j).clone();
            }
        }
        out
    }

    /// Entrywise `x ↦ Rx` substitution.
    pub fn compose_linear(&self, r: &[[f64; 3]; 3]) -> FormMatrix {
        let mut out = self.clone();
        for a in out.e.iter_mut() {
            for s in 0..8 {
                a.comps[s] = a.comps[s].compose_linear(r);
            }
        }
        out
    }

    /// Matrix of function values at a point; higher-degree parts are ignored.
    pub fn eval0(&self, p: [f64; 3]) -> Vec<Vec<C64>> {
        (0..self.n).map(|i| (0..self.n).map(|j| self.get(i, j).comps[0].eval(p)).collect()).collect()
    }

    /// `‖p² − p‖` in coefficient magnitude.
    pub fn idempotency_defect(&self) -> f64 {
        self.mul(self).sub(self).max_coeff()
    }
}

/// `p = (1 + xσ₁ + yσ₂ + zσ₃)/2`.
pub fn bott() -> FormMatrix {
    let h = C64::new(0.5, 0.0);
    let hi = C64::new(0.0, 0.5);
    let one = SpherePoly::constant(h);
    FormMatrix::from_polys(2, |i, j| match (i, j) {
        (0, 0) => one.add(&SpherePoly::z().scale(h)),
        (1, 1) => one.sub(&SpherePoly::z().scale(h)),
        (0, 1) => SpherePoly::x().scale(h).sub(&SpherePoly::y().scale(hi)),
        _ => SpherePoly::x().scale(h).add(&SpherePoly::y().scale(hi)),
    })
}

/// Projection with constant entries.
pub fn constant_projection(n: usize, rank: usize) -> FormMatrix {
    FormMatrix::from_polys(n, |i, j| {
        if i == j && i < rank {
            SpherePoly::constant(C64::new(1.0, 0.0))
        } else {
            SpherePoly::zero()
        }
    })
}

pub const PROJECTION_TOL: f64 = 1e-12;

fn check_projection(p: &FormMatrix) -> Result<()> {
    let defect = p.idempotency_defect();
    if defect > PROJECTION_TOL {
        return Err(Error::NotIdempotent(defect));
    }
    Ok(())
}

/// `tr((p dp dp)^m)` as a form.
pub fn chern_form(p: &FormMatrix, m: usize) -> FormMatrix {
    let dp = p.d();
    let k = p.mul(&dp).mul(&dp);
    let mut acc = FormMatrix::identity(p.n());
    for _ in 0..m {
        acc = acc.mul(&k);
    }
    acc
}

fn factorial(m: usize) -> f64 {
    (1..=m).map(|j| j as f64).product()
}

/// `(1/m!) ∫_{S²} tr((p dp dp)^m)`; only `m = 1` reaches the top degree.
pub fn chern_number(p: &FormMatrix, m: usize) -> Result<C64> {
    check_projection(p)?;
    if m != 1 {
        return Err(Error::Invalid(format!("m = {m}: only m = 1 pairs with the fundamental class of S²")));
    }
    Ok(integrate2(&chern_form(p, m).trace())? / factorial(m))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereCase {
    pub s: f64,
    pub t: f64,
    /// `τ` of the displayed exponential `exp(s²t² p dp dp) p`, summed with
    /// the supertrace signs.
    pub displayed: [f64; 2],
    /// `(st)^{2m}` times the pairing.
    pub predicted: [f64; 2],
    /// `τ(exp(−t s² ∇²))` for the Grassmann connection `∇ = p d`.
    pub heat: [f64; 2],
    /// `(−s²t)^m` times the pairing.
    pub heat_predicted: [f64; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SphereReport {
    pub m: usize,
    /// `⟨tr(p₀dp₀dp₀)^m − tr(p₁dp₁dp₁)^m, c⟩ / m!`.
    pub pairing: [f64; 2],
    pub cases: Vec<SphereCase>,
    pub max_residual_displayed: f64,
    pub max_residual_heat: f64,
}

fn pair(c: C64) -> [f64; 2] {
    [c.re, c.im]
}

/// `exp(a K) p` with `K = p dp dp`, truncated where forms vanish.
fn exp_times_p(p: &FormMatrix, a: C64) -> FormMatrix {
    let dp = p.d();
    let k = p.mul(&dp).mul(&dp);
    let mut term = p.clone();
    let mut acc = p.clone();
    for j in 1..=2 {
        term = k.mul(&term).scale(a / j as f64);
        acc = acc.add(&term);
    }
    acc
}

/// `τ(x ⊕ y) = ∫ tr(x) − ∫ tr(y)` on the top-degree part.
fn super_pair(x: &FormMatrix, y: &FormMatrix) -> Result<C64> {
    Ok(integrate2(&x.trace().degree_part(2))? - integrate2(&y.trace().degree_part(2))?)
}

/// Reproduces the closing Chern–Weyl computation for a pair of projections
/// at each `(s, t)`.
pub fn verify_sphere_example(p0: &FormMatrix, p1: &FormMatrix, samples: &[(f64, f64)]) -> Result<SphereReport> {
    check_projection(p0)?;
    check_projection(p1)?;
    let m = 1;
    let pairing = chern_number(p0, m)? - chern_number(p1, m)?;
    let mut cases = Vec::new();
    let (mut rd, mut rh) = (0.0f64, 0.0f64);
    for &(s, t) in samples {
        let a = C64::new(s * s * t * t, 0.0);
        let displayed = super_pair(&exp_times_p(p0, a), &exp_times_p(p1, a))?;
        let predicted = pairing * (s * t).powi(2 * m as i32);
        let b = C64::new(-s * s * t, 0.0);
        let heat = super_pair(&exp_times_p(p0, b), &exp_times_p(p1, b))?;
        let heat_predicted = pairing * (-s * s * t).powi(m as i32);
        rd = rd.max((displayed - predicted).norm());
        rh = rh.max((heat - heat_predicted).norm());
        cases.push(SphereCase {
            s,
            t,
            displayed: pair(displayed),
            predicted: pair(predicted),
            heat: pair(heat),
            heat_predicted: pair(heat_predicted),
        });
    }
    Ok(SphereReport { m, pairing: pair(pairing), cases, max_residual_displayed: rd, max_residual_heat: rh })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(SpherePoly::monomial([0, 0, 2], c(1.0)), SpherePoly::constant(c(1.0)).sub(&SpherePoly::monomial([2, 0, 0], c(1.0))).sub(&SpherePoly::monomial([0, 2, 0], c(1.0))));
        let r2 = SpherePoly::monomial([2, 0, 0], c(1.0))
            .add(&SpherePoly::monomial([0, 2, 0], c(1.0)))
            .add(&SpherePoly::monomial([0, 0, 2], c(1.0)));
        assert_eq!(r2, SpherePoly::constant(c(1.0)));
        let z3 = SpherePoly::monomial([0, 0, 3], c(1.0));
        let want = SpherePoly::z().sub(&SpherePoly::monomial([2, 0, 1], c(1.0))).sub(&SpherePoly::monomial([0, 2, 1], c(1.0)));
        assert_eq!(z3, want);
    }

    #[test]
    fn area_and_quartic_moment() {
        let w = SphereFormAmbient::two_form(SpherePoly::x(), SpherePoly::y(), SpherePoly::z());
        assert_eq!(integrate2(&w).unwrap(), c(4.0 * PI));
        let w = SphereFormAmbient::two_form(SpherePoly::monomial([3, 0, 0], c(1.0)), SpherePoly::zero(), SpherePoly::zero());
        assert!((integrate2(&w).unwrap() - c(4.0 * PI / 5.0)).norm() < 1e-15);
        let odd = SphereFormAmbient::two_form(SpherePoly::monomial([0, 0, 2], c(1.0)), SpherePoly::zero(), SpherePoly::zero());
        assert_eq!(integrate2(&odd).unwrap(), c(0.0));
    }

    #[test]
    fn bott_is_a_projection() {
        let p = bott();
        assert_eq!(p.idempotency_defect(), 0.0);
        assert_eq!(p.trace(), SphereFormAmbient::function(SpherePoly::constant(c(1.0))));
        let at = p.eval0([0.0, 0.0, 1.0]);
        assert_eq!(at, vec![vec![c(1.0), c(0.0)], vec![c(0.0), c(0.0)]]);
    }

    #[test]
    fn non_top_forms_are_rejected() {
        let w = SphereFormAmbient::function(SpherePoly::x());
        assert!(matches!(integrate2(&w), Err(Error::NotTopDegree)));
    }
}

//! The matrix-model cycle `(M_N ⊗ Λ_k, ad_η, Str∘top)`, Connes' X-extension,
//! the cyclic cocycles φ and ψ, and the pairing with idempotents of the
//! crossed product by Z2.

use rand::Rng;

use crate::error::{Error, Result};
use crate::random::{case_rng, random_matrix, zero_blocks};
use crate::super_algebra::{model_mul, ModelElement, Parity, SuperMatrix};
use crate::{Mat, C64};

/// Tolerance used when verifying cycle invariants at construction.
pub const BUILD_TOL: f64 = 1e-10;
/// Maximum `‖e² − e‖` accepted by [`k_pair`].
pub const IDEMPOTENT_TOL: f64 = 1e-8;

/// A finite summable cycle realized on `M_N ⊗ Λ_k`: connection `∇ = ad_η`
/// with `η = Σ θ_i B_i`, curvature `ω = η²`, trace the supertrace of the top
/// θ-component.
#[derive(Debug, Clone)]
pub struct CycleDescriptor {
    p: usize,
    q: usize,
    k: usize,
    generators: Vec<SuperMatrix>,
    eta: ModelElement,
    omega: ModelElement,
    normalization: f64,
}

/// Builds the matrix-model cycle and checks its invariants on random inputs
/// drawn from `seed`.
pub fn matrix_model_build(p: usize, q: usize, k: usize, generators: Vec<SuperMatrix>, seed: u64) -> Result<CycleDescriptor> {
    if !k.is_multiple_of(2) {
        return Err(Error::Invariant(format!("k = {k} must be even for an even trace")));
    }
    if generators.len() != k {
        return Err(Error::Invariant(format!("expected {k} generators, got {}", generators.len())));
    }
    if k > 8 {
        return Err(Error::Invariant("at most 8 exterior generators are supported".into()));
    }
    for (i, b) in generators.iter().enumerate() {
        if b.p() != p || b.q() != q {
            return Err(Error::Dimension(format!("generator {i} has the wrong grading")));
        }
        if b.odd_part().max_abs() > 0.0 {
            return Err(Error::Invariant(format!("generator {i} is not even")));
        }
    }
    let mut eta = ModelElement::zero(p, q, k);
    for (i, b) in generators.iter().enumerate() {
        eta = &eta + &ModelElement::monomial(1 << i, b, k);
    }
    let omega = &eta * &eta;
    let cycle = CycleDescriptor { p, q, k, generators, eta, omega, normalization: 1.0 };
    cycle.verify_invariants(seed, 8)?;
    Ok(cycle)
}

impl CycleDescriptor {
    /// Random generators `B_i` with Gaussian entries.
    pub fn random(p: usize, q: usize, k: usize, seed: u64) -> Result<Self> {
        let mut rng = case_rng(seed, "matrix-model-generators");
        let generators = (0..k)
            .map(|_| {
                let mut m = random_matrix(&mut rng, p + q, p + q);
                zero_blocks(&mut m, p, false);
                SuperMatrix::new(p, q, m).expect("shape")
            })
            .collect();
        matrix_model_build(p, q, k, generators, seed)
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn k(&self) -> usize {
        self.k
    }
    pub fn dim(&self) -> usize {
        self.p + self.q
    }
    /// Summability order: `τ` vanishes on `F_{-k-1}`.
    pub fn n_max(&self) -> usize {
        self.k
    }
    pub fn generators(&self) -> &[SuperMatrix] {
        &self.generators
    }
    pub fn eta(&self) -> &ModelElement {
        &self.eta
    }
    pub fn omega(&self) -> &ModelElement {
        &self.omega
    }
    /// Global constant multiplying [`k_pair`]; defaults to 1.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }
    pub fn with_normalization(mut self, c: f64) -> Self {
        self.normalization = c;
        self
    }

    pub fn unit(&self) -> ModelElement {
        ModelElement::identity(self.p, self.q, self.k)
    }
    pub fn zero(&self) -> ModelElement {
        ModelElement::zero(self.p, self.q, self.k)
    }

    /// Constant lift `a ↦ a ⊗ 1` of `A = Ω/F_{-1}`.
    pub fn lift(&self, a: &SuperMatrix) -> ModelElement {
        ModelElement::constant(a, self.k)
    }

    pub fn alpha(&self, a: &ModelElement) -> ModelElement {
        a.alpha()
    }

    /// `∇a = ηa − α(a)η`, the graded commutator with η.
    pub fn nabla(&self, a: &ModelElement) -> ModelElement {
        &(&self.eta * a) - &(&a.alpha() * &self.eta)
    }

    pub fn tau(&self, a: &ModelElement) -> C64 {
        a.top_supertrace()
    }

    fn check_shape(&self, a: &ModelElement) -> Result<()> {
        if a.p() != self.p || a.q() != self.q || a.k() != self.k {
            return Err(Error::Dimension("element does not belong to this cycle".into()));
        }
        Ok(())
    }

    /// Random element with every θ-component populated.
    pub fn random_element<R: Rng>(&self, rng: &mut R) -> ModelElement {
        let mut comps = std::collections::BTreeMap::new();
        for s in 0..(1u32 << self.k) {
            comps.insert(s, random_matrix(rng, self.dim(), self.dim()));
        }
        ModelElement::from_components(self.p, self.q, self.k, comps)
    }

    /// Checks the connection, closedness and graded-trace properties on
    /// `samples` random elements.
    pub fn verify_invariants(&self, seed: u64, samples: usize) -> Result<()> {
        let mut rng = case_rng(seed, "cycle-invariants");
        let scale = 1.0 + self.eta.max_abs().powi(2);
        for _ in 0..samples {
            let a = self.random_element(&mut rng);
            let b = self.random_element(&mut rng);
            let lhs = self.nabla(&self.nabla(&a));
            let rhs = &(&self.omega * &a) - &(&a * &self.omega);
            let defect = (&lhs - &rhs).max_abs();
            if defect > BUILD_TOL * scale * (1.0 + a.max_abs()) * 10.0 {
                return Err(Error::Invariant(format!("∇² ≠ ad ω (defect {defect:.3e})")));
            }
            let closed = self.tau(&self.nabla(&a)).norm();
            if closed > BUILD_TOL * scale * (1.0 + a.max_abs()) * 10.0 {
                return Err(Error::Invariant(format!("τ∘∇ ≠ 0 (defect {closed:.3e})")));
            }
            for pa in [Parity::Even, Parity::Odd] {
                for pb in [Parity::Even, Parity::Odd] {
                    let ah = a.parity_part(pa);
                    let bh = b.parity_part(pb);
                    let sign = if pa == Parity::Odd && pb == Parity::Odd { -1.0 } else { 1.0 };
                    let d = self.tau(&(&ah * &bh)) - self.tau(&(&bh * &ah)) * sign;
                    if d.norm() > BUILD_TOL * (1.0 + a.max_abs() * b.max_abs()) * 100.0 {
                        return Err(Error::Invariant(format!("τ is not a graded trace (defect {:.3e})", d.norm())));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `a00 + a01 X + X a10 + X a11 X` in the X-extension.
#[derive(Debug, Clone, PartialEq)]
pub struct XExtElement {
    pub a00: ModelElement,
    pub a01: ModelElement,
    pub a10: ModelElement,
    pub a11: ModelElement,
}

impl XExtElement {
    pub fn new(a00: ModelElement, a01: ModelElement, a10: ModelElement, a11: ModelElement) -> Self {
        XExtElement { a00, a01, a10, a11 }
    }

    /// Embeds a carrier element as `(a, 0, 0, 0)`.
    pub fn from_carrier(cycle: &CycleDescriptor, a: ModelElement) -> Self {
        XExtElement { a00: a, a01: cycle.zero(), a10: cycle.zero(), a11: cycle.zero() }
    }

    pub fn zero(cycle: &CycleDescriptor) -> Self {
        Self::from_carrier(cycle, cycle.zero())
    }

    pub fn add(&self, other: &XExtElement) -> XExtElement {
        XExtElement {
            a00: &self.a00 + &other.a00,
            a01: &self.a01 + &other.a01,
            a10: &self.a10 + &other.a10,
            a11: &self.a11 + &other.a11,
        }
    }

    pub fn scale(&self, c: C64) -> XExtElement {
        XExtElement {
            a00: self.a00.scale(c),
            a01: self.a01.scale(c),
            a10: self.a10.scale(c),
            a11: self.a11.scale(c),
        }
    }

    /// Total grading, with X odd.
    pub fn alpha(&self) -> XExtElement {
        XExtElement {
            a00: self.a00.alpha(),
            a01: self.a01.alpha().scale_re(-1.0),
            a10: self.a10.alpha().scale_re(-1.0),
            a11: self.a11.alpha(),
        }
    }

    pub fn parity_part(&self, parity: Parity) -> XExtElement {
        let other = if parity == Parity::Even { Parity::Odd } else { Parity::Even };
        XExtElement {
            a00: self.a00.parity_part(parity),
            a01: self.a01.parity_part(other),
            a10: self.a10.parity_part(other),
            a11: self.a11.parity_part(parity),
        }
    }

    pub fn max_abs(&self) -> f64 {
        [&self.a00, &self.a01, &self.a10, &self.a11]
            .iter()
            .map(|a| a.max_abs())
            .fold(0.0, f64::max)
    }

    fn check(&self, cycle: &CycleDescriptor) -> Result<()> {
        for a in [&self.a00, &self.a01, &self.a10, &self.a11] {
            cycle.check_shape(a)?;
        }
        Ok(())
    }
}

/// Product with the rules `(aX)(Xb) = aωb` and `(aX)b = a(Xb) = 0`.
pub fn xext_mul(cycle: &CycleDescriptor, x: &XExtElement, y: &XExtElement) -> Result<XExtElement> {
    x.check(cycle)?;
    y.check(cycle)?;
    let w = &cycle.omega;
    let ent = |xi0: &ModelElement, xi1: &ModelElement, y0j: &ModelElement, y1j: &ModelElement| -> Result<ModelElement> {
        let first = model_mul(xi0, y0j)?;
        let second = model_mul(&model_mul(xi1, w)?, y1j)?;
        first.try_add(&second)
    };
    Ok(XExtElement {
        a00: ent(&x.a00, &x.a01, &y.a00, &y.a10)?,
        a01: ent(&x.a00, &x.a01, &y.a01, &y.a11)?,
        a10: ent(&x.a10, &x.a11, &y.a00, &y.a10)?,
        a11: ent(&x.a10, &x.a11, &y.a01, &y.a11)?,
    })
}

/// The differential of the X-extension, `da = ∇a + Xa + (−1)^{∂a} aX`,
/// `dX = 0`, extended by the graded Leibniz rule. Parity signs are applied
/// through α, so non-homogeneous components are handled termwise.
pub fn xext_d(cycle: &CycleDescriptor, x: &XExtElement) -> Result<XExtElement> {
    x.check(cycle)?;
    let w = &cycle.omega;
    let nb = |a: &ModelElement| cycle.nabla(a);
    let (a00, a01, a10, a11) = (&x.a00, &x.a01, &x.a10, &x.a11);
    let r00 = &(&nb(a00) + &(&a01.alpha() * w)) - &(w * a10);
    let r01 = &(&a00.alpha() + &nb(a01)) - &(w * a11);
    let r10 = &(a00 - &nb(a10)) - &(&a11.alpha() * w);
    let r11 = &(a01 - &a10.alpha()) - &nb(a11);
    Ok(XExtElement { a00: r00, a01: r01, a10: r10, a11: r11 })
}

/// `τ̃(x) = τ(a00) − (−1)^{∂a11} τ(ω a11)`. The trace is even, so only the even
/// part of `a11` contributes and the sign is `+1` there.
pub fn xext_trace(cycle: &CycleDescriptor, x: &XExtElement) -> C64 {
    let a11_even = x.a11.parity_part(Parity::Even);
    cycle.tau(&x.a00) - cycle.tau(&(&cycle.omega * &a11_even))
}

/// `ρ(a0) dρ(a1) … dρ(an)` in the X-extension.
pub fn xext_word(cycle: &CycleDescriptor, lifted: &[ModelElement]) -> Result<XExtElement> {
    let (first, rest) = lifted
        .split_first()
        .ok_or_else(|| Error::Invalid("empty word".into()))?;
    let mut x = XExtElement::from_carrier(cycle, first.clone());
    for a in rest {
        let da = xext_d(cycle, &XExtElement::from_carrier(cycle, a.clone()))?;
        x = xext_mul(cycle, &x, &da)?;
    }
    Ok(x)
}

/// `φ(a0,…,an) = (−1)^μ τ̃(ρ(a0) dρ(a1) … dρ(an))` with the constant lift.
pub fn cocycle_phi_tau(cycle: &CycleDescriptor, a: &[SuperMatrix]) -> Result<C64> {
    cocycle_phi_tau_lifted(cycle, a, &|m: &SuperMatrix| cycle.lift(m))
}

/// As [`cocycle_phi_tau`] with an arbitrary lifting `A → Ω`. The sign
/// `(−1)^μ`, `μ = Σ (n−j) ∂a_j`, is applied by twisting `a_j` with `α^{n−j}`,
/// which is its multilinear extension to non-homogeneous inputs.
pub fn cocycle_phi_tau_lifted(
    cycle: &CycleDescriptor,
    a: &[SuperMatrix],
    lift: &dyn Fn(&SuperMatrix) -> ModelElement,
) -> Result<C64> {
    if a.is_empty() {
        return Err(Error::Invalid("cocycle needs at least one argument".into()));
    }
    let n = a.len() - 1;
    if n > cycle.n_max() {
        return Err(Error::DegreeTooHigh { n, n_max: cycle.n_max() });
    }
    let lifted: Vec<ModelElement> = a
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let tw = if (n - j) % 2 == 1 { m.alpha() } else { m.clone() };
            lift(&tw)
        })
        .collect();
    Ok(xext_trace(cycle, &xext_word(cycle, &lifted)?))
}

/// Element `x + y v` of the crossed product `A ⋊ Z2`.
#[derive(Debug, Clone, PartialEq)]
pub struct CrossedElement {
    pub x: SuperMatrix,
    pub y: SuperMatrix,
}

impl CrossedElement {
    pub fn new(x: SuperMatrix, y: SuperMatrix) -> Self {
        CrossedElement { x, y }
    }

    /// `a v^i`.
    pub fn monomial(a: SuperMatrix, i: u8) -> Self {
        let z = SuperMatrix::zeros(a.p(), a.q());
        if i.is_multiple_of(2) {
            CrossedElement { x: a, y: z }
        } else {
            CrossedElement { x: z, y: a }
        }
    }

    /// `(x + yv)(x' + y'v) = xx' + yα(y') + (xy' + yα(x'))v`.
    pub fn mul(&self, other: &CrossedElement) -> CrossedElement {
        let x = &(&self.x * &other.x) + &(&self.y * &other.y.alpha());
        let y = &(&self.x * &other.y) + &(&self.y * &other.x.alpha());
        CrossedElement { x, y }
    }

    pub fn sub(&self, other: &CrossedElement) -> CrossedElement {
        CrossedElement { x: &self.x - &other.x, y: &self.y - &other.y }
    }

    pub fn max_abs(&self) -> f64 {
        self.x.max_abs().max(self.y.max_abs())
    }

    pub fn idempotency_residual(&self) -> f64 {
        self.mul(self).sub(self).max_abs()
    }

    /// Image `x + y·v_matrix` in `M_N` when the grading is inner.
    pub fn to_matrix(&self) -> SuperMatrix {
        let v = SuperMatrix::grading(self.x.p(), self.x.q());
        &self.x + &(&self.y * &v)
    }

    /// Conjugation `u e u^{-1}` by an even invertible `u`.
    pub fn conjugate(&self, u: &SuperMatrix, u_inv: &SuperMatrix) -> CrossedElement {
        CrossedElement {
            x: &(u * &self.x) * u_inv,
            y: &(u * &self.y) * &u_inv.alpha(),
        }
    }
}

/// `ψ(a0 v^{i0}, …, an v^{in})` on monomials: `(−1)^ν φ(a0,…,an)/2` when
/// `Σ∂a_j` is even and `Σ i_j` is odd, and 0 otherwise. Non-homogeneous `a_j`
/// are split into homogeneous parts.
pub fn cocycle_psi(cycle: &CycleDescriptor, b: &[(SuperMatrix, u8)]) -> Result<C64> {
    let elems: Vec<CrossedElement> = b.iter().map(|(a, i)| CrossedElement::monomial(a.clone(), *i)).collect();
    Ok(two_psi(cycle, &elems)? * 0.5)
}

/// `2ψ(b0,…,bn)` for general crossed-product elements by multilinear
/// expansion. Moving every `v` to the right turns `a0 v^{i0} a1 v^{i1} …` into
/// `a0 α^{i0}(a1) α^{i0+i1}(a2) …`, which produces the sign `(−1)^ν`.
pub fn two_psi(cycle: &CycleDescriptor, b: &[CrossedElement]) -> Result<C64> {
    if b.is_empty() {
        return Err(Error::Invalid("ψ needs at least one argument".into()));
    }
    let n = b.len() - 1;
    if n > cycle.n_max() {
        return Err(Error::DegreeTooHigh { n, n_max: cycle.n_max() });
    }
    let slots = b.len();
    let mut total = C64::new(0.0, 0.0);
    for imask in 0u32..(1 << slots) {
        if imask.count_ones() % 2 == 0 {
            continue;
        }
        // Pick x_j or y_j and apply the accumulated α-twist.
        let mut picked = Vec::with_capacity(slots);
        let mut shift = 0u32;
        let mut vanishes = false;
        for (j, e) in b.iter().enumerate() {
            let ij = (imask >> j) & 1;
            let a = if ij == 1 { &e.y } else { &e.x };
            if a.max_abs() == 0.0 {
                vanishes = true;
                break;
            }
            picked.push(if shift % 2 == 1 { a.alpha() } else { a.clone() });
            shift += ij;
        }
        if vanishes {
            continue;
        }
        // Keep only homogeneous combinations of even total parity.
        for pmask in 0u32..(1 << slots) {
            if pmask.count_ones() % 2 == 1 {
                continue;
            }
            let parts: Vec<SuperMatrix> = picked
                .iter()
                .enumerate()
                .map(|(j, a)| if (pmask >> j) & 1 == 1 { a.odd_part() } else { a.even_part() })
                .collect();
            if parts.iter().any(|a| a.max_abs() == 0.0) {
                continue;
            }
            total += cocycle_phi_tau(cycle, &parts)?;
        }
    }
    Ok(total)
}

/// Pairing `(c/m!)·2ψ(e,…,e)` over `2m+1` slots, with `c` the cycle's
/// normalization constant.
pub fn k_pair(cycle: &CycleDescriptor, e: &CrossedElement, m: usize) -> Result<C64> {
    let residual = e.idempotency_residual();
    if residual > IDEMPOTENT_TOL {
        return Err(Error::NotIdempotent(residual));
    }
    if 2 * m > cycle.n_max() {
        return Err(Error::DegreeTooHigh { n: 2 * m, n_max: cycle.n_max() });
    }
    let slots: Vec<CrossedElement> = (0..=2 * m).map(|_| e.clone()).collect();
    let fact: f64 = (1..=m).map(|j| j as f64).product();
    Ok(two_psi(cycle, &slots)? * (cycle.normalization / fact))
}

/// Pairing of a formal difference `[e] − [f]`.
pub fn k_pair_difference(cycle: &CycleDescriptor, e: &CrossedElement, f: &CrossedElement, m: usize) -> Result<C64> {
    Ok(k_pair(cycle, e, m)? - k_pair(cycle, f, m)?)
}

/// Block-diagonal direct sum of two cycles' worth of matrices, used for
/// additivity checks: `(a ⊕ b)` with gradings added blockwise.
pub fn direct_sum(a: &SuperMatrix, b: &SuperMatrix) -> SuperMatrix {
    let (pa, qa, pb, qb) = (a.p(), a.q(), b.p(), b.q());
    let p = pa + pb;
    let q = qa + qb;
    let n = p + q;
    // Reorder so that even indices come first: [a_even, b_even, a_odd, b_odd].
    let index_a = |i: usize| if i < pa { i } else { pa + pb + (i - pa) };
    let index_b = |i: usize| if i < pb { pa + i } else { pa + pb + qa + (i - pb) };
    let mut m = Mat::zeros(n, n);
    for i in 0..pa + qa {
        for j in 0..pa + qa {
            m[(index_a(i), index_a(j))] = a.matrix()[(i, j)];
        }
    }
    for i in 0..pb + qb {
        for j in 0..pb + qb {
            m[(index_b(i), index_b(j))] = b.matrix()[(i, j)];
        }
    }
    SuperMatrix::new(p, q, m).expect("direct sum shape")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{even_matrix, seeded};

    fn model(k: usize, seed: u64) -> CycleDescriptor {
        CycleDescriptor::random(2, 2, k, seed).unwrap()
    }

    #[test]
    fn zero_generators_give_zero_curvature() {
        let gens = vec![SuperMatrix::zeros(1, 1), SuperMatrix::zeros(1, 1)];
        let c = matrix_model_build(1, 1, 2, gens, 0).unwrap();
        assert_eq!(c.omega().max_abs(), 0.0);
        let mut rng = seeded(4);
        let a = SuperMatrix::new(1, 1, random_matrix(&mut rng, 2, 2)).unwrap();
        let b = SuperMatrix::new(1, 1, random_matrix(&mut rng, 2, 2)).unwrap();
        assert_eq!(cocycle_phi_tau(&c, &[a.clone(), b.clone()]).unwrap().norm(), 0.0);
        assert_eq!(cocycle_phi_tau(&c, &[a, b.clone(), b]).unwrap().norm(), 0.0);
    }

    #[test]
    fn odd_generator_is_rejected() {
        let mut m = Mat::zeros(2, 2);
        m[(0, 1)] = C64::new(1.0, 0.0);
        let gens = vec![SuperMatrix::new(1, 1, m).unwrap(), SuperMatrix::zeros(1, 1)];
        assert!(matches!(matrix_model_build(1, 1, 2, gens, 0), Err(Error::Invariant(_))));
    }

    #[test]
    fn odd_k_is_rejected() {
        assert!(CycleDescriptor::random(1, 1, 1, 0).is_err());
    }

    #[test]
    fn product_table() {
        let c = model(2, 5);
        let mut rng = seeded(6);
        let a = c.random_element(&mut rng);
        let b = c.random_element(&mut rng);
        let z = c.zero();
        let ax = XExtElement::new(z.clone(), a.clone(), z.clone(), z.clone());
        let xb = XExtElement::new(z.clone(), z.clone(), b.clone(), z.clone());
        let bx = XExtElement::new(z.clone(), b.clone(), z.clone(), z.clone());
        let r = xext_mul(&c, &ax, &xb).unwrap();
        let expect = &(&a * c.omega()) * &b;
        assert!((&r.a00 - &expect).max_abs() < 1e-12);
        assert_eq!(r.a01.max_abs() + r.a10.max_abs() + r.a11.max_abs(), 0.0);
        assert_eq!(xext_mul(&c, &ax, &bx).unwrap().max_abs(), 0.0);
    }

    #[test]
    fn differential_of_even_element_and_unit() {
        let c = model(2, 7);
        let mut rng = seeded(8);
        let a = c.random_element(&mut rng).parity_part(Parity::Even);
        let d = xext_d(&c, &XExtElement::from_carrier(&c, a.clone())).unwrap();
        assert!((&d.a00 - &c.nabla(&a)).max_abs() < 1e-13);
        assert!((&d.a01 - &a).max_abs() < 1e-13);
        assert!((&d.a10 - &a).max_abs() < 1e-13);
        assert_eq!(d.a11.max_abs(), 0.0);
        let du = xext_d(&c, &XExtElement::from_carrier(&c, c.unit())).unwrap();
        assert!(du.a00.max_abs() < 1e-14);
        assert!((&du.a01 - &c.unit()).max_abs() < 1e-14);
        assert!((&du.a10 - &c.unit()).max_abs() < 1e-14);
    }

    #[test]
    fn trace_display_cases() {
        let c = model(2, 9);
        let mut rng = seeded(10);
        let a = c.random_element(&mut rng).parity_part(Parity::Even);
        let z = c.zero();
        let only01 = XExtElement::new(z.clone(), a.clone(), z.clone(), z.clone());
        assert_eq!(xext_trace(&c, &only01).norm(), 0.0);
        let only11 = XExtElement::new(z.clone(), z.clone(), z.clone(), a.clone());
        let want = -c.tau(&(c.omega() * &a));
        assert!((xext_trace(&c, &only11) - want).norm() < 1e-12);
    }

    #[test]
    fn phi_of_degree_zero_is_supertrace_of_top() {
        // With k = 0 the trace is the plain supertrace.
        let c = matrix_model_build(2, 1, 0, vec![], 0).unwrap();
        let mut rng = seeded(11);
        let a = SuperMatrix::new(2, 1, random_matrix(&mut rng, 3, 3)).unwrap();
        assert!((cocycle_phi_tau(&c, std::slice::from_ref(&a)).unwrap() - a.supertrace()).norm() < 1e-14);
    }

    #[test]
    fn phi_of_units_vanishes() {
        let c = model(2, 12);
        let one = SuperMatrix::identity(2, 2);
        let v = cocycle_phi_tau(&c, &[one.clone(), one.clone(), one]).unwrap();
        assert!(v.norm() < 1e-12);
    }

    #[test]
    fn degree_above_summability_is_rejected() {
        let c = model(2, 13);
        let one = SuperMatrix::identity(2, 2);
        let args = vec![one; 4];
        assert!(matches!(cocycle_phi_tau(&c, &args), Err(Error::DegreeTooHigh { .. })));
    }

    #[test]
    fn psi_display_cases() {
        let c = matrix_model_build(2, 1, 0, vec![], 0).unwrap();
        let mut rng = seeded(14);
        let a = SuperMatrix::new(2, 1, even_matrix(&mut rng, 2, 1)).unwrap();
        let half = cocycle_psi(&c, &[(a.clone(), 1)]).unwrap();
        assert!((half - a.supertrace() * 0.5).norm() < 1e-14);
        assert_eq!(cocycle_psi(&c, &[(a.clone(), 0)]).unwrap().norm(), 0.0);
        let odd = SuperMatrix::new(2, 1, crate::random::odd_matrix(&mut rng, 2, 1)).unwrap();
        assert_eq!(cocycle_psi(&c, &[(odd, 1)]).unwrap().norm(), 0.0);
    }

    #[test]
    fn pairing_of_reference_projection() {
        let c = matrix_model_build(2, 3, 0, vec![], 0).unwrap();
        let half = C64::new(0.5, 0.0);
        let e0 = CrossedElement::new(SuperMatrix::identity(2, 3).scale(half), SuperMatrix::identity(2, 3).scale(half));
        let v = k_pair(&c, &e0, 0).unwrap();
        let tau_one = SuperMatrix::identity(2, 3).supertrace();
        assert!((v - tau_one * 0.5).norm() < 1e-14);
    }

    #[test]
    fn non_idempotent_is_rejected() {
        let c = matrix_model_build(1, 1, 0, vec![], 0).unwrap();
        let e = CrossedElement::new(SuperMatrix::identity(1, 1).scale(C64::new(2.0, 0.0)), SuperMatrix::zeros(1, 1));
        assert!(matches!(k_pair(&c, &e, 0), Err(Error::NotIdempotent(_))));
    }
}

//! Z2-graded matrices, the graded tensor product `M_N ⊗ Λ_k`, supertraces and
//! Hermitian functional calculus.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::linalg::{check_hermitian, jacobi_eigh};
use crate::{max_abs, Mat, C64};

/// Default relative tolerance for the Hermitian check.
pub const HERMITIAN_REL_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_bit(b: u32) -> Self {
        if b.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
    pub fn bit(self) -> u32 {
        match self {
            Parity::Even => 0,
            Parity::Odd => 1,
        }
    }
    /// `(-1)^parity`.
    pub fn sign(self) -> f64 {
        match self {
            Parity::Even => 1.0,
            Parity::Odd => -1.0,
        }
    }
}

/// Square complex matrix on `C^p ⊕ C^q` graded by `v = diag(1_p, -1_q)`.
#[derive(Debug, Clone, PartialEq)]
pub struct SuperMatrix {
    p: usize,
    q: usize,
    m: Mat,
}

impl SuperMatrix {
    pub fn new(p: usize, q: usize, m: Mat) -> Result<Self> {
        if m.nrows() != p + q || m.ncols() != p + q {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, grading ({p}|{q}) needs {}x{}",
                m.nrows(),
                m.ncols(),
                p + q,
                p + q
            )));
        }
        Ok(SuperMatrix { p, q, m })
    }

    pub fn zeros(p: usize, q: usize) -> Self {
        SuperMatrix { p, q, m: Mat::zeros(p + q, p + q) }
    }

    pub fn identity(p: usize, q: usize) -> Self {
        SuperMatrix { p, q, m: Mat::identity(p + q, p + q) }
    }

    /// The grading operator `v`.
    pub fn grading(p: usize, q: usize) -> Self {
        let mut m = Mat::identity(p + q, p + q);
        for i in p..p + q {
            m[(i, i)] = C64::new(-1.0, 0.0);
        }
        SuperMatrix { p, q, m }
    }

    pub fn p(&self) -> usize {
        self.p
    }
    pub fn q(&self) -> usize {
        self.q
    }
    pub fn dim(&self) -> usize {
        self.p + self.q
    }
    pub fn matrix(&self) -> &Mat {
        &self.m
    }
    pub fn into_matrix(self) -> Mat {
        self.m
    }

    fn same_shape(&self, other: &SuperMatrix) -> Result<()> {
        if self.p != other.p || self.q != other.q {
            return Err(Error::Dimension(format!(
                "gradings ({}|{}) and ({}|{}) differ",
                self.p, self.q, other.p, other.q
            )));
        }
        Ok(())
    }

    /// Replaces the matrix keeping the grading.
    pub fn with_matrix(&self, m: Mat) -> Result<Self> {
        SuperMatrix::new(self.p, self.q, m)
    }

    pub fn supertrace(&self) -> C64 {
        supertrace_of(&self.m, self.p)
    }

    /// Grading automorphism `m ↦ v m v`.
    pub fn alpha(&self) -> Self {
        SuperMatrix { p: self.p, q: self.q, m: alpha_matrix(&self.m, self.p) }
    }

    pub fn even_part(&self) -> Self {
        SuperMatrix { p: self.p, q: self.q, m: block_part(&self.m, self.p, Parity::Even) }
    }

    pub fn odd_part(&self) -> Self {
        SuperMatrix { p: self.p, q: self.q, m: block_part(&self.m, self.p, Parity::Odd) }
    }

    /// Parity if the matrix is homogeneous up to `tol` (entrywise).
    pub fn parity(&self, tol: f64) -> Option<Parity> {
        let odd = max_abs(&block_part(&self.m, self.p, Parity::Odd));
        let even = max_abs(&block_part(&self.m, self.p, Parity::Even));
        if odd <= tol {
            Some(Parity::Even)
        } else if even <= tol {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn adjoint(&self) -> Self {
        SuperMatrix { p: self.p, q: self.q, m: self.m.adjoint() }
    }

    pub fn is_hermitian(&self, rel_tol: f64) -> bool {
        check_hermitian(&self.m, rel_tol).is_ok()
    }

    pub fn try_mul(&self, other: &SuperMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(SuperMatrix { p: self.p, q: self.q, m: &self.m * &other.m })
    }

    pub fn try_add(&self, other: &SuperMatrix) -> Result<Self> {
        self.same_shape(other)?;
        Ok(SuperMatrix { p: self.p, q: self.q, m: &self.m + &other.m })
    }

    pub fn scale(&self, c: C64) -> Self {
        SuperMatrix { p: self.p, q: self.q, m: &self.m * c }
    }

    /// Graded commutator `ab − (−1)^{∂a∂b} ba` of homogeneous elements.
    pub fn graded_commutator(&self, pa: Parity, other: &SuperMatrix, pb: Parity) -> Result<Self> {
        self.same_shape(other)?;
        let sign = if pa == Parity::Odd && pb == Parity::Odd { -1.0 } else { 1.0 };
        let m = &self.m * &other.m - (&other.m * &self.m) * C64::new(sign, 0.0);
        Ok(SuperMatrix { p: self.p, q: self.q, m })
    }

    pub fn max_abs(&self) -> f64 {
        max_abs(&self.m)
    }
}

impl Add for &SuperMatrix {
    type Output = SuperMatrix;
    fn add(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.try_add(rhs).expect("SuperMatrix addition with mismatched gradings")
    }
}

impl Sub for &SuperMatrix {
    type Output = SuperMatrix;
    fn sub(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.try_add(&rhs.scale(C64::new(-1.0, 0.0)))
            .expect("SuperMatrix subtraction with mismatched gradings")
    }
}

impl Mul for &SuperMatrix {
    type Output = SuperMatrix;
    fn mul(self, rhs: &SuperMatrix) -> SuperMatrix {
        self.try_mul(rhs).expect("SuperMatrix product with mismatched gradings")
    }
}

/// Trace of the even block minus trace of the odd block.
pub fn supertrace(m: &SuperMatrix) -> C64 {
    m.supertrace()
}

pub(crate) fn supertrace_of(m: &Mat, p: usize) -> C64 {
    let mut s = C64::new(0.0, 0.0);
    for i in 0..m.nrows() {
        if i < p {
            s += m[(i, i)];
        } else {
            s -= m[(i, i)];
        }
    }
    s
}

/// `v m v` for the grading with `p` even basis vectors.
pub(crate) fn alpha_matrix(m: &Mat, p: usize) -> Mat {
    let mut out = m.clone();
    negate_odd_blocks(&mut out, p);
    out
}

pub(crate) fn negate_odd_blocks(m: &mut Mat, p: usize) {
    let n = m.nrows();
    for i in 0..n {
        for j in 0..n {
            if (i < p) != (j < p) {
                m[(i, j)] = -m[(i, j)];
            }
        }
    }
}

pub(crate) fn block_part(m: &Mat, p: usize, parity: Parity) -> Mat {
    let n = m.nrows();
    Mat::from_fn(n, n, |i, j| {
        let odd = (i < p) != (j < p);
        if odd == (parity == Parity::Odd) {
            m[(i, j)]
        } else {
            C64::new(0.0, 0.0)
        }
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FunctionParity {
    Even,
    Odd,
    Neither,
}

/// Decay class of a functional-calculus input. Recorded, not enforced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    RapidDecay,
    PolynomialSymbol,
}

type EvalFn = Arc<dyn Fn(f64) -> C64 + Send + Sync>;

/// A function of one real variable used as a functional-calculus input.
#[derive(Clone)]
pub struct SmoothFunction {
    eval: EvalFn,
    parity: FunctionParity,
    decay: DecayClass,
}

impl fmt::Debug for SmoothFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SmoothFunction")
            .field("parity", &self.parity)
            .field("decay", &self.decay)
            .finish()
    }
}

impl SmoothFunction {
    pub fn new<F>(f: F, parity: FunctionParity, decay: DecayClass) -> Self
    where
        F: Fn(f64) -> C64 + Send + Sync + 'static,
    {
        SmoothFunction { eval: Arc::new(f), parity, decay }
    }

    /// Real-valued convenience constructor.
    pub fn real<F>(f: F, parity: FunctionParity, decay: DecayClass) -> Self
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        Self::new(move |x| C64::new(f(x), 0.0), parity, decay)
    }

    /// `x ↦ e^{−t x²}`.
    pub fn gaussian(t: f64) -> Self {
        Self::real(move |x| (-t * x * x).exp(), FunctionParity::Even, DecayClass::RapidDecay)
    }

    /// Polynomial with coefficients in increasing degree.
    pub fn polynomial(coeffs: Vec<C64>) -> Self {
        let even = coeffs.iter().skip(1).step_by(2).all(|c| c.norm() == 0.0);
        let odd = coeffs.iter().step_by(2).all(|c| c.norm() == 0.0);
        let parity = match (even, odd) {
            (true, _) => FunctionParity::Even,
            (false, true) => FunctionParity::Odd,
            _ => FunctionParity::Neither,
        };
        Self::new(
            move |x| coeffs.iter().rev().fold(C64::new(0.0, 0.0), |acc, c| acc * x + c),
            parity,
            DecayClass::PolynomialSymbol,
        )
    }

    pub fn eval(&self, x: f64) -> C64 {
        (self.eval)(x)
    }
    pub fn parity(&self) -> FunctionParity {
        self.parity
    }
    pub fn decay(&self) -> DecayClass {
        self.decay
    }

    /// Checks the declared parity at the sample points.
    pub fn parity_consistent(&self, samples: &[f64], tol: f64) -> bool {
        samples.iter().all(|&x| {
            let a = self.eval(x);
            let b = self.eval(-x);
            match self.parity {
                FunctionParity::Even => (a - b).norm() <= tol * (1.0 + a.norm()),
                FunctionParity::Odd => (a + b).norm() <= tol * (1.0 + a.norm()),
                FunctionParity::Neither => true,
            }
        })
    }

    pub fn add(&self, other: &SmoothFunction) -> Self {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        let parity = if self.parity == other.parity { self.parity } else { FunctionParity::Neither };
        SmoothFunction { eval: Arc::new(move |x| f(x) + g(x)), parity, decay: slower(self.decay, other.decay) }
    }

    pub fn mul(&self, other: &SmoothFunction) -> Self {
        let (f, g) = (self.eval.clone(), other.eval.clone());
        use FunctionParity::*;
        let parity = match (self.parity, other.parity) {
            (Even, Even) | (Odd, Odd) => Even,
            (Even, Odd) | (Odd, Even) => Odd,
            _ => Neither,
        };
        let decay = if self.decay == DecayClass::RapidDecay || other.decay == DecayClass::RapidDecay {
            DecayClass::RapidDecay
        } else {
            DecayClass::PolynomialSymbol
        };
        SmoothFunction { eval: Arc::new(move |x| f(x) * g(x)), parity, decay }
    }
}

fn slower(a: DecayClass, b: DecayClass) -> DecayClass {
    if a == DecayClass::PolynomialSymbol || b == DecayClass::PolynomialSymbol {
        DecayClass::PolynomialSymbol
    } else {
        DecayClass::RapidDecay
    }
}

/// `U f(Λ) U*` from the Jacobi eigendecomposition of a Hermitian `H`.
pub fn functional_calculus(f: &SmoothFunction, h: &SuperMatrix) -> Result<SuperMatrix> {
    functional_calculus_with_tol(f, h, HERMITIAN_REL_TOL)
}

pub fn functional_calculus_with_tol(f: &SmoothFunction, h: &SuperMatrix, rel_tol: f64) -> Result<SuperMatrix> {
    check_hermitian(h.matrix(), rel_tol)?;
    let (evals, u) = jacobi_eigh(h.matrix())?;
    let n = h.dim();
    let mut fu = u.clone();
    for (j, &lam) in evals.iter().enumerate() {
        let fl = f.eval(lam);
        for i in 0..n {
            fu[(i, j)] *= fl;
        }
    }
    h.with_matrix(fu * u.adjoint())
}

/// Sign of the permutation sorting the concatenation of the increasing index
/// lists `s` and `t`; zero when they overlap.
pub fn shuffle_sign(s: u32, t: u32) -> i32 {
    if s & t != 0 {
        return 0;
    }
    // Count pairs (i in s, j in t) with i > j.
    let mut count = 0u32;
    let mut rest = t;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        count += (s >> (j + 1)).count_ones();
    }
    if count.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Element of `M_N ⊗ Λ_k`: a sum of `A_S ⊗ θ_S` over subsets `S ⊆ {1..k}`
/// encoded as bitmasks. The product is
/// `(A⊗θ_S)(B⊗θ_T) = ε(S,T) · A α^{|S|}(B) ⊗ θ_{S∪T}`.
#[derive(Debug, Clone, PartialEq)]
pub struct ModelElement {
    p: usize,
    q: usize,
    k: usize,
    comps: BTreeMap<u32, Mat>,
}

impl ModelElement {
    pub fn zero(p: usize, q: usize, k: usize) -> Self {
        ModelElement { p, q, k, comps: BTreeMap::new() }
    }

    pub fn identity(p: usize, q: usize, k: usize) -> Self {
        Self::constant(&SuperMatrix::identity(p, q), k)
    }

    /// `m ⊗ 1`.
    pub fn constant(m: &SuperMatrix, k: usize) -> Self {
        Self::monomial(0, m, k)
    }

    /// `m ⊗ θ_S`.
    pub fn monomial(s: u32, m: &SuperMatrix, k: usize) -> Self {
        assert!(k < 32 && (s >> k) == 0, "theta index outside 1..k");
        let mut comps = BTreeMap::new();
        comps.insert(s, m.matrix().clone());
        ModelElement { p: m.p(), q: m.q(), k, comps }
    }

    /// Builds from raw components; panics on shape errors.
    pub fn from_components(p: usize, q: usize, k: usize, comps: BTreeMap<u32, Mat>) -> Self {
        for (s, m) in &comps {
            assert!((s >> k) == 0 && m.nrows() == p + q && m.ncols() == p + q);
        }
        ModelElement { p, q, k, comps }
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
    pub fn components(&self) -> &BTreeMap<u32, Mat> {
        &self.comps
    }
    pub fn component(&self, s: u32) -> Option<&Mat> {
        self.comps.get(&s)
    }
    pub fn top_mask(&self) -> u32 {
        if self.k == 0 {
            0
        } else {
            (1u32 << self.k) - 1
        }
    }

    pub fn component_or_zero(&self, s: u32) -> Mat {
        self.comps.get(&s).cloned().unwrap_or_else(|| Mat::zeros(self.dim(), self.dim()))
    }

    /// Terms with θ-degree exactly `j`.
    pub fn degree_part(&self, j: usize) -> Self {
        let comps = self
            .comps
            .iter()
            .filter(|(s, _)| s.count_ones() as usize == j)
            .map(|(s, m)| (*s, m.clone()))
            .collect();
        ModelElement { p: self.p, q: self.q, k: self.k, comps }
    }

    /// Largest `j` with the element in `F_{-j}` (terms of θ-degree ≥ j), ignoring
    /// components with all entries below `tol`.
    pub fn filtration_degree(&self, tol: f64) -> Option<usize> {
        self.comps
            .iter()
            .filter(|(_, m)| max_abs(m) > tol)
            .map(|(s, _)| s.count_ones() as usize)
            .min()
    }

    fn same_shape(&self, other: &ModelElement) -> Result<()> {
        if self.p != other.p || self.q != other.q || self.k != other.k {
            return Err(Error::Dimension(format!(
                "model elements ({}|{}, k={}) and ({}|{}, k={})",
                self.p, self.q, self.k, other.p, other.q, other.k
            )));
        }
        Ok(())
    }

    pub fn try_add(&self, other: &ModelElement) -> Result<Self> {
        self.same_shape(other)?;
        let mut comps = self.comps.clone();
        for (s, m) in &other.comps {
            comps
                .entry(*s)
                .and_modify(|e| *e += m)
                .or_insert_with(|| m.clone());
        }
        Ok(ModelElement { p: self.p, q: self.q, k: self.k, comps })
    }

    pub fn scale(&self, c: C64) -> Self {
        let comps = self.comps.iter().map(|(s, m)| (*s, m * c)).collect();
        ModelElement { p: self.p, q: self.q, k: self.k, comps }
    }

    pub fn scale_re(&self, c: f64) -> Self {
        self.scale(C64::new(c, 0.0))
    }

    /// Total grading automorphism: `A⊗θ_S ↦ (−1)^{|S|} vAv ⊗ θ_S`.
    pub fn alpha(&self) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|(s, m)| {
                let mut a = alpha_matrix(m, self.p);
                if s.count_ones() % 2 == 1 {
                    a = -a;
                }
                (*s, a)
            })
            .collect();
        ModelElement { p: self.p, q: self.q, k: self.k, comps }
    }

    /// Part of even (`Parity::Even`) or odd total parity.
    pub fn parity_part(&self, parity: Parity) -> Self {
        let comps = self
            .comps
            .iter()
            .map(|(s, m)| {
                let mpar = if s.count_ones() % 2 == 0 { parity } else { flip(parity) };
                (*s, block_part(m, self.p, mpar))
            })
            .collect();
        ModelElement { p: self.p, q: self.q, k: self.k, comps }
    }

    /// Total parity if homogeneous up to `tol`.
    pub fn parity(&self, tol: f64) -> Option<Parity> {
        let e = self.parity_part(Parity::Even).max_abs();
        let o = self.parity_part(Parity::Odd).max_abs();
        if o <= tol {
            Some(Parity::Even)
        } else if e <= tol {
            Some(Parity::Odd)
        } else {
            None
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.comps.values().map(max_abs).fold(0.0, f64::max)
    }

    /// Supertrace of the top θ-component.
    pub fn top_supertrace(&self) -> C64 {
        self.comps
            .get(&self.top_mask())
            .map(|m| supertrace_of(m, self.p))
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    /// Supertrace of the θ-free component.
    pub fn scalar_supertrace(&self) -> C64 {
        self.comps
            .get(&0)
            .map(|m| supertrace_of(m, self.p))
            .unwrap_or_else(|| C64::new(0.0, 0.0))
    }

    /// Drops components whose entries are all exactly zero.
    pub fn pruned(mut self) -> Self {
        self.comps.retain(|_, m| m.iter().any(|z| z.re != 0.0 || z.im != 0.0));
        self
    }

    /// Equality of coefficient matrices up to removal of zero components.
    pub fn exact_eq(&self, other: &ModelElement) -> bool {
        self.clone().pruned() == other.clone().pruned()
    }
}

fn flip(p: Parity) -> Parity {
    match p {
        Parity::Even => Parity::Odd,
        Parity::Odd => Parity::Even,
    }
}

/// Graded product in `M_N ⊗ Λ_k`.
pub fn model_mul(a: &ModelElement, b: &ModelElement) -> Result<ModelElement> {
    a.same_shape(b)?;
    let mut comps: BTreeMap<u32, Mat> = BTreeMap::new();
    let b_alpha: BTreeMap<u32, Mat> = b.comps.iter().map(|(t, m)| (*t, alpha_matrix(m, b.p))).collect();
    for (s, am) in &a.comps {
        let odd_s = s.count_ones() % 2 == 1;
        for (t, bm) in &b.comps {
            let eps = shuffle_sign(*s, *t);
            if eps == 0 {
                continue;
            }
            let rhs = if odd_s { &b_alpha[t] } else { bm };
            let mut prod = am * rhs;
            if eps < 0 {
                prod = -prod;
            }
            comps
                .entry(s | t)
                .and_modify(|e| *e += &prod)
                .or_insert(prod);
        }
    }
    Ok(ModelElement { p: a.p, q: a.q, k: a.k, comps })
}

impl Mul for &ModelElement {
    type Output = ModelElement;
    fn mul(self, rhs: &ModelElement) -> ModelElement {
        model_mul(self, rhs).expect("model product with mismatched shapes")
    }
}

impl Add for &ModelElement {
    type Output = ModelElement;
    fn add(self, rhs: &ModelElement) -> ModelElement {
        self.try_add(rhs).expect("model sum with mismatched shapes")
    }
}

impl Sub for &ModelElement {
    type Output = ModelElement;
    fn sub(self, rhs: &ModelElement) -> ModelElement {
        self.try_add(&rhs.scale_re(-1.0)).expect("model difference with mismatched shapes")
    }
}

impl Neg for &ModelElement {
    type Output = ModelElement;
    fn neg(self) -> ModelElement {
        self.scale_re(-1.0)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{integer_matrix, random_hermitian, seeded};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn supertrace_of_grading_and_identity() {
        assert_eq!(SuperMatrix::grading(1, 1).supertrace(), c(2.0));
        assert_eq!(SuperMatrix::identity(1, 1).supertrace(), c(0.0));
    }

    #[test]
    fn shape_is_checked() {
        assert!(SuperMatrix::new(2, 1, Mat::zeros(2, 2)).is_err());
    }

    #[test]
    fn square_of_swap_is_identity() {
        let h = SuperMatrix::new(1, 1, Mat::from_row_slice(2, 2, &[c(0.0), c(1.0), c(1.0), c(0.0)])).unwrap();
        let f = SmoothFunction::polynomial(vec![c(0.0), c(0.0), c(1.0)]);
        let r = functional_calculus(&f, &h).unwrap();
        assert!((r.matrix() - Mat::identity(2, 2)).norm() < 1e-14);
    }

    #[test]
    fn gaussian_of_diagonal() {
        let h = SuperMatrix::new(1, 1, Mat::from_row_slice(2, 2, &[c(2.0), c(0.0), c(0.0), c(-3.0)])).unwrap();
        let r = functional_calculus(&SmoothFunction::gaussian(1.0), &h).unwrap();
        assert!((r.matrix()[(0, 0)] - c((-4.0f64).exp())).norm() < 1e-16);
        assert!((r.matrix()[(1, 1)] - c((-9.0f64).exp())).norm() < 1e-16);
    }

    #[test]
    fn non_hermitian_is_rejected() {
        let mut rng = seeded(1);
        let m = integer_matrix(&mut rng, 3, 3, 3);
        let h = SuperMatrix::new(2, 1, m).unwrap();
        let err = functional_calculus(&SmoothFunction::gaussian(1.0), &h).unwrap_err();
        assert!(matches!(err, Error::NotHermitian { .. }));
    }

    #[test]
    fn polynomial_calculus_matches_direct_evaluation() {
        let mut rng = seeded(2);
        let h = SuperMatrix::new(3, 2, random_hermitian(&mut rng, 5)).unwrap();
        let f = SmoothFunction::polynomial(vec![c(1.0), c(-2.0), c(0.5), c(0.25)]);
        let r = functional_calculus(&f, &h).unwrap();
        let hm = h.matrix();
        let direct = Mat::identity(5, 5) * c(1.0) - hm * c(2.0) + hm * hm * c(0.5) + hm * hm * hm * c(0.25);
        assert!((r.matrix() - direct).norm() < 1e-11);
    }

    #[test]
    fn theta_generators_anticommute() {
        let one = SuperMatrix::identity(1, 1);
        let t1 = ModelElement::monomial(0b01, &one, 2);
        let t2 = ModelElement::monomial(0b10, &one, 2);
        let a = &t1 * &t2;
        let b = &t2 * &t1;
        assert_eq!(a.component(0b11).unwrap(), &Mat::identity(2, 2));
        assert_eq!(b.component(0b11).unwrap(), &(-Mat::identity(2, 2)));
        assert!((&t1 * &t1).pruned().components().is_empty());
    }

    #[test]
    fn odd_matrix_picks_up_sign_past_theta() {
        // (1⊗θ1)(B⊗1) = α(B)⊗θ1 with B odd gives −B.
        let mut rng = seeded(3);
        let mut bm = integer_matrix(&mut rng, 2, 2, 2);
        crate::random::zero_blocks(&mut bm, 1, true);
        let b = SuperMatrix::new(1, 1, bm.clone()).unwrap();
        let t1 = ModelElement::monomial(1, &SuperMatrix::identity(1, 1), 1);
        let prod = &t1 * &ModelElement::constant(&b, 1);
        assert_eq!(prod.component(1).unwrap(), &(-bm));
    }

    #[test]
    fn shuffle_signs() {
        assert_eq!(shuffle_sign(0b01, 0b10), 1);
        assert_eq!(shuffle_sign(0b10, 0b01), -1);
        assert_eq!(shuffle_sign(0b101, 0b010), -1);
        assert_eq!(shuffle_sign(0b11, 0b01), 0);
    }
}

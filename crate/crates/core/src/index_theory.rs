//! Graph projections, analytic index and McKean–Singer for odd Hermitian
//! operators `H = [[0, P*], [P, 0]]`.

use crate::cycle_core::CrossedElement;
use crate::error::{Error, Result};
use crate::linalg::{check_hermitian, jacobi_eigh};
use crate::random::odd_hermitian_from_block;
use crate::super_algebra::{functional_calculus, DecayClass, FunctionParity, SmoothFunction, SuperMatrix, HERMITIAN_REL_TOL};
use crate::{Mat, C64};

/// Residual above which the graph projection is reported as a numerical
/// failure.
pub const GRAPH_IDEMPOTENT_TOL: f64 = 1e-9;
/// Relative kernel threshold for the analytic index.
pub const KERNEL_REL_TOL: f64 = 1e-10;

/// Even weight with `τ_w(x)² x² = e^{−x²}(1 − e^{−x²})` and `τ_w(0) = 1`.
pub fn weight_tau_w(x: f64) -> f64 {
    let y = x * x;
    let ratio = if y == 0.0 { 1.0 } else { -(-y).exp_m1() / y };
    (-0.5 * y).exp() * ratio.sqrt()
}

/// An odd Hermitian realization of `D`.
#[derive(Debug, Clone)]
pub struct FredholmRealization {
    h: SuperMatrix,
}

impl FredholmRealization {
    /// From the block `P: C^p → C^q`, given as a `q×p` matrix.
    pub fn from_block(p_block: &Mat) -> Self {
        let p = p_block.ncols();
        let q = p_block.nrows();
        let h = SuperMatrix::new(p, q, odd_hermitian_from_block(p_block)).expect("shape");
        FredholmRealization { h }
    }

    /// From a full operator; it must be Hermitian and odd.
    pub fn new(h: SuperMatrix) -> Result<Self> {
        check_hermitian(h.matrix(), HERMITIAN_REL_TOL)?;
        let defect = h.even_part().max_abs();
        if defect > HERMITIAN_REL_TOL * (1.0 + h.max_abs()) {
            return Err(Error::NotOdd(defect));
        }
        Ok(FredholmRealization { h: h.odd_part() })
    }

    pub fn h(&self) -> &SuperMatrix {
        &self.h
    }
    pub fn p(&self) -> usize {
        self.h.p()
    }
    pub fn q(&self) -> usize {
        self.h.q()
    }

    /// The block `P` (`q×p`).
    pub fn block(&self) -> Mat {
        let (p, q) = (self.p(), self.q());
        self.h.matrix().view((p, 0), (q, p)).into_owned()
    }

    /// `H ↦ sH`.
    pub fn scaled(&self, s: f64) -> Self {
        FredholmRealization { h: self.h.scale(C64::new(s, 0.0)) }
    }

    pub fn grading(&self) -> SuperMatrix {
        SuperMatrix::grading(self.p(), self.q())
    }
}

/// `x ↦ τ_w(x)·x`.
pub fn weighted_identity() -> SmoothFunction {
    SmoothFunction::real(|x| weight_tau_w(x) * x, FunctionParity::Odd, DecayClass::RapidDecay)
}

/// Graph projection in crossed-product form `x + y v` with
/// `x = 1/2 + τ_w(H)H` and `y = 1/2 − e^{−H²}`.
pub fn graph_projection_crossed(r: &FredholmRealization) -> Result<CrossedElement> {
    let half = SuperMatrix::identity(r.p(), r.q()).scale(C64::new(0.5, 0.0));
    let th = functional_calculus(&weighted_identity(), r.h())?;
    let heat = functional_calculus(&SmoothFunction::gaussian(1.0), r.h())?;
    Ok(CrossedElement::new(&half + &th, &half - &heat))
}

/// Reference idempotent `e0 = (1 + v)/2`.
pub fn reference_projection(p: usize, q: usize) -> CrossedElement {
    let half = SuperMatrix::identity(p, q).scale(C64::new(0.5, 0.0));
    CrossedElement::new(half.clone(), half)
}

/// `p = (1+v)/2 − e^{−H²}v + τ_w(H)H` as a matrix.
pub fn graph_projection(r: &FredholmRealization) -> Result<SuperMatrix> {
    let p = graph_projection_crossed(r)?.to_matrix();
    let residual = (&(&p * &p) - &p).max_abs();
    if residual > GRAPH_IDEMPOTENT_TOL {
        return Err(Error::Numerical(format!("graph projection idempotency residual {residual:.3e}")));
    }
    Ok(p)
}

/// Kernel dimensions and the spectral gap used to count them.
#[derive(Debug, Clone, PartialEq)]
pub struct IndexReport {
    pub index: i64,
    pub dim_ker: usize,
    pub dim_coker: usize,
    pub threshold: f64,
    /// Smallest eigenvalue of `P*P` or `PP*` above the threshold, divided by it.
    pub gap_ratio: f64,
}

/// `dim ker P − dim ker P*` with kernels counted by eigenvalues of `P*P` and
/// `PP*` below `1e−10·‖P‖²`.
pub fn analytic_index(p_block: &Mat) -> Result<i64> {
    analytic_index_report(p_block).map(|r| r.index)
}

pub fn analytic_index_report(p_block: &Mat) -> Result<IndexReport> {
    let pp = p_block.adjoint() * p_block;
    let qq = p_block * p_block.adjoint();
    let (ev_p, _) = if pp.nrows() > 0 { jacobi_eigh(&pp)? } else { (vec![], Mat::zeros(0, 0)) };
    let (ev_q, _) = if qq.nrows() > 0 { jacobi_eigh(&qq)? } else { (vec![], Mat::zeros(0, 0)) };
    let norm2 = ev_p.iter().chain(ev_q.iter()).copied().fold(0.0, f64::max);
    let threshold = KERNEL_REL_TOL * norm2;
    let count = |ev: &[f64]| ev.iter().filter(|&&l| l <= threshold).count();
    let dim_ker = count(&ev_p);
    let dim_coker = count(&ev_q);
    let above = ev_p
        .iter()
        .chain(ev_q.iter())
        .copied()
        .filter(|&l| l > threshold)
        .fold(f64::INFINITY, f64::min);
    let gap_ratio = if threshold > 0.0 { above / threshold } else { f64::INFINITY };
    if gap_ratio < 100.0 {
        return Err(Error::Spectrum(format!(
            "eigenvalue {above:.3e} within a factor 100 of the kernel threshold {threshold:.3e}"
        )));
    }
    Ok(IndexReport { index: dim_ker as i64 - dim_coker as i64, dim_ker, dim_coker, threshold, gap_ratio })
}

/// `Str(e^{−tH²})`.
pub fn mckean_singer(r: &FredholmRealization, t: f64) -> Result<C64> {
    if t <= 0.0 {
        return Err(Error::NegativeTime(t));
    }
    Ok(functional_calculus(&SmoothFunction::gaussian(t), r.h())?.supertrace())
}

/// Eigenbasis of `H` adapted to the grading: `v` permutes the rank-one
/// eigenprojectors, `v P_j v = P_{π(j)}`, and `λ_{π(j)} = −λ_j` exactly.
#[derive(Debug, Clone)]
pub struct SpectralFrame {
    pub p: usize,
    pub q: usize,
    /// Eigenvalues, one per basis vector.
    pub lambda: Vec<f64>,
    /// Unitary with the eigenvectors as columns.
    pub u: Mat,
    /// Involution induced by the grading.
    pub pi: Vec<usize>,
    /// Index into `mu` of `λ_j²`; paired vectors share the same entry.
    pub mu_class: Vec<usize>,
    /// Distinct squared eigenvalues.
    pub mu: Vec<f64>,
}

impl SpectralFrame {
    /// Builds the frame from the singular value decomposition of the block
    /// `P`: pairs `(w, ±Pw/s)/√2` with eigenvalues `±s`, plus kernel vectors
    /// of `P` and `P*`.
    pub fn new(r: &FredholmRealization) -> Result<Self> {
        let (p, q) = (r.p(), r.q());
        let n = p + q;
        let pb = r.block();
        let pp = pb.adjoint() * &pb;
        let qq = &pb * pb.adjoint();
        let (ev_p, w) = if p > 0 { jacobi_eigh(&pp)? } else { (vec![], Mat::zeros(0, 0)) };
        let (ev_q, uq) = if q > 0 { jacobi_eigh(&qq)? } else { (vec![], Mat::zeros(0, 0)) };
        let norm2 = ev_p.iter().chain(ev_q.iter()).copied().fold(0.0, f64::max);
        let thr = KERNEL_REL_TOL * norm2.max(f64::MIN_POSITIVE);
        let mut lambda = Vec::with_capacity(n);
        let mut u = Mat::zeros(n, n);
        let mut pi = Vec::with_capacity(n);
        let mut mu_class = Vec::with_capacity(n);
        let mut mu = Vec::new();
        let mut col = 0;
        let r2 = std::f64::consts::FRAC_1_SQRT_2;
        let mut rank = 0;
        for (j, &s2) in ev_p.iter().enumerate() {
            let wj = w.column(j);
            if s2 > thr {
                rank += 1;
                let s = s2.sqrt();
                let vj = &pb * wj / C64::new(s, 0.0);
                let cls = mu.len();
                mu.push(s2);
                for (sgn, offset) in [(1.0, 0usize), (-1.0, 1usize)] {
                    for i in 0..p {
                        u[(i, col + offset)] = wj[i] * r2;
                    }
                    for i in 0..q {
                        u[(p + i, col + offset)] = vj[i] * (sgn * r2);
                    }
                    lambda.push(sgn * s);
                    pi.push(col + 1 - offset);
                    mu_class.push(cls);
                }
                col += 2;
            }
        }
        let zero_cls = mu.len();
        let mut has_zero = false;
        for (j, &s2) in ev_p.iter().enumerate() {
            if s2 <= thr {
                for i in 0..p {
                    u[(i, col)] = w[(i, j)];
                }
                lambda.push(0.0);
                pi.push(col);
                mu_class.push(zero_cls);
                has_zero = true;
                col += 1;
            }
        }
        let coker: Vec<usize> = (0..q).filter(|&j| ev_q[j] <= thr).collect();
        if coker.len() + rank != q {
            return Err(Error::Spectrum("ranks of P*P and PP* disagree at the kernel threshold".into()));
        }
        for j in coker {
            for i in 0..q {
                u[(p + i, col)] = uq[(i, j)];
            }
            lambda.push(0.0);
            pi.push(col);
            mu_class.push(zero_cls);
            has_zero = true;
            col += 1;
        }
        if has_zero {
            mu.push(0.0);
        }
        debug_assert_eq!(col, n);
        Ok(SpectralFrame { p, q, lambda, u, pi, mu_class, mu })
    }

    pub fn dim(&self) -> usize {
        self.p + self.q
    }

    /// Rank-one projector onto the `j`-th basis vector, in the original basis.
    pub fn projector(&self, j: usize) -> SuperMatrix {
        let c = self.u.column(j);
        SuperMatrix::new(self.p, self.q, c * c.adjoint()).expect("shape")
    }

    /// `‖U diag(λ) U* − H‖` for diagnostics.
    pub fn reconstruction_error(&self, r: &FredholmRealization) -> f64 {
        let n = self.dim();
        let mut d = Mat::zeros(n, n);
        for j in 0..n {
            d[(j, j)] = C64::new(self.lambda[j], 0.0);
        }
        crate::max_abs(&(&self.u * d * self.u.adjoint() - r.h().matrix()))
    }

    /// Moves a matrix into the eigenbasis: `U* m U`.
    pub fn to_frame(&self, m: &Mat) -> Mat {
        self.u.adjoint() * m * &self.u
    }

    /// Moves a matrix back: `U m U*`.
    pub fn from_frame(&self, m: &Mat) -> Mat {
        &self.u * m * self.u.adjoint()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::{random_matrix, seeded};

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }

    #[test]
    fn weight_identity() {
        for x in [0.0, 1e-9, 0.3, 1.0, 2.5, 7.0] {
            let w = weight_tau_w(x);
            let lhs = w * w * x * x;
            let rhs = (-x * x).exp() * (1.0 - (-x * x).exp());
            assert!((lhs - rhs).abs() < 1e-15, "{x}");
            assert!((weight_tau_w(-x) - w).abs() == 0.0);
        }
        assert_eq!(weight_tau_w(0.0), 1.0);
    }

    #[test]
    fn zero_operator_projection() {
        let r = FredholmRealization::from_block(&Mat::zeros(1, 1));
        let p = graph_projection(&r).unwrap();
        let want = Mat::from_row_slice(2, 2, &[c(0.0), c(0.0), c(0.0), c(1.0)]);
        assert!((p.matrix() - want).norm() < 1e-15);
    }

    #[test]
    fn scalar_one_projection() {
        let r = FredholmRealization::from_block(&Mat::from_element(1, 1, c(1.0)));
        let p = graph_projection(&r).unwrap();
        let e = (-1.0f64).exp();
        let w = (e * (1.0 - e)).sqrt();
        let want = Mat::from_row_slice(2, 2, &[c(1.0 - e), c(w), c(w), c(e)]);
        assert!((p.matrix() - want).norm() < 1e-14);
        assert!((&(&p * &p) - &p).max_abs() < 1e-12);
    }

    #[test]
    fn index_examples() {
        assert_eq!(analytic_index(&Mat::zeros(1, 1)).unwrap(), 0);
        assert_eq!(analytic_index(&Mat::from_row_slice(1, 2, &[c(1.0), c(0.0)])).unwrap(), 1);
        assert_eq!(analytic_index(&Mat::from_row_slice(2, 2, &[c(2.0), c(1.0), c(0.0), c(1.0)])).unwrap(), 0);
    }

    #[test]
    fn mckean_singer_zero_operator() {
        let r = FredholmRealization::from_block(&Mat::zeros(1, 1));
        assert!(mckean_singer(&r, 1.0).unwrap().norm() < 1e-15);
    }

    #[test]
    fn frame_is_graded_eigenbasis() {
        let mut rng = seeded(21);
        for (p, q) in [(3, 2), (2, 4), (3, 3)] {
            let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
            let f = SpectralFrame::new(&r).unwrap();
            assert!(f.reconstruction_error(&r) < 1e-12);
            let uu = f.u.adjoint() * &f.u;
            assert!((uu - Mat::identity(p + q, p + q)).norm() < 1e-12);
            let v = SuperMatrix::grading(p, q);
            for j in 0..p + q {
                let pj = f.projector(j);
                let vpv = &(&v * &pj) * &v;
                assert!((&vpv - &f.projector(f.pi[j])).max_abs() < 1e-12);
                assert_eq!(f.lambda[f.pi[j]], -f.lambda[j]);
            }
        }
    }
}

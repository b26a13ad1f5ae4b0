//! Dense kernels: cyclic Jacobi for Hermitian matrices and the matrix
//! exponential by scaling and squaring.

use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};
use crate::{Mat, C64};

/// Relative off-diagonal threshold at which the Jacobi sweep stops.
pub const JACOBI_REL_TOL: f64 = 1e-13;
const JACOBI_MAX_SWEEPS: usize = 100;

/// Maximum row-sum norm.
pub fn norm_inf(m: &Mat) -> f64 {
    (0..m.nrows())
        .map(|i| m.row(i).iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// `‖m − m*‖_∞`.
pub fn hermitian_defect(m: &Mat) -> f64 {
    norm_inf(&(m - m.adjoint()))
}

/// Checks `‖H − H*‖_∞ ≤ rel·(1 + ‖H‖_∞)`.
pub fn check_hermitian(m: &Mat, rel: f64) -> Result<()> {
    if m.nrows() != m.ncols() {
        return Err(Error::Dimension(format!(
            "expected a square matrix, got {}x{}",
            m.nrows(),
            m.ncols()
        )));
    }
    let defect = hermitian_defect(m);
    let tol = rel * (1.0 + norm_inf(m));
    if defect > tol {
        return Err(Error::NotHermitian { defect, tol });
    }
    Ok(())
}

fn off_norm(a: &Mat) -> f64 {
    let n = a.nrows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)].norm_sqr();
            }
        }
    }
    s.sqrt()
}

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi
/// rotations. Returns ascending eigenvalues and the unitary whose columns are
/// the matching eigenvectors.
pub fn jacobi_eigh(h: &Mat) -> Result<(Vec<f64>, Mat)> {
    let n = h.nrows();
    if n != h.ncols() {
        return Err(Error::Dimension("Jacobi needs a square matrix".into()));
    }
    // Symmetrize to remove round-off asymmetry.
    let mut a = (h + h.adjoint()) * C64::new(0.5, 0.0);
    let mut v = Mat::identity(n, n);
    let scale = a.norm();
    let stop = JACOBI_REL_TOL * scale;
    let mut sweeps = 0;
    while off_norm(&a) > stop {
        sweeps += 1;
        if sweeps > JACOBI_MAX_SWEEPS {
            return Err(Error::Numerical("Jacobi iteration did not converge".into()));
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = a[(p, q)];
                let b = apq.norm();
                if b == 0.0 || b <= 1e-300 {
                    continue;
                }
                let phase = apq / b;
                let app = a[(p, p)].re;
                let aqq = a[(q, q)].re;
                let zeta = (aqq - app) / (2.0 * b);
                let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                let t = if zeta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                // G = diag-phase times a real rotation acting on columns p, q.
                let gpp = C64::new(c, 0.0);
                let gpq = C64::new(s, 0.0);
                let gqp = -phase.conj() * s;
                let gqq = phase.conj() * c;
                for k in 0..n {
                    let akp = a[(k, p)];
                    let akq = a[(k, q)];
                    a[(k, p)] = akp * gpp + akq * gqp;
                    a[(k, q)] = akp * gpq + akq * gqq;
                }
                for k in 0..n {
                    let apk = a[(p, k)];
                    let aqk = a[(q, k)];
                    a[(p, k)] = gpp.conj() * apk + gqp.conj() * aqk;
                    a[(q, k)] = gpq.conj() * apk + gqq.conj() * aqk;
                }
                a[(p, q)] = C64::new(0.0, 0.0);
                a[(q, p)] = C64::new(0.0, 0.0);
                a[(p, p)] = C64::new(a[(p, p)].re, 0.0);
                a[(q, q)] = C64::new(a[(q, q)].re, 0.0);
                for k in 0..n {
                    let vkp = v[(k, p)];
                    let vkq = v[(k, q)];
                    v[(k, p)] = vkp * gpp + vkq * gqp;
                    v[(k, q)] = vkp * gpq + vkq * gqq;
                }
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(i, i)].re.total_cmp(&a[(j, j)].re));
    let evals = order.iter().map(|&i| a[(i, i)].re).collect();
    let mut vecs = Mat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        vecs.set_column(dst, &v.column(src));
    }
    Ok((evals, vecs))
}

/// Matrix exponential by scaling and squaring of a truncated Taylor series.
pub fn expm<T>(a: &DMatrix<T>) -> DMatrix<T>
where
    T: ComplexField<RealField = f64> + Copy,
{
    let n = a.nrows();
    let norm1 = (0..n)
        .map(|j| a.column(j).iter().map(|z| z.modulus()).sum::<f64>())
        .fold(0.0, f64::max);
    let mut squarings = 0u32;
    if norm1 > 0.5 {
        squarings = (norm1 / 0.5).log2().ceil() as u32;
    }
    let scale = T::from_real(0.5f64.powi(squarings as i32));
    let b = a * scale;
    let mut sum = DMatrix::<T>::identity(n, n);
    let mut term = DMatrix::<T>::identity(n, n);
    for j in 1..=40 {
        term = &term * &b * T::from_real(1.0 / j as f64);
        sum += &term;
        let tn = term.iter().map(|z| z.modulus()).fold(0.0, f64::max);
        let sn = sum.iter().map(|z| z.modulus()).fold(0.0, f64::max);
        if tn <= 1e-18 * sn.max(1e-300) {
            break;
        }
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// Solves the square system `a x = b`.
pub fn solve_real(a: &DMatrix<f64>, b: &[f64]) -> Result<Vec<f64>> {
    let rhs = nalgebra::DVector::from_column_slice(b);
    a.clone()
        .lu()
        .solve(&rhs)
        .map(|x| x.iter().copied().collect())
        .ok_or_else(|| Error::Numerical("singular linear system".into()))
}

/// 2-norm condition number of a real square matrix.
pub fn condition_number(a: &DMatrix<f64>) -> f64 {
    let sv = a.clone().svd(false, false).singular_values;
    let max = sv.iter().copied().fold(0.0, f64::max);
    let min = sv.iter().copied().fold(f64::INFINITY, f64::min);
    if min == 0.0 {
        f64::INFINITY
    } else {
        max / min
    }
}

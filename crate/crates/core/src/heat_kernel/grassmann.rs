//! Matrices over the exterior algebra `Λ_k`, in the untwisted picture.
//!
//! A model element `Σ M_S ⊗ θ_S` corresponds to `Σ (M_S v^{|S|}) θ_S`, for
//! which the product is the plain matrix product with Grassmann entries.

use std::sync::Arc;

use crate::index_theory::SpectralFrame;
use crate::super_algebra::{shuffle_sign, ModelElement};
use crate::{Mat, C64};

/// Shuffle signs `ε(S, T)` for all pairs of masks, `0` when they overlap.
#[derive(Debug)]
pub struct SignTable {
    k: usize,
    pairs: Vec<Vec<(u32, u32, f64)>>,
}

impl SignTable {
    pub fn new(k: usize) -> Arc<Self> {
        let dim = 1u32 << k;
        let mut pairs = vec![Vec::new(); dim as usize];
        for s in 0..dim {
            for t in 0..dim {
                if s & t == 0 {
                    pairs[(s | t) as usize].push((s, t, shuffle_sign(s, t) as f64));
                }
            }
        }
        Arc::new(SignTable { k, pairs })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn dim(&self) -> usize {
        1 << self.k
    }

    /// `out += a · b` for Grassmann numbers stored as coefficient slices.
    #[inline]
    pub fn mul_acc(&self, out: &mut [C64], a: &[C64], b: &[C64], c: C64) {
        for (u, list) in self.pairs.iter().enumerate() {
            let mut acc = C64::new(0.0, 0.0);
            for &(s, t, e) in list {
                let x = a[s as usize];
                if x.re == 0.0 && x.im == 0.0 {
                    continue;
                }
                acc += x * b[t as usize] * e;
            }
            out[u] += acc * c;
        }
    }
}

/// `n × n` matrix with entries in `Λ_k`; entry `(i, j)` occupies
/// `data[(i n + j) dim .. (i n + j + 1) dim]`.
#[derive(Debug, Clone)]
pub struct GMat {
    n: usize,
    signs: Arc<SignTable>,
    data: Vec<C64>,
}

impl GMat {
    pub fn zeros(n: usize, signs: Arc<SignTable>) -> Self {
        let len = n * n * signs.dim();
        GMat { n, signs, data: vec![C64::new(0.0, 0.0); len] }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn signs(&self) -> &Arc<SignTable> {
        &self.signs
    }

    pub fn entry(&self, i: usize, j: usize) -> &[C64] {
        let d = self.signs.dim();
        let o = (i * self.n + j) * d;
        &self.data[o..o + d]
    }

    pub fn entry_mut(&mut self, i: usize, j: usize) -> &mut [C64] {
        let d = self.signs.dim();
        let o = (i * self.n + j) * d;
        &mut self.data[o..o + d]
    }

    /// Scalar matrix `m ⊗ 1`.
    pub fn from_scalar(m: &Mat, signs: Arc<SignTable>) -> Self {
        let n = m.nrows();
        let mut g = GMat::zeros(n, signs);
        for i in 0..n {
            for j in 0..n {
                g.entry_mut(i, j)[0] = m[(i, j)];
            }
        }
        g
    }

    /// Untwisted image of a model element, optionally moved into a frame.
    pub fn from_model(a: &ModelElement, frame: Option<&SpectralFrame>, signs: Arc<SignTable>) -> Self {
        let n = a.dim();
        let v = grading_diag(a.p(), a.q());
        let mut g = GMat::zeros(n, signs);
        for (s, m) in a.components() {
            let mut x = m.clone();
            if s.count_ones() % 2 == 1 {
                for (j, &sgn) in v.iter().enumerate() {
                    x.column_mut(j).scale_mut(sgn);
                }
            }
            let x = match frame {
                Some(f) => f.to_frame(&x),
                None => x,
            };
            for i in 0..n {
                for j in 0..n {
                    g.entry_mut(i, j)[*s as usize] = x[(i, j)];
                }
            }
        }
        g
    }

    /// Inverse of [`GMat::from_model`].
    pub fn to_model(&self, p: usize, q: usize, frame: Option<&SpectralFrame>) -> ModelElement {
        let n = self.n;
        let v = grading_diag(p, q);
        let mut comps = std::collections::BTreeMap::new();
        for s in 0..self.signs.dim() {
            let mut x = Mat::from_fn(n, n, |i, j| self.entry(i, j)[s]);
            if x.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                continue;
            }
            if let Some(f) = frame {
                x = f.from_frame(&x);
            }
            if (s as u32).count_ones() % 2 == 1 {
                for (j, &sgn) in v.iter().enumerate() {
                    x.column_mut(j).scale_mut(sgn);
                }
            }
            comps.insert(s as u32, x);
        }
        ModelElement::from_components(p, q, self.signs.k(), comps)
    }

    pub fn mul(&self, other: &GMat) -> GMat {
        let n = self.n;
        let mut out = GMat::zeros(n, self.signs.clone());
        let d = self.signs.dim();
        let one = C64::new(1.0, 0.0);
        for i in 0..n {
            for l in 0..n {
                let a = self.entry(i, l);
                if a.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                    continue;
                }
                for j in 0..n {
                    let o = (i * n + j) * d;
                    let (before, rest) = out.data.split_at_mut(o);
                    let _ = before;
                    self.signs.mul_acc(&mut rest[..d], a, other.entry(l, j), one);
                }
            }
        }
        out
    }

    pub fn add_scaled(&mut self, other: &GMat, c: C64) {
        for (x, y) in self.data.iter_mut().zip(other.data.iter()) {
            *x += *y * c;
        }
    }

    pub fn max_abs(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }
}

fn grading_diag(p: usize, q: usize) -> Vec<f64> {
    (0..p + q).map(|i| if i < p { 1.0 } else { -1.0 }).collect()
}

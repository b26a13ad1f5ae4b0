//! Realizations of the heat expansion in the matrix model: Φ of the
//! spectral chains, the `ω_n` recurrence and the exponential itself.

use std::sync::Arc;

use serde::Serialize;

use super::chains::{psi_chain, SpectralChain, Spectrum};
use super::duhamel::DuhamelCache;
use super::grassmann::{GMat, SignTable};
use crate::cycle_core::CycleDescriptor;
use crate::error::{Error, Result};
use crate::index_theory::{FredholmRealization, SpectralFrame};
use crate::linalg::expm;
use crate::super_algebra::{shuffle_sign, ModelElement};
use crate::{Mat, C64};

fn check_model(cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<()> {
    if cycle.p() != r.p() || cycle.q() != r.q() {
        return Err(Error::Dimension(format!(
            "operator is ({}|{}) but the cycle is ({}|{})",
            r.p(),
            r.q(),
            cycle.p(),
            cycle.q()
        )));
    }
    Ok(())
}

/// The data every realization in the eigenframe of `H` needs.
#[derive(Debug, Clone)]
pub struct FrameModel {
    pub frame: SpectralFrame,
    pub spectrum: Spectrum,
    pub signs: Arc<SignTable>,
    /// Untwisted `η` in the frame.
    pub eta: GMat,
    /// Untwisted `ω = η²` in the frame.
    pub omega: GMat,
    /// Untwisted `∇H = ηH + Hη` in the frame.
    pub nabla_h: GMat,
    p: usize,
    q: usize,
}

impl FrameModel {
    pub fn new(cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<Self> {
        check_model(cycle, r)?;
        let frame = SpectralFrame::new(r)?;
        let spectrum = Spectrum::from_frame(&frame);
        let signs = SignTable::new(cycle.k());
        let eta = GMat::from_model(cycle.eta(), Some(&frame), signs.clone());
        let omega = eta.mul(&eta);
        let n = frame.dim();
        let mut lam = Mat::zeros(n, n);
        for j in 0..n {
            lam[(j, j)] = C64::new(frame.lambda[j], 0.0);
        }
        let lam = GMat::from_scalar(&lam, signs.clone());
        let mut nabla_h = eta.mul(&lam);
        nabla_h.add_scaled(&lam.mul(&eta), C64::new(1.0, 0.0));
        Ok(FrameModel { frame, spectrum, signs, eta, omega, nabla_h, p: cycle.p(), q: cycle.q() })
    }

    pub fn dim(&self) -> usize {
        self.frame.dim()
    }

    pub fn to_model(&self, g: &GMat) -> ModelElement {
        g.to_model(self.p, self.q, Some(&self.frame))
    }
}

fn zero_row(n: usize, d: usize) -> Vec<C64> {
    vec![C64::new(0.0, 0.0); n * d]
}

/// Carrier component `a₀₀` of `Φ(F)` for a spectral chain `F`, i.e. of
/// `Σ F(j) α^n(P_{j_0}) dα^{n−1}(P_{j_1}) … dP_{j_n}` in the X-extension.
///
/// With `α(P_j) = P_{π(j)}` this is `Σ G(j) P_{j_0} dP_{j_1} … dP_{j_n}` for
/// `G(j) = F(π^n j_0, …, j_n)`; the products are accumulated slot by slot on
/// the single nonzero row `j_0`.
pub fn realize_phi(chain: &SpectralChain, fm: &FrameModel) -> GMat {
    let n = chain.degree();
    let dim = fm.dim();
    let d = fm.signs.dim();
    let pi = &fm.spectrum.pi;
    let mut out = GMat::zeros(dim, fm.signs.clone());
    let g_of = |j: &[usize]| {
        let idx: Vec<usize> = j.iter().enumerate().map(|(s, &x)| if (n - s) % 2 == 1 { pi[x] } else { x }).collect();
        chain.get(&idx)
    };
    if n == 0 {
        for j in 0..dim {
            out.entry_mut(j, j)[0] += C64::new(g_of(&[j]), 0.0);
        }
        return out;
    }
    struct Ctx<'a> {
        n: usize,
        dim: usize,
        d: usize,
        fm: &'a FrameModel,
        out: &'a mut GMat,
        idx: Vec<usize>,
    }
    fn step(ctx: &mut Ctx, x00: &[C64], x01: &[C64], g_of: &dyn Fn(&[usize]) -> f64) {
        let (dim, d) = (ctx.dim, ctx.d);
        let fm = ctx.fm;
        let one = C64::new(1.0, 0.0);
        let depth = ctx.idx.len();
        for b in 0..dim {
            let pb = fm.spectrum.pi[b];
            let mut new00 = zero_row(dim, d);
            {
                let tgt = &mut new00[b * d..(b + 1) * d];
                for c in 0..dim {
                    fm.signs.mul_acc(tgt, &x00[c * d..(c + 1) * d], fm.eta.entry(c, b), one);
                    fm.signs.mul_acc(tgt, &x01[c * d..(c + 1) * d], fm.omega.entry(c, b), one);
                }
            }
            let xp = &x00[pb * d..(pb + 1) * d];
            let xp_zero = xp.iter().all(|z| z.re == 0.0 && z.im == 0.0);
            if !xp_zero {
                for c in 0..dim {
                    fm.signs.mul_acc(&mut new00[c * d..(c + 1) * d], xp, fm.eta.entry(pb, c), -one);
                }
            }
            ctx.idx.push(b);
            if depth == ctx.n {
                let gv = g_of(&ctx.idx);
                if gv != 0.0 {
                    let j0 = ctx.idx[0];
                    for c in 0..dim {
                        let e = ctx.out.entry_mut(j0, c);
                        for u in 0..d {
                            e[u] += new00[c * d + u] * gv;
                        }
                    }
                }
            } else {
                let mut new01 = zero_row(dim, d);
                new01[pb * d..(pb + 1) * d].copy_from_slice(xp);
                step(ctx, &new00, &new01, g_of);
            }
            ctx.idx.pop();
        }
    }
    for j0 in 0..dim {
        let mut x00 = zero_row(dim, d);
        x00[j0 * d] = C64::new(1.0, 0.0);
        let x01 = zero_row(dim, d);
        let mut ctx = Ctx { n, dim, d, fm, out: &mut out, idx: vec![j0] };
        step(&mut ctx, &x00, &x01, &g_of);
    }
    out
}

/// A word in `C = ∇H` (degree 1) and `W = ω` (degree 2).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Letter {
    C,
    W,
}

fn words(n: usize, prepend: bool) -> Vec<Vec<Letter>> {
    match n {
        0 => vec![vec![]],
        1 => vec![vec![Letter::C]],
        _ => {
            let mut out = Vec::new();
            for (l, deg) in [(Letter::C, 1), (Letter::W, 2)] {
                for mut w in words(n - deg, prepend) {
                    if prepend {
                        w.insert(0, l);
                    } else {
                        w.push(l);
                    }
                    out.push(w);
                }
            }
            out
        }
    }
}

/// Which end the Duhamel recursion unfolds from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum RecurrenceSide {
    Left,
    Right,
}

/// `Σ_paths (−1)^r E_r(μ_{a_0..a_r}) X_1[a_0,a_1] ⋯ X_r[a_{r−1},a_r]`,
/// accumulated either left to right or right to left.
fn path_sum(letters: &[&GMat], coeff: C64, fm: &FrameModel, cache: &mut DuhamelCache, side: RecurrenceSide, out: &mut GMat) {
    let r = letters.len();
    let dim = fm.dim();
    let d = fm.signs.dim();
    let sign = if r.is_multiple_of(2) { coeff } else { -coeff };
    let cls = &fm.spectrum.mu_class;
    if r == 0 {
        for (a, &c) in cls.iter().enumerate().take(dim) {
            let e = cache.get(&[c]);
            out.entry_mut(a, a)[0] += sign * e;
        }
        return;
    }
    let one = C64::new(1.0, 0.0);
    let mut nodes = vec![0usize; r + 1];
    let mut states: Vec<Vec<C64>> = vec![vec![C64::new(0.0, 0.0); d]; r + 1];
    states[0][0] = one;
    // positions visited in order; node[pos] fixed at depth
    let order: Vec<usize> = match side {
        RecurrenceSide::Left => (0..=r).collect(),
        RecurrenceSide::Right => (0..=r).rev().collect(),
    };
    #[allow(clippy::too_many_arguments)]
    fn rec(
        depth: usize,
        order: &[usize],
        letters: &[&GMat],
        nodes: &mut Vec<usize>,
        states: &mut Vec<Vec<C64>>,
        fm: &FrameModel,
        cache: &mut DuhamelCache,
        sign: C64,
        out: &mut GMat,
        side: RecurrenceSide,
    ) {
        let dim = fm.dim();
        let r = letters.len();
        let cls = &fm.spectrum.mu_class;
        for a in 0..dim {
            let pos = order[depth];
            nodes[pos] = a;
            if depth > 0 {
                let (prev, cur) = states.split_at_mut(depth);
                let st = &mut cur[0];
                st.iter_mut().for_each(|z| *z = C64::new(0.0, 0.0));
                match side {
                    RecurrenceSide::Left => {
                        let g = letters[pos - 1].entry(nodes[pos - 1], a);
                        fm.signs.mul_acc(st, &prev[depth - 1], g, C64::new(1.0, 0.0));
                    }
                    RecurrenceSide::Right => {
                        let g = letters[pos].entry(a, nodes[pos + 1]);
                        fm.signs.mul_acc(st, g, &prev[depth - 1], C64::new(1.0, 0.0));
                    }
                }
                if st.iter().all(|z| z.re == 0.0 && z.im == 0.0) {
                    continue;
                }
            }
            if depth == r {
                let idx: Vec<usize> = nodes.iter().map(|&x| cls[x]).collect();
                let e = cache.get(&idx);
                let (a0, ar) = (nodes[0], nodes[r]);
                let tgt = out.entry_mut(a0, ar);
                for (t, s) in tgt.iter_mut().zip(states[depth].iter()) {
                    *t += *s * sign * e;
                }
            } else {
                rec(depth + 1, order, letters, nodes, states, fm, cache, sign, out, side);
            }
        }
    }
    let _ = dim;
    rec(0, &order, letters, &mut nodes, &mut states, fm, cache, sign, out, side);
}

/// Realized `ω_0(t), …, ω_n(t)` from the Duhamel recursion
/// `ω_{n+1}(t) = −∫₀^t e^{−sH²}(∇H·ω_n(t−s) + ω·ω_{n−1}(t−s)) ds`
/// (or its right-handed mirror), as untwisted frame matrices.
pub fn omega_recurrence_frame(n: usize, t: f64, fm: &FrameModel, side: RecurrenceSide) -> Result<Vec<GMat>> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mut cache = DuhamelCache::new(fm.spectrum.mu.clone(), t)?;
    let mut out = Vec::with_capacity(n + 1);
    for deg in 0..=n {
        let mut acc = GMat::zeros(fm.dim(), fm.signs.clone());
        for w in words(deg, side == RecurrenceSide::Left) {
            let letters: Vec<&GMat> = w
                .iter()
                .map(|l| match l {
                    Letter::C => &fm.nabla_h,
                    Letter::W => &fm.omega,
                })
                .collect();
            path_sum(&letters, C64::new(1.0, 0.0), fm, &mut cache, side, &mut acc);
        }
        out.push(acc);
    }
    Ok(out)
}

/// [`omega_recurrence_frame`] converted back to model elements.
pub fn omega_recurrence(n: usize, t: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<Vec<ModelElement>> {
    let fm = FrameModel::new(cycle, r)?;
    Ok(omega_recurrence_frame(n, t, &fm, RecurrenceSide::Left)?.iter().map(|g| fm.to_model(g)).collect())
}

/// `exp(−t(H + sη)²)` from the terminating Duhamel series in the nilpotent
/// part `s∇H + s²ω` of the square.
pub fn heat_oracle_frame(s: f64, t: f64, fm: &FrameModel, k: usize) -> Result<GMat> {
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let mut nil = scaled(&fm.nabla_h, s);
    nil.add_scaled(&fm.omega, C64::new(s * s, 0.0));
    let mut cache = DuhamelCache::new(fm.spectrum.mu.clone(), t)?;
    let mut acc = GMat::zeros(fm.dim(), fm.signs.clone());
    for r in 0..=k {
        let letters: Vec<&GMat> = vec![&nil; r];
        path_sum(&letters, C64::new(1.0, 0.0), fm, &mut cache, RecurrenceSide::Left, &mut acc);
    }
    Ok(acc)
}

fn scaled(g: &GMat, s: f64) -> GMat {
    let mut out = GMat::zeros(g.n(), g.signs().clone());
    out.add_scaled(g, C64::new(s, 0.0));
    out
}

pub fn heat_oracle(cycle: &CycleDescriptor, r: &FredholmRealization, s: f64, t: f64) -> Result<ModelElement> {
    let fm = FrameModel::new(cycle, r)?;
    Ok(fm.to_model(&heat_oracle_frame(s, t, &fm, cycle.k())?))
}

/// `exp(−t(H + sη)²)` through the left-regular representation of
/// `M_N ⊗ Λ_k` on itself, as one dense matrix exponential.
pub fn heat_dense(cycle: &CycleDescriptor, r: &FredholmRealization, s: f64, t: f64) -> Result<ModelElement> {
    check_model(cycle, r)?;
    if t < 0.0 {
        return Err(Error::NegativeTime(t));
    }
    let k = cycle.k();
    let signs = SignTable::new(k);
    let n = cycle.dim();
    let d = 1usize << k;
    let mut m = GMat::from_model(cycle.eta(), None, signs.clone());
    m = scaled(&m, s);
    m.add_scaled(&GMat::from_scalar(r.h().matrix(), signs.clone()), C64::new(1.0, 0.0));
    let m2 = m.mul(&m);
    let mut big = Mat::zeros(n * d, n * d);
    for i in 0..n {
        for j in 0..n {
            let e = m2.entry(i, j);
            for sm in 0..d {
                if e[sm].re == 0.0 && e[sm].im == 0.0 {
                    continue;
                }
                for tm in 0..d {
                    if sm & tm != 0 {
                        continue;
                    }
                    let eps = shuffle_sign(sm as u32, tm as u32) as f64;
                    big[(i * d + (sm | tm), j * d + tm)] += e[sm] * (-t * eps);
                }
            }
        }
    }
    let ex = expm(&big);
    let mut out = GMat::zeros(n, signs);
    for i in 0..n {
        for j in 0..n {
            let e = out.entry_mut(i, j);
            for u in 0..d {
                e[u] = ex[(i * d + u, j * d)];
            }
        }
    }
    Ok(out.to_model(cycle.p(), cycle.q(), None))
}

/// `‖a − b‖_max / max(1, ‖b‖_max)`.
pub fn rel_diff(a: &ModelElement, b: &ModelElement) -> f64 {
    (a - b).max_abs() / b.max_abs().max(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TripleReport {
    pub n: usize,
    pub t: f64,
    /// Recurrence vs Φ of the combinatorial chain, per degree.
    pub comb_vs_recurrence: f64,
    pub left_vs_right: f64,
    /// Degree parts of the oracle at `s = 1` vs the recurrence.
    pub oracle_vs_recurrence: f64,
    pub dense_vs_oracle: f64,
}

impl TripleReport {
    pub fn max_residual(&self) -> f64 {
        self.comb_vs_recurrence.max(self.left_vs_right).max(self.oracle_vs_recurrence).max(self.dense_vs_oracle)
    }
}

/// Recurrence, combinatorial expansion and exponential compared degree by
/// degree up to `n`.
pub fn triple_agreement(n: usize, t: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<TripleReport> {
    let fm = FrameModel::new(cycle, r)?;
    let left = omega_recurrence_frame(n, t, &fm, RecurrenceSide::Left)?;
    let right = omega_recurrence_frame(n, t, &fm, RecurrenceSide::Right)?;
    let oracle = fm.to_model(&heat_oracle_frame(1.0, t, &fm, cycle.k())?);
    let dense = heat_dense(cycle, r, 1.0, t)?;
    let mut rep = TripleReport {
        n,
        t,
        comb_vs_recurrence: 0.0,
        left_vs_right: 0.0,
        oracle_vs_recurrence: 0.0,
        dense_vs_oracle: rel_diff(&dense, &oracle),
    };
    for deg in 0..=n {
        let l = fm.to_model(&left[deg]);
        let rr = fm.to_model(&right[deg]);
        rep.left_vs_right = rep.left_vs_right.max(rel_diff(&rr, &l));
        let psi = psi_chain(deg, t, &fm.spectrum, false)?;
        let phi = fm.to_model(&realize_phi(&psi, &fm));
        rep.comb_vs_recurrence = rep.comb_vs_recurrence.max(rel_diff(&phi, &l));
        let part = if deg <= cycle.k() { oracle.degree_part(deg) } else { cycle.zero() };
        rep.oracle_vs_recurrence = rep.oracle_vs_recurrence.max(rel_diff(&part, &l));
    }
    Ok(rep)
}

/// `‖H ω_n − ω_n H + ∇ω_{n−1}‖` for `n = 1..=n_top`, maximized.
pub fn commutator_residual(n_top: usize, t: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<f64> {
    let om = omega_recurrence(n_top, t, cycle, r)?;
    let h = cycle.lift(r.h());
    let mut worst: f64 = 0.0;
    for n in 1..=n_top {
        let lhs = &(&(&h * &om[n]) - &(&om[n] * &h)) + &cycle.nabla(&om[n - 1]);
        worst = worst.max(lhs.max_abs() / om[n - 1].max_abs().max(1.0));
    }
    Ok(worst)
}

/// Central difference in `t` of `Σ s^n ω_n(t)` against
/// `−(H² + s∇H + s²ω) Σ s^n ω_n(t)`, relative to the latter.
pub fn time_derivative_residual(s: f64, t: f64, h: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<f64> {
    if t - h < 0.0 {
        return Err(Error::NegativeTime(t - h));
    }
    let fm = FrameModel::new(cycle, r)?;
    let series = |tt: f64| -> Result<ModelElement> {
        let om = omega_recurrence_frame(cycle.k(), tt, &fm, RecurrenceSide::Left)?;
        let mut acc = GMat::zeros(fm.dim(), fm.signs.clone());
        for (n, g) in om.iter().enumerate() {
            acc.add_scaled(g, C64::new(s.powi(n as i32), 0.0));
        }
        Ok(fm.to_model(&acc))
    };
    let plus = series(t + h)?;
    let minus = series(t - h)?;
    let mid = series(t)?;
    let fd = (&plus - &minus).scale_re(0.5 / h);
    let hl = cycle.lift(r.h());
    let m = &hl + &cycle.eta().scale_re(s);
    let rhs = -(&(&(&m * &m) * &mid));
    Ok((&fd - &rhs).max_abs() / rhs.max_abs().max(1.0))
}

/// Realized `Φ(ψ_n(t))` as a model element.
pub fn realize_psi(n: usize, t: f64, cycle: &CycleDescriptor, r: &FredholmRealization) -> Result<ModelElement> {
    let fm = FrameModel::new(cycle, r)?;
    let psi = psi_chain(n, t, &fm.spectrum, false)?;
    Ok(fm.to_model(&realize_phi(&psi, &fm)))
}

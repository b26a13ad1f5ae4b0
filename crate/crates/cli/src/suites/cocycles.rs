//! Cyclic cocycles of a matrix-model cycle.

use std::collections::BTreeMap;

use chern_core::cycle_core::cocycle_phi_tau_lifted;
use chern_core::index_theory::{graph_projection_crossed, reference_projection};
use chern_core::random::{case_rng, even_matrix, odd_matrix, random_odd_hermitian, CaseRng};
use chern_core::{
    cocycle_phi_tau, k_pair, CrossedElement, CycleDescriptor, FredholmRealization, ModelElement, Parity, SuperMatrix,
    C64,
};
use rand::Rng;

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::ReportRecord;

const SUITE: &str = "cocycles";

fn homogeneous(rng: &mut CaseRng, p: usize, q: usize) -> (SuperMatrix, u32) {
    if rng.gen::<bool>() {
        (SuperMatrix::new(p, q, odd_matrix(rng, p, q)).expect("shape"), 1)
    } else {
        (SuperMatrix::new(p, q, even_matrix(rng, p, q)).expect("shape"), 0)
    }
}

fn sign(bits: u32) -> f64 {
    if bits.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

/// Hochschild coboundary of the degree-`(n−1)` cocycle on `a_0, …, a_n`.
fn hochschild(cycle: &CycleDescriptor, a: &[(SuperMatrix, u32)]) -> chern_core::Result<(C64, f64)> {
    let n = a.len() - 1;
    let m: Vec<SuperMatrix> = a.iter().map(|x| x.0.clone()).collect();
    let mut total = C64::new(0.0, 0.0);
    let mut scale = 0.0_f64;
    for j in 0..n {
        let mut args = m[..j].to_vec();
        args.push(&m[j] * &m[j + 1]);
        args.extend_from_slice(&m[j + 2..]);
        let v = cocycle_phi_tau(cycle, &args)?;
        scale = scale.max(v.norm());
        total += v * sign(j as u32);
    }
    let before: u32 = a[..n].iter().map(|x| x.1).sum();
    let nu = a[n].1 * before;
    let mut args = vec![&m[n] * &m[0]];
    args.extend_from_slice(&m[1..n]);
    let v = cocycle_phi_tau(cycle, &args)?;
    scale = scale.max(v.norm());
    total += v * sign(nu + n as u32);
    Ok((total, scale))
}

fn cyclic(cycle: &CycleDescriptor, a: &[(SuperMatrix, u32)]) -> chern_core::Result<(C64, f64)> {
    let n = a.len() - 1;
    let m: Vec<SuperMatrix> = a.iter().map(|x| x.0.clone()).collect();
    let before: u32 = a[..n].iter().map(|x| x.1).sum();
    let nu = a[n].1 * before;
    let mut rot = vec![m[n].clone()];
    rot.extend_from_slice(&m[..n]);
    let lhs = cocycle_phi_tau(cycle, &rot)?;
    let rhs = cocycle_phi_tau(cycle, &m)? * sign(nu + n as u32);
    Ok((lhs - rhs, lhs.norm().max(rhs.norm())))
}

/// Even element of `F_{-1}` (no θ-free component).
fn filtration_perturbation(cycle: &CycleDescriptor, rng: &mut CaseRng) -> ModelElement {
    let r = cycle.random_element(rng);
    let comps: BTreeMap<u32, _> = r.components().iter().filter(|(s, _)| **s != 0).map(|(s, m)| (*s, m.clone())).collect();
    ModelElement::from_components(cycle.p(), cycle.q(), cycle.k(), comps).parity_part(Parity::Even)
}

fn rel(v: f64, scale: f64) -> f64 {
    v / scale.max(1.0)
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-10);
    let per_case = (cfg.samples / (cfg.seeds * 10)).max(5);
    let mut out = Vec::new();
    for &(p, q) in &cfg.dims {
        if p + q > 12 {
            continue;
        }
        for s in 0..cfg.seeds {
            let seed = cfg.seed.wrapping_add(s as u64);
            let k = cfg.k;
            let label = case(&[("p", p.to_string()), ("q", q.to_string()), ("k", k.to_string()), ("seed", s.to_string())]);
            out.push(task(SUITE, "model", label.clone(), move || {
                let cycle = CycleDescriptor::random(p, q, k, seed)?;
                let mut rng = case_rng(seed, &format!("{SUITE}/{label}"));
                let (mut hoch, mut cyc, mut lift) = (0.0_f64, 0.0_f64, 0.0_f64);
                for _ in 0..per_case {
                    for n in 1..=k + 1 {
                        let a: Vec<_> = (0..=n).map(|_| homogeneous(&mut rng, p, q)).collect();
                        let (v, sc) = hochschild(&cycle, &a)?;
                        hoch = hoch.max(rel(v.norm(), sc));
                    }
                    for n in 0..=k {
                        let a: Vec<_> = (0..=n).map(|_| homogeneous(&mut rng, p, q)).collect();
                        let (v, sc) = cyclic(&cycle, &a)?;
                        cyc = cyc.max(rel(v.norm(), sc));
                        if n < k {
                            continue;
                        }
                        // τ vanishes on F_{-n-1} only from the summability degree on
                        let pert = filtration_perturbation(&cycle, &mut rng);
                        let m: Vec<SuperMatrix> = a.iter().map(|x| x.0.clone()).collect();
                        let plain = cocycle_phi_tau(&cycle, &m)?;
                        let other = cocycle_phi_tau_lifted(&cycle, &m, &|x: &SuperMatrix| {
                            let c = cycle.lift(x);
                            &c + &(&pert * &c)
                        })?;
                        lift = lift.max(rel((plain - other).norm(), plain.norm()));
                    }
                }
                let one = SuperMatrix::identity(p, q);
                let units: Vec<SuperMatrix> = (0..=k.min(2)).map(|_| one.clone()).collect();
                let phi_units = cocycle_phi_tau(&cycle, &units)?.norm();

                // conjugation invariance of the pairing
                let h = random_odd_hermitian(&mut rng, p, q);
                let e = graph_projection_crossed(&FredholmRealization::new(SuperMatrix::new(p, q, h)?)?)?;
                let mut u = even_matrix(&mut rng, p, q);
                for i in 0..p + q {
                    u[(i, i)] += C64::new(3.0, 0.0);
                }
                let u_inv = u.clone().try_inverse().ok_or_else(|| chern_core::Error::Numerical("singular".into()))?;
                let (u, u_inv) = (SuperMatrix::new(p, q, u)?, SuperMatrix::new(p, q, u_inv)?);
                let mut conj = 0.0_f64;
                for m in 0..=k / 2 {
                    let a = k_pair(&cycle, &e, m)?;
                    let b = k_pair(&cycle, &e.conjugate(&u, &u_inv), m)?;
                    conj = conj.max(rel((a - b).norm(), a.norm()));
                }
                let e0: CrossedElement = reference_projection(p, q);
                let all_even = chern_core::cocycle_psi(&cycle, &[(one.clone(), 0), (one.clone(), 0), (one.clone(), 0)][..k.min(2) + 1])?;
                let rec = |name: &str, v: f64| ReportRecord::residual(SUITE, name, label.clone(), v, tol);
                Ok(vec![
                    rec("hochschild", hoch),
                    rec("cyclic", cyc),
                    rec("lifting_independence", lift),
                    rec("phi_on_units", phi_units),
                    rec("psi_without_v", all_even.norm()),
                    rec("pairing_conjugation", conj),
                    rec("reference_idempotent", e0.idempotency_residual()),
                ])
            }));
        }
    }
    out
}

//! The X-extension of a matrix-model cycle.

use chern_core::cycle_core::{xext_d, xext_mul, xext_trace};
use chern_core::random::{case_rng, CaseRng};
use chern_core::{CycleDescriptor, ModelElement, Parity, XExtElement, C64};
use rand::Rng;

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::ReportRecord;

const SUITE: &str = "xext";

fn homogeneous(cycle: &CycleDescriptor, rng: &mut CaseRng, parity: Parity) -> XExtElement {
    let mut g = || cycle.random_element(rng);
    XExtElement::new(g(), g(), g(), g()).parity_part(parity)
}

fn random_parity(rng: &mut CaseRng) -> Parity {
    if rng.gen::<bool>() {
        Parity::Odd
    } else {
        Parity::Even
    }
}

fn diff(a: &XExtElement, b: &XExtElement) -> f64 {
    a.add(&b.scale(C64::new(-1.0, 0.0))).max_abs()
}

#[derive(Default)]
struct Worst {
    d_squared: f64,
    trace_of_d: f64,
    graded_trace: f64,
    leibniz: f64,
    associativity: f64,
    table_xx: f64,
    table_xbx: f64,
    unit: f64,
}

fn run_case(cycle: &CycleDescriptor, rng: &mut CaseRng, samples: usize) -> chern_core::Result<Worst> {
    let mut w = Worst::default();
    let z = cycle.zero();
    for _ in 0..samples {
        let (px, py) = (random_parity(rng), random_parity(rng));
        let x = homogeneous(cycle, rng, px);
        let y = homogeneous(cycle, rng, py);
        let pz = random_parity(rng);
        let zz = homogeneous(cycle, rng, pz);
        let scale = 1.0 + x.max_abs() * y.max_abs() * (1.0 + cycle.omega().max_abs());

        let dx = xext_d(cycle, &x)?;
        w.d_squared = w.d_squared.max(xext_d(cycle, &dx)?.max_abs() / (1.0 + x.max_abs()));
        w.trace_of_d = w.trace_of_d.max(xext_trace(cycle, &dx).norm() / (1.0 + x.max_abs()));

        let xy = xext_mul(cycle, &x, &y)?;
        let yx = xext_mul(cycle, &y, &x)?;
        let s = if px == Parity::Odd && py == Parity::Odd { -1.0 } else { 1.0 };
        let gt = xext_trace(cycle, &xy) - xext_trace(cycle, &yx) * s;
        w.graded_trace = w.graded_trace.max(gt.norm() / scale);

        let lhs = xext_d(cycle, &xy)?;
        let rhs = xext_mul(cycle, &dx, &y)?.add(&xext_mul(cycle, &x, &xext_d(cycle, &y)?)?.scale(C64::new(px.sign(), 0.0)));
        w.leibniz = w.leibniz.max(diff(&lhs, &rhs) / scale);

        let left = xext_mul(cycle, &xy, &zz)?;
        let right = xext_mul(cycle, &x, &xext_mul(cycle, &y, &zz)?)?;
        w.associativity = w.associativity.max(diff(&left, &right) / (scale * (1.0 + zz.max_abs())));

        // (aX)(Xb) = aωb and (aX)(bX) = 0 for carrier elements a, b
        let a = cycle.random_element(rng);
        let b = cycle.random_element(rng);
        let ax = XExtElement::new(z.clone(), a.clone(), z.clone(), z.clone());
        let xb = XExtElement::new(z.clone(), z.clone(), b.clone(), z.clone());
        let bx = XExtElement::new(z.clone(), b.clone(), z.clone(), z.clone());
        let awb: ModelElement = &(&a * cycle.omega()) * &b;
        let n = 1.0 + a.max_abs() * b.max_abs() * cycle.omega().max_abs();
        let got = xext_mul(cycle, &ax, &xb)?;
        w.table_xx = w.table_xx.max(diff(&got, &XExtElement::from_carrier(cycle, awb)) / n);
        w.table_xbx = w.table_xbx.max(xext_mul(cycle, &ax, &bx)?.max_abs() / n);
    }
    // d1 = X + X
    let d1 = xext_d(cycle, &XExtElement::from_carrier(cycle, cycle.unit()))?;
    let expect = XExtElement::new(z.clone(), cycle.unit(), cycle.unit(), z.clone());
    w.unit = diff(&d1, &expect);
    Ok(w)
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-10);
    let per_case = (cfg.samples / cfg.seeds).max(10);
    let mut out = Vec::new();
    for &(p, q) in &cfg.dims {
        if p + q > 16 {
            continue;
        }
        for s in 0..cfg.seeds {
            let seed = cfg.seed.wrapping_add(s as u64);
            let k = cfg.k;
            let label = case(&[("p", p.to_string()), ("q", q.to_string()), ("k", k.to_string()), ("seed", s.to_string())]);
            out.push(task(SUITE, "model", label.clone(), move || {
                let cycle = CycleDescriptor::random(p, q, k, seed)?;
                let mut rng = case_rng(seed, &format!("{SUITE}/{label}"));
                let w = run_case(&cycle, &mut rng, per_case)?;
                let rec = |name: &str, v: f64| ReportRecord::residual(SUITE, name, label.clone(), v, tol);
                Ok(vec![
                    rec("d_squared", w.d_squared),
                    rec("trace_of_d", w.trace_of_d),
                    rec("graded_trace", w.graded_trace),
                    rec("leibniz", w.leibniz),
                    rec("associativity", w.associativity),
                    rec("product_aX_Xb", w.table_xx),
                    rec("product_aX_bX", w.table_xbx),
                    rec("d_unit", w.unit),
                ])
            }));
        }
    }
    out
}

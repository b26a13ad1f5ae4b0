//! Heat expansion of the superconnection: recurrence, combinatorial sum and
//! exponential oracles.

use chern_core::heat_kernel::{commutator_residual, heat_oracle, omega_recurrence, time_derivative_residual, triple_agreement};
use chern_core::heat_kernel::expansion::rel_diff;
use chern_core::random::{case_rng, random_matrix};
use chern_core::super_algebra::functional_calculus;
use chern_core::{CycleDescriptor, FredholmRealization, Mat, SmoothFunction, C64};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::ReportRecord;

const SUITE: &str = "heat";

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-8);
    let mut ks = vec![cfg.k, 4];
    ks.sort_unstable();
    ks.dedup();
    let mut out = Vec::new();
    for &(p, q) in cfg.dims.iter().filter(|(p, q)| p + q <= 8) {
        for &k in ks.iter().filter(|&&k| k <= 4) {
            for s in 0..cfg.seeds {
                let seed = cfg.seed.wrapping_add(s as u64);
                let t = cfg.t_grid[s % cfg.t_grid.len()];
                let sv = cfg.s_grid[s % cfg.s_grid.len()];
                let n = cfg.n_max.min(4);
                let label = case(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("k", k.to_string()),
                    ("seed", s.to_string()),
                    ("t", t.to_string()),
                ]);
                out.push(task(SUITE, "expansion", label.clone(), move || {
                    let cycle = CycleDescriptor::random(p, q, k, seed)?;
                    let mut rng = case_rng(seed, &format!("{SUITE}/{label}"));
                    let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
                    let tri = triple_agreement(n, t, &cycle, &r)?;
                    let rec = |name: &str, c: &str, v: f64, tl: f64| ReportRecord::residual(SUITE, name, c.to_string(), v, tl);
                    let mut recs = vec![
                        rec("comb_vs_recurrence", &label, tri.comb_vs_recurrence, tol),
                        rec("left_vs_right", &label, tri.left_vs_right, tol),
                        rec("oracle_vs_recurrence", &label, tri.oracle_vs_recurrence, tol),
                        rec("dense_vs_oracle", &label, tri.dense_vs_oracle, tol),
                    ];
                    let c = format!("{label};s={sv}");
                    recs.push(rec("time_derivative", &c, time_derivative_residual(sv, t, 1e-4, &cycle, &r)?, 1e-6));
                    recs.push(rec("commutator", &label, commutator_residual(k, t, &cycle, &r)?, 1e-9));
                    let at_zero = omega_recurrence(n, 0.0, &cycle, &r)?;
                    let z = at_zero[1..].iter().map(|w| w.max_abs()).fold(0.0, f64::max);
                    recs.push(rec("omega_at_time_zero", &label, z, 1e-14));
                    let plain = cycle.lift(&functional_calculus(&SmoothFunction::gaussian(t), r.h())?);
                    recs.push(rec("oracle_without_connection", &label, rel_diff(&heat_oracle(&cycle, &r, 0.0, t)?, &plain), 1e-12));
                    Ok(recs)
                }));
            }
        }
    }
    for &t in &cfg.t_grid {
        let k = cfg.k.max(2);
        let seed = cfg.seed;
        let label = case(&[("p", "2".into()), ("q", "2".into()), ("k", k.to_string()), ("t", t.to_string())]);
        out.push(task(SUITE, "scalar_square", label.clone(), move || {
            // H² = c²·1, so ω₁(t) = −t ∇H e^{−tc²}
            let c = 1.3;
            let r = FredholmRealization::from_block(&(Mat::identity(2, 2) * C64::new(c, 0.0)));
            let cycle = CycleDescriptor::random(2, 2, k, seed)?;
            let om = omega_recurrence(1, t, &cycle, &r)?;
            let expect = cycle.nabla(&cycle.lift(r.h())).scale_re(-t * (-t * c * c).exp());
            Ok(vec![ReportRecord::residual(SUITE, "scalar_square", label, rel_diff(&om[1], &expect), 1e-12)])
        }));
    }
    out
}

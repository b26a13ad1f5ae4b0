//! Divided-difference coefficients against quadrature and closed forms.

use chern_core::heat_kernel::duhamel_coeff;
use chern_core::quad::simplex_exponential_integral;
use chern_core::random::case_rng;
use rand::seq::SliceRandom;
use rand::Rng;

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::{Mode, ReportRecord};

const SUITE: &str = "duhamel";

fn factorial(n: usize) -> f64 {
    (1..=n).map(|j| j as f64).product()
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-10);
    let mut out = Vec::new();
    for n in 0..=3usize {
        for &t in &cfg.t_grid {
            for clustered in [false, true] {
                let label = case(&[("n", n.to_string()), ("t", t.to_string()), ("clustered", clustered.to_string())]);
                let (seed, samples) = (cfg.seed, (cfg.samples / 25).max(4));
                out.push(task(SUITE, "quadrature", label.clone(), move || {
                    let mut rng = case_rng(seed, &format!("{SUITE}/{label}"));
                    let (mut quad, mut sym) = (0.0_f64, 0.0_f64);
                    for _ in 0..samples {
                        let nodes: Vec<f64> = if clustered {
                            let base = rng.gen_range(0.0..4.0);
                            (0..=n).map(|j| base + 1e-8 * j as f64).collect()
                        } else {
                            (0..=n).map(|_| rng.gen_range(0.0..4.0)).collect()
                        };
                        let e = duhamel_coeff(&nodes, t)?;
                        let q = simplex_exponential_integral(&nodes, t, 1e-14);
                        quad = quad.max((e - q).abs());
                        let mut perm = nodes.clone();
                        perm.shuffle(&mut rng);
                        sym = sym.max((duhamel_coeff(&perm, t)? - e).abs());
                    }
                    Ok(vec![
                        ReportRecord::residual(SUITE, "quadrature", label.clone(), quad, tol),
                        ReportRecord::residual(SUITE, "symmetry", label, sym, 1e-13),
                    ])
                }));
            }
        }
    }
    let t_grid = cfg.t_grid.clone();
    out.push(task(SUITE, "closed_forms", "closed_forms".into(), move || {
        let mut recs = Vec::new();
        for t in t_grid {
            for mu in [0.0, 0.5, 2.0] {
                for n in 0..=3 {
                    let c = case(&[("n", n.to_string()), ("t", t.to_string()), ("mu", mu.to_string())]);
                    let v = duhamel_coeff(&vec![mu; n + 1], t)?;
                    let expect = t.powi(n as i32) / factorial(n) * (-t * mu).exp();
                    recs.push(ReportRecord::new(SUITE, "confluent", c, v, expect, 1e-13, Mode::Abs));
                }
                let c = case(&[("t", t.to_string()), ("mu", mu.to_string())]);
                let nu = mu + 1.0;
                let v = duhamel_coeff(&[mu, nu], t)?;
                let expect = ((-t * mu).exp() - (-t * nu).exp()) / (nu - mu);
                recs.push(ReportRecord::new(SUITE, "two_nodes", c, v, expect, 1e-13, Mode::Abs));
            }
        }
        Ok(recs)
    }));
    out
}

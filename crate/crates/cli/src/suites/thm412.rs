//! Boundary and cyclic-norm identities of the heat chains.

use chern_core::heat_kernel::verify_thm412;
use chern_core::random::{case_rng, random_matrix};
use chern_core::{CycleDescriptor, FredholmRealization};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::ReportRecord;

const SUITE: &str = "thm412";

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-8);
    let dims: Vec<(usize, usize)> = cfg.dims.iter().copied().filter(|(p, q)| p + q <= 6).collect();
    let mut out = Vec::new();
    for s in 0..cfg.seeds {
        let (p, q) = dims.get(s % dims.len().max(1)).copied().unwrap_or((2, 1));
        let seed = cfg.seed.wrapping_add(s as u64);
        for &t in &cfg.t_grid {
            for n in 0..=2usize {
                let label = case(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("n", n.to_string()),
                    ("t", t.to_string()),
                    ("seed", s.to_string()),
                ]);
                out.push(task(SUITE, "chains", label.clone(), move || {
                    let mut rng = case_rng(seed, &format!("{SUITE}/{label}"));
                    let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
                    let cycle = CycleDescriptor::random(p, q, 0, seed)?;
                    let rep = verify_thm412(n, t, &cycle, &r)?;
                    let rec = |name: &str, v: f64| ReportRecord::residual(SUITE, name, label.clone(), v, tol);
                    Ok(vec![
                        rec("boundary", rep.boundary_residual),
                        rec("cyclic_norm", rep.norm_residual),
                        rec("independence_of_m", rep.zeta_spread),
                        rec("tilde_decomposition", rep.tilde_decomposition_residual),
                    ])
                }));
            }
        }
    }
    out
}

//! Polynomial dependence of the superconnection character on `st` and its
//! top coefficient.

use chern_core::heat_kernel::main_theorem::REL_ERROR_FLOOR;
use chern_core::heat_kernel::{default_samples, verify_main};
use chern_core::random::{case_rng, random_matrix};
use chern_core::{CycleDescriptor, FredholmRealization};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::{Mode, ReportRecord};

const SUITE: &str = "main";

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-6);
    let mut out = Vec::new();
    for &(p, q) in cfg.dims.iter().filter(|(p, q)| p + q <= 6) {
        for s in 0..cfg.seeds {
            let seed = cfg.seed.wrapping_add(s as u64);
            for k in [0usize, 2] {
                let label = case(&[("p", p.to_string()), ("q", q.to_string()), ("k", k.to_string()), ("seed", s.to_string())]);
                out.push(task(SUITE, "fit", label.clone(), move || {
                    let mut rng = case_rng(seed, &format!("{SUITE}/{p}x{q}/{s}"));
                    let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
                    let cycle = CycleDescriptor::random(p, q, k, seed)?;
                    let rep = verify_main(&cycle, &r, &default_samples(k / 2))?;
                    let scale = rep.reference[0].hypot(rep.reference[1]).max(REL_ERROR_FLOOR);
                    let mut recs = vec![
                        ReportRecord::new(SUITE, "top_coefficient", label.clone(), rep.top[0], rep.reference[0], tol * scale, Mode::Abs),
                        ReportRecord::residual(SUITE, "top_coefficient_imag", label.clone(), (rep.top[1] - rep.reference[1]).abs(), tol * scale),
                    ];
                    if k > 0 {
                        recs.push(ReportRecord::residual(SUITE, "lower_coefficients", label, rep.lower_max, 1e-8));
                    }
                    Ok(recs)
                }));
            }
        }
    }
    out
}

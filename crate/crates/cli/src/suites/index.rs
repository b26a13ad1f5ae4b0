//! Graph projections, McKean–Singer and the degree-zero pairing.

use chern_core::cycle_core::k_pair_difference;
use chern_core::index_theory::{analytic_index, graph_projection, graph_projection_crossed, mckean_singer, reference_projection};
use chern_core::random::{case_rng, random_matrix};
use chern_core::{CycleDescriptor, FredholmRealization, Mat};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::{Mode, ReportRecord};

const SUITE: &str = "index";

/// `q×p` block of rank at most `rank`.
fn block(seed: u64, label: &str, p: usize, q: usize, rank: usize) -> Mat {
    let mut rng = case_rng(seed, label);
    let a = random_matrix(&mut rng, q, rank);
    let b = random_matrix(&mut rng, rank, p);
    a * b
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol_idem = cfg.tol(SUITE, 1e-10);
    let mut dims = cfg.dims.clone();
    dims.extend([(20, 20), (25, 15)]);
    let mut out = Vec::new();
    for (p, q) in dims {
        for s in 0..cfg.seeds {
            let seed = cfg.seed.wrapping_add(s as u64);
            let full = p.min(q);
            for rank in [full, full.saturating_sub(1)] {
                let label = case(&[
                    ("p", p.to_string()),
                    ("q", q.to_string()),
                    ("rank", rank.to_string()),
                    ("seed", s.to_string()),
                ]);
                let s_grid = cfg.s_grid.clone();
                out.push(task(SUITE, "realization", label.clone(), move || {
                    let r = FredholmRealization::from_block(&block(seed, &label, p, q, rank));
                    let index = analytic_index(&r.block())?;
                    let expect = p as i64 - rank as i64 - (q as i64 - rank as i64);
                    let mut recs = vec![ReportRecord::new(SUITE, "analytic_index", label.clone(), index as f64, expect as f64, 0.0, Mode::Abs)];
                    let gp = graph_projection(&r)?;
                    let idem = (&(&gp * &gp) - &gp).max_abs();
                    recs.push(ReportRecord::residual(SUITE, "graph_idempotent", label.clone(), idem, tol_idem));
                    for t in [0.1, 1.0, 10.0] {
                        let ms = mckean_singer(&r, t)?;
                        let c = format!("{label};t={t}");
                        recs.push(ReportRecord::new(SUITE, "mckean_singer", c.clone(), ms.re, index as f64, 1e-8, Mode::Abs));
                        recs.push(ReportRecord::residual(SUITE, "mckean_singer_imag", c, ms.im.abs(), 1e-8));
                    }
                    if p + q <= 16 {
                        let cycle = CycleDescriptor::random(p, q, 0, seed)?;
                        let e0 = reference_projection(p, q);
                        for sc in s_grid.iter().copied().filter(|&x| x != 0.0) {
                            let e = graph_projection_crossed(&r.scaled(sc))?;
                            let v = k_pair_difference(&cycle, &e0, &e, 0)?;
                            let c = format!("{label};s={sc}");
                            recs.push(ReportRecord::new(SUITE, "pairing_degree_zero", c.clone(), v.re, index as f64, 1e-9, Mode::Abs));
                        }
                    }
                    Ok(recs)
                }));
            }
        }
    }
    out
}

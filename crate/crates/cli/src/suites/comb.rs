//! Exhaustive checks on the index classes `(K, σ)`.

use std::collections::BTreeSet;

use chern_core::heat_kernel::comb::{l_of, m_of, nu, s_n};
use chern_core::heat_kernel::{check_class_map, enumerate_classes, CombClass};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::{Mode, ReportRecord};

const SUITE: &str = "comb";

fn count(suite_check: &str, label: String, failures: usize) -> ReportRecord {
    ReportRecord::new(SUITE, suite_check, label, failures as f64, 0.0, 0.0, Mode::Abs)
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let mut out: Vec<Task> = Vec::new();
    for n in 0..=cfg.comb_max {
        let label = case(&[("n", n.to_string())]);
        out.push(task(SUITE, "m_of_k", label.clone(), move || {
            let bad_k = s_n(n).iter().filter(|k| m_of(k, n) != l_of(k).len() as i64).count();
            let bad_i = enumerate_classes(n)
                .iter()
                .filter(|c| c.exponent_sum() as i64 != m_of(&c.k, n))
                .count();
            Ok(vec![count("m_of_k_equals_l", label.clone(), bad_k), count("exponent_sum", label, bad_i)])
        }));
    }
    for n in 0..=cfg.comb_max.min(8) {
        let label = case(&[("n", n.to_string())]);
        out.push(task(SUITE, "class_map", label.clone(), move || {
            let r = check_class_map(n);
            Ok(vec![
                count("class_map_parity", label.clone(), r.parity_failures),
                count("class_map_injective", label.clone(), r.injectivity_failures),
                count("class_map_solvable", label, r.solvability_failures),
            ])
        }));
    }
    out.push(task(SUITE, "examples", "examples".into(), || {
        let c2 = enumerate_classes(2);
        let got: BTreeSet<(Vec<usize>, Vec<u32>)> = c2.iter().map(|c| (c.k.clone(), c.exponents.clone())).collect();
        let want: BTreeSet<(Vec<usize>, Vec<u32>)> = [
            (vec![0, 1, 2], vec![1, 1, 0]),
            (vec![0, 1, 2], vec![1, 0, 1]),
            (vec![0, 1, 2], vec![0, 2, 0]),
            (vec![0, 1, 2], vec![0, 1, 1]),
            (vec![0, 2], vec![0, 0, 0]),
        ]
        .into_iter()
        .collect();
        let worked = CombClass::new(7, vec![0, 1, 3, 4, 5, 6, 7], &[false, true, true, false, true]);
        Ok(vec![
            ReportRecord::new(SUITE, "c2_count", "n=2".into(), c2.len() as f64, 5.0, 0.0, Mode::Abs),
            ReportRecord::flag(SUITE, "c2_patterns", "n=2".into(), got == want),
            ReportRecord::flag(
                SUITE,
                "worked_example",
                "n=7".into(),
                worked.exponents == [1, 0, 0, 0, 1, 2, 0, 1] && l_of(&worked.k) == [0, 3, 4, 5, 6],
            ),
            ReportRecord::new(SUITE, "nu_01", "n=1".into(), nu(&[0, 1], 1) as f64, 2.0, 0.0, Mode::Abs),
        ])
    }));
    out
}

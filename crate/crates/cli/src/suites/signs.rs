//! Sign calculus of the universal algebra and Hochschild chains.

use chern_core::random::{case_rng, generators, random_chain, random_form, random_word, CaseRng};
use chern_core::universal_forms::{
    boundary, cyclic_norm, cyclic_t, form_d, form_mul, graded_commutator, phi_map, BoundaryVariant, Chain, Form, Gen,
    Word,
};
use chern_core::{Parity, C64};

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::ReportRecord;

const SUITE: &str = "signs";

type Check = fn(&mut CaseRng, usize, &[Gen]) -> chern_core::Result<f64>;

fn b_squared(rng: &mut CaseRng, n: usize, gens: &[Gen], v: BoundaryVariant) -> chern_core::Result<f64> {
    let n = n.max(2);
    let c = random_chain(rng, n, 3, gens);
    Ok(boundary(&boundary(&c, v)?, v)?.max_coeff())
}

fn checks() -> Vec<(&'static str, Check)> {
    vec![
        ("b_squared_graded", |r, n, g| b_squared(r, n, g, BoundaryVariant::Graded)),
        ("b_squared_ev", |r, n, g| b_squared(r, n, g, BoundaryVariant::Ev)),
        ("t_power_identity", |r, n, g| {
            let c = random_chain(r, n, 3, g);
            let mut cur = c.clone();
            for _ in 0..=n {
                cur = cyclic_t(&cur);
            }
            Ok(cur.add(&c.scale(C64::new(-1.0, 0.0))).max_coeff())
        }),
        ("norm_kills_one_minus_t", |r, n, g| {
            let c = random_chain(r, n, 3, g);
            let diff = c.add(&cyclic_t(&c).scale(C64::new(-1.0, 0.0)));
            Ok(cyclic_norm(&diff).max_coeff())
        }),
        ("d_squared", |r, n, g| Ok(form_d(&form_d(&random_form(r, n, 3, g))).max_coeff())),
        ("leibniz", |r, n, g| {
            let x = random_form(r, n, 3, g);
            let y = random_form(r, n, 3, g);
            let mut res = Form::zero();
            for px in [Parity::Even, Parity::Odd] {
                let xh = x.parity_part(px);
                let lhs = form_d(&form_mul(&xh, &y));
                let rhs = form_mul(&form_d(&xh), &y).add(&form_mul(&xh, &form_d(&y)).scale(C64::new(px.sign(), 0.0)));
                res = res.add(&lhs.sub(&rhs));
            }
            Ok(res.max_coeff())
        }),
        ("associativity", |r, n, g| {
            let x = random_form(r, n, 2, g);
            let y = random_form(r, n, 2, g);
            let z = random_form(r, n, 2, g);
            Ok(form_mul(&form_mul(&x, &y), &z).sub(&form_mul(&x, &form_mul(&y, &z))).max_coeff())
        }),
        ("phi_boundary_commutator", |r, n, g| {
            // Φ(b(a0⊗…⊗an)) = (−1)^{n−1} [Φ(a0⊗…⊗a_{n−1}), a_n]
            let factors: Vec<Word> = (0..=n).map(|_| random_word(r, g, 2)).collect();
            let c = Chain::single(C64::new(1.0, 0.0), factors.clone())?;
            let head = Chain::single(C64::new(1.0, 0.0), factors[..n].to_vec())?;
            let lhs = phi_map(&boundary(&c, BoundaryVariant::Graded)?);
            let s = if (n - 1) % 2 == 0 { 1.0 } else { -1.0 };
            let rhs = graded_commutator(&phi_map(&head), &Form::from_word(factors[n].clone())).scale(C64::new(s, 0.0));
            Ok(lhs.sub(&rhs).max_coeff())
        }),
    ]
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-12);
    let n_top = cfg.n_max.clamp(1, 5);
    let samples = cfg.samples;
    let seed = cfg.seed;
    checks()
        .into_iter()
        .map(|(name, f)| {
            let label = case(&[("instances", samples.to_string()), ("n_max", n_top.to_string())]);
            task(SUITE, name, label.clone(), move || {
                let gens = generators(4, 2);
                let mut rng = case_rng(seed, &format!("{SUITE}/{name}"));
                let mut worst = 0.0_f64;
                for i in 0..samples {
                    let n = 1 + i % n_top;
                    worst = worst.max(f(&mut rng, n, &gens)?);
                }
                Ok(vec![ReportRecord::residual(SUITE, name, label, worst, tol)])
            })
        })
        .collect()
}

//! Algebraic invariants on random inputs.

use chern_core::cycle_core::{direct_sum, matrix_model_build, xext_d};
use chern_core::heat_kernel::{duhamel_coeff, enumerate_classes, omega_recurrence, SpectralChain, Spectrum};
use chern_core::heat_kernel::comb::m_of;
use chern_core::index_theory::graph_projection_crossed;
use chern_core::random::{case_rng, even_matrix, generators, random_chain, random_form, random_hermitian, random_matrix};
use chern_core::super_algebra::{functional_calculus, supertrace, FunctionParity, DecayClass};
use chern_core::universal_forms::{boundary, cyclic_t, form_d, BoundaryVariant};
use chern_core::{k_pair, CrossedElement, CycleDescriptor, FredholmRealization, ModelElement, SmoothFunction, SuperMatrix, XExtElement};
use proptest::prelude::*;

fn small_dims() -> impl Strategy<Value = (usize, usize)> {
    (1usize..=3, 1usize..=3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn model_product_is_associative(seed in any::<u64>(), (p, q) in small_dims()) {
        let cycle = CycleDescriptor::random(p, q, 2, seed).unwrap();
        let mut rng = case_rng(seed, "assoc");
        let a = cycle.random_element(&mut rng);
        let b = cycle.random_element(&mut rng);
        let c = cycle.random_element(&mut rng);
        let lhs = &(&a * &b) * &c;
        let rhs = &a * &(&b * &c);
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn alpha_is_multiplicative(seed in any::<u64>(), (p, q) in small_dims()) {
        let cycle = CycleDescriptor::random(p, q, 2, seed).unwrap();
        let mut rng = case_rng(seed, "alpha");
        let a = cycle.random_element(&mut rng);
        let b = cycle.random_element(&mut rng);
        let lhs = (&a * &b).alpha();
        let rhs = &a.alpha() * &b.alpha();
        prop_assert!((&lhs - &rhs).max_abs() <= 1e-12 * (1.0 + lhs.max_abs()));
    }

    #[test]
    fn supertrace_vanishes_on_graded_commutators(seed in any::<u64>(), (p, q) in small_dims(), odd_a in any::<bool>(), odd_b in any::<bool>()) {
        let mut rng = case_rng(seed, "str");
        let mk = |rng: &mut _, odd: bool| {
            let m = if odd { chern_core::random::odd_matrix(rng, p, q) } else { even_matrix(rng, p, q) };
            SuperMatrix::new(p, q, m).unwrap()
        };
        let a = mk(&mut rng, odd_a);
        let b = mk(&mut rng, odd_b);
        let s = if odd_a && odd_b { -1.0 } else { 1.0 };
        let comm = supertrace(&(&a * &b)) - supertrace(&(&b * &a)) * s;
        prop_assert!(comm.norm() <= 1e-11 * (1.0 + a.max_abs() * b.max_abs()));
    }

    #[test]
    fn functional_calculus_is_multiplicative(seed in any::<u64>(), n in 1usize..=5, t in 0.05f64..2.0) {
        let mut rng = case_rng(seed, "fc");
        let h = SuperMatrix::new(n, 0, random_hermitian(&mut rng, n)).unwrap();
        let f = SmoothFunction::gaussian(t);
        let g = SmoothFunction::real(|x| x.cos(), FunctionParity::Even, DecayClass::PolynomialSymbol);
        let fg = functional_calculus(&f.mul(&g), &h).unwrap();
        let prod = &functional_calculus(&f, &h).unwrap() * &functional_calculus(&g, &h).unwrap();
        prop_assert!((&fg - &prod).max_abs() <= 1e-11);
    }

    #[test]
    fn duhamel_is_symmetric_and_bounded(nodes in prop::collection::vec(0.0f64..5.0, 1..=5), t in 0.0f64..3.0) {
        let e = duhamel_coeff(&nodes, t).unwrap();
        let mut rev = nodes.clone();
        rev.reverse();
        prop_assert!((duhamel_coeff(&rev, t).unwrap() - e).abs() <= 1e-13 * (1.0 + e.abs()));
        let n = nodes.len() - 1;
        let lo = nodes.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = nodes.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let vol = t.powi(n as i32) / (1..=n).map(|j| j as f64).product::<f64>();
        prop_assert!(e >= vol * (-t * hi).exp() * (1.0 - 1e-12) - 1e-300);
        prop_assert!(e <= vol * (-t * lo).exp() * (1.0 + 1e-12) + 1e-300);
    }

    #[test]
    fn hochschild_boundary_squares_to_zero(seed in any::<u64>(), n in 2usize..=5, ev in any::<bool>()) {
        let mut rng = case_rng(seed, "bb");
        let gens = generators(4, 2);
        let c = random_chain(&mut rng, n, 4, &gens);
        let v = if ev { BoundaryVariant::Ev } else { BoundaryVariant::Graded };
        prop_assert!(boundary(&boundary(&c, v).unwrap(), v).unwrap().is_zero());
    }

    #[test]
    fn cyclic_operator_has_order_n_plus_one(seed in any::<u64>(), n in 0usize..=5) {
        let mut rng = case_rng(seed, "t");
        let c = random_chain(&mut rng, n, 4, &generators(4, 2));
        let mut cur = c.clone();
        for _ in 0..=n {
            cur = cyclic_t(&cur);
        }
        prop_assert_eq!(cur, c);
    }

    #[test]
    fn universal_differential_squares_to_zero(seed in any::<u64>(), deg in 0usize..=4) {
        let mut rng = case_rng(seed, "dd");
        let x = random_form(&mut rng, deg, 4, &generators(3, 1));
        prop_assert!(form_d(&form_d(&x)).is_zero());
    }

    #[test]
    fn xext_differential_squares_to_zero(seed in any::<u64>(), (p, q) in small_dims()) {
        let cycle = CycleDescriptor::random(p, q, 2, seed).unwrap();
        let mut rng = case_rng(seed, "xdd");
        let mut g = || cycle.random_element(&mut rng);
        let x = XExtElement::new(g(), g(), g(), g());
        let dd = xext_d(&cycle, &xext_d(&cycle, &x).unwrap()).unwrap();
        prop_assert!(dd.max_abs() <= 1e-11 * (1.0 + x.max_abs()));
    }

    #[test]
    fn spectral_boundary_squares_to_zero(xs in prop::collection::vec(-2.0f64..2.0, 1..=3), n in 2usize..=3, seed in any::<u64>()) {
        let sp = Spectrum::symmetric(&xs);
        let mut rng = case_rng(seed, "sb");
        let c = SpectralChain::from_fn(n, &sp, |_| chern_core::random::normal(&mut rng));
        let bb = c.b_grad().unwrap().b_grad().unwrap();
        prop_assert!(bb.max_abs() <= 1e-12 * (1.0 + c.max_abs()));
        let mut cur = c.clone();
        for _ in 0..=n {
            cur = cur.cyclic_t();
        }
        prop_assert!(cur.add(&c.scale(-1.0)).unwrap().max_abs() <= 1e-12 * (1.0 + c.max_abs()));
    }

    #[test]
    fn pairing_is_additive_over_direct_sums(seed in any::<u64>(), (p, q) in small_dims(), (p2, q2) in small_dims()) {
        let a = CycleDescriptor::random(p, q, 2, seed).unwrap();
        let b = CycleDescriptor::random(p2, q2, 2, seed ^ 1).unwrap();
        let gens: Vec<SuperMatrix> = a.generators().iter().zip(b.generators()).map(|(x, y)| direct_sum(x, y)).collect();
        let ab = matrix_model_build(p + p2, q + q2, 2, gens, seed).unwrap();
        let mut rng = case_rng(seed, "sum");
        let ea = graph_projection_crossed(&FredholmRealization::from_block(&random_matrix(&mut rng, q, p))).unwrap();
        let eb = graph_projection_crossed(&FredholmRealization::from_block(&random_matrix(&mut rng, q2, p2))).unwrap();
        let e = CrossedElement::new(direct_sum(&ea.x, &eb.x), direct_sum(&ea.y, &eb.y));
        for m in 0..=1 {
            let lhs = k_pair(&ab, &e, m).unwrap();
            let rhs = k_pair(&a, &ea, m).unwrap() + k_pair(&b, &eb, m).unwrap();
            prop_assert!((lhs - rhs).norm() <= 1e-9 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn recurrence_vanishes_at_time_zero(seed in any::<u64>(), (p, q) in small_dims()) {
        let cycle = CycleDescriptor::random(p, q, 2, seed).unwrap();
        let mut rng = case_rng(seed, "w0");
        let r = FredholmRealization::from_block(&random_matrix(&mut rng, q, p));
        let om = omega_recurrence(3, 0.0, &cycle, &r).unwrap();
        prop_assert!((&om[0] - &cycle.unit()).max_abs() <= 1e-12);
        for w in &om[1..] {
            prop_assert!(w.max_abs() <= 1e-14);
        }
    }
}

#[test]
fn exponent_sums_match_m_of_k() {
    for n in 0..=8 {
        for c in enumerate_classes(n) {
            assert_eq!(c.exponent_sum() as i64, m_of(&c.k, n), "n={n} K={:?}", c.k);
        }
    }
}

#[test]
fn constant_lift_is_multiplicative() {
    let cycle = CycleDescriptor::random(2, 2, 2, 3).unwrap();
    let mut rng = case_rng(3, "lift");
    let a = SuperMatrix::new(2, 2, random_matrix(&mut rng, 4, 4)).unwrap();
    let b = SuperMatrix::new(2, 2, random_matrix(&mut rng, 4, 4)).unwrap();
    let lhs = cycle.lift(&(&a * &b));
    let rhs: ModelElement = &cycle.lift(&a) * &cycle.lift(&b);
    assert!((&lhs - &rhs).max_abs() < 1e-12);
}

//! Worked examples across the modules, with independently computed
//! reference values.

use chern_core::cycle_core::{matrix_model_build, xext_mul};
use chern_core::heat_kernel::{
    chi_realized, duhamel_coeff, heat_oracle, omega_recurrence, psi_chain, verify_main, verify_thm412, CombClass,
    DuhamelCache, Spectrum,
};
use chern_core::index_theory::mckean_singer;
use chern_core::random::{case_rng, even_matrix, odd_matrix, random_hermitian, random_matrix};
use chern_core::sphere_chern::{bott, chern_number, constant_projection, validate_moments, verify_sphere_example};
use chern_core::super_algebra::functional_calculus;
use chern_core::universal_forms::{boundary, graded_commutator, phi_map, realize_form, BoundaryVariant, Chain, Form, Gen, Word};
use chern_core::{CycleDescriptor, FredholmRealization, Mat, ModelElement, SmoothFunction, SuperMatrix, C64};
use std::f64::consts::PI;

/// `e^A` by scaling, a 30-term Taylor series and squaring.
fn taylor_expm(a: &Mat) -> Mat {
    let norm = a.iter().map(|z| z.norm()).sum::<f64>();
    let s = (norm.max(1.0).log2().ceil() as i32 + 1).max(0);
    let b = a / C64::new(2f64.powi(s), 0.0);
    let n = a.nrows();
    let mut term = Mat::identity(n, n);
    let mut acc = Mat::identity(n, n);
    for j in 1..30 {
        term = &term * &b / C64::new(j as f64, 0.0);
        acc += &term;
    }
    for _ in 0..s {
        acc = &acc * &acc;
    }
    acc
}

#[test]
fn heat_operator_matches_taylor_oracle() {
    let mut rng = case_rng(7, "taylor");
    let h = random_hermitian(&mut rng, 6);
    let fh = functional_calculus(&SmoothFunction::gaussian(1.0), &SuperMatrix::new(6, 0, h.clone()).unwrap()).unwrap();
    let want = taylor_expm(&(-(&h * &h)));
    let err = (fh.matrix() - &want).iter().map(|z| z.norm()).fold(0.0, f64::max);
    assert!(err < 1e-10, "{err}");
}

#[test]
fn xext_product_is_associative() {
    let cycle = CycleDescriptor::random(2, 1, 2, 31).unwrap();
    let mut rng = case_rng(31, "xassoc");
    let mut g = || cycle.random_element(&mut rng);
    for _ in 0..20 {
        let x = chern_core::XExtElement::new(g(), g(), g(), g());
        let y = chern_core::XExtElement::new(g(), g(), g(), g());
        let z = chern_core::XExtElement::new(g(), g(), g(), g());
        let l = xext_mul(&cycle, &xext_mul(&cycle, &x, &y).unwrap(), &z).unwrap();
        let r = xext_mul(&cycle, &x, &xext_mul(&cycle, &y, &z).unwrap()).unwrap();
        let d = l.add(&r.scale(C64::new(-1.0, 0.0))).max_abs();
        assert!(d <= 1e-12 * (1.0 + l.max_abs()), "{d}");
    }
}

#[test]
fn realized_phi_of_boundary_is_a_commutator() {
    let (p, q, k) = (2, 2, 2);
    let cycle = CycleDescriptor::random(p, q, k, 5).unwrap();
    let mut rng = case_rng(5, "realize");
    let images: Vec<ModelElement> = (0..3)
        .map(|i| {
            let m = if i == 0 { odd_matrix(&mut rng, p, q) } else { even_matrix(&mut rng, p, q) };
            cycle.lift(&SuperMatrix::new(p, q, m).unwrap())
        })
        .collect();
    let rho = |g: Gen| images[g.id as usize].clone();
    let gens: Vec<Gen> = (0..3).map(|i| Gen::new(i, i == 0)).collect();
    let factors = vec![Word::gen(gens[1]), Word::gen(gens[0]), Word::gen(gens[2])];
    let c = Chain::single(C64::new(1.0, 0.0), factors.clone()).unwrap();
    let head = Chain::single(C64::new(1.0, 0.0), factors[..2].to_vec()).unwrap();
    let lhs = realize_form(&phi_map(&boundary(&c, BoundaryVariant::Graded).unwrap()), &cycle, &rho).unwrap();
    let comm = graded_commutator(&phi_map(&head), &Form::from_word(factors[2].clone())).scale(C64::new(-1.0, 0.0));
    let rhs = realize_form(&comm, &cycle, &rho).unwrap();
    let d = lhs.add(&rhs.scale(C64::new(-1.0, 0.0))).max_abs();
    assert!(d < 1e-10, "{d}");
}

#[test]
fn chi_of_first_class() {
    let sp = Spectrum::symmetric(&[0.7, 1.9]);
    let t = 0.8;
    let mut cache = DuhamelCache::new(sp.mu.clone(), t).unwrap();
    let cls = CombClass::new(1, vec![0, 1], &[false]);
    assert_eq!(cls.exponents, vec![1, 0]);
    assert_eq!(cls.sign(), 1.0);
    let chi = chi_realized(&cls, t, &sp, false, &mut cache);
    for a in 0..sp.dim() {
        for b in 0..sp.dim() {
            let want = duhamel_coeff(&[sp.lambda[a].powi(2), sp.lambda[b].powi(2)], t).unwrap() * sp.lambda[a];
            assert!((chi.get(&[a, b]) - want).abs() < 1e-14);
        }
    }
}

#[test]
fn zero_operator_leaves_curvature_terms() {
    // H = 0: every class carrying a power of H vanishes
    let sp = Spectrum::symmetric(&[0.0, 0.0]);
    let t = 1.3;
    let psi1 = psi_chain(1, t, &sp, false).unwrap();
    assert_eq!(psi1.max_abs(), 0.0);
    let psi2 = psi_chain(2, t, &sp, false).unwrap();
    // only K = {0, 2} survives, with coefficient t (its ν is odd)
    for v in psi2.values() {
        assert!((v + t).abs() < 1e-14, "{v}");
    }
}

#[test]
fn scalar_square_recurrence() {
    let c = 0.9;
    let t = 1.1;
    let r = FredholmRealization::from_block(&(Mat::identity(3, 3) * C64::new(c, 0.0)));
    let cycle = CycleDescriptor::random(3, 3, 2, 9).unwrap();
    let om = omega_recurrence(1, t, &cycle, &r).unwrap();
    let want = cycle.nabla(&cycle.lift(r.h())).scale_re(-t * (-t * c * c).exp());
    assert!((&om[1] - &want).max_abs() < 1e-12);
}

#[test]
fn oracle_degenerate_parameters() {
    let cycle = CycleDescriptor::random(2, 1, 2, 4).unwrap();
    let mut rng = case_rng(4, "oracle");
    let r = FredholmRealization::from_block(&random_matrix(&mut rng, 1, 2));
    let heat = functional_calculus(&SmoothFunction::gaussian(0.6), r.h()).unwrap();
    assert!((&heat_oracle(&cycle, &r, 0.0, 0.6).unwrap() - &cycle.lift(&heat)).max_abs() < 1e-12);
    assert!((&heat_oracle(&cycle, &r, 1.4, 0.0).unwrap() - &cycle.unit()).max_abs() < 1e-14);
}

#[test]
fn chain_identities_for_zero_operator() {
    let cycle = CycleDescriptor::random(1, 1, 0, 2).unwrap();
    let r = FredholmRealization::from_block(&Mat::zeros(1, 1));
    for n in 0..=2 {
        let rep = verify_thm412(n, 1.0, &cycle, &r).unwrap();
        assert!(rep.boundary_residual < 1e-15 && rep.norm_residual < 1e-15);
    }
}

#[test]
fn degree_zero_fit_is_the_index() {
    let block = Mat::from_row_slice(1, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0)]);
    let r = FredholmRealization::from_block(&block);
    let cycle = CycleDescriptor::random(2, 1, 0, 3).unwrap();
    let rep = verify_main(&cycle, &r, &[0.5]).unwrap();
    assert!((rep.top[0] - 1.0).abs() < 1e-10);
    assert!((rep.reference[0] - 1.0).abs() < 1e-10);
    for t in [0.1, 1.0, 10.0] {
        assert!((mckean_singer(&r, t).unwrap().re - 1.0).abs() < 1e-10);
    }
}

#[test]
fn flat_model_has_constant_character() {
    let zero = SuperMatrix::zeros(2, 1);
    let cycle = matrix_model_build(2, 1, 2, vec![zero.clone(), zero], 0).unwrap();
    let r = FredholmRealization::from_block(&Mat::from_row_slice(1, 2, &[C64::new(0.4, 0.1), C64::new(-1.2, 0.3)]));
    let rep = verify_main(&cycle, &r, &[0.3, 0.6, 0.9]).unwrap();
    assert!(rep.coefficients.iter().all(|c| c[0].hypot(c[1]) < 1e-14));
    assert!(rep.reference[0].hypot(rep.reference[1]) < 1e-14);
}

#[test]
fn bott_chern_number_and_sums() {
    let b = bott();
    let v = chern_number(&b, 1).unwrap() / C64::new(0.0, 2.0 * PI);
    assert!((v.re - 1.0).abs() < 1e-12 && v.im.abs() < 1e-12);
    let two = chern_number(&b.direct_sum(&b), 1).unwrap() / C64::new(0.0, 2.0 * PI);
    assert!((two.re - 2.0).abs() < 1e-12);
    assert_eq!(chern_number(&constant_projection(2, 1), 1).unwrap().norm(), 0.0);
}

#[test]
fn sphere_comparison_examples() {
    let pairs = [(0.5, 1.0), (1.0, 1.0), (1.5, 0.5), (2.0, 2.0), (0.3, 3.0)];
    let rep = verify_sphere_example(&bott(), &constant_projection(2, 1), &pairs).unwrap();
    assert!(rep.max_residual_displayed < 1e-10 && rep.max_residual_heat < 1e-10);
    let same = verify_sphere_example(&bott(), &bott(), &pairs).unwrap();
    assert!(same.cases.iter().all(|c| c.displayed[0].abs() < 1e-14 && c.predicted[0] == 0.0));
    let flat = verify_sphere_example(&bott(), &constant_projection(2, 1), &[(0.0, 1.0)]).unwrap();
    assert!(flat.cases[0].displayed[0].abs() < 1e-14 && flat.cases[0].heat[0].abs() < 1e-14);
}

#[test]
fn monte_carlo_moments() {
    let mut rng = case_rng(11, "moments");
    let m = validate_moments(&mut rng, 200_000);
    assert!(m.max_sigma < 5.0, "{}", m.max_sigma);
}

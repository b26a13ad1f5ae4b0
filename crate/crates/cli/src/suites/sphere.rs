//! The two-sphere: exact integration, the Bott projection and the closing
//! Chern–Weil comparison.

use std::f64::consts::PI;

use chern_core::random::{case_rng, normal, CaseRng};
use chern_core::sphere_chern::{
    bott, chern_number, constant_projection, integrate2, validate_moments, verify_sphere_example, SphereFormAmbient,
    SpherePoly,
};
use chern_core::C64;
use rand::Rng;

use super::{case, task, Task};
use crate::config::SuiteConfig;
use crate::report::{Mode, ReportRecord};

const SUITE: &str = "sphere";

fn random_poly(rng: &mut CaseRng) -> SpherePoly {
    let mut f = SpherePoly::zero();
    for _ in 0..4 {
        let m = [rng.gen_range(0..3), rng.gen_range(0..3), rng.gen_range(0..2)];
        f = f.add(&SpherePoly::monomial(m, C64::new(rng.gen_range(-3..=3) as f64, 0.0)));
    }
    f
}

fn random_one_form(rng: &mut CaseRng) -> SphereFormAmbient {
    (0..3).fold(SphereFormAmbient::zero(), |acc, i| acc.add(&SphereFormAmbient::term(1 << i, random_poly(rng))))
}

fn unit_vector(rng: &mut CaseRng) -> [f64; 3] {
    let v = [normal(rng), normal(rng), normal(rng)];
    let r = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
    [v[0] / r, v[1] / r, v[2] / r]
}

/// Rotation by `angle` about the unit `axis`.
fn rotation(axis: [f64; 3], angle: f64) -> [[f64; 3]; 3] {
    let (s, c) = angle.sin_cos();
    let [x, y, z] = axis;
    let t = 1.0 - c;
    [
        [c + x * x * t, x * y * t - z * s, x * z * t + y * s],
        [y * x * t + z * s, c + y * y * t, y * z * t - x * s],
        [z * x * t - y * s, z * y * t + x * s, c + z * z * t],
    ]
}

fn normalized(c: C64) -> C64 {
    c / C64::new(0.0, 2.0 * PI)
}

pub(crate) fn tasks(cfg: &SuiteConfig) -> Vec<Task> {
    let tol = cfg.tol(SUITE, 1e-10);
    let seed = cfg.seed;
    let mut pairs: Vec<(f64, f64)> = Vec::new();
    for &s in &cfg.s_grid {
        for &t in &cfg.t_grid {
            pairs.push((s, t));
        }
    }
    pairs.truncate(5);
    let mut out: Vec<Task> = Vec::new();

    out.push(task(SUITE, "integration", "exact".into(), || {
        let area = integrate2(&SphereFormAmbient::two_form(SpherePoly::x(), SpherePoly::y(), SpherePoly::z()))?;
        let quartic = integrate2(&SphereFormAmbient::two_form(
            SpherePoly::monomial([3, 0, 0], C64::new(1.0, 0.0)),
            SpherePoly::zero(),
            SpherePoly::zero(),
        ))?;
        Ok(vec![
            ReportRecord::new(SUITE, "area", "form=x dydz+y dzdx+z dxdy".into(), area.re, 4.0 * PI, 0.0, Mode::Abs),
            ReportRecord::new(SUITE, "quartic_moment", "form=x^3 dydz".into(), quartic.re, 4.0 * PI / 5.0, 1e-15, Mode::Abs),
        ])
    }));

    out.push(task(SUITE, "chern", "bott".into(), move || {
        let b = bott();
        let n = normalized(chern_number(&b, 1)?);
        let mut recs = vec![
            ReportRecord::new(SUITE, "bott_chern", "p=bott".into(), n.re, 1.0, 1e-9, Mode::Abs),
            ReportRecord::residual(SUITE, "bott_chern_imag", "p=bott".into(), n.im.abs(), 1e-9),
            ReportRecord::new(SUITE, "bott_chern_integer", "p=bott".into(), n.re, n.re.round(), 1e-9, Mode::Abs),
        ];
        let c = normalized(chern_number(&constant_projection(2, 1), 1)?);
        recs.push(ReportRecord::new(SUITE, "constant_chern", "p=diag(1,0)".into(), c.norm(), 0.0, 1e-12, Mode::Abs));
        let sum = normalized(chern_number(&b.direct_sum(&b), 1)?);
        recs.push(ReportRecord::new(SUITE, "direct_sum_chern", "p=bott+bott".into(), sum.re, 2.0, 1e-9, Mode::Abs));
        let mut rng = case_rng(seed, "sphere/rotation");
        for i in 0..3 {
            let rot = rotation(unit_vector(&mut rng), rng.gen_range(0.0..2.0 * PI));
            let r = normalized(chern_number(&b.compose_linear(&rot), 1)?);
            recs.push(ReportRecord::new(SUITE, "rotated_chern", format!("rotation={i}"), r.re, 1.0, 1e-9, Mode::Abs));
        }
        Ok(recs)
    }));

    let p = pairs.clone();
    out.push(task(SUITE, "example", "p0=bott;p1=diag(1,0)".into(), move || {
        let rep = verify_sphere_example(&bott(), &constant_projection(2, 1), &p)?;
        let mut recs = Vec::new();
        for c in &rep.cases {
            let label = case(&[("s", c.s.to_string()), ("t", c.t.to_string())]);
            let d = C64::new(c.displayed[0] - c.predicted[0], c.displayed[1] - c.predicted[1]).norm();
            let h = C64::new(c.heat[0] - c.heat_predicted[0], c.heat[1] - c.heat_predicted[1]).norm();
            recs.push(ReportRecord::residual(SUITE, "displayed_exponential", label.clone(), d, tol));
            recs.push(ReportRecord::residual(SUITE, "heat_exponential", label, h, tol));
        }
        let same = verify_sphere_example(&bott(), &bott(), &p)?;
        recs.push(ReportRecord::residual(SUITE, "equal_projections", "p0=p1=bott".into(), same.max_residual_displayed.max(C64::new(same.pairing[0], same.pairing[1]).norm()), tol));
        Ok(recs)
    }));

    out.push(task(SUITE, "forms", "random".into(), move || {
        let mut rng = case_rng(seed, "sphere/forms");
        let (mut dd, mut stokes) = (0.0_f64, 0.0_f64);
        for _ in 0..50 {
            let f = SphereFormAmbient::function(random_poly(&mut rng));
            let a = random_one_form(&mut rng);
            let ddf = f.d().d();
            let n = unit_vector(&mut rng);
            dd = dd.max(ddf.tangential(n).iter().map(|z| z.norm()).fold(0.0, f64::max));
            dd = dd.max(a.d().d().max_coeff());
            stokes = stokes.max(integrate2(&a.d())?.norm());
        }
        Ok(vec![
            ReportRecord::residual(SUITE, "d_squared", "forms=50".into(), dd, 1e-11),
            ReportRecord::residual(SUITE, "stokes", "forms=50".into(), stokes, tol),
        ])
    }));

    out.push(task(SUITE, "moments", "samples=1000000".into(), move || {
        let mut rng = case_rng(seed, "sphere/moments");
        let m = validate_moments(&mut rng, 1_000_000);
        Ok(vec![ReportRecord::new(SUITE, "monte_carlo_moments", "samples=1000000".into(), m.max_sigma, 0.0, 5.0, Mode::Abs)])
    }));
    out
}

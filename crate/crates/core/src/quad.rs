//! Adaptive Gauss–Kronrod (7/15) quadrature.

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let s = f(c - x) + f(c + x);
        kron += WGK[j] * s;
        if j % 2 == 1 {
            gauss += WG[j / 2] * s;
        }
    }
    (kron * h, ((kron - gauss) * h).abs())
}

/// Integral of `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64) -> f64 {
    adapt(f, a, b, tol, 0)
}

fn adapt<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, depth: usize) -> f64 {
    let (val, err) = gk15(f, a, b);
    if err <= tol || depth >= 40 || (b - a).abs() < 1e-14 {
        return val;
    }
    let m = 0.5 * (a + b);
    adapt(f, a, m, 0.5 * tol, depth + 1) + adapt(f, m, b, 0.5 * tol, depth + 1)
}

/// `∫_{tΔ_n} Π e^{−t_i μ_i} dV` by nested quadrature of the convolution
/// recurrence `E_n(μ; t) = ∫_0^t e^{−sμ_0} E_{n−1}(μ_1, …; t − s) ds`.
pub fn simplex_exponential_integral(nodes: &[f64], t: f64, tol: f64) -> f64 {
    match nodes.split_first() {
        None => 1.0,
        Some((&mu0, [])) => (-t * mu0).exp(),
        Some((&mu0, rest)) => integrate(
            &|s: f64| (-s * mu0).exp() * simplex_exponential_integral(rest, t - s, tol),
            0.0,
            t,
            tol,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_exponential() {
        assert!((integrate(&|x: f64| x * x, 0.0, 3.0, 1e-13) - 9.0).abs() < 1e-12);
        let v = integrate(&|x: f64| (-x).exp(), 0.0, 1.0, 1e-14);
        assert!((v - (1.0 - (-1.0f64).exp())).abs() < 1e-14);
    }
}

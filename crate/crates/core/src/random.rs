//! Seeded generators for test inputs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::universal_forms::{form_d, Chain, Form, Gen, Word};
use crate::{Mat, C64};

pub type CaseRng = ChaCha8Rng;

/// RNG derived from a global seed and a case identifier, so results do not
/// depend on scheduling order.
pub fn case_rng(seed: u64, case_id: &str) -> CaseRng {
    // FNV-1a over the case id, mixed with the seed.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for b in case_id.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    ChaCha8Rng::seed_from_u64(seed ^ h.rotate_left(17))
}

pub fn seeded(seed: u64) -> CaseRng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Standard normal sample (Box–Muller).
pub fn normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.gen_range(f64::MIN_POSITIVE..1.0);
    let u2: f64 = rng.gen::<f64>();
    (-2.0 * u1.ln()).sqrt() * (2.0 * std::f64::consts::PI * u2).cos()
}

pub fn complex_normal<R: Rng>(rng: &mut R) -> C64 {
    C64::new(normal(rng), normal(rng))
}

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize) -> Mat {
    Mat::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Matrix of small Gaussian integers in `[-r, r] + i[-r, r]`; products of such
/// matrices are exact in floating point.
pub fn integer_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, r: i32) -> Mat {
    Mat::from_fn(rows, cols, |_, _| {
        C64::new(rng.gen_range(-r..=r) as f64, rng.gen_range(-r..=r) as f64)
    })
}

pub fn random_hermitian<R: Rng>(rng: &mut R, n: usize) -> Mat {
    let a = random_matrix(rng, n, n);
    (&a + a.adjoint()) * C64::new(0.5, 0.0)
}

/// Block-diagonal (even) matrix for the grading `diag(1_p, -1_q)`.
pub fn even_matrix<R: Rng>(rng: &mut R, p: usize, q: usize) -> Mat {
    let mut m = random_matrix(rng, p + q, p + q);
    zero_blocks(&mut m, p, false);
    m
}

/// Block-off-diagonal (odd) matrix.
pub fn odd_matrix<R: Rng>(rng: &mut R, p: usize, q: usize) -> Mat {
    let mut m = random_matrix(rng, p + q, p + q);
    zero_blocks(&mut m, p, true);
    m
}

/// Zeroes the diagonal blocks (`diagonal = true`) or the off-diagonal blocks.
pub fn zero_blocks(m: &mut Mat, p: usize, diagonal: bool) {
    let n = m.nrows();
    for i in 0..n {
        for j in 0..n {
            let same = (i < p) == (j < p);
            if same == diagonal {
                m[(i, j)] = C64::new(0.0, 0.0);
            }
        }
    }
}

/// Odd Hermitian operator `[[0, P*], [P, 0]]` with a random `q×p` block.
pub fn random_odd_hermitian<R: Rng>(rng: &mut R, p: usize, q: usize) -> Mat {
    let pb = random_matrix(rng, q, p);
    odd_hermitian_from_block(&pb)
}

/// Builds `[[0, P*], [P, 0]]` from `P: C^p → C^q` given as a `q×p` matrix.
pub fn odd_hermitian_from_block(pb: &Mat) -> Mat {
    let q = pb.nrows();
    let p = pb.ncols();
    let mut h = Mat::zeros(p + q, p + q);
    h.view_mut((p, 0), (q, p)).copy_from(pb);
    h.view_mut((0, p), (p, q)).copy_from(&pb.adjoint());
    h
}

/// Generators `0..count` of a free graded algebra, odd ones first.
pub fn generators(count: u32, odd: u32) -> Vec<Gen> {
    (0..count).map(|i| Gen::new(i, i < odd)).collect()
}

/// Nonempty word of length `1..=max_len` in the given generators.
pub fn random_word<R: Rng>(rng: &mut R, gens: &[Gen], max_len: usize) -> Word {
    let len = rng.gen_range(1..=max_len);
    Word((0..len).map(|_| gens[rng.gen_range(0..gens.len())]).collect())
}

/// Degree-`n` chain with up to `terms` terms and integer coefficients in
/// `[-3, 3] \ {0}`.
pub fn random_chain<R: Rng>(rng: &mut R, n: usize, terms: usize, gens: &[Gen]) -> Chain {
    let mut c = Chain::zero(n);
    for _ in 0..terms.max(1) {
        let factors: Vec<Word> = (0..=n).map(|_| random_word(rng, gens, 2)).collect();
        let coef = loop {
            let v = rng.gen_range(-3i32..=3);
            if v != 0 {
                break v;
            }
        };
        c.add_term(C64::new(coef as f64, 0.0), factors).expect("words are nonempty");
    }
    c
}

/// Form of filtration degree at most `max_deg` with integer coefficients;
/// leading factors may be the adjoined unit or carry a differential.
pub fn random_form<R: Rng>(rng: &mut R, max_deg: usize, terms: usize, gens: &[Gen]) -> Form {
    let mut f = Form::zero();
    for _ in 0..terms.max(1) {
        let deg = rng.gen_range(0..=max_deg);
        let coef = C64::new(rng.gen_range(1i32..=3) as f64 * if rng.gen::<bool>() { 1.0 } else { -1.0 }, 0.0);
        let a0 = if rng.gen_range(0..4) == 0 { Word::unit() } else { random_word(rng, gens, 2) };
        let ds: Vec<Word> = (0..deg).map(|_| random_word(rng, gens, 2)).collect();
        let mut term = Form::term(coef, a0, ds);
        if rng.gen_range(0..4) == 0 {
            term = form_d(&term);
        }
        f = f.add(&term);
    }
    f
}

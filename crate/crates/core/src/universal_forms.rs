//! The universal differential graded algebra `Ω(A)` over the free graded
//! algebra on a set of homogeneous generators, Hochschild chains with their
//! boundaries and cyclic operator, and the map Φ from chains to forms.
//!
//! Coefficients are complex floats; with integer test coefficients every
//! operation is exact. Terms are kept in canonical (sorted) order and merged
//! after each operation.

use std::collections::BTreeMap;

use crate::cycle_core::{xext_d, xext_mul, CycleDescriptor, XExtElement};
use crate::error::{Error, Result};
use crate::super_algebra::{ModelElement, Parity};
use crate::C64;

/// Coefficients with modulus below this are dropped.
pub const ZERO_THRESHOLD: f64 = 1e-14;

/// Homogeneous generator of the free graded algebra.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Gen {
    pub id: u32,
    pub odd: bool,
}

impl Gen {
    pub fn new(id: u32, odd: bool) -> Self {
        Gen { id, odd }
    }
}

/// Monomial of the free algebra. The empty word is the adjoined unit of `A⁺`,
/// which is a separate symbol from any unit `A` might have.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Word(pub Vec<Gen>);

impl Word {
    pub fn unit() -> Self {
        Word(Vec::new())
    }
    pub fn gen(g: Gen) -> Self {
        Word(vec![g])
    }
    pub fn is_unit(&self) -> bool {
        self.0.is_empty()
    }
    pub fn parity(&self) -> u32 {
        self.0.iter().filter(|g| g.odd).count() as u32 % 2
    }
    pub fn mul(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }
}

fn sign(bits: u32) -> f64 {
    if bits.is_multiple_of(2) {
        1.0
    } else {
        -1.0
    }
}

fn merge<K: Ord>(map: &mut BTreeMap<K, C64>, key: K, c: C64) {
    let e = map.entry(key).or_insert(C64::new(0.0, 0.0));
    *e += c;
}

fn prune<K: Ord + Clone>(map: BTreeMap<K, C64>) -> BTreeMap<K, C64> {
    map.into_iter().filter(|(_, c)| c.norm() > ZERO_THRESHOLD).collect()
}

/// Hochschild chain of degree `n`: a combination of `a0 ⊗ … ⊗ an` with
/// nonempty words as factors.
#[derive(Debug, Clone, PartialEq)]
pub struct Chain {
    n: usize,
    terms: BTreeMap<Vec<Word>, C64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BoundaryVariant {
    /// Wrap term with sign `(−1)^{n+ν}`, `ν = ∂a_n(∂a0+…+∂a_{n−1})`.
    Graded,
    /// Wrap term `(−1)^n α(a_n) a0 ⊗ …`.
    Ev,
}

impl Chain {
    pub fn zero(n: usize) -> Self {
        Chain { n, terms: BTreeMap::new() }
    }

    pub fn single(c: C64, factors: Vec<Word>) -> Result<Self> {
        let mut ch = Chain::zero(factors.len().saturating_sub(1));
        ch.add_term(c, factors)?;
        Ok(ch)
    }

    pub fn degree(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &BTreeMap<Vec<Word>, C64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, c: C64, factors: Vec<Word>) -> Result<()> {
        if factors.len() != self.n + 1 {
            return Err(Error::Dimension(format!(
                "degree-{} chain needs {} factors, got {}",
                self.n,
                self.n + 1,
                factors.len()
            )));
        }
        if factors.iter().any(Word::is_unit) {
            return Err(Error::Invalid("chain factors must lie in A".into()));
        }
        merge(&mut self.terms, factors, c);
        self.terms = prune(std::mem::take(&mut self.terms));
        Ok(())
    }

    pub fn add(&self, other: &Chain) -> Chain {
        assert_eq!(self.n, other.n, "adding chains of different degree");
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            merge(&mut terms, k.clone(), *c);
        }
        Chain { n: self.n, terms: prune(terms) }
    }

    pub fn scale(&self, c: C64) -> Chain {
        Chain { n: self.n, terms: prune(self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect()) }
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

/// Hochschild boundary `b`.
pub fn boundary(c: &Chain, variant: BoundaryVariant) -> Result<Chain> {
    let n = c.n;
    if n == 0 {
        return Err(Error::DegreeZero);
    }
    let mut out = BTreeMap::new();
    for (f, &coef) in &c.terms {
        for j in 0..n {
            let mut g = Vec::with_capacity(n);
            g.extend_from_slice(&f[..j]);
            g.push(f[j].mul(&f[j + 1]));
            g.extend_from_slice(&f[j + 2..]);
            merge(&mut out, g, coef * sign(j as u32));
        }
        let an = &f[n];
        let s = match variant {
            BoundaryVariant::Graded => {
                let before: u32 = f[..n].iter().map(Word::parity).sum();
                sign(n as u32 + an.parity() * before)
            }
            BoundaryVariant::Ev => sign(n as u32 + an.parity()),
        };
        let mut g = Vec::with_capacity(n);
        g.push(an.mul(&f[0]));
        g.extend_from_slice(&f[1..n]);
        merge(&mut out, g, coef * s);
    }
    Ok(Chain { n: n - 1, terms: prune(out) })
}

/// Cyclic operator `t(a0⊗…⊗an) = (−1)^{n+ν} an ⊗ a0 ⊗ … ⊗ a_{n−1}`.
pub fn cyclic_t(c: &Chain) -> Chain {
    let n = c.n;
    let mut out = BTreeMap::new();
    for (f, &coef) in &c.terms {
        let before: u32 = f[..n].iter().map(Word::parity).sum();
        let s = sign(n as u32 + f[n].parity() * before);
        let mut g = Vec::with_capacity(n + 1);
        g.push(f[n].clone());
        g.extend_from_slice(&f[..n]);
        merge(&mut out, g, coef * s);
    }
    Chain { n, terms: prune(out) }
}

/// Norm operator `N = Σ_{k=0}^{n} t^k`.
pub fn cyclic_norm(c: &Chain) -> Chain {
    let mut acc = c.clone();
    let mut cur = c.clone();
    for _ in 0..c.n {
        cur = cyclic_t(&cur);
        acc = acc.add(&cur);
    }
    acc
}

/// Key of a form term: `a0` (the unit word marks a leading `d`) and the
/// differentiated factors `a1, …, an`.
pub type FormKey = (Word, Vec<Word>);

/// Element of `Ω(A) = ⊕ A⁺ ⊗ A^{⊗n}`, a combination of `a0 da1 … dan`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Form {
    terms: BTreeMap<FormKey, C64>,
}

impl Form {
    pub fn zero() -> Self {
        Form::default()
    }

    /// The degree-0 form `a`.
    pub fn from_word(a: Word) -> Self {
        Form::term(C64::new(1.0, 0.0), a, vec![])
    }

    pub fn unit() -> Self {
        Form::from_word(Word::unit())
    }

    pub fn term(c: C64, a0: Word, d_factors: Vec<Word>) -> Self {
        assert!(d_factors.iter().all(|w| !w.is_unit()), "d-factors must lie in A");
        let mut terms = BTreeMap::new();
        if c.norm() > ZERO_THRESHOLD {
            terms.insert((a0, d_factors), c);
        }
        Form { terms }
    }

    pub fn terms(&self) -> &BTreeMap<FormKey, C64> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &Form) -> Form {
        let mut terms = self.terms.clone();
        for (k, c) in &other.terms {
            merge(&mut terms, k.clone(), *c);
        }
        Form { terms: prune(terms) }
    }

    pub fn sub(&self, other: &Form) -> Form {
        self.add(&other.scale(C64::new(-1.0, 0.0)))
    }

    pub fn scale(&self, c: C64) -> Form {
        Form { terms: prune(self.terms.iter().map(|(k, v)| (k.clone(), v * c)).collect()) }
    }

    /// Lowest `n` among the terms (the filtration degree).
    pub fn filtration_degree(&self) -> Option<usize> {
        self.terms.keys().map(|(_, d)| d.len()).min()
    }

    /// Terms of exact degree `n`.
    pub fn degree_part(&self, n: usize) -> Form {
        Form { terms: self.terms.iter().filter(|((_, d), _)| d.len() == n).map(|(k, c)| (k.clone(), *c)).collect() }
    }

    /// Part of total Z2-parity `parity` (`Σ∂a_j + n`).
    pub fn parity_part(&self, parity: Parity) -> Form {
        Form {
            terms: self
                .terms
                .iter()
                .filter(|(k, _)| key_parity(k) == parity.bit())
                .map(|(k, c)| (k.clone(), *c))
                .collect(),
        }
    }

    /// Total parity if homogeneous.
    pub fn parity(&self) -> Option<Parity> {
        let mut bits = self.terms.keys().map(key_parity);
        let first = bits.next()?;
        if bits.all(|b| b == first) {
            Some(Parity::from_bit(first))
        } else {
            None
        }
    }

    /// Whether a term has a leading `d` (`a0` is the adjoined unit).
    pub fn has_leading_d(key: &FormKey) -> bool {
        key.0.is_unit() && !key.1.is_empty()
    }

    pub fn max_coeff(&self) -> f64 {
        self.terms.values().map(|c| c.norm()).fold(0.0, f64::max)
    }
}

fn key_parity(k: &FormKey) -> u32 {
    let s: u32 = k.0.parity() + k.1.iter().map(Word::parity).sum::<u32>();
    (s + k.1.len() as u32) % 2
}

/// `(a0 da1 … dan) · b` rewritten with `(da)b = d(ab) − (−1)^{∂a} a db`.
fn term_times_word(a0: &Word, ds: &[Word], b: &Word, coef: C64, out: &mut BTreeMap<FormKey, C64>) {
    if b.is_unit() {
        merge(out, (a0.clone(), ds.to_vec()), coef);
        return;
    }
    match ds.split_last() {
        None => merge(out, (a0.mul(b), vec![]), coef),
        Some((an, rest)) => {
            let mut first = rest.to_vec();
            first.push(an.mul(b));
            merge(out, (a0.clone(), first), coef);
            let mut partial = BTreeMap::new();
            term_times_word(a0, rest, an, coef * (-sign(an.parity())), &mut partial);
            for ((p0, mut pd), c) in partial {
                pd.push(b.clone());
                merge(out, (p0, pd), c);
            }
        }
    }
}

/// Product in `Ω(A)`.
pub fn form_mul(x: &Form, y: &Form) -> Form {
    let mut out = BTreeMap::new();
    for ((a0, ads), &ca) in &x.terms {
        for ((b0, bds), &cb) in &y.terms {
            let mut partial = BTreeMap::new();
            term_times_word(a0, ads, b0, ca * cb, &mut partial);
            for ((p0, mut pd), c) in partial {
                pd.extend_from_slice(bds);
                merge(&mut out, (p0, pd), c);
            }
        }
    }
    Form { terms: prune(out) }
}

/// Universal differential: `d(a0 da1 … dan) = da0 da1 … dan`, `d(1) = 0`.
pub fn form_d(x: &Form) -> Form {
    let mut out = BTreeMap::new();
    for ((a0, ds), &c) in &x.terms {
        if a0.is_unit() {
            continue;
        }
        let mut nd = Vec::with_capacity(ds.len() + 1);
        nd.push(a0.clone());
        nd.extend_from_slice(ds);
        merge(&mut out, (Word::unit(), nd), c);
    }
    Form { terms: prune(out) }
}

/// Graded commutator `[x, y] = xy − (−1)^{∂x∂y} yx`, split over homogeneous
/// parts.
pub fn graded_commutator(x: &Form, y: &Form) -> Form {
    let mut acc = Form::zero();
    for px in [Parity::Even, Parity::Odd] {
        for py in [Parity::Even, Parity::Odd] {
            let xh = x.parity_part(px);
            let yh = y.parity_part(py);
            if xh.is_zero() || yh.is_zero() {
                continue;
            }
            let s = sign(px.bit() * py.bit());
            acc = acc.add(&form_mul(&xh, &yh)).sub(&form_mul(&yh, &xh).scale(C64::new(s, 0.0)));
        }
    }
    acc
}

/// `Φ(a0⊗…⊗an) = (−1)^μ a0 da1 … dan`, `μ = Σ (n−j) ∂a_j`.
pub fn phi_map(c: &Chain) -> Form {
    let n = c.n;
    let mut out = BTreeMap::new();
    for (f, &coef) in &c.terms {
        let mu: u32 = f.iter().enumerate().map(|(j, a)| (n - j) as u32 * a.parity()).sum();
        merge(&mut out, (f[0].clone(), f[1..].to_vec()), coef * sign(mu));
    }
    Form { terms: prune(out) }
}

/// Representation of the free algebra in a cycle: images of generators.
pub trait Representation {
    fn image(&self, g: Gen) -> ModelElement;
}

impl<F: Fn(Gen) -> ModelElement> Representation for F {
    fn image(&self, g: Gen) -> ModelElement {
        self(g)
    }
}

fn realize_word(cycle: &CycleDescriptor, rho: &dyn Representation, w: &Word) -> ModelElement {
    w.0.iter().fold(cycle.unit(), |acc, g| &acc * &rho.image(*g))
}

fn realize_key(cycle: &CycleDescriptor, rho: &dyn Representation, a0: &Word, ds: &[Word]) -> Result<XExtElement> {
    let mut x = XExtElement::from_carrier(cycle, realize_word(cycle, rho, a0));
    for a in ds {
        let da = xext_d(cycle, &XExtElement::from_carrier(cycle, realize_word(cycle, rho, a)))?;
        x = xext_mul(cycle, &x, &da)?;
    }
    Ok(x)
}

/// `ρ(a0) dρ(a1) … dρ(an)` summed over the chain, in the X-extension.
pub fn realize_chain(c: &Chain, cycle: &CycleDescriptor, rho: &dyn Representation) -> Result<XExtElement> {
    let mut acc = XExtElement::zero(cycle);
    for (f, &coef) in &c.terms {
        acc = acc.add(&realize_key(cycle, rho, &f[0], &f[1..])?.scale(coef));
    }
    Ok(acc)
}

/// Realization of a form; the adjoined unit maps to the unit of the carrier.
pub fn realize_form(x: &Form, cycle: &CycleDescriptor, rho: &dyn Representation) -> Result<XExtElement> {
    let mut acc = XExtElement::zero(cycle);
    for ((a0, ds), &coef) in &x.terms {
        acc = acc.add(&realize_key(cycle, rho, a0, ds)?.scale(coef));
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(x: f64) -> C64 {
        C64::new(x, 0.0)
    }
    fn w(id: u32, odd: bool) -> Word {
        Word::gen(Gen::new(id, odd))
    }

    #[test]
    fn boundary_of_two_chain_is_commutator() {
        let (a, b) = (w(0, false), w(1, false));
        let ch = Chain::single(c(1.0), vec![a.clone(), b.clone()]).unwrap();
        let got = boundary(&ch, BoundaryVariant::Graded).unwrap();
        let mut want = Chain::zero(0);
        want.add_term(c(1.0), vec![a.mul(&b)]).unwrap();
        want.add_term(c(-1.0), vec![b.mul(&a)]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn ev_boundary_wraps_with_alpha() {
        let (a, b) = (w(0, false), w(1, true));
        let ch = Chain::single(c(1.0), vec![a.clone(), b.clone()]).unwrap();
        let got = boundary(&ch, BoundaryVariant::Ev).unwrap();
        // ab − α(b)a = ab + ba for odd b.
        let mut want = Chain::zero(0);
        want.add_term(c(1.0), vec![a.mul(&b)]).unwrap();
        want.add_term(c(1.0), vec![b.mul(&a)]).unwrap();
        assert_eq!(got, want);
    }

    #[test]
    fn degree_zero_boundary_is_rejected() {
        let ch = Chain::single(c(1.0), vec![w(0, false)]).unwrap();
        assert_eq!(boundary(&ch, BoundaryVariant::Graded), Err(Error::DegreeZero));
    }

    #[test]
    fn cyclic_operator_on_two_chain() {
        let (a, b) = (w(0, false), w(1, false));
        let ch = Chain::single(c(1.0), vec![a.clone(), b.clone()]).unwrap();
        let t = cyclic_t(&ch);
        assert_eq!(t, Chain::single(c(-1.0), vec![b, a]).unwrap());
        assert_eq!(cyclic_t(&t), ch);
    }

    #[test]
    fn phi_signs() {
        let ch = Chain::single(c(1.0), vec![w(0, false), w(1, false), w(2, false)]).unwrap();
        assert_eq!(phi_map(&ch), Form::term(c(1.0), w(0, false), vec![w(1, false), w(2, false)]));
        let ch = Chain::single(c(1.0), vec![w(0, false), w(1, true), w(2, false)]).unwrap();
        assert_eq!(phi_map(&ch), Form::term(c(-1.0), w(0, false), vec![w(1, true), w(2, false)]));
    }

    #[test]
    fn one_leibniz_step() {
        let (a, b, cc) = (w(0, false), w(1, false), w(2, false));
        let x = Form::term(c(1.0), a.clone(), vec![b.clone()]);
        let got = form_mul(&x, &Form::from_word(cc.clone()));
        let want = Form::term(c(1.0), a.clone(), vec![b.mul(&cc)]).sub(&Form::term(c(1.0), a.mul(&b), vec![cc]));
        assert_eq!(got, want);
    }

    #[test]
    fn product_of_differentials() {
        let (a, b) = (w(0, false), w(1, true));
        let da = Form::term(c(1.0), Word::unit(), vec![a.clone()]);
        let db = Form::term(c(1.0), Word::unit(), vec![b.clone()]);
        assert_eq!(form_mul(&da, &db), Form::term(c(1.0), Word::unit(), vec![a, b]));
    }

    #[test]
    fn d_of_forms() {
        let (a, b) = (w(0, false), w(1, false));
        let x = Form::term(c(1.0), a.clone(), vec![b.clone()]);
        assert_eq!(form_d(&x), Form::term(c(1.0), Word::unit(), vec![a.clone(), b]));
        assert!(form_d(&form_d(&Form::from_word(a))).is_zero());
        assert!(form_d(&Form::unit()).is_zero());
    }
}

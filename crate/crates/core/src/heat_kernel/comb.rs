//! Index classes `(K, σ)` of the heat expansion.

use std::collections::BTreeSet;

use serde::Serialize;

/// Subsets `K ⊆ {0..n}` containing `0` and `n` whose complement has no two
/// consecutive integers.
pub fn s_n(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for mask in 0u64..(1u64 << (n + 1)) {
        if mask & 1 == 0 || mask >> n & 1 == 0 {
            continue;
        }
        let missing = |p: usize| mask >> p & 1 == 0;
        if (0..n).any(|p| missing(p) && missing(p + 1)) {
            continue;
        }
        out.push((0..=n).filter(|&p| !missing(p)).collect());
    }
    out
}

/// `L(K) = {p ∈ K : p + 1 ∈ K}`.
pub fn l_of(k: &[usize]) -> Vec<usize> {
    k.iter().copied().filter(|p| k.contains(&(p + 1))).collect()
}

/// `m(K) = 2|K| − n − 2`.
pub fn m_of(k: &[usize], n: usize) -> i64 {
    2 * k.len() as i64 - n as i64 - 2
}

/// The sign exponent `ν_K`, from `ν_{0} = 0` by stripping the leading block.
pub fn nu(k: &[usize], n: usize) -> usize {
    if k == [0] {
        return 0;
    }
    if k.contains(&1) {
        let kp: Vec<usize> = k.iter().filter(|&&p| p != 0).map(|p| p - 1).collect();
        nu(&kp, n - 1) + n + 1
    } else {
        let kp: Vec<usize> = k.iter().filter(|&&p| p != 0).map(|p| p - 2).collect();
        nu(&kp, n - 2) + 1
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct CombClass {
    pub n: usize,
    pub k: Vec<usize>,
    /// `(p, σ_p)` for `p ∈ L(K)`, increasing in `p`.
    pub sigma: Vec<(usize, bool)>,
    /// Slot exponents `i_0..i_n`.
    pub exponents: Vec<u32>,
    pub nu: usize,
}

impl CombClass {
    pub fn new(n: usize, k: Vec<usize>, sigma_bits: &[bool]) -> Self {
        let ls = l_of(&k);
        assert_eq!(ls.len(), sigma_bits.len(), "one σ bit per element of L(K)");
        let sigma: Vec<(usize, bool)> = ls.into_iter().zip(sigma_bits.iter().copied()).collect();
        let sig = |p: usize| sigma.iter().find(|(q, _)| *q == p).map(|x| x.1);
        let in_k = |p: usize| k.contains(&p);
        let exponents = (0..=n)
            .map(|p| {
                let j = p >= 1 && in_k(p - 1) && in_k(p) && sig(p - 1) == Some(true);
                let kk = in_k(p) && in_k(p + 1) && sig(p) == Some(false);
                j as u32 + kk as u32
            })
            .collect();
        let nu = nu(&k, n);
        CombClass { n, k, sigma, exponents, nu }
    }

    /// `|(K, σ)| = Σσ_p + ν_K`.
    pub fn sign_exponent(&self) -> usize {
        self.sigma.iter().filter(|s| s.1).count() + self.nu
    }

    pub fn sign(&self) -> f64 {
        if self.sign_exponent().is_multiple_of(2) {
            1.0
        } else {
            -1.0
        }
    }

    /// `{p : i_p = 1}`.
    pub fn phi_set(&self) -> Vec<usize> {
        (0..=self.n).filter(|&p| self.exponents[p] == 1).collect()
    }

    pub fn exponent_sum(&self) -> u32 {
        self.exponents.iter().sum()
    }
}

/// All classes in `C_n`.
pub fn enumerate_classes(n: usize) -> Vec<CombClass> {
    let mut out = Vec::new();
    for k in s_n(n) {
        let l = l_of(&k).len();
        for bits in 0u64..(1u64 << l) {
            let sigma: Vec<bool> = (0..l).map(|b| bits >> b & 1 == 1).collect();
            out.push(CombClass::new(n, k.clone(), &sigma));
        }
    }
    out
}

/// `M(L)`: every other element of `{0..n} \ L`, starting with the first.
pub fn m_of_l(l: &[usize], n: usize) -> Vec<usize> {
    (0..=n).filter(|p| !l.contains(p)).step_by(2).collect()
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct ClassMapReport {
    pub n: usize,
    pub classes: usize,
    pub parity_failures: usize,
    pub injectivity_failures: usize,
    pub solvability_failures: usize,
}

impl ClassMapReport {
    pub fn passed(&self) -> bool {
        self.parity_failures == 0 && self.injectivity_failures == 0 && self.solvability_failures == 0
    }
}

/// Exhaustive check of the `φ(K, σ)` parity, uniqueness and solvability
/// statements for one `n`.
pub fn check_class_map(n: usize) -> ClassMapReport {
    let classes = enumerate_classes(n);
    let mut rep = ClassMapReport { n, classes: classes.len(), ..Default::default() };
    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for c in &classes {
        let l = c.phi_set();
        if !(n - l.len()).is_multiple_of(2) {
            rep.parity_failures += 1;
        }
        if !seen.insert((c.k.clone(), l)) {
            rep.injectivity_failures += 1;
        }
    }
    for k in s_n(n) {
        for r in 0..=k.len() {
            if (n + 1 - r).is_multiple_of(2) || r > n + 1 {
                continue;
            }
            for l in combinations(&k, r) {
                let solvable = seen.contains(&(k.clone(), l.clone()));
                let predicted = m_of_l(&l, n).iter().all(|p| k.contains(p));
                if solvable != predicted {
                    rep.solvability_failures += 1;
                }
            }
        }
    }
    rep
}

/// All `r`-element subsets of `items`, preserving order.
pub fn combinations(items: &[usize], r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fn rec(items: &[usize], r: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..items.len() {
            if items.len() - i < r - cur.len() {
                break;
            }
            cur.push(items[i]);
            rec(items, r, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(items, r, 0, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn worked_example() {
        let c = CombClass::new(7, vec![0, 1, 3, 4, 5, 6, 7], &[false, true, true, false, true]);
        assert_eq!(l_of(&c.k), vec![0, 3, 4, 5, 6]);
        assert_eq!(c.exponents, vec![1, 0, 0, 0, 1, 2, 0, 1]);
    }

    #[test]
    fn two_has_five_classes() {
        let cls = enumerate_classes(2);
        assert_eq!(cls.len(), 5);
        let mut pats: Vec<(Vec<usize>, Vec<u32>)> =
            cls.iter().map(|c| (c.k.clone(), c.exponents.clone())).collect();
        pats.sort();
        assert_eq!(
            pats,
            vec![
                (vec![0, 1, 2], vec![0, 1, 1]),
                (vec![0, 1, 2], vec![0, 2, 0]),
                (vec![0, 1, 2], vec![1, 0, 1]),
                (vec![0, 1, 2], vec![1, 1, 0]),
                (vec![0, 2], vec![0, 0, 0]),
            ]
        );
    }

    #[test]
    fn class_counts() {
        let counts: Vec<usize> = (0..9).map(|n| enumerate_classes(n).len()).collect();
        assert_eq!(counts, vec![1, 2, 5, 12, 29, 70, 169, 408, 985]);
    }

    #[test]
    fn nu_of_pair() {
        assert_eq!(nu(&[0, 1], 1), 2);
        assert_eq!(nu(&[0, 2], 2), 1);
    }

    #[test]
    fn m_of_l_examples() {
        assert_eq!(m_of_l(&[1], 2), vec![0]);
        assert_eq!(m_of_l(&[], 2), vec![0, 2]);
    }
}

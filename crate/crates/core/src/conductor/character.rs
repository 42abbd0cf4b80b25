//! Characters with values in cyclotomic integers `Z[ζ_n]`, stored as
//! coordinates in the power basis modulo the n-th cyclotomic polynomial.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use super::ConductorError;
use crate::group::{FiniteGroup, Subgroup};

/// Coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_poly(n: usize) -> Vec<i64> {
    assert!(n > 0);
    let mut f = vec![0i64; n + 1];
    f[0] = -1;
    f[n] = 1;
    for d in 1..n {
        if n.is_multiple_of(d) {
            f = divide_monic(&f, &cyclotomic_poly(d));
        }
    }
    f
}

fn divide_monic(f: &[i64], g: &[i64]) -> Vec<i64> {
    let dg = g.len() - 1;
    let mut r = f.to_vec();
    let mut q = vec![0i64; f.len() - dg];
    for k in (0..q.len()).rev() {
        let c = r[k + dg];
        q[k] = c;
        for (i, &gi) in g.iter().enumerate() {
            r[k + i] -= c * gi;
        }
    }
    debug_assert!(r.iter().all(|&x| x == 0));
    q
}

/// Reduce modulo the n-th cyclotomic polynomial and trim trailing zeros.
pub fn reduce(n: usize, v: &[i64]) -> Vec<i64> {
    let phi = cyclotomic_poly(n);
    let d = phi.len() - 1;
    let mut r = v.to_vec();
    for k in (d..r.len()).rev() {
        let c = r[k];
        if c != 0 {
            for (i, &pi) in phi.iter().enumerate() {
                r[k - d + i] -= c * pi;
            }
        }
    }
    r.truncate(d);
    while r.last() == Some(&0) {
        r.pop();
    }
    r
}

fn zeta_pow(n: usize, k: usize) -> Vec<i64> {
    let mut v = vec![0i64; k % n + 1];
    v[k % n] = 1;
    reduce(n, &v)
}

fn add_into(acc: &mut Vec<i64>, v: &[i64]) {
    if acc.len() < v.len() {
        acc.resize(v.len(), 0);
    }
    for (a, b) in acc.iter_mut().zip(v) {
        *a += b;
    }
}

/// The rational integer represented by a reduced vector, if it is one.
fn as_integer(v: &[i64]) -> Option<i64> {
    match v {
        [] => Some(0),
        [c] => Some(*c),
        _ => None,
    }
}

/// Substitute `ζ_n = ζ_m^(m/n)`.
fn lift(n: usize, m: usize, v: &[i64]) -> Vec<i64> {
    let s = m / n;
    let mut w = vec![0i64; (v.len().max(1) - 1) * s + 1];
    for (i, &c) in v.iter().enumerate() {
        w[i * s] = c;
    }
    reduce(m, &w)
}

/// A character of a finite group; one value per group element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CharRep {
    group: Arc<FiniteGroup>,
    n: usize,
    values: Vec<Vec<i64>>,
}

impl CharRep {
    pub fn new(group: &Arc<FiniteGroup>, n: usize, values: Vec<Vec<i64>>) -> Result<CharRep, ConductorError> {
        if n == 0 || values.len() != group.order() {
            return Err(ConductorError::InvalidCharacter("one value per group element is required"));
        }
        let values: Vec<Vec<i64>> = values.iter().map(|v| reduce(n, v)).collect();
        match as_integer(&values[0]) {
            Some(d) if d > 0 => {}
            _ => return Err(ConductorError::InvalidCharacter("value at the identity must be a positive integer")),
        }
        for cls in group.conjugacy_classes() {
            if cls.iter().any(|&g| values[g] != values[cls[0]]) {
                return Err(ConductorError::InvalidCharacter("not constant on conjugacy classes"));
            }
        }
        Ok(CharRep { group: group.clone(), n, values })
    }

    pub fn trivial(group: &Arc<FiniteGroup>) -> CharRep {
        CharRep { group: group.clone(), n: 1, values: vec![vec![1]; group.order()] }
    }

    pub fn regular(group: &Arc<FiniteGroup>) -> CharRep {
        let mut values = vec![Vec::new(); group.order()];
        values[0] = vec![group.order() as i64];
        CharRep { group: group.clone(), n: 1, values }
    }

    /// `g ↦ ζ^(<k, g>)` on a product of cyclic groups.
    pub fn abelian(group: &Arc<FiniteGroup>, ks: &[usize]) -> Result<CharRep, ConductorError> {
        let orders = group
            .factors()
            .filter(|fs| fs.len() == ks.len())
            .ok_or(ConductorError::InvalidCharacter("group is not the matching product of cyclics"))?;
        let l = orders.iter().fold(1usize, |acc, &m| acc.lcm(&m));
        let values = (0..group.order())
            .map(|mut g| {
                let mut e = 0;
                for (&m, &k) in orders.iter().zip(ks) {
                    e += (g % m) * k * (l / m);
                    g /= m;
                }
                zeta_pow(l, e)
            })
            .collect();
        Ok(CharRep { group: group.clone(), n: l, values })
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn cyclotomic_order(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> u32 {
        as_integer(&self.values[0]).expect("checked at construction") as u32
    }

    pub fn value(&self, g: usize) -> &[i64] {
        &self.values[g]
    }

    pub fn values(&self) -> &[Vec<i64>] {
        &self.values
    }

    fn lifted(&self, m: usize) -> Vec<Vec<i64>> {
        self.values.iter().map(|v| lift(self.n, m, v)).collect()
    }

    pub fn direct_sum(&self, other: &CharRep) -> Result<CharRep, ConductorError> {
        if self.group != other.group {
            return Err(ConductorError::GroupMismatch);
        }
        let m = self.n.lcm(&other.n);
        let mut values = self.lifted(m);
        for (a, b) in values.iter_mut().zip(other.lifted(m)) {
            add_into(a, &b);
        }
        let values = values.iter().map(|v| reduce(m, v)).collect();
        Ok(CharRep { group: self.group.clone(), n: m, values })
    }

    /// Equality as class functions, independent of the cyclotomic order used.
    pub fn same_character(&self, other: &CharRep) -> bool {
        let m = self.n.lcm(&other.n);
        self.group == other.group && self.lifted(m) == other.lifted(m)
    }
}

/// `dim V^H`, by averaging the character over `H`.
pub fn invariants_dim(rep: &CharRep, h: &Subgroup) -> Result<u32, ConductorError> {
    let mut sum = Vec::new();
    for &g in h.elements() {
        add_into(&mut sum, rep.value(g));
    }
    let total = as_integer(&reduce(rep.n, &sum)).ok_or(ConductorError::NonIntegralDimension)?;
    let order = h.order() as i64;
    if total % order != 0 || total < 0 || total / order > rep.dim() as i64 {
        return Err(ConductorError::NonIntegralDimension);
    }
    Ok((total / order) as u32)
}

/// Induce a character of `h` (indexed by position in `h.elements()`) to `g`.
pub fn induce_character(g: &Arc<FiniteGroup>, h: &Subgroup, chi: &CharRep) -> Result<CharRep, ConductorError> {
    if chi.group.order() != h.order() || *chi.group != *h.as_group(g) {
        return Err(ConductorError::GroupMismatch);
    }
    let order = h.order() as i64;
    let mut values = Vec::with_capacity(g.order());
    for x in 0..g.order() {
        let mut sum = Vec::new();
        for t in 0..g.order() {
            let c = g.conjugate(t, x);
            if let Ok(k) = h.elements().binary_search(&c) {
                add_into(&mut sum, chi.value(k));
            }
        }
        let sum = reduce(chi.n, &sum);
        if sum.iter().any(|c| c % order != 0) {
            return Err(ConductorError::InvalidCharacter("induced values are not integral"));
        }
        values.push(sum.iter().map(|c| c / order).collect());
    }
    CharRep::new(g, chi.n, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_polynomials() {
        assert_eq!(cyclotomic_poly(1), [-1, 1]);
        assert_eq!(cyclotomic_poly(4), [1, 0, 1]);
        assert_eq!(cyclotomic_poly(6), [1, -1, 1]);
        assert_eq!(cyclotomic_poly(12), [1, 0, -1, 0, 1]);
        // ζ_3^2 = -1 - ζ_3
        assert_eq!(zeta_pow(3, 2), [-1, -1]);
    }

    #[test]
    fn invariant_dimensions() {
        let g = FiniteGroup::cyclic(5);
        let whole = Subgroup::whole(&g);
        assert_eq!(invariants_dim(&CharRep::trivial(&g), &whole), Ok(1));
        assert_eq!(invariants_dim(&CharRep::regular(&g), &whole), Ok(1));
        assert_eq!(invariants_dim(&CharRep::regular(&g), &Subgroup::trivial()), Ok(5));
        let chi = CharRep::abelian(&g, &[2]).unwrap();
        assert_eq!(invariants_dim(&chi, &whole), Ok(0));
        let bogus = CharRep::new(&g, 1, vec![vec![1], vec![1], vec![0], vec![0], vec![0]]);
        // not a class function is fine for an abelian group, but averaging fails
        assert_eq!(invariants_dim(&bogus.unwrap(), &whole), Err(ConductorError::NonIntegralDimension));
    }

    #[test]
    fn regular_is_sum_of_irreducibles() {
        let g = FiniteGroup::abelian(&[2, 3]).unwrap();
        let mut acc = CharRep::abelian(&g, &[0, 0]).unwrap();
        for a in 0..2 {
            for b in 0..3 {
                if (a, b) != (0, 0) {
                    acc = acc.direct_sum(&CharRep::abelian(&g, &[a, b]).unwrap()).unwrap();
                }
            }
        }
        assert!(acc.same_character(&CharRep::regular(&g)));
    }

    #[test]
    fn induction_examples() {
        let g = FiniteGroup::cyclic(4);
        let whole = Subgroup::whole(&g);
        let chi = CharRep::abelian(&g, &[3]).unwrap();
        let same = induce_character(&g, &whole, &CharRep::new(&whole.as_group(&g), 4, chi.values().to_vec()).unwrap());
        assert!(same.unwrap().same_character(&chi));
        let triv = Subgroup::trivial();
        let reg = induce_character(&g, &triv, &CharRep::trivial(&triv.as_group(&g))).unwrap();
        assert!(reg.same_character(&CharRep::regular(&g)));
        // Z/4 ⊃ Z/2: evaluate the induction formula by hand at all four elements
        let h = Subgroup::generated(&g, &[2]).unwrap();
        let sign = CharRep::abelian(&h.as_group(&g), &[1]).unwrap();
        let ind = induce_character(&g, &h, &sign).unwrap();
        let by_hand = CharRep::new(&g, 1, vec![vec![2], vec![0], vec![-2], vec![0]]).unwrap();
        assert!(ind.same_character(&by_hand));
        let two_faithful =
            CharRep::abelian(&g, &[1]).unwrap().direct_sum(&CharRep::abelian(&g, &[3]).unwrap()).unwrap();
        assert!(ind.same_character(&two_faithful));
    }

    #[test]
    fn rejects_non_class_functions() {
        let perms: [[usize; 3]; 6] = [[0, 1, 2], [1, 0, 2], [0, 2, 1], [2, 1, 0], [1, 2, 0], [2, 0, 1]];
        let idx = |q: [usize; 3]| perms.iter().position(|&x| x == q).unwrap();
        let table = perms.iter().map(|a| perms.iter().map(|b| idx([a[b[0]], a[b[1]], a[b[2]]])).collect()).collect();
        let s3 = FiniteGroup::from_table(table).unwrap();
        let vals = vec![vec![2], vec![0], vec![1], vec![0], vec![-1], vec![-1]];
        assert!(CharRep::new(&s3, 1, vals).is_err());
        let std = vec![vec![2], vec![0], vec![0], vec![0], vec![-1], vec![-1]];
        let rho = CharRep::new(&s3, 1, std).unwrap();
        assert_eq!(invariants_dim(&rho, &Subgroup::whole(&s3)), Ok(0));
        assert_eq!(invariants_dim(&rho, &Subgroup::generated(&s3, &[1]).unwrap()), Ok(1));
    }
}

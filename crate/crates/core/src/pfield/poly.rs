//! Sparse multivariate polynomials over a prime field F_p.
//!
//! Monomials are ordered graded-lexicographically with variable 0 the most
//! significant. Exponent vectors never carry trailing zeros, so appending a
//! variable to the ambient ring leaves every existing representation intact.

use alloc::collections::BTreeMap;
use alloc::vec;
use alloc::vec::Vec;

/// Reduce an arbitrary integer into `[0, p)`.
pub fn fp_from_i64(p: u32, c: i64) -> u32 {
    c.rem_euclid(p as i64) as u32
}

#[inline]
pub fn fp_add(p: u32, a: u32, b: u32) -> u32 {
    let s = a as u64 + b as u64;
    (s % p as u64) as u32
}

#[inline]
pub fn fp_sub(p: u32, a: u32, b: u32) -> u32 {
    fp_add(p, a, p - b % p)
}

#[inline]
pub fn fp_mul(p: u32, a: u32, b: u32) -> u32 {
    ((a as u64 * b as u64) % p as u64) as u32
}

pub fn fp_pow(p: u32, mut a: u32, mut e: u64) -> u32 {
    let mut acc = 1u32 % p;
    while e > 0 {
        if e & 1 == 1 {
            acc = fp_mul(p, acc, a);
        }
        a = fp_mul(p, a, a);
        e >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue (Fermat).
pub fn fp_inv(p: u32, a: u32) -> u32 {
    debug_assert!(!a.is_multiple_of(p), "inverse of zero mod {p}");
    fp_pow(p, a, p as u64 - 2)
}

pub fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= n as u64 {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// A monomial `X_0^{e_0} X_1^{e_1} ...`, compared by total degree and then
/// lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    deg: u64,
    exps: Vec<u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial { deg: 0, exps: Vec::new() }
    }

    pub fn var(v: usize, e: u32) -> Self {
        if e == 0 {
            return Self::one();
        }
        let mut exps = vec![0; v + 1];
        exps[v] = e;
        Monomial { deg: e as u64, exps }
    }

    pub fn from_exps(mut exps: Vec<u32>) -> Self {
        while exps.last() == Some(&0) {
            exps.pop();
        }
        let deg = exps.iter().map(|&e| e as u64).sum();
        Monomial { deg, exps }
    }

    pub fn degree(&self) -> u64 {
        self.deg
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn exp(&self, v: usize) -> u32 {
        self.exps.get(v).copied().unwrap_or(0)
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    /// Number of variable slots in use (index of the last variable + 1).
    pub fn width(&self) -> usize {
        self.exps.len()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let n = self.exps.len().max(other.exps.len());
        let mut exps = Vec::with_capacity(n);
        for i in 0..n {
            exps.push(self.exp(i) + other.exp(i));
        }
        Monomial { deg: self.deg + other.deg, exps }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.len() <= other.exps.len() && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self`; caller guarantees divisibility.
    pub fn div_into(&self, other: &Monomial) -> Monomial {
        let exps = other.exps.iter().enumerate().map(|(i, &e)| e - self.exp(i)).collect();
        Monomial::from_exps(exps)
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.min(b)).collect();
        Monomial::from_exps(exps)
    }

    pub fn scale_exps(&self, k: u32) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().map(|&e| e.checked_mul(k).expect("exponent overflow")).collect();
        Monomial { deg: self.deg * k as u64, exps }
    }

    pub fn all_divisible_by(&self, k: u32) -> bool {
        self.exps.iter().all(|e| e % k == 0)
    }

    pub fn shrink_exps(&self, k: u32) -> Monomial {
        Monomial { deg: self.deg / k as u64, exps: self.exps.iter().map(|&e| e / k).collect() }
    }

    /// Drop variable `v`, returning the monomial without it and its exponent.
    pub fn split_var(&self, v: usize) -> (Monomial, u32) {
        let e = self.exp(v);
        if e == 0 {
            return (self.clone(), 0);
        }
        let mut exps = self.exps.clone();
        exps[v] = 0;
        (Monomial::from_exps(exps), e)
    }

    /// Move every variable `i` to `map[i]`.
    pub fn remap(&self, map: &[usize]) -> Monomial {
        let width = self.exps.iter().enumerate().filter(|(_, e)| **e > 0).map(|(i, _)| map[i] + 1).max();
        let mut exps = vec![0; width.unwrap_or(0)];
        for (i, &e) in self.exps.iter().enumerate() {
            if e > 0 {
                exps[map[i]] += e;
            }
        }
        Monomial::from_exps(exps)
    }
}

/// Polynomial over F_p with coefficients in `1..p`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    p: u32,
    terms: BTreeMap<Monomial, u32>,
}

impl Poly {
    pub fn zero(p: u32) -> Self {
        Poly { p, terms: BTreeMap::new() }
    }

    pub fn constant(p: u32, c: u32) -> Self {
        let mut r = Self::zero(p);
        let c = c % p;
        if c != 0 {
            r.terms.insert(Monomial::one(), c);
        }
        r
    }

    pub fn one(p: u32) -> Self {
        Self::constant(p, 1)
    }

    pub fn var(p: u32, v: usize) -> Self {
        Self::monomial(p, Monomial::var(v, 1), 1)
    }

    pub fn monomial(p: u32, m: Monomial, c: u32) -> Self {
        let mut r = Self::zero(p);
        let c = c % p;
        if c != 0 {
            r.terms.insert(m, c);
        }
        r
    }

    pub fn from_terms(p: u32, terms: impl IntoIterator<Item = (Monomial, u32)>) -> Self {
        let mut r = Self::zero(p);
        for (m, c) in terms {
            r.add_term(m, c);
        }
        r
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &u32)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&Monomial::one()) == Some(&1)
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&Monomial::one()))
    }

    pub fn constant_term(&self) -> u32 {
        self.terms.get(&Monomial::one()).copied().unwrap_or(0)
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Leading term under grlex.
    pub fn leading(&self) -> Option<(&Monomial, u32)> {
        self.terms.iter().next_back().map(|(m, c)| (m, *c))
    }

    pub fn leading_coeff(&self) -> u32 {
        self.leading().map(|(_, c)| c).unwrap_or(0)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(|m| m.degree()).max().unwrap_or(0)
    }

    /// Number of variable slots any monomial touches.
    pub fn width(&self) -> usize {
        self.terms.keys().map(|m| m.width()).max().unwrap_or(0)
    }

    pub fn uses_var(&self, v: usize) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn vars(&self) -> Vec<bool> {
        let mut used = vec![false; self.width()];
        for m in self.terms.keys() {
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used
    }

    pub fn degree_in(&self, v: usize) -> u32 {
        self.terms.keys().map(|m| m.exp(v)).max().unwrap_or(0)
    }

    pub fn add_term(&mut self, m: Monomial, c: u32) {
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                let s = fp_add(p, *e.get(), c);
                if s == 0 {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let (big, small) = if self.terms.len() >= other.terms.len() { (self, other) } else { (other, self) };
        let mut r = big.clone();
        for (m, c) in &small.terms {
            r.add_term(m.clone(), *c);
        }
        r
    }

    pub fn neg(&self) -> Poly {
        let p = self.p;
        Poly { p, terms: self.terms.iter().map(|(m, c)| (m.clone(), p - c)).collect() }
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), self.p - c);
        }
        r
    }

    pub fn scalar_mul(&self, c: u32) -> Poly {
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(p);
        }
        Poly { p, terms: self.terms.iter().map(|(m, a)| (m.clone(), fp_mul(p, *a, c))).collect() }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: u32) -> Poly {
        let p = self.p;
        let c = c % p;
        if c == 0 {
            return Poly::zero(p);
        }
        Poly { p, terms: self.terms.iter().map(|(a, x)| (a.mul(m), fp_mul(p, *x, c))).collect() }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.p);
        }
        if other.is_monomial() {
            let (m, c) = other.leading().unwrap();
            return self.mul_monomial(m, c);
        }
        if self.is_monomial() {
            let (m, c) = self.leading().unwrap();
            return other.mul_monomial(m, c);
        }
        let p = self.p;
        let mut r = Poly::zero(p);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), fp_mul(p, *ca, *cb));
            }
        }
        r
    }

    pub fn pow(&self, mut e: u64) -> Poly {
        // x^p is cheap in characteristic p, so peel off p-adic digits first.
        let p = self.p as u64;
        let mut base = self.clone();
        let mut acc = Poly::one(self.p);
        while e > 0 {
            let d = e % p;
            for _ in 0..d {
                acc = acc.mul(&base);
            }
            e /= p;
            if e > 0 {
                base = base.frobenius_exps(1);
            }
        }
        acc
    }

    /// Multiply every exponent by `p^k`: the p^k-th power map on F_p[X].
    pub fn frobenius_exps(&self, k: u32) -> Poly {
        if k == 0 {
            return self.clone();
        }
        let f = self.p.checked_pow(k).expect("exponent overflow");
        Poly { p: self.p, terms: self.terms.iter().map(|(m, c)| (m.scale_exps(f), *c)).collect() }
    }

    /// True iff the polynomial is a p-th power in F_p[X].
    pub fn is_pth_power(&self) -> bool {
        self.terms.keys().all(|m| m.all_divisible_by(self.p))
    }

    /// Inverse of [`Poly::frobenius_exps`] with `k = 1`; requires [`Poly::is_pth_power`].
    pub fn pth_root(&self) -> Poly {
        debug_assert!(self.is_pth_power());
        Poly { p: self.p, terms: self.terms.iter().map(|(m, c)| (m.shrink_exps(self.p), *c)).collect() }
    }

    /// Scale so that the leading coefficient is 1.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some((_, 1)) => self.clone(),
            Some((_, c)) => self.scalar_mul(fp_inv(self.p, c)),
        }
    }

    /// Exact quotient `self / d`, or `None` if `d` does not divide `self`.
    pub fn div_exact(&self, d: &Poly) -> Option<Poly> {
        assert!(!d.is_zero(), "polynomial division by zero");
        let p = self.p;
        if d.is_constant() {
            return Some(self.scalar_mul(fp_inv(p, d.constant_term())));
        }
        let (lm, lc) = {
            let (m, c) = d.leading().unwrap();
            (m.clone(), c)
        };
        let inv = fp_inv(p, lc);
        let mut r = self.clone();
        let mut q = Poly::zero(p);
        while let Some((m, c)) = r.leading() {
            if !lm.divides(m) {
                return None;
            }
            let t = lm.div_into(m);
            let coef = fp_mul(p, c, inv);
            q.add_term(t.clone(), coef);
            for (dm, dc) in &d.terms {
                r.add_term(dm.mul(&t), p - fp_mul(p, *dc, coef));
            }
        }
        Some(q)
    }

    /// Coefficients with respect to variable `v`, keyed by degree.
    pub fn coeffs_in(&self, v: usize) -> BTreeMap<u32, Poly> {
        let mut out: BTreeMap<u32, Poly> = BTreeMap::new();
        for (m, c) in &self.terms {
            let (rest, e) = m.split_var(v);
            out.entry(e).or_insert_with(|| Poly::zero(self.p)).add_term(rest, *c);
        }
        out
    }

    /// Greatest common monomial divisor of all terms.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        let mut g = match it.next() {
            Some(m) => m.clone(),
            None => return Monomial::one(),
        };
        for m in it {
            if g.is_one() {
                break;
            }
            g = g.gcd(m);
        }
        g
    }

    /// Rename variables; `map[i]` is the new index of variable `i`.
    pub fn remap(&self, map: &[usize]) -> Poly {
        Poly::from_terms(self.p, self.terms.iter().map(|(m, c)| (m.remap(map), *c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(v: usize) -> Poly {
        Poly::var(3, v)
    }

    #[test]
    fn grlex_leading_term() {
        // x0*x1 (deg 2) beats x0 (deg 1); among degree 2, x0^2 beats x0*x1.
        let f = x(0).mul(&x(1)).add(&x(0));
        assert_eq!(f.leading().unwrap().0, &Monomial::from_exps(vec![1, 1]));
        let g = x(0).mul(&x(0)).add(&x(0).mul(&x(1)));
        assert_eq!(g.leading().unwrap().0, &Monomial::from_exps(vec![2]));
    }

    #[test]
    fn exact_division_round_trip() {
        let a = x(0).add(&x(1)).add(&Poly::one(3));
        let b = x(0).mul(&x(2)).sub(&Poly::constant(3, 2));
        let prod = a.mul(&b);
        assert_eq!(prod.div_exact(&a).unwrap(), b);
        assert_eq!(prod.div_exact(&b).unwrap(), a);
        assert!(a.div_exact(&b).is_none());
    }

    #[test]
    fn frobenius_is_additive() {
        let f = x(0).add(&x(1));
        assert_eq!(f.pow(3), x(0).pow(3).add(&x(1).pow(3)));
        assert_eq!(f.pow(3), f.frobenius_exps(1));
        assert!(f.pow(3).is_pth_power());
        assert_eq!(f.pow(3).pth_root(), f);
    }

    #[test]
    fn field_helpers() {
        assert_eq!(fp_mul(5, fp_inv(5, 3), 3), 1);
        assert_eq!(fp_from_i64(7, -1), 6);
        assert!(is_prime(2) && is_prime(3) && is_prime(5) && !is_prime(9) && !is_prime(1));
    }
}

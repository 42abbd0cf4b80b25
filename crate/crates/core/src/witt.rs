//! p-typical Witt vectors of finite length over perfect coefficient fields.
//!
//! The sum and product structure polynomials `S_i`, `P_i` are generated over
//! the integers from the ghost components `w_i = Σ_{j<=i} p^j Z_j^{p^{i-j}}`
//! and cached per `(p, n)`. Arithmetic evaluates their reductions mod p.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use spin::RwLock;

use crate::pfield::poly::is_prime;
use crate::pfield::{eval_poly, Monomial, PElem, Poly};

pub const DEFAULT_LENGTH_BOUND: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum WittError {
    #[error("length {n} exceeds the bound {bound}")]
    LengthBound { n: usize, bound: usize },
    #[error("length must be at least 1")]
    EmptyLength,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("Witt vectors differ in prime, length or coefficient field")]
    Mismatch,
    #[error("ghost identity fails for {which}_{index}")]
    GhostIdentity { which: char, index: usize },
}

/// Polynomial with integer coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct IntPoly {
    terms: BTreeMap<Monomial, BigInt>,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly::default()
    }

    pub fn constant(c: BigInt) -> Self {
        let mut f = IntPoly::zero();
        f.add_term(Monomial::one(), c);
        f
    }

    pub fn var(v: usize) -> Self {
        let mut f = IntPoly::zero();
        f.add_term(Monomial::var(v, 1), BigInt::one());
        f
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            alloc::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            alloc::collections::btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn add(&self, other: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), c.clone());
        }
        r
    }

    pub fn sub(&self, other: &IntPoly) -> IntPoly {
        let mut r = self.clone();
        for (m, c) in &other.terms {
            r.add_term(m.clone(), -c);
        }
        r
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly { terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn mul(&self, other: &IntPoly) -> IntPoly {
        let mut r = IntPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                r.add_term(ma.mul(mb), ca * cb);
            }
        }
        r
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut acc = IntPoly::constant(BigInt::one());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// `self / d` when every coefficient is divisible by `d`.
    pub fn div_exact(&self, d: &BigInt) -> Option<IntPoly> {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let (q, r) = c.div_rem(d);
            if !r.is_zero() {
                return None;
            }
            terms.insert(m.clone(), q);
        }
        Some(IntPoly { terms })
    }

    /// Reduction modulo the prime `p`.
    pub fn reduce(&self, p: u32) -> Poly {
        let pb = BigInt::from(p);
        Poly::from_terms(p, self.terms.iter().map(|(m, c)| (m.clone(), c.mod_floor(&pb).to_u32().unwrap())))
    }

    pub fn eval(&self, values: &[BigInt]) -> BigInt {
        let mut acc = BigInt::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(values[v].clone(), e as usize);
                }
            }
            acc += t;
        }
        acc
    }

    /// Canonical text form with the given variable names, highest terms first.
    pub fn render(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            let mut factors: Vec<String> = Vec::new();
            if !a.is_one() || m.is_one() {
                factors.push(format!("{a}"));
            }
            for (v, &e) in m.exps().iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(names[v].clone()),
                    _ => factors.push(format!("{}^{e}", names[v])),
                }
            }
            out.push_str(&factors.join("*"));
        }
        out
    }
}

/// `Σ_{j<=i} p^j Z_{off+j}^{p^{i-j}}`.
fn ghost(p: u32, i: usize, off: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    for j in 0..=i {
        let mut t = IntPoly::zero();
        t.add_term(Monomial::var(off + j, p.pow((i - j) as u32)), BigInt::from(p).pow(j as u32));
        acc = acc.add(&t);
    }
    acc
}

/// `Σ_j p^j F_j^{p^{i-j}}` over the given components with `j <= i`.
fn ghost_of(p: u32, comps: &[IntPoly], i: usize) -> IntPoly {
    let mut acc = IntPoly::zero();
    for (j, f) in comps.iter().enumerate().take(i + 1) {
        let mut g = f.clone();
        for _ in 0..(i - j) {
            g = g.pow(p as u64);
        }
        acc = acc.add(&g.scale(&BigInt::from(p).pow(j as u32)));
    }
    acc
}

/// Sum and product structure polynomials for `W_n` over `Z`.
/// Variables: `X_i` has index `i`, `Y_i` has index `n + i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WittPolys {
    p: u32,
    n: usize,
    sum: Vec<IntPoly>,
    prod: Vec<IntPoly>,
    sum_mod: Vec<Poly>,
    prod_mod: Vec<Poly>,
}

impl WittPolys {
    pub fn generate(p: u32, n: usize) -> Result<WittPolys, WittError> {
        if !is_prime(p) {
            return Err(WittError::NotPrime(p));
        }
        if n == 0 {
            return Err(WittError::EmptyLength);
        }
        let mut sum: Vec<IntPoly> = Vec::with_capacity(n);
        let mut prod: Vec<IntPoly> = Vec::with_capacity(n);
        for i in 0..n {
            let wx = ghost(p, i, 0);
            let wy = ghost(p, i, n);
            let pi = BigInt::from(p).pow(i as u32);
            // only components 0..i are known, so these are the lower ghost terms
            let lower_s = ghost_of(p, &sum, i);
            let lower_p = ghost_of(p, &prod, i);
            let s = wx.add(&wy).sub(&lower_s).div_exact(&pi).expect("ghost recursion divides exactly");
            let q = wx.mul(&wy).sub(&lower_p).div_exact(&pi).expect("ghost recursion divides exactly");
            sum.push(s);
            prod.push(q);
        }
        Ok(Self::from_parts(p, n, sum, prod))
    }

    /// Assemble without checking; used to build deliberately broken tables.
    pub fn from_parts(p: u32, n: usize, sum: Vec<IntPoly>, prod: Vec<IntPoly>) -> WittPolys {
        let sum_mod = sum.iter().map(|f| f.reduce(p)).collect();
        let prod_mod = prod.iter().map(|f| f.reduce(p)).collect();
        WittPolys { p, n, sum, prod, sum_mod, prod_mod }
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn sum(&self) -> &[IntPoly] {
        &self.sum
    }

    pub fn prod(&self) -> &[IntPoly] {
        &self.prod
    }

    pub fn variable_names(&self) -> Vec<String> {
        (0..self.n).map(|i| format!("X_{i}")).chain((0..self.n).map(|i| format!("Y_{i}"))).collect()
    }

    /// Check `w_i(S) = w_i(X) + w_i(Y)` and `w_i(P) = w_i(X) w_i(Y)` as
    /// polynomial identities over the integers.
    pub fn verify_ghost(&self) -> Result<(), WittError> {
        for i in 0..self.n {
            let wx = ghost(self.p, i, 0);
            let wy = ghost(self.p, i, self.n);
            if ghost_of(self.p, &self.sum, i) != wx.add(&wy) {
                return Err(WittError::GhostIdentity { which: 'S', index: i });
            }
            if ghost_of(self.p, &self.prod, i) != wx.mul(&wy) {
                return Err(WittError::GhostIdentity { which: 'P', index: i });
            }
        }
        Ok(())
    }

    pub fn render(&self) -> String {
        let names = self.variable_names();
        let mut out = String::new();
        for i in 0..self.n {
            let _ = writeln!(out, "S_{i} = {}", self.sum[i].render(&names));
        }
        for i in 0..self.n {
            let _ = writeln!(out, "P_{i} = {}", self.prod[i].render(&names));
        }
        out
    }
}

/// Initialize-once, read-many table of structure polynomials.
pub struct WittCache {
    bound: usize,
    table: RwLock<BTreeMap<(u32, usize), Arc<WittPolys>>>,
}

impl WittCache {
    pub const fn new(bound: usize) -> Self {
        WittCache { bound, table: RwLock::new(BTreeMap::new()) }
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn get(&self, p: u32, n: usize) -> Result<Arc<WittPolys>, WittError> {
        if n > self.bound {
            return Err(WittError::LengthBound { n, bound: self.bound });
        }
        if let Some(w) = self.table.read().get(&(p, n)) {
            return Ok(w.clone());
        }
        let w = Arc::new(WittPolys::generate(p, n)?);
        debug_assert!(w.verify_ghost().is_ok());
        Ok(self.table.write().entry((p, n)).or_insert(w).clone())
    }

    /// Install a table without generating it. Entries are never replaced.
    pub fn preload(&self, polys: WittPolys) -> Arc<WittPolys> {
        let key = (polys.p, polys.n);
        self.table.write().entry(key).or_insert_with(|| Arc::new(polys)).clone()
    }
}

static GLOBAL: WittCache = WittCache::new(DEFAULT_LENGTH_BOUND);

/// Structure polynomials from the process-wide cache.
pub fn witt_structure_polys(p: u32, n: usize) -> Result<Arc<WittPolys>, WittError> {
    GLOBAL.get(p, n)
}

/// A Witt vector `(a_0, ..., a_{n-1})` over a perfect field.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WittVec {
    entries: Vec<PElem>,
}

impl WittVec {
    pub fn new(entries: Vec<PElem>) -> Result<WittVec, WittError> {
        let first = entries.first().ok_or(WittError::EmptyLength)?;
        if entries.iter().any(|e| e.field() != first.field()) {
            return Err(WittError::Mismatch);
        }
        Ok(WittVec { entries })
    }

    pub fn zero(field: &Arc<crate::pfield::PField>, n: usize) -> WittVec {
        WittVec { entries: alloc::vec![PElem::zero(field); n] }
    }

    /// `[a] = (a, 0, ..., 0)`.
    pub fn teichmuller(a: &PElem, n: usize) -> WittVec {
        let mut entries = alloc::vec![PElem::zero(a.field()); n];
        entries[0] = a.clone();
        WittVec { entries }
    }

    pub fn entries(&self) -> &[PElem] {
        &self.entries
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn p(&self) -> u32 {
        self.entries[0].p()
    }

    fn values(&self, other: &WittVec) -> Result<Vec<PElem>, WittError> {
        if self.len() != other.len() || self.entries[0].field() != other.entries[0].field() {
            return Err(WittError::Mismatch);
        }
        Ok(self.entries.iter().chain(other.entries.iter()).cloned().collect())
    }

    fn apply(&self, other: &WittVec, polys: &[Poly]) -> Result<WittVec, WittError> {
        let vals = self.values(other)?;
        let field = self.entries[0].field();
        let entries =
            polys.iter().map(|f| eval_poly(f, field, &vals).expect("polynomial evaluation cannot divide")).collect();
        Ok(WittVec { entries })
    }

    pub fn add_with(&self, other: &WittVec, polys: &WittPolys) -> Result<WittVec, WittError> {
        if polys.p != self.p() || polys.n != self.len() {
            return Err(WittError::Mismatch);
        }
        self.apply(other, &polys.sum_mod)
    }

    pub fn mul_with(&self, other: &WittVec, polys: &WittPolys) -> Result<WittVec, WittError> {
        if polys.p != self.p() || polys.n != self.len() {
            return Err(WittError::Mismatch);
        }
        self.apply(other, &polys.prod_mod)
    }

    pub fn add(&self, other: &WittVec) -> Result<WittVec, WittError> {
        self.add_with(other, &*witt_structure_polys(self.p(), self.len())?)
    }

    pub fn mul(&self, other: &WittVec) -> Result<WittVec, WittError> {
        self.mul_with(other, &*witt_structure_polys(self.p(), self.len())?)
    }

    /// `k·x` by repeated addition.
    pub fn mul_int(&self, k: u64) -> Result<WittVec, WittError> {
        let polys = witt_structure_polys(self.p(), self.len())?;
        let mut acc = WittVec::zero(self.entries[0].field(), self.len());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.add_with(&base, &polys)?;
            }
            k >>= 1;
            if k > 0 {
                base = base.add_with(&base, &polys)?;
            }
        }
        Ok(acc)
    }

    /// `V(a_0, ..., a_{n-1}) = (0, a_0, ..., a_{n-1})`, one entry longer.
    pub fn verschiebung(&self) -> WittVec {
        let mut entries = Vec::with_capacity(self.len() + 1);
        entries.push(PElem::zero(self.entries[0].field()));
        entries.extend(self.entries.iter().cloned());
        WittVec { entries }
    }

    /// Entrywise p-th power.
    pub fn frobenius_lift(&self) -> WittVec {
        WittVec { entries: self.entries.iter().map(|a| a.frobenius(1)).collect() }
    }

    pub fn truncate(&self, n: usize) -> WittVec {
        assert!(n >= 1 && n <= self.len());
        WittVec { entries: self.entries[..n].to_vec() }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WittOp {
    Add,
    Mul,
}

pub fn witt_arith(op: WittOp, a: &WittVec, b: &WittVec) -> Result<WittVec, WittError> {
    match op {
        WittOp::Add => a.add(b),
        WittOp::Mul => a.mul(b),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfield::PField;
    use crate::sample;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn names(n: usize) -> Vec<String> {
        WittPolys::generate(2, n).unwrap().variable_names()
    }

    #[test]
    fn degree_zero_components() {
        for p in [2, 3, 5] {
            let w = WittPolys::generate(p, 1).unwrap();
            assert_eq!(w.sum()[0].render(&names(1)), "X_0 + Y_0");
            assert_eq!(w.prod()[0].render(&names(1)), "X_0*Y_0");
        }
    }

    /// Solve the degree-one ghost identity by hand: for p = 2,
    /// S_1 = (X_0^2 + 2 X_1 + Y_0^2 + 2 Y_1 - (X_0 + Y_0)^2) / 2.
    #[test]
    fn first_components_for_two() {
        let w = WittPolys::generate(2, 2).unwrap();
        let x0 = IntPoly::var(0);
        let x1 = IntPoly::var(1);
        let y0 = IntPoly::var(2);
        let y1 = IntPoly::var(3);
        let two = BigInt::from(2);
        let ghost_x = x0.pow(2).add(&x1.scale(&two));
        let ghost_y = y0.pow(2).add(&y1.scale(&two));
        let s1 = ghost_x.add(&ghost_y).sub(&x0.add(&y0).pow(2)).div_exact(&two).unwrap();
        let p1 = ghost_x.mul(&ghost_y).sub(&x0.mul(&y0).pow(2)).div_exact(&two).unwrap();
        assert_eq!(w.sum()[1], s1);
        assert_eq!(w.prod()[1], p1);
        assert_eq!(s1, x1.add(&y1).sub(&x0.mul(&y0)));
        assert_eq!(p1, x0.pow(2).mul(&y1).add(&x1.mul(&y0.pow(2))).add(&x1.mul(&y1).scale(&two)));
    }

    #[test]
    fn ghost_identities_hold_symbolically() {
        for p in [2, 3] {
            for n in 1..=4 {
                WittPolys::generate(p, n).unwrap().verify_ghost().unwrap();
            }
        }
    }

    /// Independent oracle: the ghost map is a ring homomorphism on integer
    /// Witt vectors, checked at random integer points.
    #[test]
    fn ghost_map_at_integer_points() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3] {
            let n = 4;
            let w = WittPolys::generate(p, n).unwrap();
            for _ in 0..5 {
                let vals: Vec<BigInt> = (0..2 * n).map(|_| BigInt::from(rng.gen_range(-9i64..=9))).collect();
                let s: Vec<BigInt> = w.sum().iter().map(|f| f.eval(&vals)).collect();
                let q: Vec<BigInt> = w.prod().iter().map(|f| f.eval(&vals)).collect();
                let gh = |z: &[BigInt], i: usize| -> BigInt {
                    (0..=i)
                        .map(|j| {
                            BigInt::from(p).pow(j as u32)
                                * num_traits::pow(z[j].clone(), p.pow((i - j) as u32) as usize)
                        })
                        .sum()
                };
                for i in 0..n {
                    assert_eq!(gh(&s, i), gh(&vals[..n], i) + gh(&vals[n..], i));
                    assert_eq!(gh(&q, i), gh(&vals[..n], i) * gh(&vals[n..], i));
                }
            }
        }
    }

    #[test]
    fn length_bound() {
        let cache = WittCache::new(3);
        assert_eq!(cache.get(2, 4).unwrap_err(), WittError::LengthBound { n: 4, bound: 3 });
        assert!(cache.get(2, 3).is_ok());
    }

    #[test]
    fn addition_in_length_two() {
        let k = PField::new(2, &["a0", "a1", "b0", "b1"]).unwrap();
        let v = |s: &str| PElem::var(&k, s).unwrap();
        let a = WittVec::new(alloc::vec![v("a0"), v("a1")]).unwrap();
        let b = WittVec::new(alloc::vec![v("b0"), v("b1")]).unwrap();
        let s = witt_arith(WittOp::Add, &a, &b).unwrap();
        assert_eq!(s.entries()[0], v("a0").add(&v("b0")));
        assert_eq!(s.entries()[1], v("a1").add(&v("b1")).add(&v("a0").mul(&v("b0"))));
        let z = WittVec::zero(&k, 2);
        assert_eq!(a.add(&z).unwrap(), a);
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let k = PField::new(3, &["xbar", "u"]).unwrap();
        let x = PElem::var(&k, "xbar").unwrap();
        let u = PElem::parse(&k, "u^(1/3) + 1").unwrap();
        for n in 1..=3 {
            let prod = WittVec::teichmuller(&x, n).mul(&WittVec::teichmuller(&u, n)).unwrap();
            assert_eq!(prod, WittVec::teichmuller(&x.mul(&u), n));
        }
    }

    #[test]
    fn verschiebung_shifts() {
        let k = PField::new(2, &["a", "b"]).unwrap();
        let a = PElem::var(&k, "a").unwrap();
        let b = PElem::var(&k, "b").unwrap();
        let w = WittVec::new(alloc::vec![a.clone(), b.clone()]).unwrap();
        assert_eq!(w.verschiebung().entries(), &[PElem::zero(&k), a, b]);
    }

    #[test]
    fn presentation_identity() {
        for p in [2, 3] {
            let k = PField::new(p, &["xbar", "u1", "u2"]).unwrap();
            let v = |s: &str| PElem::var(&k, s).unwrap();
            let lhs = WittVec::teichmuller(&v("xbar"), 3)
                .add(&WittVec::teichmuller(&v("u1"), 3).mul_int(p as u64).unwrap())
                .unwrap()
                .add(&WittVec::teichmuller(&v("u2"), 3).mul_int((p * p) as u64).unwrap())
                .unwrap();
            let want = [v("xbar"), v("u1").frobenius(1), v("u2").frobenius(2)];
            assert_eq!(lhs.entries(), &want);
        }
    }

    #[test]
    fn p_times_is_shifted_frobenius() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for p in [2, 3] {
            let k = PField::new(p, &["x", "z"]).unwrap();
            for n in 1..=3 {
                let x = WittVec::new((0..n).map(|_| sample::pelem(&mut rng, &k, 2, 1)).collect()).unwrap();
                let lhs = x.mul_int(p as u64).unwrap();
                let rhs = x.frobenius_lift().verschiebung().truncate(n);
                assert_eq!(lhs, rhs);
            }
        }
    }

    #[test]
    fn render_is_canonical() {
        let w = WittPolys::generate(2, 2).unwrap();
        let text = w.render();
        assert!(text.contains("S_1 = -X_0*Y_0 + X_1 + Y_1"), "{text}");
        assert!(text.contains("P_1 = X_0^2*Y_1 + X_1*Y_0^2 + 2*X_1*Y_1"), "{text}");
    }

    mod props {
        use super::super::*;
        use crate::pfield::PField;
        use crate::sample;
        use proptest::prelude::*;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(32))]

            #[test]
            fn ring_axioms(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let p = if rng.gen_bool(0.5) { 2 } else { 3 };
                let k = PField::new(p, &["x", "z"]).unwrap();
                let n = rng.gen_range(1..=3);
                let mut vec = || WittVec::new((0..n).map(|_| sample::pelem(&mut rng, &k, 2, 1)).collect()).unwrap();
                let (a, b, c) = (vec(), vec(), vec());
                prop_assert_eq!(a.add(&b).unwrap().add(&c).unwrap(), a.add(&b.add(&c).unwrap()).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap().mul(&c).unwrap(), a.mul(&b.mul(&c).unwrap()).unwrap());
                prop_assert_eq!(a.add(&b).unwrap(), b.add(&a).unwrap());
                prop_assert_eq!(a.mul(&b).unwrap(), b.mul(&a).unwrap());
                prop_assert_eq!(a.mul(&b.add(&c).unwrap()).unwrap(), a.mul(&b).unwrap().add(&a.mul(&c).unwrap()).unwrap());
                let one = WittVec::teichmuller(&PElem::one(&k), n);
                prop_assert_eq!(a.mul(&one).unwrap(), a.clone());
            }
        }
    }
}

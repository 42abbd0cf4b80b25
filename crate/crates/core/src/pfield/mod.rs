//! Perfect closures of purely transcendental function fields over F_p.
//!
//! An element of `F_p(x_1, ..., x_r)^{p^{-∞}}` is stored as a reduced fraction
//! `num(X) / den(X)` of polynomials in `X_v = x_v^{1/p^m}` for a single scale
//! `m`. The scale is kept minimal and `den` monic, so equal elements have
//! identical representations.

pub mod gcd;
mod modgcd;
pub mod poly;

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{self, Evaluator, Expr, ParseError};
pub use gcd::gcd;
use poly::{fp_from_i64, fp_inv, is_prime};
pub use poly::{Monomial, Poly};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PfError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("{0} is not prime")]
    NotPrime(u32),
    #[error("invalid variable name '{0}'")]
    InvalidName(String),
    #[error("duplicate variable '{0}'")]
    DuplicateVariable(String),
    #[error("unknown variable '{0}'")]
    UnknownVariable(String),
    #[error("fields are incompatible")]
    FieldMismatch,
    #[error("exponent denominator {0} is not a power of p")]
    BadExponent(i64),
    #[error(transparent)]
    Parse(#[from] ParseError),
}

/// The registry of transcendentals generating a coefficient field.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PField {
    p: u32,
    vars: Vec<String>,
}

impl PField {
    pub fn new(p: u32, vars: &[&str]) -> Result<Arc<PField>, PfError> {
        let vars: Vec<String> = vars.iter().map(|s| s.to_string()).collect();
        Self::from_names(p, vars)
    }

    pub fn from_names(p: u32, vars: Vec<String>) -> Result<Arc<PField>, PfError> {
        if !is_prime(p) {
            return Err(PfError::NotPrime(p));
        }
        for (i, v) in vars.iter().enumerate() {
            if !expr::is_identifier(v) {
                return Err(PfError::InvalidName(v.clone()));
            }
            if vars[..i].contains(v) {
                return Err(PfError::DuplicateVariable(v.clone()));
            }
        }
        Ok(Arc::new(PField { p, vars }))
    }

    pub fn p(&self) -> u32 {
        self.p
    }

    pub fn vars(&self) -> &[String] {
        &self.vars
    }

    pub fn num_vars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|v| v == name)
    }

    /// A new field with `names` appended as fresh transcendentals.
    pub fn adjoin(&self, names: &[String]) -> Result<Arc<PField>, PfError> {
        let mut vars = self.vars.clone();
        vars.extend(names.iter().cloned());
        Self::from_names(self.p, vars)
    }

    /// True when `other` was obtained from `self` by adjoining variables.
    pub fn embeds_into(&self, other: &PField) -> bool {
        self.p == other.p && other.vars.len() >= self.vars.len() && other.vars[..self.vars.len()] == self.vars[..]
    }
}

fn same_field(a: &Arc<PField>, b: &Arc<PField>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// Element of a perfect closure `F_p(vars)^{p^{-∞}}`.
#[derive(Clone)]
pub struct PElem {
    field: Arc<PField>,
    scale: u32,
    num: Poly,
    den: Poly,
}

impl PartialEq for PElem {
    fn eq(&self, other: &Self) -> bool {
        same_field(&self.field, &other.field)
            && self.scale == other.scale
            && self.num == other.num
            && self.den == other.den
    }
}

impl Eq for PElem {}

impl PElem {
    pub fn zero(field: &Arc<PField>) -> Self {
        let p = field.p;
        PElem { field: field.clone(), scale: 0, num: Poly::zero(p), den: Poly::one(p) }
    }

    pub fn one(field: &Arc<PField>) -> Self {
        Self::from_int(field, 1)
    }

    pub fn from_int(field: &Arc<PField>, c: i64) -> Self {
        let p = field.p;
        PElem { field: field.clone(), scale: 0, num: Poly::constant(p, fp_from_i64(p, c)), den: Poly::one(p) }
    }

    pub fn var(field: &Arc<PField>, name: &str) -> Result<Self, PfError> {
        let v = field.var_index(name).ok_or_else(|| PfError::UnknownVariable(name.to_string()))?;
        Ok(Self::var_at(field, v))
    }

    pub fn var_at(field: &Arc<PField>, v: usize) -> Self {
        assert!(v < field.num_vars(), "variable index out of range");
        let p = field.p;
        PElem { field: field.clone(), scale: 0, num: Poly::var(p, v), den: Poly::one(p) }
    }

    /// Build `num / den` with `X_v = x_v^{1/p^scale}` and normalize.
    pub fn from_parts(field: &Arc<PField>, scale: u32, num: Poly, den: Poly) -> Result<Self, PfError> {
        if den.is_zero() {
            return Err(PfError::DivisionByZero);
        }
        assert!(
            num.width() <= field.num_vars() && den.width() <= field.num_vars(),
            "polynomial uses unknown variables"
        );
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() { (num, den) } else { (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap()) };
        Ok(Self::from_coprime(field.clone(), scale, num, den))
    }

    fn from_coprime(field: Arc<PField>, mut scale: u32, mut num: Poly, mut den: Poly) -> Self {
        let p = field.p;
        if num.is_zero() {
            return PElem { field, scale: 0, num, den: Poly::one(p) };
        }
        let lc = den.leading_coeff();
        if lc != 1 {
            let c = fp_inv(p, lc);
            num = num.scalar_mul(c);
            den = den.scalar_mul(c);
        }
        while scale > 0 && num.is_pth_power() && den.is_pth_power() {
            num = num.pth_root();
            den = den.pth_root();
            scale -= 1;
        }
        PElem { field, scale, num, den }
    }

    pub fn field(&self) -> &Arc<PField> {
        &self.field
    }

    pub fn p(&self) -> u32 {
        self.field.p
    }

    /// The exponent scale `m`: polynomials are in `x_v^{1/p^m}`.
    pub fn scale(&self) -> u32 {
        self.scale
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as an element of F_p, when it has no variables.
    pub fn as_constant(&self) -> Option<u32> {
        if self.num.is_constant() && self.den.is_one() {
            Some(self.num.constant_term())
        } else {
            None
        }
    }

    /// Lies in `F_p(vars)` itself (no fractional exponents).
    pub fn is_rational(&self) -> bool {
        self.scale == 0
    }

    fn check(&self, other: &PElem) {
        assert!(same_field(&self.field, &other.field), "PElem operands live in different fields");
    }

    fn lifted(&self, m: u32) -> (Poly, Poly) {
        let k = m - self.scale;
        (self.num.frobenius_exps(k), self.den.frobenius_exps(k))
    }

    pub fn add(&self, other: &PElem) -> PElem {
        self.check(other);
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let m = self.scale.max(other.scale);
        let (a, b) = self.lifted(m);
        let (c, d) = other.lifted(m);
        if b == d {
            let num = a.add(&c);
            if b.is_one() {
                return Self::from_coprime(self.field.clone(), m, num, b);
            }
            let g = gcd(&num, &b);
            let (num, den) = if g.is_one() { (num, b) } else { (num.div_exact(&g).unwrap(), b.div_exact(&g).unwrap()) };
            return Self::from_coprime(self.field.clone(), m, num, den);
        }
        // Henrici: with g = gcd(b, d) any common factor of the new numerator
        // and denominator already divides g.
        let g = gcd(&b, &d);
        let (b1, d1) =
            if g.is_one() { (b.clone(), d.clone()) } else { (b.div_exact(&g).unwrap(), d.div_exact(&g).unwrap()) };
        let num = a.mul(&d1).add(&c.mul(&b1));
        let den = b1.mul(&d);
        if g.is_one() || num.is_zero() {
            return Self::from_coprime(self.field.clone(), m, num, den);
        }
        let h = gcd(&num, &g);
        if h.is_one() {
            Self::from_coprime(self.field.clone(), m, num, den)
        } else {
            Self::from_coprime(self.field.clone(), m, num.div_exact(&h).unwrap(), den.div_exact(&h).unwrap())
        }
    }

    pub fn neg(&self) -> PElem {
        PElem { field: self.field.clone(), scale: self.scale, num: self.num.neg(), den: self.den.clone() }
    }

    pub fn sub(&self, other: &PElem) -> PElem {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &PElem) -> PElem {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return PElem::zero(&self.field);
        }
        let m = self.scale.max(other.scale);
        let (a, b) = self.lifted(m);
        let (c, d) = other.lifted(m);
        let g1 = gcd(&a, &d);
        let g2 = gcd(&c, &b);
        let (a, d) = if g1.is_one() { (a, d) } else { (a.div_exact(&g1).unwrap(), d.div_exact(&g1).unwrap()) };
        let (c, b) = if g2.is_one() { (c, b) } else { (c.div_exact(&g2).unwrap(), b.div_exact(&g2).unwrap()) };
        Self::from_coprime(self.field.clone(), m, a.mul(&c), b.mul(&d))
    }

    pub fn inv(&self) -> Result<PElem, PfError> {
        if self.is_zero() {
            return Err(PfError::DivisionByZero);
        }
        Ok(Self::from_coprime(self.field.clone(), self.scale, self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, other: &PElem) -> Result<PElem, PfError> {
        self.check(other);
        Ok(self.mul(&other.inv()?))
    }

    /// `self^{p^k}`; negative `k` takes `p^{|k|}`-th roots.
    pub fn frobenius(&self, k: i64) -> PElem {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        if k < 0 {
            let scale = self.scale.checked_add(k.unsigned_abs() as u32).expect("scale overflow");
            return Self::from_coprime(self.field.clone(), scale, self.num.clone(), self.den.clone());
        }
        let k = k as u32;
        if k <= self.scale {
            return PElem {
                field: self.field.clone(),
                scale: self.scale - k,
                num: self.num.clone(),
                den: self.den.clone(),
            };
        }
        let extra = k - self.scale;
        PElem {
            field: self.field.clone(),
            scale: 0,
            num: self.num.frobenius_exps(extra),
            den: self.den.frobenius_exps(extra),
        }
    }

    /// Integer power; negative exponents invert.
    pub fn pow(&self, e: i64) -> Result<PElem, PfError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let p = self.p() as u64;
        let mut e = e as u64;
        let mut acc = PElem::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            for _ in 0..e % p {
                acc = acc.mul(&base);
            }
            e /= p;
            if e > 0 {
                base = base.frobenius(1);
            }
        }
        Ok(acc)
    }

    /// Reinterpret in a field obtained by adjoining variables.
    pub fn embed(&self, field: &Arc<PField>) -> Result<PElem, PfError> {
        if !self.field.embeds_into(field) {
            return Err(PfError::FieldMismatch);
        }
        Ok(PElem { field: field.clone(), scale: self.scale, num: self.num.clone(), den: self.den.clone() })
    }

    /// Apply the F_p-algebra map sending variable `v` to `images[v]`,
    /// extended to the perfect closure and to fractions.
    pub fn substitute(&self, target: &Arc<PField>, images: &[PElem]) -> Result<PElem, PfError> {
        assert_eq!(images.len(), self.field.num_vars(), "one image per variable");
        let roots: Vec<PElem> = images.iter().map(|x| x.frobenius(-(self.scale as i64))).collect();
        let num = eval_poly(&self.num, target, &roots)?;
        let den = eval_poly(&self.den, target, &roots)?;
        num.checked_div(&den)
    }
}

/// Evaluate a polynomial with PElem values for its variables.
pub fn eval_poly(f: &Poly, field: &Arc<PField>, values: &[PElem]) -> Result<PElem, PfError> {
    let p = field.p;
    let mut cache: Vec<Vec<(u32, PElem)>> = alloc::vec![Vec::new(); values.len()];
    let mut acc = PElem::zero(field);
    for (m, c) in f.terms() {
        let mut t = PElem::from_int(field, *c as i64);
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let val = values.get(v).ok_or(PfError::FieldMismatch)?;
            let pw = match cache[v].iter().find(|(k, _)| *k == e) {
                Some((_, x)) => x.clone(),
                None => {
                    let x = val.pow(e as i64)?;
                    cache[v].push((e, x.clone()));
                    x
                }
            };
            t = t.mul(&pw);
        }
        acc = acc.add(&t);
    }
    debug_assert_eq!(acc.p(), p);
    Ok(acc)
}

impl core::ops::Add for &PElem {
    type Output = PElem;
    fn add(self, rhs: &PElem) -> PElem {
        PElem::add(self, rhs)
    }
}

impl core::ops::Sub for &PElem {
    type Output = PElem;
    fn sub(self, rhs: &PElem) -> PElem {
        PElem::sub(self, rhs)
    }
}

impl core::ops::Mul for &PElem {
    type Output = PElem;
    fn mul(self, rhs: &PElem) -> PElem {
        PElem::mul(self, rhs)
    }
}

impl core::ops::Neg for &PElem {
    type Output = PElem;
    fn neg(self) -> PElem {
        PElem::neg(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Div,
}

/// Field operation dispatch; only division can fail.
pub fn pf_arith(op: ArithOp, a: &PElem, b: &PElem) -> Result<PElem, PfError> {
    if !same_field(&a.field, &b.field) {
        return Err(PfError::FieldMismatch);
    }
    Ok(match op {
        ArithOp::Add => a.add(b),
        ArithOp::Sub => a.sub(b),
        ArithOp::Mul => a.mul(b),
        ArithOp::Div => a.checked_div(b)?,
    })
}

pub fn pf_frobenius(a: &PElem, k: i64) -> PElem {
    a.frobenius(k)
}

// ---------------------------------------------------------------------------
// text form

fn write_exponent(f: &mut fmt::Formatter<'_>, p: u32, mut e: u64, mut scale: u32) -> fmt::Result {
    while scale > 0 && e.is_multiple_of(p as u64) {
        e /= p as u64;
        scale -= 1;
    }
    if scale == 0 {
        if e == 1 {
            Ok(())
        } else {
            write!(f, "^{e}")
        }
    } else {
        write!(f, "^({e}/{})", (p as u64).pow(scale))
    }
}

pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, poly: &Poly, field: &PField, scale: u32) -> fmt::Result {
    if poly.is_zero() {
        return f.write_str("0");
    }
    for (i, (m, c)) in poly.terms().rev().enumerate() {
        if i > 0 {
            f.write_str(" + ")?;
        }
        if m.is_one() {
            write!(f, "{c}")?;
            continue;
        }
        let mut first = true;
        if *c != 1 {
            write!(f, "{c}")?;
            first = false;
        }
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str(" * ")?;
            }
            first = false;
            f.write_str(&field.vars[v])?;
            write_exponent(f, field.p, e as u64, scale)?;
        }
    }
    Ok(())
}

impl fmt::Display for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write_poly(f, &self.num, &self.field, self.scale)
        } else {
            f.write_str("(")?;
            write_poly(f, &self.num, &self.field, self.scale)?;
            f.write_str(") / (")?;
            write_poly(f, &self.den, &self.field, self.scale)?;
            f.write_str(")")
        }
    }
}

impl fmt::Debug for PElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PElem[{}]", self)
    }
}

/// Raise `a` to the rational power `num / den` where `den` is a power of p.
pub(crate) fn rational_power(a: &PElem, num: i64, den: i64) -> Result<PElem, PfError> {
    let p = a.p() as i64;
    let mut d = den;
    let mut k = 0i64;
    while d > 1 && d % p == 0 {
        d /= p;
        k += 1;
    }
    if d != 1 || den <= 0 {
        return Err(PfError::BadExponent(den));
    }
    Ok(a.pow(num)?.frobenius(-k))
}

struct PElemEval<'a> {
    field: &'a Arc<PField>,
}

impl Evaluator for PElemEval<'_> {
    type Value = PElem;
    type Error = PfError;

    fn int(&self, c: i64) -> Result<PElem, PfError> {
        Ok(PElem::from_int(self.field, c))
    }
    fn var(&self, name: &str) -> Result<PElem, PfError> {
        PElem::var(self.field, name)
    }
    fn add(&self, a: PElem, b: PElem) -> Result<PElem, PfError> {
        Ok(a.add(&b))
    }
    fn sub(&self, a: PElem, b: PElem) -> Result<PElem, PfError> {
        Ok(a.sub(&b))
    }
    fn mul(&self, a: PElem, b: PElem) -> Result<PElem, PfError> {
        Ok(a.mul(&b))
    }
    fn div(&self, a: PElem, b: PElem) -> Result<PElem, PfError> {
        a.checked_div(&b)
    }
    fn neg(&self, a: PElem) -> Result<PElem, PfError> {
        Ok(a.neg())
    }
    fn pow(&self, a: PElem, num: i64, den: i64) -> Result<PElem, PfError> {
        rational_power(&a, num, den)
    }
}

impl PElem {
    /// Parse the text form produced by `Display` (or any expression in the
    /// field's variables).
    pub fn parse(field: &Arc<PField>, src: &str) -> Result<PElem, PfError> {
        let e = Expr::parse(src)?;
        e.eval(&PElemEval { field })
    }
}

/// Convenience used by tests and the CLI: `format!` of the normal form.
pub fn normal_form(a: &PElem) -> String {
    format!("{a}")
}

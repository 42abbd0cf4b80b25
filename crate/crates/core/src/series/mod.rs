//! Truncated Laurent series `k((y))` over a perfect coefficient field.
//!
//! A series is either exact (a Laurent polynomial) or known modulo
//! `y^prec`. Zero to precision is kept apart from exact zero: the former has
//! no valuation.

pub mod poly;

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::expr::{self, Evaluator, Expr, ParseError};
use crate::pfield::{PElem, PField, PfError};

pub use poly::SeriesPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("divisor is zero to precision; its valuation is unknown")]
    UnknownValuation,
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("exact division by a non-monomial needs a precision bound")]
    NeedsPrecision,
    #[error("denominator vanishes at the constant terms of the images")]
    DenominatorVanishes,
    #[error("precision exhausted")]
    PrecisionExhausted,
    #[error("uniformizer name '{0}' clashes with a coefficient variable")]
    NameClash(String),
    #[error("series live in different rings")]
    RingMismatch,
    #[error(transparent)]
    Field(#[from] PfError),
    #[error("malformed series: {0}")]
    Malformed(String),
}

impl From<ParseError> for SeriesError {
    fn from(e: ParseError) -> Self {
        SeriesError::Field(PfError::Parse(e))
    }
}

/// `k((y))` for a coefficient field `k` and a uniformizer name.
#[derive(Debug, PartialEq, Eq)]
pub struct SeriesRing {
    field: Arc<PField>,
    var: String,
}

impl SeriesRing {
    pub fn new(field: &Arc<PField>, var: &str) -> Result<Arc<SeriesRing>, SeriesError> {
        if !expr::is_identifier(var) {
            return Err(SeriesError::Field(PfError::InvalidName(var.to_string())));
        }
        if field.var_index(var).is_some() {
            return Err(SeriesError::NameClash(var.to_string()));
        }
        Ok(Arc::new(SeriesRing { field: field.clone(), var: var.to_string() }))
    }

    pub fn field(&self) -> &Arc<PField> {
        &self.field
    }

    pub fn var(&self) -> &str {
        &self.var
    }
}

fn same_ring(a: &Arc<SeriesRing>, b: &Arc<SeriesRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

/// A Laurent series `Σ_{j >= lo} c_j y^j`, exact or known mod `y^prec`.
#[derive(Clone, PartialEq, Eq)]
pub struct LSeries {
    ring: Arc<SeriesRing>,
    lo: i64,
    coeffs: Vec<PElem>,
    prec: Option<i64>,
}

fn min_prec(a: Option<i64>, b: Option<i64>) -> Option<i64> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.min(y)),
        (x, None) => x,
        (None, y) => y,
    }
}

impl LSeries {
    /// Build and normalize; coefficients at or beyond `prec` are dropped.
    pub fn from_coeffs(ring: &Arc<SeriesRing>, lo: i64, coeffs: Vec<PElem>, prec: Option<i64>) -> LSeries {
        let mut s = LSeries { ring: ring.clone(), lo, coeffs, prec };
        s.normalize();
        s
    }

    fn normalize(&mut self) {
        if let Some(n) = self.prec {
            let keep = (n - self.lo).clamp(0, self.coeffs.len() as i64) as usize;
            self.coeffs.truncate(keep);
        }
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().take_while(|c| c.is_zero()).count();
        if lead > 0 {
            self.coeffs.drain(..lead);
            self.lo += lead as i64;
        }
        if self.coeffs.is_empty() {
            self.lo = 0;
        }
    }

    pub fn zero(ring: &Arc<SeriesRing>) -> LSeries {
        LSeries { ring: ring.clone(), lo: 0, coeffs: Vec::new(), prec: None }
    }

    /// `O(y^prec)`.
    pub fn zero_to(ring: &Arc<SeriesRing>, prec: i64) -> LSeries {
        LSeries { ring: ring.clone(), lo: 0, coeffs: Vec::new(), prec: Some(prec) }
    }

    pub fn constant(ring: &Arc<SeriesRing>, c: PElem) -> LSeries {
        Self::monomial(ring, c, 0)
    }

    pub fn one(ring: &Arc<SeriesRing>) -> LSeries {
        Self::constant(ring, PElem::one(&ring.field))
    }

    pub fn from_int(ring: &Arc<SeriesRing>, c: i64) -> LSeries {
        Self::constant(ring, PElem::from_int(&ring.field, c))
    }

    /// `c * y^j`, exact.
    pub fn monomial(ring: &Arc<SeriesRing>, c: PElem, j: i64) -> LSeries {
        assert!(c.field() == &ring.field, "coefficient from a different field");
        Self::from_coeffs(ring, j, vec![c], None)
    }

    /// The uniformizer `y`.
    pub fn uniformizer(ring: &Arc<SeriesRing>) -> LSeries {
        Self::monomial(ring, PElem::one(&ring.field), 1)
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn field(&self) -> &Arc<PField> {
        &self.ring.field
    }

    /// `None` for an exact series.
    pub fn prec(&self) -> Option<i64> {
        self.prec
    }

    pub fn is_exact(&self) -> bool {
        self.prec.is_none()
    }

    /// Order in `y`; `None` for exact zero and for zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.lo)
        }
    }

    pub fn is_exact_zero(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_none()
    }

    pub fn is_zero_to_precision(&self) -> bool {
        self.coeffs.is_empty() && self.prec.is_some()
    }

    /// Lower bound for the valuation: `None` stands for +∞.
    fn val_bound(&self) -> Option<i64> {
        if self.coeffs.is_empty() {
            self.prec
        } else {
            Some(self.lo)
        }
    }

    /// Coefficient of `y^j`, or `None` when `j` is beyond the precision.
    pub fn coeff(&self, j: i64) -> Option<PElem> {
        if self.prec.is_some_and(|n| j >= n) {
            return None;
        }
        let idx = j - self.lo;
        if idx < 0 || idx >= self.coeffs.len() as i64 {
            Some(PElem::zero(&self.ring.field))
        } else {
            Some(self.coeffs[idx as usize].clone())
        }
    }

    /// Leading term `(j, c)` with `c != 0`.
    pub fn leading(&self) -> Option<(i64, &PElem)> {
        self.coeffs.first().map(|c| (self.lo, c))
    }

    /// Nonzero terms `(j, c)` in increasing order of `j`.
    pub fn terms(&self) -> impl Iterator<Item = (i64, &PElem)> {
        let lo = self.lo;
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(move |(i, c)| (lo + i as i64, c))
    }

    /// `(start, [x_start, ..., x_{prec-1}])`. For an exact series the list
    /// stops at the last nonzero coefficient.
    pub fn coefficients(&self) -> (i64, Vec<PElem>) {
        match (self.coeffs.is_empty(), self.prec) {
            (true, None) => (0, Vec::new()),
            (true, Some(n)) => (n, Vec::new()),
            (false, None) => (self.lo, self.coeffs.clone()),
            (false, Some(n)) => {
                let mut out = self.coeffs.clone();
                out.resize((n - self.lo) as usize, PElem::zero(&self.ring.field));
                (self.lo, out)
            }
        }
    }

    /// Forget everything at and beyond `y^n`.
    pub fn truncate(&self, n: i64) -> LSeries {
        Self::from_coeffs(&self.ring, self.lo, self.coeffs.clone(), min_prec(self.prec, Some(n)))
    }

    fn check(&self, other: &LSeries) {
        assert!(same_ring(&self.ring, &other.ring), "series live in different rings");
    }

    pub fn add(&self, other: &LSeries) -> LSeries {
        self.check(other);
        let prec = min_prec(self.prec, other.prec);
        if self.coeffs.is_empty() {
            return Self::from_coeffs(&self.ring, other.lo, other.coeffs.clone(), prec);
        }
        if other.coeffs.is_empty() {
            return Self::from_coeffs(&self.ring, self.lo, self.coeffs.clone(), prec);
        }
        let lo = self.lo.min(other.lo);
        let mut hi = (self.lo + self.coeffs.len() as i64).max(other.lo + other.coeffs.len() as i64);
        if let Some(n) = prec {
            hi = hi.min(n);
        }
        let zero = PElem::zero(&self.ring.field);
        let coeffs = (lo..hi.max(lo))
            .map(|j| {
                let a = self.raw(j).unwrap_or(&zero);
                let b = other.raw(j).unwrap_or(&zero);
                a.add(b)
            })
            .collect();
        Self::from_coeffs(&self.ring, lo, coeffs, prec)
    }

    fn raw(&self, j: i64) -> Option<&PElem> {
        let idx = j - self.lo;
        if idx < 0 {
            None
        } else {
            self.coeffs.get(idx as usize)
        }
    }

    pub fn neg(&self) -> LSeries {
        LSeries {
            ring: self.ring.clone(),
            lo: self.lo,
            coeffs: self.coeffs.iter().map(PElem::neg).collect(),
            prec: self.prec,
        }
    }

    pub fn sub(&self, other: &LSeries) -> LSeries {
        self.add(&other.neg())
    }

    pub fn scalar_mul(&self, c: &PElem) -> LSeries {
        if c.is_zero() {
            return match self.val_bound() {
                None => Self::zero(&self.ring),
                Some(v) if self.prec.is_none() => Self::zero(&self.ring).shift(v),
                Some(v) => Self::zero_to(&self.ring, v),
            };
        }
        let coeffs = self.coeffs.iter().map(|a| a.mul(c)).collect();
        Self::from_coeffs(&self.ring, self.lo, coeffs, self.prec)
    }

    /// Multiply by `y^k`.
    pub fn shift(&self, k: i64) -> LSeries {
        LSeries {
            ring: self.ring.clone(),
            lo: if self.coeffs.is_empty() { 0 } else { self.lo + k },
            coeffs: self.coeffs.clone(),
            prec: self.prec.map(|n| n + k),
        }
    }

    pub fn mul(&self, other: &LSeries) -> LSeries {
        self.check(other);
        if self.is_exact_zero() || other.is_exact_zero() {
            return Self::zero(&self.ring);
        }
        let term = |p: Option<i64>, v: Option<i64>| match (p, v) {
            (Some(p), Some(v)) => Some(p + v),
            _ => None,
        };
        // val_bound is Some for anything that is not exact zero
        let prec = min_prec(term(self.prec, other.val_bound()), term(other.prec, self.val_bound()));
        if self.coeffs.is_empty() || other.coeffs.is_empty() {
            return Self::zero_to(&self.ring, prec.expect("inexact zero has a precision"));
        }
        let lo = self.lo + other.lo;
        let mut len = self.coeffs.len() + other.coeffs.len() - 1;
        if let Some(n) = prec {
            len = len.min((n - lo).max(0) as usize);
        }
        let mut coeffs = vec![PElem::zero(&self.ring.field); len];
        for (i, a) in self.coeffs.iter().enumerate() {
            if i >= len || a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if i + j >= len {
                    break;
                }
                if !b.is_zero() {
                    coeffs[i + j] = coeffs[i + j].add(&a.mul(b));
                }
            }
        }
        Self::from_coeffs(&self.ring, lo, coeffs, prec)
    }

    /// `self / other`. An exact divisor must be a monomial unless the
    /// dividend is inexact.
    pub fn div(&self, other: &LSeries) -> Result<LSeries, SeriesError> {
        self.check(other);
        if other.is_zero_to_precision() {
            return Err(SeriesError::UnknownValuation);
        }
        if other.is_exact_zero() {
            return Err(SeriesError::DivisionByZero);
        }
        let vg = other.lo;
        if self.is_exact_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let prec = min_prec(self.prec.map(|n| n - vg), other.prec.map(|n| n + self.val_bound().unwrap() - 2 * vg));
        let lead_inv = other.coeffs[0].inv()?;
        if other.coeffs.len() == 1 && other.prec.is_none() {
            let coeffs = self.coeffs.iter().map(|a| a.mul(&lead_inv)).collect();
            return Ok(Self::from_coeffs(&self.ring, self.lo - vg, coeffs, prec));
        }
        let prec = prec.ok_or(SeriesError::NeedsPrecision)?;
        if self.coeffs.is_empty() {
            return Ok(Self::zero_to(&self.ring, prec));
        }
        let lo = self.lo - vg;
        let len = (prec - lo).max(0) as usize;
        let zero = PElem::zero(&self.ring.field);
        let mut q: Vec<PElem> = Vec::with_capacity(len);
        for k in 0..len {
            let mut acc = self.raw(self.lo + k as i64).cloned().unwrap_or_else(|| zero.clone());
            for i in 1..=k.min(other.coeffs.len() - 1) {
                let g = &other.coeffs[i];
                if !g.is_zero() && !q[k - i].is_zero() {
                    acc = acc.sub(&g.mul(&q[k - i]));
                }
            }
            q.push(acc.mul(&lead_inv));
        }
        Ok(Self::from_coeffs(&self.ring, lo, q, Some(prec)))
    }

    /// `1 / self`.
    pub fn inv(&self) -> Result<LSeries, SeriesError> {
        Self::one(&self.ring).div(self)
    }

    /// The p-th power map: coefficients to the p-th power, exponents times p.
    pub fn frobenius(&self) -> LSeries {
        let p = self.ring.field.p() as i64;
        if self.coeffs.is_empty() {
            return LSeries { ring: self.ring.clone(), lo: 0, coeffs: Vec::new(), prec: self.prec.map(|n| n * p) };
        }
        let zero = PElem::zero(&self.ring.field);
        let mut coeffs = vec![zero; (self.coeffs.len() - 1) * p as usize + 1];
        for (i, c) in self.coeffs.iter().enumerate() {
            coeffs[i * p as usize] = c.frobenius(1);
        }
        Self::from_coeffs(&self.ring, self.lo * p, coeffs, self.prec.map(|n| n * p))
    }

    pub fn pow(&self, e: i64) -> Result<LSeries, SeriesError> {
        if e < 0 {
            return self.inv()?.pow(-e);
        }
        let p = self.ring.field.p() as u64;
        let mut e = e as u64;
        let mut acc = Self::one(&self.ring);
        let mut base = self.clone();
        while e > 0 {
            for _ in 0..e % p {
                acc = acc.mul(&base);
            }
            e /= p;
            if e > 0 {
                base = base.frobenius();
            }
        }
        Ok(acc)
    }

    /// Apply a coefficient-field map, landing in `ring`.
    pub fn map_coeffs<F>(&self, ring: &Arc<SeriesRing>, mut f: F) -> Result<LSeries, SeriesError>
    where
        F: FnMut(&PElem) -> Result<PElem, PfError>,
    {
        let coeffs = self.coeffs.iter().map(&mut f).collect::<Result<Vec<_>, _>>()?;
        Ok(Self::from_coeffs(ring, self.lo, coeffs, self.prec))
    }

    /// Reinterpret over a ring whose coefficient field adjoins variables.
    pub fn embed(&self, ring: &Arc<SeriesRing>) -> Result<LSeries, SeriesError> {
        if ring.var != self.ring.var {
            return Err(SeriesError::RingMismatch);
        }
        self.map_coeffs(ring, |c| c.embed(&ring.field))
    }
}

/// Evaluate the rational function `c` (a scale-0 element of the base field)
/// at the series `images`, one per base variable.
pub fn compose_rational(ring: &Arc<SeriesRing>, c: &PElem, images: &[LSeries]) -> Result<LSeries, SeriesError> {
    assert!(c.is_rational(), "compose_rational needs an element of the rational function field");
    assert_eq!(images.len(), c.field().num_vars(), "one image per base variable");
    for im in images {
        assert!(same_ring(im.ring(), ring), "images must live in the target ring");
        assert!(im.val_bound().is_none_or(|v| v >= 0), "images must be integral");
    }
    let mut cache: Vec<Vec<(u32, LSeries)>> = vec![Vec::new(); images.len()];
    let num = eval_poly(ring, c.numerator(), images, &mut cache)?;
    let den = eval_poly(ring, c.denominator(), images, &mut cache)?;
    match den.coeff(0) {
        Some(d0) if !d0.is_zero() && den.val_bound() == Some(0) => {}
        _ => return Err(SeriesError::DenominatorVanishes),
    }
    num.div(&den)
}

fn eval_poly(
    ring: &Arc<SeriesRing>,
    f: &crate::pfield::Poly,
    images: &[LSeries],
    cache: &mut [Vec<(u32, LSeries)>],
) -> Result<LSeries, SeriesError> {
    let mut acc = LSeries::zero(ring);
    for (m, &c) in f.terms() {
        let mut t = LSeries::from_int(ring, c as i64);
        for (v, &e) in m.exps().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let pw = match cache[v].iter().find(|(k, _)| *k == e) {
                Some((_, s)) => s.clone(),
                None => {
                    let s = images[v].pow(e as i64)?;
                    cache[v].push((e, s.clone()));
                    s
                }
            };
            t = t.mul(&pw);
        }
        acc = acc.add(&t);
    }
    Ok(acc)
}

impl core::ops::Add for &LSeries {
    type Output = LSeries;
    fn add(self, rhs: &LSeries) -> LSeries {
        LSeries::add(self, rhs)
    }
}

impl core::ops::Sub for &LSeries {
    type Output = LSeries;
    fn sub(self, rhs: &LSeries) -> LSeries {
        LSeries::sub(self, rhs)
    }
}

impl core::ops::Mul for &LSeries {
    type Output = LSeries;
    fn mul(self, rhs: &LSeries) -> LSeries {
        LSeries::mul(self, rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeriesOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn ser_arith(op: SeriesOp, f: &LSeries, g: &LSeries) -> Result<LSeries, SeriesError> {
    if !same_ring(&f.ring, &g.ring) {
        return Err(SeriesError::RingMismatch);
    }
    Ok(match op {
        SeriesOp::Add => f.add(g),
        SeriesOp::Sub => f.sub(g),
        SeriesOp::Mul => f.mul(g),
        SeriesOp::Div => f.div(g)?,
    })
}

// ---------------------------------------------------------------------------
// text form

impl fmt::Display for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            f.write_str("0")?;
        }
        for (i, (j, c)) in self.terms().enumerate() {
            if i > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "({c})")?;
            match j {
                0 => {}
                1 => write!(f, " * {}", self.ring.var)?,
                _ => write!(f, " * {}^{}", self.ring.var, j)?,
            }
        }
        match self.prec {
            Some(n) => write!(f, " ;; prec={n}"),
            None => f.write_str(" ;; prec=exact"),
        }
    }
}

impl fmt::Debug for LSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LSeries[{self}]")
    }
}

/// Evaluates expressions in the coefficient variables and the uniformizer.
/// Quotients by non-monomials are computed modulo `y^cap`.
struct SeriesEval<'a> {
    ring: &'a Arc<SeriesRing>,
    cap: Option<i64>,
}

impl Evaluator for SeriesEval<'_> {
    type Value = LSeries;
    type Error = SeriesError;

    fn int(&self, c: i64) -> Result<LSeries, SeriesError> {
        Ok(LSeries::from_int(self.ring, c))
    }
    fn var(&self, name: &str) -> Result<LSeries, SeriesError> {
        if name == self.ring.var {
            return Ok(LSeries::uniformizer(self.ring));
        }
        Ok(LSeries::constant(self.ring, PElem::var(&self.ring.field, name)?))
    }
    fn add(&self, a: LSeries, b: LSeries) -> Result<LSeries, SeriesError> {
        Ok(a.add(&b))
    }
    fn sub(&self, a: LSeries, b: LSeries) -> Result<LSeries, SeriesError> {
        Ok(a.sub(&b))
    }
    fn mul(&self, a: LSeries, b: LSeries) -> Result<LSeries, SeriesError> {
        Ok(a.mul(&b))
    }
    fn div(&self, a: LSeries, b: LSeries) -> Result<LSeries, SeriesError> {
        match a.div(&b) {
            Err(SeriesError::NeedsPrecision) => {
                let cap = self.cap.ok_or(SeriesError::NeedsPrecision)?;
                a.truncate(cap).div(&b.truncate(cap))
            }
            r => r,
        }
    }
    fn neg(&self, a: LSeries) -> Result<LSeries, SeriesError> {
        Ok(a.neg())
    }
    fn pow(&self, a: LSeries, num: i64, den: i64) -> Result<LSeries, SeriesError> {
        if den == 1 {
            return a.pow(num);
        }
        // fractional powers only make sense for constants
        match (a.is_exact(), a.valuation(), a.coeffs.len()) {
            (true, Some(0), 1) => {
                let c = crate::pfield::rational_power(&a.coeffs[0], num, den)?;
                Ok(LSeries::constant(self.ring, c))
            }
            _ => Err(SeriesError::Malformed("fractional power of a non-constant series".into())),
        }
    }
}

impl LSeries {
    /// Evaluate an expression in the coefficient variables and the
    /// uniformizer. With `prec = Some(n)` the result is known mod `y^n`
    /// (quotients are expanded far enough to guarantee this); with `None`
    /// the expression must be a Laurent polynomial.
    pub fn from_expr(ring: &Arc<SeriesRing>, e: &Expr, prec: Option<i64>) -> Result<LSeries, SeriesError> {
        let Some(n) = prec else {
            return e.eval(&SeriesEval { ring, cap: None });
        };
        let mut margin = 4i64;
        loop {
            let cap = n.saturating_add(margin);
            let s = e.eval(&SeriesEval { ring, cap: Some(cap) })?;
            if s.prec.is_none_or(|p| p >= n) {
                return Ok(s.truncate(n));
            }
            if margin > 1 << 12 {
                return Err(SeriesError::PrecisionExhausted);
            }
            margin *= 2;
        }
    }

    /// Parse the `Display` form, `<terms> ;; prec=N` or `;; prec=exact`.
    /// Without a marker the expression is taken as exact.
    pub fn parse(ring: &Arc<SeriesRing>, src: &str) -> Result<LSeries, SeriesError> {
        let (body, prec) = match src.split_once(";;") {
            None => (src, None),
            Some((body, tail)) => {
                let tail = tail.trim();
                let v = tail
                    .strip_prefix("prec=")
                    .ok_or_else(|| SeriesError::Malformed(alloc::format!("bad precision marker '{tail}'")))?;
                if v == "exact" {
                    (body, None)
                } else {
                    let n =
                        v.parse::<i64>().map_err(|_| SeriesError::Malformed(alloc::format!("bad precision '{v}'")))?;
                    (body, Some(n))
                }
            }
        };
        let e = Expr::parse(body)?;
        Self::from_expr(ring, &e, prec)
    }
}

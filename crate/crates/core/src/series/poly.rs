//! Polynomials in one variable `T` with Laurent series coefficients.

use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use super::{LSeries, SeriesError, SeriesEval, SeriesRing};
use crate::expr::{Evaluator, Expr};

/// `Σ c_i T^i`. Trailing coefficients that are exactly zero are dropped;
/// a leading coefficient that is only zero to precision is kept, since the
/// degree is then not known.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesPoly {
    ring: Arc<SeriesRing>,
    coeffs: Vec<LSeries>,
}

impl SeriesPoly {
    pub fn new(ring: &Arc<SeriesRing>, coeffs: Vec<LSeries>) -> SeriesPoly {
        let mut f = SeriesPoly { ring: ring.clone(), coeffs };
        f.trim();
        f
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_exact_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn zero(ring: &Arc<SeriesRing>) -> SeriesPoly {
        SeriesPoly { ring: ring.clone(), coeffs: Vec::new() }
    }

    pub fn constant(c: LSeries) -> SeriesPoly {
        let ring = c.ring().clone();
        Self::new(&ring, vec![c])
    }

    /// The variable `T`.
    pub fn var(ring: &Arc<SeriesRing>) -> SeriesPoly {
        Self::new(ring, vec![LSeries::zero(ring), LSeries::one(ring)])
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn coeffs(&self) -> &[LSeries] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> LSeries {
        self.coeffs.get(i).cloned().unwrap_or_else(|| LSeries::zero(&self.ring))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Formal degree (position of the last coefficient not exactly zero).
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Degree when the leading coefficient is certainly nonzero.
    fn certain_degree(&self) -> Result<Option<usize>, SeriesError> {
        match self.coeffs.last() {
            None => Ok(None),
            Some(c) if c.valuation().is_some() => Ok(Some(self.coeffs.len() - 1)),
            Some(_) => Err(SeriesError::PrecisionExhausted),
        }
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_exact() && *c == LSeries::one(&self.ring))
    }

    pub fn add(&self, other: &SeriesPoly) -> SeriesPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.ring, (0..n).map(|i| self.coeff(i).add(&other.coeff(i))).collect())
    }

    pub fn neg(&self) -> SeriesPoly {
        Self::new(&self.ring, self.coeffs.iter().map(LSeries::neg).collect())
    }

    pub fn sub(&self, other: &SeriesPoly) -> SeriesPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &LSeries) -> SeriesPoly {
        Self::new(&self.ring, self.coeffs.iter().map(|a| a.mul(c)).collect())
    }

    pub fn mul(&self, other: &SeriesPoly) -> SeriesPoly {
        if self.is_zero() || other.is_zero() {
            return Self::zero(&self.ring);
        }
        let mut out = vec![LSeries::zero(&self.ring); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_exact_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                if !b.is_exact_zero() {
                    out[i + j] = out[i + j].add(&a.mul(b));
                }
            }
        }
        Self::new(&self.ring, out)
    }

    /// Forget every coefficient beyond `y^n`.
    pub fn truncate(&self, n: i64) -> SeriesPoly {
        Self::new(&self.ring, self.coeffs.iter().map(|c| c.truncate(n)).collect())
    }

    /// Like `truncate`, but an exact leading coefficient is kept exact so
    /// that monic polynomials stay monic.
    pub fn truncate_below_leading(&self, n: i64) -> SeriesPoly {
        let k = self.coeffs.len();
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| if i + 1 == k && c.is_exact() { c.clone() } else { c.truncate(n) })
            .collect();
        Self::new(&self.ring, coeffs)
    }

    /// Lowest precision among the coefficients.
    pub fn prec(&self) -> Option<i64> {
        self.coeffs.iter().filter_map(LSeries::prec).min()
    }

    pub fn derivative(&self) -> SeriesPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, c)| c.mul(&LSeries::from_int(&self.ring, i as i64)))
            .collect();
        Self::new(&self.ring, coeffs)
    }

    pub fn eval(&self, x: &LSeries) -> LSeries {
        let mut acc = LSeries::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(x).add(c);
        }
        acc
    }

    /// Quotient and remainder. The divisor's leading coefficient must have a
    /// known valuation.
    pub fn divrem(&self, d: &SeriesPoly) -> Result<(SeriesPoly, SeriesPoly), SeriesError> {
        let dd = d.certain_degree()?.ok_or(SeriesError::DivisionByZero)?;
        let lc = &d.coeffs[dd];
        let monic = d.is_monic();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return Ok((Self::zero(&self.ring), self.clone()));
        }
        let mut q = vec![LSeries::zero(&self.ring); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_exact_zero() {
                continue;
            }
            let c = if monic { r[i].clone() } else { r[i].div(lc)? };
            for (j, dj) in d.coeffs.iter().enumerate().take(dd) {
                if !dj.is_exact_zero() {
                    r[i - dd + j] = r[i - dd + j].sub(&c.mul(dj));
                }
            }
            // cancelled by construction
            r[i] = LSeries::zero(&self.ring);
            q[i - dd] = c;
        }
        Ok((Self::new(&self.ring, q), Self::new(&self.ring, r)))
    }

    pub fn rem(&self, d: &SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        Ok(self.divrem(d)?.1)
    }

    /// `self(h) mod f`.
    pub fn compose_mod(&self, h: &SeriesPoly, f: &SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        let mut acc = Self::zero(&self.ring);
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(h).add(&Self::constant(c.clone())).rem(f)?;
        }
        Ok(acc)
    }

    /// Inverse of `self` modulo `f` by the extended Euclidean algorithm.
    pub fn inv_mod(&self, f: &SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        let mut r0 = f.clone();
        let mut r1 = self.rem(f)?;
        let mut s0 = Self::zero(&self.ring);
        let mut s1 = Self::constant(LSeries::one(&self.ring));
        loop {
            match r1.certain_degree()? {
                None => return Err(SeriesError::DivisionByZero),
                Some(0) => {
                    let c = LSeries::one(&self.ring).div(&r1.coeffs[0])?;
                    return s1.scale(&c).rem(f);
                }
                Some(_) => {
                    let (q, r) = r0.divrem(&r1)?;
                    let s = s0.sub(&q.mul(&s1));
                    r0 = r1;
                    r1 = r;
                    s0 = s1;
                    s1 = s;
                }
            }
        }
    }

    /// Resultant `Res(self, other)`; for monic `self` this is the product of
    /// `other` over the roots of `self`.
    pub fn resultant(&self, other: &SeriesPoly) -> Result<LSeries, SeriesError> {
        let ring = self.ring.clone();
        let (Some(m), Some(n)) = (self.certain_degree()?, other.certain_degree()?) else {
            return Ok(LSeries::zero(&ring));
        };
        let sign = |k: usize| if k % 2 == 1 { LSeries::from_int(&ring, -1) } else { LSeries::one(&ring) };
        if n == 0 {
            return other.coeffs[0].pow(m as i64);
        }
        if m == 0 {
            return self.coeffs[0].pow(n as i64);
        }
        if m < n {
            return Ok(sign(m * n).mul(&other.resultant(self)?));
        }
        // Res(A, B) = (-1)^{mn} Res(B, A) = (-1)^{mn} lc(B)^{m - deg R} Res(B, R)
        let r = self.rem(other)?;
        let Some(k) = r.certain_degree()? else {
            return Ok(LSeries::zero(&ring));
        };
        let lc = other.coeffs[n].pow((m - k) as i64)?;
        Ok(sign(m * n).mul(&lc).mul(&other.resultant(&r)?))
    }
}

/// Evaluates expressions in the polynomial variable, the coefficient
/// variables and the uniformizer.
struct PolyEval<'a> {
    scalars: SeriesEval<'a>,
    var: &'a str,
}

impl Evaluator for PolyEval<'_> {
    type Value = SeriesPoly;
    type Error = SeriesError;

    fn int(&self, c: i64) -> Result<SeriesPoly, SeriesError> {
        Ok(SeriesPoly::constant(self.scalars.int(c)?))
    }
    fn var(&self, name: &str) -> Result<SeriesPoly, SeriesError> {
        if name == self.var {
            return Ok(SeriesPoly::var(self.scalars.ring));
        }
        Ok(SeriesPoly::constant(self.scalars.var(name)?))
    }
    fn add(&self, a: SeriesPoly, b: SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        Ok(a.add(&b))
    }
    fn sub(&self, a: SeriesPoly, b: SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        Ok(a.sub(&b))
    }
    fn mul(&self, a: SeriesPoly, b: SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        Ok(a.mul(&b))
    }
    fn div(&self, a: SeriesPoly, b: SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        match b.degree() {
            None => Err(SeriesError::DivisionByZero),
            Some(0) => {
                let inv = self.scalars.div(LSeries::one(self.scalars.ring), b.coeffs[0].clone())?;
                Ok(a.scale(&inv))
            }
            Some(_) => Err(SeriesError::Malformed(alloc::format!("division by a polynomial in {}", self.var))),
        }
    }
    fn neg(&self, a: SeriesPoly) -> Result<SeriesPoly, SeriesError> {
        Ok(a.neg())
    }
    fn pow(&self, a: SeriesPoly, num: i64, den: i64) -> Result<SeriesPoly, SeriesError> {
        if a.degree().unwrap_or(0) == 0 {
            let c = self.scalars.pow(a.coeff(0), num, den)?;
            return Ok(SeriesPoly::constant(c));
        }
        if den != 1 || num < 0 {
            return Err(SeriesError::Malformed(alloc::format!("bad exponent on a polynomial in {}", self.var)));
        }
        Ok((0..num).fold(SeriesPoly::constant(LSeries::one(self.scalars.ring)), |acc, _| acc.mul(&a)))
    }
}

impl SeriesPoly {
    /// Evaluate an expression that is polynomial in `var`. With `prec = Some(n)`
    /// every coefficient is known mod `y^n`.
    pub fn from_expr(
        ring: &Arc<SeriesRing>,
        var: &str,
        e: &Expr,
        prec: Option<i64>,
    ) -> Result<SeriesPoly, SeriesError> {
        if var == ring.var() || ring.field().var_index(var).is_some() {
            return Err(SeriesError::NameClash(var.into()));
        }
        let Some(n) = prec else {
            return e.eval(&PolyEval { scalars: SeriesEval { ring, cap: None }, var });
        };
        let mut margin = 4i64;
        loop {
            let cap = n.saturating_add(margin);
            let f = e.eval(&PolyEval { scalars: SeriesEval { ring, cap: Some(cap) }, var })?;
            if f.coeffs.iter().all(|c| c.prec().is_none_or(|p| p >= n)) {
                return Ok(f.truncate_below_leading(n));
            }
            if margin > 1 << 12 {
                return Err(SeriesError::PrecisionExhausted);
            }
            margin *= 2;
        }
    }

    pub fn parse(ring: &Arc<SeriesRing>, var: &str, src: &str, prec: Option<i64>) -> Result<SeriesPoly, SeriesError> {
        Self::from_expr(ring, var, &Expr::parse(src)?, prec)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfield::PField;

    fn ring(p: u32) -> Arc<SeriesRing> {
        SeriesRing::new(&PField::new(p, &["x"]).unwrap(), "y").unwrap()
    }

    fn poly(r: &Arc<SeriesRing>, cs: &[&str], prec: Option<i64>) -> SeriesPoly {
        SeriesPoly::new(
            r,
            cs.iter()
                .map(|c| {
                    let s = LSeries::parse(r, c).unwrap();
                    match prec {
                        Some(n) => s.truncate(n),
                        None => s,
                    }
                })
                .collect(),
        )
    }

    /// Sylvester matrix determinant by cofactor expansion: an oracle that
    /// uses only ring operations.
    fn sylvester(a: &SeriesPoly, b: &SeriesPoly) -> LSeries {
        let r = a.ring().clone();
        let m = a.degree().unwrap();
        let n = b.degree().unwrap();
        let size = m + n;
        let mut mat = vec![vec![LSeries::zero(&r); size]; size];
        for i in 0..n {
            for j in 0..=m {
                mat[i][i + j] = a.coeff(m - j);
            }
        }
        for i in 0..m {
            for j in 0..=n {
                mat[n + i][i + j] = b.coeff(n - j);
            }
        }
        det(&mat)
    }

    fn det(mat: &[Vec<LSeries>]) -> LSeries {
        let n = mat.len();
        let r = mat[0][0].ring().clone();
        if n == 1 {
            return mat[0][0].clone();
        }
        let mut acc = LSeries::zero(&r);
        for j in 0..n {
            if mat[0][j].is_exact_zero() {
                continue;
            }
            let minor: Vec<Vec<LSeries>> = mat[1..]
                .iter()
                .map(|row| row.iter().enumerate().filter(|(k, _)| *k != j).map(|(_, c)| c.clone()).collect())
                .collect();
            let t = mat[0][j].mul(&det(&minor));
            acc = if j % 2 == 0 { acc.add(&t) } else { acc.sub(&t) };
        }
        acc
    }

    #[test]
    fn resultant_matches_sylvester() {
        let r = ring(3);
        let a = poly(&r, &["-y", "0", "1"], None);
        let b = poly(&r, &["0", "-2"], None);
        assert_eq!(a.resultant(&b).unwrap(), sylvester(&a, &b));
        assert_eq!(a.resultant(&b).unwrap().valuation(), Some(1));

        let a = poly(&r, &["-y", "-y^2", "0", "1"], Some(12));
        let b = poly(&r, &["y + x*y^2", "1 + y", "x"], Some(12));
        let want = sylvester(&a, &b);
        let got = a.resultant(&b).unwrap();
        let n = want.prec().unwrap().min(got.prec().unwrap());
        assert!(n > 3);
        assert_eq!(got.truncate(n), want.truncate(n));
    }

    #[test]
    fn inverse_mod_eisenstein() {
        let r = ring(3);
        let f = poly(&r, &["-y", "0", "y", "1"], Some(20));
        let h = poly(&r, &["1", "1"], Some(20));
        let inv = h.inv_mod(&f).unwrap();
        let one = inv.mul(&h).rem(&f).unwrap();
        assert!(one.coeff(0).sub(&LSeries::one(&r)).valuation().is_none());
        assert!(one.coeff(1).valuation().is_none() && one.coeff(2).valuation().is_none());
        assert!(one.prec().unwrap() > 5);
    }

    #[test]
    fn unknown_leading_degree_is_reported() {
        let r = ring(2);
        let a = poly(&r, &["1", "y^3"], Some(2));
        let b = poly(&r, &["1", "1"], None);
        assert_eq!(a.resultant(&b), Err(SeriesError::PrecisionExhausted));
    }
}

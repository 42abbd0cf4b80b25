//! Brown's dense modular gcd over a small extension field `F_q ⊇ F_p`.
//!
//! F_p itself is too small to supply evaluation points (p may be 2), so the
//! computation runs in `F_q` with `q = p^k >= 4096`, using Zech logarithm
//! tables. The gcd of polynomials defined over F_p does not change under field
//! extension, so the monic result has coefficients back in F_p.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use spin::RwLock;

const MIN_ORDER: u32 = 4096;
const ZERO: u32 = u32::MAX;

enum Mode {
    /// `q = p` is already large; elements are residues.
    Prime,
    /// Elements are discrete logarithms to a fixed primitive root, `ZERO` for 0.
    Tables { exp: Vec<u32>, log: Vec<u32>, zech: Vec<u32>, neg_one: u32 },
}

pub(crate) struct Fq {
    p: u32,
    q: u32,
    mode: Mode,
}

static FIELDS: RwLock<BTreeMap<u32, Arc<Fq>>> = RwLock::new(BTreeMap::new());

impl Fq {
    pub(crate) fn for_prime(p: u32) -> Arc<Fq> {
        if let Some(f) = FIELDS.read().get(&p) {
            return f.clone();
        }
        let f = Arc::new(Fq::build(p));
        FIELDS.write().entry(p).or_insert(f).clone()
    }

    fn build(p: u32) -> Fq {
        if p >= 257 {
            return Fq { p, q: p, mode: Mode::Prime };
        }
        let mut k = 1u32;
        while p.pow(k) < MIN_ORDER {
            k += 1;
        }
        let q = p.pow(k);
        let (exp, log) = primitive_tables(p, k, q);
        let mut zech = vec![ZERO; (q - 1) as usize];
        for d in 0..(q - 1) {
            let v = exp[d as usize];
            let low = v % p;
            let w = v - low + (low + 1) % p;
            zech[d as usize] = log[w as usize];
        }
        let neg_one = if p == 2 { 0 } else { (q - 1) / 2 };
        Fq { p, q, mode: Mode::Tables { exp, log, zech, neg_one } }
    }

    #[inline]
    pub(crate) fn zero(&self) -> u32 {
        match self.mode {
            Mode::Prime => 0,
            Mode::Tables { .. } => ZERO,
        }
    }

    #[inline]
    pub(crate) fn one(&self) -> u32 {
        match self.mode {
            Mode::Prime => 1,
            Mode::Tables { .. } => 0,
        }
    }

    #[inline]
    pub(crate) fn is_zero(&self, a: u32) -> bool {
        a == self.zero()
    }

    pub(crate) fn embed_fp(&self, c: u32) -> u32 {
        match &self.mode {
            Mode::Prime => c % self.p,
            Mode::Tables { log, .. } => log[(c % self.p) as usize],
        }
    }

    pub(crate) fn to_fp(&self, a: u32) -> Option<u32> {
        match &self.mode {
            Mode::Prime => Some(a),
            Mode::Tables { exp, .. } => {
                if a == ZERO {
                    Some(0)
                } else {
                    let v = exp[a as usize];
                    (v < self.p).then_some(v)
                }
            }
        }
    }

    #[inline]
    pub(crate) fn add(&self, a: u32, b: u32) -> u32 {
        match &self.mode {
            Mode::Prime => ((a as u64 + b as u64) % self.p as u64) as u32,
            Mode::Tables { zech, .. } => {
                if a == ZERO {
                    return b;
                }
                if b == ZERO {
                    return a;
                }
                let n = self.q - 1;
                let d = if b >= a { b - a } else { b + n - a };
                let z = zech[d as usize];
                if z == ZERO {
                    ZERO
                } else {
                    let s = a + z;
                    if s >= n {
                        s - n
                    } else {
                        s
                    }
                }
            }
        }
    }

    #[inline]
    pub(crate) fn neg(&self, a: u32) -> u32 {
        match &self.mode {
            Mode::Prime => (self.p - a) % self.p,
            Mode::Tables { neg_one, .. } => {
                if a == ZERO {
                    ZERO
                } else {
                    (a + neg_one) % (self.q - 1)
                }
            }
        }
    }

    #[inline]
    pub(crate) fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub(crate) fn mul(&self, a: u32, b: u32) -> u32 {
        match &self.mode {
            Mode::Prime => ((a as u64 * b as u64) % self.p as u64) as u32,
            Mode::Tables { .. } => {
                if a == ZERO || b == ZERO {
                    ZERO
                } else {
                    ((a as u64 + b as u64) % (self.q as u64 - 1)) as u32
                }
            }
        }
    }

    pub(crate) fn inv(&self, a: u32) -> u32 {
        assert!(!self.is_zero(a), "inverse of zero");
        match &self.mode {
            Mode::Prime => super::poly::fp_inv(self.p, a),
            Mode::Tables { .. } => (self.q - 1 - a) % (self.q - 1),
        }
    }

    /// Number of distinct evaluation points.
    pub(crate) fn num_points(&self) -> u32 {
        self.q - 1
    }

    /// The `i`-th evaluation point; distinct and nonzero for `i < q - 1`.
    pub(crate) fn point(&self, i: u32) -> u32 {
        match self.mode {
            Mode::Prime => i + 1,
            Mode::Tables { .. } => i,
        }
    }
}

/// Exp/log tables for `F_p[t]/(f)` with `f` a primitive polynomial of degree `k`.
/// Field elements are encoded as integers with base-p digits = coefficients.
fn primitive_tables(p: u32, k: u32, q: u32) -> (Vec<u32>, Vec<u32>) {
    let k = k as usize;
    let mut tail = vec![0u32; k];
    let mut exp = vec![0u32; (q - 1) as usize];
    loop {
        // next candidate: f = t^k + tail[k-1] t^{k-1} + ... + tail[0]
        let mut i = 0;
        loop {
            tail[i] += 1;
            if tail[i] < p {
                break;
            }
            tail[i] = 0;
            i += 1;
            assert!(i < k, "no primitive polynomial found");
        }
        if tail[0] == 0 {
            continue;
        }
        let mut cur = vec![0u32; k];
        cur[0] = 1;
        let mut ok = true;
        for step in 0..(q - 1) {
            exp[step as usize] = encode(p, &cur);
            // multiply by t and reduce t^k = -tail
            let top = cur[k - 1];
            for j in (1..k).rev() {
                cur[j] = cur[j - 1];
            }
            cur[0] = 0;
            if top != 0 {
                for j in 0..k {
                    cur[j] = (cur[j] + (p - tail[j]) * top) % p;
                }
            }
            let is_one = cur[0] == 1 && cur[1..].iter().all(|&c| c == 0);
            if is_one != (step == q - 2) {
                ok = false;
                break;
            }
        }
        if ok {
            let mut log = vec![ZERO; q as usize];
            for (i, &v) in exp.iter().enumerate() {
                log[v as usize] = i as u32;
            }
            return (exp, log);
        }
    }
}

fn encode(p: u32, digits: &[u32]) -> u32 {
    digits.iter().rev().fold(0, |acc, &d| acc * p + d)
}

// ---------------------------------------------------------------------------
// dense univariate polynomials over F_q, index = degree, no trailing zeros

type UPoly = Vec<u32>;
/// Multivariate polynomial with univariate coefficients in the last variable.
type Interp = BTreeMap<Vec<u32>, UPoly>;

fn utrim(f: &Fq, a: &mut UPoly) {
    while a.last().is_some_and(|&c| f.is_zero(c)) {
        a.pop();
    }
}

fn udeg(a: &UPoly) -> usize {
    a.len().saturating_sub(1)
}

fn ueval(f: &Fq, a: &UPoly, x: u32) -> u32 {
    a.iter().rev().fold(f.zero(), |acc, &c| f.add(f.mul(acc, x), c))
}

fn uscale(f: &Fq, a: &UPoly, c: u32) -> UPoly {
    if f.is_zero(c) {
        return Vec::new();
    }
    a.iter().map(|&x| f.mul(x, c)).collect()
}

fn uadd(f: &Fq, a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut r: UPoly =
        (0..n).map(|i| f.add(a.get(i).copied().unwrap_or(f.zero()), b.get(i).copied().unwrap_or(f.zero()))).collect();
    utrim(f, &mut r);
    r
}

fn umul(f: &Fq, a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut r = vec![f.zero(); a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if f.is_zero(x) {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            r[i + j] = f.add(r[i + j], f.mul(x, y));
        }
    }
    utrim(f, &mut r);
    r
}

/// Quotient and remainder; `b` nonzero.
fn udivrem(f: &Fq, a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let mut r = a.clone();
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let db = b.len() - 1;
    let inv = f.inv(b[db]);
    let mut quo = vec![f.zero(); r.len() - db];
    while r.len() > db && !r.is_empty() {
        let dr = r.len() - 1;
        let c = f.mul(r[dr], inv);
        quo[dr - db] = c;
        let nc = f.neg(c);
        for (j, &bj) in b.iter().enumerate() {
            r[dr - db + j] = f.add(r[dr - db + j], f.mul(nc, bj));
        }
        utrim(f, &mut r);
    }
    utrim(f, &mut quo);
    (quo, r)
}

fn umonic(f: &Fq, a: &UPoly) -> UPoly {
    match a.last() {
        None => Vec::new(),
        Some(&c) => uscale(f, a, f.inv(c)),
    }
}

fn ugcd(f: &Fq, a: &UPoly, b: &UPoly) -> UPoly {
    let (mut a, mut b) = (a.clone(), b.clone());
    while !b.is_empty() {
        let (_, r) = udivrem(f, &a, &b);
        a = b;
        b = r;
    }
    umonic(f, &a)
}

// ---------------------------------------------------------------------------
// sparse multivariate polynomials over F_q; exponent vectors have fixed length

pub(crate) type MPoly = BTreeMap<Vec<u32>, u32>;

/// Coefficients in the last variable, keyed by the exponents of the others.
fn split(f: &Fq, a: &MPoly) -> BTreeMap<Vec<u32>, UPoly> {
    let mut out: BTreeMap<Vec<u32>, UPoly> = BTreeMap::new();
    for (e, &c) in a {
        let (head, last) = e.split_at(e.len() - 1);
        let u = out.entry(head.to_vec()).or_default();
        let d = last[0] as usize;
        if u.len() <= d {
            u.resize(d + 1, f.zero());
        }
        u[d] = c;
    }
    out
}

fn join(f: &Fq, s: &BTreeMap<Vec<u32>, UPoly>) -> MPoly {
    let mut out = MPoly::new();
    for (head, u) in s {
        for (d, &c) in u.iter().enumerate() {
            if !f.is_zero(c) {
                let mut e = head.clone();
                e.push(d as u32);
                out.insert(e, c);
            }
        }
    }
    out
}

fn mmonic(f: &Fq, a: &MPoly) -> MPoly {
    match a.iter().next_back() {
        None => MPoly::new(),
        Some((_, &lc)) => {
            let inv = f.inv(lc);
            a.iter().map(|(e, &c)| (e.clone(), f.mul(c, inv))).collect()
        }
    }
}

/// True when `d` divides `a` exactly (lex order on the exponent vectors).
fn mdivides(f: &Fq, d: &MPoly, a: &MPoly) -> bool {
    let (ld, lc) = match d.iter().next_back() {
        None => return a.is_empty(),
        Some((e, &c)) => (e.clone(), c),
    };
    let inv = f.inv(lc);
    let mut r = a.clone();
    while let Some((lr, &cr)) = r.iter().next_back() {
        if ld.iter().zip(lr.iter()).any(|(x, y)| x > y) {
            return false;
        }
        let shift: Vec<u32> = lr.iter().zip(ld.iter()).map(|(y, x)| y - x).collect();
        let c = f.neg(f.mul(cr, inv));
        for (e, &cd) in d {
            let key: Vec<u32> = e.iter().zip(shift.iter()).map(|(x, s)| x + s).collect();
            let v = f.add(r.get(&key).copied().unwrap_or(f.zero()), f.mul(c, cd));
            if f.is_zero(v) {
                r.remove(&key);
            } else {
                r.insert(key, v);
            }
        }
    }
    true
}

/// Monic (lex) gcd of nonzero `a`, `b` in `n` variables, or `None` if the
/// evaluation points ran out.
pub(crate) fn mgcd(f: &Fq, a: &MPoly, b: &MPoly, n: usize) -> Option<MPoly> {
    if n == 1 {
        let ua = split(f, a).remove(&Vec::new()).unwrap_or_default();
        let ub = split(f, b).remove(&Vec::new()).unwrap_or_default();
        let g = ugcd(f, &ua, &ub);
        let mut s = BTreeMap::new();
        s.insert(Vec::new(), g);
        return Some(join(f, &s));
    }
    let sa = split(f, a);
    let sb = split(f, b);
    let content = |s: &BTreeMap<Vec<u32>, UPoly>| {
        let mut g: UPoly = Vec::new();
        for u in s.values() {
            g = ugcd(f, &g, u);
            if g.len() == 1 {
                break;
            }
        }
        g
    };
    let ca = content(&sa);
    let cb = content(&sb);
    let c = ugcd(f, &ca, &cb);
    let prim = |s: BTreeMap<Vec<u32>, UPoly>, c: &UPoly| -> BTreeMap<Vec<u32>, UPoly> {
        if c.len() == 1 {
            return s;
        }
        s.into_iter().map(|(k, u)| (k, udivrem(f, &u, c).0)).collect()
    };
    let sa = prim(sa, &ca);
    let sb = prim(sb, &cb);
    let lca = sa.values().next_back().unwrap().clone();
    let lcb = sb.values().next_back().unwrap().clone();
    let gamma = ugcd(f, &lca, &lcb);
    let dva = sa.values().map(udeg).max().unwrap_or(0);
    let dvb = sb.values().map(udeg).max().unwrap_or(0);
    let bound = udeg(&gamma) + dva.min(dvb);
    let pa = join(f, &sa);
    let pb = join(f, &sb);

    let with_content = |g: BTreeMap<Vec<u32>, UPoly>| -> MPoly {
        let g: BTreeMap<Vec<u32>, UPoly> = g.into_iter().map(|(k, u)| (k, umul(f, &u, &c))).collect();
        mmonic(f, &join(f, &g))
    };

    let eval = |s: &Interp, x: u32| -> MPoly {
        let mut out = MPoly::new();
        for (k, u) in s {
            let v = ueval(f, u, x);
            if !f.is_zero(v) {
                out.insert(k.clone(), v);
            }
        }
        out
    };

    let mut interp: Option<(Interp, UPoly)> = None;
    let mut modulus: UPoly = vec![f.one()];
    let mut npoints = 0usize;
    for i in 0..f.num_points() {
        let x = f.point(i);
        if f.is_zero(ueval(f, &lca, x)) || f.is_zero(ueval(f, &lcb, x)) {
            continue;
        }
        let ax = eval(&sa, x);
        let bx = eval(&sb, x);
        let gx = mgcd(f, &ax, &bx, n - 1)?;
        let lm = gx.keys().next_back().unwrap().clone();
        if lm.iter().all(|&e| e == 0) {
            let mut s = BTreeMap::new();
            s.insert(vec![0; n - 1], vec![f.one()]);
            return Some(with_content(s));
        }
        let gam = ueval(f, &gamma, x);
        let gx: BTreeMap<Vec<u32>, u32> = gx.into_iter().map(|(k, v)| (k, f.mul(v, gam))).collect();
        let mut changed = true;
        match &mut interp {
            Some((_, cur_lm)) if lm > *cur_lm => continue,
            Some((g, cur_lm)) if lm == *cur_lm => {
                // Newton step: g += (gx - g(x)) * modulus / modulus(x)
                let mx_inv = f.inv(ueval(f, &modulus, x));
                changed = false;
                let keys: Vec<Vec<u32>> = g.keys().chain(gx.keys()).cloned().collect();
                for k in keys {
                    let old = g.get(&k).map(|u| ueval(f, u, x)).unwrap_or(f.zero());
                    let new = gx.get(&k).copied().unwrap_or(f.zero());
                    if old == new {
                        continue;
                    }
                    changed = true;
                    let delta = f.mul(f.sub(new, old), mx_inv);
                    let e = g.entry(k).or_default();
                    *e = uadd(f, e, &uscale(f, &modulus, delta));
                }
                g.retain(|_, u| !u.is_empty());
                modulus = umul(f, &modulus, &[f.neg(x), f.one()].to_vec());
                npoints += 1;
            }
            _ => {
                let g: BTreeMap<Vec<u32>, UPoly> = gx.into_iter().map(|(k, v)| (k, vec![v])).collect();
                interp = Some((g, lm));
                modulus = vec![f.neg(x), f.one()];
                npoints = 1;
            }
        }
        if npoints >= 2 && (!changed || npoints > bound) {
            let (g, _) = interp.as_ref().unwrap();
            let cg = content(g);
            let g = prim(g.clone(), &cg);
            let cand = join(f, &g);
            if mdivides(f, &cand, &pa) && mdivides(f, &cand, &pb) {
                return Some(with_content(g));
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_tables_are_consistent() {
        for p in [2, 3, 5, 7] {
            let f = Fq::for_prime(p);
            let g = f.point(1);
            let mut acc = f.one();
            let mut sum = f.zero();
            for _ in 0..f.num_points() {
                acc = f.mul(acc, g);
                sum = f.add(sum, acc);
            }
            assert_eq!(acc, f.one());
            // sum of all nonzero elements vanishes
            assert!(f.is_zero(sum));
            for c in 0..p {
                assert_eq!(f.to_fp(f.embed_fp(c)), Some(c));
                let s = f.add(f.embed_fp(c), f.embed_fp(1));
                assert_eq!(f.to_fp(s), Some((c + 1) % p));
            }
        }
    }
}

//! Multivariate gcd over F_p by recursive primitive pseudo-remainder sequences.

use alloc::vec::Vec;

use super::modgcd::{mgcd, Fq, MPoly};
use super::poly::{Monomial, Poly};

/// Monic greatest common divisor. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let p = a.characteristic();
    if a.is_zero() {
        return b.monic();
    }
    if b.is_zero() {
        return a.monic();
    }
    if a.is_constant() || b.is_constant() {
        return Poly::one(p);
    }
    gcd_nonconstant(a, b, true).monic()
}

fn gcd_nonconstant(a: &Poly, b: &Poly, modular_ok: bool) -> Poly {
    let p = a.characteristic();
    // Monomial factors split off cleanly: the cofactors have no variable
    // dividing them, so gcd(m a', n b') = gcd(m, n) gcd(a', b').
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let mono = ma.gcd(&mb);
    let mut a = if ma.is_one() { a.clone() } else { a.div_exact(&Poly::monomial(p, ma, 1)).unwrap() };
    let mut b = if mb.is_one() { b.clone() } else { b.div_exact(&Poly::monomial(p, mb, 1)).unwrap() };
    let mono = Poly::monomial(p, mono, 1);

    // A variable present in only one argument cannot occur in the gcd; replace
    // that argument by its content with respect to the variable.
    loop {
        if a.is_constant() || b.is_constant() {
            return mono;
        }
        let va = a.vars();
        let vb = b.vars();
        let only_a = (0..va.len()).find(|&i| va[i] && !vb.get(i).copied().unwrap_or(false));
        if let Some(v) = only_a {
            a = content_in(&a, v);
            continue;
        }
        let only_b = (0..vb.len()).find(|&i| vb[i] && !va.get(i).copied().unwrap_or(false));
        if let Some(v) = only_b {
            b = content_in(&b, v);
            continue;
        }
        break;
    }

    if modular_ok {
        if let Some(g) = modular(&a, &b) {
            return mono.mul(&g);
        }
    }

    // Same support now. Pick the main variable with the smallest degree.
    let vars = a.vars();
    let v = (0..vars.len())
        .filter(|&i| vars[i])
        .min_by_key(|&i| a.degree_in(i).max(b.degree_in(i)))
        .expect("nonconstant polynomial has a variable");

    let ca = content_in(&a, v);
    let cb = content_in(&b, v);
    let c = gcd(&ca, &cb);
    let pa = to_univariate(&a.div_exact(&ca).unwrap(), v);
    let pb = to_univariate(&b.div_exact(&cb).unwrap(), v);

    let (mut f, mut g) = if pa.len() >= pb.len() { (pa, pb) } else { (pb, pa) };
    loop {
        let r = prem(&f, &g);
        if r.is_empty() {
            break;
        }
        if r.len() == 1 {
            // Primitive gcd is a unit.
            return mono.mul(&c);
        }
        f = g;
        g = primitive_part(r);
    }
    let g = primitive_part(g);
    mono.mul(&c).mul(&from_univariate(&g, v))
}

/// Gcd through the modular algorithm, with variables compacted and ordered
/// so that the evaluation variable has the smallest degree.
fn modular(a: &Poly, b: &Poly) -> Option<Poly> {
    let p = a.characteristic();
    let used = a.vars();
    let mut order: Vec<usize> = (0..used.len()).filter(|&i| used[i]).collect();
    order.sort_by_key(|&v| core::cmp::Reverse(a.degree_in(v).max(b.degree_in(v))));
    let n = order.len();
    let f = Fq::for_prime(p);
    let lower = |x: &Poly| -> MPoly {
        x.terms().map(|(m, c)| (order.iter().map(|&v| m.exp(v)).collect::<Vec<u32>>(), f.embed_fp(*c))).collect()
    };
    let g = mgcd(&f, &lower(a), &lower(b), n)?;
    let mut out = Poly::zero(p);
    for (e, c) in g {
        let mut exps = alloc::vec![0u32; used.len()];
        for (i, &v) in order.iter().enumerate() {
            exps[v] = e[i];
        }
        out.add_term(Monomial::from_exps(exps), f.to_fp(c)?);
    }
    Some(out)
}

/// Gcd of the coefficients of `a` viewed as a polynomial in variable `v`.
pub fn content_in(a: &Poly, v: usize) -> Poly {
    let p = a.characteristic();
    let coeffs = a.coeffs_in(v);
    let mut it = coeffs.into_values();
    let mut g = match it.next() {
        Some(c) => c,
        None => return Poly::zero(p),
    };
    for c in it {
        if g.is_constant() {
            return Poly::one(p);
        }
        g = gcd(&g, &c);
    }
    g.monic()
}

fn to_univariate(a: &Poly, v: usize) -> Vec<Poly> {
    let p = a.characteristic();
    let map = a.coeffs_in(v);
    let deg = map.keys().next_back().copied().unwrap_or(0) as usize;
    let mut out = alloc::vec![Poly::zero(p); deg + 1];
    for (d, c) in map {
        out[d as usize] = c;
    }
    out
}

fn from_univariate(u: &[Poly], v: usize) -> Poly {
    let p = u[0].characteristic();
    let mut r = Poly::zero(p);
    for (d, c) in u.iter().enumerate() {
        if !c.is_zero() {
            r = r.add(&c.mul_monomial(&Monomial::var(v, d as u32), 1));
        }
    }
    r
}

fn trim(u: &mut Vec<Poly>) {
    while u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

/// Sparse pseudo-remainder of `a` by `b` (both in the recursive representation).
fn prem(a: &[Poly], b: &[Poly]) -> Vec<Poly> {
    let db = b.len() - 1;
    let lcb = &b[db];
    let mut r: Vec<Poly> = a.to_vec();
    trim(&mut r);
    while !r.is_empty() && r.len() > db {
        let dr = r.len() - 1;
        let lcr = r[dr].clone();
        for c in r.iter_mut() {
            *c = c.mul(lcb);
        }
        for (j, bj) in b.iter().enumerate() {
            let idx = j + dr - db;
            r[idx] = r[idx].sub(&lcr.mul(bj));
        }
        trim(&mut r);
    }
    r
}

fn primitive_part(u: Vec<Poly>) -> Vec<Poly> {
    let p = u[0].characteristic();
    let mut g = Poly::zero(p);
    for c in &u {
        if c.is_zero() {
            continue;
        }
        g = gcd(&g, c);
        if g.is_constant() {
            break;
        }
    }
    if g.is_constant() {
        return u;
    }
    u.into_iter().map(|c| c.div_exact(&g).unwrap()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(p: u32, i: usize) -> Poly {
        Poly::var(p, i)
    }

    #[test]
    fn common_factor_is_recovered() {
        let p = 3;
        let common = v(p, 0).mul(&v(p, 1)).add(&v(p, 2)).add(&Poly::one(p));
        let a = common.mul(&v(p, 0).add(&Poly::constant(p, 2)));
        let b = common.mul(&v(p, 1).mul(&v(p, 1)).sub(&v(p, 2)));
        assert_eq!(gcd(&a, &b), common.monic());
    }

    #[test]
    fn coprime_inputs() {
        let p = 2;
        let a = v(p, 0).add(&Poly::one(p));
        let b = v(p, 0);
        assert!(gcd(&a, &b).is_one());
        let c = v(p, 1).mul(&v(p, 1)).add(&v(p, 0));
        assert!(gcd(&a.mul(&a), &c).is_one());
    }

    #[test]
    fn monomial_and_disjoint_support() {
        let p = 5;
        let a = v(p, 0).pow(3).mul(&v(p, 1));
        let b = v(p, 0).pow(2).mul(&v(p, 2).add(&Poly::one(p)));
        assert_eq!(gcd(&a, &b), v(p, 0).pow(2));
        let c = v(p, 3).add(&Poly::one(p));
        let d = v(p, 1).add(&Poly::one(p));
        assert!(gcd(&c, &d).is_one());
    }

    #[test]
    fn characteristic_p_repeated_factor() {
        // (x + y)^2 = x^2 + y^2 in char 2
        let p = 2;
        let s = v(p, 0).add(&v(p, 1));
        let a = v(p, 0).pow(2).add(&v(p, 1).pow(2));
        assert_eq!(gcd(&a, &s.mul(&v(p, 2))), s);
    }

    #[test]
    fn modular_path_matches_prs() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for round in 0..150 {
            let p = [2, 3, 5, 7][round % 4];
            let nv = 1 + round % 3;
            let c = crate::sample::poly(&mut rng, p, nv, 3, 3);
            let a = crate::sample::poly(&mut rng, p, nv, 4, 4).mul(&c);
            let b = crate::sample::poly(&mut rng, p, nv, 4, 4).mul(&c);
            if a.is_constant() || b.is_constant() {
                continue;
            }
            let fast = gcd(&a, &b);
            let slow = gcd_nonconstant(&a, &b, false).monic();
            assert_eq!(fast, slow, "p={p} a={a:?} b={b:?}");
            if !c.is_zero() {
                assert!(fast.div_exact(&c.monic()).is_some());
            }
        }
    }
}

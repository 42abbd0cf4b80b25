//! Random elements for property tests and the self-test driver.

use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;

use crate::pfield::{Monomial, PElem, PField, Poly};

/// Random polynomial with at most `terms` terms of total degree `<= max_deg`
/// in the first `nvars` variables.
pub fn poly<R: Rng + ?Sized>(rng: &mut R, p: u32, nvars: usize, max_deg: u32, terms: usize) -> Poly {
    let mut out = Poly::zero(p);
    for _ in 0..terms {
        let mut budget = max_deg;
        let mut exps = Vec::with_capacity(nvars);
        for _ in 0..nvars {
            let e = rng.gen_range(0..=budget);
            exps.push(e);
            budget -= e;
        }
        // shuffle which variable gets the large share of the budget
        if nvars > 1 {
            let k = rng.gen_range(0..nvars);
            exps.rotate_left(k);
        }
        out.add_term(Monomial::from_exps(exps), rng.gen_range(1..p));
    }
    out
}

/// Random element `num / den` at a random scale `<= max_scale`.
pub fn pelem<R: Rng + ?Sized>(rng: &mut R, field: &Arc<PField>, max_deg: u32, max_scale: u32) -> PElem {
    let p = field.p();
    let n = field.num_vars();
    let num = poly(rng, p, n, max_deg, 3);
    let den = loop {
        let d = if rng.gen_bool(0.4) { Poly::constant(p, rng.gen_range(1..p)) } else { poly(rng, p, n, max_deg, 2) };
        if !d.is_zero() {
            break d;
        }
    };
    let scale = rng.gen_range(0..=max_scale);
    PElem::from_parts(field, scale, num, den).expect("nonzero denominator")
}

/// Random nonzero element.
pub fn nonzero_pelem<R: Rng + ?Sized>(rng: &mut R, field: &Arc<PField>, max_deg: u32, max_scale: u32) -> PElem {
    loop {
        let a = pelem(rng, field, max_deg, max_scale);
        if !a.is_zero() {
            return a;
        }
    }
}

/// A field over a random prime from `primes` with `1..=max_vars` variables.
pub fn field<R: Rng + ?Sized>(rng: &mut R, primes: &[u32], max_vars: usize) -> Arc<PField> {
    let p = primes[rng.gen_range(0..primes.len())];
    let n = rng.gen_range(1..=max_vars);
    let names: Vec<alloc::string::String> = ["x", "z", "w", "v"][..n].iter().map(|s| (*s).into()).collect();
    PField::from_names(p, names).expect("valid field")
}

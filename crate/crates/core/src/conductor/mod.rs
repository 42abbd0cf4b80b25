//! Naive and generic Artin conductors.

mod character;

pub use character::{cyclotomic_poly, induce_character, invariants_dim, CharRep};

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::perfection::{universal_jet, BaseRing};
use crate::ramification::{describe, ram_filtration, upper_breaks, ExtSpec, Filtration, RamError};
use crate::series::{LSeries, SeriesError};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConductorError {
    #[error("character average is not an integer in range")]
    NonIntegralDimension,
    #[error("invalid character: {0}")]
    InvalidCharacter(&'static str),
    #[error("representation and filtration are over different groups")]
    GroupMismatch,
    #[error("no stabilization up to level {budget}")]
    NoStabilization { budget: usize },
    #[error("conductor {0} is not a nonnegative integer")]
    NotIntegral(Q),
    #[error("extension is not defined over the given base")]
    BaseMismatch,
    #[error(transparent)]
    Ramification(#[from] RamError),
}

impl From<SeriesError> for ConductorError {
    fn from(e: SeriesError) -> Self {
        ConductorError::Ramification(e.into())
    }
}

/// `ar_B(ρ) = e^{-1} Σ_{i≥0} |G_i| codim V^{G_i}`.
pub fn naive_artin(filt: &Filtration, rep: &CharRep) -> Result<Q, ConductorError> {
    if rep.group() != filt.group() {
        return Err(ConductorError::GroupMismatch);
    }
    let dim = rep.dim() as i128;
    let mut total = 0i128;
    for h in filt.levels() {
        total += h.order() as i128 * (dim - invariants_dim(rep, h)? as i128);
    }
    Ok(Q::new(total, filt.e() as i128))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AsReduction {
    pub reduced: LSeries,
    /// Pole order of the reduced class, or 0 when it has none.
    pub swan: u64,
}

/// Artin–Schreier reduction: subtract `h^p - h` until the leading pole
/// order is prime to `p` or the pole is gone.
pub fn as_reduce(f: &LSeries) -> Result<AsReduction, SeriesError> {
    let p = f.field().p() as i64;
    let mut f = f.clone();
    loop {
        let Some((j, a)) = f.leading() else {
            if f.is_exact_zero() || f.prec().is_some_and(|n| n > 0) {
                return Ok(AsReduction { reduced: f, swan: 0 });
            }
            return Err(SeriesError::PrecisionExhausted);
        };
        if j >= 0 {
            return Ok(AsReduction { reduced: f, swan: 0 });
        }
        if j % p != 0 {
            return Ok(AsReduction { swan: j.unsigned_abs(), reduced: f });
        }
        let root = a.frobenius(-1);
        let h = LSeries::monomial(f.ring(), root, j / p);
        f = f.sub(&h.frobenius().sub(&h));
    }
}

/// Levels tried by `artin_conductor`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Policy {
    /// First level; by default `max(4, pole order + 1)`.
    pub start: Option<usize>,
    pub budget: usize,
}

impl Default for Policy {
    fn default() -> Self {
        Policy { start: None, budget: 512 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConductorReport {
    pub value: u64,
    pub naive_by_level: BTreeMap<usize, Q>,
    pub stabilized_at: usize,
    pub breaks: Vec<(Q, u32)>,
    pub filtration: Filtration,
    pub label: String,
}

/// One round: pull back to level `n` and evaluate the naive conductor there.
pub fn conductor_at_level(
    base: &Arc<BaseRing>,
    ext: &ExtSpec,
    rep: &CharRep,
    n: usize,
) -> Result<(Q, Filtration), ConductorError> {
    let jet = universal_jet(base, n).map_err(RamError::from)?;
    let pulled = ext.pull_back(&jet)?;
    let filt = ram_filtration(&pulled)?;
    Ok((naive_artin(&filt, rep)?, filt))
}

/// Evaluate `round` at levels `start, 2 start, ...` until two consecutive
/// rounds agree; returns the first of the agreeing pair and its level.
/// Rounds that run out of precision break the chain.
fn stabilize<T: PartialEq>(
    first: usize,
    budget: usize,
    mut round: impl FnMut(usize) -> Result<T, ConductorError>,
) -> Result<(T, usize), ConductorError> {
    let mut n = first.max(1);
    let mut previous: Option<(T, usize)> = None;
    while n <= budget {
        match round(n) {
            Ok(value) => {
                if let Some((v, m)) = previous.take() {
                    if v == value {
                        return Ok((v, m));
                    }
                }
                previous = Some((value, n));
            }
            Err(ConductorError::Ramification(RamError::PrecisionExhausted)) => previous = None,
            Err(e) => return Err(e),
        }
        n *= 2;
    }
    Err(ConductorError::NoStabilization { budget })
}

fn first_level(ext: &ExtSpec, policy: Policy) -> usize {
    let pole = usize::try_from(ext.pole_order()).unwrap_or(0);
    policy.start.unwrap_or(4.max(pole + 1))
}

/// The conductor of `rep` over the generic residual perfection, by doubling
/// the jet level until two consecutive rounds agree.
pub fn artin_conductor(
    base: &Arc<BaseRing>,
    ext: &ExtSpec,
    rep: &CharRep,
    policy: Policy,
) -> Result<ConductorReport, ConductorError> {
    if ext.ring() != base.ring() {
        return Err(ConductorError::BaseMismatch);
    }
    if rep.group() != ext.group() {
        return Err(ConductorError::GroupMismatch);
    }
    let mut naive_by_level = BTreeMap::new();
    let ((value, filt), level) = if base.is_residually_perfect() {
        let r = conductor_at_level(base, ext, rep, 0)?;
        naive_by_level.insert(0, r.0);
        (r, 0)
    } else {
        stabilize(first_level(ext, policy), policy.budget, |n| {
            let r = conductor_at_level(base, ext, rep, n)?;
            naive_by_level.insert(n, r.0);
            Ok(r)
        })?
    };
    if !value.is_integer() || value < Q::from_integer(0) {
        return Err(ConductorError::NotIntegral(value));
    }
    Ok(ConductorReport {
        value: *value.numer() as u64,
        naive_by_level,
        stabilized_at: level,
        breaks: upper_breaks(&filt, rep)?,
        label: describe(&filt),
        filtration: filt,
    })
}

/// The filtration over the generic residual perfection, with the level at
/// which it stabilized (0 for a perfect residue field).
pub fn generic_filtration(
    base: &Arc<BaseRing>,
    ext: &ExtSpec,
    policy: Policy,
) -> Result<(Filtration, usize), ConductorError> {
    if ext.ring() != base.ring() {
        return Err(ConductorError::BaseMismatch);
    }
    let at = |n: usize| -> Result<Filtration, ConductorError> {
        let jet = universal_jet(base, n).map_err(RamError::from)?;
        Ok(ram_filtration(&ext.pull_back(&jet)?)?)
    };
    if base.is_residually_perfect() {
        return Ok((at(0)?, 0));
    }
    stabilize(first_level(ext, policy), policy.budget, at)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BreakCheck {
    pub lhs: Q,
    pub rhs: Q,
    pub equal: bool,
}

/// Compare the naive conductor with `codim V^{G_0} + Σ x dim V(x)`.
pub fn break_formula_check(filt: &Filtration, rep: &CharRep) -> Result<BreakCheck, ConductorError> {
    let lhs = naive_artin(filt, rep)?;
    let codim = rep.dim() - invariants_dim(rep, filt.level(0))?;
    let rhs = upper_breaks(filt, rep)?
        .iter()
        .fold(Q::from_integer(codim as i128), |acc, (x, d)| acc + x * Q::from_integer(*d as i128));
    Ok(BreakCheck { lhs, rhs, equal: lhs == rhs })
}

/// Tame: the p-part of inertia acts trivially.
pub fn is_tame(filt: &Filtration, rep: &CharRep, p: u32) -> Result<bool, ConductorError> {
    let sylow = filt.level(0).p_part(filt.group(), p as usize);
    Ok(invariants_dim(rep, &sylow)? == rep.dim())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::pfield::PField;
    use crate::series::SeriesRing;

    fn q(n: i128) -> Q {
        Q::from_integer(n)
    }

    #[test]
    fn reduction_examples() {
        let field = PField::new(2, &["xbar"]).unwrap();
        let r = SeriesRing::new(&field, "y").unwrap();
        let f = LSeries::parse(&r, "xbar/y^2").unwrap();
        let red = as_reduce(&f).unwrap();
        assert_eq!(red.swan, 1);
        assert_eq!(red.reduced, LSeries::parse(&r, "xbar^(1/2)/y").unwrap());
        // f - reduced = h^2 - h with h = xbar^(1/2)/y
        let h = LSeries::parse(&r, "xbar^(1/2)*y^-1").unwrap();
        assert_eq!(f.sub(&red.reduced), h.mul(&h).sub(&h));

        let r3 = SeriesRing::new(&PField::new(3, &[]).unwrap(), "y").unwrap();
        let g = LSeries::parse(&r3, "y^-4 + y").unwrap();
        assert_eq!(as_reduce(&g).unwrap().reduced, g);
        let b = LSeries::parse(&r3, "y^-3 - y^-1").unwrap();
        let red = as_reduce(&b).unwrap();
        assert_eq!((red.swan, red.reduced.is_exact_zero()), (0, true));
        let lost = LSeries::zero_to(&r3, -2);
        assert_eq!(as_reduce(&lost), Err(SeriesError::PrecisionExhausted));
    }

    #[test]
    fn naive_examples() {
        let r = SeriesRing::new(&PField::new(5, &[]).unwrap(), "y").unwrap();
        let ext = ExtSpec::artin_schreier(&r, LSeries::parse(&r, "y^-3").unwrap()).unwrap();
        let filt = ram_filtration(&ext).unwrap();
        let g = ext.group().clone();
        assert_eq!(naive_artin(&filt, &CharRep::trivial(&g)), Ok(q(0)));
        assert_eq!(naive_artin(&filt, &CharRep::abelian(&g, &[2]).unwrap()), Ok(q(4)));
        assert_eq!(naive_artin(&filt, &CharRep::regular(&g)), Ok(q(16)));
        for rep in [CharRep::trivial(&g), CharRep::abelian(&g, &[1]).unwrap(), CharRep::regular(&g)] {
            let c = break_formula_check(&filt, &rep).unwrap();
            assert!(c.equal, "{c:?}");
        }
    }

    #[test]
    fn generic_conductor_examples() {
        for p in [2u32, 3] {
            let base = BaseRing::new(p, &["x"], "y").unwrap();
            let g = FiniteGroup::cyclic(p as usize);
            let chi = CharRep::abelian(&g, &[1]).unwrap();
            let m = p as i64 + 1;
            let ext =
                ExtSpec::artin_schreier(base.ring(), base.element(&alloc::format!("x/y^{m}"), None).unwrap()).unwrap();
            let rep = artin_conductor(&base, &ext, &chi, Policy::default()).unwrap();
            assert_eq!(rep.value, m as u64 + 1);
            let ext =
                ExtSpec::artin_schreier(base.ring(), base.element(&alloc::format!("x/y^{p}"), None).unwrap()).unwrap();
            let rep = artin_conductor(&base, &ext, &chi, Policy::default()).unwrap();
            assert_eq!(rep.value, p as u64);
            assert_eq!(rep.filtration.length(), p as usize);
            let un = ExtSpec::unramified(base.ring(), 2).unwrap();
            let g2 = un.group().clone();
            assert_eq!(artin_conductor(&base, &un, &CharRep::regular(&g2), Policy::default()).unwrap().value, 0);
        }
    }

    #[test]
    fn no_stabilization_within_budget() {
        let base = BaseRing::new(2, &["x"], "y").unwrap();
        let ext = ExtSpec::artin_schreier(base.ring(), base.element("x/y^9", None).unwrap()).unwrap();
        let chi = CharRep::abelian(ext.group(), &[1]).unwrap();
        let r = artin_conductor(&base, &ext, &chi, Policy { start: Some(4), budget: 4 });
        assert_eq!(r, Err(ConductorError::NoStabilization { budget: 4 }));
    }

    #[test]
    fn perfect_base_short_circuits() {
        let base = BaseRing::new(3, &[], "y").unwrap();
        let ext = ExtSpec::artin_schreier(base.ring(), base.element("y^-2", None).unwrap()).unwrap();
        let chi = CharRep::abelian(ext.group(), &[1]).unwrap();
        let r = artin_conductor(&base, &ext, &chi, Policy::default()).unwrap();
        assert_eq!((r.value, r.stabilized_at), (3, 0));
        assert_eq!(r.naive_by_level.len(), 1);
    }

    #[test]
    fn tameness() {
        let r = SeriesRing::new(&PField::new(3, &[]).unwrap(), "y").unwrap();
        let k = ram_filtration(&ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y").unwrap(), 2).unwrap()).unwrap();
        let g = k.group().clone();
        assert!(is_tame(&k, &CharRep::regular(&g), 3).unwrap());
        let a = ram_filtration(&ExtSpec::artin_schreier(&r, LSeries::parse(&r, "y^-1").unwrap()).unwrap()).unwrap();
        let g3 = a.group().clone();
        assert!(!is_tame(&a, &CharRep::abelian(&g3, &[1]).unwrap(), 3).unwrap());
        assert!(is_tame(&a, &CharRep::trivial(&g3), 3).unwrap());
    }
}

//! Finite Galois extensions of a Laurent series field with perfect
//! coefficient field, and their ramification filtrations.

use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use num_integer::Integer;

use crate::conductor::{as_reduce, invariants_dim, CharRep, ConductorError};
use crate::group::{FiniteGroup, GroupError, Subgroup};
use crate::perfection::{JetError, JetMap};
use crate::series::{LSeries, SeriesError, SeriesPoly, SeriesRing};
use crate::Q;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RamError {
    #[error("precision exhausted; raise the series precision")]
    PrecisionExhausted,
    #[error("the identity element has no ramification number")]
    IdentityElement,
    #[error("not an Eisenstein polynomial: {0}")]
    NotEisenstein(&'static str),
    #[error("invalid Galois action: {0}")]
    BadAction(&'static str),
    #[error("this operation needs an extension given by an Eisenstein model")]
    NeedsEisensteinModel,
    #[error("Kummer degree {n} is divisible by the characteristic")]
    WildKummer { n: usize },
    #[error("the {n}-th roots of unity do not lie in the residue field of degree {mu_degree}")]
    MissingRootsOfUnity { n: usize, mu_degree: u32 },
    #[error("extension degree must be positive")]
    ZeroDegree,
    #[error("extension data lives over a different ring")]
    RingMismatch,
    #[error("inconsistent filtration: {0}")]
    BadFiltration(&'static str),
    #[error(transparent)]
    Series(SeriesError),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Jet(JetError),
}

impl From<SeriesError> for RamError {
    fn from(e: SeriesError) -> Self {
        match e {
            SeriesError::PrecisionExhausted => RamError::PrecisionExhausted,
            e => RamError::Series(e),
        }
    }
}

impl From<JetError> for RamError {
    fn from(e: JetError) -> Self {
        match e {
            JetError::Series(s) => s.into(),
            e => RamError::Jet(e),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtKind {
    /// `t^p - t = rhs`.
    ArtinSchreier {
        rhs: LSeries,
    },
    /// `t^n = rhs`, with the n-th roots of unity in the residue field of
    /// degree `mu_degree` over the prime field.
    Kummer {
        n: usize,
        rhs: LSeries,
        mu_degree: u32,
    },
    Unramified {
        degree: usize,
    },
    /// `B = A[T]/(poly)`; `action[g]` is the image of `T` under `g`,
    /// reduced mod `poly`.
    Eisenstein {
        poly: SeriesPoly,
        action: Vec<SeriesPoly>,
    },
}

/// A finite Galois extension with its group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtSpec {
    ring: Arc<SeriesRing>,
    group: Arc<FiniteGroup>,
    kind: ExtKind,
}

fn is_zero_to_precision(f: &SeriesPoly) -> bool {
    f.coeffs().iter().all(|c| c.valuation().is_none())
}

impl ExtSpec {
    pub fn artin_schreier(ring: &Arc<SeriesRing>, rhs: LSeries) -> Result<ExtSpec, RamError> {
        check_ring(ring, &rhs)?;
        let p = ring.field().p() as usize;
        Ok(ExtSpec { ring: ring.clone(), group: FiniteGroup::cyclic(p), kind: ExtKind::ArtinSchreier { rhs } })
    }

    pub fn kummer(ring: &Arc<SeriesRing>, n: usize, rhs: LSeries, mu_degree: u32) -> Result<ExtSpec, RamError> {
        check_ring(ring, &rhs)?;
        let p = ring.field().p() as u128;
        if n == 0 {
            return Err(RamError::ZeroDegree);
        }
        if (n as u128).is_multiple_of(p) {
            return Err(RamError::WildKummer { n });
        }
        let n128 = n as u128;
        let q = (0..mu_degree).fold(1u128 % n128, |acc, _| acc * p % n128);
        if mu_degree == 0 || q != 1 % n128 {
            return Err(RamError::MissingRootsOfUnity { n, mu_degree });
        }
        Ok(ExtSpec { ring: ring.clone(), group: FiniteGroup::cyclic(n), kind: ExtKind::Kummer { n, rhs, mu_degree } })
    }

    pub fn unramified(ring: &Arc<SeriesRing>, degree: usize) -> Result<ExtSpec, RamError> {
        if degree == 0 {
            return Err(RamError::ZeroDegree);
        }
        Ok(ExtSpec { ring: ring.clone(), group: FiniteGroup::cyclic(degree), kind: ExtKind::Unramified { degree } })
    }

    /// Checks that `poly` is Eisenstein of degree `|group|`, that every image
    /// is a root of `poly`, and that composition of images follows the group
    /// law, all to the available precision.
    pub fn eisenstein(
        ring: &Arc<SeriesRing>,
        poly: SeriesPoly,
        group: &Arc<FiniteGroup>,
        action: Vec<SeriesPoly>,
    ) -> Result<ExtSpec, RamError> {
        if poly.ring() != ring || action.iter().any(|h| h.ring() != ring) {
            return Err(RamError::RingMismatch);
        }
        if !poly.is_monic() {
            return Err(RamError::NotEisenstein("not monic"));
        }
        let n = poly.degree().unwrap_or(0);
        if n != group.order() {
            return Err(RamError::NotEisenstein("degree differs from the group order"));
        }
        for c in &poly.coeffs()[..n] {
            match c.valuation() {
                Some(v) if v >= 1 => {}
                None if c.prec().is_none_or(|p| p >= 1) => {}
                _ => return Err(RamError::NotEisenstein("a lower coefficient is not in the maximal ideal")),
            }
        }
        match poly.coeff(0).valuation() {
            Some(1) => {}
            None => return Err(RamError::PrecisionExhausted),
            _ => return Err(RamError::NotEisenstein("constant term must have valuation one")),
        }
        if action.len() != n {
            return Err(RamError::BadAction("one image per group element is required"));
        }
        let action = action.iter().map(|h| h.rem(&poly)).collect::<Result<Vec<_>, _>>()?;
        let t = SeriesPoly::var(ring);
        if !is_zero_to_precision(&action[0].sub(&t)) {
            return Err(RamError::BadAction("the identity must fix the generator"));
        }
        for h in &action {
            if !is_zero_to_precision(&poly.compose_mod(h, &poly)?) {
                return Err(RamError::BadAction("an image is not a root of the polynomial"));
            }
        }
        for s in 0..n {
            for u in 0..n {
                // s(u(T)) = u evaluated at s(T)
                let lhs = action[u].compose_mod(&action[s], &poly)?;
                if !is_zero_to_precision(&lhs.sub(&action[group.mul(s, u)])) {
                    return Err(RamError::BadAction("images do not compose according to the group law"));
                }
            }
        }
        Ok(ExtSpec { ring: ring.clone(), group: group.clone(), kind: ExtKind::Eisenstein { poly, action } })
    }

    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn kind(&self) -> &ExtKind {
        &self.kind
    }

    /// Largest pole order in the defining data.
    pub fn pole_order(&self) -> i64 {
        let pole = |s: &LSeries| s.valuation().map_or(0, |v| (-v).max(0));
        match &self.kind {
            ExtKind::ArtinSchreier { rhs } | ExtKind::Kummer { rhs, .. } => pole(rhs),
            ExtKind::Unramified { .. } => 0,
            ExtKind::Eisenstein { poly, action } => {
                poly.coeffs().iter().chain(action.iter().flat_map(|h| h.coeffs())).map(pole).max().unwrap_or(0)
            }
        }
    }

    /// Base change along a jet map whose base ring is this extension's ring.
    pub fn pull_back(&self, jet: &JetMap) -> Result<ExtSpec, RamError> {
        if jet.base().ring() != &self.ring {
            return Err(RamError::RingMismatch);
        }
        let kind = match &self.kind {
            ExtKind::ArtinSchreier { rhs } => ExtKind::ArtinSchreier { rhs: jet.apply(rhs)? },
            ExtKind::Kummer { n, rhs, mu_degree } => {
                ExtKind::Kummer { n: *n, rhs: jet.apply(rhs)?, mu_degree: *mu_degree }
            }
            ExtKind::Unramified { degree } => ExtKind::Unramified { degree: *degree },
            ExtKind::Eisenstein { poly, action } => ExtKind::Eisenstein {
                poly: jet.apply_poly(poly)?,
                action: action.iter().map(|h| jet.apply_poly(h)).collect::<Result<_, _>>()?,
            },
        };
        Ok(ExtSpec { ring: jet.target().clone(), group: self.group.clone(), kind })
    }
}

fn check_ring(ring: &Arc<SeriesRing>, s: &LSeries) -> Result<(), RamError> {
    if s.ring() != ring {
        return Err(RamError::RingMismatch);
    }
    Ok(())
}

/// Lower-numbering filtration `G_0 ⊇ G_1 ⊇ ... ⊇ G_L = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Filtration {
    group: Arc<FiniteGroup>,
    levels: Vec<Subgroup>,
    residue_degree: usize,
}

impl Filtration {
    /// `levels[i]` is `G_i`; trailing repeats of the trivial group are dropped.
    pub fn new(
        group: &Arc<FiniteGroup>,
        mut levels: Vec<Subgroup>,
        residue_degree: usize,
    ) -> Result<Filtration, RamError> {
        if let Some(k) = levels.iter().position(Subgroup::is_trivial) {
            levels.truncate(k + 1);
        } else {
            return Err(RamError::BadFiltration("the chain must end in the trivial group"));
        }
        if levels.windows(2).any(|w| !w[1].is_subgroup_of(&w[0])) {
            return Err(RamError::BadFiltration("the chain must be decreasing"));
        }
        if levels[0].order() * residue_degree != group.order() {
            return Err(RamError::BadFiltration("e * f must equal the group order"));
        }
        let g0 = levels[0].as_group(group);
        let local = |h: &Subgroup| {
            let elems: Vec<usize> =
                h.elements().iter().map(|x| levels[0].elements().binary_search(x).expect("nested")).collect();
            Subgroup::generated(&g0, &elems).expect("in range")
        };
        if levels.iter().any(|h| !local(h).is_normal_in(&g0)) {
            return Err(RamError::BadFiltration("each G_i must be normal in G_0"));
        }
        Ok(Filtration { group: group.clone(), levels, residue_degree })
    }

    /// All `G_i` trivial.
    pub fn unramified(group: &Arc<FiniteGroup>) -> Filtration {
        Filtration { group: group.clone(), levels: vec![Subgroup::trivial()], residue_degree: group.order() }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn level(&self, i: usize) -> &Subgroup {
        self.levels.get(i).unwrap_or_else(|| self.levels.last().expect("nonempty"))
    }

    pub fn levels(&self) -> &[Subgroup] {
        &self.levels
    }

    /// First index with trivial `G_i`.
    pub fn length(&self) -> usize {
        self.levels.len() - 1
    }

    /// `(i, |G_i|)` up to and including the first trivial group.
    pub fn orders(&self) -> Vec<(usize, usize)> {
        self.levels.iter().enumerate().map(|(i, h)| (i, h.order())).collect()
    }

    pub fn e(&self) -> usize {
        self.levels[0].order()
    }

    pub fn f(&self) -> usize {
        self.residue_degree
    }

    /// Valuation of the different, `Σ (|G_i| - 1)`.
    pub fn different(&self) -> u64 {
        self.levels.iter().map(|h| h.order() as u64 - 1).sum()
    }

    /// Valuation of the discriminant, `f` times the different.
    pub fn discriminant(&self) -> u64 {
        self.residue_degree as u64 * self.different()
    }
}

/// `v_B(σT - T)` for an Eisenstein model, through the norm.
pub fn i_lower(ext: &ExtSpec, sigma: usize) -> Result<u64, RamError> {
    let ExtKind::Eisenstein { poly, action } = &ext.kind else {
        return Err(RamError::NeedsEisensteinModel);
    };
    if sigma == 0 {
        return Err(RamError::IdentityElement);
    }
    let h = action.get(sigma).ok_or(GroupError::OutOfRange(sigma))?;
    let d = h.sub(&SeriesPoly::var(&ext.ring));
    let v = poly.resultant(&d)?.valuation().ok_or(RamError::PrecisionExhausted)?;
    if v < 0 {
        return Err(RamError::BadAction("σT - T is not integral"));
    }
    Ok(v as u64)
}

/// Valuation of the different of an Eisenstein model, `v_A(Res(f, f'))`.
pub fn different_by_resultant(ext: &ExtSpec) -> Result<u64, RamError> {
    let ExtKind::Eisenstein { poly, .. } = &ext.kind else {
        return Err(RamError::NeedsEisensteinModel);
    };
    let v = poly.resultant(&poly.derivative())?.valuation().ok_or(RamError::PrecisionExhausted)?;
    Ok(v as u64)
}

/// The lower-numbering filtration. The coefficient field of the ring is
/// treated as perfect.
pub fn ram_filtration(ext: &ExtSpec) -> Result<Filtration, RamError> {
    let g = &ext.group;
    match &ext.kind {
        ExtKind::ArtinSchreier { rhs } => {
            let swan = as_reduce(rhs)?.swan;
            if swan == 0 {
                return Ok(Filtration::unramified(g));
            }
            let mut levels = vec![Subgroup::whole(g); swan as usize + 1];
            levels.push(Subgroup::trivial());
            Filtration::new(g, levels, 1)
        }
        ExtKind::Kummer { n, rhs, .. } => {
            let v = rhs.valuation().ok_or(RamError::PrecisionExhausted)?;
            let e = n / n.gcd(&(v.unsigned_abs() as usize));
            let inertia = Subgroup::generated(g, &[(n / e) % n])?;
            Filtration::new(g, vec![inertia, Subgroup::trivial()], n / e)
        }
        ExtKind::Unramified { .. } => Ok(Filtration::unramified(g)),
        ExtKind::Eisenstein { .. } => {
            let mut numbers = vec![u64::MAX; g.order()];
            for (s, slot) in numbers.iter_mut().enumerate().skip(1) {
                *slot = i_lower(ext, s)?;
                if *slot == 0 {
                    return Err(RamError::BadAction("a nontrivial element acts trivially on the residue field"));
                }
            }
            let top = numbers[1..].iter().copied().max().unwrap_or(0);
            let levels = (0..=top)
                .map(|i| Subgroup::generated(g, &(0..g.order()).filter(|&s| numbers[s] > i).collect::<Vec<_>>()))
                .collect::<Result<Vec<_>, _>>()?;
            Filtration::new(g, levels, 1)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Herbrand {
    Phi,
    Psi,
}

/// The Herbrand functions: `φ(u) = ∫_0^u dt / (G_0 : G_t)` and its inverse.
pub fn herbrand(filt: &Filtration, dir: Herbrand, u: Q) -> Q {
    assert!(u >= Q::from_integer(0), "Herbrand functions are evaluated at nonnegative arguments");
    let e = filt.e() as i128;
    // slope of φ on (k-1, k]
    let slope = |k: usize| Q::new(filt.level(k).order() as i128, e);
    let mut lower = Q::from_integer(0);
    let mut upper = Q::from_integer(0);
    let mut k = 1;
    loop {
        let s = slope(k);
        let last = k > filt.length();
        match dir {
            Herbrand::Phi => {
                if last || u <= lower + 1 {
                    return upper + (u - lower) * s;
                }
            }
            Herbrand::Psi => {
                if last || u <= upper + s {
                    return lower + (u - upper) / s;
                }
            }
        }
        lower += 1;
        upper += s;
        k += 1;
    }
}

/// Upper-numbering breaks `(x, dim V(x))` of a representation, with zero
/// dimensions omitted.
pub fn upper_breaks(filt: &Filtration, rep: &CharRep) -> Result<Vec<(Q, u32)>, ConductorError> {
    if rep.group() != filt.group() {
        return Err(ConductorError::GroupMismatch);
    }
    let len = filt.length();
    let dims = (0..=len).map(|i| invariants_dim(rep, filt.level(i))).collect::<Result<Vec<_>, _>>()?;
    let mut out: Vec<(Q, u32)> = Vec::new();
    let mut push = |x: Q, d: u32| {
        if d == 0 {
            return;
        }
        match out.iter_mut().find(|(y, _)| *y == x) {
            Some(slot) => slot.1 += d,
            None => out.push((x, d)),
        }
    };
    push(Q::from_integer(0), dims[len.min(1)]);
    for i in 1..len {
        push(herbrand(filt, Herbrand::Phi, Q::from_integer(i as i128)), dims[i + 1] - dims[i]);
    }
    out.sort();
    Ok(out)
}

/// `H_i = H ∩ G_i`, as a filtration of `H` in its own right (element `k` of
/// the result is `h.elements()[k]`).
pub fn restrict_filtration(filt: &Filtration, h: &Subgroup) -> Result<Filtration, RamError> {
    let g = filt.group();
    if h.elements().iter().any(|&x| x >= g.order()) || Subgroup::generated(g, h.elements())? != *h {
        return Err(RamError::Group(GroupError::NotAGroup("not a subgroup")));
    }
    let hg = h.as_group(g);
    let local = |s: &Subgroup| {
        let elems: Vec<usize> =
            s.intersect(h).elements().iter().map(|x| h.elements().binary_search(x).expect("in h")).collect();
        Subgroup::generated(&hg, &elems)
    };
    let levels = filt.levels.iter().map(local).collect::<Result<Vec<_>, _>>()?;
    let f = h.order() / levels[0].order();
    Filtration::new(&hg, levels, f)
}

/// A readable label for a filtration.
pub fn describe(filt: &Filtration) -> String {
    if filt.e() == 1 {
        String::from("unramified (possibly trivial)")
    } else if filt.length() == 1 {
        String::from("tamely ramified")
    } else {
        String::from("wildly ramified")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pfield::PField;

    fn ring(p: u32, vars: &[&str]) -> Arc<SeriesRing> {
        SeriesRing::new(&PField::new(p, vars).unwrap(), "y").unwrap()
    }

    fn q(n: i128, d: i128) -> Q {
        Q::new(n, d)
    }

    fn poly(r: &Arc<SeriesRing>, src: &str, prec: Option<i64>) -> SeriesPoly {
        SeriesPoly::parse(r, "T", src, prec).unwrap()
    }

    /// Eisenstein model with σ^k acting by the given images.
    fn model(p: u32, f: &str, images: &[&str], prec: Option<i64>) -> ExtSpec {
        let r = ring(p, &[]);
        let g = FiniteGroup::cyclic(images.len());
        let action = images.iter().map(|s| poly(&r, s, prec)).collect();
        ExtSpec::eisenstein(&r, poly(&r, f, prec), &g, action).unwrap()
    }

    fn art_sch(p: u32, rhs: &str) -> ExtSpec {
        let r = ring(p, &[]);
        ExtSpec::artin_schreier(&r, LSeries::parse(&r, rhs).unwrap()).unwrap()
    }

    #[test]
    fn tame_quadratic() {
        let ext = model(3, "T^2 - y", &["T", "-T"], None);
        assert_eq!(i_lower(&ext, 1), Ok(1));
        assert_eq!(i_lower(&ext, 0), Err(RamError::IdentityElement));
        // direct norm: (−2T)(2T) at the two roots ±√y is −4·(−y)... valuation 1
        let f = ram_filtration(&ext).unwrap();
        assert_eq!(f.orders(), [(0, 2), (1, 1)]);
        assert_eq!(f.different(), different_by_resultant(&ext).unwrap());
    }

    /// Eisenstein models of t^p - t = y^-m, p ∤ m, checked against the
    /// filtration obtained by reduction.
    #[test]
    fn artin_schreier_models_agree() {
        let cases: [(u32, u32, &str, &[&str]); 4] = [
            (2, 1, "T^2 - y*T - y", &["T", "T + y"]),
            (2, 3, "T^2 - y^2*T - y", &["T", "T + y^2"]),
            (3, 2, "T^3 - y^2*T - y", &["T", "T + y", "T + 2*y"]),
            (3, 1, "T^3 + y*T^2 - y", &["T", "T/(1 + T)", "T/(1 + 2*T)"]),
        ];
        for (p, m, f, images) in cases {
            let eis = if m == 1 && p == 3 { model_with_inverses(f) } else { model(p, f, images, None) };
            let from_model = ram_filtration(&eis).unwrap();
            let from_reduction = ram_filtration(&art_sch(p, &alloc::format!("y^-{m}"))).unwrap();
            assert_eq!(from_model.orders(), from_reduction.orders(), "p={p} m={m}");
            for s in 1..p as usize {
                assert_eq!(i_lower(&eis, s), Ok(m as u64 + 1));
            }
            assert_eq!(different_by_resultant(&eis).unwrap(), from_model.different());
            assert_eq!(from_model.different(), (m as u64 + 1) * (p as u64 - 1));
        }
    }

    /// T^3 + yT^2 - y with σ^k(T) = T/(1 + kT), the inverse taken mod the
    /// polynomial at finite precision.
    fn model_with_inverses(f: &str) -> ExtSpec {
        let r = ring(3, &[]);
        let prec = Some(12);
        let fp = poly(&r, f, prec);
        let mut action = vec![poly(&r, "T", prec)];
        for k in 1..3 {
            let d = poly(&r, &alloc::format!("1 + {k}*T"), prec);
            let inv = d.inv_mod(&fp).unwrap();
            action.push(poly(&r, "T", prec).mul(&inv).rem(&fp).unwrap());
        }
        ExtSpec::eisenstein(&r, fp, &FiniteGroup::cyclic(3), action).unwrap()
    }

    #[test]
    fn rejects_bad_models() {
        let r = ring(3, &[]);
        let g = FiniteGroup::cyclic(2);
        let t = poly(&r, "T", None);
        let not_eis = ExtSpec::eisenstein(&r, poly(&r, "T^2 - y^2", None), &g, vec![t.clone(), poly(&r, "-T", None)]);
        assert!(matches!(not_eis, Err(RamError::NotEisenstein(_))));
        let wrong = ExtSpec::eisenstein(&r, poly(&r, "T^2 - y", None), &g, vec![t.clone(), poly(&r, "T + y", None)]);
        assert!(matches!(wrong, Err(RamError::BadAction(_))));
        assert!(matches!(i_lower(&art_sch(3, "y^-1"), 1), Err(RamError::NeedsEisensteinModel)));
    }

    #[test]
    fn built_in_kinds() {
        let r = ring(3, &[]);
        let k = ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y").unwrap(), 2).unwrap();
        let f = ram_filtration(&k).unwrap();
        assert_eq!(f.orders(), [(0, 4), (1, 1)]);
        assert_eq!((f.e(), f.f(), f.different()), (4, 1, 3));
        assert!(matches!(
            ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y").unwrap(), 1),
            Err(RamError::MissingRootsOfUnity { .. })
        ));
        assert!(matches!(
            ExtSpec::kummer(&r, 6, LSeries::parse(&r, "y").unwrap(), 2),
            Err(RamError::WildKummer { .. })
        ));
        // t^4 = y^2: inertia of order 2
        let k2 = ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y^2").unwrap(), 2).unwrap();
        assert_eq!(ram_filtration(&k2).unwrap().orders(), [(0, 2), (1, 1)]);
        // t^4 = y^4 (1 + y): unramified
        let k4 = ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y^4 + y^5").unwrap(), 2).unwrap();
        let f4 = ram_filtration(&k4).unwrap();
        assert_eq!((f4.orders(), f4.e(), f4.f()), (vec![(0, 1)], 1, 4));
        let u = ram_filtration(&ExtSpec::unramified(&r, 5).unwrap()).unwrap();
        assert_eq!((u.orders(), u.different(), u.f()), (vec![(0, 1)], 0, 5));
        let a = ram_filtration(&art_sch(3, "y^-1")).unwrap();
        assert_eq!((a.orders(), a.different()), (vec![(0, 3), (1, 3), (2, 1)], 4));
        // reduction removes the p-divisible pole: y^-3 ~ y^-1
        assert_eq!(ram_filtration(&art_sch(3, "y^-3 + y^-2")).unwrap().length(), 3);
        assert_eq!(describe(&ram_filtration(&art_sch(3, "1 + y")).unwrap()), "unramified (possibly trivial)");
    }

    #[test]
    fn herbrand_examples() {
        let g = FiniteGroup::cyclic(3);
        let triv = Filtration::unramified(&g);
        assert_eq!(herbrand(&triv, Herbrand::Phi, q(7, 2)), q(7, 2));
        let a = ram_filtration(&art_sch(3, "y^-2")).unwrap();
        assert_eq!(herbrand(&a, Herbrand::Phi, q(3, 2)), q(3, 2));
        assert_eq!(herbrand(&a, Herbrand::Phi, q(2, 1)), q(2, 1));
        assert_eq!(herbrand(&a, Herbrand::Phi, q(2, 1) + q(9, 4)), q(2, 1) + q(3, 4));
        let r = ring(5, &[]);
        let tame = ram_filtration(&ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y").unwrap(), 1).unwrap()).unwrap();
        assert_eq!(herbrand(&tame, Herbrand::Phi, q(5, 3)), q(5, 12));
        assert_eq!(herbrand(&tame, Herbrand::Psi, q(5, 12)), q(5, 3));
    }

    #[test]
    fn upper_break_examples() {
        let a = ram_filtration(&art_sch(3, "y^-2")).unwrap();
        let g = a.group().clone();
        assert_eq!(upper_breaks(&a, &CharRep::trivial(&g)).unwrap(), [(q(0, 1), 1)]);
        assert_eq!(upper_breaks(&a, &CharRep::abelian(&g, &[1]).unwrap()).unwrap(), [(q(2, 1), 1)]);
        assert_eq!(upper_breaks(&a, &CharRep::regular(&g)).unwrap(), [(q(0, 1), 1), (q(2, 1), 2)]);
    }

    #[test]
    fn restriction() {
        let r = ring(3, &[]);
        let k = ram_filtration(&ExtSpec::kummer(&r, 4, LSeries::parse(&r, "y").unwrap(), 2).unwrap()).unwrap();
        let g = k.group().clone();
        let same = restrict_filtration(&k, &Subgroup::whole(&g)).unwrap();
        assert_eq!(same.orders(), k.orders());
        assert_eq!(restrict_filtration(&k, &Subgroup::trivial()).unwrap().orders(), [(0, 1)]);
        let h = Subgroup::generated(&g, &[2]).unwrap();
        let kh = restrict_filtration(&k, &h).unwrap();
        assert_eq!((kh.orders(), kh.e(), kh.f()), (vec![(0, 2), (1, 1)], 2, 1));
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn herbrand_round_trip(p in prop::sample::select(vec![2u32, 3, 5]), m in 1i64..8, num in 0i128..400, den in 1i128..30) {
                let a = ram_filtration(&art_sch(p, &alloc::format!("y^-{m}"))).unwrap();
                let u = q(num, den);
                let x = herbrand(&a, Herbrand::Phi, u);
                prop_assert_eq!(herbrand(&a, Herbrand::Psi, x), u);
                prop_assert!(x <= u);
                let v = u + q(1, den);
                prop_assert!(herbrand(&a, Herbrand::Phi, v) > x);
            }
        }
    }
}

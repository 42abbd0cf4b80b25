//! The generic residual perfection at finite precision.
//!
//! For a base `A = F_p(x_1..x_r)[[y]]` the jet map of level `N` sends each
//! p-basis lift `x_i` to `x̄_i + u_{i,1} y + ... + u_{i,N} y^N` over the
//! perfect field generated by the fresh transcendentals `x̄_i`, `u_{i,j}`.
//! The images carry precision `N + 1`: higher coefficients exist in the
//! limit but are not materialized.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::expr;
use crate::pfield::{PElem, PField, PfError};
use crate::series::{compose_rational, LSeries, SeriesError, SeriesPoly, SeriesRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum JetError {
    #[error("p-basis name '{0}' is repeated or clashes with the uniformizer")]
    BadBasis(String),
    #[error("coefficient {0} is not a rational function of the p-basis")]
    NotRational(String),
    #[error("extension is not residually separable")]
    NotResiduallySeparable,
    #[error("étale extensions need a monic polynomial of positive degree")]
    NotMonic,
    #[error("malformed base description '{0}'")]
    BadDescriptor(String),
    #[error(transparent)]
    Series(#[from] SeriesError),
    #[error(transparent)]
    Field(#[from] PfError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Characteristic {
    Equal,
    Mixed,
}

/// `A = F_p(pbasis)[[y]]` with its fraction field `K`.
#[derive(Debug, PartialEq, Eq)]
pub struct BaseRing {
    pbasis: Vec<String>,
    characteristic: Characteristic,
    ring: Arc<SeriesRing>,
}

impl BaseRing {
    pub fn new(p: u32, pbasis: &[&str], uniformizer: &str) -> Result<Arc<BaseRing>, JetError> {
        Self::from_names(p, pbasis.iter().map(|s| s.to_string()).collect(), uniformizer)
    }

    pub fn from_names(p: u32, pbasis: Vec<String>, uniformizer: &str) -> Result<Arc<BaseRing>, JetError> {
        for (i, t) in pbasis.iter().enumerate() {
            if t == uniformizer || pbasis[..i].contains(t) {
                return Err(JetError::BadBasis(t.clone()));
            }
        }
        let field = PField::from_names(p, pbasis.clone())?;
        let ring = SeriesRing::new(&field, uniformizer)?;
        Ok(Arc::new(BaseRing { pbasis, characteristic: Characteristic::Equal, ring }))
    }

    /// Parse `F_p(x1,x2)[[y]]`, `F_p(x)((y))` or `F_p((y))`.
    pub fn parse(desc: &str) -> Result<Arc<BaseRing>, JetError> {
        let bad = || JetError::BadDescriptor(desc.to_string());
        let s: String = desc.chars().filter(|c| !c.is_whitespace()).collect();
        let rest = s.strip_prefix("F_").ok_or_else(bad)?;
        let digits: String = rest.chars().take_while(|c| c.is_ascii_digit()).collect();
        let p: u32 = digits.parse().map_err(|_| bad())?;
        let rest = &rest[digits.len()..];
        let (vars, rest) = if let Some(r) = rest.strip_prefix("((") {
            (Vec::new(), alloc::format!("(({r}"))
        } else if let Some(r) = rest.strip_prefix("[[") {
            (Vec::new(), alloc::format!("[[{r}"))
        } else {
            let r = rest.strip_prefix('(').ok_or_else(bad)?;
            let close = r.find(')').ok_or_else(bad)?;
            let vars: Vec<String> = r[..close].split(',').map(|v| v.to_string()).collect();
            (vars, r[close + 1..].to_string())
        };
        let y = rest
            .strip_prefix("[[")
            .and_then(|r| r.strip_suffix("]]"))
            .or_else(|| rest.strip_prefix("((").and_then(|r| r.strip_suffix("))")))
            .ok_or_else(bad)?;
        if !expr::is_identifier(y) || vars.iter().any(|v| !expr::is_identifier(v)) {
            return Err(bad());
        }
        Self::from_names(p, vars, y)
    }

    pub fn p(&self) -> u32 {
        self.ring.field().p()
    }

    pub fn pbasis(&self) -> &[String] {
        &self.pbasis
    }

    pub fn uniformizer(&self) -> &str {
        self.ring.var()
    }

    pub fn characteristic(&self) -> Characteristic {
        self.characteristic
    }

    /// Residue field is perfect.
    pub fn is_residually_perfect(&self) -> bool {
        self.pbasis.is_empty()
    }

    pub fn field(&self) -> &Arc<PField> {
        self.ring.field()
    }

    /// Laurent series over the residue field.
    pub fn ring(&self) -> &Arc<SeriesRing> {
        &self.ring
    }

    /// An element of `K`; quotients are expanded modulo `y^prec`.
    pub fn element(&self, src: &str, prec: Option<i64>) -> Result<LSeries, JetError> {
        let e = expr::Expr::parse(src).map_err(SeriesError::from)?;
        Ok(LSeries::from_expr(&self.ring, &e, prec)?)
    }

    /// The base obtained by adjoining further p-basis lifts.
    pub fn adjoin(&self, names: &[String]) -> Result<Arc<BaseRing>, JetError> {
        let mut all = self.pbasis.clone();
        all.extend(names.iter().cloned());
        Self::from_names(self.p(), all, self.uniformizer())
    }
}

/// A ramification-index-one extension of the base, as seen by the jet map.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Extension {
    Trivial,
    /// New p-basis lifts.
    PBasis(Vec<String>),
    /// `B = A[t]/(f)` for monic `f` with coefficients in `A`.
    Etale(SeriesPoly),
}

/// The map `A -> A^g_N`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JetMap {
    base: Arc<BaseRing>,
    level: usize,
    target: Arc<SeriesRing>,
    bars: Vec<String>,
    u_names: Vec<Vec<String>>,
    images: Vec<LSeries>,
    etale: Vec<SeriesPoly>,
}

fn bar_name(t: &str) -> String {
    format!("{t}bar")
}

fn u_names_for(index: usize, level: usize, single: bool) -> Vec<String> {
    (1..=level).map(|j| if single { format!("u{j}") } else { format!("u{index}_{j}") }).collect()
}

fn image(ring: &Arc<SeriesRing>, bar: &str, us: &[String]) -> Result<LSeries, JetError> {
    let field = ring.field();
    let mut coeffs = Vec::with_capacity(us.len() + 1);
    coeffs.push(PElem::var(field, bar)?);
    for u in us {
        coeffs.push(PElem::var(field, u)?);
    }
    Ok(LSeries::from_coeffs(ring, 0, coeffs, Some(us.len() as i64 + 1)))
}

impl JetMap {
    pub fn base(&self) -> &Arc<BaseRing> {
        &self.base
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn target(&self) -> &Arc<SeriesRing> {
        &self.target
    }

    pub fn target_field(&self) -> &Arc<PField> {
        self.target.field()
    }

    /// Images of the p-basis lifts, in order.
    pub fn images(&self) -> &[LSeries] {
        &self.images
    }

    pub fn bar_names(&self) -> &[String] {
        &self.bars
    }

    pub fn u_names(&self) -> &[Vec<String>] {
        &self.u_names
    }

    /// Pulled-back étale extensions, in the order they were added.
    pub fn etale(&self) -> &[SeriesPoly] {
        &self.etale
    }

    /// Image of an element of `K` given as a Laurent series with rational
    /// coefficients in the p-basis.
    pub fn apply(&self, f: &LSeries) -> Result<LSeries, JetError> {
        apply_with_images(f, &self.target, &self.images)
    }

    pub fn apply_poly(&self, f: &SeriesPoly) -> Result<SeriesPoly, JetError> {
        let coeffs = f.coeffs().iter().map(|c| self.apply(c)).collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesPoly::new(&self.target, coeffs))
    }
}

/// Substitute `images[i]` for the i-th p-basis lift in every coefficient of
/// `f`; the uniformizer is fixed.
pub fn apply_with_images(f: &LSeries, target: &Arc<SeriesRing>, images: &[LSeries]) -> Result<LSeries, JetError> {
    if f.ring().var() != target.var() {
        return Err(JetError::Series(SeriesError::RingMismatch));
    }
    let mut acc = match f.prec() {
        Some(n) => LSeries::zero_to(target, n),
        None => LSeries::zero(target),
    };
    for (j, c) in f.terms() {
        if !c.is_rational() {
            return Err(JetError::NotRational(c.to_string()));
        }
        let term = compose_rational(target, c, images)?.shift(j);
        acc = acc.add(&term);
    }
    Ok(acc)
}

/// The jet map of level `n`. For a perfect residue field it is the identity.
pub fn universal_jet(base: &Arc<BaseRing>, n: usize) -> Result<JetMap, JetError> {
    if base.is_residually_perfect() {
        return Ok(JetMap {
            base: base.clone(),
            level: n,
            target: base.ring().clone(),
            bars: Vec::new(),
            u_names: Vec::new(),
            images: Vec::new(),
            etale: Vec::new(),
        });
    }
    let single = base.pbasis().len() == 1;
    let bars: Vec<String> = base.pbasis().iter().map(|t| bar_name(t)).collect();
    let u_names: Vec<Vec<String>> = (0..bars.len()).map(|i| u_names_for(i + 1, n, single)).collect();
    let names: Vec<String> = bars.iter().cloned().chain(u_names.iter().flatten().cloned()).collect();
    check_names(base, &names)?;
    let field = PField::from_names(base.p(), names)?;
    let target = SeriesRing::new(&field, base.uniformizer())?;
    let images = bars.iter().zip(&u_names).map(|(b, us)| image(&target, b, us)).collect::<Result<Vec<_>, _>>()?;
    Ok(JetMap { base: base.clone(), level: n, target, bars, u_names, images, etale: Vec::new() })
}

fn check_names(base: &BaseRing, names: &[String]) -> Result<(), JetError> {
    for (i, v) in names.iter().enumerate() {
        if v == base.uniformizer() || names[..i].contains(v) {
            return Err(JetError::BadBasis(v.clone()));
        }
    }
    Ok(())
}

/// Discriminant of a monic polynomial with integral coefficients, up to
/// sign: `Res(f, f')`.
pub fn discriminant(f: &SeriesPoly) -> Result<LSeries, JetError> {
    // Res(f, g) is the product of g over the (integral) roots of f, so a top
    // coefficient of g known only to be O(y^m) just caps the result at y^m.
    let mut g = f.derivative().coeffs().to_vec();
    let mut cap: Option<i64> = None;
    while let Some(c) = g.last().filter(|c| c.valuation().is_none() && !c.is_exact_zero()) {
        let m = c.prec().expect("inexact");
        cap = Some(cap.map_or(m, |k| k.min(m)));
        g.pop();
    }
    let g = SeriesPoly::new(f.ring(), g);
    let res = if g.degree().is_none() { LSeries::zero(f.ring()) } else { f.resultant(&g)? };
    Ok(match cap {
        Some(m) => res.add(&LSeries::zero_to(f.ring(), m)),
        None => res,
    })
}

fn is_unit(d: &LSeries) -> bool {
    d.valuation() == Some(0)
}

/// Transport the jet map along a residually separable extension of the base.
pub fn extend_jet(j: &JetMap, ext: &Extension) -> Result<JetMap, JetError> {
    match ext {
        Extension::Trivial => Ok(j.clone()),
        Extension::PBasis(names) => {
            if names.is_empty() {
                return Ok(j.clone());
            }
            let base = j.base.adjoin(names)?;
            let start = j.base.pbasis().len();
            let new_bars: Vec<String> = names.iter().map(|t| bar_name(t)).collect();
            let new_us: Vec<Vec<String>> =
                (0..names.len()).map(|i| u_names_for(start + i + 1, j.level, false)).collect();
            let fresh: Vec<String> = new_bars.iter().cloned().chain(new_us.iter().flatten().cloned()).collect();
            let field = j.target_field().adjoin(&fresh)?;
            let all: Vec<String> = field.vars().to_vec();
            check_names(&base, &all)?;
            let target = SeriesRing::new(&field, base.uniformizer())?;
            let mut images = j.images.iter().map(|im| im.embed(&target)).collect::<Result<Vec<_>, _>>()?;
            for (b, us) in new_bars.iter().zip(&new_us) {
                images.push(image(&target, b, us)?);
            }
            let etale = j
                .etale
                .iter()
                .map(|f| {
                    let cs = f.coeffs().iter().map(|c| c.embed(&target)).collect::<Result<Vec<_>, _>>()?;
                    Ok(SeriesPoly::new(&target, cs))
                })
                .collect::<Result<Vec<_>, SeriesError>>()?;
            let mut bars = j.bars.clone();
            bars.extend(new_bars);
            let mut u_names = j.u_names.clone();
            u_names.extend(new_us);
            Ok(JetMap { base, level: j.level, target, bars, u_names, images, etale })
        }
        Extension::Etale(f) => {
            if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
                return Err(JetError::NotMonic);
            }
            if f.coeffs().iter().any(|c| c.valuation().is_some_and(|v| v < 0)) {
                return Err(JetError::NotRational("étale polynomial must have integral coefficients".into()));
            }
            if !is_unit(&discriminant(f)?) {
                return Err(JetError::NotResiduallySeparable);
            }
            let pulled = j.apply_poly(f)?;
            let mut out = j.clone();
            out.etale.push(pulled);
            Ok(out)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ser(r: &Arc<SeriesRing>, s: &str) -> LSeries {
        LSeries::parse(r, s).unwrap()
    }

    #[test]
    fn single_basis_images() {
        let base = BaseRing::parse("F_3(x)[[y]]").unwrap();
        let j = universal_jet(&base, 2).unwrap();
        assert_eq!(j.target_field().vars(), &["xbar", "u1", "u2"]);
        assert_eq!(j.images()[0], ser(j.target(), "xbar + u1*y + u2*y^2 ;; prec=3"));
        let (start, cs) = j.images()[0].truncate(2).coefficients();
        assert_eq!(start, 0);
        assert_eq!(cs.iter().map(|c| c.to_string()).collect::<Vec<_>>(), ["xbar", "u1"]);
    }

    #[test]
    fn perfect_residue_field_is_identity() {
        let base = BaseRing::parse("F_5((y))").unwrap();
        let j = universal_jet(&base, 7).unwrap();
        assert_eq!(j.target_field().num_vars(), 0);
        let f = base.element("1/(1 - y) + 3*y^-2", Some(6)).unwrap();
        assert_eq!(j.apply(&f).unwrap(), f);
    }

    #[test]
    fn two_basis_elements() {
        let base = BaseRing::parse("F_2(x1,x2)[[y]]").unwrap();
        let j = universal_jet(&base, 1).unwrap();
        assert_eq!(j.target_field().vars(), &["x1bar", "x2bar", "u1_1", "u2_1"]);
        assert_eq!(j.images()[1], ser(j.target(), "x2bar + u2_1*y ;; prec=2"));
    }

    #[test]
    fn apply_examples() {
        let base = BaseRing::parse("F_3(x)[[y]]").unwrap();
        let j = universal_jet(&base, 2).unwrap();
        let y = base.element("y", None).unwrap();
        assert_eq!(j.apply(&y).unwrap(), ser(j.target(), "y"));
        let f = base.element("x/y^2", None).unwrap();
        assert_eq!(j.apply(&f).unwrap(), ser(j.target(), "xbar*y^-2 + u1*y^-1 + u2 ;; prec=1"));
        // 1/x: multiplying back by the image of x gives 1
        let inv = base.element("1/x", None).unwrap();
        let x = base.element("x", None).unwrap();
        let prod = j.apply(&inv).unwrap().mul(&j.apply(&x).unwrap());
        assert_eq!(prod, ser(j.target(), "1 ;; prec=3"));
    }

    #[test]
    fn stable_in_level() {
        let base = BaseRing::parse("F_2(x,z)[[y]]").unwrap();
        let small = universal_jet(&base, 2).unwrap();
        let big = universal_jet(&base, 5).unwrap();
        for (a, b) in small.images().iter().zip(big.images()) {
            let cut = b.truncate(3);
            let renamed =
                cut.map_coeffs(small.target(), |c| PElem::parse(small.target_field(), &c.to_string())).unwrap();
            assert_eq!(&renamed, a);
        }
    }

    #[test]
    fn extending_the_basis() {
        let base = BaseRing::parse("F_3(x)[[y]]").unwrap();
        let j = universal_jet(&base, 2).unwrap();
        let k = extend_jet(&j, &Extension::PBasis(alloc::vec!["w".into()])).unwrap();
        assert_eq!(k.target_field().vars(), &["xbar", "u1", "u2", "wbar", "u2_1", "u2_2"]);
        // restriction to A is j followed by the inclusion of coefficient fields
        let f = base.element("(x + y)/(x^2 - y^3)", Some(4)).unwrap();
        let f_b = f.embed(k.base().ring()).unwrap();
        let lhs = k.apply(&f_b).unwrap();
        let rhs = j.apply(&f).unwrap().embed(k.target()).unwrap();
        assert_eq!(lhs, rhs);
        assert_eq!(extend_jet(&j, &Extension::Trivial).unwrap(), j);
    }

    #[test]
    fn etale_quadratic_stays_etale() {
        let base = BaseRing::parse("F_2(x)[[y]]").unwrap();
        let j = universal_jet(&base, 3).unwrap();
        let r = base.ring();
        let f = SeriesPoly::new(r, alloc::vec![ser(r, "x"), ser(r, "1"), ser(r, "1")]);
        let k = extend_jet(&j, &Extension::Etale(f)).unwrap();
        let pulled = &k.etale()[0];
        assert_eq!(discriminant(pulled).unwrap().valuation(), Some(0));
        assert_eq!(k.images(), j.images());
    }

    #[test]
    fn inseparable_residue_extension_is_rejected() {
        let base = BaseRing::parse("F_2(x)[[y]]").unwrap();
        let j = universal_jet(&base, 2).unwrap();
        let r = base.ring();
        // t^2 - x: purely inseparable on residue fields
        let f = SeriesPoly::new(r, alloc::vec![ser(r, "x"), ser(r, "0"), ser(r, "1")]);
        assert_eq!(extend_jet(&j, &Extension::Etale(f)), Err(JetError::NotResiduallySeparable));
        // same, with the linear coefficient only known to be O(y^4)
        let zero4 = LSeries::zero_to(r, 4);
        let g = SeriesPoly::new(r, alloc::vec![ser(r, "x"), zero4.clone(), ser(r, "1")]);
        let d = discriminant(&g).unwrap();
        assert_eq!((d.valuation(), d.prec()), (None, Some(4)));
        assert_eq!(extend_jet(&j, &Extension::Etale(g)), Err(JetError::NotResiduallySeparable));
        // p = 3: t^3 + O(y^4) t^2 - t - x is residually Artin-Schreier, hence étale
        let base3 = BaseRing::parse("F_3(x)[[y]]").unwrap();
        let r3 = base3.ring();
        let h = SeriesPoly::new(r3, alloc::vec![ser(r3, "-x"), ser(r3, "-1"), LSeries::zero_to(r3, 4), ser(r3, "1")]);
        assert_eq!(discriminant(&h).unwrap().valuation(), Some(0));
    }

    #[test]
    fn descriptor_errors() {
        assert!(BaseRing::parse("F_4(x)[[y]]").is_err());
        assert!(BaseRing::parse("F_3(x)[y]").is_err());
        assert!(matches!(BaseRing::parse("F_3(y)[[y]]"), Err(JetError::BadBasis(_))));
    }

    mod props {
        use super::super::*;
        use crate::sample;
        use proptest::prelude::*;
        use rand::{Rng, SeedableRng};
        use rand_chacha::ChaCha8Rng;

        fn element(rng: &mut ChaCha8Rng, base: &Arc<BaseRing>, prec: i64) -> LSeries {
            let lo = rng.gen_range(-2..=1);
            let n = rng.gen_range(1..=3);
            let p = base.p();
            let coeffs: Vec<PElem> = (0..n)
                .map(|_| loop {
                    let num = sample::poly(rng, p, base.pbasis().len(), 2, 2);
                    let den = sample::poly(rng, p, base.pbasis().len(), 2, 2);
                    if let Ok(c) = PElem::from_parts(base.field(), 0, num, den) {
                        if !c.is_zero() {
                            break c;
                        }
                    }
                })
                .collect();
            LSeries::from_coeffs(base.ring(), lo, coeffs, Some(lo + prec))
        }

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(24))]

            #[test]
            fn apply_is_a_homomorphism(seed in any::<u64>()) {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let p = [2, 3, 5][rng.gen_range(0..3)];
                let base = BaseRing::new(p, &["x"], "y").unwrap();
                let j = universal_jet(&base, 3).unwrap();
                let f = element(&mut rng, &base, 4);
                let g = element(&mut rng, &base, 4);
                let fg = j.apply(&f.mul(&g)).unwrap();
                let prod = j.apply(&f).unwrap().mul(&j.apply(&g).unwrap());
                let n = fg.prec().unwrap().min(prod.prec().unwrap());
                prop_assert_eq!(fg.truncate(n), prod.truncate(n));
                let sum = j.apply(&f.add(&g)).unwrap();
                let sum2 = j.apply(&f).unwrap().add(&j.apply(&g).unwrap());
                let n = sum.prec().unwrap().min(sum2.prec().unwrap());
                prop_assert_eq!(sum.truncate(n), sum2.truncate(n));
                // nonzero stays nonzero
                prop_assert!(j.apply(&f).unwrap().valuation().is_some());
            }
        }
    }
}

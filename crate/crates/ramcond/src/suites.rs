//! Self-test suites, one per acceptance criterion.

use std::sync::Arc;
use std::time::{Duration, Instant};

use ramcond_core::conductor::{
    artin_conductor, break_formula_check, conductor_at_level, generic_filtration, induce_character, invariants_dim,
    is_tame, naive_artin, CharRep, ConductorReport, Policy,
};
use ramcond_core::group::{FiniteGroup, Subgroup};
use ramcond_core::perfection::{apply_with_images, discriminant, extend_jet, universal_jet, BaseRing, Extension};
use ramcond_core::ramification::{herbrand, ram_filtration, restrict_filtration, ExtSpec, Filtration, Herbrand};
use ramcond_core::sample;
use ramcond_core::series::{LSeries, SeriesPoly, SeriesRing};
use ramcond_core::witt::{WittCache, WittPolys, WittVec, DEFAULT_LENGTH_BOUND};
use ramcond_core::{PElem, PField, Q};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::report::{conductor_report, ram_report, Overrides};

/// Shared state for a self-test run.
pub struct Context {
    pub witt: WittCache,
    pub seed: u64,
}

impl Default for Context {
    fn default() -> Self {
        Context { witt: WittCache::new(DEFAULT_LENGTH_BOUND), seed: 0x5eed }
    }
}

impl Context {
    /// A context whose Witt table for `p = 2, n = 3` has a wrong sum
    /// polynomial; the Witt suite must fail on it.
    pub fn with_corrupted_witt() -> Context {
        let ctx = Context::default();
        let good = WittPolys::generate(2, 3).expect("small table");
        let mut sum = good.sum().to_vec();
        sum[2] = sum[2].add(&ramcond_core::witt::IntPoly::var(0));
        ctx.witt.preload(WittPolys::from_parts(2, 3, sum, good.prod().to_vec()));
        ctx
    }
}

pub type Check = fn(&Context) -> Result<String, String>;

pub struct Suite {
    pub name: &'static str,
    pub group: &'static str,
    pub criterion: u8,
    pub limit: Option<Duration>,
    pub run: Check,
}

pub struct Outcome {
    pub name: &'static str,
    pub criterion: u8,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

const fn secs(s: u64) -> Option<Duration> {
    Some(Duration::from_secs(s))
}

pub const SUITES: &[Suite] = &[
    Suite { name: "field-axioms", group: "pfield", criterion: 1, limit: secs(10), run: field_axioms },
    Suite { name: "witt-soundness", group: "witt", criterion: 2, limit: secs(30), run: witt_soundness },
    Suite {
        name: "jet-coefficient-maps",
        group: "perfection",
        criterion: 3,
        limit: secs(10),
        run: jet_coefficient_maps,
    },
    Suite { name: "conductor-grid", group: "conductor", criterion: 4, limit: secs(30), run: conductor_grid },
    Suite {
        name: "conductor-properties",
        group: "conductor",
        criterion: 5,
        limit: secs(30),
        run: conductor_properties,
    },
    Suite { name: "break-formula", group: "conductor", criterion: 6, limit: None, run: break_formula },
    Suite { name: "induction-formula", group: "conductor", criterion: 7, limit: None, run: induction_formula },
    Suite { name: "stabilization", group: "conductor", criterion: 8, limit: None, run: stabilization },
    Suite { name: "etale-base-change", group: "perfection", criterion: 9, limit: None, run: etale_base_change },
    Suite { name: "herbrand-round-trip", group: "ramification", criterion: 10, limit: None, run: herbrand_round_trip },
    Suite { name: "golden-files", group: "cli", criterion: 11, limit: None, run: golden_files },
];

/// Suites whose name or group contains `filter`.
pub fn select(filter: Option<&str>) -> Vec<&'static Suite> {
    SUITES.iter().filter(|s| filter.is_none_or(|f| s.name.contains(f) || s.group.contains(f))).collect()
}

pub fn run_suite(suite: &Suite, ctx: &Context) -> Outcome {
    let t = Instant::now();
    let result = std::panic::catch_unwind(std::panic::AssertUnwindSafe(|| (suite.run)(ctx)))
        .unwrap_or_else(|_| Err("panicked".into()));
    let elapsed = t.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(limit) = suite.limit {
        if elapsed > limit {
            passed = false;
            detail = format!("{detail}; took {:.2}s, limit {}s", elapsed.as_secs_f64(), limit.as_secs());
        }
    }
    Outcome { name: suite.name, criterion: suite.criterion, passed, detail, elapsed, limit: suite.limit }
}

impl Outcome {
    pub fn line(&self) -> String {
        let limit = self.limit.map_or(String::new(), |l| format!(", limit {}s", l.as_secs()));
        format!(
            "criterion {:>2} {:<22} {} ({:.2}s{limit}): {}",
            self.criterion,
            self.name,
            if self.passed { "PASS" } else { "FAIL" },
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn rng(ctx: &Context, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(ctx.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn field_axioms(ctx: &Context) -> Result<String, String> {
    let mut rng = rng(ctx, 1);
    let n = 1000;
    for i in 0..n {
        let k = sample::field(&mut rng, &[2, 3, 5], 3);
        let el = |rng: &mut ChaCha8Rng| sample::pelem(rng, &k, 2, 1);
        let (a, b, c) = (el(&mut rng), el(&mut rng), el(&mut rng));
        let zero = PElem::zero(&k);
        let one = PElem::one(&k);
        let ok = a.add(&b).add(&c) == a.add(&b.add(&c))
            && a.mul(&b).mul(&c) == a.mul(&b.mul(&c))
            && a.add(&b) == b.add(&a)
            && a.mul(&b) == b.mul(&a)
            && a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c))
            && a.add(&zero) == a
            && a.mul(&one) == a
            && a.add(&a.neg()).is_zero()
            && (a.is_zero() || a.mul(&a.inv().map_err(err)?).is_one());
        ensure!(ok, "field axioms fail on instance {i}: a = {a}, b = {b}, c = {c}");
        let fa = a.frobenius(1);
        let frob_ok = fa == a.pow(k.p() as i64).map_err(err)?
            && fa.frobenius(-1) == a
            && a.frobenius(-1).frobenius(1) == a
            && a.add(&b).frobenius(1) == fa.add(&b.frobenius(1))
            && a.mul(&b).frobenius(1) == fa.mul(&b.frobenius(1));
        ensure!(frob_ok, "Frobenius fails on instance {i}: a = {a}, b = {b}");
    }
    Ok(format!("{n} instances"))
}

fn witt_soundness(ctx: &Context) -> Result<String, String> {
    for p in [2, 3] {
        for n in 1..=4 {
            ctx.witt.get(p, n).map_err(err)?.verify_ghost().map_err(|e| format!("p={p} n={n}: {e}"))?;
        }
    }
    let mut rng = rng(ctx, 2);
    let cases = 200;
    for i in 0..cases {
        let p = if rng.gen_bool(0.5) { 2 } else { 3 };
        let k = PField::new(p, &["x", "z"]).map_err(err)?;
        let n = rng.gen_range(1..=3);
        let polys = ctx.witt.get(p, n).map_err(err)?;
        let mut vec = || WittVec::new((0..n).map(|_| sample::pelem(&mut rng, &k, 2, 1)).collect()).map_err(err);
        let (a, b, c) = (vec()?, vec()?, vec()?);
        let add = |x: &WittVec, y: &WittVec| x.add_with(y, &polys).map_err(err);
        let mul = |x: &WittVec, y: &WittVec| x.mul_with(y, &polys).map_err(err);
        let one = WittVec::teichmuller(&PElem::one(&k), n);
        let ok = add(&add(&a, &b)?, &c)? == add(&a, &add(&b, &c)?)?
            && mul(&mul(&a, &b)?, &c)? == mul(&a, &mul(&b, &c)?)?
            && add(&a, &b)? == add(&b, &a)?
            && mul(&a, &b)? == mul(&b, &a)?
            && mul(&a, &add(&b, &c)?)? == add(&mul(&a, &b)?, &mul(&a, &c)?)?
            && mul(&a, &one)? == a
            && add(&a, &WittVec::zero(&k, n))? == a;
        ensure!(ok, "ring axioms fail on case {i} (p={p}, n={n})");
        let (s, t) = (a.entries()[0].clone(), b.entries()[0].clone());
        let tm = mul(&WittVec::teichmuller(&s, n), &WittVec::teichmuller(&t, n))?;
        ensure!(tm == WittVec::teichmuller(&s.mul(&t), n), "Teichmüller lift not multiplicative on case {i}");
    }
    for p in [2u32, 3] {
        let k = PField::new(p, &["xbar", "u1", "u2"]).map_err(err)?;
        let v = |s: &str| PElem::var(&k, s).map_err(err);
        let polys = ctx.witt.get(p, 3).map_err(err)?;
        let lift = |s: &str, m: u64| WittVec::teichmuller(&v(s)?, 3).mul_int(m).map_err(err);
        let lhs = lift("xbar", 1)?
            .add_with(&lift("u1", p as u64)?, &polys)
            .map_err(err)?
            .add_with(&lift("u2", (p * p) as u64)?, &polys)
            .map_err(err)?;
        let want = [v("xbar")?, v("u1")?.frobenius(1), v("u2")?.frobenius(2)];
        ensure!(lhs.entries() == want, "presentation identity fails for p={p}: {:?}", lhs.entries());
    }
    Ok(format!("ghost identities n<=4, {cases} axiom cases, presentation identity"))
}

fn jet_coefficient_maps(ctx: &Context) -> Result<String, String> {
    let mut rng = rng(ctx, 3);
    let cases = 200;
    for i in 0..cases {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let names: &[&str] = if rng.gen_bool(0.7) { &["x"] } else { &["x", "z"] };
        let base = BaseRing::new(p, names, "y").map_err(err)?;
        let level = rng.gen_range(1..=3);
        let jet = universal_jet(&base, level).map_err(err)?;
        let f = random_element(&mut rng, &base);
        // a coefficient map fixing the bars and sending each u to a polynomial in w1, w2
        let fresh = ["w1".to_string(), "w2".to_string()];
        let k2 = PField::from_names(p, jet.bar_names().iter().cloned().chain(fresh.iter().cloned()).collect())
            .map_err(err)?;
        let ring2 = SeriesRing::new(&k2, "y").map_err(err)?;
        let target = jet.target_field();
        let mut images = Vec::with_capacity(target.num_vars());
        for name in target.vars() {
            if jet.bar_names().contains(name) {
                images.push(PElem::var(&k2, name).map_err(err)?);
            } else {
                let w = sample::poly(&mut rng, p, 2, 2, 2);
                let nb = jet.bar_names().len();
                let poly = w.remap(&[nb, nb + 1]);
                images.push(PElem::from_parts(&k2, 0, poly, ramcond_core::pfield::poly::Poly::one(p)).map_err(err)?);
            }
        }
        let mapped_images = jet
            .images()
            .iter()
            .map(|s| s.map_coeffs(&ring2, |c| c.substitute(&k2, &images)))
            .collect::<Result<Vec<_>, _>>()
            .map_err(err)?;
        let lhs = apply_with_images(&f, &ring2, &mapped_images).map_err(err)?;
        let rhs = jet.apply(&f).map_err(err)?.map_coeffs(&ring2, |c| c.substitute(&k2, &images)).map_err(err)?;
        ensure!(lhs == rhs, "case {i}: f = {f}\n  mapped images: {lhs}\n  mapped coefficients: {rhs}");
    }
    Ok(format!("{cases} elements"))
}

fn random_element(rng: &mut ChaCha8Rng, base: &Arc<BaseRing>) -> LSeries {
    let p = base.p();
    let r = base.pbasis().len();
    let lo = rng.gen_range(-3..=1);
    let n = rng.gen_range(1..=3);
    let coeffs: Vec<PElem> = (0..n)
        .map(|_| loop {
            let num = sample::poly(rng, p, r, 2, 2);
            let den = sample::poly(rng, p, r, 2, 2);
            if let Ok(c) = PElem::from_parts(base.field(), 0, num, den) {
                break c;
            }
        })
        .collect();
    let prec = if rng.gen_bool(0.3) { None } else { Some(lo + n as i64 + rng.gen_range(0..3)) };
    LSeries::from_coeffs(base.ring(), lo, coeffs, prec)
}

/// One entry of the family `t^p - t = x^a / y^b`.
struct GridEntry {
    p: u32,
    a: u32,
    b: u32,
    base: Arc<BaseRing>,
    ext: ExtSpec,
}

impl GridEntry {
    /// Closed form for the conductor of a faithful character.
    fn expected(&self) -> u64 {
        let (p, b) = (self.p, self.b);
        if self.a == 0 {
            let mut c = b;
            while c % p == 0 {
                c /= p;
            }
            (c + 1) as u64
        } else if b % p != 0 {
            (b + 1) as u64
        } else {
            b as u64
        }
    }

    fn label(&self) -> String {
        format!("p={} a={} b={}", self.p, self.a, self.b)
    }
}

fn grid() -> Result<Vec<GridEntry>, String> {
    let mut out = Vec::new();
    for p in [2u32, 3] {
        let base = BaseRing::new(p, &["x"], "y").map_err(err)?;
        for a in 0..=1 {
            for b in 1..=6 {
                let rhs = base.element(&format!("x^{a}/y^{b}"), None).map_err(err)?;
                let ext = ExtSpec::artin_schreier(base.ring(), rhs).map_err(err)?;
                out.push(GridEntry { p, a, b, base: base.clone(), ext });
            }
        }
    }
    Ok(out)
}

fn characters(g: &Arc<FiniteGroup>) -> Vec<CharRep> {
    let mut reps = vec![CharRep::trivial(g), CharRep::regular(g)];
    if let Some([n]) = g.factors() {
        reps.extend((1..*n).map(|k| CharRep::abelian(g, &[k]).expect("cyclic")));
    }
    reps
}

fn faithful(g: &Arc<FiniteGroup>) -> CharRep {
    CharRep::abelian(g, &[1]).expect("cyclic group")
}

fn conductor(base: &Arc<BaseRing>, ext: &ExtSpec, rep: &CharRep) -> Result<ConductorReport, String> {
    artin_conductor(base, ext, rep, Policy::default()).map_err(err)
}

fn conductor_grid(_: &Context) -> Result<String, String> {
    let grid = grid()?;
    for e in &grid {
        let r = conductor(&e.base, &e.ext, &faithful(e.ext.group()))?;
        ensure!(r.value == e.expected(), "{}: conductor {} but closed form gives {}", e.label(), r.value, e.expected());
        for (n, q) in &r.naive_by_level {
            ensure!(
                q.is_integer() && *q >= Q::from_integer(0),
                "{}: level {n} value {q} is not a nonnegative integer",
                e.label()
            );
        }
    }
    Ok(format!("{} entries", grid.len()))
}

/// Tame Kummer and unramified extensions over `F_p(x)[[y]]`.
fn tame_family() -> Result<Vec<(Arc<BaseRing>, ExtSpec)>, String> {
    let mut out = Vec::new();
    for (p, n, mu) in [(2u32, 3usize, 2u32), (3, 2, 1), (3, 4, 2), (5, 4, 1)] {
        let base = BaseRing::new(p, &["x"], "y").map_err(err)?;
        for rhs in ["x*y", "y^2/x", "(1 + x)*y^3", "x", "y^-1"] {
            let rhs = base.element(rhs, None).map_err(err)?;
            out.push((base.clone(), ExtSpec::kummer(base.ring(), n, rhs, mu).map_err(err)?));
        }
        for d in [1, 2, 3] {
            out.push((base.clone(), ExtSpec::unramified(base.ring(), d).map_err(err)?));
        }
    }
    Ok(out)
}

fn conductor_properties(_: &Context) -> Result<String, String> {
    let mut checked = 0;
    let mut all: Vec<(Arc<BaseRing>, ExtSpec, bool)> = grid()?.into_iter().map(|e| (e.base, e.ext, false)).collect();
    all.extend(tame_family()?.into_iter().map(|(b, e)| (b, e, true)));
    for (base, ext, monogenic) in &all {
        let g = ext.group();
        let p = base.p();
        let reps = characters(g);
        let reports = reps.iter().map(|r| conductor(base, ext, r)).collect::<Result<Vec<_>, _>>()?;
        for (i, (rep, rpt)) in reps.iter().zip(&reports).enumerate() {
            let g0 = rpt.filtration.level(0);
            let unramified = invariants_dim(rep, g0).map_err(err)? == rep.dim();
            ensure!(
                (rpt.value == 0) == unramified,
                "{ext:?}: rep {i} has conductor {} but unramified = {unramified}",
                rpt.value
            );
            let codim = (rep.dim() - invariants_dim(rep, g0).map_err(err)?) as u64;
            let tame = is_tame(&rpt.filtration, rep, p).map_err(err)?;
            ensure!(tame == (rpt.value == codim), "rep {i}: tame = {tame}, conductor {}, codim {codim}", rpt.value);
            ensure!(rpt.value > codim || tame, "rep {i}: conductor {} <= codim {codim} but not tame", rpt.value);
            if *monogenic {
                let direct = naive_artin(&ram_filtration(ext).map_err(err)?, rep).map_err(err)?;
                ensure!(
                    direct == Q::from_integer(rpt.value as i128),
                    "rep {i}: direct naive {direct} vs generic {}",
                    rpt.value
                );
                // lower numbering is unchanged by the pullback (e = 1)
                ensure!(
                    ram_filtration(ext).map_err(err)? == rpt.filtration,
                    "pullback changed the filtration of {ext:?}"
                );
            }
            checked += 1;
        }
        // additivity over all pairs
        for (i, a) in reps.iter().enumerate() {
            for (j, b) in reps.iter().enumerate().skip(i) {
                let sum = conductor(base, ext, &a.direct_sum(b).map_err(err)?)?;
                ensure!(sum.value == reports[i].value + reports[j].value, "additivity fails for reps {i}, {j}");
            }
        }
    }
    Ok(format!("{checked} (extension, representation) pairs"))
}

fn break_formula(_: &Context) -> Result<String, String> {
    let mut n = 0;
    let mut filts: Vec<Filtration> = Vec::new();
    for e in grid()? {
        filts.push(generic_filtration(&e.base, &e.ext, Policy::default()).map_err(err)?.0);
    }
    for (base, ext) in tame_family()? {
        filts.push(generic_filtration(&base, &ext, Policy::default()).map_err(err)?.0);
    }
    for f in &filts {
        for rep in characters(f.group()) {
            let c = break_formula_check(f, &rep).map_err(err)?;
            ensure!(c.equal, "{:?} with {:?}: {} != {}", f.orders(), rep.values(), c.lhs, c.rhs);
            n += 1;
        }
    }
    Ok(format!("{n} pairs"))
}

fn induction_formula(_: &Context) -> Result<String, String> {
    for (p, mu) in [(3u32, 2u32), (5, 1)] {
        let base = BaseRing::new(p, &[], "y").map_err(err)?;
        let y = base.element("y", None).map_err(err)?;
        let top = ExtSpec::kummer(base.ring(), 4, y.clone(), mu).map_err(err)?;
        let g = top.group().clone();
        let h = Subgroup::generated(&g, &[2]).map_err(err)?;
        let chi = CharRep::abelian(&h.as_group(&g), &[1]).map_err(err)?;
        // left side: conductor of the induced character over the base
        let ind = induce_character(&g, &h, &chi).map_err(err)?;
        let lhs = conductor(&base, &top, &ind)?.value as i128;
        // right side: conductor of chi over the intermediate field, plus the
        // discriminant of the intermediate field t^2 = y
        let upper = restrict_filtration(&ram_filtration(&top).map_err(err)?, &h).map_err(err)?;
        let ar_chi = naive_artin(&upper, &chi).map_err(err)?;
        let mid = ram_filtration(&ExtSpec::kummer(base.ring(), 2, y, 1).map_err(err)?).map_err(err)?;
        let rhs = Q::from_integer(mid.f() as i128) * ar_chi
            + Q::from_integer((chi.dim() as u64 * mid.discriminant()) as i128);
        ensure!(Q::from_integer(lhs) == rhs, "p={p}: {lhs} != {rhs}");
        ensure!(lhs == 2, "p={p}: induced conductor {lhs}, expected 2");
    }
    Ok("Z/4 over Z/2 for p = 3, 5".into())
}

fn stabilization(_: &Context) -> Result<String, String> {
    for e in grid()? {
        let chi = faithful(e.ext.group());
        let r = conductor(&e.base, &e.ext, &chi)?;
        let n = r.stabilized_at;
        for m in [n, 2 * n] {
            let (v, _) = conductor_at_level(&e.base, &e.ext, &chi, m).map_err(err)?;
            ensure!(v == Q::from_integer(r.value as i128), "{}: level {m} gives {v}, reported {}", e.label(), r.value);
        }
    }
    for p in [2u32, 3] {
        let base = BaseRing::new(p, &[], "y").map_err(err)?;
        let jet = universal_jet(&base, 9).map_err(err)?;
        ensure!(jet.images().is_empty() && jet.target() == base.ring(), "perfect base must give the identity jet");
        let ext = ExtSpec::artin_schreier(base.ring(), base.element("y^-5", None).map_err(err)?).map_err(err)?;
        let r = conductor(&base, &ext, &faithful(ext.group()))?;
        ensure!(r.stabilized_at == 0 && r.value == 6, "perfect base: {} at level {}", r.value, r.stabilized_at);
    }
    Ok("grid stable at N and 2N; perfect base short-circuits".into())
}

fn etale_base_change(ctx: &Context) -> Result<String, String> {
    let mut rng = rng(ctx, 9);
    let mut done = 0;
    let mut rejected = 0;
    while done < 50 {
        let p = [2u32, 3, 5][rng.gen_range(0..3)];
        let base = BaseRing::new(p, &["x"], "y").map_err(err)?;
        let level = rng.gen_range(1..=4);
        let jet = universal_jet(&base, level).map_err(err)?;
        let prec = 6;
        let coeff = |rng: &mut ChaCha8Rng| -> Result<LSeries, String> {
            let terms: Vec<PElem> = (0..3)
                .map(|_| {
                    let num = sample::poly(rng, p, 1, 2, 2);
                    let den = loop {
                        let d = sample::poly(rng, p, 1, 1, 2);
                        if !d.is_zero() {
                            break d;
                        }
                    };
                    PElem::from_parts(base.field(), 0, num, den).map_err(err)
                })
                .collect::<Result<_, _>>()?;
            Ok(LSeries::from_coeffs(base.ring(), 0, terms, Some(prec)))
        };
        let f = SeriesPoly::new(base.ring(), vec![coeff(&mut rng)?, coeff(&mut rng)?, LSeries::one(base.ring())]);
        match extend_jet(&jet, &Extension::Etale(f)) {
            Ok(ext) => {
                let d = discriminant(&ext.etale()[0]).map_err(err)?;
                ensure!(d.valuation() == Some(0), "pulled-back discriminant {d} is not a unit");
                done += 1;
            }
            Err(ramcond_core::perfection::JetError::NotResiduallySeparable) => rejected += 1,
            Err(e) => return Err(e.to_string()),
        }
    }
    Ok(format!("{done} étale quadratics ({rejected} inseparable candidates skipped)"))
}

fn herbrand_round_trip(ctx: &Context) -> Result<String, String> {
    let mut rng = rng(ctx, 10);
    let mut filts = Vec::new();
    for e in grid()? {
        filts.push(generic_filtration(&e.base, &e.ext, Policy::default()).map_err(err)?.0);
    }
    for (base, ext) in tame_family()? {
        filts.push(generic_filtration(&base, &ext, Policy::default()).map_err(err)?.0);
    }
    for f in &filts {
        for _ in 0..100 {
            let u = Q::new(rng.gen_range(0..2000), rng.gen_range(1..60));
            let x = herbrand(f, Herbrand::Phi, u);
            ensure!(herbrand(f, Herbrand::Psi, x) == u, "psi(phi({u})) != {u} on {:?}", f.orders());
            ensure!(herbrand(f, Herbrand::Phi, herbrand(f, Herbrand::Psi, u)) == u, "phi(psi({u})) != {u}");
        }
    }
    Ok(format!("{} filtrations x 100 points", filts.len()))
}

/// Spec files and their committed outputs.
pub const GOLDEN: &[(&str, &str, &str, &str)] = &[
    (
        "as-x-over-y3",
        "conductor",
        include_str!("../golden/as-x-over-y3.toml"),
        include_str!("../golden/as-x-over-y3.conductor.json"),
    ),
    (
        "as-x-over-y2-p2",
        "conductor",
        include_str!("../golden/as-x-over-y2-p2.toml"),
        include_str!("../golden/as-x-over-y2-p2.conductor.json"),
    ),
    (
        "unramified-trivial",
        "conductor",
        include_str!("../golden/unramified-trivial.toml"),
        include_str!("../golden/unramified-trivial.conductor.json"),
    ),
    (
        "kummer-regular",
        "conductor",
        include_str!("../golden/kummer-regular.toml"),
        include_str!("../golden/kummer-regular.conductor.json"),
    ),
    ("kummer-tame", "ram", include_str!("../golden/kummer-tame.toml"), include_str!("../golden/kummer-tame.ram.json")),
    (
        "as-inverse-y",
        "ram",
        include_str!("../golden/as-inverse-y.toml"),
        include_str!("../golden/as-inverse-y.ram.json"),
    ),
    (
        "unramified-ram",
        "ram",
        include_str!("../golden/unramified-ram.toml"),
        include_str!("../golden/unramified-ram.ram.json"),
    ),
    (
        "eisenstein-p3",
        "ram",
        include_str!("../golden/eisenstein-p3.toml"),
        include_str!("../golden/eisenstein-p3.ram.json"),
    ),
];

pub fn render_golden(command: &str, src: &str) -> Result<String, String> {
    let out = match command {
        "conductor" => conductor_report(src, Overrides::default()),
        "ram" => ram_report(src, Overrides::default()),
        other => return Err(format!("unknown command {other}")),
    };
    out.map_err(|e| e.to_string())
}

fn golden_files(_: &Context) -> Result<String, String> {
    for (name, command, src, want) in GOLDEN {
        let got = render_golden(command, src)?;
        ensure!(got == *want, "{name}: output differs from the committed file");
        ensure!(render_golden(command, src)? == got, "{name}: output is not deterministic");
    }
    Ok(format!("{} files", GOLDEN.len()))
}

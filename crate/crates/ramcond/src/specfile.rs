//! Extension specification files.
//!
//! ```toml
//! [base]
//! p = 2
//! pbasis = ["x"]
//! uniformizer = "y"
//!
//! [extension]
//! kind = "artin-schreier"          # kummer | unramified | eisenstein
//! rhs = "x/y^3"
//!
//! [representation]
//! character = "faithful"           # trivial | regular | faithful
//!
//! [options]
//! precision = 8
//! max_precision = 512
//! ```

use std::fmt;
use std::ops::Range;
use std::sync::Arc;

use ramcond_core::conductor::{CharRep, Policy};
use ramcond_core::expr::ParseError;
use ramcond_core::group::FiniteGroup;
use ramcond_core::perfection::BaseRing;
use ramcond_core::ramification::ExtSpec;
use ramcond_core::series::{LSeries, SeriesError, SeriesPoly, SeriesRing};
use serde::Deserialize;
use toml::Spanned;

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawSpec {
    base: RawBase,
    extension: RawExtension,
    representation: Option<RawRep>,
    options: Option<RawOptions>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawBase {
    p: Spanned<u32>,
    #[serde(default)]
    pbasis: Vec<String>,
    #[serde(default = "default_uniformizer")]
    uniformizer: String,
}

fn default_uniformizer() -> String {
    "y".into()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawExtension {
    kind: Spanned<String>,
    rhs: Option<Spanned<String>>,
    n: Option<usize>,
    mu_degree: Option<u32>,
    degree: Option<usize>,
    /// Precision for expanding quotients in `rhs`, `poly` and `action`.
    precision: Option<i64>,
    poly: Option<Spanned<String>>,
    variable: Option<String>,
    group: Option<RawGroup>,
    action: Option<Vec<Spanned<String>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGroup {
    cyclic: Option<usize>,
    abelian: Option<Vec<usize>>,
    table: Option<Vec<Vec<usize>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRep {
    character: Option<Spanned<String>>,
    exponents: Option<Vec<usize>>,
    cyclotomic_order: Option<usize>,
    values: Option<Vec<Vec<i64>>>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawOptions {
    precision: Option<usize>,
    max_precision: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SpecError {
    /// Malformed file or invalid values.
    Parse { line: usize, col: usize, message: String },
    /// A well-formed extension kind this tool does not handle.
    Unsupported { line: usize, col: usize, kind: String },
}

impl fmt::Display for SpecError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpecError::Parse { line, col, message } => write!(f, "{line}:{col}: {message}"),
            SpecError::Unsupported { line, col, kind } => {
                write!(f, "{line}:{col}: unsupported extension kind '{kind}'")
            }
        }
    }
}

impl std::error::Error for SpecError {}

/// A parsed specification.
#[derive(Debug, Clone)]
pub struct Spec {
    pub base: Arc<BaseRing>,
    pub extension: ExtSpec,
    pub representation: Option<CharRep>,
    pub policy: Policy,
}

/// 1-based line and column of a byte offset.
pub fn line_col(src: &str, offset: usize) -> (usize, usize) {
    let offset = offset.min(src.len());
    let before = &src[..offset];
    let line = before.matches('\n').count() + 1;
    let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
    (line, col)
}

struct Loader<'a> {
    src: &'a str,
}

impl Loader<'_> {
    fn at(&self, span: Range<usize>, message: impl Into<String>) -> SpecError {
        let (line, col) = line_col(self.src, span.start);
        SpecError::Parse { line, col, message: message.into() }
    }

    /// Error inside a quoted string value; `offset` counts from the opening quote.
    fn inside(&self, span: Range<usize>, offset: usize, message: impl Into<String>) -> SpecError {
        self.at(span.start + 1 + offset..span.end, message)
    }

    fn series_error(&self, s: &Spanned<String>, e: SeriesError) -> SpecError {
        match e {
            SeriesError::Field(ramcond_core::PfError::Parse(ParseError { offset, message })) => {
                self.inside(s.span(), offset, message)
            }
            e => self.at(s.span(), e.to_string()),
        }
    }

    fn series(&self, ring: &Arc<SeriesRing>, s: &Spanned<String>, prec: Option<i64>) -> Result<LSeries, SpecError> {
        let e = ramcond_core::expr::Expr::parse(s.get_ref())
            .map_err(|ParseError { offset, message }| self.inside(s.span(), offset, message))?;
        LSeries::from_expr(ring, &e, prec).map_err(|e| self.series_error(s, e))
    }

    fn poly(
        &self,
        ring: &Arc<SeriesRing>,
        var: &str,
        s: &Spanned<String>,
        prec: Option<i64>,
    ) -> Result<SeriesPoly, SpecError> {
        let e = ramcond_core::expr::Expr::parse(s.get_ref())
            .map_err(|ParseError { offset, message }| self.inside(s.span(), offset, message))?;
        SeriesPoly::from_expr(ring, var, &e, prec).map_err(|e| self.series_error(s, e))
    }
}

fn group_from(raw: &RawGroup) -> Result<Arc<FiniteGroup>, String> {
    match (raw.cyclic, &raw.abelian, &raw.table) {
        (Some(n), None, None) if n > 0 => Ok(FiniteGroup::cyclic(n)),
        (None, Some(orders), None) => FiniteGroup::abelian(orders).map_err(|e| e.to_string()),
        (None, None, Some(table)) => FiniteGroup::from_table(table.clone()).map_err(|e| e.to_string()),
        _ => Err("group needs exactly one of 'cyclic' (positive), 'abelian' or 'table'".into()),
    }
}

impl Spec {
    pub fn parse(src: &str) -> Result<Spec, SpecError> {
        let raw: RawSpec = toml::from_str(src).map_err(|e| {
            let (line, col) = e.span().map_or((1, 1), |s| line_col(src, s.start));
            SpecError::Parse { line, col, message: e.message().to_string() }
        })?;
        let ld = Loader { src };
        let base = BaseRing::from_names(*raw.base.p.get_ref(), raw.base.pbasis.clone(), &raw.base.uniformizer)
            .map_err(|e| ld.at(raw.base.p.span(), e.to_string()))?;
        let ring = base.ring().clone();
        let ext = &raw.extension;
        let kind_span = ext.kind.span();
        let missing = |what: &str| ld.at(kind_span.clone(), format!("this kind needs '{what}'"));
        let unused = |present: bool, what: &str| {
            if present {
                Err(ld.at(kind_span.clone(), format!("'{what}' does not apply to this kind")))
            } else {
                Ok(())
            }
        };
        let invalid = |e: ramcond_core::ramification::RamError| ld.at(kind_span.clone(), e.to_string());
        let extension = match ext.kind.get_ref().as_str() {
            "artin-schreier" => {
                for (p, w) in [
                    (ext.n.is_some(), "n"),
                    (ext.mu_degree.is_some(), "mu_degree"),
                    (ext.degree.is_some(), "degree"),
                    (ext.poly.is_some(), "poly"),
                    (ext.variable.is_some(), "variable"),
                    (ext.group.is_some(), "group"),
                    (ext.action.is_some(), "action"),
                ] {
                    unused(p, w)?;
                }
                let rhs = ext.rhs.as_ref().ok_or_else(|| missing("rhs"))?;
                ExtSpec::artin_schreier(&ring, ld.series(&ring, rhs, ext.precision)?).map_err(invalid)?
            }
            "kummer" => {
                for (p, w) in [
                    (ext.degree.is_some(), "degree"),
                    (ext.poly.is_some(), "poly"),
                    (ext.variable.is_some(), "variable"),
                    (ext.group.is_some(), "group"),
                    (ext.action.is_some(), "action"),
                ] {
                    unused(p, w)?;
                }
                let rhs = ext.rhs.as_ref().ok_or_else(|| missing("rhs"))?;
                let n = ext.n.ok_or_else(|| missing("n"))?;
                let rhs = ld.series(&ring, rhs, ext.precision)?;
                ExtSpec::kummer(&ring, n, rhs, ext.mu_degree.unwrap_or(1)).map_err(invalid)?
            }
            "unramified" => {
                for (p, w) in [
                    (ext.rhs.is_some(), "rhs"),
                    (ext.n.is_some(), "n"),
                    (ext.mu_degree.is_some(), "mu_degree"),
                    (ext.precision.is_some(), "precision"),
                    (ext.poly.is_some(), "poly"),
                    (ext.variable.is_some(), "variable"),
                    (ext.group.is_some(), "group"),
                    (ext.action.is_some(), "action"),
                ] {
                    unused(p, w)?;
                }
                ExtSpec::unramified(&ring, ext.degree.ok_or_else(|| missing("degree"))?).map_err(invalid)?
            }
            "eisenstein" => {
                for (p, w) in [
                    (ext.rhs.is_some(), "rhs"),
                    (ext.n.is_some(), "n"),
                    (ext.mu_degree.is_some(), "mu_degree"),
                    (ext.degree.is_some(), "degree"),
                ] {
                    unused(p, w)?;
                }
                let var = ext.variable.clone().unwrap_or_else(|| "T".into());
                let poly = ext.poly.as_ref().ok_or_else(|| missing("poly"))?;
                let poly = ld.poly(&ring, &var, poly, ext.precision)?;
                let group = group_from(ext.group.as_ref().ok_or_else(|| missing("group"))?)
                    .map_err(|m| ld.at(kind_span.clone(), m))?;
                let action = ext
                    .action
                    .as_ref()
                    .ok_or_else(|| missing("action"))?
                    .iter()
                    .map(|s| ld.poly(&ring, &var, s, ext.precision))
                    .collect::<Result<Vec<_>, _>>()?;
                ExtSpec::eisenstein(&ring, poly, &group, action).map_err(invalid)?
            }
            other => {
                let (line, col) = line_col(src, kind_span.start);
                return Err(SpecError::Unsupported { line, col, kind: other.to_string() });
            }
        };
        let representation =
            raw.representation.as_ref().map(|r| representation(&ld, r, &extension, kind_span.clone())).transpose()?;
        let mut policy = Policy::default();
        if let Some(o) = &raw.options {
            policy.start = o.precision.or(policy.start);
            policy.budget = o.max_precision.unwrap_or(policy.budget);
        }
        Ok(Spec { base, extension, representation, policy })
    }
}

fn representation(ld: &Loader, r: &RawRep, ext: &ExtSpec, fallback: Range<usize>) -> Result<CharRep, SpecError> {
    let group = ext.group();
    let span = r.character.as_ref().map_or(fallback, |c| c.span());
    let bad = |m: String| ld.at(span.clone(), m);
    match (&r.character, &r.exponents, &r.values) {
        (Some(c), None, None) => {
            if r.cyclotomic_order.is_some() {
                return Err(bad("'cyclotomic_order' goes with 'values'".into()));
            }
            match c.get_ref().as_str() {
                "trivial" => Ok(CharRep::trivial(group)),
                "regular" => Ok(CharRep::regular(group)),
                "faithful" => match group.factors() {
                    Some([_]) => CharRep::abelian(group, &[1]).map_err(|e| bad(e.to_string())),
                    _ => Err(bad("'faithful' needs a cyclic group".into())),
                },
                other => Err(bad(format!("unknown character '{other}'"))),
            }
        }
        (None, Some(ks), None) => {
            if r.cyclotomic_order.is_some() {
                return Err(bad("'cyclotomic_order' goes with 'values'".into()));
            }
            CharRep::abelian(group, ks).map_err(|e| bad(e.to_string()))
        }
        (None, None, Some(values)) => {
            let n = r.cyclotomic_order.ok_or_else(|| bad("'values' needs 'cyclotomic_order'".into()))?;
            CharRep::new(group, n, values.clone()).map_err(|e| bad(e.to_string()))
        }
        _ => Err(bad("representation needs exactly one of 'character', 'exponents' or 'values'".into())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_artin_schreier() {
        let s = Spec::parse(
            "[base]\np = 2\npbasis = [\"x\"]\n\n[extension]\nkind = \"artin-schreier\"\nrhs = \"x/y^3\"\n\n[representation]\ncharacter = \"faithful\"\n",
        )
        .unwrap();
        assert_eq!(s.base.pbasis(), ["x"]);
        assert_eq!(s.extension.group().order(), 2);
        assert_eq!(s.representation.unwrap().dim(), 1);
        assert_eq!(s.policy, Policy::default());
    }

    #[test]
    fn errors_carry_positions() {
        let e = Spec::parse("[base]\np = 3\n\n[extension]\nkind = \"kummer\"\nrhs = \"y +* 2\"\nn = 2\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 6, col: 11, .. }), "{e:?}");
        // column of the stray `*`
        let e = Spec::parse("[base]\np = 3\nbogus = 1\n[extension]\nkind = \"unramified\"\ndegree = 2\n").unwrap_err();
        assert!(matches!(e, SpecError::Parse { line: 3, .. }), "{e:?}");
        let e = Spec::parse("[base]\np = 3\n[extension]\nkind = \"lubin-tate\"\n").unwrap_err();
        assert_eq!(e, SpecError::Unsupported { line: 4, col: 8, kind: "lubin-tate".into() });
        let e = Spec::parse("[base]\np = 3\n[extension]\nkind = \"unramified\"\n").unwrap_err();
        assert!(e.to_string().contains("degree"));
    }

    #[test]
    fn eisenstein_with_table() {
        let s = Spec::parse(
            "[base]\np = 3\n[extension]\nkind = \"eisenstein\"\npoly = \"T^3 - y^2*T - y\"\ngroup = { cyclic = 3 }\naction = [\"T\", \"T + y\", \"T + 2*y\"]\n[representation]\nexponents = [1]\n",
        )
        .unwrap();
        assert_eq!(s.extension.group().order(), 3);
    }
}

//! JSON reports for the `conductor` and `ram` commands.

use std::collections::BTreeMap;
use std::fmt;

use ramcond_core::conductor::{artin_conductor, generic_filtration, ConductorError, ConductorReport, Policy};
use ramcond_core::ramification::{describe, herbrand, Filtration, Herbrand};
use ramcond_core::Q;
use serde::Serialize;

use crate::specfile::{Spec, SpecError};

/// A command failure with its process exit code.
#[derive(Debug)]
pub struct CliError {
    pub code: u8,
    pub message: String,
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.message)
    }
}

impl From<SpecError> for CliError {
    fn from(e: SpecError) -> Self {
        let code = match e {
            SpecError::Parse { .. } => 2,
            SpecError::Unsupported { .. } => 4,
        };
        CliError { code, message: e.to_string() }
    }
}

impl From<ConductorError> for CliError {
    fn from(e: ConductorError) -> Self {
        let code = match e {
            ConductorError::NoStabilization { .. } => 3,
            _ => 1,
        };
        CliError { code, message: e.to_string() }
    }
}

fn ratio(q: &Q) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

#[derive(Debug, Serialize)]
pub struct ConductorJson {
    pub conductor: u64,
    pub stabilized_at: usize,
    pub naive_by_level: BTreeMap<usize, String>,
    pub breaks: Vec<(i64, i64, u32)>,
    pub filtration: Vec<(usize, usize)>,
}

impl From<&ConductorReport> for ConductorJson {
    fn from(r: &ConductorReport) -> Self {
        ConductorJson {
            conductor: r.value,
            stabilized_at: r.stabilized_at,
            naive_by_level: r.naive_by_level.iter().map(|(n, q)| (*n, ratio(q))).collect(),
            breaks: r.breaks.iter().map(|(x, d)| (*x.numer() as i64, *x.denom() as i64, *d)).collect(),
            filtration: r.filtration.orders(),
        }
    }
}

#[derive(Debug, Serialize)]
pub struct RamJson {
    pub e: usize,
    pub f: usize,
    pub filtration: Vec<(usize, usize)>,
    /// `(i, φ(i))` at the integer points up to the last break.
    pub herbrand: Vec<(usize, String)>,
    pub different: u64,
    pub discriminant: u64,
    pub stabilized_at: usize,
    pub label: String,
}

impl RamJson {
    pub fn new(filt: &Filtration, stabilized_at: usize) -> Self {
        RamJson {
            e: filt.e(),
            f: filt.f(),
            filtration: filt.orders(),
            herbrand: (0..=filt.length())
                .map(|i| (i, ratio(&herbrand(filt, Herbrand::Phi, Q::from_integer(i as i128)))))
                .collect(),
            different: filt.different(),
            discriminant: filt.discriminant(),
            stabilized_at,
            label: describe(filt),
        }
    }
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("plain data serializes");
    s.push('\n');
    s
}

/// Command-line overrides of the stabilization policy.
#[derive(Debug, Clone, Copy, Default)]
pub struct Overrides {
    pub precision: Option<usize>,
    pub max_precision: Option<usize>,
}

impl Overrides {
    fn apply(self, mut p: Policy) -> Policy {
        p.start = self.precision.or(p.start);
        p.budget = self.max_precision.unwrap_or(p.budget);
        p
    }
}

pub fn conductor_report(src: &str, ov: Overrides) -> Result<String, CliError> {
    let spec = Spec::parse(src)?;
    let rep = spec
        .representation
        .as_ref()
        .ok_or_else(|| CliError { code: 2, message: "the conductor needs a [representation] section".into() })?;
    let report = artin_conductor(&spec.base, &spec.extension, rep, ov.apply(spec.policy))?;
    Ok(to_json(&ConductorJson::from(&report)))
}

pub fn ram_report(src: &str, ov: Overrides) -> Result<String, CliError> {
    let spec = Spec::parse(src)?;
    let (filt, level) = generic_filtration(&spec.base, &spec.extension, ov.apply(spec.policy))?;
    Ok(to_json(&RamJson::new(&filt, level)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conductor_examples() {
        let src = "[base]\np = 2\npbasis = [\"x\"]\n[extension]\nkind = \"artin-schreier\"\nrhs = \"x/y^3\"\n[representation]\ncharacter = \"faithful\"\n";
        let out = conductor_report(src, Overrides::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&out).unwrap();
        assert_eq!(v["conductor"], 4);
        let keys: Vec<&str> = v.as_object().unwrap().keys().map(String::as_str).collect();
        assert_eq!(keys, ["breaks", "conductor", "filtration", "naive_by_level", "stabilized_at"]);
        let src = "[base]\np = 3\npbasis = [\"x\"]\n[extension]\nkind = \"unramified\"\ndegree = 2\n[representation]\ncharacter = \"trivial\"\n";
        let v: serde_json::Value = serde_json::from_str(&conductor_report(src, Overrides::default()).unwrap()).unwrap();
        assert_eq!(v["conductor"], 0);
        assert_eq!(conductor_report("[base\np=", Overrides::default()).unwrap_err().code, 2);
    }

    #[test]
    fn ram_examples() {
        let kummer = "[base]\np = 3\n[extension]\nkind = \"kummer\"\nn = 4\nmu_degree = 2\nrhs = \"y\"\n";
        let v: serde_json::Value = serde_json::from_str(&ram_report(kummer, Overrides::default()).unwrap()).unwrap();
        assert_eq!(v["filtration"], serde_json::json!([[0, 4], [1, 1]]));
        assert_eq!(v["different"], 3);
        let a = "[base]\np = 3\n[extension]\nkind = \"artin-schreier\"\nrhs = \"y^-1\"\n";
        let v: serde_json::Value = serde_json::from_str(&ram_report(a, Overrides::default()).unwrap()).unwrap();
        assert_eq!(v["filtration"], serde_json::json!([[0, 3], [1, 3], [2, 1]]));
        assert_eq!(v["different"], 4);
        let u = "[base]\np = 3\n[extension]\nkind = \"unramified\"\ndegree = 2\n";
        let v: serde_json::Value = serde_json::from_str(&ram_report(u, Overrides::default()).unwrap()).unwrap();
        assert_eq!((v["filtration"].clone(), v["different"].clone()), (serde_json::json!([[0, 1]]), 0.into()));
    }

    #[test]
    fn exit_codes() {
        let nostab = "[base]\np = 2\npbasis = [\"x\"]\n[extension]\nkind = \"artin-schreier\"\nrhs = \"x/y^3\"\n[representation]\ncharacter = \"faithful\"\n[options]\nprecision = 8\nmax_precision = 8\n";
        assert_eq!(conductor_report(nostab, Overrides::default()).unwrap_err().code, 3);
        let unsupported = "[base]\np = 2\n[extension]\nkind = \"lubin-tate\"\n";
        assert_eq!(ram_report(unsupported, Overrides::default()).unwrap_err().code, 4);
    }
}

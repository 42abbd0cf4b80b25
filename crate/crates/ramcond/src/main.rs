use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ramcond::report::{conductor_report, ram_report, CliError, Overrides};
use ramcond::suites::{run_suite, select, Context};
use ramcond_core::perfection::{universal_jet, BaseRing};
use ramcond_core::witt::WittPolys;
use serde_json::json;

#[derive(Parser)]
#[command(name = "ramcond", version, about = "Ramification and Artin conductors over imperfect residue fields")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct ReportArgs {
    /// Extension spec files (TOML).
    #[arg(required = true)]
    paths: Vec<PathBuf>,
    /// First truncation level to try.
    #[arg(long)]
    precision: Option<usize>,
    /// Give up past this truncation level.
    #[arg(long)]
    max_precision: Option<usize>,
    /// Reports are always JSON; accepted for symmetry with the other commands.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Artin conductor of a representation.
    Conductor(ReportArgs),
    /// Ramification filtration, Herbrand function and different.
    Ram(ReportArgs),
    /// Image of an element under the universal jet map.
    Jet {
        /// Base ring, e.g. "F_3(x)[[y]]".
        #[arg(long)]
        base: String,
        #[arg(long)]
        precision: usize,
        #[arg(long)]
        element: String,
        #[arg(long)]
        json: bool,
    },
    /// Witt vector sum and product polynomials.
    WittPolys {
        #[arg(long)]
        p: u32,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        json: bool,
    },
    /// Run the built-in acceptance suites.
    Selftest {
        /// Only suites whose name or group contains this.
        #[arg(long)]
        filter: Option<String>,
        #[arg(long)]
        json: bool,
        /// Load a deliberately wrong Witt table first.
        #[arg(long, hide = true)]
        corrupt_witt: bool,
    },
}

fn fail(code: u8, message: impl Into<String>) -> CliError {
    CliError { code, message: message.into() }
}

fn reports(args: &ReportArgs, run: fn(&str, Overrides) -> Result<String, CliError>) -> Result<(), CliError> {
    let ov = Overrides { precision: args.precision, max_precision: args.max_precision };
    for path in &args.paths {
        let src = std::fs::read_to_string(path).map_err(|e| fail(1, format!("{}: {e}", path.display())))?;
        let out = run(&src, ov).map_err(|e| fail(e.code, format!("{}:{}", path.display(), located(&e))))?;
        print!("{out}");
    }
    Ok(())
}

// parse errors already carry "line:col: ..."; others get a separating space
fn located(e: &CliError) -> String {
    if e.message.starts_with(|c: char| c.is_ascii_digit()) {
        e.message.clone()
    } else {
        format!(" {}", e.message)
    }
}

fn jet(base: &str, precision: usize, element: &str, as_json: bool) -> Result<(), CliError> {
    let base = BaseRing::parse(base).map_err(|e| fail(2, e.to_string()))?;
    let f = base.element(element, Some(precision as i64 + 1)).map_err(|e| fail(2, e.to_string()))?;
    let jet = universal_jet(&base, precision).map_err(|e| fail(1, e.to_string()))?;
    let image = jet.apply(&f).map_err(|e| fail(1, e.to_string()))?;
    if as_json {
        let (lo, coeffs) = image.coefficients();
        let terms: Vec<_> = coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| json!([lo + i as i64, c.to_string()]))
            .collect();
        let out = json!({
            "variables": jet.target_field().vars(),
            "precision": image.prec(),
            "terms": terms,
        });
        println!("{}", serde_json::to_string_pretty(&out).expect("plain data"));
    } else {
        println!("{image}");
    }
    Ok(())
}

fn witt_polys(p: u32, n: usize, as_json: bool) -> Result<(), CliError> {
    let polys = WittPolys::generate(p, n).map_err(|e| fail(2, e.to_string()))?;
    if as_json {
        let text = polys.render();
        let lines: Vec<&str> = text.lines().collect();
        println!(
            "{}",
            serde_json::to_string_pretty(&json!({ "p": p, "n": n, "polynomials": lines })).expect("plain data")
        );
    } else {
        print!("{}", polys.render());
    }
    Ok(())
}

fn selftest(filter: Option<&str>, as_json: bool, corrupt: bool) -> Result<(), CliError> {
    let ctx = if corrupt { Context::with_corrupted_witt() } else { Context::default() };
    let suites = select(filter);
    if suites.is_empty() {
        return Err(fail(2, format!("no suite matches {:?}", filter.unwrap_or(""))));
    }
    let mut failed = 0;
    let mut rows = Vec::new();
    for suite in suites {
        let out = run_suite(suite, &ctx);
        failed += usize::from(!out.passed);
        if as_json {
            rows.push(json!({
                "criterion": out.criterion,
                "name": out.name,
                "passed": out.passed,
                "seconds": out.elapsed.as_secs_f64(),
                "detail": out.detail,
            }));
        } else {
            println!("{}", out.line());
        }
    }
    if as_json {
        println!("{}", serde_json::to_string_pretty(&rows).expect("plain data"));
    }
    if failed > 0 {
        return Err(fail(1, format!("{failed} suite(s) failed")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Conductor(args) => reports(args, conductor_report),
        Command::Ram(args) => reports(args, ram_report),
        Command::Jet { base, precision, element, json } => jet(base, *precision, element, *json),
        Command::WittPolys { p, n, json } => witt_polys(*p, *n, *json),
        Command::Selftest { filter, json, corrupt_witt } => selftest(filter.as_deref(), *json, *corrupt_witt),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}

//! Command-line front end. Every command reads JSON files and writes JSON
//! (or a drawing for `stairs`) to stdout or `-o`.
//!
//! Exit codes: 0 success, 1 a check failed on valid input, 2 bad input or
//! usage.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::corank_report::{corank_report, CuspInventory};
use crate::delta_complex::{homology_report, quotient_delta_complex, DeltaComplex, DeltaError, HomologyReport};
use crate::fans::strategy::strategies;
use crate::fans::{
    check_snc_condition, hilbert_cusp_window, hilbert_cusp_window_power, hilbert_matrix, FanError, FanSystem,
    FanSystemJson,
};
use crate::mhs::MixedHSTable;
use crate::stairs::{admissible_region, parse_preset, render_region};
use crate::weight_ss::{
    annotate_from_fans, cstar_fixture, p1xp1_fixture, roof_warnings, weight_filtration_on_fn_hn, weight_graded,
    FanAnnotation, StrataComplex, StrataComplexJson, WeightError,
};

#[derive(Debug, Parser)]
#[command(
    name = "snc-weight",
    version,
    about = "SNC fan subdivision, dual complexes, weight spectral sequences and Hodge stairs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List pairs of equivalent rays spanning a common cone.
    CheckSnc { fan: PathBuf },
    /// Subdivide a fan window equivariantly.
    Subdivide {
        fan: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// two-division, smooth or snc (smooth, then two-division)
        #[arg(long, default_value = "snc")]
        strategy: String,
    },
    /// Homology and pseudomanifold report of the quotient Δ-complex of one cusp.
    Homology {
        fan: PathBuf,
        #[arg(long)]
        cusp: String,
        /// Include the Δ-complex itself in the output.
        #[arg(long)]
        complex: bool,
    },
    /// Weight-graded pieces of H^k from strata data.
    Spectral {
        strata: PathBuf,
        #[arg(long)]
        k: i64,
    },
    /// Weight filtration on F^n H^n, from strata data or from an annotated fan.
    FnFiltration {
        strata: Option<PathBuf>,
        #[arg(long, requires = "annotation", conflicts_with = "strata")]
        fan: Option<PathBuf>,
        #[arg(long, requires = "fan")]
        annotation: Option<PathBuf>,
    },
    /// Region where h_k^{p,q} is not excluded.
    Stairs {
        /// sp:<g>, o2n:<n>, u:<p>,<q> or custom:<n>:<n1>,...:<c>
        #[arg(long)]
        preset: String,
        #[arg(long)]
        k: usize,
        /// json, ascii or svg
        #[arg(long, default_value = "json")]
        format: String,
    },
    /// Corank dimension identities for a cusp inventory.
    Report {
        #[arg(long)]
        inventory: PathBuf,
        #[arg(long)]
        preset: String,
    },
    /// Emit a built-in fixture: hilbert, hilbert-m3, cstar or p1xp1.
    Fixtures {
        name: String,
        /// Window length of the Hilbert fixtures.
        #[arg(long, default_value_t = 3)]
        length: usize,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum Failure {
    /// A check ran and failed; the report has already been written.
    Check,
    Input(String),
}

impl From<FanError> for Failure {
    fn from(e: FanError) -> Self {
        Failure::Input(e.to_string())
    }
}

impl From<DeltaError> for Failure {
    fn from(e: DeltaError) -> Self {
        match e {
            DeltaError::Fan(e) => e.into(),
            other => Failure::Input(other.to_string()),
        }
    }
}

impl From<WeightError> for Failure {
    fn from(e: WeightError) -> Self {
        Failure::Input(e.to_string())
    }
}

/// Runs the command line `args` (program name first) and returns the exit
/// code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Check) => 1,
        Err(Failure::Input(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::CheckSnc { fan } => {
            let fs = read_fan(&fan)?;
            let report = check_snc_condition(&fs)?;
            let violations: Vec<SncViolationJson> = report
                .violations
                .iter()
                .map(|v| SncViolationJson {
                    cone: fs.cone_spec(&fs.cones()[v.cone]).rays.iter().map(|r| ints(r)).collect(),
                    rays: [ints(&fs.ray(v.rays.0).coords), ints(&fs.ray(v.rays.1).coords)],
                    class: v.class,
                })
                .collect();
            emit(out, None, &SncReportJson { ok: report.ok, violations })?;
            if report.ok {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Subdivide { fan, output, strategy } => {
            let fs = read_fan(&fan)?;
            let registry = strategies();
            let strat = registry.get(&strategy).map_err(|e| Failure::Input(e.to_string()))?;
            let result = strat.apply(&fs)?;
            emit(out, output.as_deref(), &FanSystemJson::from_fan(&result))
        }
        Command::Homology { fan, cusp, complex } => {
            let fs = read_fan(&fan)?;
            let dc = match quotient_delta_complex(&fs, &cusp) {
                Err(DeltaError::SncConditionViolated(n)) => {
                    let _ = writeln!(err, "SNC condition violated: {n} pair(s) of equivalent rays share a cone");
                    return Err(Failure::Check);
                }
                other => other?,
            };
            let report = homology_report(&dc)?;
            if complex {
                emit(out, None, &HomologyWithComplex { complex: &dc, report: &report })
            } else {
                emit(out, None, &report)
            }
        }
        Command::Spectral { strata, k } => {
            let sc = read_strata(&strata)?;
            let table = match weight_graded(&sc, k) {
                Err(e @ WeightError::NotAComplex { .. }) => {
                    let _ = writeln!(err, "{e}");
                    return Err(Failure::Check);
                }
                other => other?,
            };
            let warnings = roof_warnings(&table, sc.n());
            for w in &warnings {
                let _ = writeln!(err, "warning: {w}");
            }
            emit(out, None, &SpectralJson { n: sc.n(), table: &table, warnings: &warnings })
        }
        Command::FnFiltration { strata, fan, annotation } => {
            let sc = match (strata, fan, annotation) {
                (Some(path), None, None) => read_strata(&path)?,
                (None, Some(fan), Some(ann)) => {
                    let fs = read_fan(&fan)?;
                    let ann: FanAnnotation = read_json(&ann)?;
                    annotate_from_fans(&fs, &ann)?
                }
                _ => return Err(Failure::Input("give a strata file, or --fan together with --annotation".into())),
            };
            emit(out, None, &weight_filtration_on_fn_hn(&sc)?)
        }
        Command::Stairs { preset, k, format } => {
            let cd = parse_preset(&preset).map_err(|e| Failure::Input(e.to_string()))?;
            let region = admissible_region(&cd, k);
            if format == "json" {
                emit(out, None, &region)
            } else {
                let text = render_region(&region, &format).map_err(|e| Failure::Input(e.to_string()))?;
                write_text(out, None, &text)
            }
        }
        Command::Report { inventory, preset } => {
            let cd = parse_preset(&preset).map_err(|e| Failure::Input(e.to_string()))?;
            let inv: CuspInventory = read_json(&inventory)?;
            let report = corank_report(&cd, &inv).map_err(|e| Failure::Input(e.to_string()))?;
            emit(out, None, &report)?;
            if report.consistent() {
                Ok(())
            } else {
                Err(Failure::Check)
            }
        }
        Command::Fixtures { name, length, output } => match name.as_str() {
            "hilbert" => {
                emit(out, output.as_deref(), &FanSystemJson::from_fan(&hilbert_cusp_window(&hilbert_matrix(), length)))
            }
            "hilbert-m3" => emit(
                out,
                output.as_deref(),
                &FanSystemJson::from_fan(&hilbert_cusp_window_power(&hilbert_matrix(), length, 3)),
            ),
            "cstar" => emit(out, output.as_deref(), &StrataComplexJson::from_complex(&cstar_fixture())),
            "p1xp1" => emit(out, output.as_deref(), &StrataComplexJson::from_complex(&p1xp1_fixture())),
            other => {
                Err(Failure::Input(format!("unknown fixture `{other}` (available: hilbert, hilbert-m3, cstar, p1xp1)")))
            }
        },
    }
}

#[derive(Serialize)]
struct SncViolationJson {
    cone: Vec<Vec<crate::json::JsonInt>>,
    rays: [Vec<crate::json::JsonInt>; 2],
    class: usize,
}

#[derive(Serialize)]
struct SncReportJson {
    ok: bool,
    violations: Vec<SncViolationJson>,
}

#[derive(Serialize)]
struct HomologyWithComplex<'a> {
    complex: &'a DeltaComplex,
    #[serde(flatten)]
    report: &'a HomologyReport,
}

#[derive(Serialize)]
struct SpectralJson<'a> {
    n: usize,
    #[serde(flatten)]
    table: &'a MixedHSTable,
    warnings: &'a [String],
}

fn ints(v: &[num_bigint::BigInt]) -> Vec<crate::json::JsonInt> {
    crate::json::ints(v)
}

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_fan(path: &Path) -> Result<FanSystem, Failure> {
    Ok(read_json::<FanSystemJson>(path)?.into_fan()?)
}

fn read_strata(path: &Path) -> Result<StrataComplex, Failure> {
    Ok(read_json::<StrataComplexJson>(path)?.into_complex()?)
}

fn emit<T: Serialize>(out: &mut dyn Write, path: Option<&Path>, value: &T) -> Result<(), Failure> {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    write_text(out, path, &text)
}

fn write_text(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Input(e.to_string())),
    }
}

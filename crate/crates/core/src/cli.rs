//! The `lf-forge` command line: generate, verify, compare and export.
//!
//! Exit codes: 0 success, 1 a check failed (or a builder defect), 2 usage
//! error. All JSON output is deterministic unless `--stamp` is given.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::divides::{check_admissible, parse_divide_text, standard_divide, to_divide_text, Divide, DivideDoc};
use crate::equivalence::{compare, IsoCertificate};
use crate::fibration::{acampo_fiber, build, Construction, FibrationDoc, LefschetzFibration};
use crate::invariants::{certify, Certificate};
use crate::surface::{to_dot, RibbonGraphDoc};

pub const VERIFY_REPORT_SCHEMA: &str = "lf-forge/verify-report/v1";
pub const COMPARE_REPORT_SCHEMA: &str = "lf-forge/compare-report/v1";

/// Reserved for randomized extensions; the core is deterministic and never
/// reads it.
pub const SEED_ENV: &str = "LF_FORGE_SEED";

/// A single genus `N` or an inclusive range `A..B`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GenusSpec {
    pub start: u32,
    pub end: u32,
}

impl GenusSpec {
    pub fn values(self) -> Vec<u32> {
        (self.start..=self.end).collect()
    }

    pub fn is_single(self) -> bool {
        self.start == self.end
    }
}

impl FromStr for GenusSpec {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| {
            t.trim()
                .parse::<u32>()
                .map_err(|_| format!("genus must be a non-negative integer, got {t:?}"))
        };
        let spec = match s.split_once("..") {
            Some((a, b)) => GenusSpec {
                start: parse(a)?,
                end: parse(b)?,
            },
            None => {
                let g = parse(s)?;
                GenusSpec { start: g, end: g }
            }
        };
        if spec.start > spec.end {
            return Err(format!("empty genus range {s:?}"));
        }
        Ok(spec)
    }
}

impl fmt::Display for GenusSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_single() {
            write!(f, "{}", self.start)
        } else {
            write!(f, "{}..{}", self.start, self.end)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Builder {
    Johns,
    Ishikawa,
    Sphere,
}

impl From<Builder> for Construction {
    fn from(b: Builder) -> Self {
        match b {
            Builder::Johns => Construction::Johns,
            Builder::Ishikawa => Construction::Ishikawa,
            Builder::Sphere => Construction::Sphere,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Selector {
    Johns,
    Ishikawa,
    Sphere,
    Both,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum DivideFormat {
    Json,
    Dot,
    Text,
}

/// `construction:genus`, e.g. `johns:1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Target {
    pub construction: Builder,
    pub genus: u32,
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (c, g) = s
            .split_once(':')
            .ok_or_else(|| format!("expected construction:genus, got {s:?}"))?;
        let construction = Builder::from_str(c, true)?;
        let genus = g.parse().map_err(|_| format!("bad genus in {s:?}"))?;
        Ok(Target { construction, genus })
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "lf-forge",
    version,
    about = "Genus-one Lefschetz fibrations on disk cotangent bundles"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Output file (single result) or directory (one file per genus).
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Largest genus accepted in a range.
    #[arg(long, default_value_t = 32)]
    pub max_genus: u32,
    /// Add a generation timestamp to JSON output.
    #[arg(long)]
    pub stamp: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build fibrations and write them as JSON (or DOT).
    Generate {
        construction: Builder,
        #[arg(long)]
        genus: Option<GenusSpec>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[command(flatten)]
        common: Common,
    },
    /// Certify fibrations against their closed-form invariants.
    Verify {
        #[arg(long)]
        genus: Option<GenusSpec>,
        #[arg(long, value_enum, default_value_t = Selector::Both)]
        construction: Selector,
        /// Certify a fibration JSON file instead of building one.
        #[arg(long, conflicts_with_all = ["genus"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        common: Common,
    },
    /// Search for an isomorphism between the two constructions.
    Compare {
        #[arg(long)]
        genus: GenusSpec,
        /// Compare the Johns fibration against this one instead of the
        /// Ishikawa fibration of the same genus.
        #[arg(long)]
        against: Option<Target>,
        #[command(flatten)]
        common: Common,
    },
    /// Export a fiber or a divide.
    Export {
        #[command(subcommand)]
        what: Export,
    },
}

#[derive(Debug, Subcommand)]
pub enum Export {
    /// The fiber of a built fibration, or the A'Campo fiber of a divide file.
    Fiber {
        #[arg(long, value_enum, required_unless_present = "divide")]
        construction: Option<Builder>,
        #[arg(long, default_value_t = 0)]
        genus: u32,
        /// Plain-text or JSON divide file.
        #[arg(long, conflicts_with = "construction")]
        divide: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The standard divide of a genus, or a divide file re-encoded.
    Divide {
        #[arg(long, required_unless_present = "input")]
        genus: Option<u32>,
        #[arg(long, conflicts_with = "genus")]
        input: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = DivideFormat::Json)]
        format: DivideFormat,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure of a command, carrying its exit code.
#[derive(Debug)]
pub enum Exit {
    Check(String),
    Usage(String),
}

impl Exit {
    pub fn code(&self) -> i32 {
        match self {
            Exit::Check(_) => 1,
            Exit::Usage(_) => 2,
        }
    }
}

fn usage(msg: impl Into<String>) -> Exit {
    Exit::Usage(msg.into())
}

fn check(e: impl fmt::Display) -> Exit {
    Exit::Check(e.to_string())
}

fn bounded(spec: GenusSpec, max: u32) -> Result<Vec<u32>, Exit> {
    if spec.end > max {
        return Err(usage(format!("genus {} exceeds --max-genus {max}", spec.end)));
    }
    Ok(spec.values())
}

fn stamped(mut v: Value, stamp: bool) -> Value {
    if stamp {
        let secs = std::time::SystemTime::now()
            .duration_since(std::time::UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        if let Value::Object(m) = &mut v {
            m.insert("generated_at_unix".into(), json!(secs));
        }
    }
    v
}

fn to_json(v: &impl Serialize) -> Value {
    serde_json::to_value(v).expect("documents serialize")
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json");
    s.push('\n');
    s
}

fn write_text(path: &Path, text: &str) -> Result<(), Exit> {
    if let Some(dir) = path.parent().filter(|d| !d.as_os_str().is_empty()) {
        fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
    }
    fs::write(path, text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Print to stdout, or write to `out` (a file, or a directory when it
/// already is one or ends with a path separator).
fn emit(out: Option<&Path>, default_name: &str, text: &str) -> Result<(), Exit> {
    match out {
        None => {
            print!("{text}");
            Ok(())
        }
        Some(p) if p.is_dir() || p.to_string_lossy().ends_with(std::path::MAIN_SEPARATOR) => {
            write_text(&p.join(default_name), text)
        }
        Some(p) => write_text(p, text),
    }
}

fn read_input(path: &Path) -> Result<String, Exit> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_divide(path: &Path) -> Result<Divide, Exit> {
    let src = read_input(path)?;
    if src.trim_start().starts_with('{') {
        let doc: DivideDoc = serde_json::from_str(&src).map_err(|e| usage(format!("{}: {e}", path.display())))?;
        doc.to_divide().map_err(|e| usage(e.to_string()))
    } else {
        parse_divide_text(&src).map_err(|e| usage(e.to_string()))
    }
}

fn build_all(construction: Builder, genera: &[u32]) -> Result<Vec<LefschetzFibration>, Exit> {
    genera
        .par_iter()
        .map(|&g| build(construction.into(), g).map_err(check))
        .collect()
}

fn render(lf: &LefschetzFibration, format: Format, stamp: bool) -> String {
    match format {
        Format::Json => pretty(&stamped(to_json(&lf.to_doc()), stamp)),
        Format::Dot => {
            let title = format!(
                "{} genus {}",
                lf.construction(),
                lf.genus().map_or("-".into(), |g| g.to_string())
            );
            to_dot(lf.fiber(), lf.cycles(), &title)
        }
    }
}

fn cmd_generate(construction: Builder, genus: Option<GenusSpec>, format: Format, common: &Common) -> Result<(), Exit> {
    let spec = match (construction, genus) {
        (Builder::Sphere, None) => GenusSpec { start: 0, end: 0 },
        (Builder::Sphere, Some(s)) if s != (GenusSpec { start: 0, end: 0 }) => {
            return Err(usage("the sphere fibration only exists for genus 0"))
        }
        (_, Some(s)) => s,
        (_, None) => return Err(usage("--genus is required")),
    };
    let genera = bounded(spec, common.max_genus)?;
    let fibrations = build_all(construction, &genera)?;
    let ext = match format {
        Format::Json => "json",
        Format::Dot => "dot",
    };
    let name = |lf: &LefschetzFibration| format!("{}-g{}.{ext}", lf.construction(), lf.genus().unwrap_or(0));
    if fibrations.len() == 1 {
        let lf = &fibrations[0];
        return emit(common.out.as_deref(), &name(lf), &render(lf, format, common.stamp));
    }
    match &common.out {
        Some(dir) => {
            fs::create_dir_all(dir).map_err(|e| usage(format!("{}: {e}", dir.display())))?;
            for lf in &fibrations {
                write_text(&dir.join(name(lf)), &render(lf, format, common.stamp))?;
            }
            Ok(())
        }
        None => match format {
            Format::Json => {
                let docs: Vec<FibrationDoc> = fibrations.iter().map(|lf| lf.to_doc()).collect();
                print!("{}", pretty(&to_json(&docs)));
                Ok(())
            }
            Format::Dot => {
                fibrations.iter().for_each(|lf| print!("{}", render(lf, format, false)));
                Ok(())
            }
        },
    }
}

#[derive(Serialize)]
struct VerifyReport {
    schema: &'static str,
    all_pass: bool,
    certificates: Vec<Certificate>,
}

#[derive(Serialize)]
struct CompareReport {
    schema: &'static str,
    all_found: bool,
    results: Vec<IsoCertificate>,
}

fn cmd_verify(genus: Option<GenusSpec>, selector: Selector, input: Option<&Path>, common: &Common) -> Result<(), Exit> {
    let fibrations: Vec<LefschetzFibration> = match input {
        Some(path) => {
            let doc: FibrationDoc =
                serde_json::from_str(&read_input(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))?;
            vec![LefschetzFibration::from_doc(&doc).map_err(check)?]
        }
        None => {
            let builders: &[Builder] = match selector {
                Selector::Johns => &[Builder::Johns],
                Selector::Ishikawa => &[Builder::Ishikawa],
                Selector::Sphere => &[Builder::Sphere],
                Selector::Both => &[Builder::Johns, Builder::Ishikawa],
            };
            let spec = match (selector, genus) {
                (Selector::Sphere, None) => GenusSpec { start: 0, end: 0 },
                (_, Some(s)) => s,
                (_, None) => return Err(usage("--genus is required")),
            };
            if selector == Selector::Sphere && spec.end > 0 {
                return Err(usage("the sphere fibration only exists for genus 0"));
            }
            let genera = bounded(spec, common.max_genus)?;
            let mut all = Vec::new();
            for &b in builders {
                all.extend(build_all(b, &genera)?);
            }
            all
        }
    };
    let certificates: Vec<Certificate> = fibrations
        .par_iter()
        .map(|lf| certify(lf).map_err(check))
        .collect::<Result<_, _>>()?;
    let report = VerifyReport {
        schema: VERIFY_REPORT_SCHEMA,
        all_pass: certificates.iter().all(Certificate::all_pass),
        certificates,
    };
    emit(
        common.out.as_deref(),
        "verify.json",
        &pretty(&stamped(to_json(&report), common.stamp)),
    )?;
    if report.all_pass {
        return Ok(());
    }
    let failed: Vec<String> = report
        .certificates
        .iter()
        .flat_map(|c| {
            c.failures().into_iter().map(move |f| {
                format!(
                    "{} g={}: {}",
                    c.construction,
                    c.genus.map_or("-".into(), |g| g.to_string()),
                    f.name
                )
            })
        })
        .collect();
    Err(Exit::Check(format!("failed checks: {}", failed.join(", "))))
}

fn cmd_compare(genus: GenusSpec, against: Option<Target>, common: &Common) -> Result<(), Exit> {
    let genera = bounded(genus, common.max_genus)?;
    let results: Vec<IsoCertificate> = genera
        .par_iter()
        .map(|&g| {
            let left = build(Construction::Johns, g).map_err(check)?;
            let right = match against {
                Some(t) => build(t.construction.into(), t.genus).map_err(|e| usage(e.to_string()))?,
                None => build(Construction::Ishikawa, g).map_err(check)?,
            };
            Ok(compare(&left, &right).1)
        })
        .collect::<Result<_, Exit>>()?;
    let report = CompareReport {
        schema: COMPARE_REPORT_SCHEMA,
        all_found: results.iter().all(|r| r.found),
        results,
    };
    emit(
        common.out.as_deref(),
        "compare.json",
        &pretty(&stamped(to_json(&report), common.stamp)),
    )?;
    if report.all_found {
        Ok(())
    } else {
        let missing: Vec<String> = report
            .results
            .iter()
            .filter(|r| !r.found)
            .map(|r| r.reason.clone().unwrap_or_default())
            .collect();
        Err(Exit::Check(format!("no isomorphism: {}", missing.join("; "))))
    }
}

fn cmd_export(what: &Export) -> Result<(), Exit> {
    match what {
        Export::Fiber {
            construction,
            genus,
            divide,
            format,
            out,
        } => {
            let (graph, curves, title) = match (construction, divide) {
                (_, Some(path)) => {
                    let d = load_divide(path)?;
                    let fiber = acampo_fiber(&d).map_err(check)?;
                    (fiber.graph, fiber.beta, format!("A'Campo fiber of {}", path.display()))
                }
                (Some(b), None) => {
                    let lf = build((*b).into(), *genus).map_err(|e| usage(e.to_string()))?;
                    let title = format!("{} genus {genus}", lf.construction());
                    (lf.fiber().clone(), lf.cycles().to_vec(), title)
                }
                (None, None) => return Err(usage("give --construction or --divide")),
            };
            let text = match format {
                Format::Json => pretty(&to_json(&RibbonGraphDoc::from_graph(&graph, &curves))),
                Format::Dot => to_dot(&graph, &curves, &title),
            };
            emit(out.as_deref(), "fiber", &text)
        }
        Export::Divide {
            genus,
            input,
            format,
            out,
        } => {
            let d = match (genus, input) {
                (_, Some(path)) => load_divide(path)?,
                (Some(g), None) => standard_divide(*g),
                (None, None) => return Err(usage("give --genus or --input")),
            };
            let text = match format {
                DivideFormat::Json => pretty(&json!({
                    "divide": to_json(&DivideDoc::from_divide(&d)),
                    "admissibility": to_json(&check_admissible(&d)),
                })),
                DivideFormat::Dot => to_dot(d.graph(), &[], &format!("divide on genus {}", d.ambient_genus())),
                DivideFormat::Text => to_divide_text(&d).map_err(check)?,
            };
            emit(out.as_deref(), "divide", &text)
        }
    }
}

/// Run a parsed command line.
pub fn run(cli: &Cli) -> Result<(), Exit> {
    match &cli.command {
        Command::Generate {
            construction,
            genus,
            format,
            common,
        } => cmd_generate(*construction, *genus, *format, common),
        Command::Verify {
            genus,
            construction,
            input,
            common,
        } => cmd_verify(*genus, *construction, input.as_deref(), common),
        Command::Compare { genus, against, common } => cmd_compare(*genus, *against, common),
        Command::Export { what } => cmd_export(what),
    }
}

/// Entry point for the binary; returns the process exit code.
pub fn main() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match run(&cli) {
        Ok(()) => 0,
        Err(e) => {
            match &e {
                Exit::Check(m) => eprintln!("lf-forge: check failed: {m}"),
                Exit::Usage(m) => eprintln!("lf-forge: {m}"),
            }
            e.code()
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn genus_specs() {
        assert_eq!("3".parse::<GenusSpec>().unwrap(), GenusSpec { start: 3, end: 3 });
        assert_eq!("0..8".parse::<GenusSpec>().unwrap().values().len(), 9);
        assert!("-1".parse::<GenusSpec>().is_err());
        assert!("4..2".parse::<GenusSpec>().is_err());
        assert_eq!("2..5".parse::<GenusSpec>().unwrap().to_string(), "2..5");
    }

    #[test]
    fn targets() {
        let t: Target = "johns:1".parse().unwrap();
        assert_eq!((t.construction, t.genus), (Builder::Johns, 1));
        assert!("johns".parse::<Target>().is_err());
    }

    #[test]
    fn cap_is_a_usage_error() {
        let e = bounded(GenusSpec { start: 0, end: 40 }, 32).unwrap_err();
        assert_eq!(e.code(), 2);
    }

    #[test]
    fn verify_flags_parse() {
        Cli::try_parse_from(["lf-forge", "verify", "--genus", "0..2", "--construction", "both"]).unwrap();
        assert!(Cli::try_parse_from(["lf-forge", "verify", "--genus", "-1"]).is_err());
    }
}

//! Command-line front end: read polytope or point-configuration files, run
//! the secant analyses, and emit exact JSON or aligned-table reports.
//!
//! Exit codes: 0 success, 2 malformed input, 3 polytope not smooth (the
//! message names the failing vertex), 4 theorem hypothesis violated, 5
//! internal consistency failure (a cross-check mismatch signals a bug).

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{Map, Value};

use toric_secant::classify::{classify, classify_all_vertices, FamilyLabel};
use toric_secant::polytope::LatticePolytope;
use toric_secant::secant::{analyze, analyze_points, SecantReport, SubsetReport};
use toric_secant::zlinalg::IntVec;
use toric_secant::{chow, families, json, selftest, Error};

/// Prints one line to stdout; when the reader has gone away (output piped
/// into `head`, say), exits quietly instead of panicking on the broken pipe.
fn out(line: std::fmt::Arguments<'_>) {
    use std::io::Write;
    let mut stdout = std::io::stdout().lock();
    if writeln!(stdout, "{line}").is_err() {
        std::process::exit(0);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { out(format_args!($($arg)*)) };
}

#[derive(Parser)]
#[command(
    name = "toric-secant",
    version,
    about = "Dimension and degree of secant varieties of smooth toric embeddings",
    long_about = "Exact analysis of the secant variety of the projective toric variety \
                  defined by a smooth lattice polytope: classification among the \
                  subpolytopes of twice a simplex, closed-form and intersection-theoretic \
                  degrees, and the divisibility constraints for subconfigurations."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format (JSON has sorted keys; tables print exact integers)
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Command {
    /// Full secant report for a polytope file
    Analyze {
        /// Polytope file {"schema":1,"vertices":[[…],…]}
        #[arg(required_unless_present = "batch")]
        input: Option<PathBuf>,
        /// Analyze every .json file in a directory, writing one
        /// .report.json per input and a deterministic summary to stdout
        #[arg(long, value_name = "DIR", conflicts_with = "input")]
        batch: Option<PathBuf>,
    },
    /// Family of the polytope among the subpolytopes of a doubled simplex
    Classify {
        input: PathBuf,
        /// Re-run the classification from every admissible starting vertex
        /// and check that all runs agree
        #[arg(long)]
        debug_all_vertices: bool,
    },
    /// Lattice points of a polytope, as a reusable points file
    Points { input: PathBuf },
    /// Normalized volume (the degree of the embedding)
    Volume { input: PathBuf },
    /// Intersection numbers: c1^n, double-point value, point count, Euler number
    Chow {
        input: PathBuf,
        /// Include every integrated divisor monomial
        #[arg(long)]
        monomials: bool,
    },
    /// Divisibility report for a point configuration {"schema":1,"points":[[…],…]}
    Subset { input: PathBuf },
    /// Write a named example polytope (or point configuration) as JSON
    Catalog {
        /// simplex | truncated | product | scroll | hexagon | cube
        family: String,
        /// Dimension (simplex, truncated, cube)
        #[arg(long)]
        n: Option<usize>,
        /// Truncation parameter, −1 ≤ k ≤ n−1 (truncated)
        #[arg(long, allow_negative_numbers = true)]
        k: Option<i64>,
        /// Dilation factor (simplex)
        #[arg(long, default_value_t = 1)]
        r: u64,
        /// Scroll degrees d1,d2,… (scroll)
        #[arg(long, value_delimiter = ',')]
        d: Vec<u64>,
        /// Product factors as DILATIONxDIM pairs, e.g. 1x2,3x1 (product)
        #[arg(long, value_delimiter = ',')]
        factors: Vec<String>,
        /// Emit the scroll's defining point configuration instead of its hull
        #[arg(long)]
        points: bool,
        /// Write to a file instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the built-in worked-example suite
    Selftest,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    if let Some(batch) = err.downcast_ref::<BatchFailed>() {
        return batch.code;
    }
    match err.downcast_ref::<Error>() {
        Some(Error::Input(_)) => 2,
        Some(Error::NotSmooth { .. }) => 3,
        Some(Error::Hypothesis(_)) => 4,
        Some(Error::Internal(_)) => 5,
        // I/O failures and unreadable files are input problems.
        None => 2,
    }
}

/// Batch summary error: carries the most severe per-file failure class.
#[derive(Debug)]
struct BatchFailed {
    code: u8,
    failed: usize,
    total: usize,
}

impl std::fmt::Display for BatchFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} of {} inputs failed", self.failed, self.total)
    }
}

impl std::error::Error for BatchFailed {}

fn run(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Analyze { input, batch } => match (input, batch) {
            (Some(path), None) => {
                let rep = analyze(&read_polytope(&path)?)?;
                emit(cli.format, &json::secant_report_to_value(&rep), || {
                    render_report(&rep)
                });
                require_checks_pass(&rep)
            }
            (None, Some(dir)) => run_batch(&dir),
            _ => unreachable!("clap enforces exactly one of input/--batch"),
        },
        Command::Classify {
            input,
            debug_all_vertices,
        } => {
            let p = read_polytope(&input)?;
            let label = classify(&p)?;
            if debug_all_vertices {
                let runs = classify_all_vertices(&p)?;
                let mut map = Map::new();
                map.insert("family".into(), json::family_to_value(&label));
                let entries: Vec<Value> = runs
                    .iter()
                    .map(|(v, l)| {
                        let mut m = Map::new();
                        m.insert(
                            "vertex".into(),
                            Value::Array(v.iter().map(json::int_to_value).collect()),
                        );
                        m.insert("family".into(), json::family_to_value(l));
                        Value::Object(m)
                    })
                    .collect();
                map.insert("all_vertices".into(), Value::Array(entries));
                emit(cli.format, &Value::Object(map), || {
                    let mut lines = vec![format!("family  {}", label.family)];
                    for (v, l) in &runs {
                        lines.push(format!("  from {}:  {}", point_str(v), l.family));
                    }
                    lines.join("\n")
                });
            } else {
                emit(cli.format, &json::family_to_value(&label), || {
                    render_label(&label)
                });
            }
            Ok(())
        }
        Command::Points { input } => {
            let p = read_polytope(&input)?;
            let pts = p.lattice_points()?;
            emit(cli.format, &json::points_to_value(&pts), || {
                pts.iter().map(point_str).collect::<Vec<_>>().join("\n")
            });
            Ok(())
        }
        Command::Volume { input } => {
            let vol = read_polytope(&input)?.normalized_volume()?;
            let mut map = Map::new();
            map.insert("normalized_volume".into(), json::int_to_value(&vol));
            emit(cli.format, &Value::Object(map), || vol.to_string());
            Ok(())
        }
        Command::Chow { input, monomials } => {
            let p = read_polytope(&input)?;
            let rows = vec![
                ("c1_pow_n", chow::c1_top_power(&p)?),
                ("euler_characteristic", chow::euler_characteristic(&p)?),
                ("secant_rhs", chow::secant_rhs(&p)?),
                ("todd_point_count", chow::riemann_roch_count(&p)?),
            ];
            let mut map = Map::new();
            for (k, v) in &rows {
                map.insert((*k).into(), json::int_to_value(v));
            }
            let dump = if monomials {
                Some(chow::monomial_dump(&p)?)
            } else {
                None
            };
            if let Some(d) = &dump {
                let mut m = Map::new();
                for (mono, v) in d {
                    m.insert(mono.clone(), json::int_to_value(v));
                }
                map.insert("monomials".into(), Value::Object(m));
            }
            emit(cli.format, &Value::Object(map), || {
                let mut lines: Vec<(String, String)> = rows
                    .iter()
                    .map(|(k, v)| (k.to_string(), v.to_string()))
                    .collect();
                if let Some(d) = &dump {
                    for (mono, v) in d {
                        lines.push((mono.clone(), v.to_string()));
                    }
                }
                kv_table(&lines)
            });
            Ok(())
        }
        Command::Subset { input } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let a = json::points_from_json(&text)?;
            let rep = analyze_points(&a)?;
            emit(cli.format, &json::subset_report_to_value(&rep), || {
                render_subset(&rep)
            });
            if !rep.hypothesis_ok {
                return Err(Error::Hypothesis(format!(
                    "configuration is missing {} required point(s) (hull vertices or their \
                     nearest edge neighbors); dimension and degree claims withheld",
                    rep.missing.len()
                ))
                .into());
            }
            Ok(())
        }
        Command::Catalog {
            family,
            n,
            k,
            r,
            d,
            factors,
            points,
            out,
        } => {
            let value = catalog_value(&family, n, k, r, &d, &factors, points)?;
            let text = to_pretty(&value);
            match out {
                Some(path) => {
                    write_atomic(&path, &text)?;
                    out!("wrote {}", path.display());
                }
                None => {
                    if cli.format == Format::Table {
                        out!("{}", catalog_table(&value));
                    } else {
                        out!("{text}");
                    }
                }
            }
            Ok(())
        }
        Command::Selftest => {
            let cases = selftest::run();
            let failed = cases.iter().filter(|c| !c.pass).count();
            if cli.format == Format::Json {
                let entries: Vec<Value> = cases
                    .iter()
                    .map(|c| {
                        let mut m = Map::new();
                        m.insert("name".into(), Value::from(c.name));
                        m.insert("pass".into(), Value::Bool(c.pass));
                        m.insert("detail".into(), Value::from(c.detail.clone()));
                        Value::Object(m)
                    })
                    .collect();
                out!("{}", to_pretty(&Value::Array(entries)));
            } else {
                for c in &cases {
                    let tag = if c.pass { "  ok" } else { "FAIL" };
                    out!("{tag}  {}  —  {}", c.name, c.detail);
                }
                out!("\n{} cases, {} failed", cases.len(), failed);
            }
            if failed > 0 {
                return Err(Error::internal(format!("{failed} self-test case(s) failed")).into());
            }
            Ok(())
        }
    }
}

// ---------------------------------------------------------------------------
// Input / output helpers
// ---------------------------------------------------------------------------

fn read_polytope(path: &Path) -> Result<LatticePolytope> {
    let text =
        fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(json::polytope_from_json(&text)?)
}

fn emit(format: Format, value: &Value, table: impl FnOnce() -> String) {
    match format {
        Format::Json => out!("{}", to_pretty(value)),
        Format::Table => out!("{}", table()),
    }
}

fn to_pretty(value: &Value) -> String {
    serde_json::to_string_pretty(value).expect("JSON values always serialize")
}

/// Write via a temporary file and rename, so readers never see a partial file.
fn write_atomic(path: &Path, text: &str) -> Result<()> {
    let tmp = path.with_extension("tmp");
    fs::write(&tmp, text.as_bytes()).with_context(|| format!("writing {}", tmp.display()))?;
    fs::rename(&tmp, path).with_context(|| format!("renaming to {}", path.display()))?;
    Ok(())
}

fn require_checks_pass(rep: &SecantReport) -> Result<()> {
    let failed: Vec<&str> = rep
        .cross_checks
        .iter()
        .filter(|c| !c.pass)
        .map(|c| c.name.as_str())
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Error::internal(format!("cross-check failed: {}", failed.join(", "))).into())
    }
}

fn point_str(v: &IntVec) -> String {
    v.iter()
        .map(|c| c.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn kv_table(rows: &[(String, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    rows.iter()
        .map(|(k, v)| format!("{k:<width$}  {v}"))
        .collect::<Vec<_>>()
        .join("\n")
}

fn render_label(label: &FamilyLabel) -> String {
    let mut rows = vec![("family".to_string(), label.family.to_string())];
    if let Some(w) = &label.witness {
        let linear: Vec<String> = (0..w.linear().nrows())
            .map(|i| format!("[{}]", point_str(&w.linear().row(i)).replace(' ', ", ")))
            .collect();
        rows.push(("witness linear".to_string(), format!("[{}]", linear.join(", "))));
        rows.push((
            "witness translation".to_string(),
            format!("[{}]", point_str(w.translation()).replace(' ', ", ")),
        ));
    }
    kv_table(&rows)
}

fn render_report(rep: &SecantReport) -> String {
    let rows = vec![
        ("family".to_string(), rep.family.family.to_string()),
        ("n".to_string(), rep.n.to_string()),
        ("r".to_string(), rep.r.to_string()),
        ("dim_sec".to_string(), rep.dim_sec.to_string()),
        ("expected_dim".to_string(), rep.expected_dim.to_string()),
        (
            "has_expected_dim".to_string(),
            rep.has_expected_dim.to_string(),
        ),
        ("deg_sec".to_string(), rep.deg_sec.to_string()),
        ("deg_phi".to_string(), rep.deg_phi.to_string()),
        ("secant_lines".to_string(), rep.secant_lines.to_string()),
    ];
    let table = kv_table(&rows);
    let mut lines = vec![table, String::new(), "cross-checks".to_string()];
    for c in &rep.cross_checks {
        let tag = if c.pass { "  ok" } else { "FAIL" };
        lines.push(format!("{tag}  {}  —  {}", c.name, c.values));
    }
    lines.join("\n")
}

fn render_subset(rep: &SubsetReport) -> String {
    let mut rows = vec![
        ("s".to_string(), rep.s.to_string()),
        ("hypothesis_ok".to_string(), rep.hypothesis_ok.to_string()),
    ];
    if !rep.hypothesis_ok {
        let pts: Vec<String> = rep.missing.iter().map(|v| point_str(v)).collect();
        rows.push(("missing".to_string(), pts.join("; ")));
        return kv_table(&rows);
    }
    if let Some(f) = &rep.family {
        rows.push(("family".to_string(), f.family.to_string()));
    }
    if let Some(d) = rep.dim_sec {
        rows.push(("dim_sec".to_string(), d.to_string()));
    }
    if let Some(d) = &rep.deg_divides {
        rows.push(("deg_constraint".to_string(), format!("divides {d}")));
    }
    if let Some(d) = &rep.deg_sec {
        rows.push(("deg_sec".to_string(), d.to_string()));
    }
    if let Some(b) = rep.expected_dim_ok {
        rows.push(("expected_dim_ok".to_string(), b.to_string()));
    }
    if let Some(b) = rep.exceptional {
        rows.push(("exceptional".to_string(), b.to_string()));
    }
    kv_table(&rows)
}

// ---------------------------------------------------------------------------
// Batch mode
// ---------------------------------------------------------------------------

fn run_batch(dir: &Path) -> Result<()> {
    let mut inputs: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| {
            p.extension().is_some_and(|e| e == "json")
                && !p.to_string_lossy().ends_with(".report.json")
        })
        .collect();
    inputs.sort();
    if inputs.is_empty() {
        return Err(Error::input(format!("no .json inputs in {}", dir.display())).into());
    }

    let mut worst: u8 = 0;
    let mut failed = 0usize;
    for path in &inputs {
        let name = path
            .file_name()
            .map(|n| n.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        match analyze_one(path) {
            Ok(rep) => {
                let out = path.with_extension("report.json");
                write_atomic(&out, &to_pretty(&json::secant_report_to_value(&rep)))?;
                let checks_ok = rep.cross_checks.iter().all(|c| c.pass);
                out!(
                    "{name}: family={} dim_sec={} deg_sec={}{}",
                    rep.family.family,
                    rep.dim_sec,
                    rep.deg_sec,
                    if checks_ok { "" } else { " CROSS-CHECK FAILED" }
                );
                if !checks_ok {
                    worst = worst.max(5);
                    failed += 1;
                }
            }
            Err(err) => {
                out!("{name}: error: {err:#}");
                worst = worst.max(exit_code_for(&err));
                failed += 1;
            }
        }
    }
    if worst == 0 {
        Ok(())
    } else {
        Err(BatchFailed {
            code: worst,
            failed,
            total: inputs.len(),
        }
        .into())
    }
}

fn analyze_one(path: &Path) -> Result<SecantReport> {
    let rep = analyze(&read_polytope(path)?)?;
    Ok(rep)
}

// ---------------------------------------------------------------------------
// Catalog
// ---------------------------------------------------------------------------

fn catalog_value(
    family: &str,
    n: Option<usize>,
    k: Option<i64>,
    r: u64,
    d: &[u64],
    factors: &[String],
    points: bool,
) -> Result<Value> {
    let need_n = || n.ok_or_else(|| Error::input(format!("{family} requires --n")));
    let polytope = match family {
        "simplex" => families::simplex(need_n()?, r)?,
        "truncated" => {
            let k = k.ok_or_else(|| Error::input("truncated requires --k"))?;
            families::truncated(need_n()?, k)?
        }
        "product" => {
            if factors.is_empty() {
                return Err(Error::input(
                    "product requires --factors, e.g. --factors 1x2,3x1",
                )
                .into());
            }
            let parsed = factors
                .iter()
                .map(|f| parse_factor(f))
                .collect::<Result<Vec<(u64, usize)>>>()?;
            families::product_of_dilated_simplices(&parsed)?
        }
        "scroll" => {
            if d.is_empty() {
                return Err(Error::input("scroll requires --d, e.g. --d 1,2,2").into());
            }
            if points {
                let a = families::scroll_points(d)?;
                return Ok(json::points_to_value(a.points()));
            }
            families::scroll_polytope(d)?
        }
        "hexagon" => families::hexagon(),
        "cube" => families::cube(need_n()?)?,
        other => {
            return Err(Error::input(format!(
                "unknown family {other:?} (expected simplex, truncated, product, scroll, \
                 hexagon, or cube)"
            ))
            .into())
        }
    };
    if points && family != "scroll" {
        return Err(Error::input("--points only applies to scroll").into());
    }
    Ok(json::polytope_to_value(&polytope))
}

fn parse_factor(text: &str) -> Result<(u64, usize)> {
    let (d, n) = text
        .split_once('x')
        .ok_or_else(|| Error::input(format!("factor {text:?} is not DILATIONxDIM")))?;
    let d = d
        .parse::<u64>()
        .map_err(|_| Error::input(format!("bad dilation in factor {text:?}")))?;
    let n = n
        .parse::<usize>()
        .map_err(|_| Error::input(format!("bad dimension in factor {text:?}")))?;
    Ok((d, n))
}

fn catalog_table(value: &Value) -> String {
    let rows = value
        .get("vertices")
        .or_else(|| value.get("points"))
        .and_then(Value::as_array)
        .cloned()
        .unwrap_or_default();
    rows.iter()
        .map(|row| {
            row.as_array()
                .map(|cs| {
                    cs.iter()
                        .map(|c| match c {
                            Value::String(s) => s.clone(),
                            other => other.to_string(),
                        })
                        .collect::<Vec<_>>()
                        .join(" ")
                })
                .unwrap_or_default()
        })
        .collect::<Vec<_>>()
        .join("\n")
}

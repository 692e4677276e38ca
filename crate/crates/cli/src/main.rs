//! `foliate`: command-line front end for the foliation library.
//!
//! Inputs are JSON files (or stdin when the path is omitted or `-`):
//! a foliation is `{"P": .., "Q": ..}` with each component either
//! polynomial JSON or text in `x`, `y`; a curve is polynomial JSON or
//! `{"f": "<text>"}`, optionally with `genus` or `delta`; an oracle is
//! `{"P": [..]}` and/or `{"height": h}`.
//!
//! Exit codes: 0 on success, 2 for input errors, 3 when the computation
//! declined to answer (undetermined, oracle exhausted, caps and budgets).

use std::fmt;
use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::mpsc;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde_json::{json, Value};

use foliate::blowup::strict::curve_z;
use foliate::blowup::{safe_resolution, seidenberg_reduce_capped, total_z, DEFAULT_CAP};
use foliate::bounds::{
    first_integral_bound_from_height, first_integral_degree_bound, invariant_curve_degree_bound,
    z_bound_quasi_reduced, PlurigeneraOracle,
};
use foliate::curves::{
    curve_singularities, extactic, extactic_decision, first_integral_degree, genus, is_invariant,
    PlaneCurve,
};
use foliate::exactmath::Rational;
use foliate::families::{Family, FamilyDescriptor};
use foliate::foliation::singular::rational_point;
use foliate::foliation::singular::total_milnor;
use foliate::foliation::{classify_linear_part, singular_points, Chart, Foliation, LocalField};
use foliate::Error;

#[derive(Parser)]
#[command(
    name = "foliate",
    version,
    about = "Exact computations for plane foliations"
)]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Worker threads for the parallel sections.
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Give up (exit 3) after this many seconds.
    #[arg(long, global = true)]
    budget_seconds: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Args, Clone)]
struct FoliationArg {
    /// Foliation JSON file; stdin when omitted.
    #[arg(long)]
    foliation: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct CurveArgs {
    #[command(flatten)]
    fol: FoliationArg,
    /// Curve JSON file.
    #[arg(long)]
    curve: PathBuf,
}

#[derive(Subcommand, Clone)]
enum Command {
    /// Degree of the foliation.
    Degree(FoliationArg),
    /// Singular points with Milnor numbers and classifications.
    Singularities {
        #[command(flatten)]
        fol: FoliationArg,
        /// Width of the isolating boxes printed for algebraic points.
        #[arg(long, env = "FOLIATE_WIDTH", default_value = "1/1000")]
        width: Rational,
    },
    /// Classification of every singular point, or of one given point.
    Classify {
        #[command(flatten)]
        fol: FoliationArg,
        /// Rational point `x,y` in the chart.
        #[arg(long)]
        point: Option<String>,
        #[arg(long, value_enum, default_value_t = ChartArg::Affine)]
        chart: ChartArg,
    },
    /// Seidenberg reduction tree.
    Reduce {
        #[command(flatten)]
        fol: FoliationArg,
        /// Maximal number of blow-ups below one singular point.
        #[arg(long, default_value_t = DEFAULT_CAP)]
        cap: usize,
    },
    /// Reduction followed by one extra blow-up at each remaining singularity.
    SafeResolve(FoliationArg),
    /// Total index `Z` of an invariant curve.
    Index(CurveArgs),
    /// Invariance certificate `X(f) = K f`.
    InvariantCheck(CurveArgs),
    /// Whether the extactic polynomial `E_m` vanishes.
    Extactic {
        #[command(flatten)]
        fol: FoliationArg,
        #[arg(long)]
        m: u32,
        /// Also print `E_m` itself.
        #[arg(long)]
        polynomial: bool,
    },
    /// Smallest degree of a rational first integral up to `--max-m`.
    FirstIntegral {
        #[command(flatten)]
        fol: FoliationArg,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
    },
    /// Geometric genus of a plane curve.
    Genus {
        #[arg(long)]
        curve: PathBuf,
    },
    /// Degree bounds from plurigenera.
    #[command(subcommand)]
    Bound(BoundCommand),
    /// Example families.
    #[command(subcommand)]
    Examples(ExamplesCommand),
}

#[derive(Clone, Copy, ValueEnum)]
enum ChartArg {
    Affine,
    InfinityX,
    InfinityY,
}

impl From<ChartArg> for Chart {
    fn from(c: ChartArg) -> Chart {
        match c {
            ChartArg::Affine => Chart::Affine,
            ChartArg::InfinityX => Chart::InfinityX,
            ChartArg::InfinityY => Chart::InfinityY,
        }
    }
}

#[derive(Args, Clone)]
struct BoundArgs {
    #[arg(long)]
    d: u64,
    #[arg(long)]
    g: i64,
    /// Plurigenera oracle JSON file.
    #[arg(long)]
    oracle: Option<PathBuf>,
    /// Use only the height lower bound `P_(h n) >= binom(n+2, 2)`.
    #[arg(long, conflicts_with = "oracle")]
    height: Option<u64>,
}

#[derive(Subcommand, Clone)]
enum BoundCommand {
    /// Degree of a rational first integral with generic fibre of genus `g`.
    FirstIntegral(BoundArgs),
    /// Degree of an invariant curve of geometric genus `g`.
    InvariantCurve {
        #[command(flatten)]
        args: BoundArgs,
        /// `Z(F, C)`; the quasi-reduced worst case when omitted.
        #[arg(long)]
        z: Option<i64>,
    },
}

#[derive(Subcommand, Clone)]
enum ExamplesCommand {
    /// Prints a family member as foliation JSON with its descriptor.
    Gen {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value = "{}")]
        params: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
#[value(rename_all = "snake_case")]
enum FamilyArg {
    Linear,
    LinsNeto,
    RiccatiHypergeometric,
    PowerPullback,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Linear => Family::Linear,
            FamilyArg::LinsNeto => Family::LinsNeto,
            FamilyArg::RiccatiHypergeometric => Family::RiccatiHypergeometric,
            FamilyArg::PowerPullback => Family::PowerPullback,
        }
    }
}

#[derive(Debug)]
enum CliError {
    Input {
        source: String,
        offset: usize,
        message: String,
    },
    Lib(Error),
    Budget(u64),
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        CliError::Lib(e)
    }
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input { .. } => 2,
            CliError::Budget(_) => 3,
            CliError::Lib(e) => match e {
                Error::Undetermined(_)
                | Error::OracleExhausted { .. }
                | Error::CapExceeded { .. }
                | Error::TruncationExhausted(_) => 3,
                _ => 2,
            },
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Input {
                source,
                offset,
                message,
            } => write!(f, "{source}: byte {offset}: {message}"),
            CliError::Lib(e) => write!(f, "{e}"),
            CliError::Budget(s) => write!(f, "budget of {s} s exhausted"),
        }
    }
}

type CliResult<T> = Result<T, CliError>;

fn read_source(path: Option<&PathBuf>) -> CliResult<(String, String)> {
    let (name, res) = match path {
        Some(p) if p.as_os_str() != "-" => (p.display().to_string(), std::fs::read_to_string(p)),
        _ => {
            let mut s = String::new();
            (
                "<stdin>".to_string(),
                std::io::stdin().read_to_string(&mut s).map(|_| s),
            )
        }
    };
    match res {
        Ok(text) => Ok((name, text)),
        Err(e) => Err(CliError::Input {
            source: name,
            offset: 0,
            message: e.to_string(),
        }),
    }
}

/// Byte offset of a 1-based line and column.
fn byte_offset(text: &str, line: usize, column: usize) -> usize {
    if line == 0 {
        return 0;
    }
    let start: usize = text
        .split_inclusive('\n')
        .take(line - 1)
        .map(str::len)
        .sum();
    (start + column.saturating_sub(1)).min(text.len())
}

/// Errors raised inside untagged enums carry no position; polynomial parse
/// errors name the offending string and a byte within it, which is located
/// in the file instead.
fn embedded_offset(text: &str, message: &str) -> Option<usize> {
    let rest = &message[message.find("at byte ")? + 8..];
    let (num, rest) = rest.split_once(" in ")?;
    let inner: usize = num.parse().ok()?;
    let quoted = rest.get(..rest.rfind('"')? + 1)?;
    let literal: String =
        serde_json::from_str(&format!("\"{}\"", quoted.trim_matches('"'))).ok()?;
    let needle = serde_json::to_string(&literal).ok()?;
    Some(text.find(&needle)? + 1 + inner)
}

fn parse_json<T: DeserializeOwned>(source: &str, text: &str) -> CliResult<T> {
    serde_json::from_str(text).map_err(|e| {
        let message = e.to_string();
        let offset = match e.line() {
            0 => embedded_offset(text, &message).unwrap_or(0),
            line => byte_offset(text, line, e.column()),
        };
        CliError::Input {
            source: source.to_string(),
            offset,
            message,
        }
    })
}

fn load<T: DeserializeOwned>(path: Option<&PathBuf>) -> CliResult<T> {
    let (name, text) = read_source(path)?;
    parse_json(&name, &text)
}

fn input_error(source: &str, message: impl Into<String>) -> CliError {
    CliError::Input {
        source: source.to_string(),
        offset: 0,
        message: message.into(),
    }
}

fn parse_point(s: &str) -> CliResult<(Rational, Rational)> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b] = parts[..] else {
        return Err(input_error("--point", "expected `x,y`"));
    };
    let parse = |t: &str| {
        t.parse::<Rational>()
            .map_err(|e| input_error("--point", e.to_string()))
    };
    Ok((parse(a)?, parse(b)?))
}

fn oracle_of(args: &BoundArgs) -> CliResult<PlurigeneraOracle> {
    let oracle = match (&args.oracle, args.height) {
        (Some(p), _) => load::<PlurigeneraOracle>(Some(p))?,
        (None, Some(h)) => PlurigeneraOracle {
            explicit: None,
            height: Some(h),
        },
        (None, None) => return Err(input_error("bound", "give --oracle or --height")),
    };
    oracle.validate()?;
    Ok(oracle)
}

fn run(command: Command) -> CliResult<Value> {
    match command {
        Command::Degree(a) => {
            let f: Foliation = load(a.foliation.as_ref())?;
            Ok(json!({"degree": f.degree()}))
        }
        Command::Singularities { fol, width } => {
            if !width.is_positive() {
                return Err(input_error("--width", "width must be positive"));
            }
            let f: Foliation = load(fol.foliation.as_ref())?;
            let pts = singular_points(&f)?;
            let d = f.degree() as u64;
            Ok(json!({
                "degree": d,
                "total_milnor": total_milnor(&pts),
                "expected_total": d * d + d + 1,
                "points": pts.iter().map(|p| p.report(&width)).collect::<Vec<_>>(),
            }))
        }
        Command::Classify { fol, point, chart } => {
            let f: Foliation = load(fol.foliation.as_ref())?;
            match point {
                Some(s) => {
                    let (a, b) = parse_point(&s)?;
                    let (x, y) = rational_point(a, b);
                    let chart = Chart::from(chart);
                    let (p, q) = f.chart_field(chart);
                    let local = LocalField::at(&p, &q, &x, &y);
                    if !local.is_singular() {
                        return Err(Error::NotSingular(format!("({x}, {y})")).into());
                    }
                    let (class, ratio) = classify_linear_part(&local.linear_part(&x));
                    Ok(json!({
                        "chart": chart,
                        "point": [x.to_string(), y.to_string()],
                        "milnor_number": local.milnor()?,
                        "classification": class,
                        "eigen_ratio": ratio.map(|r| r.to_string()),
                    }))
                }
                None => {
                    let pts = singular_points(&f)?;
                    Ok(json!({"points": pts.iter().map(|p| json!({
                        "chart": p.chart,
                        "location": p.projective(),
                        "orbit_size": p.count(),
                        "classification": p.classification,
                    })).collect::<Vec<_>>()}))
                }
            }
        }
        Command::Reduce { fol, cap } => {
            let f: Foliation = load(fol.foliation.as_ref())?;
            Ok(seidenberg_reduce_capped(&f, cap)?.to_json())
        }
        Command::SafeResolve(a) => {
            let f: Foliation = load(a.foliation.as_ref())?;
            Ok(safe_resolution(&f)?.to_json())
        }
        Command::Index(a) => {
            let f: Foliation = load(a.fol.foliation.as_ref())?;
            let c: PlaneCurve = load(Some(&a.curve))?;
            let tree = safe_resolution(&f)?;
            let z = total_z(&tree, c.f())?;
            let direct = match curve_z(&f, c.f()) {
                Ok(r) => json!(r.total),
                Err(Error::SingularBranch(_)) => Value::Null,
                Err(e) => return Err(e.into()),
            };
            Ok(json!({
                "Z": z.original_z(),
                "Z_resolved": z.total,
                "correction": z.correction,
                "Z_direct": direct,
                "records": z.records,
                "strict_transform": z.strict,
            }))
        }
        Command::InvariantCheck(a) => {
            let f: Foliation = load(a.fol.foliation.as_ref())?;
            let c: PlaneCurve = load(Some(&a.curve))?;
            Ok(match is_invariant(&f, &c) {
                Some(cert) => json!({
                    "invariant": true,
                    "verified": cert.verify(&f),
                    "certificate": cert.to_json(),
                    "curve_degree": c.degree(),
                }),
                None => json!({"invariant": false, "curve_degree": c.degree()}),
            })
        }
        Command::Extactic { fol, m, polynomial } => {
            let f: Foliation = load(fol.foliation.as_ref())?;
            let mut v = extactic_decision(&f, m)?.to_json();
            v["m"] = json!(m);
            if polynomial {
                v["E_m"] = json!(extactic(&f, m)?.to_string());
            }
            Ok(v)
        }
        Command::FirstIntegral { fol, max_m } => {
            let f: Foliation = load(fol.foliation.as_ref())?;
            Ok(match first_integral_degree(&f, max_m)? {
                Some((m, cert)) => {
                    json!({"degree": m, "max_m": max_m, "certificate": cert.to_json()})
                }
                None => json!({"degree": null, "max_m": max_m}),
            })
        }
        Command::Genus { curve } => {
            let c: PlaneCurve = load(Some(&curve))?;
            let sing = curve_singularities(&c)?;
            Ok(json!({
                "degree": c.degree(),
                "arithmetic_genus": c.arithmetic_genus(),
                "genus": genus(&c)?,
                "singularities": sing.iter().map(|s| s.to_json()).collect::<Vec<_>>(),
            }))
        }
        Command::Bound(BoundCommand::FirstIntegral(args)) => {
            let report = if args.oracle.is_none() {
                let h = args
                    .height
                    .ok_or_else(|| input_error("bound", "give --oracle or --height"))?;
                first_integral_bound_from_height(args.d, args.g, h)?
            } else {
                first_integral_degree_bound(args.d, args.g, &oracle_of(&args)?)?
            };
            Ok(json!({"report": report, "trace_verified": report.verify_trace()}))
        }
        Command::Bound(BoundCommand::InvariantCurve { args, z }) => {
            let oracle = oracle_of(&args)?;
            let (z, hypothesis) = match z {
                Some(z) => (z, None),
                None => {
                    let t = z_bound_quasi_reduced(args.d);
                    (t.value as i64, Some(t.hypothesis))
                }
            };
            let report = invariant_curve_degree_bound(args.d, args.g, &oracle, z)?;
            Ok(json!({
                "report": report,
                "trace_verified": report.verify_trace(),
                "Z_hypothesis": hypothesis,
            }))
        }
        Command::Examples(ExamplesCommand::Gen { family, params }) => {
            let params: Value = parse_json("--params", &params)?;
            let (f, desc) = FamilyDescriptor::generate(family.into(), &params)?;
            let mut v = serde_json::to_value(&f).expect("foliation serializes");
            v["degree"] = json!(f.degree());
            v["descriptor"] = serde_json::to_value(&desc).expect("descriptor serializes");
            Ok(v)
        }
    }
}

/// One `path = value` line per leaf.
fn render_text(v: &Value, path: &str, out: &mut String) {
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                let p = if path.is_empty() {
                    k.clone()
                } else {
                    format!("{path}.{k}")
                };
                render_text(x, &p, out);
            }
        }
        Value::Array(a) if !a.is_empty() => {
            for (i, x) in a.iter().enumerate() {
                render_text(x, &format!("{path}[{i}]"), out);
            }
        }
        Value::String(s) => out.push_str(&format!("{path} = {s}\n")),
        other => out.push_str(&format!("{path} = {other}\n")),
    }
}

fn run_with_budget(command: Command, budget: Option<u64>) -> CliResult<Value> {
    let Some(secs) = budget else {
        return run(command);
    };
    let (tx, rx) = mpsc::channel();
    std::thread::spawn(move || {
        let _ = tx.send(run(command));
    });
    rx.recv_timeout(Duration::from_secs(secs))
        .unwrap_or(Err(CliError::Budget(secs)))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.jobs {
        if n == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("global pool is configured once");
    }
    match run_with_budget(cli.command, cli.budget_seconds) {
        Ok(v) => {
            let s = match cli.format {
                Format::Json => serde_json::to_string_pretty(&v).expect("json") + "\n",
                Format::Text => {
                    let mut s = String::new();
                    render_text(&v, "", &mut s);
                    s
                }
            };
            // a closed pipe downstream is not an error of ours
            let _ = std::io::stdout().lock().write_all(s.as_bytes());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code())
        }
    }
}

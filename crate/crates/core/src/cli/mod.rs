//! The `exboot` command line. [`run_command`] takes the argument vector and
//! two sinks so it can be driven from tests as well as from `main`.

mod config;
pub mod figures;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use num_traits::ToPrimitive;
use serde_json::{json, Map, Value};

pub use config::{Format, RunConfig};

use crate::bootstrap::{
    bootstrap_run_with, classify, critical_p, fixed_points, spinor_update, BootstrapOptions,
    Classification, ASSUMPTION_NOTE,
};
use crate::dsl::{builtin_scheme, parse_scheme, run_scheme, SchemeAst};
use crate::error::Error;
use crate::euler_lagrange::{el_run, el_steps_needed};
use crate::exponents::{parse_rational, surd_eval, Exponent};
use crate::trace::{CaseTag, IterationTrace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_DOMAIN: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "exboot", version, about = "Exact exponent bootstrap calculator")]
struct Cli {
    /// File of `key = value` lines (digits, max_steps, output_dir, format)
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Fractional digits in decimal renderings
    #[arg(long, global = true)]
    digits: Option<usize>,
    #[arg(long, global = true)]
    max_steps: Option<usize>,
    /// Write figure files here instead of printing to stdout
    #[arg(long, global = true)]
    output_dir: Option<PathBuf>,
    /// json, csv, svg or text
    #[arg(long, global = true)]
    format: Option<Format>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Final spaces and stall data for a gravitino exponent
    Classify {
        #[arg(long = "p")]
        p: String,
    },
    /// Step-by-step iteration
    Trace {
        #[arg(long = "p")]
        p: String,
        /// abstract, el, or a path to a scheme file
        #[arg(long, default_value = "abstract")]
        scheme: String,
        /// Starting map exponent, `q=<rational>`
        #[arg(long)]
        start: Option<String>,
    },
    /// Roots of Q(q) = q, the barrier and the critical exponent
    FixedPoint {
        #[arg(long = "p")]
        p: String,
    },
    /// CSV (and SVG) figure data
    Figure {
        #[command(subcommand)]
        kind: FigureKind,
    },
    /// Scheme files
    Scheme {
        #[command(subcommand)]
        action: SchemeAction,
    },
}

#[derive(Subcommand, Debug)]
enum FigureKind {
    /// q_-, q_+ and Q_0 sampled over a range of p
    FixedPoints {
        #[arg(long)]
        p_min: String,
        #[arg(long)]
        p_max: String,
        #[arg(long)]
        samples: usize,
    },
    /// q_k, t_k and Q_0 along the abstract iteration
    Trace {
        #[arg(long = "p")]
        p: String,
        /// Also render an SVG polyline
        #[arg(long)]
        svg: bool,
    },
}

#[derive(Subcommand, Debug)]
enum SchemeAction {
    Run {
        #[arg(long)]
        file: PathBuf,
        /// `name=<rational>`, repeatable
        #[arg(long = "param")]
        params: Vec<String>,
    },
}

enum Failure {
    Usage(String),
    Domain(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Parse { .. } => Failure::Usage(e.to_string()),
            Error::MaxSteps { steps, partial } => Failure::Domain(format!(
                "no terminal case after {steps} steps (last state: {})",
                partial
                    .current_state()
                    .0
                    .iter()
                    .map(|(n, v)| format!("{n}={v}"))
                    .collect::<Vec<_>>()
                    .join(", ")
            )),
            other => Failure::Domain(other.to_string()),
        }
    }
}

type CmdResult = Result<String, Failure>;

/// Runs one invocation. Returns the exit code: 0 on success, 1 on a domain
/// error, 2 on a usage error. Diagnostics go to `err` as a single line.
pub fn run_command<I, S>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{}", e.render());
                    EXIT_OK
                }
                _ => {
                    let msg = e.render().to_string();
                    // clap's message up to the usage block, on one line
                    let head: Vec<&str> = msg
                        .lines()
                        .take_while(|l| !l.trim().is_empty() && !l.starts_with("Usage:"))
                        .map(str::trim)
                        .collect();
                    let _ = writeln!(err, "exboot: {}", head.join(" ").trim_start_matches("error: "));
                    EXIT_USAGE
                }
            };
        }
    };
    match execute(cli) {
        Ok(text) => {
            let _ = out.write_all(text.as_bytes());
            EXIT_OK
        }
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "exboot: {}", one_line(&m));
            EXIT_USAGE
        }
        Err(Failure::Domain(m)) => {
            let _ = writeln!(err, "exboot: {}", one_line(&m));
            EXIT_DOMAIN
        }
    }
}

fn one_line(m: &str) -> String {
    m.lines().collect::<Vec<_>>().join("; ")
}

fn resolve_config(cli: &Cli) -> Result<RunConfig, Failure> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path).map_err(Failure::Usage)?,
        None => RunConfig::default(),
    };
    if let Some(d) = cli.digits {
        cfg.digits = d;
    }
    if let Some(m) = cli.max_steps {
        cfg.max_steps = m;
    }
    if let Some(dir) = &cli.output_dir {
        cfg.output_dir = Some(dir.clone());
    }
    if let Some(f) = cli.format {
        cfg.format = Some(f);
    }
    cfg.validate().map_err(Failure::Usage)?;
    Ok(cfg)
}

fn parse_p(text: &str) -> Result<Exponent, Failure> {
    if text.trim() == "inf" {
        return Ok(Exponent::infinity());
    }
    let r = parse_rational(text).map_err(|e| Failure::Usage(e.to_string()))?;
    Exponent::from_rational(r).map_err(|e| Failure::Domain(e.to_string()))
}

fn parse_binding(text: &str) -> Result<(String, Exponent), Failure> {
    let (name, value) = text
        .split_once('=')
        .ok_or_else(|| Failure::Usage(format!("expected name=<rational>, got `{text}`")))?;
    Ok((name.trim().to_string(), parse_p(value)?))
}

fn envelope(command: &str, input: Value, result: Value, cfg: &RunConfig) -> String {
    let doc = json!({
        "command": command,
        "input": input,
        "result": result,
        "meta": {
            "digits": cfg.digits,
            "version": env!("CARGO_PKG_VERSION"),
            "note": ASSUMPTION_NOTE,
        },
    });
    format!("{doc}\n")
}

fn text_lines(result: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = result {
        for (k, v) in map {
            let shown = match v {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            out += &format!("{k}: {shown}\n");
        }
    }
    out
}

fn render(command: &str, input: Value, result: Value, cfg: &RunConfig) -> CmdResult {
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => Ok(envelope(command, input, result, cfg)),
        Format::Text => Ok(text_lines(&result)),
        other => Err(Failure::Usage(format!("{command} does not support {other:?} output"))),
    }
}

fn execute(cli: Cli) -> CmdResult {
    let cfg = resolve_config(&cli)?;
    match cli.command {
        Command::Classify { p } => cmd_classify(&p, &cfg),
        Command::FixedPoint { p } => cmd_fixed_point(&p, &cfg),
        Command::Trace { p, scheme, start } => cmd_trace(&p, &scheme, start.as_deref(), &cfg),
        Command::Figure { kind } => cmd_figure(kind, &cfg),
        Command::Scheme {
            action: SchemeAction::Run { file, params },
        } => cmd_scheme_run(&file, &params, &cfg),
    }
}

/// The `result` object printed by `classify`.
pub fn classification_json(c: &Classification, digits: usize) -> Result<Value, Error> {
    let mut m = Map::new();
    m.insert("p".into(), Value::String(c.p.to_string()));
    m.insert("regime".into(), Value::String(c.regime.as_str().into()));
    if let Some(stall) = &c.stall {
        m.insert("q_star".into(), Value::String(stall.q_star.to_string()));
        m.insert("t_star".into(), Value::String(stall.t_star.to_string()));
    }
    m.insert("map".into(), Value::String(c.map_space.to_string()));
    m.insert("spinor".into(), Value::String(c.spinor_space.to_string()));
    let mut dec = Map::new();
    if let Some(stall) = &c.stall {
        dec.insert("q_star".into(), Value::String(stall.q_star.to_decimal(digits)));
        dec.insert("t_star".into(), Value::String(stall.t_star.to_decimal(digits)));
    }
    dec.insert("map".into(), Value::String(c.map_space.to_decimal(digits)));
    dec.insert("spinor".into(), Value::String(c.spinor_space.to_decimal(digits)));
    m.insert("decimal".into(), Value::Object(dec));
    if c.stall.is_some() {
        let k = el_steps_needed(&c.p)?;
        let half = c.p.scale(&num_rational::BigRational::new(1.into(), 2.into()))?;
        m.insert(
            "euler_lagrange".into(),
            json!({ "k_star": k.to_u64(), "map": c.p.to_string(), "spinor": half.to_string() }),
        );
    }
    m.insert("notes".into(), json!(c.notes));
    Ok(Value::Object(m))
}

fn cmd_classify(p_text: &str, cfg: &RunConfig) -> CmdResult {
    let p = parse_p(p_text)?;
    let c = classify(&p)?;
    render("classify", json!({ "p": p_text }), classification_json(&c, cfg.digits)?, cfg)
}

fn cmd_fixed_point(p_text: &str, cfg: &RunConfig) -> CmdResult {
    let p = parse_p(p_text)?;
    let report = fixed_points(&p)?;
    let d = cfg.digits;
    let roots = match (&report.q_minus, &report.q_plus) {
        (Some(lo), Some(hi)) => json!({
            "q_minus": lo.to_string(),
            "q_plus": hi.to_string(),
            "q_minus_decimal": lo.to_decimal(d),
            "q_plus_decimal": hi.to_decimal(d),
        }),
        _ => Value::Null,
    };
    let p0 = critical_p();
    let result = json!({
        "p": p.to_string(),
        "radicand": report.radicand.to_string(),
        "roots": roots,
        "discriminant_sign": report.discriminant_sign.as_str(),
        "Q0": report.barrier.to_string(),
        "Q0_decimal": report.barrier.to_decimal(d),
        "p0": p0.to_string(),
        "p0_decimal": surd_eval(&p0, d),
    });
    render("fixed-point", json!({ "p": p_text }), result, cfg)
}

fn load_scheme(path: &Path) -> Result<SchemeAst, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))?;
    parse_scheme(&text).map_err(|e| Failure::Domain(format!("{}: {e}", path.display())))
}

fn trace_output(command: &str, input: Value, trace: &IterationTrace, extra: Map<String, Value>, cfg: &RunConfig) -> CmdResult {
    match cfg.format.unwrap_or(Format::Json) {
        Format::Json => {
            let mut result = match trace.to_json(cfg.digits) {
                Value::Object(m) => m,
                _ => unreachable!("trace json is an object"),
            };
            result.extend(extra);
            Ok(envelope(command, input, Value::Object(result), cfg))
        }
        Format::Text => Ok(trace.to_records(cfg.digits)),
        Format::Csv => Ok(trace.to_records(cfg.digits).lines().filter(|l| !l.starts_with('#')).map(|l| l.replace('\t', ",") + "\n").collect()),
        Format::Svg => Err(Failure::Usage("use `figure trace --svg` for SVG output".into())),
    }
}

fn cmd_trace(p_text: &str, scheme: &str, start: Option<&str>, cfg: &RunConfig) -> CmdResult {
    let p = parse_p(p_text)?;
    let start = start.map(parse_binding).transpose()?;
    let input = json!({ "p": p_text, "scheme": scheme, "start": start.as_ref().map(|(n, v)| format!("{n}={v}")) });
    let mut extra = Map::new();
    let trace = match scheme {
        "abstract" => {
            let mut options = BootstrapOptions {
                max_steps: cfg.max_steps,
                ..Default::default()
            };
            if let Some((_, q)) = &start {
                options.start = Some((q.clone(), spinor_update(&p, q)?));
            }
            let run = bootstrap_run_with(&p, &options)?;
            extra.insert("classification".into(), classification_json(&run.classification, cfg.digits)?);
            run.trace
        }
        "el" | "euler_lagrange" | "euler-lagrange" => match &start {
            None => {
                let run = el_run(&p)?;
                extra.insert("k_star".into(), json!(run.k_star));
                extra.insert("classification".into(), classification_json(&run.classification, cfg.digits)?);
                run.trace
            }
            Some((_, q0)) => {
                let ast = builtin_scheme("el").expect("built-in").map_err(Error::from)?;
                let params = BTreeMap::from([("p".to_string(), p.clone()), ("q0".to_string(), q0.clone())]);
                let trace = run_scheme(&ast, &params, cfg.max_steps)?;
                if trace.terminal == Some(CaseTag::Barrier) {
                    extra.insert("k_star".into(), json!(trace.len()));
                }
                trace
            }
        },
        path => {
            let ast = load_scheme(Path::new(path))?;
            let mut params = BTreeMap::from([("p".to_string(), p.clone())]);
            if let Some((_, q0)) = start {
                params.insert("q0".to_string(), q0);
            }
            run_scheme(&ast, &params, cfg.max_steps)?
        }
    };
    trace_output("trace", input, &trace, extra, cfg)
}

fn cmd_scheme_run(file: &Path, params: &[String], cfg: &RunConfig) -> CmdResult {
    let ast = load_scheme(file)?;
    let mut bound = BTreeMap::new();
    for text in params {
        let (name, value) = parse_binding(text)?;
        bound.insert(name, value);
    }
    for name in &ast.params {
        if !bound.contains_key(name) {
            return Err(Failure::Usage(format!("missing --param {name}=<value>")));
        }
    }
    if let Some(extra) = bound.keys().find(|k| !ast.params.contains(k)) {
        return Err(Failure::Usage(format!("scheme `{}` has no parameter `{extra}`", ast.name)));
    }
    let trace = run_scheme(&ast, &bound, cfg.max_steps)?;
    let input = json!({
        "file": file.display().to_string(),
        "params": bound.iter().map(|(n, v)| (n.clone(), Value::String(v.to_string()))).collect::<Map<_, _>>(),
    });
    trace_output("scheme run", input, &trace, Map::new(), cfg)
}

fn file_tag(p: &str) -> String {
    p.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '.' { c } else { '_' })
        .collect()
}

fn write_file(dir: &Path, name: &str, body: &str) -> Result<PathBuf, Failure> {
    std::fs::create_dir_all(dir)
        .map_err(|e| Failure::Domain(format!("cannot create {}: {e}", dir.display())))?;
    let path = dir.join(name);
    std::fs::write(&path, body).map_err(|e| Failure::Domain(format!("cannot write {}: {e}", path.display())))?;
    Ok(path)
}

fn cmd_figure(kind: FigureKind, cfg: &RunConfig) -> CmdResult {
    let files: Vec<(String, String)> = match kind {
        FigureKind::FixedPoints { p_min, p_max, samples } => {
            let lo = parse_rational(&p_min).map_err(|e| Failure::Usage(e.to_string()))?;
            let hi = parse_rational(&p_max).map_err(|e| Failure::Usage(e.to_string()))?;
            let csv = figures::fixed_points_csv(&lo, &hi, samples, cfg.digits)?;
            vec![("fixed_points.csv".to_string(), csv)]
        }
        FigureKind::Trace { p, svg } => {
            let pe = parse_p(&p)?;
            let stem = format!("trace_p{}", file_tag(&p));
            let want_svg = svg || cfg.format == Some(Format::Svg);
            let mut files = Vec::new();
            if cfg.output_dir.is_some() || !want_svg {
                files.push((format!("{stem}.csv"), figures::trace_csv(&pe, cfg.max_steps, cfg.digits)?));
            }
            if want_svg {
                files.push((format!("{stem}.svg"), figures::trace_svg(&pe, cfg.max_steps)?));
            }
            files
        }
    };
    match &cfg.output_dir {
        None => Ok(files.into_iter().map(|(_, body)| body).collect()),
        Some(dir) => {
            let mut listing = String::new();
            for (name, body) in &files {
                let path = write_file(dir, name, body)?;
                listing += &format!("{}\n", path.display());
            }
            Ok(listing)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("exboot").chain(args.iter().copied());
        let code = run_command(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn classify_examples() {
        let (code, out, _) = run(&["classify", "--p", "21/5"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""regime":"two","q_star":"42/17-o","t_star":"6-o""#), "{out}");
        let (_, out, _) = run(&["classify", "--p", "5"]);
        assert!(out.contains(r#""regime":"one","map":"5","spinor":"5/2""#), "{out}");
    }

    #[test]
    fn fixed_point_without_roots() {
        let (code, out, _) = run(&["fixed-point", "--p", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains(r#""radicand":"-71","roots":null"#), "{out}");
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run(&["classify", "--p", "3"]).0, EXIT_DOMAIN);
        assert_eq!(run(&["classify", "--p", "x/2"]).0, EXIT_USAGE);
        assert_eq!(run(&["classify", "--q", "5"]).0, EXIT_USAGE);
        let (code, _, err) = run(&["classify", "--p", "5", "--digits", "0"]);
        assert_eq!(code, EXIT_USAGE);
        assert_eq!(err.lines().count(), 1);
    }
}

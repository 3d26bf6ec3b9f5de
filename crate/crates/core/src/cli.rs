//! The `mpx` command line.
//!
//! Every subcommand builds one JSON document
//! `{command, params, results, values, timing}`; the `text` and `csv`
//! formats are renderings of it. Settings come from built-in defaults, then
//! an optional `key = value` file given with `--config`, then flags.
//!
//! Exit codes: 0 success, 1 invalid input, 2 numerical failure, 3 a
//! `verify` check failed.

use std::ffi::OsString;
use std::f64::consts::FRAC_PI_2;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::plane_wave::{e_closed, plane_wave_partial, ExpansionCoeffs};
use crate::polynomials::{
    eval_generalized, eval_hyp, eval_recurrence, eval_sum, numerator_recurrence, GenMPParams, MPParams,
};
use crate::quadrature_weight::{orthogonality_matrix, QuadratureScheme};
use crate::recursion_asymptotics::{darboux_deviation, dominant_deviation, l2_partial_sums};
use crate::second_kind::{q0_closed, q_recurrence, ContourSpec};
use crate::verify::{run_battery, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INVALID: i32 = 1;
pub const EXIT_NUMERICAL: i32 = 2;
pub const EXIT_CHECKS_FAILED: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Parser)]
#[command(name = "mpx", version, about = "Meixner-Pollaczek polynomials and their companions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
enum Command {
    /// P_n(x) by three independent routes, or the generalized family with --theta/--psi.
    Eval,
    /// P_n(x) and the numerator polynomial P*_n(x) for n = 0..N.
    Table,
    /// Normalized Gram matrix of P_0..P_N against the weight.
    Ortho,
    /// Plane-wave expansion coefficients g_0..g_N at t and the partial sum at x.
    Expand,
    /// Q_0..Q_N at z = x + i z_im.
    SecondKind,
    /// Large-degree behaviour at x: Darboux deviations and partial sums of |p_n|^2.
    Asympt,
    /// Run the identity battery.
    Verify,
}

#[derive(Debug, Clone, Default, clap::Args)]
struct Opts {
    #[arg(long, global = true)]
    lambda: Option<f64>,
    #[arg(long, global = true)]
    phi: Option<f64>,
    #[arg(long, global = true)]
    theta: Option<f64>,
    #[arg(long, global = true)]
    psi: Option<f64>,
    /// Degree.
    #[arg(long, global = true)]
    n: Option<usize>,
    /// Maximum degree or matrix size.
    #[arg(long = "N", global = true)]
    n_max: Option<usize>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    x: Option<f64>,
    #[arg(long, global = true, allow_hyphen_values = true)]
    t: Option<f64>,
    #[arg(long = "z-im", global = true, allow_hyphen_values = true)]
    z_im: Option<f64>,
    #[arg(long, global = true)]
    panels: Option<usize>,
    #[arg(long, global = true)]
    nodes: Option<usize>,
    #[arg(long = "half-width", global = true)]
    half_width: Option<f64>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, value_enum, global = true)]
    format: Option<Format>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// File of `key = value` lines; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Report wall-clock time (makes the output non-reproducible).
    #[arg(long, global = true)]
    timing: bool,
}

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParams(msg.into())
}

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| invalid(format!("config key `{key}`: cannot parse `{v}`")))
}

impl Opts {
    /// Fills unset fields from a config file.
    fn merge_config(&mut self, text: &str) -> Result<()> {
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| invalid(format!("config line {}: expected key = value", lineno + 1)))?;
            let (k, v) = (k.trim(), v.trim());
            match k.replace('_', "-").as_str() {
                "lambda" => self.lambda = self.lambda.or(Some(parse_value(k, v)?)),
                "phi" => self.phi = self.phi.or(Some(parse_value(k, v)?)),
                "theta" => self.theta = self.theta.or(Some(parse_value(k, v)?)),
                "psi" => self.psi = self.psi.or(Some(parse_value(k, v)?)),
                "n" => self.n = self.n.or(Some(parse_value(k, v)?)),
                "N" => self.n_max = self.n_max.or(Some(parse_value(k, v)?)),
                "x" => self.x = self.x.or(Some(parse_value(k, v)?)),
                "t" => self.t = self.t.or(Some(parse_value(k, v)?)),
                "z-im" => self.z_im = self.z_im.or(Some(parse_value(k, v)?)),
                "panels" => self.panels = self.panels.or(Some(parse_value(k, v)?)),
                "nodes" => self.nodes = self.nodes.or(Some(parse_value(k, v)?)),
                "half-width" => self.half_width = self.half_width.or(Some(parse_value(k, v)?)),
                "tol" => self.tol = self.tol.or(Some(parse_value(k, v)?)),
                "seed" => self.seed = self.seed.or(Some(parse_value(k, v)?)),
                "format" => {
                    if self.format.is_none() {
                        self.format = Some(
                            Format::from_str(v, true)
                                .map_err(|_| invalid(format!("config key `format`: unknown format `{v}`")))?,
                        );
                    }
                }
                "timing" => self.timing |= parse_value::<bool>(k, v)?,
                _ => return Err(invalid(format!("config line {}: unknown key `{k}`", lineno + 1))),
            }
        }
        Ok(())
    }
}

/// Fully resolved settings for one run.
struct Settings {
    lambda: f64,
    phi: f64,
    theta: Option<f64>,
    psi: Option<f64>,
    n: usize,
    n_max: Option<usize>,
    x: f64,
    t: f64,
    z_im: f64,
    seed: u64,
    format: Format,
    opts: Opts,
}

impl Settings {
    fn from_opts(opts: Opts) -> Result<Self> {
        let finite = |name: &str, v: Option<f64>| -> Result<()> {
            match v {
                Some(v) if !v.is_finite() => Err(invalid(format!("{name} must be finite"))),
                _ => Ok(()),
            }
        };
        for (name, v) in [
            ("lambda", opts.lambda),
            ("phi", opts.phi),
            ("theta", opts.theta),
            ("psi", opts.psi),
            ("x", opts.x),
            ("t", opts.t),
            ("z-im", opts.z_im),
        ] {
            finite(name, v)?;
        }
        Ok(Self {
            lambda: opts.lambda.unwrap_or(1.0),
            phi: opts.phi.unwrap_or(FRAC_PI_2),
            theta: opts.theta,
            psi: opts.psi,
            n: opts.n.unwrap_or(5),
            n_max: opts.n_max,
            x: opts.x.unwrap_or(0.0),
            t: opts.t.unwrap_or(0.3),
            z_im: opts.z_im.unwrap_or(1.0),
            seed: opts.seed.unwrap_or(0),
            format: opts.format.unwrap_or(Format::Json),
            opts,
        })
    }

    fn params(&self) -> Result<MPParams> {
        MPParams::new(self.lambda, self.phi)
    }

    fn n_max_or(&self, default: usize) -> usize {
        self.n_max.unwrap_or(default)
    }

    /// `base` with any quadrature flags applied on top.
    fn scheme(&self, base: QuadratureScheme) -> Result<QuadratureScheme> {
        let s = QuadratureScheme {
            half_width: self.opts.half_width.unwrap_or(base.half_width),
            panels: self.opts.panels.unwrap_or(base.panels),
            nodes_per_panel: self.opts.nodes.unwrap_or(base.nodes_per_panel),
            tol: self.opts.tol.unwrap_or(base.tol),
        };
        s.validate()?;
        Ok(s)
    }

    fn tol(&self) -> f64 {
        self.opts.tol.unwrap_or(QuadratureScheme::default().tol)
    }

    fn params_json(&self, n_max: Option<usize>) -> Value {
        json!({
            "lambda": self.lambda,
            "phi": self.phi,
            "theta": self.theta,
            "psi": self.psi,
            "n": self.n,
            "N": n_max,
            "x": self.x,
            "t": self.t,
            "z_im": self.z_im,
            "seed": self.seed,
            "panels": self.opts.panels,
            "nodes": self.opts.nodes,
            "half_width": self.opts.half_width,
            "tol": self.opts.tol,
        })
    }
}

fn cjson(z: Complex64) -> Value {
    json!([z.re, z.im])
}

fn r(x: f64) -> Complex64 {
    Complex64::new(x, 0.0)
}

/// What a subcommand produced before it is wrapped in the output document.
struct Report {
    n_max: Option<usize>,
    results: Value,
    values: Value,
    checks_failed: bool,
}

fn report(n_max: Option<usize>, results: Value, values: Value) -> Report {
    Report {
        n_max,
        results,
        values,
        checks_failed: false,
    }
}

fn cmd_eval(s: &Settings) -> Result<Report> {
    let x = r(s.x);
    if s.theta.is_some() || s.psi.is_some() {
        let (theta, psi) = match (s.theta, s.psi) {
            (Some(a), Some(b)) => (a, b),
            _ => return Err(invalid("--theta and --psi must be given together")),
        };
        let g = GenMPParams::new(s.lambda, theta, psi)?;
        let v = eval_generalized(&g, x, s.n);
        return Ok(report(None, json!({ "value": cjson(v) }), json!([cjson(v)])));
    }
    let p = s.params()?;
    let rec = eval_recurrence(&p, x, s.n)?.value(s.n);
    let hyp = eval_hyp(&p, x, s.n);
    let sum = eval_sum(&p, x, s.n);
    let spread = (hyp - rec).norm().max((sum - rec).norm()) / rec.norm().max(f64::MIN_POSITIVE);
    Ok(report(
        None,
        json!({
            "value": rec.re,
            "recurrence": cjson(rec),
            "hypergeometric": cjson(hyp),
            "bilateral_sum": cjson(sum),
            "max_relative_spread": spread,
        }),
        json!([rec.re]),
    ))
}

fn table_rows(s: &Settings, n_max: usize) -> Result<Vec<(usize, f64, f64)>> {
    let p = s.params()?;
    let x = r(s.x);
    let pn = eval_recurrence(&p, x, n_max)?;
    let qn = numerator_recurrence(&p, x, n_max)?;
    Ok((0..=n_max).map(|n| (n, pn.value(n).re, qn.value(n).re)).collect())
}

fn cmd_table(s: &Settings) -> Result<Report> {
    let n_max = s.n_max_or(10);
    let rows = table_rows(s, n_max)?;
    let values: Vec<Value> = rows
        .iter()
        .map(|&(n, p, q)| json!({ "n": n, "x": s.x, "P_n": p, "P*_n": q }))
        .collect();
    Ok(report(Some(n_max), json!({ "rows": rows.len() }), Value::Array(values)))
}

fn cmd_ortho(s: &Settings) -> Result<Report> {
    let n_max = s.n_max_or(10);
    let p = s.params()?;
    let tol = s.opts.tol.unwrap_or(1e-12);
    let base = QuadratureScheme::for_weight(&p, 2 * n_max, tol);
    let gram = orthogonality_matrix(&p, n_max, &s.scheme(base)?)?;
    let (mut diag, mut off) = (0.0f64, 0.0f64);
    for (i, row) in gram.iter().enumerate() {
        for (j, v) in row.iter().enumerate() {
            if i == j {
                diag = diag.max((v - 1.0).abs());
            } else {
                off = off.max(v.abs());
            }
        }
    }
    Ok(report(
        Some(n_max),
        json!({ "max_diagonal_deviation": diag, "max_off_diagonal": off }),
        json!(gram),
    ))
}

fn cmd_expand(s: &Settings) -> Result<Report> {
    let n_max = s.n_max_or(120);
    let p = s.params()?;
    let (x, t) = (r(s.x), r(s.t));
    let coeffs = ExpansionCoeffs::new(&p, t, n_max)?;
    let partial = plane_wave_partial(&p, x, t, n_max)?;
    let closed = e_closed(x, t)?;
    let values: Vec<Value> = coeffs
        .coeffs
        .iter()
        .enumerate()
        .map(|(n, g)| json!({ "n": n, "g_n": cjson(*g) }))
        .collect();
    Ok(report(
        Some(n_max),
        json!({
            "partial_sum": cjson(partial),
            "closed_form": cjson(closed),
            "abs_error": (partial - closed).norm(),
        }),
        Value::Array(values),
    ))
}

fn cmd_second_kind(s: &Settings) -> Result<Report> {
    let n_max = s.n_max_or(8);
    let p = s.params()?;
    let z = Complex64::new(s.x, s.z_im);
    let scheme = s.scheme(QuadratureScheme {
        tol: 1e-11,
        ..QuadratureScheme::default()
    })?;
    let q = q_recurrence(&p, z, n_max, &scheme)?;
    if q.unstable {
        return Err(Error::Instability {
            degree: n_max,
            digits_lost: q.digits_lost,
        });
    }
    let closed = if z.im != 0.0 {
        Some(cjson(q0_closed(&p, z, &ContourSpec::default())?))
    } else {
        None
    };
    let values: Vec<Value> = q
        .values
        .iter()
        .enumerate()
        .map(|(n, v)| json!({ "n": n, "Q_n": cjson(*v) }))
        .collect();
    Ok(report(
        Some(n_max),
        json!({ "z": cjson(z), "Q_0_contour": closed, "digits_lost": q.digits_lost }),
        Value::Array(values),
    ))
}

fn cmd_asympt(s: &Settings) -> Result<Report> {
    let n_max = s.n_max_or(400);
    if n_max < 16 {
        return Err(invalid("asympt needs N >= 16"));
    }
    let p = s.params()?;
    let degrees = [n_max / 4, n_max / 2, n_max];
    let mut values = Vec::new();
    if s.opts.z_im.is_some() && s.z_im != 0.0 {
        let z = Complex64::new(s.x, s.z_im);
        for n in degrees {
            values.push(json!({ "n": n, "dominant_deviation": dominant_deviation(&p, z, n)? }));
        }
        return Ok(report(Some(n_max), json!({ "z": cjson(z) }), Value::Array(values)));
    }
    let sums = l2_partial_sums(&p, s.x, n_max)?;
    for n in degrees {
        values.push(json!({
            "n": n,
            "darboux_deviation": darboux_deviation(&p, r(s.x), n, 8)?,
            "l2_partial_sum": sums[n],
        }));
    }
    Ok(report(
        Some(n_max),
        json!({ "l2_ratio_N_over_half_N": sums[n_max] / sums[n_max / 2] }),
        Value::Array(values),
    ))
}

fn cmd_verify(s: &Settings) -> Result<Report> {
    let p = s.params()?;
    let scheme = s.scheme(QuadratureScheme {
        tol: s.tol(),
        ..QuadratureScheme::default()
    })?;
    let checks = run_battery(&VerifyConfig {
        params: p,
        seed: s.seed,
        scheme,
        samples: 10,
    })?;
    let failed: Vec<&str> = checks.iter().filter(|c| !c.pass).map(|c| c.check.as_str()).collect();
    Ok(Report {
        n_max: None,
        results: json!({ "total": checks.len(), "passed": checks.len() - failed.len(), "failed": failed }),
        checks_failed: !failed.is_empty(),
        values: serde_json::to_value(&checks).expect("check results serialize"),
    })
}

fn command_name(c: Command) -> &'static str {
    match c {
        Command::Eval => "eval",
        Command::Table => "table",
        Command::Ortho => "ortho",
        Command::Expand => "expand",
        Command::SecondKind => "second-kind",
        Command::Asympt => "asympt",
        Command::Verify => "verify",
    }
}

fn render_text(doc: &Value) -> String {
    let mut out = String::new();
    let obj = doc.as_object().expect("document is an object");
    out.push_str(&format!("command: {}\n", obj["command"].as_str().unwrap_or("")));
    for section in ["params", "results"] {
        out.push_str(&format!("{section}:\n"));
        if let Some(map) = obj[section].as_object() {
            for (k, v) in map {
                if !v.is_null() {
                    out.push_str(&format!("  {k} = {v}\n"));
                }
            }
        }
    }
    out.push_str("values:\n");
    match &obj["values"] {
        Value::Array(rows) => {
            for row in rows {
                out.push_str(&format!("  {row}\n"));
            }
        }
        v => out.push_str(&format!("  {v}\n")),
    }
    if !obj["timing"].is_null() {
        out.push_str(&format!("timing: {}\n", obj["timing"]));
    }
    out
}

fn render_csv(rows: &[(usize, f64, f64)], x: f64) -> String {
    let mut out = String::from("n,x,P_n,P*_n\n");
    for &(n, p, q) in rows {
        out.push_str(&format!("{n},{x},{p:e},{q:e}\n"));
    }
    out
}

fn execute(command: Command, s: &Settings, out: &mut dyn Write) -> Result<i32> {
    if s.format == Format::Csv && command != Command::Table {
        return Err(invalid("csv output is only available for `table`"));
    }
    let start = Instant::now();
    let rep = match command {
        Command::Eval => cmd_eval(s),
        Command::Table => cmd_table(s),
        Command::Ortho => cmd_ortho(s),
        Command::Expand => cmd_expand(s),
        Command::SecondKind => cmd_second_kind(s),
        Command::Asympt => cmd_asympt(s),
        Command::Verify => cmd_verify(s),
    }?;
    let timing = if s.opts.timing {
        json!({ "elapsed_ms": start.elapsed().as_secs_f64() * 1e3 })
    } else {
        Value::Null
    };
    let text = match s.format {
        Format::Csv => render_csv(&table_rows(s, rep.n_max.unwrap_or(10))?, s.x),
        format => {
            let doc = json!({
                "command": command_name(command),
                "params": s.params_json(rep.n_max),
                "results": rep.results,
                "values": rep.values,
                "timing": timing,
            });
            if format == Format::Json {
                let mut j = serde_json::to_string_pretty(&doc).expect("document serializes");
                j.push('\n');
                j
            } else {
                render_text(&doc)
            }
        }
    };
    out.write_all(text.as_bytes())
        .map_err(|e| invalid(format!("cannot write output: {e}")))?;
    Ok(if rep.checks_failed { EXIT_CHECKS_FAILED } else { EXIT_OK })
}

fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        EXIT_NUMERICAL
    } else {
        EXIT_INVALID
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code. Diagnostics go to `err`.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(rendered.as_bytes()) } else { out.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut opts = cli.opts;
    if let Some(path) = opts.config.clone() {
        let merged = std::fs::read_to_string(&path)
            .map_err(|e| invalid(format!("cannot read config {}: {e}", path.display())))
            .and_then(|text| opts.merge_config(&text));
        if let Err(e) = merged {
            let _ = writeln!(err, "error: {e}");
            return exit_code(&e);
        }
    }
    match Settings::from_opts(opts).and_then(|s| execute(cli.command, &s, out)) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

/// Entry point used by the `mpx` binary.
pub fn main() -> i32 {
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run(std::env::args_os(), &mut stdout.lock(), &mut stderr.lock())
}

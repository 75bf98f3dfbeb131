//! Command-line front end.
//!
//! Exit codes: 0 success; 1 a verification check was violated; 2 bad input
//! or an inconclusive check; 3 requested precision unreachable; 4 output not
//! writable.

use crate::consensus::Evaluator;
use crate::constants::{transference_factor, ConstantQuery};
use crate::error::Error;
use crate::exactpoly::{poly_f, poly_min_certificate, MAX_R};
use crate::sinc::{EvalConfig, EvalMode};
use crate::verify::{run_suite, SuiteOptions};
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::json;
use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VIOLATED: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;
pub const EXIT_PRECISION: i32 = 3;
pub const EXIT_OUTPUT: i32 = 4;

/// Exponents `k` with curves at `r = 1.02^k`.
pub const FIGURE_K: [i32; 9] = [1, 2, 4, 8, 16, 32, 64, 128, 256];

const MAX_TERMS: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
    Svg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Evaluate f_r(x) by every available method.
    Eval,
    /// Exact polynomial coefficients of f_r in powers of cos²(πx).
    Poly,
    /// Minimum constant and transference factors for (q, d).
    Constants,
    /// Run the full verification suite and emit a JSON report.
    Verify,
    /// Emit f_r on a grid for r = 1.02^k, k = 1, 2, 4, …, 256.
    Figure,
}

#[derive(Debug, Clone, Parser)]
#[command(name = "sincsum", version, about = "Periodic sums of powers of sinc")]
pub struct CliConfig {
    #[command(subcommand)]
    pub command: Command,
    #[arg(long = "r", global = true, allow_negative_numbers = true)]
    pub r: Option<f64>,
    #[arg(long = "q", global = true, allow_negative_numbers = true)]
    pub q: Option<f64>,
    #[arg(long = "d", global = true)]
    pub d: Option<u32>,
    #[arg(long = "x", global = true, allow_negative_numbers = true)]
    pub x: Option<f64>,
    #[arg(long, global = true, default_value_t = 1024)]
    pub grid: usize,
    #[arg(long, global = true, default_value_t = 1e-10)]
    pub tol: f64,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write to this file instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,
    /// Include wall-clock times in the verification report.
    #[arg(long, global = true)]
    pub timings: bool,
}

struct Outcome {
    text: String,
    code: i32,
}

fn failure(e: Error) -> (i32, String) {
    let code = match e {
        Error::PrecisionUnreachable { .. } => EXIT_PRECISION,
        Error::CertificateFailure(_) => EXIT_VIOLATED,
        _ => EXIT_DOMAIN,
    };
    (code, e.to_string())
}

fn usage(msg: &str) -> (i32, String) {
    (EXIT_DOMAIN, msg.to_string())
}

/// Shortest round-trip form, always with a decimal point or exponent.
fn num(v: f64) -> String {
    format!("{v:?}")
}

/// Fixed 15 significant digits in scientific notation.
pub fn sig15(v: f64) -> String {
    format!("{v:.14e}")
}

fn ratio(r: &BigRational) -> String {
    r.to_string()
}

fn need<T>(v: Option<T>, flag: &str) -> Result<T, (i32, String)> {
    v.ok_or_else(|| usage(&format!("--{flag} is required")))
}

fn cmd_eval(cfg: &CliConfig) -> Result<Outcome, (i32, String)> {
    let r = need(cfg.r, "r")?;
    let x = need(cfg.x, "x")?;
    let target = cfg.tol.min(EvalConfig::default().target_tol());
    let eval_cfg = EvalConfig::new(target, MAX_TERMS, EvalMode::Consensus).map_err(failure)?;
    let e = Evaluator::new(r, eval_cfg)
        .and_then(|ev| ev.eval(x))
        .map_err(failure)?;
    let text = match cfg.format {
        Format::Json => {
            let v = json!({ "r": r, "x": x, "value": e.value, "method_spread": e.spread });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => format!(
            "r,x,value,method_spread\n{},{},{},{}\n",
            num(r),
            num(x),
            sig15(e.value),
            sig15(e.spread)
        ),
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn cmd_poly(cfg: &CliConfig) -> Result<Outcome, (i32, String)> {
    let r = need(cfg.r, "r")?;
    if r.fract() != 0.0 || !(1.0..=MAX_R as f64).contains(&r) {
        return Err(usage(&format!("poly needs an integer r in 1..={MAX_R}, got {r}")));
    }
    let p = poly_f(r as u32).map_err(failure)?;
    let cert = poly_min_certificate(&p).map_err(failure)?;
    let coeffs: Vec<String> = p.coeffs().iter().map(ratio).collect();
    let text = match cfg.format {
        Format::Json => {
            let v = json!({ "r": r as u32, "coeffs": coeffs, "min_value": ratio(&cert.min_value) });
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => format!("{}\n", coeffs.join(", ")),
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn cmd_constants(cfg: &CliConfig) -> Result<Outcome, (i32, String)> {
    let q = need(cfg.q, "q")?;
    let query = ConstantQuery::new(q, cfg.d.unwrap_or(1)).map_err(failure)?;
    let rep = transference_factor(query).map_err(failure)?;
    let text = match cfg.format {
        Format::Json => {
            let mut v = serde_json::to_value(&rep).expect("json");
            v["p"] = json!(query.p());
            format!("{}\n", serde_json::to_string_pretty(&v).expect("json"))
        }
        _ => format!(
            "q,d,p,c_q,factor,crude,exact_c_q\n{},{},{},{},{},{},{}\n",
            num(rep.q),
            rep.d,
            sig15(query.p()),
            sig15(rep.c_q),
            sig15(rep.factor),
            sig15(rep.crude),
            rep.exact_c_q.as_ref().map(ratio).unwrap_or_default()
        ),
    };
    Ok(Outcome { text, code: EXIT_OK })
}

fn cmd_verify(cfg: &CliConfig) -> Result<Outcome, (i32, String)> {
    if cfg.grid < 16 {
        return Err(usage(&format!("verify needs --grid >= 16, got {}", cfg.grid)));
    }
    let opts = SuiteOptions {
        grid: cfg.grid,
        tol: cfg.tol,
        seed: cfg.seed,
        timings: cfg.timings,
    };
    let rep = run_suite(&opts).map_err(failure)?;
    Ok(Outcome {
        text: format!("{}\n", rep.to_json()),
        code: rep.exit_code(),
    })
}

/// One curve of the figure: `(r, [(x, f_r(x))])`.
pub type Curve = (f64, Vec<(f64, f64)>);

/// `f_r` on `grid` uniform points of `[0, 1]` for each `r = 1.02^k`.
pub fn figure_curves(grid: usize, tol: f64) -> crate::Result<Vec<Curve>> {
    use rayon::prelude::*;
    let last = (grid - 1) as f64;
    FIGURE_K
        .iter()
        .map(|&k| {
            let r = 1.02f64.powi(k);
            let ev = Evaluator::new(r, EvalConfig::new(tol, MAX_TERMS, EvalMode::Consensus)?)?;
            let pts = (0..grid)
                .into_par_iter()
                .map(|i| {
                    let x = i as f64 / last;
                    Ok((x, ev.eval(x)?.value))
                })
                .collect::<crate::Result<Vec<_>>>()?;
            Ok((r, pts))
        })
        .collect()
}

fn figure_svg(curves: &[Curve]) -> String {
    let (w, h, pad) = (640.0, 400.0, 40.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{}" height="{}" fill="none" stroke="black"/>"#,
        w - 2.0 * pad,
        h - 2.0 * pad
    );
    for (i, (r, pts)) in curves.iter().enumerate() {
        let shade = 20 + 25 * i;
        let points: Vec<String> = pts
            .iter()
            .map(|&(x, v)| {
                let px = pad + x * (w - 2.0 * pad);
                let py = h - pad - v * (h - 2.0 * pad);
                format!("{px:.2},{py:.2}")
            })
            .collect();
        let _ = writeln!(
            s,
            r#"<polyline fill="none" stroke="rgb({shade},{shade},230)" points="{}"><title>r = {}</title></polyline>"#,
            points.join(" "),
            sig15(*r)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn cmd_figure(cfg: &CliConfig) -> Result<Outcome, (i32, String)> {
    if cfg.grid < 2 {
        return Err(usage(&format!("figure needs --grid >= 2, got {}", cfg.grid)));
    }
    let curves = figure_curves(cfg.grid, cfg.tol).map_err(failure)?;
    let text = match cfg.format {
        Format::Svg => figure_svg(&curves),
        Format::Json => {
            let v: Vec<_> = curves
                .iter()
                .map(|(r, pts)| {
                    json!({
                        "r": r,
                        "x": pts.iter().map(|p| p.0).collect::<Vec<_>>(),
                        "f": pts.iter().map(|p| p.1).collect::<Vec<_>>(),
                    })
                })
                .collect();
            format!("{}\n", serde_json::to_string(&v).expect("json"))
        }
        Format::Csv => {
            let mut s = String::from("x,r,f_r(x)\n");
            for (r, pts) in &curves {
                for &(x, v) in pts {
                    let _ = writeln!(s, "{},{},{}", sig15(x), sig15(*r), sig15(v));
                }
            }
            s
        }
    };
    Ok(Outcome { text, code: EXIT_OK })
}

/// Parses `args` (including the program name), runs the subcommand and
/// returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cfg = match CliConfig::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let rendered = e.render().to_string();
            let sink: &mut dyn Write = if code == 0 { out } else { err };
            let _ = sink.write_all(rendered.as_bytes());
            return if code == 0 { EXIT_OK } else { EXIT_DOMAIN };
        }
    };
    let result = match cfg.command {
        Command::Eval => cmd_eval(&cfg),
        Command::Poly => cmd_poly(&cfg),
        Command::Constants => cmd_constants(&cfg),
        Command::Verify => cmd_verify(&cfg),
        Command::Figure => cmd_figure(&cfg),
    };
    match result {
        Ok(o) => {
            let written = match &cfg.output {
                Some(path) => std::fs::write(path, &o.text).map_err(|e| format!("{}: {e}", path.display())),
                None => out.write_all(o.text.as_bytes()).map_err(|e| e.to_string()),
            };
            match written {
                Ok(()) => o.code,
                Err(msg) => {
                    let _ = writeln!(err, "error: cannot write output: {msg}");
                    EXIT_OUTPUT
                }
            }
        }
        Err((code, msg)) => {
            let _ = writeln!(err, "error: {msg}");
            code
        }
    }
}

//! Command-line surface for the workbench.
//!
//! Subcommands: `eval` (series and identity evaluation), `discover`
//! (alpha-table bootstrap), `pade` (closed-form reconstruction), `pslq`
//! (integer relation detection), `verify` (the three numerical
//! verification protocols), and `prove` (the exact certificate checks).
//!
//! Exit codes carry the scientific outcome so CI can gate on it:
//! 0 = success / relation found / all checks pass, 2 = definitive
//! negative (PSLQ exclusion or a failing exact check), 1 = usage or
//! runtime error.  Output is deterministic: the same configuration
//! always produces byte-identical bytes.

use apery::discovery::{self, BootstrapState};
use apery::error::Error;
use apery::exact::{rat_from_string, rat_to_string, RationalPoly};
use apery::mp::{MPReal, Precision};
use apery::pade::{pade_fit, pade_scan, series_from_json, PadeRequest};
use apery::pslq::{pslq_detect, RelationProblem, RelationResult};
use apery::series::{identity_eval, sigma_eval, simplex_eval, IdentityId, SigmaSpec, SimplexSpec};
use apery::wz;
use clap::{Parser, Subcommand, ValueEnum};
use num_traits::{One, Zero};
use serde_json::{json, Map, Value};
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

#[derive(Parser)]
#[command(name = "apery", about = "central-binomial zeta series workbench", version)]
struct Cli {
    /// Requested decimal digits for numerical computations.
    #[arg(long, global = true, default_value_t = 50)]
    digits: u32,
    /// Extra guard digits carried internally.
    #[arg(long, global = true, default_value_t = 10)]
    guard: u32,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand)]
enum Cmd {
    /// Evaluate a sigma/simplex sum or both sides of a named identity.
    Eval {
        /// "sigma(2;[2,1])", "simplex(2;[4,4])", or an identity name.
        spec: String,
        /// First parameter (decimal or rational like "1/2").
        #[arg(long)]
        x: Option<String>,
        /// Second parameter for two-parameter identities.
        #[arg(long)]
        y: Option<String>,
    },
    /// Bootstrap the alpha coefficient table up to a weight.
    Discover {
        #[arg(long, default_value_t = 4)]
        max_weight: u32,
    },
    /// Reconstruct a rational function from a JSON series file.
    Pade {
        /// JSON array of "p/q" coefficient strings, lowest order first.
        #[arg(long)]
        input: PathBuf,
        /// Fit these exact degrees; omit both to scan all degrees.
        #[arg(long)]
        num_deg: Option<usize>,
        #[arg(long)]
        den_deg: Option<usize>,
    },
    /// Run PSLQ on a JSON array of decimal value strings.
    Pslq {
        #[arg(long)]
        input: PathBuf,
        /// Norm bound past which exclusion is certified.
        #[arg(long, default_value_t = 1e12)]
        bound: f64,
    },
    /// Run the three verification protocols on the generating function.
    Verify {
        /// Check series coefficients through x^(2*coeff_order).
        #[arg(long, default_value_t = 10)]
        coeff_order: usize,
        /// Number of pseudorandom points frac(m pi).
        #[arg(long, default_value_t = 10)]
        n_random: u32,
    },
    /// Run the exact certificate checks for n = 1..n_max.
    Prove {
        #[arg(long, default_value_t = 10)]
        n_max: u64,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let p = Precision::with_guard(cli.digits.max(30), cli.guard.max(10));
    let result = match &cli.cmd {
        Cmd::Eval { spec, x, y } => cmd_eval(spec, x.as_deref(), y.as_deref(), p),
        Cmd::Discover { max_weight } => cmd_discover(*max_weight, p, cli.format),
        Cmd::Pade { input, num_deg, den_deg } => cmd_pade(input, *num_deg, *den_deg),
        Cmd::Pslq { input, bound } => cmd_pslq(input, *bound, p),
        Cmd::Verify { coeff_order, n_random } => cmd_verify(*coeff_order, *n_random, p),
        Cmd::Prove { n_max } => cmd_prove(*n_max),
    };
    match result {
        Ok((text, code)) => {
            let text = text + "\n";
            if let Some(path) = &cli.out {
                if let Err(e) = std::fs::write(path, &text) {
                    eprintln!("error: cannot write {}: {e}", path.display());
                    return ExitCode::from(1);
                }
            } else {
                print!("{text}");
            }
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

type CmdResult = Result<(String, u8), Error>;

fn render(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("json rendering cannot fail")
}

/// Parses "1/2", "-3", or a decimal literal at working precision.
fn parse_real(s: &str, p: Precision) -> Result<MPReal, Error> {
    if let Ok(q) = rat_from_string(s) {
        return Ok(MPReal::from_rat(&q, p));
    }
    MPReal::parse(s, p)
}

fn cmd_eval(spec: &str, x: Option<&str>, y: Option<&str>, p: Precision) -> CmdResult {
    let digits = p.digits();
    if spec.starts_with("sigma(") {
        let s = SigmaSpec::from_str(spec)?;
        let v = sigma_eval(&s, p);
        let out = json!({
            "digits": digits,
            "spec": s.to_string(),
            "value": v.to_decimal(digits),
        });
        return Ok((render(&out), 0));
    }
    if spec.starts_with("simplex(") {
        let s = SimplexSpec::from_str(spec)?;
        let v = simplex_eval(&s, p);
        let out = json!({
            "digits": digits,
            "spec": s.to_string(),
            "value": v.to_decimal(digits),
        });
        return Ok((render(&out), 0));
    }
    let id = IdentityId::from_str(spec)?;
    let mut params = Vec::new();
    let mut param_json = Map::new();
    for (flag, value) in [("x", x), ("y", y)].iter().take(id.signature().arity()) {
        let raw = value.ok_or_else(|| {
            Error::Domain(format!("identity {} needs --{flag}", id.name()))
        })?;
        params.push(parse_real(raw, p)?);
        param_json.insert((*flag).into(), Value::String(raw.into()));
    }
    let (lhs, rhs) = identity_eval(id, &params, p)?;
    let out = json!({
        "digits": digits,
        "identity": id.name(),
        "params": Value::Object(param_json),
        "lhs": lhs.to_decimal(digits),
        "rhs": rhs.to_decimal(digits),
        "residual": (&lhs - &rhs).abs().to_decimal(5),
    });
    Ok((render(&out), 0))
}

fn cmd_discover(max_weight: u32, p: Precision, format: Format) -> CmdResult {
    let mut state = BootstrapState::new(p);
    let mut excluded = None;
    for _ in 0..=max_weight {
        match discovery::bootstrap_step(&mut state) {
            Ok(()) => {}
            Err(Error::Excluded { bound }) => {
                excluded = Some(bound);
                break;
            }
            Err(e) => return Err(e),
        }
    }
    if format == Format::Table {
        let mut lines = vec![format!("{:<22} {}", "partition", "alpha")];
        for (pi, alpha) in state.alphas.iter() {
            lines.push(format!("{:<22} {}", pi.key(), rat_to_string(alpha)));
        }
        if let Some(bound) = &excluded {
            lines.push(format!("excluded: no relation below norm {bound}"));
        }
        let code = if excluded.is_some() { 2 } else { 0 };
        return Ok((lines.join("\n"), code));
    }
    let mut table = Map::new();
    for (pi, alpha) in state.alphas.iter() {
        table.insert(pi.key(), Value::String(rat_to_string(alpha)));
    }
    let log: Vec<Value> = state
        .log
        .iter()
        .map(|run| {
            json!({
                "weight": run.weight,
                "inputs": run.inputs,
                "outcome": run.outcome,
            })
        })
        .collect();
    let out = json!({
        "digits": p.digits(),
        "alphas": Value::Object(table),
        "log": log,
        "excluded": excluded,
    });
    let code = if out["excluded"].is_null() { 0 } else { 2 };
    Ok((render(&out), code))
}

fn cmd_pade(input: &PathBuf, num_deg: Option<usize>, den_deg: Option<usize>) -> CmdResult {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
    let coeffs = series_from_json(&text)?;
    let order = coeffs.len();
    let series = RationalPoly::new(coeffs);
    match (num_deg, den_deg) {
        (Some(pd), Some(qd)) => {
            let f = pade_fit(&PadeRequest::new(series, order, pd, qd))?;
            let out = json!({
                "num_deg": pd,
                "den_deg": qd,
                "approximant": f.to_string(),
            });
            Ok((render(&out), 0))
        }
        (None, None) => {
            let cands: Vec<Value> = pade_scan(&series, order)
                .into_iter()
                .map(|c| {
                    json!({
                        "num_deg": c.num_deg,
                        "den_deg": c.den_deg,
                        "approximant": c.approximant.to_string(),
                        "validated_order": c.validated_order,
                    })
                })
                .collect();
            let code = if cands.is_empty() { 2 } else { 0 };
            Ok((render(&json!({ "candidates": cands })), code))
        }
        _ => Err(Error::Domain(
            "pass both --num-deg and --den-deg, or neither to scan".into(),
        )),
    }
}

fn cmd_pslq(input: &PathBuf, bound: f64, p: Precision) -> CmdResult {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Error::Parse(format!("{}: {e}", input.display())))?;
    let strs: Vec<String> =
        serde_json::from_str(&text).map_err(|e| Error::Parse(format!("input JSON: {e}")))?;
    let xs = strs
        .iter()
        .map(|s| parse_real(s, p))
        .collect::<Result<Vec<_>, _>>()?;
    let outcome = pslq_detect(&RelationProblem::new(xs).with_bound(bound))?;
    let code = match &outcome {
        RelationResult::Found { .. } => 0,
        RelationResult::Excluded { .. } => 2,
    };
    let out = json!({ "digits": p.digits(), "result": outcome });
    Ok((render(&out), code))
}

fn cmd_verify(coeff_order: usize, n_random: u32, p: Precision) -> CmdResult {
    let report = discovery::verify_conjecture(p, coeff_order, n_random)?;
    let points = |pts: &[discovery::PointCheck]| -> Vec<Value> {
        pts.iter()
            .map(|pt| {
                json!({
                    "point": pt.label,
                    "residual": pt.residual,
                    "skipped": pt.skipped,
                })
            })
            .collect()
    };
    let (order, max_diff) = report.coefficient_check.clone().expect("always run");
    let out = json!({
        "digits": p.digits(),
        "coefficients": { "order": order, "max_residual": max_diff },
        "special_points": points(&report.special_points),
        "random_points": points(&report.random_points),
    });
    Ok((render(&out), 0))
}

fn cmd_prove(n_max: u64) -> CmdResult {
    let mut failures: Vec<String> = Vec::new();
    let mut results = Vec::new();
    for n in 1..=n_max {
        let t_ok = wz::t_check(n).is_one();
        let mut wz_ok = true;
        for k in 0..=n + 1 {
            match wz::wz_certificate_check(n, k) {
                Ok(r) if r.is_zero() => {}
                Ok(_) => {
                    wz_ok = false;
                    failures.push(format!("wz residual nonzero at (n,k)=({n},{k})"));
                }
                Err(e) => {
                    wz_ok = false;
                    failures.push(format!("wz check failed at (n,k)=({n},{k}): {e}"));
                }
            }
        }
        let pf_ok = wz::partial_fraction_sum(n).is_one();
        let finite3_ok = wz::finite3_check(n) == apery::exact::binomial(2 * n, n as i64);
        if !t_ok {
            failures.push(format!("T({n}) != 1"));
        }
        if !pf_ok {
            failures.push(format!("S_{n} != 1"));
        }
        if !finite3_ok {
            failures.push(format!("finite quartic identity fails at n={n}"));
        }
        results.push(json!({
            "n": n,
            "t_equals_one": t_ok,
            "wz_telescopes": wz_ok,
            "partial_fraction_sum_equals_one": pf_ok,
            "finite_quartic_matches_binomial": finite3_ok,
        }));
    }
    let out = json!({
        "n_max": n_max,
        "results": results,
        "failures": failures,
    });
    let code = if failures.is_empty() { 0 } else { 2 };
    Ok((render(&out), code))
}

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use ramond_core::error::{Error, Result};
use ramond_core::expr::{eval_text, parse_rational, parse_scalar, Context};
use ramond_core::liealg::Generator;
use ramond_core::modules::omega::annihilates;
use ramond_core::modules::{cover_weight_dim, submodule_search, verma_weight_dims, GammaModule, OmegaVariant, VermaModule, Window};
use ramond_core::report::{SCHEMA, TOOL_VERSION};
use ramond_core::suite::{run_suite, verma_dims_oracle, Suite};

/// Exact computations with the N=1 Ramond superalgebra and its modules.
#[derive(Parser)]
#[command(name = "ramond-cas", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a verification suite; exits nonzero if any check fails.
    Verify {
        /// jacobi, subalg, twist, iota, gamma, omega, identity, verma, cover, submodule or all
        #[arg(long)]
        suite: String,
        /// Overrides the suite's default index bound.
        #[arg(long)]
        bound: Option<i64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Omit timing so that repeated runs are byte-identical.
        #[arg(long)]
        canonical: bool,
    },
    /// Evaluate an expression in an algebra, or act with it on a module vector.
    Act {
        #[arg(long)]
        expr: String,
        /// s, sbar, stilde, ubar, gamma(LAMBDA,B), weyl(LAMBDA) or verma(H,C)
        #[arg(long)]
        context: String,
        /// e(i,r) combination for gamma/weyl; an operator applied to v for verma
        #[arg(long, allow_hyphen_values = true)]
        vector: Option<String>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search a window of the intermediate series module for invariant subspaces.
    Simplicity {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        /// LO..HI
        #[arg(long, allow_hyphen_values = true)]
        window: String,
        #[arg(long)]
        depth: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check which orders of a differentiator annihilate the module.
    Omega {
        #[arg(long)]
        variant: String,
        /// Stop at the first annihilating order.
        #[arg(long)]
        find_min_m: bool,
        #[arg(long, default_value_t = 6)]
        max_m: u32,
        /// Symbolic when omitted.
        #[arg(long, allow_hyphen_values = true)]
        lambda: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        /// Half-width of the index grid for k, s, i.
        #[arg(long, default_value_t = 2)]
        range: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight-space dimensions and highest-weight checks of a Verma module.
    Verma {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
        #[arg(long, allow_hyphen_values = true)]
        c: String,
        #[arg(long)]
        depth: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Weight-space dimension of the A-cover of an intermediate series module.
    Cover {
        #[arg(long, allow_hyphen_values = true)]
        lambda: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
        #[arg(long, allow_hyphen_values = true)]
        offset: i64,
        #[arg(long)]
        truncation: i64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn envelope(command: &str, body: Value) -> Value {
    let mut v = json!({ "schema": SCHEMA, "command": command, "tool_version": TOOL_VERSION });
    if let (Value::Object(head), Value::Object(rest)) = (&mut v, body) {
        head.extend(rest);
    }
    v
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, format!("{text}\n")).map_err(|e| Error::ContextMismatch(format!("cannot write {}: {e}", path.display()))),
        None => {
            use std::io::Write;
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = writeln!(std::io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

fn parse_window(text: &str) -> Result<Window> {
    let bad = || Error::InvalidBound(format!("window must look like LO..HI, got '{text}'"));
    let (lo, hi) = text.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Window::new(lo, hi)
}

/// Runs a command; `Ok(false)` means it ran but reported failing checks.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify { suite, bound, out, canonical } => {
            let mut report = run_suite(suite.parse::<Suite>()?, bound)?;
            if canonical {
                report.timing = None;
            }
            emit(&report.to_json(), out.as_ref())?;
            Ok(report.passed())
        }
        Command::Act { expr, context, vector, out } => {
            let ctx = Context::parse(&context)?;
            let value = eval_text(&expr, &ctx, vector.as_deref())?;
            let body = json!({ "expr": expr, "context": context, "vector": vector, "result": value.to_string() });
            emit(&pretty(envelope("act", body)), out.as_ref())?;
            Ok(true)
        }
        Command::Simplicity { lambda, b, window, depth, out } => {
            let report = submodule_search(parse_rational(&lambda)?, parse_rational(&b)?, parse_window(&window)?, depth)?;
            let body = json!({ "report": report.summary(), "proper_found": !report.proper.is_empty() });
            emit(&pretty(envelope("simplicity", body)), out.as_ref())?;
            Ok(true)
        }
        Command::Omega { variant, find_min_m, max_m, lambda, b, range, out } => {
            let variant: OmegaVariant = variant.parse()?;
            let lambda = lambda.map_or(Ok(ramond_core::coeff::Scalar::lambda()), |s| parse_scalar(&s))?;
            let b = b.map_or(Ok(ramond_core::coeff::Scalar::b()), |s| parse_scalar(&s))?;
            let module = GammaModule::new(lambda.clone(), b.clone());
            let grid = -range..=range;
            let mut orders = Vec::new();
            let mut minimal = None;
            for m in 0..=max_m {
                let ok = annihilates(&module, variant, m, &grid);
                orders.push(json!({ "m": m, "annihilates": ok }));
                if ok && minimal.is_none() {
                    minimal = Some(m);
                    if find_min_m {
                        break;
                    }
                }
            }
            let body = json!({
                "variant": variant.to_string(),
                "lambda": lambda.to_string(),
                "b": b.to_string(),
                "range": [-range, range],
                "max_m": max_m,
                "minimal_m": minimal,
                "orders": orders,
            });
            emit(&pretty(envelope("omega", body)), out.as_ref())?;
            Ok(true)
        }
        Command::Verma { h, c, depth, out } => {
            if depth < 0 {
                return Err(Error::InvalidBound(format!("depth must be nonnegative, got {depth}")));
            }
            let module = VermaModule::new(parse_scalar(&h)?, parse_scalar(&c)?);
            let dims = verma_weight_dims(depth);
            let oracle = verma_dims_oracle(depth);
            let dims_ok = dims.iter().zip(&oracle).all(|(a, b)| *a as u64 == *b);
            let v = VermaModule::highest_weight_vector();
            let mut annihilated = true;
            for n in 1..=depth.max(1) {
                for g in [Generator::L(n), Generator::G(n)] {
                    annihilated &= module.act_generator(g, &v)?.is_zero();
                }
            }
            let g0g0 = module.act_word(&[Generator::G(0), Generator::G(0)], &v)?;
            let body = json!({
                "h": module.h.to_string(),
                "c": module.c.to_string(),
                "dims": dims,
                "dims_match_oracle": dims_ok,
                "positive_modes_annihilate": annihilated,
                "g0_squared_on_v": g0g0.to_string(),
                "l0_eigenvalue_at_depth": (0..=depth).map(|n| module.l0_eigenvalue(n).to_string()).collect::<Vec<_>>(),
            });
            emit(&pretty(envelope("verma", body)), out.as_ref())?;
            Ok(dims_ok && annihilated)
        }
        Command::Cover { lambda, b, offset, truncation, out } => {
            let d = cover_weight_dim(parse_rational(&lambda)?, parse_rational(&b)?, offset, truncation)?;
            let body = json!({ "lambda": lambda, "b": b, "offset": offset, "truncation": truncation, "result": d });
            emit(&pretty(envelope("cover", body)), out.as_ref())?;
            Ok(true)
        }
    }
}

fn pretty(v: Value) -> String {
    serde_json::to_string_pretty(&v).expect("json serializes")
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}

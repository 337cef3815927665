//! Acceptance suite: one PASS/FAIL line per criterion, exit status 1 if any fails.
//! Runs the release-facing binary so the exit-code and JSON contracts are exercised too.

use std::process::{Command, Output};

use ramond_core::parse;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

const BIN: &str = env!("CARGO_BIN_EXE_ramond-cas");

type Outcome = Result<String, String>;

fn cas(args: &[&str]) -> Output {
    Command::new(BIN).args(args).output().expect("binary runs")
}

/// Runs a suite at its default bound and returns the parsed report if every check passed.
fn suite(name: &str) -> Result<Value, String> {
    let out = cas(&["verify", "--suite", name, "--canonical"]);
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| format!("unparseable report: {e}"))?;
    let summary = &report["summary"];
    let (total, failed) = (summary["total"].as_u64().unwrap_or(0), summary["failed"].as_u64().unwrap_or(u64::MAX));
    if report["schema"] != "ramond-cas/1" {
        return Err("wrong schema tag".into());
    }
    if total == 0 {
        return Err("suite ran no checks".into());
    }
    if failed != 0 || !out.status.success() {
        let first = report["checks"].as_array().into_iter().flatten().find(|c| c["status"] != "pass");
        return Err(format!("{failed} of {total} checks failed, first: {}", first.map_or(String::new(), |c| c.to_string())));
    }
    Ok(report)
}

fn ids_with_prefix(report: &Value, prefix: &str) -> usize {
    report["checks"].as_array().map_or(0, |cs| cs.iter().filter(|c| c["id"].as_str().is_some_and(|id| id.starts_with(prefix))).count())
}

fn require(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn super_jacobi() -> Outcome {
    let r = suite("jacobi")?;
    require(r["bound"] == 4, "bound is not 4")?;
    require(ids_with_prefix(&r, "compat/") > 0, "no compatibility identities checked")?;
    Ok(format!("{} checks over s, sbar, stilde with indices in [-4,4]", r["summary"]["total"]))
}

fn subalgebra_relations() -> Outcome {
    let r = suite("subalg")?;
    Ok(format!("{} closed forms, k,l <= 3, |i|,|j| <= 4", r["summary"]["total"]))
}

fn twist_subalgebra() -> Outcome {
    let t = suite("twist")?;
    let i = suite("iota")?;
    require(ids_with_prefix(&t, "centralizer/") > 0 && ids_with_prefix(&t, "twist/") > 0, "missing twist check groups")?;
    require(ids_with_prefix(&i, "iota/") == 18, "iota witnesses do not cover |m| <= 4 for L and G")?;
    Ok(format!("{} twist checks, {} preimage witnesses", t["summary"]["total"], i["summary"]["total"]))
}

fn gamma_module() -> Outcome {
    let r = suite("gamma")?;
    require(ids_with_prefix(&r, "gamma/module_axiom/") > 0, "no module-axiom checks")?;
    require(ids_with_prefix(&r, "gamma/factored") > 0, "no factored-action checks")?;
    Ok(format!("{} checks with symbolic lambda, b", r["summary"]["total"]))
}

fn differentiators() -> Outcome {
    let r = suite("omega")?;
    let mut found = Vec::new();
    for v in ["LL", "GL"] {
        let m = r["data"][format!("minimal_m/{v}")]["symbolic"].as_u64().ok_or(format!("no minimal order for {v}"))?;
        require(m <= 6, format!("{v}: minimal order {m} exceeds 6"))?;
        require(ids_with_prefix(&r, &format!("omega/annihilates/{v}")) == 3, format!("{v}: orders m*..m*+2 not all checked"))?;
        found.push(format!("{v} m*={m}"));
    }
    Ok(found.join(", "))
}

fn operator_identity() -> Outcome {
    let r = suite("identity")?;
    let limits = r["data"]["upper_limits"].as_array().ok_or("no upper-limit table")?;
    require(limits.len() == 9, "expected 3 sample points for each m <= 2")?;
    require(ids_with_prefix(&r, "omega.identity.intermediate") == 9, "intermediate form not checked at every point")?;
    let consistent = limits.iter().all(|row| row["upper_limit"].as_u64() == row["m"].as_u64().map(|m| m + 2));
    require(consistent, "resolved limit is not m+2 everywhere")?;
    Ok("resolved upper limit m+2 at all 9 points".into())
}

fn submodules() -> Outcome {
    let r = suite("submodule")?;
    for id in ["submodule/trivial_line", "submodule/trivial_line_exact", "submodule/generic"] {
        require(r["checks"].as_array().is_some_and(|cs| cs.iter().any(|c| c["id"] == id)), format!("missing {id}"))?;
    }
    let trivial = &r["data"]["lambda=0,b=0"];
    require(trivial["proper"][0]["spanning"] == serde_json::json!(["e(0,0)"]), "trivial point does not give the e(0,0) line")?;
    require(trivial["proper"].as_array().map(Vec::len) == Some(1), "extra invariant subspaces at the trivial point")?;
    Ok("e(0,0) line at lambda=b=0; generic point simple and stable on [-8,8]".into())
}

fn verma() -> Outcome {
    let r = suite("verma")?;
    require(r["bound"] == 8, "depth bound is not 8")?;
    let out = cas(&["verma", "--h", "h", "--c", "c", "--depth", "8"]);
    let v: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    require(v["dims_match_oracle"] == true && v["positive_modes_annihilate"] == true, "cli verma checks failed")?;
    require(v["g0_squared_on_v"] == "(-1/24*c - h)*v", format!("G0^2 v = {}", v["g0_squared_on_v"]))?;
    Ok(format!("dims {} match the oracle", v["dims"]))
}

fn cover() -> Outcome {
    let r = suite("cover")?;
    let points = r["data"]["dimensions"].as_array().ok_or("no dimension table")?;
    require(points.len() == 4, "expected four sample points")?;
    let stable_at: Vec<_> = points.iter().map(|p| p["stable_at"].as_i64().unwrap_or(i64::MAX)).collect();
    require(stable_at.iter().all(|k| *k <= 12), "a point did not stabilize by K=12")?;
    Ok(format!("stabilized at K = {stable_at:?}"))
}

const GENS: [&str; 6] = ["L", "G", "t", "xit", "X", "Y"];
const ATOMS: [&str; 8] = ["lambda", "b", "c", "h", "C", "xi", "d_t", "d_xi"];

fn random_expr(rng: &mut ChaCha8Rng, depth: u32) -> String {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..4) {
            0 => {
                let n = rng.gen_range(-9..10);
                if rng.gen_bool(0.5) {
                    format!("{n}")
                } else {
                    format!("{n}/{}", rng.gen_range(1..7))
                }
            }
            1 => ATOMS[rng.gen_range(0..ATOMS.len())].to_string(),
            2 => format!("e({},{})", rng.gen_range(-4..5), rng.gen_range(0..2)),
            _ => {
                let g = GENS[rng.gen_range(0..GENS.len())];
                let mut i = rng.gen_range(-5..6);
                if (g == "X" || g == "Y") && i == 0 {
                    i = 1;
                }
                format!("{g}({i})")
            }
        };
    }
    let a = random_expr(rng, depth - 1);
    let b = random_expr(rng, depth - 1);
    match rng.gen_range(0..7) {
        0 => format!("{a} + {b}"),
        1 => format!("{a} - ({b})"),
        2 => format!("({a})*({b})"),
        3 => format!("[{a}, {b}]"),
        4 => format!("-({a})"),
        5 => format!("({a})^{}", rng.gen_range(1..4)),
        _ => format!("{a}*{b}"),
    }
}

fn cli_contracts() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for k in 0..200 {
        let text = random_expr(&mut rng, 4);
        let first = parse(&text).map_err(|e| format!("corpus item {k} '{text}' rejected: {e}"))?;
        let rendered = first.to_string();
        let second = parse(&rendered).map_err(|e| format!("render of item {k} '{rendered}' rejected: {e}"))?;
        require(second.to_string() == rendered && second == first, format!("round trip changed '{text}' -> '{rendered}' -> '{second}'"))?;
    }

    let a = cas(&["verify", "--suite", "twist", "--canonical"]);
    let b = cas(&["verify", "--suite", "twist", "--canonical"]);
    require(a.stdout == b.stdout && !a.stdout.is_empty(), "canonical reports differ between runs")?;
    let timed: Value = serde_json::from_slice(&cas(&["verify", "--suite", "twist"]).stdout).map_err(|e| e.to_string())?;
    let canon: Value = serde_json::from_slice(&a.stdout).map_err(|e| e.to_string())?;
    require(timed["digest"] == canon["digest"], "digest depends on timing")?;

    require(a.status.code() == Some(0), "passing suite did not exit 0")?;
    require(cas(&["verify", "--suite", "nonesuch"]).status.code() == Some(2), "unknown suite did not exit 2")?;
    require(cas(&["verify", "--suite", "jacobi", "--bound", "0"]).status.code() == Some(2), "non-positive bound accepted")?;
    require(cas(&["act", "--expr", "X(0)", "--context", "ubar"]).status.code() == Some(2), "parse error did not exit 2")?;
    Ok("200-expression corpus round-trips; byte-identical reports; exit codes 0/2".into())
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 10] = [
        ("super-Jacobi identity in s, sbar, stilde", super_jacobi),
        ("subalgebra bracket closed forms", subalgebra_relations),
        ("twist subalgebra and preimage witnesses", twist_subalgebra),
        ("intermediate series module axioms", gamma_module),
        ("differentiators annihilate the module", differentiators),
        ("telescoped operator identity", operator_identity),
        ("invariant subspace search", submodules),
        ("Verma module dimensions and highest weight", verma),
        ("A-cover weight spaces stabilize", cover),
        ("CLI round trip, determinism, exit codes", cli_contracts),
    ];
    let mut failures = 0;
    for (n, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("PASS criterion {:>2}: {name} ({detail})", n + 1),
            Err(why) => {
                failures += 1;
                println!("FAIL criterion {:>2}: {name} ({why})", n + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failures, criteria.len());
    if failures > 0 {
        std::process::exit(1);
    }
}

//! `quatunit`: solve, bound and inspect quaternion unit equations from JSON instance files.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use quatunit::dynamics::{
    dynamics_to_unit_equation, endo_equation_check, orbit_intersection, translation_identity_sweep, BridgeOutcome,
};
use quatunit::io::{self, DynamicsRequest};
use quatunit::realalg::AlgebraicReal;
use quatunit::semigroup::{enumerate_by_length, enumerate_up_to, SemigroupSpec};
use quatunit::solver::{
    brute_force_oracle, locus_bound, matrix_counterexample, reduction_bound, solve_locus, solve_main,
    solve_reduction, SolveConfig,
};
use quatunit::{report, Error};

#[derive(Parser, Debug)]
#[command(name = "quatunit", version, about = "Exact solver for quaternion unit equations a·f·a' + b·g·b' = 1")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    run: RunFlags,
}

#[derive(Args, Debug, Clone)]
struct RunFlags {
    /// Instance or request file (JSON).
    #[arg(long, global = true)]
    input: Option<PathBuf>,
    /// Longest word searched in each semigroup.
    #[arg(long, global = true, default_value_t = 12)]
    oracle_len: usize,
    /// Working precision for certified interval evaluation.
    #[arg(long, global = true, default_value_t = 128, value_parser = clap::value_parser!(u32).range(32..))]
    precision_bits: u32,
    /// Maximum number of distinct elements an enumeration may visit (e.g. 1e7).
    #[arg(long, global = true, default_value = "1e7", value_parser = parse_count)]
    element_cap: u64,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads; defaults to all cores.
    #[arg(long, global = true, env = "QUATUNIT_THREADS")]
    threads: Option<usize>,
    /// Suppress the summary line on stderr.
    #[arg(short, long, global = true)]
    quiet: bool,
}

#[derive(Subcommand, Debug, Clone)]
enum Command {
    /// All solutions in the window, with reduction and locus certificates.
    Solve,
    /// Solutions off the hyperplane |1 − afa'| = |afa'|.
    Reduce,
    /// Elements of Γ on the hyperplane 2⟨d, f⟩ = N(d).
    Locus,
    /// Brute-force reference search over both semigroups.
    Oracle,
    /// List semigroup elements by word length, or by norm with --bound-sq.
    Enumerate {
        /// Norm bound (rational literal such as "256" or "81/4").
        #[arg(long)]
        bound_sq: Option<String>,
    },
    /// Certificates only, without any search.
    Bound,
    /// Elliptic-curve dynamics and the passage to unit equations.
    Dynamics {
        #[arg(value_enum)]
        op: DynamicsOp,
    },
    /// Unitriangular 2×2 matrices with 2f − f² = 1.
    MatrixDemo {
        #[arg(long, default_value_t = 10, value_parser = clap::value_parser!(i64).range(1..=100_000))]
        n_max: i64,
    },
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum DynamicsOp {
    Identity,
    Orbit,
    Bridge,
    EndoCheck,
}

impl DynamicsOp {
    fn name(self) -> &'static str {
        match self {
            DynamicsOp::Identity => "identity",
            DynamicsOp::Orbit => "orbit",
            DynamicsOp::Bridge => "bridge",
            DynamicsOp::EndoCheck => "endo-check",
        }
    }
}

fn parse_count(s: &str) -> Result<u64, String> {
    let bad = || format!("`{s}` is not a positive count");
    let v = match s.split_once(['e', 'E']) {
        Some((m, e)) => {
            let m: u64 = m.parse().map_err(|_| bad())?;
            let e: u32 = e.parse().map_err(|_| bad())?;
            10u64.checked_pow(e).and_then(|p| p.checked_mul(m)).ok_or_else(bad)?
        }
        None => s.parse().map_err(|_| bad())?,
    };
    if v == 0 {
        return Err(bad());
    }
    Ok(v)
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 2,
        Error::PrecisionFailure { .. } => 3,
        _ => 1,
    }
}

impl Command {
    fn name(&self) -> String {
        match self {
            Command::Solve => "solve".into(),
            Command::Reduce => "reduce".into(),
            Command::Locus => "locus".into(),
            Command::Oracle => "oracle".into(),
            Command::Enumerate { .. } => "enumerate".into(),
            Command::Bound => "bound".into(),
            Command::Dynamics { op } => format!("dynamics {}", op.name()),
            Command::MatrixDemo { .. } => "matrix-demo".into(),
        }
    }
}

/// The resolved configuration echoed into every report. The thread count is
/// left out so reports are identical across thread counts.
fn config_json(cli: &Cli) -> Value {
    let mut cfg = json!({
        "subcommand": cli.command.name(),
        "input": cli.run.input.as_ref().map(|p| p.display().to_string()),
        "oracle_len": cli.run.oracle_len,
        "precision_bits": cli.run.precision_bits,
        "element_cap": cli.run.element_cap,
        "output": cli.run.output.as_ref().map(|p| p.display().to_string()),
    });
    match &cli.command {
        Command::Enumerate { bound_sq } => cfg["bound_sq"] = json!(bound_sq),
        Command::MatrixDemo { n_max } => cfg["n_max"] = json!(n_max),
        _ => {}
    }
    cfg
}

fn read_input(run: &RunFlags) -> quatunit::Result<Value> {
    let path = run
        .input
        .as_ref()
        .ok_or_else(|| Error::parse("--input", "this subcommand needs an input file"))?;
    let text = fs::read_to_string(path)
        .map_err(|e| Error::parse("--input", format!("cannot read {}: {e}", path.display())))?;
    io::parse_json(&text)
}

/// A semigroup file, or the Γ₁ of an instance file.
fn read_semigroup(v: &Value) -> quatunit::Result<SemigroupSpec> {
    match v.get("gamma1") {
        Some(g) => io::parse_semigroup(g).map_err(|e| e.at("gamma1")),
        None => io::parse_semigroup(v),
    }
}

struct Outcome {
    body: Value,
    summary: String,
}

fn run(cli: &Cli) -> quatunit::Result<Outcome> {
    let r = &cli.run;
    let cfg = SolveConfig {
        oracle_len: r.oracle_len,
        precision_bits: r.precision_bits,
        element_cap: r.element_cap,
    };
    match &cli.command {
        Command::Solve | Command::Reduce | Command::Oracle => {
            let inst = io::parse_instance(&read_input(r)?)?;
            let set = match cli.command {
                Command::Solve => solve_main(&inst, &cfg)?,
                Command::Reduce => solve_reduction(&inst, &cfg)?,
                _ => brute_force_oracle(&inst, cfg.oracle_len, cfg.element_cap)?,
            };
            Ok(Outcome {
                summary: format!("{} solution(s), {}", set.solutions.len(), set.completeness_status.as_str()),
                body: report::solution_set_json(&set, &inst.gamma1, &inst.gamma2),
            })
        }
        Command::Locus => {
            let inst = io::parse_locus_instance(&read_input(r)?)?;
            let sols = solve_locus(&inst, &cfg)?;
            Ok(Outcome {
                summary: format!("{} element(s) on the hyperplane", sols.solutions.len()),
                body: report::locus_solutions_json(&sols, &inst.gamma, cfg.oracle_len),
            })
        }
        Command::Enumerate { bound_sq } => {
            let spec = read_semigroup(&read_input(r)?)?;
            let elements = match bound_sq {
                Some(b) => {
                    let b = io::parse_rat(&Value::String(b.clone())).map_err(|e| e.at("--bound-sq"))?;
                    enumerate_up_to(&spec, &AlgebraicReal::from_rat(b), cfg.element_cap)?
                }
                None => enumerate_by_length(&spec, cfg.oracle_len, cfg.element_cap)?,
            };
            Ok(Outcome {
                summary: format!("{} element(s)", elements.len()),
                body: json!({
                    "elements": elements.iter().map(|e| report::element_json(e, &spec)).collect::<Vec<_>>(),
                    "element_count": elements.len(),
                    "commutative": spec.is_commutative(),
                }),
            })
        }
        Command::Bound => {
            let inst = io::parse_instance(&read_input(r)?)?;
            let red = reduction_bound(&inst, cfg.precision_bits)?;
            let locus = if inst.gamma1.is_commutative() {
                Some(report::locus_json(&locus_bound(&inst.locus(), cfg.precision_bits)?))
            } else {
                None
            };
            let mut body = report::reduction_json(&red);
            body["locus"] = json!(locus);
            Ok(Outcome {
                summary: format!("H_cap {}", report::cap_json(&red.h_cap)["value"].as_str().unwrap_or("?")),
                body: json!({ "certificate": body }),
            })
        }
        Command::Dynamics { op } => run_dynamics(io::parse_dynamics(op.name(), &read_input(r)?)?, &cfg),
        Command::MatrixDemo { n_max } => {
            let pairs = matrix_counterexample(*n_max);
            let verified = pairs.iter().filter(|p| p.verified).count();
            if verified != pairs.len() {
                return Err(Error::PreconditionFailed("a matrix pair failed 2f − g = 1".into()));
            }
            Ok(Outcome {
                summary: format!("{verified} pair(s) verified"),
                body: json!({
                    "pairs": pairs.iter().map(|p| json!({
                        "n": p.n,
                        "f": p.f.to_json(),
                        "g": p.g.to_json(),
                        "verified": p.verified,
                    })).collect::<Vec<_>>(),
                    "verified_count": verified,
                }),
            })
        }
    }
}

fn run_dynamics(req: DynamicsRequest, cfg: &SolveConfig) -> quatunit::Result<Outcome> {
    match req {
        DynamicsRequest::Identity { curve, h, n_max, trials, seed } => {
            let c = translation_identity_sweep(&curve, &h, n_max, trials, seed)?;
            Ok(Outcome {
                summary: format!("{} check(s), {} failure(s)", c.checks, c.failures),
                body: json!({
                    "h": h.to_json(),
                    "checks": c.checks,
                    "failures": c.failures,
                    "holds": c.holds(),
                    "seed": seed,
                }),
            })
        }
        DynamicsRequest::Orbit { curve, f, g, a, b, max_iter } => {
            let pairs = orbit_intersection(&curve, &f, &g, &a, &b, max_iter)?;
            Ok(Outcome {
                summary: format!("{} intersection pair(s)", pairs.len()),
                body: json!({ "pairs": pairs, "pair_count": pairs.len() }),
            })
        }
        DynamicsRequest::EndoCheck { f, h, m0, n0, m, n } => {
            let c = endo_equation_check(&f, &h, m0, n0, m, n)?;
            Ok(Outcome {
                summary: format!("relation {} at (m, n) = ({m}, {n})", if c.holds { "holds" } else { "fails" }),
                body: json!({
                    "u": c.u.to_json(),
                    "d": c.d.to_string(),
                    "holds": c.holds,
                    "common_iterate": c.common_iterate,
                }),
            })
        }
        DynamicsRequest::Bridge { f, h, m0, n0 } => match dynamics_to_unit_equation(&f, &h, m0, n0)? {
            BridgeOutcome::CommonIterate { u, d } => Ok(Outcome {
                summary: "common iterate".into(),
                body: json!({"outcome": "common_iterate", "u": u.to_json(), "d": d.to_string()}),
            }),
            BridgeOutcome::Instance { u, d, instance } => {
                let main = solve_main(&instance, cfg)?;
                let oracle = brute_force_oracle(&instance, cfg.oracle_len, cfg.element_cap)?;
                let consistent = main.solutions == oracle.solutions;
                Ok(Outcome {
                    summary: format!(
                        "unit equation with {} solution(s) in the window, oracle {}",
                        main.solutions.len(),
                        if consistent { "agrees" } else { "disagrees" }
                    ),
                    body: json!({
                        "outcome": "instance",
                        "u": u.to_json(),
                        "d": d.to_string(),
                        "instance": io::instance_to_json(&instance),
                        "solve": report::solution_set_json(&main, &instance.gamma1, &instance.gamma2),
                        "oracle_solution_count": oracle.solutions.len(),
                        "consistent_with_oracle": consistent,
                    }),
                })
            }
        },
    }
}

fn emit(cli: &Cli, out: Outcome) -> std::io::Result<()> {
    let mut report = out.body;
    report["config"] = config_json(cli);
    let mut text = serde_json::to_string_pretty(&report).expect("JSON values serialize");
    text.push('\n');
    match &cli.run.output {
        Some(p) => fs::write(p, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    if !cli.run.quiet {
        eprintln!("quatunit {}: {}", cli.command.name(), out.summary);
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Some(n) = cli.run.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: cannot start {n} worker threads: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(out) => match emit(&cli, out) {
            Ok(()) => ExitCode::SUCCESS,
            Err(e) => {
                eprintln!("error: cannot write report: {e}");
                ExitCode::from(1)
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(parse_count("1e7"), Ok(10_000_000));
        assert_eq!(parse_count("250"), Ok(250));
        assert_eq!(parse_count("3E2"), Ok(300));
        assert!(parse_count("0").is_err());
        assert!(parse_count("1e30").is_err());
        assert!(parse_count("x").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(exit_code(&Error::ResourceLimit { what: "elements", limit: 1 }), 2);
        assert_eq!(exit_code(&Error::PrecisionFailure { bits: 65536 }), 3);
        assert_eq!(exit_code(&Error::NormNotAboveOne { index: 0 }), 1);
        assert_eq!(exit_code(&Error::parse("a", "b")), 1);
    }

    #[test]
    fn flags_parse_in_any_position() {
        let cli = Cli::try_parse_from(["quatunit", "solve", "--input", "x.json", "--oracle-len", "30"]).unwrap();
        assert_eq!(cli.run.oracle_len, 30);
        assert_eq!(cli.run.element_cap, 10_000_000);
        let cli = Cli::try_parse_from(["quatunit", "--quiet", "dynamics", "endo-check"]).unwrap();
        assert!(cli.run.quiet);
        assert!(Cli::try_parse_from(["quatunit", "solve", "--precision-bits", "16"]).is_err());
        let v = config_json(&Cli::try_parse_from(["quatunit", "matrix-demo", "--n-max", "5"]).unwrap());
        assert_eq!(v["n_max"], 5);
        assert!(v.get("threads").is_none());
    }
}

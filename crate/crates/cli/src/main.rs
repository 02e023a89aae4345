//! Command-line front end: kernel generation, exact verification suites,
//! cycle diagnostics, and numeric regulator / Abel–Jacobi evaluation.
//!
//! Exit codes: 0 success/admissible, 1 parse or I/O error, 2 inadmissible
//! cycle, 3 verification-identity failure, 4 numeric failure.

mod render;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use deligne::abel_jacobi::{aj_p, is_homologous_to_zero, torsion_order, AjError};
use deligne::chow_cycles::expr::{cycle_to_json, point_cycle_to_json};
use deligne::chow_cycles::{load_cycle_file, CycleError, LoadedCycle};
use deligne::coefficients::C64;
use deligne::formal_currents::{build_rc, build_rp};
use deligne::real_arcs::real_admissibility_report;
use deligne::regulator_engine::{cross_checks, regulate_c, regulate_p, EngineError, Payload};

#[derive(Parser)]
#[command(
    name = "deligne",
    about = "Regulator maps from cubical higher Chow chains into Deligne complexes over a point"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Machine-readable JSON output (byte-identical across identical runs).
    #[arg(long, global = true)]
    json: bool,
    /// Absolute tolerance for quadrature and numeric checks.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Decimal digits for numeric rendering of exact values.
    #[arg(long, global = true, default_value_t = 12)]
    digits: u32,
    /// Seed for the randomized property suites.
    #[arg(long, global = true, default_value_t = 0x5eed)]
    seed: u64,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Path,
    Triple,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Print the kernel R^n in the path or 3-term presentation, exactly.
    GenerateRn {
        #[arg(short, long)]
        n: usize,
        #[arg(long, value_enum, default_value = "path")]
        model: ModelArg,
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
    },
    /// Run an exact identity suite; exit 3 on any failure.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 6)]
        max_n: usize,
    },
    /// Bloch boundary of a cycle file.
    Boundary {
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Admissibility report (algebraic and real); exit 2 when inadmissible.
    Admissible {
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Alternation projector applied to a cycle file.
    Alt {
        #[arg(long)]
        cycle: PathBuf,
    },
    /// Numerically evaluate the regulator of a cycle.
    Regulate {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long, value_enum, default_value = "path")]
        model: ModelArg,
        /// Also run the ev/alt/S_n cross-checks.
        #[arg(long)]
        checks: bool,
    },
    /// Abel–Jacobi value modulo (2πi)^p Z, with torsion detection.
    AbelJacobi {
        #[arg(long)]
        cycle: PathBuf,
        #[arg(long, default_value_t = 100)]
        torsion_max: u64,
    },
}

const EXIT_PARSE: u8 = 1;
const EXIT_INADMISSIBLE: u8 = 2;
const EXIT_VERIFY: u8 = 3;
const EXIT_NUMERIC: u8 = 4;

fn complex_json(z: C64) -> Value {
    json!({"re": z.re, "im": z.im})
}

fn payload_json(payload: &Payload) -> Value {
    match payload {
        Payload::Path(p) => json!({
            "kind": "path",
            "f": p.f.iter().map(|c| complex_json(*c)).collect::<Vec<_>>(),
            "g": p.g.iter().map(|c| complex_json(*c)).collect::<Vec<_>>(),
        }),
        Payload::Triple(t) => json!({
            "kind": "triple",
            "a": complex_json(t.a),
            "b": complex_json(t.b),
            "c": complex_json(t.c),
        }),
    }
}

fn cycle_error_exit(e: &CycleError) -> u8 {
    match e {
        CycleError::Parse(_) => EXIT_PARSE,
        CycleError::Containment(_) | CycleError::Improper(_) | CycleError::Degenerate(_) => {
            EXIT_INADMISSIBLE
        }
        _ => EXIT_NUMERIC,
    }
}

fn engine_error_exit(e: &EngineError) -> u8 {
    match e {
        EngineError::Inadmissible(_) => EXIT_INADMISSIBLE,
        _ => EXIT_NUMERIC,
    }
}

fn emit(report: Value, human: String, json_mode: bool) {
    if json_mode {
        println!("{}", report);
    } else {
        println!("{}", human);
    }
}

fn run(cli: &Cli) -> u8 {
    match &cli.command {
        Command::GenerateRn { n, model, format } => {
            if *n < 1 || *n > 12 {
                eprintln!("error: n must be in 1..=12, got {}", n);
                return EXIT_PARSE;
            }
            match (model, format) {
                (ModelArg::Path, FormatArg::Text) => {
                    println!("{}", render::render_path_sum(&build_rp(*n)));
                }
                (ModelArg::Path, FormatArg::Json) => {
                    let sum = build_rp(*n);
                    let report = json!({
                        "command": "generate-rn",
                        "inputs": {"n": n, "model": "path"},
                        "results": {
                            "terms": render::path_sum_json(&sum),
                            "term_counts": {
                                "dx0": sum.term_count_by_dx_degree(0),
                                "dx1": sum.term_count_by_dx_degree(1),
                            },
                        },
                    });
                    println!("{}", report);
                }
                (ModelArg::Triple, FormatArg::Text) => {
                    println!("{}", render::render_triple(&build_rc(*n)));
                }
                (ModelArg::Triple, FormatArg::Json) => {
                    let report = json!({
                        "command": "generate-rn",
                        "inputs": {"n": n, "model": "triple"},
                        "results": render::triple_json(&build_rc(*n)),
                    });
                    println!("{}", report);
                }
            }
            0
        }
        Command::Verify { suite, max_n } => {
            if *max_n > 8 {
                eprintln!("error: max-n must be at most 8");
                return EXIT_PARSE;
            }
            let started = Instant::now();
            let lines = match suites::run_suite(suite, *max_n, cli.seed) {
                Ok(lines) => lines,
                Err(msg) => {
                    eprintln!("error: {}", msg);
                    return EXIT_PARSE;
                }
            };
            let all_pass = lines.iter().all(|l| l.pass);
            if cli.json {
                let report = json!({
                    "command": "verify",
                    "inputs": {"suite": suite, "max_n": max_n, "seed": cli.seed},
                    "checks": suites::to_json(&lines),
                    "results": {"pass": all_pass},
                });
                println!("{}", report);
            } else {
                for l in &lines {
                    println!("{} {} ({})", if l.pass { "PASS" } else { "FAIL" }, l.name, l.detail);
                }
                println!(
                    "{}: {} checks in {:.2?}",
                    if all_pass { "all passed" } else { "FAILURES" },
                    lines.len(),
                    started.elapsed()
                );
            }
            if all_pass {
                0
            } else {
                EXIT_VERIFY
            }
        }
        Command::Boundary { cycle } => {
            let loaded = match load_cycle_file(cycle) {
                Ok(z) => z,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return cycle_error_exit(&e);
                }
            };
            let result = match &loaded {
                LoadedCycle::Exact(z) => z.bloch_boundary().map(|b| point_cycle_to_json(&b)),
                LoadedCycle::Numeric(z) => z.bloch_boundary().map(|b| point_cycle_to_json(&b)),
            };
            match result {
                Ok(points) => {
                    let report = json!({
                        "command": "boundary",
                        "inputs": {"cycle": cycle.display().to_string()},
                        "results": points,
                    });
                    let human = serde_json::to_string_pretty(&report["results"]).unwrap();
                    emit(report, human, cli.json);
                    0
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    cycle_error_exit(&e)
                }
            }
        }
        Command::Admissible { cycle } => {
            let loaded = match load_cycle_file(cycle) {
                Ok(z) => z,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return cycle_error_exit(&e);
                }
            };
            let (algebraic, real) = match &loaded {
                LoadedCycle::Exact(z) => {
                    (z.is_admissible(), real_admissibility_report(z, cli.tol))
                }
                LoadedCycle::Numeric(z) => {
                    (z.is_admissible(), real_admissibility_report(z, cli.tol))
                }
            };
            let ok = algebraic.admissible() && real.admissible();
            let report = json!({
                "command": "admissible",
                "inputs": {"cycle": cycle.display().to_string(), "tol": cli.tol},
                "results": {
                    "admissible": ok,
                    "algebraic_violations": algebraic.violations,
                    "degenerate": algebraic.degenerate,
                    "real_violations": real.violations,
                },
            });
            let human = if ok {
                "admissible".to_string()
            } else {
                format!(
                    "inadmissible:\n{}",
                    algebraic
                        .violations
                        .iter()
                        .chain(real.violations.iter())
                        .map(|v| format!("  - {}", v))
                        .collect::<Vec<_>>()
                        .join("\n")
                )
            };
            emit(report, human, cli.json);
            if ok {
                0
            } else {
                EXIT_INADMISSIBLE
            }
        }
        Command::Alt { cycle } => {
            let loaded = match load_cycle_file(cycle) {
                Ok(z) => z,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return cycle_error_exit(&e);
                }
            };
            let alternated = match &loaded {
                LoadedCycle::Exact(z) => cycle_to_json(&z.alt_cycle()),
                LoadedCycle::Numeric(z) => cycle_to_json(&z.alt_cycle()),
            };
            let report = json!({
                "command": "alt",
                "inputs": {"cycle": cycle.display().to_string()},
                "results": alternated,
            });
            let human = serde_json::to_string_pretty(&report["results"]).unwrap();
            emit(report, human, cli.json);
            0
        }
        Command::Regulate { cycle, model, checks } => {
            let loaded = match load_cycle_file(cycle) {
                Ok(z) => z,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return cycle_error_exit(&e);
                }
            };
            let numeric = loaded.to_numeric();
            let result = match model {
                ModelArg::Path => regulate_p(&numeric, cli.tol),
                ModelArg::Triple => regulate_c(&numeric, cli.tol),
            };
            let value = match result {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return engine_error_exit(&e);
                }
            };
            let mut check_values = Vec::new();
            if *checks {
                match cross_checks(&numeric, cli.tol, (cli.tol * 100.0).max(1e-8)) {
                    Ok(report) => {
                        for c in report.checks {
                            check_values.push(json!({
                                "name": c.name,
                                "max_abs_diff": c.max_abs_diff,
                                "tol": c.tol,
                                "pass": c.pass,
                            }));
                        }
                    }
                    Err(e) => {
                        eprintln!("error running cross-checks: {}", e);
                        return engine_error_exit(&e);
                    }
                }
            }
            let integral = value.integral();
            let report = json!({
                "command": "regulate",
                "inputs": {
                    "cycle": cycle.display().to_string(),
                    "model": match model { ModelArg::Path => "path", ModelArg::Triple => "triple" },
                    "tol": cli.tol,
                },
                "results": {
                    "model": match value.model {
                        deligne::regulator_engine::Model::Path => "path",
                        deligne::regulator_engine::Model::Triple => "triple",
                    },
                    "p": value.p,
                    "n": value.n,
                    "payload": payload_json(&value.payload),
                    "integral": complex_json(integral),
                    "error_estimate": value.total_error(),
                },
                "checks": check_values,
            });
            let human = format!(
                "regulator ({} model, p = {}, n = {}):\n{}\nintegral over [0,1]: {} + {}i\nerror estimate: {:.3e}",
                match value.model {
                    deligne::regulator_engine::Model::Path => "path",
                    deligne::regulator_engine::Model::Triple => "triple",
                },
                value.p,
                value.n,
                serde_json::to_string_pretty(&payload_json(&value.payload)).unwrap(),
                integral.re,
                integral.im,
                value.total_error()
            );
            emit(report, human, cli.json);
            let failed = !check_values
                .iter()
                .all(|c| c["pass"].as_bool().unwrap_or(true));
            if failed {
                EXIT_NUMERIC
            } else {
                0
            }
        }
        Command::AbelJacobi { cycle, torsion_max } => {
            let loaded = match load_cycle_file(cycle) {
                Ok(z) => z,
                Err(e) => {
                    eprintln!("error: {}", e);
                    return cycle_error_exit(&e);
                }
            };
            let numeric = loaded.to_numeric();
            let homologous = match is_homologous_to_zero(&numeric) {
                Ok(r) => r,
                Err(AjError::NonClosed) => {
                    eprintln!("error: cycle is not closed (nonzero Bloch boundary)");
                    return EXIT_INADMISSIBLE;
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    return EXIT_NUMERIC;
                }
            };
            if !homologous.homologous {
                eprintln!("error: {}", homologous.reason);
                return EXIT_INADMISSIBLE;
            }
            let value = match aj_p(&numeric, cli.tol) {
                Ok(v) => v,
                Err(AjError::Engine(e)) => {
                    eprintln!("error: {}", e);
                    return engine_error_exit(&e);
                }
                Err(e) => {
                    eprintln!("error: {}", e);
                    return EXIT_NUMERIC;
                }
            };
            let order = torsion_order(&value, *torsion_max, (cli.tol * 1e2).max(1e-6));
            let report = json!({
                "command": "abel-jacobi",
                "inputs": {
                    "cycle": cycle.display().to_string(),
                    "torsion_max": torsion_max,
                    "tol": cli.tol,
                },
                "results": {
                    "value": complex_json(value.raw),
                    "reduced": complex_json(value.value),
                    "lattice": format!("(2*pi*i)^{} Z", value.weight),
                    "torsion_order": order,
                    "homologous_to_zero": homologous.reason,
                },
            });
            let human = format!(
                "AJ value: {} + {}i  (mod (2πi)^{} Z)\nreduced:  {} + {}i\ntorsion order ≤ {}: {}",
                value.raw.re,
                value.raw.im,
                value.weight,
                value.value.re,
                value.value.im,
                torsion_max,
                order.map(|o| o.to_string()).unwrap_or_else(|| "none".into())
            );
            emit(report, human, cli.json);
            0
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    ExitCode::from(run(&cli))
}

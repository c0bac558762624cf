use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use vml_core::harness::{run_suite, suite_ok, Report, SuiteConfig, DEFAULT_CASES};
use vml_core::interp::{unit_point, CheckConfig, Checker, Interp};
use vml_core::syntax::{
    check_tm, check_ty, parse_file, parse_ty_or_tm, print_judgment, resolve, well_scoped, Ctx, Phrase, Pos,
};
use vml_core::zf::{literal, Verdict, DEFAULT_FUEL, DEFAULT_NAT_BOUND};

#[derive(Parser)]
#[command(
    name = "vml",
    version,
    about = "Check judgments of extensional type theory in a model built from iterative sets"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    opts: Opts,
}

#[derive(Args, Clone, Copy)]
struct Opts {
    /// Recursion budget per equality or membership question.
    #[arg(long, global = true, default_value_t = DEFAULT_FUEL, value_parser = clap::value_parser!(u64).range(1..))]
    fuel: u64,
    /// How many numerals to probe when quantifying over Nat.
    #[arg(long, global = true, default_value_t = DEFAULT_NAT_BOUND, value_parser = clap::value_parser!(u64).range(1..))]
    nat_bound: u64,
    /// Base seed for generated instances.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Machine-readable output.
    #[arg(long, global = true)]
    json: bool,
    /// Log each point visited while checking.
    #[arg(long, global = true)]
    trace: bool,
}

impl Opts {
    fn check_config(&self) -> CheckConfig {
        CheckConfig {
            fuel: self.fuel,
            nat_bound: self.nat_bound,
            trace: self.trace,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Check every judgment in the given .vml files.
    Check {
        #[arg(required = true)]
        paths: Vec<PathBuf>,
    },
    /// Print the set a closed type or term denotes.
    Eval {
        /// An expression, or a file containing one.
        expr: String,
    },
    /// Run the rule-soundness suite.
    Suite {
        /// Instances per rule.
        #[arg(long, default_value_t = DEFAULT_CASES)]
        cases: usize,
        /// Worker threads (0: one per core).
        #[arg(long, default_value_t = 0)]
        threads: usize,
        /// Add a deliberately unsound rule.
        #[arg(long, hide = true)]
        inject_broken: bool,
    },
}

const EXIT_FAILS: u8 = 1;
const EXIT_UNKNOWN: u8 = 2;
const EXIT_SYNTAX: u8 = 3;

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Check { paths } => cmd_check(&paths, &cli.opts),
        Command::Eval { expr } => cmd_eval(&expr, &cli.opts),
        Command::Suite {
            cases,
            threads,
            inject_broken,
        } => cmd_suite(cases, threads, inject_broken, &cli.opts),
    };
    ExitCode::from(code)
}

#[derive(Serialize)]
struct CheckLine {
    file: String,
    line: usize,
    col: usize,
    judgment: String,
    verdict: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

#[derive(Serialize)]
struct CheckOutput {
    exit: u8,
    results: Vec<CheckLine>,
    errors: Vec<String>,
}

fn cmd_check(paths: &[PathBuf], opts: &Opts) -> u8 {
    let cfg = opts.check_config();
    let mut results = Vec::new();
    let mut errors = Vec::new();
    let mut verdicts = Vec::new();
    for path in paths {
        let judgments = match load(path) {
            Ok(js) => js,
            Err(e) => {
                errors.push(e);
                continue;
            }
        };
        // One checker per file so contexts shared by its judgments are
        // interpreted once.
        let checker = Checker::new(&cfg);
        for (j, pos) in judgments {
            let v = checker.check(&j);
            let reason = match &v {
                Verdict::Fails(r) => Some(r.clone()),
                _ => None,
            };
            results.push(CheckLine {
                file: path.display().to_string(),
                line: pos.line,
                col: pos.col,
                judgment: print_judgment(&j),
                verdict: v.label(),
                reason,
            });
            verdicts.push(v);
        }
    }
    let exit = if !errors.is_empty() {
        EXIT_SYNTAX
    } else if verdicts.iter().any(Verdict::is_fails) {
        EXIT_FAILS
    } else if verdicts.iter().all(Verdict::is_holds) {
        0
    } else {
        EXIT_UNKNOWN
    };
    if opts.json {
        let out = CheckOutput { exit, results, errors };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        for r in &results {
            println!("{}:{}:{}: {}", r.file, r.line, r.col, r.verdict);
            if let Some(why) = &r.reason {
                println!("    {why}");
            }
        }
        for e in &errors {
            eprintln!("{e}");
        }
    }
    exit
}

/// Parses, resolves and scope-checks a file.
fn load(path: &Path) -> Result<Vec<(vml_core::syntax::Judg, Pos)>, String> {
    let src = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    let file = parse_file(&src).map_err(|e| format!("{}:{e}", path.display()))?;
    let js = resolve(&file).map_err(|e| format!("{}:{e}", path.display()))?;
    for (j, pos) in &js {
        well_scoped(j).map_err(|e| format!("{}:{pos}: scope error: {e}", path.display()))?;
    }
    Ok(js)
}

fn cmd_eval(expr: &str, opts: &Opts) -> u8 {
    let src = match Path::new(expr).is_file() {
        true => match std::fs::read_to_string(expr) {
            Ok(s) => s,
            Err(e) => {
                eprintln!("{expr}: {e}");
                return EXIT_SYNTAX;
            }
        },
        false => expr.to_string(),
    };
    let phrase = match parse_ty_or_tm(&src) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("{e}");
            return EXIT_SYNTAX;
        }
    };
    let scoped = match &phrase {
        Phrase::Ty(a) => check_ty(&Ctx::Empty, a),
        Phrase::Tm(t) => check_tm(&Ctx::Empty, t),
    };
    if let Err(e) = scoped {
        eprintln!("scope error: {e}");
        return EXIT_SYNTAX;
    }
    let interp = Interp::new(opts.check_config().budget());
    let x = unit_point();
    let value = match &phrase {
        Phrase::Ty(a) => interp.ty(&Ctx::Empty, a, &x),
        Phrase::Tm(t) => interp.tm(&Ctx::Empty, t, &x),
    };
    match value {
        Ok(v) => {
            let text = literal::print(&v);
            if opts.json {
                println!("{}", serde_json::json!({ "value": text }));
            } else {
                println!("{text}");
            }
            0
        }
        Err(e) => {
            eprintln!("{e}");
            EXIT_FAILS
        }
    }
}

#[derive(Serialize)]
struct SuiteOutput<'a> {
    ok: bool,
    seed: u64,
    cases_per_rule: usize,
    reports: &'a [Report],
}

fn cmd_suite(cases: usize, threads: usize, inject_broken: bool, opts: &Opts) -> u8 {
    let mut cfg = SuiteConfig {
        check: CheckConfig {
            trace: false,
            ..opts.check_config()
        },
        cases,
        seed: opts.seed,
        inject_broken,
        ..SuiteConfig::default()
    };
    if threads > 0 {
        cfg.threads = threads;
    }
    let reports = run_suite(&cfg);
    let ok = suite_ok(&reports);
    if opts.json {
        let out = SuiteOutput {
            ok,
            seed: cfg.seed,
            cases_per_rule: cases,
            reports: &reports,
        };
        println!("{}", serde_json::to_string_pretty(&out).expect("serializable"));
    } else {
        println!(
            "{:<16} {:>5} {:>7} {:>5} {:>7} {:>13} {:>15}",
            "rule", "holds", "bounded", "fails", "unknown", "premise_fails", "premise_unknown"
        );
        for r in &reports {
            let flag = if !r.sound() {
                "  UNSOUND"
            } else if r.vacuous() {
                "  VACUOUS"
            } else {
                ""
            };
            println!(
                "{:<16} {:>5} {:>7} {:>5} {:>7} {:>13} {:>15}{flag}",
                r.rule, r.holds, r.bounded, r.fails, r.unknown, r.premise_fails, r.premise_unknown
            );
            for f in &r.failures {
                println!("    seed {}: {}\n      {}", f.seed, f.conclusion, f.reason);
            }
        }
        let unsound = reports.iter().filter(|r| !r.sound()).count();
        let vacuous = reports.iter().filter(|r| r.vacuous()).count();
        println!(
            "{} rules, {} cases: {} unsound, {} vacuous",
            reports.len(),
            reports.iter().map(Report::cases).sum::<usize>(),
            unsound,
            vacuous
        );
    }
    if ok {
        0
    } else {
        EXIT_FAILS
    }
}

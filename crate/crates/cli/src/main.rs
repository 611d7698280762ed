//! `rmatch`: generate, check, solve and sweep balanced r-partite hypergraphs.
//!
//! Exit codes: 0 success or condition holds, 1 condition fails or trace
//! rejected, 2 usage or input error, 3 degree condition violated, 4 no perfect
//! matching, 5 oracle budget exhausted.

mod sweep;

use std::fs;
use std::io::{self, Read};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rmatch_core::conditions::{
    check_fractional_condition, check_itupl_condition, check_ko_threshold, check_latin_property,
    check_main_condition, check_vertex_degree, default_vertex_fraction, ConditionReport,
};
use rmatch_core::fractional::{
    analyze_cover, decompose_complete_multipartite, nu_star, tau_star, CoverBranch,
};
use rmatch_core::generators::{gen_parity_sharpness, Family, GeneratorSpec, LatinRule};
use rmatch_core::matcher::{admissible_sides, find_perfect_matching, verify_trace, TraceFile};
use rmatch_core::oracle::{max_matching, DEFAULT_BUDGET};
use rmatch_core::rational::{format_pq, parse_rational};
use rmatch_core::text::{parse_hypergraph, write_hypergraph};
use rmatch_core::{Error, Hypergraph};

#[derive(Parser)]
#[command(name = "rmatch", version, about = "Perfect matchings in balanced r-partite r-graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Emit a generated hypergraph in the text format.
    Gen {
        #[command(subcommand)]
        family: GenFamily,
        /// Echo the generator parameters as a comment header.
        #[arg(long, global = true)]
        spec: bool,
    },
    /// Check a degree condition; exit 0 if it holds, 1 if not.
    Check {
        file: String,
        #[arg(long, value_enum)]
        condition: ConditionKind,
        /// Side whose avoiding tuples need degree > n/2 (main).
        #[arg(long)]
        strict: Option<usize>,
        /// Side whose avoiding tuples need degree >= n/2 (main).
        #[arg(long)]
        weak: Option<usize>,
        /// The side subset I (ituple, fractional), e.g. `--I 0` or `--I 0,1`.
        #[arg(long = "I", value_delimiter = ',', num_args = 1..)]
        sides: Vec<usize>,
        /// Require theta + zeta > 1 instead of >= 1 (fractional).
        #[arg(long)]
        gt: bool,
        /// Vertex degree fraction as p/q (vertex).
        #[arg(long)]
        fraction: Option<String>,
    },
    /// Find a perfect matching and print its trace file.
    Match { file: String },
    /// Exact maximum matching by branch and bound.
    Oracle {
        file: String,
        /// Node budget; defaults to RMATCH_BUDGET or 10^7.
        #[arg(long, env = "RMATCH_BUDGET")]
        budget: Option<u64>,
    },
    /// Fractional matching and cover numbers.
    Lp {
        file: String,
        /// Also check the fractional condition for I and analyse the optimal cover.
        #[arg(long = "I", value_delimiter = ',', num_args = 1..)]
        sides: Vec<usize>,
        /// Print the optimal weights.
        #[arg(long)]
        weights: bool,
    },
    /// Partition the complete k-partite k-graph into perfect matchings.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Replay a trace file against a hypergraph.
    #[command(name = "verify_trace", alias = "verify-trace")]
    VerifyTrace { file: String, trace: String },
    /// Run every stage on a grid of random instances and print CSV.
    Sweep(sweep::SweepArgs),
}

#[derive(Subcommand)]
enum GenFamily {
    Complete {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    Parity {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    Union {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    Latin {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "cyclic")]
        rule: String,
    },
    Random {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        seed: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum ConditionKind {
    Main,
    Ko,
    Ituple,
    Fractional,
    Latin,
    Vertex,
}

fn error_code(e: &Error) -> u8 {
    match e {
        Error::ConditionViolated(_) | Error::HypothesisViolated { .. } => 3,
        Error::NoNearPerfectFound { .. } => 4,
        Error::BudgetExhausted { .. } => 5,
        _ => 2,
    }
}

fn read_input(path: &str) -> Result<String, Error> {
    let io_err = |e: io::Error| Error::InvalidParameter(format!("{path}: {e}"));
    if path == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn load(path: &str) -> Result<Hypergraph, Error> {
    let parsed = parse_hypergraph(&read_input(path)?)?;
    if parsed.duplicates > 0 {
        eprintln!("warning: dropped {} duplicate edges", parsed.duplicates);
    }
    Ok(parsed.graph)
}

fn gen(family: GenFamily, spec: bool) -> Result<String, Error> {
    let (gspec, mut comments) = match family {
        GenFamily::Complete { r, n } => (GeneratorSpec { family: Family::Complete, r, n }, vec![]),
        GenFamily::Parity { r, n } => {
            let p = gen_parity_sharpness(r, n)?;
            let sets: Vec<String> = p
                .a_sets
                .iter()
                .enumerate()
                .map(|(side, a)| {
                    let vs: Vec<String> = a.iter().map(usize::to_string).collect();
                    format!("A{side}={{{}}}", vs.join(","))
                })
                .collect();
            let kind = if p.canonical { "canonical" } else { "general" };
            (
                GeneratorSpec { family: Family::ParitySharpness, r, n },
                vec![format!("parity {kind} {}", sets.join(" "))],
            )
        }
        GenFamily::Union { r, n, k } => (GeneratorSpec { family: Family::UnionCover { k }, r, n }, vec![]),
        GenFamily::Latin { n, rule } => {
            if rule != "cyclic" {
                return Err(Error::InvalidParameter(format!("unknown Latin rule `{rule}`")));
            }
            (
                GeneratorSpec { family: Family::Latin { rule: LatinRule::Cyclic }, r: 3, n },
                vec![],
            )
        }
        GenFamily::Random { r, n, p, seed } => {
            (GeneratorSpec { family: Family::Random { p, seed }, r, n }, vec![])
        }
    };
    let h = gspec.build()?;
    if spec {
        comments.insert(0, gspec.to_string());
    }
    Ok(write_hypergraph(&h, &comments))
}

fn need_sides(sides: &[usize]) -> Result<&[usize], Error> {
    if sides.is_empty() {
        return Err(Error::InvalidParameter("this condition needs --I".into()));
    }
    Ok(sides)
}

fn check(
    h: &Hypergraph,
    condition: ConditionKind,
    strict: Option<usize>,
    weak: Option<usize>,
    sides: &[usize],
    gt: bool,
    fraction: Option<&str>,
) -> Result<ConditionReport, Error> {
    match condition {
        ConditionKind::Main => match (strict, weak) {
            (Some(s), Some(w)) => check_main_condition(h, s, w),
            (None, None) => match admissible_sides(h)? {
                Ok((s, w)) => check_main_condition(h, s, w),
                Err(report) => Ok(report),
            },
            _ => Err(Error::InvalidParameter(
                "give both --strict and --weak, or neither".into(),
            )),
        },
        ConditionKind::Ko => Ok(check_ko_threshold(h)),
        ConditionKind::Ituple => check_itupl_condition(h, need_sides(sides)?),
        ConditionKind::Fractional => check_fractional_condition(h, need_sides(sides)?, gt),
        ConditionKind::Latin => check_latin_property(h),
        ConditionKind::Vertex => {
            let f = match fraction {
                Some(s) => parse_rational(s)?,
                None => default_vertex_fraction(),
            };
            check_vertex_degree(h, &f)
        }
    }
}

fn oracle(h: &Hypergraph, budget: u64) -> Result<(String, u8), Error> {
    match max_matching(h, budget) {
        Ok(res) => Ok((
            format!(
                "size={}\nperfect={}\nwitness {}\nnodes={}\n",
                res.max_matching_size,
                if res.perfect_exists { "yes" } else { "no" },
                res.witness,
                res.nodes_explored
            ),
            if res.perfect_exists { 0 } else { 4 },
        )),
        Err(Error::BudgetExhausted { budget, best }) => Ok((
            format!(
                "size>={}\nperfect=unknown\nwitness {best}\nnodes={budget}\n",
                best.len()
            ),
            5,
        )),
        Err(e) => Err(e),
    }
}

fn lp(h: &Hypergraph, sides: &[usize], weights: bool) -> Result<(String, u8), Error> {
    let (nu, matching) = nu_star(h);
    let (tau, cover) = tau_star(h);
    let ok = nu == tau;
    let mut out = format!(
        "nu*={} tau*={} duality={}\n",
        format_pq(&nu),
        format_pq(&tau),
        if ok { "ok" } else { "FAILED" }
    );
    if !sides.is_empty() {
        let report = check_fractional_condition(h, sides, false)?;
        out.push_str(&report.to_text());
        let a = analyze_cover(h, &cover, sides)?;
        let branch = match a.branch {
            CoverBranch::MinimalTupleHeavy => "heavy",
            CoverBranch::MinimalTupleLight => "light",
        };
        out.push_str(&format!(
            "COVER z={} beta={} gamma={} theta={} zeta={} branch={branch} bound={} total={}\n",
            a.z,
            format_pq(&a.beta),
            format_pq(&a.gamma),
            format_pq(&a.theta),
            format_pq(&a.zeta),
            format_pq(&a.bound),
            format_pq(&a.total)
        ));
    }
    if weights {
        out.push_str("# matching\n");
        out.push_str(&matching.to_text());
        out.push_str("# cover\n");
        out.push_str(&cover.to_text());
    }
    Ok((out, if ok { 0 } else { 1 }))
}

fn run(cli: Cli) -> Result<(String, u8), Error> {
    match cli.command {
        Command::Gen { family, spec } => Ok((gen(family, spec)?, 0)),
        Command::Check {
            file,
            condition,
            strict,
            weak,
            sides,
            gt,
            fraction,
        } => {
            let h = load(&file)?;
            let report = check(&h, condition, strict, weak, &sides, gt, fraction.as_deref())?;
            Ok((report.to_text(), if report.holds { 0 } else { 1 }))
        }
        Command::Match { file } => {
            let sol = find_perfect_matching(&load(&file)?)?;
            Ok((
                format!(
                    "# strict_side={} weak_side={}\n{}",
                    sol.strict_side,
                    sol.weak_side,
                    sol.trace_file()
                ),
                0,
            ))
        }
        Command::Oracle { file, budget } => oracle(&load(&file)?, budget.unwrap_or(DEFAULT_BUDGET)),
        Command::Lp { file, sides, weights } => lp(&load(&file)?, &sides, weights),
        Command::Decompose { n, k } => {
            let mut out = String::new();
            for m in decompose_complete_multipartite(n, k)? {
                let c: Vec<String> = m.offsets.iter().map(usize::to_string).collect();
                out.push_str(&format!("c=({}) {}\n", c.join(","), m.matching));
            }
            Ok((out, 0))
        }
        Command::VerifyTrace { file, trace } => {
            let h = load(&file)?;
            let parsed: TraceFile = read_input(&trace)?.parse()?;
            match verify_trace(&h, &parsed) {
                Ok(()) => Ok(("trace ok\n".into(), 0)),
                Err(Error::InvalidTrace(msg)) => Ok((format!("trace rejected: {msg}\n"), 1)),
                Err(e) => Err(e),
            }
        }
        Command::Sweep(args) => Ok((sweep::run(&args)?, 0)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            ExitCode::from(code)
        }
        Err(e) => {
            if let Error::ConditionViolated(report) = &e {
                print!("{}", report.to_text());
                eprintln!("error: no (strict, weak) side pair satisfies the degree condition");
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(error_code(&e))
        }
    }
}

//! CSV sweep over random instances. Rows are computed in parallel and printed
//! in input order; without `--timings` the output depends only on the flags.

use std::fmt::Write;
use std::time::Instant;

use clap::Args;
use rayon::prelude::*;
use rmatch_core::conditions::check_fractional_condition;
use rmatch_core::fractional::{nu_star, tau_star};
use rmatch_core::generators::gen_random;
use rmatch_core::matcher::{admissible_sides, find_perfect_matching};
use rmatch_core::oracle::{max_matching, DEFAULT_BUDGET};
use rmatch_core::rational::format_pq;
use rmatch_core::Error;

pub const FORMAT_VERSION: u32 = 1;

const COLUMNS: &str = "seed,r,n,p,edges,main,strict_side,weak_side,fractional_I0,solver,oracle_max,oracle_perfect,nu_star,tau_star";
const TIMING_COLUMNS: &str = ",t_check_us,t_solve_us,t_oracle_us,t_lp_us";

#[derive(Args)]
pub struct SweepArgs {
    /// Instance family; only `random` is supported.
    #[arg(long, default_value = "random")]
    family: String,
    #[arg(long)]
    r: usize,
    /// `a` or `a-b`, inclusive.
    #[arg(long = "n-range")]
    n_range: String,
    /// `p` or `lo:hi:step`, inclusive.
    #[arg(long = "p-range")]
    p_range: String,
    /// Instances per (n, p) cell.
    #[arg(long, default_value_t = 10)]
    count: usize,
    /// Seed of the first instance; later instances count up from it.
    #[arg(long, default_value_t = 0)]
    seed0: u64,
    /// Node budget for the oracle column.
    #[arg(long, env = "RMATCH_BUDGET")]
    budget: Option<u64>,
    /// Append per-stage wall times (makes the output nondeterministic).
    #[arg(long)]
    timings: bool,
}

fn bad(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn parse_n_range(s: &str) -> Result<Vec<usize>, Error> {
    let num = |t: &str| {
        t.trim()
            .parse::<usize>()
            .map_err(|_| bad(format!("bad --n-range `{s}`")))
    };
    let (lo, hi) = match s.split_once('-') {
        Some((a, b)) => (num(a)?, num(b)?),
        None => (num(s)?, num(s)?),
    };
    if lo == 0 || lo > hi {
        return Err(bad(format!("bad --n-range `{s}`")));
    }
    Ok((lo..=hi).collect())
}

fn parse_p_range(s: &str) -> Result<Vec<f64>, Error> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|p| (0.0..=1.0).contains(p))
            .ok_or_else(|| bad(format!("bad --p-range `{s}`")))
    };
    let parts: Vec<&str> = s.split(':').collect();
    match parts[..] {
        [p] => Ok(vec![num(p)?]),
        [lo, hi, step] => {
            let (lo, hi) = (num(lo)?, num(hi)?);
            let step: f64 = step
                .trim()
                .parse()
                .ok()
                .filter(|&d: &f64| d > 0.0)
                .ok_or_else(|| bad(format!("bad --p-range step in `{s}`")))?;
            let mut out = Vec::new();
            let mut k = 0u32;
            loop {
                // Round to kill accumulated binary noise like 0.8500000000000001.
                let p = ((lo + f64::from(k) * step) * 1e9).round() / 1e9;
                if p > hi + 1e-12 {
                    break;
                }
                out.push(p);
                k += 1;
            }
            Ok(out)
        }
        _ => Err(bad(format!("bad --p-range `{s}`"))),
    }
}

struct Task {
    seed: u64,
    n: usize,
    p: f64,
}

fn row(r: usize, t: &Task, budget: u64, timings: bool) -> Result<String, Error> {
    let h = gen_random(r, t.n, t.p, t.seed)?;

    let clock = Instant::now();
    let sides = admissible_sides(&h)?;
    let fractional = check_fractional_condition(&h, &[0], false)?.holds;
    let t_check = clock.elapsed();

    let clock = Instant::now();
    let solver = match find_perfect_matching(&h) {
        Ok(_) => "pm",
        Err(Error::ConditionViolated(_)) => "condition_violated",
        Err(Error::NoNearPerfectFound { .. }) => "no_near_perfect",
        Err(e) => return Err(e),
    };
    let t_solve = clock.elapsed();

    let clock = Instant::now();
    let (oracle_max, oracle_perfect) = match max_matching(&h, budget) {
        Ok(res) => (res.max_matching_size.to_string(), (res.perfect_exists as u8).to_string()),
        Err(Error::BudgetExhausted { .. }) => ("budget".to_string(), String::new()),
        Err(e) => return Err(e),
    };
    let t_oracle = clock.elapsed();

    let clock = Instant::now();
    let (nu, _) = nu_star(&h);
    let (tau, _) = tau_star(&h);
    let t_lp = clock.elapsed();

    let (main, strict, weak) = match sides {
        Ok((s, w)) => (1, s.to_string(), w.to_string()),
        Err(_) => (0, String::new(), String::new()),
    };
    let mut line = format!(
        "{},{r},{},{},{},{main},{strict},{weak},{},{solver},{oracle_max},{oracle_perfect},{},{}",
        t.seed,
        t.n,
        t.p,
        h.edge_count(),
        fractional as u8,
        format_pq(&nu),
        format_pq(&tau)
    );
    if timings {
        let _ = write!(
            line,
            ",{},{},{},{}",
            t_check.as_micros(),
            t_solve.as_micros(),
            t_oracle.as_micros(),
            t_lp.as_micros()
        );
    }
    Ok(line)
}

pub fn run(args: &SweepArgs) -> Result<String, Error> {
    if args.family != "random" {
        return Err(bad(format!("sweep supports --family random, not `{}`", args.family)));
    }
    if args.r < 2 {
        return Err(bad(format!("need r >= 2, got {}", args.r)));
    }
    let ns = parse_n_range(&args.n_range)?;
    let ps = parse_p_range(&args.p_range)?;
    let mut tasks = Vec::new();
    for &n in &ns {
        for &p in &ps {
            for _ in 0..args.count {
                let seed = args.seed0 + tasks.len() as u64;
                tasks.push(Task { seed, n, p });
            }
        }
    }
    let budget = args.budget.unwrap_or(DEFAULT_BUDGET);
    let rows: Vec<String> = tasks
        .par_iter()
        .map(|t| row(args.r, t, budget, args.timings))
        .collect::<Result<_, _>>()?;

    let mut out = format!(
        "# rmatch sweep v{FORMAT_VERSION} family=random r={} n-range={} p-range={} count={} seed0={} prng=chacha8\n",
        args.r, args.n_range, args.p_range, args.count, args.seed0
    );
    out.push_str(COLUMNS);
    if args.timings {
        out.push_str(TIMING_COLUMNS);
    }
    out.push('\n');
    for r in rows {
        out.push_str(&r);
        out.push('\n');
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges() {
        assert_eq!(parse_n_range("3-5").unwrap(), vec![3, 4, 5]);
        assert_eq!(parse_n_range("4").unwrap(), vec![4]);
        assert!(parse_n_range("5-3").is_err());
        assert!(parse_n_range("0").is_err());
        assert_eq!(parse_p_range("0.8:0.95:0.05").unwrap(), vec![0.8, 0.85, 0.9, 0.95]);
        assert_eq!(parse_p_range("0.95").unwrap(), vec![0.95]);
        assert!(parse_p_range("1.5").is_err());
        assert!(parse_p_range("0.1:0.2:0").is_err());
    }
}

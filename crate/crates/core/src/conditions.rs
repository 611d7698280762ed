//! Degree-hypothesis checkers.
//!
//! Every checker returns a [`ConditionReport`] listing each tuple that breaks
//! the hypothesis, with its observed value and the bound it missed. All
//! comparisons are exact except the asymptotic threshold check, which is
//! informational.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, PartialTuple, SideSet, Vertex};
use crate::rational::{self, int, pow, Rational};

/// Violation lines printed by [`ConditionReport::to_text`].
pub const MAX_LISTED_VIOLATIONS: usize = 20;

/// Rational stand-in for `1 - 1/e` (above it by less than `2.4e-7`).
pub fn default_vertex_fraction() -> Rational {
    rational::ratio(921, 1457)
}

#[derive(Debug, Clone, PartialEq)]
pub enum Condition {
    /// (r-1)-tuples avoiding `strict_side` have degree `> n/2`, those avoiding
    /// `weak_side` have degree `>= n/2`.
    Main { strict_side: usize, weak_side: usize },
    /// Every (r-1)-tuple has degree `>= n/2 + sqrt(2 n ln n)`.
    KoThreshold,
    /// I-tuples above half their complete degree, I^c-tuples at least half.
    ITuple { sides: SideSet },
    /// `d(z∩I)/n^(r-|I|) + d(z∩I^c)/n^|I| >= 1` (or `> 1`) for every non-edge `z`.
    Fractional { sides: SideSet, strict: bool },
    /// Every vertex has degree `>= fraction * n^(r-1)`.
    VertexDegree { fraction: Rational },
    /// Every pair of a 3-graph lies in exactly one edge.
    Latin,
}

impl Condition {
    pub fn name(&self) -> &'static str {
        match self {
            Condition::Main { .. } => "main",
            Condition::KoThreshold => "ko",
            Condition::ITuple { .. } => "ituple",
            Condition::Fractional { .. } => "fractional",
            Condition::VertexDegree { .. } => "vertex",
            Condition::Latin => "latin",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Comparison {
    Greater,
    AtLeast,
    Exactly,
}

impl Comparison {
    pub fn symbol(self) -> &'static str {
        match self {
            Comparison::Greater => ">",
            Comparison::AtLeast => ">=",
            Comparison::Exactly => "=",
        }
    }

    fn holds(self, observed: &Rational, bound: &Rational) -> bool {
        match self {
            Comparison::Greater => observed > bound,
            Comparison::AtLeast => observed >= bound,
            Comparison::Exactly => observed == bound,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Bound {
    Exact(Rational),
    /// Floating-point bound (irrational thresholds).
    Real(f64),
}

impl fmt::Display for Bound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Bound::Exact(q) => write!(f, "{q}"),
            Bound::Real(x) => write!(f, "{x}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub tuple: PartialTuple,
    /// The degree, or `theta + zeta` for the fractional condition.
    pub observed: Rational,
    pub cmp: Comparison,
    pub bound: Bound,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "VIOLATION {} d={} need{}{}",
            self.tuple,
            self.observed,
            self.cmp.symbol(),
            self.bound
        )
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub condition: Condition,
    pub holds: bool,
    pub violations: Vec<Violation>,
    /// `(theta, zeta)` at the worst non-edge, for the fractional condition.
    pub normalized_degrees: Option<(Rational, Rational)>,
    pub worst_tuple: Option<PartialTuple>,
    /// `key=value` metadata such as the logarithm base or the vertex fraction.
    pub notes: Vec<String>,
}

impl ConditionReport {
    fn new(condition: Condition, violations: Vec<Violation>) -> Self {
        ConditionReport {
            condition,
            holds: violations.is_empty(),
            violations,
            normalized_degrees: None,
            worst_tuple: None,
            notes: Vec::new(),
        }
    }

    pub fn to_text(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "CONDITION {} {}",
            self.condition.name(),
            if self.holds { "HOLDS" } else { "FAILS" }
        )?;
        for note in &self.notes {
            writeln!(f, "NOTE {note}")?;
        }
        if let (Some(z), Some((theta, zeta))) = (&self.worst_tuple, &self.normalized_degrees) {
            writeln!(f, "WORST {z} theta={theta} zeta={zeta}")?;
        }
        for v in self.violations.iter().take(MAX_LISTED_VIOLATIONS) {
            writeln!(f, "{v}")?;
        }
        if !self.violations.is_empty() {
            writeln!(f, "TOTAL {}", self.violations.len())?;
        }
        Ok(())
    }
}

fn check_side(h: &Hypergraph, side: usize) -> Result<()> {
    if side >= h.r() {
        return Err(Error::InvalidParameter(format!(
            "side {side} out of range 0..{}",
            h.r()
        )));
    }
    Ok(())
}

/// Checks every (r-1)-tuple avoiding `missing` against `cmp bound`.
fn codegree_violations(
    h: &Hypergraph,
    missing: usize,
    cmp: Comparison,
    bound: &Rational,
) -> Vec<Violation> {
    let rest: Vec<usize> = (0..h.r()).filter(|&s| s != missing).collect();
    let rest = SideSet::new(h.r(), &rest).expect("sides in range");
    h.legal_tuples(&rest)
        .filter_map(|f| {
            let d = int(h.codegree(missing, &f.indices()));
            (!cmp.holds(&d, bound)).then(|| Violation {
                tuple: f,
                observed: d,
                cmp,
                bound: Bound::Exact(bound.clone()),
            })
        })
        .collect()
}

pub fn check_main_condition(
    h: &Hypergraph,
    strict_side: usize,
    weak_side: usize,
) -> Result<ConditionReport> {
    check_side(h, strict_side)?;
    check_side(h, weak_side)?;
    if strict_side == weak_side {
        return Err(Error::InvalidSides(strict_side));
    }
    let half = int(h.n()) / int(2);
    let mut violations = codegree_violations(h, strict_side, Comparison::Greater, &half);
    violations.extend(codegree_violations(h, weak_side, Comparison::AtLeast, &half));
    let mut report = ConditionReport::new(
        Condition::Main {
            strict_side,
            weak_side,
        },
        violations,
    );
    report.notes.push(format!("strict_side={strict_side} weak_side={weak_side}"));
    Ok(report)
}

/// `n/2 + sqrt(2 n ln n)`, natural logarithm.
pub fn ko_threshold(n: usize) -> f64 {
    let n = n as f64;
    n / 2.0 + (2.0 * n * n.ln()).sqrt()
}

pub fn check_ko_threshold(h: &Hypergraph) -> ConditionReport {
    let t = ko_threshold(h.n());
    let ulp = t.next_up() - t;
    let mut violations = Vec::new();
    let mut guarded = 0usize;
    for missing in 0..h.r() {
        let rest: Vec<usize> = (0..h.r()).filter(|&s| s != missing).collect();
        let rest = SideSet::new(h.r(), &rest).expect("sides in range");
        for f in h.legal_tuples(&rest) {
            let d = h.codegree(missing, &f.indices());
            let df = d as f64;
            if (df - t).abs() <= ulp {
                guarded += 1;
            }
            if df < t {
                violations.push(Violation {
                    tuple: f,
                    observed: int(d),
                    cmp: Comparison::AtLeast,
                    bound: Bound::Real(t),
                });
            }
        }
    }
    let mut report = ConditionReport::new(Condition::KoThreshold, violations);
    report.notes.push("log=natural".into());
    report.notes.push(format!("threshold={t}"));
    if guarded > 0 {
        report
            .notes
            .push(format!("guard_band={guarded} degrees within 1 ulp of threshold"));
    }
    report
}

pub fn check_itupl_condition(h: &Hypergraph, sides: &[usize]) -> Result<ConditionReport> {
    let i_sides = SideSet::proper(h.r(), sides)?;
    let c_sides = i_sides.complement(h.r());
    let r = h.r();
    let n = h.n();

    let mut violations = Vec::new();
    let mut scan = |set: &SideSet, cmp: Comparison, bound: Rational| {
        let table = h.degree_table(set);
        for f in h.legal_tuples(set) {
            let d = int(table.get(&f.indices()).copied().unwrap_or(0));
            if !cmp.holds(&d, &bound) {
                violations.push(Violation {
                    tuple: f,
                    observed: d,
                    cmp,
                    bound: Bound::Exact(bound.clone()),
                });
            }
        }
    };
    scan(&i_sides, Comparison::Greater, pow(n, r - i_sides.len()) / int(2));
    scan(&c_sides, Comparison::AtLeast, pow(n, i_sides.len()) / int(2));
    Ok(ConditionReport::new(Condition::ITuple { sides: i_sides }, violations))
}

/// `(theta, zeta)` for the full tuple `z`, given precomputed degree tables.
pub(crate) struct NormalizedDegrees<'a> {
    h: &'a Hypergraph,
    pub(crate) i_sides: SideSet,
    pub(crate) c_sides: SideSet,
    i_table: std::collections::HashMap<Vec<usize>, usize>,
    c_table: std::collections::HashMap<Vec<usize>, usize>,
}

impl<'a> NormalizedDegrees<'a> {
    pub(crate) fn new(h: &'a Hypergraph, i_sides: SideSet) -> Self {
        let c_sides = i_sides.complement(h.r());
        NormalizedDegrees {
            h,
            i_table: h.degree_table(&i_sides),
            c_table: h.degree_table(&c_sides),
            i_sides,
            c_sides,
        }
    }

    /// `theta = d(z∩I)/n^(r-|I|)`, `zeta = d(z∩I^c)/n^|I|`.
    pub(crate) fn at(&self, z: &Edge) -> (Rational, Rational) {
        let n = self.h.n();
        let r = self.h.r();
        let di = self
            .i_table
            .get(&z.project_onto(self.i_sides.as_slice()))
            .copied()
            .unwrap_or(0);
        let dc = self
            .c_table
            .get(&z.project_onto(self.c_sides.as_slice()))
            .copied()
            .unwrap_or(0);
        (
            int(di) / pow(n, r - self.i_sides.len()),
            int(dc) / pow(n, self.i_sides.len()),
        )
    }
}

pub fn check_fractional_condition(
    h: &Hypergraph,
    sides: &[usize],
    strict: bool,
) -> Result<ConditionReport> {
    let i_sides = SideSet::proper(h.r(), sides)?;
    let norm = NormalizedDegrees::new(h, i_sides.clone());
    let cmp = if strict {
        Comparison::Greater
    } else {
        Comparison::AtLeast
    };
    let one = Rational::one();
    let mut violations = Vec::new();
    let mut worst: Option<(Rational, PartialTuple, Rational, Rational)> = None;
    for z in h.legal_tuples(&SideSet::all(h.r())) {
        let edge = Edge::new(z.indices());
        if h.contains(&edge) {
            continue;
        }
        let (theta, zeta) = norm.at(&edge);
        let sum = &theta + &zeta;
        if worst.as_ref().is_none_or(|(w, ..)| sum < *w) {
            worst = Some((sum.clone(), z.clone(), theta, zeta));
        }
        if !cmp.holds(&sum, &one) {
            violations.push(Violation {
                tuple: z,
                observed: sum,
                cmp,
                bound: Bound::Exact(one.clone()),
            });
        }
    }
    let mut report = ConditionReport::new(
        Condition::Fractional {
            sides: i_sides,
            strict,
        },
        violations,
    );
    if let Some((_, z, theta, zeta)) = worst {
        report.worst_tuple = Some(z);
        report.normalized_degrees = Some((theta, zeta));
    }
    Ok(report)
}

pub fn check_vertex_degree(h: &Hypergraph, fraction: &Rational) -> Result<ConditionReport> {
    if fraction.is_negative() || *fraction > Rational::one() {
        return Err(Error::InvalidParameter(format!(
            "vertex fraction {fraction} outside [0, 1]"
        )));
    }
    let bound = fraction * pow(h.n(), h.r() - 1);
    let mut violations = Vec::new();
    for side in 0..h.r() {
        for index in 0..h.n() {
            let d = int(h.vertex_degree(Vertex::new(side, index)));
            if d < bound {
                violations.push(Violation {
                    tuple: PartialTuple::new().with(side, index),
                    observed: d,
                    cmp: Comparison::AtLeast,
                    bound: Bound::Exact(bound.clone()),
                });
            }
        }
    }
    let mut report = ConditionReport::new(
        Condition::VertexDegree {
            fraction: fraction.clone(),
        },
        violations,
    );
    report
        .notes
        .push(format!("fraction={}", rational::format_pq(fraction)));
    Ok(report)
}

pub fn check_latin_property(h: &Hypergraph) -> Result<ConditionReport> {
    if h.r() != 3 {
        return Err(Error::UnsupportedArity {
            expected: 3,
            got: h.r(),
        });
    }
    let mut violations = Vec::new();
    for missing in 0..3 {
        violations.extend(codegree_violations(
            h,
            missing,
            Comparison::Exactly,
            &Rational::one(),
        ));
    }
    Ok(ConditionReport::new(Condition::Latin, violations))
}

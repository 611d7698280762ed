//! Constructive perfect matching for hypergraphs in which every (r-1)-tuple
//! avoiding one side has degree `> n/2` and every one avoiding another side has
//! degree `>= n/2`.
//!
//! The instance is relabeled so the strict side is side 0 and the weak side is
//! the last one, reduced to three sides, and solved there: a matching of size
//! `n - 1` is built first and then completed by a single exchange. The
//! exchange looks at the set `U` of (side 1, side 2) pairs covered by the
//! matching, picks a side-0 pivot `w` adjacent to the most pairs of `U`, and
//! applies one of the following, where `x1, x2, x3` are the unmatched vertices:
//!
//! * `Case1`: `w = x1`. Swap one matching edge `(u1,u2,u3)` for `(x1,u2,u3)` and
//!   `(u1,x2,x3)`. Also used, with nothing removed, when `(x1,x2,x3)` is an edge.
//! * `Case2a`/`Case2b`: `w` lies on `f = (w,u2,u3)` and `(x1,x2,u3)` is an edge.
//! * `Case3Direct`/`Case3Recount`: `(x1,x2,u3)` is not an edge; a first swap
//!   leaves `w, v2, x3` unmatched and a second one (or a direct insertion)
//!   finishes.
//!
//! Every counting step that must find a candidate is backed by the degree
//! hypothesis; if it finds none, the hypothesis is false and a violating tuple
//! is returned.

use std::fmt;
use std::str::FromStr;

use crate::conditions::{check_main_condition, ConditionReport};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Matching, PartialTuple, Vertex};
use crate::oracle::{find_matching_of_size, DEFAULT_BUDGET};
use crate::rational::int;

/// The perfect matching `g_i = (i, ..., i)` of the middle sides, used to fold
/// sides `1..r-1` into one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContractionMap {
    r: usize,
    n: usize,
}

impl ContractionMap {
    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// `g_i`, an (r-2)-tuple on sides `1..r-1`.
    pub fn tuple(&self, i: usize) -> Vec<usize> {
        vec![i; self.r - 2]
    }

    /// `(x, i, y)` to `{x} ∪ g_i ∪ {y}`.
    pub fn decontract_edge(&self, e: &Edge) -> Result<Edge> {
        if e.arity() != 3 || e.as_slice().iter().any(|&v| v >= self.n) {
            return Err(Error::InvalidTuple(format!(
                "{e} is not a 3-tuple below {}",
                self.n
            )));
        }
        let mut out = Vec::with_capacity(self.r);
        out.push(e[0]);
        out.extend(self.tuple(e[1]));
        out.push(e[2]);
        Ok(Edge::new(out))
    }

    /// The inverse of [`ContractionMap::decontract_edge`], when the middle of
    /// `e` is some `g_i`.
    pub fn contract_edge(&self, e: &Edge) -> Option<Edge> {
        if e.arity() != self.r {
            return None;
        }
        let mid = &e.as_slice()[1..self.r - 1];
        let i = mid[0];
        mid.iter()
            .all(|&v| v == i)
            .then(|| Edge::from([e[0], i, e[self.r - 1]]))
    }
}

/// Folds sides `1..r-1` of an r-graph with `r > 3` into a single side.
pub fn contract_to_tripartite(h: &Hypergraph) -> Result<(Hypergraph, ContractionMap)> {
    if h.r() <= 3 {
        return Err(Error::NothingToContract(h.r()));
    }
    let map = ContractionMap { r: h.r(), n: h.n() };
    let n = h.n();
    let mut edges = Vec::new();
    for x in 0..n {
        for i in 0..n {
            for y in 0..n {
                let e = Edge::from([x, i, y]);
                if h.contains(&map.decontract_edge(&e)?) {
                    edges.push(e);
                }
            }
        }
    }
    Ok((Hypergraph::new(3, n, edges)?, map))
}

fn check_structural_perfect(m: &Matching, r: usize, n: usize) -> Result<()> {
    if m.len() != n {
        return Err(Error::InvalidMatching(format!(
            "{} edges, expected {n}",
            m.len()
        )));
    }
    if m.iter().any(|e| e.arity() != r || e.as_slice().iter().any(|&v| v >= n)) {
        return Err(Error::InvalidMatching(format!(
            "edges must be {r}-tuples below {n}"
        )));
    }
    if !m.is_disjoint() {
        return Err(Error::InvalidMatching("edges overlap".into()));
    }
    Ok(())
}

/// Expands a perfect matching of the contracted 3-graph.
pub fn decontract_matching(m: &Matching, map: &ContractionMap) -> Result<Matching> {
    check_structural_perfect(m, 3, map.n)?;
    m.iter()
        .map(|e| map.decontract_edge(e))
        .collect::<Result<Vec<_>>>()
        .map(Matching::new)
}

/// A matching of size `n - 1` and the one vertex per side it misses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearPerfect {
    pub matching: Matching,
    pub unmatched: [usize; 3],
}

fn unmatched_vertices(n: usize, m: &[Edge]) -> Vec<Vec<usize>> {
    (0..3)
        .map(|side| {
            let mut covered = vec![false; n];
            for e in m {
                covered[e[side]] = true;
            }
            (0..n).filter(|&v| !covered[v]).collect()
        })
        .collect()
}

/// Finds `need` pairwise disjoint edges among `candidates`, lexicographically first.
fn disjoint_edges(candidates: &[&Edge], need: usize, start: usize, acc: &mut Vec<Edge>) -> bool {
    if acc.len() == need {
        return true;
    }
    for i in start..candidates.len() {
        let e = candidates[i];
        if acc
            .iter()
            .all(|a| (0..3).all(|s| a[s] != e[s]))
        {
            acc.push(e.clone());
            if disjoint_edges(candidates, need, i + 1, acc) {
                return true;
            }
            acc.pop();
        }
    }
    false
}

/// Removes up to two matching edges and re-adds one more than it removed.
fn exchange_step(h: &Hypergraph, m: &mut Vec<Edge>) -> bool {
    let n = h.n();
    let mut subsets: Vec<Vec<usize>> = vec![vec![]];
    subsets.extend((0..m.len()).map(|i| vec![i]));
    for i in 0..m.len() {
        for j in i + 1..m.len() {
            subsets.push(vec![i, j]);
        }
    }
    for removed in subsets {
        let kept: Vec<Edge> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| !removed.contains(i))
            .map(|(_, e)| e.clone())
            .collect();
        let free = unmatched_vertices(n, &kept);
        let mut is_free = vec![vec![false; n]; 3];
        for (side, vs) in free.iter().enumerate() {
            for &v in vs {
                is_free[side][v] = true;
            }
        }
        let candidates: Vec<&Edge> = h
            .edges()
            .iter()
            .filter(|e| (0..3).all(|s| is_free[s][e[s]]))
            .collect();
        let mut found = Vec::new();
        if disjoint_edges(&candidates, removed.len() + 1, 0, &mut found) {
            *m = kept;
            m.extend(found);
            return true;
        }
    }
    false
}

/// Builds a matching of size `n - 1` in a 3-partite graph: greedy, then local
/// exchanges, then bounded backtracking.
pub fn build_near_perfect(h: &Hypergraph) -> Result<NearPerfect> {
    if h.r() != 3 {
        return Err(Error::UnsupportedArity {
            expected: 3,
            got: h.r(),
        });
    }
    let n = h.n();
    let target = n - 1;
    let mut m: Vec<Edge> = Vec::new();
    let mut used = vec![vec![false; n]; 3];
    for e in h.edges() {
        if m.len() == target {
            break;
        }
        if (0..3).all(|s| !used[s][e[s]]) {
            for s in 0..3 {
                used[s][e[s]] = true;
            }
            m.push(e.clone());
        }
    }
    while m.len() < target {
        if !exchange_step(h, &mut m) {
            match find_matching_of_size(h, target, DEFAULT_BUDGET) {
                Ok(Some(found)) => m = found.edges().to_vec(),
                Ok(None) | Err(Error::BudgetExhausted { .. }) => {
                    return Err(Error::NoNearPerfectFound {
                        nodes: DEFAULT_BUDGET,
                    })
                }
                Err(e) => return Err(e),
            }
        }
    }
    let free = unmatched_vertices(n, &m);
    let unmatched = [free[0][0], free[1][0], free[2][0]];
    Ok(NearPerfect {
        matching: Matching::new(m),
        unmatched,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    Case1,
    Case2a,
    Case2b,
    Case3Direct,
    Case3Recount,
}

impl CaseTag {
    pub const ALL: [CaseTag; 5] = [
        CaseTag::Case1,
        CaseTag::Case2a,
        CaseTag::Case2b,
        CaseTag::Case3Direct,
        CaseTag::Case3Recount,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            CaseTag::Case1 => "Case1",
            CaseTag::Case2a => "Case2a",
            CaseTag::Case2b => "Case2b",
            CaseTag::Case3Direct => "Case3Direct",
            CaseTag::Case3Recount => "Case3Recount",
        }
    }
}

impl FromStr for CaseTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        CaseTag::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| Error::InvalidTrace(format!("unknown case `{s}`")))
    }
}

/// One augmentation: the input matching minus `removed` plus `added`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AugmentationTrace {
    pub case: CaseTag,
    pub pivot: Vertex,
    pub removed: Vec<Edge>,
    pub added: Vec<Edge>,
}

impl AugmentationTrace {
    /// Applies the trace, checking that every removed edge is present and that
    /// the result is still a matching.
    pub fn replay(&self, m: &Matching) -> Result<Matching> {
        if self.added.len() != self.removed.len() + 1 {
            return Err(Error::InvalidTrace(format!(
                "adds {} edges and removes {}",
                self.added.len(),
                self.removed.len()
            )));
        }
        let mut out = m.clone();
        for e in &self.removed {
            if !out.remove(e) {
                return Err(Error::InvalidTrace(format!("{e} is not in the matching")));
            }
        }
        for e in &self.added {
            if !out.insert(e.clone()) {
                return Err(Error::InvalidTrace(format!("{e} is already in the matching")));
            }
        }
        if !out.is_disjoint() {
            return Err(Error::InvalidTrace("result is not a matching".into()));
        }
        Ok(out)
    }

    fn map_edges(&self, f: impl Fn(&Edge) -> Edge, pivot: Vertex) -> AugmentationTrace {
        AugmentationTrace {
            case: self.case,
            pivot,
            removed: self.removed.iter().map(&f).collect(),
            added: self.added.iter().map(&f).collect(),
        }
    }
}

impl fmt::Display for AugmentationTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CASE {} w={}", self.case.as_str(), self.pivot)?;
        for e in &self.removed {
            write!(f, " -{e}")?;
        }
        for e in &self.added {
            write!(f, " +{e}")?;
        }
        Ok(())
    }
}

impl FromStr for AugmentationTrace {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let mut tokens = line.split_whitespace();
        if tokens.next() != Some("CASE") {
            return Err(Error::InvalidTrace(format!("expected `CASE ...`, got `{line}`")));
        }
        let case: CaseTag = tokens
            .next()
            .ok_or_else(|| Error::InvalidTrace("missing case tag".into()))?
            .parse()?;
        let pivot: Vertex = tokens
            .next()
            .and_then(|t| t.strip_prefix("w="))
            .ok_or_else(|| Error::InvalidTrace("missing `w=<side>:<index>`".into()))?
            .parse()?;
        let mut removed = Vec::new();
        let mut added = Vec::new();
        for t in tokens {
            if let Some(e) = t.strip_prefix('-') {
                removed.push(e.parse()?);
            } else if let Some(e) = t.strip_prefix('+') {
                added.push(e.parse()?);
            } else {
                return Err(Error::InvalidTrace(format!("unexpected token `{t}`")));
            }
        }
        Ok(AugmentationTrace {
            case,
            pivot,
            removed,
            added,
        })
    }
}

/// A tuple on the strict (`>`) or weak (`>=`) side whose degree breaks the
/// hypothesis, checking `strict_pairs` and `weak_pairs` first.
fn hypothesis_witness(
    h: &Hypergraph,
    strict_pairs: &[(usize, usize)],
    weak_pairs: &[(usize, usize)],
) -> Error {
    let n = h.n();
    let half = int(n) / int(2);
    for &(a, b) in strict_pairs {
        let d = h.codegree(0, &[a, b]);
        if 2 * d <= n {
            return Error::HypothesisViolated {
                witness: PartialTuple::from_sides(&[1, 2], &[a, b]),
                degree: d,
                bound: half,
                strict: true,
            };
        }
    }
    for &(a, b) in weak_pairs {
        let d = h.codegree(2, &[a, b]);
        if 2 * d < n {
            return Error::HypothesisViolated {
                witness: PartialTuple::from_sides(&[0, 1], &[a, b]),
                degree: d,
                bound: half,
                strict: false,
            };
        }
    }
    match check_main_condition(h, 0, 2) {
        Ok(report) => match report.violations.first() {
            Some(v) => Error::HypothesisViolated {
                witness: v.tuple.clone(),
                degree: h.degree_unchecked(&v.tuple),
                bound: half,
                strict: v.tuple.get(0).is_none(),
            },
            None => Error::Internal(
                "exchange found no candidate although the degree hypothesis holds".into(),
            ),
        },
        Err(e) => e,
    }
}

/// Completes a matching of size `n - 1` in a 3-graph whose pairs avoiding side 0
/// have degree `> n/2` and whose pairs avoiding side 2 have degree `>= n/2`.
pub fn augment_near_perfect(
    h: &Hypergraph,
    m: &Matching,
    unmatched: [usize; 3],
) -> Result<(Matching, AugmentationTrace)> {
    if h.r() != 3 {
        return Err(Error::UnsupportedArity {
            expected: 3,
            got: h.r(),
        });
    }
    let n = h.n();
    if !h.validate_matching(m).valid || m.len() + 1 != n {
        return Err(Error::InvalidMatching(format!(
            "expected a valid matching of size {} in the graph",
            n - 1
        )));
    }
    for (side, &x) in unmatched.iter().enumerate() {
        if x >= n || m.iter().any(|e| e[side] == x) {
            return Err(Error::InvalidMatching(format!(
                "vertex {side}:{x} is not left unmatched"
            )));
        }
    }

    let has = |a: usize, b: usize, c: usize| h.contains_slice(&[a, b, c]);
    let [x1, x2, x3] = unmatched;
    let edges: Vec<[usize; 3]> = m.iter().map(|e| [e[0], e[1], e[2]]).collect();
    let u_pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e[1], e[2])).collect();

    let finish = |case: CaseTag, w: usize, mut removed: Vec<[usize; 3]>, mut added: Vec<[usize; 3]>| {
        removed.sort();
        added.sort();
        let trace = AugmentationTrace {
            case,
            pivot: Vertex::new(0, w),
            removed: removed.into_iter().map(Edge::from).collect(),
            added: added.into_iter().map(Edge::from).collect(),
        };
        let out = trace.replay(m)?;
        if !h.validate_matching(&out).perfect {
            return Err(Error::Internal(format!("{trace} did not yield a perfect matching")));
        }
        Ok((out, trace))
    };

    if has(x1, x2, x3) {
        return finish(CaseTag::Case1, x1, vec![], vec![[x1, x2, x3]]);
    }

    // Pivot: the side-0 vertex adjacent to the most pairs of U, smallest index on ties.
    let counts: Vec<usize> = (0..n)
        .map(|w| u_pairs.iter().filter(|&&(a, b)| has(w, a, b)).count())
        .collect();
    let w = (0..n)
        .max_by_key(|&w| (counts[w], std::cmp::Reverse(w)))
        .expect("n >= 1");
    // Each U pair has at least floor(n/2)+1 side-0 neighbours; average over n vertices.
    let guaranteed = ((n - 1) * (n / 2 + 1)).div_ceil(n);
    if counts[w] < guaranteed {
        return Err(hypothesis_witness(h, &u_pairs, &[]));
    }

    if w == x1 {
        let e = edges
            .iter()
            .find(|e| has(x1, e[1], e[2]) && has(e[0], x2, x3))
            .ok_or_else(|| hypothesis_witness(h, &[(x2, x3)], &[]))?;
        let [u1, u2, u3] = *e;
        return finish(
            CaseTag::Case1,
            w,
            vec![*e],
            vec![[x1, u2, u3], [u1, x2, x3]],
        );
    }

    let f = *edges
        .iter()
        .find(|e| e[0] == w)
        .ok_or_else(|| Error::Internal(format!("pivot {w} is neither x1 nor matched")))?;
    let [_, u2, u3] = f;

    if has(x1, x2, u3) {
        let g = *edges
            .iter()
            .find(|g| has(g[0], u2, x3) && has(w, g[1], g[2]))
            .ok_or_else(|| hypothesis_witness(h, &[(u2, x3)], &[]))?;
        let [v1, v2, v3] = g;
        if v1 == w {
            return finish(
                CaseTag::Case2a,
                w,
                vec![g],
                vec![[x1, x2, v3], [v1, v2, x3]],
            );
        }
        return finish(
            CaseTag::Case2b,
            w,
            vec![f, g],
            vec![[x1, x2, u3], [v1, u2, x3], [w, v2, v3]],
        );
    }

    let g = *edges
        .iter()
        .find(|g| has(g[0], u2, u3) && has(x1, x2, g[2]))
        .ok_or_else(|| hypothesis_witness(h, &[(u2, u3)], &[(x1, x2)]))?;
    let [v1, v2, v3] = g;
    let mut inner: Vec<[usize; 3]> = edges
        .iter()
        .copied()
        .filter(|e| *e != f && *e != g)
        .collect();
    inner.push([v1, u2, u3]);
    inner.push([x1, x2, v3]);
    inner.sort();

    if has(w, v2, x3) {
        return finish(
            CaseTag::Case3Direct,
            w,
            vec![f, g],
            vec![[v1, u2, u3], [x1, x2, v3], [w, v2, x3]],
        );
    }

    // Now w, v2, x3 are unmatched; repeat the first case with w in place of x1.
    let e = *inner
        .iter()
        .find(|e| has(w, e[1], e[2]) && has(e[0], v2, x3))
        .ok_or_else(|| hypothesis_witness(h, &[(v2, x3)], &[]))?;
    let mut finals: Vec<[usize; 3]> = inner.into_iter().filter(|x| *x != e).collect();
    finals.push([w, e[1], e[2]]);
    finals.push([e[0], v2, x3]);
    let removed: Vec<[usize; 3]> = edges
        .iter()
        .copied()
        .filter(|x| !finals.contains(x))
        .collect();
    let added: Vec<[usize; 3]> = finals
        .iter()
        .copied()
        .filter(|x| !edges.contains(x))
        .collect();
    finish(CaseTag::Case3Recount, w, removed, added)
}

/// A solved instance, in the coordinates of the input hypergraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub matching: Matching,
    /// The size-(n-1) matching the augmentation started from.
    pub near: Matching,
    pub traces: Vec<AugmentationTrace>,
    pub strict_side: usize,
    pub weak_side: usize,
}

impl Solution {
    pub fn trace_file(&self) -> TraceFile {
        TraceFile {
            near: self.near.clone(),
            traces: self.traces.clone(),
            perfect: self.matching.clone(),
        }
    }
}

/// The first `(strict, weak)` side pair, in lexicographic order, for which the
/// main condition holds; otherwise the report with the fewest violations.
pub fn admissible_sides(h: &Hypergraph) -> Result<std::result::Result<(usize, usize), ConditionReport>> {
    let mut best: Option<ConditionReport> = None;
    for strict in 0..h.r() {
        for weak in 0..h.r() {
            if strict == weak {
                continue;
            }
            let report = check_main_condition(h, strict, weak)?;
            if report.holds {
                return Ok(Ok((strict, weak)));
            }
            if best
                .as_ref()
                .is_none_or(|b| report.violations.len() < b.violations.len())
            {
                best = Some(report);
            }
        }
    }
    Ok(Err(best.expect("r >= 2 gives at least one side pair")))
}

pub fn find_perfect_matching(h: &Hypergraph) -> Result<Solution> {
    let (strict, weak) = match admissible_sides(h)? {
        Ok(pair) => pair,
        Err(report) => return Err(Error::ConditionViolated(Box::new(report))),
    };
    let r = h.r();
    let n = h.n();
    // Side i of the relabeled graph is side order[i] of h.
    let mut order = vec![strict];
    order.extend((0..r).filter(|&s| s != strict && s != weak));
    order.push(weak);
    let relabeled = h.permute_sides(&order)?;
    let restore = |e: &Edge| -> Edge {
        let mut out = vec![0; r];
        for (i, &s) in order.iter().enumerate() {
            out[s] = e[i];
        }
        Edge::new(out)
    };

    let (tri, expand): (Hypergraph, Box<dyn Fn(&Edge) -> Edge>) = match r {
        2 => {
            // Pad with a middle side joined to every pair.
            let lifted = Hypergraph::new(
                3,
                n,
                relabeled
                    .edges()
                    .iter()
                    .flat_map(|e| (0..n).map(move |k| Edge::from([e[0], k, e[1]]))),
            )?;
            (lifted, Box::new(|e: &Edge| Edge::from([e[0], e[2]])))
        }
        3 => (relabeled, Box::new(|e: &Edge| e.clone())),
        _ => {
            let (tri, map) = contract_to_tripartite(&relabeled)?;
            (
                tri,
                Box::new(move |e: &Edge| map.decontract_edge(e).expect("edge of the contracted graph")),
            )
        }
    };
    let back = |e: &Edge| restore(&expand(e));

    let near = build_near_perfect(&tri)?;
    let (pm, trace) = augment_near_perfect(&tri, &near.matching, near.unmatched)?;

    let solution = Solution {
        matching: Matching::new(pm.iter().map(back).collect()),
        near: Matching::new(near.matching.iter().map(back).collect()),
        traces: vec![trace.map_edges(back, Vertex::new(strict, trace.pivot.index))],
        strict_side: strict,
        weak_side: weak,
    };
    if !h.validate_matching(&solution.matching).perfect {
        return Err(Error::Internal(
            "solver output is not a perfect matching".into(),
        ));
    }
    Ok(solution)
}

/// `NEAR`, `CASE` and `PM` lines, replayable by [`verify_trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceFile {
    pub near: Matching,
    pub traces: Vec<AugmentationTrace>,
    pub perfect: Matching,
}

impl fmt::Display for TraceFile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "NEAR {}", self.near)?;
        for t in &self.traces {
            writeln!(f, "{t}")?;
        }
        writeln!(f, "PM {}", self.perfect)
    }
}

impl FromStr for TraceFile {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut near = None;
        let mut perfect = None;
        let mut traces = Vec::new();
        for line in text.lines().map(str::trim) {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (head, rest) = line.split_once(' ').unwrap_or((line, ""));
            match head {
                "NEAR" => near = Some(rest.parse::<Matching>()?),
                "PM" => perfect = Some(rest.parse::<Matching>()?),
                "CASE" => traces.push(line.parse()?),
                _ => return Err(Error::InvalidTrace(format!("unexpected line `{line}`"))),
            }
        }
        Ok(TraceFile {
            near: near.ok_or_else(|| Error::InvalidTrace("missing NEAR line".into()))?,
            traces,
            perfect: perfect.ok_or_else(|| Error::InvalidTrace("missing PM line".into()))?,
        })
    }
}

/// Replays every trace from `NEAR` and checks the result is the claimed
/// perfect matching of `h`.
pub fn verify_trace(h: &Hypergraph, file: &TraceFile) -> Result<()> {
    if !h.validate_matching(&file.near).valid {
        return Err(Error::InvalidTrace("NEAR is not a matching of the graph".into()));
    }
    let mut current = file.near.clone();
    for t in &file.traces {
        if let Some(e) = t.added.iter().find(|e| !h.contains(e)) {
            return Err(Error::InvalidTrace(format!("{e} is not an edge")));
        }
        current = t.replay(&current)?;
    }
    if current != file.perfect {
        return Err(Error::InvalidTrace(
            "replay does not reproduce the claimed matching".into(),
        ));
    }
    if !h.validate_matching(&current).perfect {
        return Err(Error::InvalidTrace("claimed matching is not perfect".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_complete, gen_parity_sharpness, gen_random};
    use crate::oracle::has_perfect_matching;

    fn m(edges: &[[usize; 3]]) -> Matching {
        Matching::new(edges.iter().map(|&e| Edge::from(e)).collect())
    }

    #[test]
    fn contraction_of_complete_graph() {
        let (tri, map) = contract_to_tripartite(&gen_complete(4, 2).unwrap()).unwrap();
        assert_eq!(tri.r(), 3);
        assert_eq!(tri.edge_count(), 8);
        assert_eq!(map.tuple(1), vec![1, 1]);
    }

    #[test]
    fn contraction_of_single_edge() {
        let h = Hypergraph::new(4, 2, [Edge::from([0, 0, 0, 0])]).unwrap();
        let (tri, _) = contract_to_tripartite(&h).unwrap();
        assert_eq!(tri.edges(), &[Edge::from([0, 0, 0])]);
    }

    #[test]
    fn contraction_round_trip_on_random_instance() {
        let h = gen_random(5, 3, 0.6, 11).unwrap();
        let (tri, map) = contract_to_tripartite(&h).unwrap();
        for e in tri.edges() {
            assert!(h.contains(&map.decontract_edge(e).unwrap()));
        }
        for e in h.edges() {
            if let Some(c) = map.contract_edge(e) {
                assert!(tri.contains(&c), "{e}");
            }
        }
        let via_diagonal = h.edges().iter().filter(|e| map.contract_edge(e).is_some()).count();
        assert_eq!(via_diagonal, tri.edge_count());
    }

    #[test]
    fn contraction_needs_more_than_three_sides() {
        assert!(matches!(
            contract_to_tripartite(&gen_complete(3, 2).unwrap()),
            Err(Error::NothingToContract(3))
        ));
    }

    #[test]
    fn decontraction_examples() {
        let map = ContractionMap { r: 4, n: 2 };
        let out = decontract_matching(&m(&[[0, 0, 0], [1, 1, 1]]), &map).unwrap();
        assert_eq!(out.to_string(), "(0,0,0,0) (1,1,1,1)");

        let map1 = ContractionMap { r: 5, n: 1 };
        let out = decontract_matching(&m(&[[0, 0, 0]]), &map1).unwrap();
        assert_eq!(out.to_string(), "(0,0,0,0,0)");

        assert!(matches!(
            decontract_matching(&m(&[[0, 0, 0], [0, 1, 1]]), &map),
            Err(Error::InvalidMatching(_))
        ));
        assert!(matches!(
            decontract_matching(&m(&[[0, 0, 0]]), &map),
            Err(Error::InvalidMatching(_))
        ));
    }

    #[test]
    fn decontracted_perfect_matchings_are_perfect() {
        let h = gen_random(5, 3, 0.8, 3).unwrap();
        let (tri, map) = contract_to_tripartite(&h).unwrap();
        // Every perfect matching of the 3-graph, by brute force over edge triples.
        let e = tri.edges();
        let mut seen = 0;
        for a in 0..e.len() {
            for b in a + 1..e.len() {
                for c in b + 1..e.len() {
                    let pm = Matching::new(vec![e[a].clone(), e[b].clone(), e[c].clone()]);
                    if tri.validate_matching(&pm).perfect {
                        seen += 1;
                        let big = decontract_matching(&pm, &map).unwrap();
                        assert!(h.validate_matching(&big).perfect);
                    }
                }
            }
        }
        assert!(seen > 0);
    }

    #[test]
    fn near_perfect_examples() {
        let np = build_near_perfect(&gen_complete(3, 2).unwrap()).unwrap();
        assert_eq!(np.matching, m(&[[0, 0, 0]]));
        assert_eq!(np.unmatched, [1, 1, 1]);

        let h1 = Hypergraph::new(3, 1, [Edge::from([0, 0, 0])]).unwrap();
        let np = build_near_perfect(&h1).unwrap();
        assert!(np.matching.is_empty());
        assert_eq!(np.unmatched, [0, 0, 0]);

        assert!(matches!(
            build_near_perfect(&gen_complete(4, 2).unwrap()),
            Err(Error::UnsupportedArity { .. })
        ));
    }

    #[test]
    fn near_perfect_needs_exchanges() {
        // Greedy takes (0,0,0) first, which blocks the only size-2 matching.
        let h = Hypergraph::new(
            3,
            3,
            [[0, 0, 0], [0, 1, 1], [1, 0, 2], [2, 2, 2]].map(Edge::from),
        )
        .unwrap();
        let np = build_near_perfect(&h).unwrap();
        assert_eq!(np.matching.len(), 2);
        assert!(h.validate_matching(&np.matching).valid);
    }

    #[test]
    fn near_perfect_failure_is_reported() {
        let h = Hypergraph::new(3, 3, [[0, 0, 0], [0, 1, 1]].map(Edge::from)).unwrap();
        assert!(matches!(
            build_near_perfect(&h),
            Err(Error::NoNearPerfectFound { .. })
        ));
    }

    #[test]
    fn augment_direct_insert() {
        let h = gen_complete(3, 2).unwrap();
        let (pm, t) = augment_near_perfect(&h, &m(&[[0, 0, 0]]), [1, 1, 1]).unwrap();
        assert_eq!(pm, m(&[[0, 0, 0], [1, 1, 1]]));
        assert_eq!(t.case, CaseTag::Case1);
        assert!(t.removed.is_empty());

        let h = Hypergraph::new(
            3,
            2,
            [[0, 0, 0], [1, 1, 1], [0, 1, 1], [1, 0, 0]].map(Edge::from),
        )
        .unwrap();
        let (pm, t) = augment_near_perfect(&h, &m(&[[0, 1, 1]]), [1, 0, 0]).unwrap();
        assert_eq!(pm, m(&[[0, 1, 1], [1, 0, 0]]));
        assert_eq!(t.to_string(), "CASE Case1 w=0:1 +(1,0,0)");
    }

    #[test]
    fn augment_rejects_bad_input() {
        let h = gen_complete(3, 3).unwrap();
        assert!(matches!(
            augment_near_perfect(&h, &m(&[[0, 0, 0]]), [1, 1, 1]),
            Err(Error::InvalidMatching(_))
        ));
        assert!(matches!(
            augment_near_perfect(&h, &m(&[[0, 0, 0], [1, 1, 1]]), [0, 2, 2]),
            Err(Error::InvalidMatching(_))
        ));
    }

    #[test]
    fn augment_reports_violated_hypothesis() {
        let p = gen_parity_sharpness(3, 2).unwrap().graph;
        // (0,0,1) matched; (1,1,0) is not an edge.
        match augment_near_perfect(&p, &m(&[[0, 0, 1]]), [1, 1, 0]) {
            Err(Error::HypothesisViolated {
                witness,
                degree,
                strict,
                ..
            }) => {
                assert_eq!(p.degree(&witness).unwrap(), degree);
                assert!(if strict { 2 * degree <= 2 } else { 2 * degree < 2 });
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn trace_text_round_trip() {
        let t = AugmentationTrace {
            case: CaseTag::Case2b,
            pivot: Vertex::new(0, 3),
            removed: vec![Edge::from([3, 1, 2]), Edge::from([0, 0, 0])],
            added: vec![
                Edge::from([1, 1, 1]),
                Edge::from([2, 2, 2]),
                Edge::from([3, 3, 3]),
            ],
        };
        let line = t.to_string();
        assert_eq!(
            line,
            "CASE Case2b w=0:3 -(3,1,2) -(0,0,0) +(1,1,1) +(2,2,2) +(3,3,3)"
        );
        assert_eq!(line.parse::<AugmentationTrace>().unwrap(), t);
        assert!("CASE Case9 w=0:1".parse::<AugmentationTrace>().is_err());
        assert!("CASE Case1 +(0,0,0)".parse::<AugmentationTrace>().is_err());
    }

    #[test]
    fn solve_complete_four_partite() {
        let h = gen_complete(4, 3).unwrap();
        let sol = find_perfect_matching(&h).unwrap();
        assert!(h.validate_matching(&sol.matching).perfect);
        assert_eq!(sol.matching.len(), 3);
        verify_trace(&h, &sol.trace_file()).unwrap();
    }

    #[test]
    fn solve_bipartite() {
        let h = Hypergraph::new(2, 3, [[0, 0], [0, 1], [1, 1], [1, 2], [2, 0], [2, 2]].map(Edge::from))
            .unwrap();
        let sol = find_perfect_matching(&h).unwrap();
        assert!(h.validate_matching(&sol.matching).perfect);
        verify_trace(&h, &sol.trace_file()).unwrap();
    }

    #[test]
    fn solve_refuses_parity_instance() {
        let p = gen_parity_sharpness(3, 2).unwrap().graph;
        assert!(!has_perfect_matching(&p, DEFAULT_BUDGET).unwrap());
        assert!(matches!(
            find_perfect_matching(&p),
            Err(Error::ConditionViolated(_))
        ));
    }

    #[test]
    fn tampered_traces_are_rejected() {
        let h = gen_complete(3, 3).unwrap();
        let sol = find_perfect_matching(&h).unwrap();
        let mut file = sol.trace_file();
        verify_trace(&h, &file).unwrap();
        let text = file.to_string();
        assert_eq!(text.parse::<TraceFile>().unwrap(), file);

        file.perfect = m(&[[0, 0, 0], [1, 1, 1], [2, 2, 2]]);
        if file.perfect != sol.matching {
            assert!(verify_trace(&h, &file).is_err());
        }
        let mut file = sol.trace_file();
        file.traces[0].added.pop();
        assert!(verify_trace(&h, &file).is_err());
    }
}

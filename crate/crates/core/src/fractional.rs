//! Fractional matchings and covers, computed exactly.
//!
//! `nu_star` and `tau_star` solve the matching and cover programs as two
//! separate primal LPs so their agreement is a genuine check. The cover
//! analysis replays, for a concrete cover `g`, the counting argument showing
//! `g[V] >= n` whenever every non-edge `z` has `theta + zeta >= 1`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::conditions::{check_fractional_condition, NormalizedDegrees};
use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Matching, Odometer, PartialTuple, SideSet, Vertex};
use crate::rational::{format_pq, int, Rational};
use crate::simplex::{Constraint, LinearProgram, LpOutcome, Relation};

#[derive(Debug, Clone, PartialEq)]
pub enum Weights {
    /// A candidate fractional matching `h`.
    Edges(BTreeMap<Edge, Rational>),
    /// A candidate fractional cover `g`.
    Vertices(BTreeMap<Vertex, Rational>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct FractionalAssignment {
    weights: Weights,
    total: Rational,
}

impl FractionalAssignment {
    pub fn on_edges(map: BTreeMap<Edge, Rational>) -> Self {
        let total = map.values().sum();
        FractionalAssignment {
            weights: Weights::Edges(map),
            total,
        }
    }

    pub fn on_vertices(map: BTreeMap<Vertex, Rational>) -> Self {
        let total = map.values().sum();
        FractionalAssignment {
            weights: Weights::Vertices(map),
            total,
        }
    }

    pub fn weights(&self) -> &Weights {
        &self.weights
    }

    /// Sum of all weights.
    pub fn total(&self) -> &Rational {
        &self.total
    }

    pub fn is_nonnegative(&self) -> bool {
        match &self.weights {
            Weights::Edges(m) => m.values().all(|w| !w.is_negative()),
            Weights::Vertices(m) => m.values().all(|w| !w.is_negative()),
        }
    }

    pub fn vertex_weight(&self, v: Vertex) -> Rational {
        match &self.weights {
            Weights::Vertices(m) => m.get(&v).cloned().unwrap_or_else(Rational::zero),
            Weights::Edges(_) => Rational::zero(),
        }
    }

    /// `g[e]`: total vertex weight on `e`. Zero for edge weights.
    pub fn weight_on_edge(&self, e: &Edge) -> Rational {
        e.vertices().map(|v| self.vertex_weight(v)).sum()
    }

    /// Per-vertex load `sum { h(e) : x in e }` over every vertex of `h`.
    pub fn loads(&self, h: &Hypergraph) -> BTreeMap<Vertex, Rational> {
        let mut loads: BTreeMap<Vertex, Rational> = (0..h.r())
            .flat_map(|s| (0..h.n()).map(move |i| (Vertex::new(s, i), Rational::zero())))
            .collect();
        if let Weights::Edges(m) = &self.weights {
            for (e, w) in m {
                for v in e.vertices() {
                    if let Some(l) = loads.get_mut(&v) {
                        *l += w;
                    }
                }
            }
        }
        loads
    }

    pub fn is_fractional_matching(&self, h: &Hypergraph) -> bool {
        let Weights::Edges(m) = &self.weights else {
            return false;
        };
        self.is_nonnegative()
            && m.keys().all(|e| h.contains(e))
            && self.loads(h).values().all(|l| *l <= Rational::one())
    }

    /// Every vertex has load exactly 1.
    pub fn is_perfect_matching(&self, h: &Hypergraph) -> bool {
        self.is_fractional_matching(h) && self.loads(h).values().all(|l| l.is_one())
    }

    pub fn is_cover(&self, h: &Hypergraph) -> bool {
        matches!(self.weights, Weights::Vertices(_))
            && self.is_nonnegative()
            && h.edges().iter().all(|e| self.weight_on_edge(e) >= Rational::one())
    }

    /// One `<edge or vertex> p/q` line per entry, in canonical order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        match &self.weights {
            Weights::Edges(m) => {
                for (e, w) in m {
                    let _ = writeln!(out, "{e} {}", format_pq(w));
                }
            }
            Weights::Vertices(m) => {
                for (v, w) in m {
                    let _ = writeln!(out, "{v} {}", format_pq(w));
                }
            }
        }
        out
    }
}

fn unwrap_optimal(outcome: LpOutcome, what: &str) -> (Rational, Vec<Rational>) {
    match outcome {
        LpOutcome::Optimal { value, x } => (value, x),
        // Both programs are feasible (zero / one full side) and bounded.
        other => unreachable!("{what} program returned {other:?}"),
    }
}

/// Maximum fractional matching value and an optimal matching.
pub fn nu_star(h: &Hypergraph) -> (Rational, FractionalAssignment) {
    let edges = h.edges();
    let mut incidence: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (j, e) in edges.iter().enumerate() {
        for v in e.vertices() {
            incidence.entry(v).or_default().push(j);
        }
    }
    let lp = LinearProgram {
        num_vars: edges.len(),
        objective: vec![Rational::one(); edges.len()],
        maximize: true,
        constraints: incidence
            .values()
            .map(|cols| Constraint {
                coeffs: cols.iter().map(|&j| (j, Rational::one())).collect(),
                relation: Relation::Le,
                rhs: Rational::one(),
            })
            .collect(),
    };
    let (value, x) = unwrap_optimal(lp.solve(), "fractional matching");
    let map = edges.iter().cloned().zip(x).collect();
    (value, FractionalAssignment::on_edges(map))
}

/// Minimum fractional cover value and an optimal cover.
pub fn tau_star(h: &Hypergraph) -> (Rational, FractionalAssignment) {
    let (r, n) = (h.r(), h.n());
    let var = |v: Vertex| v.side * n + v.index;
    let lp = LinearProgram {
        num_vars: r * n,
        objective: vec![Rational::one(); r * n],
        maximize: false,
        constraints: h
            .edges()
            .iter()
            .map(|e| Constraint {
                coeffs: e.vertices().map(|v| (var(v), Rational::one())).collect(),
                relation: Relation::Ge,
                rhs: Rational::one(),
            })
            .collect(),
    };
    let (value, x) = unwrap_optimal(lp.solve(), "fractional cover");
    let map = (0..r)
        .flat_map(|s| (0..n).map(move |i| Vertex::new(s, i)))
        .map(|v| (v, x[var(v)].clone()))
        .collect();
    (value, FractionalAssignment::on_vertices(map))
}

/// `nu* == tau*`, compared exactly.
pub fn verify_duality(h: &Hypergraph) -> bool {
    nu_star(h).0 == tau_star(h).0
}

/// One perfect matching of the complete k-partite k-graph, identified by its
/// offset vector `c`: edges `(i, i+c_1, ..., i+c_{k-1}) mod n`.
#[derive(Debug, Clone, PartialEq)]
pub struct OffsetMatching {
    pub offsets: Vec<usize>,
    pub matching: Matching,
}

/// Partitions the `n^k` tuples of the complete k-partite k-graph into
/// `n^(k-1)` perfect matchings, in lexicographic order of offsets.
pub fn decompose_complete_multipartite(n: usize, k: usize) -> Result<Vec<OffsetMatching>> {
    if n == 0 || k == 0 {
        return Err(Error::InvalidParameter(format!(
            "decomposition needs n >= 1 and k >= 1, got n={n} k={k}"
        )));
    }
    Ok(Odometer::new(n, k - 1)
        .map(|offsets| {
            let edges = (0..n)
                .map(|i| {
                    let mut t = Vec::with_capacity(k);
                    t.push(i);
                    t.extend(offsets.iter().map(|c| (i + c) % n));
                    Edge::new(t)
                })
                .collect();
            OffsetMatching {
                offsets,
                matching: Matching::new(edges),
            }
        })
        .collect())
}

/// A member of the decomposition holding the most good I-tuples.
#[derive(Debug, Clone, PartialEq)]
pub struct GoodSelection {
    pub offsets: Vec<usize>,
    /// Disjoint good I-tuples: `y` with `y ∪ (z ∩ I^c)` an edge.
    pub good: Vec<PartialTuple>,
    /// `d(z ∩ I^c) / n^|I|`.
    pub zeta: Rational,
    /// `ceil(zeta * n)`, the pigeonhole guarantee on `good.len()`.
    pub guaranteed: usize,
}

fn check_full_tuple(h: &Hypergraph, z: &Edge) -> Result<()> {
    if z.arity() != h.r() || z.as_slice().iter().any(|&v| v >= h.n()) {
        return Err(Error::InvalidTuple(format!(
            "{z} is not a legal {}-tuple with indices below {}",
            h.r(),
            h.n()
        )));
    }
    Ok(())
}

fn select_on(h: &Hypergraph, sides: &SideSet, z: &Edge) -> Result<GoodSelection> {
    let n = h.n();
    let k = sides.len();
    let mut best: Option<(usize, &OffsetMatching, Vec<PartialTuple>)> = None;
    let decomposition = decompose_complete_multipartite(n, k)?;
    let mut total_good = 0usize;
    for member in &decomposition {
        let mut good = Vec::new();
        for y in member.matching.iter() {
            let mut full = z.clone().into_vec();
            for (pos, &side) in sides.as_slice().iter().enumerate() {
                full[side] = y[pos];
            }
            if h.contains_slice(&full) {
                good.push(PartialTuple::from_sides(sides.as_slice(), y.as_slice()));
            }
        }
        total_good += good.len();
        if best.as_ref().is_none_or(|(c, ..)| good.len() > *c) {
            best = Some((good.len(), member, good));
        }
    }
    let (_, member, good) = best.expect("decomposition is nonempty");
    let zeta = int(total_good) / crate::rational::pow(n, k);
    let guaranteed = ceil_to_usize(&(&zeta * int(n)));
    if good.len() < guaranteed {
        return Err(Error::Internal(format!(
            "pigeonhole failed: best member has {} good tuples, need {guaranteed}",
            good.len()
        )));
    }
    Ok(GoodSelection {
        offsets: member.offsets.clone(),
        good,
        zeta,
        guaranteed,
    })
}

fn ceil_to_usize(q: &Rational) -> usize {
    let (d, m) = q.numer().div_mod_floor(q.denom());
    let c = if m.is_zero() { d } else { d + 1 };
    usize::try_from(c).unwrap_or(0)
}

/// Picks the decomposition member with the most good I-tuples for `z`.
pub fn select_good_matching(h: &Hypergraph, sides: &[usize], z: &Edge) -> Result<GoodSelection> {
    let sides = SideSet::proper(h.r(), sides)?;
    check_full_tuple(h, z)?;
    select_on(h, &sides, z)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoverBranch {
    /// `beta + gamma >= 1`: the bound `n * g[z]` already reaches `n`.
    MinimalTupleHeavy,
    /// `beta + gamma < 1`: `z` is a non-edge and the good-tuple count is used.
    MinimalTupleLight,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CoverAnalysis {
    pub sides: SideSet,
    /// Per-side minimum of `g`.
    pub alpha: Vec<Rational>,
    /// Smallest index attaining `alpha` on each side.
    pub argmin: Vec<usize>,
    pub beta: Rational,
    pub gamma: Rational,
    /// The tuple of per-side minimizers.
    pub z: Edge,
    pub theta: Rational,
    pub zeta: Rational,
    pub branch: CoverBranch,
    /// Disjoint good I-tuples (second branch only).
    pub good_i: Vec<PartialTuple>,
    /// Disjoint good I^c-tuples (second branch only).
    pub good_c: Vec<PartialTuple>,
    /// Lower bound derived for `g[V]`.
    pub bound: Rational,
    /// `g[V]`.
    pub total: Rational,
    /// `theta + zeta >= 1` at `z`.
    pub condition_at_z: bool,
}

pub fn analyze_cover(
    h: &Hypergraph,
    g: &FractionalAssignment,
    sides: &[usize],
) -> Result<CoverAnalysis> {
    let i_sides = SideSet::proper(h.r(), sides)?;
    let (r, n) = (h.r(), h.n());
    let Weights::Vertices(_) = g.weights() else {
        return Err(Error::InvalidParameter(
            "cover analysis needs vertex weights".into(),
        ));
    };
    if !g.is_nonnegative() {
        return Err(Error::InvalidParameter("cover has negative weights".into()));
    }
    for e in h.edges() {
        let w = g.weight_on_edge(e);
        if w < Rational::one() {
            return Err(Error::NotACover {
                edge: e.clone(),
                weight: w,
            });
        }
    }

    let mut alpha = Vec::with_capacity(r);
    let mut argmin = Vec::with_capacity(r);
    for side in 0..r {
        let (idx, w) = (0..n)
            .map(|i| (i, g.vertex_weight(Vertex::new(side, i))))
            .fold(None::<(usize, Rational)>, |acc, (i, w)| match acc {
                Some((_, ref b)) if *b <= w => acc,
                _ => Some((i, w)),
            })
            .expect("n >= 1");
        argmin.push(idx);
        alpha.push(w);
    }
    let sum_on = |set: &SideSet| -> Rational { set.as_slice().iter().map(|&s| alpha[s].clone()).sum() };
    let c_sides = i_sides.complement(r);
    let beta = sum_on(&i_sides);
    let gamma = sum_on(&c_sides);
    let z = Edge::new(argmin.clone());
    let norm = NormalizedDegrees::new(h, i_sides.clone());
    let (theta, zeta) = norm.at(&z);
    let condition_at_z = &theta + &zeta >= Rational::one();
    let total = g.total().clone();
    let nn = int(n);
    let one = Rational::one();

    let weight_on_sides = |set: &SideSet| -> Rational {
        set.as_slice()
            .iter()
            .flat_map(|&s| (0..n).map(move |i| Vertex::new(s, i)))
            .map(|v| g.vertex_weight(v))
            .sum()
    };

    let (branch, bound, good_i, good_c) = if &beta + &gamma >= one {
        (CoverBranch::MinimalTupleHeavy, &nn * (&beta + &gamma), vec![], vec![])
    } else {
        if h.contains(&z) {
            return Err(Error::Internal(format!(
                "{z} is an edge but carries weight {} < 1",
                &beta + &gamma
            )));
        }
        let sel_i = select_on(h, &i_sides, &z)?;
        let sel_c = select_on(h, &c_sides, &z)?;
        debug_assert_eq!(sel_i.zeta, zeta);
        debug_assert_eq!(sel_c.zeta, theta);

        // g on the I-sides: good tuples weigh >= 1 - gamma, every other vertex >= its side minimum.
        let y = int(sel_i.good.len());
        let i_weight = weight_on_sides(&i_sides);
        let i_count_bound = &y * (&one - &gamma) + (&nn - &y) * &beta;
        let i_bound = &zeta * &nn * (&one - &gamma) + (&one - &zeta) * &nn * &beta;
        let yc = int(sel_c.good.len());
        let c_weight = weight_on_sides(&c_sides);
        let c_count_bound = &yc * (&one - &beta) + (&nn - &yc) * &gamma;
        let c_bound = &theta * &nn * (&one - &beta) + (&one - &theta) * &nn * &gamma;
        if !(i_weight >= i_count_bound && i_count_bound >= i_bound) {
            return Err(Error::Internal(format!(
                "I-side chain broken: {i_weight} >= {i_count_bound} >= {i_bound}"
            )));
        }
        if !(c_weight >= c_count_bound && c_count_bound >= c_bound) {
            return Err(Error::Internal(format!(
                "complement-side chain broken: {c_weight} >= {c_count_bound} >= {c_bound}"
            )));
        }
        let bound = i_bound + c_bound;
        let closed = &nn * (&one + (&beta + &gamma - &one) * (&one - &zeta - &theta));
        if bound != closed {
            return Err(Error::Internal(format!(
                "bound {bound} differs from its closed form {closed}"
            )));
        }
        (CoverBranch::MinimalTupleLight, bound, sel_i.good, sel_c.good)
    };

    if bound > total {
        return Err(Error::Internal(format!(
            "derived bound {bound} exceeds g[V] = {total}"
        )));
    }
    if condition_at_z && bound < nn {
        return Err(Error::Internal(format!(
            "condition holds at {z} but bound {bound} < n"
        )));
    }
    Ok(CoverAnalysis {
        sides: i_sides,
        alpha,
        argmin,
        beta,
        gamma,
        z,
        theta,
        zeta,
        branch,
        good_i,
        good_c,
        bound,
        total,
        condition_at_z,
    })
}

/// A perfect fractional matching, provided the fractional degree condition holds.
pub fn perfect_fractional_matching(h: &Hypergraph, sides: &[usize]) -> Result<FractionalAssignment> {
    let report = check_fractional_condition(h, sides, false)?;
    if !report.holds {
        return Err(Error::ConditionViolated(Box::new(report)));
    }
    let (value, assignment) = nu_star(h);
    if value != int(h.n()) || !assignment.is_perfect_matching(h) {
        return Err(Error::Internal(format!(
            "condition holds but nu* = {value} with a non-perfect optimum"
        )));
    }
    Ok(assignment)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    fn complete(r: usize, n: usize) -> Hypergraph {
        Hypergraph::new(r, n, Odometer::new(n, r).map(Edge::from)).unwrap()
    }

    fn parity32() -> Hypergraph {
        Hypergraph::new(
            3,
            2,
            [[1, 1, 1], [0, 0, 1], [0, 1, 0], [1, 0, 0]].map(Edge::from),
        )
        .unwrap()
    }

    /// Feasible matching and cover of equal value certify both optimal.
    fn certify(h: &Hypergraph) -> Rational {
        let (nu, hm) = nu_star(h);
        let (tau, gc) = tau_star(h);
        assert!(hm.is_fractional_matching(h));
        assert!(gc.is_cover(h));
        assert_eq!(hm.total(), &nu);
        assert_eq!(gc.total(), &tau);
        assert_eq!(nu, tau);
        nu
    }

    #[test]
    fn nu_star_examples() {
        assert_eq!(certify(&complete(3, 3)), int(3));
        assert_eq!(certify(&parity32()), int(2));
        let (v, a) = nu_star(&Hypergraph::empty(3, 2).unwrap());
        assert_eq!(v, int(0));
        assert_eq!(a.total(), &int(0));
    }

    #[test]
    fn tau_star_examples() {
        assert_eq!(certify(&complete(3, 2)), int(2));
        let single = Hypergraph::new(3, 1, [Edge::from([0, 0, 0])]).unwrap();
        assert_eq!(tau_star(&single).0, int(1));
        assert_eq!(tau_star(&parity32()).0, int(2));
        assert_eq!(tau_star(&Hypergraph::empty(3, 2).unwrap()).0, int(0));
    }

    #[test]
    fn duality_examples() {
        assert!(verify_duality(&complete(3, 3)));
        assert!(verify_duality(&parity32()));
    }

    #[test]
    fn decomposition_examples() {
        let d = decompose_complete_multipartite(2, 2).unwrap();
        let sets: Vec<String> = d.iter().map(|m| m.matching.to_string()).collect();
        assert_eq!(sets, vec!["(0,0) (1,1)", "(0,1) (1,0)"]);

        let d = decompose_complete_multipartite(3, 1).unwrap();
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].matching.to_string(), "(0) (1) (2)");

        let d = decompose_complete_multipartite(3, 3).unwrap();
        assert_eq!(d.len(), 9);
        let mut all: Vec<&Edge> = d.iter().flat_map(|m| m.matching.iter()).collect();
        assert!(d.iter().all(|m| m.matching.len() == 3 && m.matching.is_disjoint()));
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 27);

        assert!(decompose_complete_multipartite(0, 2).is_err());
    }

    #[test]
    fn good_selection_examples() {
        let h = complete(3, 3);
        let sel = select_good_matching(&h, &[0, 2], &Edge::from([1, 2, 0])).unwrap();
        assert_eq!(sel.good.len(), 3);
        assert_eq!(sel.offsets, vec![0]);

        let e = Hypergraph::empty(3, 2).unwrap();
        let sel = select_good_matching(&e, &[0], &Edge::from([0, 0, 0])).unwrap();
        assert!(sel.good.is_empty());
        assert_eq!(sel.guaranteed, 0);

        // z = (a1, b2, b3) = (0, 1, 1); good pairs on sides {0,1}: (1,1), (0,0).
        let sel = select_good_matching(&parity32(), &[0, 1], &Edge::from([0, 1, 1])).unwrap();
        assert_eq!(sel.offsets, vec![0]);
        assert_eq!(sel.good.len(), 2);
        assert_eq!(sel.zeta, ratio(1, 2));
        assert_eq!(sel.guaranteed, 1);

        assert!(matches!(
            select_good_matching(&parity32(), &[], &Edge::from([0, 1, 1])),
            Err(Error::InvalidSubset { .. })
        ));
        assert!(matches!(
            select_good_matching(&parity32(), &[0], &Edge::from([0, 1])),
            Err(Error::InvalidTuple(_))
        ));
    }

    fn cover(r: usize, n: usize, f: impl Fn(Vertex) -> Rational) -> FractionalAssignment {
        FractionalAssignment::on_vertices(
            (0..r)
                .flat_map(|s| (0..n).map(move |i| Vertex::new(s, i)))
                .map(|v| (v, f(v)))
                .collect(),
        )
    }

    #[test]
    fn analyze_uniform_cover_on_complete_graph() {
        let h = complete(3, 3);
        let g = cover(3, 3, |_| ratio(1, 3));
        let a = analyze_cover(&h, &g, &[0]).unwrap();
        assert_eq!(a.branch, CoverBranch::MinimalTupleHeavy);
        assert_eq!(&a.beta + &a.gamma, int(1));
        assert_eq!(a.bound, int(3));
    }

    #[test]
    fn analyze_parity_cover_first_branch() {
        let h = parity32();
        let g = cover(3, 2, |v| if v.side == 0 { ratio(1, 2) } else { ratio(1, 4) });
        assert!(g.is_cover(&h));
        let a = analyze_cover(&h, &g, &[0]).unwrap();
        assert_eq!(a.alpha, vec![ratio(1, 2), ratio(1, 4), ratio(1, 4)]);
        assert_eq!(a.beta, ratio(1, 2));
        assert_eq!(a.gamma, ratio(1, 2));
        assert_eq!(a.branch, CoverBranch::MinimalTupleHeavy);
        assert_eq!(a.bound, int(2));
    }

    #[test]
    fn analyze_light_minimal_tuple() {
        // Every edge meets {0:0, 1:1}; g = 1 there is an optimal cover with all side minima 0.
        let edges = Odometer::new(2, 3)
            .filter(|t| t[0] == 0 || t[1] == 1)
            .map(Edge::from);
        let h = Hypergraph::new(3, 2, edges).unwrap();
        assert!(check_fractional_condition(&h, &[0], false).unwrap().holds);
        let g = cover(3, 2, |v| {
            if v == Vertex::new(0, 0) || v == Vertex::new(1, 1) {
                int(1)
            } else {
                int(0)
            }
        });
        let a = analyze_cover(&h, &g, &[0]).unwrap();
        assert_eq!(a.branch, CoverBranch::MinimalTupleLight);
        assert_eq!(a.z, Edge::from([1, 0, 0]));
        assert_eq!(a.theta, ratio(1, 2));
        assert_eq!(a.zeta, ratio(1, 2));
        assert!(a.condition_at_z);
        assert_eq!(a.bound, int(2));
        assert_eq!(a.total, int(2));
    }

    #[test]
    fn analyze_rejects_non_covers() {
        let h = parity32();
        let g = cover(3, 2, |_| ratio(1, 4));
        assert!(matches!(
            analyze_cover(&h, &g, &[0]),
            Err(Error::NotACover { .. })
        ));
    }

    #[test]
    fn perfect_fractional_examples() {
        let a = perfect_fractional_matching(&complete(3, 2), &[0]).unwrap();
        assert!(a.is_perfect_matching(&complete(3, 2)));

        let h = parity32();
        let a = perfect_fractional_matching(&h, &[0]).unwrap();
        assert!(a.is_perfect_matching(&h));
        assert_eq!(a.total(), &int(2));
        // n = 2 with 4 edges and each vertex on exactly 2 of them: loads force 1/2 each.
        let Weights::Edges(m) = a.weights() else { panic!() };
        assert!(m.values().all(|w| *w == ratio(1, 2)));

        let e = Hypergraph::empty(3, 2).unwrap();
        match perfect_fractional_matching(&e, &[0]) {
            Err(Error::ConditionViolated(rep)) => assert!(rep.worst_tuple.is_some()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn assignment_text() {
        let g = cover(2, 1, |v| ratio(v.side as i64, 2));
        assert_eq!(g.to_text(), "0:0 0/1\n1:0 1/2\n");
    }
}

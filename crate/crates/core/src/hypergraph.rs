//! n-balanced r-partite r-uniform hypergraphs.
//!
//! Sides are numbered `0..r` and vertices on every side `0..n`. An edge is an
//! r-tuple holding one vertex index per side, so legality is structural.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// One vertex per side, position `i` is the index on side `i`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Edge(Vec<usize>);

impl Edge {
    pub fn new(indices: Vec<usize>) -> Self {
        Edge(indices)
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0
            .iter()
            .enumerate()
            .map(|(side, &index)| Vertex::new(side, index))
    }

    /// The tuple obtained by dropping `side`.
    pub fn project_without(&self, side: usize) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.0.len().saturating_sub(1));
        for (i, &v) in self.0.iter().enumerate() {
            if i != side {
                out.push(v);
            }
        }
        out
    }

    /// The entries on `sides`, in the given order.
    pub fn project_onto(&self, sides: &[usize]) -> Vec<usize> {
        sides.iter().map(|&s| self.0[s]).collect()
    }
}

impl std::ops::Index<usize> for Edge {
    type Output = usize;

    fn index(&self, side: usize) -> &usize {
        &self.0[side]
    }
}

impl From<Vec<usize>> for Edge {
    fn from(v: Vec<usize>) -> Self {
        Edge(v)
    }
}

impl<const K: usize> From<[usize; K]> for Edge {
    fn from(v: [usize; K]) -> Self {
        Edge(v.to_vec())
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Edge {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s
            .trim()
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| Error::InvalidTuple(format!("expected `(a,b,..)`, got `{s}`")))?;
        inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidTuple(format!("bad index `{t}` in `{s}`")))
            })
            .collect::<Result<Vec<_>>>()
            .map(Edge)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Vertex {
    pub side: usize,
    pub index: usize,
}

impl Vertex {
    pub fn new(side: usize, index: usize) -> Self {
        Vertex { side, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.side, self.index)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (a, b) = s
            .split_once(':')
            .ok_or_else(|| Error::InvalidTuple(format!("expected `side:index`, got `{s}`")))?;
        let side = a
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTuple(format!("bad side in `{s}`")))?;
        let index = b
            .trim()
            .parse()
            .map_err(|_| Error::InvalidTuple(format!("bad index in `{s}`")))?;
        Ok(Vertex { side, index })
    }
}

/// A legal tuple: at most one vertex per side, keyed by side.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PartialTuple(BTreeMap<usize, usize>);

impl PartialTuple {
    pub fn new() -> Self {
        PartialTuple(BTreeMap::new())
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut t = PartialTuple::new();
        for (side, index) in pairs {
            if t.0.insert(side, index).is_some() {
                return Err(Error::InvalidTuple(format!(
                    "side {side} occupied twice"
                )));
            }
        }
        Ok(t)
    }

    /// Zips `sides` with `indices`. Sides are assumed distinct.
    pub fn from_sides(sides: &[usize], indices: &[usize]) -> Self {
        debug_assert_eq!(sides.len(), indices.len());
        PartialTuple(sides.iter().copied().zip(indices.iter().copied()).collect())
    }

    /// The restriction of an edge to `sides`.
    pub fn restrict(edge: &Edge, sides: &[usize]) -> Self {
        PartialTuple(sides.iter().map(|&s| (s, edge[s])).collect())
    }

    pub fn with(mut self, side: usize, index: usize) -> Self {
        self.0.insert(side, index);
        self
    }

    pub fn get(&self, side: usize) -> Option<usize> {
        self.0.get(&side).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn sides(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.keys().copied()
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.0.iter().map(|(&s, &v)| (s, v))
    }

    /// Indices in increasing side order.
    pub fn indices(&self) -> Vec<usize> {
        self.0.values().copied().collect()
    }

    pub fn agrees_with(&self, edge: &Edge) -> bool {
        self.0
            .iter()
            .all(|(&s, &v)| s < edge.arity() && edge[s] == v)
    }
}

impl fmt::Display for PartialTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (s, v)) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{s}:{v}")?;
        }
        f.write_str("}")
    }
}

/// A sorted set of distinct sides.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SideSet(Vec<usize>);

impl SideSet {
    /// Any subset of `0..r`.
    pub fn new(r: usize, sides: &[usize]) -> Result<Self> {
        let mut v = sides.to_vec();
        v.sort_unstable();
        v.dedup();
        if v.len() != sides.len() || v.iter().any(|&s| s >= r) {
            return Err(Error::InvalidSubset {
                sides: sides.to_vec(),
                r,
            });
        }
        Ok(SideSet(v))
    }

    /// A nonempty proper subset of `0..r`.
    pub fn proper(r: usize, sides: &[usize]) -> Result<Self> {
        let set = SideSet::new(r, sides)?;
        if set.0.is_empty() || set.0.len() == r {
            return Err(Error::InvalidSubset {
                sides: sides.to_vec(),
                r,
            });
        }
        Ok(set)
    }

    pub fn all(r: usize) -> Self {
        SideSet((0..r).collect())
    }

    pub fn complement(&self, r: usize) -> SideSet {
        SideSet((0..r).filter(|s| !self.0.contains(s)).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, side: usize) -> bool {
        self.0.binary_search(&side).is_ok()
    }
}

impl fmt::Display for SideSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|s| s.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A set of edges, kept sorted.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Matching {
    edges: Vec<Edge>,
}

impl Matching {
    pub fn new(mut edges: Vec<Edge>) -> Self {
        edges.sort();
        edges.dedup();
        Matching { edges }
    }

    pub fn empty() -> Self {
        Matching::default()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn insert(&mut self, e: Edge) -> bool {
        match self.edges.binary_search(&e) {
            Ok(_) => false,
            Err(pos) => {
                self.edges.insert(pos, e);
                true
            }
        }
    }

    pub fn remove(&mut self, e: &Edge) -> bool {
        match self.edges.binary_search(e) {
            Ok(pos) => {
                self.edges.remove(pos);
                true
            }
            Err(_) => false,
        }
    }

    /// Pairwise disjointness on every side, ignoring membership in any graph.
    pub fn is_disjoint(&self) -> bool {
        let Some(first) = self.edges.first() else {
            return true;
        };
        let r = first.arity();
        if self.edges.iter().any(|e| e.arity() != r) {
            return false;
        }
        (0..r).all(|side| {
            let mut seen = BTreeSet::new();
            self.edges.iter().all(|e| seen.insert(e[side]))
        })
    }

    pub fn iter(&self) -> impl Iterator<Item = &Edge> {
        self.edges.iter()
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, e) in self.edges.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{e}")?;
        }
        Ok(())
    }
}

impl FromStr for Matching {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        s.split_whitespace()
            .map(str::parse)
            .collect::<Result<Vec<Edge>>>()
            .map(Matching::new)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MatchingVerdict {
    pub valid: bool,
    pub perfect: bool,
}

/// An n-balanced r-partite r-graph. Immutable once built.
#[derive(Debug, Clone)]
pub struct Hypergraph {
    r: usize,
    n: usize,
    edges: Vec<Edge>,
    /// `projections[i]` counts edges by their projection onto all sides but `i`.
    projections: Vec<HashMap<Vec<usize>, usize>>,
}

impl PartialEq for Hypergraph {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.n == other.n && self.edges == other.edges
    }
}

impl Eq for Hypergraph {}

impl Hypergraph {
    /// Builds a hypergraph, silently dropping duplicate edges.
    pub fn new(r: usize, n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        Self::with_duplicate_count(r, n, edges).map(|(h, _)| h)
    }

    /// Like [`Hypergraph::new`], also returning how many duplicate edges were dropped.
    pub fn with_duplicate_count(
        r: usize,
        n: usize,
        edges: impl IntoIterator<Item = Edge>,
    ) -> Result<(Self, usize)> {
        if r < 2 {
            return Err(Error::InvalidParameter(format!("r must be at least 2, got {r}")));
        }
        if n < 1 {
            return Err(Error::InvalidParameter("n must be at least 1".into()));
        }
        let mut list = Vec::new();
        for e in edges {
            if e.arity() != r {
                return Err(Error::InvalidTuple(format!(
                    "edge {e} has {} entries, expected {r}",
                    e.arity()
                )));
            }
            if let Some(&v) = e.as_slice().iter().find(|&&v| v >= n) {
                return Err(Error::InvalidTuple(format!(
                    "edge {e} has index {v} outside 0..{n}"
                )));
            }
            list.push(e);
        }
        let before = list.len();
        list.sort();
        list.dedup();
        let duplicates = before - list.len();

        let mut projections = vec![HashMap::new(); r];
        for e in &list {
            for (side, map) in projections.iter_mut().enumerate() {
                *map.entry(e.project_without(side)).or_insert(0) += 1;
            }
        }
        Ok((
            Hypergraph {
                r,
                n,
                edges: list,
                projections,
            },
            duplicates,
        ))
    }

    pub fn empty(r: usize, n: usize) -> Result<Self> {
        Self::new(r, n, std::iter::empty())
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Edges in lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn contains_slice(&self, e: &[usize]) -> bool {
        self.edges
            .binary_search_by(|probe| probe.as_slice().cmp(e))
            .is_ok()
    }

    fn check_tuple(&self, f: &PartialTuple) -> Result<()> {
        for (side, v) in f.iter() {
            if side >= self.r {
                return Err(Error::InvalidTuple(format!(
                    "side {side} out of range 0..{}",
                    self.r
                )));
            }
            if v >= self.n {
                return Err(Error::InvalidTuple(format!(
                    "index {v} on side {side} out of range 0..{}",
                    self.n
                )));
            }
        }
        Ok(())
    }

    /// Number of edges containing `f`.
    pub fn degree(&self, f: &PartialTuple) -> Result<usize> {
        self.check_tuple(f)?;
        Ok(self.degree_unchecked(f))
    }

    pub(crate) fn degree_unchecked(&self, f: &PartialTuple) -> usize {
        if f.len() == self.r {
            return usize::from(self.contains_slice(&f.indices()));
        }
        if f.len() + 1 == self.r {
            let missing = (0..self.r).find(|s| f.get(*s).is_none()).unwrap_or(0);
            return self.codegree(missing, &f.indices());
        }
        self.edges.iter().filter(|e| f.agrees_with(e)).count()
    }

    /// Degree of the (r-1)-tuple `rest` (ordered by side) avoiding `missing`.
    pub fn codegree(&self, missing: usize, rest: &[usize]) -> usize {
        self.projections[missing].get(rest).copied().unwrap_or(0)
    }

    /// Degrees of all tuples on `sides` (sorted), keyed by their indices.
    /// Tuples of degree zero are absent.
    pub fn degree_table(&self, sides: &SideSet) -> HashMap<Vec<usize>, usize> {
        let mut map = HashMap::new();
        for e in &self.edges {
            *map.entry(e.project_onto(sides.as_slice())).or_insert(0) += 1;
        }
        map
    }

    pub fn vertex_degree(&self, v: Vertex) -> usize {
        self.edges.iter().filter(|e| e[v.side] == v.index).count()
    }

    /// Indices on `side` that extend `f` to something contained in an edge.
    pub fn neighbors(&self, f: &PartialTuple, side: usize) -> Result<BTreeSet<usize>> {
        self.check_tuple(f)?;
        if side >= self.r {
            return Err(Error::InvalidQuery(format!(
                "side {side} out of range 0..{}",
                self.r
            )));
        }
        if f.get(side).is_some() {
            return Err(Error::InvalidQuery(format!(
                "side {side} is already occupied by {f}"
            )));
        }
        Ok(self
            .edges
            .iter()
            .filter(|e| f.agrees_with(e))
            .map(|e| e[side])
            .collect())
    }

    pub fn validate_matching(&self, m: &Matching) -> MatchingVerdict {
        let valid = m.iter().all(|e| e.arity() == self.r && self.contains(e)) && m.is_disjoint();
        MatchingVerdict {
            valid,
            perfect: valid && m.len() == self.n,
        }
    }

    /// All `n^|sides|` tuples on `sides`, in lexicographic order.
    pub fn legal_tuples(&self, sides: &SideSet) -> LegalTuples {
        debug_assert!(sides.as_slice().iter().all(|&s| s < self.r));
        LegalTuples {
            sides: sides.as_slice().to_vec(),
            odometer: Odometer::new(self.n, sides.len()),
        }
    }

    /// Applies a side permutation: side `i` of the result is side `order[i]` of `self`.
    pub fn permute_sides(&self, order: &[usize]) -> Result<Hypergraph> {
        let mut check = order.to_vec();
        check.sort_unstable();
        if check != (0..self.r).collect::<Vec<_>>() {
            return Err(Error::InvalidParameter(format!(
                "{order:?} is not a permutation of 0..{}",
                self.r
            )));
        }
        Hypergraph::new(
            self.r,
            self.n,
            self.edges.iter().map(|e| e.project_onto(order).into()),
        )
    }
}

/// Counts through `[0, base)^len` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Odometer {
    base: usize,
    current: Option<Vec<usize>>,
}

impl Odometer {
    pub fn new(base: usize, len: usize) -> Self {
        let current = if base == 0 && len > 0 {
            None
        } else {
            Some(vec![0; len])
        };
        Odometer { base, current }
    }
}

impl Iterator for Odometer {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let cur = self.current.as_mut().expect("checked above");
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < self.base {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

#[derive(Debug, Clone)]
pub struct LegalTuples {
    sides: Vec<usize>,
    odometer: Odometer,
}

impl Iterator for LegalTuples {
    type Item = PartialTuple;

    fn next(&mut self) -> Option<PartialTuple> {
        self.odometer
            .next()
            .map(|idx| PartialTuple::from_sides(&self.sides, &idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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

    #[test]
    fn pair_degree_in_complete_graph_is_n() {
        let h = complete(3, 3);
        let f = PartialTuple::from_pairs([(1, 0), (2, 1)]).unwrap();
        assert_eq!(h.degree(&f).unwrap(), 3);
    }

    #[test]
    fn empty_tuple_degree_is_edge_count() {
        let h = parity32();
        assert_eq!(h.degree(&PartialTuple::new()).unwrap(), 4);
        assert_eq!(complete(2, 3).degree(&PartialTuple::new()).unwrap(), 9);
    }

    #[test]
    fn parity_pairs_have_degree_one() {
        let h = parity32();
        for missing in 0..3 {
            let rest: Vec<usize> = (0..3).filter(|&s| s != missing).collect();
            for f in h.legal_tuples(&SideSet::new(3, &rest).unwrap()) {
                assert_eq!(h.degree(&f).unwrap(), 1, "{f}");
            }
        }
    }

    #[test]
    fn degree_rejects_out_of_range() {
        let h = parity32();
        let bad_side = PartialTuple::new().with(3, 0);
        let bad_index = PartialTuple::new().with(0, 2);
        assert!(matches!(h.degree(&bad_side), Err(Error::InvalidTuple(_))));
        assert!(matches!(h.degree(&bad_index), Err(Error::InvalidTuple(_))));
    }

    #[test]
    fn neighbors_examples() {
        let h = complete(3, 2);
        let f = PartialTuple::from_pairs([(1, 0), (2, 0)]).unwrap();
        assert_eq!(h.neighbors(&f, 0).unwrap(), BTreeSet::from([0, 1]));

        // A = {0} on each side: (a2, a3) = (0, 0) only extends by b1 = 1.
        let p = parity32();
        assert_eq!(p.neighbors(&f, 0).unwrap(), BTreeSet::from([1]));

        let e = Hypergraph::empty(3, 2).unwrap();
        assert!(e.neighbors(&f, 0).unwrap().is_empty());

        assert!(matches!(h.neighbors(&f, 1), Err(Error::InvalidQuery(_))));
    }

    #[test]
    fn validate_matching_examples() {
        let h = complete(3, 2);
        let good = Matching::new(vec![[0, 0, 0].into(), [1, 1, 1].into()]);
        assert_eq!(
            h.validate_matching(&good),
            MatchingVerdict {
                valid: true,
                perfect: true
            }
        );
        let clash = Matching::new(vec![[0, 0, 0].into(), [0, 1, 1].into()]);
        assert!(!h.validate_matching(&clash).valid);

        let p = parity32();
        // (1,1,1) with anything disjoint must be (0,0,0), which is absent.
        let cand = Matching::new(vec![[1, 1, 1].into(), [0, 0, 0].into()]);
        let v = p.validate_matching(&cand);
        assert!(!v.valid && !v.perfect);
        let partial = Matching::new(vec![[1, 1, 1].into()]);
        let v = p.validate_matching(&partial);
        assert!(v.valid && !v.perfect);
    }

    #[test]
    fn legal_tuple_enumeration() {
        let h = complete(3, 2);
        let tuples: Vec<_> = h.legal_tuples(&SideSet::new(3, &[1, 2]).unwrap()).collect();
        let idx: Vec<_> = tuples.iter().map(|t| t.indices()).collect();
        assert_eq!(idx, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
        assert!(tuples.iter().all(|t| t.sides().eq([1, 2])));

        let none: Vec<_> = h.legal_tuples(&SideSet::new(3, &[]).unwrap()).collect();
        assert_eq!(none, vec![PartialTuple::new()]);

        let h4 = complete(4, 3);
        assert_eq!(h4.legal_tuples(&SideSet::all(4)).count(), 81);
    }

    #[test]
    fn duplicates_are_dropped_and_counted() {
        let (h, dups) = Hypergraph::with_duplicate_count(
            3,
            2,
            [[0, 0, 0], [0, 0, 0], [1, 1, 1]].map(Edge::from),
        )
        .unwrap();
        assert_eq!(h.edge_count(), 2);
        assert_eq!(dups, 1);
    }

    #[test]
    fn construction_rejects_bad_edges() {
        assert!(Hypergraph::new(3, 2, [Edge::from([0, 0])]).is_err());
        assert!(Hypergraph::new(3, 2, [Edge::from([0, 0, 2])]).is_err());
        assert!(Hypergraph::empty(1, 2).is_err());
        assert!(Hypergraph::empty(2, 0).is_err());
    }

    #[test]
    fn side_sets() {
        assert!(SideSet::proper(3, &[]).is_err());
        assert!(SideSet::proper(3, &[0, 1, 2]).is_err());
        assert!(SideSet::proper(3, &[0, 0]).is_err());
        assert!(SideSet::proper(3, &[3]).is_err());
        let s = SideSet::proper(4, &[2, 0]).unwrap();
        assert_eq!(s.as_slice(), &[0, 2]);
        assert_eq!(s.complement(4).as_slice(), &[1, 3]);
    }

    #[test]
    fn edge_and_matching_text() {
        let e: Edge = "(3,0,12)".parse().unwrap();
        assert_eq!(e.as_slice(), &[3, 0, 12]);
        assert_eq!(e.to_string(), "(3,0,12)");
        assert!("3,0".parse::<Edge>().is_err());
        let m: Matching = "(1,1) (0,0)".parse().unwrap();
        assert_eq!(m.to_string(), "(0,0) (1,1)");
        let v: Vertex = "2:5".parse().unwrap();
        assert_eq!(v, Vertex::new(2, 5));
    }
}

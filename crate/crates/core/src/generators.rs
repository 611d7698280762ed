//! Instance families.
//!
//! Distinguished vertex sets (the parity sets `A_i`, the union-cover sets
//! `X_i`) always take the lowest indices of each side.
//!
//! Random instances use ChaCha8 (`rand_chacha` 0.3) seeded with
//! `seed_from_u64(seed)` on stream [`RANDOM_STREAM`]. Legal tuples are visited
//! in lexicographic order; each draws one `u64`, keeps its top 53 bits as
//! `u / 2^53`, and is included iff that value is `< p`.

use std::fmt;

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};

use crate::error::{Error, Result};
use crate::hypergraph::{Edge, Hypergraph, Odometer};

/// ChaCha stream used by [`gen_random`].
pub const RANDOM_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LatinRule {
    /// `L(i, j) = i + j mod n`.
    Cyclic,
    /// Row-major table; must be a Latin square.
    Explicit(Vec<Vec<usize>>),
}

#[derive(Debug, Clone, PartialEq)]
pub enum Family {
    Complete,
    ParitySharpness,
    UnionCover { k: usize },
    Latin { rule: LatinRule },
    Random { p: f64, seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorSpec {
    pub family: Family,
    pub r: usize,
    pub n: usize,
}

impl GeneratorSpec {
    pub fn build(&self) -> Result<Hypergraph> {
        match &self.family {
            Family::Complete => gen_complete(self.r, self.n),
            Family::ParitySharpness => gen_parity_sharpness(self.r, self.n).map(|p| p.graph),
            Family::UnionCover { k } => gen_union_cover(self.r, self.n, *k),
            Family::Latin { rule } => {
                if self.r != 3 {
                    return Err(Error::UnsupportedArity {
                        expected: 3,
                        got: self.r,
                    });
                }
                gen_latin(self.n, rule)
            }
            Family::Random { p, seed } => gen_random(self.r, self.n, *p, *seed),
        }
    }
}

impl fmt::Display for GeneratorSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (r, n) = (self.r, self.n);
        match &self.family {
            Family::Complete => write!(f, "family=complete r={r} n={n}"),
            Family::ParitySharpness => write!(f, "family=parity r={r} n={n}"),
            Family::UnionCover { k } => write!(f, "family=union r={r} n={n} k={k}"),
            Family::Latin { rule: LatinRule::Cyclic } => {
                write!(f, "family=latin r={r} n={n} rule=cyclic")
            }
            Family::Latin {
                rule: LatinRule::Explicit(_),
            } => write!(f, "family=latin r={r} n={n} rule=explicit"),
            Family::Random { p, seed } => write!(
                f,
                "family=random r={r} n={n} p={p} seed={seed} prng=chacha8/stream{RANDOM_STREAM}"
            ),
        }
    }
}

fn check_shape(r: usize, n: usize) -> Result<()> {
    if r < 2 || n < 1 {
        return Err(Error::InvalidParameter(format!(
            "need r >= 2 and n >= 1, got r={r} n={n}"
        )));
    }
    Ok(())
}

pub fn gen_complete(r: usize, n: usize) -> Result<Hypergraph> {
    check_shape(r, n)?;
    Hypergraph::new(r, n, Odometer::new(n, r).map(Edge::from))
}

#[derive(Debug, Clone)]
pub struct ParityInstance {
    pub graph: Hypergraph,
    /// `A_i` per side (lowest indices).
    pub a_sets: Vec<Vec<usize>>,
    /// `r` odd and `n ≡ 2 (mod 4)`: all `|A_i| = n/2` and every (r-1)-tuple has degree `n/2`.
    pub canonical: bool,
}

/// Sizes of the `A_i`: within 1 of `n/2` with an odd total.
pub fn parity_set_sizes(r: usize, n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = if n % 2 == 0 {
        vec![n / 2; r]
    } else {
        (0..r)
            .map(|i| if i % 2 == 0 { n.div_ceil(2) } else { n / 2 })
            .collect()
    };
    if sizes.iter().sum::<usize>() % 2 == 0 {
        if n % 2 == 0 {
            sizes[0] += 1;
        } else {
            // n odd: side 0 was rounded up, round it down instead.
            sizes[0] -= 1;
        }
    }
    sizes
}

/// Legal tuples meeting `∪ A_i` in an even number of vertices.
pub fn gen_parity_sharpness(r: usize, n: usize) -> Result<ParityInstance> {
    check_shape(r, n)?;
    let sizes = parity_set_sizes(r, n);
    let edges = Odometer::new(n, r)
        .filter(|t| t.iter().zip(&sizes).filter(|(v, a)| *v < *a).count() % 2 == 0)
        .map(Edge::from);
    Ok(ParityInstance {
        graph: Hypergraph::new(r, n, edges)?,
        a_sets: sizes.iter().map(|&a| (0..a).collect()).collect(),
        canonical: r % 2 == 1 && n % 4 == 2,
    })
}

/// Legal tuples meeting `∪ X_i`, where `X_i` is the first `k` indices of side `i`.
pub fn gen_union_cover(r: usize, n: usize, k: usize) -> Result<Hypergraph> {
    check_shape(r, n)?;
    if k > n {
        return Err(Error::InvalidParameter(format!("k = {k} exceeds n = {n}")));
    }
    Hypergraph::new(
        r,
        n,
        Odometer::new(n, r)
            .filter(|t| t.iter().any(|&v| v < k))
            .map(Edge::from),
    )
}

pub fn gen_latin(n: usize, rule: &LatinRule) -> Result<Hypergraph> {
    check_shape(3, n)?;
    let table: Vec<Vec<usize>> = match rule {
        LatinRule::Cyclic => (0..n).map(|i| (0..n).map(|j| (i + j) % n).collect()).collect(),
        LatinRule::Explicit(t) => {
            validate_latin(n, t)?;
            t.clone()
        }
    };
    let edges = (0..n).flat_map(|i| {
        let row = &table[i];
        (0..n).map(move |j| Edge::from([i, j, row[j]]))
    });
    Hypergraph::new(3, n, edges)
}

fn validate_latin(n: usize, t: &[Vec<usize>]) -> Result<()> {
    if t.len() != n || t.iter().any(|row| row.len() != n) {
        return Err(Error::NotLatin(format!("table is not {n}x{n}")));
    }
    for (i, row) in t.iter().enumerate() {
        let mut seen = vec![false; n];
        for &s in row {
            if s >= n || std::mem::replace(&mut seen[s], true) {
                return Err(Error::NotLatin(format!("row {i} is not a permutation of 0..{n}")));
            }
        }
    }
    for j in 0..n {
        let mut seen = vec![false; n];
        for row in t {
            if std::mem::replace(&mut seen[row[j]], true) {
                return Err(Error::NotLatin(format!("column {j} repeats a symbol")));
            }
        }
    }
    Ok(())
}

/// Each legal tuple independently with probability `p`.
pub fn gen_random(r: usize, n: usize, p: f64, seed: u64) -> Result<Hypergraph> {
    check_shape(r, n)?;
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::InvalidParameter(format!("p = {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(RANDOM_STREAM);
    let scale = 1.0 / (1u64 << 53) as f64;
    let edges = Odometer::new(n, r)
        .filter(|_| ((rng.next_u64() >> 11) as f64) * scale < p)
        .map(Edge::from)
        .collect::<Vec<_>>();
    Hypergraph::new(r, n, edges)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conditions::check_latin_property;
    use crate::hypergraph::SideSet;
    use crate::oracle::{has_perfect_matching, max_matching, DEFAULT_BUDGET};

    #[test]
    fn complete_counts() {
        assert_eq!(gen_complete(3, 2).unwrap().edge_count(), 8);
        assert_eq!(gen_complete(2, 3).unwrap().edge_count(), 9);
        let h = gen_complete(4, 3).unwrap();
        let rest = SideSet::new(4, &[0, 1, 3]).unwrap();
        assert!(h.legal_tuples(&rest).all(|f| h.degree(&f).unwrap() == 3));
    }

    #[test]
    fn parity_three_two() {
        let p = gen_parity_sharpness(3, 2).unwrap();
        assert!(p.canonical);
        assert_eq!(p.a_sets, vec![vec![0], vec![0], vec![0]]);
        let edges: Vec<String> = p.graph.edges().iter().map(|e| e.to_string()).collect();
        assert_eq!(edges, vec!["(0,0,1)", "(0,1,0)", "(1,0,0)", "(1,1,1)"]);
        for missing in 0..3 {
            let rest: Vec<usize> = (0..3).filter(|&s| s != missing).collect();
            let rest = SideSet::new(3, &rest).unwrap();
            assert!(p.graph.legal_tuples(&rest).all(|f| p.graph.degree(&f).unwrap() == 1));
        }
        assert!(!has_perfect_matching(&p.graph, DEFAULT_BUDGET).unwrap());
    }

    #[test]
    fn parity_set_sizes_have_odd_total() {
        for r in 2..7 {
            for n in 1..9 {
                let s = parity_set_sizes(r, n);
                assert_eq!(s.iter().sum::<usize>() % 2, 1, "r={r} n={n}");
                for &a in &s {
                    assert!(a <= n);
                    assert!((2 * a as i64 - n as i64).abs() <= 2, "r={r} n={n} {s:?}");
                }
            }
        }
        assert_eq!(parity_set_sizes(3, 6), vec![3, 3, 3]);
        assert_eq!(parity_set_sizes(3, 4), vec![3, 2, 2]);
        assert_eq!(parity_set_sizes(3, 3), vec![2, 1, 2]);
    }

    #[test]
    fn union_cover_counts() {
        assert_eq!(gen_union_cover(3, 3, 1).unwrap().edge_count(), 27 - 8);
        assert_eq!(gen_union_cover(3, 3, 0).unwrap().edge_count(), 0);
        assert!(!has_perfect_matching(&gen_union_cover(3, 4, 1).unwrap(), DEFAULT_BUDGET).unwrap());
        assert!(gen_union_cover(3, 3, 4).is_err());
    }

    #[test]
    fn latin_examples() {
        let h = gen_latin(3, &LatinRule::Cyclic).unwrap();
        assert_eq!(h.edge_count(), 9);
        assert!(check_latin_property(&h).unwrap().holds);
        assert!(has_perfect_matching(&h, DEFAULT_BUDGET).unwrap());
        // The diagonal transversal (i, i, 2i mod 3).
        assert!((0..3).all(|i| h.contains(&Edge::from([i, i, 2 * i % 3]))));

        let h2 = gen_latin(2, &LatinRule::Cyclic).unwrap();
        assert_eq!(h2.edge_count(), 4);
        assert_eq!(max_matching(&h2, DEFAULT_BUDGET).unwrap().max_matching_size, 1);

        let bad = LatinRule::Explicit(vec![vec![0, 1], vec![0, 1]]);
        assert!(matches!(gen_latin(2, &bad), Err(Error::NotLatin(_))));
        let good = LatinRule::Explicit(vec![vec![1, 0], vec![0, 1]]);
        assert!(check_latin_property(&gen_latin(2, &good).unwrap()).unwrap().holds);
    }

    #[test]
    fn random_extremes_and_determinism() {
        assert_eq!(gen_random(3, 3, 1.0, 5).unwrap().edge_count(), 27);
        assert_eq!(gen_random(3, 3, 0.0, 5).unwrap().edge_count(), 0);
        let a = gen_random(3, 4, 0.9, 7).unwrap();
        let b = gen_random(3, 4, 0.9, 7).unwrap();
        assert_eq!(a.edges(), b.edges());
        let c = gen_random(3, 4, 0.9, 8).unwrap();
        assert_ne!(a.edges(), c.edges());
        assert!(gen_random(3, 4, 1.5, 7).is_err());
        assert!(gen_random(3, 4, f64::NAN, 7).is_err());
    }

    #[test]
    fn spec_round_trip() {
        let spec = GeneratorSpec {
            family: Family::UnionCover { k: 1 },
            r: 3,
            n: 3,
        };
        assert_eq!(spec.build().unwrap().edge_count(), 19);
        assert_eq!(spec.to_string(), "family=union r=3 n=3 k=1");
    }
}

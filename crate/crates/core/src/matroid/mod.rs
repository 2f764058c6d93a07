//! Matroids behind a single independence-query interface, with rank, span,
//! and circuit operations derived from it, plus an exhaustive axiom checker
//! for small ground sets.

mod linear;

pub use linear::LinearMatroid;

use std::collections::HashSet;

use crate::elems::ElemSet;
use crate::error::{Error, Result};

/// Upper bound on the ground-set size for exhaustive axiom checking.
pub const AXIOM_CHECK_LIMIT: usize = 12;

/// The defining interface: every structural query (rank, span, circuits,
/// exchange arcs) reduces to independence tests.
pub trait IndependenceOracle {
    fn ground_size(&self) -> usize;

    fn is_independent(&self, set: &ElemSet) -> bool;

    /// The elements actually present; restrictions shrink this without
    /// renumbering.
    fn ground_mask(&self) -> ElemSet {
        ElemSet::full(self.ground_size())
    }
}

impl<O: IndependenceOracle + ?Sized> IndependenceOracle for &O {
    fn ground_size(&self) -> usize {
        (**self).ground_size()
    }

    fn is_independent(&self, set: &ElemSet) -> bool {
        (**self).is_independent(set)
    }

    fn ground_mask(&self) -> ElemSet {
        (**self).ground_mask()
    }
}

/// A concrete matroid (or, for `Explicit`, an arbitrary set family to be
/// validated by the axiom checker).
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Matroid {
    /// Sets of size at most `rank` are independent.
    Uniform { ground_size: usize, rank: usize },
    /// At most `capacities[b]` elements from block `b`.
    Partition { block_of: Vec<usize>, capacities: Vec<usize> },
    /// Ground set = edges of a multigraph; forests are independent.
    Graphic { vertex_count: usize, edges: Vec<(usize, usize)> },
    /// Ground set = columns of an exact rational matrix; linearly
    /// independent column sets are independent.
    Linear(LinearMatroid),
    /// Membership in an explicit family. Not necessarily a matroid; feed it
    /// to `verify_matroid_axioms` before trusting derived queries.
    Explicit { ground_size: usize, family: HashSet<ElemSet> },
}

impl Matroid {
    pub fn uniform(ground_size: usize, rank: usize) -> Self {
        Matroid::Uniform { ground_size, rank }
    }

    /// Builds a partition matroid from explicit blocks. The blocks must
    /// partition `0..ground_size`.
    pub fn partition(ground_size: usize, blocks: &[Vec<usize>], capacities: &[usize]) -> Result<Self> {
        if blocks.len() != capacities.len() {
            return Err(Error::InvalidParameter("one capacity per block required".into()));
        }
        let mut block_of = vec![usize::MAX; ground_size];
        for (b, block) in blocks.iter().enumerate() {
            for &e in block {
                if e >= ground_size {
                    return Err(Error::UnknownElement(e));
                }
                if block_of[e] != usize::MAX {
                    return Err(Error::InvalidParameter(format!("element {e} appears in two blocks")));
                }
                block_of[e] = b;
            }
        }
        if let Some(e) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(Error::InvalidParameter(format!("element {e} is not covered by any block")));
        }
        Ok(Matroid::Partition { block_of, capacities: capacities.to_vec() })
    }

    pub fn graphic(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        for &(u, v) in &edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) exceeds vertex count {vertex_count}"
                )));
            }
        }
        Ok(Matroid::Graphic { vertex_count, edges })
    }

    pub fn explicit<I: IntoIterator<Item = ElemSet>>(ground_size: usize, family: I) -> Self {
        Matroid::Explicit { ground_size, family: family.into_iter().collect() }
    }
}

impl IndependenceOracle for Matroid {
    fn ground_size(&self) -> usize {
        match self {
            Matroid::Uniform { ground_size, .. } => *ground_size,
            Matroid::Partition { block_of, .. } => block_of.len(),
            Matroid::Graphic { edges, .. } => edges.len(),
            Matroid::Linear(m) => m.ground_size(),
            Matroid::Explicit { ground_size, .. } => *ground_size,
        }
    }

    fn is_independent(&self, set: &ElemSet) -> bool {
        match set.last() {
            Some(e) if e >= self.ground_size() => return false,
            _ => {}
        }
        match self {
            Matroid::Uniform { rank, .. } => set.len() <= *rank,
            Matroid::Partition { block_of, capacities } => {
                let mut counts = vec![0usize; capacities.len()];
                for e in set {
                    counts[block_of[e]] += 1;
                    if counts[block_of[e]] > capacities[block_of[e]] {
                        return false;
                    }
                }
                true
            }
            Matroid::Graphic { vertex_count, edges } => {
                // Acyclic iff union-find never joins two equal roots.
                let mut parent: Vec<usize> = (0..*vertex_count).collect();
                fn find(parent: &mut [usize], mut x: usize) -> usize {
                    while parent[x] != x {
                        parent[x] = parent[parent[x]];
                        x = parent[x];
                    }
                    x
                }
                for e in set {
                    let (u, v) = edges[e];
                    let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                    if ru == rv {
                        return false;
                    }
                    parent[ru] = rv;
                }
                true
            }
            Matroid::Linear(m) => m.columns_independent(set),
            Matroid::Explicit { family, .. } => family.contains(set),
        }
    }
}

/// Restriction of a matroid to a subset of its ground set (deletion of the
/// rest). Element indices are preserved; deleted elements simply become
/// dependent in every set.
#[derive(Clone, Debug)]
pub struct Restriction<O> {
    inner: O,
    mask: ElemSet,
}

impl<O: IndependenceOracle> Restriction<O> {
    pub fn new(inner: O, mask: ElemSet) -> Self {
        Restriction { inner, mask }
    }
}

impl<O: IndependenceOracle> IndependenceOracle for Restriction<O> {
    fn ground_size(&self) -> usize {
        self.inner.ground_size()
    }

    fn is_independent(&self, set: &ElemSet) -> bool {
        set.is_subset_of(&self.mask) && self.inner.is_independent(set)
    }

    fn ground_mask(&self) -> ElemSet {
        self.inner.ground_mask().intersection(&self.mask)
    }
}

/// Size of a maximal independent subset of `S`, computed by greedy extension
/// in ascending index order (well-defined for matroids).
pub fn rank<O: IndependenceOracle>(oracle: &O, set: &ElemSet) -> Result<usize> {
    check_in_ground(oracle, set)?;
    let mut picked = ElemSet::new();
    for e in set {
        picked.insert(e);
        if !oracle.is_independent(&picked) {
            picked.remove(e);
        }
    }
    Ok(picked.len())
}

/// The span (closure) of `S`: all elements whose addition does not raise the
/// rank.
pub fn span<O: IndependenceOracle>(oracle: &O, set: &ElemSet) -> Result<ElemSet> {
    check_in_ground(oracle, set)?;
    let base_rank = rank(oracle, set)?;
    let mut out = ElemSet::new();
    for e in oracle.ground_mask().iter() {
        if set.contains(e) || rank(oracle, &set.with(e))? == base_rank {
            out.insert(e);
        }
    }
    Ok(out)
}

/// Result of a circuit search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CircuitSearch {
    Independent,
    /// A minimal dependent subset of the query set.
    Circuit(ElemSet),
}

/// Finds a circuit inside a dependent set by removing redundant elements in
/// descending index order, which makes the returned circuit deterministic.
pub fn find_circuit<O: IndependenceOracle>(oracle: &O, set: &ElemSet) -> Result<CircuitSearch> {
    check_in_ground(oracle, set)?;
    if oracle.is_independent(set) {
        return Ok(CircuitSearch::Independent);
    }
    let mut circuit = set.clone();
    let mut elements: Vec<usize> = circuit.to_vec();
    elements.reverse();
    for e in elements {
        let candidate = circuit.without(e);
        if !oracle.is_independent(&candidate) {
            circuit = candidate;
        }
    }
    Ok(CircuitSearch::Circuit(circuit))
}

fn check_in_ground<O: IndependenceOracle>(oracle: &O, set: &ElemSet) -> Result<()> {
    match set.last() {
        Some(e) if e >= oracle.ground_size() => Err(Error::UnknownElement(e)),
        _ => {
            if !set.is_subset_of(&oracle.ground_mask()) {
                let stray = set.difference(&oracle.ground_mask()).first().expect("nonempty");
                Err(Error::UnknownElement(stray))
            } else {
                Ok(())
            }
        }
    }
}

/// Outcome of the exhaustive axiom check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AxiomReport {
    Pass,
    EmptySetDependent,
    /// An independent set with a dependent subset.
    HereditaryViolation {
        set: ElemSet,
        subset: ElemSet,
    },
    /// Two independent sets with `|a| < |b|` and no element of `b - a`
    /// extending `a`.
    ExchangeViolation {
        smaller: ElemSet,
        larger: ElemSet,
    },
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        matches!(self, AxiomReport::Pass)
    }
}

/// Checks non-emptiness, the hereditary property, and the exchange axiom
/// over all subsets of the ground set. Reports the first violation found.
pub fn verify_matroid_axioms<O: IndependenceOracle>(oracle: &O) -> Result<AxiomReport> {
    let n = oracle.ground_size();
    if n > AXIOM_CHECK_LIMIT {
        return Err(Error::TooLarge { size: n, limit: AXIOM_CHECK_LIMIT });
    }
    // Materialize the independence table once; everything below is table
    // lookups.
    let table: Vec<bool> =
        (0..(1u64 << n)).map(|mask| oracle.is_independent(&ElemSet::from_mask(mask))).collect();
    if !table[0] {
        return Ok(AxiomReport::EmptySetDependent);
    }
    for mask in 0..(1u64 << n) as usize {
        if !table[mask] {
            continue;
        }
        let mut bits = mask as u64;
        while bits != 0 {
            let bit = bits & bits.wrapping_neg();
            bits ^= bit;
            let sub = mask ^ bit as usize;
            if !table[sub] {
                return Ok(AxiomReport::HereditaryViolation {
                    set: ElemSet::from_mask(mask as u64),
                    subset: ElemSet::from_mask(sub as u64),
                });
            }
        }
    }
    let sizes: Vec<u32> = (0..(1u64 << n) as usize).map(|mask| (mask as u64).count_ones()).collect();
    for a in 0..(1u64 << n) as usize {
        if !table[a] {
            continue;
        }
        for b in 0..(1u64 << n) as usize {
            if !table[b] || sizes[a] >= sizes[b] {
                continue;
            }
            let candidates = (b & !a) as u64;
            let mut bits = candidates;
            let mut extended = false;
            while bits != 0 {
                let bit = bits & bits.wrapping_neg();
                bits ^= bit;
                if table[a | bit as usize] {
                    extended = true;
                    break;
                }
            }
            if !extended {
                return Ok(AxiomReport::ExchangeViolation {
                    smaller: ElemSet::from_mask(a as u64),
                    larger: ElemSet::from_mask(b as u64),
                });
            }
        }
    }
    Ok(AxiomReport::Pass)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weights::parse_rational;

    fn k4() -> Matroid {
        // Complete graph on 4 vertices, 6 edges.
        Matroid::graphic(4, vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    fn set(indices: &[usize]) -> ElemSet {
        indices.iter().copied().collect()
    }

    #[test]
    fn uniform_rank_and_span() {
        let m = Matroid::uniform(4, 2);
        assert_eq!(rank(&m, &ElemSet::full(4)).unwrap(), 2);
        assert_eq!(rank(&m, &set(&[1])).unwrap(), 1);
        // Any 2-set spans everything.
        assert_eq!(span(&m, &set(&[0, 3])).unwrap(), ElemSet::full(4));
        assert_eq!(verify_matroid_axioms(&m).unwrap(), AxiomReport::Pass);
    }

    #[test]
    fn graphic_rank_is_spanning_forest_size() {
        let m = k4();
        assert_eq!(rank(&m, &ElemSet::full(6)).unwrap(), 3);
        assert_eq!(verify_matroid_axioms(&m).unwrap(), AxiomReport::Pass);
    }

    #[test]
    fn graphic_path_span_is_trivial() {
        let path = Matroid::graphic(4, vec![(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(span(&path, &set(&[0])).unwrap(), set(&[0]));
    }

    #[test]
    fn triangle_circuit() {
        let triangle = Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap();
        match find_circuit(&triangle, &ElemSet::full(3)).unwrap() {
            CircuitSearch::Circuit(c) => assert_eq!(c, ElemSet::full(3)),
            CircuitSearch::Independent => panic!("triangle is dependent"),
        }
        assert_eq!(find_circuit(&triangle, &set(&[0, 1])).unwrap(), CircuitSearch::Independent);
    }

    #[test]
    fn circuits_are_minimal_dependent() {
        let m = k4();
        // Add a dependent superset: a triangle plus extra edges.
        let s = ElemSet::full(6);
        match find_circuit(&m, &s).unwrap() {
            CircuitSearch::Circuit(c) => {
                assert!(!m.is_independent(&c));
                for e in &c {
                    assert!(m.is_independent(&c.without(e)));
                }
            }
            CircuitSearch::Independent => panic!("K4 has cycles"),
        }
    }

    #[test]
    fn partition_matroid_counts_blocks() {
        let m = Matroid::partition(3, &[vec![0, 1], vec![2]], &[1, 1]).unwrap();
        assert!(m.is_independent(&set(&[0, 2])));
        assert!(!m.is_independent(&set(&[0, 1])));
        assert_eq!(verify_matroid_axioms(&m).unwrap(), AxiomReport::Pass);
        // Bad partitions are rejected.
        assert!(Matroid::partition(3, &[vec![0, 1]], &[1]).is_err());
        assert!(Matroid::partition(3, &[vec![0, 1], vec![1, 2]], &[1, 1]).is_err());
    }

    #[test]
    fn linear_matroid_from_rational_rows() {
        // Columns: e0 = (1,0), e1 = (0,1), e2 = (1,1), e3 = (1/2, 1/2).
        let rows = vec![
            vec![
                parse_rational("1").unwrap(),
                parse_rational("0").unwrap(),
                parse_rational("1").unwrap(),
                parse_rational("1/2").unwrap(),
            ],
            vec![
                parse_rational("0").unwrap(),
                parse_rational("1").unwrap(),
                parse_rational("1").unwrap(),
                parse_rational("1/2").unwrap(),
            ],
        ];
        let m = Matroid::Linear(LinearMatroid::new(rows).unwrap());
        assert!(m.is_independent(&set(&[0, 1])));
        assert!(!m.is_independent(&set(&[0, 1, 2])));
        // e2 and e3 are parallel (scalar multiples).
        assert!(!m.is_independent(&set(&[2, 3])));
        assert_eq!(rank(&m, &ElemSet::full(4)).unwrap(), 2);
        assert_eq!(verify_matroid_axioms(&m).unwrap(), AxiomReport::Pass);
    }

    #[test]
    fn explicit_family_violations_are_reported() {
        // Hereditary failure: {0,1} independent but {1} missing.
        let broken = Matroid::explicit(2, [ElemSet::new(), set(&[0]), set(&[0, 1])]);
        match verify_matroid_axioms(&broken).unwrap() {
            AxiomReport::HereditaryViolation { set: s, .. } => assert_eq!(s, set(&[0, 1])),
            other => panic!("expected hereditary violation, got {other:?}"),
        }
        // Exchange failure: {0} and {1} independent, {0,1} missing, sizes
        // differ via {1,2}... use family {{}, {0}, {1}, {1,2}, {2}}.
        let broken =
            Matroid::explicit(3, [ElemSet::new(), set(&[0]), set(&[1]), set(&[2]), set(&[1, 2])]);
        match verify_matroid_axioms(&broken).unwrap() {
            AxiomReport::ExchangeViolation { smaller, larger } => {
                assert_eq!(smaller, set(&[0]));
                assert_eq!(larger, set(&[1, 2]));
            }
            other => panic!("expected exchange violation, got {other:?}"),
        }
        // Empty-set failure.
        let broken = Matroid::explicit(1, [set(&[0])]);
        assert_eq!(verify_matroid_axioms(&broken).unwrap(), AxiomReport::EmptySetDependent);
    }

    #[test]
    fn axiom_checker_rejects_large_grounds() {
        let m = Matroid::uniform(13, 2);
        assert!(matches!(verify_matroid_axioms(&m), Err(Error::TooLarge { size: 13, limit: 12 })));
    }

    #[test]
    fn restriction_masks_elements() {
        let m = k4();
        let r = Restriction::new(&m, set(&[0, 1, 3]));
        assert!(r.is_independent(&set(&[0, 1])));
        assert!(!r.is_independent(&set(&[0, 2])));
        assert_eq!(r.ground_mask(), set(&[0, 1, 3]));
        // Edges (0,1), (0,2), (1,2) form a triangle.
        assert_eq!(rank(&r, &set(&[0, 1, 3])).unwrap(), 2);
        // Span never reports masked-out elements.
        assert!(span(&r, &set(&[0])).unwrap().is_subset_of(&set(&[0, 1, 3])));
        assert!(matches!(rank(&r, &set(&[2])), Err(Error::UnknownElement(2))));
    }

    #[test]
    fn rank_is_monotone_and_submodular_on_k4() {
        let m = k4();
        let n = 6usize;
        let rk: Vec<usize> =
            (0..(1u64 << n)).map(|mask| rank(&m, &ElemSet::from_mask(mask)).unwrap()).collect();
        for a in 0..(1usize << n) {
            for b in 0..(1usize << n) {
                let union = a | b;
                let inter = a & b;
                assert!(rk[a] + rk[b] >= rk[union] + rk[inter], "submodularity failed for {a:b}, {b:b}");
                if a & b == a {
                    assert!(rk[a] <= rk[b], "monotonicity failed");
                }
            }
        }
    }

    #[test]
    fn span_is_extensive_monotone_idempotent_on_k4() {
        let m = k4();
        for mask in 0..(1u64 << 6) {
            let s = ElemSet::from_mask(mask);
            let sp = span(&m, &s).unwrap();
            assert!(s.is_subset_of(&sp));
            assert_eq!(span(&m, &sp).unwrap(), sp);
        }
    }

    #[test]
    fn graphic_independence_matches_cycle_enumeration() {
        // Multigraph with a parallel pair and a triangle.
        let m = Matroid::graphic(4, vec![(0, 1), (0, 1), (1, 2), (2, 3), (1, 3)]).unwrap();
        assert_eq!(verify_matroid_axioms(&m).unwrap(), AxiomReport::Pass);
        // Parallel pair is a 2-element circuit.
        assert!(!m.is_independent(&set(&[0, 1])));
        match find_circuit(&m, &ElemSet::full(5)).unwrap() {
            CircuitSearch::Circuit(c) => {
                assert!(!m.is_independent(&c));
                for e in &c {
                    assert!(m.is_independent(&c.without(e)));
                }
            }
            CircuitSearch::Independent => panic!("graph has cycles"),
        }
    }
}

//! Exact maximum-weight and lex-maximal matching in general multigraphs,
//! plus the constructive eligible-improvement step over alternating paths.

mod blossom;

use crate::elems::ElemSet;
use crate::error::{Error, Result};
use crate::weights::{
    dispersed_weights, lex_signature, weight_classes, weight_of, LexSignature, Rational, Weight,
    WeightClasses,
};

/// Base used by the lex-maximal solver's exponential-weight reduction. Any
/// integer above 2 yields the same signatures; 3 keeps the numbers smallest.
pub const DEFAULT_DISPERSAL_BASE: u64 = 3;

/// Default cap on `|E|` for exhaustive matching enumeration.
pub const DEFAULT_ORACLE_EDGE_LIMIT: usize = 16;

/// An undirected multigraph with positive rational edge weights. Parallel
/// edges are permitted; self-loops are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightedGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize, Weight)>,
}

impl WeightedGraph {
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize, Weight)>) -> Result<Self> {
        for &(u, v, _) in &edges {
            if u == v {
                return Err(Error::InvalidParameter(format!("self-loop at vertex {u}")));
            }
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) exceeds vertex count {vertex_count}"
                )));
            }
        }
        Ok(WeightedGraph { vertex_count, edges })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize, Weight)] {
        &self.edges
    }

    pub fn endpoints(&self, e: usize) -> Result<(usize, usize)> {
        self.edges.get(e).map(|&(u, v, _)| (u, v)).ok_or(Error::UnknownElement(e))
    }

    pub fn weights(&self) -> Vec<Weight> {
        self.edges.iter().map(|(_, _, w)| w.clone()).collect()
    }

    /// Same topology, different weight function.
    pub fn with_weights(&self, weights: &[Weight]) -> Result<Self> {
        if weights.len() != self.edges.len() {
            return Err(Error::InvalidParameter("weight vector length mismatch".into()));
        }
        let edges = self.edges.iter().zip(weights).map(|(&(u, v, _), w)| (u, v, w.clone())).collect();
        WeightedGraph::new(self.vertex_count, edges)
    }

    pub fn classes(&self) -> WeightClasses {
        weight_classes(&self.weights())
    }

    /// Subgraph containing only the given edges (reindexed densely).
    fn filtered(&self, keep: &ElemSet) -> WeightedGraph {
        let edges = keep
            .iter()
            .map(|e| {
                let (u, v, ref w) = self.edges[e];
                (u, v, w.clone())
            })
            .collect();
        WeightedGraph { vertex_count: self.vertex_count, edges }
    }
}

/// A set of pairwise vertex-disjoint edge indices.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Matching(pub ElemSet);

impl Matching {
    pub fn edge_indices(&self) -> &ElemSet {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// True iff the selected edges are pairwise vertex-disjoint.
pub fn is_matching(graph: &WeightedGraph, edges: &ElemSet) -> Result<bool> {
    let mut used = vec![false; graph.vertex_count()];
    for e in edges {
        let (u, v) = graph.endpoints(e)?;
        if used[u] || used[v] {
            return Ok(false);
        }
        used[u] = true;
        used[v] = true;
    }
    Ok(true)
}

/// Computes a maximum-weight matching, exactly, for arbitrary positive
/// rational weights.
///
/// Parallel edges are pre-reduced (only a heaviest edge of each parallel
/// bundle can appear in some optimum; ties keep the smallest index) and the
/// rest is delegated to the certifying blossom solver. The result is
/// deterministic; among equally heavy matchings the choice is
/// algorithm-determined.
pub fn max_weight_matching(graph: &WeightedGraph) -> (Matching, Rational) {
    let weights = graph.weights();
    solve_max_weight(graph, &weights)
}

fn solve_max_weight(graph: &WeightedGraph, weights: &[Weight]) -> (Matching, Rational) {
    // Keep the best representative of each parallel bundle.
    let mut best_for_pair: std::collections::HashMap<(usize, usize), usize> =
        std::collections::HashMap::new();
    for (e, &(u, v, _)) in graph.edges().iter().enumerate() {
        let key = (u.min(v), u.max(v));
        match best_for_pair.get(&key) {
            Some(&cur) if weights[cur] >= weights[e] => {}
            _ => {
                best_for_pair.insert(key, e);
            }
        }
    }
    let mut kept: Vec<usize> = best_for_pair.into_values().collect();
    kept.sort_unstable();
    let reduced: Vec<(usize, usize, Rational)> = kept
        .iter()
        .map(|&e| {
            let (u, v) = graph.endpoints(e).expect("valid index");
            (u, v, weights[e].value().clone())
        })
        .collect();
    let mate = blossom::max_weight_pairing(graph.vertex_count(), &reduced);
    let mut chosen = ElemSet::new();
    for (slot, &e) in kept.iter().enumerate() {
        let (u, v, _) = reduced[slot];
        if mate[u] == Some(v) {
            chosen.insert(e);
        }
    }
    let total = weight_of(&chosen, weights).expect("chosen edges are in range");
    (Matching(chosen), total)
}

/// Computes a lex-maximal matching: as many heaviest edges as possible, then
/// as many second-heaviest, and so on.
///
/// Implemented as a maximum-weight matching under the dispersed weights with
/// base 3; for matchings, any base above 2 reproduces the lex order exactly.
/// Returns the matching, its (unique) lex-maximal signature, and its weight
/// under the original weight function.
pub fn lex_maximal_matching(graph: &WeightedGraph) -> (Matching, LexSignature, Rational) {
    let classes = graph.classes();
    let matching = if graph.edge_count() == 0 {
        Matching(ElemSet::new())
    } else {
        let dispersed = dispersed_weights(&classes, DEFAULT_DISPERSAL_BASE).expect("base 3 is valid");
        solve_max_weight(graph, &dispersed).0
    };
    let signature =
        lex_signature(matching.edge_indices(), &classes).expect("solution within ground set");
    let total =
        weight_of(matching.edge_indices(), &graph.weights()).expect("solution within ground set");
    (matching, signature, total)
}

/// Objective for the brute-force oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    MaxWeight,
    LexMax,
}

/// Exhaustive enumeration result: the optimal value and every optimal
/// matching, sorted by ascending edge-index sequence (so `optima[0]` is the
/// canonical tie-break winner).
#[derive(Clone, Debug)]
pub struct BruteForceMatchings {
    pub optima: Vec<Matching>,
    pub best_weight: Rational,
    pub best_signature: LexSignature,
}

/// Enumerates all matchings of the graph (2^|E| candidate subsets).
///
/// This is the independent oracle the solvers are verified against: it never
/// calls the blossom code or the weight reduction.
pub fn brute_force_matchings(
    graph: &WeightedGraph,
    objective: Objective,
    limit: usize,
) -> Result<BruteForceMatchings> {
    let m = graph.edge_count();
    if m > limit {
        return Err(Error::OracleTooLarge { size: m, limit });
    }
    let classes = graph.classes();
    let weights = graph.weights();
    let mut optima: Vec<Matching> = Vec::new();
    let mut best_weight: Option<Rational> = None;
    let mut best_signature: Option<LexSignature> = None;
    for mask in 0..(1u64 << m) {
        let set = ElemSet::from_mask(mask);
        if !is_matching(graph, &set)? {
            continue;
        }
        match objective {
            Objective::MaxWeight => {
                let w = weight_of(&set, &weights)?;
                match &best_weight {
                    Some(bw) if *bw > w => {}
                    Some(bw) if *bw == w => optima.push(Matching(set)),
                    _ => {
                        best_weight = Some(w);
                        optima = vec![Matching(set)];
                    }
                }
            }
            Objective::LexMax => {
                let sig = lex_signature(&set, &classes)?;
                match &best_signature {
                    Some(bs) if *bs > sig => {}
                    Some(bs) if *bs == sig => optima.push(Matching(set)),
                    _ => {
                        best_signature = Some(sig);
                        optima = vec![Matching(set)];
                    }
                }
            }
        }
    }
    optima.sort();
    let canonical = optima.first().expect("the empty matching always exists");
    let best_weight = weight_of(canonical.edge_indices(), &weights)?;
    let best_signature = lex_signature(canonical.edge_indices(), &classes)?;
    Ok(BruteForceMatchings { optima, best_weight, best_signature })
}

/// The smallest class index `i` such that `X` restricted to the classes
/// `0..=i` is not lex-maximal in the instance restricted to those classes;
/// `None` iff `X` is lex-maximal.
pub fn smallest_deficient_index_matching(graph: &WeightedGraph, x: &ElemSet) -> Result<Option<usize>> {
    if !is_matching(graph, x)? {
        return Err(Error::InvalidSolution("edge set is not a matching".into()));
    }
    let classes = graph.classes();
    let x_sig = lex_signature(x, &classes)?;
    for i in 0..classes.k() {
        let restricted = graph.filtered(&classes.prefix(i));
        let (_, sub_sig, _) = lex_maximal_matching(&restricted);
        // Every class 0..=i is nonempty, so the sub-instance levels are
        // exactly the full levels 0..=i and the signatures align.
        if sub_sig.counts()[i] != x_sig.counts()[i] {
            return Ok(Some(i));
        }
        debug_assert_eq!(&sub_sig.counts()[..i], &x_sig.counts()[..i]);
    }
    Ok(None)
}

/// One constructive eligible-improvement step.
#[derive(Clone, Debug)]
pub struct EligibleStep {
    /// The improved matching `Y`.
    pub result: Matching,
    /// The deficient class index `i` that was improved.
    pub index: usize,
    /// Edges of `X` heavier classes never touch; at most two lighter edges
    /// are dropped.
    pub removed: Vec<usize>,
}

/// Improves a non-lex-maximal matching `X` at its smallest deficient class:
/// the result `Y` keeps every class count above `i`, gains exactly one
/// class-`i` edge, and discards at most two lighter edges.
///
/// The construction follows the alternating-path argument: take a lex-maximal
/// matching `Z`, walk the components of `X_{<=i} xor Z_{<=i}` in ascending
/// smallest-edge-index order, flip the first path that gains exactly one
/// class-`i` edge while preserving the heavier class counts, then drop the
/// lighter edges of `X` that collide at the path's end vertices.
pub fn eligible_improvement_matching(graph: &WeightedGraph, x: &ElemSet) -> Result<EligibleStep> {
    let deficient = smallest_deficient_index_matching(graph, x)?;
    let i = deficient.ok_or(Error::AlreadyLexMaximal)?;
    let classes = graph.classes();
    let prefix = classes.prefix(i);
    let (z, _, _) = lex_maximal_matching(graph);

    let x_prefix = x.intersection(&prefix);
    let z_prefix = z.edge_indices().intersection(&prefix);
    let diff = x_prefix.symmetric_difference(&z_prefix);

    let qualifying = find_qualifying_path(graph, &diff, &x_prefix, &classes, i)
        .ok_or_else(|| Error::InvariantViolation("no qualifying alternating path found".into()))?;

    // Flip X along the path: prefix edges toggle, heavier/lighter edges stay.
    let mut result = x.symmetric_difference(&qualifying);

    // Drop lighter edges of X that now collide at the path's end vertices.
    let mut removed = Vec::new();
    let mut cover = vec![0usize; graph.vertex_count()];
    for e in &result {
        let (u, v) = graph.endpoints(e)?;
        cover[u] += 1;
        cover[v] += 1;
    }
    for e in x.difference(&prefix).iter() {
        let (u, v) = graph.endpoints(e)?;
        if cover[u] > 1 || cover[v] > 1 {
            result.remove(e);
            removed.push(e);
            cover[u] -= 1;
            cover[v] -= 1;
        }
    }
    if removed.len() > 2 || !is_matching(graph, &result)? {
        return Err(Error::InvariantViolation("eligible step produced an invalid matching".into()));
    }
    Ok(EligibleStep { result: Matching(result), index: i, removed })
}

/// Scans the path components of `diff` (a symmetric difference of two
/// matchings restricted to classes `0..=i`) for one that gains exactly one
/// class-`i` edge and preserves every heavier class count. Components are
/// visited in ascending order of their smallest edge index.
fn find_qualifying_path(
    graph: &WeightedGraph,
    diff: &ElemSet,
    x_prefix: &ElemSet,
    classes: &WeightClasses,
    i: usize,
) -> Option<ElemSet> {
    // Decompose into connected components (paths and even cycles).
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); graph.vertex_count()];
    for e in diff {
        let (u, v) = graph.endpoints(e).expect("valid index");
        incident[u].push(e);
        incident[v].push(e);
    }
    let mut seen = ElemSet::new();
    let mut components: Vec<(usize, ElemSet, bool)> = Vec::new();
    for e0 in diff {
        if seen.contains(e0) {
            continue;
        }
        // Flood-fill the component of e0.
        let mut stack = vec![e0];
        let mut comp = ElemSet::new();
        seen.insert(e0);
        comp.insert(e0);
        let mut vertices = Vec::new();
        while let Some(e) = stack.pop() {
            let (u, v) = graph.endpoints(e).expect("valid index");
            for w in [u, v] {
                vertices.push(w);
                for &f in &incident[w] {
                    if seen.insert(f) {
                        comp.insert(f);
                        stack.push(f);
                    }
                }
            }
        }
        // A component is a path iff some vertex has degree 1 in it.
        vertices.sort_unstable();
        vertices.dedup();
        let is_path =
            vertices.iter().any(|&w| incident[w].iter().filter(|&&f| comp.contains(f)).count() == 1);
        components.push((comp.first().expect("nonempty"), comp, is_path));
    }
    components.sort_by_key(|(min_edge, _, _)| *min_edge);

    for (_, comp, is_path) in components {
        if !is_path {
            continue;
        }
        let x_part = comp.intersection(x_prefix);
        let z_part = comp.difference(x_prefix);
        let mut gains_one_at_i = false;
        let mut preserves_heavier = true;
        for j in 0..=i {
            let xj = x_part.intersection(classes.class_members(j)).len();
            let zj = z_part.intersection(classes.class_members(j)).len();
            if j == i {
                gains_one_at_i = zj == xj + 1;
            } else if zj != xj {
                preserves_heavier = false;
                break;
            }
        }
        if gains_one_at_i && preserves_heavier {
            return Some(comp);
        }
    }
    None
}

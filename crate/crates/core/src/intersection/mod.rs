//! Weighted matroid intersection by augmenting paths in exchangeability
//! graphs, lex-maximal common independent sets, and the constructive
//! eligible-improvement step (auxiliary-weight augmentation followed by at
//! most one circuit repair per matroid).

use num_bigint::BigInt;
use num_traits::Zero;

use crate::elems::ElemSet;
use crate::error::{Error, Result};
use crate::matroid::{find_circuit, CircuitSearch, IndependenceOracle, Restriction};
use crate::weights::{
    dispersed_weights, lex_signature, weight_classes, weight_of, LexSignature, Rational, Weight,
    WeightClasses,
};

/// Default cap on the ground-set size for exhaustive enumeration.
pub const DEFAULT_ORACLE_GROUND_LIMIT: usize = 12;

/// Base for the lex-maximal reduction; any integer above 2 is exact.
pub const DEFAULT_DISPERSAL_BASE: u64 = 3;

/// The directed bipartite exchange structure of a common independent set `I`:
/// arcs encode single-element swaps that preserve independence in one of the
/// matroids, sources/sinks are the elements whose plain addition keeps
/// independence, and every vertex carries the signed weight cost used by the
/// cheapest-path search.
#[derive(Clone, Debug)]
pub struct ExchangeabilityGraph {
    /// The common independent set `I` (right side).
    pub inside: ElemSet,
    /// The remaining ground elements (left side).
    pub outside: ElemSet,
    /// Arcs `y -> x` with `y` in `I`, `x` outside, and `I + x - y`
    /// independent in the first matroid.
    pub arcs_a1: Vec<(usize, usize)>,
    /// Arcs `x -> y` with `x` outside, `y` in `I`, and `I + x - y`
    /// independent in the second matroid.
    pub arcs_a2: Vec<(usize, usize)>,
    /// Elements `s` outside `I` with `I + s` independent in the first
    /// matroid.
    pub sources: ElemSet,
    /// Elements `t` outside `I` with `I + t` independent in the second
    /// matroid.
    pub sinks: ElemSet,
    /// Vertex costs: `w(e)` for `e` in `I`, `-w(e)` otherwise.
    pub costs: Vec<Rational>,
}

fn common_ground<O1: IndependenceOracle, O2: IndependenceOracle>(m1: &O1, m2: &O2) -> Result<ElemSet> {
    if m1.ground_size() != m2.ground_size() {
        return Err(Error::InvalidParameter(format!(
            "matroids have different ground sizes ({} vs {})",
            m1.ground_size(),
            m2.ground_size()
        )));
    }
    Ok(m1.ground_mask().intersection(&m2.ground_mask()))
}

fn check_common_independent<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    set: &ElemSet,
) -> Result<()> {
    if !m1.is_independent(set) || !m2.is_independent(set) {
        return Err(Error::InvalidSolution("set is not independent in both matroids".into()));
    }
    Ok(())
}

/// Builds the exchangeability graph of `I` with `O(|I| * |E - I|)`
/// independence queries per matroid.
pub fn build_exchangeability_graph<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    i_set: &ElemSet,
    weights: &[Weight],
) -> Result<ExchangeabilityGraph> {
    let ground = common_ground(m1, m2)?;
    if weights.len() != m1.ground_size() {
        return Err(Error::InvalidParameter("weight vector length mismatch".into()));
    }
    check_common_independent(m1, m2, i_set)?;
    let outside = ground.difference(i_set);
    let mut sources = ElemSet::new();
    let mut sinks = ElemSet::new();
    let mut arcs_a1 = Vec::new();
    let mut arcs_a2 = Vec::new();
    for x in &outside {
        let extended = i_set.with(x);
        if m1.is_independent(&extended) {
            sources.insert(x);
        }
        if m2.is_independent(&extended) {
            sinks.insert(x);
        }
        for y in i_set {
            let swapped = extended.without(y);
            if m1.is_independent(&swapped) {
                arcs_a1.push((y, x));
            }
            if m2.is_independent(&swapped) {
                arcs_a2.push((x, y));
            }
        }
    }
    arcs_a1.sort_unstable();
    arcs_a2.sort_unstable();
    let costs = (0..weights.len())
        .map(|e| {
            let w = weights[e].value().clone();
            if i_set.contains(e) {
                w
            } else {
                -w
            }
        })
        .collect();
    Ok(ExchangeabilityGraph { inside: i_set.clone(), outside, arcs_a1, arcs_a2, sources, sinks, costs })
}

/// A source-to-sink path as its vertex sequence (a single vertex when some
/// element is both source and sink).
pub type VertexPath = Vec<usize>;

// Path labels order by exact cost, then vertex count, then the vertex index
// sequence, which is precisely the deterministic tie-breaking contract.
type Label = (Rational, usize, Vec<usize>);

/// Finds the shortest cheapest source-sink path: minimum total vertex cost,
/// then fewest vertices, then lexicographically-smallest vertex sequence.
///
/// The search is a label-correcting sweep tolerant of the negative vertex
/// costs on elements outside `I`. If labels keep improving beyond the
/// simple-path hop bound, a reachable negative-cost cycle exists, which
/// certifies that the input set was not extreme.
pub fn shortest_cheapest_path(graph: &ExchangeabilityGraph) -> Result<Option<VertexPath>> {
    let n = graph.costs.len();
    let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(from, to) in graph.arcs_a1.iter().chain(graph.arcs_a2.iter()) {
        adjacency[from].push(to);
    }
    for list in &mut adjacency {
        list.sort_unstable();
        list.dedup();
    }
    let mut labels: Vec<Option<Label>> = vec![None; n];
    for s in &graph.sources {
        labels[s] = Some((graph.costs[s].clone(), 1, vec![s]));
    }
    let vertex_count = graph.inside.len() + graph.outside.len();
    let mut changed = true;
    let mut rounds = 0usize;
    while changed {
        changed = false;
        for from in 0..n {
            let Some(label) = labels[from].clone() else { continue };
            for &to in &adjacency[from] {
                let mut seq = label.2.clone();
                seq.push(to);
                let candidate: Label = (&label.0 + &graph.costs[to], label.1 + 1, seq);
                let better = match &labels[to] {
                    Some(current) => candidate < *current,
                    None => true,
                };
                if better {
                    labels[to] = Some(candidate);
                    changed = true;
                }
            }
        }
        rounds += 1;
        if changed && rounds > vertex_count {
            return Err(Error::NotExtremeInput);
        }
    }
    let best = graph.sinks.iter().filter_map(|t| labels[t].clone()).min();
    Ok(best.map(|(_, _, seq)| seq))
}

/// Augments an extreme common independent set along the shortest cheapest
/// path: the result has one more element and is again extreme for its size.
///
/// Errors with `NoAugmentation` when no larger common independent set
/// exists, and with `NotExtremeInput` when the search or the feasibility of
/// the flipped set disproves the extremality precondition.
pub fn augment_extreme<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    i_set: &ElemSet,
) -> Result<ElemSet> {
    let graph = build_exchangeability_graph(m1, m2, i_set, weights)?;
    let path = shortest_cheapest_path(&graph)?.ok_or(Error::NoAugmentation)?;
    let path_set: ElemSet = path.iter().copied().collect();
    let result = i_set.symmetric_difference(&path_set);
    let feasible = m1.is_independent(&result) && m2.is_independent(&result);
    if !feasible || result.len() != i_set.len() + 1 {
        return Err(Error::NotExtremeInput);
    }
    Ok(result)
}

/// Maximum-weight common independent set: grows extreme sets from the empty
/// set, one augmentation per size, and returns the best weight seen over all
/// sizes (the extreme-weight sequence need not be unimodal, so every size is
/// inspected).
pub fn max_weight_common_independent<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
) -> Result<(ElemSet, Rational)> {
    let mut current = ElemSet::new();
    let mut best = ElemSet::new();
    let mut best_weight = Rational::zero();
    loop {
        match augment_extreme(m1, m2, weights, &current) {
            Ok(next) => {
                let w = weight_of(&next, weights)?;
                if w > best_weight {
                    best_weight = w.clone();
                    best = next.clone();
                }
                current = next;
            }
            Err(Error::NoAugmentation) => break,
            Err(other) => return Err(other),
        }
    }
    Ok((best, best_weight))
}

/// Lex-maximal common independent set via the dispersed-weight reduction
/// (base 3), returning the set, its unique lex-maximal signature, and its
/// weight under the original weight function.
pub fn lex_maximal_common_independent<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
) -> Result<(ElemSet, LexSignature, Rational)> {
    let classes = weight_classes(weights);
    let set = if classes.k() == 0 {
        ElemSet::new()
    } else {
        let dispersed = dispersed_weights(&classes, DEFAULT_DISPERSAL_BASE)?;
        max_weight_common_independent(m1, m2, &dispersed)?.0
    };
    let signature = lex_signature(&set, &classes)?;
    let total = weight_of(&set, weights)?;
    Ok((set, signature, total))
}

/// The smallest class index where `X` stops being lex-maximal under
/// restriction to the heaviest classes; `None` iff `X` is lex-maximal.
pub fn smallest_deficient_index<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    x: &ElemSet,
) -> Result<Option<usize>> {
    check_common_independent(m1, m2, x)?;
    let classes = weight_classes(weights);
    let x_sig = lex_signature(x, &classes)?;
    for i in 0..classes.k() {
        let prefix = classes.prefix(i);
        let r1 = Restriction::new(m1, prefix.clone());
        let r2 = Restriction::new(m2, prefix);
        let (_, sub_sig, _) = lex_maximal_common_independent(&r1, &r2, weights)?;
        if sub_sig.counts()[i] != x_sig.counts()[i] {
            return Ok(Some(i));
        }
        debug_assert_eq!(&sub_sig.counts()[..i], &x_sig.counts()[..i]);
    }
    Ok(None)
}

/// Auxiliary weights for the restricted instance on the classes `0..=i`:
/// class `j` gets `n^(i-j)` where `n` is the restricted ground size. With
/// these weights the weighted order on subsets of the restriction coincides
/// with the lexicographic order.
fn auxiliary_weights(classes: &WeightClasses, prefix: &ElemSet, i: usize) -> Vec<Weight> {
    let n = prefix.len().max(1);
    (0..classes.ground_size())
        .map(|e| {
            let class = classes.class_of(e).expect("dense ground");
            let exponent = if prefix.contains(e) && class <= i { (i - class) as u32 } else { 0 };
            Weight::new(Rational::from_integer(BigInt::from(n).pow(exponent))).expect("positive power")
        })
        .collect()
}

/// One augmentation inside the restricted instance: from `X` deficient at
/// class `i`, produces a common independent `Y'` within the classes `0..=i`
/// that keeps every heavier class count, gains one class-`i` element, and
/// spans everything `X` spanned in both matroids.
pub fn restricted_augment<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    x: &ElemSet,
    i: usize,
) -> Result<ElemSet> {
    match smallest_deficient_index(m1, m2, weights, x)? {
        Some(actual) if actual == i => {}
        _ => return Err(Error::NotDeficientAtIndex(i)),
    }
    let classes = weight_classes(weights);
    restricted_augment_inner(m1, m2, &classes, x, i)
}

fn restricted_augment_inner<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    classes: &WeightClasses,
    x: &ElemSet,
    i: usize,
) -> Result<ElemSet> {
    let ground = common_ground(m1, m2)?;
    let prefix = classes.prefix(i).intersection(&ground);
    let aux = auxiliary_weights(classes, &prefix, i);
    let r1 = Restriction::new(m1, prefix.clone());
    let r2 = Restriction::new(m2, prefix.clone());
    let x_prefix = x.intersection(&prefix);
    augment_extreme(&r1, &r2, &aux, &x_prefix)
}

/// One eligible-improvement step for common independent sets.
#[derive(Clone, Debug)]
pub struct EligibleStep {
    /// The improved common independent set `Y`.
    pub result: ElemSet,
    /// The deficient class index that was improved.
    pub index: usize,
    /// Lighter elements dropped by the circuit repairs; at most one per
    /// matroid.
    pub removed: Vec<usize>,
}

/// Improves a non-lex-maximal common independent set at its smallest
/// deficient class, sacrificing at most two lighter elements.
///
/// Construction: augment within the restricted instance, re-attach the
/// lighter part of `X`, and while the union is dependent in either matroid
/// remove one element of that matroid's unique circuit chosen from the
/// lighter part (first matroid first, then the second).
pub fn eligible_improvement<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    x: &ElemSet,
) -> Result<EligibleStep> {
    let i = smallest_deficient_index(m1, m2, weights, x)?.ok_or(Error::AlreadyLexMaximal)?;
    let classes = weight_classes(weights);
    let y_prime = restricted_augment_inner(m1, m2, &classes, x, i)?;
    let x_above = x.difference(&classes.prefix(i));
    let mut candidate = y_prime.union(&x_above);
    let mut removed = Vec::new();
    repair_one_circuit(m1, &mut candidate, &x_above, &mut removed)?;
    repair_one_circuit(m2, &mut candidate, &x_above, &mut removed)?;
    if !m1.is_independent(&candidate) || !m2.is_independent(&candidate) {
        return Err(Error::InvariantViolation(
            "eligible step still dependent after one repair per matroid".into(),
        ));
    }
    Ok(EligibleStep { result: candidate, index: i, removed })
}

/// If `candidate` is dependent in the oracle, it contains exactly one
/// circuit, which must meet the lighter part; remove that circuit's
/// smallest-index lighter element.
fn repair_one_circuit<O: IndependenceOracle>(
    oracle: &O,
    candidate: &mut ElemSet,
    lighter: &ElemSet,
    removed: &mut Vec<usize>,
) -> Result<()> {
    if oracle.is_independent(candidate) {
        return Ok(());
    }
    match find_circuit(oracle, candidate)? {
        CircuitSearch::Circuit(circuit) => {
            let victim = circuit.intersection(lighter).first().ok_or_else(|| {
                Error::InvariantViolation("repair circuit avoids the lighter part".into())
            })?;
            candidate.remove(victim);
            removed.push(victim);
            Ok(())
        }
        CircuitSearch::Independent => unreachable!("dependent set has a circuit"),
    }
}

/// Exhaustive enumeration result over all common independent sets.
#[derive(Clone, Debug)]
pub struct BruteForceCommon {
    /// All optima, sorted by ascending element-index sequence.
    pub optima: Vec<ElemSet>,
    pub best_weight: Rational,
    pub best_signature: LexSignature,
}

/// Objective for the exhaustive oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Objective {
    MaxWeight,
    LexMax,
}

/// Enumerates every subset of the ground set, filters by both oracles, and
/// returns all optima for the requested objective. Independent of the
/// augmenting-path machinery.
pub fn brute_force_common_independent<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    objective: Objective,
    limit: usize,
) -> Result<BruteForceCommon> {
    let n = m1.ground_size();
    common_ground(m1, m2)?;
    if n > limit {
        return Err(Error::OracleTooLarge { size: n, limit });
    }
    let classes = weight_classes(weights);
    let mut optima: Vec<ElemSet> = Vec::new();
    let mut best_weight: Option<Rational> = None;
    let mut best_signature: Option<LexSignature> = None;
    for mask in 0..(1u64 << n) {
        let set = ElemSet::from_mask(mask);
        if !m1.is_independent(&set) || !m2.is_independent(&set) {
            continue;
        }
        match objective {
            Objective::MaxWeight => {
                let w = weight_of(&set, weights)?;
                match &best_weight {
                    Some(bw) if *bw > w => {}
                    Some(bw) if *bw == w => optima.push(set),
                    _ => {
                        best_weight = Some(w);
                        optima = vec![set];
                    }
                }
            }
            Objective::LexMax => {
                let sig = lex_signature(&set, &classes)?;
                match &best_signature {
                    Some(bs) if *bs > sig => {}
                    Some(bs) if *bs == sig => optima.push(set),
                    _ => {
                        best_signature = Some(sig);
                        optima = vec![set];
                    }
                }
            }
        }
    }
    if optima.is_empty() {
        return Err(Error::InvalidSolution("no common independent set, not even the empty set".into()));
    }
    optima.sort();
    let canonical = &optima[0];
    let best_weight = weight_of(canonical, weights)?;
    let best_signature = lex_signature(canonical, &classes)?;
    Ok(BruteForceCommon { optima, best_weight, best_signature })
}

/// Maximum weight over common independent sets of exactly the given size,
/// by exhaustive enumeration; `None` if no such set exists. This is the
/// independent certificate used to confirm extremality of augmentation
/// outputs.
pub fn brute_force_extreme_weight<O1: IndependenceOracle, O2: IndependenceOracle>(
    m1: &O1,
    m2: &O2,
    weights: &[Weight],
    size: usize,
    limit: usize,
) -> Result<Option<Rational>> {
    let n = m1.ground_size();
    if n > limit {
        return Err(Error::OracleTooLarge { size: n, limit });
    }
    let mut best: Option<Rational> = None;
    for mask in 0..(1u64 << n) {
        if mask.count_ones() as usize != size {
            continue;
        }
        let set = ElemSet::from_mask(mask);
        if !m1.is_independent(&set) || !m2.is_independent(&set) {
            continue;
        }
        let w = weight_of(&set, weights)?;
        if best.as_ref().is_none_or(|b| w > *b) {
            best = Some(w);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matroid::{span, Matroid};

    fn w(s: &str) -> Weight {
        s.parse().unwrap()
    }

    fn ws(list: &[&str]) -> Vec<Weight> {
        list.iter().map(|s| w(s)).collect()
    }

    fn set(indices: &[usize]) -> ElemSet {
        indices.iter().copied().collect()
    }

    /// Bipartite encoding of the 3-edge path instance: elements are the
    /// edges e0={0,2}, e1={1,2}, e2={1,3}; the first matroid partitions by
    /// the left endpoint, the second by the right endpoint, capacities 1.
    fn bipartite_encoding() -> (Matroid, Matroid) {
        let m1 = Matroid::partition(3, &[vec![0], vec![1, 2]], &[1, 1]).unwrap();
        let m2 = Matroid::partition(3, &[vec![0, 1], vec![2]], &[1, 1]).unwrap();
        (m1, m2)
    }

    /// Three elements a=0 (heavy), b=1, c=2 with crossing partition
    /// matroids; the unique size-2 set is {b, c}.
    fn crossing_instance() -> (Matroid, Matroid, Vec<Weight>) {
        let m1 = Matroid::partition(3, &[vec![0, 1], vec![2]], &[1, 1]).unwrap();
        let m2 = Matroid::partition(3, &[vec![0, 2], vec![1]], &[1, 1]).unwrap();
        (m1, m2, ws(&["10", "1", "1"]))
    }

    #[test]
    fn exchange_graph_with_empty_set_has_no_arcs() {
        let (m1, m2) = bipartite_encoding();
        let d = build_exchangeability_graph(&m1, &m2, &ElemSet::new(), &ws(&["1", "2", "1"])).unwrap();
        assert!(d.arcs_a1.is_empty() && d.arcs_a2.is_empty());
        assert_eq!(d.sources, ElemSet::full(3));
        assert_eq!(d.sinks, ElemSet::full(3));
        assert_eq!(d.costs[1], -w("2").into_value());
    }

    #[test]
    fn exchange_graph_of_bipartite_encoding() {
        // Computed by enumerating I + x - y independence directly.
        let (m1, m2) = bipartite_encoding();
        let i = set(&[0]);
        let d = build_exchangeability_graph(&m1, &m2, &i, &ws(&["1", "2", "1"])).unwrap();
        // I + e1 = {e0,e1}: fine on the left (blocks {0},{1,2}), blocked on
        // the right (both in block {0,1}). I + e2 is fine in both.
        assert_eq!(d.sources, set(&[1, 2]));
        assert_eq!(d.sinks, set(&[2]));
        assert_eq!(d.arcs_a1, vec![(0, 1), (0, 2)]);
        assert_eq!(d.arcs_a2, vec![(1, 0), (2, 0)]);
    }

    #[test]
    fn exchange_graph_rank_one_swap() {
        let m1 = Matroid::uniform(2, 1);
        let m2 = Matroid::uniform(2, 1);
        let d = build_exchangeability_graph(&m1, &m2, &set(&[0]), &ws(&["1", "1"])).unwrap();
        assert_eq!(d.arcs_a1, vec![(0, 1)]);
        assert_eq!(d.arcs_a2, vec![(1, 0)]);
        assert!(d.sources.is_empty() && d.sinks.is_empty());
        assert_eq!(shortest_cheapest_path(&d).unwrap(), None);
    }

    #[test]
    fn partition_pair_encodes_exactly_the_bipartite_matchings() {
        // Common independent sets of the endpoint-partition pair are
        // precisely the matchings of the encoded bipartite graph.
        let (m1, m2) = bipartite_encoding();
        let graph =
            crate::matching::WeightedGraph::new(4, vec![(0, 2, w("1")), (1, 2, w("2")), (1, 3, w("1"))])
                .unwrap();
        for mask in 0..(1u64 << 3) {
            let candidate = ElemSet::from_mask(mask);
            let common = m1.is_independent(&candidate) && m2.is_independent(&candidate);
            let matching = crate::matching::is_matching(&graph, &candidate).unwrap();
            assert_eq!(common, matching, "disagreement on {candidate:?}");
        }
    }

    #[test]
    fn exchange_graph_rejects_infeasible_input() {
        let (m1, m2) = bipartite_encoding();
        let err = build_exchangeability_graph(&m1, &m2, &set(&[0, 1]), &ws(&["1", "2", "1"]));
        assert!(matches!(err, Err(Error::InvalidSolution(_))));
    }

    #[test]
    fn single_vertex_paths_pick_the_cheapest_source_sink() {
        // I = empty: no arcs, so the only paths are single vertices in the
        // source/sink overlap; the cheapest is the heaviest element, ties by
        // index.
        let m1 = Matroid::uniform(4, 2);
        let m2 = Matroid::uniform(4, 3);
        let d =
            build_exchangeability_graph(&m1, &m2, &ElemSet::new(), &ws(&["2", "5", "5", "1"])).unwrap();
        let path = shortest_cheapest_path(&d).unwrap().unwrap();
        assert_eq!(path, vec![1]);
    }

    /// Exhaustive oracle for the path search: every simple source-sink path
    /// by DFS, minimized by (cost, length, vertex sequence).
    fn enumerate_cheapest_path(graph: &ExchangeabilityGraph) -> Option<Vec<usize>> {
        let n = graph.costs.len();
        let mut adjacency: Vec<Vec<usize>> = vec![Vec::new(); n];
        for &(from, to) in graph.arcs_a1.iter().chain(graph.arcs_a2.iter()) {
            adjacency[from].push(to);
        }
        let mut best: Option<(Rational, usize, Vec<usize>)> = None;
        fn dfs(
            graph: &ExchangeabilityGraph,
            adjacency: &[Vec<usize>],
            path: &mut Vec<usize>,
            cost: Rational,
            best: &mut Option<(Rational, usize, Vec<usize>)>,
        ) {
            let here = *path.last().unwrap();
            if graph.sinks.contains(here) {
                let label = (cost.clone(), path.len(), path.clone());
                if best.as_ref().is_none_or(|b| label < *b) {
                    *best = Some(label);
                }
            }
            for &next in &adjacency[here] {
                if !path.contains(&next) {
                    path.push(next);
                    dfs(graph, adjacency, path, &cost + &graph.costs[next], best);
                    path.pop();
                }
            }
        }
        for s in &graph.sources {
            let mut path = vec![s];
            dfs(graph, &adjacency, &mut path, graph.costs[s].clone(), &mut best);
        }
        best.map(|(_, _, seq)| seq)
    }

    #[test]
    fn path_search_matches_exhaustive_enumeration() {
        // Random extreme sets reached by augmenting from the empty set; at
        // every size the label-correcting search must agree with DFS
        // enumeration of all simple source-sink paths.
        let mut compared = 0usize;
        for seed in 0..60u64 {
            let mut params = crate::harness::GenParams::new(crate::harness::GenKind::Intersection, seed);
            params.weight_levels = 1 + (seed as usize % 3);
            let instance = crate::harness::generate_instance(&params).unwrap();
            let crate::harness::InstanceKind::Intersection { m1, m2, weights } = &instance.kind else {
                unreachable!()
            };
            let mut current = ElemSet::new();
            loop {
                let graph = build_exchangeability_graph(m1, m2, &current, weights).unwrap();
                let fast = shortest_cheapest_path(&graph).unwrap();
                let slow = enumerate_cheapest_path(&graph);
                assert_eq!(fast, slow, "path mismatch on {} at size {}", instance.label, current.len());
                compared += 1;
                match fast {
                    Some(path) => {
                        let path_set: ElemSet = path.iter().copied().collect();
                        current = current.symmetric_difference(&path_set);
                    }
                    None => break,
                }
            }
        }
        assert!(compared >= 120);
    }

    #[test]
    fn augment_from_empty_picks_heaviest_common_singleton() {
        let (m1, m2, weights) = crossing_instance();
        let one = augment_extreme(&m1, &m2, &weights, &ElemSet::new()).unwrap();
        assert_eq!(one, set(&[0]));
    }

    #[test]
    fn augment_swaps_to_the_unique_two_element_set() {
        let (m1, m2, weights) = crossing_instance();
        let two = augment_extreme(&m1, &m2, &weights, &set(&[0])).unwrap();
        assert_eq!(two, set(&[1, 2]));
        assert_eq!(weight_of(&two, &weights).unwrap(), Rational::from_integer(2.into()));
        // No size-3 common independent set exists.
        assert!(matches!(augment_extreme(&m1, &m2, &weights, &two), Err(Error::NoAugmentation)));
    }

    #[test]
    fn augment_on_bipartite_encoding_reaches_the_both_ends_matching() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "3/2", "1"]);
        let one = augment_extreme(&m1, &m2, &weights, &ElemSet::new()).unwrap();
        assert_eq!(one, set(&[1]));
        let two = augment_extreme(&m1, &m2, &weights, &one).unwrap();
        assert_eq!(two, set(&[0, 2]));
    }

    #[test]
    fn max_weight_scans_all_sizes() {
        // The weight-10 singleton beats the weight-2 pair.
        let (m1, m2, weights) = crossing_instance();
        let (best, total) = max_weight_common_independent(&m1, &m2, &weights).unwrap();
        assert_eq!(best, set(&[0]));
        assert_eq!(total, Rational::from_integer(10.into()));
    }

    #[test]
    fn max_weight_on_free_matroids_takes_everything() {
        let m1 = Matroid::uniform(3, 3);
        let m2 = Matroid::uniform(3, 3);
        let weights = ws(&["1", "1", "1"]);
        let (best, total) = max_weight_common_independent(&m1, &m2, &weights).unwrap();
        assert_eq!(best, ElemSet::full(3));
        assert_eq!(total, Rational::from_integer(3.into()));
    }

    #[test]
    fn lex_maximal_on_bipartite_encoding() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "3/2", "1"]);
        let (best, sig, total) = lex_maximal_common_independent(&m1, &m2, &weights).unwrap();
        assert_eq!(best, set(&[1]));
        assert_eq!(sig, LexSignature(vec![1, 0]));
        assert_eq!(total, w("3/2").into_value());
    }

    #[test]
    fn lex_maximal_with_uniform_weights_is_max_cardinality() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "1", "1"]);
        let (best, sig, _) = lex_maximal_common_independent(&m1, &m2, &weights).unwrap();
        assert_eq!(best.len(), 2);
        assert_eq!(sig, LexSignature(vec![2]));
    }

    #[test]
    fn deficiency_of_the_two_light_edges() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "2", "1"]);
        assert_eq!(smallest_deficient_index(&m1, &m2, &weights, &set(&[0, 2])).unwrap(), Some(0));
        assert_eq!(smallest_deficient_index(&m1, &m2, &weights, &set(&[1])).unwrap(), None);
        assert!(matches!(
            smallest_deficient_index(&m1, &m2, &weights, &set(&[0, 1])),
            Err(Error::InvalidSolution(_))
        ));
    }

    #[test]
    fn restricted_augment_on_bipartite_encoding() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "2", "1"]);
        let x = set(&[0, 2]);
        let y_prime = restricted_augment(&m1, &m2, &weights, &x, 0).unwrap();
        assert_eq!(y_prime, set(&[1]));
        // Span containments in both matroids over the restriction.
        let classes = weight_classes(&weights);
        let prefix = classes.prefix(0);
        let r1 = Restriction::new(&m1, prefix.clone());
        let r2 = Restriction::new(&m2, prefix.clone());
        let x_prefix = x.intersection(&prefix);
        assert!(span(&r1, &x_prefix).unwrap().is_subset_of(&span(&r1, &y_prime).unwrap()));
        assert!(span(&r2, &x_prefix).unwrap().is_subset_of(&span(&r2, &y_prime).unwrap()));
        // Wrong index is rejected.
        assert!(matches!(
            restricted_augment(&m1, &m2, &weights, &x, 1),
            Err(Error::NotDeficientAtIndex(1))
        ));
    }

    #[test]
    fn restricted_augment_single_vertex_case() {
        // X empty and a heavy singleton available: Y' is that singleton.
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "2", "1"]);
        let y_prime = restricted_augment(&m1, &m2, &weights, &ElemSet::new(), 0).unwrap();
        assert_eq!(y_prime, set(&[1]));
    }

    #[test]
    fn eligible_step_drops_both_light_elements_at_threshold() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "2", "1"]);
        let step = eligible_improvement(&m1, &m2, &weights, &set(&[0, 2])).unwrap();
        assert_eq!(step.index, 0);
        assert_eq!(step.result, set(&[1]));
        // The first matroid's circuit {e1, e2} drops e2, then the second
        // matroid's circuit {e0, e1} drops e0.
        assert_eq!(step.removed, vec![2, 0]);
    }

    #[test]
    fn eligible_step_with_no_removals() {
        // Free matroid pair: re-attaching the lighter part never conflicts.
        let m1 = Matroid::uniform(3, 3);
        let m2 = Matroid::uniform(3, 3);
        let weights = ws(&["2", "1", "1"]);
        let step = eligible_improvement(&m1, &m2, &weights, &set(&[1, 2])).unwrap();
        assert_eq!(step.result, ElemSet::full(3));
        assert!(step.removed.is_empty());
    }

    #[test]
    fn eligible_step_rejects_lex_maximal_input() {
        let (m1, m2) = bipartite_encoding();
        let weights = ws(&["1", "2", "1"]);
        assert!(matches!(
            eligible_improvement(&m1, &m2, &weights, &set(&[1])),
            Err(Error::AlreadyLexMaximal)
        ));
    }

    #[test]
    fn brute_force_objectives() {
        let (m1, m2, weights) = crossing_instance();
        let bf = brute_force_common_independent(&m1, &m2, &weights, Objective::MaxWeight, 12).unwrap();
        assert_eq!(bf.optima, vec![set(&[0])]);
        assert_eq!(bf.best_weight, Rational::from_integer(10.into()));

        let free = Matroid::uniform(3, 3);
        let bf = brute_force_common_independent(
            &free,
            &free,
            &ws(&["1", "1", "1"]),
            Objective::MaxWeight,
            12,
        )
        .unwrap();
        assert_eq!(bf.optima, vec![ElemSet::full(3)]);

        let (m1, m2) = bipartite_encoding();
        let bf =
            brute_force_common_independent(&m1, &m2, &ws(&["1", "2", "1"]), Objective::MaxWeight, 12)
                .unwrap();
        assert_eq!(bf.optima.len(), 2);
        assert_eq!(bf.optima[0], set(&[0, 2]));
        assert_eq!(bf.optima[1], set(&[1]));
    }

    #[test]
    fn brute_force_respects_the_limit() {
        let m = Matroid::uniform(13, 3);
        let weights: Vec<Weight> = (0..13).map(|_| w("1")).collect();
        assert!(matches!(
            brute_force_common_independent(&m, &m, &weights, Objective::MaxWeight, 12),
            Err(Error::OracleTooLarge { size: 13, limit: 12 })
        ));
    }

    #[test]
    fn extreme_weights_by_enumeration() {
        let (m1, m2, weights) = crossing_instance();
        assert_eq!(
            brute_force_extreme_weight(&m1, &m2, &weights, 1, 12).unwrap(),
            Some(Rational::from_integer(10.into()))
        );
        assert_eq!(
            brute_force_extreme_weight(&m1, &m2, &weights, 2, 12).unwrap(),
            Some(Rational::from_integer(2.into()))
        );
        assert_eq!(brute_force_extreme_weight(&m1, &m2, &weights, 3, 12).unwrap(), None);
    }
}

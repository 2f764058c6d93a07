//! Seeded instance generation with exact control of the dispersion ratio.

use num_bigint::BigInt;
use num_traits::One;

use super::rng::Rng;
use super::{Instance, InstanceKind};
use crate::error::{Error, Result};
use crate::matching::WeightedGraph;
use crate::matroid::{verify_matroid_axioms, LinearMatroid, Matroid};
use crate::weights::{rational_to_string, Rational, Weight};

/// Which problem kind to generate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GenKind {
    Matching,
    Intersection,
}

/// Generator parameters. `alpha` lands in `[alpha_min, alpha_max]` exactly
/// (the minimum consecutive-level ratio is constructed, not sampled and
/// rejected); with `weight_levels == 1` the ratio is infinite and the alpha
/// range is ignored.
#[derive(Clone, Debug)]
pub struct GenParams {
    pub kind: GenKind,
    pub seed: u64,
    pub weight_levels: usize,
    pub alpha_min: Rational,
    pub alpha_max: Rational,
    /// Matching instances: bounds on the graph size.
    pub max_vertices: usize,
    pub max_edges: usize,
    /// Intersection instances: bound on the ground-set size.
    pub max_ground: usize,
}

impl GenParams {
    pub fn new(kind: GenKind, seed: u64) -> Self {
        GenParams {
            kind,
            seed,
            weight_levels: 2,
            alpha_min: Rational::from_integer(1.into()),
            alpha_max: Rational::from_integer(3.into()),
            max_vertices: 8,
            max_edges: 12,
            max_ground: 9,
        }
    }

    pub fn describe(&self) -> String {
        let kind = match self.kind {
            GenKind::Matching => "matching",
            GenKind::Intersection => "intersection",
        };
        format!(
            "{kind} seed={} k={} alpha=[{},{}]",
            self.seed,
            self.weight_levels,
            rational_to_string(&self.alpha_min),
            rational_to_string(&self.alpha_max)
        )
    }
}

/// Candidate ratios with small numerators and denominators inside the
/// requested range (exclusive of 1, since weight levels are distinct).
fn ratio_candidates(lo: &Rational, hi: &Rational) -> Vec<Rational> {
    let one = Rational::one();
    let mut out = Vec::new();
    for den in 1u32..=8 {
        for num in (den + 1)..=(den * 12) {
            let r = Rational::new(BigInt::from(num), BigInt::from(den));
            if r > one && r >= *lo && r <= *hi && !out.contains(&r) {
                out.push(r);
            }
        }
    }
    out.sort();
    out
}

/// Strictly decreasing weight levels whose minimum consecutive ratio is an
/// exact rational inside the range.
fn build_levels(rng: &mut Rng, k: usize, lo: &Rational, hi: &Rational) -> Result<Vec<Weight>> {
    let scale_pool = ["1", "1/2", "2", "1/3", "3"];
    let scale: Rational = crate::weights::parse_rational(scale_pool[rng.range(0, scale_pool.len() - 1)])
        .expect("static pool");
    if k == 1 {
        return Ok(vec![Weight::new(scale).expect("positive")]);
    }
    let candidates = ratio_candidates(lo, hi);
    if candidates.is_empty() {
        return Err(Error::GenerationError(format!(
            "no small exact ratio inside [{}, {}]",
            rational_to_string(lo),
            rational_to_string(hi)
        )));
    }
    let target = rng.choice(&candidates).clone();
    let at_least_target: Vec<Rational> = candidates.iter().filter(|r| **r >= target).cloned().collect();
    let min_position = rng.range(0, k - 2);
    let mut ratios = Vec::with_capacity(k - 1);
    for j in 0..k - 1 {
        if j == min_position {
            ratios.push(target.clone());
        } else {
            ratios.push(rng.choice(&at_least_target).clone());
        }
    }
    // Build from the lightest level up.
    let mut levels = vec![scale];
    for ratio in ratios.iter().rev() {
        let next = levels.last().expect("nonempty") * ratio;
        levels.push(next);
    }
    levels.reverse();
    Ok(levels.into_iter().map(|v| Weight::new(v).expect("positive")).collect())
}

/// Assigns every element a class such that each of the `k` classes is
/// nonempty (keeping the constructed levels the actual distinct values).
fn assign_classes(rng: &mut Rng, n: usize, k: usize) -> Vec<usize> {
    let mut classes: Vec<usize> = (0..n).map(|_| rng.range(0, k - 1)).collect();
    let mut slots: Vec<usize> = (0..n).collect();
    rng.shuffle(&mut slots);
    for (class, &slot) in slots.iter().take(k).enumerate() {
        classes[slot] = class;
    }
    classes
}

fn random_multigraph_edges(
    rng: &mut Rng,
    vertex_count: usize,
    edge_count: usize,
) -> Vec<(usize, usize)> {
    (0..edge_count)
        .map(|_| {
            let u = rng.range(0, vertex_count - 1);
            let mut v = rng.range(0, vertex_count - 1);
            while v == u {
                v = rng.range(0, vertex_count - 1);
            }
            (u, v)
        })
        .collect()
}

fn random_partition_matroid(rng: &mut Rng, n: usize, unit_caps: bool) -> Matroid {
    let block_count = rng.range(1, 3.min(n));
    let mut blocks: Vec<Vec<usize>> = vec![Vec::new(); block_count];
    for e in 0..n {
        blocks[rng.range(0, block_count - 1)].push(e);
    }
    let caps: Vec<usize> =
        (0..block_count).map(|_| if unit_caps { 1 } else { rng.range(1, 2) }).collect();
    Matroid::partition(n, &blocks, &caps).expect("constructed blocks partition the ground set")
}

fn random_graphic_matroid(rng: &mut Rng, n: usize) -> Matroid {
    let vertex_count = rng.range(2, 5);
    Matroid::graphic(vertex_count, random_multigraph_edges(rng, vertex_count, n))
        .expect("edges fit the vertex count")
}

fn random_linear_matroid(rng: &mut Rng, n: usize) -> Matroid {
    let entry_pool = ["0", "1", "-1", "2", "1/2", "3", "-1/2"];
    let row_count = rng.range(2, 3);
    let rows: Vec<Vec<Rational>> = (0..row_count)
        .map(|_| {
            (0..n)
                .map(|_| {
                    crate::weights::parse_rational(entry_pool[rng.range(0, entry_pool.len() - 1)])
                        .expect("static pool")
                })
                .collect()
        })
        .collect();
    Matroid::Linear(LinearMatroid::new(rows).expect("rectangular"))
}

/// Generates a reproducible random instance. Matroid pairs are drawn from
/// partition/partition (bipartite encodings), graphic/partition,
/// uniform/graphic, and linear/linear, and both matroids are certified
/// against the axioms before the instance is returned.
pub fn generate_instance(params: &GenParams) -> Result<Instance> {
    let k = params.weight_levels;
    if k == 0 {
        return Err(Error::InvalidParameter("weight_levels must be at least 1".into()));
    }
    if k >= 2 && params.alpha_min > params.alpha_max {
        return Err(Error::InvalidParameter("alpha_min exceeds alpha_max".into()));
    }
    let mut rng = Rng::new(params.seed);
    let levels = build_levels(&mut rng, k, &params.alpha_min, &params.alpha_max)?;
    let kind = match params.kind {
        GenKind::Matching => {
            if params.max_vertices < 2 {
                return Err(Error::InvalidParameter(
                    "matching instances need at least 2 vertices".into(),
                ));
            }
            if params.max_edges < k {
                return Err(Error::GenerationError(format!(
                    "cannot place {k} weight levels on at most {} edges",
                    params.max_edges
                )));
            }
            let vertex_count = rng.range(2, params.max_vertices);
            let edge_count = rng.range(k, params.max_edges);
            let endpoints = random_multigraph_edges(&mut rng, vertex_count, edge_count);
            let classes = assign_classes(&mut rng, edge_count, k);
            let edges: Vec<(usize, usize, Weight)> = endpoints
                .into_iter()
                .zip(&classes)
                .map(|((u, v), &c)| (u, v, levels[c].clone()))
                .collect();
            InstanceKind::Matching(WeightedGraph::new(vertex_count, edges)?)
        }
        GenKind::Intersection => {
            if params.max_ground < k {
                return Err(Error::GenerationError(format!(
                    "cannot place {k} weight levels on at most {} elements",
                    params.max_ground
                )));
            }
            let n = rng.range(k.max(2).min(params.max_ground), params.max_ground);
            let (m1, m2) = match rng.range(0, 3) {
                0 => (
                    random_partition_matroid(&mut rng, n, true),
                    random_partition_matroid(&mut rng, n, true),
                ),
                1 => (random_graphic_matroid(&mut rng, n), random_partition_matroid(&mut rng, n, false)),
                2 => {
                    let rank = rng.range(1, n);
                    (Matroid::uniform(n, rank), random_graphic_matroid(&mut rng, n))
                }
                _ => (random_linear_matroid(&mut rng, n), random_linear_matroid(&mut rng, n)),
            };
            for m in [&m1, &m2] {
                let report = verify_matroid_axioms(m)?;
                if !report.passed() {
                    return Err(Error::InvariantViolation(format!(
                        "generated matroid fails the axioms: {report:?}"
                    )));
                }
            }
            let classes = assign_classes(&mut rng, n, k);
            let weights: Vec<Weight> = classes.iter().map(|&c| levels[c].clone()).collect();
            InstanceKind::Intersection { m1, m2, weights }
        }
    };
    Ok(Instance { kind, seed: params.seed, label: params.describe() })
}

/// The three-edge bipartite path that makes the approximation bound tight:
/// edge weights 1, x, 1 with `x` in `(1, 2]`. Its optimum is 2, its
/// lex-optimum is `x`, its dispersion ratio is `x`, and the lexopt/opt ratio
/// is exactly `x/2`.
pub fn tightness_example(x: &Rational) -> Result<Instance> {
    let one = Rational::one();
    let two = Rational::from_integer(2.into());
    if *x <= one || *x > two {
        return Err(Error::InvalidParameter(format!(
            "tightness parameter must lie in (1, 2], got {}",
            rational_to_string(x)
        )));
    }
    let unit = Weight::new(one).expect("positive");
    let middle = Weight::new(x.clone()).expect("checked range");
    let graph = WeightedGraph::new(4, vec![(0, 2, unit.clone()), (1, 2, middle), (1, 3, unit)])?;
    Ok(Instance {
        kind: InstanceKind::Matching(graph),
        seed: 0,
        label: format!("tightness(x={})", rational_to_string(x)),
    })
}

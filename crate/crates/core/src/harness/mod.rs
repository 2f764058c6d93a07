//! Instance generation, theorem verification, eligible-chain tracing, and a
//! greedy baseline.

mod chain;
mod gen;
mod rng;
mod sweep;
mod verify;

pub use chain::{eligible_chain, ChainReport, ChainStep};
pub use gen::{generate_instance, tightness_example, GenKind, GenParams};
pub use rng::Rng;
pub use sweep::{sweep, BatchReport, SweepBatch, SweepConfig, SweepReport, TightnessRow};
pub use verify::{verify_bound, Regime, SolutionPair, VerificationReport, VerifyOptions};

use crate::elems::ElemSet;
use crate::error::{Error, Result};
use crate::matching::{self, Matching, WeightedGraph};
use crate::matroid::{IndependenceOracle, Matroid};
use crate::weights::{alpha, weight_classes, Alpha, LexSignature, Rational, Weight, WeightClasses};
use crate::{intersection, OracleLimits};

/// A solvable problem instance of either kind.
#[derive(Clone, Debug)]
pub enum InstanceKind {
    Matching(WeightedGraph),
    Intersection { m1: Matroid, m2: Matroid, weights: Vec<Weight> },
}

/// An instance plus the provenance needed to reproduce it.
#[derive(Clone, Debug)]
pub struct Instance {
    pub kind: InstanceKind,
    pub seed: u64,
    /// Human-readable generator descriptor (parameters echo).
    pub label: String,
}

impl Instance {
    pub fn ground_size(&self) -> usize {
        match &self.kind {
            InstanceKind::Matching(g) => g.edge_count(),
            InstanceKind::Intersection { weights, .. } => weights.len(),
        }
    }

    pub fn weights(&self) -> Vec<Weight> {
        match &self.kind {
            InstanceKind::Matching(g) => g.weights(),
            InstanceKind::Intersection { weights, .. } => weights.clone(),
        }
    }

    pub fn classes(&self) -> WeightClasses {
        weight_classes(&self.weights())
    }

    pub fn alpha(&self) -> Alpha {
        alpha(&self.classes())
    }

    pub fn is_feasible(&self, set: &ElemSet) -> Result<bool> {
        match &self.kind {
            InstanceKind::Matching(g) => matching::is_matching(g, set),
            InstanceKind::Intersection { m1, m2, .. } => {
                match set.last() {
                    Some(e) if e >= m1.ground_size() => return Err(Error::UnknownElement(e)),
                    _ => {}
                }
                Ok(m1.is_independent(set) && m2.is_independent(set))
            }
        }
    }

    /// Exact maximum weight and one optimal solution.
    pub fn solve_max_weight(&self) -> Result<(ElemSet, Rational)> {
        match &self.kind {
            InstanceKind::Matching(g) => {
                let (m, w) = matching::max_weight_matching(g);
                Ok((m.edge_indices().clone(), w))
            }
            InstanceKind::Intersection { m1, m2, weights } => {
                intersection::max_weight_common_independent(m1, m2, weights)
            }
        }
    }

    /// Lex-maximal solution with its signature and weight.
    pub fn solve_lex_max(&self) -> Result<(ElemSet, LexSignature, Rational)> {
        match &self.kind {
            InstanceKind::Matching(g) => {
                let (m, sig, w) = matching::lex_maximal_matching(g);
                Ok((m.edge_indices().clone(), sig, w))
            }
            InstanceKind::Intersection { m1, m2, weights } => {
                intersection::lex_maximal_common_independent(m1, m2, weights)
            }
        }
    }

    /// All brute-force optima for the objective, canonical order.
    pub fn brute_force_optima(
        &self,
        objective: BruteObjective,
        limits: &OracleLimits,
    ) -> Result<Vec<ElemSet>> {
        match &self.kind {
            InstanceKind::Matching(g) => {
                let obj = match objective {
                    BruteObjective::MaxWeight => matching::Objective::MaxWeight,
                    BruteObjective::LexMax => matching::Objective::LexMax,
                };
                let bf = matching::brute_force_matchings(g, obj, limits.matching_edges)?;
                Ok(bf.optima.iter().map(Matching::edge_indices).cloned().collect())
            }
            InstanceKind::Intersection { m1, m2, weights } => {
                let obj = match objective {
                    BruteObjective::MaxWeight => intersection::Objective::MaxWeight,
                    BruteObjective::LexMax => intersection::Objective::LexMax,
                };
                let bf = intersection::brute_force_common_independent(
                    m1,
                    m2,
                    weights,
                    obj,
                    limits.intersection_ground,
                )?;
                Ok(bf.optima)
            }
        }
    }

    pub fn within_oracle_limits(&self, limits: &OracleLimits) -> bool {
        match &self.kind {
            InstanceKind::Matching(g) => g.edge_count() <= limits.matching_edges,
            InstanceKind::Intersection { weights, .. } => weights.len() <= limits.intersection_ground,
        }
    }

    /// Smallest deficient class index of a feasible solution (`None` iff
    /// lex-maximal).
    pub fn deficient_index(&self, set: &ElemSet) -> Result<Option<usize>> {
        match &self.kind {
            InstanceKind::Matching(g) => matching::smallest_deficient_index_matching(g, set),
            InstanceKind::Intersection { m1, m2, weights } => {
                intersection::smallest_deficient_index(m1, m2, weights, set)
            }
        }
    }

    /// One eligible-improvement step: (result, class index, removed).
    pub fn eligible_step(&self, set: &ElemSet) -> Result<(ElemSet, usize, Vec<usize>)> {
        match &self.kind {
            InstanceKind::Matching(g) => {
                let step = matching::eligible_improvement_matching(g, set)?;
                Ok((step.result.edge_indices().clone(), step.index, step.removed))
            }
            InstanceKind::Intersection { m1, m2, weights } => {
                let step = intersection::eligible_improvement(m1, m2, weights, set)?;
                Ok((step.result, step.index, step.removed))
            }
        }
    }

    /// Standard greedy: descending weight, ascending index tie-break, add
    /// whenever feasible. Reported for approximation-ratio context (it is
    /// 2-approximate on both structures).
    pub fn greedy_baseline(&self) -> Result<(ElemSet, Rational)> {
        let weights = self.weights();
        let mut order: Vec<usize> = (0..weights.len()).collect();
        order.sort_by(|&a, &b| weights[b].cmp(&weights[a]).then(a.cmp(&b)));
        let mut picked = ElemSet::new();
        for e in order {
            picked.insert(e);
            if !self.is_feasible(&picked)? {
                picked.remove(e);
            }
        }
        let total = crate::weights::weight_of(&picked, &weights)?;
        Ok((picked, total))
    }
}

/// Objective selector for the unified brute-force entry point.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BruteObjective {
    MaxWeight,
    LexMax,
}

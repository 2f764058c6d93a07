//! Batch verification across seeded generated instances, with per-batch
//! aggregates and the tightness family.

use serde::{Deserialize, Serialize};

use super::{eligible_chain, generate_instance, tightness_example, verify_bound};
use super::{GenParams, Regime, VerifyOptions};
use crate::error::Result;
use crate::weights::{rational_serde, rational_serde_opt, Rational};
use crate::OracleLimits;

/// A batch of instances: the same generator parameters over consecutive
/// seeds.
#[derive(Clone, Debug)]
pub struct SweepBatch {
    pub params: GenParams,
    pub count: usize,
}

/// Sweep configuration.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub batches: Vec<SweepBatch>,
    /// Middle weights `x` for the tightness family; each must lie in (1, 2].
    pub tightness: Vec<Rational>,
    /// Enumerate all optima and test the vice-versa direction where the
    /// instance is small enough.
    pub vice_versa: bool,
    /// Also trace an eligible chain from the enumerated optimum.
    pub chains: bool,
    pub limits: OracleLimits,
}

impl Default for SweepConfig {
    fn default() -> Self {
        SweepConfig {
            batches: Vec::new(),
            tightness: Vec::new(),
            vice_versa: true,
            chains: true,
            limits: OracleLimits::default(),
        }
    }
}

/// Aggregates for one batch.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BatchReport {
    pub label: String,
    pub count: usize,
    pub passed: usize,
    pub failed: Vec<String>,
    /// Smallest observed lexopt/opt over the batch (absent when every
    /// instance had opt = 0).
    #[serde(with = "rational_serde_opt")]
    pub min_ratio: Option<Rational>,
    /// Instances whose dispersion ratio exceeded 2 (equivalence checked).
    pub equivalence_instances: usize,
    /// Instances with dispersion ratio at most 2 (bound checked).
    pub bound_instances: usize,
    /// Total eligible-improvement steps traced.
    pub chain_steps: usize,
}

/// One row of the tightness family.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TightnessRow {
    #[serde(with = "rational_serde")]
    pub x: Rational,
    #[serde(with = "rational_serde")]
    pub opt: Rational,
    #[serde(with = "rational_serde")]
    pub lexopt: Rational,
    #[serde(with = "rational_serde")]
    pub ratio: Rational,
    /// Whether lexopt/opt equals x/2 exactly.
    pub bound_attained: bool,
}

/// Machine-readable sweep outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub batches: Vec<BatchReport>,
    pub tightness: Vec<TightnessRow>,
    pub total: usize,
    pub passed: usize,
    pub all_passed: bool,
}

/// Runs `verify_bound` (and optionally `eligible_chain`) across every batch
/// and the tightness family, merging results in seed order.
pub fn sweep(config: &SweepConfig) -> Result<SweepReport> {
    let mut batches = Vec::new();
    let mut total = 0usize;
    let mut passed_total = 0usize;
    for batch in &config.batches {
        let mut passed = 0usize;
        let mut failed = Vec::new();
        let mut min_ratio: Option<Rational> = None;
        let mut equivalence_instances = 0usize;
        let mut bound_instances = 0usize;
        let mut chain_steps = 0usize;
        for offset in 0..batch.count {
            let mut params = batch.params.clone();
            params.seed = batch.params.seed + offset as u64;
            let instance = generate_instance(&params)?;
            let options = VerifyOptions {
                vice_versa: config.vice_versa && instance.within_oracle_limits(&config.limits),
                limits: config.limits,
            };
            let report = verify_bound(&instance, &options)?;
            match report.regime {
                Regime::BoundRegime => bound_instances += 1,
                Regime::EquivalenceRegime => equivalence_instances += 1,
            }
            if let Some(ratio) = &report.ratio {
                if min_ratio.as_ref().is_none_or(|m| ratio < m) {
                    min_ratio = Some(ratio.clone());
                }
            }
            let mut ok = report.passed;
            if config.chains && instance.within_oracle_limits(&config.limits) {
                let chain = eligible_chain(&instance, None, &config.limits)?;
                chain_steps += chain.steps.len();
                ok = ok && chain.passed;
            }
            if ok {
                passed += 1;
            } else {
                failed.push(instance.label.clone());
            }
        }
        total += batch.count;
        passed_total += passed;
        batches.push(BatchReport {
            label: batch.params.describe(),
            count: batch.count,
            passed,
            failed,
            min_ratio,
            equivalence_instances,
            bound_instances,
            chain_steps,
        });
    }

    let mut tightness = Vec::new();
    let two = Rational::from_integer(2.into());
    for x in &config.tightness {
        let instance = tightness_example(x)?;
        let options = VerifyOptions { vice_versa: config.vice_versa, limits: config.limits };
        let report = verify_bound(&instance, &options)?;
        let ratio = report.ratio.clone().expect("tightness optimum is 2");
        let bound_attained = ratio == x / &two;
        total += 1;
        if report.passed && bound_attained {
            passed_total += 1;
        }
        tightness.push(TightnessRow {
            x: x.clone(),
            opt: report.opt,
            lexopt: report.lexopt_value,
            ratio,
            bound_attained,
        });
    }

    Ok(SweepReport {
        batches,
        tightness,
        total,
        passed: passed_total,
        all_passed: passed_total == total,
    })
}

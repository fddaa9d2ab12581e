//! The experiment pipelines: rediscovery (generate → translate → reduce →
//! compare canonical forms) and the reduction runtime benchmark.

use std::time::Instant;

use rayon::prelude::*;
use wf2pt_core::generate::{sample_tree, GeneratorConfig, OperatorProbabilities};
use wf2pt_core::reduce::{reduce_to_tree, ReduceOptions, ReductionOutcome};
use wf2pt_core::serial::{BenchOutcome, BenchRow};
use wf2pt_core::translate::{tree_to_wfnet, TranslationVariant};
use wf2pt_core::tree::canonicalize;

/// Parameters shared by both experiment pipelines. Instance `i` uses seed
/// `base_seed + i`, so runs are reproducible and disjoint seed ranges give
/// disjoint corpora.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub count: u64,
    pub base_seed: u64,
    pub activities: (u32, u32, u32),
    pub probabilities: OperatorProbabilities,
}

impl ExperimentSpec {
    pub fn instance_config(&self, index: u64) -> GeneratorConfig {
        let mut config = GeneratorConfig::new(self.activities, self.base_seed.wrapping_add(index))
            .expect("validated activities triple");
        config.probabilities = self.probabilities;
        config
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mismatch {
    pub seed: u64,
    pub variant: TranslationVariant,
}

#[derive(Debug, Clone)]
pub struct RediscoverReport {
    pub total: usize,
    pub matches: usize,
    pub mismatches: Vec<Mismatch>,
}

impl RediscoverReport {
    pub fn all_match(&self) -> bool {
        self.matches == self.total
    }
}

/// Runs the rediscovery experiment: for every seed and every requested
/// variant, translate the generated tree, reduce the net, and compare the
/// canonical forms. Instances fan out across worker threads; results are
/// merged in seed order.
pub fn run_rediscover(spec: &ExperimentSpec, variants: &[TranslationVariant]) -> RediscoverReport {
    let results: Vec<Vec<Mismatch>> = (0..spec.count)
        .into_par_iter()
        .map(|index| {
            let config = spec.instance_config(index);
            let tree = sample_tree(&config);
            let expected = canonicalize(&tree);
            let mut mismatches = Vec::new();
            for &variant in variants {
                let net = tree_to_wfnet(&tree, variant);
                let rediscovered = match reduce_to_tree(&net, &ReduceOptions::default()) {
                    ReductionOutcome::Tree { tree, .. } => tree == expected,
                    ReductionOutcome::Irreducible { .. } => false,
                };
                if !rediscovered {
                    mismatches.push(Mismatch { seed: config.seed, variant });
                }
            }
            mismatches
        })
        .collect();

    let total = spec.count as usize * variants.len();
    let mismatches: Vec<Mismatch> = results.into_iter().flatten().collect();
    RediscoverReport { total, matches: total - mismatches.len(), mismatches }
}

/// Runs the benchmark: per instance, both translation variants are reduced
/// and timed (translation and generation excluded from the clock), one row
/// per (instance, variant) experiment, sequential so timings are clean.
pub fn run_bench(spec: &ExperimentSpec) -> Vec<BenchRow> {
    let mut rows = Vec::with_capacity(spec.count as usize * 2);
    for index in 0..spec.count {
        let config = spec.instance_config(index);
        let tree = sample_tree(&config);
        for variant in TranslationVariant::ALL {
            let net = tree_to_wfnet(&tree, variant);
            let size = net.net().size();
            let started = Instant::now();
            let outcome = reduce_to_tree(&net, &ReduceOptions::default());
            let micros = started.elapsed().as_micros().min(u128::from(u64::MAX)) as u64;
            let outcome = match outcome {
                ReductionOutcome::Tree { .. } => BenchOutcome::Tree,
                ReductionOutcome::Irreducible { .. } => BenchOutcome::Irreducible,
            };
            rows.push(BenchRow { size, micros, outcome });
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(count: u64) -> ExperimentSpec {
        ExperimentSpec {
            count,
            base_seed: 7,
            activities: (5, 10, 15),
            probabilities: OperatorProbabilities::default(),
        }
    }

    #[test]
    fn rediscover_small_batch_matches() {
        let report = run_rediscover(&spec(25), &TranslationVariant::ALL);
        assert_eq!(report.total, 50);
        assert!(report.all_match(), "mismatches: {:?}", report.mismatches);
    }

    #[test]
    fn rediscover_is_order_stable() {
        let a = run_rediscover(&spec(10), &[TranslationVariant::Minimal]);
        let b = run_rediscover(&spec(10), &[TranslationVariant::Minimal]);
        assert_eq!(a.mismatches, b.mismatches);
        assert_eq!(a.total, b.total);
    }

    #[test]
    fn bench_rows_are_structural_deterministic() {
        let a = run_bench(&spec(5));
        let b = run_bench(&spec(5));
        assert_eq!(a.len(), 10);
        let sizes_a: Vec<usize> = a.iter().map(|r| r.size).collect();
        let sizes_b: Vec<usize> = b.iter().map(|r| r.size).collect();
        assert_eq!(sizes_a, sizes_b);
        assert!(a.iter().all(|r| r.outcome == BenchOutcome::Tree));
    }
}

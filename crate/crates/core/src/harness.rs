//! Randomized check of the implications between the nondegeneracy conditions.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::model::QuadricModel;
use crate::nondegeneracy::{
    check_condition_a, check_condition_b, check_cone_generating, check_finite_type_two, check_tumanov,
};
use crate::random::random_model_with;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct HarnessConfig {
    pub count: usize,
    pub n_max: usize,
    pub d_max: usize,
    pub bound: i64,
    pub seed: u64,
}

/// One implication: how often the hypothesis held and how often it was violated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicationCount {
    pub name: &'static str,
    pub hypothesis_held: usize,
    pub violations: usize,
    pub first_violation: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HarnessSummary {
    pub config: HarnessConfig,
    pub implications: Vec<ImplicationCount>,
    pub condition_a_true: usize,
}

impl HarnessSummary {
    pub fn total_violations(&self) -> usize {
        self.implications.iter().map(|i| i.violations).sum()
    }
}

pub const IMPLICATIONS: [&str; 7] = [
    "tumanov => (b)",
    "(a) and d > (n-1)^2 => (b)",
    "cone-generating <=> (a)",
    "finite-type-2 <=> (a)",
    "d = 1: (b) => (a)",
    "d > n^2 => not (a)",
    "n = d = 1: (a) <=> (b)",
];

/// `(hypothesis, conclusion)` per implication, in the order of [`IMPLICATIONS`].
fn evaluate(model: &QuadricModel) -> ([(bool, bool); 7], bool) {
    let (n, d) = (model.n(), model.d());
    let a = check_condition_a(model);
    let b = check_condition_b(model);
    let t = check_tumanov(model).holds;
    let cone = check_cone_generating(model);
    let ft2 = check_finite_type_two(model);
    (
        [
            (t, b),
            (a && d > (n - 1) * (n - 1), b),
            (true, cone == a),
            (true, ft2 == a),
            (d == 1 && b, a),
            (d > n * n, !a),
            (n == 1 && d == 1, a == b),
        ],
        a,
    )
}

/// Models are drawn sequentially from one seeded stream, so the sample does
/// not depend on how the checks are scheduled.
pub fn sample_models(config: &HarnessConfig) -> Vec<QuadricModel> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    (0..config.count)
        .map(|_| {
            let n = rng.gen_range(1..=config.n_max);
            let d = rng.gen_range(1..=config.d_max);
            random_model_with(&mut rng, n, d, config.bound)
        })
        .collect()
}

pub fn run_harness(config: &HarnessConfig) -> HarnessSummary {
    run_on_models(*config, &sample_models(config))
}

pub fn run_on_models(config: HarnessConfig, models: &[QuadricModel]) -> HarnessSummary {
    let mut results: Vec<(usize, ([(bool, bool); 7], bool))> =
        models.par_iter().enumerate().map(|(i, m)| (i, evaluate(m))).collect();
    results.sort_by_key(|(i, _)| *i);
    let mut implications: Vec<ImplicationCount> = IMPLICATIONS
        .iter()
        .map(|name| ImplicationCount {
            name,
            hypothesis_held: 0,
            violations: 0,
            first_violation: None,
        })
        .collect();
    let mut condition_a_true = 0;
    for (i, (checks, a)) in &results {
        condition_a_true += usize::from(*a);
        for (slot, (hyp, concl)) in implications.iter_mut().zip(checks) {
            if *hyp {
                slot.hypothesis_held += 1;
                if !concl {
                    slot.violations += 1;
                    slot.first_violation.get_or_insert(*i);
                }
            }
        }
    }
    HarnessSummary {
        config,
        implications,
        condition_a_true,
    }
}

impl fmt::Display for HarnessSummary {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c = &self.config;
        writeln!(
            f,
            "models: {} (n <= {}, d <= {}, bound {}, seed {})",
            c.count, c.n_max, c.d_max, c.bound, c.seed
        )?;
        writeln!(f, "condition (a) true: {}", self.condition_a_true)?;
        for imp in &self.implications {
            writeln!(
                f,
                "{:<30} hypothesis held {:>5}  violations {}",
                imp.name, imp.hypothesis_held, imp.violations
            )?;
        }
        write!(f, "total violations: {}", self.total_violations())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(count: usize, n_max: usize, d_max: usize, seed: u64) -> HarnessConfig {
        HarnessConfig {
            count,
            n_max,
            d_max,
            bound: 2,
            seed,
        }
    }

    #[test]
    fn small_run_has_no_violations() {
        let s = run_harness(&cfg(60, 3, 4, 1));
        assert_eq!(s.total_violations(), 0);
        assert_eq!(s.implications[2].hypothesis_held, 60);
    }

    #[test]
    fn deterministic() {
        assert_eq!(run_harness(&cfg(5, 2, 3, 9)), run_harness(&cfg(5, 2, 3, 9)));
    }

    #[test]
    fn wide_models_never_satisfy_a() {
        let s = run_harness(&HarnessConfig {
            count: 40,
            n_max: 2,
            d_max: 5,
            bound: 2,
            seed: 3,
        });
        let models = sample_models(&s.config);
        let wide = models.iter().filter(|m| m.d() > m.n() * m.n()).count();
        assert_eq!(s.implications[5].hypothesis_held, wide);
        assert_eq!(s.implications[5].violations, 0);
    }
}

mod common;

use causal_cvar::harness::sample_dataset;
use common::{random_binary_models, table_one};

#[test]
fn sampled_joint_converges_to_exact() {
    let m = table_one();
    let exact = m.exact_joint_table();
    for seed in 0..20 {
        let joint = sample_dataset(&m, 1_000_000, seed)
            .unwrap()
            .joint_table()
            .unwrap();
        for x in 0..2 {
            for l in 0..2 {
                let dev = (joint.prob(x, l) - exact.prob(x, l)).abs();
                assert!(dev < 0.005, "seed {seed} cell ({x}, {l}) off by {dev}");
            }
        }
    }
}

#[test]
fn exact_joint_is_consistent_with_the_model() {
    for m in random_binary_models(100, 4, 3) {
        let joint = m.exact_joint_table();
        for x in 0..m.num_arms() {
            let px: f64 = (0..m.num_contexts())
                .map(|c| m.context_marginal()[c] * m.policy_prob(c, x))
                .sum();
            assert!((joint.arm_marginal(x) - px).abs() < 1e-12);
        }
        let total: f64 = (0..m.num_arms()).map(|x| joint.arm_marginal(x)).sum();
        assert!((total - 1.0).abs() < 1e-12);
    }
}

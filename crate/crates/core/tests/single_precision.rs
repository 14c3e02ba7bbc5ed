use causal_cvar::bandit::{run_episode, BanditConfig, PolicyKind};
use causal_cvar::bounds::{do_probability_interval, SolverOptions};
use causal_cvar::cvar::{cvar_bounds_binary, cvar_discrete};
use causal_cvar::model::{ConfoundedModel, RewardSupport};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn model<T: causal_cvar::Scalar>() -> ConfoundedModel<T> {
    let l = T::lit;
    ConfoundedModel::new(
        RewardSupport::binary(),
        vec![l(0.88), l(0.12)],
        vec![vec![l(0.3), l(0.7)], vec![l(0.8), l(0.2)]],
        vec![
            vec![vec![l(0.55), l(0.45)], vec![l(0.7), l(0.3)]],
            vec![vec![l(0.45), l(0.55)], vec![l(0.9), l(0.1)]],
        ],
    )
    .unwrap()
}

#[test]
fn f32_pipeline_tracks_f64() {
    let m32 = model::<f32>();
    let m64 = model::<f64>();
    let (j32, j64) = (m32.exact_joint_table(), m64.exact_joint_table());
    for x in 0..2 {
        let b32 = do_probability_interval(
            &j32,
            m32.context_marginal(),
            x,
            1,
            &SolverOptions::default(),
        )
        .unwrap();
        let b64 = do_probability_interval(
            &j64,
            m64.context_marginal(),
            x,
            1,
            &SolverOptions::default(),
        )
        .unwrap();
        assert!((b32.interval.lower as f64 - b64.interval.lower).abs() < 1e-3);
        assert!((b32.interval.upper as f64 - b64.interval.upper).abs() < 1e-3);
        let c32 = cvar_bounds_binary(b32.interval, 0.75f32).unwrap();
        let c64 = cvar_bounds_binary(b64.interval, 0.75).unwrap();
        assert!((c32.upper as f64 - c64.upper).abs() < 2e-3);
        let t32 = cvar_discrete(&m32.interventional_distribution(x).unwrap(), 0.75f32).unwrap();
        let t64 = cvar_discrete(&m64.interventional_distribution(x).unwrap(), 0.75).unwrap();
        assert!((t32 as f64 - t64).abs() < 1e-5);
    }
}

#[test]
fn f32_episode_runs() {
    let m = model::<f32>();
    let cfg = BanditConfig::new(0.75f32, 1.0, 500, PolicyKind::Unclipped).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let t = run_episode(&m, &cfg, &[], &mut rng).unwrap();
    assert_eq!(t.pulls.iter().sum::<u64>(), 500);
    assert!(t.final_cvar_regret() >= 0.0);
}

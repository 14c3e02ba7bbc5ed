use causal_cvar::bounds::ProbabilityInterval;
use causal_cvar::cvar::{
    cvar_bounds_binary, cvar_bounds_general, cvar_discrete, cvar_interval_general,
    OutcomeIntervalSet,
};
use causal_cvar::model::{DiscreteDistribution, RewardSupport};
use causal_cvar::Sense;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_distribution(rng: &mut ChaCha8Rng, max_levels: usize) -> DiscreteDistribution<f64> {
    let n = rng.gen_range(1..=max_levels);
    let mut values: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..1.0)).collect();
    values.sort_by(f64::total_cmp);
    values.dedup();
    let w: Vec<f64> = values.iter().map(|_| rng.gen_range(0.0..1.0f64)).collect();
    let total: f64 = w.iter().sum();
    let mut p: Vec<f64> = w.iter().map(|v| v / total).collect();
    let head: f64 = p[..p.len() - 1].iter().sum();
    *p.last_mut().unwrap() = 1.0 - head;
    DiscreteDistribution::new(RewardSupport::new(values, 1.0).unwrap(), p).unwrap()
}

/// `sup_nu { nu - E[(nu - Y)^+] / alpha }` over a grid of `nu` on `[0, 1]`.
fn sup_form_on_grid(d: &DiscreteDistribution<f64>, alpha: f64, step: f64) -> f64 {
    let y = d.support().values();
    let p = d.probs();
    let steps = (1.0 / step).round() as usize;
    (0..=steps)
        .map(|k| {
            let nu = k as f64 * step;
            let shortfall: f64 = y.iter().zip(p).map(|(&y, &p)| p * (nu - y).max(0.0)).sum();
            nu - shortfall / alpha
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

#[test]
fn matches_the_supremum_form() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..1000 {
        let d = random_distribution(&mut rng, 6);
        let alpha = rng.gen_range(0.01..=1.0);
        let exact = cvar_discrete(&d, alpha).unwrap();
        let grid = sup_form_on_grid(&d, alpha, 1e-5);
        assert!(
            (exact - grid).abs() < 1e-4,
            "{exact} vs {grid} at alpha {alpha}"
        );
    }
}

#[test]
fn monotone_in_alpha_and_mean_at_one() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for _ in 0..1000 {
        let d = random_distribution(&mut rng, 6);
        let mut prev = f64::NEG_INFINITY;
        for k in 1..=100 {
            let v = cvar_discrete(&d, k as f64 / 100.0).unwrap();
            assert!(v >= prev - 1e-12);
            prev = v;
        }
        assert!((cvar_discrete(&d, 1.0).unwrap() - d.mean()).abs() <= 1e-12);
    }
}

/// Random intervals around `p`, clipped to `[0, 1]`.
fn intervals_around(rng: &mut ChaCha8Rng, p: &[f64]) -> Vec<ProbabilityInterval<f64>> {
    p.iter()
        .map(|&v| {
            let lo = (v - rng.gen_range(0.0..0.3)).max(0.0);
            let hi = (v + rng.gen_range(0.0..0.3)).min(1.0);
            ProbabilityInterval::new(lo, hi).unwrap()
        })
        .collect()
}

#[test]
fn interval_propagation_is_sound() {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..1000 {
        let d = random_distribution(&mut rng, 6);
        let alpha = rng.gen_range(0.05..=1.0);
        let set =
            OutcomeIntervalSet::new(d.support().clone(), intervals_around(&mut rng, d.probs()))
                .unwrap();
        let c = cvar_interval_general(&set, alpha).unwrap();
        let truth = cvar_discrete(&d, alpha).unwrap();
        assert!(c.lower <= truth + 1e-9 && truth <= c.upper + 1e-9);
    }
}

#[test]
fn binary_closed_form_equals_branch_enumeration() {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for _ in 0..1000 {
        let a: f64 = rng.gen_range(0.0..1.0);
        let b = rng.gen_range(a..=1.0);
        let alpha = rng.gen_range(0.01..=1.0);
        let p1 = ProbabilityInterval::new(a, b).unwrap();
        let p0 = ProbabilityInterval::new(1.0 - b, 1.0 - a).unwrap();
        let set = OutcomeIntervalSet::new(RewardSupport::binary(), vec![p0, p1]).unwrap();
        let closed = cvar_bounds_binary(p1, alpha).unwrap();
        let general = cvar_interval_general(&set, alpha).unwrap();
        assert!((closed.lower - general.lower).abs() <= 1e-9);
        assert!((closed.upper - general.upper).abs() <= 1e-9);
    }
}

#[test]
fn widening_one_interval_never_shrinks_the_result() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..200 {
        let d = random_distribution(&mut rng, 5);
        let alpha = rng.gen_range(0.05..=1.0);
        let base = intervals_around(&mut rng, d.probs());
        let set = OutcomeIntervalSet::new(d.support().clone(), base.clone()).unwrap();
        let narrow = cvar_interval_general(&set, alpha).unwrap();
        let i = rng.gen_range(0..base.len());
        let mut wide = base;
        wide[i] = ProbabilityInterval::new(
            (wide[i].lower - rng.gen_range(0.0..0.2)).max(0.0),
            (wide[i].upper + rng.gen_range(0.0..0.2)).min(1.0),
        )
        .unwrap();
        let set = OutcomeIntervalSet::new(d.support().clone(), wide).unwrap();
        let widened = cvar_interval_general(&set, alpha).unwrap();
        assert!(widened.lower <= narrow.lower + 1e-12);
        assert!(widened.upper >= narrow.upper - 1e-12);
    }
}

proptest! {
    #[test]
    fn bounds_lie_in_the_support(
        raw in proptest::collection::vec((0.0f64..1.0, 0.0f64..0.5), 2..6),
        alpha in 0.01f64..=1.0,
    ) {
        let n = raw.len();
        let support = RewardSupport::new((0..n).map(|i| i as f64).collect(), (n - 1) as f64).unwrap();
        let total: f64 = raw.iter().map(|r| r.0).sum::<f64>().max(1e-9);
        let intervals: Vec<_> = raw
            .iter()
            .map(|&(w, r)| {
                let p = w / total;
                ProbabilityInterval::new((p - r).max(0.0), (p + r).min(1.0)).unwrap()
            })
            .collect();
        let set = OutcomeIntervalSet::new(support.clone(), intervals).unwrap();
        let lo = cvar_bounds_general(&set, alpha, Sense::Min).unwrap();
        let hi = cvar_bounds_general(&set, alpha, Sense::Max).unwrap();
        prop_assert!(lo <= hi + 1e-12);
        prop_assert!(lo >= -1e-12 && hi <= (n - 1) as f64 + 1e-12);
    }
}

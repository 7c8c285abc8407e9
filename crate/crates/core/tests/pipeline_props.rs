use fourierfit_core::metrics::{r2, window_std, MetricWindow};
use fourierfit_core::pipeline::{init_condition, mirror_extend, random_split, restrict, split_counts, to_uniform_grid};
use fourierfit_core::{Dataset, GridSignal, Sample, SampleRole};
use proptest::prelude::*;

fn role_strategy() -> impl Strategy<Value = SampleRole> {
    prop_oneof![
        Just(SampleRole::Train),
        Just(SampleRole::Validation),
        Just(SampleRole::Test),
        Just(SampleRole::Augmented),
    ]
}

fn grid_strategy() -> impl Strategy<Value = GridSignal> {
    (0u32..=7).prop_flat_map(|k| {
        let n = 1usize << k;
        (prop::collection::vec(-5.0f64..5.0, n), prop::collection::vec(role_strategy(), n))
            .prop_map(|(vals, roles)| {
                let truths = roles
                    .iter()
                    .zip(&vals)
                    .map(|(r, v)| (*r != SampleRole::Augmented).then_some(v * 2.0))
                    .collect();
                GridSignal::new(-1.0, 0.25, vals, roles, truths).unwrap()
            })
    })
}

proptest! {
    #[test]
    fn mirror_is_palindromic_and_restrict_inverts(g in grid_strategy()) {
        let e = mirror_extend(&g);
        let n = e.len();
        prop_assert_eq!(n, 2 * g.len());
        for j in 0..n {
            prop_assert_eq!(e.values()[j], e.values()[n - 1 - j]);
            prop_assert_eq!(e.roles()[j], e.roles()[n - 1 - j]);
            prop_assert_eq!(e.truths()[j], e.truths()[n - 1 - j]);
        }
        prop_assert_eq!(restrict(&e).unwrap(), g);
    }

    #[test]
    fn init_condition_only_touches_values(g in grid_strategy()) {
        let i = init_condition(&g);
        prop_assert_eq!(i.roles(), g.roles());
        prop_assert_eq!(i.truths(), g.truths());
        for k in 0..g.len() {
            let expect = if g.roles()[k] == SampleRole::Train { g.truths()[k].unwrap() } else { 0.0 };
            prop_assert_eq!(i.values()[k], expect);
        }
    }

    #[test]
    fn split_counts_follow_rounding_rule(n in 1usize..=1_000_000, t in 0.0f64..=1.0, v in 0.0f64..=1.0) {
        let (train, val) = (t, v * (1.0 - t));
        let (a, b, c) = split_counts(n, (train, val, 1.0 - train - val));
        let expect_a = ((n as f64 * train + 0.5).floor() as usize).min(n);
        let expect_b = ((n as f64 * val + 0.5).floor() as usize).min(n - expect_a);
        prop_assert_eq!((a, b, c), (expect_a, expect_b, n - expect_a - expect_b));
    }

    #[test]
    fn split_roles_match_counts(n in 1usize..2000, seed in any::<u64>()) {
        let fr = (0.7, 0.15, 0.15);
        let roles = random_split(n, fr, seed).unwrap();
        let (a, b, c) = split_counts(n, fr);
        let count = |r| roles.iter().filter(|&&x| x == r).count();
        prop_assert_eq!((count(SampleRole::Train), count(SampleRole::Validation), count(SampleRole::Test)), (a, b, c));
    }

    #[test]
    fn dataset_construction_sorts_and_pairs(
        mut xs in prop::collection::hash_set(-1000i32..1000, 1..60).prop_map(|s| s.into_iter().collect::<Vec<_>>()),
        seed in any::<u64>()
    ) {
        // shuffle deterministically by seed
        xs.sort_by_key(|x| (*x as u64).wrapping_mul(seed | 1).rotate_left(17));
        let samples: Vec<Sample> = xs
            .iter()
            .map(|&x| Sample::with_role(x as f64, (x * 3) as f64, SampleRole::Train))
            .collect();
        let ds = Dataset::new(samples).unwrap();
        let s = ds.samples();
        for w in s.windows(2) {
            prop_assert!(w[0].x < w[1].x);
        }
        for smp in s {
            prop_assert_eq!(smp.y, Some(smp.x * 3.0));
        }
    }

    #[test]
    fn gridding_preserves_each_sample(
        nodes in prop::collection::btree_set(0usize..128, 2..64),
        seed in any::<u64>()
    ) {
        let nodes: Vec<usize> = nodes.into_iter().collect();
        let roles = random_split(nodes.len(), (1.0, 0.0, 0.0), seed).unwrap();
        let samples: Vec<Sample> = nodes
            .iter()
            .zip(&roles)
            .map(|(&k, &r)| Sample::with_role(0.5 * k as f64, k as f64, r))
            .collect();
        let ds = Dataset::new(samples).unwrap();
        let g = to_uniform_grid(&ds, 128).unwrap();
        let hits = g.truths().iter().filter(|t| t.is_some()).count();
        prop_assert_eq!(hits, nodes.len());
        for s in ds.samples() {
            let k = g.node_of(s.x).unwrap();
            prop_assert_eq!(g.truths()[k], s.y);
            prop_assert_eq!(Some(g.roles()[k]), s.role);
        }
    }

    #[test]
    fn r2_is_permutation_invariant_and_bounded(
        pairs in prop::collection::vec((-10.0f64..10.0, -10.0f64..10.0), 2..50),
        rot in 0usize..50
    ) {
        let (t, p): (Vec<f64>, Vec<f64>) = pairs.iter().cloned().unzip();
        prop_assume!(t.iter().any(|&v| v != t[0]));
        let a = r2(&t, &p).unwrap();
        prop_assert!(a <= 1.0);
        let k = rot % t.len();
        let (mut t2, mut p2) = (t.clone(), p.clone());
        t2.rotate_left(k);
        p2.rotate_left(k);
        prop_assert!((r2(&t2, &p2).unwrap() - a).abs() < 1e-9);
        prop_assert_eq!(r2(&t, &t).unwrap(), 1.0);
        if p != t {
            prop_assert!(a < 1.0);
        }
    }

    #[test]
    fn window_std_properties(vals in prop::collection::vec(-1.0f64..1.0, 2..10), c in -100.0f64..100.0) {
        let m = vals.len();
        let s = window_std(&MetricWindow::from_values(vals.clone(), m).unwrap()).unwrap();
        prop_assert!(s >= 0.0);
        let shifted: Vec<f64> = vals.iter().map(|v| v + c).collect();
        let s2 = window_std(&MetricWindow::from_values(shifted, m).unwrap()).unwrap();
        prop_assert!((s - s2).abs() < 1e-10);
        let all_equal = vals.iter().all(|&v| v == vals[0]);
        prop_assert_eq!(s == 0.0, all_equal);
    }
}

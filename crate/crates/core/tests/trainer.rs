use fourierfit_core::pipeline::{init_condition, mirror_extend};
use fourierfit_core::trainer::{
    calibrate_delta_bins, calibration_sweep, CALIBRATED_DELTA_BINS, CALIBRATION_CANDIDATES,
    CALIBRATION_SEEDS,
};
use fourierfit_core::{
    fit, h_bins_at, should_stop, step, synth, Dataset, FitConfig, GridSignal, Sample, SampleRole,
    SynthSpec, Termination, TrainerState,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_state(rng: &mut ChaCha8Rng, config: &FitConfig) -> TrainerState {
    let n = 1usize << rng.random_range(2..=6);
    let roles: Vec<SampleRole> = (0..n)
        .map(|i| match (i == 0, rng.random_range(0..4)) {
            (true, _) | (_, 0) => SampleRole::Train,
            (_, 1) => SampleRole::Validation,
            (_, 2) => SampleRole::Test,
            _ => SampleRole::Augmented,
        })
        .collect();
    let truths = roles
        .iter()
        .map(|r| (*r != SampleRole::Augmented).then(|| rng.random_range(-3.0..3.0)))
        .collect();
    let g = GridSignal::new(0.0, 0.5, vec![0.0; n], roles, truths).unwrap();
    TrainerState::new(init_condition(&mirror_extend(&g)), config)
}

#[test]
fn training_nodes_stay_pinned_and_mirror_survives() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for _ in 0..25 {
        let config = FitConfig { m: rng.random_range(2..5), delta_bins: rng.random_range(1..4), ..FitConfig::default() };
        let mut s = random_state(&mut rng, &config);
        for _ in 0..20 {
            s = step(s, &config).unwrap();
            let len = s.signal.len();
            for i in 0..len {
                if s.signal.roles()[i] == SampleRole::Train {
                    assert_eq!(s.signal.values()[i].to_bits(), s.signal.truths()[i].unwrap().to_bits());
                }
                assert!((s.signal.values()[i] - s.signal.values()[len - 1 - i]).abs() < 1e-9);
            }
        }
        assert_eq!(s.trace.len(), 20);
    }
}

#[test]
fn dc_step_matches_dirichlet_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let config = FitConfig::default();
    let s = random_state(&mut rng, &config);
    let mean = fourierfit_core::dirichlet_smooth(s.signal.values(), 0).unwrap()[0];
    let s = step(s, &config).unwrap();
    for (i, r) in s.signal.roles().iter().enumerate() {
        if *r != SampleRole::Train {
            assert!((s.signal.values()[i] - mean).abs() < 1e-12);
        }
    }
}

#[test]
fn trace_schedule_is_block_constant() {
    let data = synth::generate(&SynthSpec::paper_benchmark(5)).unwrap();
    let config = FitConfig { h0: 2, delta_bins: 3, m: 4, ..FitConfig::default() };
    let res = fit(&data, &config).unwrap();
    for r in &res.trace {
        assert_eq!(r.h_bins, 2 + 3 * (r.n / 4));
        assert_eq!(r.h_bins, h_bins_at(r.n, &config));
        assert_eq!(r.sigma_window.is_some(), r.n % 4 == 3);
    }
    assert!(res.trace.len() <= config.max_iter);
}

#[test]
fn full_band_freezes_held_out_predictions() {
    let data = synth::generate(&SynthSpec { n_points: 64, ..SynthSpec::paper_benchmark(1) }).unwrap();
    let config = FitConfig { h0: 64, ..FitConfig::default() };
    let res = fit(&data, &config).unwrap();
    assert_eq!(res.termination, Termination::Converged);
    for p in &res.predictions {
        match p.role {
            SampleRole::Train => assert_eq!(Some(p.y_pred), p.y_true),
            _ => assert_eq!(p.y_pred, 0.0),
        }
    }
}

#[test]
fn all_train_dataset_scores_one_throughout() {
    let samples = (0..40).map(|i| Sample::with_role(i as f64, (i as f64 * 0.3).sin(), SampleRole::Train)).collect();
    let res = fit(&Dataset::new(samples).unwrap(), &FitConfig::default()).unwrap();
    assert!(res.trace.iter().all(|r| r.r2_train == Some(1.0)));
    assert_eq!(res.trace[0].r2_val, None);
    assert_eq!(res.termination, Termination::Converged);
}

#[test]
fn fit_is_deterministic() {
    let data = synth::generate(&SynthSpec::paper_benchmark(21)).unwrap();
    let config = FitConfig { seed: 21, ..FitConfig::paper_benchmark() };
    assert_eq!(fit(&data, &config).unwrap(), fit(&data, &config).unwrap());
}

#[test]
fn single_harmonic_is_recovered() {
    // one period across the 64-node window
    let samples = (0..64)
        .map(|i| {
            let x = i as f64;
            Sample::new(x, (2.0 * std::f64::consts::PI * x / 64.0).cos())
        })
        .collect();
    let ds = Dataset::new(samples).unwrap();
    let res = fit(&ds, &FitConfig::default()).unwrap();
    assert_eq!(res.termination, Termination::Converged);
    assert!(res.final_record().unwrap().r2_test.unwrap() >= 0.999, "{:?}", res.final_record());
}

#[test]
fn nonuniform_data_gets_augmented_nodes() {
    // 40 samples on a 64-node grid spanning [0, 63]
    let samples = (0..64)
        .filter(|i| i % 8 < 5)
        .map(|i| Sample::new(i as f64, (i as f64 / 9.0).sin()))
        .collect();
    let ds = Dataset::new(samples).unwrap();
    let config = FitConfig { grid_size: Some(64), ..FitConfig::paper_benchmark() };
    let (_, state) = TrainerState::prepare(&ds, &config).unwrap();
    let augmented = state.signal.roles().iter().filter(|r| **r == SampleRole::Augmented).count();
    assert_eq!(augmented, 2 * 24);
    let res = fit(&ds, &config).unwrap();
    assert_eq!(res.predictions.len(), 40);
}

#[test]
fn stop_is_checked_only_at_block_ends() {
    let data = synth::generate(&SynthSpec::paper_benchmark(2)).unwrap();
    let config = FitConfig { seed: 2, ..FitConfig::paper_benchmark() };
    let (_, mut s) = TrainerState::prepare(&data, &config).unwrap();
    for _ in 0..3 {
        s = step(s, &config).unwrap();
        assert_eq!(should_stop(&s, &config), None);
    }
}

#[test]
fn shipped_preset_matches_the_sweep() {
    let rows = calibration_sweep(&CALIBRATION_CANDIDATES, &CALIBRATION_SEEDS).unwrap();
    for row in &rows {
        eprintln!(
            "delta_bins={:>2} median_r2_test={:.4} accepted={} runs={:?}",
            row.delta_bins,
            row.median_r2_test,
            row.accepted(),
            row.runs
        );
    }
    assert_eq!(
        calibrate_delta_bins(&CALIBRATION_CANDIDATES, &CALIBRATION_SEEDS).unwrap(),
        Some(CALIBRATED_DELTA_BINS)
    );
}

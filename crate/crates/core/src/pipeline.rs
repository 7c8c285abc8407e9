//! Dataset to working-signal preparation: role split, uniform grid, mirror
//! extension and the zero-filled initial condition.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::domain::{Dataset, GridSignal, SampleRole};
use crate::error::{Error, Result};

fn round_half_up(v: f64) -> usize {
    (v + 0.5).floor().max(0.0) as usize
}

/// Role counts `(train, val, test)` for `n` samples: train and val are
/// rounded half-up in that order, test takes the remainder.
pub fn split_counts(n: usize, fractions: (f64, f64, f64)) -> (usize, usize, usize) {
    let train = round_half_up(n as f64 * fractions.0).min(n);
    let val = round_half_up(n as f64 * fractions.1).min(n - train);
    (train, val, n - train - val)
}

/// Seeded random assignment of roles to `n_samples` positions.
///
/// A ChaCha8 stream seeded with `seed` shuffles `0..n`; the first
/// `train` shuffled indices become TRAIN, the next `val` VALIDATION, the rest
/// TEST (counts from [`split_counts`]).
pub fn random_split(
    n_samples: usize,
    fractions: (f64, f64, f64),
    seed: u64,
) -> Result<Vec<SampleRole>> {
    let (n_train, n_val, _) = split_counts(n_samples, fractions);
    if n_train == 0 {
        return Err(Error::NoTrainingSamples(n_samples));
    }
    let mut order: Vec<usize> = (0..n_samples).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(seed));

    let mut roles = vec![SampleRole::Test; n_samples];
    for (rank, &idx) in order.iter().enumerate() {
        roles[idx] = if rank < n_train {
            SampleRole::Train
        } else if rank < n_train + n_val {
            SampleRole::Validation
        } else {
            SampleRole::Test
        };
    }
    Ok(roles)
}

/// Places every sample on its nearest node of a `grid_size`-node uniform grid
/// spanning `[min x, max x]`. Empty nodes become AUGMENTED with value 0.
///
/// The dataset must already have roles. A grid with fewer nodes than samples
/// always reports a collision.
pub fn to_uniform_grid(dataset: &Dataset, grid_size: usize) -> Result<GridSignal> {
    if !grid_size.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(grid_size));
    }
    if !dataset.has_roles() {
        return Err(Error::Dataset("samples must have roles before gridding".into()));
    }
    let samples = dataset.samples();
    let (lo, hi) = (samples[0].x, samples[samples.len() - 1].x);
    if hi <= lo {
        return Err(Error::DegenerateRange(lo));
    }
    let dx = (hi - lo) / (grid_size - 1) as f64;

    let mut roles = vec![SampleRole::Augmented; grid_size];
    let mut truths = vec![None; grid_size];
    let mut owner: Vec<Option<f64>> = vec![None; grid_size];
    for s in samples {
        let node = (((s.x - lo) / dx).round() as usize).min(grid_size - 1);
        if let Some(first) = owner[node] {
            return Err(Error::GridCollision { first, second: s.x, node });
        }
        owner[node] = Some(s.x);
        roles[node] = s.role.unwrap_or(SampleRole::Augmented);
        truths[node] = s.y;
    }
    GridSignal::new(lo, dx, vec![0.0; grid_size], roles, truths)
}

/// Appends the reversed signal (endpoints duplicated): length `M` becomes
/// `2M` and `out[j] == out[2M - 1 - j]`.
pub fn mirror_extend(grid: &GridSignal) -> GridSignal {
    fn mirrored<T: Clone>(v: &[T]) -> Vec<T> {
        v.iter().chain(v.iter().rev()).cloned().collect()
    }
    GridSignal::from_parts_unchecked(
        grid.origin(),
        grid.dx(),
        mirrored(grid.values()),
        mirrored(grid.roles()),
        mirrored(grid.truths()),
    )
}

/// First half of an extended signal, i.e. the original region.
pub fn restrict(extended: &GridSignal) -> Result<GridSignal> {
    let len = extended.len();
    if !len.is_multiple_of(2) {
        return Err(Error::OddLength(len));
    }
    let half = len / 2;
    GridSignal::new(
        extended.origin(),
        extended.dx(),
        extended.values()[..half].to_vec(),
        extended.roles()[..half].to_vec(),
        extended.truths()[..half].to_vec(),
    )
}

/// Sets values to the truth at TRAIN nodes and to zero everywhere else.
pub fn init_condition(grid: &GridSignal) -> GridSignal {
    let values = grid
        .roles()
        .iter()
        .zip(grid.truths())
        .map(|(role, truth)| match (role, truth) {
            (SampleRole::Train, Some(y)) => *y,
            _ => 0.0,
        })
        .collect();
    GridSignal::from_parts_unchecked(
        grid.origin(),
        grid.dx(),
        values,
        grid.roles().to_vec(),
        grid.truths().to_vec(),
    )
}

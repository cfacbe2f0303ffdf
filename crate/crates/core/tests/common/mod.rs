#![allow(dead_code)]

use envdisc::{DiscreteBath, TimeGrid};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Bath of `n` modes with frequencies in `[-5, 5]` and couplings in `[0, 0.3]`.
pub fn random_bath(seed: u64, n: usize) -> DiscreteBath {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut pairs: Vec<(f64, f64)> = Vec::with_capacity(n);
    while pairs.len() < n {
        let w: f64 = rng.random_range(-5.0..5.0);
        if pairs.iter().all(|(x, _)| (x - w).abs() > 1e-6) {
            pairs.push((w, rng.random_range(0.0..0.3)));
        }
    }
    DiscreteBath::from_pairs(pairs).unwrap()
}

pub fn random_size(seed: u64, max: usize) -> usize {
    ChaCha8Rng::seed_from_u64(seed ^ 0x5eed).random_range(1..=max)
}

/// Grid on `[0, 5]` fine enough for the ODE oracle on [`random_bath`] output.
pub fn oracle_grid() -> TimeGrid {
    TimeGrid::new(5.0, 301).unwrap()
}

pub fn sup_diff(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

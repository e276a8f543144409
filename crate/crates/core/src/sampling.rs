//! Reproducible pseudo-random argument sets for verification sweeps.

use std::f64::consts::{FRAC_PI_2, PI};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::contour::{Sector, ShiftedArgs};

pub const DEFAULT_SEED: u64 = 20_240_917;

/// Smallest `|z0|` drawn for nonzero sectors, so that a sample labelled
/// Inner or Outer is not numerically the zero shift.
const MIN_SHIFT: f64 = 0.05;

fn in_disk(rng: &mut ChaCha8Rng, radius: f64) -> Complex64 {
    let r = radius * rng.gen::<f64>().sqrt();
    Complex64::from_polar(r, rng.gen_range(-PI..PI))
}

fn shift_modulus(rng: &mut ChaCha8Rng, z0_max: f64) -> f64 {
    MIN_SHIFT + (z0_max - MIN_SHIFT) * rng.gen::<f64>().sqrt()
}

fn shift_in(rng: &mut ChaCha8Rng, sector: Sector, z0_max: f64) -> Complex64 {
    match sector {
        Sector::Zero => Complex64::new(0.0, 0.0),
        Sector::Inner => {
            let m = shift_modulus(rng, z0_max);
            Complex64::from_polar(m, rng.gen_range(-FRAC_PI_2..FRAC_PI_2))
        }
        Sector::Outer => {
            let m = shift_modulus(rng, z0_max);
            // arg in (pi/2, pi] or [-pi, -pi/2)
            let a = PI - rng.gen_range(0.0..FRAC_PI_2);
            let a = if rng.gen::<bool>() { a } else { -a };
            Complex64::from_polar(m, a)
        }
        Sector::Boundary => {
            let m = shift_modulus(rng, z0_max);
            let s = if rng.gen::<bool>() { 1.0 } else { -1.0 };
            Complex64::new(0.0, s * m)
        }
    }
}

/// `n` samples with `|z| <= z_max`, `|z0| <= z0_max` and `z0` in `sector`.
pub fn sector_samples(
    sector: Sector,
    n: usize,
    seed: u64,
    z_max: f64,
    z0_max: f64,
) -> Vec<ShiftedArgs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let z = in_disk(&mut rng, z_max);
            let z0 = shift_in(&mut rng, sector, z0_max);
            ShiftedArgs::new(z, z0).expect("finite sample")
        })
        .collect()
}

/// Mixed grid cycling through the sectors by index: three Inner, three
/// Outer, one Boundary and one Zero sample in every eight.
pub fn shifted_grid(n: usize, seed: u64, z_max: f64, z0_max: f64) -> Vec<ShiftedArgs> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n)
        .map(|i| {
            let sector = match i % 8 {
                0..=2 => Sector::Inner,
                3..=5 => Sector::Outer,
                6 => Sector::Boundary,
                _ => Sector::Zero,
            };
            let z = in_disk(&mut rng, z_max);
            let z0 = shift_in(&mut rng, sector, z0_max);
            ShiftedArgs::new(z, z0).expect("finite sample")
        })
        .collect()
}

/// `n` points uniformly in the disk `|z| <= radius`.
pub fn disk_points(n: usize, seed: u64, radius: f64) -> Vec<Complex64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| in_disk(&mut rng, radius)).collect()
}

/// `n` reals uniform in `[lo, hi)`.
pub fn uniform_reals(n: usize, seed: u64, lo: f64, hi: f64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..n).map(|_| rng.gen_range(lo..hi)).collect()
}

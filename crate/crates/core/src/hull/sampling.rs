//! Sampling oracle: the least count over many planes through a point.
//!
//! Normals come from a Fibonacci lattice on the sphere, rotated by a seeded
//! random rotation and snapped to integer vectors. The result can only
//! overestimate the true minimum.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::HullError;
use crate::counting::{count_components, CrossingCount};
use crate::geometry::{Direction, Plane, Point3};
use crate::link::PolygonalLink;
use crate::scalar::{max_bits, primitive_integer_vector, Rational};

/// Sampled normals are rounded to integers of this many bits.
const NORMAL_BITS: i32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampledMin {
    pub count: CrossingCount,
    pub plane: Plane<Rational>,
    pub trials: usize,
}

/// Uniform random rotation from a unit quaternion (Shoemake's method).
fn random_rotation(seed: u64) -> [[f64; 3]; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (u1, u2, u3): (f64, f64, f64) = (rng.gen(), rng.gen(), rng.gen());
    let (a, b) = ((1.0 - u1).sqrt(), u1.sqrt());
    let (w, x, y, z) = (
        a * (2.0 * PI * u2).sin(),
        a * (2.0 * PI * u2).cos(),
        b * (2.0 * PI * u3).sin(),
        b * (2.0 * PI * u3).cos(),
    );
    [
        [1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y)],
        [2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x)],
        [2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y)],
    ]
}

/// The `n` seeded sample normals, as integer vectors (never zero).
pub fn sample_normals(n: usize, seed: u64) -> Vec<[i64; 3]> {
    let rot = random_rotation(seed);
    let golden = PI * (3.0 - 5f64.sqrt());
    let scale = 2f64.powi(NORMAL_BITS);
    (0..n)
        .map(|k| {
            let z = 1.0 - (2 * k + 1) as f64 / n as f64;
            let r = (1.0 - z * z).max(0.0).sqrt();
            let phi = golden * k as f64;
            let p = [r * phi.cos(), r * phi.sin(), z];
            let q: [i64; 3] = std::array::from_fn(|i| {
                let v = rot[i][0] * p[0] + rot[i][1] * p[1] + rot[i][2] * p[2];
                (v * scale).round() as i64
            });
            if q == [0, 0, 0] {
                [0, 0, 1]
            } else {
                q
            }
        })
        .collect()
}

pub fn sampled_min_count(
    link: &PolygonalLink<Rational>,
    x: &Point3<Rational>,
    trials: usize,
    seed: u64,
) -> Result<SampledMin, HullError> {
    if trials == 0 {
        return Err(HullError::InvalidTrials);
    }
    if link.contains_point(x) {
        return Err(HullError::PointOnCurve);
    }
    let d: Vec<[BigInt; 3]> = link
        .vertices()
        .map(|v| primitive_integer_vector(&(v - x).to_array()))
        .collect();
    let mut ranges = Vec::new();
    let mut start = 0;
    for c in link.components() {
        ranges.push(start..start + c.len());
        start += c.len();
    }
    let normals = sample_normals(trials, seed);
    let small = d.iter().all(|v| max_bits(v) <= 100);
    let d_small: Vec<[i128; 3]> = if small {
        d.iter().map(|v| v.clone().map(|c| c.to_i128().unwrap())).collect()
    } else {
        Vec::new()
    };
    let (count, index) = normals
        .par_iter()
        .enumerate()
        .map(|(k, u)| {
            let signs: Vec<i8> = if small {
                let u = u.map(i128::from);
                d_small
                    .iter()
                    .map(|v| (u[0] * v[0] + u[1] * v[1] + u[2] * v[2]).signum() as i8)
                    .collect()
            } else {
                let u = u.map(BigInt::from);
                d.iter()
                    .map(|v| {
                        let s: BigInt = &u[0] * &v[0] + &u[1] * &v[1] + &u[2] * &v[2];
                        crate::scalar::sign_of_int(&s)
                    })
                    .collect()
            };
            (count_components(&signs, &ranges), k)
        })
        .min()
        .expect("at least one trial");
    let u = normals[index];
    let dir = Direction::from_ints(u[0], u[1], u[2]).expect("nonzero sample");
    Ok(SampledMin {
        count,
        plane: Plane::through(x, dir),
        trials,
    })
}

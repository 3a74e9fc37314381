//! Monte-Carlo volume and coverage estimates that use only point-membership
//! tests, never the polyhedron kernel.
//!
//! Random numbers come from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with
//! `seed_from_u64(seed)`. Samples are drawn in blocks of [`BLOCK_SIZE`]; block
//! `b` uses stream `b` of that generator, so results do not depend on how the
//! blocks are scheduled across threads.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::geom3::Vector3;
use crate::lattice::TessellationTetrahedron;

pub const BLOCK_SIZE: u64 = 1 << 16;
pub const MIN_SAMPLES: u64 = 10_000;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

impl McEstimate {
    /// `(mean - reference) / std_error`; zero when both agree exactly.
    pub fn z_score(&self, reference: f64) -> f64 {
        let diff = self.mean - reference;
        if diff == 0.0 {
            0.0
        } else {
            diff / self.std_error
        }
    }

    pub fn agrees_with(&self, reference: f64, sigmas: f64) -> bool {
        (self.mean - reference).abs() <= sigmas * self.std_error
    }
}

/// Axis-aligned sampling box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    min: Vector3,
    max: Vector3,
}

impl Aabb {
    pub fn new(min: Vector3, max: Vector3) -> Result<Self> {
        let d = max - min;
        if d.x > 0.0 && d.y > 0.0 && d.z > 0.0 {
            Ok(Self { min, max })
        } else {
            Err(Error::DegenerateInput("sampling box has no volume"))
        }
    }

    /// The cube `[-h, h]³`.
    pub fn centered_cube(h: f64) -> Result<Self> {
        Self::new(Vector3::new(-h, -h, -h), Vector3::new(h, h, h))
    }

    /// Smallest box holding `points`.
    pub fn around(points: &[Vector3]) -> Result<Self> {
        let first = *points.first().ok_or(Error::DegenerateInput("no points"))?;
        let (lo, hi) = points.iter().fold((first, first), |(lo, hi), p| {
            (
                Vector3::new(lo.x.min(p.x), lo.y.min(p.y), lo.z.min(p.z)),
                Vector3::new(hi.x.max(p.x), hi.y.max(p.y), hi.z.max(p.z)),
            )
        });
        Self::new(lo, hi)
    }

    pub fn volume(&self) -> f64 {
        let d = self.max - self.min;
        d.x * d.y * d.z
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> Vector3 {
        let d = self.max - self.min;
        Vector3::new(
            self.min.x + d.x * rng.random::<f64>(),
            self.min.y + d.y * rng.random::<f64>(),
            self.min.z + d.z * rng.random::<f64>(),
        )
    }
}

fn block_rng(seed: u64, block: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(block);
    rng
}

fn block_hits<F>(samples: u64, seed: u64, block: u64, trial: &F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool,
{
    let n = BLOCK_SIZE.min(samples - block * BLOCK_SIZE);
    let mut rng = block_rng(seed, block);
    (0..n).filter(|_| trial(&mut rng)).count() as u64
}

fn count_hits<F>(samples: u64, seed: u64, parallel: bool, trial: F) -> u64
where
    F: Fn(&mut ChaCha8Rng) -> bool + Sync,
{
    let blocks = samples.div_ceil(BLOCK_SIZE);
    if parallel {
        (0..blocks)
            .into_par_iter()
            .map(|b| block_hits(samples, seed, b, &trial))
            .sum()
    } else {
        (0..blocks)
            .map(|b| block_hits(samples, seed, b, &trial))
            .sum()
    }
}

fn check_samples(samples: u64) -> Result<()> {
    if samples < MIN_SAMPLES {
        Err(Error::TooFewSamples(samples))
    } else {
        Ok(())
    }
}

/// Volume of `{ p in bounds : inside(p) }` by uniform rejection sampling.
pub fn mc_volume_membership<F>(
    inside: F,
    bounds: &Aabb,
    samples: u64,
    seed: u64,
) -> Result<McEstimate>
where
    F: Fn(Vector3) -> bool + Sync,
{
    volume_estimate(inside, bounds, samples, seed, true)
}

fn volume_estimate<F>(
    inside: F,
    bounds: &Aabb,
    samples: u64,
    seed: u64,
    parallel: bool,
) -> Result<McEstimate>
where
    F: Fn(Vector3) -> bool + Sync,
{
    check_samples(samples)?;
    let hits = count_hits(samples, seed, parallel, |rng| inside(bounds.sample(rng)));
    let p = hits as f64 / samples as f64;
    let v = bounds.volume();
    Ok(McEstimate {
        mean: v * p,
        std_error: v * (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Fraction of `t` lying within distance 1 of one of its vertices.
///
/// Points are uniform in `t`: three sorted uniforms `u1 <= u2 <= u3` give
/// barycentric weights `(u1, u2 - u1, u3 - u2, 1 - u3)`.
pub fn mc_sphere_coverage(
    t: &TessellationTetrahedron,
    samples: u64,
    seed: u64,
) -> Result<McEstimate> {
    check_samples(samples)?;
    let v = t.vertices();
    let hits = count_hits(samples, seed, true, |rng| {
        let mut u = [
            rng.random::<f64>(),
            rng.random::<f64>(),
            rng.random::<f64>(),
        ];
        u.sort_by(f64::total_cmp);
        let p = v[0] * u[0] + v[1] * (u[1] - u[0]) + v[2] * (u[2] - u[1]) + v[3] * (1.0 - u[2]);
        v.iter().any(|c| p.distance(*c) <= 1.0)
    });
    let p = hits as f64 / samples as f64;
    Ok(McEstimate {
        mean: p,
        std_error: (p * (1.0 - p) / samples as f64).sqrt(),
        samples,
        seed,
    })
}

/// Membership in the Voronoi region of `center`: no neighbour is closer.
pub fn voronoi_membership(
    center: Vector3,
    neighbours: &[Vector3],
) -> impl Fn(Vector3) -> bool + Sync + '_ {
    move |p| {
        let d = p.distance(center);
        neighbours.iter().all(|x| d <= p.distance(*x))
    }
}

//! Seeded Monte Carlo estimators over the unit square.
//!
//! # Random streams
//!
//! Work is split into fixed chunks of [`CHUNK`] samples. Chunk `i` draws
//! from its own PCG-XSL-RR 128/64 generator (`rand_pcg::Pcg64`) created with
//!
//! ```text
//! state     = seed XOR mix64(i)        (zero-extended to 128 bits)
//! increment = i                        (the PCG stream selector)
//! ```
//!
//! where `mix64` is the SplitMix64 finalizer
//! (`z += 0x9E3779B97F4A7C15; z = (z ^ z>>30) * 0xBF58476D1CE4E5B9;
//! z = (z ^ z>>27) * 0x94D049BB133111EB; z ^ z>>31`). Uniform doubles are
//! `(next_u64 >> 11) * 2^-53`. Chunk results are combined in chunk order,
//! so estimates are identical for every worker count.

use rand::Rng;
use rand_pcg::Pcg64;
use rayon::prelude::*;
use serde::Serialize;

use crate::moduli::{all_permutations, PlanePoint, ShapeTriple};
use crate::{parallel, Error, Result};

/// Samples per independent random stream.
pub const CHUNK: u64 = 1 << 16;

/// Margin for the floating-point obtuse test; ties count as not obtuse.
pub const OBTUSE_MARGIN: f64 = 1e-15;

pub const MIN_MC_SAMPLES: u64 = 1000;
pub const MAX_HIST_BINS: usize = 4096;

pub fn mix64(x: u64) -> u64 {
    let mut z = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Generator for stream `task` under `seed`.
pub fn task_rng(seed: u64, task: u64) -> Pcg64 {
    Pcg64::new(u128::from(seed ^ mix64(task)), u128::from(task))
}

fn uniform(rng: &mut Pcg64) -> f64 {
    (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64)
}

fn point(rng: &mut Pcg64) -> (f64, f64) {
    let x = uniform(rng);
    let y = uniform(rng);
    (x, y)
}

/// Three uniform points in the unit square, redrawn while collinear.
fn random_triangle(rng: &mut Pcg64) -> [(f64, f64); 3] {
    loop {
        let t = [point(rng), point(rng), point(rng)];
        let cross = (t[1].0 - t[0].0) * (t[2].1 - t[0].1) - (t[1].1 - t[0].1) * (t[2].0 - t[0].0);
        if cross != 0.0 {
            return t;
        }
    }
}

fn d2(u: (f64, f64), v: (f64, f64)) -> f64 {
    (u.0 - v.0).powi(2) + (u.1 - v.1).powi(2)
}

fn is_obtuse(t: &[(f64, f64); 3]) -> bool {
    let mut s = [d2(t[0], t[1]), d2(t[1], t[2]), d2(t[2], t[0])];
    s.sort_by(f64::total_cmp);
    s[2] > s[0] + s[1] + OBTUSE_MARGIN
}

/// Mean of a sample with its standard error.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: u64,
    pub seed: u64,
}

/// Running count, mean and centered second moment of one chunk.
#[derive(Clone, Copy, Debug, Default)]
struct Moments {
    count: u64,
    mean: f64,
    m2: f64,
}

impl Moments {
    fn push(&mut self, v: f64) {
        self.count += 1;
        let delta = v - self.mean;
        self.mean += delta / self.count as f64;
        self.m2 += delta * (v - self.mean);
    }

    fn combine(a: Moments, b: Moments) -> Moments {
        if a.count == 0 {
            return b;
        }
        if b.count == 0 {
            return a;
        }
        let count = a.count + b.count;
        let delta = b.mean - a.mean;
        let mean = a.mean + delta * b.count as f64 / count as f64;
        let m2 = a.m2 + b.m2 + delta * delta * (a.count as f64 * b.count as f64) / count as f64;
        Moments { count, mean, m2 }
    }
}

/// Pairwise combination in index order.
fn combine_all(parts: &[Moments]) -> Moments {
    match parts.len() {
        0 => Moments::default(),
        1 => parts[0],
        n => {
            let (l, r) = parts.split_at(n / 2);
            Moments::combine(combine_all(l), combine_all(r))
        }
    }
}

fn chunk_sizes(samples: u64) -> Vec<(u64, u64)> {
    let chunks = samples.div_ceil(CHUNK);
    (0..chunks)
        .map(|i| (i, CHUNK.min(samples - i * CHUNK)))
        .collect()
}

fn estimate<F>(samples: u64, seed: u64, draw: F) -> Result<McEstimate>
where
    F: Fn(&mut Pcg64) -> f64 + Sync,
{
    if samples < MIN_MC_SAMPLES {
        return Err(Error::Guard(format!(
            "samples = {samples} is below {MIN_MC_SAMPLES}"
        )));
    }
    let parts: Vec<Moments> = parallel::run(|| {
        chunk_sizes(samples)
            .into_par_iter()
            .map(|(task, len)| {
                let mut rng = task_rng(seed, task);
                let mut m = Moments::default();
                for _ in 0..len {
                    m.push(draw(&mut rng));
                }
                m
            })
            .collect()
    })?;
    let total = combine_all(&parts);
    let variance = total.m2 / (total.count - 1) as f64;
    Ok(McEstimate {
        mean: total.mean,
        std_error: (variance / total.count as f64).sqrt(),
        samples,
        seed,
    })
}

/// Fraction of random unit-square triangles that are obtuse.
pub fn obtuse_probability(samples: u64, seed: u64) -> Result<McEstimate> {
    estimate(samples, seed, |rng| {
        if is_obtuse(&random_triangle(rng)) {
            1.0
        } else {
            0.0
        }
    })
}

pub fn pair_distance(u: (f64, f64), v: (f64, f64)) -> f64 {
    d2(u, v).sqrt()
}

/// Mean distance between two uniform points of the unit square.
pub fn mean_pair_distance(samples: u64, seed: u64) -> Result<McEstimate> {
    estimate(samples, seed, |rng| {
        let u = point(rng);
        let v = point(rng);
        pair_distance(u, v)
    })
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum HistogramMode {
    /// All six label permutations per sample.
    #[default]
    Labeled,
    /// Only the sorted representative.
    Sorted,
}

/// Counts of `ab`-plane projections on a `bins x bins` grid over `[0,1]^2`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Histogram2D {
    pub bins: usize,
    pub mode: HistogramMode,
    /// Row-major by `a` index, then `b` index.
    pub counts: Vec<u64>,
    pub total: u64,
    /// Points coming from obtuse triangles.
    pub obtuse: u64,
    pub samples: u64,
    pub seed: u64,
}

impl Histogram2D {
    fn empty(bins: usize, mode: HistogramMode, samples: u64, seed: u64) -> Self {
        Self {
            bins,
            mode,
            counts: vec![0; bins * bins],
            total: 0,
            obtuse: 0,
            samples,
            seed,
        }
    }

    pub fn bin_of(&self, p: PlanePoint) -> (usize, usize) {
        let idx = |v: f64| ((v * self.bins as f64) as usize).min(self.bins - 1);
        (idx(p.a), idx(p.b))
    }

    pub fn count(&self, i: usize, j: usize) -> u64 {
        self.counts[i * self.bins + j]
    }

    fn record(&mut self, p: PlanePoint, obtuse: bool) {
        let (i, j) = self.bin_of(p);
        self.counts[i * self.bins + j] += 1;
        self.total += 1;
        if obtuse {
            self.obtuse += 1;
        }
    }

    fn merge(mut self, other: &Histogram2D) -> Self {
        for (a, b) in self.counts.iter_mut().zip(&other.counts) {
            *a += b;
        }
        self.total += other.total;
        self.obtuse += other.obtuse;
        self
    }

    /// Share of points whose triangle was classified obtuse.
    pub fn obtuse_fraction(&self) -> f64 {
        self.obtuse as f64 / self.total as f64
    }

    /// Share of the total mass in bins whose centre satisfies `pred`.
    pub fn mass_where<F: Fn(f64, f64) -> bool>(&self, pred: F) -> f64 {
        let h = 1.0 / self.bins as f64;
        let mut inside = 0u64;
        for i in 0..self.bins {
            for j in 0..self.bins {
                if pred((i as f64 + 0.5) * h, (j as f64 + 0.5) * h) {
                    inside += self.count(i, j);
                }
            }
        }
        inside as f64 / self.total as f64
    }
}

/// Empirical distribution of normalized shapes of random unit-square
/// triangles, projected to the `ab`-plane. Uses the same draws as
/// [`obtuse_probability`] for equal `(samples, seed)`.
pub fn shape_histogram(
    samples: u64,
    bins: usize,
    seed: u64,
    mode: HistogramMode,
) -> Result<Histogram2D> {
    if samples == 0 {
        return Err(Error::Guard("samples must be positive".into()));
    }
    if !(2..=MAX_HIST_BINS).contains(&bins) {
        return Err(Error::Guard(format!(
            "bins = {bins} must lie in 2..={MAX_HIST_BINS}"
        )));
    }
    let parts: Vec<Histogram2D> = parallel::run(|| {
        chunk_sizes(samples)
            .into_par_iter()
            .map(|(task, len)| {
                let mut rng = task_rng(seed, task);
                let mut h = Histogram2D::empty(bins, mode, samples, seed);
                for _ in 0..len {
                    let t = random_triangle(&mut rng);
                    let obtuse = is_obtuse(&t);
                    let Ok(shape) = crate::diophantine::shape_of_points(t) else {
                        continue;
                    };
                    record_shape(&mut h, &shape, obtuse);
                }
                h
            })
            .collect()
    })?;
    Ok(parts
        .iter()
        .fold(Histogram2D::empty(bins, mode, samples, seed), |acc, h| {
            acc.merge(h)
        }))
}

fn record_shape(h: &mut Histogram2D, shape: &ShapeTriple, obtuse: bool) {
    match h.mode {
        HistogramMode::Labeled => {
            for [a, b, _] in all_permutations(shape) {
                h.record(PlanePoint { a, b }, obtuse);
            }
        }
        HistogramMode::Sorted => h.record(
            PlanePoint {
                a: shape.a(),
                b: shape.b(),
            },
            obtuse,
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::LANGFORD_OBTUSE_PROBABILITY;

    #[test]
    fn langford_constant() {
        assert!((LANGFORD_OBTUSE_PROBABILITY - 0.725_206_48).abs() < 1e-8);
    }

    #[test]
    fn mix64_reference_values() {
        // First outputs of SplitMix64 seeded with 0 (state advances by the
        // golden gamma before mixing).
        assert_eq!(mix64(0), 0xE220_A839_7B1D_CDAF);
        assert_eq!(mix64(0x9E37_79B9_7F4A_7C15), 0x6E78_9E6A_A1B9_65F4);
    }

    #[test]
    fn small_sample_obtuse() {
        let e = obtuse_probability(1000, 3).unwrap();
        assert!((e.std_error - 0.014).abs() < 0.002, "{e:?}");
        assert!((e.mean - LANGFORD_OBTUSE_PROBABILITY).abs() < 5.0 * e.std_error);
        assert!(matches!(obtuse_probability(999, 3), Err(Error::Guard(_))));
    }

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = obtuse_probability(200_000, 42).unwrap();
        let b = obtuse_probability(200_000, 42).unwrap();
        assert_eq!(a.mean.to_bits(), b.mean.to_bits());
        assert_eq!(a.std_error.to_bits(), b.std_error.to_bits());
    }

    #[test]
    fn independent_of_worker_count() {
        let one = parallel::run_with(1, || mean_pair_distance(300_000, 9).unwrap()).unwrap();
        let four = parallel::run_with(4, || mean_pair_distance(300_000, 9).unwrap()).unwrap();
        assert_eq!(one, four);
        let h1 = parallel::run_with(1, || {
            shape_histogram(50_000, 16, 1, HistogramMode::Labeled).unwrap()
        })
        .unwrap();
        let h3 = parallel::run_with(3, || {
            shape_histogram(50_000, 16, 1, HistogramMode::Labeled).unwrap()
        })
        .unwrap();
        assert_eq!(h1, h3);
    }

    #[test]
    fn distance_kernel() {
        assert_eq!(pair_distance((0.0, 0.0), (1.0, 1.0)), 2f64.sqrt());
    }

    #[test]
    fn seeds_differ_but_agree() {
        let a = mean_pair_distance(10_000, 1).unwrap();
        let b = mean_pair_distance(10_000, 2).unwrap();
        assert_ne!(a.mean, b.mean);
        let se = (a.std_error.powi(2) + b.std_error.powi(2)).sqrt();
        assert!((a.mean - b.mean).abs() < 6.0 * se);
    }

    #[test]
    fn std_error_scaling() {
        for f in [obtuse_probability, mean_pair_distance] {
            let small = f(100_000, 5).unwrap();
            let large = f(400_000, 5).unwrap();
            let ratio = small.std_error / large.std_error;
            assert!((ratio - 2.0).abs() < 0.4, "ratio {ratio}");
        }
    }

    #[test]
    fn histogram_basics() {
        let h = shape_histogram(1, 8, 0, HistogramMode::Labeled).unwrap();
        assert_eq!(h.total, 6);
        let h = shape_histogram(1, 8, 0, HistogramMode::Sorted).unwrap();
        assert_eq!(h.total, 1);
        assert!(shape_histogram(0, 8, 0, HistogramMode::Labeled).is_err());
        assert!(shape_histogram(10, 1, 0, HistogramMode::Labeled).is_err());
        assert!(shape_histogram(10, 4097, 0, HistogramMode::Labeled).is_err());
    }

    #[test]
    fn histogram_points_are_admissible() {
        let h = shape_histogram(20_000, 64, 11, HistogramMode::Labeled).unwrap();
        assert_eq!(h.total, 120_000);
        assert_eq!(h.counts.iter().sum::<u64>(), h.total);
        // Bins entirely below the line a + b = 1 stay empty.
        for i in 0..64 {
            for j in 0..64 {
                if i + j + 2 <= 64 {
                    assert_eq!(h.count(i, j), 0, "bin ({i}, {j})");
                }
            }
        }
    }

    #[test]
    fn histogram_classifier_matches_estimator() {
        let samples = 200_000;
        let est = obtuse_probability(samples, 17).unwrap();
        let h = shape_histogram(samples, 256, 17, HistogramMode::Labeled).unwrap();
        assert!((h.obtuse_fraction() - est.mean).abs() <= 2.0 * est.std_error);
        // Region mass read off bin centres, with the right-angle curve
        // written for each of the three labelings. Bins on the diagonal
        // a + b = 1 have their centre on the line and must count.
        let obtuse_at = |a: f64, b: f64| {
            let c = 2.0 - a - b;
            c * c > a * a + b * b || a * a > b * b + c * c || b * b > a * a + c * c
        };
        let mass = h.mass_where(obtuse_at);
        assert!((mass - est.mean).abs() < 0.01, "mass {mass}");
    }

    #[test]
    fn equilateral_bin_is_populated_but_not_peak() {
        let h = shape_histogram(200_000, 30, 4, HistogramMode::Labeled).unwrap();
        let (i, j) = h.bin_of(PlanePoint { a: 2.0 / 3.0, b: 2.0 / 3.0 });
        let centre = h.count(i, j);
        let peak = *h.counts.iter().max().unwrap();
        assert!(centre > 0 && centre < peak);
    }
}

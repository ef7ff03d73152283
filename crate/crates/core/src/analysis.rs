//! Obtuse-fraction curves over growing squares and their comparison with
//! the uniform measure on shape space.

use serde::{Deserialize, Serialize};

use crate::enumeration::enumerate_weighted;
use crate::moduli::{all_permutations, uniform_target, ModuliRegion, PlanePoint, WeightedShapeSet};
use crate::{Error, Result, LANGFORD_OBTUSE_PROBABILITY};

/// Largest `n` accepted by the curve and report drivers.
pub const MAX_ANALYSIS_N: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ObtuseCurvePoint {
    pub n: u32,
    /// Obtuse triangles over all triangles, counted with multiplicity.
    pub weighted_fraction: f64,
    /// Obtuse similarity classes over all classes.
    pub distinct_fraction: f64,
    pub total_weight: u64,
    pub obtuse_weight: u64,
    pub distinct_count: u64,
    pub obtuse_distinct_count: u64,
}

impl ObtuseCurvePoint {
    pub fn from_set(n: u32, set: &WeightedShapeSet) -> Result<Self> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        let obtuse_weight = set.region_weight(ModuliRegion::ObtuseAll);
        let obtuse_distinct_count = set.region_count(ModuliRegion::ObtuseAll) as u64;
        let distinct_count = set.len() as u64;
        Ok(Self {
            n,
            weighted_fraction: obtuse_weight as f64 / set.total_weight() as f64,
            distinct_fraction: obtuse_distinct_count as f64 / distinct_count as f64,
            total_weight: set.total_weight(),
            obtuse_weight,
            distinct_count,
            obtuse_distinct_count,
        })
    }
}

fn check_n(n: u32, what: &str) -> Result<()> {
    if !(2..=MAX_ANALYSIS_N).contains(&n) {
        return Err(Error::Guard(format!(
            "{what} = {n} must lie in 2..={MAX_ANALYSIS_N}"
        )));
    }
    Ok(())
}

/// Curve points for `n = 2..=n_max`, one full census per point.
pub fn obtuse_curve(n_max: u32) -> Result<Vec<ObtuseCurvePoint>> {
    check_n(n_max, "n_max")?;
    (2..=n_max)
        .map(|n| ObtuseCurvePoint::from_set(n, &enumerate_weighted(n)?))
        .collect()
}

/// Empirical obtuse share of `[-n, n]^2` against the uniform-measure
/// prediction and the unit-square probability.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct EquidistReport {
    pub n: u32,
    pub empirical_ratio: f64,
    pub uniform_target: f64,
    pub langford: f64,
    pub gap_to_uniform: f64,
    pub gap_to_langford: f64,
}

impl EquidistReport {
    pub fn from_set(n: u32, set: &WeightedShapeSet) -> Result<Self> {
        let empirical_ratio = set.dirac_ratio(ModuliRegion::ObtuseAll)?;
        let uniform = uniform_target(ModuliRegion::ObtuseAll);
        Ok(Self {
            n,
            empirical_ratio,
            uniform_target: uniform,
            langford: LANGFORD_OBTUSE_PROBABILITY,
            gap_to_uniform: (empirical_ratio - uniform).abs(),
            gap_to_langford: (empirical_ratio - LANGFORD_OBTUSE_PROBABILITY).abs(),
        })
    }
}

pub fn equidist_report(n: u32) -> Result<EquidistReport> {
    check_n(n, "n")?;
    EquidistReport::from_set(n, &enumerate_weighted(n)?)
}

/// Area of grid cell `(i, j)` of a `bins x bins` grid on `[0,1]^2` lying in
/// `a + b > 1`, in units of one cell. The boundary line runs exactly along
/// the cell diagonals, so partial cells are exact halves.
fn region_cell_fraction(i: usize, j: usize, bins: usize) -> f64 {
    match (i + j + 1).cmp(&bins) {
        std::cmp::Ordering::Less => 0.0,
        std::cmp::Ordering::Equal => 0.5,
        std::cmp::Ordering::Greater => 1.0,
    }
}

/// Total variation distance between weighted `ab`-plane points, binned on a
/// `bins x bins` grid, and the uniform area measure on the labeled region.
pub fn total_variation_to_uniform(points: &[(PlanePoint, f64)], bins: usize) -> Result<f64> {
    if bins < 2 {
        return Err(Error::InvalidInput(format!("bins = {bins} must be at least 2")));
    }
    let total: f64 = points.iter().map(|(_, w)| *w).sum();
    if points.is_empty() || !(total > 0.0) {
        return Err(Error::EmptySet);
    }
    let idx = |v: f64| ((v * bins as f64) as usize).min(bins - 1);
    let mut mass = vec![0.0f64; bins * bins];
    for (p, w) in points {
        mass[idx(p.a) * bins + idx(p.b)] += w / total;
    }
    // Region area is 1/2; one cell has area 1/bins^2.
    let cell = 2.0 / (bins * bins) as f64;
    let mut tv = 0.0;
    for i in 0..bins {
        for j in 0..bins {
            let uniform = cell * region_cell_fraction(i, j, bins);
            tv += (mass[i * bins + j] - uniform).abs();
        }
    }
    Ok(tv / 2.0)
}

/// Weighted labeled projections of a shape set: each key's weight is split
/// evenly over its six label permutations.
pub fn labeled_points(s: &WeightedShapeSet) -> Vec<(PlanePoint, f64)> {
    let mut out = Vec::with_capacity(6 * s.len());
    for (k, w) in s.iter() {
        let share = w as f64 / 6.0;
        for [a, b, _] in all_permutations(&k.shape()) {
            out.push((PlanePoint { a, b }, share));
        }
    }
    out
}

pub fn compare_to_uniform(s: &WeightedShapeSet, bins: usize) -> Result<f64> {
    if s.is_empty() {
        return Err(Error::EmptySet);
    }
    total_variation_to_uniform(&labeled_points(s), bins)
}

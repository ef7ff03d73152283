//! Shape space of triangles.
//!
//! A labeled triangle is described by its side lengths divided by the
//! semi-perimeter, `(a, b, c)` with `a + b + c = 2` and each side `< 1`.
//! Forgetting the labels (sorting) gives a point of the moduli space,
//! `a <= b <= c < 1`. Both spaces are handled through their projection to
//! the `ab`-plane, where the labeled space is the open triangle with
//! vertices `(1, 0)`, `(0, 1)`, `(1, 1)`.
//!
//! Measures here are `ab`-plane areas. Only ratios of measures matter for
//! equidistribution statements, so the constant factor relating plane area
//! to area on `a + b + c = 2` is never applied.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::lattice::{AngleClass, SimilarityKey};
use crate::{Error, Result};

/// Tolerance on `a + b + c = 2` for real triples.
pub const SUM_TOLERANCE: f64 = 1e-12;

/// Margin below which the floating-point obtuse test defers to exact data.
pub const CLASSIFICATION_MARGIN: f64 = 1e-9;

/// Sorted normalized side lengths: a point of the moduli space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeTriple {
    a: f64,
    b: f64,
    c: f64,
}

impl ShapeTriple {
    /// Validates an already-normalized sorted triple.
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && c.is_finite()) {
            return Err(Error::InvalidInput("non-finite shape coordinate".into()));
        }
        if ((a + b + c) - 2.0).abs() > SUM_TOLERANCE {
            return Err(Error::InvalidInput(format!(
                "shape ({a}, {b}, {c}) does not sum to 2"
            )));
        }
        if !(0.0 < a && a <= b && b <= c && c < 1.0) {
            return Err(Error::InvalidInput(format!(
                "shape ({a}, {b}, {c}) must satisfy 0 < a <= b <= c < 1"
            )));
        }
        Ok(Self { a, b, c })
    }

    /// Normalizes three side lengths (any positive scale, any order) by the
    /// semi-perimeter and sorts them.
    pub fn from_side_lengths(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x > 0.0 && y > 0.0 && z > 0.0) || !(x + y + z).is_finite() {
            return Err(Error::InvalidInput(format!(
                "side lengths ({x}, {y}, {z}) must be positive and finite"
            )));
        }
        let mut v = [x, y, z];
        v.sort_by(f64::total_cmp);
        if v[2] >= v[0] + v[1] {
            return Err(Error::Degenerate(format!(
                "side lengths ({x}, {y}, {z}) violate the strict triangle inequality"
            )));
        }
        let semi = (v[0] + v[1] + v[2]) / 2.0;
        Self::new(v[0] / semi, v[1] / semi, v[2] / semi)
    }

    pub(crate) fn from_sorted_unchecked(a: f64, b: f64, c: f64) -> Self {
        Self { a, b, c }
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn c(&self) -> f64 {
        self.c
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.a, self.b, self.c]
    }

    /// Euclidean distance in `(a, b, c)` coordinates.
    pub fn distance(&self, other: &ShapeTriple) -> f64 {
        let (da, db, dc) = (self.a - other.a, self.b - other.b, self.c - other.c);
        (da * da + db * db + dc * dc).sqrt()
    }

    /// `c^2 - a^2 - b^2`; positive for obtuse shapes.
    pub fn obtuseness(&self) -> f64 {
        self.c * self.c - self.a * self.a - self.b * self.b
    }

    pub fn equilateral() -> Self {
        Self::from_sorted_unchecked(2.0 / 3.0, 2.0 / 3.0, 2.0 / 3.0)
    }
}

/// Normalized side lengths in a fixed label order: a point of the labeled
/// (Teichmüller) space.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LabeledTriple {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

impl LabeledTriple {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        if ((a + b + c) - 2.0).abs() > SUM_TOLERANCE || !(a < 1.0 && b < 1.0 && c < 1.0) {
            return Err(Error::InvalidInput(format!(
                "labeled triple ({a}, {b}, {c}) is not a triangle shape"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn to_plane(&self) -> PlanePoint {
        PlanePoint {
            a: self.a,
            b: self.b,
        }
    }

    pub fn sorted(&self) -> ShapeTriple {
        let mut v = [self.a, self.b, self.c];
        v.sort_by(f64::total_cmp);
        ShapeTriple::from_sorted_unchecked(v[0], v[1], v[2])
    }
}

/// Projection of a labeled triple to the `ab`-plane; `c = 2 - a - b`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlanePoint {
    pub a: f64,
    pub b: f64,
}

impl PlanePoint {
    /// Inside the projected labeled space: `a, b < 1` and `a + b > 1`.
    pub fn is_admissible(&self) -> bool {
        self.a < 1.0 && self.b < 1.0 && self.a + self.b > 1.0
    }
}

pub fn to_plane(t: &LabeledTriple) -> PlanePoint {
    t.to_plane()
}

/// All distinct label permutations of a shape: 6 for scalene, 3 for
/// isosceles, 1 for equilateral.
pub fn s3_orbit(s: &ShapeTriple) -> Vec<LabeledTriple> {
    let mut out: Vec<LabeledTriple> = Vec::with_capacity(6);
    for [a, b, c] in all_permutations(s) {
        let t = LabeledTriple { a, b, c };
        if !out.contains(&t) {
            out.push(t);
        }
    }
    out
}

/// The six label permutations, repeated entries included.
pub fn all_permutations(s: &ShapeTriple) -> [[f64; 3]; 6] {
    let (a, b, c) = (s.a, s.b, s.c);
    [
        [a, b, c],
        [a, c, b],
        [b, a, c],
        [b, c, a],
        [c, a, b],
        [c, b, a],
    ]
}

/// Plane area of the labeled space.
pub fn measure_teich() -> f64 {
    0.5
}

/// Plane area of the moduli space: the labeled space modulo `S3`.
pub fn measure_moduli() -> f64 {
    1.0 / 12.0
}

/// Area of the region where the side labeled `c` is opposite an obtuse angle.
pub fn single_obtuse_region_measure() -> f64 {
    1.5 - 2.0 * std::f64::consts::LN_2
}

/// Area of the obtuse locus in the labeled space (three disjoint copies).
pub fn obtuse_region_measure() -> f64 {
    4.5 - 6.0 * std::f64::consts::LN_2
}

/// The right-angle curve `a = 2(1 - b) / (2 - b)` in the `ab`-plane.
pub fn right_locus(b: f64) -> Result<f64> {
    if !(b > 0.0 && b < 1.0) {
        return Err(Error::InvalidInput(format!("b = {b} is outside (0, 1)")));
    }
    Ok(2.0 * (1.0 - b) / (2.0 - b))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ModuliRegion {
    /// Strictly obtuse shapes. Right triangles are excluded.
    ObtuseAll,
    /// Strictly acute shapes. Right triangles are excluded.
    Acute,
    Full,
}

impl ModuliRegion {
    /// Exact membership for lattice shapes.
    pub fn contains_key(&self, k: &SimilarityKey) -> bool {
        match self {
            ModuliRegion::ObtuseAll => k.angle_class() == AngleClass::Obtuse,
            ModuliRegion::Acute => k.angle_class() == AngleClass::Acute,
            ModuliRegion::Full => true,
        }
    }

    /// Floating-point membership for real shapes. Shapes on the right-angle
    /// locus (to within rounding) are in neither strict region.
    pub fn contains_shape(&self, s: &ShapeTriple) -> bool {
        let d = s.obtuseness();
        match self {
            ModuliRegion::ObtuseAll => d > 0.0,
            ModuliRegion::Acute => d < 0.0,
            ModuliRegion::Full => true,
        }
    }

    /// Plane area of the region's preimage in the labeled space.
    pub fn measure(&self) -> f64 {
        match self {
            ModuliRegion::ObtuseAll => obtuse_region_measure(),
            ModuliRegion::Acute => measure_teich() - obtuse_region_measure(),
            ModuliRegion::Full => measure_teich(),
        }
    }
}

pub fn region_contains(region: ModuliRegion, k: &SimilarityKey) -> bool {
    region.contains_key(k)
}

/// Limit of the normalized counting measure of `region` under an
/// equidistributed sequence: `mu(region) / mu(whole space)`.
pub fn uniform_target(region: ModuliRegion) -> f64 {
    region.measure() / measure_teich()
}

/// Similarity classes with positive integer multiplicities.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct WeightedShapeSet {
    entries: BTreeMap<SimilarityKey, u64>,
    total_weight: u64,
}

impl WeightedShapeSet {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds `weight` to `key`. Zero weights are rejected.
    pub fn add(&mut self, key: SimilarityKey, weight: u64) -> Result<()> {
        if weight == 0 {
            return Err(Error::InvalidInput(format!("zero weight for key {key}")));
        }
        let total = self
            .total_weight
            .checked_add(weight)
            .ok_or_else(|| Error::Guard("total weight overflows u64".into()))?;
        *self.entries.entry(key).or_insert(0) += weight;
        self.total_weight = total;
        Ok(())
    }

    pub fn from_entries<I>(iter: I) -> Result<Self>
    where
        I: IntoIterator<Item = (SimilarityKey, u64)>,
    {
        let mut set = Self::new();
        for (k, w) in iter {
            set.add(k, w)?;
        }
        Ok(set)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_weight(&self) -> u64 {
        self.total_weight
    }

    pub fn get(&self, key: &SimilarityKey) -> Option<u64> {
        self.entries.get(key).copied()
    }

    pub fn contains(&self, key: &SimilarityKey) -> bool {
        self.entries.contains_key(key)
    }

    /// Entries in lexicographic key order.
    pub fn iter(&self) -> impl Iterator<Item = (&SimilarityKey, u64)> + '_ {
        self.entries.iter().map(|(k, w)| (k, *w))
    }

    pub fn keys(&self) -> impl Iterator<Item = &SimilarityKey> + '_ {
        self.entries.keys()
    }

    /// Total weight of keys inside `region`.
    pub fn region_weight(&self, region: ModuliRegion) -> u64 {
        self.iter()
            .filter(|(k, _)| region.contains_key(k))
            .map(|(_, w)| w)
            .sum()
    }

    /// Number of distinct keys inside `region`.
    pub fn region_count(&self, region: ModuliRegion) -> usize {
        self.keys().filter(|k| region.contains_key(k)).count()
    }

    /// Normalized Dirac mass of `region`: weight inside over total weight.
    pub fn dirac_ratio(&self, region: ModuliRegion) -> Result<f64> {
        if self.total_weight == 0 {
            return Err(Error::EmptySet);
        }
        Ok(self.region_weight(region) as f64 / self.total_weight as f64)
    }

    /// Every weight multiplied by `factor`.
    pub fn scaled(&self, factor: u64) -> Result<Self> {
        if factor == 0 {
            return Err(Error::InvalidInput("scale factor must be positive".into()));
        }
        let mut out = Self::new();
        for (k, w) in self.iter() {
            let w = w
                .checked_mul(factor)
                .ok_or_else(|| Error::Guard("scaled weight overflows u64".into()))?;
            out.add(*k, w)?;
        }
        Ok(out)
    }
}

pub fn dirac_ratio(s: &WeightedShapeSet, region: ModuliRegion) -> Result<f64> {
    s.dirac_ratio(region)
}

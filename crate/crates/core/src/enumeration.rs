//! Census of lattice triangles in `[-n, n]^2` by similarity class.
//!
//! A triangle is counted once per unordered vertex set. The fast path
//! enumerates translation classes `{0, u, v}` through ordered edge-vector
//! pairs `(u, v)` and weights each by the number of its translates that fit
//! in the square. Every class is reached by exactly six ordered pairs
//! (three anchor vertices, two orders), so per-key totals are divided by
//! six, and a remainder is reported as an enumeration bug.

use std::collections::{BTreeMap, BTreeSet};

use num_integer::Integer;
use rayon::prelude::*;
use rustc_hash::FxHashMap;

use crate::lattice::{sort3, LatticePoint, LatticeTriangle, SimilarityKey};
use crate::moduli::WeightedShapeSet;
use crate::{parallel, Error, Result};

/// Largest supported half-width. Squared edge lengths stay below `2^22`.
pub const MAX_N: u32 = 512;

/// Largest number of lattice points accepted by [`enumerate_naive`].
pub const NAIVE_MAX_POINTS: u64 = 400;

/// Coordinate spreads of a triangle's vertices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct BoundingBox {
    pub w: u32,
    pub h: u32,
}

/// Number of integer translates of a triangle with bounding box `bb` that
/// lie inside `[-n, n]^2`.
pub fn translation_multiplicity(bb: BoundingBox, n: u32) -> u64 {
    let side = 2 * u64::from(n) + 1;
    let (w, h) = (u64::from(bb.w), u64::from(bb.h));
    if w < side && h < side {
        (side - w) * (side - h)
    } else {
        0
    }
}

/// The triangle `{0, u, v}` up to translation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TranslationClass {
    u: (i32, i32),
    v: (i32, i32),
}

impl TranslationClass {
    pub fn new(u: (i32, i32), v: (i32, i32)) -> Result<Self> {
        let cross = i64::from(u.0) * i64::from(v.1) - i64::from(u.1) * i64::from(v.0);
        if cross == 0 {
            return Err(Error::Degenerate(format!(
                "edge vectors {u:?} and {v:?} are collinear with the origin"
            )));
        }
        Ok(Self { u, v })
    }

    pub fn bounding_box(&self) -> BoundingBox {
        let spread = |a: i32, b: i32| (a.max(b).max(0) - a.min(b).min(0)) as u32;
        BoundingBox {
            w: spread(self.u.0, self.v.0),
            h: spread(self.u.1, self.v.1),
        }
    }

    pub fn triangle(&self) -> LatticeTriangle {
        LatticeTriangle::new(
            LatticePoint::new(0, 0),
            LatticePoint::new(self.u.0, self.u.1),
            LatticePoint::new(self.v.0, self.v.1),
        )
        .expect("non-collinear by construction")
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EnumerateOptions {
    /// Visit edge vectors in descending instead of ascending order.
    pub reverse_order: bool,
}

type RawKey = [u32; 3];
type Accumulator = FxHashMap<RawKey, u64>;

/// Weighted similarity-class census of all triangles in `[-n, n]^2`.
pub fn enumerate_weighted(n: u32) -> Result<WeightedShapeSet> {
    enumerate_weighted_with(n, EnumerateOptions::default())
}

pub fn enumerate_weighted_with(n: u32, opts: EnumerateOptions) -> Result<WeightedShapeSet> {
    if n == 0 || n > MAX_N {
        return Err(Error::Guard(format!("n = {n} must lie in 1..={MAX_N}")));
    }
    let acc = parallel::run(|| accumulate_ordered_pairs(n, opts))?;
    normalize(acc)
}

/// Sum of translation multiplicities per raw key over all ordered pairs.
fn accumulate_ordered_pairs(n: u32, opts: EnumerateOptions) -> Accumulator {
    let span = 2 * n as i32;
    let mut edges: Vec<(i32, i32)> = (-span..=span)
        .flat_map(|x| (-span..=span).map(move |y| (x, y)))
        .filter(|&u| u != (0, 0))
        .collect();
    if opts.reverse_order {
        edges.reverse();
    }
    edges
        .par_iter()
        .fold(Accumulator::default, |mut acc, &u| {
            visit_edge(u, n, opts.reverse_order, &mut acc);
            acc
        })
        .reduce(Accumulator::default, merge)
}

fn merge(mut a: Accumulator, mut b: Accumulator) -> Accumulator {
    if a.len() < b.len() {
        std::mem::swap(&mut a, &mut b);
    }
    for (k, w) in b {
        *a.entry(k).or_insert(0) += w;
    }
    a
}

fn visit_edge(u: (i32, i32), n: u32, reverse: bool, acc: &mut Accumulator) {
    let span = 2 * n as i32;
    let side = span + 1;
    let (ux, uy) = u;
    // Only v with a bounding box of {0, u, v} inside the square contribute.
    let (x_lo, x_hi) = (ux.max(0) - span, ux.min(0) + span);
    let (y_lo, y_hi) = (uy.max(0) - span, uy.min(0) + span);
    let p = (ux * ux + uy * uy) as u32;
    let mut xs: Vec<i32> = (x_lo..=x_hi).collect();
    let mut ys: Vec<i32> = (y_lo..=y_hi).collect();
    if reverse {
        xs.reverse();
        ys.reverse();
    }
    for &vx in &xs {
        let w = ux.max(vx).max(0) - ux.min(vx).min(0);
        let mx = (side - w) as u64;
        let dx = ux - vx;
        for &vy in &ys {
            if ux * vy == uy * vx {
                continue;
            }
            let h = uy.max(vy).max(0) - uy.min(vy).min(0);
            let mult = mx * (side - h) as u64;
            let dy = uy - vy;
            let q = (vx * vx + vy * vy) as u32;
            let r = (dx * dx + dy * dy) as u32;
            let [a, b, c] = sort3([p, q, r]);
            let g = a.gcd(&b).gcd(&c);
            *acc.entry([a / g, b / g, c / g]).or_insert(0) += mult;
        }
    }
}

fn normalize(acc: Accumulator) -> Result<WeightedShapeSet> {
    let mut entries: Vec<(RawKey, u64)> = acc.into_iter().collect();
    entries.sort_unstable_by_key(|e| e.0);
    let mut set = WeightedShapeSet::new();
    for ([p, q, r], total) in entries {
        if total % 6 != 0 {
            return Err(Error::Invariant(format!(
                "ordered-pair total {total} for key ({p}, {q}, {r}) is not divisible by 6"
            )));
        }
        let key = SimilarityKey::from_reduced(u128::from(p), u128::from(q), u128::from(r));
        set.add(key, total / 6)?;
    }
    Ok(set)
}

/// Inclusive integer rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeBox {
    pub x_min: i32,
    pub x_max: i32,
    pub y_min: i32,
    pub y_max: i32,
}

impl LatticeBox {
    /// The square `[-n, n]^2`.
    pub fn centered(n: i32) -> Self {
        Self {
            x_min: -n,
            x_max: n,
            y_min: -n,
            y_max: n,
        }
    }

    pub fn point_count(&self) -> u64 {
        let w = i64::from(self.x_max) - i64::from(self.x_min) + 1;
        let h = i64::from(self.y_max) - i64::from(self.y_min) + 1;
        if w <= 0 || h <= 0 {
            0
        } else {
            (w * h) as u64
        }
    }

    pub fn points(&self) -> Vec<LatticePoint> {
        (self.x_min..=self.x_max)
            .flat_map(|x| (self.y_min..=self.y_max).map(move |y| LatticePoint::new(x, y)))
            .collect()
    }
}

/// Brute-force census over every unordered triple of points in `bx`.
pub fn enumerate_naive(bx: LatticeBox) -> Result<WeightedShapeSet> {
    if bx.point_count() > NAIVE_MAX_POINTS {
        return Err(Error::Guard(format!(
            "box has {} points, naive enumeration is limited to {NAIVE_MAX_POINTS}",
            bx.point_count()
        )));
    }
    let pts = bx.points();
    let mut counts: BTreeMap<SimilarityKey, u64> = BTreeMap::new();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if let Ok(t) = LatticeTriangle::new(pts[i], pts[j], pts[k]) {
                    *counts.entry(t.similarity_key()).or_insert(0) += 1;
                }
            }
        }
    }
    WeightedShapeSet::from_entries(counts)
}

/// Similarity classes present in `[-n, n]^2`, weights discarded.
pub fn distinct_classes(n: u32) -> Result<BTreeSet<SimilarityKey>> {
    Ok(enumerate_weighted(n)?.keys().copied().collect())
}

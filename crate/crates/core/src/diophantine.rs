//! Dirichlet approximation by the pigeonhole principle, and lattice
//! triangles approximating an arbitrary shape.
//!
//! Both approximation routines scan the multiples `k * x` (and `k * y`),
//! drop them into a grid of boxes on the unit interval (square), and stop
//! at the first box that receives a second point. Every returned witness is
//! re-verified in double precision before it leaves this module.

use serde::Serialize;

use crate::lattice::{LatticePoint, LatticeTriangle};
use crate::moduli::ShapeTriple;
use crate::{Error, Result};

/// Smallest tolerance accepted by [`dirichlet_1d`].
pub const MIN_EPS_1D: f64 = 1e-12;

/// Smallest tolerance accepted by [`dirichlet_2d`].
pub const MIN_EPS_2D: f64 = 1e-9;

/// Upper bound on the number of boxes in the 2D scan (one `u32` each).
pub const MAX_BOXES_2D: u64 = 1 << 28;

/// Smallest target tolerance accepted by [`approximate_shape`].
pub const MIN_SHAPE_EPS: f64 = 1e-6;

/// Maximum number of tolerance halvings in [`approximate_shape`].
pub const MAX_HALVINGS: u32 = 20;

/// Extra scan length, as a multiple of the pigeonhole bound, used when a
/// collision fails float verification.
const SCAN_SLACK: u64 = 4;

fn frac(v: f64) -> f64 {
    v - v.floor()
}

fn box_index(f: f64, boxes: u64) -> u64 {
    ((f * boxes as f64) as u64).min(boxes - 1)
}

/// Integers `m >= 1` and `n` with `|m x - n| < eps`.
pub fn dirichlet_1d(x: f64, eps: f64) -> Result<(u64, i64)> {
    if !x.is_finite() {
        return Err(Error::InvalidInput(format!("x = {x} is not finite")));
    }
    if !(eps >= MIN_EPS_1D) {
        return Err(Error::Guard(format!("eps = {eps} is below {MIN_EPS_1D}")));
    }
    let boxes = (1.0 / eps).ceil().max(1.0) as u64;
    let limit = boxes.saturating_mul(SCAN_SLACK);
    let mut first: Vec<u64> = vec![u64::MAX; boxes as usize];
    for k in 0..=limit {
        let kx = k as f64 * x;
        let slot = &mut first[box_index(frac(kx), boxes) as usize];
        if *slot != u64::MAX {
            let i = *slot;
            let m = k - i;
            let n = (kx.floor() - (i as f64 * x).floor()) as i64;
            if (m as f64 * x - n as f64).abs() < eps {
                return Ok((m, n));
            }
        }
        *slot = k;
    }
    Err(Error::Precision(format!(
        "no verified 1D approximant for x = {x}, eps = {eps}"
    )))
}

/// A simultaneous approximation witness: `|m x - nx| = err_x`, `|m y - ny| = err_y`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DirichletApproximant {
    pub m: u64,
    pub nx: i64,
    pub ny: i64,
    pub err_x: f64,
    pub err_y: f64,
}

/// One multiplier `m >= 1` bringing both `m x` and `m y` within `eps` of
/// integers.
pub fn dirichlet_2d(x: f64, y: f64, eps: f64) -> Result<DirichletApproximant> {
    if !(x.is_finite() && y.is_finite()) {
        return Err(Error::InvalidInput(format!("({x}, {y}) is not finite")));
    }
    if !(eps >= MIN_EPS_2D) {
        return Err(Error::Guard(format!("eps = {eps} is below {MIN_EPS_2D}")));
    }
    let per_axis = (1.0 / eps).floor() as u64 + 1;
    let boxes = per_axis.saturating_mul(per_axis);
    if boxes > MAX_BOXES_2D {
        return Err(Error::Guard(format!(
            "eps = {eps} needs {boxes} boxes, more than the {MAX_BOXES_2D} supported"
        )));
    }
    let limit = boxes * SCAN_SLACK;
    let mut first: Vec<u32> = vec![u32::MAX; boxes as usize];
    for k in 0..=limit {
        let (kx, ky) = (k as f64 * x, k as f64 * y);
        let cell = box_index(frac(kx), per_axis) * per_axis + box_index(frac(ky), per_axis);
        let slot = &mut first[cell as usize];
        if *slot != u32::MAX {
            let i = u64::from(*slot);
            let m = k - i;
            let nx = (kx.floor() - (i as f64 * x).floor()) as i64;
            let ny = (ky.floor() - (i as f64 * y).floor()) as i64;
            let err_x = (m as f64 * x - nx as f64).abs();
            let err_y = (m as f64 * y - ny as f64).abs();
            if err_x < eps && err_y < eps {
                return Ok(DirichletApproximant {
                    m,
                    nx,
                    ny,
                    err_x,
                    err_y,
                });
            }
        }
        // k <= 4 * 2^28 < 2^32.
        *slot = k as u32;
    }
    Err(Error::Precision(format!(
        "no verified 2D approximant for ({x}, {y}), eps = {eps}"
    )))
}

/// Apex `C = (x, y)` of a triangle with `A = (0, 0)`, `B = (1, 0)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PlaneVertex {
    pub x: f64,
    pub y: f64,
}

/// Places the longest side on the unit segment and returns the apex in the
/// upper half-plane. The side of length `b/c` ends at `A`, `a/c` at `B`.
pub fn shape_to_vertex(t: &ShapeTriple) -> Result<PlaneVertex> {
    let a = t.a() / t.c();
    let b = t.b() / t.c();
    let x = (1.0 + b * b - a * a) / 2.0;
    let y2 = b * b - x * x;
    if y2 < -1e-15 {
        return Err(Error::InvalidInput(format!(
            "shape {:?} has no planar realization",
            t.as_array()
        )));
    }
    Ok(PlaneVertex {
        x,
        y: y2.max(0.0).sqrt(),
    })
}

/// Sorted normalized side triple of an arbitrary real triangle.
pub fn shape_of_points(p: [(f64, f64); 3]) -> Result<ShapeTriple> {
    let d = |u: (f64, f64), v: (f64, f64)| ((u.0 - v.0).powi(2) + (u.1 - v.1).powi(2)).sqrt();
    ShapeTriple::from_side_lengths(d(p[0], p[1]), d(p[1], p[2]), d(p[2], p[0]))
}

/// A lattice triangle close in shape to a target.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ShapeApproximation {
    pub triangle: LatticeTriangle,
    pub approximant: DirichletApproximant,
    /// Tolerance finally passed to [`dirichlet_2d`].
    pub delta: f64,
    /// Shape distance recomputed from the exact similarity key.
    pub distance: f64,
}

/// Lattice triangle `(0,0), (M,0), (Nx,Ny)` whose shape lies within `eps`
/// of `target`, verified through the exact similarity key.
pub fn approximate_shape(target: &ShapeTriple, eps: f64) -> Result<ShapeApproximation> {
    if !(eps >= MIN_SHAPE_EPS) {
        return Err(Error::Guard(format!("eps = {eps} is below {MIN_SHAPE_EPS}")));
    }
    let apex = shape_to_vertex(target)?;
    let mut delta = eps.clamp(1e-3, 0.25);
    for _ in 0..=MAX_HALVINGS {
        if delta < MIN_EPS_2D {
            break;
        }
        let w = match dirichlet_2d(apex.x, apex.y, delta) {
            Ok(w) => w,
            // Too fine a grid: nothing further to try.
            Err(Error::Guard(_)) => break,
            Err(e) => return Err(e),
        };
        if let Some(found) = candidate(target, &w, delta, eps)? {
            return Ok(found);
        }
        delta /= 2.0;
    }
    Err(Error::Precision(format!(
        "no lattice triangle within {eps} of {:?}",
        target.as_array()
    )))
}

fn candidate(
    target: &ShapeTriple,
    w: &DirichletApproximant,
    delta: f64,
    eps: f64,
) -> Result<Option<ShapeApproximation>> {
    let coord = |v: i64| LatticePoint::try_new(v, 0).map(|p| p.x);
    let m = coord(w.m as i64)?;
    let (nx, ny) = (coord(w.nx)?, coord(w.ny)?);
    let Ok(triangle) = LatticeTriangle::new(
        LatticePoint::new(0, 0),
        LatticePoint::new(m, 0),
        LatticePoint::new(nx, ny),
    ) else {
        return Ok(None);
    };
    let distance = triangle.similarity_key().shape().distance(target);
    Ok((distance < eps).then_some(ShapeApproximation {
        triangle,
        approximant: *w,
        delta,
        distance,
    }))
}

/// Lattice approximant of the equilateral triangle:
/// `(0,0), (2M,0), (M,N)` with `|M sqrt(3) - N| < eps`.
pub fn equilateral_approximant(eps: f64) -> Result<LatticeTriangle> {
    if !(eps >= MIN_SHAPE_EPS) {
        return Err(Error::Guard(format!("eps = {eps} is below {MIN_SHAPE_EPS}")));
    }
    let (m, n) = dirichlet_1d(3f64.sqrt(), eps)?;
    let two_m = m
        .checked_mul(2)
        .ok_or_else(|| Error::Guard("multiplier overflow".into()))?;
    LatticeTriangle::new(
        LatticePoint::new(0, 0),
        LatticePoint::try_new(two_m as i64, 0)?,
        LatticePoint::try_new(m as i64, n)?,
    )
}

/// `({x}, {2x}, ..., {count x})`.
pub fn weyl_sequence(x: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|k| frac(k as f64 * x)).collect()
}

/// Exact star discrepancy of a finite sequence in `[0, 1)`.
pub fn star_discrepancy(seq: &[f64]) -> Result<f64> {
    if seq.is_empty() {
        return Err(Error::InvalidInput("empty sequence".into()));
    }
    if let Some(v) = seq.iter().find(|v| !(0.0..1.0).contains(*v)) {
        return Err(Error::InvalidInput(format!("{v} is outside [0, 1)")));
    }
    let mut s = seq.to_vec();
    s.sort_by(f64::total_cmp);
    let n = s.len() as f64;
    Ok(s.iter()
        .enumerate()
        .map(|(i, &v)| {
            let above = (i + 1) as f64 / n - v;
            let below = v - i as f64 / n;
            above.max(below)
        })
        .fold(0.0, f64::max))
}

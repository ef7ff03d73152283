//! Exact integer geometry for lattice triangles.
//!
//! Everything on this path is integer arithmetic: coordinates are `i32`,
//! derived squared quantities are computed in `i128`/`u128`, so no input
//! representable as a [`LatticePoint`] can overflow.

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::moduli::ShapeTriple;
use crate::{Error, Result};

/// A point of the integer lattice `Z^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint {
    pub x: i32,
    pub y: i32,
}

impl LatticePoint {
    pub const fn new(x: i32, y: i32) -> Self {
        Self { x, y }
    }

    /// Builds a point from wide integers, rejecting coordinates outside `i32`.
    pub fn try_new(x: i64, y: i64) -> Result<Self> {
        let x = i32::try_from(x).map_err(|_| Error::CoordinateOutOfRange(x))?;
        let y = i32::try_from(y).map_err(|_| Error::CoordinateOutOfRange(y))?;
        Ok(Self { x, y })
    }

    fn to_wide(self) -> (i128, i128) {
        (i128::from(self.x), i128::from(self.y))
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

fn cross(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> i128 {
    let (ax, ay) = a.to_wide();
    let (bx, by) = b.to_wide();
    let (cx, cy) = c.to_wide();
    (bx - ax) * (cy - ay) - (by - ay) * (cx - ax)
}

fn dist2(a: LatticePoint, b: LatticePoint) -> u128 {
    let (ax, ay) = a.to_wide();
    let (bx, by) = b.to_wide();
    let (dx, dy) = (bx - ax, by - ay);
    (dx * dx + dy * dy) as u128
}

/// True iff `a`, `b`, `c` lie on a common line (including coincident points).
pub fn is_collinear(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> bool {
    cross(a, b, c) == 0
}

/// Three distinct, non-collinear lattice points.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct LatticeTriangle {
    a: LatticePoint,
    b: LatticePoint,
    c: LatticePoint,
}

impl LatticeTriangle {
    pub fn new(a: LatticePoint, b: LatticePoint, c: LatticePoint) -> Result<Self> {
        if a == b || b == c || a == c {
            return Err(Error::Degenerate(format!(
                "vertices {a}, {b}, {c} are not distinct"
            )));
        }
        if is_collinear(a, b, c) {
            return Err(Error::Degenerate(format!(
                "vertices {a}, {b}, {c} are collinear"
            )));
        }
        Ok(Self { a, b, c })
    }

    pub fn vertices(&self) -> [LatticePoint; 3] {
        [self.a, self.b, self.c]
    }

    /// Sorted squared edge lengths.
    pub fn squared_sides(&self) -> SquaredSides {
        let [p, q, r] = sort3([
            dist2(self.a, self.b),
            dist2(self.b, self.c),
            dist2(self.c, self.a),
        ]);
        // Non-collinearity already implies the strict triangle inequality.
        SquaredSides { p, q, r }
    }

    pub fn similarity_key(&self) -> SimilarityKey {
        self.squared_sides().reduce()
    }

    /// Twice the signed area.
    pub fn doubled_signed_area(&self) -> i128 {
        cross(self.a, self.b, self.c)
    }
}

impl fmt::Display for LatticeTriangle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.a, self.b, self.c)
    }
}

pub(crate) fn sort3<T: Ord + Copy>(mut v: [T; 3]) -> [T; 3] {
    if v[0] > v[1] {
        v.swap(0, 1);
    }
    if v[1] > v[2] {
        v.swap(1, 2);
    }
    if v[0] > v[1] {
        v.swap(0, 1);
    }
    v
}

/// Strict triangle inequality `sqrt(p) + sqrt(q) > sqrt(r)` for sorted
/// positive integers, decided exactly. Returns `None` if the check would
/// overflow 128-bit arithmetic.
fn strict_triangle_inequality(p: u128, q: u128, r: u128) -> Option<bool> {
    let sum = p.checked_add(q)?;
    if r < sum {
        return Some(true);
    }
    let d = r - sum;
    let lhs = d.checked_mul(d)?;
    let rhs = p.checked_mul(q)?.checked_mul(4)?;
    Some(lhs < rhs)
}

fn validate_sorted(p: u128, q: u128, r: u128) -> Result<()> {
    if p == 0 {
        return Err(Error::Degenerate("zero-length side".into()));
    }
    match strict_triangle_inequality(p, q, r) {
        Some(true) => Ok(()),
        Some(false) => Err(Error::Degenerate(format!(
            "squared sides ({p}, {q}, {r}) violate the strict triangle inequality"
        ))),
        None => Err(Error::InvalidInput(format!(
            "squared sides ({p}, {q}, {r}) are too large to validate exactly"
        ))),
    }
}

/// Sorted integer squared side lengths `p <= q <= r` of a non-degenerate triangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquaredSides {
    p: u128,
    q: u128,
    r: u128,
}

impl SquaredSides {
    /// Accepts the three values in any order.
    pub fn new(x: u128, y: u128, z: u128) -> Result<Self> {
        let [p, q, r] = sort3([x, y, z]);
        validate_sorted(p, q, r)?;
        Ok(Self { p, q, r })
    }

    pub fn as_array(&self) -> [u128; 3] {
        [self.p, self.q, self.r]
    }

    /// Divides out `gcd(p, q, r)`.
    pub fn reduce(&self) -> SimilarityKey {
        let g = self.p.gcd(&self.q).gcd(&self.r);
        SimilarityKey {
            p: self.p / g,
            q: self.q / g,
            r: self.r / g,
        }
    }
}

/// Exact similarity class of a lattice triangle: sorted squared sides with
/// their common factor removed.
///
/// Two lattice triangles are similar iff their keys are equal.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u128; 3]", into = "[u128; 3]")]
pub struct SimilarityKey {
    p: u128,
    q: u128,
    r: u128,
}

impl SimilarityKey {
    /// Sorts, validates and gcd-reduces an arbitrary squared-side triple.
    pub fn new(x: u128, y: u128, z: u128) -> Result<Self> {
        Ok(SquaredSides::new(x, y, z)?.reduce())
    }

    /// For callers that already hold a sorted, reduced, valid triple.
    pub(crate) fn from_reduced(p: u128, q: u128, r: u128) -> Self {
        debug_assert!(p <= q && q <= r && p.gcd(&q).gcd(&r) == 1);
        Self { p, q, r }
    }

    pub fn p(&self) -> u128 {
        self.p
    }

    pub fn q(&self) -> u128 {
        self.q
    }

    pub fn r(&self) -> u128 {
        self.r
    }

    pub fn as_array(&self) -> [u128; 3] {
        [self.p, self.q, self.r]
    }

    pub fn angle_class(&self) -> AngleClass {
        classify_angle(self)
    }

    /// Two equal sides.
    pub fn is_isosceles(&self) -> bool {
        self.p == self.q || self.q == self.r
    }

    /// Normalized side-length triple: side lengths divided by the
    /// semi-perimeter, so that `a + b + c = 2`.
    pub fn shape(&self) -> ShapeTriple {
        shape_of(self)
    }
}

impl TryFrom<[u128; 3]> for SimilarityKey {
    type Error = Error;

    fn try_from(v: [u128; 3]) -> Result<Self> {
        let key = SimilarityKey::new(v[0], v[1], v[2])?;
        if key.as_array() != v {
            return Err(Error::InvalidInput(format!(
                "{v:?} is not a sorted gcd-reduced triple"
            )));
        }
        Ok(key)
    }
}

impl From<SimilarityKey> for [u128; 3] {
    fn from(k: SimilarityKey) -> Self {
        k.as_array()
    }
}

impl fmt::Display for SimilarityKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.p, self.q, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AngleClass {
    Acute,
    Right,
    Obtuse,
}

impl AngleClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            AngleClass::Acute => "acute",
            AngleClass::Right => "right",
            AngleClass::Obtuse => "obtuse",
        }
    }
}

impl std::str::FromStr for AngleClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "acute" => Ok(AngleClass::Acute),
            "right" => Ok(AngleClass::Right),
            "obtuse" => Ok(AngleClass::Obtuse),
            other => Err(Error::Parse(format!("unknown angle class {other:?}"))),
        }
    }
}

/// Law of cosines on squared sides: the largest angle is obtuse iff
/// `r > p + q`.
pub fn classify_angle(k: &SimilarityKey) -> AngleClass {
    // p + q cannot overflow: both are at most 2^66.
    let sum = k.p + k.q;
    match k.r.cmp(&sum) {
        std::cmp::Ordering::Greater => AngleClass::Obtuse,
        std::cmp::Ordering::Equal => AngleClass::Right,
        std::cmp::Ordering::Less => AngleClass::Acute,
    }
}

pub fn shape_of(k: &SimilarityKey) -> ShapeTriple {
    let sides = [
        (k.p as f64).sqrt(),
        (k.q as f64).sqrt(),
        (k.r as f64).sqrt(),
    ];
    let semi = (sides[0] + sides[1] + sides[2]) / 2.0;
    ShapeTriple::from_sorted_unchecked(sides[0] / semi, sides[1] / semi, sides[2] / semi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn pt(x: i32, y: i32) -> LatticePoint {
        LatticePoint::new(x, y)
    }

    fn tri(a: (i32, i32), b: (i32, i32), c: (i32, i32)) -> LatticeTriangle {
        LatticeTriangle::new(pt(a.0, a.1), pt(b.0, b.1), pt(c.0, c.1)).unwrap()
    }

    fn key(p: u128, q: u128, r: u128) -> SimilarityKey {
        SimilarityKey::new(p, q, r).unwrap()
    }

    #[test]
    fn collinearity() {
        assert!(is_collinear(pt(0, 0), pt(1, 0), pt(2, 0)));
        assert!(!is_collinear(pt(0, 0), pt(1, 0), pt(0, 1)));
        assert!(is_collinear(pt(0, 0), pt(2, 3), pt(4, 6)));
    }

    #[test]
    fn triangle_construction_rejects_degenerates() {
        assert!(matches!(
            LatticeTriangle::new(pt(0, 0), pt(0, 0), pt(1, 1)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            LatticeTriangle::new(pt(0, 0), pt(2, 3), pt(4, 6)),
            Err(Error::Degenerate(_))
        ));
        assert!(matches!(
            LatticePoint::try_new(1 << 31, 0),
            Err(Error::CoordinateOutOfRange(_))
        ));
        assert!(LatticePoint::try_new(i64::from(i32::MIN), i64::from(i32::MAX)).is_ok());
    }

    #[test]
    fn squared_sides_examples() {
        assert_eq!(tri((0, 0), (1, 0), (0, 1)).squared_sides().as_array(), [1, 1, 2]);
        assert_eq!(tri((0, 0), (4, 0), (0, 3)).squared_sides().as_array(), [9, 16, 25]);
        assert_eq!(tri((0, 0), (2, 0), (1, 2)).squared_sides().as_array(), [4, 5, 5]);
    }

    #[test]
    fn similarity_key_examples() {
        assert_eq!(tri((0, 0), (2, 0), (0, 2)).similarity_key().as_array(), [1, 1, 2]);
        assert_eq!(tri((0, 0), (4, 0), (0, 3)).similarity_key().as_array(), [9, 16, 25]);
        assert_eq!(tri((0, 0), (3, 0), (-1, 1)).similarity_key().as_array(), [2, 9, 17]);
    }

    #[test]
    fn extreme_coordinates_do_not_overflow() {
        let t = LatticeTriangle::new(
            pt(i32::MIN, i32::MIN),
            pt(i32::MAX, i32::MIN),
            pt(i32::MIN, i32::MAX),
        )
        .unwrap();
        let s = t.squared_sides().as_array();
        let side = (1u128 << 32) - 1;
        assert_eq!(s, [side * side, side * side, 2 * side * side]);
        assert_eq!(t.similarity_key().as_array(), [1, 1, 2]);
    }

    #[test]
    fn angle_classification_examples() {
        assert_eq!(classify_angle(&key(1, 1, 2)), AngleClass::Right);
        assert_eq!(classify_angle(&key(2, 9, 17)), AngleClass::Obtuse);
        assert_eq!(classify_angle(&key(4, 5, 5)), AngleClass::Acute);
    }

    #[test]
    fn shape_examples() {
        let s = key(9, 16, 25).shape();
        assert!((s.a() - 0.5).abs() < 1e-15);
        assert!((s.b() - 2.0 / 3.0).abs() < 1e-15);
        assert!((s.c() - 5.0 / 6.0).abs() < 1e-15);

        let s = key(1, 1, 2).shape();
        let r2 = 2f64.sqrt();
        assert!((s.a() - (2.0 - r2)).abs() < 1e-15);
        assert_eq!(s.a(), s.b());
        assert!((s.c() - (2.0 * r2 - 2.0)).abs() < 1e-15);

        let s = key(1, 1, 1).shape();
        for v in [s.a(), s.b(), s.c()] {
            assert!((v - 2.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn key_validation() {
        assert!(SimilarityKey::new(1, 1, 4).is_err());
        assert!(SimilarityKey::new(0, 1, 1).is_err());
        assert_eq!(key(4, 2, 2).as_array(), [1, 1, 2]);
        // sqrt(1) + sqrt(4) = 3 = sqrt(9): degenerate.
        assert!(SimilarityKey::new(1, 4, 9).is_err());
        assert!(SimilarityKey::new(1, 4, 8).is_ok());
        assert!(SimilarityKey::try_from([2, 2, 4]).is_err());
        assert!(SimilarityKey::try_from([1, 1, 2]).is_ok());
    }

    #[test]
    fn no_equilateral_lattice_triangle_in_small_box() {
        let pts: Vec<_> = (-4..=4)
            .flat_map(|x| (-4..=4).map(move |y| pt(x, y)))
            .collect();
        let mut checked = 0u64;
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                for k in j + 1..pts.len() {
                    if let Ok(t) = LatticeTriangle::new(pts[i], pts[j], pts[k]) {
                        assert_ne!(t.similarity_key().as_array(), [1, 1, 1], "{t}");
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 60_000);
    }

    fn dot_at(o: LatticePoint, a: LatticePoint, b: LatticePoint) -> i64 {
        let (ux, uy) = (i64::from(a.x - o.x), i64::from(a.y - o.y));
        let (vx, vy) = (i64::from(b.x - o.x), i64::from(b.y - o.y));
        ux * vx + uy * vy
    }

    fn arb_triangle(bound: i32) -> impl Strategy<Value = LatticeTriangle> {
        let c = -bound..=bound;
        (c.clone(), c.clone(), c.clone(), c.clone(), c.clone(), c)
            .prop_filter_map("degenerate", |(a, b, c, d, e, f)| {
                LatticeTriangle::new(pt(a, b), pt(c, d), pt(e, f)).ok()
            })
    }

    proptest! {
        #[test]
        fn key_invariant_under_lattice_symmetries(
            t in arb_triangle(50),
            dx in -1000i32..1000,
            dy in -1000i32..1000,
            scale in 1i32..20,
            sym in 0usize..8,
        ) {
            let map = |p: LatticePoint| {
                let (x, y) = match sym {
                    0 => (p.x, p.y),
                    1 => (-p.x, p.y),
                    2 => (p.x, -p.y),
                    3 => (-p.x, -p.y),
                    4 => (p.y, p.x),
                    5 => (-p.y, p.x),
                    6 => (p.y, -p.x),
                    _ => (-p.y, -p.x),
                };
                pt(x * scale + dx, y * scale + dy)
            };
            let [a, b, c] = t.vertices();
            let image = LatticeTriangle::new(map(a), map(b), map(c)).unwrap();
            prop_assert_eq!(image.similarity_key(), t.similarity_key());
        }

        #[test]
        fn right_iff_some_dot_product_vanishes(t in arb_triangle(30)) {
            let [a, b, c] = t.vertices();
            let has_right = dot_at(a, b, c) == 0 || dot_at(b, c, a) == 0 || dot_at(c, a, b) == 0;
            prop_assert_eq!(t.similarity_key().angle_class() == AngleClass::Right, has_right);
        }

        #[test]
        fn shape_is_normalized_and_sorted(t in arb_triangle(1000)) {
            let s = t.similarity_key().shape();
            prop_assert!((s.a() + s.b() + s.c() - 2.0).abs() < 1e-12);
            prop_assert!(0.0 < s.a() && s.a() <= s.b() && s.b() <= s.c());
            prop_assert!(s.c() <= 1.0 - 1e-15);
        }

        #[test]
        fn key_is_reduced(t in arb_triangle(100)) {
            let [p, q, r] = t.similarity_key().as_array();
            prop_assert_eq!(p.gcd(&q).gcd(&r), 1);
            prop_assert!(p <= q && q <= r);
        }
    }
}

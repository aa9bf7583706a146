//! Straight arcs in one triangle and the signs of their crossings.
//!
//! Points on the triangle boundary are given by a side and a parameter.
//! Side `i` runs from local corner `i` to corner `i + 1 (mod 3)`, and the
//! corners `0, 1, 2` are counterclockwise when the face orientation is
//! positive. Two straight chords cross iff their endpoints alternate around
//! the boundary, so everything here is decided by cyclic order alone.

use crate::tet::Sign;

use super::IntersectionError;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FacePoint {
    pub side: usize,
    pub t: f64,
}

impl FacePoint {
    pub fn new(side: usize, t: f64) -> Self {
        debug_assert!(side < 3 && t > 0.0 && t < 1.0);
        FacePoint { side, t }
    }

    fn key(&self) -> f64 {
        self.side as f64 + self.t
    }

    /// Position in a fixed counterclockwise planar triangle with corners
    /// `(0,0)`, `(1,0)`, `(0,1)`.
    pub fn planar(&self) -> [f64; 2] {
        const CORNERS: [[f64; 2]; 3] = [[0.0, 0.0], [1.0, 0.0], [0.0, 1.0]];
        let a = CORNERS[self.side];
        let b = CORNERS[(self.side + 1) % 3];
        [a[0] + self.t * (b[0] - a[0]), a[1] + self.t * (b[1] - a[1])]
    }
}

/// Counterclockwise distance from `from` to `to` around the boundary.
pub(crate) fn ccw_distance(from: &FacePoint, to: &FacePoint) -> f64 {
    (to.key() - from.key()).rem_euclid(3.0)
}

/// An oriented straight arc between two boundary points.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Chord {
    pub start: FacePoint,
    pub end: FacePoint,
}

impl Chord {
    pub fn new(start: FacePoint, end: FacePoint) -> Self {
        Chord { start, end }
    }

    pub fn reversed(&self) -> Chord {
        Chord {
            start: self.end,
            end: self.start,
        }
    }

    pub fn is_normal(&self) -> bool {
        self.start.side != self.end.side
    }

    /// Whether `p` lies strictly inside the counterclockwise boundary arc
    /// from `start` to `end`.
    pub(crate) fn left_arc_contains(&self, p: &FacePoint) -> bool {
        let d = ccw_distance(&self.start, p);
        d > 0.0 && d < ccw_distance(&self.start, &self.end)
    }
}

pub fn chords_cross(a: &Chord, b: &Chord) -> bool {
    a.left_arc_contains(&b.start) != a.left_arc_contains(&b.end)
}

/// Sign of the oriented pair `(a, b)` at their crossing: positive when the
/// tangents of `a` then `b` form a positive frame.
pub fn algebraic_sign(a: &Chord, b: &Chord, orientation: Sign) -> Option<Sign> {
    if !chords_cross(a, b) {
        return None;
    }
    // b enters the counterclockwise arc side of a: cyclic order start_a,
    // start_b, end_a, end_b is a positive frame
    let local = if a.left_arc_contains(&b.start) {
        Sign::Pos
    } else {
        Sign::Neg
    };
    Some(local * orientation)
}

/// Whether the resolution pairing `a.start` with `b.end` (and `b.start`
/// with `a.end`) keeps both resulting arcs normal.
pub fn tail_to_tip_is_regular(a: &Chord, b: &Chord) -> bool {
    a.start.side != b.end.side && b.start.side != a.end.side
}

/// Normal sign of the crossing of two normal arcs in an oriented face.
///
/// The arcs are reoriented so that `(a, b)` agrees with the face
/// orientation; the crossing is positive when the regular exchange joins
/// the tail of `a` to the tip of `b`. The input directions are irrelevant.
pub fn crossing_sign(a: &Chord, b: &Chord, orientation: Sign) -> Result<Sign, IntersectionError> {
    if !a.is_normal() || !b.is_normal() {
        return Err(IntersectionError::NotNormal);
    }
    let alg = algebraic_sign(a, b, orientation).ok_or(IntersectionError::NoCrossing)?;
    let b = if alg == Sign::Pos { *b } else { b.reversed() };
    Ok(if tail_to_tip_is_regular(a, &b) {
        Sign::Pos
    } else {
        Sign::Neg
    })
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

/// Same as [`crossing_sign`], decided with planar orientation predicates
/// on the chords' coordinates instead of cyclic order.
pub fn planar_crossing_sign(a: &Chord, b: &Chord, orientation: Sign) -> Result<Sign, IntersectionError> {
    if !a.is_normal() || !b.is_normal() {
        return Err(IntersectionError::NotNormal);
    }
    let (p, q) = (a.start.planar(), a.end.planar());
    let (r, s) = (b.start.planar(), b.end.planar());
    let d1 = cross(sub(q, p), sub(r, p));
    let d2 = cross(sub(q, p), sub(s, p));
    let d3 = cross(sub(s, r), sub(p, r));
    let d4 = cross(sub(s, r), sub(q, r));
    if !(d1 * d2 < 0.0 && d3 * d4 < 0.0) {
        return Err(IntersectionError::NoCrossing);
    }
    let frame = cross(sub(q, p), sub(s, r));
    let alg = if frame > 0.0 { Sign::Pos } else { Sign::Neg } * orientation;
    let b = if alg == Sign::Pos { *b } else { b.reversed() };
    Ok(if tail_to_tip_is_regular(a, &b) {
        Sign::Pos
    } else {
        Sign::Neg
    })
}

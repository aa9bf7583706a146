//! Disk pieces of locally helical surfaces: triangles and helicoids, with
//! axes, handedness and signed twisting.
//!
//! Handedness is fixed against a positively oriented tetrahedron: a
//! helicoid with axis pair `k` is right-handed when the arc class its
//! boundary avoids (the class of its heaviest pair) is `k.next()`. Even
//! vertex relabelings rotate the three pairs cyclically, so this does not
//! depend on the labels; negative orientation swaps the two hands.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::normal_curves::{parse_call, CurveSystem, EdgePair, LongLoop, NormalLoop};
use crate::tet::Sign;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HelicoidError {
    #[error("{axis} is not an axis of {boundary}")]
    InvalidAxis { axis: EdgePair, boundary: NormalLoop },
    #[error("loop {0} meets no pair of opposite edges exactly once")]
    NotHelicoid(NormalLoop),
    #[error("cannot parse piece literal `{0}`")]
    Literal(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Hand {
    Left,
    Right,
}

impl Hand {
    pub fn flip(self) -> Hand {
        match self {
            Hand::Left => Hand::Right,
            Hand::Right => Hand::Left,
        }
    }

    pub fn oriented(self, orientation: Sign) -> Hand {
        match orientation {
            Sign::Pos => self,
            Sign::Neg => self.flip(),
        }
    }

    pub fn sign(self) -> i64 {
        match self {
            Hand::Right => 1,
            Hand::Left => -1,
        }
    }
}

impl fmt::Display for Hand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Hand::Left => "left",
            Hand::Right => "right",
        })
    }
}

/// The avoided class that makes a helicoid right-handed about `axis` in a
/// positively oriented tetrahedron.
pub fn right_handed_type(axis: EdgePair) -> EdgePair {
    axis.next()
}

/// Pairs met exactly once by `l`.
pub fn detect_axes(l: &NormalLoop) -> Vec<EdgePair> {
    match l {
        NormalLoop::VertexLink(_) => Vec::new(),
        NormalLoop::Long(l) => EdgePair::ALL
            .into_iter()
            .filter(|&p| l.pair_weight(p) == 1)
            .collect(),
    }
}

/// A helicoid, recorded by one of its axes, its twist magnitude and its
/// handedness about that axis in a positively oriented tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HelicoidPiece {
    axis: EdgePair,
    magnitude: u32,
    hand: Hand,
}

impl HelicoidPiece {
    pub fn new(axis: EdgePair, magnitude: u32, hand: Hand) -> Self {
        HelicoidPiece { axis, magnitude, hand }
    }

    /// Helicoid with signed twist `twist` about `axis` (positive
    /// orientation); twist 0 is taken right-handed.
    pub fn with_twist(axis: EdgePair, twist: i64) -> Self {
        let hand = if twist < 0 { Hand::Left } else { Hand::Right };
        HelicoidPiece::new(axis, twist.unsigned_abs() as u32, hand)
    }

    /// Reads a helicoid off its boundary, with respect to `axis`.
    pub fn from_boundary(l: &LongLoop, axis: EdgePair) -> Result<Self, HelicoidError> {
        if l.pair_weight(axis) != 1 {
            return Err(HelicoidError::InvalidAxis {
                axis,
                boundary: NormalLoop::Long(*l),
            });
        }
        let (a, b) = (axis.next(), axis.prev());
        let (wa, wb) = (l.pair_weight(a), l.pair_weight(b));
        // the heavier of the two other pairs is the avoided class
        let (heavy, magnitude) = if wa > wb { (a, wb) } else { (b, wa) };
        let hand = if heavy == right_handed_type(axis) {
            Hand::Right
        } else {
            Hand::Left
        };
        Ok(HelicoidPiece::new(axis, magnitude, hand))
    }

    pub fn axis(&self) -> EdgePair {
        self.axis
    }

    pub fn magnitude(&self) -> u32 {
        self.magnitude
    }

    pub fn hand(&self) -> Hand {
        self.hand
    }

    /// Pair weights of the boundary.
    pub fn pairs(&self) -> [u32; 3] {
        let mut p = [self.magnitude; 3];
        p[self.axis.index()] = 1;
        let heavy = match self.hand {
            Hand::Right => right_handed_type(self.axis),
            Hand::Left => self.axis.prev(),
        };
        p[heavy.index()] = self.magnitude + 1;
        p
    }

    pub fn boundary(&self) -> LongLoop {
        LongLoop::from_pairs(self.pairs()).expect("helicoid boundaries are primitive")
    }

    pub fn boundary_length(&self) -> u32 {
        4 * (self.magnitude + 1)
    }

    pub fn axes(&self) -> Vec<EdgePair> {
        detect_axes(&NormalLoop::Long(self.boundary()))
    }

    /// Same piece, recorded against another of its axes.
    pub fn about(&self, axis: EdgePair) -> Result<Self, HelicoidError> {
        HelicoidPiece::from_boundary(&self.boundary(), axis)
    }

    pub fn handedness(&self, axis: EdgePair, orientation: Sign) -> Result<Hand, HelicoidError> {
        Ok(self.about(axis)?.hand.oriented(orientation))
    }

    /// `+n` when right-handed about `axis`, `-n` when left-handed.
    pub fn twisting(&self, axis: EdgePair, orientation: Sign) -> Result<i64, HelicoidError> {
        let h = self.about(axis)?;
        Ok(h.hand.oriented(orientation).sign() * h.magnitude as i64)
    }

    /// Signed twist about the recorded axis, positive orientation.
    pub fn signed_twist(&self) -> i64 {
        self.hand.sign() * self.magnitude as i64
    }
}

impl fmt::Display for HelicoidPiece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.axis.endpoints();
        write!(f, "helix(axis=[[{a},{b}],[{c},{d}]], twist={}", self.signed_twist())?;
        if self.magnitude == 0 {
            write!(f, ", hand={}", self.hand)?;
        }
        write!(f, ")")
    }
}

/// Every helicoid with twist magnitude at most `max_twist`, one entry per
/// distinct boundary.
pub fn enumerate_helicoids(max_twist: u32) -> Vec<HelicoidPiece> {
    let mut out: Vec<HelicoidPiece> = Vec::new();
    for n in 0..=max_twist {
        for axis in EdgePair::ALL {
            for hand in [Hand::Right, Hand::Left] {
                let h = HelicoidPiece::new(axis, n, hand);
                if !out.iter().any(|g| g.pairs() == h.pairs()) {
                    out.push(h);
                }
            }
        }
    }
    out
}

/// A disk piece in one tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Piece {
    Triangle { vertex: usize },
    Helicoid(HelicoidPiece),
}

impl Piece {
    pub fn boundary(&self) -> NormalLoop {
        match self {
            Piece::Triangle { vertex } => NormalLoop::VertexLink(*vertex),
            Piece::Helicoid(h) => NormalLoop::Long(h.boundary()),
        }
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Piece::Triangle { vertex } => write!(f, "tri({vertex})"),
            Piece::Helicoid(h) => h.fmt(f),
        }
    }
}

fn parse_axis(s: &str) -> Option<EdgePair> {
    let digits: Vec<usize> = s
        .chars()
        .filter(|c| !matches!(c, '[' | ']' | ',' | ' '))
        .map(|c| c.to_digit(10).map(|d| d as usize))
        .collect::<Option<_>>()?;
    let [a, b, c, d]: [usize; 4] = digits.try_into().ok()?;
    let p = EdgePair::from_vertices(a, b)?;
    let q = EdgePair::from_vertices(c, d)?;
    let mut all = [a, b, c, d];
    all.sort_unstable();
    (p == q && all == [0, 1, 2, 3]).then_some(p)
}

impl FromStr for Piece {
    type Err = HelicoidError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || HelicoidError::Literal(s.to_string());
        if let Some(inner) = parse_call(s, "tri") {
            let vertex: usize = inner.trim().parse().map_err(|_| bad())?;
            if vertex > 3 {
                return Err(bad());
            }
            return Ok(Piece::Triangle { vertex });
        }
        let inner = parse_call(s, "helix").ok_or_else(bad)?;
        let rest = inner.trim().strip_prefix("axis").ok_or_else(bad)?;
        let rest = rest.trim_start().strip_prefix('=').ok_or_else(bad)?.trim_start();
        let close = rest.find("]]").ok_or_else(bad)?;
        let axis = parse_axis(&rest[..close + 2]).ok_or_else(bad)?;
        let (mut twist, mut hand) = (None, None);
        for field in rest[close + 2..].split(',').map(str::trim).filter(|f| !f.is_empty()) {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "twist" => twist = Some(value.trim().parse::<i64>().map_err(|_| bad())?),
                "hand" => {
                    hand = Some(match value.trim() {
                        "left" => Hand::Left,
                        "right" => Hand::Right,
                        _ => return Err(bad()),
                    })
                }
                _ => return Err(bad()),
            }
        }
        let twist = twist.ok_or_else(bad)?;
        let h = match (twist, hand) {
            (0, Some(hand)) => HelicoidPiece::new(axis, 0, hand),
            (t, None) => HelicoidPiece::with_twist(axis, t),
            (t, Some(hand)) if hand.sign() == t.signum() => HelicoidPiece::with_twist(axis, t),
            _ => return Err(bad()),
        };
        Ok(Piece::Helicoid(h))
    }
}

/// Boundary curves of `copies` parallel copies of `h`.
pub fn boundary_system(h: &HelicoidPiece, copies: u32) -> CurveSystem {
    CurveSystem::new([0; 4], Some((h.boundary(), copies)))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pair(i: usize) -> EdgePair {
        EdgePair::new(i).unwrap()
    }

    #[test]
    fn twist_three_helicoid_from_its_weights() {
        let l = LongLoop::new([1, 1, 3, 3, 4, 4]).unwrap();
        assert_eq!(detect_axes(&NormalLoop::Long(l)), vec![pair(0)]);
        let h = HelicoidPiece::from_boundary(&l, pair(0)).unwrap();
        assert_eq!(h.magnitude(), 3);
        assert_eq!(h.boundary_length(), 16);
        assert_eq!(h.twisting(pair(0), Sign::Pos).unwrap().abs(), 3);
        assert_eq!(
            h.twisting(pair(0), Sign::Neg).unwrap(),
            -h.twisting(pair(0), Sign::Pos).unwrap()
        );
        assert!(HelicoidPiece::from_boundary(&l, pair(1)).is_err());
    }

    #[test]
    fn quads_and_octagons_have_two_axes() {
        for h in enumerate_helicoids(1) {
            let axes = h.axes();
            assert_eq!(axes.len(), 2, "{h}");
            let t: Vec<i64> = axes.iter().map(|&a| h.twisting(a, Sign::Pos).unwrap()).collect();
            if h.magnitude() == 0 {
                assert_eq!(t, vec![0, 0]);
            } else {
                assert_eq!(t[0], -t[1]);
                assert_eq!(t[0].abs(), 1);
            }
        }
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_helicoids(0).len(), 3);
        assert_eq!(enumerate_helicoids(1).len(), 6);
        for n in 2..=6 {
            assert_eq!(enumerate_helicoids(n).len(), 6 + 6 * (n as usize - 1));
        }
    }

    #[test]
    fn no_axis_without_a_unit_pair() {
        let l = NormalLoop::long([2, 2, 3, 3, 5, 5]).unwrap();
        assert!(detect_axes(&l).is_empty());
    }

    #[test]
    fn literals_round_trip() {
        for h in enumerate_helicoids(4) {
            let p = Piece::Helicoid(h);
            assert_eq!(p.to_string().parse::<Piece>().unwrap(), p);
        }
        assert_eq!("tri(2)".parse::<Piece>().unwrap(), Piece::Triangle { vertex: 2 });
        assert!("helix(axis=[[0,2],[1,3]], twist=2)".parse::<Piece>().is_ok());
        assert!("helix(axis=[[0,1],[0,2]], twist=2)".parse::<Piece>().is_err());
        assert!("helix(axis=[[0,1],[2,3]], twist=2, hand=left)".parse::<Piece>().is_err());
    }
}

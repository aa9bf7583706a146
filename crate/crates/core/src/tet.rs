//! Fixed combinatorics of a single labelled tetrahedron.
//!
//! Vertices are `0..4`. Face `f` is the face opposite vertex `f`. The six
//! edges are indexed so that edges `2i` and `2i + 1` are opposite; together
//! they form [`EdgePair`](crate::normal_curves::EdgePair) `i`:
//!
//! | index | edge | pair |
//! |-------|------|------|
//! | 0     | 01   | 0    |
//! | 1     | 23   | 0    |
//! | 2     | 02   | 1    |
//! | 3     | 13   | 1    |
//! | 4     | 03   | 2    |
//! | 5     | 12   | 2    |

use std::fmt;
use std::ops::{Mul, Neg};

use serde::{Deserialize, Serialize};

/// Endpoints of each edge, lower vertex first.
pub const EDGES: [[usize; 2]; 6] = [[0, 1], [2, 3], [0, 2], [1, 3], [0, 3], [1, 2]];

/// Index of the edge joining `a` and `b`.
pub fn edge_index(a: usize, b: usize) -> usize {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    match (lo, hi) {
        (0, 1) => 0,
        (2, 3) => 1,
        (0, 2) => 2,
        (1, 3) => 3,
        (0, 3) => 4,
        (1, 2) => 5,
        _ => panic!("no edge between vertices {a} and {b}"),
    }
}

/// Edge opposite to `e`.
pub fn opposite_edge(e: usize) -> usize {
    e ^ 1
}

/// Vertices of face `f` in increasing order.
pub fn face_vertices(f: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for v in 0..4 {
        if v != f {
            out[k] = v;
            k += 1;
        }
    }
    out
}

/// The two faces containing edge `e`.
pub fn edge_faces(e: usize) -> [usize; 2] {
    // faces containing {a,b} are those opposite the remaining two vertices
    let [a, b] = EDGES[e];
    let mut out = [0; 2];
    let mut k = 0;
    for f in 0..4 {
        if f != a && f != b {
            out[k] = f;
            k += 1;
        }
    }
    out
}

/// The three edges incident to vertex `v`.
pub fn vertex_edges(v: usize) -> [usize; 3] {
    let mut out = [0; 3];
    let mut k = 0;
    for (e, ends) in EDGES.iter().enumerate() {
        if ends.contains(&v) {
            out[k] = e;
            k += 1;
        }
    }
    out
}

/// Returns whether `e` has `v` as an endpoint.
pub fn edge_has_vertex(e: usize, v: usize) -> bool {
    EDGES[e].contains(&v)
}

/// Endpoint of `e` other than `v`.
pub fn other_end(e: usize, v: usize) -> usize {
    let [a, b] = EDGES[e];
    if a == v {
        b
    } else {
        debug_assert_eq!(b, v);
        a
    }
}

/// Parity of a permutation of `0..n`, `+1` for even.
pub fn permutation_parity(perm: &[usize]) -> Sign {
    let mut inversions = 0;
    for i in 0..perm.len() {
        for j in i + 1..perm.len() {
            if perm[i] > perm[j] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        Sign::Pos
    } else {
        Sign::Neg
    }
}

/// A sign, used for orientations and crossing signs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Sign {
    #[serde(rename = "-")]
    Neg,
    #[serde(rename = "+")]
    Pos,
}

impl Sign {
    pub fn as_i64(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }

    pub fn from_i64(x: i64) -> Option<Sign> {
        match x.signum() {
            1 => Some(Sign::Pos),
            -1 => Some(Sign::Neg),
            _ => None,
        }
    }
}

impl Neg for Sign {
    type Output = Sign;
    fn neg(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }
}

impl Mul for Sign {
    type Output = Sign;
    fn mul(self, rhs: Sign) -> Sign {
        if self == rhs {
            Sign::Pos
        } else {
            Sign::Neg
        }
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+",
            Sign::Neg => "-",
        })
    }
}

/// Orientation induced on face `f` by a tetrahedron of sign `tet`, expressed
/// as a sign relative to the increasing vertex order of the face.
///
/// The oriented boundary of `[0,1,2,3]` is `Σ (-1)^i [face i]`.
pub fn face_orientation(f: usize, tet: Sign) -> Sign {
    let base = if f.is_multiple_of(2) { Sign::Pos } else { Sign::Neg };
    base * tet
}

/// Vertices of face `f` in counterclockwise order with respect to the given
/// face orientation (increasing order when positive).
pub fn face_cycle(f: usize, orientation: Sign) -> [usize; 3] {
    let [x, y, z] = face_vertices(f);
    match orientation {
        Sign::Pos => [x, y, z],
        Sign::Neg => [x, z, y],
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn opposite_edges_are_disjoint() {
        for e in 0..6 {
            let [a, b] = EDGES[e];
            let [c, d] = EDGES[opposite_edge(e)];
            assert!(a != c && a != d && b != c && b != d);
            assert_eq!(edge_index(a, b), e);
            assert_eq!(edge_index(b, a), e);
        }
    }

    #[test]
    fn each_face_has_three_edges_and_each_edge_two_faces() {
        for e in 0..6 {
            for f in edge_faces(e) {
                let vs = face_vertices(f);
                assert!(EDGES[e].iter().all(|v| vs.contains(v)));
            }
        }
        for v in 0..4 {
            let es = vertex_edges(v);
            let pairs: Vec<_> = es.iter().map(|e| e / 2).collect();
            assert!(pairs.contains(&0) && pairs.contains(&1) && pairs.contains(&2));
        }
    }

    #[test]
    fn boundary_orientation_alternates() {
        assert_eq!(face_orientation(0, Sign::Pos), Sign::Pos);
        assert_eq!(face_orientation(1, Sign::Pos), Sign::Neg);
        assert_eq!(face_orientation(3, Sign::Neg), Sign::Pos);
    }

    #[test]
    fn parity_of_small_permutations() {
        assert_eq!(permutation_parity(&[0, 1, 2, 3]), Sign::Pos);
        assert_eq!(permutation_parity(&[1, 0, 2, 3]), Sign::Neg);
        assert_eq!(permutation_parity(&[1, 2, 0, 3]), Sign::Pos);
    }
}

//! Lifting drawn strands to the torus that double covers the boundary.
//!
//! A strand is developed into the plane tiled by the triangular lattice of
//! [`super::geodesic`]: each normal arc lands in a lattice triangle, and
//! crossing an edge steps to the neighbouring triangle. After one trip
//! around the strand the developed path ends in the image of the starting
//! triangle under a deck transformation. A translation by `2 d` means both
//! lifts to the torus close up with homology classes `±d`; a half-turn means
//! the strand encircles a cone point and its lift is null-homologous.
//!
//! Each crossing downstairs lifts to two crossings upstairs, so two strands
//! with displacements `d`, `d'` meet at least `2 |det(d, d')|` times in any
//! drawing. This bound comes from the traced arcs alone.

use crate::normal_curves::lattice_vertex;
use crate::tet::EDGES;

use super::realization::{Owner, Realization};

/// Lattice triangle: `Up(i, j)` has corners `(i,j), (i+1,j), (i,j+1)`;
/// `Down(i, j)` has corners `(i+1,j), (i,j+1), (i+1,j+1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tri {
    Up(i64, i64),
    Down(i64, i64),
}

impl Tri {
    fn corners(self) -> [(i64, i64); 3] {
        match self {
            Tri::Up(i, j) => [(i, j), (i + 1, j), (i, j + 1)],
            Tri::Down(i, j) => [(i + 1, j), (i, j + 1), (i + 1, j + 1)],
        }
    }

    /// Tetrahedron face this triangle covers.
    fn face(self) -> usize {
        let vs = self.corners().map(|(i, j)| lattice_vertex(i, j));
        (0..4).find(|v| !vs.contains(v)).expect("three distinct vertices")
    }

    /// Neighbour across the lattice edge covering tetrahedron edge `e`.
    fn across(self, e: usize) -> Tri {
        let [a, b] = EDGES[e];
        let c = self.corners();
        let lbl = c.map(|(i, j)| lattice_vertex(i, j));
        let missing = (0..3).find(|&k| lbl[k] != a && lbl[k] != b).expect("edge lies in face");
        match (self, missing) {
            (Tri::Up(i, j), 2) => Tri::Down(i, j - 1),
            (Tri::Up(i, j), 1) => Tri::Down(i - 1, j),
            (Tri::Up(i, j), _) => Tri::Down(i, j),
            (Tri::Down(i, j), 0) => Tri::Up(i, j + 1),
            (Tri::Down(i, j), 1) => Tri::Up(i + 1, j),
            (Tri::Down(i, j), _) => Tri::Up(i, j),
        }
    }

    fn covering(face: usize) -> Tri {
        [Tri::Up(0, 0), Tri::Up(1, 0), Tri::Up(0, 1), Tri::Up(1, 1)]
            .into_iter()
            .find(|t| t.face() == face)
            .expect("every face is covered by an up triangle")
    }
}

/// Homology class of a strand's lift, in lattice coordinates; `(0, 0)` for
/// strands around a cone point.
pub fn strand_displacement(real: &Realization, start_arc: usize) -> (i64, i64) {
    let walk = real.walk(start_arc);
    let arcs = real.arcs();
    let start = Tri::covering(arcs[start_arc].face);
    let mut tri = start;
    for &(arc, exit) in &walk {
        debug_assert_eq!(tri.face(), arcs[arc].face);
        tri = tri.across(arcs[arc].ends[exit].edge);
    }
    match (start, tri) {
        (Tri::Up(i, j), Tri::Up(k, l)) => {
            debug_assert!((k - i) % 2 == 0 && (l - j) % 2 == 0);
            ((k - i) / 2, (l - j) / 2)
        }
        _ => (0, 0),
    }
}

/// Displacements of every strand of `owner`, indexed by strand id.
pub fn displacements(real: &Realization, owner: Owner) -> Vec<(i64, i64)> {
    let mut out = vec![None; real.strand_count(owner)];
    for (id, arc) in real.arcs().iter().enumerate() {
        if arc.owner == owner && out[arc.strand].is_none() {
            out[arc.strand] = Some(strand_displacement(real, id));
        }
    }
    out.into_iter().map(|d| d.expect("every strand has an arc")).collect()
}

/// Lower bound on the crossings of any drawing of the two systems.
pub fn crossing_lower_bound(real: &Realization) -> u64 {
    let da = displacements(real, Owner::A);
    let db = displacements(real, Owner::B);
    let mut total = 0;
    for a in &da {
        for b in &db {
            total += 2 * (a.0 * b.1 - a.1 * b.0).unsigned_abs();
        }
    }
    total
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intersection::realization::stacked_interleaving;
    use crate::normal_curves::{CurveSystem, LongLoop, NormalLoop};
    use crate::tet::Sign;

    fn sys(pairs: [u32; 3]) -> CurveSystem {
        CurveSystem::single(NormalLoop::Long(LongLoop::from_pairs(pairs).unwrap()))
    }

    #[test]
    fn covering_triangles_land_on_their_faces() {
        for f in 0..4 {
            let t = Tri::covering(f);
            assert_eq!(t.face(), f);
            for e in 0..6 {
                let [a, b] = EDGES[e];
                if a != f && b != f {
                    let n = t.across(e);
                    assert_ne!(n.face(), f);
                    assert_eq!(n.across(e), t);
                }
            }
        }
    }

    #[test]
    fn traced_displacement_matches_slope() {
        for pairs in [[1, 0, 1], [0, 1, 1], [1, 1, 0], [1, 2, 3], [3, 1, 2], [5, 3, 2]] {
            let a = sys(pairs);
            let real = Realization::new(&a, &CurveSystem::default(), stacked_interleaving(&a, &CurveSystem::default()), Sign::Pos).unwrap();
            let d = displacements(&real, Owner::A);
            assert_eq!(d.len(), 1);
            let s = a.slope().unwrap();
            assert!(d[0] == (s.p(), s.q()) || d[0] == (-s.p(), -s.q()), "{pairs:?}: {d:?} vs {s}");
        }
    }

    #[test]
    fn vertex_links_lift_trivially() {
        let a = CurveSystem::new([1, 0, 2, 0], None);
        let e = CurveSystem::default();
        let real = Realization::new(&a, &e, stacked_interleaving(&a, &e), Sign::Pos).unwrap();
        assert!(displacements(&real, Owner::A).iter().all(|&d| d == (0, 0)));
    }
}

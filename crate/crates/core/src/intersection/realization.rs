use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::normal_curves::CurveSystem;
use crate::tet::{edge_faces, edge_index, face_orientation, face_vertices, Sign, EDGES};

use super::chord::{crossing_sign, Chord, FacePoint};
use super::IntersectionError;

/// Which of the two curve systems a marker or arc belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Owner {
    A,
    B,
}

impl Owner {
    pub fn index(self) -> usize {
        match self {
            Owner::A => 0,
            Owner::B => 1,
        }
    }

    pub fn other(self) -> Owner {
        match self {
            Owner::A => Owner::B,
            Owner::B => Owner::A,
        }
    }
}

/// Order of the two systems' points along each edge, listed from the
/// lower-numbered endpoint.
pub type Interleaving = [Vec<Owner>; 6];

/// Interleaving with every `A` point before every `B` point.
pub fn stacked_interleaving(a: &CurveSystem, b: &CurveSystem) -> Interleaving {
    let (wa, wb) = (a.weights(), b.weights());
    std::array::from_fn(|e| {
        let mut v = vec![Owner::A; wa[e] as usize];
        v.extend(std::iter::repeat_n(Owner::B, wb[e] as usize));
        v
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MarkerRef {
    pub edge: usize,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizedArc {
    pub face: usize,
    pub corner: usize,
    pub owner: Owner,
    /// Component of the owner's system this arc lies on.
    pub strand: usize,
    pub ends: [MarkerRef; 2],
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SignedCrossing {
    pub face: usize,
    /// Arc ids of the `A` arc and the `B` arc.
    pub arcs: [usize; 2],
    /// Normal sign of the ordered pair `(A arc, B arc)`.
    pub sign: Sign,
}

/// Two curve systems drawn together on one tetrahedron boundary with
/// straight normal arcs.
#[derive(Debug, Clone)]
pub struct Realization {
    orientation: Sign,
    systems: [CurveSystem; 2],
    edges: Interleaving,
    arcs: Vec<RealizedArc>,
    /// `marker_arcs[edge][index]` holds the arc on each adjacent face, in
    /// the order of [`edge_faces`].
    marker_arcs: [Vec<[usize; 2]>; 6],
    strand_counts: [usize; 2],
    crossings: Vec<SignedCrossing>,
}

impl Realization {
    pub fn new(
        a: &CurveSystem,
        b: &CurveSystem,
        edges: Interleaving,
        orientation: Sign,
    ) -> Result<Self, IntersectionError> {
        let systems = [*a, *b];
        for (e, order) in edges.iter().enumerate() {
            for owner in [Owner::A, Owner::B] {
                let have = order.iter().filter(|&&o| o == owner).count();
                let want = systems[owner.index()].weights()[e] as usize;
                if have != want {
                    return Err(IntersectionError::InterleavingMismatch { edge: e, owner, have, want });
                }
            }
        }

        let mut arcs = Vec::new();
        let mut marker_arcs: [Vec<[usize; 2]>; 6] =
            std::array::from_fn(|e| vec![[usize::MAX; 2]; edges[e].len()]);
        for owner in [Owner::A, Owner::B] {
            let sys = &systems[owner.index()];
            // positions of this owner's markers on each edge, from the lower end
            let own: [Vec<usize>; 6] = std::array::from_fn(|e| {
                edges[e]
                    .iter()
                    .enumerate()
                    .filter(|(_, &o)| o == owner)
                    .map(|(i, _)| i)
                    .collect()
            });
            for f in 0..4 {
                for v in face_vertices(f) {
                    for depth in 0..sys.corner_arcs(f, v) as usize {
                        let id = arcs.len();
                        let mut ends = [MarkerRef { edge: 0, index: 0 }; 2];
                        let others = face_vertices(f).into_iter().filter(|&x| x != v);
                        for (slot, o) in others.enumerate() {
                            let e = edge_index(v, o);
                            let list = &own[e];
                            let index = if EDGES[e][0] == v {
                                list[depth]
                            } else {
                                list[list.len() - 1 - depth]
                            };
                            let side = usize::from(edge_faces(e)[1] == f);
                            marker_arcs[e][index][side] = id;
                            ends[slot] = MarkerRef { edge: e, index };
                        }
                        arcs.push(RealizedArc {
                            face: f,
                            corner: v,
                            owner,
                            strand: usize::MAX,
                            ends,
                        });
                    }
                }
            }
        }

        let mut real = Realization {
            orientation,
            systems,
            edges,
            arcs,
            marker_arcs,
            strand_counts: [0; 2],
            crossings: Vec::new(),
        };
        real.label_strands();
        real.crossings = real.compute_crossings();
        Ok(real)
    }

    fn label_strands(&mut self) {
        for id in 0..self.arcs.len() {
            if self.arcs[id].strand != usize::MAX {
                continue;
            }
            let owner = self.arcs[id].owner;
            let strand = self.strand_counts[owner.index()];
            self.strand_counts[owner.index()] += 1;
            for (arc, _) in self.walk(id) {
                self.arcs[arc].strand = strand;
            }
        }
    }

    /// Arcs of the component through `start`, in order, each with the end
    /// (0 or 1) it is left through.
    pub fn walk(&self, start: usize) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        let mut cur = start;
        let mut exit = 1;
        loop {
            out.push((cur, exit));
            let m = self.arcs[cur].ends[exit];
            let [x, y] = self.marker_arcs[m.edge][m.index];
            let next = if x == cur { y } else { x };
            if next == start {
                return out;
            }
            exit = if self.arcs[next].ends[0] == m { 1 } else { 0 };
            cur = next;
        }
    }

    pub fn orientation(&self) -> Sign {
        self.orientation
    }

    pub fn system(&self, owner: Owner) -> &CurveSystem {
        &self.systems[owner.index()]
    }

    pub fn interleaving(&self) -> &Interleaving {
        &self.edges
    }

    pub fn arcs(&self) -> &[RealizedArc] {
        &self.arcs
    }

    pub fn strand_count(&self, owner: Owner) -> usize {
        self.strand_counts[owner.index()]
    }

    pub fn marker_arcs(&self, m: MarkerRef) -> [usize; 2] {
        self.marker_arcs[m.edge][m.index]
    }

    pub fn face_orientation(&self, f: usize) -> Sign {
        face_orientation(f, self.orientation)
    }

    /// Boundary point of a marker in the local frame of face `f`, whose
    /// corners are the face's vertices in increasing order.
    pub fn face_point(&self, f: usize, m: MarkerRef) -> FacePoint {
        let [x, y, z] = face_vertices(f);
        let n = self.edges[m.edge].len() as f64;
        let from_lower = (m.index as f64 + 1.0) / (n + 1.0);
        let [lo, hi] = EDGES[m.edge];
        if (lo, hi) == (x, y) {
            FacePoint::new(0, from_lower)
        } else if (lo, hi) == (y, z) {
            FacePoint::new(1, from_lower)
        } else {
            debug_assert_eq!((lo, hi), (x, z));
            FacePoint::new(2, 1.0 - from_lower)
        }
    }

    /// Chord of an arc, directed from its end 0 to its end 1.
    pub fn chord(&self, arc: usize) -> Chord {
        let a = &self.arcs[arc];
        Chord::new(self.face_point(a.face, a.ends[0]), self.face_point(a.face, a.ends[1]))
    }

    fn compute_crossings(&self) -> Vec<SignedCrossing> {
        let mut out = Vec::new();
        for f in 0..4 {
            let o = self.face_orientation(f);
            let (mut a_arcs, mut b_arcs) = (Vec::new(), Vec::new());
            for (id, arc) in self.arcs.iter().enumerate().filter(|(_, a)| a.face == f) {
                match arc.owner {
                    Owner::A => a_arcs.push(id),
                    Owner::B => b_arcs.push(id),
                }
            }
            for &x in &a_arcs {
                let cx = self.chord(x);
                for &y in &b_arcs {
                    if let Ok(sign) = crossing_sign(&cx, &self.chord(y), o) {
                        out.push(SignedCrossing { face: f, arcs: [x, y], sign });
                    }
                }
            }
        }
        out
    }

    pub fn crossings(&self) -> &[SignedCrossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Positive minus negative crossings of `A` against `B`.
    pub fn eta(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.as_i64()).sum()
    }

    pub fn sign_counts(&self) -> (usize, usize) {
        let pos = self.crossings.iter().filter(|c| c.sign == Sign::Pos).count();
        (pos, self.crossings.len() - pos)
    }

    /// Text dump: marker order on each edge, then arcs and signed crossings
    /// per face.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "tet orientation {}", self.orientation);
        for (e, order) in self.edges.iter().enumerate() {
            let [a, b] = EDGES[e];
            let _ = write!(s, "edge {a}{b}:");
            for (i, owner) in order.iter().enumerate() {
                let arc = self.marker_arcs[e][i][0];
                let _ = write!(s, " {owner:?}{}", self.arcs[arc].strand);
            }
            let _ = writeln!(s);
        }
        for f in 0..4 {
            let _ = writeln!(s, "face {f} ({}):", self.face_orientation(f));
            for (id, a) in self.arcs.iter().enumerate().filter(|(_, a)| a.face == f) {
                let [m0, m1] = a.ends;
                let [p, q] = [EDGES[m0.edge], EDGES[m1.edge]];
                let _ = writeln!(
                    s,
                    "  arc {id} {:?}{} corner {} {}{}#{} -> {}{}#{}",
                    a.owner, a.strand, a.corner, p[0], p[1], m0.index, q[0], q[1], m1.index
                );
            }
            for c in self.crossings.iter().filter(|c| c.face == f) {
                let _ = writeln!(s, "  cross arc {} x arc {} {}", c.arcs[0], c.arcs[1], c.sign);
            }
        }
        s
    }
}

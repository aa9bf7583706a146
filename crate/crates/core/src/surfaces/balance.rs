//! Two surfaces drawn together on the 2-skeleton, and the signs of their
//! boundary crossings.
//!
//! Markers on each edge class of the triangulation are ordered once, and
//! every tetrahedron edge in the class inherits that order, so the arcs
//! drawn in the two tetrahedra at a face coincide.

use serde::Serialize;

use crate::intersection::{MarkerRef, Owner, Realization};
use crate::tet::{edge_index, face_vertices, Sign, EDGES};
use crate::triangulation::{ClosedTriangulation, Face};

use super::consistency::{compatible_outside, Subcomplex};
use super::{LocallyHelicalSurface, SurfaceError};

/// How markers of the two surfaces are interleaved along each edge class.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DrawingStrategy {
    /// All of the first surface's markers, then all of the second's.
    Stacked,
    /// A pseudo-random order from the seed.
    Shuffled(u64),
}

/// Edge classes as a union-find over `(tet, edge)` nodes, remembering
/// whether each node runs against its root.
struct EdgeClasses {
    parent: Vec<usize>,
    flip: Vec<bool>,
}

impl EdgeClasses {
    fn new(m: &ClosedTriangulation) -> Self {
        let n = 6 * m.tet_count();
        let mut uf = EdgeClasses { parent: (0..n).collect(), flip: vec![false; n] };
        for g in m.triangulation().gluings() {
            let map = g.vertex_map();
            let [x, y, z] = face_vertices(g.from.face);
            for (a, b) in [(x, y), (y, z), (x, z)] {
                let (c, d) = (map.apply(a), map.apply(b));
                uf.union(6 * g.from.tet + edge_index(a, b), 6 * g.to.tet + edge_index(c, d), c > d);
            }
        }
        uf
    }

    fn find(&mut self, x: usize) -> (usize, bool) {
        if self.parent[x] == x {
            return (x, false);
        }
        let (root, f) = self.find(self.parent[x]);
        self.parent[x] = root;
        self.flip[x] ^= f;
        (root, self.flip[x])
    }

    fn union(&mut self, x: usize, y: usize, reversed: bool) {
        let (rx, fx) = self.find(x);
        let (ry, fy) = self.find(y);
        if rx != ry {
            self.parent[ry] = rx;
            self.flip[ry] = fx ^ fy ^ reversed;
        }
    }
}

fn shuffle(v: &mut [Owner], mut state: u64) {
    for i in (1..v.len()).rev() {
        state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let j = ((state >> 33) as usize) % (i + 1);
        v.swap(i, j);
    }
}

/// Both surfaces drawn in every tetrahedron, agreeing across faces.
#[derive(Debug, Clone)]
pub struct GlobalDrawing {
    realizations: Vec<Realization>,
}

impl GlobalDrawing {
    /// Draws `h` (owner `A`) and `g` (owner `B`); both must match across
    /// every gluing.
    pub fn new(
        m: &ClosedTriangulation,
        h: &LocallyHelicalSurface,
        g: &LocallyHelicalSurface,
        strategy: DrawingStrategy,
    ) -> Result<Self, SurfaceError> {
        super::check_matching(m, h)?;
        super::check_matching(m, g)?;
        let mut classes = EdgeClasses::new(m);
        let n = 6 * m.tet_count();
        let mut orders: Vec<Option<Vec<Owner>>> = vec![None; n];
        for node in 0..n {
            let (root, _) = classes.find(node);
            if orders[root].is_none() {
                let (t, e) = (root / 6, root % 6);
                let (wa, wb) = (h.system(t).weights()[e], g.system(t).weights()[e]);
                let mut v = vec![Owner::A; wa as usize];
                v.extend(std::iter::repeat_n(Owner::B, wb as usize));
                if let DrawingStrategy::Shuffled(seed) = strategy {
                    shuffle(&mut v, seed ^ (root as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
                }
                orders[root] = Some(v);
            }
        }
        let realizations = (0..m.tet_count())
            .map(|t| {
                let il = std::array::from_fn(|e| {
                    let (root, flip) = classes.find(6 * t + e);
                    let mut v = orders[root].clone().expect("every class ordered");
                    if flip {
                        v.reverse();
                    }
                    v
                });
                Realization::new(&h.system(t), &g.system(t), il, m.orientation(t))
                    .expect("matching surfaces agree on edge weights")
            })
            .collect();
        Ok(GlobalDrawing { realizations })
    }

    pub fn realization(&self, tet: usize) -> &Realization {
        &self.realizations[tet]
    }

    /// Signed crossing counts `(positive, negative)` on face `f` as seen
    /// from its tetrahedron.
    pub fn face_signs(&self, f: Face) -> (usize, usize) {
        let r = &self.realizations[f.tet];
        let signs = r.crossings().iter().filter(|c| c.face == f.face).map(|c| c.sign);
        signs.fold((0, 0), |(p, n), s| if s == Sign::Pos { (p + 1, n) } else { (p, n + 1) })
    }

    /// Sum of the signed crossings over all faces of `tet`.
    pub fn eta(&self, tet: usize) -> i64 {
        self.realizations[tet].eta()
    }
}

/// Positive and negative crossings of `∂(H ∩ Δ)` with `∂(G ∩ Δ)` on the
/// faces where `Δ` meets the rest of the triangulation, with signs taken
/// from the tetrahedra of `Δ`.
pub fn boundary_sign_balance(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    g: &LocallyHelicalSurface,
    delta: &Subcomplex,
    strategy: DrawingStrategy,
) -> Result<(usize, usize), SurfaceError> {
    if !compatible_outside(m, h, g, delta) {
        return Err(SurfaceError::NotCompatibleOutside);
    }
    let d = GlobalDrawing::new(m, h, g, strategy)?;
    let (mut pos, mut neg) = (0, 0);
    for t in delta.iter() {
        for f in 0..4 {
            let face = Face::new(t, f);
            if delta.contains(m.glued_partner(face).0.tet) {
                continue;
            }
            let (p, n) = d.face_signs(face);
            pos += p;
            neg += n;
        }
    }
    Ok((pos, neg))
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct CancellationReport {
    pub faces: usize,
    pub crossings: usize,
    /// Crossings seen from only one side, or with equal signs from both.
    pub mismatches: usize,
}

/// Checks, crossing by crossing, that the two tetrahedra at every face
/// assign opposite signs.
pub fn interior_cancellation(m: &ClosedTriangulation, d: &GlobalDrawing) -> CancellationReport {
    let mut report = CancellationReport::default();
    for g in m.triangulation().gluings() {
        let map = g.vertex_map();
        let (rt, ru) = (d.realization(g.from.tet), d.realization(g.to.tet));
        let carry = |mk: MarkerRef| -> MarkerRef {
            let [a, b] = EDGES[mk.edge];
            let (c, e) = (map.apply(a), map.apply(b));
            let edge = edge_index(c, e);
            let len = ru.interleaving()[edge].len();
            let index = if c < e { mk.index } else { len - 1 - mk.index };
            MarkerRef { edge, index }
        };
        let key = |r: &Realization, arcs: [usize; 2], f: &dyn Fn(MarkerRef) -> MarkerRef| {
            arcs.map(|a| {
                let mut ends = r.arcs()[a].ends.map(f);
                ends.sort();
                ends
            })
        };
        let from: Vec<_> = rt
            .crossings()
            .iter()
            .filter(|c| c.face == g.from.face)
            .map(|c| (key(rt, c.arcs, &carry), c.sign))
            .collect();
        let to: Vec<_> = ru
            .crossings()
            .iter()
            .filter(|c| c.face == g.to.face)
            .map(|c| (key(ru, c.arcs, &|mk| mk), c.sign))
            .collect();
        report.faces += 1;
        report.crossings += from.len();
        for (k, s) in &from {
            if !to.iter().any(|(k2, s2)| k2 == k && *s2 == -*s) {
                report.mismatches += 1;
            }
        }
        report.mismatches += to.len().saturating_sub(from.len());
    }
    report
}

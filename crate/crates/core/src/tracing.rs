//! Brute-force arc tracing on a single tetrahedron boundary.
//!
//! Curves here are given by raw normal coordinates (arcs per face corner),
//! drawn with the standard nesting, and split into components by following
//! arcs from marker to marker. Nothing in this module relies on the
//! weight-vector rules of [`crate::normal_curves`]; it serves as their
//! independent check.

use crate::normal_curves::{arc_class, EdgeWeights};
use crate::tet::{edge_faces, edge_index, face_vertices, EDGES};

/// Arc counts `arcs[face][corner]`; entries with `face == corner` are zero.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NormalCoords {
    pub arcs: [[u32; 4]; 4],
}

/// One connected component of a traced curve.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TracedComponent {
    /// `(face, corner)` of each arc in traversal order.
    pub arcs: Vec<(usize, usize)>,
    pub weights: EdgeWeights,
}

impl TracedComponent {
    pub fn length(&self) -> usize {
        self.arcs.len()
    }

    pub fn class_counts(&self) -> [u32; 3] {
        let mut out = [0; 3];
        for &(f, v) in &self.arcs {
            out[arc_class(f, v).index()] += 1;
        }
        out
    }
}

impl NormalCoords {
    pub fn total_arcs(&self) -> u32 {
        self.arcs.iter().flatten().sum()
    }

    /// Points on edge `e` as seen from face `f`.
    fn edge_count_in_face(&self, f: usize, e: usize) -> u32 {
        let [a, b] = EDGES[e];
        self.arcs[f][a] + self.arcs[f][b]
    }

    /// Edge weights if both faces at every edge agree.
    pub fn edge_weights(&self) -> Option<EdgeWeights> {
        let mut w = [0; 6];
        for (e, slot) in w.iter_mut().enumerate() {
            let [f, g] = edge_faces(e);
            let a = self.edge_count_in_face(f, e);
            if a != self.edge_count_in_face(g, e) {
                return None;
            }
            *slot = a;
        }
        Some(w)
    }

    /// Rank (from the lower endpoint) of the `depth`-th point from `corner`
    /// on edge `e`, which has `count` points.
    fn rank(e: usize, corner: usize, depth: u32, count: u32) -> u32 {
        if EDGES[e][0] == corner {
            depth
        } else {
            count - 1 - depth
        }
    }

    /// Splits the curve into connected components.
    pub fn components(&self) -> Vec<TracedComponent> {
        let w = self.edge_weights().expect("matching coordinates");
        // arc ids: (face, corner, depth) flattened; each marker touches one
        // arc per adjacent face
        let mut marker_arcs: Vec<Vec<[Option<usize>; 2]>> =
            w.iter().map(|&c| vec![[None, None]; c as usize]).collect();
        let mut arcs: Vec<(usize, usize, [(usize, u32); 2])> = Vec::new();
        for f in 0..4 {
            for v in face_vertices(f) {
                let others: Vec<usize> = face_vertices(f).into_iter().filter(|&x| x != v).collect();
                for depth in 0..self.arcs[f][v] {
                    let id = arcs.len();
                    let mut ends = [(0, 0); 2];
                    for (slot, &o) in others.iter().enumerate() {
                        let e = edge_index(v, o);
                        let r = Self::rank(e, v, depth, w[e]);
                        let side = usize::from(edge_faces(e)[1] == f);
                        let cell = &mut marker_arcs[e][r as usize][side];
                        assert!(cell.is_none(), "marker used twice in one face");
                        *cell = Some(id);
                        ends[slot] = (e, r);
                    }
                    arcs.push((f, v, ends));
                }
            }
        }

        let mut seen = vec![false; arcs.len()];
        let mut out = Vec::new();
        for start in 0..arcs.len() {
            if seen[start] {
                continue;
            }
            let mut comp = TracedComponent {
                arcs: Vec::new(),
                weights: [0; 6],
            };
            let mut cur = start;
            // leave through the second endpoint each time
            let mut exit = arcs[cur].2[1];
            loop {
                seen[cur] = true;
                comp.arcs.push((arcs[cur].0, arcs[cur].1));
                let (e, r) = exit;
                comp.weights[e] += 1;
                let [x, y] = marker_arcs[e][r as usize];
                let next = if x == Some(cur) { y } else { x }.expect("every marker has two arcs");
                if next == start {
                    break;
                }
                let ends = arcs[next].2;
                exit = if ends[0] == (e, r) { ends[1] } else { ends[0] };
                cur = next;
            }
            out.push(comp);
        }
        out
    }

    /// All matching normal coordinates with at most `max_arcs` arcs in total.
    pub fn enumerate(max_arcs: u32) -> Vec<NormalCoords> {
        let mut out = Vec::new();
        // face 3 = {0,1,2}: free corners c0, c1, c2
        for c0 in 0..=max_arcs {
            for c1 in 0..=max_arcs - c0 {
                for c2 in 0..=max_arcs - c0 - c1 {
                    let used = c0 + c1 + c2;
                    let (w01, w02, w12) = (c0 + c1, c0 + c2, c1 + c2);
                    // face 2 = {0,1,3}: d0 + d1 = w01, d3 free
                    for d0 in 0..=w01 {
                        let d1 = w01 - d0;
                        if used + w01 > max_arcs {
                            break;
                        }
                        for d3 in 0..=max_arcs - used - w01 {
                            let (w03, w13) = (d0 + d3, d1 + d3);
                            // face 1 = {0,2,3}: e0 + e2 = w02, e0 + e3 = w03
                            for e0 in 0..=w02.min(w03) {
                                let (e2, e3) = (w02 - e0, w03 - e0);
                                let w23 = e2 + e3;
                                // face 0 = {1,2,3} is forced by w12, w13, w23
                                let twice = [
                                    w12 as i64 + w13 as i64 - w23 as i64,
                                    w12 as i64 + w23 as i64 - w13 as i64,
                                    w13 as i64 + w23 as i64 - w12 as i64,
                                ];
                                if twice.iter().any(|&t| t < 0 || t % 2 != 0) {
                                    continue;
                                }
                                let [f1, f2, f3] = twice.map(|t| (t / 2) as u32);
                                let coords = NormalCoords {
                                    arcs: [
                                        [0, f1, f2, f3],
                                        [e0, 0, e2, e3],
                                        [d0, d1, 0, d3],
                                        [c0, c1, c2, 0],
                                    ],
                                };
                                let total = coords.total_arcs();
                                if total == 0 || total > max_arcs {
                                    continue;
                                }
                                debug_assert!(coords.edge_weights().is_some());
                                out.push(coords);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_curves::{is_opposite_balanced, LongLoop};

    fn coords_of(weights: EdgeWeights) -> NormalCoords {
        let mut c = NormalCoords::default();
        for f in 0..4 {
            for v in face_vertices(f) {
                c.arcs[f][v] = crate::normal_curves::corner_arcs(&weights, f, v).unwrap();
            }
        }
        c
    }

    #[test]
    fn vertex_link_traces_to_three_arcs() {
        let mut c = NormalCoords::default();
        for f in [0, 1, 2] {
            c.arcs[f][3] = 1;
        }
        let comps = c.components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].length(), 3);
        assert_eq!(comps[0].weights, [0, 1, 0, 1, 1, 0]);
    }

    #[test]
    fn length_sixteen_helicoid_is_connected_and_counts_match() {
        let w = [1, 1, 3, 3, 4, 4];
        let comps = coords_of(w).components();
        assert_eq!(comps.len(), 1);
        assert_eq!(comps[0].length(), 16);
        let l = LongLoop::new(w).unwrap();
        assert_eq!(comps[0].class_counts(), l.class_counts());
    }

    #[test]
    fn helicoid_class_counts_by_tracing() {
        for n in 1..=3u32 {
            let w = [1, 1, n, n, n + 1, n + 1];
            let comps = coords_of(w).components();
            assert_eq!(comps.len(), 1);
            assert_eq!(comps[0].class_counts(), [4 * n, 4, 0]);
        }
    }

    #[test]
    fn non_primitive_weights_split() {
        let comps = coords_of([2, 2, 2, 2, 4, 4]).components();
        assert_eq!(comps.len(), 2);
        assert!(comps.iter().all(|c| c.weights == [1, 1, 1, 1, 2, 2]));
    }

    #[test]
    fn small_enumeration_is_balanced() {
        for c in NormalCoords::enumerate(12) {
            for comp in c.components() {
                if comp.length() >= 4 {
                    assert!(is_opposite_balanced(&comp.weights), "{comp:?}");
                }
            }
        }
    }
}

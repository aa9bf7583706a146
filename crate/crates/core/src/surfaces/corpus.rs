//! Enumerating every locally helical surface within given bounds.

use std::collections::HashMap;

use crate::helicoids::enumerate_helicoids;
use crate::normal_curves::CurveSystem;
use crate::tet::face_vertices;
use crate::triangulation::{ClosedTriangulation, Gluing};

use super::LocallyHelicalSurface;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CorpusBounds {
    pub max_twist: u32,
    /// Largest number of triangles at any one vertex of a tetrahedron.
    pub max_links: u32,
    /// Largest number of parallel helicoids in one tetrahedron.
    pub max_copies: u32,
}

/// Every curve system one tetrahedron may hold within `b`.
pub fn tet_candidates(b: &CorpusBounds) -> Vec<CurveSystem> {
    let helicoids = enumerate_helicoids(b.max_twist);
    let mut longs = vec![None];
    for h in &helicoids {
        for k in 1..=b.max_copies {
            longs.push(Some((h.boundary(), k)));
        }
    }
    let r = b.max_links + 1;
    let mut out = Vec::new();
    for code in 0..r.pow(4) {
        let links = [0, 1, 2, 3].map(|i| code / r.pow(i) % r);
        for &long in &longs {
            out.push(CurveSystem::new(links, long));
        }
    }
    out
}

fn corner_counts(sys: &CurveSystem, face: usize) -> [u32; 3] {
    face_vertices(face).map(|v| sys.corner_arcs(face, v))
}

fn gluing_matches(g: &Gluing, a: &CurveSystem, b: &CurveSystem) -> bool {
    let map = g.vertex_map();
    face_vertices(g.from.face)
        .into_iter()
        .all(|v| a.corner_arcs(g.from.face, v) == b.corner_arcs(g.to.face, map.apply(v)))
}

/// All nonempty surfaces on `m` within `b`, in a fixed order.
pub fn enumerate_surfaces(m: &ClosedTriangulation, b: &CorpusBounds) -> Vec<LocallyHelicalSurface> {
    let cands = tet_candidates(b);
    // candidates by the corner counts they show on each face
    let mut by_face: Vec<HashMap<[u32; 3], Vec<usize>>> = vec![HashMap::new(); 4];
    for (i, c) in cands.iter().enumerate() {
        for (f, index) in by_face.iter_mut().enumerate() {
            index.entry(corner_counts(c, f)).or_default().push(i);
        }
    }
    let gluings = m.triangulation().gluings();
    let n = m.tet_count();
    let mut out = Vec::new();
    let mut chosen: Vec<usize> = Vec::with_capacity(n);

    fn search(
        m: &ClosedTriangulation,
        gluings: &[Gluing],
        cands: &[CurveSystem],
        by_face: &[HashMap<[u32; 3], Vec<usize>>],
        chosen: &mut Vec<usize>,
        out: &mut Vec<LocallyHelicalSurface>,
    ) {
        let t = chosen.len();
        if t == m.tet_count() {
            let systems: Vec<CurveSystem> = chosen.iter().map(|&i| cands[i]).collect();
            if systems.iter().any(|s| !s.is_empty()) {
                out.push(LocallyHelicalSurface::from_systems(&systems).expect("candidates are helicoids"));
            }
            return;
        }
        // a face of t glued to an earlier tetrahedron narrows the choice
        let pinned = gluings.iter().find_map(|g| {
            if g.from.tet == t && g.to.tet < t {
                let map = g.vertex_map();
                let other = &cands[chosen[g.to.tet]];
                Some((g.from.face, face_vertices(g.from.face).map(|v| other.corner_arcs(g.to.face, map.apply(v)))))
            } else if g.to.tet == t && g.from.tet < t {
                let inv = g.vertex_map().inverse();
                let other = &cands[chosen[g.from.tet]];
                Some((g.to.face, face_vertices(g.to.face).map(|v| other.corner_arcs(g.from.face, inv.apply(v)))))
            } else {
                None
            }
        });
        let all: Vec<usize>;
        let pool: &[usize] = match pinned {
            Some((f, counts)) => by_face[f].get(&counts).map_or(&[], |v| v.as_slice()),
            None => {
                all = (0..cands.len()).collect();
                &all
            }
        };
        for &i in pool {
            chosen.push(i);
            let ok = gluings.iter().all(|g| {
                let (a, b) = (g.from.tet, g.to.tet);
                if a.max(b) != t {
                    return true;
                }
                gluing_matches(g, &cands[chosen[a]], &cands[chosen[b]])
            });
            if ok {
                search(m, gluings, cands, by_face, chosen, out);
            }
            chosen.pop();
        }
    }

    search(m, gluings, &cands, &by_face, &mut chosen, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::surfaces::check_matching;
    use crate::triangulation::{doubled_tetrahedron, folded_pair};

    #[test]
    fn doubled_tetrahedron_surfaces_are_mirror_pairs() {
        let m = doubled_tetrahedron();
        let b = CorpusBounds { max_twist: 2, max_links: 1, max_copies: 1 };
        let corpus = enumerate_surfaces(&m, &b);
        assert_eq!(corpus.len(), tet_candidates(&b).len() - 1);
        for h in &corpus {
            assert_eq!(h.system(0), h.system(1));
            check_matching(&m, h).unwrap();
        }
    }

    #[test]
    fn folded_pair_admits_only_symmetric_long_loops() {
        let m = folded_pair();
        let b = CorpusBounds { max_twist: 4, max_links: 1, max_copies: 2 };
        let corpus = enumerate_surfaces(&m, &b);
        assert!(!corpus.is_empty());
        for h in &corpus {
            check_matching(&m, h).unwrap();
            for t in 0..2 {
                if let Some((l, _)) = h.system(t).long() {
                    let p = l.pairs();
                    assert_eq!(p[1], p[2], "{:?}", p);
                }
            }
        }
    }
}

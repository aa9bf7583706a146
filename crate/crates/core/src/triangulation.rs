//! Closed oriented pseudo-triangulations given as tetrahedra with face
//! pairings.
//!
//! A document looks like
//!
//! ```text
//! # doubled tetrahedron
//! { "tets": 2,
//!   "gluings": [ { "from": [0, 0], "to": [1, 0], "perm": [1, 2, 3] }, ... ] }
//! ```
//!
//! `perm` lists, for the vertices of the source face in increasing order,
//! their images among the vertices of the target face. Each record glues
//! both faces; the inverse direction is implied.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tet::{face_vertices, permutation_parity, Sign};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TetIndex(pub usize);

impl fmt::Display for TetIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Face `face` (opposite vertex `face`) of tetrahedron `tet`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face {
    pub tet: usize,
    pub face: usize,
}

impl Face {
    pub fn new(tet: usize, face: usize) -> Self {
        Face { tet, face }
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.tet, self.face)
    }
}

/// Vertex correspondence between two tetrahedra induced by a face gluing,
/// extended so that the opposite vertices correspond.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexMap([usize; 4]);

impl VertexMap {
    pub fn identity() -> Self {
        VertexMap([0, 1, 2, 3])
    }

    /// Builds the map from a face pairing and the images of the source
    /// face's vertices, listed in increasing order.
    pub fn from_face_perm(from_face: usize, to_face: usize, perm: [usize; 3]) -> Option<Self> {
        let src = face_vertices(from_face);
        let mut map = [usize::MAX; 4];
        map[from_face] = to_face;
        for (v, img) in src.iter().zip(perm) {
            if img > 3 || img == to_face {
                return None;
            }
            map[*v] = img;
        }
        let mut seen = [false; 4];
        for &img in &map {
            if img > 3 || seen[img] {
                return None;
            }
            seen[img] = true;
        }
        Some(VertexMap(map))
    }

    pub fn apply(&self, v: usize) -> usize {
        self.0[v]
    }

    pub fn as_array(&self) -> [usize; 4] {
        self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = [0; 4];
        for (v, &img) in self.0.iter().enumerate() {
            inv[img] = v;
        }
        VertexMap(inv)
    }

    pub fn compose(&self, then: &VertexMap) -> VertexMap {
        let mut out = [0; 4];
        for v in 0..4 {
            out[v] = then.apply(self.apply(v));
        }
        VertexMap(out)
    }

    pub fn parity(&self) -> Sign {
        permutation_parity(&self.0)
    }

    /// Restriction to the three vertices of face `f`, as images listed in
    /// increasing order of the face's vertices.
    pub fn face_perm(&self, f: usize) -> [usize; 3] {
        face_vertices(f).map(|v| self.0[v])
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gluing {
    pub from: Face,
    pub to: Face,
    pub perm: [usize; 3],
}

impl Gluing {
    pub fn vertex_map(&self) -> VertexMap {
        VertexMap::from_face_perm(self.from.face, self.to.face, self.perm)
            .expect("gluing permutation validated at construction")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TriangulationError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("triangulation has no tetrahedra")]
    Empty,
    #[error("gluing {gluing}: tetrahedron {tet} out of range")]
    TetOutOfRange { gluing: usize, tet: usize },
    #[error("gluing {gluing}: face index {face} out of range")]
    FaceOutOfRange { gluing: usize, face: usize },
    #[error("gluing {gluing}: perm {perm:?} is not a bijection onto the target face")]
    BadPermutation { gluing: usize, perm: [usize; 3] },
    #[error("face {face} is glued to itself")]
    SelfGluedFace { face: Face },
    #[error("face {face} appears in more than one gluing")]
    DuplicateFace { face: Face },
    #[error("triangulation is not closed; unglued faces: {}", fmt_faces(unglued))]
    NotClosed { unglued: Vec<Face> },
    #[error("triangulation is not orientable; inconsistent gluing cycle {cycle:?}")]
    NotOrientable { cycle: Vec<usize> },
}

fn fmt_faces(faces: &[Face]) -> String {
    faces
        .iter()
        .map(|f| f.to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

#[derive(Debug, Deserialize, Serialize)]
struct RawGluing {
    from: [usize; 2],
    to: [usize; 2],
    perm: [usize; 3],
}

#[derive(Debug, Deserialize, Serialize)]
struct RawTriangulation {
    tets: usize,
    #[serde(default)]
    gluings: Vec<RawGluing>,
}

/// Blanks out `#` comments while keeping line and column positions intact.
pub(crate) fn strip_comments(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    for line in text.split_inclusive('\n') {
        match line.find('#') {
            Some(pos) => {
                out.push_str(&line[..pos]);
                for c in line[pos..].chars() {
                    if c == '\n' || c == '\r' {
                        out.push(c);
                    } else {
                        out.push(' ');
                    }
                }
            }
            None => out.push_str(line),
        }
    }
    out
}

/// A parsed triangulation; structurally valid but not yet checked for
/// closedness or orientability.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Triangulation {
    tet_count: usize,
    gluings: Vec<Gluing>,
    /// `slots[tet][face]` is the gluing index touching that face.
    slots: Vec<[Option<usize>; 4]>,
}

impl Triangulation {
    pub fn new(tet_count: usize, gluings: Vec<Gluing>) -> Result<Self, TriangulationError> {
        if tet_count == 0 {
            return Err(TriangulationError::Empty);
        }
        let mut slots = vec![[None; 4]; tet_count];
        for (i, g) in gluings.iter().enumerate() {
            for face in [g.from, g.to] {
                if face.tet >= tet_count {
                    return Err(TriangulationError::TetOutOfRange {
                        gluing: i,
                        tet: face.tet,
                    });
                }
                if face.face > 3 {
                    return Err(TriangulationError::FaceOutOfRange {
                        gluing: i,
                        face: face.face,
                    });
                }
            }
            if g.from == g.to {
                return Err(TriangulationError::SelfGluedFace { face: g.from });
            }
            if VertexMap::from_face_perm(g.from.face, g.to.face, g.perm).is_none() {
                return Err(TriangulationError::BadPermutation {
                    gluing: i,
                    perm: g.perm,
                });
            }
            for face in [g.from, g.to] {
                let slot = &mut slots[face.tet][face.face];
                if slot.is_some() {
                    return Err(TriangulationError::DuplicateFace { face });
                }
                *slot = Some(i);
            }
        }
        Ok(Triangulation {
            tet_count,
            gluings,
            slots,
        })
    }

    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        let cleaned = strip_comments(text);
        let raw: RawTriangulation =
            serde_json::from_str(&cleaned).map_err(|e| TriangulationError::Syntax {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            })?;
        let gluings = raw
            .gluings
            .into_iter()
            .map(|g| Gluing {
                from: Face::new(g.from[0], g.from[1]),
                to: Face::new(g.to[0], g.to[1]),
                perm: g.perm,
            })
            .collect();
        Triangulation::new(raw.tets, gluings)
    }

    pub fn to_document(&self) -> String {
        let raw = RawTriangulation {
            tets: self.tet_count,
            gluings: self
                .gluings
                .iter()
                .map(|g| RawGluing {
                    from: [g.from.tet, g.from.face],
                    to: [g.to.tet, g.to.face],
                    perm: g.perm,
                })
                .collect(),
        };
        serde_json::to_string_pretty(&raw).expect("triangulation serializes")
    }

    pub fn tet_count(&self) -> usize {
        self.tet_count
    }

    pub fn gluings(&self) -> &[Gluing] {
        &self.gluings
    }

    /// Partner of `f` with the vertex map from `f`'s tetrahedron to the
    /// partner's, if `f` is glued.
    pub fn partner(&self, f: Face) -> Option<(Face, VertexMap, usize)> {
        let g = self.slots.get(f.tet)?.get(f.face).copied().flatten()?;
        let gl = &self.gluings[g];
        if gl.from == f {
            Some((gl.to, gl.vertex_map(), g))
        } else {
            Some((gl.from, gl.vertex_map().inverse(), g))
        }
    }

    /// Checks closedness and orientability, returning per-tet signs with tet
    /// 0 (and the first tet of every further component) positive.
    pub fn validate_closed_oriented(&self) -> Result<Vec<Sign>, TriangulationError> {
        let unglued: Vec<Face> = (0..self.tet_count)
            .flat_map(|t| (0..4).map(move |f| Face::new(t, f)))
            .filter(|f| self.slots[f.tet][f.face].is_none())
            .collect();
        if !unglued.is_empty() {
            return Err(TriangulationError::NotClosed { unglued });
        }

        let mut sign: Vec<Option<Sign>> = vec![None; self.tet_count];
        // gluing used to reach each tet in the search tree
        let mut via: Vec<Option<(usize, usize)>> = vec![None; self.tet_count];
        for root in 0..self.tet_count {
            if sign[root].is_some() {
                continue;
            }
            sign[root] = Some(Sign::Pos);
            let mut queue = VecDeque::from([root]);
            while let Some(t) = queue.pop_front() {
                for f in 0..4 {
                    let (other, map, g) = self.partner(Face::new(t, f)).expect("closed");
                    // sign(t) * sign(other) * parity == -1
                    let want = -(sign[t].unwrap() * map.parity());
                    match sign[other.tet] {
                        None => {
                            sign[other.tet] = Some(want);
                            via[other.tet] = Some((t, g));
                            queue.push_back(other.tet);
                        }
                        Some(s) if s == want => {}
                        Some(_) => {
                            return Err(TriangulationError::NotOrientable {
                                cycle: Self::cycle_through(t, other.tet, g, &via),
                            });
                        }
                    }
                }
            }
        }
        Ok(sign.into_iter().map(|s| s.unwrap()).collect())
    }

    fn tree_path(mut t: usize, via: &[Option<(usize, usize)>]) -> Vec<usize> {
        // gluings on the search-tree path from t up to its root
        let mut path = Vec::new();
        while let Some((parent, g)) = via[t] {
            path.push(g);
            t = parent;
        }
        path
    }

    fn cycle_through(a: usize, b: usize, closing: usize, via: &[Option<(usize, usize)>]) -> Vec<usize> {
        let mut ga = Self::tree_path(a, via);
        let mut gb = Self::tree_path(b, via);
        while let (Some(x), Some(y)) = (ga.last(), gb.last()) {
            if x == y {
                ga.pop();
                gb.pop();
            } else {
                break;
            }
        }
        let mut cycle = ga;
        cycle.push(closing);
        cycle.extend(gb.into_iter().rev());
        cycle
    }
}

/// A triangulation known to be closed and oriented, together with its
/// orientation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedTriangulation {
    tri: Triangulation,
    signs: Vec<Sign>,
}

impl ClosedTriangulation {
    pub fn new(tri: Triangulation) -> Result<Self, TriangulationError> {
        let signs = tri.validate_closed_oriented()?;
        Ok(ClosedTriangulation { tri, signs })
    }

    pub fn parse(text: &str) -> Result<Self, TriangulationError> {
        ClosedTriangulation::new(Triangulation::parse(text)?)
    }

    pub fn triangulation(&self) -> &Triangulation {
        &self.tri
    }

    pub fn tet_count(&self) -> usize {
        self.tri.tet_count
    }

    pub fn orientation(&self, tet: usize) -> Sign {
        self.signs[tet]
    }

    pub fn orientations(&self) -> &[Sign] {
        &self.signs
    }

    /// The face glued to `f` and the vertex map from `f`'s tetrahedron onto
    /// the partner's.
    pub fn glued_partner(&self, f: Face) -> (Face, VertexMap) {
        let (p, map, _) = self.tri.partner(f).expect("closed triangulation");
        (p, map)
    }

    pub fn gluing_index(&self, f: Face) -> usize {
        self.tri.partner(f).expect("closed triangulation").2
    }
}

/// Two tetrahedra glued face to face by the identity on vertex labels; a
/// triangulation of the 3-sphere.
pub fn doubled_tetrahedron() -> ClosedTriangulation {
    let gluings = (0..4)
        .map(|f| Gluing {
            from: Face::new(0, f),
            to: Face::new(1, f),
            perm: face_vertices(f),
        })
        .collect();
    ClosedTriangulation::new(Triangulation::new(2, gluings).unwrap()).unwrap()
}

/// Two tetrahedra, each folded shut along edge 23 (face 0 onto face 1 by
/// `1 -> 0`, fixing 2 and 3), with faces 2 and 3 glued across by the
/// identity.
pub fn folded_pair() -> ClosedTriangulation {
    let mut gluings = Vec::new();
    for t in 0..2 {
        gluings.push(Gluing {
            from: Face::new(t, 0),
            to: Face::new(t, 1),
            perm: [0, 2, 3],
        });
    }
    for f in [2, 3] {
        gluings.push(Gluing {
            from: Face::new(0, f),
            to: Face::new(1, f),
            perm: face_vertices(f),
        });
    }
    ClosedTriangulation::new(Triangulation::new(2, gluings).unwrap()).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;

    const DOUBLED: &str = r#"
        # two tetrahedra, face i to face i
        { "tets": 2,
          "gluings": [
            { "from": [0, 0], "to": [1, 0], "perm": [1, 2, 3] },
            { "from": [0, 1], "to": [1, 1], "perm": [0, 2, 3] },
            { "from": [0, 2], "to": [1, 2], "perm": [0, 1, 3] },  # comment
            { "from": [0, 3], "to": [1, 3], "perm": [0, 1, 2] }
          ] }
    "#;

    #[test]
    fn parses_doubled_tetrahedron() {
        let t = Triangulation::parse(DOUBLED).unwrap();
        assert_eq!(t.tet_count(), 2);
        assert_eq!(t.gluings().len(), 4);
        let again = Triangulation::parse(&t.to_document()).unwrap();
        assert_eq!(again, t);
        assert_eq!(ClosedTriangulation::new(t).unwrap(), doubled_tetrahedron());
    }

    #[test]
    fn doubled_orientation_is_plus_minus() {
        let m = doubled_tetrahedron();
        assert_eq!(m.orientations(), &[Sign::Pos, Sign::Neg]);
    }

    #[test]
    fn single_tet_without_gluings_parses_but_is_open() {
        let t = Triangulation::parse(r#"{"tets": 1, "gluings": []}"#).unwrap();
        match t.validate_closed_oriented() {
            Err(TriangulationError::NotClosed { unglued }) => assert_eq!(unglued.len(), 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn one_tet_two_faces_unglued() {
        let t = Triangulation::parse(
            r#"{"tets": 1, "gluings": [{"from": [0,0], "to": [0,1], "perm": [0,2,3]}]}"#,
        )
        .unwrap();
        match t.validate_closed_oriented() {
            Err(TriangulationError::NotClosed { unglued }) => {
                assert_eq!(unglued, vec![Face::new(0, 2), Face::new(0, 3)])
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn duplicate_face_rejected() {
        let err = Triangulation::parse(
            r#"{"tets": 2, "gluings": [
                {"from": [0,1], "to": [1,1], "perm": [0,2,3]},
                {"from": [0,1], "to": [1,2], "perm": [0,1,3]}]}"#,
        )
        .unwrap_err();
        assert_eq!(
            err,
            TriangulationError::DuplicateFace {
                face: Face::new(0, 1)
            }
        );
    }

    #[test]
    fn syntax_error_reports_position() {
        let err = Triangulation::parse("{\n  \"tets\": 2,\n  \"gluings\": [ oops ]\n}").unwrap_err();
        match err {
            TriangulationError::Syntax { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn out_of_range_indices() {
        let err = Triangulation::parse(
            r#"{"tets": 1, "gluings": [{"from": [0,0], "to": [3,1], "perm": [0,2,3]}]}"#,
        )
        .unwrap_err();
        assert_eq!(err, TriangulationError::TetOutOfRange { gluing: 0, tet: 3 });
        let err = Triangulation::parse(
            r#"{"tets": 1, "gluings": [{"from": [0,4], "to": [0,1], "perm": [0,2,3]}]}"#,
        )
        .unwrap_err();
        assert_eq!(err, TriangulationError::FaceOutOfRange { gluing: 0, face: 4 });
    }

    #[test]
    fn orientation_inconsistent_pair_rejected() {
        // face 3 glued by an odd map while the rest are even
        let mut gluings: Vec<Gluing> = (0..3)
            .map(|f| Gluing {
                from: Face::new(0, f),
                to: Face::new(1, f),
                perm: face_vertices(f),
            })
            .collect();
        gluings.push(Gluing {
            from: Face::new(0, 3),
            to: Face::new(1, 3),
            perm: [1, 0, 2],
        });
        let t = Triangulation::new(2, gluings).unwrap();
        match t.validate_closed_oriented() {
            Err(TriangulationError::NotOrientable { cycle }) => {
                assert_eq!(cycle.len(), 2);
                assert!(cycle.contains(&3));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn folded_pair_is_closed_and_oriented() {
        let m = folded_pair();
        assert_eq!(m.orientations(), &[Sign::Pos, Sign::Neg]);
    }

    #[test]
    fn partner_is_involutive() {
        for m in [doubled_tetrahedron(), folded_pair()] {
            for t in 0..m.tet_count() {
                for f in 0..4 {
                    let face = Face::new(t, f);
                    let (p, map) = m.glued_partner(face);
                    let (back, map_back) = m.glued_partner(p);
                    assert_eq!(back, face);
                    assert_eq!(map.compose(&map_back), VertexMap::identity());
                    assert_eq!(map.apply(f), p.face);
                    let s = m.orientation(t) * m.orientation(p.tet) * map.parity();
                    assert_eq!(s, Sign::Neg);
                }
            }
        }
    }

    #[test]
    fn doubled_partner_of_face_two() {
        let m = doubled_tetrahedron();
        let (p, map) = m.glued_partner(Face::new(0, 2));
        assert_eq!(p, Face::new(1, 2));
        assert_eq!(map.face_perm(2), [0, 1, 3]);
    }
}

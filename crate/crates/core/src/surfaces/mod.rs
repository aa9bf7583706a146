//! Locally helical surfaces over a closed triangulation: per-tetrahedron
//! pieces, face matching, twisting, consistency and sign balance.

pub mod balance;
pub mod consistency;
pub mod corpus;

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::helicoids::{detect_axes, Hand, HelicoidError, HelicoidPiece, Piece};
use crate::normal_curves::{CurveSystem, EdgePair, LongLoop, NormalCurveError, NormalLoop};
use crate::tet::face_vertices;
use crate::triangulation::{strip_comments, ClosedTriangulation, Face};

pub use balance::{boundary_sign_balance, interior_cancellation, DrawingStrategy, GlobalDrawing};
pub use consistency::{
    compare, compatible_outside, consistent, count_consistency_classes, verify_invariance, ConsistencySignature,
    Comparison, InvarianceReport, Subcomplex,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SurfaceError {
    #[error("syntax error at line {line}, column {column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("`{0}` is not a tetrahedron index")]
    BadTetKey(String),
    #[error("tetrahedron {tet} out of range (triangulation has {tet_count})")]
    TetOutOfRange { tet: usize, tet_count: usize },
    #[error("tetrahedron {tet}: {source}")]
    Piece { tet: usize, source: HelicoidError },
    #[error("tetrahedron {tet}: {source}")]
    Curve { tet: usize, source: NormalCurveError },
    #[error("tetrahedron {tet}: loop {boundary} is not a helicoid boundary")]
    NotHelical { tet: usize, boundary: NormalLoop },
    #[error("tetrahedron {tet}: helicoid boundaries are not parallel")]
    NonParallelPieces { tet: usize },
    #[error("gluing {gluing}: corner {corner} of {face} has {counts:?} arcs on the two sides")]
    MatchingFailure { gluing: usize, face: Face, corner: usize, counts: [u32; 2] },
    #[error("surfaces are not compatible outside the subcomplex")]
    NotCompatibleOutside,
}

/// A surface given by its pieces in each tetrahedron: vertex-linking
/// triangles and a stack of parallel helicoids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct LocallyHelicalSurface {
    pieces: BTreeMap<usize, CurveSystem>,
}

#[derive(Debug, Deserialize, Serialize)]
struct RawSurface {
    pieces: BTreeMap<String, RawTet>,
}

#[derive(Debug, Default, Deserialize, Serialize)]
struct RawTet {
    #[serde(default)]
    links: [u32; 4],
    #[serde(default)]
    helicoids: Vec<String>,
}

/// Splits a `×m` or `*m` multiplicity suffix off a piece literal.
fn split_multiplicity(s: &str) -> Option<(&str, u32)> {
    let s = s.trim();
    match s.rfind(['×', '*']) {
        Some(i) if s[i..].chars().count() > 1 && s[..i].trim_end().ends_with(')') => {
            let sep = s[i..].chars().next()?.len_utf8();
            let m = s[i + sep..].trim().parse().ok()?;
            Some((s[..i].trim_end(), m))
        }
        _ => Some((s, 1)),
    }
}

impl LocallyHelicalSurface {
    /// Builds a surface, checking that every long loop bounds a helicoid.
    pub fn new(pieces: BTreeMap<usize, CurveSystem>) -> Result<Self, SurfaceError> {
        for (&tet, sys) in &pieces {
            if let Some((l, _)) = sys.long() {
                if detect_axes(&NormalLoop::Long(l)).is_empty() {
                    return Err(SurfaceError::NotHelical { tet, boundary: NormalLoop::Long(l) });
                }
            }
        }
        let pieces = pieces.into_iter().filter(|(_, s)| !s.is_empty()).collect();
        Ok(LocallyHelicalSurface { pieces })
    }

    pub fn from_systems(systems: &[CurveSystem]) -> Result<Self, SurfaceError> {
        LocallyHelicalSurface::new(systems.iter().copied().enumerate().collect())
    }

    pub fn parse(text: &str) -> Result<Self, SurfaceError> {
        let raw: RawSurface = serde_json::from_str(&strip_comments(text)).map_err(|e| SurfaceError::Syntax {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        let mut pieces = BTreeMap::new();
        for (key, t) in raw.pieces {
            let tet: usize = key.trim().parse().map_err(|_| SurfaceError::BadTetKey(key.clone()))?;
            let mut links = t.links;
            let mut long: Option<(LongLoop, u32)> = None;
            for lit in &t.helicoids {
                let bad = || SurfaceError::Piece { tet, source: HelicoidError::Literal(lit.clone()) };
                let (body, m) = split_multiplicity(lit).ok_or_else(bad)?;
                match body.parse::<Piece>().map_err(|source| SurfaceError::Piece { tet, source })? {
                    Piece::Triangle { vertex } => links[vertex] += m,
                    Piece::Helicoid(h) => {
                        let b = h.boundary();
                        long = match long {
                            None => Some((b, m)),
                            Some((l, k)) if l == b => Some((l, k + m)),
                            Some(_) => return Err(SurfaceError::NonParallelPieces { tet }),
                        };
                    }
                }
            }
            pieces.insert(tet, CurveSystem::new(links, long));
        }
        LocallyHelicalSurface::new(pieces)
    }

    pub fn to_document(&self) -> String {
        let pieces = self
            .pieces
            .iter()
            .map(|(&tet, sys)| {
                let helicoids = sys
                    .long()
                    .map(|(l, k)| {
                        let h = helicoid_of(&l);
                        if k == 1 {
                            h.to_string()
                        } else {
                            format!("{h}×{k}")
                        }
                    })
                    .into_iter()
                    .collect();
                (tet.to_string(), RawTet { links: sys.links(), helicoids })
            })
            .collect();
        serde_json::to_string_pretty(&RawSurface { pieces }).expect("surface serializes")
    }

    /// Pieces in tetrahedron `tet` as a curve system (empty if none).
    pub fn system(&self, tet: usize) -> CurveSystem {
        self.pieces.get(&tet).copied().unwrap_or_default()
    }

    pub fn tets(&self) -> impl Iterator<Item = usize> + '_ {
        self.pieces.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }
}

/// The helicoid bounded by `l`, read against its first axis.
pub fn helicoid_of(l: &LongLoop) -> HelicoidPiece {
    let axis = detect_axes(&NormalLoop::Long(*l))[0];
    HelicoidPiece::from_boundary(l, axis).expect("axis detected on this loop")
}

/// Checks that the pieces agree across every gluing of `m`.
pub fn check_matching(m: &ClosedTriangulation, h: &LocallyHelicalSurface) -> Result<(), SurfaceError> {
    if let Some(tet) = h.tets().find(|&t| t >= m.tet_count()) {
        return Err(SurfaceError::TetOutOfRange { tet, tet_count: m.tet_count() });
    }
    for (gi, g) in m.triangulation().gluings().iter().enumerate() {
        let map = g.vertex_map();
        let (a, b) = (h.system(g.from.tet), h.system(g.to.tet));
        for v in face_vertices(g.from.face) {
            let counts = [a.corner_arcs(g.from.face, v), b.corner_arcs(g.to.face, map.apply(v))];
            if counts[0] != counts[1] {
                return Err(SurfaceError::MatchingFailure { gluing: gi, face: g.from, corner: v, counts });
            }
        }
    }
    Ok(())
}

/// One way of reading the helicoids in a tetrahedron: an axis, the
/// handedness about it in the tetrahedron's orientation, and the signed
/// twisting of one piece.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Reading {
    pub axis: EdgePair,
    pub hand: Hand,
    pub twist: i64,
}

/// All readings of the helicoids in tetrahedron `tet`; empty when the
/// tetrahedron holds only triangles.
pub fn readings(m: &ClosedTriangulation, h: &LocallyHelicalSurface, tet: usize) -> Vec<Reading> {
    let Some((l, _)) = h.system(tet).long() else {
        return Vec::new();
    };
    let o = m.orientation(tet);
    detect_axes(&NormalLoop::Long(l))
        .into_iter()
        .map(|axis| {
            let piece = HelicoidPiece::from_boundary(&l, axis).expect("detected axis");
            let hand = piece.hand().oriented(o);
            Reading { axis, hand, twist: piece.twisting(axis, o).expect("detected axis") }
        })
        .collect()
}

fn copies(h: &LocallyHelicalSurface, tet: usize) -> u32 {
    h.system(tet).long().map_or(0, |(_, k)| k)
}

/// Sum of the twist magnitudes of all helicoids in `region`.
pub fn total_absolute_twisting(h: &LocallyHelicalSurface, region: &Subcomplex) -> u64 {
    region
        .iter()
        .filter_map(|t| h.system(t).long())
        .map(|(l, k)| helicoid_of(&l).magnitude() as u64 * k as u64)
        .sum()
}

/// Least and greatest net twisting over `delta` as the axes of quads and
/// octagons vary; every parallel copy chooses its axis independently.
pub fn net_twisting_range(m: &ClosedTriangulation, h: &LocallyHelicalSurface, delta: &Subcomplex) -> [i64; 2] {
    let (mut fixed, mut loose) = (0i64, 0i64);
    for t in delta.iter() {
        let rs = readings(m, h, t);
        let k = copies(h, t) as i64;
        match rs.as_slice() {
            [] => {}
            [r] => fixed += k * r.twist,
            many => {
                // two readings: a quad (0 and 0) or an octagon (+1 and -1)
                let spread = many.iter().map(|r| r.twist.abs()).max().unwrap_or(0);
                loose += k * spread;
            }
        }
    }
    [fixed - loose, fixed + loose]
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TetTwist {
    pub tet: usize,
    pub orientation: String,
    pub links: [u32; 4],
    pub helicoid: Option<String>,
    pub multiplicity: u32,
    pub readings: Vec<Reading>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct TwistReport {
    pub per_tet: Vec<TetTwist>,
    pub total_absolute: u64,
    pub region: Vec<usize>,
    pub region_absolute: u64,
    pub net_range: [i64; 2],
}

impl TwistReport {
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for t in &self.per_tet {
            let _ = write!(s, "tet {} ({}): links {:?}", t.tet, t.orientation, t.links);
            match &t.helicoid {
                Some(h) => {
                    let _ = write!(s, ", {h} x{}", t.multiplicity);
                    for r in &t.readings {
                        let _ = write!(s, "; axis {} {} twist {}", r.axis, r.hand, r.twist);
                    }
                }
                None => s.push_str(", no helicoid"),
            }
            s.push('\n');
        }
        let _ = writeln!(s, "total absolute twisting: {}", self.total_absolute);
        let _ = writeln!(s, "region {:?}: absolute {}, net range [{}, {}]", self.region, self.region_absolute, self.net_range[0], self.net_range[1]);
        s
    }
}

/// Validates `h` on `m` and reports its twisting, with the net range taken
/// over `region` (all of `m` when `None`).
pub fn validate_surface(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    region: Option<&Subcomplex>,
) -> Result<TwistReport, SurfaceError> {
    check_matching(m, h)?;
    let all = Subcomplex::all(m.tet_count());
    let region = region.unwrap_or(&all);
    if let Some(tet) = region.iter().find(|&t| t >= m.tet_count()) {
        return Err(SurfaceError::TetOutOfRange { tet, tet_count: m.tet_count() });
    }
    let per_tet = (0..m.tet_count())
        .map(|tet| {
            let sys = h.system(tet);
            TetTwist {
                tet,
                orientation: m.orientation(tet).to_string(),
                links: sys.links(),
                helicoid: sys.long().map(|(l, _)| helicoid_of(&l).to_string()),
                multiplicity: copies(h, tet),
                readings: readings(m, h, tet),
            }
        })
        .collect();
    Ok(TwistReport {
        per_tet,
        total_absolute: total_absolute_twisting(h, &all),
        region: region.iter().collect(),
        region_absolute: total_absolute_twisting(h, region),
        net_range: net_twisting_range(m, h, region),
    })
}

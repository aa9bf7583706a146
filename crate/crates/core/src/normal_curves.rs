//! Normal loops and curve systems on the boundary of one tetrahedron, in
//! edge-weight coordinates.
//!
//! A weight vector lists the number of points in which a curve meets each
//! edge, in the order `01, 23, 02, 13, 03, 12` (see [`crate::tet`]). Long
//! loops meet opposite edges equally often, so they are also described by
//! three *pair weights* `(p0, p1, p2)`.
//!
//! Arcs are classified by the pair of opposite edges they run parallel to:
//! the arc cutting corner `v` off face `f` is parallel to the edge of `f`
//! opposite `v`, which lies in the same pair as the edge `{f, v}`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tet::{edge_index, face_vertices, EDGES};

/// Edge weights in the order `01, 23, 02, 13, 03, 12`.
pub type EdgeWeights = [u32; 6];

/// One of the three pairs of opposite edges; pair `i` contains edges `2i`
/// and `2i + 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EdgePair(u8);

impl EdgePair {
    pub const ALL: [EdgePair; 3] = [EdgePair(0), EdgePair(1), EdgePair(2)];

    pub fn new(i: usize) -> Option<Self> {
        (i < 3).then_some(EdgePair(i as u8))
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }

    pub fn of_edge(e: usize) -> Self {
        EdgePair((e / 2) as u8)
    }

    pub fn edges(self) -> [usize; 2] {
        [2 * self.index(), 2 * self.index() + 1]
    }

    /// The pair following this one cyclically.
    pub fn next(self) -> Self {
        EdgePair((self.0 + 1) % 3)
    }

    pub fn prev(self) -> Self {
        EdgePair((self.0 + 2) % 3)
    }

    /// Vertex endpoints of the two edges, as written in piece literals.
    pub fn endpoints(self) -> [[usize; 2]; 2] {
        let [a, b] = self.edges();
        [EDGES[a], EDGES[b]]
    }

    /// Pair containing the edge between `a` and `b`.
    pub fn from_vertices(a: usize, b: usize) -> Option<Self> {
        if a == b || a > 3 || b > 3 {
            return None;
        }
        Some(Self::of_edge(edge_index(a, b)))
    }
}

impl fmt::Display for EdgePair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [[a, b], [c, d]] = self.endpoints();
        write!(f, "{{{a}{b},{c}{d}}}")
    }
}

/// Arc classes are identified with the edge pair their arcs are parallel to.
pub type ArcClass = EdgePair;

/// Class of the normal arc cutting corner `vertex` off face `face`.
pub fn arc_class(face: usize, vertex: usize) -> ArcClass {
    EdgePair::of_edge(edge_index(face, vertex))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NormalCurveError {
    #[error("weights {0:?} do not give equal counts on opposite edges")]
    Unbalanced(EdgeWeights),
    #[error("weights {0:?} give a negative arc count")]
    NegativeCount(EdgeWeights),
    #[error("weights are all zero")]
    Empty,
    #[error("pair weights {pairs:?} describe {components} parallel loops, not one")]
    Disconnected { pairs: [u32; 3], components: u32 },
    #[error("type is undefined for a loop of length three")]
    LengthThree,
    #[error("a vertex link has no slope")]
    VertexLinkHasNoSlope,
    #[error("vertex {0} out of range")]
    BadVertex(usize),
    #[error("long loops {0} and {1} are not parallel")]
    NotParallel(NormalLoop, NormalLoop),
    #[error("cannot parse normal loop literal `{0}`")]
    Literal(String),
}

/// Returns whether the three pairs of opposite edges carry equal weights.
pub fn is_opposite_balanced(weights: &EdgeWeights) -> bool {
    (0..3).all(|i| weights[2 * i] == weights[2 * i + 1])
}

pub fn pair_weights(weights: &EdgeWeights) -> Option<[u32; 3]> {
    is_opposite_balanced(weights).then(|| [weights[0], weights[2], weights[4]])
}

pub fn weights_from_pairs(pairs: [u32; 3]) -> EdgeWeights {
    [pairs[0], pairs[0], pairs[1], pairs[1], pairs[2], pairs[2]]
}

/// Arcs per class, summed over the four faces, for a balanced weight
/// vector with no vertex-linking part: class `i` gets `2(p_j + p_k - p_i)`.
pub fn class_counts_of_weights(weights: &EdgeWeights) -> Result<[u32; 3], NormalCurveError> {
    let p = pair_weights(weights).ok_or(NormalCurveError::Unbalanced(*weights))?;
    let mut out = [0u32; 3];
    for i in 0..3 {
        let (j, k) = ((i + 1) % 3, (i + 2) % 3);
        let c = p[j] as i64 + p[k] as i64 - p[i] as i64;
        if c < 0 {
            return Err(NormalCurveError::NegativeCount(*weights));
        }
        out[i] = 2 * c as u32;
    }
    Ok(out)
}

/// Number of arcs cutting corner `vertex` off face `face` for a curve with
/// the given edge weights, or `None` if the face equations fail.
pub fn corner_arcs(weights: &EdgeWeights, face: usize, vertex: usize) -> Option<u32> {
    debug_assert_ne!(face, vertex);
    let [x, y, z] = face_vertices(face);
    let (o1, o2) = match vertex {
        v if v == x => (y, z),
        v if v == y => (x, z),
        v if v == z => (x, y),
        _ => return None,
    };
    let twice = weights[edge_index(vertex, o1)] as i64 + weights[edge_index(vertex, o2)] as i64
        - weights[edge_index(o1, o2)] as i64;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

/// A connected normal loop of length at least four.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "EdgeWeights", into = "EdgeWeights")]
pub struct LongLoop {
    weights: EdgeWeights,
}

impl LongLoop {
    pub fn new(weights: EdgeWeights) -> Result<Self, NormalCurveError> {
        let p = pair_weights(&weights).ok_or(NormalCurveError::Unbalanced(weights))?;
        if p.iter().all(|&x| x == 0) {
            return Err(NormalCurveError::Empty);
        }
        let mut sorted = p;
        sorted.sort_unstable();
        if sorted[2] != sorted[0] + sorted[1] {
            // either a vertex-linking part is present or some count is negative
            return Err(NormalCurveError::NegativeCount(weights));
        }
        let g = sorted[0].gcd(&sorted[1]);
        if g != 1 {
            return Err(NormalCurveError::Disconnected {
                pairs: p,
                components: g,
            });
        }
        Ok(LongLoop { weights })
    }

    pub fn from_pairs(pairs: [u32; 3]) -> Result<Self, NormalCurveError> {
        LongLoop::new(weights_from_pairs(pairs))
    }

    pub fn weights(&self) -> EdgeWeights {
        self.weights
    }

    pub fn pairs(&self) -> [u32; 3] {
        [self.weights[0], self.weights[2], self.weights[4]]
    }

    pub fn pair_weight(&self, pair: EdgePair) -> u32 {
        self.pairs()[pair.index()]
    }

    pub fn length(&self) -> u32 {
        self.weights.iter().sum()
    }

    pub fn class_counts(&self) -> [u32; 3] {
        class_counts_of_weights(&self.weights).expect("validated at construction")
    }

    /// Classes with no arcs; one class for length > 4, two for length 4.
    pub fn types(&self) -> Vec<ArcClass> {
        let counts = self.class_counts();
        EdgePair::ALL
            .into_iter()
            .filter(|c| counts[c.index()] == 0)
            .collect()
    }

    pub fn slope(&self) -> Slope {
        Slope::from_pair_weights(self.pairs()).expect("validated at construction")
    }

    pub fn corner_arcs(&self, face: usize, vertex: usize) -> u32 {
        corner_arcs(&self.weights, face, vertex).expect("validated at construction")
    }
}

impl TryFrom<EdgeWeights> for LongLoop {
    type Error = NormalCurveError;
    fn try_from(w: EdgeWeights) -> Result<Self, Self::Error> {
        LongLoop::new(w)
    }
}

impl From<LongLoop> for EdgeWeights {
    fn from(l: LongLoop) -> Self {
        l.weights
    }
}

/// A connected normal loop on the boundary of a tetrahedron.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NormalLoop {
    VertexLink(usize),
    Long(LongLoop),
}

impl NormalLoop {
    pub fn vertex_link(v: usize) -> Result<Self, NormalCurveError> {
        if v > 3 {
            return Err(NormalCurveError::BadVertex(v));
        }
        Ok(NormalLoop::VertexLink(v))
    }

    pub fn long(weights: EdgeWeights) -> Result<Self, NormalCurveError> {
        LongLoop::new(weights).map(NormalLoop::Long)
    }

    pub fn weights(&self) -> EdgeWeights {
        match self {
            NormalLoop::VertexLink(v) => {
                let mut w = [0; 6];
                for (e, ends) in EDGES.iter().enumerate() {
                    if ends.contains(v) {
                        w[e] = 1;
                    }
                }
                w
            }
            NormalLoop::Long(l) => l.weights,
        }
    }

    pub fn length(&self) -> u32 {
        match self {
            NormalLoop::VertexLink(_) => 3,
            NormalLoop::Long(l) => l.length(),
        }
    }

    pub fn class_counts(&self) -> [u32; 3] {
        match self {
            NormalLoop::VertexLink(_) => [1, 1, 1],
            NormalLoop::Long(l) => l.class_counts(),
        }
    }

    pub fn curve_type(&self) -> Result<Vec<ArcClass>, NormalCurveError> {
        match self {
            NormalLoop::VertexLink(_) => Err(NormalCurveError::LengthThree),
            NormalLoop::Long(l) => Ok(l.types()),
        }
    }

    pub fn lift_to_torus(&self) -> Result<Slope, NormalCurveError> {
        match self {
            NormalLoop::VertexLink(_) => Err(NormalCurveError::VertexLinkHasNoSlope),
            NormalLoop::Long(l) => Ok(l.slope()),
        }
    }
}

impl fmt::Display for NormalLoop {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NormalLoop::VertexLink(v) => write!(f, "link({v})"),
            NormalLoop::Long(l) => {
                let w = l.weights;
                write!(f, "loop({},{},{},{},{},{})", w[0], w[1], w[2], w[3], w[4], w[5])
            }
        }
    }
}

pub(crate) fn parse_call<'a>(s: &'a str, name: &str) -> Option<&'a str> {
    let s = s.trim();
    let rest = s.strip_prefix(name)?.trim_start();
    rest.strip_prefix('(')?.strip_suffix(')')
}

impl FromStr for NormalLoop {
    type Err = NormalCurveError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NormalCurveError::Literal(s.to_string());
        if let Some(inner) = parse_call(s, "link") {
            let v: usize = inner.trim().parse().map_err(|_| bad())?;
            return NormalLoop::vertex_link(v);
        }
        if let Some(inner) = parse_call(s, "loop") {
            let parts: Vec<u32> = inner
                .split(',')
                .map(|p| p.trim().parse::<u32>())
                .collect::<Result<_, _>>()
                .map_err(|_| bad())?;
            let w: EdgeWeights = parts.try_into().map_err(|_| bad())?;
            return NormalLoop::long(w);
        }
        Err(bad())
    }
}

/// Slope `p/q` of a loop on the torus double cover of the tetrahedron
/// boundary, in the basis where the pair weights of a loop of slope `(p, q)`
/// are `(|q|, |p|, |p + q|)`.
///
/// Normalized so that `q > 0`, or `q == 0` and `p == 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Slope {
    p: i64,
    q: i64,
}

impl Slope {
    pub fn new(p: i64, q: i64) -> Option<Self> {
        if p.gcd(&q) != 1 {
            return None;
        }
        let (p, q) = if q < 0 || (q == 0 && p < 0) {
            (-p, -q)
        } else {
            (p, q)
        };
        Some(Slope { p, q })
    }

    pub fn p(&self) -> i64 {
        self.p
    }

    pub fn q(&self) -> i64 {
        self.q
    }

    pub fn from_pair_weights(pairs: [u32; 3]) -> Option<Self> {
        let [a, b, c] = pairs.map(|x| x as i64);
        // a = |q|, b = |p|, c = |p + q|
        let (p, q) = if c == a + b {
            (b, a)
        } else if a == b + c {
            (b, -(b + c))
        } else if b == a + c {
            (-(a + c), a)
        } else {
            return None;
        };
        Slope::new(p, q)
    }

    pub fn pair_weights(&self) -> [u32; 3] {
        [
            self.q.unsigned_abs() as u32,
            self.p.unsigned_abs() as u32,
            (self.p + self.q).unsigned_abs() as u32,
        ]
    }

    /// Geometric intersection number `|ps - qr|` of the two slopes on the
    /// torus.
    pub fn intersection(&self, other: &Slope) -> u64 {
        (self.p * other.q - self.q * other.p).unsigned_abs()
    }

    /// The two vertices on one side of a loop of this slope; the other two
    /// lie on the other side.
    pub fn hemisphere(&self) -> [usize; 2] {
        let v = lattice_vertex(self.p, self.q);
        [0, v]
    }
}

impl fmt::Display for Slope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

/// Tetrahedron vertex covered by the lattice point `i u + j v` of the flat
/// torus model.
pub(crate) fn lattice_vertex(i: i64, j: i64) -> usize {
    (i.rem_euclid(2) + 2 * j.rem_euclid(2)) as usize
}

/// A multiset of disjoint normal loops on one tetrahedron boundary: vertex
/// links plus a stack of parallel copies of one long loop.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct CurveSystem {
    links: [u32; 4],
    long: Option<(LongLoop, u32)>,
}

impl CurveSystem {
    pub fn new(links: [u32; 4], long: Option<(LongLoop, u32)>) -> Self {
        let long = long.filter(|&(_, k)| k > 0);
        CurveSystem { links, long }
    }

    pub fn single(l: NormalLoop) -> Self {
        CurveSystem::from_loops([l]).expect("one loop is always a system")
    }

    pub fn from_loops<I: IntoIterator<Item = NormalLoop>>(loops: I) -> Result<Self, NormalCurveError> {
        let mut sys = CurveSystem::default();
        for l in loops {
            match l {
                NormalLoop::VertexLink(v) => sys.links[v] += 1,
                NormalLoop::Long(ll) => match &mut sys.long {
                    None => sys.long = Some((ll, 1)),
                    Some((existing, k)) if *existing == ll => *k += 1,
                    Some((existing, _)) => {
                        return Err(NormalCurveError::NotParallel(
                            NormalLoop::Long(*existing),
                            NormalLoop::Long(ll),
                        ))
                    }
                },
            }
        }
        Ok(sys)
    }

    pub fn links(&self) -> [u32; 4] {
        self.links
    }

    pub fn long(&self) -> Option<(LongLoop, u32)> {
        self.long
    }

    pub fn loops(&self) -> Vec<NormalLoop> {
        let mut out = Vec::new();
        for v in 0..4 {
            for _ in 0..self.links[v] {
                out.push(NormalLoop::VertexLink(v));
            }
        }
        if let Some((l, k)) = self.long {
            for _ in 0..k {
                out.push(NormalLoop::Long(l));
            }
        }
        out
    }

    pub fn is_empty(&self) -> bool {
        self.links.iter().all(|&m| m == 0) && self.long.is_none()
    }

    pub fn weights(&self) -> EdgeWeights {
        let mut w = [0; 6];
        for (e, ends) in EDGES.iter().enumerate() {
            w[e] = self.links[ends[0]] + self.links[ends[1]];
            if let Some((l, k)) = self.long {
                w[e] += k * l.weights[e];
            }
        }
        w
    }

    /// Arcs cutting corner `vertex` off face `face`.
    pub fn corner_arcs(&self, face: usize, vertex: usize) -> u32 {
        self.links[vertex] + self.long.map_or(0, |(l, k)| k * l.corner_arcs(face, vertex))
    }

    pub fn slope(&self) -> Option<Slope> {
        self.long.map(|(l, _)| l.slope())
    }

    /// Types shared by the long members, `None` if there are none.
    pub fn types(&self) -> Option<Vec<ArcClass>> {
        self.long.map(|(l, _)| l.types())
    }

    pub fn shares_type_with(&self, other: &CurveSystem) -> bool {
        match (self.types(), other.types()) {
            (Some(a), Some(b)) => a.iter().any(|t| b.contains(t)),
            _ => true,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ll(p: [u32; 3]) -> LongLoop {
        LongLoop::from_pairs(p).unwrap()
    }

    #[test]
    fn lengths() {
        let fig1 = NormalLoop::long([1, 1, 3, 3, 4, 4]).unwrap();
        assert_eq!(fig1.length(), 16);
        assert_eq!(NormalLoop::VertexLink(2).length(), 3);
        assert_eq!(NormalLoop::long([1, 1, 0, 0, 1, 1]).unwrap().length(), 4);
    }

    #[test]
    fn helicoid_class_counts() {
        for n in 1..=6u32 {
            let counts = ll([1, n, n + 1]).class_counts();
            let mut sorted = counts;
            sorted.sort_unstable();
            assert_eq!(sorted, [0, 4, 4 * n]);
            assert_eq!(counts[2], 0);
        }
        assert_eq!(ll([1, 0, 1]).class_counts(), [0, 4, 0]);
        assert_eq!(NormalLoop::VertexLink(3).class_counts(), [1, 1, 1]);
    }

    #[test]
    fn negative_count_is_reported() {
        assert_eq!(
            class_counts_of_weights(&[5, 5, 1, 1, 1, 1]),
            Err(NormalCurveError::NegativeCount([5, 5, 1, 1, 1, 1]))
        );
        assert!(matches!(
            class_counts_of_weights(&[1, 2, 3, 3, 4, 4]),
            Err(NormalCurveError::Unbalanced(_))
        ));
    }

    #[test]
    fn types() {
        let fig1 = NormalLoop::long([1, 1, 3, 3, 4, 4]).unwrap();
        assert_eq!(fig1.curve_type().unwrap(), vec![EdgePair::new(2).unwrap()]);
        let quad = NormalLoop::long([1, 1, 0, 0, 1, 1]).unwrap();
        assert_eq!(quad.curve_type().unwrap().len(), 2);
        assert_eq!(
            NormalLoop::VertexLink(1).curve_type(),
            Err(NormalCurveError::LengthThree)
        );
    }

    #[test]
    fn balance_predicate() {
        assert!(is_opposite_balanced(&[1, 1, 3, 3, 4, 4]));
        assert!(!is_opposite_balanced(&[1, 2, 3, 3, 4, 4]));
    }

    #[test]
    fn connectivity_rule() {
        assert!(matches!(
            LongLoop::from_pairs([2, 2, 4]),
            Err(NormalCurveError::Disconnected { components: 2, .. })
        ));
        assert!(LongLoop::from_pairs([2, 3, 4]).is_err());
        assert_eq!(LongLoop::from_pairs([0, 0, 0]), Err(NormalCurveError::Empty));
    }

    #[test]
    fn slopes_reproduce_pair_weights() {
        for n in 0..=5u32 {
            let s = ll([1, n, n + 1]).slope();
            assert_eq!(s.pair_weights(), [1, n, n + 1]);
        }
        let quad = ll([1, 0, 1]).slope();
        assert_eq!(quad.pair_weights(), [1, 0, 1]);
        assert_eq!(
            NormalLoop::VertexLink(0).lift_to_torus(),
            Err(NormalCurveError::VertexLinkHasNoSlope)
        );
    }

    #[test]
    fn slope_intersections_of_sample_pairs() {
        let h6 = ll([1, 6, 7]).slope();
        assert_eq!(2 * h6.intersection(&ll([1, 2, 3]).slope()), 8);
        assert_eq!(2 * h6.intersection(&ll([1, 3, 4]).slope()), 6);
        assert_eq!(h6.intersection(&h6), 0);
    }

    #[test]
    fn literals_round_trip() {
        for s in ["link(2)", "loop(1,1,3,3,4,4)"] {
            let l: NormalLoop = s.parse().unwrap();
            assert_eq!(l.to_string(), s);
        }
        assert!("loop(1,1,3)".parse::<NormalLoop>().is_err());
        assert!("link(7)".parse::<NormalLoop>().is_err());
    }

    #[test]
    fn systems_require_parallel_long_loops() {
        let a = NormalLoop::Long(ll([1, 2, 3]));
        let b = NormalLoop::Long(ll([1, 3, 4]));
        assert!(CurveSystem::from_loops([a, a, NormalLoop::VertexLink(0)]).is_ok());
        assert!(matches!(
            CurveSystem::from_loops([a, b]),
            Err(NormalCurveError::NotParallel(..))
        ));
        let sys = CurveSystem::from_loops([a, a, NormalLoop::VertexLink(0)]).unwrap();
        assert_eq!(sys.weights(), [3, 2, 5, 4, 7, 6]);
        assert_eq!(sys.loops().len(), 3);
    }
}

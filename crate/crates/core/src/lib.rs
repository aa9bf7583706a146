//! Twisting of locally helical surfaces in triangulated 3-manifolds.
//!
//! Curves live on tetrahedron boundaries as normal loops ([`normal_curves`]);
//! surface pieces are triangles and helicoids ([`helicoids`]); pairs of
//! curve systems are drawn, intersected and resolved by [`intersection`].

pub mod helicoids;
pub mod intersection;
pub mod lemmas;
pub mod normal_curves;
pub mod surfaces;
pub mod tet;
pub mod tracing;
pub mod triangulation;

pub use helicoids::{enumerate_helicoids, Hand, HelicoidPiece, Piece};
pub use normal_curves::{CurveSystem, EdgePair, LongLoop, NormalLoop, Slope};
pub use tet::Sign;
pub use triangulation::{ClosedTriangulation, Triangulation};

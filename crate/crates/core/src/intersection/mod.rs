//! Curve systems drawn together on a tetrahedron boundary: crossings, their
//! normal signs, minimal position, and resolution of all crossings.
//!
//! Two routes give the minimal crossing number of a pair of systems. The
//! constructive one draws both systems as straight lines on the flat torus
//! that double covers the boundary ([`geodesic`]); the certifying one lifts
//! any drawing to that torus and bounds the count from below by algebraic
//! intersection ([`lift`]). Small cases are also searched exhaustively
//! ([`search`]).

pub mod chord;
pub mod geodesic;
pub mod lift;
pub mod realization;
pub mod resolve;
pub mod search;

use thiserror::Error;

use crate::normal_curves::CurveSystem;
use crate::tet::Sign;

pub use chord::{crossing_sign, Chord, FacePoint};
pub use realization::{Interleaving, MarkerRef, Owner, Realization, SignedCrossing};
pub use resolve::{resolve, ResolutionResult, TracedLoop};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IntersectionError {
    #[error("arcs do not cross")]
    NoCrossing,
    #[error("arc is not normal")]
    NotNormal,
    #[error("edge {edge}: interleaving has {have} points of {owner:?}, system needs {want}")]
    InterleavingMismatch {
        edge: usize,
        owner: Owner,
        have: usize,
        want: usize,
    },
    #[error("closed form needs helicoids of the same handedness on a shared axis")]
    MixedHandedness,
}

/// Draws `a` and `b` in minimal position.
pub fn realize_minimal(a: &CurveSystem, b: &CurveSystem, orientation: Sign) -> Realization {
    let il = geodesic::interleaving(a, b);
    Realization::new(a, b, il, orientation).expect("geodesic interleaving matches weights")
}

/// Signed crossing count of `a` against `b` in minimal position.
pub fn eta(a: &CurveSystem, b: &CurveSystem, orientation: Sign) -> i64 {
    realize_minimal(a, b, orientation).eta()
}

/// Minimal crossing number predicted by the torus slopes: each long loop
/// pair contributes `2 |ps - qr|`.
pub fn slope_crossings(a: &CurveSystem, b: &CurveSystem) -> u64 {
    match (a.long(), b.long()) {
        (Some((la, ka)), Some((lb, kb))) => {
            2 * la.slope().intersection(&lb.slope()) * ka as u64 * kb as u64
        }
        _ => 0,
    }
}

/// `2 (tH - tG)` for helicoids of equal handedness on a shared axis, given
/// their signed twists.
pub fn eta_closed_form(t_h: i64, t_g: i64) -> Result<i64, IntersectionError> {
    if t_h * t_g < 0 {
        return Err(IntersectionError::MixedHandedness);
    }
    Ok(2 * (t_h - t_g))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_values() {
        assert_eq!(eta_closed_form(6, 2), Ok(8));
        assert_eq!(eta_closed_form(6, 3), Ok(6));
        assert_eq!(eta_closed_form(4, 4), Ok(0));
        assert_eq!(eta_closed_form(-3, -1), Ok(-4));
        assert_eq!(eta_closed_form(3, -1), Err(IntersectionError::MixedHandedness));
    }
}

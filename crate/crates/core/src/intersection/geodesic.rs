//! Minimal-position drawings from straight lines on the flat torus.
//!
//! The plane, tiled by the unit triangular lattice spanned by `u` and `v`,
//! covers the tetrahedron boundary: lattice point `i u + j v` maps to vertex
//! `(i mod 2) + 2 (j mod 2)`, lattice segments in directions `u`, `v` and
//! `v - u` map to the edges of pairs 0, 1 and 2, and the covering group is
//! `x -> ±x + 2l`. The line `x0 + t (p, q)`, `0 <= t < 2`, maps to a loop of
//! slope `p/q`. Straight loops of different slopes meet minimally, and
//! parallel ones are disjoint, so their order along each edge is a
//! minimal-position interleaving.
//!
//! All arithmetic is exact.

use num_rational::Ratio;

use crate::normal_curves::{lattice_vertex, CurveSystem, Slope};
use crate::tet::{edge_index, EDGES};

use super::realization::{Interleaving, Owner};

type Q = Ratio<i64>;

/// Where a line crosses the 1-skeleton: `(edge, distance from the lower
/// endpoint)`.
fn crossing_point(a: (i64, i64), b: (i64, i64), s: Q) -> (usize, Q) {
    let va = lattice_vertex(a.0, a.1);
    let vb = lattice_vertex(b.0, b.1);
    let e = edge_index(va, vb);
    let from_lower = if va < vb { s } else { Q::from_integer(1) - s };
    (e, from_lower)
}

fn integers_between(a: Q, b: Q) -> std::ops::RangeInclusive<i64> {
    let (lo, hi) = if a < b { (a, b) } else { (b, a) };
    lo.floor().to_integer()..=hi.ceil().to_integer()
}

/// Edge crossings of one copy of the loop of slope `(p, q)` through
/// `(x0, y0)`.
pub fn line_markers(slope: Slope, x0: Q, y0: Q) -> Vec<(usize, Q)> {
    let (p, q) = (slope.p(), slope.q());
    let two = Q::from_integer(2);
    let in_period = |t: &Q| *t >= Q::from_integer(0) && *t < two;
    let mut out = Vec::new();
    // direction-u lines: second coordinate integral
    if q != 0 {
        for j in integers_between(y0, y0 + two * q) {
            let t = (Q::from_integer(j) - y0) / q;
            if in_period(&t) {
                let x = x0 + t * p;
                let i = x.floor().to_integer();
                out.push(crossing_point((i, j), (i + 1, j), x - x.floor()));
            }
        }
    }
    // direction-v lines: first coordinate integral
    if p != 0 {
        for i in integers_between(x0, x0 + two * p) {
            let t = (Q::from_integer(i) - x0) / p;
            if in_period(&t) {
                let y = y0 + t * q;
                let j = y.floor().to_integer();
                out.push(crossing_point((i, j), (i, j + 1), y - y.floor()));
            }
        }
    }
    // direction v-u lines: coordinate sum integral
    if p + q != 0 {
        let s0 = x0 + y0;
        for m in integers_between(s0, s0 + two * (p + q)) {
            let t = (Q::from_integer(m) - s0) / (p + q);
            if in_period(&t) {
                let x = x0 + t * p;
                let i = x.floor().to_integer();
                out.push(crossing_point((i, m - i), (i + 1, m - i - 1), x - x.floor()));
            }
        }
    }
    out
}

/// Small deterministic stream of generic offsets.
struct Offsets(u64);

impl Offsets {
    fn next(&mut self) -> Q {
        self.0 = self.0.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let num = ((self.0 >> 33) % 1008) as i64 + 1;
        Q::new(num, 1009)
    }
}

/// Long-loop points of both systems on every edge, as `(position, owner)`,
/// or `None` if the chosen offsets are degenerate.
fn long_points(systems: [&CurveSystem; 2], offsets: &mut Offsets) -> Option<[Vec<(Q, Owner)>; 6]> {
    let mut edges: [Vec<(Q, Owner)>; 6] = Default::default();
    for (owner, sys) in [Owner::A, Owner::B].into_iter().zip(systems) {
        let Some((l, k)) = sys.long() else { continue };
        let slope = l.slope();
        let (x0, y0) = (offsets.next(), offsets.next());
        // parallel copies step across the line, never along it
        let step = offsets.next() / 16;
        let (dx, dy) = (Q::from_integer(slope.q()), Q::from_integer(-slope.p()));
        for copy in 0..k as i64 {
            let s = step * copy;
            let pts = line_markers(slope, x0 + s * dx, y0 + s * dy);
            for (e, pos) in pts {
                edges[e].push((pos, owner));
            }
        }
    }
    for (e, pts) in edges.iter_mut().enumerate() {
        let want: u32 = systems
            .iter()
            .map(|s| s.long().map_or(0, |(l, k)| k * l.weights()[e]))
            .sum();
        if pts.len() != want as usize {
            return None;
        }
        pts.sort();
        let zero = Q::from_integer(0);
        if pts.iter().any(|(x, _)| *x == zero) || pts.windows(2).any(|w| w[0].0 == w[1].0) {
            return None;
        }
    }
    Some(edges)
}

/// Minimal-position interleaving of `a` and `b`.
///
/// Vertex links go at the ends of each edge, `A`'s outermost, where they
/// miss everything else.
pub fn interleaving(a: &CurveSystem, b: &CurveSystem) -> Interleaving {
    let mut offsets = Offsets(0x9e37_79b9_7f4a_7c15);
    let long = loop {
        if let Some(pts) = long_points([a, b], &mut offsets) {
            break pts;
        }
    };
    let (la, lb) = (a.links(), b.links());
    std::array::from_fn(|e| {
        let [lo, hi] = EDGES[e];
        let mut order = Vec::new();
        order.extend(std::iter::repeat_n(Owner::A, la[lo] as usize));
        order.extend(std::iter::repeat_n(Owner::B, lb[lo] as usize));
        order.extend(long[e].iter().map(|&(_, o)| o));
        order.extend(std::iter::repeat_n(Owner::B, lb[hi] as usize));
        order.extend(std::iter::repeat_n(Owner::A, la[hi] as usize));
        order
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::normal_curves::LongLoop;

    #[test]
    fn line_meets_edges_according_to_pair_weights() {
        for pairs in [[1, 0, 1], [1, 1, 2], [1, 3, 4], [3, 2, 1], [2, 5, 3]] {
            let l = LongLoop::from_pairs(pairs).unwrap();
            let pts = line_markers(l.slope(), Q::new(3, 1009), Q::new(17, 1009));
            let mut w = [0u32; 6];
            for (e, _) in pts {
                w[e] += 1;
            }
            assert_eq!(w, l.weights(), "pairs {pairs:?}");
        }
    }
}

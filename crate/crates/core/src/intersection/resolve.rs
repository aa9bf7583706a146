//! Resolving every crossing of a drawing by the regular exchange and
//! tracing what comes out.

use std::collections::HashMap;

use serde::Serialize;

use crate::normal_curves::{CurveSystem, EdgeWeights, LongLoop, NormalLoop};
use crate::tet::{edge_has_vertex, Sign, EDGES};

use super::chord::tail_to_tip_is_regular;
use super::realization::{MarkerRef, Realization};

/// One closed curve after resolution.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "camelCase")]
pub enum TracedLoop {
    /// Normal loop of length three around a vertex.
    Link { vertex: usize },
    Long { weights: EdgeWeights },
    /// Contains an arc with both ends on one edge, or lies inside a face.
    NonNormal { length: usize },
    /// Normal, but not a loop the tetrahedron boundary can carry alone.
    Irregular { weights: EdgeWeights },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ResolutionResult {
    pub loops: Vec<TracedLoop>,
    /// The loops as a curve system, when they form one.
    #[serde(skip)]
    pub system: Option<CurveSystem>,
    pub had_non_normal_arc: bool,
    /// Vertex links among the resolved loops, inherited ones included.
    pub length_three_count: usize,
    pub weights: EdgeWeights,
}

/// A path through one face after resolution.
#[derive(Debug, Clone, Copy)]
struct Piece {
    ends: [MarkerRef; 2],
}

fn sub(a: [f64; 2], b: [f64; 2]) -> [f64; 2] {
    [a[0] - b[0], a[1] - b[1]]
}

fn cross(u: [f64; 2], v: [f64; 2]) -> f64 {
    u[0] * v[1] - u[1] * v[0]
}

/// Crossing parameters `(s, u)` along chords `p -> q` and `r -> s`.
fn params(p: [f64; 2], q: [f64; 2], r: [f64; 2], s: [f64; 2]) -> (f64, f64) {
    let d = cross(sub(q, p), sub(s, r));
    let t = cross(sub(r, p), sub(s, r)) / d;
    let u = cross(sub(r, p), sub(q, p)) / d;
    (t, u)
}

/// Resolved pieces in one face, plus the number of closed curves left in
/// its interior.
fn resolve_face(real: &Realization, f: usize) -> (Vec<Piece>, usize) {
    let arcs = real.arcs();
    let ids: Vec<usize> = (0..arcs.len()).filter(|&i| arcs[i].face == f).collect();
    let local: HashMap<usize, usize> = ids.iter().enumerate().map(|(k, &i)| (i, k)).collect();
    let pts: Vec<([f64; 2], [f64; 2])> = ids
        .iter()
        .map(|&i| {
            let c = real.chord(i);
            (c.start.planar(), c.end.planar())
        })
        .collect();

    // per crossing: the two local chord ids (A first) and whether a_in
    // pairs with b_out
    let mut xs: Vec<([usize; 2], bool)> = Vec::new();
    // per chord: (parameter, crossing id)
    let mut along: Vec<Vec<(f64, usize)>> = vec![Vec::new(); ids.len()];
    for c in real.crossings().iter().filter(|c| c.face == f) {
        let [a, b] = c.arcs.map(|i| local[&i]);
        let (ca, cb) = (real.chord(c.arcs[0]), real.chord(c.arcs[1]));
        let (t, u) = params(pts[a].0, pts[a].1, pts[b].0, pts[b].1);
        let x = xs.len();
        xs.push(([a, b], tail_to_tip_is_regular(&ca, &cb)));
        along[a].push((t, x));
        along[b].push((u, x));
    }
    for v in &mut along {
        v.sort_by(|x, y| x.0.total_cmp(&y.0));
    }
    // position of each crossing along each of its chords
    let slot = |chord: usize, x: usize| along[chord].iter().position(|&(_, y)| y == x).expect("crossing on chord");

    // segment k of a chord runs from point k to point k + 1, where point 0
    // is the start, points 1..=n the crossings, and n + 1 the end
    let mut used: Vec<Vec<bool>> = along.iter().map(|v| vec![false; v.len() + 1]).collect();

    // from point `k` of `chord`, traverse one segment in direction `fwd`
    // and turn at the crossing reached; `Err` carries the chord end reached
    let step = |used: &mut Vec<Vec<bool>>, chord: usize, k: usize, fwd: bool| -> Result<(usize, usize, bool), usize> {
        used[chord][if fwd { k } else { k - 1 }] = true;
        let next = if fwd { k + 1 } else { k - 1 };
        if next == 0 {
            return Err(0);
        }
        if next == along[chord].len() + 1 {
            return Err(1);
        }
        let x = along[chord][next - 1].1;
        let ([a, b], a_in_b_out) = xs[x];
        let other = if chord == a { b } else { a };
        Ok((other, slot(other, x) + 1, a_in_b_out == fwd))
    };

    let mut pieces = Vec::new();
    for c in 0..ids.len() {
        let n = along[c].len();
        for (end, k, fwd, seg) in [(0, 0, true, 0), (1, n + 1, false, n)] {
            if used[c][seg] {
                continue;
            }
            let mut state = (c, k, fwd);
            let (last, last_end) = loop {
                match step(&mut used, state.0, state.1, state.2) {
                    Ok(s) => state = s,
                    Err(e) => break (state.0, e),
                }
            };
            pieces.push(Piece {
                ends: [arcs[ids[c]].ends[end], arcs[ids[last]].ends[last_end]],
            });
        }
    }
    // closed curves avoiding the boundary
    let mut interior = 0;
    for c in 0..ids.len() {
        for seg in 0..used[c].len() {
            if used[c][seg] {
                continue;
            }
            interior += 1;
            let mut state = (c, seg, true);
            loop {
                let (ch, k, fwd) = step(&mut used, state.0, state.1, state.2)
                    .expect("boundary pieces are already traced");
                if used[ch][if fwd { k } else { k - 1 }] {
                    break;
                }
                state = (ch, k, fwd);
            }
        }
    }
    (pieces, interior)
}

/// Resolves every crossing of `real`.
pub fn resolve_realization(real: &Realization) -> ResolutionResult {
    let mut pieces = Vec::new();
    let mut interior = 0;
    for f in 0..4 {
        let (p, i) = resolve_face(real, f);
        pieces.extend(p);
        interior += i;
    }
    let mut at_marker: HashMap<MarkerRef, Vec<usize>> = HashMap::new();
    for (i, p) in pieces.iter().enumerate() {
        for m in p.ends {
            at_marker.entry(m).or_default().push(i);
        }
    }

    let mut loops = Vec::new();
    let mut seen = vec![false; pieces.len()];
    let mut weights = [0u32; 6];
    for start in 0..pieces.len() {
        if seen[start] {
            continue;
        }
        let mut cur = start;
        let mut exit = pieces[start].ends[1];
        let mut members = Vec::new();
        loop {
            seen[cur] = true;
            members.push(cur);
            weights[exit.edge] += 1;
            let next = at_marker[&exit]
                .iter()
                .copied()
                .find(|&p| p != cur)
                .expect("every marker joins two pieces");
            if next == start {
                break;
            }
            exit = if pieces[next].ends[0] == exit {
                pieces[next].ends[1]
            } else {
                pieces[next].ends[0]
            };
            cur = next;
        }
        loops.push(classify(&pieces, &members));
    }
    for _ in 0..interior {
        loops.push(TracedLoop::NonNormal { length: 0 });
    }

    let had_non_normal_arc = loops.iter().any(|l| matches!(l, TracedLoop::NonNormal { .. }));
    let length_three_count = loops.iter().filter(|l| matches!(l, TracedLoop::Link { .. })).count();
    let system = loops
        .iter()
        .map(|l| match *l {
            TracedLoop::Link { vertex } => NormalLoop::vertex_link(vertex).ok(),
            TracedLoop::Long { weights } => NormalLoop::long(weights).ok(),
            _ => None,
        })
        .collect::<Option<Vec<_>>>()
        .and_then(|ls| CurveSystem::from_loops(ls).ok());
    ResolutionResult {
        loops,
        system,
        had_non_normal_arc,
        length_three_count,
        weights,
    }
}

fn classify(pieces: &[Piece], members: &[usize]) -> TracedLoop {
    let mut weights = [0u32; 6];
    let mut corners = Vec::new();
    for &i in members {
        let [m, n] = pieces[i].ends;
        if m.edge == n.edge {
            return TracedLoop::NonNormal { length: members.len() };
        }
        weights[m.edge] += 1;
        weights[n.edge] += 1;
        let v = EDGES[m.edge]
            .into_iter()
            .find(|&v| edge_has_vertex(n.edge, v))
            .expect("edges of one face share a vertex");
        corners.push(v);
    }
    let weights = weights.map(|w| w / 2);
    if members.len() == 3 && corners.iter().all(|&v| v == corners[0]) {
        return TracedLoop::Link { vertex: corners[0] };
    }
    match LongLoop::new(weights) {
        Ok(_) => TracedLoop::Long { weights },
        Err(_) => TracedLoop::Irregular { weights },
    }
}

/// Draws `a` and `b` in minimal position and resolves every crossing.
pub fn resolve(a: &CurveSystem, b: &CurveSystem) -> ResolutionResult {
    resolve_realization(&super::realize_minimal(a, b, Sign::Pos))
}

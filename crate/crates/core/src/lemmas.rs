//! Exhaustive property sweeps, shared by the command line and the tests.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::helicoids::{boundary_system, Hand, HelicoidPiece};
use crate::intersection::{self, lift, resolve::resolve_realization};
use crate::normal_curves::{is_opposite_balanced, CurveSystem, EdgePair, LongLoop};
use crate::surfaces::corpus::{enumerate_surfaces, CorpusBounds};
use crate::surfaces::{
    boundary_sign_balance, interior_cancellation, verify_invariance, DrawingStrategy, GlobalDrawing,
    Subcomplex,
};
use crate::tet::Sign;
use crate::tracing::NormalCoords;
use crate::triangulation::{doubled_tetrahedron, folded_pair, ClosedTriangulation};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Rotation,
    NoLength3,
    SameSign,
    NumTurns,
    NetZero,
    MainLemma,
}

impl Suite {
    pub const ALL: [Suite; 6] = [
        Suite::Rotation,
        Suite::NoLength3,
        Suite::SameSign,
        Suite::NumTurns,
        Suite::NetZero,
        Suite::MainLemma,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Rotation => "rotation",
            Suite::NoLength3 => "nolength3",
            Suite::SameSign => "samesign",
            Suite::NumTurns => "numturns",
            Suite::NetZero => "netzero",
            Suite::MainLemma => "mainlemma",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| format!("unknown suite `{s}`"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SuiteParams {
    /// Twist bound for helicoid sweeps and corpora.
    pub max_twist: u32,
    /// Pair-weight bound for curve-system sweeps; tracing goes up to three
    /// times this many arcs.
    pub max_weight: u32,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams { max_twist: 8, max_weight: 8 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Failure {
    pub case: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dump: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub cases: u64,
    pub failures: Vec<Failure>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> Self {
        SuiteReport { suite: suite.name().to_string(), cases: 0, failures: Vec::new(), notes: Vec::new() }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, case: String, dump: Option<String>) {
        // keep reports bounded; the first few counterexamples suffice
        if self.failures.len() < 20 {
            self.failures.push(Failure { case, dump });
        }
    }
}

/// Long loops with every pair weight at most `max_pair`.
pub fn long_loops(max_pair: u32) -> Vec<LongLoop> {
    let mut out = Vec::new();
    for a in 0..=max_pair {
        for b in 0..=max_pair {
            for c in 0..=max_pair {
                if let Ok(l) = LongLoop::from_pairs([a, b, c]) {
                    out.push(l);
                }
            }
        }
    }
    out
}

/// Systems with a long part whose pair weights stay within `max_weight`:
/// stacks of parallel copies, and single loops beside one vertex link.
pub fn curve_systems(max_weight: u32) -> Vec<CurveSystem> {
    let mut out = Vec::new();
    for l in long_loops(max_weight) {
        let top = *l.pairs().iter().max().expect("three pairs");
        for k in 1..=max_weight / top {
            out.push(CurveSystem::new([0; 4], Some((l, k))));
        }
        if 2 * top <= max_weight {
            for v in 0..4 {
                let mut links = [0; 4];
                links[v] = 1;
                out.push(CurveSystem::new(links, Some((l, 1))));
            }
        }
    }
    out
}

fn same_type_pairs(max_weight: u32) -> Vec<(CurveSystem, CurveSystem)> {
    let sys = curve_systems(max_weight);
    let mut out = Vec::new();
    for a in &sys {
        for b in &sys {
            if a.shares_type_with(b) {
                out.push((*a, *b));
            }
        }
    }
    out
}

fn rotation(r: &mut SuiteReport, p: &SuiteParams) {
    let max_arcs = 3 * p.max_weight;
    // the three half-turns, as vertex permutations
    let turns: [[usize; 4]; 3] = [[1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];
    for coords in NormalCoords::enumerate(max_arcs) {
        for comp in coords.components() {
            r.cases += 1;
            if comp.length() >= 4 && !is_opposite_balanced(&comp.weights) {
                r.fail(format!("component {:?} of {:?} is unbalanced", comp.weights, coords.arcs), None);
            }
        }
        let counts = |c: &NormalCoords| {
            let mut all: Vec<[u32; 3]> = c.components().iter().map(|x| x.class_counts()).collect();
            all.sort_unstable();
            all
        };
        for t in turns {
            let mut rotated = NormalCoords::default();
            for f in 0..4 {
                for v in 0..4 {
                    rotated.arcs[t[f]][t[v]] = coords.arcs[f][v];
                }
            }
            if counts(&rotated) != counts(&coords) {
                r.fail(format!("class counts of {:?} change under half-turn {t:?}", coords.arcs), None);
            }
        }
    }
    r.notes.push(format!("traced all normal curves with at most {max_arcs} arcs"));
}

fn no_length_three(r: &mut SuiteReport, p: &SuiteParams) {
    for (a, b) in same_type_pairs(p.max_weight) {
        r.cases += 1;
        let real = intersection::realize_minimal(&a, &b, Sign::Pos);
        let res = resolve_realization(&real);
        let sum: Vec<u32> = (0..6).map(|e| a.weights()[e] + b.weights()[e]).collect();
        let inherited: u32 = a.links().iter().chain(b.links().iter()).sum();
        let created = res.length_three_count as i64 - inherited as i64;
        if created != 0 || res.had_non_normal_arc || res.weights.to_vec() != sum {
            r.fail(format!("{a:?} + {b:?} gives {:?}", res.loops), Some(real.dump()));
        }
    }
    // the type hypothesis is needed: loops of different types
    let (x, y) = (LongLoop::from_pairs([1, 2, 3]), LongLoop::from_pairs([3, 1, 2]));
    let (x, y) = (x.expect("valid loop"), y.expect("valid loop"));
    let res = intersection::resolve(&CurveSystem::new([0; 4], Some((x, 1))), &CurveSystem::new([0; 4], Some((y, 1))));
    r.notes.push(format!(
        "different types (1,2,3) and (3,1,2): {} loops of length three, non-normal arc: {}",
        res.length_three_count, res.had_non_normal_arc
    ));
    if res.length_three_count == 0 && !res.had_non_normal_arc {
        r.fail("different-type pair resolved without a length-three loop".into(), None);
    }
}

fn same_sign(r: &mut SuiteReport, p: &SuiteParams) {
    for (a, b) in same_type_pairs(p.max_weight) {
        r.cases += 1;
        let real = intersection::realize_minimal(&a, &b, Sign::Pos);
        let (pos, neg) = real.sign_counts();
        let minimal = lift::crossing_lower_bound(&real) == real.crossing_count() as u64;
        if (pos > 0 && neg > 0) || !minimal {
            r.fail(format!("{a:?} x {b:?}: signs +{pos} -{neg}, minimal {minimal}"), Some(real.dump()));
        }
    }
}

fn num_turns(r: &mut SuiteReport, p: &SuiteParams) {
    for axis in EdgePair::ALL {
        for hand in [Hand::Right, Hand::Left] {
            for n in 0..=p.max_twist {
                for m in 0..=p.max_twist {
                    let (h, g) = (HelicoidPiece::new(axis, n, hand), HelicoidPiece::new(axis, m, hand));
                    for o in [Sign::Pos, Sign::Neg] {
                        r.cases += 1;
                        let (a, b) = (boundary_system(&h, 1), boundary_system(&g, 1));
                        let real = intersection::realize_minimal(&a, &b, o);
                        let th = h.twisting(axis, o).expect("own axis");
                        let tg = g.twisting(axis, o).expect("own axis");
                        let want = intersection::eta_closed_form(th, tg).expect("same handedness");
                        if real.eta() != want {
                            r.fail(format!("{h} vs {g} in orientation {o}: eta {} != {want}", real.eta()), Some(real.dump()));
                        }
                    }
                }
            }
        }
    }
}

/// A small complex with the corpora the surface suites sweep on it.
pub struct TestComplex {
    pub name: &'static str,
    pub triangulation: ClosedTriangulation,
    /// Sign balance checks every pair, so this corpus stays small.
    pub balance_corpus: CorpusBounds,
    /// One helicoid per tetrahedron.
    pub invariance_corpus: CorpusBounds,
}

pub fn test_complexes(max_twist: u32) -> Vec<TestComplex> {
    vec![
        TestComplex {
            name: "doubled tetrahedron",
            triangulation: doubled_tetrahedron(),
            balance_corpus: CorpusBounds { max_twist, max_links: 0, max_copies: 2 },
            invariance_corpus: CorpusBounds { max_twist, max_links: 2, max_copies: 1 },
        },
        TestComplex {
            name: "folded pair",
            triangulation: folded_pair(),
            balance_corpus: CorpusBounds { max_twist, max_links: 1, max_copies: 2 },
            invariance_corpus: CorpusBounds { max_twist, max_links: 3, max_copies: 1 },
        },
    ]
}

/// The empty set and the initial segments of the tetrahedra.
pub fn deltas(m: &ClosedTriangulation) -> Vec<Subcomplex> {
    let mut out = vec![Subcomplex::default()];
    for t in 0..m.tet_count() {
        out.push(Subcomplex::from_tets(0..=t));
    }
    out
}

fn sign_balance(r: &mut SuiteReport, p: &SuiteParams) {
    for c in test_complexes(p.max_twist) {
        let (name, m) = (c.name, &c.triangulation);
        let corpus = enumerate_surfaces(m, &c.balance_corpus);
        let ds = deltas(m);
        let (mut compatible, mut crossings) = (0u64, 0u64);
        for (i, h) in corpus.iter().enumerate() {
            for g in &corpus[i..] {
                for d in &ds {
                    for strategy in [DrawingStrategy::Stacked, DrawingStrategy::Shuffled(i as u64)] {
                        let Ok((pos, neg)) = boundary_sign_balance(m, h, g, d, strategy) else {
                            continue;
                        };
                        compatible += 1;
                        crossings += (pos + neg) as u64;
                        if pos != neg {
                            r.fail(
                                format!("{name}, delta {:?}: +{pos} -{neg}\n{}\n{}", d, h.to_document(), g.to_document()),
                                None,
                            );
                        }
                    }
                }
                let drawing = GlobalDrawing::new(m, h, g, DrawingStrategy::Shuffled(7)).expect("corpus surfaces match");
                let c = interior_cancellation(m, &drawing);
                if c.mismatches > 0 {
                    r.fail(format!("{name}: {} face crossings fail to cancel", c.mismatches), None);
                }
            }
        }
        r.cases += compatible;
        r.notes.push(format!(
            "{name}: {} surfaces, {compatible} compatible drawings, {crossings} boundary crossings",
            corpus.len()
        ));
    }
}

fn invariance(r: &mut SuiteReport, p: &SuiteParams) {
    for c in test_complexes(p.max_twist) {
        let (name, m) = (c.name, &c.triangulation);
        let corpus = enumerate_surfaces(m, &c.invariance_corpus);
        for d in deltas(m) {
            let rep = verify_invariance(m, &corpus, &d);
            r.cases += rep.buckets.len() as u64;
            for v in &rep.violations {
                r.fail(
                    format!(
                        "{name}, delta {d:?}: net {} for surface {} but {} for surface {}\n{}\n{}",
                        v.first.1,
                        v.first.0,
                        v.other.1,
                        v.other.0,
                        corpus[v.first.0].to_document(),
                        corpus[v.other.0].to_document()
                    ),
                    None,
                );
            }
            r.notes.push(format!(
                "{name}, delta {:?}: {} surfaces, {} buckets, smallest {}",
                d.iter().collect::<Vec<_>>(),
                corpus.len(),
                rep.buckets.len(),
                rep.smallest_bucket()
            ));
        }
    }
}

pub fn run_suite(suite: Suite, p: &SuiteParams) -> SuiteReport {
    let mut r = SuiteReport::new(suite);
    match suite {
        Suite::Rotation => rotation(&mut r, p),
        Suite::NoLength3 => no_length_three(&mut r, p),
        Suite::SameSign => same_sign(&mut r, p),
        Suite::NumTurns => num_turns(&mut r, p),
        Suite::NetZero => sign_balance(&mut r, p),
        Suite::MainLemma => invariance(&mut r, p),
    }
    r
}

use proptest::prelude::*;

use helitwist::intersection::realization::stacked_interleaving as stacked;
use helitwist::intersection::{self, lift, Owner, Realization};
use helitwist::lemmas::test_complexes;
use helitwist::surfaces::corpus::{enumerate_surfaces, CorpusBounds};
use helitwist::surfaces::{net_twisting_range, verify_invariance, LocallyHelicalSurface, Subcomplex};
use helitwist::surfaces::consistency::signatures;
use helitwist::triangulation::folded_pair;
use helitwist::{CurveSystem, LongLoop, Sign};

fn long_loop(max: u32) -> impl Strategy<Value = LongLoop> {
    // one pair weight is the sum of the other two
    (0..=max / 2, 0..=max / 2, 0..3usize).prop_filter_map("not a long loop", |(a, b, heavy)| {
        let mut pairs = [a, a, a];
        pairs[heavy] = a + b;
        pairs[(heavy + 1) % 3] = b;
        LongLoop::from_pairs(pairs).ok()
    })
}

fn system(max: u32) -> impl Strategy<Value = CurveSystem> {
    (prop::array::uniform4(0..2u32), long_loop(max), 1..3u32)
        .prop_map(|(links, l, k)| CurveSystem::new(links, Some((l, k))))
}

fn shuffled(a: &CurveSystem, b: &CurveSystem, seed: u64) -> [Vec<Owner>; 6] {
    let mut il = stacked(a, b);
    let mut state = seed;
    for order in il.iter_mut() {
        for i in (1..order.len()).rev() {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (state >> 33) as usize % (i + 1));
        }
    }
    il
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn eta_does_not_depend_on_the_drawing(a in system(12), b in system(12), seed in any::<u64>()) {
        let minimal = intersection::eta(&a, &b, Sign::Pos);
        let drawn = Realization::new(&a, &b, shuffled(&a, &b, seed), Sign::Pos).unwrap();
        prop_assert_eq!(drawn.eta(), minimal);
        prop_assert!(drawn.crossing_count() as u64 >= intersection::slope_crossings(&a, &b));
    }

    #[test]
    fn eta_is_antisymmetric(a in system(12), b in system(12)) {
        prop_assert_eq!(intersection::eta(&a, &b, Sign::Pos), -intersection::eta(&b, &a, Sign::Pos));
        prop_assert_eq!(intersection::eta(&a, &b, Sign::Pos), -intersection::eta(&a, &b, Sign::Neg));
    }

    #[test]
    fn minimal_drawings_meet_the_slope_count(a in long_loop(40), b in long_loop(40)) {
        let (sa, sb) = (CurveSystem::new([0; 4], Some((a, 1))), CurveSystem::new([0; 4], Some((b, 1))));
        let real = intersection::realize_minimal(&sa, &sb, Sign::Pos);
        let want = intersection::slope_crossings(&sa, &sb);
        prop_assert_eq!(real.crossing_count() as u64, want);
        prop_assert_eq!(lift::crossing_lower_bound(&real), want);
    }

    #[test]
    fn resolution_adds_edge_weights(a in system(10), b in system(10)) {
        prop_assume!(a.shares_type_with(&b));
        let res = intersection::resolve(&a, &b);
        let sum: Vec<u32> = (0..6).map(|e| a.weights()[e] + b.weights()[e]).collect();
        prop_assert_eq!(res.weights.to_vec(), sum);
        prop_assert!(!res.had_non_normal_arc);
        let links: u32 = a.links().iter().chain(b.links().iter()).sum();
        prop_assert_eq!(res.length_three_count as u32, links);
    }
}

#[test]
fn net_range_spans_every_reading() {
    for c in test_complexes(3) {
        let m = &c.triangulation;
        let all = Subcomplex::all(m.tet_count());
        for h in enumerate_surfaces(m, &CorpusBounds { max_twist: 3, max_links: 0, max_copies: 2 }) {
            let nets: Vec<i64> = signatures(m, &h, &all).into_iter().map(|(_, n)| n).collect();
            let range = net_twisting_range(m, &h, &all);
            assert_eq!(range, [*nets.iter().min().unwrap(), *nets.iter().max().unwrap()], "{}", h.to_document());
        }
    }
}

#[test]
fn parallel_copies_break_invariance() {
    // net twisting weights each copy, while the boundary balance only pins
    // down the products of multiplicities
    let m = folded_pair();
    let corpus = enumerate_surfaces(&m, &CorpusBounds { max_twist: 2, max_links: 1, max_copies: 2 });
    let rep = verify_invariance(&m, &corpus, &Subcomplex::from_tets([0]));
    assert!(!rep.violations.is_empty());
    let single: Vec<LocallyHelicalSurface> = corpus
        .into_iter()
        .filter(|h| h.tets().all(|t| h.system(t).long().is_none_or(|(_, k)| k == 1)))
        .collect();
    assert!(verify_invariance(&m, &single, &Subcomplex::from_tets([0])).violations.is_empty());
}

#[test]
fn surface_documents_round_trip() {
    for c in test_complexes(2) {
        for h in enumerate_surfaces(&c.triangulation, &c.balance_corpus) {
            assert_eq!(LocallyHelicalSurface::parse(&h.to_document()).unwrap(), h);
        }
    }
}

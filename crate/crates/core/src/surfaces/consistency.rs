//! Compatibility outside a subcomplex, consistency, and the invariance of
//! net twisting on consistency classes.

use std::collections::{BTreeMap, BTreeSet};
use std::str::FromStr;

use serde::Serialize;

use crate::helicoids::{enumerate_helicoids, Hand};
use crate::normal_curves::{EdgePair, Slope};
use crate::triangulation::ClosedTriangulation;

use super::{readings, LocallyHelicalSurface, Reading};

/// A set of tetrahedra.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, Serialize)]
pub struct Subcomplex(BTreeSet<usize>);

impl Subcomplex {
    pub fn all(tet_count: usize) -> Self {
        Subcomplex((0..tet_count).collect())
    }

    pub fn from_tets<I: IntoIterator<Item = usize>>(tets: I) -> Self {
        Subcomplex(tets.into_iter().collect())
    }

    pub fn contains(&self, tet: usize) -> bool {
        self.0.contains(&tet)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Tetrahedra of `m` outside this set.
    pub fn complement(&self, tet_count: usize) -> Subcomplex {
        Subcomplex((0..tet_count).filter(|t| !self.contains(*t)).collect())
    }
}

impl FromStr for Subcomplex {
    type Err = String;

    /// Comma-separated tetrahedron indices; the empty string is the empty
    /// set.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.split(',')
            .map(str::trim)
            .filter(|p| !p.is_empty())
            .map(|p| p.parse::<usize>().map_err(|_| format!("`{p}` is not a tetrahedron index")))
            .collect::<Result<BTreeSet<_>, _>>()
            .map(Subcomplex)
    }
}

/// The data consistency compares: the slope of the long loops in each
/// tetrahedron outside `Δ`, and an axis and handedness in each tetrahedron
/// of `Δ` (`None` where there is no helicoid). Vertex links play no part.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct ConsistencySignature {
    pub outside: BTreeMap<usize, Option<Slope>>,
    pub inside: BTreeMap<usize, Option<(EdgePair, Hand)>>,
}

/// Whether the long loops of `h` and `g` are parallel in every tetrahedron
/// outside `delta`.
pub fn compatible_outside(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    g: &LocallyHelicalSurface,
    delta: &Subcomplex,
) -> bool {
    delta.complement(m.tet_count()).iter().all(|t| {
        match (h.system(t).slope(), g.system(t).slope()) {
            (Some(a), Some(b)) => a == b,
            _ => true,
        }
    })
}

/// Every signature of `h`, one per choice of reading in the tetrahedra of
/// `delta`, each with the net twisting over `delta` under that choice.
pub fn signatures(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    delta: &Subcomplex,
) -> Vec<(ConsistencySignature, i64)> {
    let outside = delta
        .complement(m.tet_count())
        .iter()
        .map(|t| (t, h.system(t).slope()))
        .collect::<BTreeMap<_, _>>();
    let mut partial: Vec<(BTreeMap<usize, Option<(EdgePair, Hand)>>, i64)> = vec![(BTreeMap::new(), 0)];
    for t in delta.iter() {
        let rs = readings(m, h, t);
        let k = h.system(t).long().map_or(0, |(_, k)| k as i64);
        let options: Vec<Option<Reading>> = if rs.is_empty() { vec![None] } else { rs.into_iter().map(Some).collect() };
        partial = partial
            .into_iter()
            .flat_map(|(map, net)| {
                options.iter().map(move |r| {
                    let mut map = map.clone();
                    map.insert(t, r.map(|r| (r.axis, r.hand)));
                    (map, net + k * r.map_or(0, |r| r.twist))
                })
            })
            .collect();
    }
    partial
        .into_iter()
        .map(|(inside, net)| (ConsistencySignature { outside: outside.clone(), inside }, net))
        .collect()
}

/// A signature shared by `h` and `g`, if they are consistent.
pub fn consistent(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    g: &LocallyHelicalSurface,
    delta: &Subcomplex,
) -> Option<ConsistencySignature> {
    if !compatible_outside(m, h, g, delta) {
        return None;
    }
    let mut inside = BTreeMap::new();
    for t in delta.iter() {
        let key = |r: &Reading| (r.axis, r.hand);
        let (rh, rg) = (readings(m, h, t), readings(m, g, t));
        let shared = match (rh.is_empty(), rg.is_empty()) {
            (true, true) => None,
            (false, false) => Some(rh.iter().map(key).find(|k| rg.iter().map(key).any(|x| x == *k))?),
            _ => return None,
        };
        inside.insert(t, shared);
    }
    let outside = delta
        .complement(m.tet_count())
        .iter()
        .map(|t| (t, h.system(t).slope().or(g.system(t).slope())))
        .collect();
    Some(ConsistencySignature { outside, inside })
}

/// Outcome of comparing two surfaces over a subcomplex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Comparison {
    pub delta: Subcomplex,
    pub compatible_outside: bool,
    pub signature: Option<ConsistencySignature>,
    /// Net twisting over `delta` of each surface under the shared readings.
    pub net: Option<[i64; 2]>,
}

impl Comparison {
    pub fn consistent(&self) -> bool {
        self.signature.is_some()
    }

    /// Consistent surfaces must have equal net twisting.
    pub fn holds(&self) -> bool {
        self.net.is_none_or(|[a, b]| a == b)
    }

    pub fn to_text(&self) -> String {
        let delta: Vec<usize> = self.delta.iter().collect();
        let mut s = format!("delta {delta:?}: compatible outside: {}\n", self.compatible_outside);
        match (&self.signature, self.net) {
            (Some(sig), Some([a, b])) => {
                s.push_str("consistent\n");
                for (t, r) in &sig.inside {
                    match r {
                        Some((axis, hand)) => s.push_str(&format!("  tet {t}: axis {axis} {hand}\n")),
                        None => s.push_str(&format!("  tet {t}: no helicoid\n")),
                    }
                }
                let verdict = if a == b { "equal" } else { "DIFFERENT" };
                s.push_str(&format!("net twisting {a} and {b}: {verdict}\n"));
            }
            _ => s.push_str("not consistent\n"),
        }
        s
    }
}

fn net_under(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    delta: &Subcomplex,
    inside: &BTreeMap<usize, Option<(EdgePair, Hand)>>,
) -> i64 {
    signatures(m, h, delta)
        .into_iter()
        .find(|(s, _)| s.inside == *inside)
        .map(|(_, net)| net)
        .expect("a shared signature is one of the surface's own")
}

/// Decides consistency of `h` and `g` over `delta` and, when consistent,
/// their net twisting under the shared readings.
pub fn compare(
    m: &ClosedTriangulation,
    h: &LocallyHelicalSurface,
    g: &LocallyHelicalSurface,
    delta: &Subcomplex,
) -> Comparison {
    let signature = consistent(m, h, g, delta);
    let net = signature
        .as_ref()
        .map(|sig| [net_under(m, h, delta, &sig.inside), net_under(m, g, delta, &sig.inside)]);
    Comparison { delta: delta.clone(), compatible_outside: compatible_outside(m, h, g, delta), signature, net }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Bucket {
    pub signature: ConsistencySignature,
    /// Corpus indices with their net twisting under the bucket's readings.
    pub members: Vec<(usize, i64)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct Violation {
    pub signature: ConsistencySignature,
    pub first: (usize, i64),
    pub other: (usize, i64),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct InvarianceReport {
    pub delta: Subcomplex,
    pub buckets: Vec<Bucket>,
    pub violations: Vec<Violation>,
}

impl InvarianceReport {
    pub fn smallest_bucket(&self) -> usize {
        self.buckets.iter().map(|b| b.members.len()).min().unwrap_or(0)
    }
}

/// Buckets `corpus` by signature and checks that net twisting over `delta`
/// is constant in every bucket. A surface with several readings joins one
/// bucket per reading.
pub fn verify_invariance(
    m: &ClosedTriangulation,
    corpus: &[LocallyHelicalSurface],
    delta: &Subcomplex,
) -> InvarianceReport {
    let mut buckets: BTreeMap<ConsistencySignature, Vec<(usize, i64)>> = BTreeMap::new();
    for (i, h) in corpus.iter().enumerate() {
        for (sig, net) in signatures(m, h, delta) {
            buckets.entry(sig).or_default().push((i, net));
        }
    }
    let mut violations = Vec::new();
    for (sig, members) in &buckets {
        if let Some(&other) = members.iter().find(|x| x.1 != members[0].1) {
            violations.push(Violation { signature: sig.clone(), first: members[0], other });
        }
    }
    InvarianceReport {
        delta: delta.clone(),
        buckets: buckets
            .into_iter()
            .map(|(signature, members)| Bucket { signature, members })
            .collect(),
        violations,
    }
}

/// Upper bound on the number of consistency classes of surfaces whose
/// helicoids have twist magnitude at most `n` and which carry a helicoid in
/// every tetrahedron of `delta`: each outside tetrahedron holds no long
/// loop or one of the helicoid slopes, and each tetrahedron of `delta` one
/// of three axes with one of two hands.
pub fn count_consistency_classes(m: &ClosedTriangulation, delta: &Subcomplex, n: u32) -> u128 {
    let slopes: BTreeSet<Slope> = enumerate_helicoids(n).iter().map(|h| h.boundary().slope()).collect();
    let outside = delta.complement(m.tet_count()).len() as u32;
    (1 + slopes.len() as u128).pow(outside) * per_delta_tet_factor().pow(delta.len() as u32)
}

/// Choices of reading in one tetrahedron of `Δ`.
pub fn per_delta_tet_factor() -> u128 {
    (EdgePair::ALL.len() * [Hand::Left, Hand::Right].len()) as u128
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::triangulation::doubled_tetrahedron;

    #[test]
    fn subcomplex_parsing() {
        assert_eq!("0, 2".parse::<Subcomplex>().unwrap(), Subcomplex::from_tets([0, 2]));
        assert!("".parse::<Subcomplex>().unwrap().is_empty());
        assert!("0,x".parse::<Subcomplex>().is_err());
    }

    #[test]
    fn class_counts() {
        let m = doubled_tetrahedron();
        assert_eq!(count_consistency_classes(&m, &Subcomplex::all(2), 5), 36);
        assert_eq!(count_consistency_classes(&m, &Subcomplex::from_tets([0]), 0), 4 * 6);
        for n in 0..6 {
            let d = Subcomplex::from_tets([1]);
            assert!(count_consistency_classes(&m, &d, n) <= count_consistency_classes(&m, &d, n + 1));
        }
    }
}

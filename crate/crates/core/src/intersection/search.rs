//! Exhaustive search over interleavings for small systems.

use crate::normal_curves::CurveSystem;
use crate::tet::Sign;

use super::realization::{Interleaving, Owner, Realization};

/// All orders of `a` copies of `A` and `b` copies of `B`.
fn arrangements(a: usize, b: usize) -> Vec<Vec<Owner>> {
    if a == 0 {
        return vec![vec![Owner::B; b]];
    }
    if b == 0 {
        return vec![vec![Owner::A; a]];
    }
    let mut out = Vec::new();
    for (first, rest) in [(Owner::A, arrangements(a - 1, b)), (Owner::B, arrangements(a, b - 1))] {
        for mut r in rest {
            r.insert(0, first);
            out.push(r);
        }
    }
    out
}

/// Number of interleavings of `a` and `b`.
pub fn interleaving_count(a: &CurveSystem, b: &CurveSystem) -> u128 {
    let (wa, wb) = (a.weights(), b.weights());
    (0..6)
        .map(|e| binomial(wa[e] as u128 + wb[e] as u128, wb[e] as u128))
        .product()
}

fn binomial(n: u128, k: u128) -> u128 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Every interleaving of `a` and `b`, or `None` if there are more than
/// `budget`.
pub fn all_interleavings(a: &CurveSystem, b: &CurveSystem, budget: u128) -> Option<Vec<Interleaving>> {
    if interleaving_count(a, b) > budget {
        return None;
    }
    let (wa, wb) = (a.weights(), b.weights());
    let per_edge: Vec<Vec<Vec<Owner>>> = (0..6)
        .map(|e| arrangements(wa[e] as usize, wb[e] as usize))
        .collect();
    let mut out = Vec::new();
    let mut idx = [0usize; 6];
    loop {
        out.push(std::array::from_fn(|e| per_edge[e][idx[e]].clone()));
        let mut e = 0;
        loop {
            if e == 6 {
                return Some(out);
            }
            idx[e] += 1;
            if idx[e] < per_edge[e].len() {
                break;
            }
            idx[e] = 0;
            e += 1;
        }
    }
}

/// Fewest crossings over all interleavings, or `None` past `budget`.
pub fn min_crossings(a: &CurveSystem, b: &CurveSystem, budget: u128) -> Option<usize> {
    let all = all_interleavings(a, b, budget)?;
    all.into_iter()
        .map(|il| {
            Realization::new(a, b, il, Sign::Pos)
                .expect("arrangements match weights")
                .crossing_count()
        })
        .min()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arrangement_counts() {
        assert_eq!(arrangements(2, 2).len(), 6);
        assert_eq!(arrangements(0, 3).len(), 1);
        assert_eq!(binomial(6, 2), 15);
    }
}

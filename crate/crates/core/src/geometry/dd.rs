//! Double description method on a pointed polyhedral cone, over exact
//! integer arithmetic.
//!
//! Given integer rows a_1..a_m, computes the extreme rays of
//! {y : a_i · y >= 0 for all i}. Rays are kept as primitive integer vectors;
//! adjacency of rays uses the combinatorial test on common tight sets.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::linalg::{self, primitive};
use num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DdError {
    /// The constraint rows do not span the space: the cone is not pointed.
    NotPointed,
    /// The intermediate ray count exceeded the configured budget.
    BudgetExceeded { rays: usize },
}

#[derive(Clone)]
struct BitSet {
    words: Vec<u64>,
}

impl BitSet {
    fn new(bits: usize) -> Self {
        BitSet { words: vec![0; bits.div_ceil(64)] }
    }

    fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    fn count(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn intersection(&self, other: &BitSet) -> BitSet {
        BitSet { words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect() }
    }

    fn contains_all(&self, other: &BitSet) -> bool {
        self.words.iter().zip(&other.words).all(|(a, b)| a & b == *b)
    }
}

struct Ray {
    coords: Vec<BigInt>,
    tight: BitSet,
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact tight set of `coords` over the first `upto` rows.
fn tight_set(rows: &[Vec<BigInt>], upto: usize, coords: &[BigInt], bits: usize) -> BitSet {
    let mut t = BitSet::new(bits);
    for (i, row) in rows.iter().take(upto).enumerate() {
        if dot(row, coords).is_zero() {
            t.set(i);
        }
    }
    t
}

/// Extreme rays of the cone {y : row · y >= 0 for every row}.
///
/// `max_rays` bounds the intermediate ray count; the known-bounded uses in
/// this crate stay far below it.
pub fn extreme_rays(input_rows: &[Vec<BigInt>], max_rays: usize) -> Result<Vec<Vec<BigInt>>, DdError> {
    let k = input_rows.first().map_or(0, |r| r.len());
    if k == 0 {
        return Ok(Vec::new());
    }

    // Deduplicate primitive rows, keeping first occurrence order.
    let mut rows: Vec<Vec<BigInt>> = Vec::new();
    for r in input_rows {
        let p = primitive(r.clone());
        if !p.iter().all(|x| x.is_zero()) && !rows.contains(&p) {
            rows.push(p);
        }
    }

    // Pick k linearly independent rows for the initial simplicial cone.
    let mut chosen: Vec<usize> = Vec::new();
    let mut basis_rows: Vec<Vec<BigRational>> = Vec::new();
    for (i, r) in rows.iter().enumerate() {
        let mut candidate = basis_rows.clone();
        candidate.push(r.iter().map(|x| BigRational::from_integer(x.clone())).collect());
        if linalg::rank(&candidate) > basis_rows.len() {
            basis_rows = candidate;
            chosen.push(i);
            if chosen.len() == k {
                break;
            }
        }
    }
    if chosen.len() < k {
        return Err(DdError::NotPointed);
    }

    // Reorder: the independent rows first, the rest by ascending nonzero
    // count (a standard robustness heuristic; any order is correct).
    let mut rest: Vec<usize> = (0..rows.len()).filter(|i| !chosen.contains(i)).collect();
    rest.sort_by_key(|&i| (rows[i].iter().filter(|x| !x.is_zero()).count(), i));
    let order: Vec<usize> = chosen.iter().chain(rest.iter()).copied().collect();
    let rows: Vec<Vec<BigInt>> = order.into_iter().map(|i| rows[i].clone()).collect();
    let m = rows.len();

    // Initial rays: columns of the inverse of the chosen k x k system, i.e.
    // solutions of A0 y = e_j. Solve via RREF on [A0 | I].
    let mut aug: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            let mut row: Vec<BigRational> =
                rows[i].iter().map(|x| BigRational::from_integer(x.clone())).collect();
            for j in 0..k {
                row.push(if i == j { BigRational::from_integer(1.into()) } else { BigRational::zero() });
            }
            row
        })
        .collect();
    let pivots = linalg::rref(&mut aug);
    debug_assert_eq!(pivots, (0..k).collect::<Vec<_>>());
    let mut rays: Vec<Ray> = (0..k)
        .map(|j| {
            let col: Vec<BigRational> = (0..k).map(|i| aug[i][k + j].clone()).collect();
            let coords = linalg::clear_denominators(&col);
            let tight = tight_set(&rows, k, &coords, m);
            Ray { coords, tight }
        })
        .collect();

    for idx in k..m {
        let row = rows[idx].clone();
        let signs: Vec<BigInt> = rays.iter().map(|r| dot(&row, &r.coords)).collect();
        if signs.iter().all(|s| !s.is_negative()) {
            for (r, s) in rays.iter_mut().zip(&signs) {
                if s.is_zero() {
                    r.tight.set(idx);
                }
            }
            continue;
        }
        let plus: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_positive()).collect();
        let minus: Vec<usize> = (0..rays.len()).filter(|&i| signs[i].is_negative()).collect();

        let mut new_rays: Vec<Ray> = Vec::new();
        for &p in &plus {
            for &q in &minus {
                let common = rays[p].tight.intersection(&rays[q].tight);
                // Adjacent rays share at least k-2 tight constraints.
                if common.count() < k.saturating_sub(2) {
                    continue;
                }
                let adjacent = !rays
                    .iter()
                    .enumerate()
                    .any(|(i, r)| i != p && i != q && r.tight.contains_all(&common));
                if !adjacent {
                    continue;
                }
                // Positive combination tight on the new row.
                let sp = &signs[p];
                let sq = &signs[q];
                let coords: Vec<BigInt> = rays[q]
                    .coords
                    .iter()
                    .zip(&rays[p].coords)
                    .map(|(cq, cp)| sp * cq - sq * cp)
                    .collect();
                let coords = primitive(coords);
                debug_assert!(!coords.iter().all(|x| x.is_zero()));
                let tight = tight_set(&rows, idx + 1, &coords, m);
                new_rays.push(Ray { coords, tight });
            }
        }

        let mut kept: Vec<Ray> = Vec::new();
        for (i, r) in rays.into_iter().enumerate() {
            if signs[i].is_negative() {
                continue;
            }
            let mut r = r;
            if signs[i].is_zero() {
                r.tight.set(idx);
            }
            kept.push(r);
        }
        kept.extend(new_rays);
        rays = kept;
        if rays.len() > max_rays {
            return Err(DdError::BudgetExceeded { rays: rays.len() });
        }
    }

    debug_assert!(rays
        .iter()
        .all(|r| rows.iter().all(|row| !dot(row, &r.coords).is_negative())));
    Ok(rays.into_iter().map(|r| r.coords).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::vec;

    fn iv(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn orthant_rays() {
        // {y >= 0} in 3d: rays are the unit vectors.
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0]), iv(&[0, 0, 1])];
        let mut rays = extreme_rays(&rows, 1000).unwrap();
        rays.sort();
        assert_eq!(rays, vec![iv(&[0, 0, 1]), iv(&[0, 1, 0]), iv(&[1, 0, 0])]);
    }

    #[test]
    fn square_cone_rays() {
        // Homogenization of the unit square [0,1]^2: x >= 0, y >= 0,
        // w - x >= 0, w - y >= 0 over (x, y, w).
        let rows = vec![
            iv(&[1, 0, 0]),
            iv(&[0, 1, 0]),
            iv(&[-1, 0, 1]),
            iv(&[0, -1, 1]),
        ];
        let mut rays = extreme_rays(&rows, 1000).unwrap();
        rays.sort();
        assert_eq!(
            rays,
            vec![iv(&[0, 0, 1]), iv(&[0, 1, 1]), iv(&[1, 0, 1]), iv(&[1, 1, 1])]
        );
    }

    #[test]
    fn not_pointed_detected() {
        let rows = vec![iv(&[1, 0, 0]), iv(&[0, 1, 0])];
        assert_eq!(extreme_rays(&rows, 1000), Err(DdError::NotPointed));
    }

    #[test]
    fn infeasible_strictly_shrinks_to_nothing() {
        // x >= 0, -x - w >= 0, w >= 0 has only the zero solution.
        let rows = vec![iv(&[1, 0]), iv(&[-1, -1]), iv(&[0, 1])];
        let rays = extreme_rays(&rows, 1000).unwrap();
        assert!(rays.is_empty());
    }
}

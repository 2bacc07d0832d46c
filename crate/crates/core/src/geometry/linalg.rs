//! Small exact-rational linear algebra kit: reduced row echelon form and the
//! handful of derived operations the polyhedral code needs.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Row = Vec<BigRational>;

/// In-place reduced row echelon form; returns the pivot columns.
pub fn rref(mat: &mut [Row]) -> Vec<usize> {
    let rows = mat.len();
    if rows == 0 {
        return Vec::new();
    }
    let cols = mat[0].len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !mat[i][c].is_zero()) else {
            continue;
        };
        mat.swap(r, p);
        let inv = mat[r][c].clone();
        for x in mat[r].iter_mut() {
            *x /= inv.clone();
        }
        for i in 0..rows {
            if i != r && !mat[i][c].is_zero() {
                let f = mat[i][c].clone();
                for cc in 0..cols {
                    let t = &mat[r][cc] * &f;
                    mat[i][cc] -= t;
                }
            }
        }
        pivots.push(c);
        r += 1;
        if r == rows {
            break;
        }
    }
    pivots
}

pub fn rank(mat: &[Row]) -> usize {
    let mut m: Vec<Row> = mat.to_vec();
    rref(&mut m).len()
}

/// Basis of the kernel {x : M x = 0}, one vector per free column.
pub fn nullspace(mat: &[Row], cols: usize) -> Vec<Row> {
    let mut m: Vec<Row> = mat.to_vec();
    let pivots = rref(&mut m);
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivots.contains(&free) {
            continue;
        }
        let mut v = vec![BigRational::zero(); cols];
        v[free] = BigRational::one();
        for (i, &p) in pivots.iter().enumerate() {
            v[p] = -m[i][free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Affine rank of a point set (dimension of its affine hull).
pub fn affine_rank(points: &[Row]) -> usize {
    if points.len() <= 1 {
        return 0;
    }
    let base = &points[0];
    let diffs: Vec<Row> = points[1..]
        .iter()
        .map(|p| p.iter().zip(base).map(|(a, b)| a - b).collect())
        .collect();
    rank(&diffs)
}

/// Scale a rational row to a primitive integer vector (gcd 1). The
/// orientation is preserved; an all-zero row stays all-zero.
pub fn clear_denominators(row: &[BigRational]) -> Vec<BigInt> {
    let mut lcm = BigInt::one();
    for x in row {
        lcm = lcm.lcm(x.denom());
    }
    let ints: Vec<BigInt> = row.iter().map(|x| x.numer() * (&lcm / x.denom())).collect();
    primitive(ints)
}

/// Divide an integer vector by the gcd of its entries (positive divisor, so
/// the orientation is preserved).
pub fn primitive(mut v: Vec<BigInt>) -> Vec<BigInt> {
    let mut g = BigInt::zero();
    for x in &v {
        g = g.gcd(x);
    }
    if g > BigInt::one() {
        for x in v.iter_mut() {
            *x /= &g;
        }
    }
    v
}

/// Flip the vector so that its first nonzero entry is positive (for rows
/// where both orientations mean the same thing, e.g. equalities).
pub fn canonical_sign(mut v: Vec<BigInt>) -> Vec<BigInt> {
    if let Some(first) = v.iter().find(|x| !x.is_zero()) {
        if first.is_negative() {
            for x in v.iter_mut() {
                *x = -x.clone();
            }
        }
    }
    v
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn rref_identifies_rank() {
        let m = vec![
            vec![rat(1, 1), rat(2, 1), rat(3, 1)],
            vec![rat(2, 1), rat(4, 1), rat(6, 1)],
            vec![rat(0, 1), rat(1, 1), rat(1, 1)],
        ];
        assert_eq!(rank(&m), 2);
    }

    #[test]
    fn nullspace_is_kernel() {
        let m = vec![vec![rat(1, 1), rat(1, 1), rat(1, 1)]];
        let ns = nullspace(&m, 3);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let dot: BigRational = m[0].iter().zip(&v).map(|(a, b)| a * b).sum();
            assert!(dot.is_zero());
        }
    }

    #[test]
    fn affine_rank_of_simplex() {
        let pts = vec![
            vec![rat(1, 1), rat(0, 1), rat(0, 1)],
            vec![rat(0, 1), rat(1, 1), rat(0, 1)],
            vec![rat(0, 1), rat(0, 1), rat(1, 1)],
        ];
        assert_eq!(affine_rank(&pts), 2);
    }

    #[test]
    fn clear_denominators_gives_primitive_vector() {
        let row = vec![rat(1, 2), rat(-1, 3), rat(0, 1)];
        assert_eq!(
            clear_denominators(&row),
            vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]
        );
    }
}

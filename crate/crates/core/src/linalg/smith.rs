//! Smith normal form over ℤ with tracked unimodular transforms.
//!
//! `U · A · V = S` where `S` is diagonal with positive invariant factors
//! `d_1 | d_2 | … | d_r` followed by zeros. Pivoting always takes the entry of
//! smallest nonzero absolute value in the active submatrix, ties broken by
//! lowest `(row, col)`, so the output is fully deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithDecomposition {
    pub u: IntMatrix,
    pub v: IntMatrix,
    pub s: IntMatrix,
    pub invariant_factors: Vec<BigInt>,
}

impl SmithDecomposition {
    pub fn rank(&self) -> usize {
        self.invariant_factors.len()
    }

    /// All invariant factors equal 1.
    pub fn is_unit_diagonal(&self) -> bool {
        self.invariant_factors.iter().all(One::is_one)
    }
}

pub fn smith(a: &IntMatrix) -> SmithDecomposition {
    let (rows, cols) = (a.rows(), a.cols());
    let mut s = a.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    let mut factors = Vec::new();

    for t in 0..rows.min(cols) {
        if !place_smallest_pivot(&mut s, &mut u, &mut v, t) {
            break;
        }
        loop {
            let pivot = s.get(t, t).clone();
            let mut dirty = false;
            for i in t + 1..rows {
                let q = s.get(i, t).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    s.add_row_multiple(i, t, &nq);
                    u.add_row_multiple(i, t, &nq);
                }
                dirty |= !s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = s.get(t, j).div_floor(&pivot);
                if !q.is_zero() {
                    let nq = -q;
                    s.add_col_multiple(j, t, &nq);
                    v.add_col_multiple(j, t, &nq);
                }
                dirty |= !s.get(t, j).is_zero();
            }
            if dirty {
                // a remainder smaller than the pivot survived; re-pivot
                place_smallest_pivot(&mut s, &mut u, &mut v, t);
                continue;
            }
            // row and column clear; enforce divisibility of the remaining block
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !s.get(i, j).is_multiple_of(&pivot));
            match offender {
                Some((i, _)) => {
                    let one = BigInt::one();
                    s.add_row_multiple(t, i, &one);
                    u.add_row_multiple(t, i, &one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
        factors.push(s.get(t, t).clone());
    }

    SmithDecomposition {
        u,
        v,
        s,
        invariant_factors: factors,
    }
}

/// Moves the smallest nonzero entry of the block `[t.., t..]` to `(t, t)`.
/// Returns false if the block is zero.
fn place_smallest_pivot(s: &mut IntMatrix, u: &mut IntMatrix, v: &mut IntMatrix, t: usize) -> bool {
    let mut best: Option<(usize, usize, BigInt)> = None;
    for i in t..s.rows() {
        for j in t..s.cols() {
            let x = s.get(i, j);
            if x.is_zero() {
                continue;
            }
            let ax = x.abs();
            if best.as_ref().is_none_or(|(_, _, b)| ax < *b) {
                best = Some((i, j, ax));
            }
        }
    }
    let Some((i, j, _)) = best else {
        return false;
    };
    s.swap_rows(t, i);
    u.swap_rows(t, i);
    s.swap_cols(t, j);
    v.swap_cols(t, j);
    true
}

/// Invariant factors only (the transforms are still computed; inputs here are small).
pub fn invariant_factors(a: &IntMatrix) -> Vec<BigInt> {
    smith(a).invariant_factors
}

/// Inverse of a unimodular square matrix. `None` if `a` is not unimodular.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_square() {
        return None;
    }
    let d = smith(a);
    if d.rank() != a.rows() || !d.is_unit_diagonal() {
        return None;
    }
    // U A V = I  =>  A^{-1} = V U
    Some(&d.v * &d.u)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn check(a: &IntMatrix) -> SmithDecomposition {
        let d = smith(a);
        assert_eq!(&(&d.u * a) * &d.v, d.s);
        assert!(d.u.det().unwrap().abs().is_one());
        assert!(d.v.det().unwrap().abs().is_one());
        d
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn identity_factors() {
        assert_eq!(
            check(&IntMatrix::identity(3)).invariant_factors,
            ints(&[1, 1, 1])
        );
    }

    #[test]
    fn diagonal_factors() {
        let a = IntMatrix::from_i64(&[&[2, 0], &[0, 4]]);
        assert_eq!(check(&a).invariant_factors, ints(&[2, 4]));
        // not yet a divisibility chain
        let b = IntMatrix::from_i64(&[&[4, 0], &[0, 6]]);
        assert_eq!(check(&b).invariant_factors, ints(&[2, 12]));
    }

    #[test]
    fn hand_reduced_example() {
        // d1 = gcd of entries = 2, d1*d2 = |det| = 8
        let a = IntMatrix::from_i64(&[&[2, 4], &[6, 8]]);
        assert_eq!(check(&a).invariant_factors, ints(&[2, 4]));
    }

    #[test]
    fn rectangular_and_zero() {
        let a = IntMatrix::from_i64(&[&[1, 1, 0], &[0, 2, 2]]);
        assert_eq!(check(&a).invariant_factors, ints(&[1, 2]));
        assert!(check(&IntMatrix::zeros(3, 2)).invariant_factors.is_empty());
        assert!(check(&IntMatrix::zeros(0, 4)).invariant_factors.is_empty());
    }

    #[test]
    fn negative_pivots_become_positive() {
        let a = IntMatrix::from_i64(&[&[-3]]);
        assert_eq!(check(&a).invariant_factors, ints(&[3]));
    }

    #[test]
    fn inverse_of_unimodular() {
        let a = IntMatrix::from_i64(&[&[2, 1], &[5, 3]]);
        let inv = unimodular_inverse(&a).unwrap();
        assert_eq!(&a * &inv, IntMatrix::identity(2));
        assert!(unimodular_inverse(&IntMatrix::from_i64(&[&[2, 0], &[0, 1]])).is_none());
    }
}

//! Row-style Hermite normal form: a canonical basis for the lattice spanned by
//! the rows of a matrix.

use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::IntMatrix;

/// Row Hermite normal form with zero rows dropped.
///
/// Pivots are positive and strictly move right; entries above a pivot lie in
/// `[0, pivot)`. Two matrices have the same row lattice iff their forms agree.
pub fn hermite_rows(a: &IntMatrix) -> IntMatrix {
    let mut h = a.clone();
    let (rows, cols) = (h.rows(), h.cols());
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        loop {
            let smallest = (r..rows)
                .filter(|&i| !h.get(i, c).is_zero())
                .min_by(|&i, &j| h.get(i, c).abs().cmp(&h.get(j, c).abs()).then(i.cmp(&j)));
            let Some(p) = smallest else { break };
            h.swap_rows(r, p);
            let pivot = h.get(r, c).clone();
            let mut done = true;
            for i in r + 1..rows {
                let q = h.get(i, c).div_floor(&pivot);
                if !q.is_zero() {
                    h.add_row_multiple(i, r, &-q);
                }
                done &= h.get(i, c).is_zero();
            }
            if done {
                break;
            }
        }
        if h.get(r, c).is_zero() {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
        }
        let pivot = h.get(r, c).clone();
        for i in 0..r {
            let q = h.get(i, c).div_floor(&pivot);
            if !q.is_zero() {
                h.add_row_multiple(i, r, &-q);
            }
        }
        r += 1;
    }
    h.select_rows(&(0..r).collect::<Vec<_>>())
}

/// Row lattices of `a` and `b` coincide.
pub fn same_row_lattice(a: &IntMatrix, b: &IntMatrix) -> bool {
    a.cols() == b.cols() && hermite_rows(a) == hermite_rows(b)
}

/// Every row of `b` lies in the row lattice of `a`.
pub fn row_lattice_contains(a: &IntMatrix, b: &IntMatrix) -> bool {
    match a.vstack(b) {
        Ok(stacked) => hermite_rows(&stacked) == hermite_rows(a),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_basis() {
        let a = IntMatrix::from_i64(&[&[2, 3], &[4, 5]]);
        // index |det| = 2 in Z^2, first coordinates all even
        assert_eq!(hermite_rows(&a), IntMatrix::from_i64(&[&[2, 0], &[0, 1]]));
    }

    #[test]
    fn drops_dependent_rows() {
        let a = IntMatrix::from_i64(&[&[1, 2, 3], &[2, 4, 6], &[0, 0, 1]]);
        assert_eq!(
            hermite_rows(&a),
            IntMatrix::from_i64(&[&[1, 2, 0], &[0, 0, 1]])
        );
    }

    #[test]
    fn invariant_under_row_operations() {
        let a = IntMatrix::from_i64(&[&[1, 0, 1, 0, 1], &[0, 1, 0, 1, 1]]);
        let b = IntMatrix::from_i64(&[&[1, 1, 1, 1, 2], &[-1, 0, -1, 0, -1]]);
        assert!(same_row_lattice(&a, &b));
        let c = IntMatrix::from_i64(&[&[2, 0, 2, 0, 2], &[0, 1, 0, 1, 1]]);
        assert!(!same_row_lattice(&a, &c));
        assert!(row_lattice_contains(&a, &c));
        assert!(!row_lattice_contains(&c, &a));
    }
}

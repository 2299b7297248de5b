#![allow(dead_code)]

use itertools::Itertools;
use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;
use toric_workbench::{IntMatrix, SimplicialComplex};

pub fn random_matrix<R: Rng>(rng: &mut R, rows: usize, cols: usize, bound: i64) -> IntMatrix {
    let data = (0..rows * cols)
        .map(|_| BigInt::from(rng.gen_range(-bound..=bound)))
        .collect();
    IntMatrix::from_vec(rows, cols, data).unwrap()
}

/// Random product of elementary row operations.
pub fn random_unimodular<R: Rng>(rng: &mut R, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    if n == 0 {
        return u;
    }
    for _ in 0..3 * n + 2 {
        let i = rng.gen_range(0..n);
        let j = rng.gen_range(0..n);
        match rng.gen_range(0..4) {
            0 | 1 if i != j => {
                let f = BigInt::from(rng.gen_range(-3i64..=3));
                u.add_row_multiple(i, j, &f);
            }
            2 => u.swap_rows(i, j),
            _ => u.negate_row(i),
        }
    }
    u
}

/// A pure complex on `m` vertices whose facets are random `n`-subsets.
pub fn random_pure_complex<R: Rng>(rng: &mut R, m: usize, n: usize) -> SimplicialComplex {
    let mut all: Vec<Vec<usize>> = (1..=m).combinations(n).collect();
    all.shuffle(rng);
    let count = rng.gen_range(1..=all.len().min(12));
    SimplicialComplex::new(m, all.into_iter().take(count)).unwrap()
}

/// A complex generated by random faces of mixed sizes.
pub fn random_complex<R: Rng>(rng: &mut R, m: usize) -> SimplicialComplex {
    let count = rng.gen_range(1..=8);
    let faces: Vec<Vec<usize>> = (0..count)
        .map(|_| {
            let size = rng.gen_range(1..=m.min(4));
            let mut verts: Vec<usize> = (1..=m).collect();
            verts.shuffle(rng);
            verts.truncate(size);
            verts.sort_unstable();
            verts
        })
        .collect();
    SimplicialComplex::new(m, faces).unwrap()
}

/// Evenness on every pair of non-members.
pub fn gale_all_pairs(s: &[usize], m: usize) -> bool {
    let outside: Vec<usize> = (1..=m).filter(|v| !s.contains(v)).collect();
    outside
        .iter()
        .tuple_combinations()
        .all(|(&i, &j)| s.iter().filter(|&&x| i < x && x < j).count() % 2 == 0)
}

/// Binomial coefficients mod 2 by Pascal's rule.
pub fn pascal_mod2(n: usize) -> Vec<bool> {
    let mut row = vec![true];
    for _ in 0..n {
        let mut next = vec![true; row.len() + 1];
        for j in 1..row.len() {
            next[j] = row[j - 1] ^ row[j];
        }
        row = next;
    }
    row
}

/// Permutation expansion of a small determinant.
pub fn leibniz_det(a: &IntMatrix) -> BigInt {
    let n = a.rows();
    (0..n)
        .permutations(n)
        .map(|p| {
            let inversions = (0..n)
                .tuple_combinations()
                .filter(|&(i, j)| p[i] > p[j])
                .count();
            let prod: BigInt = (0..n).map(|i| a.get(i, p[i]).clone()).product();
            if inversions % 2 == 0 {
                prod
            } else {
                -prod
            }
        })
        .sum()
}

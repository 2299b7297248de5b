//! Reference data for the cyclic polytope `C₆(9)`: a free 2-dimensional
//! subtorus of `T⁹` and a projection `T⁹ → T⁷` with that subtorus as kernel.

use crate::linalg::IntMatrix;
use crate::simplicial::{cyclic_polytope_boundary, SimplicialComplex};
use crate::torus::Subtorus;

pub fn c69_complex() -> SimplicialComplex {
    cyclic_polytope_boundary(6, 9).expect("valid parameters")
}

pub fn c69_torus_matrix() -> IntMatrix {
    IntMatrix::from_i64(&[&[1, 0, 1, 0, 1, 0, 1, 0, 1], &[0, 1, 0, 1, 0, 1, 0, 1, 1]])
}

pub fn c69_torus() -> Subtorus {
    Subtorus::new(c69_torus_matrix()).expect("rows are primitive")
}

pub fn c69_quotient_map() -> IntMatrix {
    IntMatrix::from_i64(&[
        &[-1, 0, 1, 0, 0, 0, 0, 0, 0],
        &[0, -1, 0, 1, 0, 0, 0, 0, 0],
        &[-1, 0, 0, 0, 1, 0, 0, 0, 0],
        &[0, -1, 0, 0, 0, 1, 0, 0, 0],
        &[-1, 0, 0, 0, 0, 0, 1, 0, 0],
        &[0, -1, 0, 0, 0, 0, 0, 1, 0],
        &[-1, -1, 0, 0, 0, 0, 0, 0, 1],
    ])
}

/// `[I_n | −1]`, the characteristic matrix of `ℂPⁿ` over `∂Δⁿ`.
pub fn projective_characteristic(n: usize) -> IntMatrix {
    let rows: Vec<Vec<i64>> = (0..n)
        .map(|i| {
            (0..=n)
                .map(|j| match j {
                    _ if j == n => -1,
                    _ if j == i => 1,
                    _ => 0,
                })
                .collect()
        })
        .collect();
    IntMatrix::from_rows(n + 1, rows).expect("consistent shape")
}

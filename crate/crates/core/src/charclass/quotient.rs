//! `H²` and `w₂` of a partial quotient `Z_K/T`, given the projection
//! `Θ : T^m → T^m/T`.
//!
//! `H²(Z_K/T; ℤ) = ℤ⟨v_1..v_m⟩ / ℤ⟨θ_1..θ_{m−k}⟩` with `θ_i = Σ_j Θ_ij v_j`,
//! valid when `Z_K` is simply connected (taken as an assumption, not checked),
//! and `w₂ = [v_1 + … + v_m]` reduced mod 2.

use itertools::Itertools;
use num_traits::{One, Signed};
use serde::Serialize;

use super::Mod2Class;
use crate::linalg::{
    cokernel, has_even_torsion, row_mod2, unimodular_inverse, AbelianGroupPresentation, BitVec,
    Gf2Echelon, IntMatrix,
};

#[derive(Clone, Debug, Serialize)]
pub struct QuotientH2 {
    #[serde(flatten)]
    pub presentation: AbelianGroupPresentation,
    /// Generators `v_j` (1-based) whose classes form the free basis used in
    /// `generator_images`, when such a subset exists.
    pub basis_generators: Option<Vec<usize>>,
    /// The ℤ-cokernel has even torsion, so `H²(−; ℤ/2)` may differ from the
    /// mod-2 reduction used for `w₂`.
    pub even_torsion_warning: bool,
    pub assumes_simply_connected: bool,
}

impl QuotientH2 {
    /// `v_j = a·v_p + b·v_q …` lines in terms of the basis generators.
    pub fn relations(&self) -> Vec<String> {
        let Some(basis) = &self.basis_generators else {
            return Vec::new();
        };
        let imgs = &self.presentation.generator_images;
        (0..imgs.cols())
            .filter(|j| !basis.contains(&(j + 1)))
            .map(|j| {
                let terms: Vec<String> = basis
                    .iter()
                    .enumerate()
                    .filter_map(|(t, &b)| {
                        let c = imgs.get(t, j);
                        if c.is_one() {
                            Some(format!("v{b}"))
                        } else if c == &-num_bigint::BigInt::one() {
                            Some(format!("-v{b}"))
                        } else if c.is_positive() || c.is_negative() {
                            Some(format!("{c}v{b}"))
                        } else {
                            None
                        }
                    })
                    .collect();
                let rhs = if terms.is_empty() {
                    "0".to_string()
                } else {
                    terms.join(" + ").replace("+ -", "- ")
                };
                format!("v{} = {rhs}", j + 1)
            })
            .collect()
    }
}

/// `H²` of the quotient as the cokernel of `Θᵀ`.
///
/// When the group is free, the generator images are rewritten in the
/// lexicographically first subset of generators forming a basis.
pub fn h2_of_quotient(theta: &IntMatrix) -> QuotientH2 {
    let mut presentation = cokernel(&theta.transpose());
    let even = has_even_torsion(&presentation);
    let mut basis_generators = None;
    let r = presentation.free_rank;
    if presentation.torsion.is_empty() && r > 0 {
        let images = presentation.generator_images.clone();
        for cols in (0..images.cols()).combinations(r) {
            let block = images.select_columns(&cols);
            if let Some(inv) = unimodular_inverse(&block) {
                presentation.generator_images = &inv * &images;
                basis_generators = Some(cols.iter().map(|c| c + 1).collect());
                break;
            }
        }
    }
    QuotientH2 {
        presentation,
        basis_generators,
        even_torsion_warning: even,
        assumes_simply_connected: true,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct W2Class {
    pub class: Mod2Class,
    pub nonzero: bool,
    /// Generators `v_j` whose classes form the mod-2 basis.
    pub basis_generators: Vec<usize>,
    pub even_torsion_warning: bool,
    pub formula: &'static str,
    /// Only `H²`/`w₂` are computed for partial quotients; `w₁` is not.
    pub note: &'static str,
}

/// Class of `v_1 + … + v_m` in `(ℤ^m / im Θᵀ) ⊗ ℤ/2`.
pub fn w2_of_quotient(theta: &IntMatrix) -> W2Class {
    let m = theta.cols();
    let mut span = Gf2Echelon::new(m);
    for i in 0..theta.rows() {
        span.insert(row_mod2(theta, i));
    }
    let free = span.free_positions();
    let mut ones = BitVec::zeros(m);
    for j in 0..m {
        ones.set(j);
    }
    let coords = span.quotient_coords(&ones);
    let nonzero = coords.iter().any(|&b| b);
    let even = has_even_torsion(&cokernel(&theta.transpose()));
    W2Class {
        class: Mod2Class {
            degree: 2,
            basis: free.iter().map(|j| format!("v{}", j + 1)).collect(),
            coords,
        },
        nonzero,
        basis_generators: free.iter().map(|j| j + 1).collect(),
        even_torsion_warning: even,
        formula: "w2 = [v1 + ... + vm]",
        note: "only H^2 and w2 are computed for partial quotients; w1 is not evaluated",
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn toy_circle_quotient() {
        let h = h2_of_quotient(&IntMatrix::from_i64(&[&[1, -1]]));
        assert_eq!(h.presentation.free_rank, 1);
        assert!(h.presentation.torsion.is_empty());
        assert_eq!(h.basis_generators, Some(vec![1]));
        assert_eq!(h.presentation.image_of(0), h.presentation.image_of(1));
        assert_eq!(h.relations(), vec!["v2 = v1".to_string()]);
    }

    #[test]
    fn identity_gives_zero_group() {
        let h = h2_of_quotient(&IntMatrix::identity(3));
        assert!(h.presentation.is_trivial());
        assert!(!w2_of_quotient(&IntMatrix::identity(3)).nonzero);
    }

    #[test]
    fn torsion_warning() {
        let h = h2_of_quotient(&IntMatrix::from_i64(&[&[2, 0]]));
        assert_eq!(h.presentation.torsion, vec![BigInt::from(2)]);
        assert!(h.even_torsion_warning);
        assert!(h.basis_generators.is_none());
    }

    #[test]
    fn w2_vanishes_when_ones_in_row_space() {
        let theta = IntMatrix::from_i64(&[&[1, 1, 1], &[0, 1, 0]]);
        let w = w2_of_quotient(&theta);
        assert!(!w.nonzero);
    }

    #[test]
    fn w2_vanishes_for_paired_coordinates() {
        // m = 4, rows v1 - v2 and v3 - v4: sum = 2 v1 + 2 v3 = 0 mod 2
        let theta = IntMatrix::from_i64(&[&[1, -1, 0, 0], &[0, 0, 1, -1]]);
        let w = w2_of_quotient(&theta);
        assert_eq!(w.basis_generators, vec![1, 3]);
        assert_eq!(w.class.coords, vec![false, false]);
        assert!(!w.nonzero);
    }

    #[test]
    fn w2_nonzero_for_odd_circle_quotient() {
        // CP^2 as T^3 / diagonal: Θ rows v1 - v3, v2 - v3, sum = 3u = u mod 2
        let theta = IntMatrix::from_i64(&[&[1, 0, -1], &[0, 1, -1]]);
        let w = w2_of_quotient(&theta);
        assert!(w.nonzero);
        assert_eq!(w.class.coords.len(), 1);
    }
}

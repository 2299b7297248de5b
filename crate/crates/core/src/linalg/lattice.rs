//! Lattice questions answered from one Smith decomposition: kernels,
//! primitivity, unimodular completion and cokernel presentations.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::Serialize;

use super::{hermite_rows, smith, IntMatrix, LinalgError};

/// Basis (as rows) of `{x ∈ ℤ^cols : A·x = 0}`.
///
/// The kernel of an integer matrix is saturated, so this is also a basis of the
/// identity component of the kernel of the induced torus map. The basis is put
/// in Hermite form for reproducible output.
pub fn kernel_lattice(a: &IntMatrix) -> IntMatrix {
    let d = smith(a);
    let r = d.rank();
    let free: Vec<usize> = (r..a.cols()).collect();
    let basis = d.v.select_columns(&free).transpose();
    hermite_rows(&basis)
}

/// Rows are independent and span a direct summand of ℤ^cols.
pub fn is_primitive_rows(a: &IntMatrix) -> bool {
    let d = smith(a);
    d.rank() == a.rows() && d.is_unit_diagonal()
}

/// For primitive `A` (k×m), an m×m unimodular `M` with `A·M = [I_k | 0]`.
pub fn complete_to_unimodular(a: &IntMatrix) -> Result<IntMatrix, LinalgError> {
    let (k, m) = (a.rows(), a.cols());
    let d = smith(a);
    if d.rank() != k || !d.is_unit_diagonal() {
        return Err(LinalgError::NotPrimitive);
    }
    // U A V = [I | 0]  =>  A V diag(U, I) = U^{-1} [I | 0] diag(U, I) = [I | 0]
    let mut block = IntMatrix::identity(m);
    for i in 0..k {
        for j in 0..k {
            block.set(i, j, d.u.get(i, j).clone());
        }
    }
    let completion = &d.v * &block;

    let mut target = IntMatrix::zeros(k, m);
    for i in 0..k {
        target.set(i, i, 1);
    }
    if a * &completion != target || !completion.det()?.magnitude().is_one() {
        return Err(LinalgError::Internal(
            "unimodular completion failed its postcondition".into(),
        ));
    }
    Ok(completion)
}

/// A finitely generated abelian group `ℤ^free_rank ⊕ ⊕ ℤ/t_i` together with the
/// images of the ambient generators.
///
/// Column `j` of `generator_images` gives the class of the `j`-th ambient basis
/// vector: first one coordinate per torsion summand (reduced into `[0, t_i)`),
/// then `free_rank` integer coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AbelianGroupPresentation {
    pub free_rank: usize,
    #[serde(serialize_with = "crate::io::ser_bigint_vec")]
    pub torsion: Vec<BigInt>,
    #[serde(serialize_with = "crate::io::ser_matrix_rows")]
    pub generator_images: IntMatrix,
}

impl AbelianGroupPresentation {
    pub fn ambient_rank(&self) -> usize {
        self.generator_images.cols()
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    pub fn image_of(&self, generator: usize) -> Vec<BigInt> {
        self.generator_images.column(generator)
    }

    /// Same isomorphism type.
    pub fn same_type(&self, other: &AbelianGroupPresentation) -> bool {
        self.free_rank == other.free_rank && self.torsion == other.torsion
    }
}

/// `ℤ^rows / A·ℤ^cols`.
pub fn cokernel(a: &IntMatrix) -> AbelianGroupPresentation {
    let d = smith(a);
    let rows = a.rows();
    let r = d.rank();
    let torsion_idx: Vec<usize> = (0..r)
        .filter(|&i| !d.invariant_factors[i].is_one())
        .collect();
    let torsion: Vec<BigInt> = torsion_idx
        .iter()
        .map(|&i| d.invariant_factors[i].clone())
        .collect();
    let mut coords: Vec<usize> = torsion_idx.clone();
    coords.extend(r..rows);
    // U maps ambient coordinates to Smith coordinates
    let mut images = d.u.select_rows(&coords);
    for (t, modulus) in torsion.iter().enumerate() {
        for j in 0..rows {
            let reduced = images.get(t, j).mod_floor(modulus);
            images.set(t, j, reduced);
        }
    }
    AbelianGroupPresentation {
        free_rank: rows - r,
        torsion,
        generator_images: images,
    }
}

/// True if some torsion coefficient is even.
pub fn has_even_torsion(p: &AbelianGroupPresentation) -> bool {
    p.torsion.iter().any(|t| t.is_even() && !t.is_zero())
}

//! Subtori of `T^m`, their action on moment-angle complexes, and
//! characteristic matrices.
//!
//! A subtorus is given by a `k × m` integer matrix whose rows generate its
//! cocharacter lattice. Freeness on `Z_K` is decided facet by facet: for each
//! facet `σ`, the torus map given by the complementary columns `A(σ̄)` must be
//! injective, i.e. `A(σ̄)` has rank `k` and all its invariant factors are 1.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::io::{matrix_rows_json, JsonInt};
use crate::linalg::{
    complete_to_unimodular, hermite_rows, is_primitive_rows, kernel_lattice, row_lattice_contains,
    same_row_lattice, IntMatrix, LinalgError, RatMatrix,
};
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TorusError {
    #[error("subtorus rows must be independent and primitive: {0}")]
    InvalidSubtorus(String),
    #[error(
        "ambient rank mismatch: torus lives in T^{torus} but the complex has {complex} vertices"
    )]
    AmbientMismatch { torus: usize, complex: usize },
    #[error("complex is not pure")]
    NotPure,
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("torus does not act almost freely; rank drops on the complement of facet {0:?}")]
    NotAlmostFree(Face),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

/// A `k`-dimensional subtorus of `T^m`.
#[derive(Clone, Debug, PartialEq, Eq, Deserialize)]
#[serde(try_from = "SubtorusJson")]
pub struct Subtorus {
    generators: IntMatrix,
}

#[derive(Deserialize)]
struct SubtorusJson {
    m: usize,
    rows: Vec<Vec<JsonInt>>,
}

impl TryFrom<SubtorusJson> for Subtorus {
    type Error = TorusError;

    fn try_from(raw: SubtorusJson) -> Result<Self, TorusError> {
        let rows = raw.rows.into_iter().map(|r| r.into_iter().map(|x| x.0));
        Subtorus::new(IntMatrix::from_rows(raw.m, rows)?)
    }
}

impl Serialize for Subtorus {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        serde_json::json!({
            "m": self.ambient_rank(),
            "rows": matrix_rows_json(&self.generators),
        })
        .serialize(s)
    }
}

impl Subtorus {
    pub fn new(generators: IntMatrix) -> Result<Self, TorusError> {
        if !is_primitive_rows(&generators) {
            return Err(TorusError::InvalidSubtorus(format!("{generators}")));
        }
        Ok(Subtorus { generators })
    }

    /// The trivial subtorus of `T^m`.
    pub fn trivial(m: usize) -> Self {
        Subtorus {
            generators: IntMatrix::zeros(0, m),
        }
    }

    /// The diagonal circle `{(t, …, t)}`.
    pub fn diagonal(m: usize) -> Self {
        Subtorus {
            generators: IntMatrix::from_rows(m, [vec![1i64; m]]).expect("one row of width m"),
        }
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.generators
    }

    pub fn dim(&self) -> usize {
        self.generators.rows()
    }

    pub fn ambient_rank(&self) -> usize {
        self.generators.cols()
    }

    /// Canonical generator matrix: Hermite form of the row lattice.
    pub fn canonical(&self) -> IntMatrix {
        hermite_rows(&self.generators)
    }

    pub fn same_subtorus(&self, other: &Subtorus) -> bool {
        same_row_lattice(&self.generators, &other.generators)
    }

    /// `other ⊆ self` as subtori.
    pub fn contains(&self, other: &Subtorus) -> bool {
        row_lattice_contains(&self.generators, &other.generators)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", rename_all = "snake_case")]
pub enum Freeness {
    Free,
    NotFree { facet: Face },
}

impl Freeness {
    pub fn is_free(&self) -> bool {
        matches!(self, Freeness::Free)
    }
}

fn check_action_inputs(t: &Subtorus, k: &SimplicialComplex) -> Result<(), TorusError> {
    if t.ambient_rank() != k.m() {
        return Err(TorusError::AmbientMismatch {
            torus: t.ambient_rank(),
            complex: k.m(),
        });
    }
    if !k.is_pure() {
        return Err(TorusError::NotPure);
    }
    Ok(())
}

/// Whether `T` acts freely on `Z_K`; on failure reports the first facet (in
/// canonical order) whose complement gives a non-injective torus map.
pub fn acts_freely(t: &Subtorus, k: &SimplicialComplex) -> Result<Freeness, TorusError> {
    check_action_inputs(t, k)?;
    for facet in k.facets() {
        let block = t.generators.submatrix_cols(&k.complement(facet))?;
        if !is_primitive_rows(&block) {
            return Ok(Freeness::NotFree {
                facet: facet.clone(),
            });
        }
    }
    Ok(Freeness::Free)
}

/// All isotropy groups finite: `rank A(σ̄) = k` on every facet.
pub fn acts_almost_freely(t: &Subtorus, k: &SimplicialComplex) -> Result<bool, TorusError> {
    Ok(first_rank_drop(t, k)?.is_none())
}

fn first_rank_drop(t: &Subtorus, k: &SimplicialComplex) -> Result<Option<Face>, TorusError> {
    check_action_inputs(t, k)?;
    for facet in k.facets() {
        let block = t.generators.submatrix_cols(&k.complement(facet))?;
        if block.rank() < t.dim() {
            return Ok(Some(facet.clone()));
        }
    }
    Ok(None)
}

/// Candidate characteristic matrix `Λ` (`n × m`), integral after clearing
/// denominators row by row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharMatrix(pub IntMatrix);

impl CharMatrix {
    pub fn from_rational(r: &RatMatrix) -> Self {
        CharMatrix(r.clear_denominators())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }
}

/// Columns indexed by every face are independent over ℚ. Checking facets is
/// enough since independence passes to subsets.
pub fn is_rational_characteristic(
    lambda: &CharMatrix,
    k: &SimplicialComplex,
) -> Result<bool, TorusError> {
    let a = lambda.matrix();
    let n = (k.dimension() + 1) as usize;
    if a.rows() != n || a.cols() != k.m() {
        return Err(TorusError::Shape(format!(
            "characteristic matrix must be {n}x{}, got {}x{}",
            k.m(),
            a.rows(),
            a.cols()
        )));
    }
    for facet in k.facets() {
        let block = a.submatrix_cols(facet)?;
        if block.rank() < facet.len() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For `Λ` (`n × m`) and `Θ` (`(m−n) × m`) with jointly independent, mutually
/// orthogonal rows: on every facet `σ`, `det Λ(σ) ≠ 0 ⟺ det Θ(σ̄) ≠ 0`.
///
/// Under the preconditions this always holds; it is meant as an executable
/// check. Violated preconditions are an error, never `false`.
pub fn characteristic_duality_holds(
    lambda: &IntMatrix,
    theta: &IntMatrix,
    k: &SimplicialComplex,
) -> Result<bool, TorusError> {
    let m = k.m();
    let n = lambda.rows();
    if lambda.cols() != m || theta.cols() != m || theta.rows() + n != m {
        return Err(TorusError::Shape(format!(
            "need n x {m} and (m-n) x {m}, got {}x{} and {}x{}",
            lambda.rows(),
            lambda.cols(),
            theta.rows(),
            theta.cols()
        )));
    }
    if !k.is_pure() {
        return Err(TorusError::NotPure);
    }
    if k.facets().iter().any(|f| f.len() != n) {
        return Err(TorusError::Precondition(format!(
            "facets must have {n} vertices"
        )));
    }
    if lambda.vstack(theta)?.rank() != m {
        return Err(TorusError::Precondition(
            "rows of the two matrices are not jointly independent".into(),
        ));
    }
    if !(lambda * &theta.transpose()).is_zero() {
        return Err(TorusError::Precondition(
            "rows of the two matrices are not orthogonal".into(),
        ));
    }
    for facet in k.facets() {
        let lhs = !lambda.submatrix_cols(facet)?.det()?.is_zero();
        let rhs = !theta.submatrix_cols(&k.complement(facet))?.det()?.is_zero();
        if lhs != rhs {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `T(Λ)`: identity component of the kernel of `Λ : T^m → T^n`.
pub fn torus_from_kernel(lambda: &CharMatrix) -> Subtorus {
    Subtorus {
        generators: kernel_lattice(lambda.matrix()),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Extension {
    Found {
        /// `(m−n) × m`; the first `k` rows are the torus generators.
        theta_full: IntMatrix,
        lambda: CharMatrix,
        tries: u64,
    },
    Exhausted {
        tries: u64,
    },
}

#[derive(Clone, Copy, Debug)]
pub struct ExtensionParams {
    pub entry_bound: i64,
    pub max_tries: u64,
    pub seed: u64,
}

impl ExtensionParams {
    /// Default bound `max(3, m)` and `10^5` tries.
    pub fn defaults_for(m: usize, seed: u64) -> Self {
        ExtensionParams {
            entry_bound: (m as i64).max(3),
            max_tries: 100_000,
            seed,
        }
    }
}

/// Extends the rows of `T` to an `(m−n) × m` matrix whose complementary
/// maximal minors are all nonzero, so that its orthogonal lattice is a rational
/// characteristic matrix `Λ` with `T ⊆ T(Λ)`.
///
/// The missing rows are sampled uniformly from `[-bound, bound]` with a seeded
/// generator; a generic choice works, so rejection sampling terminates quickly.
pub fn extend_to_characteristic(
    t: &Subtorus,
    k: &SimplicialComplex,
    params: ExtensionParams,
) -> Result<Extension, TorusError> {
    if let Some(facet) = first_rank_drop(t, k)? {
        return Err(TorusError::NotAlmostFree(facet));
    }
    let m = k.m();
    let n = (k.dimension() + 1) as usize;
    let dim = t.dim();
    if dim > m - n {
        return Err(TorusError::Precondition(format!(
            "torus of dimension {dim} exceeds m - n = {}",
            m - n
        )));
    }
    if params.entry_bound < 0 {
        return Err(TorusError::Precondition(
            "entry bound must be non-negative".into(),
        ));
    }
    let extra = m - n - dim;
    let complements: Vec<Vec<usize>> = k.facets().iter().map(|f| k.complement(f)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);

    let budget = if extra == 0 { 1 } else { params.max_tries };
    for attempt in 1..=budget {
        let mut theta = t.generators.clone();
        if extra > 0 {
            let sample: Vec<Vec<i64>> = (0..extra)
                .map(|_| {
                    (0..m)
                        .map(|_| rng.gen_range(-params.entry_bound..=params.entry_bound))
                        .collect()
                })
                .collect();
            theta = theta.vstack(&IntMatrix::from_rows(m, sample)?)?;
        }
        let mut ok = true;
        for c in &complements {
            if theta.submatrix_cols(c)?.det()?.is_zero() {
                ok = false;
                break;
            }
        }
        if !ok {
            continue;
        }
        let lambda = CharMatrix(kernel_lattice(&theta));
        if !is_rational_characteristic(&lambda, k)? {
            return Err(TorusError::Internal(
                "complementary minors nonzero but orthogonal matrix is not characteristic".into(),
            ));
        }
        if !torus_from_kernel(&lambda).contains(t) {
            return Err(TorusError::Internal(
                "extended torus does not contain the original one".into(),
            ));
        }
        return Ok(Extension::Found {
            theta_full: theta,
            lambda,
            tries: attempt,
        });
    }
    Ok(Extension::Exhausted { tries: budget })
}

/// An `(m−k) × m` matrix `Θ` with `ker Θ = T` as lattices: the map
/// `T^m → T^m/T`, read off a unimodular completion of the generators.
pub fn quotient_projection(t: &Subtorus) -> Result<IntMatrix, TorusError> {
    let a = &t.generators;
    let (k, m) = (a.rows(), a.cols());
    let completion = complete_to_unimodular(a)?;
    let theta = completion
        .select_columns(&(k..m).collect::<Vec<_>>())
        .transpose();

    if !(&theta * &a.transpose()).is_zero() {
        return Err(TorusError::Internal(
            "projection does not annihilate the torus".into(),
        ));
    }
    if theta.rows() != m - k || !is_primitive_rows(&theta) {
        return Err(TorusError::Internal(
            "projection is not a primitive surjection".into(),
        ));
    }
    if !same_row_lattice(&kernel_lattice(&theta), a) {
        return Err(TorusError::Internal(
            "kernel of the projection is not the torus".into(),
        ));
    }
    Ok(theta)
}

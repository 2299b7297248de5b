//! Exact computations for moment-angle complexes `Z_K` and their quotients by
//! subtori of `T^m`. The library decides when `Z_K` is a manifold and when a
//! subtorus acts freely on it, then computes Stiefel–Whitney data of the quotient.
//!
//! All arithmetic is exact, over `ℤ`, `ℚ` or `ℤ/2`.

pub mod charclass;
pub mod homology;
pub mod io;
pub mod known;
pub mod linalg;
pub mod pipeline;
pub mod search;
pub mod simplicial;
pub mod torus;

pub use charclass::{
    face_ring_mod2, h2_of_quotient, w2_of_quotient, GradedMod2Ring, Mod2Class, QuotientH2,
    RingError, SwNumber, W2Class,
};
pub use homology::{
    chain_complex, homology, is_homology_sphere, manifold_verdict, Flavor, HomologyProfile,
    ManifoldVerdict, SphereCertificate,
};
pub use io::FormatError;
pub use linalg::{IntMatrix, LinalgError, RatMatrix};
pub use pipeline::{verify_c69, verify_c69_with, C69Inputs, C69Report};
pub use search::{search_free, SearchConfig, SearchError, SearchMode, SearchOutcome};
pub use simplicial::{
    boundary_of_simplex, cyclic_polytope_boundary, ComplexError, Face, SimplicialComplex,
};
pub use torus::{
    acts_almost_freely, acts_freely, characteristic_duality_holds, extend_to_characteristic,
    is_rational_characteristic, quotient_projection, torus_from_kernel, CharMatrix, Extension,
    ExtensionParams, Freeness, Subtorus, TorusError,
};

/// Any error raised by the library, classified for callers that map failures
/// to exit codes.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Torus(#[from] TorusError),
    #[error(transparent)]
    Ring(#[from] RingError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error(transparent)]
    Format(#[from] FormatError),
}

impl Error {
    /// A broken internal invariant rather than bad input.
    pub fn is_internal(&self) -> bool {
        matches!(
            self,
            Error::Linalg(LinalgError::Internal(_))
                | Error::Torus(TorusError::Internal(_))
                | Error::Torus(TorusError::Linalg(LinalgError::Internal(_)))
                | Error::Search(SearchError::Torus(TorusError::Internal(_)))
        )
    }
}

//! Mod-2 cohomology classes: `H²` and `w₂` of partial quotients, and the face
//! ring of a quasitoric manifold or small cover with its Stiefel–Whitney data.

mod face_ring;
mod quotient;

pub use face_ring::{face_ring_mod2, GradedMod2Ring, RingError, SwNumber};
pub use quotient::{h2_of_quotient, w2_of_quotient, QuotientH2, W2Class};

use serde::{Serialize, Serializer};

/// A class in one homogeneous piece, given by coordinates in a named basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Mod2Class {
    /// Real cohomological degree.
    pub degree: usize,
    pub basis: Vec<String>,
    #[serde(serialize_with = "bits_as_ints")]
    pub coords: Vec<bool>,
}

fn bits_as_ints<S: Serializer>(bits: &[bool], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(bits.iter().map(|&b| u8::from(b)))
}

impl Mod2Class {
    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|&b| !b)
    }

    /// Sum of the basis elements with nonzero coordinate, e.g. `[v1] + [v2]`.
    pub fn to_polynomial(&self) -> String {
        let terms: Vec<String> = self
            .basis
            .iter()
            .zip(&self.coords)
            .filter(|(_, &b)| b)
            .map(|(name, _)| format!("[{name}]"))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" + ")
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_rendering() {
        let c = Mod2Class {
            degree: 2,
            basis: vec!["v1".into(), "v2".into(), "v4".into()],
            coords: vec![true, false, true],
        };
        assert_eq!(c.to_polynomial(), "[v1] + [v4]");
        assert!(!c.is_zero());
        let json = serde_json::to_value(&c).unwrap();
        assert_eq!(json["coords"], serde_json::json!([1, 0, 1]));
    }
}

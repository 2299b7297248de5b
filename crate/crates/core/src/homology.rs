//! Simplicial homology over ℤ and ℤ/2, and certification of generalized
//! homology spheres by recursive link checks.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::linalg::{rank_mod2, smith, IntMatrix};
use crate::simplicial::{Face, SimplicialComplex};

/// Boundary matrices of the augmented chain complex.
///
/// `faces[d + 1]` lists the `d`-faces for `d = -1..=dim`; `boundaries[d]` is
/// `∂_d : C_d → C_{d-1}` for `d = 0..=dim`, with `∂_0` the augmentation.
#[derive(Clone, Debug)]
pub struct ChainComplexData {
    pub faces: Vec<Vec<Face>>,
    pub boundaries: Vec<IntMatrix>,
}

impl ChainComplexData {
    pub fn dimension(&self) -> isize {
        self.faces.len() as isize - 2
    }

    pub fn faces_of_dim(&self, d: isize) -> &[Face] {
        &self.faces[(d + 1) as usize]
    }

    pub fn boundary(&self, d: isize) -> &IntMatrix {
        &self.boundaries[d as usize]
    }
}

pub fn chain_complex(k: &SimplicialComplex) -> ChainComplexData {
    let dim = k.dimension();
    let faces: Vec<Vec<Face>> = (-1..=dim)
        .map(|d| k.faces_of_dim(d).expect("dimension in range"))
        .collect();
    let mut boundaries = Vec::new();
    for d in 0..=dim {
        let lower = &faces[d as usize];
        let upper = &faces[(d + 1) as usize];
        let index: HashMap<&Face, usize> = lower.iter().enumerate().map(|(i, f)| (f, i)).collect();
        let mut b = IntMatrix::zeros(lower.len(), upper.len());
        for (j, f) in upper.iter().enumerate() {
            for omit in 0..f.len() {
                let mut g = f.clone();
                g.remove(omit);
                let sign = if omit % 2 == 0 { 1 } else { -1 };
                b.set(index[&g], j, sign);
            }
        }
        boundaries.push(b);
    }
    let data = ChainComplexData { faces, boundaries };
    debug_assert!(boundary_squares_to_zero(&data));
    data
}

/// `∂_d · ∂_{d+1} = 0` for every `d`.
pub fn boundary_squares_to_zero(c: &ChainComplexData) -> bool {
    c.boundaries.windows(2).all(|w| (&w[0] * &w[1]).is_zero())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Flavor {
    Reduced,
    Unreduced,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeHomology {
    pub degree: isize,
    pub betti: usize,
    #[serde(serialize_with = "crate::io::ser_bigint_vec")]
    pub torsion: Vec<BigInt>,
    pub mod2: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyProfile {
    pub flavor: Flavor,
    pub degrees: Vec<DegreeHomology>,
}

impl HomologyProfile {
    pub fn degree(&self, d: isize) -> Option<&DegreeHomology> {
        self.degrees.iter().find(|h| h.degree == d)
    }

    pub fn betti(&self, d: isize) -> usize {
        self.degree(d).map_or(0, |h| h.betti)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.degrees
            .iter()
            .map(|h| {
                if h.degree.rem_euclid(2) == 0 {
                    h.betti as i64
                } else {
                    -(h.betti as i64)
                }
            })
            .sum()
    }

    /// Reduced homology equals that of `S^d` (with `S^{-1} = {∅}`).
    pub fn is_sphere_homology(&self, d: isize) -> bool {
        assert_eq!(self.flavor, Flavor::Reduced);
        self.degrees
            .iter()
            .all(|h| h.torsion.is_empty() && h.betti == usize::from(h.degree == d))
            && self.degree(d).is_some()
    }
}

/// Homology with both ℤ (betti ranks and torsion) and ℤ/2 coefficients.
pub fn homology(k: &SimplicialComplex, flavor: Flavor) -> HomologyProfile {
    homology_of_chain_complex(&chain_complex(k), flavor)
}

pub fn homology_of_chain_complex(c: &ChainComplexData, flavor: Flavor) -> HomologyProfile {
    let dim = c.dimension();
    let reduced = flavor == Flavor::Reduced;
    // rank and invariant factors of ∂_d for d = 0..=dim
    let mut ranks = Vec::new();
    let mut ranks2 = Vec::new();
    let mut factors = Vec::new();
    for d in 0..=dim {
        let b = c.boundary(d);
        if d == 0 && !reduced {
            ranks.push(0);
            ranks2.push(0);
            factors.push(Vec::new());
            continue;
        }
        let s = smith(b);
        ranks.push(s.rank());
        ranks2.push(rank_mod2(b));
        factors.push(s.invariant_factors);
    }
    let rank_of = |v: &Vec<usize>, d: isize| -> usize {
        if d < 0 || d > dim {
            0
        } else {
            v[d as usize]
        }
    };
    let lowest = if reduced { -1 } else { 0 };
    let degrees = (lowest..=dim)
        .map(|d| {
            let f = c.faces_of_dim(d).len();
            let torsion = if d < dim {
                factors[(d + 1) as usize]
                    .iter()
                    .filter(|x| !x.is_one())
                    .cloned()
                    .collect()
            } else {
                Vec::new()
            };
            DegreeHomology {
                degree: d,
                betti: f - rank_of(&ranks, d) - rank_of(&ranks, d + 1),
                torsion,
                mod2: f - rank_of(&ranks2, d) - rank_of(&ranks2, d + 1),
            }
        })
        .collect();
    HomologyProfile { flavor, degrees }
}

/// One node of the recursive link check. The root is the complex itself
/// (face `[]`); each child is the link of one more vertex.
#[derive(Clone, Debug, Serialize)]
pub struct CertificateNode {
    /// Face of the original complex whose link this node examines.
    pub face: Face,
    pub expected_dim: isize,
    pub sphere_homology: bool,
    /// Identical link already examined elsewhere in the tree.
    pub memo_hit: bool,
    pub holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub children: Vec<CertificateNode>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SphereCertificate {
    pub criterion: &'static str,
    pub is_homology_sphere: bool,
    pub dimension: isize,
    pub distinct_links_checked: usize,
    pub root: CertificateNode,
}

/// Certifies `K` as a generalized homology sphere: reduced homology of
/// `S^{dim K}`, and recursively every vertex link is a homology sphere of one
/// dimension less. Iterated vertex links reach the link of every face.
pub fn is_homology_sphere(k: &SimplicialComplex) -> SphereCertificate {
    let mut memo: HashMap<(SimplicialComplex, isize), bool> = HashMap::new();
    let dim = k.dimension();
    let labels: Vec<usize> = (1..=k.m()).collect();
    let root = certify(k, dim, Vec::new(), &labels, &mut memo);
    SphereCertificate {
        criterion: "recursive-links",
        is_homology_sphere: root.holds,
        dimension: dim,
        distinct_links_checked: memo.len(),
        root,
    }
}

fn certify(
    k: &SimplicialComplex,
    expected_dim: isize,
    face: Face,
    labels: &[usize],
    memo: &mut HashMap<(SimplicialComplex, isize), bool>,
) -> CertificateNode {
    let key = (k.compress(), expected_dim);
    if let Some(&holds) = memo.get(&key) {
        return CertificateNode {
            face,
            expected_dim,
            sphere_homology: holds,
            memo_hit: true,
            holds,
            children: Vec::new(),
        };
    }
    let sphere_homology = k.dimension() == expected_dim
        && homology(k, Flavor::Reduced).is_sphere_homology(expected_dim);
    let mut children = Vec::new();
    let mut holds = sphere_homology;
    if sphere_homology && expected_dim >= 0 {
        for v in k.support() {
            let link = k.link(&[v]).expect("vertex of the support is a face");
            let child_labels: Vec<usize> = link.labels.iter().map(|&w| labels[w - 1]).collect();
            let mut child_face = face.clone();
            child_face.push(labels[v - 1]);
            child_face.sort_unstable();
            let node = certify(
                &link.complex,
                expected_dim - 1,
                child_face,
                &child_labels,
                memo,
            );
            holds &= node.holds;
            children.push(node);
            if !holds {
                break;
            }
        }
    }
    memo.insert(key, holds);
    CertificateNode {
        face,
        expected_dim,
        sphere_homology,
        memo_hit: false,
        holds,
        children,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ManifoldVerdict {
    /// `Z_K` is a topological manifold.
    CertifiedManifold,
    /// The sufficient criterion does not apply; nothing is claimed.
    Unknown,
}

pub fn manifold_verdict(k: &SimplicialComplex) -> ManifoldVerdict {
    if is_homology_sphere(k).is_homology_sphere {
        ManifoldVerdict::CertifiedManifold
    } else {
        ManifoldVerdict::Unknown
    }
}

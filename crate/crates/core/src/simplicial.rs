//! Finite simplicial complexes on a labelled vertex set `{1, …, m}`.
//!
//! A complex is stored by its facets (inclusion-maximal faces). The vertex
//! count `m` is independent of the facets, so vertices that lie in no face
//! ("ghost vertices") are represented faithfully.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A face as an ascending list of 1-based vertex labels.
pub type Face = Vec<usize>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComplexError {
    #[error("vertex count must be positive")]
    NoVertices,
    #[error("vertex {vertex} outside 1..={m}")]
    VertexOutOfRange { vertex: usize, m: usize },
    #[error("{0:?} is not a face of the complex")]
    NotAFace(Face),
    #[error("dimension {d} outside -1..={dim}")]
    DimensionOutOfRange { d: isize, dim: isize },
    #[error("invalid parameters: {0}")]
    InvalidParameter(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ComplexJson")]
pub struct SimplicialComplex {
    m: usize,
    facets: Vec<Face>,
}

#[derive(Deserialize)]
struct ComplexJson {
    m: usize,
    facets: Vec<Vec<usize>>,
}

impl TryFrom<ComplexJson> for SimplicialComplex {
    type Error = ComplexError;

    fn try_from(raw: ComplexJson) -> Result<Self, Self::Error> {
        SimplicialComplex::new(raw.m, raw.facets)
    }
}

impl SimplicialComplex {
    /// Builds a complex from an arbitrary generating family of faces; only the
    /// inclusion-maximal ones are kept.
    pub fn new<I, F>(m: usize, faces: I) -> Result<Self, ComplexError>
    where
        I: IntoIterator<Item = F>,
        F: IntoIterator<Item = usize>,
    {
        if m == 0 {
            return Err(ComplexError::NoVertices);
        }
        let mut set: BTreeSet<Face> = BTreeSet::new();
        for face in faces {
            let f: BTreeSet<usize> = face.into_iter().collect();
            if let Some(&v) = f.iter().find(|&&v| v == 0 || v > m) {
                return Err(ComplexError::VertexOutOfRange { vertex: v, m });
            }
            set.insert(f.into_iter().collect());
        }
        Ok(Self::from_face_set(m, set))
    }

    fn from_face_set(m: usize, faces: BTreeSet<Face>) -> Self {
        // larger faces first, so every kept face is checked against all its supersets
        let mut by_size: Vec<Face> = faces.into_iter().collect();
        by_size.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
        let mut kept: Vec<Face> = Vec::new();
        for f in by_size {
            if !kept.iter().any(|g| is_subset(&f, g)) {
                kept.push(f);
            }
        }
        kept.sort();
        let k = SimplicialComplex { m, facets: kept };
        debug_assert!(k.facets_pairwise_incomparable());
        k
    }

    /// The complex on `m` vertices with no simplices at all.
    pub fn void(m: usize) -> Result<Self, ComplexError> {
        Self::new(m, Vec::<Face>::new())
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    /// Maximal facet size minus one; `-1` when there is no nonempty face.
    pub fn dimension(&self) -> isize {
        self.facets
            .iter()
            .map(|f| f.len() as isize)
            .max()
            .unwrap_or(0)
            - 1
    }

    /// No simplices, not even the empty one.
    pub fn is_void(&self) -> bool {
        self.facets.is_empty()
    }

    pub fn is_pure(&self) -> bool {
        self.facets.iter().map(Vec::len).all_equal()
    }

    pub fn contains_face(&self, sigma: &[usize]) -> bool {
        let s = sorted(sigma);
        self.facets.iter().any(|f| is_subset(&s, f))
    }

    /// Vertices (ascending) not in `sigma`.
    pub fn complement(&self, sigma: &[usize]) -> Vec<usize> {
        (1..=self.m).filter(|v| !sigma.contains(v)).collect()
    }

    /// Vertices that belong to some face.
    pub fn support(&self) -> Vec<usize> {
        self.facets
            .iter()
            .flatten()
            .copied()
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    pub fn ghost_vertices(&self) -> Vec<usize> {
        let support = self.support();
        (1..=self.m).filter(|v| !support.contains(v)).collect()
    }

    /// All faces of dimension `d` in lexicographic order.
    pub fn faces_of_dim(&self, d: isize) -> Result<Vec<Face>, ComplexError> {
        let dim = self.dimension();
        if d < -1 || d > dim {
            return Err(ComplexError::DimensionOutOfRange { d, dim });
        }
        if self.is_void() {
            return Ok(Vec::new());
        }
        let size = (d + 1) as usize;
        let mut out = BTreeSet::new();
        for f in self.facets.iter().filter(|f| f.len() >= size) {
            for c in f.iter().copied().combinations(size) {
                out.insert(c);
            }
        }
        Ok(out.into_iter().collect())
    }

    /// `f_{-1}, f_0, …, f_{dim}`.
    pub fn f_vector(&self) -> Vec<usize> {
        (-1..=self.dimension())
            .map(|d| self.faces_of_dim(d).map_or(0, |f| f.len()))
            .collect()
    }

    /// Unreduced Euler characteristic `Σ (-1)^d f_d` over `d ≥ 0`.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .skip(1)
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Link of a face. The result lives on the vertices outside `sigma`,
    /// relabelled `1..` in increasing order; [`Link::labels`] maps back.
    pub fn link(&self, sigma: &[usize]) -> Result<Link, ComplexError> {
        let s = sorted(sigma);
        if !self.contains_face(&s) {
            return Err(ComplexError::NotAFace(s));
        }
        let labels = self.complement(&s);
        if labels.is_empty() {
            // sigma is the full vertex set, so K is the full simplex and the link is {∅}
            return Err(ComplexError::InvalidParameter(
                "link of the full vertex set has no vertices".into(),
            ));
        }
        let mut relabel = vec![0usize; self.m + 1];
        for (i, &v) in labels.iter().enumerate() {
            relabel[v] = i + 1;
        }
        let faces: BTreeSet<Face> = self
            .facets
            .iter()
            .filter(|f| is_subset(&s, f))
            .map(|f| {
                f.iter()
                    .filter(|v| !s.contains(v))
                    .map(|&v| relabel[v])
                    .collect()
            })
            .collect();
        Ok(Link {
            complex: Self::from_face_set(labels.len(), faces),
            labels,
        })
    }

    /// Same facets with the vertices restricted to the support and relabelled
    /// `1..` in order. Used as a canonical key when ghost vertices are irrelevant.
    pub fn compress(&self) -> SimplicialComplex {
        let support = self.support();
        if support.is_empty() {
            return SimplicialComplex {
                m: 1,
                facets: self.facets.clone(),
            };
        }
        let mut relabel = vec![0usize; self.m + 1];
        for (i, &v) in support.iter().enumerate() {
            relabel[v] = i + 1;
        }
        let facets = self
            .facets
            .iter()
            .map(|f| f.iter().map(|&v| relabel[v]).collect())
            .collect();
        SimplicialComplex {
            m: support.len(),
            facets,
        }
    }

    fn facets_pairwise_incomparable(&self) -> bool {
        self.facets.iter().enumerate().all(|(i, f)| {
            self.facets
                .iter()
                .enumerate()
                .all(|(j, g)| i == j || !is_subset(f, g))
        })
    }
}

/// Result of [`SimplicialComplex::link`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Link {
    pub complex: SimplicialComplex,
    /// `labels[i]` is the original label of link vertex `i + 1`.
    pub labels: Vec<usize>,
}

impl Link {
    pub fn to_original(&self, face: &[usize]) -> Face {
        face.iter().map(|&v| self.labels[v - 1]).collect()
    }

    pub fn original_facets(&self) -> Vec<Face> {
        self.complex
            .facets()
            .iter()
            .map(|f| self.to_original(f))
            .collect()
    }
}

/// `∂Δⁿ` on `n + 1` vertices; for `n = 0` this is the complex `{∅}` on one vertex.
pub fn boundary_of_simplex(n: usize) -> SimplicialComplex {
    let m = n + 1;
    let facets = (1..=m).combinations(n).collect::<BTreeSet<_>>();
    SimplicialComplex::from_face_set(m, facets)
}

/// The full simplex on `m` vertices.
pub fn simplex(m: usize) -> Result<SimplicialComplex, ComplexError> {
    SimplicialComplex::new(m, [1..=m])
}

/// Gale's evenness condition for an `n`-subset of `{1..m}`: between any two
/// consecutive non-members there is an even number of members.
///
/// Checking consecutive non-members suffices, since the count between any two
/// non-members is a sum over the gaps in between.
pub fn satisfies_gale_evenness(subset: &[usize], m: usize) -> bool {
    let mut prev_outside: Option<usize> = None;
    let mut between = 0usize;
    let mut idx = 0;
    for v in 1..=m {
        if idx < subset.len() && subset[idx] == v {
            between += 1;
            idx += 1;
        } else {
            if prev_outside.is_some() && between % 2 == 1 {
                return false;
            }
            prev_outside = Some(v);
            between = 0;
        }
    }
    true
}

/// Boundary complex of the cyclic polytope `C_n(m)`, facets by Gale evenness.
pub fn cyclic_polytope_boundary(n: usize, m: usize) -> Result<SimplicialComplex, ComplexError> {
    if n < 2 {
        return Err(ComplexError::InvalidParameter(format!(
            "cyclic polytope dimension must be at least 2, got {n}"
        )));
    }
    if m <= n {
        return Err(ComplexError::InvalidParameter(format!(
            "cyclic polytope C_{n}({m}) needs more than {n} vertices"
        )));
    }
    let facets: BTreeSet<Face> = (1..=m)
        .combinations(n)
        .filter(|s| satisfies_gale_evenness(s, m))
        .collect();
    Ok(SimplicialComplex::from_face_set(m, facets))
}

fn sorted(sigma: &[usize]) -> Face {
    let mut s = sigma.to_vec();
    s.sort_unstable();
    s.dedup();
    s
}

/// Both inputs ascending.
pub(crate) fn is_subset(small: &[usize], big: &[usize]) -> bool {
    let mut it = big.iter();
    small.iter().all(|x| it.any(|y| y == x))
}

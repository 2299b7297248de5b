//! The graded ring `ℤ/2[v_1..v_m] / (I_K + J)` of a quasitoric manifold
//! (generators in degree 2) or small cover (degree 1), where `I_K` is the
//! Stanley–Reisner ideal and `J` is spanned by the rows of a mod-2
//! characteristic matrix read as linear forms.
//!
//! The linear relations are eliminated first: for the first facet `σ₀`,
//! `Λ(σ₀)` is invertible mod 2, so each `v_i` becomes a linear form in the
//! variables indexed by `σ̄₀`. Every homogeneous piece is then a quotient of
//! the space of monomials in those `m − n` variables by the degree-`d` part of
//! the substituted Stanley–Reisner ideal, computed by row reduction.

use std::collections::{BTreeSet, HashMap, HashSet};

use num_integer::Integer;
use serde::Serialize;
use thiserror::Error;

use super::Mod2Class;
use crate::linalg::{BitVec, Gf2Echelon, IntMatrix};
use crate::simplicial::{Face, SimplicialComplex};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RingError {
    #[error("complex is not pure")]
    NotPure,
    #[error("complex has no nonempty face")]
    Empty,
    #[error("characteristic matrix must be {expected_rows}x{expected_cols}, got {rows}x{cols}")]
    Shape {
        expected_rows: usize,
        expected_cols: usize,
        rows: usize,
        cols: usize,
    },
    #[error("matrix is not characteristic mod 2: singular on facet {0:?}")]
    NotCharacteristic(Face),
    #[error("generator degree must be 1 or 2, got {0}")]
    GeneratorDegree(usize),
    #[error("at most 64 vertices are supported, got {0}")]
    TooManyVertices(usize),
    #[error("no fundamental class: top degree {degree} has dimension {dim}")]
    NoFundamentalClass { degree: usize, dim: usize },
}

/// Exponent vector over the free variables.
type Monomial = Vec<u8>;
/// Polynomial over ℤ/2 as a set of monomials.
type Poly = BTreeSet<Monomial>;

#[derive(Clone, Debug)]
struct Piece {
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    ideal: Gf2Echelon,
    basis: Vec<usize>,
}

impl Piece {
    fn vector(&self, p: &Poly) -> BitVec {
        let mut v = BitVec::zeros(self.monomials.len());
        for mono in p {
            v.flip(self.index[mono]);
        }
        v
    }

    fn dim(&self) -> usize {
        self.basis.len()
    }
}

#[derive(Clone, Debug)]
pub struct GradedMod2Ring {
    m: usize,
    generator_degree: usize,
    /// Original labels of the free variables.
    free_vars: Vec<usize>,
    /// `v_i` as a linear form in the free variables, for `i = 1..=m`.
    forms: Vec<Poly>,
    pieces: Vec<Piece>,
}

/// Builds the ring. `lambda` is reduced mod 2 entrywise.
pub fn face_ring_mod2(
    k: &SimplicialComplex,
    lambda: &IntMatrix,
    generator_degree: usize,
) -> Result<GradedMod2Ring, RingError> {
    if generator_degree != 1 && generator_degree != 2 {
        return Err(RingError::GeneratorDegree(generator_degree));
    }
    if !k.is_pure() {
        return Err(RingError::NotPure);
    }
    if k.is_void() {
        return Err(RingError::Empty);
    }
    let m = k.m();
    if m > 64 {
        return Err(RingError::TooManyVertices(m));
    }
    let n = (k.dimension() + 1) as usize;
    if lambda.rows() != n || lambda.cols() != m {
        return Err(RingError::Shape {
            expected_rows: n,
            expected_cols: m,
            rows: lambda.rows(),
            cols: lambda.cols(),
        });
    }
    let bits: Vec<Vec<bool>> = (0..n)
        .map(|i| lambda.row(i).iter().map(|x| x.is_odd()).collect())
        .collect();
    for facet in k.facets() {
        let block: Vec<Vec<bool>> = bits
            .iter()
            .map(|row| facet.iter().map(|&v| row[v - 1]).collect())
            .collect();
        if gf2_solve(&block, &vec![Vec::new(); n]).is_none() {
            return Err(RingError::NotCharacteristic(facet.clone()));
        }
    }

    let sigma0 = &k.facets()[0];
    let free_vars = k.complement(sigma0);
    let r = free_vars.len();
    let pick = |cols: &[usize]| -> Vec<Vec<bool>> {
        bits.iter()
            .map(|row| cols.iter().map(|&v| row[v - 1]).collect())
            .collect()
    };
    // Λ(σ₀)·v_σ₀ = Λ(σ̄₀)·v_free  (signs vanish mod 2)
    let solved = gf2_solve(&pick(sigma0), &pick(&free_vars)).expect("facet block is invertible");
    let mut forms: Vec<Poly> = vec![Poly::new(); m];
    for (t, &v) in free_vars.iter().enumerate() {
        forms[v - 1].insert(unit(r, t));
    }
    for (coeffs, &v) in solved.iter().zip(sigma0) {
        for (t, _) in coeffs.iter().enumerate().filter(|(_, &c)| c) {
            forms[v - 1].insert(unit(r, t));
        }
    }

    let generators: Vec<Poly> = minimal_non_faces(k, n)
        .into_iter()
        .map(|nf| {
            nf.iter()
                .fold(poly_one(r), |acc, &v| poly_mul(&acc, &forms[v - 1]))
        })
        .collect();

    let mut pieces: Vec<Piece> = Vec::with_capacity(n + 1);
    for d in 0..=n {
        let monomials = monomials_of_degree(r, d);
        let index: HashMap<Monomial, usize> = monomials
            .iter()
            .enumerate()
            .map(|(i, mo)| (mo.clone(), i))
            .collect();
        let mut piece = Piece {
            monomials,
            index,
            ideal: Gf2Echelon::new(0),
            basis: Vec::new(),
        };
        let mut ideal = Gf2Echelon::new(piece.monomials.len());
        if d > 0 {
            // I_d = I_{d-1}·(variables) + new generators of degree d
            let prev = &pieces[d - 1];
            for row in prev.ideal_rows() {
                let p: Poly = row.ones().map(|i| prev.monomials[i].clone()).collect();
                for t in 0..r {
                    ideal.insert(piece.vector(&poly_mul(&p, &[unit(r, t)].into())));
                }
            }
        }
        for g in generators.iter().filter(|g| poly_degree(g) == Some(d)) {
            ideal.insert(piece.vector(g));
        }
        piece.basis = ideal.free_positions();
        piece.ideal = ideal;
        pieces.push(piece);
    }

    Ok(GradedMod2Ring {
        m,
        generator_degree,
        free_vars,
        forms,
        pieces,
    })
}

impl Piece {
    fn ideal_rows(&self) -> Vec<BitVec> {
        // a spanning set of the ideal piece: reduce each monomial and take the
        // difference to its normal form
        let mut rows = Vec::new();
        for i in 0..self.monomials.len() {
            if self.ideal.is_pivot(i) {
                let mut v = BitVec::zeros(self.monomials.len());
                v.set(i);
                let mut w = v.clone();
                self.ideal.reduce(&mut w);
                w.xor_assign(&v);
                rows.push(w);
            }
        }
        rows
    }
}

impl GradedMod2Ring {
    pub fn m(&self) -> usize {
        self.m
    }

    pub fn generator_degree(&self) -> usize {
        self.generator_degree
    }

    /// Highest polynomial degree computed (`n = dim K + 1`).
    pub fn max_degree(&self) -> usize {
        self.pieces.len() - 1
    }

    /// Dimension of the piece of polynomial degree `d`.
    pub fn dim(&self, d: usize) -> usize {
        self.pieces.get(d).map_or(0, Piece::dim)
    }

    pub fn graded_dims(&self) -> Vec<usize> {
        self.pieces.iter().map(Piece::dim).collect()
    }

    /// Highest polynomial degree with a nonzero piece.
    pub fn top_degree(&self) -> usize {
        (0..self.pieces.len())
            .rev()
            .find(|&d| self.dim(d) > 0)
            .unwrap_or(0)
    }

    fn label(&self, mono: &Monomial) -> String {
        let parts: Vec<String> = mono
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(t, &e)| {
                let v = self.free_vars[t];
                if e == 1 {
                    format!("v{v}")
                } else {
                    format!("v{v}^{e}")
                }
            })
            .collect();
        if parts.is_empty() {
            "1".into()
        } else {
            parts.join("*")
        }
    }

    pub fn basis_labels(&self, d: usize) -> Vec<String> {
        let piece = &self.pieces[d];
        piece
            .basis
            .iter()
            .map(|&i| self.label(&piece.monomials[i]))
            .collect()
    }

    fn reduce(&self, d: usize, p: &Poly) -> Mod2Class {
        let piece = &self.pieces[d];
        Mod2Class {
            degree: d * self.generator_degree,
            basis: self.basis_labels(d),
            coords: piece.ideal.quotient_coords(&piece.vector(p)),
        }
    }

    fn lift(&self, c: &Mod2Class) -> (usize, Poly) {
        let d = c.degree / self.generator_degree;
        let piece = &self.pieces[d];
        let p = piece
            .basis
            .iter()
            .zip(&c.coords)
            .filter(|(_, &b)| b)
            .map(|(&i, _)| piece.monomials[i].clone())
            .collect();
        (d, p)
    }

    /// Class of the generator `v_i` (1-based).
    pub fn generator(&self, i: usize) -> Mod2Class {
        self.reduce(1, &self.forms[i - 1])
    }

    pub fn one(&self) -> Mod2Class {
        self.reduce(0, &poly_one(self.free_vars.len()))
    }

    pub fn multiply(&self, a: &Mod2Class, b: &Mod2Class) -> Mod2Class {
        let (da, pa) = self.lift(a);
        let (db, pb) = self.lift(b);
        let d = da + db;
        if d > self.max_degree() {
            return Mod2Class {
                degree: d * self.generator_degree,
                basis: Vec::new(),
                coords: Vec::new(),
            };
        }
        self.reduce(d, &poly_mul(&pa, &pb))
    }

    /// Coefficient of a top-degree class against the fundamental class.
    pub fn evaluate(&self, c: &Mod2Class) -> Result<bool, RingError> {
        let top = self.fundamental_degree()?;
        if c.degree != top * self.generator_degree {
            return Ok(false);
        }
        Ok(c.coords[0])
    }

    /// Polynomial degree of the fundamental class.
    pub fn fundamental_degree(&self) -> Result<usize, RingError> {
        let top = self.top_degree();
        let dim = self.dim(top);
        if dim != 1 || top != self.max_degree() {
            return Err(RingError::NoFundamentalClass { degree: top, dim });
        }
        Ok(top)
    }

    /// Rank of the product pairing `R_j × R_{top−j} → R_top ≅ ℤ/2`.
    pub fn pairing_rank(&self, j: usize) -> Result<usize, RingError> {
        let top = self.fundamental_degree()?;
        if j > top {
            return Ok(0);
        }
        let unit_class = |d: usize, idx: usize| Mod2Class {
            degree: d * self.generator_degree,
            basis: self.basis_labels(d),
            coords: (0..self.dim(d)).map(|x| x == idx).collect(),
        };
        let mut rows = Gf2Echelon::new(self.dim(top - j));
        for a in 0..self.dim(j) {
            let mut row = BitVec::zeros(self.dim(top - j));
            for b in 0..self.dim(top - j) {
                let prod = self.multiply(&unit_class(j, a), &unit_class(top - j, b));
                if prod.coords[0] {
                    row.set(b);
                }
            }
            rows.insert(row);
        }
        Ok(rows.dim())
    }

    /// `w_0, w_1, …` with `w = ∏ (1 + v_i)`; entry `j` has polynomial degree `j`.
    pub fn total_sw_class(&self) -> Vec<Mod2Class> {
        let top = self.max_degree();
        let r = self.free_vars.len();
        let mut comps: Vec<Poly> = vec![Poly::new(); top + 1];
        comps[0] = poly_one(r);
        for form in &self.forms {
            for j in (1..=top).rev() {
                let add = poly_mul(&comps[j - 1], form);
                poly_add_assign(&mut comps[j], &add);
            }
        }
        comps
            .iter()
            .enumerate()
            .map(|(j, p)| self.reduce(j, p))
            .collect()
    }

    /// All `w_j` with `j ≥ 1` vanish.
    pub fn sw_triviality(&self) -> bool {
        self.total_sw_class().iter().skip(1).all(Mod2Class::is_zero)
    }

    /// Every monomial in the classes of total degree equal to the fundamental
    /// degree, evaluated on the fundamental class. Partitions are listed in
    /// reverse lexicographic order of their parts.
    pub fn sw_numbers(&self) -> Result<Vec<SwNumber>, RingError> {
        let top = self.fundamental_degree()?;
        let w = self.total_sw_class();
        let mut out = Vec::new();
        for parts in partitions(top) {
            let mut prod = self.one();
            for &p in &parts {
                prod = self.multiply(&prod, &w[p]);
            }
            out.push(SwNumber {
                partition: partition_label(&parts, self.generator_degree),
                value: u8::from(self.evaluate(&prod)?),
            });
        }
        Ok(out)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SwNumber {
    pub partition: String,
    pub value: u8,
}

/// `w2^2*w4` style label with real degrees.
fn partition_label(parts: &[usize], scale: usize) -> String {
    let mut sorted = parts.to_vec();
    sorted.sort_unstable();
    let mut out: Vec<String> = Vec::new();
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j < sorted.len() && sorted[j] == sorted[i] {
            j += 1;
        }
        let deg = sorted[i] * scale;
        out.push(if j - i == 1 {
            format!("w{deg}")
        } else {
            format!("w{deg}^{}", j - i)
        });
        i = j;
    }
    out.join("*")
}

/// Integer partitions of `n`, parts in non-increasing order.
fn partitions(n: usize) -> Vec<Vec<usize>> {
    fn rec(rest: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if rest == 0 {
            out.push(cur.clone());
            return;
        }
        for p in (1..=rest.min(max)).rev() {
            cur.push(p);
            rec(rest - p, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, n, &mut Vec::new(), &mut out);
    }
    out
}

/// Minimal non-faces of size at most `max_size`, as vertex lists.
fn minimal_non_faces(k: &SimplicialComplex, max_size: usize) -> Vec<Face> {
    let facet_masks: Vec<u64> = k.facets().iter().map(|f| mask(f)).collect();
    let is_face = |x: u64| facet_masks.iter().any(|&f| f & x == x);
    let mut faces: HashSet<u64> = HashSet::new();
    for &f in &facet_masks {
        // enumerate submasks
        let mut s = f;
        loop {
            faces.insert(s);
            if s == 0 {
                break;
            }
            s = (s - 1) & f;
        }
    }
    let mut out: BTreeSet<Face> = BTreeSet::new();
    for &f in &faces {
        let top = 64 - f.leading_zeros() as usize; // vertices above the largest in f
        for v in top..k.m() {
            let cand = f | (1u64 << v);
            if (cand.count_ones() as usize) > max_size || is_face(cand) {
                continue;
            }
            let minimal = (0..k.m())
                .filter(|&i| cand >> i & 1 == 1)
                .all(|i| is_face(cand & !(1u64 << i)));
            if minimal {
                out.insert(
                    (0..k.m())
                        .filter(|&i| cand >> i & 1 == 1)
                        .map(|i| i + 1)
                        .collect(),
                );
            }
        }
    }
    out.into_iter().collect()
}

fn mask(face: &[usize]) -> u64 {
    face.iter().fold(0u64, |acc, &v| acc | 1 << (v - 1))
}

fn unit(r: usize, t: usize) -> Monomial {
    let mut mo = vec![0u8; r];
    mo[t] = 1;
    mo
}

fn poly_one(r: usize) -> Poly {
    [vec![0u8; r]].into()
}

fn poly_degree(p: &Poly) -> Option<usize> {
    p.iter()
        .next()
        .map(|mo| mo.iter().map(|&e| e as usize).sum())
}

fn poly_add_assign(a: &mut Poly, b: &Poly) {
    for mo in b {
        if !a.remove(mo) {
            a.insert(mo.clone());
        }
    }
}

fn poly_mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for x in a {
        for y in b {
            let mo: Monomial = x.iter().zip(y).map(|(p, q)| p + q).collect();
            if !out.remove(&mo) {
                out.insert(mo);
            }
        }
    }
    out
}

fn monomials_of_degree(r: usize, d: usize) -> Vec<Monomial> {
    fn rec(i: usize, rest: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i + 1 == cur.len() {
            cur[i] = rest as u8;
            out.push(cur.clone());
            return;
        }
        for e in (0..=rest).rev() {
            cur[i] = e as u8;
            rec(i + 1, rest - e, cur, out);
        }
    }
    if r == 0 {
        return if d == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; r], &mut out);
    out
}

/// Solves `A·X = B` over ℤ/2 for square `A` (rows of `B` may be empty).
/// `None` if `A` is singular.
fn gf2_solve(a: &[Vec<bool>], b: &[Vec<bool>]) -> Option<Vec<Vec<bool>>> {
    let n = a.len();
    let mut rows: Vec<(Vec<bool>, Vec<bool>)> = a.iter().cloned().zip(b.iter().cloned()).collect();
    for c in 0..n {
        let p = (c..n).find(|&i| rows[i].0[c])?;
        rows.swap(c, p);
        let (pa, pb) = rows[c].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != c && row.0[c] {
                for (x, y) in row.0.iter_mut().zip(&pa) {
                    *x ^= y;
                }
                for (x, y) in row.1.iter_mut().zip(&pb) {
                    *x ^= y;
                }
            }
        }
    }
    Some(rows.into_iter().map(|(_, x)| x).collect())
}

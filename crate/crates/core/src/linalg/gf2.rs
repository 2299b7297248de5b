//! Vectors and row reduction over the two-element field.

use num_integer::Integer;

use super::IntMatrix;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BitVec {
    len: usize,
    words: Vec<u64>,
}

impl BitVec {
    pub fn zeros(len: usize) -> Self {
        BitVec {
            len,
            words: vec![0; len.div_ceil(64)],
        }
    }

    pub fn from_bools(bits: &[bool]) -> Self {
        let mut v = Self::zeros(bits.len());
        for (i, &b) in bits.iter().enumerate() {
            if b {
                v.set(i);
            }
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    #[inline]
    pub fn get(&self, i: usize) -> bool {
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize) {
        self.words[i / 64] |= 1 << (i % 64);
    }

    #[inline]
    pub fn flip(&mut self, i: usize) {
        self.words[i / 64] ^= 1 << (i % 64);
    }

    pub fn xor_assign(&mut self, other: &BitVec) {
        debug_assert_eq!(self.len, other.len);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a ^= b;
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    pub fn highest_set(&self) -> Option<usize> {
        for (wi, &w) in self.words.iter().enumerate().rev() {
            if w != 0 {
                return Some(wi * 64 + 63 - w.leading_zeros() as usize);
            }
        }
        None
    }

    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn to_bools(&self) -> Vec<bool> {
        (0..self.len).map(|i| self.get(i)).collect()
    }
}

/// Reduced row echelon basis of a subspace of F₂^len, built incrementally.
///
/// Each stored row owns a pivot equal to its highest set bit, and no other row
/// has that bit set. Consequently the complement of the pivots indexes a basis
/// of the quotient space, and that basis favours low indices.
#[derive(Clone, Debug)]
pub struct Gf2Echelon {
    len: usize,
    rows: Vec<BitVec>,
    pivots: Vec<usize>,
}

impl Gf2Echelon {
    pub fn new(len: usize) -> Self {
        Gf2Echelon {
            len,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn ambient(&self) -> usize {
        self.len
    }

    /// Reduces `v` against the stored rows.
    pub fn reduce(&self, v: &mut BitVec) {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if v.get(p) {
                v.xor_assign(row);
            }
        }
    }

    /// Adds `v` to the span; returns false if it was already there.
    pub fn insert(&mut self, mut v: BitVec) -> bool {
        self.reduce(&mut v);
        let Some(p) = v.highest_set() else {
            return false;
        };
        for row in &mut self.rows {
            if row.get(p) {
                row.xor_assign(&v);
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &BitVec) -> bool {
        let mut w = v.clone();
        self.reduce(&mut w);
        w.is_zero()
    }

    pub fn is_pivot(&self, i: usize) -> bool {
        self.pivots.contains(&i)
    }

    /// Positions not used as pivots, ascending.
    pub fn free_positions(&self) -> Vec<usize> {
        let mut used = vec![false; self.len];
        for &p in &self.pivots {
            used[p] = true;
        }
        (0..self.len).filter(|&i| !used[i]).collect()
    }

    /// Coordinates of `v` modulo the span, on [`Self::free_positions`].
    pub fn quotient_coords(&self, v: &BitVec) -> Vec<bool> {
        let mut w = v.clone();
        self.reduce(&mut w);
        self.free_positions()
            .into_iter()
            .map(|i| w.get(i))
            .collect()
    }
}

/// Row of an integer matrix reduced mod 2.
pub fn row_mod2(a: &IntMatrix, i: usize) -> BitVec {
    let mut v = BitVec::zeros(a.cols());
    for (j, x) in a.row(i).iter().enumerate() {
        if x.is_odd() {
            v.set(j);
        }
    }
    v
}

pub fn rank_mod2(a: &IntMatrix) -> usize {
    let mut e = Gf2Echelon::new(a.cols());
    for i in 0..a.rows() {
        e.insert(row_mod2(a, i));
    }
    e.dim()
}

//! Bounded search for subtori acting freely on `Z_K`.
//!
//! Candidates are `k × m` matrices over a small entry set, built one column at
//! a time. A facet constraint (the complement block must be primitive) is
//! tested as soon as the largest column of that complement is placed, so most
//! prefixes die early. Rows are kept in strictly increasing lexicographic order
//! to skip row permutations, and survivors are deduplicated by the Hermite form
//! of their row lattice. A negative answer is evidence within the searched box,
//! not a proof.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::linalg::{hermite_rows, is_primitive_rows, IntMatrix};
use crate::simplicial::SimplicialComplex;
use crate::torus::{acts_freely, Subtorus, TorusError};

/// Entries above this size could overflow the `i128` minors used for pruning.
pub const MAX_ABS_ENTRY: i64 = 1000;
pub const MAX_SEARCH_DIM: usize = 8;
pub const DEFAULT_CEILING: u128 = 1 << 32;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid search configuration: {0}")]
    InvalidConfig(String),
    #[error("complex is not pure")]
    NotPure,
    #[error("{candidates} raw candidates exceed the ceiling {ceiling}; enable pruning or raise the ceiling")]
    CeilingExceeded { candidates: u128, ceiling: u128 },
    #[error(transparent)]
    Torus(#[from] TorusError),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SearchMode {
    Exhaustive,
    Random { seed: u64, samples: u64 },
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchConfig {
    pub k: usize,
    pub entry_set: Vec<i64>,
    pub mode: SearchMode,
    pub prune: bool,
    /// Largest raw candidate count allowed for exhaustive search without pruning.
    pub ceiling: u128,
}

impl SearchConfig {
    pub fn exhaustive(k: usize, entry_set: Vec<i64>) -> Self {
        SearchConfig {
            k,
            entry_set,
            mode: SearchMode::Exhaustive,
            prune: true,
            ceiling: DEFAULT_CEILING,
        }
    }

    fn validate(&self) -> Result<Vec<i64>, SearchError> {
        if self.k == 0 || self.k > MAX_SEARCH_DIM {
            return Err(SearchError::InvalidConfig(format!(
                "k must lie in 1..={MAX_SEARCH_DIM}, got {}",
                self.k
            )));
        }
        let entries: Vec<i64> = self.entry_set.iter().copied().sorted().dedup().collect();
        if entries.is_empty() {
            return Err(SearchError::InvalidConfig("entry set is empty".into()));
        }
        if entries.iter().any(|e| e.abs() > MAX_ABS_ENTRY) {
            return Err(SearchError::InvalidConfig(format!(
                "entries must satisfy |e| <= {MAX_ABS_ENTRY}"
            )));
        }
        Ok(entries)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SearchOutcome {
    pub label: &'static str,
    pub k: usize,
    pub m: usize,
    pub entry_set: Vec<i64>,
    pub mode: SearchMode,
    pub prune: bool,
    /// Distinct subtori found, as Hermite-form generator matrices, sorted.
    pub found: Vec<Subtorus>,
    /// Candidate matrices (after row-order symmetry breaking) that passed.
    pub raw_hits: u64,
    /// Search-tree nodes (exhaustive) or samples (random) examined.
    pub examined: u64,
}

impl SearchOutcome {
    pub fn is_empty(&self) -> bool {
        self.found.is_empty()
    }
}

pub fn search_free(
    k: &SimplicialComplex,
    cfg: &SearchConfig,
) -> Result<SearchOutcome, SearchError> {
    let entries = cfg.validate()?;
    if !k.is_pure() {
        return Err(SearchError::NotPure);
    }
    let m = k.m();
    let complements: Vec<Vec<usize>> = k
        .facets()
        .iter()
        .map(|f| k.complement(f).into_iter().map(|v| v - 1).collect())
        .collect();
    let (hits, examined) = match cfg.mode {
        SearchMode::Exhaustive => {
            if !cfg.prune {
                let raw = (entries.len() as u128)
                    .checked_pow((cfg.k * m) as u32)
                    .unwrap_or(u128::MAX);
                if raw > cfg.ceiling {
                    return Err(SearchError::CeilingExceeded {
                        candidates: raw,
                        ceiling: cfg.ceiling,
                    });
                }
            }
            exhaustive(m, cfg.k, &entries, &complements, cfg.prune)
        }
        SearchMode::Random { seed, samples } => {
            random(m, cfg.k, &entries, &complements, seed, samples)
        }
    };

    // Deduplicate by lattice, keeping matrices in key order.
    let mut by_key: BTreeMap<Vec<Vec<i64>>, IntMatrix> = BTreeMap::new();
    let raw_hits = hits.len() as u64;
    for cols in hits {
        let rows: Vec<Vec<i64>> = (0..cfg.k)
            .map(|i| cols.iter().map(|c| c[i]).collect())
            .collect();
        let a = IntMatrix::from_rows(m, rows).expect("consistent shape");
        let h = hermite_rows(&a);
        let key = h
            .to_i64_rows()
            .expect("Hermite form of small entries fits in i64");
        by_key.entry(key).or_insert(h);
    }
    let mut found = Vec::with_capacity(by_key.len());
    for (_, h) in by_key {
        if !is_primitive_rows(&h) {
            continue;
        }
        let t = Subtorus::new(h)?;
        if acts_freely(&t, k)?.is_free() {
            found.push(t);
        }
    }
    Ok(SearchOutcome {
        label: "bounded evidence",
        k: cfg.k,
        m,
        entry_set: entries,
        mode: cfg.mode,
        prune: cfg.prune,
        found,
        raw_hits,
        examined,
    })
}

type Column = Vec<i64>;

/// Constraints grouped by the number of placed columns after which they can be
/// tested.
fn schedule(m: usize, complements: &[Vec<usize>], prune: bool) -> Vec<Vec<Vec<usize>>> {
    let mut at: Vec<Vec<Vec<usize>>> = vec![Vec::new(); m + 1];
    for c in complements {
        let depth = if prune {
            c.last().map_or(0, |&x| x + 1)
        } else {
            m
        };
        at[depth].push(c.clone());
    }
    at
}

fn exhaustive(
    m: usize,
    k: usize,
    entries: &[i64],
    complements: &[Vec<usize>],
    prune: bool,
) -> (Vec<Vec<Column>>, u64) {
    let at = schedule(m, complements, prune);
    let columns: Vec<Column> = (0..k)
        .map(|_| entries.iter().copied())
        .multi_cartesian_product()
        .collect();
    if !at[0].is_empty() || m == 0 {
        // an empty complement can never carry a rank-k block
        return (Vec::new(), 1);
    }
    // Shard by the first column; each shard is an independent deterministic DFS.
    let shards: Vec<(Vec<Vec<Column>>, u64)> = columns
        .par_iter()
        .map(|first| {
            let mut state = Dfs {
                m,
                k,
                columns: &columns,
                at: &at,
                placed: Vec::with_capacity(m),
                hits: Vec::new(),
                examined: 0,
            };
            state.push(first.clone(), vec![false; k.saturating_sub(1)]);
            (state.hits, state.examined)
        })
        .collect();
    let mut hits = Vec::new();
    let mut examined = 0;
    for (h, e) in shards {
        hits.extend(h);
        examined += e;
    }
    (hits, examined)
}

struct Dfs<'a> {
    m: usize,
    k: usize,
    columns: &'a [Column],
    at: &'a [Vec<Vec<usize>>],
    placed: Vec<Column>,
    hits: Vec<Vec<Column>>,
    examined: u64,
}

impl Dfs<'_> {
    /// Places `col`, given which adjacent row pairs are already strictly ordered.
    fn push(&mut self, col: Column, decided: Vec<bool>) {
        self.examined += 1;
        let mut decided = decided;
        for i in 0..self.k - 1 {
            if !decided[i] {
                match col[i].cmp(&col[i + 1]) {
                    std::cmp::Ordering::Greater => return,
                    std::cmp::Ordering::Less => decided[i] = true,
                    std::cmp::Ordering::Equal => {}
                }
            }
        }
        self.placed.push(col);
        let depth = self.placed.len();
        let ok = self.at[depth]
            .iter()
            .all(|c| primitive_block(self.k, &self.placed, c));
        if ok {
            if depth == self.m {
                if decided.iter().all(|&d| d) {
                    self.hits.push(self.placed.clone());
                }
            } else {
                for next in self.columns {
                    self.push(next.clone(), decided.clone());
                }
            }
        }
        self.placed.pop();
    }
}

fn random(
    m: usize,
    k: usize,
    entries: &[i64],
    complements: &[Vec<usize>],
    seed: u64,
    samples: u64,
) -> (Vec<Vec<Column>>, u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = Vec::new();
    for _ in 0..samples {
        let cols: Vec<Column> = (0..m)
            .map(|_| {
                (0..k)
                    .map(|_| entries[rng.gen_range(0..entries.len())])
                    .collect()
            })
            .collect();
        if complements.iter().all(|c| primitive_block(k, &cols, c)) {
            hits.push(cols);
        }
    }
    (hits, samples)
}

/// The `k × |cols|` block is primitive: its `k × k` minors have gcd 1.
fn primitive_block(k: usize, placed: &[Column], cols: &[usize]) -> bool {
    if cols.len() < k {
        return false;
    }
    let mut g: i128 = 0;
    for subset in cols.iter().combinations(k) {
        let mut a: Vec<Vec<i128>> = (0..k)
            .map(|i| subset.iter().map(|&&c| placed[c][i] as i128).collect())
            .collect();
        g = gcd(g, bareiss_det(&mut a));
        if g == 1 {
            return true;
        }
    }
    false
}

fn gcd(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Fraction-free determinant; every intermediate is a minor of the input.
fn bareiss_det(a: &mut [Vec<i128>]) -> i128 {
    let n = a.len();
    let mut sign = 1;
    let mut prev = 1i128;
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| a[i][c] != 0) else {
            return 0;
        };
        if p != c {
            a.swap(p, c);
            sign = -sign;
        }
        for i in c + 1..n {
            for j in c + 1..n {
                a[i][j] = (a[i][j] * a[c][c] - a[i][c] * a[c][j]) / prev;
            }
            a[i][c] = 0;
        }
        prev = a[c][c];
    }
    sign * a[n - 1][n - 1]
}

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{IntMatrix, LinalgError};

/// Dense matrix over ℚ; `BigRational` keeps every entry in lowest terms.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigRational>) -> Result<Self, LinalgError> {
        if data.len() != rows * cols {
            return Err(LinalgError::Shape(format!(
                "expected {} entries for a {rows}x{cols} matrix, got {}",
                rows * cols,
                data.len()
            )));
        }
        Ok(RatMatrix { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.cols + j]
    }

    /// Scales each row by the LCM of its denominators.
    ///
    /// Row scaling leaves the rational kernel unchanged, which is all the lattice
    /// computations downstream depend on.
    pub fn clear_denominators(&self) -> IntMatrix {
        let mut out = IntMatrix::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            let row = &self.data[i * self.cols..(i + 1) * self.cols];
            let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            for (j, x) in row.iter().enumerate() {
                let scaled = x * BigRational::from_integer(lcm.clone());
                debug_assert!(scaled.is_integer());
                out.set(i, j, scaled.to_integer());
            }
        }
        out
    }

    pub fn is_integral(&self) -> bool {
        self.data
            .iter()
            .all(|x| x.denom().is_one() || x.numer().is_zero())
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(a: &IntMatrix) -> Self {
        RatMatrix {
            rows: a.rows(),
            cols: a.cols(),
            data: a
                .entries()
                .iter()
                .map(|x| BigRational::from_integer(x.clone()))
                .collect(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn clears_rowwise() {
        let r = RatMatrix::from_vec(2, 2, vec![q(1, 2), q(1, 3), q(2, 1), q(4, 6)]).unwrap();
        assert_eq!(
            r.clear_denominators(),
            IntMatrix::from_i64(&[&[3, 2], &[6, 2]])
        );
        assert!(!r.is_integral());
    }

    #[test]
    fn lowest_terms() {
        assert_eq!(q(4, 6), q(2, 3));
        let a = IntMatrix::from_i64(&[&[1, -2]]);
        let r = RatMatrix::from(&a);
        assert!(r.is_integral());
        assert_eq!(r.clear_denominators(), a);
    }
}

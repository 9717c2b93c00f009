use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgebraError, IntMatrix};
use crate::graph::Permutation;

/// Dense row-major matrix of exact rationals. `BigRational` keeps every
/// entry in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RatMatrix {
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix::from_fn(rows, cols, |_, _| BigRational::zero())
    }

    pub fn identity(n: usize) -> Self {
        RatMatrix::from_fn(n, n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    /// `P` with `P[p(i)][i] = 1`, so that `P·M` moves row `i` of `M` to row `p(i)`.
    pub fn permutation_matrix(p: &Permutation) -> Self {
        let n = p.len();
        let mut m = RatMatrix::zeros(n, n);
        for i in 0..n {
            m.set(p.apply(i), i, BigRational::one());
        }
        m
    }

    /// Panics on ragged input.
    pub fn from_ratios(rows: &[Vec<(i64, i64)>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        RatMatrix::from_fn(rows.len(), cols, |i, j| {
            let (p, q) = rows[i][j];
            BigRational::new(p.into(), q.into())
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let e = self.get(i, j);
                    if i == j {
                        e.is_one()
                    } else {
                        e.is_zero()
                    }
                })
            })
    }

    pub fn checked_mul(&self, rhs: &RatMatrix) -> Result<RatMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = RatMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        out.entries[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, x)| a * x).sum())
            .collect()
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> RatMatrix {
        RatMatrix::from_fn(self.cols, self.cols, |i, j| {
            (0..self.rows).map(|r| self.get(r, i) * self.get(r, j)).sum()
        })
    }

    pub fn row_sums(&self) -> Vec<BigRational> {
        (0..self.rows).map(|i| self.row(i).iter().sum()).collect()
    }

    pub fn column_sums(&self) -> Vec<BigRational> {
        (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect()
    }

    /// Nonnegative with every row and column summing to exactly one.
    pub fn is_doubly_stochastic(&self) -> bool {
        self.is_square()
            && self.entries.iter().all(|e| !e.is_negative())
            && self.row_sums().iter().all(One::is_one)
            && self.column_sums().iter().all(One::is_one)
    }

    /// Exact inverse. Each row is cleared of denominators, the integer matrix
    /// is inverted fraction-free, and the row scaling is undone.
    pub fn inverse(&self) -> Result<RatMatrix, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        let scales: Vec<BigInt> = (0..n)
            .map(|i| {
                self.row(i)
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()))
            })
            .collect();
        let scaled = IntMatrix::from_fn(n, n, |i, j| {
            let e = self.get(i, j);
            e.numer() * (&scales[i] / e.denom())
        });
        let (x, d) = scaled.inverse_scaled()?.ok_or(AlgebraError::Singular)?;
        // self⁻¹ = scaled⁻¹ · diag(scales)
        Ok(RatMatrix::from_fn(n, n, |i, j| {
            BigRational::new(x.get(i, j) * &scales[j], d.clone())
        }))
    }
}

impl From<&IntMatrix> for RatMatrix {
    fn from(m: &IntMatrix) -> Self {
        RatMatrix::from_fn(m.rows(), m.cols(), |i, j| {
            BigRational::from_integer(m.get(i, j).clone())
        })
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;

    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RatMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(p: i64, d: i64) -> BigRational {
        BigRational::new(p.into(), d.into())
    }

    #[test]
    fn inverse_examples() {
        assert!(RatMatrix::identity(3).inverse().unwrap().is_identity());
        let d = RatMatrix::from_ratios(&[vec![(2, 1), (0, 1)], vec![(0, 1), (3, 1)]]);
        let inv = d.inverse().unwrap();
        assert_eq!(inv.get(0, 0), &q(1, 2));
        assert_eq!(inv.get(1, 1), &q(1, 3));
        assert!(inv.get(0, 1).is_zero());

        let m = RatMatrix::from_ratios(&[vec![(1, 1), (1, 1)], vec![(1, 1), (2, 1)]]);
        let expected = RatMatrix::from_ratios(&[vec![(2, 1), (-1, 1)], vec![(-1, 1), (1, 1)]]);
        assert_eq!(m.inverse().unwrap(), expected);
    }

    #[test]
    fn inverse_with_fractions() {
        let m = RatMatrix::from_ratios(&[vec![(1, 2), (1, 3)], vec![(1, 4), (1, 5)]]);
        let inv = m.inverse().unwrap();
        assert!((&m * &inv).is_identity());
        assert!((&inv * &m).is_identity());
    }

    #[test]
    fn inverse_errors() {
        let singular = RatMatrix::from_ratios(&[vec![(1, 2), (1, 2)], vec![(1, 3), (1, 3)]]);
        assert_eq!(singular.inverse(), Err(AlgebraError::Singular));
        assert!(matches!(
            RatMatrix::zeros(2, 3).inverse(),
            Err(AlgebraError::NotSquare { .. })
        ));
    }

    #[test]
    fn doubly_stochastic_examples() {
        let p = Permutation::new(vec![2, 0, 1]).unwrap();
        assert!(RatMatrix::permutation_matrix(&p).is_doubly_stochastic());
        let third = RatMatrix::from_fn(3, 3, |_, _| q(1, 3));
        assert!(third.is_doubly_stochastic());
        let mut id = RatMatrix::identity(3);
        id.set(0, 0, q(1, 2));
        assert!(!id.is_doubly_stochastic());
        // sums fine but a negative entry
        let neg = RatMatrix::from_ratios(&[vec![(2, 1), (-1, 1)], vec![(-1, 1), (2, 1)]]);
        assert!(!neg.is_doubly_stochastic());
        assert!(!RatMatrix::zeros(2, 3).is_doubly_stochastic());
    }

    #[test]
    fn permutation_matrix_moves_rows() {
        let p = Permutation::new(vec![1, 2, 0]).unwrap();
        let pm = RatMatrix::permutation_matrix(&p);
        let v = vec![q(10, 1), q(20, 1), q(30, 1)];
        // row i goes to row p(i)
        assert_eq!(pm.mul_vec(&v), vec![q(30, 1), q(10, 1), q(20, 1)]);
    }
}

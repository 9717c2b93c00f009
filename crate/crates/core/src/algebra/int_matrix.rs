use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::{AlgebraError, IntPoly};

/// Dense row-major matrix of arbitrary-precision integers.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self, AlgebraError> {
        if entries.len() != rows * cols {
            return Err(AlgebraError::DimensionMismatch {
                left: (rows, cols),
                right: (entries.len(), 1),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        IntMatrix::from_fn(n, n, |i, j| BigInt::from((i == j) as u8))
    }

    /// `rows x cols` matrix of ones.
    pub fn ones(rows: usize, cols: usize) -> Self {
        IntMatrix::from_fn(rows, cols, |_, _| BigInt::one())
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        IntMatrix { rows, cols, entries }
    }

    /// Panics on ragged input.
    pub fn from_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let cols = rows.first().map_or(0, |r| r.as_ref().len());
        assert!(rows.iter().all(|r| r.as_ref().len() == cols), "ragged rows");
        IntMatrix::from_fn(rows.len(), cols, |i, j| BigInt::from(rows[i].as_ref()[j]))
    }

    /// Column vector.
    pub fn column_vector(values: Vec<BigInt>) -> Self {
        IntMatrix {
            rows: values.len(),
            cols: 1,
            entries: values,
        }
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
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.entries
    }

    pub fn transpose(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn trace(&self) -> BigInt {
        (0..self.rows.min(self.cols)).map(|i| self.get(i, i)).sum()
    }

    /// Matrix product; skips zero entries of `self` and adds instead of
    /// multiplying for unit entries, which makes 0/1 adjacency matrices cheap.
    pub fn checked_mul(&self, rhs: &IntMatrix) -> Result<IntMatrix, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                let unit = a.is_one();
                let dst = &mut out.entries[i * rhs.cols..(i + 1) * rhs.cols];
                for (d, b) in dst.iter_mut().zip(rhs.row(l)) {
                    if unit {
                        *d += b;
                    } else {
                        *d += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "dimension mismatch");
        (0..self.rows)
            .map(|i| {
                let mut acc = BigInt::zero();
                for (a, x) in self.row(i).iter().zip(v) {
                    if a.is_zero() {
                        continue;
                    }
                    if a.is_one() {
                        acc += x;
                    } else {
                        acc += a * x;
                    }
                }
                acc
            })
            .collect()
    }

    /// `selfᵀ · self`.
    pub fn gram(&self) -> IntMatrix {
        IntMatrix::from_fn(self.cols, self.cols, |i, j| {
            (0..self.rows).map(|r| self.get(r, i) * self.get(r, j)).sum()
        })
    }

    /// `self + s·J`.
    pub fn add_scalar_to_all(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e + s).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> IntMatrix {
        IntMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    fn require_square(&self) -> Result<usize, AlgebraError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(AlgebraError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    /// `det(tI - self)` by the Faddeev-LeVerrier recurrence
    /// `M_k = A·M_{k-1} + c_{n-k+1}·I`, `c_{n-k} = -tr(A·M_k) / k`.
    /// Every division is exact over the integers.
    pub fn char_poly(&self) -> Result<IntPoly, AlgebraError> {
        let n = self.require_square()?;
        if n == 0 {
            return Err(AlgebraError::Empty);
        }
        let mut coeffs = vec![BigInt::zero(); n + 1];
        coeffs[n] = BigInt::one();
        // a_m holds A·M_{k-1}; M_0 = 0.
        let mut a_m = IntMatrix::zeros(n, n);
        for k in 1..=n {
            let mut m = a_m;
            let c = &coeffs[n - k + 1];
            for i in 0..n {
                m.entries[i * n + i] += c;
            }
            a_m = self.checked_mul(&m)?;
            let tr = a_m.trace();
            coeffs[n - k] = -(tr / BigInt::from(k));
        }
        Ok(IntPoly::new(coeffs))
    }

    /// Fraction-free (Bareiss) forward elimination in place. Pivots are the
    /// first nonzero entry found scanning down each column. Returns the pivot
    /// columns and the parity of the row swaps.
    fn bareiss_forward(&mut self, pivot_cols_limit: usize) -> (Vec<usize>, bool) {
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut prev = BigInt::one();
        let mut odd_swaps = false;
        let mut r = 0;
        for c in 0..pivot_cols_limit {
            if r == rows {
                break;
            }
            let Some(p) = (r..rows).find(|&i| !self.get(i, c).is_zero()) else {
                continue;
            };
            if p != r {
                for j in 0..cols {
                    self.entries.swap(p * cols + j, r * cols + j);
                }
                odd_swaps = !odd_swaps;
            }
            let pivot = self.get(r, c).clone();
            for i in r + 1..rows {
                let factor = self.get(i, c).clone();
                for j in c + 1..cols {
                    let v = (&pivot * self.get(i, j) - &factor * self.get(r, j)) / &prev;
                    self.set(i, j, v);
                }
                self.set(i, c, BigInt::zero());
            }
            prev = pivot;
            pivots.push(c);
            r += 1;
        }
        (pivots, odd_swaps)
    }

    /// Rank over the rationals.
    pub fn rank(&self) -> usize {
        let mut work = self.clone();
        let cols = work.cols;
        work.bareiss_forward(cols).0.len()
    }

    pub fn determinant(&self) -> Result<BigInt, AlgebraError> {
        let n = self.require_square()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut work = self.clone();
        let (pivots, odd) = work.bareiss_forward(n);
        if pivots.len() < n {
            return Ok(BigInt::zero());
        }
        let d = work.get(n - 1, n - 1).clone();
        Ok(if odd { -d } else { d })
    }

    /// Solves `self · X = d · rhs` with integral `X`, where `d = ±det(self)`.
    /// Returns `None` when `self` is singular.
    pub fn solve_scaled(&self, rhs: &IntMatrix) -> Result<Option<(IntMatrix, BigInt)>, AlgebraError> {
        let n = self.require_square()?;
        if rhs.rows != n {
            return Err(AlgebraError::DimensionMismatch {
                left: (self.rows, self.cols),
                right: (rhs.rows, rhs.cols),
            });
        }
        let k = rhs.cols;
        let width = n + k;
        let mut aug = IntMatrix::from_fn(n, width, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                rhs.get(i, j - n).clone()
            }
        });
        let (pivots, _) = aug.bareiss_forward(n);
        if pivots.len() < n {
            return Ok(None);
        }
        // U·Y = d·B' is solved by exact back substitution: Y = d·self⁻¹·rhs is integral.
        let d = aug.get(n - 1, n - 1).clone();
        let mut y = IntMatrix::zeros(n, k);
        for col in 0..k {
            for i in (0..n).rev() {
                let mut acc = &d * aug.get(i, n + col);
                for j in i + 1..n {
                    acc -= aug.get(i, j) * y.get(j, col);
                }
                debug_assert!((&acc % aug.get(i, i)).is_zero());
                y.set(i, col, acc / aug.get(i, i));
            }
        }
        Ok(Some((y, d)))
    }

    /// `(X, d)` with `self · X = d · I` and `d != 0`, or `None` if singular.
    pub fn inverse_scaled(&self) -> Result<Option<(IntMatrix, BigInt)>, AlgebraError> {
        let n = self.require_square()?;
        self.solve_scaled(&IntMatrix::identity(n))
    }

    /// Exact solution of `self · x = b`, or `None` if singular.
    pub fn solve(&self, b: &[BigInt]) -> Result<Option<Vec<BigRational>>, AlgebraError> {
        let rhs = IntMatrix::column_vector(b.to_vec());
        Ok(self.solve_scaled(&rhs)?.map(|(y, d)| {
            (0..y.rows)
                .map(|i| BigRational::new(y.get(i, 0).clone(), d.clone()))
                .collect()
        }))
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("dimension mismatch")
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} [", self.rows, self.cols)?;
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

    #[test]
    fn char_poly_examples() {
        let zero = IntMatrix::zeros(2, 2);
        assert_eq!(zero.char_poly().unwrap(), IntPoly::from_i64(&[0, 0, 1]));
        let id = IntMatrix::identity(2);
        assert_eq!(id.char_poly().unwrap(), IntPoly::from_i64(&[1, -2, 1]));
        assert_eq!(
            IntMatrix::zeros(2, 3).char_poly(),
            Err(AlgebraError::NotSquare { rows: 2, cols: 3 })
        );
    }

    #[test]
    fn char_poly_non_unit_entries() {
        // [[2,3],[5,7]]: t^2 - 9t - 1
        let m = IntMatrix::from_rows(&[[2, 3], [5, 7]]);
        assert_eq!(m.char_poly().unwrap(), IntPoly::from_i64(&[-1, -9, 1]));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(IntMatrix::identity(5).rank(), 5);
        assert_eq!(IntMatrix::ones(3, 3).rank(), 1);
        let w = IntMatrix::from_rows(&[[1, 1, 2], [1, 2, 2], [1, 1, 2]]);
        assert_eq!(w.rank(), 2);
        assert_eq!(IntMatrix::zeros(3, 4).rank(), 0);
        // pivot-free first column
        let m = IntMatrix::from_rows(&[[0, 1, 2], [0, 2, 4], [0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn determinant_and_scaled_inverse() {
        let m = IntMatrix::from_rows(&[[0, 1], [1, 0]]);
        assert_eq!(m.determinant().unwrap(), BigInt::from(-1));
        let m = IntMatrix::from_rows(&[[1, 1], [1, 2]]);
        let (x, d) = m.inverse_scaled().unwrap().unwrap();
        assert_eq!(&m * &x, IntMatrix::identity(2).scale(&d));
        assert!(IntMatrix::ones(2, 2).inverse_scaled().unwrap().is_none());
    }

    #[test]
    fn solve_rational() {
        let m = IntMatrix::from_rows(&[[2, 0], [0, 3]]);
        let x = m.solve(&[BigInt::from(1), BigInt::from(1)]).unwrap().unwrap();
        assert_eq!(x[0], BigRational::new(1.into(), 2.into()));
        assert_eq!(x[1], BigRational::new(1.into(), 3.into()));
    }
}

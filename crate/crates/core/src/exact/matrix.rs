//! Dense row-major matrices over exact rings.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

pub type IntMatrix = Matrix<BigInt>;
pub type RatMatrix = Matrix<BigRational>;

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.data[r * self.cols + c])?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn get(&self, r: usize, c: usize) -> &T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &self.data[r * self.cols + c]
    }

    pub fn get_mut(&mut self, r: usize, c: usize) -> &mut T {
        assert!(r < self.rows && c < self.cols, "index ({r},{c}) out of bounds");
        &mut self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: T) {
        *self.get_mut(r, c) = v;
    }

    pub fn row(&self, r: usize) -> &[T] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn entries(&self) -> impl Iterator<Item = &T> {
        self.data.iter()
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for c in 0..self.cols {
            self.data.swap(a * self.cols + c, b * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for r in 0..self.rows {
            self.data.swap(r * self.cols + a, r * self.cols + b);
        }
    }
}

impl<T: Clone> Matrix<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::Shape("ragged rows".into()));
        }
        Ok(Matrix { rows: n, cols: m, data: rows.into_iter().flatten().collect() })
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    /// Block-diagonal sum `self ⊕ other`.
    pub fn block_sum(&self, other: &Self) -> Self
    where
        T: Zero,
    {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        Matrix::from_fn(rows, cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                T::zero()
            }
        })
    }

    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        Matrix::from_fn(rows.len(), cols.len(), |r, c| self.get(rows[r], cols[c]).clone())
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix::from_fn(rows, cols, |_, _| T::zero())
    }

    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |r, c| if r == c { T::one() } else { T::zero() })
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + PartialEq> Matrix<T> {
    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..self.rows).all(|r| (0..r).all(|c| self.get(r, c) == self.get(c, r)))
    }
}

impl<T> Matrix<T>
where
    T: Clone + Zero,
    for<'a> &'a T: Mul<&'a T, Output = T>,
{
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |r, c| {
            let mut acc = T::zero();
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                acc = acc + a * other.get(k, c);
            }
            acc
        }))
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|x| x * s)
    }

    /// Kronecker product: block `(i, j)` is `self[i][j] * other`.
    pub fn kronecker(&self, other: &Self) -> Self {
        Matrix::from_fn(self.rows * other.rows, self.cols * other.cols, |r, c| {
            self.get(r / other.rows, c / other.cols) * other.get(r % other.rows, c % other.cols)
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows).map(|r| self.row(r).iter().zip(v).fold(T::zero(), |acc, (a, b)| acc + a * b)).collect()
    }
}

impl<T> Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Add<&'a T, Output = T> + Sub<&'a T, Output = T>,
{
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a + b)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.zip_with(other, |a, b| a - b)
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&T, &T) -> T) -> Result<Self> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!("{}x{} vs {}x{}", self.rows, self.cols, other.rows, other.cols)));
        }
        Ok(Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f(a, b)).collect(),
        })
    }
}

impl<T> Neg for &Matrix<T>
where
    T: Clone,
    for<'a> &'a T: Neg<Output = T>,
{
    type Output = Matrix<T>;

    fn neg(self) -> Matrix<T> {
        self.map(|x| -x)
    }
}

impl IntMatrix {
    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect();
        Matrix::from_rows(rows).expect("rectangular literal")
    }

    pub fn to_rat(&self) -> RatMatrix {
        self.map(|x| BigRational::from_integer(x.clone()))
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn det(&self) -> Result<BigInt> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&r| !a.get(r, k).is_zero()) else {
                    return Ok(BigInt::zero());
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        Ok(sign * a.get(n - 1, n - 1))
    }
}

impl RatMatrix {
    /// `Some(M)` when every entry is an integer.
    pub fn to_int(&self) -> Option<IntMatrix> {
        if self.data.iter().all(|x| x.is_integer()) {
            Some(self.map(|x| x.to_integer()))
        } else {
            None
        }
    }

    pub fn inverse(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::Shape("inverse of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut inv = RatMatrix::identity(n);
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Err(Error::Singular);
            };
            a.swap_rows(col, p);
            inv.swap_rows(col, p);
            let pivot = a.get(col, col).recip();
            for c in 0..n {
                let v = a.get(col, c) * &pivot;
                a.set(col, c, v);
                let v = inv.get(col, c) * &pivot;
                inv.set(col, c, v);
            }
            for r in 0..n {
                if r == col || a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col).clone();
                for c in 0..n {
                    let v = a.get(r, c) - &f * a.get(col, c);
                    a.set(r, c, v);
                    let v = inv.get(r, c) - &f * inv.get(col, c);
                    inv.set(r, c, v);
                }
            }
        }
        Ok(inv)
    }

    pub fn det(&self) -> Result<BigRational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of non-square matrix".into()));
        }
        let n = self.rows;
        let mut a = self.clone();
        let mut det = BigRational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a.get(r, col).is_zero()) else {
                return Ok(BigRational::zero());
            };
            if p != col {
                a.swap_rows(col, p);
                det = -det;
            }
            let pivot = a.get(col, col).clone();
            det *= &pivot;
            for r in col + 1..n {
                if a.get(r, col).is_zero() {
                    continue;
                }
                let f = a.get(r, col) / &pivot;
                for c in col..n {
                    let v = a.get(r, c) - &f * a.get(col, c);
                    a.set(r, c, v);
                }
            }
        }
        Ok(det)
    }
}

/// Signature (positive minus negative inertia) of a symmetric rational matrix,
/// computed by congruence diagonalization.
pub fn symmetric_signature(s: &RatMatrix) -> Result<i64> {
    if !s.is_symmetric() {
        return Err(Error::NotSymmetric);
    }
    let n = s.rows();
    let mut a = s.clone();
    let mut sig = 0i64;
    let mut k = 0;
    while k < n {
        // Bring a nonzero diagonal entry to position k, creating one from an
        // off-diagonal entry if necessary.
        if a.get(k, k).is_zero() {
            if let Some(p) = (k + 1..n).find(|&i| !a.get(i, i).is_zero()) {
                a.swap_rows(k, p);
                a.swap_cols(k, p);
            } else if let Some((i, j)) =
                (k..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).find(|&(i, j)| !a.get(i, j).is_zero())
            {
                // e_i + e_j has value 2 a_ij != 0.
                add_congruent(&mut a, i, j, &BigRational::one());
                a.swap_rows(k, i);
                a.swap_cols(k, i);
            } else {
                break;
            }
        }
        let pivot = a.get(k, k).clone();
        sig += if pivot.is_positive() { 1 } else { -1 };
        for i in k + 1..n {
            if a.get(i, k).is_zero() {
                continue;
            }
            let f = -(a.get(i, k) / &pivot);
            add_congruent(&mut a, i, k, &f);
        }
        k += 1;
    }
    Ok(sig)
}

/// row_i += f*row_j and col_i += f*col_j, preserving symmetry.
fn add_congruent(a: &mut RatMatrix, i: usize, j: usize, f: &BigRational) {
    let n = a.rows();
    for c in 0..n {
        let v = a.get(i, c) + f * a.get(j, c);
        a.set(i, c, v);
    }
    for r in 0..n {
        let v = a.get(r, i) + f * a.get(r, j);
        a.set(r, i, v);
    }
}

/// Reduce a rational number to its representative in `[0, 1)`.
pub fn rational_mod_z(q: &BigRational) -> BigRational {
    q - BigRational::from_integer(q.floor().to_integer())
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rm(rows: &[&[i64]]) -> RatMatrix {
        IntMatrix::from_i64_rows(rows).to_rat()
    }

    #[test]
    fn signature_examples() {
        assert_eq!(symmetric_signature(&rm(&[&[1, 3], &[3, 2]])).unwrap(), 0);
        assert_eq!(symmetric_signature(&rm(&[&[3]])).unwrap(), 1);
        assert_eq!(symmetric_signature(&rm(&[&[-1, 0], &[0, -1]])).unwrap(), -2);
        assert_eq!(symmetric_signature(&rm(&[&[0, 1], &[1, 0]])).unwrap(), 0);
        assert_eq!(symmetric_signature(&rm(&[])).unwrap(), 0);
        assert_eq!(symmetric_signature(&rm(&[&[0, 0], &[0, 0]])).unwrap(), 0);
    }

    #[test]
    fn signature_rejects_asymmetric() {
        assert_eq!(symmetric_signature(&rm(&[&[1, 2], &[3, 4]])), Err(Error::NotSymmetric));
    }

    #[test]
    fn mod_z_examples() {
        assert_eq!(rational_mod_z(&rat(7, 3)), rat(1, 3));
        assert_eq!(rational_mod_z(&rat(-1, 3)), rat(2, 3));
        assert_eq!(rational_mod_z(&int(2)), int(0));
    }

    #[test]
    fn bareiss_matches_rational_det() {
        let m = IntMatrix::from_i64_rows(&[&[2, -1, 0, 3], &[1, 4, 2, 0], &[0, 0, 5, 1], &[7, 1, 1, 1]]);
        assert_eq!(BigRational::from_integer(m.det().unwrap()), m.to_rat().det().unwrap());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = rm(&[&[0, 3], &[3, 0]]);
        let inv = m.inverse().unwrap();
        assert_eq!(inv, RatMatrix::from_rows(vec![vec![int(0), rat(1, 3)], vec![rat(1, 3), int(0)]]).unwrap());
        assert!(rm(&[&[1, 2], &[2, 4]]).inverse().is_err());
    }
}

//! Smith normal form over Euclidean domains (Z and Q[t]).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{IntMatrix, Matrix};
use super::poly::RatPoly;

/// The operations Smith normal form needs from a Euclidean domain.
pub trait Euclidean: Clone + PartialEq + Zero + One + fmt::Display {
    /// `self - q * other`
    fn sub_mul(&self, q: &Self, other: &Self) -> Self;
    fn add_mul(&self, q: &Self, other: &Self) -> Self;
    fn times(&self, other: &Self) -> Self;
    /// Quotient and remainder with the remainder strictly smaller than `d`.
    fn euclid_div_rem(&self, d: &Self) -> (Self, Self);
    /// Strict "smaller than" on the Euclidean size.
    fn euclid_smaller(&self, other: &Self) -> bool;
    /// A unit `u` and its inverse such that `u * self` is the normalized associate.
    fn normalizing_unit(&self) -> (Self, Self);
}

impl Euclidean for BigInt {
    fn sub_mul(&self, q: &Self, other: &Self) -> Self {
        self - &(q * other)
    }

    fn add_mul(&self, q: &Self, other: &Self) -> Self {
        self + &(q * other)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn euclid_div_rem(&self, d: &Self) -> (Self, Self) {
        // Round to nearest so that |r| <= |d|/2.
        let (q, r) = self.div_mod_floor(d);
        let twice = &r * BigInt::from(2);
        if twice.abs() > d.abs() {
            (q + 1, r - d)
        } else {
            (q, r)
        }
    }

    fn euclid_smaller(&self, other: &Self) -> bool {
        self.abs() < other.abs()
    }

    fn normalizing_unit(&self) -> (Self, Self) {
        if self.is_negative() {
            (-BigInt::one(), -BigInt::one())
        } else {
            (BigInt::one(), BigInt::one())
        }
    }
}

impl Euclidean for RatPoly {
    fn sub_mul(&self, q: &Self, other: &Self) -> Self {
        self - &(q * other)
    }

    fn add_mul(&self, q: &Self, other: &Self) -> Self {
        self + &(q * other)
    }

    fn times(&self, other: &Self) -> Self {
        self * other
    }

    fn euclid_div_rem(&self, d: &Self) -> (Self, Self) {
        self.div_rem(d)
    }

    fn euclid_smaller(&self, other: &Self) -> bool {
        match (self.degree(), other.degree()) {
            (None, None) => false,
            (None, Some(_)) => true,
            (Some(_), None) => false,
            (Some(a), Some(b)) => a < b,
        }
    }

    fn normalizing_unit(&self) -> (Self, Self) {
        match self.leading() {
            Some(lc) => (RatPoly::constant(lc.recip()), RatPoly::constant(lc.clone())),
            None => (RatPoly::one(), RatPoly::one()),
        }
    }
}

/// `left * M * right = diag(divisors)`, with `left_inv` the inverse of `left`.
#[derive(Clone)]
pub struct Smith<T> {
    pub diag: Vec<T>,
    pub left: Matrix<T>,
    pub left_inv: Matrix<T>,
    pub right: Matrix<T>,
}

pub type SnfResult = Smith<BigInt>;

struct State<T> {
    a: Matrix<T>,
    u: Matrix<T>,
    u_inv: Matrix<T>,
    v: Matrix<T>,
}

impl<T> State<T>
where
    T: Euclidean,
{
    /// row_i -= q * row_j
    fn row_axpy(&mut self, i: usize, j: usize, q: &T) {
        for c in 0..self.a.cols() {
            let v = self.a.get(i, c).sub_mul(q, self.a.get(j, c));
            self.a.set(i, c, v);
        }
        for c in 0..self.u.cols() {
            let v = self.u.get(i, c).sub_mul(q, self.u.get(j, c));
            self.u.set(i, c, v);
        }
        // inverse operation on the right of u_inv: col_j += q * col_i
        for r in 0..self.u_inv.rows() {
            let v = self.u_inv.get(r, j).add_mul(q, self.u_inv.get(r, i));
            self.u_inv.set(r, j, v);
        }
    }

    /// col_i -= q * col_j
    fn col_axpy(&mut self, i: usize, j: usize, q: &T) {
        for r in 0..self.a.rows() {
            let v = self.a.get(r, i).sub_mul(q, self.a.get(r, j));
            self.a.set(r, i, v);
        }
        for r in 0..self.v.rows() {
            let v = self.v.get(r, i).sub_mul(q, self.v.get(r, j));
            self.v.set(r, i, v);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        self.a.swap_rows(i, j);
        self.u.swap_rows(i, j);
        self.u_inv.swap_cols(i, j);
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        self.a.swap_cols(i, j);
        self.v.swap_cols(i, j);
    }

    fn scale_row(&mut self, i: usize, unit: &T, unit_inv: &T) {
        for c in 0..self.a.cols() {
            let v = unit.times(self.a.get(i, c));
            self.a.set(i, c, v);
        }
        for c in 0..self.u.cols() {
            let v = unit.times(self.u.get(i, c));
            self.u.set(i, c, v);
        }
        for r in 0..self.u_inv.rows() {
            let v = self.u_inv.get(r, i).times(unit_inv);
            self.u_inv.set(r, i, v);
        }
    }
}

/// Smith normal form with transformation matrices.
///
/// Pivots are chosen by minimal Euclidean size to limit coefficient growth.
pub fn smith<T>(m: &Matrix<T>) -> Smith<T>
where
    T: Euclidean,
{
    let (rows, cols) = (m.rows(), m.cols());
    let mut st =
        State { a: m.clone(), u: Matrix::identity(rows), u_inv: Matrix::identity(rows), v: Matrix::identity(cols) };
    let n = rows.min(cols);
    let mut diag = Vec::with_capacity(n);
    for t in 0..n {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for r in t..rows {
                for c in t..cols {
                    let x = st.a.get(r, c);
                    if x.is_zero() {
                        continue;
                    }
                    if best.is_none_or(|(br, bc)| x.euclid_smaller(st.a.get(br, bc))) {
                        best = Some((r, c));
                    }
                }
            }
            let Some((pr, pc)) = best else { break };
            st.swap_rows(t, pr);
            st.swap_cols(t, pc);

            let mut clean = true;
            for r in t + 1..rows {
                if st.a.get(r, t).is_zero() {
                    continue;
                }
                let (q, rem) = st.a.get(r, t).euclid_div_rem(st.a.get(t, t));
                st.row_axpy(r, t, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for c in t + 1..cols {
                if st.a.get(t, c).is_zero() {
                    continue;
                }
                let (q, rem) = st.a.get(t, c).euclid_div_rem(st.a.get(t, t));
                st.col_axpy(c, t, &q);
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility of the remaining block by the pivot.
            let bad = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !st.a.get(r, c).euclid_div_rem(st.a.get(t, t)).1.is_zero()));
            match bad {
                Some(r) => {
                    // row_t += row_r
                    let minus_one = T::zero().sub_mul(&T::one(), &T::one());
                    st.row_axpy(t, r, &minus_one);
                }
                None => break,
            }
        }
        let (unit, unit_inv) = st.a.get(t, t).normalizing_unit();
        if !unit.is_one() {
            st.scale_row(t, &unit, &unit_inv);
        }
        diag.push(st.a.get(t, t).clone());
    }
    Smith { diag, left: st.u, left_inv: st.u_inv, right: st.v }
}

/// Integer Smith normal form.
pub fn smith_normal_form(m: &IntMatrix) -> SnfResult {
    smith(m)
}

/// Elementary divisors from the gcds of all `k×k` minors. Exponential; an oracle for small matrices.
pub fn divisors_from_minors(m: &IntMatrix) -> Vec<BigInt> {
    let n = m.rows().min(m.cols());
    let mut prev = BigInt::one();
    let mut out = Vec::with_capacity(n);
    for k in 1..=n {
        let mut g = BigInt::zero();
        for rs in combinations(m.rows(), k) {
            for cs in combinations(m.cols(), k) {
                g = g.gcd(&m.submatrix(&rs, &cs).det().unwrap());
            }
        }
        if g.is_zero() {
            out.extend(std::iter::repeat_n(BigInt::zero(), n - k + 1));
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(0, n, k, &mut Vec::new(), &mut out);
    out
}

/// Convenience for rational matrices of polynomials.
pub fn rat_poly_matrix(rows: Vec<Vec<RatPoly>>) -> Matrix<RatPoly> {
    Matrix::from_rows(rows).expect("rectangular")
}

pub fn diag_matrix<T: Clone + Zero + One>(rows: usize, cols: usize, diag: &[T]) -> Matrix<T> {
    Matrix::from_fn(rows, cols, |r, c| if r == c && r < diag.len() { diag[r].clone() } else { T::zero() })
}

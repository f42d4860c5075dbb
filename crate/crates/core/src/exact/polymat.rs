//! Determinants and adjugates of matrices over Q[t].

use num_traits::{One, Zero};

use super::matrix::Matrix;
use super::poly::RatPoly;

pub type PolyMatrix = Matrix<RatPoly>;

/// Fraction-free (Bareiss) determinant; every division is exact in Q[t].
pub fn poly_det(m: &PolyMatrix) -> RatPoly {
    assert!(m.is_square());
    let n = m.rows();
    if n == 0 {
        return RatPoly::one();
    }
    let mut a = m.clone();
    let mut sign = false;
    let mut prev = RatPoly::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                Some(r) => {
                    a.swap_rows(k, r);
                    sign = !sign;
                }
                None => return RatPoly::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &(a.get(i, j) * a.get(k, k)) - &(a.get(i, k) * a.get(k, j));
                a.set(i, j, v.exact_div(&prev));
            }
        }
        prev = a.get(k, k).clone();
    }
    let d = a.get(n - 1, n - 1).clone();
    if sign {
        -d
    } else {
        d
    }
}

/// `adj(M)` with `M · adj(M) = det(M) · I`.
pub fn adjugate(m: &PolyMatrix) -> PolyMatrix {
    let n = m.rows();
    if n == 1 {
        return Matrix::identity(1);
    }
    Matrix::from_fn(n, n, |r, c| {
        // cofactor (c, r)
        let rows: Vec<usize> = (0..n).filter(|&i| i != c).collect();
        let cols: Vec<usize> = (0..n).filter(|&j| j != r).collect();
        let minor = poly_det(&m.submatrix(&rows, &cols));
        if (r + c) % 2 == 0 {
            minor
        } else {
            -minor
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn adjugate_identity() {
        let p = |c: &[i64]| RatPoly::from_i64(c);
        let m = Matrix::from_rows(vec![
            vec![p(&[1, 1]), p(&[0, 2]), p(&[3])],
            vec![p(&[0]), p(&[-1, 1]), p(&[1])],
            vec![p(&[2]), p(&[0]), p(&[0, 0, 1])],
        ])
        .unwrap();
        let d = poly_det(&m);
        let prod = m.mul(&adjugate(&m)).unwrap();
        let want = Matrix::from_fn(3, 3, |r, c| if r == c { d.clone() } else { RatPoly::zero() });
        assert_eq!(prod, want);
    }
}

//! Levine–Tristram signatures, exactly.
//!
//! Write `S = V + Vᵀ`, `A = V - Vᵀ` and `τ = cot(θ/2)`. At `ω = e^{iθ}` the
//! Hermitian form `(1-ω)V + (1-ω̄)Vᵀ` is a positive multiple of `S - iτA`,
//! whose realification `[[S, τA], [-τA, S]]` has twice its signature. The
//! signature is locally constant in `θ` away from roots of `Δ`, so it is
//! determined by one rational `τ` per component of the circle minus those
//! roots, in the coordinate `x = 2cos θ = 2(τ² - 1)/(τ² + 1)`.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SeifertMatrix;
use crate::exact::poly::symmetric_to_x;
use crate::exact::roots::{isolate_roots_in_interval, RealRoot};
use crate::exact::trig::cmp_with_two_cos_pi;
use crate::exact::{symmetric_signature, IntPoly, Matrix, RatMatrix};

/// The signature function of a Seifert matrix on the upper half circle.
#[derive(Clone, Debug)]
pub struct SignatureFunction {
    /// Roots of `Δ` in `x = 2cos θ`, strictly inside `(-2, 2)`, increasing.
    roots: Vec<RealRoot>,
    /// Value on each component; `values[j]` lies just below `roots[j]`.
    values: Vec<i64>,
    x_poly: IntPoly,
}

impl SignatureFunction {
    pub fn new(v: &SeifertMatrix) -> Self {
        let delta = v.alexander_polynomial();
        let x_poly = symmetric_to_x(&delta).expect("Alexander polynomial is symmetric");
        let two = BigRational::from_integer(2.into());
        let mut roots = isolate_roots_in_interval(&x_poly, &-two.clone(), &two);
        // Isolating intervals may touch each other or ±2; open up the gaps.
        for j in 0..roots.len() {
            while roots[j].lo() <= &-two.clone() || (j > 0 && roots[j].lo() <= roots[j - 1].hi()) {
                roots[j].refine();
            }
            while roots[j].hi() >= &two {
                roots[j].refine();
            }
        }
        let s = v.symmetrized().to_rat();
        let a = v.antisymmetrized().to_rat();
        let mut bounds = vec![-two.clone()];
        for r in &roots {
            bounds.push(r.lo().clone());
            bounds.push(r.hi().clone());
        }
        bounds.push(two);
        let values = bounds
            .chunks(2)
            .map(|w| {
                let tau = tau_between(&w[0], &w[1]);
                realified_signature(&s, &a, &tau) / 2
            })
            .collect();
        SignatureFunction { roots, values, x_poly }
    }

    /// `Δ` written as a polynomial in `x = t + 1/t`.
    pub fn x_polynomial(&self) -> &IntPoly {
        &self.x_poly
    }

    /// Jump points in `x = 2cos θ`, increasing in `x` (decreasing in `θ`).
    pub fn jumps(&self) -> &[RealRoot] {
        &self.roots
    }

    /// Values on the components, ordered by increasing `x`.
    pub fn component_values(&self) -> &[i64] {
        &self.values
    }

    /// `σ(e^{2πik/d})`; at a root of `Δ`, the average of the one-sided limits.
    pub fn at_root_of_unity(&self, k: i64, d: u64) -> i64 {
        assert!(d >= 1);
        let k = k.rem_euclid(d as i64);
        if k == 0 {
            return 0;
        }
        let r = BigRational::new(BigInt::from(2 * k), BigInt::from(d));
        self.at_pi_fraction(&r)
    }

    /// `σ(e^{iπr})` for rational `r`.
    pub fn at_pi_fraction(&self, r: &BigRational) -> i64 {
        let two = BigRational::from_integer(2.into());
        let r = r - &two * BigRational::from_integer((r / &two).floor().to_integer());
        if r.is_zero() {
            return 0;
        }
        let mut below = 0;
        for root in &self.roots {
            match cmp_with_two_cos_pi(root, &r) {
                Ordering::Less => below += 1,
                Ordering::Equal => return (self.values[below] + self.values[below + 1]) / 2,
                Ordering::Greater => break,
            }
        }
        self.values[below]
    }
}

/// Signature of `[[S, τA], [-τA, S]]`.
fn realified_signature(s: &RatMatrix, a: &RatMatrix, tau: &BigRational) -> i64 {
    let n = s.rows();
    let m = Matrix::from_fn(2 * n, 2 * n, |r, c| {
        let (br, bc) = (r / n.max(1), c / n.max(1));
        let (i, j) = (r % n.max(1), c % n.max(1));
        match (br, bc) {
            (0, 0) | (1, 1) => s.get(i, j).clone(),
            (0, 1) => tau * a.get(i, j),
            _ => -(tau * a.get(i, j)),
        }
    });
    symmetric_signature(&m).expect("realification is symmetric")
}

/// `x(τ) = 2(τ² - 1)/(τ² + 1)`
fn x_of_tau(tau: &BigRational) -> BigRational {
    let t2 = tau * tau;
    let one = BigRational::one();
    BigRational::from_integer(2.into()) * (&t2 - &one) / (&t2 + &one)
}

/// A rational `τ ≥ 0` with `lo < x(τ) < hi`; `lo ≥ -2`, `hi ≤ 2`.
fn tau_between(lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(2.into());
    let mut a = BigRational::zero();
    if &x_of_tau(&a) > lo && &x_of_tau(&a) < hi {
        return a;
    }
    let mut b = BigRational::one();
    while &x_of_tau(&b) <= lo {
        b = &b * &two;
    }
    // x is increasing in τ; bisect until x(mid) lands inside.
    loop {
        let x = x_of_tau(&b);
        if &x > lo && &x < hi {
            return b;
        }
        let mid = (&a + &b) / &two;
        let xm = x_of_tau(&mid);
        if &xm <= lo {
            a = mid;
        } else if &xm >= hi {
            b = mid;
        } else {
            return mid;
        }
    }
}

/// Levine–Tristram signature at `ω = e^{2πik/d}`.
pub fn levine_tristram(v: &SeifertMatrix, k: i64, d: u64) -> i64 {
    SignatureFunction::new(v).at_root_of_unity(k, d)
}

/// `(1/d) Σ_k σ(e^{2πik/d})`, exactly.
pub fn rho_average(v: &SeifertMatrix, d: u64) -> BigRational {
    let f = SignatureFunction::new(v);
    let total: i64 = (0..d as i64).map(|k| f.at_root_of_unity(k, d)).sum();
    BigRational::new(total.into(), BigInt::from(d))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    fn k1() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[&[0, 2], &[1, 0]]).unwrap()
    }

    #[test]
    fn trefoil_values() {
        let t = SeifertMatrix::right_trefoil();
        assert_eq!(levine_tristram(&t, 1, 2), -2);
        assert_eq!(levine_tristram(&t, 0, 5), 0);
        assert_eq!(levine_tristram(&t.mirror(), 1, 2), 2);
        // jump at e^{iπ/3}, where the value is the average -1
        assert_eq!(levine_tristram(&t, 1, 6), -1);
        assert_eq!(levine_tristram(&t, 1, 7), 0);
        assert_eq!(levine_tristram(&t, 1, 5), -2);
        assert_eq!(rho_average(&t, 2), int(-1));
        assert_eq!(rho_average(&t, 1), int(0));
        // d = 3: 0, -2, -2
        assert_eq!(rho_average(&t, 3), rat(-4, 3));
    }

    #[test]
    fn k1_signature_vanishes() {
        let f = SignatureFunction::new(&k1());
        assert!(f.jumps().is_empty());
        for d in 1..30 {
            for k in 0..d as i64 {
                assert_eq!(f.at_root_of_unity(k, d), 0);
            }
            assert_eq!(rho_average(&k1(), d), int(0));
        }
    }

    #[test]
    fn value_near_one_is_zero() {
        let t = SeifertMatrix::right_trefoil().connected_sum(&SeifertMatrix::right_trefoil());
        let f = SignatureFunction::new(&t);
        assert_eq!(*f.component_values().last().unwrap(), 0);
        assert_eq!(f.at_root_of_unity(1, 2), -4);
    }

    #[test]
    fn tau_search() {
        let lo = rat(1999, 1000);
        let tau = tau_between(&lo, &int(2));
        assert!(x_of_tau(&tau) > lo);
        let tau = tau_between(&int(-2), &int(0));
        assert!(x_of_tau(&tau) > int(-2) && x_of_tau(&tau) < int(0));
    }
}

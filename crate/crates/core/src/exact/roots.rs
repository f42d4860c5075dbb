//! Real root isolation by Sturm sequences, with exact comparisons.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, RatPoly};

/// A Sturm chain, normalized by positive scalars so signs are unchanged.
#[derive(Clone, Debug)]
pub struct Sturm {
    seq: Vec<RatPoly>,
}

impl Sturm {
    pub fn new(p: &RatPoly) -> Self {
        let mut seq = Vec::new();
        if p.is_zero() {
            return Sturm { seq };
        }
        let mut a = positive_normalize(p);
        let mut b = positive_normalize(&p.derivative());
        seq.push(a.clone());
        while !b.is_zero() {
            seq.push(b.clone());
            let r = -&a.rem(&b);
            a = b;
            b = positive_normalize(&r);
        }
        Sturm { seq }
    }

    fn variations(&self, x: &BigRational) -> usize {
        let mut count = 0;
        let mut last = 0i8;
        for p in &self.seq {
            let s = sign(&p.eval(x));
            if s == 0 {
                continue;
            }
            if last != 0 && s != last {
                count += 1;
            }
            last = s;
        }
        count
    }

    /// Number of distinct roots in the open interval `(lo, hi)`.
    pub fn count(&self, lo: &BigRational, hi: &BigRational) -> usize {
        if self.seq.is_empty() || lo >= hi {
            return 0;
        }
        // V(lo) - V(hi) counts roots in (lo, hi].
        let half_open = self.variations(lo) - self.variations(hi);
        if self.seq[0].eval(hi).is_zero() {
            half_open - 1
        } else {
            half_open
        }
    }
}

fn positive_normalize(p: &RatPoly) -> RatPoly {
    match p.leading() {
        Some(lc) => p.scale(&lc.abs().recip()),
        None => p.clone(),
    }
}

pub(crate) fn sign(q: &BigRational) -> i8 {
    if q.is_positive() {
        1
    } else if q.is_negative() {
        -1
    } else {
        0
    }
}

/// A real algebraic number: the unique root of a squarefree polynomial in an
/// open interval whose endpoints are not roots.
#[derive(Clone, PartialEq, Eq)]
pub struct RealRoot {
    poly: RatPoly,
    lo: BigRational,
    hi: BigRational,
}

impl RealRoot {
    pub fn poly(&self) -> &RatPoly {
        &self.poly
    }

    pub fn lo(&self) -> &BigRational {
        &self.lo
    }

    pub fn hi(&self) -> &BigRational {
        &self.hi
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    /// The defining polynomial as a primitive integer polynomial.
    pub fn int_poly(&self) -> IntPoly {
        self.poly.primitive_int()
    }

    /// Shrink the interval by a factor of two to three.
    pub fn refine(&mut self) {
        let c = split_point(&self.poly, &self.lo, &self.hi);
        if sign(&self.poly.eval(&self.lo)) != sign(&self.poly.eval(&c)) {
            self.hi = c;
        } else {
            self.lo = c;
        }
    }

    pub fn refine_below(&mut self, width: &BigRational) {
        while &self.width() >= width {
            self.refine();
        }
    }

    pub fn cmp_rational(&self, c: &BigRational) -> Ordering {
        if c <= &self.lo {
            return Ordering::Greater;
        }
        if c >= &self.hi {
            return Ordering::Less;
        }
        let pc = sign(&self.poly.eval(c));
        if pc == 0 {
            Ordering::Equal
        } else if sign(&self.poly.eval(&self.lo)) != pc {
            // root in (lo, c)
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }

    /// Exact comparison of two algebraic reals.
    pub fn cmp_root(&self, other: &RealRoot) -> Ordering {
        let mut a = self.clone();
        let mut b = other.clone();
        let g = a.poly.gcd(&b.poly);
        loop {
            if a.hi <= b.lo {
                return Ordering::Less;
            }
            if b.hi <= a.lo {
                return Ordering::Greater;
            }
            if g.degree().unwrap_or(0) > 0 {
                let lo = (&a.lo).max(&b.lo).clone();
                let hi = (&a.hi).min(&b.hi).clone();
                // A common root in the overlap is the unique root of both.
                if Sturm::new(&g).count(&lo, &hi) > 0 {
                    return Ordering::Equal;
                }
            }
            a.refine();
            b.refine();
        }
    }

    /// Midpoint, for display only.
    pub fn approx(&self) -> f64 {
        let mid = (&self.lo + &self.hi) / BigRational::from_integer(BigInt::from(2));
        rational_to_f64(&mid)
    }
}

impl fmt::Debug for RealRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "root of {} in ({}, {})", self.poly, self.lo, self.hi)
    }
}

pub(crate) fn rational_to_f64(q: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    q.to_f64().unwrap_or(f64::NAN)
}

/// A point strictly inside `(lo, hi)` that is not a root of `p`.
fn split_point(p: &RatPoly, lo: &BigRational, hi: &BigRational) -> BigRational {
    let two = BigRational::from_integer(BigInt::from(2));
    let three = BigRational::from_integer(BigInt::from(3));
    let w = hi - lo;
    let candidates = [lo + &w / &two, lo + &w / &three, hi - &w / &three];
    for c in &candidates {
        if !p.eval(c).is_zero() {
            return c.clone();
        }
    }
    // At most deg(p) roots, so some dyadic point near the middle works.
    let mut k = 2u32;
    loop {
        let c = lo + &w * BigRational::new(BigInt::from(2u64.pow(k) + 1), BigInt::from(2u64.pow(k + 1)));
        if !p.eval(&c).is_zero() {
            return c;
        }
        k += 1;
    }
}

/// Isolate the distinct real roots of `p` in the open interval `(lo, hi)`,
/// in increasing order.
pub fn isolate_roots_in_interval(p: &IntPoly, lo: &BigRational, hi: &BigRational) -> Vec<RealRoot> {
    let sf = p.to_rat().squarefree();
    if sf.degree().unwrap_or(0) == 0 || lo >= hi {
        return Vec::new();
    }
    let sturm = Sturm::new(&sf);
    let mut out = Vec::new();
    let mut stack = vec![(lo.clone(), hi.clone())];
    while let Some((a, b)) = stack.pop() {
        let n = sturm.count(&a, &b);
        if n == 0 {
            continue;
        }
        if n == 1 && !sf.eval(&a).is_zero() && !sf.eval(&b).is_zero() {
            out.push(RealRoot { poly: sf.clone(), lo: a, hi: b });
            continue;
        }
        let c = split_point(&sf, &a, &b);
        stack.push((c.clone(), b));
        stack.push((a, c));
    }
    out.sort_by(|x, y| x.lo.cmp(&y.lo));
    out
}

/// All real roots, using the Cauchy bound.
pub fn isolate_real_roots(p: &IntPoly) -> Vec<RealRoot> {
    let Some(lc) = p.coeffs().last() else {
        return Vec::new();
    };
    let max = p.coeffs().iter().map(|c| c.abs()).max().unwrap_or_default();
    let bound = BigRational::new(max, lc.abs()) + BigRational::one();
    isolate_roots_in_interval(p, &-bound.clone(), &bound)
}

/// The angle `θ ∈ [0, π]` with `2cos θ` a given real algebraic number, or
/// `2π − θ` when `reflex` is set.
#[derive(Clone, Debug)]
pub struct AlgebraicAngle {
    pub x: RealRoot,
    pub reflex: bool,
}

impl AlgebraicAngle {
    /// `x` must lie in `[-2, 2]`; callers isolate inside `(-2, 2)`.
    pub fn from_x(x: RealRoot) -> Self {
        AlgebraicAngle { x, reflex: false }
    }

    /// Compare the angle with `π r` for `r ∈ [0, 1]`, exactly.
    pub fn cmp_pi_fraction(&self, r: &BigRational) -> Ordering {
        assert!(!self.reflex, "reflex angles are compared through their reflection");
        // θ < πr  <=>  2cos θ > 2cos πr
        super::trig::cmp_with_two_cos_pi(&self.x, r).reverse()
    }

    pub fn approx_radians(&self) -> f64 {
        let t = (self.x.approx() / 2.0).clamp(-1.0, 1.0).acos();
        if self.reflex {
            2.0 * std::f64::consts::PI - t
        } else {
            t
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn quadratic_in_window() {
        let p = IntPoly::from_i64(&[-1, -2, 1]);
        let roots = isolate_roots_in_interval(&p, &int(-2), &int(2));
        assert_eq!(roots.len(), 1);
        // 1 - sqrt 2 ≈ -0.41421356
        assert_eq!(roots[0].cmp_rational(&rat(-41422, 100000)), Ordering::Greater);
        assert_eq!(roots[0].cmp_rational(&rat(-41421, 100000)), Ordering::Less);
    }

    #[test]
    fn no_real_roots() {
        assert!(isolate_roots_in_interval(&IntPoly::from_i64(&[1, 0, 1]), &int(-2), &int(2)).is_empty());
    }

    #[test]
    fn root_at_midpoint() {
        let roots = isolate_roots_in_interval(&IntPoly::from_i64(&[0, 1]), &int(-1), &int(1));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].cmp_rational(&int(0)), Ordering::Equal);
        assert!(!roots[0].poly().eval(roots[0].lo()).is_zero());
    }

    #[test]
    fn root_on_boundary_is_excluded() {
        // (x - 1)(x + 1) on (-1, 2): only the endpoint root -1, which is excluded
        let p = IntPoly::from_i64(&[-1, 0, 1]);
        let roots = isolate_roots_in_interval(&p, &int(-1), &int(2));
        assert_eq!(roots.len(), 1);
        assert_eq!(roots[0].cmp_rational(&int(1)), Ordering::Equal);
    }

    #[test]
    fn compare_roots() {
        let s2 = &isolate_real_roots(&IntPoly::from_i64(&[-2, 0, 1]))[1];
        // (x^2 - 2)^2 shares sqrt 2
        let s2b = &isolate_real_roots(&IntPoly::from_i64(&[4, 0, -4, 0, 1]))[1];
        let s3 = &isolate_real_roots(&IntPoly::from_i64(&[-3, 0, 1]))[1];
        assert_eq!(s2.cmp_root(s3), Ordering::Less);
        assert_eq!(s3.cmp_root(s2), Ordering::Greater);
        assert_eq!(s2.cmp_root(s2b), Ordering::Equal);
        assert_eq!(s2.cmp_root(s2), Ordering::Equal);
    }

    #[test]
    fn repeated_roots_counted_once() {
        // (x - 1)^2 (x + 1)
        let p = IntPoly::from_i64(&[1, -1, -1, 1]);
        assert_eq!(isolate_real_roots(&p).len(), 2);
    }
}

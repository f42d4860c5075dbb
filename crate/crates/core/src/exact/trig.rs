//! Certified enclosures of π and of `2cos(πr)` for rational `r`, and exact
//! comparison of algebraic reals against such values.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic, totient, x_to_symmetric, RatPoly};
use super::roots::RealRoot;

fn pow2(bits: u32) -> BigInt {
    BigInt::one() << bits
}

fn round_down(q: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((q * BigRational::from_integer(s.clone())).floor().to_integer(), s)
}

fn round_up(q: &BigRational, bits: u32) -> BigRational {
    let s = pow2(bits);
    BigRational::new((q * BigRational::from_integer(s.clone())).ceil().to_integer(), s)
}

/// Enclosure of `atan(1/n)` from the alternating series.
fn atan_inv(n: u64, bits: u32) -> (BigRational, BigRational) {
    let n = BigInt::from(n);
    let n2 = &n * &n;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    let mut sum = BigRational::zero();
    let mut pw = n.clone();
    let mut j = 0u64;
    loop {
        let term = BigRational::new(BigInt::one(), &pw * BigInt::from(2 * j + 1));
        if term < eps {
            // The tail is bracketed by the next partial sum.
            let next = if j.is_multiple_of(2) { &sum + &term } else { &sum - &term };
            return if sum <= next { (sum, next) } else { (next, sum) };
        }
        if j.is_multiple_of(2) {
            sum += term;
        } else {
            sum -= term;
        }
        pw *= &n2;
        j += 1;
    }
}

/// Dyadic enclosure `lo < π < hi` of width about `2^-bits`.
pub fn pi_enclosure(bits: u32) -> (BigRational, BigRational) {
    let (a_lo, a_hi) = atan_inv(5, bits + 6);
    let (b_lo, b_hi) = atan_inv(239, bits + 6);
    let k16 = BigRational::from_integer(16.into());
    let k4 = BigRational::from_integer(4.into());
    let lo = &k16 * a_lo - &k4 * b_hi;
    let hi = &k16 * a_hi - &k4 * b_lo;
    (round_down(&lo, bits + 2), round_up(&hi, bits + 2))
}

/// Enclosure of `cos y` for exact rational `|y| ≤ 2`.
fn cos_enclosure(y: &BigRational, bits: u32) -> (BigRational, BigRational) {
    let y2 = y * y;
    let eps = BigRational::new(BigInt::one(), pow2(bits + 4));
    let mut sum = BigRational::zero();
    let mut term = BigRational::one();
    let mut j = 0u64;
    loop {
        // term = (-1)^j y^(2j) / (2j)!
        if term.abs() < eps {
            // Lagrange remainder is bounded by |term| at this index.
            let r = term.abs();
            return (round_down(&(&sum - &r), bits + 2), round_up(&(&sum + &r), bits + 2));
        }
        sum += &term;
        let k = BigInt::from((2 * j + 1) * (2 * j + 2));
        term = -(term * &y2) / BigRational::from_integer(k);
        j += 1;
    }
}

/// Order of `e^{iπr}` as a root of unity.
fn root_order(r: &BigRational) -> u64 {
    let u = r.numer().abs();
    let v = r.denom().clone();
    let two_v = &v * BigInt::from(2);
    let g = u.gcd(&two_v);
    let n = two_v / g;
    u64::try_from(n).expect("root of unity order fits in u64")
}

/// The rational value of `2cos(πr)` when there is one.
fn rational_two_cos(r: &BigRational) -> Option<BigRational> {
    let v = match root_order(r) {
        1 => 2,
        2 => -2,
        3 => -1,
        4 => 0,
        6 => 1,
        _ => return None,
    };
    Some(BigRational::from_integer(v.into()))
}

/// Dyadic enclosure of `2cos(πr)`, of width about `2^-bits`.
pub fn two_cos_pi_enclosure(r: &BigRational, bits: u32) -> (BigRational, BigRational) {
    if let Some(v) = rational_two_cos(r) {
        return (v.clone(), v);
    }
    let two = BigRational::from_integer(2.into());
    // Reduce to s ∈ [0, 1/2] with cos(πr) = ±cos(πs).
    let mut s = r - &two * BigRational::from_integer((r / &two).floor().to_integer());
    if s > BigRational::one() {
        s = &two - s;
    }
    let half = BigRational::new(1.into(), 2.into());
    let negate = s > half;
    if negate {
        s = BigRational::one() - s;
    }
    let (p_lo, p_hi) = pi_enclosure(bits + 4);
    let y_lo = &s * p_lo;
    let y_hi = &s * p_hi;
    // cos is decreasing on [0, π/2]
    let (lo, _) = cos_enclosure(&round_up(&y_hi, bits + 6), bits + 2);
    let (_, hi) = cos_enclosure(&round_down(&y_lo, bits + 6), bits + 2);
    let (lo, hi) = (&two * lo, &two * hi);
    if negate {
        (-hi, -lo)
    } else {
        (lo, hi)
    }
}

/// Whether `2cos(πr)` is a root of `q` (not necessarily the isolated one).
pub fn two_cos_pi_is_root_of(q: &RatPoly, r: &BigRational) -> bool {
    let n = root_order(r);
    let d = q.degree().unwrap_or(0);
    if q.is_zero() {
        return true;
    }
    if totient(n) as usize > 2 * d {
        return false;
    }
    // 2cos(πr) = ζ + 1/ζ with ζ primitive of order n; test Φ_n | t^d q(t + 1/t).
    let l = x_to_symmetric(&q.primitive_int());
    let lifted = RatPoly::new(l.coeffs().iter().map(|c| BigRational::from_integer(c.clone())).collect());
    cyclotomic(n).divides(&lifted)
}

/// Exact comparison of an algebraic real with `2cos(πr)`.
pub fn cmp_with_two_cos_pi(x: &RealRoot, r: &BigRational) -> Ordering {
    if let Some(v) = rational_two_cos(r) {
        return x.cmp_rational(&v);
    }
    let is_root = two_cos_pi_is_root_of(x.poly(), r);
    let mut x = x.clone();
    let mut bits = 48;
    loop {
        let (c_lo, c_hi) = two_cos_pi_enclosure(r, bits);
        if &c_hi <= x.lo() {
            return Ordering::Greater;
        }
        if &c_lo >= x.hi() {
            return Ordering::Less;
        }
        if is_root && &c_lo > x.lo() && &c_hi < x.hi() {
            return Ordering::Equal;
        }
        x.refine_below(&((&c_hi - &c_lo) / BigRational::from_integer(4.into())));
        bits += 48;
    }
}

/// Whether `2cos(πr)` lies in `(lo, hi)` for rationals `lo < hi`, certified.
pub fn two_cos_pi_in_open(r: &BigRational, lo: &BigRational, hi: &BigRational) -> bool {
    if let Some(v) = rational_two_cos(r) {
        return lo < &v && &v < hi;
    }
    let mut bits = 48;
    loop {
        let (c_lo, c_hi) = two_cos_pi_enclosure(r, bits);
        if &c_hi <= lo || &c_lo >= hi {
            return false;
        }
        if &c_lo > lo && &c_hi < hi {
            return true;
        }
        // An irrational value never equals a rational endpoint.
        bits *= 2;
    }
}

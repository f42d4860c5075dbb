//! Univariate polynomials over Z and Q, and integer Laurent polynomials.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Polynomial with rational coefficients, stored lowest degree first.
/// The zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * t^k`.
    pub fn monomial(c: BigRational, k: usize) -> Self {
        let mut v = vec![BigRational::zero(); k];
        v.push(c);
        Self::new(v)
    }

    pub fn x() -> Self {
        Self::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.coeffs.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigRational> {
        self.coeffs.last()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, s: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|c| c * s).collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            Some(lc) => self.scale(&lc.recip()),
            None => self.clone(),
        }
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigRational::from_integer(k.into())).collect(),
        )
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut v = vec![BigRational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        Self::new(v)
    }

    /// Largest `k` with `t^k` dividing `self` (0 for the zero polynomial).
    pub fn t_adic_valuation(&self) -> usize {
        self.coeffs.iter().take_while(|c| c.is_zero()).count()
    }

    /// Drop the first `k` coefficients, i.e. divide by `t^k` assuming it divides.
    pub fn unshift(&self, k: usize) -> Self {
        Self::new(self.coeffs.iter().skip(k).cloned().collect())
    }

    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("division by zero polynomial");
        let lc_inv = d.leading().unwrap().recip();
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigRational::zero(); self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let c = rem.last().unwrap() * &lc_inv;
            for (i, dc) in d.coeffs.iter().enumerate() {
                rem[k + i] -= &c * dc;
            }
            quot[k] = c;
            rem.pop();
            while rem.last().is_some_and(Zero::is_zero) {
                rem.pop();
            }
        }
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.div_rem(d).1
    }

    /// Exact quotient; panics if `d` does not divide `self`.
    pub fn exact_div(&self, d: &Self) -> Self {
        let (q, r) = self.div_rem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn divides(&self, other: &Self) -> bool {
        other.rem(self).is_zero()
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: `(g, s, t)` with `s*self + t*other = g`, `g` monic.
    pub fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (Self::one(), Self::zero());
        let (mut t0, mut t1) = (Self::zero(), Self::one());
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = &s0 - &(&q * &s1);
            s0 = std::mem::replace(&mut s1, s);
            let t = &t0 - &(&q * &t1);
            t0 = std::mem::replace(&mut t1, t);
        }
        match r0.leading().cloned() {
            Some(lc) => {
                let inv = lc.recip();
                (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
            }
            None => (r0, s0, t0),
        }
    }

    /// Squarefree part `p / gcd(p, p')`, made monic.
    pub fn squarefree(&self) -> Self {
        if self.degree().unwrap_or(0) == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.exact_div(&g).monic()
    }

    /// The reciprocal `t^deg * p(1/t)`.
    pub fn reversed(&self) -> Self {
        let mut v = self.coeffs.clone();
        v.reverse();
        Self::new(v)
    }

    /// Scale to a primitive integer polynomial with positive leading coefficient.
    pub fn primitive_int(&self) -> IntPoly {
        let den_lcm = self.coeffs.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<BigInt> =
            self.coeffs.iter().map(|c| (c * BigRational::from_integer(den_lcm.clone())).to_integer()).collect();
        IntPoly::new(ints).primitive()
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }
}

impl Zero for RatPoly {
    fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for RatPoly {
    fn one() -> Self {
        Self::from_i64(&[1])
    }
}

impl<'a> Add<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn add(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) + o.coeff(k)).collect())
    }
}

impl<'a> Sub<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn sub(self, o: &RatPoly) -> RatPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RatPoly::new((0..n).map(|k| self.coeff(k) - o.coeff(k)).collect())
    }
}

impl<'a> Mul<&'a RatPoly> for &'a RatPoly {
    type Output = RatPoly;
    fn mul(self, o: &RatPoly) -> RatPoly {
        if self.is_zero() || o.is_zero() {
            return RatPoly::zero();
        }
        let mut v = vec![BigRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        RatPoly::new(v)
    }
}

impl Neg for &RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }
}

impl Add for RatPoly {
    type Output = RatPoly;
    fn add(self, o: RatPoly) -> RatPoly {
        &self + &o
    }
}

impl Sub for RatPoly {
    type Output = RatPoly;
    fn sub(self, o: RatPoly) -> RatPoly {
        &self - &o
    }
}

impl Mul for RatPoly {
    type Output = RatPoly;
    fn mul(self, o: RatPoly) -> RatPoly {
        &self * &o
    }
}

impl Neg for RatPoly {
    type Output = RatPoly;
    fn neg(self) -> RatPoly {
        -&self
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, c.clone())), "t")
    }
}

impl fmt::Debug for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

fn write_terms(
    f: &mut fmt::Formatter<'_>,
    terms: impl DoubleEndedIterator<Item = (i64, BigRational)>,
    var: &str,
) -> fmt::Result {
    let mut first = true;
    for (k, c) in terms.rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { "-" } else { "+" })?;
        }
        first = false;
        let show_coeff = !a.is_one() || k == 0;
        if show_coeff {
            write!(f, "{a}")?;
        }
        match k {
            0 => {}
            1 => write!(f, "{var}")?,
            _ => write!(f, "{var}^{k}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// Polynomial with integer coefficients, lowest degree first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(self.coeffs.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn content(&self) -> BigInt {
        self.coeffs.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divide out the content and make the leading coefficient positive.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut g = self.content();
        if self.coeffs.last().unwrap().is_negative() {
            g = -g;
        }
        IntPoly::new(self.coeffs.iter().map(|c| c / &g).collect())
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(
            f,
            self.coeffs.iter().enumerate().map(|(k, c)| (k as i64, BigRational::from_integer(c.clone()))),
            "x",
        )
    }
}

impl fmt::Debug for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Integer Laurent polynomial `Σ c_k t^(low + k)`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    low: i64,
    coeffs: Vec<BigInt>,
}

impl LaurentPoly {
    pub fn new(low: i64, coeffs: Vec<BigInt>) -> Self {
        let mut coeffs = coeffs;
        let mut low = low;
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        let lead = coeffs.iter().take_while(|c| c.is_zero()).count();
        coeffs.drain(..lead);
        low += lead as i64;
        if coeffs.is_empty() {
            low = 0;
        }
        LaurentPoly { low, coeffs }
    }

    pub fn from_i64(low: i64, coeffs: &[i64]) -> Self {
        Self::new(low, coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(0, &[1])
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn low(&self) -> i64 {
        self.low
    }

    pub fn high(&self) -> i64 {
        self.low + self.coeffs.len() as i64 - 1
    }

    pub fn coeff(&self, k: i64) -> BigInt {
        let i = k - self.low;
        if i < 0 {
            return BigInt::zero();
        }
        self.coeffs.get(i as usize).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// The ordinary polynomial `t^(-low) * self`.
    pub fn to_poly(&self) -> IntPoly {
        IntPoly::new(self.coeffs.clone())
    }

    pub fn from_poly(p: &IntPoly, low: i64) -> Self {
        Self::new(low, p.coeffs().to_vec())
    }

    pub fn eval(&self, t: &BigRational) -> BigRational {
        let p = self.to_poly().eval(t);
        let tp = if self.low >= 0 {
            num_traits::pow(t.clone(), self.low as usize)
        } else {
            num_traits::pow(t.recip(), (-self.low) as usize)
        };
        p * tp
    }

    pub fn at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Symmetric under `t -> 1/t`.
    pub fn is_symmetric(&self) -> bool {
        self.is_zero()
            || (self.low == -self.high() && (self.low..=self.high()).all(|k| self.coeff(k) == self.coeff(-k)))
    }

    /// Equal up to multiplication by `±t^k`.
    pub fn equal_up_to_unit(&self, other: &Self) -> bool {
        if self.coeffs.len() != other.coeffs.len() {
            return false;
        }
        self.coeffs == other.coeffs || self.coeffs.iter().zip(&other.coeffs).all(|(a, b)| a == &-b)
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Self::new(0, vec![]);
        }
        let mut v = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                v[i + j] += a * b;
            }
        }
        Self::new(self.low + o.low, v)
    }

    pub fn neg(&self) -> Self {
        Self::new(self.low, self.coeffs.iter().map(|c| -c).collect())
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let low = self.low;
        write_terms(
            f,
            self.coeffs.iter().enumerate().map(move |(k, c)| (low + k as i64, BigRational::from_integer(c.clone()))),
            "t",
        )
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Chebyshev-type polynomials `D_j(x)` with `D_j(t + 1/t) = t^j + t^(-j)` for `j ≥ 1`.
fn trace_polys(n: usize) -> Vec<RatPoly> {
    let mut d = vec![RatPoly::from_i64(&[2]), RatPoly::x()];
    while d.len() <= n {
        let k = d.len();
        let next = &(&RatPoly::x() * &d[k - 1]) - &d[k - 2];
        d.push(next);
    }
    d
}

/// Rewrite a symmetric Laurent polynomial as a polynomial in `x = t + 1/t`.
pub fn symmetric_to_x(p: &LaurentPoly) -> Option<IntPoly> {
    if !p.is_symmetric() {
        return None;
    }
    if p.is_zero() {
        return Some(IntPoly::new(vec![]));
    }
    let g = p.high() as usize;
    let d = trace_polys(g);
    let mut acc = RatPoly::constant(BigRational::from_integer(p.coeff(0)));
    for (j, dj) in d.iter().enumerate().take(g + 1).skip(1) {
        acc = &acc + &dj.scale(&BigRational::from_integer(p.coeff(j as i64)));
    }
    Some(IntPoly::new(acc.coeffs().iter().map(|c| c.to_integer()).collect()))
}

/// Expand `q(t + 1/t)` as a Laurent polynomial in `t`.
pub fn x_to_symmetric(q: &IntPoly) -> LaurentPoly {
    let n = q.degree().unwrap_or(0);
    // (t + 1/t)^k = t^-k (t^2 + 1)^k
    let t2p1 = RatPoly::from_i64(&[1, 0, 1]);
    let mut acc = RatPoly::zero();
    for (k, c) in q.coeffs().iter().enumerate() {
        let term = t2p1.pow(k as u32).shift(n - k).scale(&BigRational::from_integer(c.clone()));
        acc = &acc + &term;
    }
    LaurentPoly::new(-(n as i64), acc.coeffs().iter().map(|c| c.to_integer()).collect())
}

/// The `n`-th cyclotomic polynomial, as the Möbius product of `t^d - 1` over `d | n`.
pub fn cyclotomic(n: u64) -> RatPoly {
    assert!(n >= 1);
    let mut num = RatPoly::one();
    let mut den = RatPoly::one();
    for d in (1..=n).filter(|d| n.is_multiple_of(*d)) {
        let f = &RatPoly::monomial(BigRational::one(), d as usize) - &RatPoly::one();
        match mobius(n / d) {
            1 => num = &num * &f,
            -1 => den = &den * &f,
            _ => {}
        }
    }
    num.exact_div(&den)
}

fn mobius(mut n: u64) -> i8 {
    let mut sign = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            sign = -sign;
        }
        p += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Euler's totient.
pub fn totient(mut n: u64) -> u64 {
    let mut out = n;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            while n.is_multiple_of(p) {
                n /= p;
            }
            out -= out / p;
        }
        p += 1;
    }
    if n > 1 {
        out -= out / n;
    }
    out
}

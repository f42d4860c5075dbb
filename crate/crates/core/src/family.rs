//! The quadratic Alexander polynomial family, its jump angle, parameter
//! selection on prime-indexed angle windows, multiplicities and the
//! obstruction budget.

use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::exact::poly::symmetric_to_x;
use crate::exact::roots::isolate_roots_in_interval;
use crate::exact::trig::two_cos_pi_enclosure;
use crate::exact::{AlgebraicAngle, IntMatrix, IntPoly, LaurentPoly};
use crate::seifert::{SeifertMatrix, SignatureFunction};

/// Crossing-count constant in the budget.
pub const BUDGET_CONSTANT: u64 = 69_713_280;
/// Budget units per stevedore satellite step.
pub const STEVEDORE_TERM: u64 = 6;
/// Budget units for the final pattern step.
pub const PATTERN_TERM: u64 = 96;
/// Default number of `(a, b)` candidates tried per window.
pub const DEFAULT_SEARCH_CAP: u64 = 1_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct FamilyPolynomial {
    pub a: i64,
    pub b: i64,
    pub delta: LaurentPoly,
}

/// `b t² − (2b+2a) t + (4a+2b−1) − (2b+2a) t⁻¹ + b t⁻²`
pub fn family_polynomial(a: i64, b: i64) -> Result<FamilyPolynomial> {
    if b <= 0 {
        return Err(Error::InvalidArgument(format!("b must be positive, got {b}")));
    }
    let (ab, bb) = (BigInt::from(a), BigInt::from(b));
    let lin = -(&bb * BigInt::from(2) + &ab * BigInt::from(2));
    let mid = &ab * 4 + &bb * 2 - 1;
    let delta = LaurentPoly::new(-2, vec![bb.clone(), lin.clone(), mid, lin, bb]);
    debug_assert_eq!(delta.at_one(), -BigInt::one());
    Ok(FamilyPolynomial { a, b, delta })
}

impl FamilyPolynomial {
    /// `q(x) = b x² − (2b+2a) x + (4a−1)` with `Δ(t) = q(t + 1/t)`.
    pub fn x_polynomial(&self) -> IntPoly {
        let (a, b) = (BigInt::from(self.a), BigInt::from(self.b));
        let lin = -(&b * BigInt::from(2) + &a * BigInt::from(2));
        IntPoly::new(vec![&a * 4 - 1, lin, b])
    }

    /// Whether the substitution `Δ(t) = q(t + 1/t)` holds as an identity.
    pub fn substitution_holds(&self) -> bool {
        symmetric_to_x(&self.delta).as_ref() == Some(&self.x_polynomial())
    }
}

/// The smallest `θ ∈ (0, π)` with `Δ(e^{iθ}) = 0`.
pub fn theta_one(a: i64, b: i64) -> Result<AlgebraicAngle> {
    let f = family_polynomial(a, b)?;
    let q = f.x_polynomial();
    if !f.substitution_holds() {
        return Err(Error::InvalidArgument("substitution identity failed".into()));
    }
    let two = BigRational::from_integer(2.into());
    let roots = isolate_roots_in_interval(&q, &-two.clone(), &two);
    // smallest angle = largest x
    match roots.into_iter().last() {
        Some(x) => Ok(AlgebraicAngle::from_x(x)),
        None => Err(Error::NoUnitCircleRoot(format!("q(x) = {q} has no root in (-2, 2)"))),
    }
}

/// A Seifert matrix with Alexander polynomial `±Δ` for the pair `(a, b)`.
pub fn realize_alexander_polynomial(a: i64, b: i64) -> Result<SeifertMatrix> {
    family_polynomial(a, b)?;
    let corner = 2 * a - 2 * b - (1 - b) * (1 - b);
    SeifertMatrix::new(IntMatrix::from_i64_rows(&[&[1, 0, 1, 0], &[0, 1, 0, 1], &[0, 0, 0, 1], &[0, 0, b, corner]]))
}

/// Certified model of a signature function: zero below the jump and of
/// absolute value at least `2N` above it.
#[derive(Clone, Debug)]
pub struct SignatureProfile {
    pub a: i64,
    pub b: i64,
    pub jump: AlgebraicAngle,
    pub lower_bound_above_jump: i64,
    pub multiplicity: BigInt,
    /// Step function of a concrete realization, when one was built.
    pub realized: Option<SignatureFunction>,
}

impl SignatureProfile {
    pub fn new(a: i64, b: i64) -> Result<Self> {
        Ok(SignatureProfile {
            a,
            b,
            jump: theta_one(a, b)?,
            lower_bound_above_jump: 2,
            multiplicity: BigInt::one(),
            realized: None,
        })
    }

    pub fn with_multiplicity(mut self, n: BigInt) -> Self {
        self.multiplicity = n;
        self
    }

    /// Attach the exact signature function of the companion realization.
    pub fn with_realization(mut self) -> Result<Self> {
        let v = realize_alexander_polynomial(self.a, self.b)?;
        self.realized = Some(SignatureFunction::new(&v));
        Ok(self)
    }

    /// For a realization: the jump is the only one, with values 0 then ±2.
    pub fn realization_matches(&self) -> Option<bool> {
        let f = self.realized.as_ref()?;
        let jumps = f.jumps();
        let vals = f.component_values();
        Some(
            jumps.len() == 1
                && jumps[0].cmp_root(&self.jump.x) == Ordering::Equal
                && vals[1] == 0
                && vals[0].abs() >= self.lower_bound_above_jump,
        )
    }
}

/// `4N/p`, after certifying the jump lies below `π − π/p`.
pub fn rho_lower_bound(profile: &SignatureProfile, p: u64) -> Result<BigRational> {
    let edge = BigRational::one() - BigRational::new(BigInt::one(), BigInt::from(p));
    if profile.jump.cmp_pi_fraction(&edge) != Ordering::Less {
        return Err(Error::JumpTooHigh(p));
    }
    Ok(BigRational::new(&profile.multiplicity * 4, BigInt::from(p)))
}

/// Whether every sample angle `2πk/p`, `0 ≤ k ≤ (p−1)/2`, lies strictly below the jump.
pub fn rho_vanishes(profile: &SignatureProfile, p: u64) -> bool {
    (0..=(p - 1) / 2).all(|k| {
        let r = BigRational::new(BigInt::from(2 * k), BigInt::from(p));
        profile.jump.cmp_pi_fraction(&r) == Ordering::Greater
    })
}

/// Smallest integer strictly greater than `(p/4) · C · (6n+90)`.
pub fn required_multiplicity(n: u32, p: u64) -> BigInt {
    let scaled = BigInt::from(p) * budget_total(n);
    scaled.div_floor(&BigInt::from(4)) + 1
}

/// `C · (6n + 90)`
pub fn budget_total(n: u32) -> BigInt {
    BigInt::from(BUDGET_CONSTANT) * BigInt::from(6 * n as u64 + 90)
}

/// Whether `N · 4/p` exceeds the budget at level `n`.
pub fn multiplicity_exceeds_budget(n: u32, p: u64, mult: &BigInt) -> bool {
    mult * 4 > BigInt::from(p) * budget_total(n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct BudgetReport {
    pub n: u32,
    pub per_term_bounds: Vec<BigInt>,
    pub total: BigInt,
    pub rho_magnitude: BigRational,
    pub r: u64,
    pub contradiction: bool,
}

/// `(n−1)` stevedore terms and one pattern term; a contradiction iff `r·|ρ|` exceeds the total.
pub fn case1_budget(n: u32, rho_magnitude: &BigRational, r: u64) -> Result<BudgetReport> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("level must be at least 2, got {n}")));
    }
    if r == 0 {
        return Err(Error::InvalidArgument("r must be positive".into()));
    }
    let c = BigInt::from(BUDGET_CONSTANT);
    let mut per_term_bounds = vec![&c * STEVEDORE_TERM; (n - 1) as usize];
    per_term_bounds.push(&c * PATTERN_TERM);
    let total: BigInt = per_term_bounds.iter().sum();
    debug_assert_eq!(total, budget_total(n));
    let contradiction = BigRational::from_integer(r.into()) * rho_magnitude > BigRational::from_integer(total.clone());
    Ok(BudgetReport { n, per_term_bounds, total, rho_magnitude: rho_magnitude.clone(), r, contradiction })
}

/// One window of the selection.
#[derive(Clone, Debug)]
pub struct FamilyRow {
    pub index: usize,
    pub prime: u64,
    pub previous: u64,
    pub is_prime: bool,
    pub profile: SignatureProfile,
    /// Rationals with `2cos(π − π/p) < lo < 2cos θ₁ < hi < 2cos(π − π/p_prev)`.
    pub x_certificate: (BigRational, BigRational),
    pub candidates_tried: u64,
}

#[derive(Clone, Debug)]
pub struct FamilySelection {
    pub level: u32,
    pub rows: Vec<FamilyRow>,
}

impl FamilySelection {
    /// `rho_vanishes(row j, p_i)` for all `i < j`.
    pub fn independence_matrix(&self) -> Vec<(usize, usize, bool)> {
        let mut out = Vec::new();
        for j in 0..self.rows.len() {
            for i in 0..j {
                out.push((i, j, rho_vanishes(&self.rows[j].profile, self.rows[i].prime)));
            }
        }
        out
    }
}

pub fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

/// Pick `(aᵢ, bᵢ)` with `θ₁ ∈ (π − π/p_{i−1}, π − π/pᵢ)` for each odd `pᵢ`, `p₀ = 2`.
pub fn choose_family_parameters(primes: &[u64], level: u32, cap: u64) -> Result<FamilySelection> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("no moduli given".into()));
    }
    if primes.iter().any(|&p| p < 3 || p % 2 == 0) {
        return Err(Error::InvalidArgument("moduli must be odd and at least 3".into()));
    }
    if primes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::InvalidArgument("moduli must be strictly increasing".into()));
    }
    if level < 2 {
        return Err(Error::InvalidArgument(format!("level must be at least 2, got {level}")));
    }
    let mut rows = Vec::new();
    let mut previous = 2;
    for (index, &p) in primes.iter().enumerate() {
        let (profile, tried) = search_window(index, previous, p, cap)?;
        let profile = profile.with_multiplicity(required_multiplicity(level, p)).with_realization()?;
        let x_certificate = certify_window(&profile.jump, previous, p);
        rows.push(FamilyRow {
            index,
            prime: p,
            previous,
            is_prime: is_prime(p),
            profile,
            x_certificate,
            candidates_tried: tried,
        });
        previous = p;
    }
    Ok(FamilySelection { level, rows })
}

fn window(previous: u64, p: u64) -> (BigRational, BigRational) {
    let lo = BigRational::one() - BigRational::new(1.into(), previous.into());
    let hi = BigRational::one() - BigRational::new(1.into(), p.into());
    (lo, hi)
}

fn search_window(index: usize, previous: u64, p: u64, cap: u64) -> Result<(SignatureProfile, u64)> {
    let (lo, hi) = window(previous, p);
    let mid = (&lo + &hi) / BigRational::from_integer(2.into());
    // Floating point only steers the search; acceptance is exact.
    let x0 = 2.0 * (std::f64::consts::PI * mid.to_f64().unwrap_or(0.5)).cos();
    let mut tried = 0u64;
    for b in 1i64.. {
        let a_star = (b as f64 * (2.0 * x0 - x0 * x0) + 1.0) / (4.0 - 2.0 * x0);
        let base = a_star.round() as i64;
        for delta in [0, 1, -1, 2, -2] {
            tried += 1;
            if tried > cap {
                return Err(Error::SearchCapExceeded { index, cap });
            }
            let a = base + delta;
            if a + b < 1 {
                continue;
            }
            let Ok(profile) = SignatureProfile::new(a, b) else { continue };
            if profile.jump.cmp_pi_fraction(&lo) == Ordering::Greater
                && profile.jump.cmp_pi_fraction(&hi) == Ordering::Less
            {
                return Ok((profile, tried));
            }
        }
    }
    unreachable!()
}

/// Rational bounds separating `2cos θ₁` from the window ends.
fn certify_window(jump: &AlgebraicAngle, previous: u64, p: u64) -> (BigRational, BigRational) {
    let (r_lo, r_hi) = window(previous, p);
    let mut x = jump.x.clone();
    let mut bits = 32;
    loop {
        // x-window is (2cos π r_hi, 2cos π r_lo)
        let (_, left_hi) = two_cos_pi_enclosure(&r_hi, bits);
        let (right_lo, _) = two_cos_pi_enclosure(&r_lo, bits);
        if x.lo() > &left_hi && x.hi() < &right_lo {
            return (x.lo().clone(), x.hi().clone());
        }
        x.refine();
        bits += 16;
    }
}

/// Whether a certificate pair brackets the jump, checked from scratch.
pub fn check_certificate(row: &FamilyRow) -> bool {
    let (lo, hi) = &row.x_certificate;
    let q = row.profile.jump.x.poly();
    let (r_lo, r_hi) = window(row.previous, row.prime);
    let (_, left_hi) = two_cos_pi_enclosure(&r_hi, 64);
    let (right_lo, _) = two_cos_pi_enclosure(&r_lo, 64);
    let (ql, qh) = (q.eval(lo), q.eval(hi));
    let sign_change = !ql.is_zero() && !qh.is_zero() && ql.is_positive() != qh.is_positive();
    lo > &left_hi && hi < &right_lo && sign_change
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{int, rat};

    #[test]
    fn polynomial_examples() {
        let f = family_polynomial(0, 1).unwrap();
        assert_eq!(f.delta, LaurentPoly::from_i64(-2, &[1, -2, 1, -2, 1]));
        let f = family_polynomial(1, 2).unwrap();
        assert_eq!(f.delta, LaurentPoly::from_i64(-2, &[2, -6, 7, -6, 2]));
        assert_eq!(f.delta.at_one(), BigInt::from(-1));
        assert!(f.substitution_holds());
        assert!(family_polynomial(1, 0).is_err());
    }

    #[test]
    fn theta_one_example() {
        let th = theta_one(0, 1).unwrap();
        // 2cos θ₁ = 1 − √2
        assert_eq!(th.x.cmp_rational(&rat(-41422, 100000)), Ordering::Greater);
        assert_eq!(th.x.cmp_rational(&rat(-41421, 100000)), Ordering::Less);
        // a + b < 1 leaves no root in (-2, 2)
        assert!(matches!(theta_one(-1, 1), Err(Error::NoUnitCircleRoot(_))));
    }

    #[test]
    fn realization_matches_family() {
        for (a, b) in [(0, 1), (1, 2), (-3, 7), (5, 3)] {
            let v = realize_alexander_polynomial(a, b).unwrap();
            let f = family_polynomial(a, b).unwrap();
            assert!(v.alexander_polynomial().equal_up_to_unit(&f.delta), "({a},{b})");
            let p = SignatureProfile::new(a, b).unwrap().with_realization().unwrap();
            assert_eq!(p.realization_matches(), Some(true), "({a},{b})");
        }
    }

    #[test]
    fn multiplicities() {
        assert_eq!(required_multiplicity(2, 3), BigInt::from(5_333_065_921u64));
        assert_eq!(required_multiplicity(2, 5), BigInt::from(8_888_443_201u64));
        assert_eq!(budget_total(2), BigInt::from(7_110_754_560u64));
        for n in 2..=6 {
            for p in [3, 5, 7, 11, 13] {
                let m = required_multiplicity(n, p);
                assert!(multiplicity_exceeds_budget(n, p, &m));
                assert!(!multiplicity_exceeds_budget(n, p, &(m - 1)));
            }
        }
    }

    #[test]
    fn budget() {
        let b = case1_budget(2, &int(0), 1).unwrap();
        assert_eq!(b.total, BigInt::from(7_110_754_560u64));
        assert_eq!(b.per_term_bounds.len(), 2);
        let over = BigRational::from_integer(b.total.clone() + 1);
        assert!(case1_budget(2, &over, 1).unwrap().contradiction);
        assert!(case1_budget(1, &over, 1).is_err());
    }

    #[test]
    fn selection_small() {
        let s = choose_family_parameters(&[3, 5], 2, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(s.rows.len(), 2);
        for row in &s.rows {
            assert!(check_certificate(row));
            assert_eq!(row.profile.realization_matches(), Some(true));
            let bound = rho_lower_bound(&row.profile, row.prime).unwrap();
            assert!(bound >= rat(4, row.prime as i64));
            assert!(!rho_vanishes(&row.profile, row.prime));
        }
        assert!(s.independence_matrix().iter().all(|t| t.2));
        assert!(rho_vanishes(&s.rows[1].profile, 1));
        assert!(choose_family_parameters(&[3, 3], 2, 10).is_err());
        assert!(choose_family_parameters(&[4], 2, 10).is_err());
    }

    #[test]
    fn jump_too_high() {
        // θ₁ for (0, 1) is about 1.78, below π − π/3 ≈ 2.09
        let p = SignatureProfile::new(0, 1).unwrap();
        assert!(rho_lower_bound(&p, 3).is_ok());
        let s = choose_family_parameters(&[3, 5], 2, DEFAULT_SEARCH_CAP).unwrap();
        assert_eq!(rho_lower_bound(&s.rows[1].profile, 3), Err(Error::JumpTooHigh(3)));
    }
}

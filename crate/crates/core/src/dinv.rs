//! Lens space correction terms, the metabolizer obstruction and the
//! arithmetic of the final d-invariant bound.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::{BigRational, Ratio};
use serde::Serialize;

use crate::cobordism::{base_knot, characteristic_check, ledger, AssignmentScope};
use crate::cover::{Metabolizer, SurgeryLinkingData};
use crate::error::{Error, Result};
use crate::report::serialize_rational;

/// `d(A)` for the manifold bounding the blown-down piece; taken as given.
pub fn d_a() -> BigRational {
    BigRational::new((-3).into(), 2.into())
}

/// Upper bound for `d(B)`; taken as given.
pub fn d_b_bound() -> BigRational {
    BigRational::new(3.into(), 4.into())
}

fn check_lens(p: u64, q: u64, i: u64) -> Result<()> {
    let ok = if p == 1 { q <= 1 && i == 0 } else { q > 0 && q < p && p.gcd(&q) == 1 && i < p };
    if !ok {
        return Err(Error::InvalidArgument(format!("invalid lens data (p, q, i) = ({p}, {q}, {i})")));
    }
    if p > 1_000_000 {
        return Err(Error::InvalidArgument(format!("p = {p} too large")));
    }
    Ok(())
}

/// `d(L(p, q), i) = −1/4 + (2i + 1 − p − q)² / 4pq − d(L(q, r), j)`, `r = p mod q`, `j = i mod q`; `d(S³) = 0`.
pub fn lens_d_small(p: u64, q: u64, i: u64) -> Result<Ratio<i64>> {
    check_lens(p, q, i)?;
    Ok(lens_unchecked(p as i64, q as i64, i as i64))
}

fn lens_unchecked(p: i64, q: i64, i: i64) -> Ratio<i64> {
    if p == 1 {
        return Ratio::from_integer(0);
    }
    let s = 2 * i + 1 - p - q;
    let term = Ratio::new(-1, 4) + Ratio::new(s * s, 4 * p * q);
    term - lens_unchecked(q, p % q, i % q)
}

pub fn lens_d(p: u64, q: u64, i: u64) -> Result<BigRational> {
    let r = lens_d_small(p, q, i)?;
    Ok(BigRational::new(BigInt::from(*r.numer()), BigInt::from(*r.denom())))
}

/// Index fixed by conjugation `i ↦ q − 1 − i (mod p)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SpinIndex {
    pub indices: Vec<u64>,
    pub flag: Option<String>,
}

pub fn spin_index(p: u64, q: u64) -> Result<SpinIndex> {
    check_lens(p, q, 0)?;
    if p == 1 {
        return Ok(SpinIndex { indices: vec![0], flag: None });
    }
    let indices: Vec<u64> = (0..p).filter(|&i| (2 * i) % p == (q + p - 1) % p).collect();
    let flag = p.is_multiple_of(2).then(|| format!("p = {p} is even: {} spin structures", indices.len()));
    Ok(SpinIndex { indices, flag })
}

pub fn conjugate_index(p: u64, q: u64, i: u64) -> u64 {
    (q + 2 * p - 1 - i) % p
}

/// Whether `d(i) = d(ī)` for every index.
pub fn conjugation_symmetric(p: u64, q: u64) -> Result<bool> {
    for i in 0..p {
        if lens_d_small(p, q, i)? != lens_d_small(p, q, conjugate_index(p, q, i))? {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ObstructionVerdict {
    pub m: u32,
    pub metabolizer: String,
    #[serde(serialize_with = "serialize_rational")]
    pub d_value: BigRational,
    pub contradiction: bool,
    pub reason: String,
}

/// A contradiction iff `d < 0` at the spin-c structure shifted by `x₁` while `x₁ ∈ G`.
pub fn obstruction_check(m: u32, metabolizer: &Metabolizer, d_value: &BigRational) -> ObstructionVerdict {
    let negative = d_value < &BigRational::from_integer(0.into());
    let contradiction = negative && metabolizer.contains_x1;
    let reason = match (metabolizer.contains_x1, negative) {
        (true, true) => "x1 lies in the metabolizer but d < 0".to_string(),
        (true, false) => "d >= 0, consistent".to_string(),
        (false, _) => "x1 is not in the metabolizer; no constraint on this class".to_string(),
    };
    ObstructionVerdict { m, metabolizer: metabolizer.label.clone(), d_value: d_value.clone(), contradiction, reason }
}

/// `m = ℓ^k` for an odd prime `ℓ`.
pub fn odd_prime_power(m: u64) -> Option<(u64, u32)> {
    if m < 3 || m.is_multiple_of(2) {
        return None;
    }
    let l = (3..=m).find(|d| m.is_multiple_of(*d))?;
    let mut k = 0;
    let mut r = m;
    while r.is_multiple_of(l) {
        r /= l;
        k += 1;
    }
    (r == 1).then_some((l, k))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TheoremAssembly {
    pub m: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub d_l31: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub d_a: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub d_b_bound: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub c1_squared: BigRational,
    pub b2: i64,
    #[serde(serialize_with = "serialize_rational")]
    pub ym_bound: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub rhs_bound: BigRational,
    #[serde(serialize_with = "serialize_rational")]
    pub final_bound: BigRational,
    pub hypothesis_flag: Option<String>,
}

/// `(m−3) d(L(3,1)) + d(A) + d(B)` against `(c₁² + b₂)/4`.
pub fn theorem_assembly(m: u32) -> Result<TheoremAssembly> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("m must be odd and at least 3, got {m}")));
    }
    let spin = spin_index(3, 1)?;
    let d_l31 = lens_d(3, 1, spin.indices[0])?;
    let data = SurgeryLinkingData::new(m)?;
    let ch = characteristic_check(&data, AssignmentScope::Families)?;
    if !ch.pass {
        return Err(Error::Derivation(format!("characteristic check failed for m = {m}")));
    }
    let led = ledger(m, &base_knot())?;
    if !led.negative_definite {
        return Err(Error::Derivation(format!("cobordism not negative definite for m = {m}")));
    }
    let c1_squared = ch.w_squared.clone();
    let b2 = led.b2_w;
    let ym_bound = BigRational::from_integer((m as i64 - 3).into()) * &d_l31 + d_a() + d_b_bound();
    let rhs_bound = (&c1_squared + BigRational::from_integer(b2.into())) / BigRational::from_integer(4.into());
    let final_bound = &ym_bound - &rhs_bound;
    let hypothesis_flag = odd_prime_power(m as u64).is_none().then(|| format!("{m} is not an odd prime power"));
    Ok(TheoremAssembly {
        m,
        d_l31,
        d_a: d_a(),
        d_b_bound: d_b_bound(),
        c1_squared,
        b2,
        ym_bound,
        rhs_bound,
        final_bound,
        hypothesis_flag,
    })
}

//! Linking-number conditions for the characteristic class of the
//! surgery cobordism, and its Betti number / signature ledger.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::cover::{mersenne, SurgeryLinkingData};
use crate::error::{Error, Result};
use crate::exact::{symmetric_signature, IntMatrix};
use crate::report::{serialize_integer, serialize_rational};
use crate::seifert::SeifertMatrix;

/// Which `(o, e)` pairs to quantify over for the curves `v_i = x_o + x_e`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AssignmentScope {
    /// Every odd `o` and even `e` in `1..=2m−2`.
    All,
    /// Only `(2k−1, 2k+2)` and `(2k+1, 2k)`.
    Families,
}

pub fn admissible_pairs(m: u32, scope: AssignmentScope) -> Vec<(usize, usize)> {
    let top = 2 * m as usize - 2;
    match scope {
        AssignmentScope::All => (1..=top).step_by(2).flat_map(|o| (2..=top).step_by(2).map(move |e| (o, e))).collect(),
        AssignmentScope::Families => {
            let mut out = Vec::new();
            for k in 1..=top / 2 {
                if 2 * k + 2 <= top {
                    out.push((2 * k - 1, 2 * k + 2));
                }
                if 2 * k < top {
                    out.push((2 * k + 1, 2 * k));
                }
            }
            out
        }
    }
}

/// Classes of `v_1..v_{4m−6}` in the meridian basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CurveClassAssignment {
    pub m: u32,
    /// `(o, e)` for `i = 1..=3m−6`.
    pub pairs: Vec<(usize, usize)>,
}

impl CurveClassAssignment {
    pub fn new(m: u32, pairs: Vec<(usize, usize)>) -> Result<Self> {
        check_odd(m)?;
        let top = 2 * m as usize - 2;
        if pairs.len() != 3 * m as usize - 6 {
            return Err(Error::InvalidArgument(format!("need {} pairs, got {}", 3 * m - 6, pairs.len())));
        }
        if let Some(&(o, e)) = pairs.iter().find(|&&(o, e)| o % 2 == 0 || e % 2 == 1 || o == 0 || o > top || e > top) {
            return Err(Error::InvalidArgument(format!("pair ({o}, {e}) is not (odd, even) in 1..={top}")));
        }
        Ok(CurveClassAssignment { m, pairs })
    }

    /// Cycle through the two named families.
    pub fn standard(m: u32) -> Result<Self> {
        check_odd(m)?;
        let fams = admissible_pairs(m, AssignmentScope::Families);
        let pairs = (0..3 * m as usize - 6).map(|i| fams[i % fams.len()]).collect();
        Self::new(m, pairs)
    }

    pub fn curve_count(&self) -> usize {
        4 * self.m as usize - 6
    }

    /// Class of `v_i` (1-based) as meridian coefficients.
    pub fn class_of(&self, i: usize) -> Vec<i64> {
        let mut v = vec![0; 2 * self.m as usize - 2];
        let first = 3 * self.m as usize - 5;
        if i < first {
            let (o, e) = self.pairs[i - 1];
            v[o - 1] += 1;
            v[e - 1] += 1;
        } else if i == first {
            v[0] = 1;
        }
        v
    }
}

fn check_odd(m: u32) -> Result<()> {
    if m < 3 || m.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!("m must be odd and at least 3, got {m}")));
    }
    Ok(())
}

/// `a_i`: `2^m − 1` up to `3m−5`, then 1.
pub fn coefficient(m: u32, i: usize) -> BigInt {
    if i <= 3 * m as usize - 5 {
        mersenne(m)
    } else {
        BigInt::one()
    }
}

/// Coefficients of `E₀` in the `E_i`: 1 at `3m−5`, `2^m − 1` after.
fn e0_coefficient(m: u32, i: usize) -> BigInt {
    let first = 3 * m as usize - 5;
    match i.cmp(&first) {
        std::cmp::Ordering::Less => BigInt::zero(),
        std::cmp::Ordering::Equal => BigInt::one(),
        std::cmp::Ordering::Greater => mersenne(m),
    }
}

/// `R(α, β) = αᵀ P⁻¹ β`
pub fn r_pairing(data: &SurgeryLinkingData, a: &[i64], b: &[i64]) -> BigRational {
    let mut s = BigRational::zero();
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            if x != 0 && y != 0 {
                s += data.pinv.get(i, j) * BigRational::from_integer((x * y).into());
            }
        }
    }
    s
}

fn lk_from_classes(data: &SurgeryLinkingData, ci: &[i64], cj: &[i64], same: bool) -> BigRational {
    let delta = if same { BigRational::one() } else { BigRational::zero() };
    -delta - r_pairing(data, ci, cj)
}

/// `lk(v_i, v_j') = −δ_ij − R([v_i], [v_j])`
pub fn lk_sigma(data: &SurgeryLinkingData, asg: &CurveClassAssignment, i: usize, j: usize) -> BigRational {
    lk_from_classes(data, &asg.class_of(i), &asg.class_of(j), i == j)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionOne {
    pub m: u32,
    #[serde(serialize_with = "serialize_rational")]
    pub sum: BigRational,
    pub nonzero_terms: usize,
    pub pass: bool,
}

/// `Σ lk(v_i, v_j')` over `i, j ∈ [3m−5, 4m−6]`.
pub fn condition_one(data: &SurgeryLinkingData, asg: &CurveClassAssignment) -> ConditionOne {
    let m = asg.m;
    let range = 3 * m as usize - 5..=asg.curve_count();
    let mut sum = BigRational::zero();
    let mut nonzero_terms = 0;
    for i in range.clone() {
        for j in range.clone() {
            let v = lk_sigma(data, asg, i, j);
            if !v.is_zero() {
                nonzero_terms += 1;
            }
            sum += v;
        }
    }
    let pass = sum == BigRational::from_integer(-BigInt::from(m)) && nonzero_terms == m as usize;
    ConditionOne { m, sum, nonzero_terms, pass }
}

/// One instance of the parity congruence `E_i·E₀ ≡ E_i·E_i (mod 2)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ParityCase {
    pub i: usize,
    pub pair: Option<(usize, usize)>,
    #[serde(serialize_with = "serialize_integer")]
    pub lhs: BigInt,
    #[serde(serialize_with = "serialize_integer")]
    pub rhs: BigInt,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionTwo {
    pub m: u32,
    pub scope: AssignmentScope,
    pub cases: Vec<ParityCase>,
    /// The structural facts behind the per-case argument.
    pub first_column_alternates: bool,
    pub zero_diagonal: bool,
    pub pass: bool,
}

fn as_integer(q: BigRational) -> BigInt {
    assert!(q.is_integer(), "intersection number {q} is not an integer");
    q.to_integer()
}

/// `E_i·E₀` and `E_i·E_i` for a curve of class `ci` with coefficient `a_i`.
fn parity_case(data: &SurgeryLinkingData, i: usize, ci: &[i64], pair: Option<(usize, usize)>) -> ParityCase {
    let m = data.m;
    let ai = coefficient(m, i);
    let first = 3 * m as usize - 5;
    let last = 4 * m as usize - 6;
    let blank = CurveClassAssignment { m, pairs: vec![(1, 2); 3 * m as usize - 6] };
    let mut lhs = BigRational::zero();
    for j in first..=last {
        let lk = lk_from_classes(data, ci, &blank.class_of(j), i == j);
        lhs += lk * BigRational::from_integer(e0_coefficient(m, j) * &ai * coefficient(m, j));
    }
    let self_lk = lk_from_classes(data, ci, ci, true);
    let rhs = self_lk * BigRational::from_integer(&ai * &ai);
    let (lhs, rhs) = (as_integer(lhs), as_integer(rhs));
    let pass = (&lhs - &rhs).is_even();
    ParityCase { i, pair, lhs, rhs, pass }
}

/// Entries of the first column of `(2^m − 1) P⁻¹` alternate even, odd, …; the diagonal of `P⁻¹` vanishes.
pub fn parity_facts(data: &SurgeryLinkingData) -> (bool, bool) {
    let q = BigRational::from_integer(mersenne(data.m));
    let n = data.pinv.rows();
    let alternates = (0..n).all(|r| {
        let v = data.pinv.get(r, 0) * &q;
        v.is_integer() && v.to_integer().is_odd() == (r % 2 == 1)
    });
    let zero_diag = (0..n).all(|i| data.pinv.get(i, i).is_zero());
    (alternates, zero_diag)
}

/// The congruence for `i ≥ 3m−5` directly and for `i ≤ 3m−6` under every admissible pair.
pub fn condition_two(data: &SurgeryLinkingData, scope: AssignmentScope) -> Result<ConditionTwo> {
    let m = data.m;
    check_odd(m)?;
    let blank = CurveClassAssignment { m, pairs: vec![(1, 2); 3 * m as usize - 6] };
    let mut cases = Vec::new();
    for i in 3 * m as usize - 5..=4 * m as usize - 6 {
        cases.push(parity_case(data, i, &blank.class_of(i), None));
    }
    // v_i = x_o + x_e for i ≤ 3m−6; the congruence only sees v_i's own class
    for (o, e) in admissible_pairs(m, scope) {
        let mut c = vec![0; 2 * m as usize - 2];
        c[o - 1] = 1;
        c[e - 1] = 1;
        cases.push(parity_case(data, 1, &c, Some((o, e))));
    }
    let (first_column_alternates, zero_diagonal) = parity_facts(data);
    let pass = cases.iter().all(|c| c.pass) && first_column_alternates && zero_diagonal;
    Ok(ConditionTwo { m, scope, cases, first_column_alternates, zero_diagonal, pass })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacteristicReport {
    pub m: u32,
    #[serde(serialize_with = "serialize_integer")]
    pub e0_squared: BigInt,
    #[serde(serialize_with = "serialize_integer")]
    pub expected_e0_squared: BigInt,
    #[serde(serialize_with = "serialize_rational")]
    pub w_squared: BigRational,
    pub all_congruences: bool,
    pub integral: bool,
    /// Agreement of the direct congruences with the structural parity argument.
    pub cross_checked: bool,
    pub pass: bool,
}

/// Intersection matrix `E_i·E_j = a_i a_j lk(v_i, v_j')` for a concrete assignment.
pub fn intersection_matrix(data: &SurgeryLinkingData, asg: &CurveClassAssignment) -> Option<IntMatrix> {
    let n = asg.curve_count();
    let mut out = IntMatrix::zeros(n, n);
    for i in 1..=n {
        for j in 1..=n {
            let v =
                lk_sigma(data, asg, i, j) * BigRational::from_integer(coefficient(asg.m, i) * coefficient(asg.m, j));
            if !v.is_integer() {
                return None;
            }
            out.set(i - 1, j - 1, v.to_integer());
        }
    }
    Some(out)
}

/// `E₀·E₀ = −(2^m−1)² m` and all congruences, via the intersection matrix of every scoped assignment.
pub fn characteristic_check(data: &SurgeryLinkingData, scope: AssignmentScope) -> Result<CharacteristicReport> {
    let m = data.m;
    check_odd(m)?;
    let q = mersenne(m);
    let asg = CurveClassAssignment::standard(m)?;
    let Some(q_mat) = intersection_matrix(data, &asg) else {
        return Ok(CharacteristicReport {
            m,
            e0_squared: BigInt::zero(),
            expected_e0_squared: -(&q * &q) * BigInt::from(m),
            w_squared: BigRational::zero(),
            all_congruences: false,
            integral: false,
            cross_checked: false,
            pass: false,
        });
    };
    let n = asg.curve_count();
    let e0: Vec<BigInt> = (1..=n).map(|i| e0_coefficient(m, i)).collect();
    let qe0 = q_mat.mul_vec(&e0);
    let e0_squared: BigInt = e0.iter().zip(&qe0).map(|(a, b)| a * b).sum();
    let matrix_congruences = (0..n).all(|i| (&qe0[i] - q_mat.get(i, i)).is_even());
    let two = condition_two(data, scope)?;
    let all_congruences = matrix_congruences && two.cases.iter().all(|c| c.pass);
    let structural = two.first_column_alternates && two.zero_diagonal;
    let expected_e0_squared = -(&q * &q) * BigInt::from(m);
    let w_squared = BigRational::new(e0_squared.clone(), &q * &q);
    let pass = e0_squared == expected_e0_squared && all_congruences && structural;
    Ok(CharacteristicReport {
        m,
        e0_squared,
        expected_e0_squared,
        w_squared,
        all_congruences,
        integral: true,
        cross_checked: all_congruences == structural,
        pass,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LedgerReport {
    pub m: u32,
    pub b2_w0: i64,
    pub sign_w0: i64,
    pub b2_w_prime: i64,
    pub sign_w_prime: i64,
    pub b2_w_hat: i64,
    pub sign_w_hat: i64,
    pub b2_w: i64,
    pub sign_w: i64,
    pub negative_definite: bool,
}

/// Intersection form of the blown-down manifold.
pub fn w_prime_form(m: u32) -> IntMatrix {
    let mut f = IntMatrix::from_i64_rows(&[&[1, 3], &[3, 2]]).block_sum(&IntMatrix::from_i64_rows(&[&[3, 3], &[3, 1]]));
    for _ in 0..m.saturating_sub(3) {
        f = f.block_sum(&IntMatrix::from_i64_rows(&[&[3]]));
    }
    f
}

/// Betti numbers and signatures through blow-down, Novikov additivity and the
/// signature sum of the branched cover's bounding manifold.
pub fn ledger(m: u32, seifert: &SeifertMatrix) -> Result<LedgerReport> {
    check_odd(m)?;
    let sig = crate::seifert::SignatureFunction::new(seifert);
    let sign_w0: i64 = (0..m as i64).map(|k| sig.at_root_of_unity(k, m as u64)).sum();
    let b2_w0 = SurgeryLinkingData::new(m)?.p.rows() as i64;
    let wp = w_prime_form(m);
    let b2_w_prime = wp.rows() as i64;
    let sign_w_prime = symmetric_signature(&wp.to_rat())?;
    let blowdowns = 4 * m as i64 - 6;
    let b2_w_hat = b2_w_prime + blowdowns;
    let sign_w_hat = sign_w_prime - blowdowns;
    let b2_w = b2_w_hat - b2_w0;
    let sign_w = sign_w_hat - sign_w0;
    Ok(LedgerReport {
        m,
        b2_w0,
        sign_w0,
        b2_w_prime,
        sign_w_prime,
        b2_w_hat,
        sign_w_hat,
        b2_w,
        sign_w,
        negative_definite: sign_w == -b2_w,
    })
}

/// The Seifert matrix `[[0, 2], [1, 0]]`.
pub fn base_knot() -> SeifertMatrix {
    SeifertMatrix::from_rows(&[&[0, 2], &[1, 0]]).expect("valid")
}

impl LedgerReport {
    pub fn matches_expected(&self) -> bool {
        let m = self.m as i64;
        self.b2_w0 == 2 * m - 2
            && self.sign_w0 == 0
            && self.b2_w_prime == m + 1
            && self.sign_w_prime == m - 3
            && self.b2_w_hat == 5 * m - 5
            && self.sign_w_hat == -3 * m + 3
            && self.b2_w == 3 * m - 3
            && self.sign_w == -3 * m + 3
            && self.negative_definite
            && self.b2_w_hat == self.b2_w + self.b2_w0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lk_examples() {
        let data = SurgeryLinkingData::new(5).unwrap();
        let asg = CurveClassAssignment::standard(5).unwrap();
        assert_eq!(lk_sigma(&data, &asg, 10, 10), -BigRational::one());
        for i in 11..=14 {
            for j in 1..=14 {
                let want = if i == j { -BigRational::one() } else { BigRational::zero() };
                assert_eq!(lk_sigma(&data, &asg, i, j), want);
            }
        }
        for i in 1..=14 {
            for j in 1..=14 {
                assert_eq!(lk_sigma(&data, &asg, i, j), lk_sigma(&data, &asg, j, i));
            }
        }
    }

    #[test]
    fn conditions_m3() {
        let data = SurgeryLinkingData::new(3).unwrap();
        let asg = CurveClassAssignment::standard(3).unwrap();
        let c1 = condition_one(&data, &asg);
        assert_eq!(c1.sum, BigRational::from_integer((-3).into()));
        assert!(c1.pass);
        let c2 = condition_two(&data, AssignmentScope::All).unwrap();
        assert!(c2.pass);
        // i ≥ 3m−4: lhs 1 − 2^m, rhs −1
        let high = c2.cases.iter().find(|c| c.i == 5).unwrap();
        assert_eq!((high.lhs.clone(), high.rhs.clone()), (BigInt::from(-7), BigInt::from(-1)));
        let mid = c2.cases.iter().find(|c| c.i == 4).unwrap();
        assert_eq!((mid.lhs.clone(), mid.rhs.clone()), (BigInt::from(-49), BigInt::from(-49)));
        let ch = characteristic_check(&data, AssignmentScope::All).unwrap();
        assert_eq!(ch.e0_squared, BigInt::from(-3 * 49));
        assert_eq!(ch.w_squared, BigRational::from_integer((-3).into()));
        assert!(ch.pass && ch.cross_checked);
    }

    #[test]
    fn ledger_values() {
        let l = ledger(3, &base_knot()).unwrap();
        assert_eq!((l.b2_w, l.sign_w), (6, -6));
        assert!(l.matches_expected());
        assert_eq!(ledger(5, &base_knot()).unwrap().sign_w_prime, 2);
        assert!(ledger(4, &base_knot()).is_err());
    }

    #[test]
    fn scopes() {
        assert_eq!(admissible_pairs(3, AssignmentScope::All), vec![(1, 2), (1, 4), (3, 2), (3, 4)]);
        assert_eq!(admissible_pairs(3, AssignmentScope::Families), vec![(1, 4), (3, 2)]);
        assert!(CurveClassAssignment::new(3, vec![(2, 2), (1, 2), (1, 2)]).is_err());
    }
}

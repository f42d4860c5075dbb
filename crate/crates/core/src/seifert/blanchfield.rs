//! The rational Alexander module, its Blanchfield pairing and metabolizers.
//!
//! The module is presented by `N = V - tVᵀ` (columns are relations) and the
//! pairing is `Bl(a, b) = āᵀ (1 - t) N⁻¹ b` in `Q(t)/Q[t^±1]`.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::SeifertMatrix;
use crate::error::{Error, Result};
use crate::exact::factor::factor_over_q;
use crate::exact::polymat::{adjugate, poly_det, PolyMatrix};
use crate::exact::{smith, Matrix, RatPoly};

/// Coordinates on the presentation generators.
pub type ModuleElement = Vec<RatPoly>;

fn presentation(v: &SeifertMatrix) -> PolyMatrix {
    let m = v.matrix();
    Matrix::from_fn(m.rows(), m.cols(), |r, c| {
        let a = BigRational::from_integer(m.get(r, c).clone());
        let b = BigRational::from_integer(m.get(c, r).clone());
        RatPoly::new(vec![a, -b])
    })
}

/// A cyclic primary summand `Q[t^±1]/(p^e)`.
#[derive(Clone, Debug, PartialEq)]
pub struct PrimaryComponent {
    /// Monic irreducible, nonzero constant term.
    pub prime: RatPoly,
    pub exponent: u32,
    pub generator: ModuleElement,
}

impl PrimaryComponent {
    pub fn order(&self) -> RatPoly {
        self.prime.pow(self.exponent)
    }

    /// The order as a primitive integer polynomial, e.g. `2t - 1`.
    pub fn label(&self) -> String {
        self.order().primitive_int().to_string().replace('x', "t")
    }
}

/// The rational Alexander module as a sum of primary cyclic summands.
#[derive(Clone, Debug)]
pub struct AlexanderModule {
    pub invariant_factors: Vec<RatPoly>,
    pub components: Vec<PrimaryComponent>,
}

impl AlexanderModule {
    pub fn cyclic_factors(&self) -> Vec<RatPoly> {
        self.components.iter().map(PrimaryComponent::order).collect()
    }

    /// Product of the orders, monic.
    pub fn order(&self) -> RatPoly {
        self.cyclic_factors().iter().fold(RatPoly::one(), |acc, f| &acc * f)
    }

    pub fn is_zero(&self) -> bool {
        self.components.is_empty()
    }
}

pub fn alexander_module(v: &SeifertMatrix) -> AlexanderModule {
    let n = presentation(v);
    let snf = smith(&n);
    let mut invariant_factors = Vec::new();
    let mut components = Vec::new();
    for (i, d) in snf.diag.iter().enumerate() {
        // powers of t are units
        let d = d.unshift(d.t_adic_valuation()).monic();
        if d.degree().unwrap_or(0) == 0 {
            continue;
        }
        invariant_factors.push(d.clone());
        let col: ModuleElement = (0..snf.left_inv.rows()).map(|r| snf.left_inv.get(r, i).clone()).collect();
        for (p, e) in factor_over_q(&d) {
            let cofactor = d.exact_div(&p.pow(e));
            let generator = col.iter().map(|x| &cofactor * x).collect();
            components.push(PrimaryComponent { prime: p, exponent: e, generator });
        }
    }
    components.sort_by(|a, b| {
        a.prime
            .degree()
            .cmp(&b.prime.degree())
            .then_with(|| a.prime.coeffs().iter().rev().cmp(b.prime.coeffs().iter().rev()))
    });
    AlexanderModule { invariant_factors, components }
}

/// An element of `Q(t)/Q[t^±1]` in canonical form `num/den` with `den`
/// monic, `den(0) ≠ 0`, `deg num < deg den` and `gcd(num, den) = 1`.
#[derive(Clone, PartialEq, Eq)]
pub struct BlanchfieldValue {
    num: RatPoly,
    den: RatPoly,
}

impl BlanchfieldValue {
    pub fn zero() -> Self {
        BlanchfieldValue { num: RatPoly::zero(), den: RatPoly::one() }
    }

    /// Canonical form of `t^shift · num / den`.
    pub fn from_fraction(shift: i64, num: &RatPoly, den: &RatPoly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        if num.is_zero() {
            return Self::zero();
        }
        let val = den.t_adic_valuation();
        let den = den.unshift(val);
        let shift = shift - val as i64;
        let lc = den.leading().expect("nonzero").clone();
        let den = den.monic();
        let num = num.scale(&lc.recip());
        if den.degree() == Some(0) {
            return Self::zero();
        }
        let tp = t_power_mod(shift, &den);
        let r = (&num * &tp).rem(&den);
        if r.is_zero() {
            return Self::zero();
        }
        let g = r.gcd(&den);
        let den = den.exact_div(&g);
        let lc = den.leading().expect("nonzero").clone();
        let r = r.exact_div(&g).scale(&lc.recip());
        let den = den.monic();
        if den.degree() == Some(0) {
            return Self::zero();
        }
        BlanchfieldValue { num: r, den }
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The value with `t` replaced by `1/t`.
    pub fn conjugate(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let dn = self.num.degree().unwrap() as i64;
        let dd = self.den.degree().unwrap() as i64;
        Self::from_fraction(dd - dn, &self.num.reversed(), &self.den.reversed())
    }

    pub fn scale(&self, c: &BigRational, k: i64) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        Self::from_fraction(k, &self.num.scale(c), &self.den)
    }

    /// `(c, k)` with `self = c t^k · other`, searching `|k| ≤ max_shift`.
    pub fn unit_ratio(&self, other: &Self, max_shift: i64) -> Option<(BigRational, i64)> {
        match (self.is_zero(), other.is_zero()) {
            (true, true) => return Some((BigRational::one(), 0)),
            (true, false) | (false, true) => return None,
            _ => {}
        }
        if self.den != other.den {
            return None;
        }
        for step in 0..=2 * max_shift {
            let k = if step % 2 == 0 { -(step / 2) } else { step / 2 + 1 };
            let h = other.scale(&BigRational::one(), k);
            let c = self.num.leading().unwrap() / h.num.leading().unwrap();
            if h.num.scale(&c) == self.num {
                return Some((c, k));
            }
        }
        None
    }
}

fn t_power_mod(k: i64, d: &RatPoly) -> RatPoly {
    let base = if k >= 0 {
        RatPoly::x().rem(d)
    } else {
        // t is invertible modulo d since d(0) ≠ 0
        let (g, s, _) = RatPoly::x().ext_gcd(d);
        debug_assert!(g.is_one());
        s.rem(d)
    };
    let mut e = k.unsigned_abs();
    let mut acc = RatPoly::one().rem(d);
    let mut b = base;
    while e > 0 {
        if e & 1 == 1 {
            acc = (&acc * &b).rem(d);
        }
        b = (&b * &b).rem(d);
        e >>= 1;
    }
    acc
}

impl fmt::Display for BlanchfieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            write!(f, "0")
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for BlanchfieldValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// `Bl(a, b) = āᵀ (1 - t) N⁻¹ b` for elements given on the presentation generators.
pub fn blanchfield_pairing(v: &SeifertMatrix, a: &[RatPoly], b: &[RatPoly]) -> Result<BlanchfieldValue> {
    let n = presentation(v);
    if a.len() != n.rows() || b.len() != n.rows() {
        return Err(Error::Shape(format!("elements need {} coordinates", n.rows())));
    }
    if n.rows() == 0 {
        return Ok(BlanchfieldValue::zero());
    }
    let det = poly_det(&n);
    let adj = adjugate(&n);
    let deg = a.iter().filter_map(RatPoly::degree).max().unwrap_or(0);
    let a_bar: Vec<RatPoly> = a
        .iter()
        .map(|x| match x.degree() {
            Some(d) => x.reversed().shift(deg - d),
            None => RatPoly::zero(),
        })
        .collect();
    let adj_b = adj.mul_vec(b);
    let mut num = RatPoly::zero();
    for (x, y) in a_bar.iter().zip(&adj_b) {
        num = &num + &(x * y);
    }
    num = &num * &RatPoly::from_i64(&[1, -1]);
    Ok(BlanchfieldValue::from_fraction(-(deg as i64), &num, &det))
}

/// A submodule spanned by primary summands.
#[derive(Clone, Debug, PartialEq)]
pub struct Submodule {
    pub label: String,
    pub component_indices: Vec<usize>,
    pub generators: Vec<ModuleElement>,
}

/// All submodules `P` with `P = P^⊥`, when the module is a sum of at most two
/// summands with distinct irreducible orders.
pub fn blanchfield_metabolizers(v: &SeifertMatrix) -> Result<Vec<Submodule>> {
    let module = alexander_module(v);
    let comps = &module.components;
    if comps.len() > 2 {
        return Err(Error::UnsupportedModuleShape(format!("{} primary summands", comps.len())));
    }
    if comps.iter().any(|c| c.exponent != 1) {
        return Err(Error::UnsupportedModuleShape("non-squarefree order".into()));
    }
    if comps.len() == 2 && comps[0].prime == comps[1].prime {
        return Err(Error::UnsupportedModuleShape("repeated irreducible order".into()));
    }
    let k = comps.len();
    let mut gram = vec![vec![BlanchfieldValue::zero(); k]; k];
    for i in 0..k {
        for j in 0..k {
            gram[i][j] = blanchfield_pairing(v, &comps[i].generator, &comps[j].generator)?;
        }
    }
    // Every submodule is a sum of summands since they are simple and pairwise non-isomorphic.
    let subsets: Vec<u32> = (0..1u32 << k).collect();
    let perp = |p: u32| -> u32 {
        (0..k)
            .filter(|&i| (0..k).filter(|&j| p >> j & 1 == 1).all(|j| gram[i][j].is_zero()))
            .fold(0, |acc, i| acc | 1 << i)
    };
    Ok(subsets
        .into_iter()
        .filter(|&p| perp(p) == p)
        .map(|p| {
            let idx: Vec<usize> = (0..k).filter(|&i| p >> i & 1 == 1).collect();
            let label = if idx.is_empty() {
                "0".to_string()
            } else {
                idx.iter().map(|&i| format!("<{}>", comps[i].label())).collect::<Vec<_>>().join(" + ")
            };
            Submodule {
                label,
                generators: idx.iter().map(|&i| comps[i].generator.clone()).collect(),
                component_indices: idx,
            }
        })
        .collect())
}

/// The standard basis vector `e_i` with `n` coordinates.
pub fn basis_element(n: usize, i: usize) -> ModuleElement {
    (0..n).map(|j| if i == j { RatPoly::one() } else { RatPoly::zero() }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    fn k1() -> SeifertMatrix {
        SeifertMatrix::from_rows(&[&[0, 2], &[1, 0]]).unwrap()
    }

    #[test]
    fn module_of_k1() {
        let m = alexander_module(&k1());
        let labels: Vec<String> = m.components.iter().map(PrimaryComponent::label).collect();
        assert_eq!(labels, vec!["t - 2", "2t - 1"]);
        let delta = k1().alexander_polynomial().to_poly().to_rat().monic();
        assert_eq!(m.order(), delta);
    }

    #[test]
    fn module_of_trefoil() {
        let m = alexander_module(&SeifertMatrix::right_trefoil());
        assert_eq!(m.cyclic_factors(), vec![RatPoly::from_i64(&[1, -1, 1])]);
    }

    #[test]
    fn pairing_of_k1() {
        let e1 = basis_element(2, 0);
        let e2 = basis_element(2, 1);
        let v = k1();
        assert!(blanchfield_pairing(&v, &e1, &e1).unwrap().is_zero());
        assert!(blanchfield_pairing(&v, &e2, &e2).unwrap().is_zero());
        let b12 = blanchfield_pairing(&v, &e1, &e2).unwrap();
        // (1 - t)/(1 - 2t) = (-1/4)/(t - 1/2)
        let want = BlanchfieldValue::from_fraction(0, &RatPoly::from_i64(&[1, -1]), &RatPoly::from_i64(&[1, -2]));
        assert_eq!(b12, want);
        assert_eq!(b12.numerator(), &RatPoly::constant(rat(-1, 4)));
        let theirs = BlanchfieldValue::from_fraction(0, &RatPoly::from_i64(&[-1, 1]), &RatPoly::from_i64(&[1, -2]));
        assert_eq!(b12.unit_ratio(&theirs, 4), Some((rat(-1, 1), 0)));
        let b21 = blanchfield_pairing(&v, &e2, &e1).unwrap();
        assert_eq!(b21, b12.conjugate());
    }

    #[test]
    fn relations_pair_to_zero() {
        // (t - 2) e1 is zero in the module
        let v = k1();
        let a = vec![RatPoly::from_i64(&[-2, 1]), RatPoly::zero()];
        let b = basis_element(2, 1);
        assert!(blanchfield_pairing(&v, &a, &b).unwrap().is_zero());
        assert!(blanchfield_pairing(&v, &b, &a).unwrap().is_zero());
    }

    #[test]
    fn metabolizers() {
        let m = blanchfield_metabolizers(&k1()).unwrap();
        let labels: Vec<&str> = m.iter().map(|s| s.label.as_str()).collect();
        assert_eq!(labels, vec!["<t - 2>", "<2t - 1>"]);
        assert!(blanchfield_metabolizers(&SeifertMatrix::right_trefoil()).unwrap().is_empty());
        let z = blanchfield_metabolizers(&SeifertMatrix::unknot()).unwrap();
        assert_eq!(z.len(), 1);
        assert_eq!(z[0].label, "0");
        let big = k1().connected_sum(&SeifertMatrix::right_trefoil());
        assert!(matches!(blanchfield_metabolizers(&big), Err(Error::UnsupportedModuleShape(_))));
    }

    #[test]
    fn conjugate_of_shifted() {
        let v = BlanchfieldValue::from_fraction(-3, &RatPoly::from_i64(&[1]), &RatPoly::from_i64(&[-2, 1]));
        assert_eq!(v.conjugate().conjugate(), v);
    }
}

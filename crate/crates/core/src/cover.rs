//! The surgery linking matrix of the cyclic branched cover, its inverse,
//! first homology, the torsion linking form and its metabolizers.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exact::{smith_normal_form, IntMatrix, Matrix, RatMatrix};
use crate::seifert::SeifertMatrix;

/// `A_r = [[0, 2^r], [1, 0]]`
pub fn a_block(r: u32) -> IntMatrix {
    Matrix::from_rows(vec![vec![BigInt::zero(), BigInt::one() << r], vec![BigInt::one(), BigInt::zero()]]).expect("2x2")
}

/// `c_r = 2^r − 1`
pub fn mersenne(r: u32) -> BigInt {
    (BigInt::one() << r) - 1
}

fn check_degree(m: u32) -> Result<()> {
    if m < 2 {
        return Err(Error::InvalidArgument(format!("cover degree must be at least 2, got {m}")));
    }
    if m > 62 {
        return Err(Error::InvalidArgument(format!("cover degree {m} too large")));
    }
    Ok(())
}

fn place_block<T: Clone>(target: &mut Matrix<T>, k: usize, l: usize, b: &Matrix<T>) {
    for r in 0..2 {
        for c in 0..2 {
            target.set(2 * k + r, 2 * l + c, b.get(r, c).clone());
        }
    }
}

/// Block tridiagonal: `3A₀` on the diagonal, `−A₁` above, `−A₁ᵀ` below.
pub fn build_p(m: u32) -> Result<IntMatrix> {
    check_degree(m)?;
    let n = (m - 1) as usize;
    let mut p = IntMatrix::zeros(2 * n, 2 * n);
    let diag = a_block(0).scale(&BigInt::from(3));
    let up = -&a_block(1);
    let down = up.transpose();
    for k in 0..n {
        place_block(&mut p, k, k, &diag);
        if k + 1 < n {
            place_block(&mut p, k, k + 1, &up);
            place_block(&mut p, k + 1, k, &down);
        }
    }
    Ok(p)
}

/// Block `(k, ℓ)`, `k ≥ ℓ` (1-based), is `c_ℓ c_{m−k} / (2^m − 1) · A_{k−ℓ}`; upper blocks are transposes.
pub fn closed_form_inverse(m: u32) -> Result<RatMatrix> {
    check_degree(m)?;
    let n = (m - 1) as usize;
    let q = BigRational::from_integer(mersenne(m));
    let mut out = RatMatrix::zeros(2 * n, 2 * n);
    for k in 1..=n {
        for l in 1..=k {
            let coeff = BigRational::from_integer(mersenne(l as u32) * mersenne(m - k as u32)) / &q;
            let b = a_block((k - l) as u32).to_rat().scale(&coeff);
            place_block(&mut out, k - 1, l - 1, &b);
            if k != l {
                place_block(&mut out, l - 1, k - 1, &b.transpose());
            }
        }
    }
    Ok(out)
}

/// `A_r² = 2^r I`, `A_r A₁ = 2A_{r−1}A₀ = 2A_{r−2}A₁ᵀ` and the transposed versions, for `r < m`.
pub fn block_identities(m: u32) -> bool {
    let two = BigInt::from(2);
    let a = |r: u32| a_block(r);
    let mul = |x: &IntMatrix, y: &IntMatrix| x.mul(y).expect("2x2");
    (0..m).all(|r| mul(&a(r), &a(r)) == IntMatrix::identity(2).scale(&(BigInt::one() << r)))
        && (1..m).all(|r| mul(&a(r), &a(1)) == mul(&a(r - 1), &a(0)).scale(&two))
        && (2..m).all(|r| mul(&a(r - 1), &a(0)) == mul(&a(r - 2), &a(1).transpose()))
        && (1..m).all(|r| mul(&a(r).transpose(), &a(1).transpose()) == mul(&a(r - 1).transpose(), &a(0)).scale(&two))
        && (2..m).all(|r| mul(&a(r - 1).transpose(), &a(0)) == mul(&a(r - 2).transpose(), &a(1)))
}

/// Whether `pinv · P = I` exactly, together with the block identities.
pub fn verify_inverse_with(m: u32, pinv: &RatMatrix) -> Result<bool> {
    let p = build_p(m)?.to_rat();
    let prod = pinv.mul(&p)?;
    Ok(prod == RatMatrix::identity(p.rows()) && block_identities(m))
}

pub fn verify_inverse(m: u32) -> Result<bool> {
    verify_inverse_with(m, &closed_form_inverse(m)?)
}

/// Everything about one cover degree.
#[derive(Clone, Debug)]
pub struct SurgeryLinkingData {
    pub m: u32,
    pub p: IntMatrix,
    pub pinv: RatMatrix,
}

impl SurgeryLinkingData {
    pub fn new(m: u32) -> Result<Self> {
        Ok(SurgeryLinkingData { m, p: build_p(m)?, pinv: closed_form_inverse(m)? })
    }

    /// `R(x_i, x_j)`, 1-based meridian indices.
    pub fn r(&self, i: usize, j: usize) -> &BigRational {
        self.pinv.get(i - 1, j - 1)
    }

    pub fn meridian_labels(&self) -> Vec<String> {
        (1..=self.p.rows()).map(|i| format!("x{i}")).collect()
    }
}

/// A finite abelian group `⊕ Z_{d_k}` with a `Q/Z`-valued symmetric form,
/// stored as integers `F` with `λ(g_k, g_l) = F[k][l] / modulus`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TorsionFormGroup {
    pub divisors: Vec<u64>,
    pub modulus: u64,
    pub form: Vec<Vec<u64>>,
    /// Coordinates of the distinguished classes, when known.
    pub x1: Option<Vec<u64>>,
    pub x2: Option<Vec<u64>>,
    /// `t` with `x₂ = g + t·x₁` for the raw generator `g`.
    pub x2_correction: Option<u64>,
}

impl TorsionFormGroup {
    /// A group from divisors and form values `λ(g_k, g_l)` as rationals.
    pub fn from_form(divisors: Vec<u64>, values: &[Vec<BigRational>]) -> Result<Self> {
        let modulus = divisors.iter().fold(1u64, |acc, &d| acc.lcm(&d));
        let k = divisors.len();
        if values.len() != k || values.iter().any(|r| r.len() != k) {
            return Err(Error::Shape("form size does not match divisors".into()));
        }
        let mut form = vec![vec![0; k]; k];
        for i in 0..k {
            for j in 0..k {
                if values[i][j] != values[j][i] {
                    return Err(Error::NotSymmetric);
                }
                let scaled = &values[i][j] * BigRational::from_integer(modulus.into());
                if !scaled.is_integer() {
                    return Err(Error::InvalidArgument(format!("form value {} not in (1/{modulus})Z", values[i][j])));
                }
                form[i][j] = scaled.to_integer().mod_floor(&BigInt::from(modulus)).to_u64().expect("reduced");
            }
        }
        Ok(TorsionFormGroup { divisors, modulus, form, x1: None, x2: None, x2_correction: None })
    }

    pub fn order(&self) -> u128 {
        self.divisors.iter().map(|&d| d as u128).product()
    }

    /// `λ(a, b)` as an integer mod `modulus`.
    pub fn pair(&self, a: &[u64], b: &[u64]) -> u64 {
        let n = self.modulus as u128;
        let mut s = 0u128;
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                s = (s + (x as u128 * y as u128 % n) * self.form[i][j] as u128) % n;
            }
        }
        s as u64
    }

    pub fn pair_value(&self, a: &[u64], b: &[u64]) -> BigRational {
        BigRational::new(self.pair(a, b).into(), self.modulus.into())
    }

    /// Form values on generators, reduced into `[0, 1)`.
    pub fn form_values(&self) -> Vec<Vec<BigRational>> {
        self.form.iter().map(|r| r.iter().map(|&v| BigRational::new(v.into(), self.modulus.into())).collect()).collect()
    }

    /// Order of an element.
    pub fn element_order(&self, x: &[u64]) -> u64 {
        x.iter().zip(&self.divisors).fold(1u64, |acc, (&c, &d)| acc.lcm(&(d / c.gcd(&d))))
    }

    fn is_square_zq(&self) -> Option<u64> {
        match self.divisors.as_slice() {
            [a, b] if a == b && *a > 1 && self.modulus == *a => Some(*a),
            _ => None,
        }
    }
}

/// A subgroup with `G = G^⊥`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Metabolizer {
    pub label: String,
    pub generators: Vec<Vec<u64>>,
    pub order: u64,
    pub contains_x1: bool,
    pub contains_x2: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct MetabolizerReport {
    pub metabolizers: Vec<Metabolizer>,
    pub subgroups_examined: u64,
    pub reason: Option<String>,
}

/// `H₁(Σ_m)` as the cokernel of `P`, with the form `−P⁻¹ mod Z` and the classes `x₁`, `x₂`.
pub fn homology(m: u32) -> Result<TorsionFormGroup> {
    let data = SurgeryLinkingData::new(m)?;
    let snf = smith_normal_form(&data.p);
    let q = mersenne(m);
    let mut expected = vec![BigInt::one(); data.p.rows() - 2];
    expected.extend([q.clone(), q.clone()]);
    if snf.diag != expected {
        return Err(Error::UnsupportedModuleShape(format!("elementary divisors {:?}", snf.diag)));
    }
    let n = data.p.rows();
    let qu = q.to_u64().expect("m <= 62");
    let gens: Vec<Vec<BigInt>> = (n - 2..n).map(|k| (0..n).map(|r| snf.left_inv.get(r, k).clone()).collect()).collect();
    let qr = BigRational::from_integer(q.clone());
    let lam = |a: &[BigInt], b: &[BigInt]| -> u64 {
        let mut s = BigRational::zero();
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                if !x.is_zero() && !y.is_zero() {
                    s += data.pinv.get(i, j) * BigRational::from_integer(x * y);
                }
            }
        }
        let scaled = -(s * &qr);
        debug_assert!(scaled.is_integer());
        scaled.to_integer().mod_floor(&q).to_u64().expect("reduced")
    };
    let form = vec![
        vec![lam(&gens[0], &gens[0]), lam(&gens[0], &gens[1])],
        vec![lam(&gens[1], &gens[0]), lam(&gens[1], &gens[1])],
    ];
    let reduce = |v: &BigInt| v.mod_floor(&q).to_u64().expect("reduced");
    // x₁ is the first meridian; its coordinates are the first column of `left`, last two rows.
    let x1: Vec<u64> = (n - 2..n).map(|r| reduce(snf.left.get(r, 0))).collect();
    let mut g = TorsionFormGroup {
        divisors: vec![qu, qu],
        modulus: qu,
        form,
        x1: Some(x1.clone()),
        x2: None,
        x2_correction: None,
    };
    let (x2, t) = complementary_isotropic(&g, &x1)?;
    g.x2 = Some(x2);
    g.x2_correction = Some(t);
    Ok(g)
}

/// A generator `y` with `{x₁, y}` a basis, corrected to `λ(y, y) = 0`.
fn complementary_isotropic(g: &TorsionFormGroup, x1: &[u64]) -> Result<(Vec<u64>, u64)> {
    let q = g.modulus;
    let qi = q as i128;
    for k in 0..2 {
        let mut e = vec![0u64; 2];
        e[k] = 1;
        // basis iff det [x1; e] is a unit mod q
        let det = if k == 0 { -(x1[1] as i128) } else { x1[0] as i128 };
        if det.rem_euclid(qi) == 0 || (det.rem_euclid(qi) as u64).gcd(&q) != 1 {
            continue;
        }
        let cross = g.pair(x1, &e);
        if cross.gcd(&q) != 1 || q.is_multiple_of(2) {
            continue;
        }
        // λ(e + t x₁, e + t x₁) = λ(e,e) + 2t λ(x₁,e)
        let inv = mod_inverse((2 * cross as u128 % q as u128) as u64, q).expect("unit");
        let t = ((q - g.pair(&e, &e) % q) as u128 * inv as u128 % q as u128) as u64;
        let y: Vec<u64> = (0..2).map(|i| ((e[i] as u128 + t as u128 * x1[i] as u128) % q as u128) as u64).collect();
        debug_assert_eq!(g.pair(&y, &y), 0);
        return Ok((y, t));
    }
    Err(Error::UnsupportedModuleShape("no complementary generator pairs invertibly with x1".into()))
}

fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    let e = (a as i128).extended_gcd(&(m as i128));
    (e.gcd == 1).then(|| e.x.rem_euclid(m as i128) as u64)
}

/// Elementary divisors of `V ⊗ C − Vᵀ ⊗ I`, `C` the companion matrix of `1 + t + … + t^{m−1}`.
pub fn homology_via_seifert(v: &SeifertMatrix, m: u32) -> Result<Vec<BigInt>> {
    check_degree(m)?;
    let k = (m - 1) as usize;
    let c = IntMatrix::from_fn(k, k, |r, col| {
        if col == k - 1 {
            -BigInt::one()
        } else if r == col + 1 {
            BigInt::one()
        } else {
            BigInt::zero()
        }
    });
    let vm = v.matrix();
    let pres = vm.kronecker(&c).sub(&vm.transpose().kronecker(&IntMatrix::identity(k)))?;
    Ok(smith_normal_form(&pres).diag.into_iter().map(|d| d.abs()).collect())
}

/// Elementary divisors of `P(m)`.
pub fn p_divisors(m: u32) -> Result<Vec<BigInt>> {
    Ok(smith_normal_form(&build_p(m)?).diag)
}

fn in_lattice(q: u64, (a, b, d): (u64, u64, u64), v: &[u64]) -> bool {
    // lattice rows (a, b), (0, d) taken mod q, with a·d = q
    if !v[0].is_multiple_of(a) {
        return false;
    }
    let k = (v[0] / a) as u128;
    let r = (v[1] as u128 + q as u128 - k * b as u128 % q as u128) % q as u128;
    r.is_multiple_of(d as u128)
}

/// `|{x : λ(x, r1) = λ(x, r2) = 0}|` from the Smith form of a 2×2 integer matrix.
fn perp_order(g: &TorsionFormGroup, r1: &[u64], r2: &[u64]) -> u64 {
    let q = g.modulus;
    let col = |r: &[u64]| -> [i128; 2] {
        let mut out = [0i128; 2];
        for (i, o) in out.iter_mut().enumerate() {
            let e: Vec<u64> = (0..2).map(|k| (k == i) as u64).collect();
            *o = g.pair(&e, r) as i128;
        }
        out
    };
    let (c1, c2) = (col(r1), col(r2));
    let s1 = [c1[0], c1[1], c2[0], c2[1]].iter().fold(0i128, |acc, x| acc.gcd(x));
    let det = c1[0] * c2[1] - c1[1] * c2[0];
    let qi = q as i128;
    let g1 = if s1 == 0 { qi } else { s1.gcd(&qi) };
    let g2 = if s1 == 0 { qi } else { (det / s1).gcd(&qi) };
    let g2 = if g2 == 0 { qi } else { g2 };
    (g1 * g2) as u64
}

/// Metabolizers of `Z_q ⊕ Z_q` by the index-`q` lattices `⟨(a, b), (0, d)⟩`, `ad = q`, `0 ≤ b < d`;
/// other shapes fall back to brute force when small.
pub fn metabolizers(g: &TorsionFormGroup) -> Result<MetabolizerReport> {
    let order = g.order();
    let root = (order as f64).sqrt().round() as u128;
    if root * root != order {
        return Ok(MetabolizerReport {
            metabolizers: vec![],
            subgroups_examined: 0,
            reason: Some(format!("group order {order} is not a perfect square")),
        });
    }
    let Some(q) = g.is_square_zq() else {
        if order <= 1_000_000 {
            return metabolizers_brute_force(g);
        }
        return Err(Error::UnsupportedModuleShape(format!("divisors {:?}", g.divisors)));
    };
    let mut out = Vec::new();
    let mut examined = 0;
    for a in (1..=q).filter(|a| q % a == 0) {
        let d = q / a;
        for b in 0..d {
            examined += 1;
            let r1 = vec![a % q, b];
            let r2 = vec![0, d % q];
            let isotropic = g.pair(&r1, &r1) == 0 && g.pair(&r1, &r2) == 0 && g.pair(&r2, &r2) == 0;
            if isotropic && perp_order(g, &r1, &r2) == q {
                let contains = |x: &Option<Vec<u64>>| x.as_ref().is_some_and(|x| in_lattice(q, (a, b, d), x));
                out.push(labeled(g, vec![r1, r2], q, contains(&g.x1), contains(&g.x2)));
            }
        }
    }
    out.sort();
    Ok(MetabolizerReport { metabolizers: out, subgroups_examined: examined, reason: None })
}

fn labeled(
    g: &TorsionFormGroup,
    generators: Vec<Vec<u64>>,
    order: u64,
    contains_x1: bool,
    contains_x2: bool,
) -> Metabolizer {
    let cyclic_by =
        |x: &Option<Vec<u64>>, inside: bool| inside && x.as_ref().is_some_and(|x| g.element_order(x) == order);
    let label = if cyclic_by(&g.x1, contains_x1) {
        "<x1>".to_string()
    } else if cyclic_by(&g.x2, contains_x2) {
        "<x2>".to_string()
    } else {
        let parts: Vec<String> = generators.iter().map(|v| format!("{v:?}")).collect();
        format!("<{}>", parts.join(", "))
    };
    Metabolizer {
        label,
        generators: generators.into_iter().filter(|v| v.iter().any(|&c| c != 0)).collect(),
        order,
        contains_x1,
        contains_x2,
    }
}

/// All subgroups as sums of two cyclic subgroups, filtered by `G = G^⊥` element by element.
/// Only for groups of rank at most two.
pub fn metabolizers_brute_force(g: &TorsionFormGroup) -> Result<MetabolizerReport> {
    if g.divisors.len() > 2 {
        return Err(Error::UnsupportedModuleShape("brute force needs rank at most 2".into()));
    }
    let divs = g.divisors.clone();
    let elements: Vec<Vec<u64>> = match divs.as_slice() {
        [] => vec![vec![]],
        [d] => (0..*d).map(|x| vec![x]).collect(),
        [d, e] => (0..*d).flat_map(|x| (0..*e).map(move |y| vec![x, y])).collect(),
        _ => unreachable!(),
    };
    let add =
        |x: &[u64], y: &[u64]| -> Vec<u64> { x.iter().zip(y).zip(&divs).map(|((a, b), d)| (a + b) % d).collect() };
    let span = |x: &[u64]| -> BTreeSet<Vec<u64>> {
        let mut set = BTreeSet::new();
        let mut cur = vec![0; x.len()];
        while set.insert(cur.clone()) {
            cur = add(&cur, x);
        }
        set
    };
    let cyclic: BTreeSet<BTreeSet<Vec<u64>>> = elements.iter().map(|x| span(x)).collect();
    let mut subgroups: BTreeSet<BTreeSet<Vec<u64>>> = BTreeSet::new();
    let cyc: Vec<&BTreeSet<Vec<u64>>> = cyclic.iter().collect();
    for (i, a) in cyc.iter().enumerate() {
        for b in &cyc[i..] {
            let mut s = BTreeSet::new();
            for x in a.iter() {
                for y in b.iter() {
                    s.insert(add(x, y));
                }
            }
            subgroups.insert(s);
        }
    }
    let order = g.order();
    let mut out = Vec::new();
    for s in &subgroups {
        let size = s.len() as u128;
        if size * size != order {
            continue;
        }
        let isotropic = s.iter().all(|x| s.iter().all(|y| g.pair(x, y) == 0));
        let perp = elements.iter().filter(|x| s.iter().all(|y| g.pair(x, y) == 0)).count() as u128;
        if isotropic && perp == size {
            let contains = |x: &Option<Vec<u64>>| x.as_ref().is_some_and(|x| s.contains(x));
            let gens = minimal_generators(s, &span);
            out.push(labeled(g, gens, size as u64, contains(&g.x1), contains(&g.x2)));
        }
    }
    out.sort();
    Ok(MetabolizerReport { metabolizers: out, subgroups_examined: subgroups.len() as u64, reason: None })
}

fn minimal_generators(s: &BTreeSet<Vec<u64>>, span: &dyn Fn(&[u64]) -> BTreeSet<Vec<u64>>) -> Vec<Vec<u64>> {
    if let Some(x) = s.iter().find(|x| span(x).len() == s.len()) {
        return vec![x.clone()];
    }
    // rank two: the first element and one outside its span
    let x = s.iter().max_by_key(|x| span(x).len()).expect("nonempty").clone();
    let sx = span(&x);
    let y = s.iter().find(|y| !sx.contains(*y)).expect("rank two").clone();
    vec![x, y]
}

/// Subgroup sets as sorted element lists, for comparing enumerators.
pub fn subgroup_elements(g: &TorsionFormGroup, generators: &[Vec<u64>]) -> BTreeSet<Vec<u64>> {
    let mut set: BTreeSet<Vec<u64>> = BTreeSet::new();
    set.insert(vec![0; g.divisors.len()]);
    loop {
        let mut next = set.clone();
        for x in &set {
            for gen in generators {
                next.insert(x.iter().zip(gen).zip(&g.divisors).map(|((a, b), d)| (a + b) % d).collect());
            }
        }
        if next.len() == set.len() {
            return set;
        }
        set = next;
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CoprimeCertificate {
    pub p: u64,
    pub m: u32,
    pub gcd: u64,
    pub coprime: bool,
    pub outside_hypothesis: Option<String>,
}

/// `gcd(p, 2^m − 1)` with flags when `p`, `m` fall outside "primes with `p ≤ m`".
pub fn mersenne_coprime(p: u64, m: u32) -> Result<CoprimeCertificate> {
    check_degree(m)?;
    let q = mersenne(m);
    let gcd = BigInt::from(p).gcd(&q).to_u64().expect("divides p");
    let mut flags = Vec::new();
    if !crate::family::is_prime(p) {
        flags.push(format!("{p} is not prime"));
    }
    if !crate::family::is_prime(m as u64) {
        flags.push(format!("{m} is not prime"));
    }
    if p > m as u64 {
        flags.push(format!("{p} > {m}"));
    }
    let outside_hypothesis = (!flags.is_empty()).then(|| format!("outside the coprimality hypothesis: {}", flags.join(", ")));
    Ok(CoprimeCertificate { p, m, gcd, coprime: gcd == 1, outside_hypothesis })
}

/// `2 · 2^{m−1} ≡ 1` modulo `2^m − 1`.
pub fn spinc_offset_check(m: u32) -> Result<bool> {
    spinc_offset_check_mod(m, &mersenne(m))
}

/// The same congruence against an arbitrary modulus.
pub fn spinc_offset_check_mod(m: u32, modulus: &BigInt) -> Result<bool> {
    check_degree(m)?;
    let lhs = (BigInt::one() << m).mod_floor(modulus);
    Ok(lhs == BigInt::one().mod_floor(modulus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::rat;

    #[test]
    fn small_matrices() {
        assert_eq!(build_p(2).unwrap(), IntMatrix::from_i64_rows(&[&[0, 3], &[3, 0]]));
        assert_eq!(build_p(3).unwrap().det().unwrap().abs(), BigInt::from(49));
        let inv = closed_form_inverse(2).unwrap();
        assert_eq!(inv, RatMatrix::from_rows(vec![vec![rat(0, 1), rat(1, 3)], vec![rat(1, 3), rat(0, 1)]]).unwrap());
        assert!(build_p(1).is_err());
    }

    #[test]
    fn inverse_and_diagonal() {
        for m in 2..=12 {
            assert!(verify_inverse(m).unwrap(), "m = {m}");
            let inv = closed_form_inverse(m).unwrap();
            assert!((0..inv.rows()).all(|i| inv.get(i, i).is_zero()));
            assert!(inv.scale(&BigRational::from_integer(mersenne(m))).to_int().is_some());
            assert!(build_p(m).unwrap().is_symmetric());
        }
        let mut bad = closed_form_inverse(4).unwrap();
        let v = bad.get(0, 1) + rat(1, 7);
        bad.set(0, 1, v);
        assert!(!verify_inverse_with(4, &bad).unwrap());
        assert_eq!(a_block(3).mul(&a_block(3)).unwrap(), IntMatrix::identity(2).scale(&BigInt::from(8)));
    }

    #[test]
    fn homology_small() {
        for m in 2..=7 {
            let g = homology(m).unwrap();
            let q = mersenne(m).to_u64().unwrap();
            assert_eq!(g.divisors, vec![q, q]);
            let (x1, x2) = (g.x1.clone().unwrap(), g.x2.clone().unwrap());
            assert_eq!(g.pair(&x1, &x1), 0);
            assert_eq!(g.pair(&x2, &x2), 0);
            assert_eq!(g.pair(&x1, &x2).gcd(&q), 1);
            let sv = homology_via_seifert(&SeifertMatrix::from_rows(&[&[0, 2], &[1, 0]]).unwrap(), m).unwrap();
            assert_eq!(sv, p_divisors(m).unwrap());
        }
    }

    #[test]
    fn metabolizers_m3() {
        let g = homology(3).unwrap();
        let r = metabolizers(&g).unwrap();
        assert_eq!(r.subgroups_examined, 8);
        let labels: Vec<&str> = r.metabolizers.iter().map(|m| m.label.as_str()).collect();
        assert_eq!(labels, vec!["<x1>", "<x2>"]);
        let brute = metabolizers_brute_force(&g).unwrap();
        assert_eq!(brute.metabolizers.len(), 2);
    }

    #[test]
    fn abstract_groups() {
        let hyper =
            TorsionFormGroup::from_form(vec![3, 3], &[vec![rat(0, 1), rat(1, 3)], vec![rat(1, 3), rat(0, 1)]]).unwrap();
        assert_eq!(metabolizers(&hyper).unwrap().metabolizers.len(), 2);
        assert_eq!(metabolizers_brute_force(&hyper).unwrap().subgroups_examined, 6);
        let z2 = TorsionFormGroup::from_form(vec![2], &[vec![rat(1, 2)]]).unwrap();
        let r = metabolizers(&z2).unwrap();
        assert!(r.metabolizers.is_empty() && r.reason.is_some());
    }

    #[test]
    fn arithmetic_checks() {
        let c = mersenne_coprime(3, 5).unwrap();
        assert!(c.coprime && c.outside_hypothesis.is_none());
        assert!(mersenne_coprime(2, 7).unwrap().coprime);
        let c = mersenne_coprime(7, 3).unwrap();
        assert_eq!(c.gcd, 7);
        assert!(!c.coprime && c.outside_hypothesis.is_some());
        assert!(spinc_offset_check(3).unwrap() && spinc_offset_check(11).unwrap());
        assert!(!spinc_offset_check_mod(3, &(BigInt::one() << 3)).unwrap());
    }
}

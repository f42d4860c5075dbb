//! Factorization of small-degree polynomials over Q.
//!
//! Squarefree decomposition, then rational roots, then Kronecker's method for
//! what remains. Adequate for Alexander polynomials of low genus.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{IntPoly, RatPoly};

/// Monic irreducible factors with multiplicities, sorted by degree then coefficients.
pub fn factor_over_q(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    if p.degree().unwrap_or(0) == 0 {
        return out;
    }
    for (f, mult) in squarefree_decomposition(p) {
        for g in factor_squarefree(&f) {
            out.push((g, mult));
        }
    }
    out.sort_by(|a, b| {
        a.0.degree().cmp(&b.0.degree()).then_with(|| a.0.coeffs().iter().rev().cmp(b.0.coeffs().iter().rev()))
    });
    out
}

/// Yun's algorithm: `p = c · Π f_i^i` with each `f_i` monic squarefree.
pub fn squarefree_decomposition(p: &RatPoly) -> Vec<(RatPoly, u32)> {
    let mut out = Vec::new();
    let dp = p.derivative();
    let mut a = p.gcd(&dp);
    let mut b = p.exact_div(&a);
    let mut c = dp.exact_div(&a);
    let mut d = &c - &b.derivative();
    let mut i = 1;
    while b.degree().unwrap_or(0) > 0 {
        a = b.gcd(&d);
        if a.degree().unwrap_or(0) > 0 {
            out.push((a.monic(), i));
        }
        b = b.exact_div(&a);
        c = d.exact_div(&a);
        d = &c - &b.derivative();
        i += 1;
    }
    out
}

fn factor_squarefree(f: &RatPoly) -> Vec<RatPoly> {
    let mut rest = f.primitive_int();
    let mut out = Vec::new();
    for r in rational_roots(&rest) {
        let lin = RatPoly::new(vec![-r, BigRational::one()]);
        out.push(lin.clone());
        rest = rest.to_rat().exact_div(&lin).primitive_int();
    }
    let mut queue = vec![rest];
    while let Some(g) = queue.pop() {
        let deg = g.degree().unwrap_or(0);
        if deg == 0 {
            continue;
        }
        match kronecker_split(&g) {
            Some(h) => {
                let q = g.to_rat().exact_div(&h.to_rat()).primitive_int();
                queue.push(h);
                queue.push(q);
            }
            None => out.push(g.to_rat().monic()),
        }
    }
    out
}

/// Rational roots of a primitive integer polynomial.
pub fn rational_roots(p: &IntPoly) -> Vec<BigRational> {
    let c = p.coeffs();
    if c.is_empty() {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut q = p.clone();
    if c[0].is_zero() {
        out.push(BigRational::zero());
        let k = c.iter().take_while(|x| x.is_zero()).count();
        q = IntPoly::new(c[k..].to_vec());
    }
    let lead = q.coeffs().last().unwrap().abs();
    let cst = q.coeffs()[0].abs();
    if q.degree().unwrap_or(0) == 0 {
        return out;
    }
    for a in divisors(&cst) {
        for b in divisors(&lead) {
            if a.gcd(&b) != BigInt::one() {
                continue;
            }
            for s in [a.clone(), -a.clone()] {
                let r = BigRational::new(s, b.clone());
                if q.eval(&r).is_zero() {
                    out.push(r);
                }
            }
        }
    }
    out.sort();
    out
}

/// Positive divisors of a nonzero integer.
fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = BigInt::one();
    while &d * &d <= n {
        if (&n % &d).is_zero() {
            small.push(d.clone());
            let e = &n / &d;
            if e != d {
                large.push(e);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// Find a proper factor of degree at most `deg/2`, or `None` if irreducible.
fn kronecker_split(p: &IntPoly) -> Option<IntPoly> {
    let deg = p.degree()?;
    if deg < 2 {
        return None;
    }
    for k in 1..=deg / 2 {
        // k + 1 integer points with nonzero values, smallest values first
        let mut pts: Vec<(BigInt, BigInt)> = (-20i64..=20)
            .map(|x| (BigInt::from(x), p.eval_int(&BigInt::from(x))))
            .filter(|(_, v)| !v.is_zero())
            .collect();
        pts.sort_by(|a, b| a.1.abs().cmp(&b.1.abs()).then(a.0.abs().cmp(&b.0.abs())));
        pts.truncate(k + 1);
        let choices: Vec<Vec<BigInt>> =
            pts.iter().map(|(_, v)| divisors(v).into_iter().flat_map(|d| [d.clone(), -d]).collect()).collect();
        let mut idx = vec![0usize; k + 1];
        loop {
            // Fix the sign of the first value to avoid testing h and -h.
            if choices[0][idx[0]].is_positive() {
                let vals: Vec<BigRational> =
                    idx.iter().zip(&choices).map(|(&i, c)| BigRational::from_integer(c[i].clone())).collect();
                let xs: Vec<BigRational> = pts.iter().map(|(x, _)| BigRational::from_integer(x.clone())).collect();
                let h = interpolate(&xs, &vals);
                if h.degree() == Some(k) && h.coeffs().iter().all(|c| c.is_integer()) && h.divides(&p.to_rat()) {
                    return Some(h.primitive_int());
                }
            }
            // odometer
            let mut j = 0;
            loop {
                if j == idx.len() {
                    break;
                }
                idx[j] += 1;
                if idx[j] < choices[j].len() {
                    break;
                }
                idx[j] = 0;
                j += 1;
            }
            if j == idx.len() {
                break;
            }
        }
    }
    None
}

/// Lagrange interpolation through `(xs[i], ys[i])`.
pub fn interpolate(xs: &[BigRational], ys: &[BigRational]) -> RatPoly {
    let mut acc = RatPoly::zero();
    for (i, (xi, yi)) in xs.iter().zip(ys).enumerate() {
        let mut basis = RatPoly::constant(yi.clone());
        for (j, xj) in xs.iter().enumerate() {
            if i == j {
                continue;
            }
            let lin = RatPoly::new(vec![-xj.clone(), BigRational::one()]);
            basis = (&basis * &lin).scale(&(xi - xj).recip());
        }
        acc = &acc + &basis;
    }
    acc
}

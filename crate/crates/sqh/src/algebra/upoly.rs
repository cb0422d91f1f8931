//! Dense univariate polynomials over Q, used to implement cyclotomic fields.

use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients in ascending order of degree, trailing zeros removed.
pub(crate) type UPoly = Vec<BigRational>;

pub(crate) fn trim(p: &mut UPoly) {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
}

pub(crate) fn degree(p: &UPoly) -> Option<usize> {
    if p.is_empty() {
        None
    } else {
        Some(p.len() - 1)
    }
}

pub(crate) fn mul(a: &UPoly, b: &UPoly) -> UPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &UPoly, b: &UPoly) -> UPoly {
    let n = a.len().max(b.len());
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let x = a.get(i).cloned().unwrap_or_else(BigRational::zero);
        let y = b.get(i).cloned().unwrap_or_else(BigRational::zero);
        out.push(x - y);
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by a nonzero `b`.
pub(crate) fn divrem(a: &UPoly, b: &UPoly) -> (UPoly, UPoly) {
    let db = degree(b).expect("division by the zero polynomial");
    let lead = b[db].clone();
    let mut rem = a.clone();
    trim(&mut rem);
    let mut quot = vec![BigRational::zero(); rem.len().saturating_sub(db).max(1)];
    while let Some(dr) = degree(&rem) {
        if dr < db {
            break;
        }
        let c = &rem[dr] / &lead;
        let shift = dr - db;
        for (j, bj) in b.iter().enumerate() {
            if !bj.is_zero() {
                rem[shift + j] -= &c * bj;
            }
        }
        quot[shift] += c;
        trim(&mut rem);
    }
    trim(&mut quot);
    (quot, rem)
}

pub(crate) fn rem(a: &UPoly, b: &UPoly) -> UPoly {
    divrem(a, b).1
}

/// Inverse of `a` modulo `m`, assuming they are coprime.
pub(crate) fn inverse_mod(a: &UPoly, m: &UPoly) -> Option<UPoly> {
    // extended Euclid keeping only the coefficient of `a`
    let mut r0 = m.clone();
    let mut r1 = rem(a, m);
    let mut s0: UPoly = Vec::new();
    let mut s1: UPoly = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1);
        let s = sub(&s0, &mul(&q, &s1));
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if degree(&r0) != Some(0) {
        return None;
    }
    let c = r0[0].clone();
    let mut inv: UPoly = s0.into_iter().map(|x| x / &c).collect();
    trim(&mut inv);
    Some(rem(&inv, m))
}

/// The n-th cyclotomic polynomial, monic with integer coefficients.
pub(crate) fn cyclotomic(n: u32) -> UPoly {
    assert!(n >= 1);
    let mut p: UPoly = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            let (q, r) = divrem(&p, &cyclotomic(d));
            debug_assert!(r.is_empty());
            p = q;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn ints(p: &UPoly) -> Vec<BigInt> {
        p.iter().map(|c| c.to_integer()).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        let b = |v: &[i64]| v.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>();
        assert_eq!(ints(&cyclotomic(1)), b(&[-1, 1]));
        assert_eq!(ints(&cyclotomic(3)), b(&[1, 1, 1]));
        assert_eq!(ints(&cyclotomic(4)), b(&[1, 0, 1]));
        assert_eq!(ints(&cyclotomic(6)), b(&[1, -1, 1]));
        assert_eq!(cyclotomic(21).len(), 13);
    }

    #[test]
    fn inverse_modulo_cyclotomic() {
        let m = cyclotomic(7);
        let a: UPoly = vec![BigRational::from_integer(2.into()), BigRational::one()];
        let inv = inverse_mod(&a, &m).unwrap();
        let prod = rem(&mul(&a, &inv), &m);
        assert_eq!(prod, vec![BigRational::one()]);
    }
}

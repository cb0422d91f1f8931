//! Exact scalars: rationals and elements of cyclotomic fields Q(ζ_N).
//!
//! A cyclotomic element is stored as a polynomial of degree < φ(N) in ζ_N,
//! reduced modulo the N-th cyclotomic polynomial. Elements that reduce to a
//! constant are always demoted to [`Scalar::Rational`], so rationality is
//! decidable by inspecting the variant.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::upoly::{self, UPoly};

/// An exact scalar.
#[derive(Clone, Debug)]
pub enum Scalar {
    Rational(BigRational),
    Cyclotomic(CyclotomicElement),
}

/// A non-rational element of Q(ζ_N).
#[derive(Clone, Debug)]
pub struct CyclotomicElement {
    conductor: u32,
    coeffs: Vec<BigRational>,
}

fn modulus(n: u32) -> Arc<UPoly> {
    static CACHE: OnceLock<Mutex<HashMap<u32, Arc<UPoly>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(p) = cache.lock().expect("cyclotomic cache poisoned").get(&n) {
        return p.clone();
    }
    let p = Arc::new(upoly::cyclotomic(n));
    cache
        .lock()
        .expect("cyclotomic cache poisoned")
        .insert(n, p.clone());
    p
}

/// Euler's totient.
pub fn totient(n: u32) -> u32 {
    let mut result = n;
    let mut m = n;
    let mut p = 2;
    while p * p <= m {
        if m % p == 0 {
            while m % p == 0 {
                m /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if m > 1 {
        result -= result / m;
    }
    result
}

impl CyclotomicElement {
    pub fn conductor(&self) -> u32 {
        self.conductor
    }

    /// Coefficients of 1, ζ, ζ², … (length ≤ φ(N)).
    pub fn coefficients(&self) -> &[BigRational] {
        &self.coeffs
    }
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Scalar::Rational(BigRational::one())
    }

    pub fn from_int(n: i64) -> Self {
        Scalar::Rational(BigRational::from_integer(BigInt::from(n)))
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        assert!(den != 0, "zero denominator");
        Scalar::Rational(BigRational::new(BigInt::from(num), BigInt::from(den)))
    }

    pub fn from_rational(q: BigRational) -> Self {
        Scalar::Rational(q)
    }

    /// Builds the element Σ coeffs[j]·ζ_N^j, reducing modulo Φ_N.
    pub fn from_cyclotomic_coeffs(conductor: u32, coeffs: Vec<BigRational>) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let mut p = coeffs;
        upoly::trim(&mut p);
        let p = upoly::rem(&p, &modulus(conductor));
        Self::from_reduced(conductor, p)
    }

    fn from_reduced(conductor: u32, mut p: UPoly) -> Self {
        upoly::trim(&mut p);
        match p.len() {
            0 => Scalar::zero(),
            1 => Scalar::Rational(p.pop().expect("length checked")),
            _ => Scalar::Cyclotomic(CyclotomicElement {
                conductor,
                coeffs: p,
            }),
        }
    }

    /// ζ_N^k with ζ_N = e^{2πi/N}.
    pub fn root_of_unity(conductor: u32, k: i64) -> Self {
        assert!(conductor >= 1, "conductor must be positive");
        let e = k.rem_euclid(conductor as i64) as usize;
        let mut p = vec![BigRational::zero(); e + 1];
        p[e] = BigRational::one();
        Self::from_cyclotomic_coeffs(conductor, p)
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_zero())
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Scalar::Rational(q) if q.is_one())
    }

    pub fn as_rational(&self) -> Option<&BigRational> {
        match self {
            Scalar::Rational(q) => Some(q),
            Scalar::Cyclotomic(_) => None,
        }
    }

    /// Conductor of the field the representative lives in (1 for rationals).
    pub fn conductor(&self) -> u32 {
        match self {
            Scalar::Rational(_) => 1,
            Scalar::Cyclotomic(c) => c.conductor,
        }
    }

    /// Coefficient vector in Q(ζ_N) for a multiple `n` of the current conductor.
    pub fn lift(&self, n: u32) -> UPoly {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    Vec::new()
                } else {
                    vec![q.clone()]
                }
            }
            Scalar::Cyclotomic(c) => {
                assert!(n % c.conductor == 0, "conductor {} does not divide {n}", c.conductor);
                let step = (n / c.conductor) as usize;
                if step == 1 {
                    return c.coeffs.clone();
                }
                let mut p = vec![BigRational::zero(); (c.coeffs.len() - 1) * step + 1];
                for (j, a) in c.coeffs.iter().enumerate() {
                    p[j * step] = a.clone();
                }
                upoly::rem(&p, &modulus(n))
            }
        }
    }

    fn common_conductor(&self, other: &Scalar) -> u32 {
        let a = self.conductor();
        let b = other.conductor();
        a.lcm(&b)
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inverse(&self) -> Option<Scalar> {
        match self {
            Scalar::Rational(q) => {
                if q.is_zero() {
                    None
                } else {
                    Some(Scalar::Rational(q.recip()))
                }
            }
            Scalar::Cyclotomic(c) => {
                let inv = upoly::inverse_mod(&c.coeffs, &modulus(c.conductor))?;
                Some(Self::from_reduced(c.conductor, inv))
            }
        }
    }

    pub fn pow(&self, e: i64) -> Scalar {
        if e < 0 {
            return self
                .inverse()
                .expect("negative power of zero")
                .pow(-e);
        }
        let mut result = Scalar::one();
        let mut base = self.clone();
        let mut e = e as u64;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Rewrites the representative over Q(ζ_n); `n` must be a multiple of the conductor.
    pub fn in_conductor(&self, n: u32) -> Scalar {
        match self {
            Scalar::Rational(_) => self.clone(),
            Scalar::Cyclotomic(_) => Self::from_reduced(n, self.lift(n)),
        }
    }

    /// Canonical text over a fixed conductor; equal scalars give equal keys.
    pub fn key_in(&self, n: u32) -> String {
        self.in_conductor(n).to_string()
    }

    /// Sign of a rational scalar; `None` for cyclotomic ones.
    pub fn rational_signum(&self) -> Option<i32> {
        self.as_rational().map(|q| {
            if q.is_zero() {
                0
            } else if q.is_positive() {
                1
            } else {
                -1
            }
        })
    }

    pub fn to_i64(&self) -> Option<i64> {
        let q = self.as_rational()?;
        if q.is_integer() {
            q.to_integer().to_i64()
        } else {
            None
        }
    }
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Scalar::Rational(a), Scalar::Rational(b)) => a == b,
            (Scalar::Rational(_), Scalar::Cyclotomic(_)) | (Scalar::Cyclotomic(_), Scalar::Rational(_)) => false,
            (Scalar::Cyclotomic(a), Scalar::Cyclotomic(b)) => {
                if a.conductor == b.conductor {
                    a.coeffs == b.coeffs
                } else {
                    let n = self.common_conductor(other);
                    self.lift(n) == other.lift(n)
                }
            }
        }
    }
}

impl Eq for Scalar {}

impl From<i64> for Scalar {
    fn from(n: i64) -> Self {
        Scalar::from_int(n)
    }
}

impl From<BigRational> for Scalar {
    fn from(q: BigRational) -> Self {
        Scalar::Rational(q)
    }
}

fn combine(a: &Scalar, b: &Scalar, f: impl Fn(&UPoly, &UPoly, &UPoly) -> UPoly) -> Scalar {
    let n = a.common_conductor(b);
    let m = modulus(n);
    let p = f(&a.lift(n), &b.lift(n), &m);
    Scalar::from_reduced(n, p)
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a + b),
            _ => combine(self, rhs, |x, y, _| {
                let mut out = x.clone();
                if out.len() < y.len() {
                    out.resize(y.len(), BigRational::zero());
                }
                for (i, c) in y.iter().enumerate() {
                    out[i] += c;
                }
                out
            }),
        }
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a - b),
            _ => combine(self, rhs, |x, y, _| upoly::sub(x, y)),
        }
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        match (self, rhs) {
            (Scalar::Rational(a), Scalar::Rational(b)) => Scalar::Rational(a * b),
            (Scalar::Rational(a), Scalar::Cyclotomic(c)) | (Scalar::Cyclotomic(c), Scalar::Rational(a)) => {
                if a.is_zero() {
                    Scalar::zero()
                } else {
                    Scalar::Cyclotomic(CyclotomicElement {
                        conductor: c.conductor,
                        coeffs: c.coeffs.iter().map(|x| x * a).collect(),
                    })
                }
            }
            _ => combine(self, rhs, |x, y, m| upoly::rem(&upoly::mul(x, y), m)),
        }
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        match self {
            Scalar::Rational(a) => Scalar::Rational(-a),
            Scalar::Cyclotomic(c) => Scalar::Cyclotomic(CyclotomicElement {
                conductor: c.conductor,
                coeffs: c.coeffs.iter().map(|x| -x).collect(),
            }),
        }
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

macro_rules! owned_binop {
    ($tr:ident, $m:ident) => {
        impl $tr<Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: Scalar) -> Scalar {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Scalar> for Scalar {
            type Output = Scalar;
            fn $m(self, rhs: &'a Scalar) -> Scalar {
                (&self).$m(rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl AddAssign<&Scalar> for Scalar {
    fn add_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a += b;
            return;
        }
        *self = &*self + rhs;
    }
}

impl SubAssign<&Scalar> for Scalar {
    fn sub_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a -= b;
            return;
        }
        *self = &*self - rhs;
    }
}

impl MulAssign<&Scalar> for Scalar {
    fn mul_assign(&mut self, rhs: &Scalar) {
        if let (Scalar::Rational(a), Scalar::Rational(b)) = (&mut *self, rhs) {
            *a *= b;
            return;
        }
        *self = &*self * rhs;
    }
}

fn fmt_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Scalar::Rational(q) => write!(f, "{}", fmt_rational(q)),
            Scalar::Cyclotomic(c) => {
                let mut first = true;
                for (j, a) in c.coeffs.iter().enumerate() {
                    if a.is_zero() {
                        continue;
                    }
                    let neg = a.is_negative();
                    let abs = a.abs();
                    if first {
                        if neg {
                            write!(f, "-")?;
                        }
                    } else {
                        write!(f, "{}", if neg { "-" } else { "+" })?;
                    }
                    first = false;
                    if j == 0 {
                        write!(f, "{}", fmt_rational(&abs))?;
                        continue;
                    }
                    if !abs.is_one() {
                        write!(f, "{}*", fmt_rational(&abs))?;
                    }
                    write!(f, "z{}", c.conductor)?;
                    if j > 1 {
                        write!(f, "^{j}")?;
                    }
                }
                Ok(())
            }
        }
    }
}

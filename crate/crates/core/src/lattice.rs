//! Integer and rational foundations shared by every other module.
//!
//! All lattice arithmetic is done on [`Int`] (`i128`). The workspace builds
//! every profile with overflow checks enabled, so an out-of-range value
//! panics instead of wrapping.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Signed lattice integer.
pub type Int = i128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumberError {
    #[error("negative value {0} is not a natural number")]
    Negative(Int),
    #[error("cannot parse rational from {0:?}")]
    BadRational(String),
    #[error("zero denominator")]
    ZeroDenominator,
    #[error("rational {0} does not fit in a 128-bit integer")]
    TooLarge(String),
}

/// A non-negative [`Int`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Nat(Int);

impl Nat {
    pub const ZERO: Nat = Nat(0);

    pub fn new(value: Int) -> Result<Self, NumberError> {
        if value < 0 {
            Err(NumberError::Negative(value))
        } else {
            Ok(Nat(value))
        }
    }

    pub fn get(self) -> Int {
        self.0
    }
}

impl TryFrom<Int> for Nat {
    type Error = NumberError;
    fn try_from(value: Int) -> Result<Self, Self::Error> {
        Nat::new(value)
    }
}

impl From<Nat> for Int {
    fn from(n: Nat) -> Int {
        n.0
    }
}

impl fmt::Display for Nat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Exact rational number, always held in canonical form
/// (positive denominator, numerator and denominator coprime).
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rational(BigRational);

impl Rational {
    pub fn zero() -> Self {
        Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Rational(BigRational::one())
    }

    pub fn from_int(v: Int) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    /// `num / den`, reduced. Fails on a zero denominator.
    pub fn new(num: Int, den: Int) -> Result<Self, NumberError> {
        if den == 0 {
            return Err(NumberError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(BigInt::from(num), BigInt::from(den))))
    }

    pub fn from_big(num: BigInt, den: BigInt) -> Result<Self, NumberError> {
        if den.is_zero() {
            return Err(NumberError::ZeroDenominator);
        }
        Ok(Rational(BigRational::new(num, den)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Rational {
        Rational(self.0.abs())
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn recip(&self) -> Option<Rational> {
        if self.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }

    /// The value as an [`Int`] when it is an integer that fits.
    pub fn to_int(&self) -> Option<Int> {
        if self.0.is_integer() {
            self.0.numer().to_i128()
        } else {
            None
        }
    }

    /// Lossy decimal value, for display and tolerance comparisons only.
    pub fn to_f64(&self) -> f64 {
        self.0.to_f64().unwrap_or(f64::NAN)
    }

    /// Rebuilds the canonical form from the current numerator and
    /// denominator. Idempotent, since values are always kept canonical.
    pub fn normalized(&self) -> Rational {
        Rational(BigRational::new(self.0.numer().clone(), self.0.denom().clone()))
    }

    pub fn as_big(&self) -> &BigRational {
        &self.0
    }
}

impl From<BigRational> for Rational {
    fn from(r: BigRational) -> Self {
        Rational(r)
    }
}

impl From<Int> for Rational {
    fn from(v: Int) -> Self {
        Rational::from_int(v)
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

/// Always `num/den`, including integers (`3/1`), so the text form is
/// bit-exact and unambiguous.
impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.0.numer(), self.0.denom())
    }
}

impl FromStr for Rational {
    type Err = NumberError;

    /// Accepts `num/den` or a bare integer.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || NumberError::BadRational(s.to_string());
        let t = s.trim();
        match t.split_once('/') {
            Some((n, d)) => {
                let n: BigInt = n.trim().parse().map_err(|_| bad())?;
                let d: BigInt = d.trim().parse().map_err(|_| bad())?;
                Rational::from_big(n, d)
            }
            None => {
                let n: BigInt = t.parse().map_err(|_| bad())?;
                Ok(Rational(BigRational::from_integer(n)))
            }
        }
    }
}

impl Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $m:ident) => {
        impl $tr for Rational {
            type Output = Rational;
            fn $m(self, rhs: Rational) -> Rational {
                Rational(self.0.$m(rhs.0))
            }
        }
        impl<'a> $tr<&'a Rational> for &'a Rational {
            type Output = Rational;
            fn $m(self, rhs: &'a Rational) -> Rational {
                Rational((&self.0).$m(&rhs.0))
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        Rational(-self.0)
    }
}

impl Rational {
    /// Exact division; `None` when dividing by zero.
    pub fn checked_div(&self, rhs: &Rational) -> Option<Rational> {
        if rhs.is_zero() {
            None
        } else {
            Some(Rational(&self.0 / &rhs.0))
        }
    }
}

/// A point of the integer plane.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint2 {
    pub x: Int,
    pub y: Int,
}

impl LatticePoint2 {
    pub const fn new(x: Int, y: Int) -> Self {
        LatticePoint2 { x, y }
    }
}

impl fmt::Display for LatticePoint2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.x, self.y)
    }
}

impl From<(Int, Int)> for LatticePoint2 {
    fn from((x, y): (Int, Int)) -> Self {
        LatticePoint2 { x, y }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticePoint3 {
    pub x: Int,
    pub y: Int,
    pub z: Int,
}

impl LatticePoint3 {
    pub const fn new(x: Int, y: Int, z: Int) -> Self {
        LatticePoint3 { x, y, z }
    }
}

impl fmt::Display for LatticePoint3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// A point of `Z^k`; the dimension is fixed at construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LatticePointK {
    coords: Vec<Int>,
}

impl LatticePointK {
    /// Panics if `coords` is empty.
    pub fn new(coords: Vec<Int>) -> Self {
        assert!(!coords.is_empty(), "a lattice point needs at least one coordinate");
        LatticePointK { coords }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[Int] {
        &self.coords
    }
}

impl fmt::Display for LatticePointK {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Unit step, open at zero: `H(v) = [v > 0]`.
pub fn heaviside(v: Int) -> Int {
    Int::from(v > 0)
}

/// Unit step closed at zero, `H(v + eps)` for any `eps > 0` on the integers:
/// `[v >= 0]`.
pub fn heaviside_plus(v: Int) -> Int {
    Int::from(v >= 0)
}

pub fn sgn(v: Int) -> Int {
    v.signum()
}

/// Floor square root: the unique `s` with `s^2 <= n < (s+1)^2`.
pub fn isqrt(n: Nat) -> Nat {
    Nat(isqrt_u128(n.0 as u128) as Int)
}

/// Floor square root on a raw `Int`. Panics on negative input.
pub fn isqrt_int(n: Int) -> Int {
    assert!(n >= 0, "isqrt of negative value {n}");
    isqrt_u128(n as u128) as Int
}

fn isqrt_u128(n: u128) -> u128 {
    if n < 2 {
        return n;
    }
    // Newton from an over-estimate; the iterates decrease monotonically
    // to the floor root.
    let bits = 128 - n.leading_zeros();
    let mut x: u128 = 1u128 << bits.div_ceil(2);
    loop {
        let y = (x + n / x) >> 1;
        if y >= x {
            return x;
        }
        x = y;
    }
}

/// Largest `t` with `t(t+1)/2 <= n`.
pub fn triangular_root(n: Int) -> Int {
    assert!(n >= 0, "triangular_root of negative value {n}");
    (isqrt_int(8 * n + 1) - 1) / 2
}

pub fn triangular(t: Int) -> Int {
    t * (t + 1) / 2
}

/// `t(t+1)(t+2)/6`, the number of points of `N0^3` with coordinate sum below `t`.
pub fn tetrahedral(t: Int) -> Int {
    t * (t + 1) * (t + 2) / 6
}

/// Largest `t` with `tetrahedral(t) <= n`.
pub fn tetrahedral_root(n: Int) -> Int {
    assert!(n >= 0, "tetrahedral_root of negative value {n}");
    // tetrahedral(t) > t^3/6, so t < cbrt(6n) + 1.
    let (mut lo, mut hi) = (0, 2);
    while tetrahedral(hi) <= n {
        hi *= 2;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if tetrahedral(mid) <= n {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    lo
}

/// Binomial coefficient for non-negative `n`; zero when `k > n`.
pub fn binomial(n: Int, k: Int) -> Int {
    if k < 0 || n < 0 || k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: Int = 1;
    for i in 0..k {
        // acc * (n - i) is divisible by (i + 1) at every step.
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

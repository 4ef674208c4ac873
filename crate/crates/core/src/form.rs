//! Rational polynomial forms: the six-coefficient quadratic used by every
//! planar mapping region, and the twenty-coefficient cubic in three
//! variables.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::lattice::{Int, LatticePoint2, LatticePoint3, Rational};
use crate::region::LatticeMap;

/// Monomial labels of [`QuadForm`], in coefficient order.
pub const QUAD_MONOMIALS: [&str; 6] = ["x2", "xy", "y2", "x", "y", "c"];

/// `a6 x^2 + a5 xy + a4 y^2 + a3 x + a2 y + a1`, stored as
/// `[a6, a5, a4, a3, a2, a1]`.
#[derive(Clone, PartialEq, Eq)]
pub struct QuadForm {
    coeffs: [Rational; 6],
    scaled: Option<Scaled<6>>,
}

/// Integer numerators over a common denominator, for fast exact evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Scaled<const N: usize> {
    den: Int,
    nums: [Int; N],
}

impl<const N: usize> Scaled<N> {
    fn build(coeffs: &[Rational; N]) -> Option<Self> {
        let mut den = BigInt::one();
        for c in coeffs {
            den = den.lcm(c.denom());
        }
        let mut nums = [0; N];
        for (slot, c) in nums.iter_mut().zip(coeffs) {
            let v = c.numer() * (&den / c.denom());
            *slot = v.to_i128()?;
        }
        Some(Scaled { den: den.to_i128()?, nums })
    }

    /// `sum(nums[i] * monomial[i])`; `None` on i128 overflow.
    fn dot(&self, monomials: &[Int; N]) -> Option<Int> {
        let mut acc: Int = 0;
        for (n, m) in self.nums.iter().zip(monomials) {
            acc = acc.checked_add(n.checked_mul(*m)?)?;
        }
        Some(acc)
    }
}

/// Monomial values `[x^2, xy, y^2, x, y, 1]` at `p`.
pub fn quad_monomials(p: LatticePoint2) -> [Int; 6] {
    let (x, y) = (p.x, p.y);
    [x * x, x * y, y * y, x, y, 1]
}

impl QuadForm {
    pub fn new(coeffs: [Rational; 6]) -> Self {
        let scaled = Scaled::build(&coeffs);
        QuadForm { coeffs, scaled }
    }

    /// Coefficients given as `(num, den)` pairs, `[a6, a5, a4, a3, a2, a1]`.
    pub fn from_fracs(c: [(Int, Int); 6]) -> Self {
        QuadForm::new(c.map(|(n, d)| Rational::new(n, d).expect("nonzero denominator")))
    }

    /// Integer coefficients divided by a common denominator.
    pub fn over(den: Int, nums: [Int; 6]) -> Self {
        QuadForm::from_fracs(nums.map(|n| (n, den)))
    }

    pub fn from_ints(nums: [Int; 6]) -> Self {
        QuadForm::over(1, nums)
    }

    pub fn zero() -> Self {
        QuadForm::from_ints([0; 6])
    }

    pub fn coeffs(&self) -> &[Rational; 6] {
        &self.coeffs
    }

    pub fn x2(&self) -> &Rational {
        &self.coeffs[0]
    }
    pub fn xy(&self) -> &Rational {
        &self.coeffs[1]
    }
    pub fn y2(&self) -> &Rational {
        &self.coeffs[2]
    }
    pub fn x(&self) -> &Rational {
        &self.coeffs[3]
    }
    pub fn y(&self) -> &Rational {
        &self.coeffs[4]
    }
    pub fn constant(&self) -> &Rational {
        &self.coeffs[5]
    }

    pub fn eval(&self, p: LatticePoint2) -> Rational {
        let m = quad_monomials(p);
        if let Some(s) = &self.scaled {
            if let Some(num) = s.dot(&m) {
                return Rational::new(num, s.den).expect("den > 0");
            }
        }
        self.coeffs
            .iter()
            .zip(m)
            .fold(Rational::zero(), |acc, (c, m)| acc + c * &Rational::from_int(m))
    }

    /// Exact integer value, or the non-integral rational value as the error.
    pub fn eval_int(&self, p: LatticePoint2) -> Result<Int, Rational> {
        if let Some(s) = &self.scaled {
            if let Some(num) = s.dot(&quad_monomials(p)) {
                if num % s.den == 0 {
                    return Ok(num / s.den);
                }
                return Err(Rational::new(num, s.den).expect("den > 0"));
            }
        }
        let v = self.eval(p);
        v.to_int().ok_or(v)
    }

    /// `k1 * self + k2`.
    pub fn affine(&self, k1: Int, k2: Int) -> QuadForm {
        let k1 = Rational::from_int(k1);
        let mut c = self.coeffs.clone().map(|a| &a * &k1);
        c[5] = &c[5] + &Rational::from_int(k2);
        QuadForm::new(c)
    }

    /// The form `p ↦ self(map(p))`.
    pub fn pull_back(&self, map: &LatticeMap) -> QuadForm {
        let r = Rational::from_int;
        // X and Y as linear polynomials (coefficient of x, of y, constant).
        let lx = [r(map.m[0][0]), r(map.m[0][1]), r(map.t[0])];
        let ly = [r(map.m[1][0]), r(map.m[1][1]), r(map.t[1])];
        let prod = |u: &[Rational; 3], v: &[Rational; 3]| -> [Rational; 6] {
            [
                &u[0] * &v[0],
                &(&u[0] * &v[1]) + &(&u[1] * &v[0]),
                &u[1] * &v[1],
                &(&u[0] * &v[2]) + &(&u[2] * &v[0]),
                &(&u[1] * &v[2]) + &(&u[2] * &v[1]),
                &u[2] * &v[2],
            ]
        };
        let lin = |u: &[Rational; 3]| -> [Rational; 6] {
            [Rational::zero(), Rational::zero(), Rational::zero(), u[0].clone(), u[1].clone(), u[2].clone()]
        };
        let one = {
            let mut c: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
            c[5] = Rational::one();
            c
        };
        let terms = [prod(&lx, &lx), prod(&lx, &ly), prod(&ly, &ly), lin(&lx), lin(&ly), one];
        let mut out: [Rational; 6] = std::array::from_fn(|_| Rational::zero());
        for (coef, term) in self.coeffs.iter().zip(terms.iter()) {
            for (o, t) in out.iter_mut().zip(term.iter()) {
                *o = &*o + &(coef * t);
            }
        }
        QuadForm::new(out)
    }

    /// Order of the form: 2, 1 or 0 (the zero form has order 0).
    pub fn degree(&self) -> u32 {
        if self.coeffs[..3].iter().any(|c| !c.is_zero()) {
            2
        } else if self.coeffs[3..5].iter().any(|c| !c.is_zero()) {
            1
        } else {
            0
        }
    }
}

impl fmt::Debug for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.coeffs.iter()).finish()
    }
}

/// Human-readable polynomial, e.g. `1/2 x^2 + 1/2 x + y`.
impl fmt::Display for QuadForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().zip(["x^2", "xy", "y^2", "x", "y", ""]))
    }
}

fn write_poly<'a>(
    f: &mut fmt::Formatter<'_>,
    terms: impl Iterator<Item = (&'a Rational, &'a str)>,
) -> fmt::Result {
    let mut first = true;
    for (c, mono) in terms {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let mag = c.abs();
        if first {
            if neg {
                write!(f, "-")?;
            }
        } else {
            write!(f, " {} ", if neg { '-' } else { '+' })?;
        }
        first = false;
        let mag_s = if mag.is_integer() { mag.numer().to_string() } else { mag.to_string() };
        if mono.is_empty() {
            write!(f, "{mag_s}")?;
        } else if mag == Rational::one() {
            write!(f, "{mono}")?;
        } else {
            write!(f, "{mag_s} {mono}")?;
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

impl Serialize for QuadForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(6))?;
        for (name, c) in QUAD_MONOMIALS.iter().zip(&self.coeffs) {
            map.serialize_entry(name, c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for QuadForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, Rational>::deserialize(deserializer)?;
        let coeffs = named_coeffs(&map, &QUAD_MONOMIALS).map_err(serde::de::Error::custom)?;
        Ok(QuadForm::new(coeffs))
    }
}

fn named_coeffs<const N: usize>(
    map: &BTreeMap<String, Rational>,
    names: &[&str; N],
) -> Result<[Rational; N], String> {
    if let Some(unknown) = map.keys().find(|k| !names.contains(&k.as_str())) {
        return Err(format!("unknown monomial {unknown:?}"));
    }
    Ok(std::array::from_fn(|i| map.get(names[i]).cloned().unwrap_or_else(Rational::zero)))
}

/// Monomial labels of [`CubicForm3D`] in coefficient order.
pub const CUBIC_MONOMIALS: [&str; 20] = [
    "x3", "y3", "z3", "x2y", "x2z", "y2x", "y2z", "z2x", "z2y", "xyz", "x2", "y2", "z2", "xy", "xz",
    "yz", "x", "y", "z", "c",
];

/// Exponents `(i, j, k)` of `x^i y^j z^k` for each coefficient slot.
pub const CUBIC_EXPONENTS: [(u32, u32, u32); 20] = [
    (3, 0, 0),
    (0, 3, 0),
    (0, 0, 3),
    (2, 1, 0),
    (2, 0, 1),
    (1, 2, 0),
    (0, 2, 1),
    (1, 0, 2),
    (0, 1, 2),
    (1, 1, 1),
    (2, 0, 0),
    (0, 2, 0),
    (0, 0, 2),
    (1, 1, 0),
    (1, 0, 1),
    (0, 1, 1),
    (1, 0, 0),
    (0, 1, 0),
    (0, 0, 1),
    (0, 0, 0),
];

pub fn cubic_monomials(p: LatticePoint3) -> [Int; 20] {
    CUBIC_EXPONENTS.map(|(i, j, k)| p.x.pow(i) * p.y.pow(j) * p.z.pow(k))
}

/// Full cubic in `(x, y, z)` with twenty rational coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct CubicForm3D {
    coeffs: [Rational; 20],
    scaled: Option<Scaled<20>>,
}

impl CubicForm3D {
    pub fn new(coeffs: [Rational; 20]) -> Self {
        let scaled = Scaled::build(&coeffs);
        CubicForm3D { coeffs, scaled }
    }

    pub fn over(den: Int, nums: [Int; 20]) -> Self {
        CubicForm3D::new(nums.map(|n| Rational::new(n, den).expect("nonzero denominator")))
    }

    pub fn coeffs(&self) -> &[Rational; 20] {
        &self.coeffs
    }

    /// Coefficient by monomial label, e.g. `"xyz"`.
    pub fn coeff(&self, name: &str) -> Option<&Rational> {
        CUBIC_MONOMIALS.iter().position(|m| *m == name).map(|i| &self.coeffs[i])
    }

    pub fn eval(&self, p: LatticePoint3) -> Rational {
        let m = cubic_monomials(p);
        if let Some(s) = &self.scaled {
            if let Some(num) = s.dot(&m) {
                return Rational::new(num, s.den).expect("den > 0");
            }
        }
        self.coeffs
            .iter()
            .zip(m)
            .fold(Rational::zero(), |acc, (c, m)| acc + c * &Rational::from_int(m))
    }
}

impl fmt::Debug for CubicForm3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(CUBIC_MONOMIALS.iter().zip(self.coeffs.iter())).finish()
    }
}

impl fmt::Display for CubicForm3D {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().zip(CUBIC_MONOMIALS.map(|m| if m == "c" { "" } else { m })))
    }
}

impl Serialize for CubicForm3D {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut map = serializer.serialize_map(Some(20))?;
        for (name, c) in CUBIC_MONOMIALS.iter().zip(&self.coeffs) {
            map.serialize_entry(name, c)?;
        }
        map.end()
    }
}

impl<'de> Deserialize<'de> for CubicForm3D {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let map = BTreeMap::<String, Rational>::deserialize(deserializer)?;
        let coeffs = named_coeffs(&map, &CUBIC_MONOMIALS).map_err(serde::de::Error::custom)?;
        Ok(CubicForm3D::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: Int, y: Int) -> LatticePoint2 {
        LatticePoint2::new(x, y)
    }

    #[test]
    fn wrong_fit_values() {
        // 0.75x² − 1.5xy + 0.75y² − 0.5x − 0.5y + 0.75
        let q = QuadForm::over(4, [3, -6, 3, -2, -2, 3]);
        assert_eq!(q.eval(p(0, 0)), Rational::new(3, 4).unwrap());
        assert_eq!(q.eval(p(4, 0)), Rational::new(43, 4).unwrap());
        assert_eq!(q.eval_int(p(0, 0)), Err(Rational::new(3, 4).unwrap()));
        assert_eq!(QuadForm::zero().eval(p(17, -3)), Rational::zero());
    }

    #[test]
    fn pull_back_matches_pointwise() {
        let q = QuadForm::over(2, [1, 2, 1, 3, 1, 0]);
        let maps = [LatticeMap::quarter_turn(), LatticeMap::translation(-2, 5), LatticeMap::shear(3)];
        for map in maps {
            let pulled = q.pull_back(&map);
            for x in -6..=6 {
                for y in -6..=6 {
                    assert_eq!(pulled.eval(p(x, y)), q.eval(map.apply(p(x, y))));
                }
            }
        }
    }

    #[test]
    fn display_and_json() {
        let q = QuadForm::over(2, [1, 0, 0, 1, 2, 0]);
        assert_eq!(q.to_string(), "1/2 x^2 + 1/2 x + y");
        let json = serde_json::to_string(&q).unwrap();
        assert_eq!(json, r#"{"x2":"1/2","xy":"0/1","y2":"0/1","x":"1/2","y":"1/1","c":"0/1"}"#);
        let back: QuadForm = serde_json::from_str(&json).unwrap();
        assert_eq!(back, q);
        assert!(serde_json::from_str::<QuadForm>(r#"{"z":"1"}"#).is_err());
    }

    #[test]
    fn degree_classification() {
        assert_eq!(QuadForm::from_ints([0, 0, 0, 3, 1, 0]).degree(), 1);
        assert_eq!(QuadForm::from_ints([0, 1, 0, 3, 1, 0]).degree(), 2);
        assert_eq!(QuadForm::from_ints([0, 0, 0, 0, 0, 5]).degree(), 0);
    }

    #[test]
    fn cubic_eval_and_lookup() {
        // x*y*z + 1
        let mut nums = [0; 20];
        nums[9] = 1;
        nums[19] = 1;
        let c = CubicForm3D::over(1, nums);
        assert_eq!(c.eval(LatticePoint3::new(2, 3, 4)), Rational::from_int(25));
        assert_eq!(c.coeff("xyz"), Some(&Rational::one()));
        assert_eq!(c.coeff("w"), None);
        let back: CubicForm3D = serde_json::from_str(&serde_json::to_string(&c).unwrap()).unwrap();
        assert_eq!(back, c);
    }
}

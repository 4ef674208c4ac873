//! Diophantine equations behind the pairing polynomials.
//!
//! `2z = a^2 + 2ab + b^2 + 3a + b` on `N0^2` and `2c = a^2 + a + 2b` on
//! `0 <= b <= a` each have exactly one solution per right-hand side. The
//! degraded `2c = a + 2b` shows what goes wrong without the square term.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::inverses::{invert_cantor1, invert_triangular};
use crate::lattice::{isqrt_int, Int, Nat, Rational};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Equation {
    /// `2z = a^2 + 2ab + b^2 + 3a + b`, `a, b >= 0`.
    Cantor,
    /// `2c = a^2 + a + 2b`, `0 <= b <= a`.
    Triangular,
    /// `2c = a + 2b`, `0 <= b <= a`.
    Degraded,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown equation {0:?}; expected cantor, triangular or degraded")]
pub struct UnknownEquation(pub String);

impl FromStr for Equation {
    type Err = UnknownEquation;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_ascii_lowercase().as_str() {
            "cantor" => Ok(Equation::Cantor),
            "triangular" => Ok(Equation::Triangular),
            "degraded" => Ok(Equation::Degraded),
            other => Err(UnknownEquation(other.to_string())),
        }
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Equation::Cantor => "cantor",
            Equation::Triangular => "triangular",
            Equation::Degraded => "degraded",
        })
    }
}

impl Equation {
    /// Right-hand side, i.e. twice the value.
    pub fn rhs(&self, a: Int, b: Int) -> Int {
        match self {
            Equation::Cantor => a * a + 2 * a * b + b * b + 3 * a + b,
            Equation::Triangular => a * a + a + 2 * b,
            Equation::Degraded => a + 2 * b,
        }
    }

    pub fn admits(&self, a: Int, b: Int) -> bool {
        match self {
            Equation::Cantor => a >= 0 && b >= 0,
            Equation::Triangular | Equation::Degraded => 0 <= b && b <= a,
        }
    }

    pub fn text(&self) -> &'static str {
        match self {
            Equation::Cantor => "2z = a^2 + 2ab + b^2 + 3a + b",
            Equation::Triangular => "2c = a^2 + a + 2b, 0 <= b <= a",
            Equation::Degraded => "2c = a + 2b, 0 <= b <= a",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Solution {
    pub a: Int,
    pub b: Int,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DiophResult {
    pub equation: Equation,
    pub query: Int,
    pub solutions: Vec<Solution>,
    pub explanation: Vec<String>,
}

/// Outcome of fixing `a` in the Cantor equation and solving for `b`:
/// `b = sqrt(1 + 8(z - a))/2 - a - 1/2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DiscriminantCheck {
    pub a: Int,
    pub discriminant: Int,
    pub perfect_square: bool,
    /// The non-negative integer `b`, if there is one.
    pub b: Option<Int>,
}

pub fn cantor_discriminant(z: Int, a: Int) -> DiscriminantCheck {
    let discriminant = 1 + 8 * (z - a);
    if discriminant < 0 {
        return DiscriminantCheck { a, discriminant, perfect_square: false, b: None };
    }
    let r = isqrt_int(discriminant);
    let perfect_square = r * r == discriminant;
    // r is odd whenever the discriminant is a square, since it is odd.
    let b = (perfect_square && (r - 1) / 2 >= a).then(|| (r - 1) / 2 - a);
    DiscriminantCheck { a, discriminant, perfect_square, b }
}

fn describe_check(z: Int, c: &DiscriminantCheck) -> String {
    match (c.perfect_square, c.b) {
        (true, Some(b)) => format!("a = {}: 1 + 8(z - a) = {} = {}^2, b = {}", c.a, c.discriminant, isqrt_int(c.discriminant), b),
        (true, None) => format!("a = {}: 1 + 8(z - a) = {} is a square but gives b < 0", c.a, c.discriminant),
        (false, _) if c.discriminant < 0 => format!("a = {}: a > z = {z}, no real b", c.a),
        (false, _) => format!(
            "a = {}: b = +-sqrt({})/2 - {} is not an integer ({} is not a perfect square)",
            c.a,
            c.discriminant,
            Rational::new(2 * c.a + 1, 2).expect("nonzero"),
            c.discriminant
        ),
    }
}

/// The single solution of the Cantor equation, from the closed-form inverse
/// and confirmed by substitution.
pub fn solve_cantor_dioph(z: Nat) -> DiophResult {
    let z = z.get();
    let q = invert_cantor1(z).expect("z >= 0");
    let (a, b) = (q.x, q.y);
    assert_eq!(Equation::Cantor.rhs(a, b), 2 * z);
    let mut explanation = vec![
        format!("{} with z = {z}", Equation::Cantor.text()),
        "fixing a, 2(z - a) = s^2 + s with s = a + b, so b = sqrt(1 + 8(z - a))/2 - a - 1/2".to_string(),
    ];
    for probe in [a - 1, a, a + 1].into_iter().filter(|&t| t >= 0) {
        explanation.push(describe_check(z, &cantor_discriminant(z, probe)));
    }
    explanation.push(format!("unique solution (a, b) = ({a}, {b})"));
    DiophResult { equation: Equation::Cantor, query: z, solutions: vec![Solution { a, b }], explanation }
}

pub fn solve_triangular_dioph(c: Nat) -> DiophResult {
    let c = c.get();
    let q = invert_triangular(c).expect("c >= 0");
    let (a, b) = (q.x, q.y);
    assert_eq!(Equation::Triangular.rhs(a, b), 2 * c);
    let explanation = vec![
        format!("{} with c = {c}", Equation::Triangular.text()),
        format!("a = {a} is the largest a with a(a+1)/2 <= c, then b = c - a(a+1)/2 = {b}"),
        "a^2 + a is even for every a, so every (a, b) gives an integer c".to_string(),
    ];
    DiophResult { equation: Equation::Triangular, query: c, solutions: vec![Solution { a, b }], explanation }
}

/// Every admissible `(a, b)` with right-hand side `2 * value`, by direct
/// search over `a`.
pub fn brute_force(eq: Equation, value: Int) -> Vec<Solution> {
    let target = 2 * value;
    let mut out = Vec::new();
    if target < 0 {
        return out;
    }
    // Each right-hand side is at least a (and at least b), so a, b <= target.
    for a in 0..=target {
        match eq {
            Equation::Cantor => {
                // a^2 + 3a <= target bounds a.
                if a * a + 3 * a > target {
                    break;
                }
                if let Some(b) = cantor_discriminant(value, a).b {
                    out.push(Solution { a, b });
                }
            }
            Equation::Triangular => {
                if a * a + a > target {
                    break;
                }
                let twice_b = target - a * a - a;
                if twice_b % 2 == 0 && twice_b / 2 <= a {
                    out.push(Solution { a, b: twice_b / 2 });
                }
            }
            Equation::Degraded => {
                let twice_b = target - a;
                if twice_b >= 0 && twice_b % 2 == 0 && twice_b / 2 <= a {
                    out.push(Solution { a, b: twice_b / 2 });
                }
            }
        }
    }
    out
}

/// `a^2 + a` is even for every `0 <= a <= bound`.
pub fn check_cantor_parity(bound: Nat) -> bool {
    (0..=bound.get()).all(|a| (a * a + a) % 2 == 0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Collision {
    pub value: Rational,
    pub first: Solution,
    pub second: Solution,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct UniquenessReport {
    pub equation: Equation,
    pub bound: Int,
    pub scanned: usize,
    /// Up to the first few colliding pairs.
    pub collisions: Vec<Collision>,
    pub collision_count: usize,
    /// Admissible pairs whose value is not an integer.
    pub non_integral: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_non_integral: Option<(Solution, Rational)>,
    /// Length `L` such that every value `0..L` was hit exactly once within
    /// the scanned triangle `a + b <= bound` (Cantor) or `b <= a <= bound`.
    pub covered_prefix: Int,
    pub expected_prefix: Int,
    pub bijective: bool,
}

const MAX_REPORTED_COLLISIONS: usize = 16;

/// Scans all admissible `(a, b)` with `a, b <= bound`.
pub fn uniqueness_scan(eq: Equation, bound: Nat) -> UniquenessReport {
    let bound = bound.get();
    let mut seen: HashMap<Int, Solution> = HashMap::new();
    let mut collisions = Vec::new();
    let mut collision_count = 0;
    let mut non_integral = 0;
    let mut first_non_integral = None;
    let mut scanned = 0;
    // Values whose preimage lies in the triangle; only those count toward
    // the prefix, which is complete for these shapes.
    let mut triangle_hits: HashMap<Int, usize> = HashMap::new();
    for a in 0..=bound {
        for b in 0..=bound {
            if !eq.admits(a, b) {
                continue;
            }
            scanned += 1;
            let rhs = eq.rhs(a, b);
            let here = Solution { a, b };
            let value = Rational::new(rhs, 2).expect("nonzero");
            if rhs % 2 != 0 {
                non_integral += 1;
                first_non_integral.get_or_insert((here, value.clone()));
            }
            let in_triangle = match eq {
                Equation::Cantor => a + b <= bound,
                _ => true,
            };
            if in_triangle && rhs % 2 == 0 {
                *triangle_hits.entry(rhs / 2).or_default() += 1;
            }
            if let Some(&first) = seen.get(&rhs) {
                collision_count += 1;
                if collisions.len() < MAX_REPORTED_COLLISIONS {
                    collisions.push(Collision { value, first, second: here });
                }
            } else {
                seen.insert(rhs, here);
            }
        }
    }
    let mut covered_prefix = 0;
    while triangle_hits.get(&covered_prefix) == Some(&1) {
        covered_prefix += 1;
    }
    let expected_prefix = (bound + 1) * (bound + 2) / 2;
    let bijective = collision_count == 0 && non_integral == 0 && covered_prefix >= expected_prefix;
    UniquenessReport {
        equation: eq,
        bound,
        scanned,
        collisions,
        collision_count,
        non_integral,
        first_non_integral,
        covered_prefix,
        expected_prefix,
        bijective,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nat(v: Int) -> Nat {
        Nat::new(v).unwrap()
    }

    #[test]
    fn cantor_examples() {
        assert_eq!(solve_cantor_dioph(nat(7)).solutions, vec![Solution { a: 1, b: 2 }]);
        assert_eq!(solve_cantor_dioph(nat(0)).solutions, vec![Solution { a: 0, b: 0 }]);
        let forced = cantor_discriminant(7, 2);
        assert_eq!(forced.discriminant, 41);
        assert!(!forced.perfect_square);
        assert_eq!(forced.b, None);
        let text = solve_cantor_dioph(nat(7)).explanation.join("\n");
        assert!(text.contains("sqrt(41)/2 - 5/2"), "{text}");
    }

    #[test]
    fn triangular_examples() {
        assert_eq!(solve_triangular_dioph(nat(6)).solutions, vec![Solution { a: 3, b: 0 }]);
        assert_eq!(solve_triangular_dioph(nat(0)).solutions, vec![Solution { a: 0, b: 0 }]);
        assert_eq!(solve_triangular_dioph(nat(5)).solutions, vec![Solution { a: 2, b: 2 }]);
    }

    #[test]
    fn closed_form_agrees_with_brute_force() {
        for v in 0..2000 {
            assert_eq!(solve_cantor_dioph(nat(v)).solutions, brute_force(Equation::Cantor, v));
            assert_eq!(solve_triangular_dioph(nat(v)).solutions, brute_force(Equation::Triangular, v));
        }
    }

    #[test]
    fn parity() {
        assert!(check_cantor_parity(nat(1000)));
        assert!(check_cantor_parity(nat(1)));
    }

    #[test]
    fn degraded_equation_collides() {
        assert_eq!(brute_force(Equation::Degraded, 2), vec![Solution { a: 2, b: 1 }, Solution { a: 4, b: 0 }]);
        let r = uniqueness_scan(Equation::Degraded, nat(10));
        assert!(!r.bijective);
        assert!(r.collisions.iter().any(|c| c.first == Solution { a: 2, b: 1 } && c.second == Solution { a: 4, b: 0 }));
        assert!(r.non_integral > 0);
    }

    #[test]
    fn scans_of_bijective_equations() {
        for eq in [Equation::Cantor, Equation::Triangular] {
            let r = uniqueness_scan(eq, nat(60));
            assert!(r.bijective, "{r:?}");
            assert_eq!(r.collision_count, 0);
        }
    }

    #[test]
    fn equation_names() {
        for eq in [Equation::Cantor, Equation::Triangular, Equation::Degraded] {
            assert_eq!(eq.to_string().parse::<Equation>().unwrap(), eq);
        }
        assert!("quadratic".parse::<Equation>().is_err());
    }
}

//! Exact region predicates over the integer plane, and the unimodular
//! affine lattice maps used to move them around.

use serde::{Deserialize, Serialize};

use crate::lattice::{Int, LatticePoint2};

/// `a*x + b*y + c >= 0`. Strict inequalities are written with `c - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinearIneq {
    pub a: Int,
    pub b: Int,
    pub c: Int,
}

impl LinearIneq {
    pub const fn new(a: Int, b: Int, c: Int) -> Self {
        LinearIneq { a, b, c }
    }

    pub fn holds(&self, p: LatticePoint2) -> bool {
        self.a * p.x + self.b * p.y + self.c >= 0
    }
}

/// `a*x + b*y + c ≡ residue (mod modulus)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Congruence {
    pub a: Int,
    pub b: Int,
    pub c: Int,
    pub modulus: Int,
    pub residue: Int,
}

impl Congruence {
    pub fn holds(&self, p: LatticePoint2) -> bool {
        (self.a * p.x + self.b * p.y + self.c).rem_euclid(self.modulus)
            == self.residue.rem_euclid(self.modulus)
    }
}

/// Membership test for a set of lattice points: a point belongs if it is
/// listed in `include`, or if it satisfies every inequality and congruence
/// and is not listed in `exclude`.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct RegionPredicate {
    #[serde(default)]
    pub inequalities: Vec<LinearIneq>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub congruences: Vec<Congruence>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub include: Vec<LatticePoint2>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub exclude: Vec<LatticePoint2>,
}

impl RegionPredicate {
    /// The whole plane.
    pub fn everything() -> Self {
        RegionPredicate::default()
    }

    /// Conjunction of `(a, b, c)` triples read as `a*x + b*y + c >= 0`.
    pub fn from_ineqs(ineqs: &[(Int, Int, Int)]) -> Self {
        RegionPredicate {
            inequalities: ineqs.iter().map(|&(a, b, c)| LinearIneq::new(a, b, c)).collect(),
            ..Default::default()
        }
    }

    pub fn with_congruence(mut self, a: Int, b: Int, c: Int, modulus: Int, residue: Int) -> Self {
        assert!(modulus > 0, "congruence modulus must be positive");
        self.congruences.push(Congruence { a, b, c, modulus, residue });
        self
    }

    pub fn with_include(mut self, points: &[LatticePoint2]) -> Self {
        self.include.extend_from_slice(points);
        self
    }

    pub fn with_exclude(mut self, points: &[LatticePoint2]) -> Self {
        self.exclude.extend_from_slice(points);
        self
    }

    pub fn contains(&self, p: LatticePoint2) -> bool {
        if self.include.contains(&p) {
            return true;
        }
        self.inequalities.iter().all(|q| q.holds(p))
            && self.congruences.iter().all(|q| q.holds(p))
            && !self.exclude.contains(&p)
    }

    /// The predicate `p ↦ self.contains(map(p))`.
    pub fn pull_back(&self, map: &LatticeMap) -> RegionPredicate {
        let inv = map.inverse();
        let subst = |a: Int, b: Int, c: Int| {
            // a*X + b*Y + c with X = m00 x + m01 y + t0, Y = m10 x + m11 y + t1.
            (
                a * map.m[0][0] + b * map.m[1][0],
                a * map.m[0][1] + b * map.m[1][1],
                a * map.t[0] + b * map.t[1] + c,
            )
        };
        RegionPredicate {
            inequalities: self
                .inequalities
                .iter()
                .map(|q| {
                    let (a, b, c) = subst(q.a, q.b, q.c);
                    LinearIneq::new(a, b, c)
                })
                .collect(),
            congruences: self
                .congruences
                .iter()
                .map(|q| {
                    let (a, b, c) = subst(q.a, q.b, q.c);
                    Congruence { a, b, c, modulus: q.modulus, residue: q.residue }
                })
                .collect(),
            include: self.include.iter().map(|&p| inv.apply(p)).collect(),
            exclude: self.exclude.iter().map(|&p| inv.apply(p)).collect(),
        }
    }
}

/// Affine map `p ↦ M p + t` with an integer matrix of determinant ±1, so it
/// permutes the lattice and has an integer inverse.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeMap {
    pub m: [[Int; 2]; 2],
    pub t: [Int; 2],
}

impl LatticeMap {
    /// Panics unless `det(m) = ±1`.
    pub fn new(m: [[Int; 2]; 2], t: [Int; 2]) -> Self {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        assert!(det == 1 || det == -1, "lattice map must be unimodular, det = {det}");
        LatticeMap { m, t }
    }

    pub fn identity() -> Self {
        LatticeMap::new([[1, 0], [0, 1]], [0, 0])
    }

    pub fn translation(dx: Int, dy: Int) -> Self {
        LatticeMap::new([[1, 0], [0, 1]], [dx, dy])
    }

    /// `(x, y) ↦ (-y, x)`.
    pub fn quarter_turn() -> Self {
        LatticeMap::new([[0, -1], [1, 0]], [0, 0])
    }

    /// `(x, y) ↦ (x + k*y, y)`.
    pub fn shear(k: Int) -> Self {
        LatticeMap::new([[1, k], [0, 1]], [0, 0])
    }

    /// `(x, y) ↦ (-1 - x, y)`: mirror in the y axis, then shift left by one.
    pub fn mirror_shift_x() -> Self {
        LatticeMap::new([[-1, 0], [0, 1]], [-1, 0])
    }

    pub fn swap_xy() -> Self {
        LatticeMap::new([[0, 1], [1, 0]], [0, 0])
    }

    pub fn apply(&self, p: LatticePoint2) -> LatticePoint2 {
        LatticePoint2::new(
            self.m[0][0] * p.x + self.m[0][1] * p.y + self.t[0],
            self.m[1][0] * p.x + self.m[1][1] * p.y + self.t[1],
        )
    }

    pub fn inverse(&self) -> LatticeMap {
        let det = self.m[0][0] * self.m[1][1] - self.m[0][1] * self.m[1][0];
        // det = ±1, so dividing by it is multiplying by it.
        let mi = [
            [self.m[1][1] * det, -self.m[0][1] * det],
            [-self.m[1][0] * det, self.m[0][0] * det],
        ];
        let t = [
            -(mi[0][0] * self.t[0] + mi[0][1] * self.t[1]),
            -(mi[1][0] * self.t[0] + mi[1][1] * self.t[1]),
        ];
        LatticeMap { m: mi, t }
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &LatticeMap) -> LatticeMap {
        let a = &self.m;
        let b = &other.m;
        let m = [
            [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
            [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
        ];
        let p = self.apply(LatticePoint2::new(other.t[0], other.t[1]));
        LatticeMap { m, t: [p.x, p.y] }
    }
}

//! Piecewise quadratic pairing mappings.
//!
//! Every planar mapping is a list of regions, each carrying an exact
//! [`RegionPredicate`] and the [`QuadForm`] that is valid on it, plus a small
//! table of exceptional points (spiral origins) and excluded points. The
//! regions of a mapping are pairwise disjoint and, together with the
//! exceptional points, cover its domain.

mod builtin;
mod cubic;

pub use builtin::{builtin, rhombus_single_formula, rhombus_single_formula_closed, saw2_family, MapId};
pub use cubic::{eval_p3d, eval_pkd, p3d_form, p3d_pkd_permutation};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::form::QuadForm;
use crate::lattice::{Int, LatticePoint2, Rational};
use crate::region::{LatticeMap, RegionPredicate};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("point {0} is outside the domain of {1}")]
    Domain(LatticePoint2, String),
    #[error("coordinates {0:?} are outside N0^k")]
    NegativeCoordinate(Vec<Int>),
    #[error("unknown mapping {0:?}")]
    UnknownMap(String),
    #[error("invalid parameter for {map}: {reason}")]
    InvalidParameter { map: String, reason: String },
    #[error("{0} is not a planar mapping")]
    NotPlanar(String),
    #[error("region index {index} out of range ({count} regions)")]
    BadRegionIndex { index: usize, count: usize },
    #[error("value {value} at {point} is not an integer")]
    NonIntegral { point: LatticePoint2, value: Rational },
    #[error("value {value} at {point} lies outside the declared image N0")]
    OutsideImage { point: LatticePoint2, value: Int },
    #[error("mapping JSON: {0}")]
    Json(String),
}

/// Image set of a mapping.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ImageKind {
    N0,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Region {
    pub label: String,
    pub predicate: RegionPredicate,
    pub form: QuadForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionalValue {
    pub x: Int,
    pub y: Int,
    pub value: Int,
}

impl ExceptionalValue {
    pub fn new(point: LatticePoint2, value: Int) -> Self {
        ExceptionalValue { x: point.x, y: point.y, value }
    }

    pub fn point(&self) -> LatticePoint2 {
        LatticePoint2::new(self.x, self.y)
    }
}

/// A named piecewise mapping of lattice points to integers.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PiecewiseMapping {
    pub name: String,
    /// Catalogue identity, kept only while the mapping is unmodified.
    #[serde(default)]
    pub builtin: Option<MapId>,
    pub image: ImageKind,
    pub domain: RegionPredicate,
    pub regions: Vec<Region>,
    #[serde(default)]
    pub exceptional: Vec<ExceptionalValue>,
    #[serde(default)]
    pub excluded: Vec<LatticePoint2>,
}

impl PiecewiseMapping {
    pub fn in_domain(&self, p: LatticePoint2) -> bool {
        !self.excluded.contains(&p) && self.domain.contains(p)
    }

    pub fn exceptional_value(&self, p: LatticePoint2) -> Option<Int> {
        self.exceptional.iter().find(|e| e.point() == p).map(|e| e.value)
    }

    /// Index of the region claiming `p`, if any. Exceptional and excluded
    /// points are never claimed.
    pub fn region_of(&self, p: LatticePoint2) -> Option<usize> {
        if self.excluded.contains(&p) || self.exceptional_value(p).is_some() {
            return None;
        }
        self.regions.iter().position(|r| r.predicate.contains(p))
    }

    /// Every region whose predicate contains `p` (partition diagnostics).
    pub fn claims(&self, p: LatticePoint2) -> Vec<usize> {
        (0..self.regions.len()).filter(|&i| self.regions[i].predicate.contains(p)).collect()
    }

    fn domain_error(&self, p: LatticePoint2) -> MapError {
        MapError::Domain(p, self.name.clone())
    }

    /// Exact value at `p`, possibly non-integral for hand-built forms.
    pub fn eval_rational(&self, p: LatticePoint2) -> Result<Rational, MapError> {
        if self.excluded.contains(&p) {
            return Err(self.domain_error(p));
        }
        if let Some(v) = self.exceptional_value(p) {
            return Ok(Rational::from_int(v));
        }
        match self.regions.iter().find(|r| r.predicate.contains(p)) {
            Some(r) => Ok(r.form.eval(p)),
            None => Err(self.domain_error(p)),
        }
    }

    pub fn eval(&self, p: LatticePoint2) -> Result<Int, MapError> {
        if self.excluded.contains(&p) {
            return Err(self.domain_error(p));
        }
        if let Some(v) = self.exceptional_value(p) {
            return Ok(v);
        }
        let region = self
            .regions
            .iter()
            .find(|r| r.predicate.contains(p))
            .ok_or_else(|| self.domain_error(p))?;
        let value = region
            .form
            .eval_int(p)
            .map_err(|value| MapError::NonIntegral { point: p, value })?;
        if self.image == ImageKind::N0 && value < 0 {
            return Err(MapError::OutsideImage { point: p, value });
        }
        Ok(value)
    }

    /// Raw value of one region's form at any point, in domain or not.
    pub fn eval_unchecked(&self, p: LatticePoint2, region_index: usize) -> Result<Rational, MapError> {
        self.regions
            .get(region_index)
            .map(|r| r.form.eval(p))
            .ok_or(MapError::BadRegionIndex { index: region_index, count: self.regions.len() })
    }

    pub fn region(&self, index: usize) -> Result<&Region, MapError> {
        self.regions.get(index).ok_or(MapError::BadRegionIndex { index, count: self.regions.len() })
    }

    /// The single-region mapping restricted to region `index`.
    pub fn region_mapping(&self, index: usize) -> Result<PiecewiseMapping, MapError> {
        let r = self.region(index)?.clone();
        Ok(PiecewiseMapping {
            name: format!("{}[{}]", self.name, r.label),
            builtin: None,
            image: self.image,
            domain: r.predicate.clone(),
            regions: vec![r],
            exceptional: Vec::new(),
            excluded: self.excluded.clone(),
        })
    }

    /// Copy with one region's form replaced.
    pub fn with_region_form(&self, index: usize, form: QuadForm) -> Result<PiecewiseMapping, MapError> {
        let mut out = self.clone();
        let count = out.regions.len();
        out.regions
            .get_mut(index)
            .ok_or(MapError::BadRegionIndex { index, count })?
            .form = form;
        out.builtin = None;
        Ok(out)
    }

    /// The mapping `p ↦ self(map(p))`, with every predicate, form and point
    /// table moved accordingly.
    pub fn pull_back(&self, map: &LatticeMap, name: String) -> PiecewiseMapping {
        let inv = map.inverse();
        PiecewiseMapping {
            name,
            builtin: None,
            image: self.image,
            domain: self.domain.pull_back(map),
            regions: self
                .regions
                .iter()
                .map(|r| Region {
                    label: r.label.clone(),
                    predicate: r.predicate.pull_back(map),
                    form: r.form.pull_back(map),
                })
                .collect(),
            exceptional: self
                .exceptional
                .iter()
                .map(|e| ExceptionalValue::new(inv.apply(e.point()), e.value))
                .collect(),
            excluded: self.excluded.iter().map(|&p| inv.apply(p)).collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("mapping serializes")
    }

    pub fn from_json(s: &str) -> Result<PiecewiseMapping, MapError> {
        serde_json::from_str(s).map_err(|e| MapError::Json(e.to_string()))
    }
}

/// Image transformation `v ↦ k1 v + k2`.
pub fn affine_image(m: &PiecewiseMapping, k1: Int, k2: Int) -> PiecewiseMapping {
    let image = if m.image == ImageKind::N0 && k1 >= 0 && k2 >= 0 { ImageKind::N0 } else { ImageKind::Z };
    PiecewiseMapping {
        name: format!("affine({},{k1},{k2})", m.name),
        builtin: None,
        image,
        domain: m.domain.clone(),
        regions: m
            .regions
            .iter()
            .map(|r| Region { label: r.label.clone(), predicate: r.predicate.clone(), form: r.form.affine(k1, k2) })
            .collect(),
        exceptional: m
            .exceptional
            .iter()
            .map(|e| ExceptionalValue::new(e.point(), k1 * e.value + k2))
            .collect(),
        excluded: m.excluded.clone(),
    }
}

/// Translates the domain by `(k1, k2)`: the new mapping at `p` is the old
/// one at `p - (k1, k2)`.
pub fn shift_domain(m: &PiecewiseMapping, k1: Int, k2: Int) -> PiecewiseMapping {
    m.pull_back(&LatticeMap::translation(-k1, -k2), format!("shift({},{k1},{k2})", m.name))
}

/// Rotates the picture clockwise by `quarters` quarter turns. One quarter
/// turn evaluates the original mapping at `(-y, x)`.
pub fn rotate_quarter(m: &PiecewiseMapping, quarters: Int) -> PiecewiseMapping {
    let q = quarters.rem_euclid(4);
    let mut map = LatticeMap::identity();
    for _ in 0..q {
        map = map.compose(&LatticeMap::quarter_turn());
    }
    m.pull_back(&map, format!("rotate({},{q})", m.name))
}

/// `p ↦ f(m(p))`. Not polynomial in general, so it is only an evaluator.
pub struct ComposedMapping<'a, F> {
    base: &'a PiecewiseMapping,
    f: F,
}

impl<F: Fn(Int) -> Int> ComposedMapping<'_, F> {
    pub fn eval(&self, p: LatticePoint2) -> Result<Int, MapError> {
        self.base.eval(p).map(&self.f)
    }
}

pub fn compose_image<F: Fn(Int) -> Int>(m: &PiecewiseMapping, f: F) -> ComposedMapping<'_, F> {
    ComposedMapping { base: m, f }
}

/// The linear map `B(x, y) = (x + y, x)` computed the long way round, as
/// `c^{-1}(C1(x, y))`, and checked against its closed form.
pub fn b_transform(p: LatticePoint2) -> Result<LatticePoint2, MapError> {
    if p.x < 0 || p.y < 0 {
        return Err(MapError::Domain(p, "N0^2".into()));
    }
    let c1 = builtin::cantor1_value(p);
    let q = crate::inverses::invert_triangular(c1).expect("C1 values are non-negative");
    assert_eq!(q, LatticePoint2::new(p.x + p.y, p.x), "b_transform disagrees with (x+y, x) at {p}");
    Ok(q)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: Int, y: Int) -> LatticePoint2 {
        LatticePoint2::new(x, y)
    }

    fn get(id: &str) -> PiecewiseMapping {
        builtin(&id.parse().unwrap()).unwrap()
    }

    #[test]
    fn spec_eval_examples() {
        assert_eq!(get("cantor1").eval(p(1, 0)), Ok(2));
        assert_eq!(get("rosenberg_strong").eval(p(0, 2)), Ok(8));
        assert_eq!(get("half_square_spiral").eval(p(5, 0)), Ok(55));
        assert_eq!(get("square_spiral").eval(p(5, 0)), Ok(81));
        assert_eq!(get("saw(2)").eval(p(1, 0)), Ok(2));
        assert_eq!(get("comb(3)").eval(p(1, 0)), Ok(3));
        assert_eq!(get("rhombus_spiral").eval(p(0, 0)), Ok(0));
        assert_eq!(get("triangular").eval(p(3, 0)), Ok(6));
        assert!(matches!(get("rectangle_spiral").eval(p(0, -1)), Err(MapError::Domain(..))));
        assert!(matches!(get("triangular").eval(p(0, 1)), Err(MapError::Domain(..))));
    }

    #[test]
    fn eval_unchecked_examples() {
        let hss = get("half_square_spiral");
        assert_eq!(hss.eval_unchecked(p(1, 2), 1), Ok(Rational::from_int(5)));
        assert_eq!(hss.eval(p(1, 2)), Ok(13));
        assert_eq!(hss.eval_unchecked(p(1, 2), 0), Ok(Rational::from_int(13)));
        assert!(matches!(hss.eval_unchecked(p(0, 0), 3), Err(MapError::BadRegionIndex { index: 3, count: 3 })));
    }

    #[test]
    fn affine_image_examples() {
        let c1 = get("cantor1");
        let odd = affine_image(&c1, 2, 1);
        let mut vals: Vec<Int> =
            (0..10).flat_map(|x| (0..10).map(move |y| p(x, y))).filter(|q| q.x + q.y < 10).map(|q| odd.eval(q).unwrap()).collect();
        vals.sort();
        assert_eq!(vals, (0..55).map(|k| 2 * k + 1).collect::<Vec<_>>());
        assert_eq!(odd.image, ImageKind::N0);

        let same = affine_image(&c1, 1, 0);
        for x in 0..20 {
            for y in 0..20 {
                assert_eq!(same.eval(p(x, y)), c1.eval(p(x, y)));
            }
        }

        let tri = get("triangular");
        let shifted = affine_image(&tri, 1, -4);
        assert_eq!(shifted.image, ImageKind::Z);
        assert_eq!(tri.eval(p(2, 1)), Ok(4));
        assert_eq!(shifted.eval(p(2, 1)), Ok(0));
        assert_eq!(shifted.eval(p(0, 0)), Ok(-4));
    }

    #[test]
    fn shift_then_scale_triangular() {
        let m = affine_image(&shift_domain(&get("triangular"), 1, 1), 2, 1);
        assert_eq!(m.eval(p(1, 1)), Ok(1));
        assert_eq!(m.eval(p(2, 1)), Ok(3));
        assert_eq!(m.eval(p(2, 2)), Ok(5));
        assert!(m.eval(p(0, 0)).is_err());
        // x^2 - x + 2y - 1
        assert_eq!(m.regions[0].form, QuadForm::from_ints([1, 0, 0, -1, 2, -1]));
        let same = shift_domain(&get("cantor1"), 0, 0);
        assert_eq!(same.regions, get("cantor1").regions);
        assert_eq!(same.domain, get("cantor1").domain);
    }

    #[test]
    fn rotate_cantor1() {
        let c1 = get("cantor1");
        let r = rotate_quarter(&c1, 1);
        assert_eq!(r.regions[0].form, QuadForm::from_fracs([(1, 2), (-1, 1), (1, 2), (1, 2), (-3, 2), (0, 1)]));
        assert_eq!(r.regions[0].form, get("cantor1_rot").regions[0].form);
        assert_eq!(r.eval(p(0, -1)), Ok(2));
        assert!(r.eval(p(1, 0)).is_ok());
        assert!(r.eval(p(-1, 0)).is_err());
        let full = rotate_quarter(&c1, 4);
        assert_eq!(full.regions, c1.regions);
        assert_eq!(rotate_quarter(&c1, -1).regions, rotate_quarter(&c1, 3).regions);
    }

    #[test]
    fn rotation_moves_exceptional_and_excluded_points() {
        let rect = get("rectangle_spiral");
        let r = rotate_quarter(&rect, 1);
        // Original excluded (0,-1) is reached from (x,y) with (-y,x) = (0,-1).
        assert_eq!(r.excluded, vec![p(-1, 0)]);
        assert!(r.eval(p(-1, 0)).is_err());
        for x in -8..=8 {
            for y in -8..=8 {
                if (x, y) != (-1, 0) {
                    assert_eq!(r.eval(p(x, y)), rect.eval(p(-y, x)));
                }
            }
        }
    }

    #[test]
    fn compose_image_examples() {
        let tri = get("triangular");
        let sq = compose_image(&tri, |v| v * v);
        assert_eq!(sq.eval(p(1, 1)), Ok(4));
        assert_eq!(sq.eval(p(2, 0)), Ok(9));
        let id = compose_image(&tri, |v| v);
        assert_eq!(id.eval(p(5, 3)), tri.eval(p(5, 3)));
        assert!(sq.eval(p(0, 3)).is_err());
        // Matches the quartic expansion x^4/4 + x^2/4 + y^2 + x^3/2 + x^2 y + x y.
        for x in 0..30i128 {
            for y in 0..=x {
                let quartic = Rational::new(x.pow(4) + x * x + 2 * x.pow(3), 4).unwrap()
                    + Rational::from_int(y * y + x * x * y + x * y);
                assert_eq!(Rational::from_int(sq.eval(p(x, y)).unwrap()), quartic);
            }
        }
    }

    #[test]
    fn b_transform_examples() {
        assert_eq!(b_transform(p(1, 1)), Ok(p(2, 1)));
        assert_eq!(b_transform(p(0, 0)), Ok(p(0, 0)));
        assert_eq!(b_transform(p(0, 1)), Ok(p(1, 0)));
        assert!(b_transform(p(-1, 0)).is_err());
    }

    #[test]
    fn region_mapping_restricts() {
        let saw3 = get("saw3");
        let two = saw3.region_mapping(1).unwrap();
        assert!(two.eval(p(1, 0)).is_err());
        assert_eq!(two.eval(p(2, 2)), Ok(11));
        assert!(saw3.region_mapping(2).is_err());
    }

    #[test]
    fn json_round_trip_all_builtins() {
        for id in MapId::planar_catalogue() {
            let m = builtin(&id).unwrap();
            let json = m.to_json();
            let back = PiecewiseMapping::from_json(&json).unwrap();
            assert_eq!(back, m, "{id}");
            assert_eq!(back.to_json(), json);
        }
        assert!(PiecewiseMapping::from_json("{}").is_err());
    }
}

//! The catalogue of built-in mappings.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{affine_image, ExceptionalValue, ImageKind, MapError, PiecewiseMapping, Region};
use crate::form::QuadForm;
use crate::lattice::{heaviside, heaviside_plus, sgn, Int, LatticePoint2};
use crate::region::{LatticeMap, RegionPredicate};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MapId {
    Cantor1,
    Cantor2,
    Cantor1Rot,
    Triangular,
    TriangleX,
    TriangleY,
    RosenbergStrong,
    HalfSquareSpiral,
    RhombusSpiral,
    SquareSpiral,
    RectangleSpiral,
    ConnectedTriangle,
    Saw(Int),
    Comb(Int),
    Saw3,
    ZigzagFullPlane,
    ZigzagFullPlaneZ,
    Alternating,
    Sheared(Int),
    P3d,
    Pkd(Int),
}

const SIMPLE: [(&str, MapId); 17] = [
    ("cantor1", MapId::Cantor1),
    ("cantor2", MapId::Cantor2),
    ("cantor1_rot", MapId::Cantor1Rot),
    ("triangular", MapId::Triangular),
    ("triangle_x", MapId::TriangleX),
    ("triangle_y", MapId::TriangleY),
    ("rosenberg_strong", MapId::RosenbergStrong),
    ("half_square_spiral", MapId::HalfSquareSpiral),
    ("rhombus_spiral", MapId::RhombusSpiral),
    ("square_spiral", MapId::SquareSpiral),
    ("rectangle_spiral", MapId::RectangleSpiral),
    ("connected_triangle", MapId::ConnectedTriangle),
    ("saw3", MapId::Saw3),
    ("zigzag_full_plane", MapId::ZigzagFullPlane),
    ("zigzag_full_plane_z", MapId::ZigzagFullPlaneZ),
    ("alternating", MapId::Alternating),
    ("p3d", MapId::P3d),
];

const FAMILIES: [&str; 4] = ["saw", "comb", "sheared", "pkd"];

impl MapId {
    /// Every accepted base name, parameterised families included.
    pub fn names() -> Vec<&'static str> {
        SIMPLE.iter().map(|(n, _)| *n).chain(FAMILIES).collect()
    }

    pub fn is_planar(&self) -> bool {
        !matches!(self, MapId::P3d | MapId::Pkd(_))
    }

    pub fn image(&self) -> ImageKind {
        match self {
            MapId::ZigzagFullPlaneZ => ImageKind::Z,
            _ => ImageKind::N0,
        }
    }

    /// Spatial dimension of the domain.
    pub fn dim(&self) -> usize {
        match self {
            MapId::P3d => 3,
            MapId::Pkd(k) => *k as usize,
            _ => 2,
        }
    }

    /// Builds an id from a base name and an optional family parameter.
    pub fn from_parts(name: &str, param: Option<Int>) -> Result<MapId, MapError> {
        let name = name.trim().to_ascii_lowercase();
        let need = |min: Int| -> Result<Int, MapError> {
            let v = param.ok_or_else(|| MapError::InvalidParameter {
                map: name.clone(),
                reason: "a parameter is required, e.g. saw(3) or --k 3".into(),
            })?;
            if v < min {
                return Err(MapError::InvalidParameter { map: name.clone(), reason: format!("parameter must be >= {min}, got {v}") });
            }
            Ok(v)
        };
        let id = match name.as_str() {
            "saw" => MapId::Saw(need(2)?),
            "comb" => MapId::Comb(need(2)?),
            "sheared" => MapId::Sheared(need(0)?),
            "pkd" => MapId::Pkd(need(1)?),
            other => {
                let id = SIMPLE
                    .iter()
                    .find(|(n, _)| *n == other)
                    .map(|(_, id)| *id)
                    .ok_or_else(|| MapError::UnknownMap(other.to_string()))?;
                if param.is_some() {
                    return Err(MapError::InvalidParameter { map: name.clone(), reason: "takes no parameter".into() });
                }
                id
            }
        };
        Ok(id)
    }

    /// The planar catalogue with small representative parameters.
    pub fn planar_catalogue() -> Vec<MapId> {
        let mut out: Vec<MapId> = SIMPLE.iter().map(|(_, id)| *id).filter(MapId::is_planar).collect();
        out.extend([MapId::Saw(2), MapId::Saw(3), MapId::Saw(5), MapId::Comb(2), MapId::Comb(3)]);
        out.extend([MapId::Sheared(0), MapId::Sheared(1), MapId::Sheared(2)]);
        out
    }
}

impl fmt::Display for MapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MapId::Saw(n) => write!(f, "saw({n})"),
            MapId::Comb(n) => write!(f, "comb({n})"),
            MapId::Sheared(k) => write!(f, "sheared({k})"),
            MapId::Pkd(k) => write!(f, "pkd({k})"),
            other => {
                let name = SIMPLE.iter().find(|(_, id)| id == other).map(|(n, _)| *n).expect("every id is named");
                f.write_str(name)
            }
        }
    }
}

impl FromStr for MapId {
    type Err = MapError;

    /// Accepts `name` or `name(param)`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        match s.split_once('(') {
            Some((name, rest)) => {
                let inner = rest
                    .strip_suffix(')')
                    .ok_or_else(|| MapError::UnknownMap(s.to_string()))?;
                let v: Int = inner.trim().parse().map_err(|_| MapError::InvalidParameter {
                    map: name.to_string(),
                    reason: format!("{inner:?} is not an integer"),
                })?;
                MapId::from_parts(name, Some(v))
            }
            None => MapId::from_parts(s, None),
        }
    }
}

impl Serialize for MapId {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MapId {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

fn p(x: Int, y: Int) -> LatticePoint2 {
    LatticePoint2::new(x, y)
}

fn ineqs(list: &[(Int, Int, Int)]) -> RegionPredicate {
    RegionPredicate::from_ineqs(list)
}

fn region(label: &str, predicate: RegionPredicate, form: QuadForm) -> Region {
    Region { label: label.to_string(), predicate, form }
}

const N0_SQUARED: [(Int, Int, Int); 2] = [(1, 0, 0), (0, 1, 0)];

fn simple(id: MapId, domain: RegionPredicate, form: QuadForm) -> PiecewiseMapping {
    PiecewiseMapping {
        name: id.to_string(),
        builtin: Some(id),
        image: ImageKind::N0,
        domain: domain.clone(),
        regions: vec![region("I", domain, form)],
        exceptional: Vec::new(),
        excluded: Vec::new(),
    }
}

fn cantor1_form() -> QuadForm {
    QuadForm::over(2, [1, 2, 1, 3, 1, 0])
}

fn cantor2_form() -> QuadForm {
    QuadForm::over(2, [1, 2, 1, 1, 3, 0])
}

fn half_square() -> PiecewiseMapping {
    PiecewiseMapping {
        name: "half_square_spiral".into(),
        builtin: Some(MapId::HalfSquareSpiral),
        image: ImageKind::N0,
        domain: ineqs(&[(1, 0, 0)]),
        regions: vec![
            region("I", ineqs(&[(1, 0, 0), (-1, 1, -1)]), QuadForm::from_ints([0, 0, 2, -1, 3, 0])),
            region("II", ineqs(&[(1, -1, 0), (1, 1, 0)]), QuadForm::from_ints([2, 0, 0, 1, 1, 0])),
            region("III", ineqs(&[(1, 0, 0), (-1, -1, -1)]), QuadForm::from_ints([0, 0, 2, 1, 1, 0])),
        ],
        exceptional: Vec::new(),
        excluded: Vec::new(),
    }
}

/// Two copies of the half-square spiral glued along the y axis: `a P + b`
/// on `x >= 0` and `c P(-1 - x, y) + d` on `x < 0`.
fn zigzag(id: MapId, right: (Int, Int), left: (Int, Int)) -> PiecewiseMapping {
    let base = half_square();
    let pos = affine_image(&base, right.0, right.1);
    let neg = affine_image(&base, left.0, left.1).pull_back(&LatticeMap::mirror_shift_x(), String::new());
    let mut regions = Vec::new();
    for r in pos.regions {
        regions.push(Region { label: format!("{}+", r.label), ..r });
    }
    for r in neg.regions {
        regions.push(Region { label: format!("{}-", r.label), ..r });
    }
    PiecewiseMapping {
        name: id.to_string(),
        builtin: Some(id),
        image: id.image(),
        domain: RegionPredicate::everything(),
        regions,
        exceptional: Vec::new(),
        excluded: Vec::new(),
    }
}

/// Constructs a catalogue mapping. Fails for non-planar ids.
pub fn builtin(id: &MapId) -> Result<PiecewiseMapping, MapError> {
    let id = *id;
    let m = match id {
        MapId::Cantor1 => simple(id, ineqs(&N0_SQUARED), cantor1_form()),
        MapId::Cantor2 => simple(id, ineqs(&N0_SQUARED), cantor2_form()),
        MapId::Cantor1Rot => simple(id, ineqs(&[(1, 0, 0), (0, -1, 0)]), QuadForm::over(2, [1, -2, 1, 1, -3, 0])),
        MapId::Triangular => simple(id, ineqs(&[(0, 1, 0), (1, -1, 0)]), QuadForm::over(2, [1, 0, 0, 1, 2, 0])),
        MapId::TriangleX => simple(id, ineqs(&[(1, -1, 0), (1, 1, 0)]), QuadForm::from_ints([1, 0, 0, 1, 1, 0])),
        MapId::TriangleY => simple(id, ineqs(&[(-1, 1, 0), (1, 1, 0)]), QuadForm::from_ints([0, 0, 1, -1, 1, 0])),
        MapId::RosenbergStrong => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: ineqs(&N0_SQUARED),
            regions: vec![
                region("I", ineqs(&[(1, 0, 0), (-1, 1, -1)]), QuadForm::from_ints([0, 0, 1, -1, 2, 0])),
                region("II", ineqs(&[(0, 1, 0), (1, -1, 0)]), QuadForm::from_ints([1, 0, 0, 0, 1, 0])),
            ],
            exceptional: Vec::new(),
            excluded: Vec::new(),
        },
        MapId::HalfSquareSpiral => half_square(),
        MapId::RhombusSpiral => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: RegionPredicate::everything(),
            regions: vec![
                region("I", ineqs(&[(1, 0, -1), (0, 1, 0)]), QuadForm::from_ints([2, 4, 2, -2, -1, 1])),
                region("II", ineqs(&[(-1, 0, 0), (0, 1, -1)]), QuadForm::from_ints([2, -4, 2, 0, -1, 1])),
                region("III", ineqs(&[(-1, 0, -1), (0, -1, 0)]), QuadForm::from_ints([2, 4, 2, 0, -1, 1])),
                region("IV", ineqs(&[(1, 0, 0), (0, -1, -1)]), QuadForm::from_ints([2, -4, 2, 2, -1, 1])),
            ],
            exceptional: vec![ExceptionalValue::new(p(0, 0), 0)],
            excluded: Vec::new(),
        },
        MapId::SquareSpiral => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: RegionPredicate::everything(),
            regions: vec![
                region("I", ineqs(&[(1, 0, -1), (0, 1, 0), (1, -1, 0)]), QuadForm::from_ints([4, 0, 0, -4, 1, 1])),
                region("II", ineqs(&[(0, 1, -1), (-1, 1, -1), (1, 1, 0)]), QuadForm::from_ints([0, 0, 4, -1, -2, 1])),
                region("III", ineqs(&[(-1, 0, -1), (-1, -1, -1), (-1, 1, 0)]), QuadForm::from_ints([4, 0, 0, 0, -1, 1])),
                region("IV", ineqs(&[(0, -1, -1), (1, -1, -1), (-1, -1, 0)]), QuadForm::from_ints([0, 0, 4, 1, -2, 1])),
                region("V", ineqs(&[(0, -1, -1), (1, 1, -1)]), QuadForm::from_ints([4, 0, 0, 4, 1, 1])),
            ],
            exceptional: vec![ExceptionalValue::new(p(0, 0), 0)],
            excluded: Vec::new(),
        },
        MapId::RectangleSpiral => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: RegionPredicate::everything(),
            regions: vec![
                region(
                    "I",
                    ineqs(&[(1, 0, -1), (1, -1, 0), (1, 1, -1)]).with_include(&[p(1, -1)]),
                    QuadForm::from_ints([4, 0, 0, -1, 1, -1]),
                ),
                region("II", ineqs(&[(0, 1, -1), (-1, 1, -1), (1, 1, 0)]), QuadForm::from_ints([0, 0, 4, -1, 1, -1])),
                region("III", ineqs(&[(-1, 0, -1), (-1, -1, -1), (-1, 1, 0)]), QuadForm::from_ints([4, 0, 0, -3, -1, -1])),
                region("IV", ineqs(&[(0, -1, -2), (1, -1, -1), (-1, -1, 0)]), QuadForm::from_ints([0, 0, 4, 1, 3, -1])),
            ],
            exceptional: vec![ExceptionalValue::new(p(0, 0), 0)],
            excluded: vec![p(0, -1)],
        },
        MapId::ConnectedTriangle => {
            let tail = ineqs(&[(1, 0, -3), (0, 1, 0), (1, -1, -3)]);
            let head: Vec<LatticePoint2> =
                (0..=2).flat_map(|x| (-x..=x).map(move |y| p(x, y))).collect();
            PiecewiseMapping {
                name: id.to_string(),
                builtin: Some(id),
                image: ImageKind::N0,
                domain: tail.clone().with_include(&head),
                regions: vec![
                    region("I", ineqs(&[(-1, 0, 2), (1, -1, 0), (1, 1, 0)]), QuadForm::from_ints([1, 0, 0, 1, 1, 0])),
                    region("II", tail, QuadForm::over(2, [1, 0, 0, -5, 2, 24])),
                ],
                exceptional: Vec::new(),
                excluded: Vec::new(),
            }
        }
        MapId::Saw(n) => {
            check_param(id, n, 2)?;
            simple(id, ineqs(&[(0, 1, 0), (0, -1, n - 1), (1, -1, 0)]), QuadForm::from_ints([0, 0, 0, n, 1 - n, 0]))
        }
        MapId::Comb(n) => {
            check_param(id, n, 2)?;
            simple(id, ineqs(&[(1, 0, 0), (0, 1, 0), (0, -1, n - 1)]), QuadForm::from_ints([0, 0, 0, n, 1, 0]))
        }
        MapId::Saw3 => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: ineqs(&[(1, 0, 0), (0, 1, 0), (0, -1, 2)]),
            regions: vec![
                region("I", ineqs(&[(1, 0, 0), (0, 1, 0), (0, -1, 2), (-1, 0, 1)]), cantor2_form()),
                region("II", ineqs(&[(0, 1, 0), (0, -1, 2), (1, 0, -2)]), QuadForm::from_ints([0, 0, 0, 3, 4, -3])),
            ],
            exceptional: Vec::new(),
            excluded: Vec::new(),
        },
        MapId::ZigzagFullPlane => zigzag(id, (2, 0), (2, 1)),
        MapId::ZigzagFullPlaneZ => zigzag(id, (1, 0), (-1, -1)),
        MapId::Alternating => PiecewiseMapping {
            name: id.to_string(),
            builtin: Some(id),
            image: ImageKind::N0,
            domain: ineqs(&N0_SQUARED),
            regions: vec![
                region("odd", ineqs(&N0_SQUARED).with_congruence(1, 1, 0, 2, 1), cantor1_form()),
                region("even", ineqs(&N0_SQUARED).with_congruence(1, 1, 0, 2, 0), cantor2_form()),
            ],
            exceptional: Vec::new(),
            excluded: Vec::new(),
        },
        MapId::Sheared(k) => {
            check_param(id, k, 0)?;
            let domain = ineqs(&[(0, 1, 0), (1, k, 0)]);
            simple(id, domain, cantor1_form().pull_back(&LatticeMap::shear(k)))
        }
        MapId::P3d | MapId::Pkd(_) => return Err(MapError::NotPlanar(id.to_string())),
    };
    Ok(m)
}

fn check_param(id: MapId, v: Int, min: Int) -> Result<(), MapError> {
    if v < min {
        return Err(MapError::InvalidParameter { map: id.to_string(), reason: format!("parameter must be >= {min}, got {v}") });
    }
    Ok(())
}

/// One-parameter family agreeing with `saw(2)` on its domain:
/// `(2 + a) y^2 + 2x - (3 + a) y`.
pub fn saw2_family(a: Int) -> PiecewiseMapping {
    let mut m = builtin(&MapId::Saw(2)).expect("saw(2) exists");
    m.name = format!("saw2_family({a})");
    m.builtin = None;
    m.regions[0].form = QuadForm::from_ints([0, 0, 2 + a, 2, -(3 + a), 0]);
    m
}

/// Fast `C1` on `N0^2`.
pub(crate) fn cantor1_value(q: LatticePoint2) -> Int {
    let s = q.x + q.y;
    s * (s + 1) / 2 + q.x
}

/// Rhombus spiral as one closed formula built from step and sign functions:
/// `2x^2 + 4 sgn(x) sgn(y) xy + 2y^2 - 2 H(x) sgn(y) x - y + 1`, origin
/// excluded. Evaluated literally, with `sgn(0) = 0`.
pub fn rhombus_single_formula(q: LatticePoint2) -> Int {
    single_formula_with(q, sgn(q.y))
}

/// The same formula with `2 H+(y) - 1` in place of `sgn(y)` in the step
/// term, so that `y = 0` counts as positive.
pub fn rhombus_single_formula_closed(q: LatticePoint2) -> Int {
    single_formula_with(q, 2 * heaviside_plus(q.y) - 1)
}

fn single_formula_with(q: LatticePoint2, step_sign_y: Int) -> Int {
    let (x, y) = (q.x, q.y);
    2 * x * x + 4 * sgn(x) * sgn(y) * x * y + 2 * y * y - 2 * heaviside(x) * step_sign_y * x - y + 1
}

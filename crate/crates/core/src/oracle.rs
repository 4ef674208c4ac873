//! Geometric enumeration of every catalogue mapping.
//!
//! Each walk visits lattice points in image order by following the shape of
//! the mapping (diagonals, columns, spiral shells, plane sweeps). Walks never
//! evaluate a polynomial, which makes them usable as ground truth for the
//! forms, the inverses and the fitter.

use std::collections::HashMap;
use std::io;
use std::iter;

use serde::Serialize;
use thiserror::Error;

use crate::fitter::Reference;
use crate::lattice::{Int, LatticePoint2, LatticePoint3, LatticePointK, Rational};
use crate::mappings::{builtin, eval_p3d, eval_pkd, ImageKind, MapError, MapId, PiecewiseMapping};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error(transparent)]
    Map(#[from] MapError),
    #[error("line {line}: {what} is not constant along the line ({first} then {second})")]
    NonConstantShift { line: Int, what: &'static str, first: Box<Rational>, second: Box<Rational> },
}

type Walk2 = Box<dyn Iterator<Item = LatticePoint2>>;
type WalkK = Box<dyn Iterator<Item = Vec<Int>>>;

fn p(x: Int, y: Int) -> LatticePoint2 {
    LatticePoint2::new(x, y)
}

fn cantor1_walk() -> impl Iterator<Item = LatticePoint2> {
    (0..).flat_map(|n| (0..=n).map(move |x| p(x, n - x)))
}

fn cantor2_walk() -> impl Iterator<Item = LatticePoint2> {
    (0..).flat_map(|n| (0..=n).map(move |y| p(n - y, y)))
}

fn triangle_x_walk() -> impl Iterator<Item = LatticePoint2> {
    (0..).flat_map(|x| (-x..=x).map(move |y| p(x, y)))
}

fn triangular_walk() -> impl Iterator<Item = LatticePoint2> {
    (0..).flat_map(|x| (0..=x).map(move |y| p(x, y)))
}

/// Origin, then for each n the bottom edge left to right, the right edge
/// upwards and the top edge back to the y axis.
fn half_square_walk() -> impl Iterator<Item = LatticePoint2> {
    iter::once(p(0, 0)).chain((1..).flat_map(|n| {
        (0..=n)
            .map(move |x| p(x, -n))
            .chain((-n + 1..=n).map(move |y| p(n, y)))
            .chain((0..n).rev().map(move |x| p(x, n)))
    }))
}

/// Origin, then rhombus shells `|x| + |y| = n` anticlockwise from `(n, 0)`.
fn rhombus_walk() -> impl Iterator<Item = LatticePoint2> {
    iter::once(p(0, 0)).chain((1..).flat_map(|n| {
        (0..n)
            .map(move |k| p(n - k, k))
            .chain((0..n).map(move |k| p(-k, n - k)))
            .chain((0..n).map(move |k| p(-n + k, -k)))
            .chain((0..n).map(move |k| p(k, -n + k)))
    }))
}

/// Origin, then square shells `max(|x|, |y|) = n` anticlockwise from `(n, 0)`.
fn square_walk() -> impl Iterator<Item = LatticePoint2> {
    iter::once(p(0, 0)).chain((1..).flat_map(|n| {
        (0..=n)
            .map(move |y| p(n, y))
            .chain((-n..n).rev().map(move |x| p(x, n)))
            .chain((-n..n).rev().map(move |y| p(-n, y)))
            .chain((-n + 1..=n).map(move |x| p(x, -n)))
            .chain((-n + 1..0).map(move |y| p(n, y)))
    }))
}

/// Origin, `(1, -1)`, then loops of width `2n + 2` that skip `(0, -1)`.
fn rectangle_walk() -> impl Iterator<Item = LatticePoint2> {
    [p(0, 0), p(1, -1)].into_iter().chain((1..).flat_map(|n| {
        (-n + 1..=n)
            .map(move |y| p(n, y))
            .chain((-n..n).rev().map(move |x| p(x, n)))
            .chain((-n..n).rev().map(move |y| p(-n, y)))
            .chain((-n..=n + 1).map(move |x| p(x, -n - 1)))
    }))
}

fn walk2(id: MapId) -> Result<Walk2, OracleError> {
    let w: Walk2 = match id {
        MapId::Cantor1 => Box::new(cantor1_walk()),
        MapId::Cantor2 => Box::new(cantor2_walk()),
        MapId::Cantor1Rot => Box::new(cantor1_walk().map(|q| p(q.y, -q.x))),
        MapId::Triangular => Box::new(triangular_walk()),
        MapId::TriangleX => Box::new(triangle_x_walk()),
        MapId::TriangleY => Box::new((0..).flat_map(|y| (-y..=y).rev().map(move |x| p(x, y)))),
        MapId::RosenbergStrong => {
            Box::new((0..).flat_map(|m| (0..=m).map(move |y| p(m, y)).chain((0..m).rev().map(move |x| p(x, m)))))
        }
        MapId::HalfSquareSpiral => Box::new(half_square_walk()),
        MapId::RhombusSpiral => Box::new(rhombus_walk()),
        MapId::SquareSpiral => Box::new(square_walk()),
        MapId::RectangleSpiral => Box::new(rectangle_walk()),
        MapId::ConnectedTriangle => Box::new(
            triangle_x_walk()
                .take_while(|q| q.x <= 2)
                .chain(triangular_walk().map(|q| p(q.x + 3, q.y))),
        ),
        MapId::Saw(n) => Box::new((0..).flat_map(move |k| (0..n).map(move |r| p(k + r, r)))),
        MapId::Comb(n) => Box::new((0..).flat_map(move |x| (0..n).map(move |y| p(x, y)))),
        MapId::Saw3 => Box::new((0..).flat_map(|d: Int| (0..=d.min(2)).map(move |y| p(d - y, y)))),
        MapId::ZigzagFullPlane | MapId::ZigzagFullPlaneZ => {
            Box::new(half_square_walk().flat_map(|q| [q, p(-1 - q.x, q.y)]))
        }
        MapId::Alternating => Box::new((0..).flat_map(|w: Int| {
            (0..=w).map(move |t| if w % 2 == 1 { p(t, w - t) } else { p(w - t, t) })
        })),
        MapId::Sheared(k) => Box::new(cantor1_walk().map(move |q| p(q.x - k * q.y, q.y))),
        MapId::P3d | MapId::Pkd(_) => return Err(MapError::NotPlanar(id.to_string()).into()),
    };
    Ok(w)
}

/// Compositions of `total` into `k` parts, ordered by the prefix sums from
/// the longest down: the last part descends, the prefix recurses.
fn compositions(k: Int, total: Int) -> WalkK {
    if k == 1 {
        return Box::new(iter::once(vec![total]));
    }
    Box::new((0..=total).flat_map(move |s| {
        compositions(k - 1, s).map(move |mut v| {
            v.push(total - s);
            v
        })
    }))
}

fn walk_k(id: MapId) -> WalkK {
    match id {
        // Planes x + y + z = n, z descending, then y ascending.
        MapId::P3d => Box::new((0..).flat_map(|n: Int| {
            (0..=n).rev().flat_map(move |z| (0..=n - z).map(move |y| vec![n - z - y, y, z]))
        })),
        MapId::Pkd(k) => Box::new((0..).flat_map(move |n| compositions(k, n))),
        planar => Box::new(walk2(planar).expect("planar walk").map(|q| vec![q.x, q.y])),
    }
}

/// Image value of the `index`-th point of a walk: `index` itself for
/// mappings onto N0, and `0, -1, 1, -2, ...` for mappings onto Z.
pub fn value_of_index(image: ImageKind, index: Int) -> Int {
    match image {
        ImageKind::N0 => index,
        ImageKind::Z if index % 2 == 0 => index / 2,
        ImageKind::Z => -(index + 1) / 2,
    }
}

/// Inverse of [`value_of_index`]; `None` for values outside the image.
pub fn index_of_value(image: ImageKind, value: Int) -> Option<Int> {
    match image {
        ImageKind::N0 => (value >= 0).then_some(value),
        ImageKind::Z if value >= 0 => Some(2 * value),
        ImageKind::Z => Some(-2 * value - 1),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TraceEntry {
    pub coords: Vec<Int>,
    pub value: Int,
}

impl TraceEntry {
    pub fn point2(&self) -> LatticePoint2 {
        assert_eq!(self.coords.len(), 2, "not a planar trace entry");
        p(self.coords[0], self.coords[1])
    }
}

/// The first points of a walk with their image values.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EnumerationTrace {
    pub map_id: MapId,
    pub entries: Vec<TraceEntry>,
}

impl EnumerationTrace {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.map_id.dim()
    }

    pub fn points2(&self) -> impl Iterator<Item = LatticePoint2> + '_ {
        self.entries.iter().map(TraceEntry::point2)
    }

    /// Planar lookup table from point to value.
    pub fn table(&self) -> TraceReference {
        TraceReference {
            label: format!("{} walk", self.map_id),
            values: self.entries.iter().map(|e| (e.point2(), e.value)).collect(),
        }
    }

    /// Writes `x,y,value` (or `x,y,z,value`, ...) rows with a header.
    pub fn write_csv<W: io::Write>(&self, out: W) -> Result<(), csv::Error> {
        let mut w = csv::Writer::from_writer(out);
        let names = ["x", "y", "z"];
        let mut header: Vec<String> = (0..self.dim())
            .map(|i| names.get(i).map_or_else(|| format!("x{}", i + 1), |n| n.to_string()))
            .collect();
        header.push("value".into());
        w.write_record(&header)?;
        for e in &self.entries {
            w.write_record(e.coords.iter().chain(iter::once(&e.value)).map(Int::to_string))?;
        }
        w.flush()?;
        Ok(())
    }
}

/// The first `n` points of the walk of `id`.
pub fn enumerate(id: MapId, n: usize) -> Result<EnumerationTrace, OracleError> {
    if let MapId::Pkd(k) = id {
        if k < 1 {
            return Err(MapError::InvalidParameter { map: "pkd".into(), reason: "dimension must be >= 1".into() }.into());
        }
    }
    if id.is_planar() {
        builtin(&id)?;
    }
    let image = id.image();
    let entries = walk_k(id)
        .take(n)
        .enumerate()
        .map(|(i, coords)| TraceEntry { coords, value: value_of_index(image, i as Int) })
        .collect();
    Ok(EnumerationTrace { map_id: id, entries })
}

/// A walk used as a fitting reference: points outside the trace have no
/// value.
#[derive(Debug, Clone)]
pub struct TraceReference {
    label: String,
    values: HashMap<LatticePoint2, Int>,
}

impl TraceReference {
    pub fn get(&self, q: LatticePoint2) -> Option<Int> {
        self.values.get(&q).copied()
    }
}

impl Reference for TraceReference {
    fn value_at(&self, q: LatticePoint2) -> Option<Int> {
        self.get(q)
    }

    fn label(&self) -> String {
        self.label.clone()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Divergence {
    pub index: usize,
    pub coords: Vec<Int>,
    pub expected: Int,
    /// The evaluated value, or the evaluation error.
    pub got: Result<Int, String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub map: String,
    pub checked: usize,
    pub passed: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub first_divergence: Option<Divergence>,
}

/// Compares an evaluator with a trace point by point, and checks that the
/// evaluated values hit each of the trace's values exactly once.
pub fn verify_with<F>(name: &str, trace: &EnumerationTrace, eval: F) -> VerifyReport
where
    F: Fn(&[Int]) -> Result<Int, String>,
{
    let image = trace.map_id.image();
    let n = trace.len();
    let mut seen = vec![false; n];
    for (index, e) in trace.entries.iter().enumerate() {
        let got = eval(&e.coords);
        let fresh = match &got {
            Ok(v) => match index_of_value(image, *v) {
                Some(i) if (i as usize) < n && !seen[i as usize] => {
                    seen[i as usize] = true;
                    true
                }
                _ => false,
            },
            Err(_) => false,
        };
        if got.as_ref().ok() != Some(&e.value) || !fresh {
            return VerifyReport {
                map: name.to_string(),
                checked: index,
                passed: false,
                first_divergence: Some(Divergence { index, coords: e.coords.clone(), expected: e.value, got }),
            };
        }
    }
    VerifyReport { map: name.to_string(), checked: n, passed: true, first_divergence: None }
}

/// Checks a planar mapping against the walk of `id`.
pub fn verify_mapping(m: &PiecewiseMapping, trace: &EnumerationTrace) -> VerifyReport {
    verify_with(&m.name, trace, |c| m.eval(p(c[0], c[1])).map_err(|e| e.to_string()))
}

/// Checks the catalogue evaluator of `id` against its own walk.
pub fn verify_bijection(id: MapId, n: usize) -> Result<VerifyReport, OracleError> {
    let trace = enumerate(id, n)?;
    let name = id.to_string();
    Ok(match id {
        MapId::P3d => verify_with(&name, &trace, |c| {
            eval_p3d(LatticePoint3::new(c[0], c[1], c[2])).map_err(|e| e.to_string())
        }),
        MapId::Pkd(_) => verify_with(&name, &trace, |c| eval_pkd(&LatticePointK::new(c.to_vec())).map_err(|e| e.to_string())),
        planar => verify_mapping(&builtin(&planar)?, &trace),
    })
}

/// Direction of the parallel lines a region's form is tiled by.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TileAxis {
    /// Lines `y = r`, parametrised by `x`.
    Rows,
    /// Lines `x = c`, parametrised by `y`.
    Columns,
    /// Lines `x + y = d`, parametrised by `y`.
    Diagonals,
}

impl TileAxis {
    fn point(self, line: Int, t: Int) -> LatticePoint2 {
        match self {
            TileAxis::Rows => p(t, line),
            TileAxis::Columns => p(line, t),
            TileAxis::Diagonals => p(line - t, t),
        }
    }
}

/// One tile: the raw form along a line is `offset + step * t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TileLine {
    pub line: Int,
    pub offset: Rational,
    pub step: Rational,
    /// Constant difference to the next line, absent on the last one.
    pub shift_to_next: Option<Rational>,
}

/// Half-width of the stretch of each line that is sampled.
const TILE_SPAN: Int = 24;

/// Tiles of one region's form along `lines`. The form is evaluated raw, so
/// out-of-domain points count. Fails unless every line is an arithmetic
/// progression and consecutive lines differ by a constant.
pub fn tile_profile(
    m: &PiecewiseMapping,
    region_index: usize,
    lines: std::ops::RangeInclusive<Int>,
    axis: TileAxis,
) -> Result<Vec<TileLine>, OracleError> {
    let form = &m.region(region_index)?.form;
    let at = |line: Int, t: Int| form.eval(axis.point(line, t));
    let constant = |line: Int, what: &'static str, f: &dyn Fn(Int) -> Rational| -> Result<Rational, OracleError> {
        let first = f(-TILE_SPAN);
        for t in -TILE_SPAN + 1..=TILE_SPAN {
            let v = f(t);
            if v != first {
                return Err(OracleError::NonConstantShift { line, what, first: Box::new(first), second: Box::new(v) });
            }
        }
        Ok(first)
    };
    let (start, end) = (*lines.start(), *lines.end());
    let mut out = Vec::new();
    for line in lines {
        let step = constant(line, "step", &|t| at(line, t + 1) - at(line, t))?;
        let shift_to_next = if line < end {
            Some(constant(line, "shift", &|t| at(line + 1, t) - at(line, t))?)
        } else {
            None
        };
        out.push(TileLine { line, offset: at(line, 0), step, shift_to_next });
    }
    debug_assert!(out.len() as Int == (end - start + 1).max(0));
    Ok(out)
}

//! Six-point interpolation of pairing polynomials.
//!
//! Six samples `(x, y, value)` fix the six coefficients of a [`QuadForm`]
//! through the exact linear system whose rows are `[x^2, xy, y^2, x, y, 1]`.
//! Whether the result is the right polynomial for a mapping depends on how
//! the samples were chosen, so every fit can be checked against a reference
//! on a window of lattice points.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::form::{cubic_monomials, quad_monomials, CubicForm3D, QuadForm};
use crate::inverses::invert;
use crate::lattice::{Int, LatticePoint2, LatticePoint3, Rational};
use crate::linalg::{solve_family, RatMatrix, SolutionFamily};
use crate::mappings::{ImageKind, MapError, PiecewiseMapping};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplePoint {
    pub x: Int,
    pub y: Int,
    pub value: Int,
}

impl SamplePoint {
    pub const fn new(x: Int, y: Int, value: Int) -> Self {
        SamplePoint { x, y, value }
    }

    pub fn point(&self) -> LatticePoint2 {
        LatticePoint2::new(self.x, self.y)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SamplePoint3 {
    pub x: Int,
    pub y: Int,
    pub z: Int,
    pub value: Int,
}

impl SamplePoint3 {
    pub const fn new(x: Int, y: Int, z: Int, value: Int) -> Self {
        SamplePoint3 { x, y, z, value }
    }

    pub fn point(&self) -> LatticePoint3 {
        LatticePoint3::new(self.x, self.y, self.z)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FitError {
    #[error("expected {expected} samples, got {got}")]
    SampleCount { expected: usize, got: usize },
    #[error("singular system: rank {rank} of {size}")]
    Singular { rank: usize, size: usize, family: SolutionFamily },
}

/// Matrix rows `[x^2, xy, y^2, x, y, 1]` and the right-hand side of values.
pub fn build_system(samples: &[SamplePoint]) -> Result<(RatMatrix, Vec<Rational>), FitError> {
    if samples.len() != 6 {
        return Err(FitError::SampleCount { expected: 6, got: samples.len() });
    }
    Ok(system_rows(samples.iter().map(|s| (quad_monomials(s.point()).to_vec(), s.value))))
}

pub fn build_system3d(samples: &[SamplePoint3]) -> Result<(RatMatrix, Vec<Rational>), FitError> {
    if samples.len() != 20 {
        return Err(FitError::SampleCount { expected: 20, got: samples.len() });
    }
    Ok(system_rows(samples.iter().map(|s| (cubic_monomials(s.point()).to_vec(), s.value))))
}

fn system_rows(rows: impl Iterator<Item = (Vec<Int>, Int)>) -> (RatMatrix, Vec<Rational>) {
    let (rows, rhs): (Vec<Vec<Int>>, Vec<Int>) = rows.unzip();
    (RatMatrix::from_int_rows(&rows), rhs.into_iter().map(Rational::from_int).collect())
}

/// Exact determinant of a 6×6 system matrix.
pub fn det6(matrix: &RatMatrix) -> Rational {
    assert!(matrix.rows() == 6 && matrix.cols() == 6, "det6 needs a 6x6 matrix");
    matrix.determinant()
}

/// Solves a square system exactly. A singular system reports its rank and,
/// when consistent, the whole solution family.
pub fn solve_exact(matrix: &RatMatrix, rhs: &[Rational]) -> Result<Vec<Rational>, FitError> {
    let family = solve_family(matrix, rhs);
    if family.rank == matrix.cols() && matrix.rows() == matrix.cols() {
        Ok(family.particular.expect("full rank is consistent"))
    } else {
        Err(FitError::Singular { rank: family.rank, size: matrix.cols(), family })
    }
}

fn quad_from(v: Vec<Rational>) -> QuadForm {
    QuadForm::new(v.try_into().expect("six coefficients"))
}

pub fn fit(samples: &[SamplePoint]) -> Result<QuadForm, FitError> {
    let (m, b) = build_system(samples)?;
    solve_exact(&m, &b).map(quad_from)
}

pub fn fit3d(samples: &[SamplePoint3]) -> Result<CubicForm3D, FitError> {
    let (m, b) = build_system3d(samples)?;
    let v = solve_exact(&m, &b)?;
    Ok(CubicForm3D::new(v.try_into().expect("twenty coefficients")))
}

/// Anything that can say what value a lattice point should have.
pub trait Reference {
    /// `None` outside the reference domain.
    fn value_at(&self, p: LatticePoint2) -> Option<Int>;

    fn label(&self) -> String;
}

impl Reference for PiecewiseMapping {
    fn value_at(&self, p: LatticePoint2) -> Option<Int> {
        self.eval(p).ok()
    }

    fn label(&self) -> String {
        self.name.clone()
    }
}

/// Inclusive coordinate box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Window {
    pub x_min: Int,
    pub x_max: Int,
    pub y_min: Int,
    pub y_max: Int,
}

impl Window {
    pub fn new(x_min: Int, x_max: Int, y_min: Int, y_max: Int) -> Self {
        Window { x_min, x_max, y_min, y_max }
    }

    /// Bounding box of the samples grown by `margin` on every side.
    pub fn around(samples: &[SamplePoint], margin: Int) -> Self {
        let xs = samples.iter().map(|s| s.x);
        let ys = samples.iter().map(|s| s.y);
        Window {
            x_min: xs.clone().min().unwrap_or(0) - margin,
            x_max: xs.max().unwrap_or(0) + margin,
            y_min: ys.clone().min().unwrap_or(0) - margin,
            y_max: ys.max().unwrap_or(0) + margin,
        }
    }

    pub fn points(&self) -> impl Iterator<Item = LatticePoint2> + '_ {
        (self.y_min..=self.y_max).flat_map(move |y| (self.x_min..=self.x_max).map(move |x| LatticePoint2::new(x, y)))
    }
}

/// Margin used when no window is given.
pub const DEFAULT_MARGIN: Int = 3;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Mismatch {
    pub point: LatticePoint2,
    pub expected: Int,
    pub got: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Validation {
    Valid { checked: usize },
    Invalid { checked: usize, mismatches: Vec<Mismatch> },
    Singular { rank: usize },
}

impl Validation {
    pub fn is_valid(&self) -> bool {
        matches!(self, Validation::Valid { .. })
    }

    pub fn mismatches(&self) -> &[Mismatch] {
        match self {
            Validation::Invalid { mismatches, .. } => mismatches,
            _ => &[],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FitReport {
    pub form: Option<QuadForm>,
    pub determinant: Rational,
    pub validation: Validation,
    pub samples: Vec<SamplePoint>,
    pub reference: String,
    pub window: Window,
    /// Present when the system is singular but consistent.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<SolutionFamily>,
}

/// Compares `form` with `reference` on every in-domain point of `window`.
pub fn validate(form: &QuadForm, reference: &dyn Reference, window: &Window) -> Validation {
    let mut checked = 0;
    let mut mismatches = Vec::new();
    for p in window.points() {
        let Some(expected) = reference.value_at(p) else { continue };
        checked += 1;
        let got = form.eval(p);
        if got != Rational::from_int(expected) {
            mismatches.push(Mismatch { point: p, expected, got });
        }
    }
    if mismatches.is_empty() {
        Validation::Valid { checked }
    } else {
        Validation::Invalid { checked, mismatches }
    }
}

/// Fits six samples and checks the result against `reference`, by default
/// on the sample bounding box grown by [`DEFAULT_MARGIN`].
pub fn fit_and_validate(
    samples: &[SamplePoint],
    reference: &dyn Reference,
    window: Option<Window>,
) -> Result<FitReport, FitError> {
    let (m, b) = build_system(samples)?;
    let window = window.unwrap_or_else(|| Window::around(samples, DEFAULT_MARGIN));
    let determinant = det6(&m);
    let (form, validation, family) = match solve_exact(&m, &b) {
        Ok(v) => {
            let form = quad_from(v);
            let validation = validate(&form, reference, &window);
            (Some(form), validation, None)
        }
        Err(FitError::Singular { rank, family, .. }) => {
            (None, Validation::Singular { rank }, family.consistent.then_some(family))
        }
        Err(e) => return Err(e),
    };
    Ok(FitReport { form, determinant, validation, samples: samples.to_vec(), reference: reference.label(), window, family })
}

/// Samples for fitting one region of a mapping: region points taken in
/// increasing order of their values, keeping each one that raises the rank
/// of the system, until six are kept. Stops early (fewer than six) if the
/// region's points span a smaller space within the first `scan_limit`
/// values.
pub fn initial_triangle_part(
    m: &PiecewiseMapping,
    region_index: usize,
    scan_limit: usize,
) -> Result<Vec<SamplePoint>, MapError> {
    m.region(region_index)?;
    let mut kept: Vec<SamplePoint> = Vec::new();
    let mut rows: Vec<Vec<Int>> = Vec::new();
    for k in 0..scan_limit as Int {
        let z = match m.image {
            ImageKind::N0 => k,
            // 0, -1, 1, -2, 2, ...
            ImageKind::Z => {
                if k % 2 == 0 {
                    k / 2
                } else {
                    -(k + 1) / 2
                }
            }
        };
        let Ok(p) = invert(m, z) else { continue };
        if m.region_of(p) != Some(region_index) {
            continue;
        }
        rows.push(quad_monomials(p).to_vec());
        if RatMatrix::from_int_rows(&rows).rank() == rows.len() {
            kept.push(SamplePoint::new(p.x, p.y, z));
            if kept.len() == 6 {
                break;
            }
        } else {
            rows.pop();
        }
    }
    Ok(kept)
}

//! Closed-form inverses (unpairing) of the built-in mappings, with a bounded
//! search fallback for derived mappings.

use serde::Serialize;
use thiserror::Error;

use crate::lattice::{isqrt_int, tetrahedral, tetrahedral_root, triangular, triangular_root, Int, LatticePoint2, LatticePoint3, LatticePointK};
use crate::mappings::{eval_pkd, ImageKind, MapError, MapId, PiecewiseMapping};

/// Default half-width of the box scanned by [`bounded_search`].
pub const DEFAULT_SEARCH_RADIUS: Int = 512;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvError {
    #[error("{value} is not in the image of {map}")]
    NotInImage { value: Int, map: String },
    #[error("no preimage of {value} within |x|, |y| <= {radius}")]
    SearchLimit { value: Int, radius: Int },
    #[error(transparent)]
    Map(#[from] MapError),
}

fn not_in_image(value: Int, map: &str) -> InvError {
    InvError::NotInImage { value, map: map.to_string() }
}

fn non_negative(z: Int, map: &str) -> Result<Int, InvError> {
    if z < 0 {
        Err(not_in_image(z, map))
    } else {
        Ok(z)
    }
}

fn p(x: Int, y: Int) -> LatticePoint2 {
    LatticePoint2::new(x, y)
}

/// Diagonal index `w` and offset `t` with `z = T(w) + t`, `0 <= t <= w`.
fn diagonal(z: Int) -> (Int, Int) {
    let w = triangular_root(z);
    (w, z - triangular(w))
}

pub fn invert_cantor1(z: Int) -> Result<LatticePoint2, InvError> {
    let (w, t) = diagonal(non_negative(z, "cantor1")?);
    Ok(p(t, w - t))
}

pub fn invert_cantor2(z: Int) -> Result<LatticePoint2, InvError> {
    let (w, t) = diagonal(non_negative(z, "cantor2")?);
    Ok(p(w - t, t))
}

pub fn invert_cantor1_rot(z: Int) -> Result<LatticePoint2, InvError> {
    let q = invert_cantor1(z).map_err(|_| not_in_image(z, "cantor1_rot"))?;
    Ok(p(q.y, -q.x))
}

pub fn invert_triangular(z: Int) -> Result<LatticePoint2, InvError> {
    let (w, t) = diagonal(non_negative(z, "triangular")?);
    Ok(p(w, t))
}

pub fn invert_triangle_x(z: Int) -> Result<LatticePoint2, InvError> {
    let x = isqrt_int(non_negative(z, "triangle_x")?);
    Ok(p(x, z - x * (x + 1)))
}

pub fn invert_triangle_y(z: Int) -> Result<LatticePoint2, InvError> {
    let y = isqrt_int(non_negative(z, "triangle_y")?);
    Ok(p(y * (y + 1) - z, y))
}

pub fn invert_rosenberg_strong(z: Int) -> Result<LatticePoint2, InvError> {
    let m = isqrt_int(non_negative(z, "rosenberg_strong")?);
    let r = z - m * m;
    Ok(if r <= m { p(m, r) } else { p(2 * m - r, m) })
}

/// Largest `n >= 0` with `start(n) <= z`, for an increasing `start`, found
/// from an estimate and corrected by exact comparison.
fn shell(z: Int, estimate: Int, start: impl Fn(Int) -> Int) -> Int {
    let mut n = estimate.max(0);
    while n > 0 && start(n) > z {
        n -= 1;
    }
    while start(n + 1) <= z {
        n += 1;
    }
    n
}

pub fn invert_half_square_spiral(z: Int) -> Result<LatticePoint2, InvError> {
    non_negative(z, "half_square_spiral")?;
    // Shell n holds 4n + 1 points starting at 2n^2 - n.
    let n = shell(z, (1 + isqrt_int(8 * z + 1)) / 4, |n| 2 * n * n - n);
    let r = z - (2 * n * n - n);
    Ok(if r <= n {
        p(r, -n)
    } else if r <= 3 * n {
        p(n, r - 2 * n)
    } else {
        p(4 * n - r, n)
    })
}

pub fn invert_rhombus_spiral(z: Int) -> Result<LatticePoint2, InvError> {
    if non_negative(z, "rhombus_spiral")? == 0 {
        return Ok(p(0, 0));
    }
    // Shell n >= 1 holds 4n points starting at 2n^2 - 2n + 1.
    let n = shell(z, (1 + isqrt_int(2 * z)) / 2, |n| 2 * n * n - 2 * n + 1).max(1);
    let r = z - (2 * n * n - 2 * n + 1);
    let (side, k) = (r / n, r % n);
    Ok(match side {
        0 => p(n - k, k),
        1 => p(-k, n - k),
        2 => p(-n + k, -k),
        _ => p(k, -n + k),
    })
}

pub fn invert_square_spiral(z: Int) -> Result<LatticePoint2, InvError> {
    if non_negative(z, "square_spiral")? == 0 {
        return Ok(p(0, 0));
    }
    // Shell n >= 1 holds 8n points starting at (2n - 1)^2 on (n, 0).
    let n = (isqrt_int(z) + 1) / 2;
    let r = z - (2 * n - 1) * (2 * n - 1);
    Ok(if r <= n {
        p(n, r)
    } else if r <= 3 * n {
        p(2 * n - r, n)
    } else if r <= 5 * n {
        p(-n, 4 * n - r)
    } else if r <= 7 * n {
        p(r - 6 * n, -n)
    } else {
        p(n, r - 8 * n)
    })
}

pub fn invert_rectangle_spiral(z: Int) -> Result<LatticePoint2, InvError> {
    match non_negative(z, "rectangle_spiral")? {
        0 => return Ok(p(0, 0)),
        1 => return Ok(p(1, -1)),
        _ => {}
    }
    // Loop n >= 1 holds 8n + 2 points starting at 4n^2 - 2n on (n, 1 - n).
    let n = shell(z, (1 + isqrt_int(4 * z + 1)) / 4, |n| 4 * n * n - 2 * n).max(1);
    let r = z - (4 * n * n - 2 * n);
    Ok(if r < 2 * n {
        p(n, r + 1 - n)
    } else if r < 4 * n {
        p(3 * n - 1 - r, n)
    } else if r < 6 * n {
        p(-n, 5 * n - 1 - r)
    } else {
        p(r - 7 * n, -n - 1)
    })
}

pub fn invert_connected_triangle(z: Int) -> Result<LatticePoint2, InvError> {
    let z = non_negative(z, "connected_triangle")?;
    if z < 9 {
        return invert_triangle_x(z);
    }
    let q = invert_triangular(z - 9)?;
    Ok(p(q.x + 3, q.y))
}

pub fn invert_saw(n: Int, z: Int) -> Result<LatticePoint2, InvError> {
    let z = non_negative(z, "saw")?;
    let (q, r) = (z / n, z % n);
    Ok(p(q + r, r))
}

pub fn invert_comb(n: Int, z: Int) -> Result<LatticePoint2, InvError> {
    let z = non_negative(z, "comb")?;
    Ok(p(z / n, z % n))
}

pub fn invert_saw3(z: Int) -> Result<LatticePoint2, InvError> {
    let z = non_negative(z, "saw3")?;
    let y = z % 3;
    let x = (z + 3 - 4 * y) / 3;
    if x >= 2 {
        Ok(p(x, y))
    } else {
        invert_cantor2(z)
    }
}

pub fn invert_zigzag_full_plane(z: Int) -> Result<LatticePoint2, InvError> {
    let z = non_negative(z, "zigzag_full_plane")?;
    let q = invert_half_square_spiral(z / 2)?;
    Ok(if z % 2 == 0 { q } else { p(-1 - q.x, q.y) })
}

pub fn invert_zigzag_full_plane_z(z: Int) -> Result<LatticePoint2, InvError> {
    if z >= 0 {
        invert_half_square_spiral(z)
    } else {
        let q = invert_half_square_spiral(-z - 1)?;
        Ok(p(-1 - q.x, q.y))
    }
}

pub fn invert_alternating(z: Int) -> Result<LatticePoint2, InvError> {
    let (w, t) = diagonal(non_negative(z, "alternating")?);
    Ok(if w % 2 == 1 { p(t, w - t) } else { p(w - t, t) })
}

pub fn invert_sheared(k: Int, z: Int) -> Result<LatticePoint2, InvError> {
    let q = invert_cantor1(z).map_err(|_| not_in_image(z, "sheared"))?;
    Ok(p(q.x - k * q.y, q.y))
}

/// Closed-form inverse of a planar catalogue mapping.
pub fn invert_builtin(id: MapId, z: Int) -> Result<LatticePoint2, InvError> {
    match id {
        MapId::Cantor1 => invert_cantor1(z),
        MapId::Cantor2 => invert_cantor2(z),
        MapId::Cantor1Rot => invert_cantor1_rot(z),
        MapId::Triangular => invert_triangular(z),
        MapId::TriangleX => invert_triangle_x(z),
        MapId::TriangleY => invert_triangle_y(z),
        MapId::RosenbergStrong => invert_rosenberg_strong(z),
        MapId::HalfSquareSpiral => invert_half_square_spiral(z),
        MapId::RhombusSpiral => invert_rhombus_spiral(z),
        MapId::SquareSpiral => invert_square_spiral(z),
        MapId::RectangleSpiral => invert_rectangle_spiral(z),
        MapId::ConnectedTriangle => invert_connected_triangle(z),
        MapId::Saw(n) => invert_saw(n, z),
        MapId::Comb(n) => invert_comb(n, z),
        MapId::Saw3 => invert_saw3(z),
        MapId::ZigzagFullPlane => invert_zigzag_full_plane(z),
        MapId::ZigzagFullPlaneZ => invert_zigzag_full_plane_z(z),
        MapId::Alternating => invert_alternating(z),
        MapId::Sheared(k) => invert_sheared(k, z),
        MapId::P3d | MapId::Pkd(_) => Err(MapError::NotPlanar(id.to_string()).into()),
    }
}

/// Preimage of `z` under `m`: closed form for unmodified catalogue
/// mappings, otherwise a scan of growing square shells around the origin.
pub fn invert(m: &PiecewiseMapping, z: Int) -> Result<LatticePoint2, InvError> {
    if m.image == ImageKind::N0 && z < 0 {
        return Err(not_in_image(z, &m.name));
    }
    match m.builtin {
        Some(id) => invert_builtin(id, z),
        None => bounded_search(m, z, DEFAULT_SEARCH_RADIUS),
    }
}

/// How a preimage was found.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseMethod {
    ClosedForm,
    ShellArithmetic,
    BoundedSearch,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct InverseResult {
    pub point: LatticePoint2,
    pub method: InverseMethod,
}

fn method_of(id: Option<MapId>) -> InverseMethod {
    match id {
        None => InverseMethod::BoundedSearch,
        Some(
            MapId::TriangleX
            | MapId::TriangleY
            | MapId::RosenbergStrong
            | MapId::HalfSquareSpiral
            | MapId::RhombusSpiral
            | MapId::SquareSpiral
            | MapId::RectangleSpiral
            | MapId::ConnectedTriangle
            | MapId::ZigzagFullPlane
            | MapId::ZigzagFullPlaneZ,
        ) => InverseMethod::ShellArithmetic,
        Some(_) => InverseMethod::ClosedForm,
    }
}

/// [`invert`], also reporting which method was used.
pub fn invert_with_method(m: &PiecewiseMapping, z: Int) -> Result<InverseResult, InvError> {
    Ok(InverseResult { point: invert(m, z)?, method: method_of(m.builtin) })
}

/// Scans shells `max(|x|, |y|) = r` for `r = 0..=radius`.
pub fn bounded_search(m: &PiecewiseMapping, z: Int, radius: Int) -> Result<LatticePoint2, InvError> {
    let hit = |q: LatticePoint2| m.eval(q).ok() == Some(z);
    if hit(p(0, 0)) {
        return Ok(p(0, 0));
    }
    for r in 1..=radius {
        for t in -r..r {
            for q in [p(t, -r), p(r, t), p(-t, r), p(-r, -t)] {
                if hit(q) {
                    return Ok(q);
                }
            }
        }
    }
    Err(InvError::SearchLimit { value: z, radius })
}

pub fn invert_p3d(z: Int) -> Result<LatticePoint3, InvError> {
    let z = non_negative(z, "p3d")?;
    // Plane x + y + z = n starts at tetrahedral(n); within the plane the
    // points are ordered by descending last coordinate.
    let n = tetrahedral_root(z);
    let r = z - tetrahedral(n);
    let s = triangular_root(r);
    let y = r - triangular(s);
    Ok(LatticePoint3::new(s - y, y, n - s))
}

/// Inverse of the canonical k-dimensional mapping, peeling off one
/// binomial term per coordinate from the top.
pub fn invert_pkd(k: usize, z: Int) -> Result<LatticePointK, InvError> {
    let mut rest = non_negative(z, "pkd")?;
    if k == 0 {
        return Err(MapError::InvalidParameter { map: "pkd".into(), reason: "dimension must be >= 1".into() }.into());
    }
    let mut sums = vec![0; k];
    for j in (1..=k as Int).rev() {
        // Largest s with binom(s + j - 1, j) <= rest.
        let term = |s: Int| crate::lattice::binomial(s + j - 1, j);
        let (mut lo, mut hi) = (0, 1);
        while term(hi) <= rest {
            hi *= 2;
        }
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if term(mid) <= rest {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        sums[j as usize - 1] = lo;
        rest -= term(lo);
    }
    let mut coords = Vec::with_capacity(k);
    let mut prev = 0;
    for s in sums {
        coords.push(s - prev);
        prev = s;
    }
    let q = LatticePointK::new(coords);
    debug_assert_eq!(eval_pkd(&q).ok(), Some(z));
    Ok(q)
}

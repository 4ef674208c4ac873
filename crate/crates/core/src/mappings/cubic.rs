//! Three- and k-dimensional Cantor-type mappings.

use super::MapError;
use crate::form::CubicForm3D;
use crate::lattice::{binomial, Int, LatticePoint3, LatticePointK};

/// The six-fold cubic on `N0^3`, running along planes `x + y + z = N`.
pub fn p3d_form() -> CubicForm3D {
    //                  x3 y3 z3 x2y x2z y2x y2z z2x z2y xyz x2 y2 z2 xy xz yz  x   y  z  c
    CubicForm3D::over(6, [1, 1, 1, 3, 3, 3, 3, 3, 3, 6, 6, 6, 3, 12, 6, 6, 5, 11, 2, 0])
}

pub fn eval_p3d(p: LatticePoint3) -> Result<Int, MapError> {
    let (x, y, z) = (p.x, p.y, p.z);
    if x < 0 || y < 0 || z < 0 {
        return Err(MapError::NegativeCoordinate(vec![x, y, z]));
    }
    let num = x * x * x
        + y * y * y
        + z * z * z
        + 3 * (x * z * z + y * z * z + z * x * x + 2 * x * y * z + z * y * y + y * x * x + x * y * y)
        + 3 * (2 * x * x + 2 * y * y + z * z + 2 * x * z + 2 * y * z + 4 * x * y)
        + 5 * x
        + 11 * y
        + 2 * z;
    debug_assert_eq!(num % 6, 0);
    Ok(num / 6)
}

/// Canonical k-dimensional Cantor value `sum_j binom(s_j + j - 1, j)`, where
/// `s_j` is the sum of the first `j` coordinates.
pub fn eval_pkd(p: &LatticePointK) -> Result<Int, MapError> {
    let coords = p.coords();
    if coords.iter().any(|&c| c < 0) {
        return Err(MapError::NegativeCoordinate(coords.to_vec()));
    }
    let mut s = 0;
    let mut total = 0;
    for (j, &c) in coords.iter().enumerate() {
        s += c;
        let j = j as Int + 1;
        total += binomial(s + j - 1, j);
    }
    Ok(total)
}

/// The permutation `σ` with `p3d(p) = pkd(p[σ0], p[σ1], p[σ2])` on a test
/// box, or `None` if no coordinate permutation reconciles the two.
pub fn p3d_pkd_permutation() -> Option<[usize; 3]> {
    const PERMS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let pts: Vec<[Int; 3]> =
        (0..8).flat_map(|x| (0..8).flat_map(move |y| (0..8).map(move |z| [x, y, z]))).collect();
    PERMS.into_iter().find(|perm| {
        pts.iter().all(|c| {
            let lhs = eval_p3d(LatticePoint3::new(c[0], c[1], c[2])).expect("non-negative");
            let rhs = eval_pkd(&LatticePointK::new(perm.iter().map(|&i| c[i]).collect())).expect("non-negative");
            lhs == rhs
        })
    })
}

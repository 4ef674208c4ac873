//! Exact linear algebra over the rationals.

use serde::Serialize;

use crate::lattice::{Int, Rational};

/// Dense row-major matrix of rationals.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        RatMatrix { rows: rows.len(), cols, data: rows.into_iter().flatten().collect() }
    }

    pub fn from_int_rows(rows: &[Vec<Int>]) -> Self {
        RatMatrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| Rational::from_int(v)).collect()).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.data[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|r| self.row(r).iter().zip(v).fold(Rational::zero(), |acc, (a, b)| acc + a * b))
            .collect()
    }

    /// Matrix with `rhs` appended as an extra column.
    pub fn augment(&self, rhs: &[Rational]) -> RatMatrix {
        assert_eq!(rhs.len(), self.rows);
        let rows = (0..self.rows)
            .map(|r| self.row(r).iter().cloned().chain(std::iter::once(rhs[r].clone())).collect())
            .collect();
        RatMatrix::from_rows(rows)
    }

    /// Index of the largest-magnitude nonzero entry in column `c` at or below `from`.
    fn pivot_row(&self, c: usize, from: usize) -> Option<usize> {
        (from..self.rows)
            .filter(|&r| !self.get(r, c).is_zero())
            .max_by(|&a, &b| self.get(a, c).abs().cmp(&self.get(b, c).abs()))
    }

    /// Eliminates below the pivot at `(r, c)`.
    fn eliminate_below(&mut self, r: usize, c: usize) {
        let pivot = self.get(r, c).clone();
        for below in r + 1..self.rows {
            if self.get(below, c).is_zero() {
                continue;
            }
            let factor = self.get(below, c).checked_div(&pivot).expect("pivot is nonzero");
            for k in c..self.cols {
                let v = self.get(below, k) - &(&factor * self.get(r, k));
                self.set(below, k, v);
            }
        }
    }

    pub fn determinant(&self) -> Rational {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let mut m = self.clone();
        let mut det = Rational::one();
        for c in 0..m.cols {
            let Some(p) = m.pivot_row(c, c) else {
                return Rational::zero();
            };
            if p != c {
                m.swap_rows(p, c);
                det = -det;
            }
            det = &det * m.get(c, c);
            m.eliminate_below(c, c);
        }
        det
    }

    /// Reduced row echelon form and the pivot column of each nonzero row.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = m.pivot_row(c, r) else { continue };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip().expect("pivot is nonzero");
            for k in c..m.cols {
                let v = m.get(r, k) * &inv;
                m.set(r, k, v);
            }
            for other in 0..m.rows {
                if other == r || m.get(other, c).is_zero() {
                    continue;
                }
                let factor = m.get(other, c).clone();
                for k in c..m.cols {
                    let v = m.get(other, k) - &(&factor * m.get(r, k));
                    m.set(other, k, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }
}

/// Complete solution set of `A v = b`: `particular + span(null_basis)` when
/// consistent.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SolutionFamily {
    pub rank: usize,
    pub consistent: bool,
    pub particular: Option<Vec<Rational>>,
    pub null_basis: Vec<Vec<Rational>>,
}

impl SolutionFamily {
    /// `particular + sum(params[i] * null_basis[i])`.
    pub fn member(&self, params: &[Rational]) -> Option<Vec<Rational>> {
        let mut v = self.particular.clone()?;
        assert_eq!(params.len(), self.null_basis.len(), "one parameter per null vector");
        for (t, basis) in params.iter().zip(&self.null_basis) {
            for (slot, b) in v.iter_mut().zip(basis) {
                *slot = &*slot + &(t * b);
            }
        }
        Some(v)
    }

    pub fn is_unique(&self) -> bool {
        self.consistent && self.null_basis.is_empty()
    }
}

pub fn solve_family(a: &RatMatrix, b: &[Rational]) -> SolutionFamily {
    let n = a.cols();
    let (r, pivots) = a.augment(b).rref();
    let consistent = !pivots.contains(&n);
    let rank = pivots.iter().filter(|&&c| c < n).count();
    let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
    let particular = consistent.then(|| {
        let mut v = vec![Rational::zero(); n];
        for (row, &c) in pivots.iter().enumerate() {
            v[c] = r.get(row, n).clone();
        }
        v
    });
    let null_basis = free
        .iter()
        .map(|&f| {
            let mut v = vec![Rational::zero(); n];
            v[f] = Rational::one();
            for (row, &c) in pivots.iter().enumerate() {
                if c < n {
                    v[c] = -r.get(row, f).clone();
                }
            }
            v
        })
        .collect();
    SolutionFamily { rank, consistent, particular, null_basis }
}

/// Unique solution of a square nonsingular system, `None` if singular.
pub fn solve_unique(a: &RatMatrix, b: &[Rational]) -> Option<Vec<Rational>> {
    if a.rows() != a.cols() {
        return None;
    }
    let family = solve_family(a, b);
    if family.rank == a.cols() {
        family.particular
    } else {
        None
    }
}

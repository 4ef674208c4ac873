//! Baseline containers for benchmarks.

use pairkit::Int;

/// Row-major `order x order` matrix, the padded counterpart of
/// [`pairkit::PackedTriangular`].
#[derive(Debug, Clone, PartialEq)]
pub struct PaddedSquare<T> {
    order: usize,
    data: Vec<T>,
}

impl<T: Default + Clone> PaddedSquare<T> {
    /// Fills the lower triangle from `f` and leaves the rest at the default value.
    pub fn from_fn(order: Int, mut f: impl FnMut(Int, Int) -> T) -> Self {
        let n = order as usize;
        let mut data = vec![T::default(); n * n];
        for r in 0..n {
            for c in 0..=r {
                data[r * n + c] = f(r as Int, c as Int);
            }
        }
        PaddedSquare { order: n, data }
    }
}

impl<T> PaddedSquare<T> {
    pub fn get(&self, row: Int, col: Int) -> Option<&T> {
        let (r, c) = (usize::try_from(row).ok()?, usize::try_from(col).ok()?);
        (c <= r && r < self.order).then(|| &self.data[r * self.order + c])
    }

    pub fn len(&self) -> usize {
        self.data.len()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use pairkit::PackedTriangular;

    #[test]
    fn agrees_with_packed() {
        let f = |r: Int, c: Int| (r * 31 + c) as i64;
        let padded = PaddedSquare::from_fn(40, f);
        let packed = PackedTriangular::from_fn(40, f);
        for r in 0..40 {
            for c in 0..=r {
                assert_eq!(padded.get(r, c), packed.get(r, c).ok());
            }
        }
        assert_eq!(padded.get(2, 3), None);
        assert_eq!(padded.len(), 1600);
        assert_eq!(packed.len(), 820);
    }
}

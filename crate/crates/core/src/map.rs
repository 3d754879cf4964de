//! Affine maps between variable spaces: `x = M y + offset`.

use num_traits::Signed;

use crate::error::{Error, Result};
use crate::matrix::RatMatrix;
use crate::rational::{RatVector, Rational};
use crate::space::VarSpace;

/// An affine map from `domain` to `codomain`. The matrix has one row per
/// codomain variable and one column per domain variable; a linear map is the
/// special case of a zero offset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMapSpec {
    pub matrix: RatMatrix,
    pub offset: RatVector,
    pub domain: VarSpace,
    pub codomain: VarSpace,
}

impl AffineMapSpec {
    pub fn new(
        matrix: RatMatrix,
        offset: RatVector,
        domain: VarSpace,
        codomain: VarSpace,
    ) -> Result<Self> {
        if matrix.cols() != domain.dim() || matrix.rows() != codomain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "map matrix is {}x{} but codomain/domain have {}/{} variables",
                matrix.rows(),
                matrix.cols(),
                codomain.dim(),
                domain.dim()
            )));
        }
        if offset.len() != codomain.dim() {
            return Err(Error::DimensionMismatch(format!(
                "offset has length {} but the codomain has {} variables",
                offset.len(),
                codomain.dim()
            )));
        }
        Ok(Self { matrix, offset, domain, codomain })
    }

    /// A linear map: zero offset.
    pub fn linear(matrix: RatMatrix, domain: VarSpace, codomain: VarSpace) -> Result<Self> {
        let offset = vec![crate::rational::int(0); codomain.dim()];
        Self::new(matrix, offset, domain, codomain)
    }

    pub fn apply(&self, y: &[Rational]) -> Result<RatVector> {
        let mut x = self.matrix.mul_vec(y)?;
        for (xi, oi) in x.iter_mut().zip(&self.offset) {
            *xi += oi;
        }
        Ok(x)
    }

    /// Position of the first strictly negative matrix entry, if any.
    pub fn first_negative_entry(&self) -> Option<(usize, usize)> {
        for i in 0..self.matrix.rows() {
            for j in 0..self.matrix.cols() {
                if self.matrix[(i, j)].is_negative() {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    #[test]
    fn apply_is_matrix_times_vector_plus_offset() {
        let m = RatMatrix::from_i64(&[&[1, 1], &[0, 0]]);
        let map = AffineMapSpec::new(
            m,
            vec![int(1), int(-1)],
            VarSpace::flat("y", 2),
            VarSpace::flat("x", 2),
        )
        .unwrap();
        assert_eq!(map.apply(&[int(2), int(3)]).unwrap(), vec![int(6), int(-1)]);
    }

    #[test]
    fn shape_mismatches_are_rejected() {
        let m = RatMatrix::from_i64(&[&[1, 1]]);
        assert!(AffineMapSpec::linear(m, VarSpace::flat("y", 2), VarSpace::flat("x", 2)).is_err());
    }
}

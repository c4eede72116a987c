//! Finitely supported elements of the block algebra.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, BlockShape, Window};

/// An element of the direct sum: finitely many nonzero blocks. Zero blocks
/// are never stored, so equality is structural.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct FiniteElement {
    blocks: BTreeMap<BlockIndex, Mat>,
}

impl FiniteElement {
    pub fn zero() -> FiniteElement {
        FiniteElement {
            blocks: BTreeMap::new(),
        }
    }

    /// Build from raw blocks, dropping zero matrices; validates dimensions
    /// against the shape.
    pub fn new(shape: &BlockShape, blocks: BTreeMap<BlockIndex, Mat>) -> Result<FiniteElement> {
        let mut out = BTreeMap::new();
        for (index, mat) in blocks {
            let dim = shape.dim(&index)?;
            if mat.rows() != dim || mat.cols() != dim {
                return Err(Error::ShapeMismatch(format!(
                    "block {index} expects {dim}x{dim}, got {}x{}",
                    mat.rows(),
                    mat.cols()
                )));
            }
            if !mat.is_zero() {
                out.insert(index, mat);
            }
        }
        Ok(FiniteElement { blocks: out })
    }

    /// Single-block element.
    pub fn single(shape: &BlockShape, index: BlockIndex, mat: Mat) -> Result<FiniteElement> {
        FiniteElement::new(shape, [(index, mat)].into_iter().collect())
    }

    /// Point mass: the identity of one block.
    pub fn block_unit(shape: &BlockShape, index: &BlockIndex) -> Result<FiniteElement> {
        let dim = shape.dim(index)?;
        FiniteElement::single(shape, index.clone(), Mat::identity(dim))
    }

    /// The unit of the finite direct summand over a window: identity in each
    /// listed block. Errors on an empty window.
    pub fn central_idempotent(shape: &BlockShape, window: &Window) -> Result<FiniteElement> {
        if window.is_empty() {
            return Err(Error::EmptyWindow);
        }
        let mut blocks = BTreeMap::new();
        for index in window.iter() {
            let dim = shape.dim(index)?;
            blocks.insert(index.clone(), Mat::identity(dim));
        }
        Ok(FiniteElement { blocks })
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn support(&self) -> Window {
        Window::new(self.blocks.keys().cloned())
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&BlockIndex, &Mat)> {
        self.blocks.iter()
    }

    /// Block at an index; the zero matrix of the right size outside the
    /// support.
    pub fn block(&self, shape: &BlockShape, index: &BlockIndex) -> Result<Mat> {
        match self.blocks.get(index) {
            Some(m) => Ok(m.clone()),
            None => {
                let dim = shape.dim(index)?;
                Ok(Mat::zeros(dim, dim))
            }
        }
    }

    pub fn stored_block(&self, index: &BlockIndex) -> Option<&Mat> {
        self.blocks.get(index)
    }

    pub fn add(&self, other: &FiniteElement) -> FiniteElement {
        let mut blocks = self.blocks.clone();
        for (i, m) in &other.blocks {
            match blocks.get_mut(i) {
                Some(existing) => {
                    let sum = &*existing + m;
                    if sum.is_zero() {
                        blocks.remove(i);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    blocks.insert(i.clone(), m.clone());
                }
            }
        }
        FiniteElement { blocks }
    }

    pub fn neg(&self) -> FiniteElement {
        FiniteElement {
            blocks: self.blocks.iter().map(|(i, m)| (i.clone(), -m)).collect(),
        }
    }

    pub fn sub(&self, other: &FiniteElement) -> FiniteElement {
        self.add(&other.neg())
    }

    pub fn scale(&self, s: &Scalar) -> FiniteElement {
        if s.is_zero() {
            return FiniteElement::zero();
        }
        FiniteElement {
            blocks: self
                .blocks
                .iter()
                .map(|(i, m)| (i.clone(), m.scale(s)))
                .collect(),
        }
    }

    /// Blockwise product; support shrinks to the common support.
    pub fn mul(&self, other: &FiniteElement) -> FiniteElement {
        let mut blocks = BTreeMap::new();
        for (i, m) in &self.blocks {
            if let Some(n) = other.blocks.get(i) {
                let prod = m * n;
                if !prod.is_zero() {
                    blocks.insert(i.clone(), prod);
                }
            }
        }
        FiniteElement { blocks }
    }

    /// Blockwise conjugate transpose.
    pub fn adjoint(&self) -> FiniteElement {
        FiniteElement {
            blocks: self
                .blocks
                .iter()
                .map(|(i, m)| (i.clone(), m.conj_transpose()))
                .collect(),
        }
    }
}

impl fmt::Display for FiniteElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .blocks
            .iter()
            .map(|(i, m)| {
                if m.rows() == 1 {
                    format!("{i}: {}", m.at(0, 0))
                } else {
                    format!("{i}: {m:?}")
                }
            })
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z_shape() -> BlockShape {
        BlockShape::Lattice { rank: 1 }
    }

    fn delta(n: i64) -> FiniteElement {
        FiniteElement::block_unit(&z_shape(), &BlockIndex::int(n)).unwrap()
    }

    #[test]
    fn zero_blocks_are_never_stored() {
        let e = delta(3).sub(&delta(3));
        assert!(e.is_zero());
        let f = delta(1).add(&delta(1).neg()).add(&delta(2));
        assert_eq!(f, delta(2));
    }

    #[test]
    fn central_idempotent_is_idempotent_and_selfadjoint() {
        let shape = z_shape();
        let w = Window::new([-1, 0, 1].map(BlockIndex::int));
        let e = FiniteElement::central_idempotent(&shape, &w).unwrap();
        assert_eq!(e.mul(&e), e);
        assert_eq!(e.adjoint(), e);
        assert!(FiniteElement::central_idempotent(&shape, &Window::empty()).is_err());
    }

    #[test]
    fn idempotent_lattice_meets() {
        let shape = z_shape();
        let f = Window::new([0, 1, 2].map(BlockIndex::int));
        let g = Window::new([1, 2, 3].map(BlockIndex::int));
        let ef = FiniteElement::central_idempotent(&shape, &f).unwrap();
        let eg = FiniteElement::central_idempotent(&shape, &g).unwrap();
        let meet = FiniteElement::central_idempotent(&shape, &f.intersection(&g)).unwrap();
        assert_eq!(ef.mul(&eg), meet);
    }

    #[test]
    fn shape_mismatch_is_rejected() {
        let shape = BlockShape::Finite(vec![(BlockIndex::named("std"), 2)]);
        let bad = FiniteElement::single(&shape, BlockIndex::named("std"), Mat::identity(3));
        assert!(matches!(bad, Err(Error::ShapeMismatch(_))));
        let unknown = FiniteElement::single(&shape, BlockIndex::named("huh"), Mat::identity(2));
        assert!(matches!(unknown, Err(Error::UnknownIndex(_))));
    }
}

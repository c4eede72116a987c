//! Multipliers of a tensor product of block algebras.
//!
//! Represented as a finite sum of symbolic terms (elementary tensors of
//! multipliers, and coproducts of multipliers pulled through a model's
//! fusion data) plus finitely many additive block corrections. Block
//! extraction is total, which is all the slice machinery needs.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::element::FiniteElement;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::model::QuantumGroupModel;
use crate::multiplier::Multiplier;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, BlockShape};

#[derive(Clone, Debug)]
pub(crate) enum TensorTerm {
    /// `x (x) y`, scaled.
    Product(Scalar, Multiplier, Multiplier),
    /// The coproduct of a multiplier, scaled.
    Coproduct(Scalar, Arc<QuantumGroupModel>, Multiplier),
}

#[derive(Clone, Debug)]
pub struct TensorMultiplier {
    left_shape: Arc<BlockShape>,
    right_shape: Arc<BlockShape>,
    terms: Vec<TensorTerm>,
    /// Additive corrections on finitely many block pairs.
    corrections: BTreeMap<(BlockIndex, BlockIndex), Mat>,
}

impl TensorMultiplier {
    pub fn zero(left_shape: Arc<BlockShape>, right_shape: Arc<BlockShape>) -> TensorMultiplier {
        TensorMultiplier {
            left_shape,
            right_shape,
            terms: Vec::new(),
            corrections: BTreeMap::new(),
        }
    }

    /// The elementary tensor `x (x) y`.
    pub fn product(x: &Multiplier, y: &Multiplier) -> TensorMultiplier {
        TensorMultiplier {
            left_shape: x.shape().clone(),
            right_shape: y.shape().clone(),
            terms: vec![TensorTerm::Product(Scalar::one(), x.clone(), y.clone())],
            corrections: BTreeMap::new(),
        }
    }

    /// The coproduct of a multiplier, as a multiplier of the tensor square.
    pub fn coproduct(model: &Arc<QuantumGroupModel>, x: &Multiplier) -> TensorMultiplier {
        TensorMultiplier {
            left_shape: model.shape().clone(),
            right_shape: model.shape().clone(),
            terms: vec![TensorTerm::Coproduct(
                Scalar::one(),
                model.clone(),
                x.clone(),
            )],
            corrections: BTreeMap::new(),
        }
    }

    pub fn left_shape(&self) -> &Arc<BlockShape> {
        &self.left_shape
    }

    pub fn right_shape(&self) -> &Arc<BlockShape> {
        &self.right_shape
    }

    pub(crate) fn terms(&self) -> &[TensorTerm] {
        &self.terms
    }

    pub(crate) fn corrections(&self) -> &BTreeMap<(BlockIndex, BlockIndex), Mat> {
        &self.corrections
    }

    pub fn add(&self, other: &TensorMultiplier) -> TensorMultiplier {
        assert_eq!(self.left_shape, other.left_shape, "tensor shapes disagree");
        assert_eq!(self.right_shape, other.right_shape, "tensor shapes disagree");
        let mut terms = self.terms.clone();
        terms.extend(other.terms.iter().cloned());
        let mut corrections = self.corrections.clone();
        for (k, m) in &other.corrections {
            match corrections.get_mut(k) {
                Some(existing) => {
                    let sum = &*existing + m;
                    if sum.is_zero() {
                        corrections.remove(k);
                    } else {
                        *existing = sum;
                    }
                }
                None => {
                    corrections.insert(k.clone(), m.clone());
                }
            }
        }
        TensorMultiplier {
            left_shape: self.left_shape.clone(),
            right_shape: self.right_shape.clone(),
            terms,
            corrections,
        }
    }

    pub fn scale(&self, s: &Scalar) -> TensorMultiplier {
        if s.is_zero() {
            return TensorMultiplier::zero(self.left_shape.clone(), self.right_shape.clone());
        }
        TensorMultiplier {
            left_shape: self.left_shape.clone(),
            right_shape: self.right_shape.clone(),
            terms: self
                .terms
                .iter()
                .map(|t| match t {
                    TensorTerm::Product(c, x, y) => {
                        TensorTerm::Product(c.mul(s), x.clone(), y.clone())
                    }
                    TensorTerm::Coproduct(c, m, x) => {
                        TensorTerm::Coproduct(c.mul(s), m.clone(), x.clone())
                    }
                })
                .collect(),
            corrections: self
                .corrections
                .iter()
                .map(|(k, m)| (k.clone(), m.scale(s)))
                .collect(),
        }
    }

    /// Add a correction on one block pair.
    pub fn with_correction(mut self, beta: BlockIndex, iota: BlockIndex, m: Mat) -> TensorMultiplier {
        if m.is_zero() {
            return self;
        }
        let key = (beta, iota);
        match self.corrections.get_mut(&key) {
            Some(existing) => {
                let sum = &*existing + &m;
                if sum.is_zero() {
                    self.corrections.remove(&key);
                } else {
                    *existing = sum;
                }
            }
            None => {
                self.corrections.insert(key, m);
            }
        }
        self
    }

    /// Total block extraction at a pair: the Kronecker-indexed matrix in
    /// `M_{n_beta} (x) M_{n_iota}`.
    pub fn block(&self, beta: &BlockIndex, iota: &BlockIndex) -> Result<Mat> {
        let db = self.left_shape.dim(beta)?;
        let di = self.right_shape.dim(iota)?;
        let mut acc = Mat::zeros(db * di, db * di);
        for term in &self.terms {
            match term {
                TensorTerm::Product(c, x, y) => {
                    let xb = x.block(beta)?;
                    let yb = y.block(iota)?;
                    if !xb.is_zero() && !yb.is_zero() {
                        acc = &acc + &xb.kron(&yb).scale(c);
                    }
                }
                TensorTerm::Coproduct(c, model, x) => {
                    let b = model.coproduct_block_multiplier(x, beta, iota)?;
                    if !b.is_zero() {
                        acc = &acc + &b.scale(c);
                    }
                }
            }
        }
        if let Some(m) = self.corrections.get(&(beta.clone(), iota.clone())) {
            acc = &acc + m;
        }
        Ok(acc)
    }

    /// Exact block equality with another tensor multiplier on a finite list
    /// of pairs.
    pub fn equal_on_pairs(
        &self,
        other: &TensorMultiplier,
        pairs: &[(BlockIndex, BlockIndex)],
    ) -> Result<bool> {
        for (b, i) in pairs {
            if self.block(b, i)? != other.block(b, i)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// The finite tensor element `(l1 (x) l2) * Y * (r1 (x) r2)`; `None`
    /// factors act as the identity. At least one side of each tensor factor
    /// must be bounded by a finite element, otherwise the product has no
    /// finite description.
    pub fn sandwich(
        &self,
        l1: Option<&FiniteElement>,
        l2: Option<&FiniteElement>,
        r1: Option<&FiniteElement>,
        r2: Option<&FiniteElement>,
    ) -> Result<BTreeMap<(BlockIndex, BlockIndex), Mat>> {
        let first_support = support_bound(l1, r1).ok_or_else(|| {
            Error::UnsupportedTail("unbounded first factor in tensor sandwich".into())
        })?;
        let second_support = support_bound(l2, r2).ok_or_else(|| {
            Error::UnsupportedTail("unbounded second factor in tensor sandwich".into())
        })?;
        let mut out = BTreeMap::new();
        for beta in first_support.iter() {
            let db = self.left_shape.dim(beta)?;
            for iota in second_support.iter() {
                let di = self.right_shape.dim(iota)?;
                let mut block = self.block(beta, iota)?;
                let left = kron_factor(l1, beta, db, l2, iota, di, &self.left_shape, &self.right_shape)?;
                let right = kron_factor(r1, beta, db, r2, iota, di, &self.left_shape, &self.right_shape)?;
                if let Some(l) = left {
                    block = &l * &block;
                }
                if let Some(r) = right {
                    block = &block * &r;
                }
                if !block.is_zero() {
                    out.insert((beta.clone(), iota.clone()), block);
                }
            }
        }
        Ok(out)
    }
}

fn support_bound(
    a: Option<&FiniteElement>,
    b: Option<&FiniteElement>,
) -> Option<crate::shape::Window> {
    match (a, b) {
        (Some(x), Some(y)) => Some(x.support().intersection(&y.support())),
        (Some(x), None) => Some(x.support()),
        (None, Some(y)) => Some(y.support()),
        (None, None) => None,
    }
}

#[allow(clippy::too_many_arguments)]
fn kron_factor(
    first: Option<&FiniteElement>,
    beta: &BlockIndex,
    db: usize,
    second: Option<&FiniteElement>,
    iota: &BlockIndex,
    di: usize,
    left_shape: &BlockShape,
    right_shape: &BlockShape,
) -> Result<Option<Mat>> {
    let f = match first {
        Some(x) => Some(x.block(left_shape, beta)?),
        None => None,
    };
    let s = match second {
        Some(y) => Some(y.block(right_shape, iota)?),
        None => None,
    };
    Ok(match (f, s) {
        (None, None) => None,
        (Some(a), None) => Some(a.kron(&Mat::identity(di))),
        (None, Some(b)) => Some(Mat::identity(db).kron(&b)),
        (Some(a), Some(b)) => Some(a.kron(&b)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::lattice_model;

    fn chr(model: &Arc<QuantumGroupModel>, l: i64) -> Multiplier {
        Multiplier::character(model.shape().clone(), vec![Scalar::from_int(l)]).unwrap()
    }

    #[test]
    fn coproduct_blocks_pull_back_along_addition() {
        let model = lattice_model(1);
        let x = chr(&model, 2);
        let y = TensorMultiplier::coproduct(&model, &x);
        for (m, n) in [(0i64, 0i64), (2, 3), (-1, 4)] {
            let b = y.block(&BlockIndex::int(m), &BlockIndex::int(n)).unwrap();
            assert_eq!(b.at(0, 0), &Scalar::from_int(2).pow_i64(m + n));
        }
    }

    #[test]
    fn product_blocks_are_kronecker() {
        let model = lattice_model(1);
        let y = TensorMultiplier::product(&chr(&model, 2), &chr(&model, 3));
        let b = y.block(&BlockIndex::int(2), &BlockIndex::int(1)).unwrap();
        assert_eq!(b.at(0, 0), &Scalar::from_int(12));
    }

    #[test]
    fn sums_and_corrections() {
        let model = lattice_model(1);
        let y = TensorMultiplier::product(&chr(&model, 2), &chr(&model, 3))
            .add(&TensorMultiplier::coproduct(&model, &chr(&model, 5)))
            .with_correction(
                BlockIndex::int(0),
                BlockIndex::int(0),
                Mat::from_scalar(Scalar::from_int(7)),
            );
        let b = y.block(&BlockIndex::int(0), &BlockIndex::int(0)).unwrap();
        // 2^0 3^0 + 5^0 + 7 = 9
        assert_eq!(b.at(0, 0), &Scalar::from_int(9));
    }
}

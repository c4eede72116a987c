//! Slices of tensor multipliers with reduced functionals.
//!
//! The right slice of `Y` with a reduced functional `xi` is the unique
//! multiplier `m` with `zeta(m) = (zeta (x) xi)(Y)` for every reduced
//! `zeta`; it is computed blockwise by pairing `xi`'s canonical weights
//! against a block row of `Y`. The defining formulas of the underlying
//! existence proof (left and right multiplication through a chosen
//! decomposition of `xi`) are kept as an independent cross-check.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::element::FiniteElement;
use crate::error::Result;
use crate::functional::{RawFunctional, ReducedFunctional};
use crate::matrix::Mat;
use crate::model::{FusionTable, QuantumGroupModel};
use crate::multiplier::Multiplier;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, BlockShape};
use crate::tensor::{TensorMultiplier, TensorTerm};

/// `(id (x) xi)(Y)`: slice away the second factor.
pub fn right_slice(y: &TensorMultiplier, xi: &ReducedFunctional) -> Result<Multiplier> {
    let mut acc = Multiplier::zero(y.left_shape().clone());
    for term in y.terms() {
        match term {
            TensorTerm::Product(c, x, second) => {
                let v = xi.eval_multiplier(second)?.mul(c);
                if !v.is_zero() {
                    acc = acc.add(&x.scale(&v));
                }
            }
            TensorTerm::Coproduct(c, model, x) => {
                let sliced = slice_coproduct(model, x, xi, SliceSide::Right)?;
                acc = acc.add(&sliced.scale(c));
            }
        }
    }
    let mut corr: BTreeMap<BlockIndex, Mat> = BTreeMap::new();
    for ((beta, iota), block) in y.corrections() {
        for (xi_index, g) in xi.weights() {
            if xi_index != iota {
                continue;
            }
            let db = y.left_shape().dim(beta)?;
            let di = y.right_shape().dim(iota)?;
            let piece = block.contract_second_factor(db, di, g);
            add_block(&mut corr, beta, piece);
        }
    }
    fold_corrections(acc, y.left_shape(), corr)
}

/// `(zeta (x) id)(Y)`: slice away the first factor.
pub fn left_slice(zeta: &ReducedFunctional, y: &TensorMultiplier) -> Result<Multiplier> {
    let mut acc = Multiplier::zero(y.right_shape().clone());
    for term in y.terms() {
        match term {
            TensorTerm::Product(c, first, x) => {
                let v = zeta.eval_multiplier(first)?.mul(c);
                if !v.is_zero() {
                    acc = acc.add(&x.scale(&v));
                }
            }
            TensorTerm::Coproduct(c, model, x) => {
                let sliced = slice_coproduct(model, x, zeta, SliceSide::Left)?;
                acc = acc.add(&sliced.scale(c));
            }
        }
    }
    let mut corr: BTreeMap<BlockIndex, Mat> = BTreeMap::new();
    for ((beta, iota), block) in y.corrections() {
        for (z_index, g) in zeta.weights() {
            if z_index != beta {
                continue;
            }
            let db = y.left_shape().dim(beta)?;
            let di = y.right_shape().dim(iota)?;
            let piece = block.contract_first_factor(db, di, g);
            add_block(&mut corr, iota, piece);
        }
    }
    fold_corrections(acc, y.right_shape(), corr)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum SliceSide {
    /// pair the functional against the second factor of the coproduct
    Right,
    /// pair it against the first factor
    Left,
}

/// Slice of a coproduct term: on lattice models this is a shift-and-combine
/// of the sliced multiplier (with corrections where fusion overrides bite);
/// on finite models every block is computed directly.
fn slice_coproduct(
    model: &Arc<QuantumGroupModel>,
    x: &Multiplier,
    functional: &ReducedFunctional,
    side: SliceSide,
) -> Result<Multiplier> {
    let shape = model.shape().clone();
    match &**model.shape() {
        BlockShape::Finite(list) => {
            let mut blocks = BTreeMap::new();
            for (out_index, out_dim) in list {
                let mut total = Mat::zeros(*out_dim, *out_dim);
                for (f_index, g) in functional.weights() {
                    let df = shape.dim(f_index)?;
                    let block = match side {
                        SliceSide::Right => {
                            model.coproduct_block_multiplier(x, out_index, f_index)?
                        }
                        SliceSide::Left => {
                            model.coproduct_block_multiplier(x, f_index, out_index)?
                        }
                    };
                    let piece = match side {
                        SliceSide::Right => block.contract_second_factor(*out_dim, df, g),
                        SliceSide::Left => block.contract_first_factor(df, *out_dim, g),
                    };
                    total = &total + &piece;
                }
                if !total.is_zero() {
                    blocks.insert(out_index.clone(), total);
                }
            }
            Multiplier::new(shape, blocks, crate::tail::TailRule::Zero)
        }
        BlockShape::Lattice { .. } => {
            let shifts: Vec<(Vec<i64>, Scalar)> = functional
                .weights()
                .map(|(i, g)| (i.as_lattice().unwrap().to_vec(), g.at(0, 0).clone()))
                .collect();
            let mut base = x.shift_combine(&shifts)?;
            // fusion overrides change finitely many coproduct blocks away
            // from pure addition; correct the affected output blocks
            if let FusionTable::LatticeAdd { overrides, .. } = model.fusion() {
                for (pair_alpha, pair_beta) in overrides.keys() {
                    let (out_index, f_index) = match side {
                        SliceSide::Right => (pair_alpha, pair_beta),
                        SliceSide::Left => (pair_beta, pair_alpha),
                    };
                    let Some(g) = functional
                        .weights()
                        .find(|(i, _)| *i == f_index)
                        .map(|(_, g)| g)
                    else {
                        continue;
                    };
                    let w = g.at(0, 0).clone();
                    let true_block = match side {
                        SliceSide::Right => {
                            model.coproduct_block_multiplier(x, out_index, f_index)?
                        }
                        SliceSide::Left => {
                            model.coproduct_block_multiplier(x, f_index, out_index)?
                        }
                    };
                    let true_value = true_block.at(0, 0).mul(&w);
                    let sum: Vec<i64> = out_index
                        .as_lattice()
                        .unwrap()
                        .iter()
                        .zip(f_index.as_lattice().unwrap())
                        .map(|(a, b)| a + b)
                        .collect();
                    let assumed = x
                        .block(&BlockIndex::Lattice(sum))?
                        .at(0, 0)
                        .mul(&w);
                    let delta = true_value.sub(&assumed);
                    if !delta.is_zero() {
                        let current = base.block(out_index)?.at(0, 0).clone();
                        let mut explicit: BTreeMap<BlockIndex, Mat> = base
                            .explicit()
                            .map(|(i, m)| (i.clone(), m.clone()))
                            .collect();
                        explicit.insert(
                            out_index.clone(),
                            Mat::from_scalar(current.add(&delta)),
                        );
                        base = Multiplier::new(
                            base.shape().clone(),
                            explicit,
                            base.tail().clone(),
                        )?;
                    }
                }
            }
            Ok(base)
        }
    }
}

fn add_block(map: &mut BTreeMap<BlockIndex, Mat>, index: &BlockIndex, piece: Mat) {
    if piece.is_zero() {
        return;
    }
    match map.get_mut(index) {
        Some(existing) => {
            let sum = &*existing + &piece;
            if sum.is_zero() {
                map.remove(index);
            } else {
                *existing = sum;
            }
        }
        None => {
            map.insert(index.clone(), piece);
        }
    }
}

fn fold_corrections(
    acc: Multiplier,
    shape: &Arc<BlockShape>,
    corr: BTreeMap<BlockIndex, Mat>,
) -> Result<Multiplier> {
    if corr.is_empty() {
        return Ok(acc);
    }
    let fe = FiniteElement::new(shape, corr)?;
    Ok(acc.add(&Multiplier::embed(shape.clone(), &fe)?))
}

/// The existence proof's displayed formula for right multiplication:
/// `m * b2 = (id (x) f)((1 (x) c) Y (b2 (x) a))` where `xi = a f c`.
pub fn formula_right_mul(
    y: &TensorMultiplier,
    a: &FiniteElement,
    f: &RawFunctional,
    c: &FiniteElement,
    b2: &FiniteElement,
) -> Result<FiniteElement> {
    let sandwiched = y.sandwich(None, Some(c), Some(b2), Some(a))?;
    contract_sandwich_second(y, f, sandwiched)
}

/// The companion formula for left multiplication:
/// `b1 * m = (id (x) f)((b1 (x) c) Y (1 (x) a))`.
pub fn formula_left_mul(
    y: &TensorMultiplier,
    a: &FiniteElement,
    f: &RawFunctional,
    c: &FiniteElement,
    b1: &FiniteElement,
) -> Result<FiniteElement> {
    let sandwiched = y.sandwich(Some(b1), Some(c), None, Some(a))?;
    contract_sandwich_second(y, f, sandwiched)
}

fn contract_sandwich_second(
    y: &TensorMultiplier,
    f: &RawFunctional,
    sandwiched: BTreeMap<(BlockIndex, BlockIndex), Mat>,
) -> Result<FiniteElement> {
    let mut blocks: BTreeMap<BlockIndex, Mat> = BTreeMap::new();
    for ((beta, iota), block) in sandwiched {
        let db = y.left_shape().dim(&beta)?;
        let di = y.right_shape().dim(&iota)?;
        let w = f.weight(y.right_shape(), &iota)?;
        let piece = block.contract_second_factor(db, di, &w);
        add_block(&mut blocks, &beta, piece);
    }
    FiniteElement::new(y.left_shape(), blocks)
}

/// Canonical decomposition `xi = a f c` used by the formula cross-checks:
/// both cut-offs are the central idempotent of the support and `f` extends
/// the canonical weights by zero.
pub fn decompose_for_formulas(
    shape: &BlockShape,
    xi: &ReducedFunctional,
) -> Result<(FiniteElement, RawFunctional, FiniteElement)> {
    let support = xi.support();
    let e = FiniteElement::central_idempotent(shape, &support)?;
    let weights: BTreeMap<BlockIndex, Mat> =
        xi.weights().map(|(i, m)| (i.clone(), m.clone())).collect();
    Ok((e.clone(), RawFunctional::from_weights(weights), e))
}

//! Linear functionals on the block algebra.
//!
//! Reduced functionals are the finitely supported ones; they are exactly the
//! functionals that extend canonically from the algebra to its multiplier
//! algebra, by pairing their block weights against extracted blocks. Raw
//! functionals may weight every block (finitely described) but evaluate on
//! finitely supported elements only.
//!
//! Invariant (Haar) functionals are solved generically from the fusion data
//! as the null space of the exact invariance equations over a probe window,
//! normalized to weight one at the counit block.

use std::collections::BTreeMap;

use crate::element::FiniteElement;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::model::QuantumGroupModel;
use crate::multiplier::Multiplier;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, BlockShape, Window};
use crate::tensor::TensorMultiplier;

/// Finitely described total weight family.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WeightRule {
    /// Explicit weights; every unlisted block weighs zero.
    Explicit(BTreeMap<BlockIndex, Mat>),
    /// `value` times the identity on every block.
    UniformScalar(Scalar),
}

/// A linear functional defined on every block, evaluated against finitely
/// supported elements only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RawFunctional {
    rule: WeightRule,
}

impl RawFunctional {
    pub fn new(rule: WeightRule) -> RawFunctional {
        RawFunctional { rule }
    }

    pub fn uniform(value: Scalar) -> RawFunctional {
        RawFunctional {
            rule: WeightRule::UniformScalar(value),
        }
    }

    pub fn from_weights(weights: BTreeMap<BlockIndex, Mat>) -> RawFunctional {
        RawFunctional {
            rule: WeightRule::Explicit(weights),
        }
    }

    pub fn rule(&self) -> &WeightRule {
        &self.rule
    }

    pub fn weight(&self, shape: &BlockShape, index: &BlockIndex) -> Result<Mat> {
        let dim = shape.dim(index)?;
        Ok(match &self.rule {
            WeightRule::Explicit(map) => map
                .get(index)
                .cloned()
                .unwrap_or_else(|| Mat::zeros(dim, dim)),
            WeightRule::UniformScalar(s) => Mat::scalar(dim, s),
        })
    }

    /// Evaluation on a finitely supported element.
    pub fn eval(&self, shape: &BlockShape, a: &FiniteElement) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (index, block) in a.blocks() {
            let w = self.weight(shape, index)?;
            acc = acc.add(&w.trace_product(block));
        }
        Ok(acc)
    }
}

/// A reduced functional in canonical form: finitely many block weights, with
/// zero weights never stored. Its action extends to every multiplier.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct ReducedFunctional {
    weights: BTreeMap<BlockIndex, Mat>,
}

impl ReducedFunctional {
    pub fn zero() -> ReducedFunctional {
        ReducedFunctional {
            weights: BTreeMap::new(),
        }
    }

    pub fn new(weights: BTreeMap<BlockIndex, Mat>) -> ReducedFunctional {
        ReducedFunctional {
            weights: weights.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    /// Point evaluation at a one-dimensional block.
    pub fn point_evaluation(shape: &BlockShape, index: &BlockIndex) -> Result<ReducedFunctional> {
        let dim = shape.dim(index)?;
        if dim != 1 {
            return Err(Error::ShapeMismatch(format!(
                "point evaluation needs a one-dimensional block, {index} has dimension {dim}"
            )));
        }
        Ok(ReducedFunctional::new(
            [(index.clone(), Mat::identity(1))].into_iter().collect(),
        ))
    }

    /// The functional `m -> m_iota[row, col]`.
    pub fn matrix_entry(
        shape: &BlockShape,
        index: &BlockIndex,
        row: usize,
        col: usize,
    ) -> Result<ReducedFunctional> {
        let dim = shape.dim(index)?;
        if row >= dim || col >= dim {
            return Err(Error::ShapeMismatch(format!(
                "entry ({row},{col}) outside block {index} of dimension {dim}"
            )));
        }
        let mut g = Mat::zeros(dim, dim);
        g.set(col, row, Scalar::one());
        Ok(ReducedFunctional::new(
            [(index.clone(), g)].into_iter().collect(),
        ))
    }

    /// The reduced functional `m -> f(b m a)`.
    pub fn reduce(
        shape: &BlockShape,
        a: &FiniteElement,
        f: &RawFunctional,
        b: &FiniteElement,
    ) -> Result<ReducedFunctional> {
        let mut weights = BTreeMap::new();
        for (index, a_block) in a.blocks() {
            let Some(b_block) = b.stored_block(index) else {
                continue;
            };
            let w = f.weight(shape, index)?;
            let g = &(a_block * &w) * b_block;
            if !g.is_zero() {
                weights.insert(index.clone(), g);
            }
        }
        Ok(ReducedFunctional { weights })
    }

    pub fn support(&self) -> Window {
        Window::new(self.weights.keys().cloned())
    }

    pub fn weights(&self) -> impl Iterator<Item = (&BlockIndex, &Mat)> {
        self.weights.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.weights.is_empty()
    }

    pub fn add(&self, other: &ReducedFunctional) -> ReducedFunctional {
        let mut weights = self.weights.clone();
        for (i, m) in &other.weights {
            match weights.get_mut(i) {
                Some(w) => {
                    let sum = &*w + m;
                    if sum.is_zero() {
                        weights.remove(i);
                    } else {
                        *w = sum;
                    }
                }
                None => {
                    weights.insert(i.clone(), m.clone());
                }
            }
        }
        ReducedFunctional { weights }
    }

    pub fn scale(&self, s: &Scalar) -> ReducedFunctional {
        if s.is_zero() {
            return ReducedFunctional::zero();
        }
        ReducedFunctional {
            weights: self
                .weights
                .iter()
                .map(|(i, m)| (i.clone(), m.scale(s)))
                .collect(),
        }
    }

    /// Evaluation on a finitely supported element.
    pub fn eval_element(&self, shape: &BlockShape, a: &FiniteElement) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (index, g) in &self.weights {
            acc = acc.add(&g.trace_product(&a.block(shape, index)?));
        }
        Ok(acc)
    }

    /// The canonical extension to the multiplier algebra.
    pub fn eval_multiplier(&self, m: &Multiplier) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for (index, g) in &self.weights {
            acc = acc.add(&g.trace_product(&m.block(index)?));
        }
        Ok(acc)
    }
}

/// A reduced functional on a tensor product algebra, weights indexed by
/// block pairs.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct TensorFunctional {
    weights: BTreeMap<(BlockIndex, BlockIndex), Mat>,
}

impl TensorFunctional {
    pub fn new(weights: BTreeMap<(BlockIndex, BlockIndex), Mat>) -> TensorFunctional {
        TensorFunctional {
            weights: weights.into_iter().filter(|(_, m)| !m.is_zero()).collect(),
        }
    }

    /// The tensor product of two reduced functionals.
    pub fn tensor(zeta: &ReducedFunctional, xi: &ReducedFunctional) -> TensorFunctional {
        let mut weights = BTreeMap::new();
        for (b, gb) in zeta.weights() {
            for (i, gi) in xi.weights() {
                weights.insert((b.clone(), i.clone()), gb.kron(gi));
            }
        }
        TensorFunctional { weights }
    }

    pub fn weights(&self) -> impl Iterator<Item = (&(BlockIndex, BlockIndex), &Mat)> {
        self.weights.iter()
    }

    pub fn add(&self, other: &TensorFunctional) -> TensorFunctional {
        let mut weights = self.weights.clone();
        for (k, m) in &other.weights {
            match weights.get_mut(k) {
                Some(w) => {
                    let sum = &*w + m;
                    if sum.is_zero() {
                        weights.remove(k);
                    } else {
                        *w = sum;
                    }
                }
                None => {
                    weights.insert(k.clone(), m.clone());
                }
            }
        }
        TensorFunctional { weights }
    }

    /// Extension to tensor multipliers.
    pub fn eval(&self, y: &TensorMultiplier) -> Result<Scalar> {
        let mut acc = Scalar::zero();
        for ((beta, iota), g) in &self.weights {
            acc = acc.add(&g.trace_product(&y.block(beta, iota)?));
        }
        Ok(acc)
    }
}

/// Which invariance a Haar functional satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Side {
    Left,
    Right,
}

impl std::fmt::Display for Side {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Side::Left => write!(f, "left"),
            Side::Right => write!(f, "right"),
        }
    }
}

/// An invariant functional presented by total block weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantFunctional {
    pub side: Side,
    raw: RawFunctional,
    /// The window the solver certified.
    pub window: Window,
}

impl InvariantFunctional {
    pub fn raw(&self) -> &RawFunctional {
        &self.raw
    }

    pub fn eval(&self, shape: &BlockShape, a: &FiniteElement) -> Result<Scalar> {
        self.raw.eval(shape, a)
    }
}

/// Solve for a nontrivial invariant functional on a probe window, growing
/// the window until the solution space stabilizes over two consecutive
/// steps. Normalized so the counit block weighs one.
pub fn solve_invariant(
    model: &QuantumGroupModel,
    window: &Window,
    side: Side,
) -> Result<InvariantFunctional> {
    let windows: Vec<Window> = match &**model.shape() {
        BlockShape::Finite(_) => vec![model.shape().window(0)],
        BlockShape::Lattice { .. } => {
            let r0 = window
                .iter()
                .map(|i| {
                    i.as_lattice()
                        .map(|v| v.iter().map(|x| x.abs()).max().unwrap_or(0))
                        .unwrap_or(0)
                })
                .max()
                .unwrap_or(1)
                .max(1) as u64;
            (r0..=r0 + 5).map(|r| model.shape().window(r)).collect()
        }
    };
    let mut previous_dim: Option<usize> = None;
    for w in windows {
        let (basis, layout) = invariance_nullspace(model, &w, side)?;
        let dim = basis.len();
        if model.shape().is_finite() || previous_dim == Some(dim) {
            return finish_invariant(model, &w, side, basis, layout);
        }
        previous_dim = Some(dim);
    }
    Err(Error::ModelInconsistency(
        "invariance solution space did not stabilize".into(),
    ))
}

/// Unknown layout plus null space of the invariance equations on a window.
fn invariance_nullspace(
    model: &QuantumGroupModel,
    window: &Window,
    side: Side,
) -> Result<(Vec<Vec<Scalar>>, Vec<(BlockIndex, usize)>)> {
    let shape = model.shape();
    // unknown layout: per window block, its weight matrix entries
    let mut layout: Vec<(BlockIndex, usize)> = Vec::new();
    let mut offsets: BTreeMap<BlockIndex, usize> = BTreeMap::new();
    let mut total = 0usize;
    for index in window.iter() {
        let d = shape.dim(index)?;
        offsets.insert(index.clone(), total);
        layout.push((index.clone(), d));
        total += d * d;
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for iota in window.iter() {
        let di = shape.dim(iota)?;
        for u in 0..di {
            for v in 0..di {
                let mut unit = Mat::zeros(di, di);
                unit.set(u, v, Scalar::one());
                let a = FiniteElement::single(shape, iota.clone(), unit)?;
                for probe in window.iter() {
                    let dp = shape.dim(probe)?;
                    // the complement blocks the equation needs; skip probes
                    // whose complements leave the window
                    let complements = match side {
                        Side::Left => model.left_complements(probe, iota)?,
                        Side::Right => model.right_complements(probe, iota)?,
                    };
                    if complements.iter().any(|b| !window.contains(b)) {
                        continue;
                    }
                    // n_probe^2 scalar equations
                    let mut eqs =
                        vec![vec![Scalar::zero(); total]; dp * dp];
                    for comp in &complements {
                        let dc = shape.dim(comp)?;
                        let block = match side {
                            Side::Left => model.coproduct_block(&a, probe, comp)?,
                            Side::Right => model.coproduct_block(&a, comp, probe)?,
                        };
                        let base = offsets[comp];
                        for r in 0..dp {
                            for c in 0..dp {
                                let eq = &mut eqs[r * dp + c];
                                for p in 0..dc {
                                    for q in 0..dc {
                                        // weight entry W[q,p] pairs with
                                        // block entry ((r,p),(c,q)) (left) or
                                        // ((p,r),(q,c)) (right)
                                        let coeff = match side {
                                            Side::Left => {
                                                block.at(r * dc + p, c * dc + q).clone()
                                            }
                                            Side::Right => {
                                                block.at(p * dp + r, q * dp + c).clone()
                                            }
                                        };
                                        if !coeff.is_zero() {
                                            let idx = base + q * dc + p;
                                            eq[idx] = eq[idx].add(&coeff);
                                        }
                                    }
                                }
                            }
                        }
                    }
                    // subtract phi(a) * identity: phi(a) = W_iota[v,u]
                    let base_iota = offsets[iota];
                    for r in 0..dp {
                        let eq = &mut eqs[r * dp + r];
                        let idx = base_iota + v * di + u;
                        eq[idx] = eq[idx].sub(&Scalar::one());
                    }
                    rows.extend(eqs);
                }
            }
        }
    }
    let system = Mat::from_rows(rows);
    Ok((system.nullspace(), layout))
}

fn finish_invariant(
    model: &QuantumGroupModel,
    window: &Window,
    side: Side,
    basis: Vec<Vec<Scalar>>,
    layout: Vec<(BlockIndex, usize)>,
) -> Result<InvariantFunctional> {
    if basis.is_empty() {
        return Err(Error::ModelInconsistency(format!(
            "no nontrivial {side} invariant functional on window {window}"
        )));
    }
    // locate the counit block weight for normalization
    let mut offset = 0usize;
    let mut trivial_offset = None;
    for (index, d) in &layout {
        if index == model.trivial_block() {
            trivial_offset = Some(offset);
        }
        offset += d * d;
    }
    let trivial_offset = trivial_offset.ok_or_else(|| {
        Error::ModelInconsistency("counit block outside the solver window".into())
    })?;
    let chosen = basis
        .iter()
        .find(|v| !v[trivial_offset].is_zero())
        .ok_or_else(|| {
            Error::ModelInconsistency(
                "invariant functional vanishes on the counit block; cannot normalize".into(),
            )
        })?;
    let scale = chosen[trivial_offset].inv();
    let mut weights = BTreeMap::new();
    let mut offset = 0usize;
    for (index, d) in &layout {
        let m = Mat::from_fn(*d, *d, |q, p| chosen[offset + q * d + p].mul(&scale));
        if !m.is_zero() {
            weights.insert(index.clone(), m);
        }
        offset += d * d;
    }
    let rule = if model.shape().is_finite() {
        WeightRule::Explicit(weights)
    } else {
        // lattice models: certify the closed form (uniform scalar weights)
        let mut value: Option<Scalar> = None;
        let mut uniform = true;
        for (index, _) in &layout {
            let v = weights
                .get(index)
                .map(|m| m.at(0, 0).clone())
                .unwrap_or_else(Scalar::zero);
            match &value {
                None => value = Some(v),
                Some(prev) => {
                    if *prev != v {
                        uniform = false;
                        break;
                    }
                }
            }
        }
        if !uniform {
            return Err(Error::ModelInconsistency(
                "lattice invariant weights do not extend to a closed form".into(),
            ));
        }
        WeightRule::UniformScalar(value.unwrap_or_else(Scalar::zero))
    };
    Ok(InvariantFunctional {
        side,
        raw: RawFunctional::new(rule),
        window: window.clone(),
    })
}

impl QuantumGroupModel {
    /// The cached Haar functional of the given side, solved on the default
    /// window at first use.
    pub fn haar(&self, side: Side) -> Result<InvariantFunctional> {
        let slot = match side {
            Side::Left => &self.haar_cache[0],
            Side::Right => &self.haar_cache[1],
        };
        let cached = slot.get_or_init(|| {
            solve_invariant(self, &self.default_window(), side).map_err(|e| e.to_string())
        });
        cached
            .clone()
            .map_err(Error::ModelInconsistency)
    }
}

/// The dual element `a phi`: the reduced functional `b -> phi(b a)`.
pub fn dual_element(
    model: &QuantumGroupModel,
    a: &FiniteElement,
) -> Result<ReducedFunctional> {
    let phi = model.haar(Side::Left)?;
    let shape = model.shape();
    let mut weights = BTreeMap::new();
    for (index, block) in a.blocks() {
        let w = phi.raw().weight(shape, index)?;
        let g = block * &w;
        if !g.is_zero() {
            weights.insert(index.clone(), g);
        }
    }
    Ok(ReducedFunctional { weights })
}

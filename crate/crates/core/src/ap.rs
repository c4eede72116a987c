//! Almost-periodicity: detecting when the coproduct of a multiplier is a
//! finite sum of elementary tensors of multipliers.
//!
//! The windowed coefficient matrix of `delta(x)` has rows indexed by matrix
//! entries of the first tensor factor and columns by entries of the second;
//! its rank is monotone in the window, and `x` is almost periodic exactly
//! when the rank stays bounded. On lattice models a verdict is certified
//! symbolically: a multiplier with a pure exponential-polynomial tail pulls
//! back along addition into an exact finite tensor decomposition, while any
//! canonical deviation from the tail forces unbounded window rank. Finite
//! models collapse: every multiplier decomposes over the full window.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::element::FiniteElement;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::model::QuantumGroupModel;
use crate::multiplier::Multiplier;
use crate::scalar::Scalar;
use crate::shape::{BlockIndex, BlockShape, Window};
use crate::tail::{ExpPoly, FnKey, TailRule};

/// The exact windowed coefficient matrix of `delta(x)`.
#[derive(Clone, Debug)]
pub struct CoefficientMatrix {
    pub row_labels: Vec<(BlockIndex, usize, usize)>,
    pub col_labels: Vec<(BlockIndex, usize, usize)>,
    pub matrix: Mat,
}

impl CoefficientMatrix {
    pub fn rank(&self) -> usize {
        self.matrix.rank()
    }
}

/// Build the coefficient matrix of `delta(x)` over a window.
pub fn coefficient_matrix(
    model: &QuantumGroupModel,
    x: &Multiplier,
    window: &Window,
) -> Result<CoefficientMatrix> {
    let shape = model.shape();
    let mut labels = Vec::new();
    for index in window.iter() {
        let d = shape.dim(index)?;
        for i in 0..d {
            for j in 0..d {
                labels.push((index.clone(), i, j));
            }
        }
    }
    let n = labels.len();
    let mut matrix = Mat::zeros(n, n);
    let mut row_base = 0usize;
    for alpha in window.iter() {
        let da = shape.dim(alpha)?;
        let mut col_base = 0usize;
        for beta in window.iter() {
            let db = shape.dim(beta)?;
            let block = model.coproduct_block_multiplier(x, alpha, beta)?;
            for i in 0..da {
                for j in 0..da {
                    for p in 0..db {
                        for q in 0..db {
                            let v = block.at(i * db + p, j * db + q);
                            if !v.is_zero() {
                                matrix.set(
                                    row_base + i * da + j,
                                    col_base + p * db + q,
                                    v.clone(),
                                );
                            }
                        }
                    }
                }
            }
            col_base += db * db;
        }
        row_base += da * da;
    }
    Ok(CoefficientMatrix {
        row_labels: labels.clone(),
        col_labels: labels,
        matrix,
    })
}

/// Outcome of the almost-periodicity test.
#[derive(Clone, Debug)]
pub enum APVerdict {
    Yes {
        rank: usize,
        x_legs: Vec<Multiplier>,
        y_legs: Vec<Multiplier>,
        profile: Vec<(u64, usize)>,
    },
    No {
        witness_radius: u64,
        rank: usize,
        bound: usize,
        profile: Vec<(u64, usize)>,
    },
    Inconclusive {
        profile: Vec<(u64, usize)>,
    },
}

impl APVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, APVerdict::Yes { .. })
    }

    pub fn is_no(&self) -> bool {
        matches!(self, APVerdict::No { .. })
    }

    pub fn rank(&self) -> Option<usize> {
        match self {
            APVerdict::Yes { rank, .. } => Some(*rank),
            _ => None,
        }
    }

    pub fn profile(&self) -> &[(u64, usize)] {
        match self {
            APVerdict::Yes { profile, .. }
            | APVerdict::No { profile, .. }
            | APVerdict::Inconclusive { profile } => profile,
        }
    }
}

/// Test whether `delta(x)` is a finite sum of elementary multiplier tensors.
///
/// `horizon` bounds the window growth (at least two steps). `bound` caps the
/// admissible rank; by default it is the dimension of the leg search space,
/// i.e. the number of tail basis functions plus the number of canonical
/// deviations.
pub fn ap_test(
    model: &Arc<QuantumGroupModel>,
    x: &Multiplier,
    horizon: u64,
    bound: Option<usize>,
) -> Result<APVerdict> {
    let horizon = horizon.max(2);
    match &**model.shape() {
        BlockShape::Finite(_) => ap_test_finite(model, x),
        BlockShape::Lattice { .. } => ap_test_lattice(model, x, horizon, bound),
    }
}

/// Finite models: the multiplier algebra is finite-dimensional, so the full
/// coefficient matrix always factorizes exactly.
fn ap_test_finite(model: &Arc<QuantumGroupModel>, x: &Multiplier) -> Result<APVerdict> {
    let window = model.shape().window(0);
    let cm = coefficient_matrix(model, x, &window)?;
    let (c, r) = cm.matrix.rank_factorize();
    let rank = c.cols();
    let shape = model.shape();
    let mut x_legs = Vec::with_capacity(rank);
    let mut y_legs = Vec::with_capacity(rank);
    for k in 0..rank {
        let mut x_blocks: BTreeMap<BlockIndex, Mat> = BTreeMap::new();
        for (row, (index, i, j)) in cm.row_labels.iter().enumerate() {
            let v = c.at(row, k);
            if v.is_zero() {
                continue;
            }
            let d = shape.dim(index)?;
            let entry = x_blocks
                .entry(index.clone())
                .or_insert_with(|| Mat::zeros(d, d));
            entry.set(*i, *j, v.clone());
        }
        let mut y_blocks: BTreeMap<BlockIndex, Mat> = BTreeMap::new();
        for (col, (index, p, q)) in cm.col_labels.iter().enumerate() {
            let v = r.at(k, col);
            if v.is_zero() {
                continue;
            }
            let d = shape.dim(index)?;
            let entry = y_blocks
                .entry(index.clone())
                .or_insert_with(|| Mat::zeros(d, d));
            entry.set(*p, *q, v.clone());
        }
        x_legs.push(Multiplier::new(shape.clone(), x_blocks, TailRule::Zero)?);
        y_legs.push(Multiplier::new(shape.clone(), y_blocks, TailRule::Zero)?);
    }
    Ok(APVerdict::Yes {
        rank,
        x_legs,
        y_legs,
        profile: vec![(0, rank)],
    })
}

fn ap_test_lattice(
    model: &Arc<QuantumGroupModel>,
    x: &Multiplier,
    horizon: u64,
    bound: Option<usize>,
) -> Result<APVerdict> {
    let tail = match x.tail() {
        TailRule::ExpPoly(f) => f.clone(),
        TailRule::Zero => ExpPoly::zero(model.shape().lattice_rank().unwrap()),
        other => {
            return Err(Error::UnsupportedTail(format!(
                "leg extraction for tail {other:?}"
            )))
        }
    };
    let deviations = x.deviation_support();
    let bound = bound.unwrap_or(tail.leg_space_size() + deviations.len());

    // full rank profile over the horizon; windows at radius 0, 1, ...
    let mut profile: Vec<(u64, usize)> = Vec::new();
    let mut stabilized = false;
    let mut exceeded: Option<(u64, usize)> = None;
    for radius in 0..=horizon {
        let window = model.shape().window(radius);
        let rank = coefficient_matrix(model, x, &window)?.rank();
        if let Some(&(_, prev)) = profile.last() {
            debug_assert!(rank >= prev, "window rank must be monotone");
            if rank == prev {
                stabilized = true;
            }
        }
        profile.push((radius, rank));
        if rank > bound && exceeded.is_none() {
            exceeded = Some((radius, rank));
        }
    }
    if let Some((witness_radius, rank)) = exceeded {
        return Ok(APVerdict::No {
            witness_radius,
            rank,
            bound,
            profile,
        });
    }
    if !(stabilized && deviations.is_empty()) {
        return Ok(APVerdict::Inconclusive { profile });
    }
    // Certified: the tail pulls back along addition into an exact finite
    // decomposition; reduce it to minimal rank with independent legs.
    let (x_legs, y_legs) = extract_legs(model, &tail)?;
    Ok(APVerdict::Yes {
        rank: x_legs.len(),
        x_legs,
        y_legs,
        profile,
    })
}

/// Exact minimal-rank leg extraction for a pure exponential-polynomial tail:
/// binomially expand the pullback, then rank-factorize the coefficient
/// tensor over the (linearly independent) basis functions.
fn extract_legs(
    model: &Arc<QuantumGroupModel>,
    tail: &ExpPoly,
) -> Result<(Vec<Multiplier>, Vec<Multiplier>)> {
    let pairs = tail.pullback_decomposition();
    if pairs.is_empty() {
        return Ok((Vec::new(), Vec::new()));
    }
    let mut x_keys: Vec<FnKey> = Vec::new();
    let mut y_keys: Vec<FnKey> = Vec::new();
    let mut entries: Vec<(usize, usize, Scalar)> = Vec::new();
    for (xf, yf) in &pairs {
        let xc = xf.coordinates();
        let yc = yf.coordinates();
        for (xk, xv) in &xc {
            let xi = index_of(&mut x_keys, xk);
            for (yk, yv) in &yc {
                let yi = index_of(&mut y_keys, yk);
                entries.push((xi, yi, xv.mul(yv)));
            }
        }
    }
    let mut coeff = Mat::zeros(x_keys.len(), y_keys.len());
    for (i, j, v) in entries {
        let cur = coeff.at(i, j).add(&v);
        coeff.set(i, j, cur);
    }
    let (c, r) = coeff.rank_factorize();
    let rank = c.cols();
    let lattice_rank = model.shape().lattice_rank().unwrap();
    let rebuild = |keys: &[FnKey], weights: &dyn Fn(usize) -> Scalar| -> Result<Multiplier> {
        let mut f = ExpPoly::zero(lattice_rank);
        for (idx, key) in keys.iter().enumerate() {
            let w = weights(idx);
            if w.is_zero() {
                continue;
            }
            f = f.add(&ExpPoly::term(
                key.base.clone(),
                crate::poly::MultiPoly::monomial(lattice_rank, key.monomial.clone(), w),
            ));
        }
        Multiplier::from_tail(model.shape().clone(), f)
    };
    let mut x_legs = Vec::with_capacity(rank);
    let mut y_legs = Vec::with_capacity(rank);
    for k in 0..rank {
        x_legs.push(rebuild(&x_keys, &|i| c.at(i, k).clone())?);
        y_legs.push(rebuild(&y_keys, &|j| r.at(k, j).clone())?);
    }
    Ok((x_legs, y_legs))
}

fn index_of(keys: &mut Vec<FnKey>, key: &FnKey) -> usize {
    match keys.iter().position(|k| k == key) {
        Some(i) => i,
        None => {
            keys.push(key.clone());
            keys.len() - 1
        }
    }
}

/// Outcome of the windowed linear independence test.
#[derive(Clone, Debug)]
pub enum LemmaLOutcome {
    /// Smallest explored window on which right multiplication by its central
    /// idempotent keeps the family independent.
    Independent {
        window: Window,
        idempotent: FiniteElement,
    },
    /// A symbolically certified dependency, normalized so the first nonzero
    /// coefficient is one.
    Dependent { coefficients: Vec<Scalar> },
    /// The windowed null spaces stabilized nonzero but no tail-certified
    /// dependency was found within the horizon.
    Inconclusive { dims: Vec<(usize, usize)> },
}

/// Search for a window whose central idempotent separates the family, or a
/// certified dependency. Windows are the prefixes of the shape's canonical
/// enumeration; the null spaces are nested, which is asserted on every step.
pub fn lemma_l(
    model: &QuantumGroupModel,
    xs: &[Multiplier],
    horizon: u64,
) -> Result<LemmaLOutcome> {
    if xs.is_empty() {
        return Err(Error::ShapeMismatch("empty family".into()));
    }
    let shape = model.shape();
    let max_steps = match &**shape {
        BlockShape::Finite(list) => list.len(),
        BlockShape::Lattice { rank } => {
            let side = 2 * horizon as usize + 1;
            side.pow(*rank as u32)
        }
    };
    let mut window = Window::empty();
    let mut dims: Vec<(usize, usize)> = Vec::new();
    let mut previous: Option<(Mat, Vec<Vec<Scalar>>)> = None;
    for index in shape.enumerate().take(max_steps) {
        window.insert(index);
        let matrix = window_column_matrix(shape, xs, &window)?;
        let nullspace = matrix.nullspace();
        // nesting: every current null vector kills the previous system too
        if let Some((prev_matrix, _)) = &previous {
            for v in &nullspace {
                assert!(
                    matrix_vector_is_zero(prev_matrix, v),
                    "null spaces failed to nest under window growth"
                );
            }
        }
        if nullspace.is_empty() {
            let idempotent = FiniteElement::central_idempotent(shape, &window)?;
            return Ok(LemmaLOutcome::Independent { window, idempotent });
        }
        // try to certify a dependency symbolically on canonical forms
        for v in &nullspace {
            let mut combo = Multiplier::zero(shape_arc(xs));
            for (x, c) in xs.iter().zip(v) {
                combo = combo.add(&x.scale(c));
            }
            if combo.is_zero() {
                let mut coeffs = v.clone();
                if let Some(first) = coeffs.iter().position(|c| !c.is_zero()) {
                    let inv = coeffs[first].inv();
                    for c in coeffs.iter_mut() {
                        *c = c.mul(&inv);
                    }
                }
                return Ok(LemmaLOutcome::Dependent { coefficients: coeffs });
            }
        }
        dims.push((window.len(), nullspace.len()));
        previous = Some((matrix, nullspace));
    }
    Ok(LemmaLOutcome::Inconclusive { dims })
}

fn shape_arc(xs: &[Multiplier]) -> Arc<BlockShape> {
    xs[0].shape().clone()
}

/// Columns are the family members restricted to the window (right
/// multiplication by the window idempotent), rows are window coordinates.
fn window_column_matrix(
    shape: &BlockShape,
    xs: &[Multiplier],
    window: &Window,
) -> Result<Mat> {
    let mut rows = 0usize;
    for index in window.iter() {
        let d = shape.dim(index)?;
        rows += d * d;
    }
    let mut m = Mat::zeros(rows, xs.len());
    for (col, x) in xs.iter().enumerate() {
        let mut row = 0usize;
        for index in window.iter() {
            let d = shape.dim(index)?;
            let block = x.block(index)?;
            for i in 0..d {
                for j in 0..d {
                    let v = block.at(i, j);
                    if !v.is_zero() {
                        m.set(row + i * d + j, col, v.clone());
                    }
                }
            }
            row += d * d;
        }
    }
    Ok(m)
}

fn matrix_vector_is_zero(m: &Mat, v: &[Scalar]) -> bool {
    for r in 0..m.rows() {
        let mut acc = Scalar::zero();
        for c in 0..m.cols() {
            acc = acc.add(&m.at(r, c).mul(&v[c]));
        }
        if !acc.is_zero() {
            return false;
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{builtin_model, lattice_model};
    use crate::poly::MultiPoly;

    fn z_model() -> Arc<QuantumGroupModel> {
        lattice_model(1)
    }

    fn chr(model: &QuantumGroupModel, l: i64) -> Multiplier {
        Multiplier::character(model.shape().clone(), vec![Scalar::from_int(l)]).unwrap()
    }

    fn embed_delta(model: &QuantumGroupModel, n: i64) -> Multiplier {
        Multiplier::embed(
            model.shape().clone(),
            &FiniteElement::block_unit(model.shape(), &BlockIndex::int(n)).unwrap(),
        )
        .unwrap()
    }

    /// Independent Hankel oracle: build the window matrix by direct tail
    /// evaluation, bypassing the fusion machinery.
    fn hankel_rank(x: &Multiplier, radius: i64) -> usize {
        let points: Vec<i64> = (-radius..=radius).collect();
        let m = Mat::from_fn(points.len(), points.len(), |r, c| {
            x.block(&BlockIndex::int(points[r] + points[c]))
                .unwrap()
                .at(0, 0)
                .clone()
        });
        m.rank()
    }

    #[test]
    fn coefficient_matrix_of_a_character_has_rank_one() {
        let model = z_model();
        let x = chr(&model, 2);
        let cm = coefficient_matrix(&model, &x, &model.shape().window(2)).unwrap();
        assert_eq!(cm.matrix.rows(), 5);
        assert_eq!(cm.rank(), 1);
        assert_eq!(cm.rank(), hankel_rank(&x, 2));
    }

    #[test]
    fn coefficient_matrix_of_a_point_mass_is_antidiagonal() {
        let model = z_model();
        let x = embed_delta(&model, 0);
        let cm = coefficient_matrix(&model, &x, &model.shape().window(2)).unwrap();
        assert_eq!(cm.rank(), 5);
        assert_eq!(cm.rank(), hankel_rank(&x, 2));
    }

    #[test]
    fn polynomial_weighted_character_has_rank_two() {
        let model = z_model();
        // x(n) = n * 2^n
        let x = Multiplier::from_tail(
            model.shape().clone(),
            ExpPoly::term(vec![Scalar::from_int(2)], MultiPoly::variable(1, 0)),
        )
        .unwrap();
        let cm = coefficient_matrix(&model, &x, &model.shape().window(3)).unwrap();
        assert_eq!(cm.rank(), 2);
        assert_eq!(cm.rank(), hankel_rank(&x, 3));
    }

    #[test]
    fn rank_is_monotone_in_the_window() {
        let model = z_model();
        let x = chr(&model, 2).add(&embed_delta(&model, 1));
        let mut last = 0;
        for radius in 1..=5 {
            let rank = coefficient_matrix(&model, &x, &model.shape().window(radius))
                .unwrap()
                .rank();
            assert!(rank >= last);
            last = rank;
        }
    }

    #[test]
    fn characters_are_almost_periodic_with_group_like_legs() {
        let model = z_model();
        let x = chr(&model, 2);
        let verdict = ap_test(&model, &x, 8, None).unwrap();
        match &verdict {
            APVerdict::Yes {
                rank,
                x_legs,
                y_legs,
                ..
            } => {
                assert_eq!(*rank, 1);
                assert_eq!(&x_legs[0], &x);
                assert_eq!(&y_legs[0], &x);
            }
            other => panic!("expected Yes, got {other:?}"),
        }
    }

    #[test]
    fn point_masses_are_not_almost_periodic() {
        let model = z_model();
        let verdict = ap_test(&model, &embed_delta(&model, 0), 8, None).unwrap();
        match &verdict {
            APVerdict::No { profile, .. } => {
                // rank grows 1, 3, 5, ... with the window radius
                assert_eq!(&profile[..3], &[(0, 1), (1, 3), (2, 5)]);
            }
            other => panic!("expected No, got {other:?}"),
        }
    }

    #[test]
    fn legs_reproduce_the_coproduct_blockwise() {
        let model = z_model();
        // x(n) = (n^2 + 1) 3^n + 5^n — certified rank 4
        let g = MultiPoly::variable(1, 0);
        let x = Multiplier::from_tail(
            model.shape().clone(),
            ExpPoly::term(vec![Scalar::from_int(3)], g.mul(&g).add(&MultiPoly::one(1)))
                .add(&ExpPoly::character(vec![Scalar::from_int(5)])),
        )
        .unwrap();
        let verdict = ap_test(&model, &x, 8, None).unwrap();
        let APVerdict::Yes { rank, x_legs, y_legs, .. } = &verdict else {
            panic!("expected Yes, got {verdict:?}");
        };
        assert_eq!(*rank, 4);
        for m in -4..=4i64 {
            for n in -4..=4i64 {
                let mut acc = Scalar::zero();
                for (xl, yl) in x_legs.iter().zip(y_legs) {
                    acc = acc.add(
                        &xl.block(&BlockIndex::int(m))
                            .unwrap()
                            .at(0, 0)
                            .mul(yl.block(&BlockIndex::int(n)).unwrap().at(0, 0)),
                    );
                }
                assert_eq!(acc, x.block(&BlockIndex::int(m + n)).unwrap().at(0, 0).clone());
            }
        }
        // applying the counit to the left legs returns x
        let mut back = Multiplier::zero(model.shape().clone());
        for (xl, yl) in x_legs.iter().zip(y_legs) {
            back = back.add(&yl.scale(&model.counit_multiplier(xl).unwrap()));
        }
        assert_eq!(back, x);
    }

    #[test]
    fn finite_models_always_collapse() {
        let model = builtin_model("C(Z/2)").unwrap();
        for label in ["0", "1"] {
            let x = Multiplier::embed(
                model.shape().clone(),
                &FiniteElement::block_unit(model.shape(), &BlockIndex::named(label)).unwrap(),
            )
            .unwrap();
            let verdict = ap_test(&model, &x, 4, None).unwrap();
            let APVerdict::Yes { rank, .. } = verdict else {
                panic!("finite model must collapse");
            };
            assert!(rank <= 2);
        }
    }

    #[test]
    fn lemma_l_separates_distinct_characters() {
        let model = z_model();
        let xs = vec![chr(&model, 1), chr(&model, 2), chr(&model, 3)];
        match lemma_l(&model, &xs, 6).unwrap() {
            LemmaLOutcome::Independent { window, idempotent } => {
                assert_eq!(window.len(), 3);
                assert_eq!(idempotent.support().len(), 3);
                // determinant oracle on the found window
                let m = window_column_matrix(model.shape(), &xs, &window).unwrap();
                assert_eq!(m.rank(), 3);
            }
            other => panic!("expected Independent, got {other:?}"),
        }
    }

    #[test]
    fn lemma_l_certifies_planted_dependencies() {
        let model = z_model();
        let xs = vec![chr(&model, 2), chr(&model, 2)];
        match lemma_l(&model, &xs, 6).unwrap() {
            LemmaLOutcome::Dependent { coefficients } => {
                assert_eq!(coefficients, vec![Scalar::one(), Scalar::from_int(-1)]);
            }
            other => panic!("expected Dependent, got {other:?}"),
        }
    }

    #[test]
    fn lemma_l_grows_past_blind_windows() {
        let model = z_model();
        let xs = vec![embed_delta(&model, 0), embed_delta(&model, 1)];
        match lemma_l(&model, &xs, 6).unwrap() {
            LemmaLOutcome::Independent { window, .. } => {
                // the singleton window {0} cannot separate them; {0,±1} does
                assert_eq!(window.len(), 2);
                assert!(window.contains(&BlockIndex::int(0)));
            }
            other => panic!("expected Independent, got {other:?}"),
        }
    }
}

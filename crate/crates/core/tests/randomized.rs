//! Seeded randomized checks of the algebraic invariants: blockwise
//! products, the *-homomorphism property of the embedding, counit and
//! antipode multiplicativity, the ideal property, and the stability
//! properties of the almost-periodicity certificates.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use qbohr_core::ap::{ap_test, coefficient_matrix, APVerdict};
use qbohr_core::functional::dual_element;
use qbohr_core::model::{builtin_model, lattice_model, s3_dual, QuantumGroupModel};
use qbohr_core::poly::MultiPoly;
use qbohr_core::shape::{BlockIndex, BlockShape};
use qbohr_core::tail::ExpPoly;
use qbohr_core::{FiniteElement, Mat, Multiplier, Scalar};

fn rng() -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x5eed)
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    let num = rng.gen_range(-4i64..=4);
    let den = *[1i64, 2, 3].choose(rng).unwrap();
    Scalar::from_ratio(num, den)
}

fn random_nonzero_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    loop {
        let s = random_scalar(rng);
        if !s.is_zero() {
            return s;
        }
    }
}

fn random_element(rng: &mut ChaCha8Rng, model: &QuantumGroupModel, radius: u64) -> FiniteElement {
    let shape = model.shape();
    let mut blocks = BTreeMap::new();
    for index in shape.window(radius).iter() {
        if rng.gen_bool(0.5) {
            continue;
        }
        let d = shape.dim(index).unwrap();
        let m = Mat::from_fn(d, d, |_, _| random_scalar(rng));
        blocks.insert(index.clone(), m);
    }
    FiniteElement::new(shape, blocks).unwrap()
}

fn random_multiplier(rng: &mut ChaCha8Rng, model: &Arc<QuantumGroupModel>) -> Multiplier {
    match &**model.shape() {
        BlockShape::Finite(_) => {
            Multiplier::embed(model.shape().clone(), &random_element(rng, model, 0)).unwrap()
        }
        BlockShape::Lattice { rank } => {
            let mut tail = ExpPoly::zero(*rank);
            for _ in 0..rng.gen_range(0..=2) {
                let base: Vec<Scalar> =
                    (0..*rank).map(|_| random_nonzero_scalar(rng)).collect();
                let mut poly = MultiPoly::zero(*rank);
                for _ in 0..rng.gen_range(1..=2) {
                    let exps: Vec<u32> = (0..*rank).map(|_| rng.gen_range(0..=1)).collect();
                    poly = poly.add(&MultiPoly::monomial(*rank, exps, random_scalar(rng)));
                }
                tail = tail.add(&ExpPoly::term(base, poly));
            }
            let deviations = random_element(rng, model, 2);
            Multiplier::from_tail(model.shape().clone(), tail)
                .unwrap()
                .add(&Multiplier::embed(model.shape().clone(), &deviations).unwrap())
        }
    }
}

#[test]
fn blockwise_products_two_hundred_samples_per_model() {
    let mut rng = rng();
    for model in [lattice_model(1), s3_dual()] {
        let probe: Vec<BlockIndex> = model.shape().window(3).iter().cloned().collect();
        for _ in 0..200 {
            let x = random_multiplier(&mut rng, &model);
            let y = random_multiplier(&mut rng, &model);
            let product = x.mul(&y);
            let iota = probe.choose(&mut rng).unwrap();
            let lhs = product.block(iota).unwrap();
            let rhs = &x.block(iota).unwrap() * &y.block(iota).unwrap();
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn embedding_is_a_star_homomorphism() {
    let mut rng = rng();
    for model in [lattice_model(1), s3_dual()] {
        for _ in 0..50 {
            let a = random_element(&mut rng, &model, 2);
            let b = random_element(&mut rng, &model, 2);
            let shape = model.shape().clone();
            let ea = Multiplier::embed(shape.clone(), &a).unwrap();
            let eb = Multiplier::embed(shape.clone(), &b).unwrap();
            assert_eq!(
                Multiplier::embed(shape.clone(), &a.mul(&b)).unwrap(),
                ea.mul(&eb)
            );
            assert_eq!(
                Multiplier::embed(shape.clone(), &a.adjoint()).unwrap(),
                ea.adjoint()
            );
            // injectivity on nonzero elements
            if !a.is_zero() {
                assert!(!ea.is_zero());
            }
        }
    }
}

#[test]
fn counit_is_multiplicative_on_a_hundred_pairs() {
    let mut rng = rng();
    for model in [lattice_model(1), s3_dual(), builtin_model("C(S3)").unwrap()] {
        for _ in 0..100 {
            let a = random_element(&mut rng, &model, 2);
            let b = random_element(&mut rng, &model, 2);
            assert_eq!(
                model.counit(&a.mul(&b)),
                model.counit(&a).mul(&model.counit(&b))
            );
        }
    }
}

#[test]
fn antipode_is_antimultiplicative_on_a_hundred_pairs() {
    let mut rng = rng();
    for model in [lattice_model(1), s3_dual()] {
        for _ in 0..100 {
            let x = random_multiplier(&mut rng, &model);
            let y = random_multiplier(&mut rng, &model);
            let lhs = model.antipode_multiplier(&x.mul(&y)).unwrap();
            let rhs = model
                .antipode_multiplier(&y)
                .unwrap()
                .mul(&model.antipode_multiplier(&x).unwrap());
            assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn antipode_star_involution() {
    // kappa(kappa(a)*)* = a
    let mut rng = rng();
    for model in [
        lattice_model(1),
        s3_dual(),
        builtin_model("dual(Z/3)").unwrap(),
        builtin_model("C(S3)").unwrap(),
    ] {
        for _ in 0..50 {
            let a = random_element(&mut rng, &model, 2);
            let once = model.antipode_element(&a).adjoint();
            let twice = model.antipode_element(&once).adjoint();
            assert_eq!(twice, a, "model {}", model.name());
        }
    }
}

#[test]
fn multiplier_actions_keep_elements_finitely_supported() {
    let mut rng = rng();
    let model = lattice_model(1);
    for _ in 0..50 {
        let m = random_multiplier(&mut rng, &model);
        let a = random_element(&mut rng, &model, 3);
        let left = m.left_mul_element(&a);
        let right = m.right_mul_element(&a);
        assert!(left.support().is_subset(&a.support()));
        assert!(right.support().is_subset(&a.support()));
    }
}

#[test]
fn extracted_legs_are_themselves_certified() {
    // every leg of a certified decomposition re-certifies with rank at most
    // the parent's
    let model = lattice_model(1);
    let g = MultiPoly::variable(1, 0);
    let samples = vec![
        Multiplier::character(model.shape().clone(), vec![Scalar::from_int(2)]).unwrap(),
        Multiplier::from_tail(
            model.shape().clone(),
            ExpPoly::term(vec![Scalar::from_int(2)], g.clone()),
        )
        .unwrap(),
        Multiplier::from_tail(
            model.shape().clone(),
            ExpPoly::term(vec![Scalar::from_int(3)], g.mul(&g))
                .add(&ExpPoly::character(vec![Scalar::from_ratio(1, 2)])),
        )
        .unwrap(),
    ];
    for x in samples {
        let verdict = ap_test(&model, &x, 8, None).unwrap();
        let APVerdict::Yes { rank, x_legs, y_legs, .. } = verdict else {
            panic!("sample must certify");
        };
        for leg in x_legs.iter().chain(&y_legs) {
            let sub = ap_test(&model, leg, 8, None).unwrap();
            let APVerdict::Yes { rank: leg_rank, .. } = sub else {
                panic!("leg lost certification");
            };
            assert!(leg_rank <= rank);
        }
        // antipode closure with equal rank
        let flipped = model.antipode_multiplier(&x).unwrap();
        let back = ap_test(&model, &flipped, 8, None).unwrap();
        assert_eq!(back.rank(), Some(rank));
        // adjoint closure with equal rank
        let adj = ap_test(&model, &x.adjoint(), 8, None).unwrap();
        assert_eq!(adj.rank(), Some(rank));
    }
}

#[test]
fn certified_verdicts_are_stable_under_window_growth() {
    let model = lattice_model(1);
    let x = Multiplier::character(model.shape().clone(), vec![Scalar::from_int(2)]).unwrap();
    for horizon in [2u64, 4, 8, 12] {
        let verdict = ap_test(&model, &x, horizon, None).unwrap();
        assert_eq!(verdict.rank(), Some(1), "horizon {horizon}");
    }
}

#[test]
fn dual_functionals_and_matrix_units_see_the_same_rank() {
    // the span of right slices with dual-element functionals matches the
    // windowed coefficient rank on the line model
    let model = lattice_model(1);
    let g = MultiPoly::variable(1, 0);
    let samples = vec![
        Multiplier::character(model.shape().clone(), vec![Scalar::from_int(2)]).unwrap(),
        Multiplier::from_tail(
            model.shape().clone(),
            ExpPoly::term(vec![Scalar::from_int(2)], g).add(&ExpPoly::character(vec![
                Scalar::from_int(3),
            ])),
        )
        .unwrap(),
    ];
    for x in samples {
        let radius = 4u64;
        let window = model.shape().window(radius);
        let direct = coefficient_matrix(&model, &x, &window).unwrap().rank();
        // slices with omega = dual_element(delta_n) are point evaluations;
        // their span over the window has the same dimension
        let y = qbohr_core::TensorMultiplier::coproduct(&model, &x);
        let mut columns: Vec<Vec<Scalar>> = Vec::new();
        for n in -(radius as i64)..=(radius as i64) {
            let omega = dual_element(
                &model,
                &FiniteElement::block_unit(model.shape(), &BlockIndex::int(n)).unwrap(),
            )
            .unwrap();
            let slice = qbohr_core::right_slice(&y, &omega).unwrap();
            columns.push(
                window
                    .iter()
                    .map(|i| slice.block(i).unwrap().at(0, 0).clone())
                    .collect(),
            );
        }
        let m = Mat::from_fn(window.len(), columns.len(), |r, c| columns[c][r].clone());
        assert_eq!(m.rank(), direct);
    }
}

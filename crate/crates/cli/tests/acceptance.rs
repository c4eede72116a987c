//! The acceptance suite: one test per criterion, exact verdicts, stated
//! runtime budgets. Each test prints a single pass line on success.

use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use qbohr_cli::expr::{parse_element, print_expr};
use qbohr_core::ap::{ap_test, lemma_l, APVerdict, LemmaLOutcome};
use qbohr_core::axioms::check_axioms;
use qbohr_core::bohr::{
    bohr_generate, factorize, hopf_identity_suite, verify_presentation, CompactHopf,
    FactorizationOutcome, MorphismSpec,
};
use qbohr_core::corep::{corep_check, Corepresentation, CorepVerdict};
use qbohr_core::functional::{ReducedFunctional, TensorFunctional};
use qbohr_core::matrix::CoordSolver;
use qbohr_core::model::{builtin_model, QuantumGroupModel};
use qbohr_core::shape::{BlockIndex, BlockShape, Window};
use qbohr_core::slice::{
    decompose_for_formulas, formula_left_mul, formula_right_mul, right_slice,
};
use qbohr_core::tail::TailRule;
use qbohr_core::{FiniteElement, Mat, Multiplier, Scalar, TensorMultiplier};

const BUILTINS: [&str; 6] = ["C(Z/2)", "C(Z/6)", "C(S3)", "dual(S3)", "Z", "Z^2"];
const FINITE_BUILTINS: [&str; 4] = ["C(Z/2)", "C(Z/6)", "C(S3)", "dual(S3)"];

fn model(name: &str) -> Arc<QuantumGroupModel> {
    builtin_model(name).unwrap()
}

fn acceptance_window(m: &QuantumGroupModel) -> Window {
    if m.is_finite() {
        m.shape().window(0)
    } else {
        m.shape().window(4)
    }
}

fn budget(test: &str, started: Instant, limit: Duration) {
    let elapsed = started.elapsed();
    assert!(
        elapsed < limit,
        "{test} exceeded its runtime budget: {elapsed:?} > {limit:?}"
    );
}

fn random_scalar(rng: &mut ChaCha8Rng) -> Scalar {
    Scalar::from_ratio(rng.gen_range(-3i64..=3), *[1i64, 2].choose(rng).unwrap())
}

fn random_element(
    rng: &mut ChaCha8Rng,
    m: &QuantumGroupModel,
    radius: u64,
    density: f64,
) -> FiniteElement {
    let shape = m.shape();
    let mut blocks = BTreeMap::new();
    for index in shape.window(radius).iter() {
        if !rng.gen_bool(density) {
            continue;
        }
        let d = shape.dim(index).unwrap();
        blocks.insert(index.clone(), Mat::from_fn(d, d, |_, _| random_scalar(rng)));
    }
    FiniteElement::new(shape, blocks).unwrap()
}

fn random_multiplier(rng: &mut ChaCha8Rng, m: &Arc<QuantumGroupModel>) -> Multiplier {
    match &**m.shape() {
        BlockShape::Finite(_) => {
            Multiplier::embed(m.shape().clone(), &random_element(rng, m, 0, 0.6)).unwrap()
        }
        BlockShape::Lattice { rank } => {
            let base: Vec<Scalar> = (0..*rank)
                .map(|_| loop {
                    let s = random_scalar(rng);
                    if !s.is_zero() {
                        break s;
                    }
                })
                .collect();
            let tail = Multiplier::character(m.shape().clone(), base).unwrap();
            let dev =
                Multiplier::embed(m.shape().clone(), &random_element(rng, m, 2, 0.3)).unwrap();
            tail.add(&dev)
        }
    }
}

fn random_functional(
    rng: &mut ChaCha8Rng,
    m: &QuantumGroupModel,
    radius: u64,
) -> ReducedFunctional {
    loop {
        let shape = m.shape();
        let mut weights = BTreeMap::new();
        for index in shape.window(radius).iter() {
            if !rng.gen_bool(0.4) {
                continue;
            }
            let d = shape.dim(index).unwrap();
            weights.insert(index.clone(), Mat::from_fn(d, d, |_, _| random_scalar(rng)));
        }
        let xi = ReducedFunctional::new(weights);
        if !xi.is_zero() {
            return xi;
        }
    }
}

// -------------------------------------------------------------------------
// 1. axiom suite on the built-in models
// -------------------------------------------------------------------------

#[test]
fn acceptance_1_axiom_suite() {
    let started = Instant::now();
    for name in BUILTINS {
        let m = model(name);
        let window = acceptance_window(&m);
        let report = check_axioms(&m, &window).unwrap();
        assert!(report.all_pass(), "{name} failed:\n{report}");
        assert_eq!(report.checks.len(), 6, "{name}: six axiom groups expected");
    }
    budget("acceptance 1", started, Duration::from_secs(10));
    println!(
        "acceptance 1: PASS — six axiom groups hold exactly on {} models",
        BUILTINS.len()
    );
}

// -------------------------------------------------------------------------
// 2. the slice contract
// -------------------------------------------------------------------------

#[test]
fn acceptance_2_slice_contract() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut total = 0usize;
    for name in BUILTINS {
        let m = model(name);
        let radius = if m.is_finite() { 0 } else { 2 };
        for _ in 0..200 {
            // random Y: a coproduct plus an elementary tensor
            let y = TensorMultiplier::coproduct(&m, &random_multiplier(&mut rng, &m)).add(
                &TensorMultiplier::product(
                    &random_multiplier(&mut rng, &m),
                    &random_multiplier(&mut rng, &m),
                ),
            );
            let xi = random_functional(&mut rng, &m, radius);
            let zeta = random_functional(&mut rng, &m, radius);
            let sliced = right_slice(&y, &xi).unwrap();
            let lhs = zeta.eval_multiplier(&sliced).unwrap();
            let rhs = TensorFunctional::tensor(&zeta, &xi).eval(&y).unwrap();
            assert_eq!(lhs, rhs, "{name}: slice identity failed");

            // the two displayed multiplication formulas agree blockwise
            let (a, f, c) = decompose_for_formulas(m.shape(), &xi).unwrap();
            let b1 = random_element(&mut rng, &m, radius, 0.5);
            let b2 = random_element(&mut rng, &m, radius, 0.5);
            let m_b2 = formula_right_mul(&y, &a, &f, &c, &b2).unwrap();
            let b1_m = formula_left_mul(&y, &a, &f, &c, &b1).unwrap();
            assert_eq!(sliced.right_mul_element(&b2), m_b2, "{name}");
            assert_eq!(sliced.left_mul_element(&b1), b1_m, "{name}");
            let assoc_left = Multiplier::embed(m.shape().clone(), &b1_m)
                .unwrap()
                .right_mul_element(&b2);
            let assoc_right = Multiplier::embed(m.shape().clone(), &m_b2)
                .unwrap()
                .left_mul_element(&b1);
            assert_eq!(assoc_left, assoc_right, "{name}");
            total += 1;
        }
    }
    budget("acceptance 2", started, Duration::from_secs(30));
    println!("acceptance 2: PASS — slice contract exact on {total} randomized triples");
}

// -------------------------------------------------------------------------
// 3. finite case collapse
// -------------------------------------------------------------------------

#[test]
fn acceptance_3_finite_collapse() {
    let started = Instant::now();
    for name in FINITE_BUILTINS {
        let m = model(name);
        // every element of a spanning basis is almost periodic
        let shape = m.shape();
        for index in shape.window(0).iter() {
            let d = shape.dim(index).unwrap();
            for u in 0..d {
                for v in 0..d {
                    let mut unit = Mat::zeros(d, d);
                    unit.set(u, v, Scalar::one());
                    let x = Multiplier::embed(
                        shape.clone(),
                        &FiniteElement::single(shape, index.clone(), unit).unwrap(),
                    )
                    .unwrap();
                    let verdict = ap_test(&m, &x, 4, None).unwrap();
                    assert!(verdict.is_yes(), "{name}: unit({index},{u},{v})");
                }
            }
        }
        // the regular corepresentation regenerates the whole algebra
        let expected_dim = match name {
            "C(Z/2)" => 2,
            "C(Z/6)" => 6,
            "C(S3)" => 6,
            "dual(S3)" => 6,
            _ => unreachable!(),
        };
        let regular = Corepresentation::regular(&m).unwrap();
        let pres = bohr_generate(&m, &[regular], 1).unwrap();
        assert_eq!(pres.dimension(), expected_dim, "{name}");
        assert!(pres.product_table_is_total(), "{name}");
        let verification = verify_presentation(&pres);
        assert!(verification.all_pass(), "{name}:\n{verification}");
    }
    budget("acceptance 3", started, Duration::from_secs(30));
    println!(
        "acceptance 3: PASS — finite models collapse and regenerate at their full dimension"
    );
}

// -------------------------------------------------------------------------
// 4. the positive family on the line
// -------------------------------------------------------------------------

#[test]
fn acceptance_4_positive_family() {
    let started = Instant::now();
    let m = model("Z");
    let verify = |expr: &str, expected_rank: usize, group_like: bool| {
        let x = parse_element(&m, expr).unwrap();
        let verdict = ap_test(&m, &x, 8, None).unwrap();
        let APVerdict::Yes { rank, x_legs, y_legs, .. } = &verdict else {
            panic!("{expr}: expected Yes, got {verdict:?}");
        };
        assert_eq!(*rank, expected_rank, "{expr}");
        if group_like {
            assert_eq!(&x_legs[0], &x, "{expr}: group-like legs");
            assert_eq!(&y_legs[0], &x, "{expr}: group-like legs");
        }
        // decomposition soundness: legs reproduce the coproduct blockwise
        for g in -3..=3i64 {
            for h in -3..=3i64 {
                let mut acc = Scalar::zero();
                for (xl, yl) in x_legs.iter().zip(y_legs) {
                    acc = acc.add(
                        &xl.block(&BlockIndex::int(g))
                            .unwrap()
                            .at(0, 0)
                            .mul(yl.block(&BlockIndex::int(h)).unwrap().at(0, 0)),
                    );
                }
                assert_eq!(
                    acc,
                    x.block(&BlockIndex::int(g + h)).unwrap().at(0, 0).clone(),
                    "{expr} at ({g},{h})"
                );
            }
        }
        // each leg re-certifies with rank at most the parent's
        for leg in x_legs.iter().chain(y_legs) {
            let sub = ap_test(&m, leg, 8, None).unwrap();
            let APVerdict::Yes { rank: leg_rank, .. } = sub else {
                panic!("{expr}: leg lost certification");
            };
            assert!(leg_rank <= *rank, "{expr}: leg rank {leg_rank} > {rank}");
        }
    };
    verify("char(2)", 1, true);
    verify("char(5/2)", 1, true);
    verify("poly(1)*char(3)", 2, false);
    verify("char(2) + char(3)", 2, false);
    verify("char(1/2) + char(-2)", 2, false);
    budget("acceptance 4", started, Duration::from_secs(20));
    println!("acceptance 4: PASS — certified family on the line with minimal ranks");
}

// -------------------------------------------------------------------------
// 5. no finitely supported element is almost periodic
// -------------------------------------------------------------------------

#[test]
fn acceptance_5_finitely_supported_negative() {
    let started = Instant::now();
    let m = model("Z");
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let horizon = 8u64;
    let mut checked = 0usize;
    while checked < 50 {
        let support = random_element(&mut rng, &m, 5, 0.4);
        if support.is_zero() {
            continue;
        }
        let x = Multiplier::embed(m.shape().clone(), &support).unwrap();
        let radius = support
            .support()
            .iter()
            .map(|i| i.as_lattice().unwrap()[0].unsigned_abs())
            .max()
            .unwrap();
        let verdict = ap_test(&m, &x, horizon, None).unwrap();
        let APVerdict::No { profile, .. } = &verdict else {
            panic!("finitely supported element certified: {verdict:?}");
        };
        for (r, rank) in profile {
            if *r >= radius {
                assert!(
                    *rank as u64 > *r,
                    "rank {rank} at radius {r} does not exceed the radius (support {radius})"
                );
            }
        }
        checked += 1;
    }
    // the cointegral itself is the canonical witness
    let h = Multiplier::embed(m.shape().clone(), m.cointegral()).unwrap();
    let verdict = ap_test(&m, &h, horizon, None).unwrap();
    assert!(verdict.is_no(), "embed(h) must fail: {verdict:?}");
    budget("acceptance 5", started, Duration::from_secs(30));
    println!(
        "acceptance 5: PASS — 50 random finitely supported elements rejected; the \
         multiplier algebra is strictly larger than its almost periodic part"
    );
}

// -------------------------------------------------------------------------
// 6. windowed linear independence
// -------------------------------------------------------------------------

#[test]
fn acceptance_6_lemma_l() {
    let started = Instant::now();
    let m = model("Z");
    for n in 1..=6usize {
        let xs: Vec<Multiplier> = (1..=n as i64)
            .map(|l| {
                Multiplier::character(m.shape().clone(), vec![Scalar::from_int(l)]).unwrap()
            })
            .collect();
        match lemma_l(&m, &xs, 8).unwrap() {
            LemmaLOutcome::Independent { window, .. } => {
                assert_eq!(window.len(), n, "window size for {n} characters");
            }
            other => panic!("{n} distinct characters judged {other:?}"),
        }
    }
    // planted dependency: x3 = -2 x1 + 3 x2, so (2, -3, 1) annihilates
    let chr = |l: i64| Multiplier::character(m.shape().clone(), vec![Scalar::from_int(l)]).unwrap();
    let x1 = chr(2);
    let x2 = chr(3);
    let x3 = x1.scale(&Scalar::from_int(-2)).add(&x2.scale(&Scalar::from_int(3)));
    match lemma_l(&m, &[x1, x2, x3], 8).unwrap() {
        LemmaLOutcome::Dependent { coefficients } => {
            // normalized to leading coefficient one: (1, -3/2, 1/2)
            assert_eq!(
                coefficients,
                vec![
                    Scalar::one(),
                    Scalar::from_ratio(-3, 2),
                    Scalar::from_ratio(1, 2)
                ]
            );
        }
        other => panic!("planted dependency judged {other:?}"),
    }
    budget("acceptance 6", started, Duration::from_secs(10));
    println!(
        "acceptance 6: PASS — separating windows of exact size N and planted \
         dependencies recovered (null spaces nest by construction, asserted per step)"
    );
}

// -------------------------------------------------------------------------
// 7. the corepresentation proposition
// -------------------------------------------------------------------------

#[test]
fn acceptance_7_corepresentation() {
    let started = Instant::now();
    let m = model("Z");
    let u = Corepresentation::jordan(&m, Scalar::from_int(2), 2).unwrap();
    let verdict = corep_check(&m, &u, &m.shape().window(3)).unwrap();
    let CorepVerdict::Valid { coefficients } = &verdict else {
        panic!("jordan corepresentation invalid: {verdict:?}");
    };
    for ((k, l), ap) in coefficients {
        let rank = ap.rank().unwrap();
        assert!(rank <= 2, "coefficient ({k},{l}) has rank {rank}");
    }
    let elements: Vec<Multiplier> = u
        .entries()
        .filter(|(_, e)| !e.is_zero())
        .map(|(_, e)| e.clone())
        .collect();
    let suite = hopf_identity_suite(&m, &elements, &m.shape().window(4)).unwrap();
    assert!(suite.all_pass(), "{suite}");
    budget("acceptance 7", started, Duration::from_secs(10));
    println!(
        "acceptance 7: PASS — the unipotent corepresentation validates and its \
         coefficients satisfy the antipode identities exactly"
    );
}

// -------------------------------------------------------------------------
// 8. the universal property
// -------------------------------------------------------------------------

#[test]
fn acceptance_8_universal_property() {
    let started = Instant::now();
    let m = model("Z");
    let chr2 = parse_element(&m, "char(2)").unwrap();
    let half = parse_element(&m, "char(1/2)").unwrap();
    let spec = MorphismSpec {
        hopf: CompactHopf::Laurent,
        images: [
            ("t".to_string(), chr2.clone()),
            ("t_inv".to_string(), half),
        ]
        .into_iter()
        .collect(),
    };
    let outcome = factorize(&m, &spec, 6).unwrap();
    let FactorizationOutcome::Factored { images, certificates } = &outcome else {
        panic!("{outcome:?}");
    };
    assert_eq!(certificates["t"], 1);
    // Phi = inclusion after the factored map: the images, read back in the
    // multiplier algebra, are the original ones — verified blockwise
    let window = m.shape().window(4);
    for index in window.iter() {
        assert_eq!(
            images["t"].block(index).unwrap(),
            chr2.block(index).unwrap()
        );
    }

    // the corrupted image: relations hold (a pointwise inverse exists), the
    // intertwining fails with a located pair
    let bad_t = parse_element(&m, "char(2) + delta(0)").unwrap();
    let bad_t_inv = parse_element(&m, "char(1/2) - 1/2*delta(0)").unwrap();
    assert_eq!(bad_t.mul(&bad_t_inv), Multiplier::one(m.shape().clone()));
    let bad_spec = MorphismSpec {
        hopf: CompactHopf::Laurent,
        images: [
            ("t".to_string(), bad_t.clone()),
            ("t_inv".to_string(), bad_t_inv),
        ]
        .into_iter()
        .collect(),
    };
    let outcome = factorize(&m, &bad_spec, 6).unwrap();
    let FactorizationOutcome::Failure { reason } = &outcome else {
        panic!("corrupted image factored: {outcome:?}");
    };
    assert!(reason.contains("intertwining"), "{reason}");
    // and the image itself is rejected by the almost-periodicity test
    let verdict = ap_test(&m, &bad_t, 8, None).unwrap();
    assert!(verdict.is_no(), "{verdict:?}");
    budget("acceptance 8", started, Duration::from_secs(10));
    println!(
        "acceptance 8: PASS — the Laurent morphism factors through the almost \
         periodic subalgebra; the corrupted image is rejected with an intertwining witness"
    );
}

// -------------------------------------------------------------------------
// 9. conjecture probe (non-assertive)
// -------------------------------------------------------------------------

/// Every certified element found by randomized search over the expression
/// grammar is checked for expressibility over corepresentation
/// coefficients. Discrepancies are reported, never failed.
#[test]
fn acceptance_9_conjecture_probe() {
    let started = Instant::now();
    let m = model("Z");
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut certified = 0usize;
    let mut expressible = 0usize;
    let mut discrepancies: Vec<String> = Vec::new();
    for _ in 0..120 {
        let text = random_expression(&mut rng, 0);
        let Ok(x) = parse_element(&m, &text) else {
            continue;
        };
        if x.is_zero() {
            continue;
        }
        let Ok(verdict) = ap_test(&m, &x, 6, None) else {
            continue;
        };
        if !verdict.is_yes() {
            continue;
        }
        certified += 1;
        if element_lies_in_coefficient_span(&m, &x) {
            expressible += 1;
        } else {
            discrepancies.push(print_expr(&m, &x).unwrap_or(text));
        }
    }
    assert!(certified >= 20, "search found only {certified} certified elements");
    for d in &discrepancies {
        println!("acceptance 9: discrepancy (reported, not failed): {d}");
    }
    budget("acceptance 9", started, Duration::from_secs(60));
    println!(
        "acceptance 9: PASS — probe ran: {certified} certified elements, \
         {expressible} expressible over corepresentation coefficients, {} reported \
         discrepancies",
        discrepancies.len()
    );
}

fn random_expression(rng: &mut ChaCha8Rng, depth: usize) -> String {
    let atom = |rng: &mut ChaCha8Rng| -> String {
        match rng.gen_range(0..6) {
            0 => {
                let lambda = *["2", "3", "1/2", "-2", "5", "1"].choose(rng).unwrap();
                format!("char({lambda})")
            }
            1 => format!("delta({})", rng.gen_range(-3i64..=3)),
            2 => "poly(1)".to_string(),
            3 => "unit".to_string(),
            4 => format!("{}", rng.gen_range(-3i64..=3)),
            _ => "poly(2)".to_string(),
        }
    };
    if depth >= 3 || rng.gen_bool(0.35) {
        return atom(rng);
    }
    match rng.gen_range(0..5) {
        0 => format!(
            "({} + {})",
            random_expression(rng, depth + 1),
            random_expression(rng, depth + 1)
        ),
        1 => format!(
            "({} - {})",
            random_expression(rng, depth + 1),
            random_expression(rng, depth + 1)
        ),
        2 => format!(
            "({} * {})",
            random_expression(rng, depth + 1),
            random_expression(rng, depth + 1)
        ),
        3 => format!("adj({})", random_expression(rng, depth + 1)),
        _ => format!("antipode({})", random_expression(rng, depth + 1)),
    }
}

/// Membership of a certified element in the span of corepresentation
/// coefficients, decided by the windowed independence machinery: collect the
/// coefficients of unipotent corepresentations at each base appearing in the
/// element's tail, reduce to an independent family, and ask for a certified
/// dependency once the element joins the family.
fn element_lies_in_coefficient_span(m: &Arc<QuantumGroupModel>, x: &Multiplier) -> bool {
    let TailRule::ExpPoly(tail) = x.tail() else {
        return x.is_zero();
    };
    if !x.deviation_support().is_empty() {
        return false;
    }
    if tail.is_zero() {
        return true;
    }
    // coefficient pool: one unipotent corepresentation per base, sized by
    // the degree profile
    let mut pool: Vec<Multiplier> = Vec::new();
    for (base, poly) in tail.terms() {
        let size = poly.max_degree() as usize + 1;
        let u = Corepresentation::jordan(m, base[0].clone(), size).unwrap();
        for (_, entry) in u.entries() {
            if !entry.is_zero() && !pool.contains(entry) {
                pool.push(entry.clone());
            }
        }
    }
    // maximal independent subfamily via exact coordinates
    let mut indexer = qbohr_core::bohr::CoordIndexer::new();
    let mut solver = CoordSolver::new();
    let mut family: Vec<Multiplier> = Vec::new();
    for candidate in pool {
        if solver.insert(indexer.coords(&candidate)) {
            family.push(candidate);
        }
    }
    family.push(x.clone());
    matches!(
        lemma_l(m, &family, 6).unwrap(),
        LemmaLOutcome::Dependent { .. }
    )
}

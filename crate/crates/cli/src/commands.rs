//! Subcommand implementations. Each returns the rendered report and the
//! exit status; usage and parse failures surface as errors and exit 3.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use qbohr_core::ap::{ap_test, APVerdict, LemmaLOutcome};
use qbohr_core::bohr::{
    bohr_generate, factorize, verify_presentation, CompactHopf, FactorizationOutcome,
    MorphismSpec,
};
use qbohr_core::corep::{corep_check, Corepresentation, CorepVerdict};
use qbohr_core::error::{Error, Result};
use qbohr_core::functional::{Side, solve_invariant};
use qbohr_core::io;
use qbohr_core::model::{builtin_model, QuantumGroupModel};
use qbohr_core::shape::{BlockIndex, Window};
use qbohr_core::{ReducedFunctional, Scalar, TensorMultiplier};

use crate::expr::{parse_element, print_expr};
use crate::report::{model_digest, CommandReport, Status};

/// Load a model: a path to a model file when one exists, a builtin name
/// otherwise.
pub fn load_model(spec: &str) -> Result<Arc<QuantumGroupModel>> {
    let path = Path::new(spec);
    if path.exists() {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ParseModel(format!("{spec}: {e}")))?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .map_err(|e| Error::ParseModel(format!("{spec}: {e}")))?;
        io::model_from_json(spec, &value)
    } else {
        builtin_model(spec)
    }
}

/// Window argument: `full` for the whole finite family (radius 0 on
/// lattices would be just the origin, so `full` is finite-only), or a
/// radius.
pub fn resolve_window(model: &QuantumGroupModel, window: &str) -> Result<Window> {
    if window == "full" {
        if model.is_finite() {
            Ok(model.shape().window(0))
        } else {
            Err(Error::Parse(
                "'full' windows exist only for finite models; give a radius".into(),
            ))
        }
    } else {
        let radius: u64 = window
            .parse()
            .map_err(|_| Error::Parse(format!("bad window '{window}'")))?;
        Ok(model.shape().window(radius))
    }
}

pub fn check_axioms_cmd(echo: &str, model_spec: &str, window: &str) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let w = resolve_window(&model, window)?;
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("window", &w);
    let outcome = qbohr_core::axioms::check_axioms(&model, &w)?;
    let mut all_pass = true;
    for check in &outcome.checks {
        match &check.verdict {
            qbohr_core::axioms::Verdict::Pass { note } => {
                let suffix = note
                    .as_ref()
                    .map(|n| format!(" ({n})"))
                    .unwrap_or_default();
                report.line(format!("axiom {}: pass{suffix}", check.group));
            }
            qbohr_core::axioms::Verdict::Fail { witness } => {
                all_pass = false;
                report.line(format!("axiom {}: FAIL", check.group));
                report.line(format!("witness: {witness}"));
            }
        }
    }
    let status = if all_pass { Status::Pass } else { Status::Negative };
    Ok((report.render(status), status))
}

fn describe_multiplier(model: &QuantumGroupModel, x: &qbohr_core::Multiplier) -> String {
    print_expr(model, x).unwrap_or_else(|| {
        serde_json::to_string(&io::multiplier_to_json(x)).expect("multiplier serializes")
    })
}

pub fn ap_test_cmd(
    echo: &str,
    model_spec: &str,
    expr: &str,
    horizon: u64,
    bound: Option<usize>,
    emit: Option<&str>,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let x = parse_element(&model, expr)?;
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("horizon", horizon);
    if let Some(b) = bound {
        report.kv("bound", b);
    }
    let verdict = ap_test(&model, &x, horizon, bound)?;
    let profile_text = |profile: &[(u64, usize)]| {
        profile
            .iter()
            .map(|(r, k)| format!("{r}:{k}"))
            .collect::<Vec<_>>()
            .join(" ")
    };
    let status = match &verdict {
        APVerdict::Yes {
            rank,
            x_legs,
            y_legs,
            profile,
        } => {
            report.kv("rank-profile", profile_text(profile));
            report.kv("verdict", format!("yes rank {rank}"));
            for (k, leg) in x_legs.iter().enumerate() {
                report.line(format!("x-leg {k}: {}", describe_multiplier(&model, leg)));
            }
            for (k, leg) in y_legs.iter().enumerate() {
                report.line(format!("y-leg {k}: {}", describe_multiplier(&model, leg)));
            }
            if let Some(path) = emit {
                let value = io::decomposition_to_json(*rank, x_legs, y_legs, profile);
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| Error::ParseModel(format!("{path}: {e}")))?;
                report.kv("emitted", path);
            }
            Status::Pass
        }
        APVerdict::No {
            witness_radius,
            rank,
            bound,
            profile,
        } => {
            report.kv("rank-profile", profile_text(profile));
            report.kv(
                "verdict",
                format!("no (rank {rank} exceeds bound {bound} at radius {witness_radius})"),
            );
            Status::Negative
        }
        APVerdict::Inconclusive { profile } => {
            report.kv("rank-profile", profile_text(profile));
            report.kv("verdict", "inconclusive");
            Status::Inconclusive
        }
    };
    Ok((report.render(status), status))
}

pub fn lemma_l_cmd(
    echo: &str,
    model_spec: &str,
    exprs: &[String],
    horizon: u64,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let xs: Vec<qbohr_core::Multiplier> = exprs
        .iter()
        .map(|e| parse_element(&model, e))
        .collect::<Result<_>>()?;
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("horizon", horizon);
    report.kv("family-size", xs.len());
    let outcome = qbohr_core::ap::lemma_l(&model, &xs, horizon)?;
    let status = match &outcome {
        LemmaLOutcome::Independent { window, idempotent } => {
            report.kv("verdict", "independent");
            report.kv("window", window);
            report.kv("idempotent-support", idempotent.support());
            Status::Pass
        }
        LemmaLOutcome::Dependent { coefficients } => {
            let coeffs: Vec<String> = coefficients.iter().map(|c| c.to_string()).collect();
            report.kv("verdict", "dependent");
            report.kv("coefficients", coeffs.join(" "));
            Status::Negative
        }
        LemmaLOutcome::Inconclusive { dims } => {
            report.kv("verdict", "inconclusive");
            let profile: Vec<String> =
                dims.iter().map(|(w, d)| format!("{w}:{d}")).collect();
            report.kv("nullity-profile", profile.join(" "));
            Status::Inconclusive
        }
    };
    Ok((report.render(status), status))
}

/// Functional specifier: `eval@<index>` for point evaluation at a
/// one-dimensional block, `entry@<index>:<row>,<col>` for a matrix entry.
pub fn parse_functional(
    model: &QuantumGroupModel,
    spec: &str,
) -> Result<ReducedFunctional> {
    let (kind, rest) = spec
        .split_once('@')
        .ok_or_else(|| Error::Parse(format!("bad functional '{spec}'")))?;
    match kind {
        "eval" => {
            let index = parse_index_text(model, rest)?;
            ReducedFunctional::point_evaluation(model.shape(), &index)
        }
        "entry" => {
            let (index_text, entry_text) = rest
                .split_once(':')
                .ok_or_else(|| Error::Parse(format!("bad functional '{spec}'")))?;
            let index = parse_index_text(model, index_text)?;
            let (r, c) = entry_text
                .split_once(',')
                .ok_or_else(|| Error::Parse(format!("bad entry in '{spec}'")))?;
            let row: usize = r
                .parse()
                .map_err(|_| Error::Parse(format!("bad row in '{spec}'")))?;
            let col: usize = c
                .parse()
                .map_err(|_| Error::Parse(format!("bad column in '{spec}'")))?;
            ReducedFunctional::matrix_entry(model.shape(), &index, row, col)
        }
        other => Err(Error::Parse(format!("unknown functional kind '{other}'"))),
    }
}

fn parse_index_text(model: &QuantumGroupModel, text: &str) -> Result<BlockIndex> {
    let text = text.trim();
    if model.shape().lattice_rank().is_some() {
        let coords: Result<Vec<i64>> = text
            .trim_start_matches('(')
            .trim_end_matches(')')
            .split(',')
            .map(|p| {
                p.trim()
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad lattice index '{text}'")))
            })
            .collect();
        let index = BlockIndex::Lattice(coords?);
        if !model.shape().contains(&index) {
            return Err(Error::UnknownIndex(text.to_string()));
        }
        Ok(index)
    } else {
        let index = BlockIndex::named(text.to_string());
        if !model.shape().contains(&index) {
            return Err(Error::UnknownIndex(text.to_string()));
        }
        Ok(index)
    }
}

pub fn slice_cmd(
    echo: &str,
    model_spec: &str,
    expr: &str,
    functional: &str,
    side: &str,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let x = parse_element(&model, expr)?;
    let xi = parse_functional(&model, functional)?;
    let y = TensorMultiplier::coproduct(&model, &x);
    let result = match side {
        "right" => qbohr_core::right_slice(&y, &xi)?,
        "left" => qbohr_core::left_slice(&xi, &y)?,
        other => return Err(Error::Parse(format!("bad side '{other}'"))),
    };
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("side", side);
    report.kv("functional", functional);
    report.kv("slice", describe_multiplier(&model, &result));
    Ok((report.render(Status::Pass), Status::Pass))
}

pub fn haar_cmd(
    echo: &str,
    model_spec: &str,
    window: &str,
    side: &str,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let w = resolve_window(&model, window)?;
    let side = match side {
        "left" => Side::Left,
        "right" => Side::Right,
        other => return Err(Error::Parse(format!("bad side '{other}'"))),
    };
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("window", &w);
    report.kv("side", side);
    match solve_invariant(&model, &w, side) {
        Ok(phi) => {
            match phi.raw().rule() {
                qbohr_core::functional::WeightRule::UniformScalar(c) => {
                    report.kv("weights", format!("uniform {c}"));
                }
                qbohr_core::functional::WeightRule::Explicit(map) => {
                    for (index, mat) in map {
                        let cells: Vec<String> = (0..mat.rows())
                            .map(|r| {
                                (0..mat.cols())
                                    .map(|c| mat.at(r, c).to_string())
                                    .collect::<Vec<_>>()
                                    .join(",")
                            })
                            .collect();
                        report.line(format!("weight {index}: [{}]", cells.join(";")));
                    }
                }
            }
            report.kv("verdict", "solved");
            Ok((report.render(Status::Pass), Status::Pass))
        }
        Err(Error::ModelInconsistency(msg)) => {
            report.kv("verdict", format!("no invariant functional: {msg}"));
            Ok((report.render(Status::Negative), Status::Negative))
        }
        Err(e) => Err(e),
    }
}

/// Corepresentation file: `{"regular": true}`, `{"jordan": {"base": ...,
/// "size": ...}}`, or explicit `{"size": N, "entries": [[expr, ...], ...]}`.
pub fn load_corep(model: &Arc<QuantumGroupModel>, path: &str) -> Result<Corepresentation> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::ParseModel(format!("{path}: {e}")))?;
    let value: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Error::ParseModel(format!("{path}: {e}")))?;
    corep_from_json(model, &value)
}

pub fn corep_from_json(
    model: &Arc<QuantumGroupModel>,
    value: &serde_json::Value,
) -> Result<Corepresentation> {
    if value.get("regular").and_then(|v| v.as_bool()) == Some(true) {
        return Corepresentation::regular(model);
    }
    if let Some(j) = value.get("jordan") {
        let base_text = j
            .get("base")
            .and_then(|b| b.as_str())
            .ok_or_else(|| Error::ParseModel("jordan needs a base scalar".into()))?;
        let base = model.field().parse_scalar(base_text)?;
        let size = j
            .get("size")
            .and_then(|s| s.as_u64())
            .ok_or_else(|| Error::ParseModel("jordan needs a size".into()))?;
        return Corepresentation::jordan(model, base, size as usize);
    }
    let size = value
        .get("size")
        .and_then(|s| s.as_u64())
        .ok_or_else(|| Error::ParseModel("corepresentation needs a size".into()))?
        as usize;
    let rows = value
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| Error::ParseModel("corepresentation needs entries".into()))?;
    let mut entries = Vec::with_capacity(size * size);
    for row in rows {
        let cells = row
            .as_array()
            .ok_or_else(|| Error::ParseModel("entries must be rows".into()))?;
        for cell in cells {
            let text = cell
                .as_str()
                .ok_or_else(|| Error::ParseModel("entries must be expressions".into()))?;
            entries.push(parse_element(model, text)?);
        }
    }
    Corepresentation::new(size, entries)
}

pub fn corep_check_cmd(
    echo: &str,
    model_spec: &str,
    file: &str,
    window: &str,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let u = load_corep(&model, file)?;
    let w = resolve_window(&model, window)?;
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("corep-size", u.size());
    report.kv("window", &w);
    let verdict = corep_check(&model, &u, &w)?;
    let status = match &verdict {
        CorepVerdict::Valid { coefficients } => {
            report.kv("verdict", "valid");
            for ((k, l), ap) in coefficients {
                report.line(format!(
                    "coefficient ({k},{l}): almost periodic, rank {}",
                    ap.rank().unwrap_or(0)
                ));
            }
            Status::Pass
        }
        CorepVerdict::Invalid { witness } => {
            report.kv("verdict", "invalid");
            report.kv("witness", witness);
            Status::Negative
        }
    };
    Ok((report.render(status), status))
}

pub fn bohr_cmd(
    echo: &str,
    model_spec: &str,
    corep_files: &[String],
    degree: usize,
    emit: Option<&str>,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let coreps: Vec<Corepresentation> = corep_files
        .iter()
        .map(|f| load_corep(&model, f))
        .collect::<Result<_>>()?;
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("degree", degree);
    match bohr_generate(&model, &coreps, degree) {
        Ok(pres) => {
            report.kv("dimension", pres.dimension());
            let verification = verify_presentation(&pres);
            for (name, witness) in &verification.checks {
                match witness {
                    None => report.line(format!("axiom {name}: pass")),
                    Some(w) => report.line(format!("axiom {name}: FAIL — {w}")),
                }
            }
            if let Some(path) = emit {
                let value = io::presentation_to_json(&pres);
                std::fs::write(path, serde_json::to_string_pretty(&value).unwrap())
                    .map_err(|e| Error::ParseModel(format!("{path}: {e}")))?;
                report.kv("emitted", path);
            }
            let status = if verification.all_pass() {
                Status::Pass
            } else {
                Status::Negative
            };
            Ok((report.render(status), status))
        }
        Err(Error::DegreeInsufficient(msg)) => {
            report.kv("verdict", format!("degree insufficient: {msg}"));
            Ok((report.render(Status::Negative), Status::Negative))
        }
        Err(e) => Err(e),
    }
}

pub fn factorize_cmd(
    echo: &str,
    model_spec: &str,
    hopf_file: &str,
    images_file: &str,
    horizon: u64,
) -> Result<(String, Status)> {
    let model = load_model(model_spec)?;
    let hopf_text = std::fs::read_to_string(hopf_file)
        .map_err(|e| Error::ParseModel(format!("{hopf_file}: {e}")))?;
    let hopf_value: serde_json::Value = serde_json::from_str(&hopf_text)
        .map_err(|e| Error::ParseModel(format!("{hopf_file}: {e}")))?;
    let hopf = if hopf_value.get("laurent").and_then(|v| v.as_bool()) == Some(true) {
        CompactHopf::Laurent
    } else if hopf_value.get("trivial").and_then(|v| v.as_bool()) == Some(true) {
        CompactHopf::Trivial
    } else if let Some(p) = hopf_value.get("presentation") {
        CompactHopf::Table(io::presentation_from_json(model.field(), Some(&model), p)?)
    } else {
        return Err(Error::ParseModel(
            "hopf file must declare laurent, trivial, or a presentation".into(),
        ));
    };
    let images_text = std::fs::read_to_string(images_file)
        .map_err(|e| Error::ParseModel(format!("{images_file}: {e}")))?;
    let images_value: serde_json::Value = serde_json::from_str(&images_text)
        .map_err(|e| Error::ParseModel(format!("{images_file}: {e}")))?;
    let images_obj = images_value
        .as_object()
        .ok_or_else(|| Error::ParseModel("images file must be an object".into()))?;
    let mut images = BTreeMap::new();
    for (label, expr_text) in images_obj {
        let text = expr_text
            .as_str()
            .ok_or_else(|| Error::ParseModel("image values must be expressions".into()))?;
        images.insert(label.clone(), parse_element(&model, text)?);
    }
    let spec = MorphismSpec { hopf, images };
    let mut report = CommandReport::new(echo, model.name(), &model_digest(&model));
    report.kv("horizon", horizon);
    let outcome = factorize(&model, &spec, horizon)?;
    let status = match &outcome {
        FactorizationOutcome::Factored { images, certificates } => {
            report.kv("verdict", "factored through the almost periodic subalgebra");
            report.line("chi: inclusion into the multiplier algebra".to_string());
            for (label, image) in images {
                report.line(format!(
                    "image {label}: {} (rank {})",
                    describe_multiplier(&model, image),
                    certificates.get(label).copied().unwrap_or(0)
                ));
            }
            Status::Pass
        }
        FactorizationOutcome::Failure { reason } => {
            report.kv("verdict", "rejected");
            report.kv("reason", reason);
            Status::Negative
        }
    };
    Ok((report.render(status), status))
}

/// Scalar helper shared by tests.
pub fn ratio(n: i64, d: i64) -> Scalar {
    Scalar::from_ratio(n, d)
}

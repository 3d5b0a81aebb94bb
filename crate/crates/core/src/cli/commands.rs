//! Thin drivers from documents to library pipelines and JSON reports.

use std::collections::BTreeMap;

use serde_json::{json, Value};

use super::docs::{parse_document, Document, FrobeniusTarget};
use super::element::parse_element;
use super::{CliError, Outcome, EXIT_INCONCLUSIVE, EXIT_INVARIANT, EXIT_OK};
use crate::bch::bch;
use crate::cosimplicial::{cech_build, cohomology, moore_cohomology, verify_cosimplicial, CosimplicialError};
use crate::lie::{build_free, Generator, GradedLieAlgebra, LieError};
use crate::linalg::rational::{fmt_rational, Rational};
use crate::linalg::{Matrix, Subspace};
use crate::poly::charpoly;
use crate::presentation::{invariant_checks, CohomologyDatum, Presentation, PresentationError};
use crate::weights::{
    check_bracket_additivity, check_splitting, frobenius_weight_decomposition, purity_report, weight_filtration,
    FrobeniusAction, WeightClass, WeightDecomposition, WeightError, WeilClassifier,
};

fn presentation_error(e: PresentationError) -> CliError {
    match e {
        PresentationError::NotAntisymmetric { .. }
        | PresentationError::WeightIncompatible { .. }
        | PresentationError::NotAnIdeal { .. }
        | PresentationError::QuotientInvariant(_) => CliError::Invariant(e.to_string()),
        _ => CliError::Schema(e.to_string()),
    }
}

fn weight_error(e: WeightError) -> CliError {
    match e {
        WeightError::NotInvertible(_) | WeightError::NotBracketCompatible(..) | WeightError::NotPure(_) => {
            CliError::Invariant(e.to_string())
        }
        WeightError::Inconclusive(_) => CliError::Inconclusive(e.to_string()),
        _ => CliError::Schema(e.to_string()),
    }
}

fn cosimplicial_error(e: CosimplicialError) -> CliError {
    match e {
        CosimplicialError::NonFunctorial(_) => CliError::Invariant(e.to_string()),
        _ => CliError::Schema(e.to_string()),
    }
}

fn checks_json(checks: &[(String, bool)]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|(name, ok)| json!({"check": name, "passed": ok}))
            .collect(),
    )
}

/// Attach status and exit code according to the checks.
fn finish(mut report: Value, checks: &[(String, bool)]) -> Outcome {
    let ok = checks.iter().all(|(_, ok)| *ok);
    report["checks"] = checks_json(checks);
    report["status"] = json!(if ok { "ok" } else { "invariant_violation" });
    Outcome {
        report,
        exit_code: if ok { EXIT_OK } else { EXIT_INVARIANT },
    }
}

fn generators_json(alg: &GradedLieAlgebra) -> Value {
    Value::Array(
        alg.generators()
            .iter()
            .map(|g| json!({"name": g.name, "weight": g.weight}))
            .collect(),
    )
}

fn check_class(class: usize) -> Result<(), CliError> {
    if class == 0 {
        return Err(CliError::Schema("nilpotency class must be at least 1".into()));
    }
    Ok(())
}

pub fn cmd_present(text: &str, class: usize, weights: bool) -> Result<Outcome, CliError> {
    check_class(class)?;
    let doc = parse_document(text)?;
    let (datum, source) = match &doc {
        Document::Cohomology(c) => (c.datum()?, "cohomology"),
        Document::OpenVariety(o) => (o.datum()?.to_cohomology(), "open_variety"),
        other => {
            return Err(CliError::Schema(format!("present expects a cohomology or open_variety document, got {}", other.kind())))
        }
    };
    let p = Presentation::from_datum(&datum, class).map_err(presentation_error)?;
    let free_dims = p.free_dims();
    let ideal_dims = p.ideal.dims();
    let quotient_dims = p.quotient_dims();
    let degrees: Vec<Value> = (0..class)
        .map(|d| {
            json!({
                "degree": d + 1,
                "free_dim": free_dims[d],
                "ideal_dim": ideal_dims[d],
                "quotient_dim": quotient_dims[d],
            })
        })
        .collect();
    let relations: Vec<Value> = p
        .relations
        .relations
        .iter()
        .zip(&p.relations.sources)
        .map(|(r, k)| json!({"h2_index": k, "relation": p.free.format(r)}))
        .collect();
    let mut report = json!({
        "command": "present",
        "source": source,
        "class": class,
        "generators": generators_json(&p.free),
        "relations": relations,
        "dropped_relations": p.relations.dropped,
        "relation_rank": p.relations.rank,
        "degrees": degrees,
        "quotient_dims": quotient_dims,
    });
    if weights {
        let rows: Vec<Value> = p
            .quotient
            .algebra
            .weight_graded_dims()
            .into_iter()
            .map(|((d, w), n)| json!({"degree": d, "weight": w, "dim": n}))
            .collect();
        report["weight_graded_dims"] = Value::Array(rows);
    }
    Ok(finish(report, &invariant_checks(&p, Some(&datum))))
}

/// Factor rows of one operator; the first failing classification, if any,
/// is returned alongside.
fn factor_rows(f: &Matrix, classifier: &WeilClassifier, degree: Option<usize>) -> (Vec<Value>, Option<WeightClass>) {
    let mut rows = Vec::new();
    let mut failure = None;
    for (s, mult) in charpoly(f).squarefree_decomposition() {
        let mut push = |factor: String, weight: Value| {
            let mut row = json!({"factor": factor, "multiplicity": mult, "weight": weight});
            if let Some(d) = degree {
                row["degree"] = json!(d);
            }
            rows.push(row);
        };
        match classifier.split(&s) {
            Ok(parts) => {
                for (w, g) in parts {
                    push(g.to_string(), json!(w));
                }
            }
            Err(c) => {
                push(s.to_string(), json!(c.to_string()));
                if failure.is_none() || c == WeightClass::NotPure {
                    failure = Some(c);
                }
            }
        }
    }
    (rows, failure)
}

fn classification_outcome(mut report: Value, failure: WeightClass) -> Outcome {
    let (status, code) = match failure {
        WeightClass::NotPure => ("invariant_violation", EXIT_INVARIANT),
        _ => ("inconclusive", EXIT_INCONCLUSIVE),
    };
    report["status"] = json!(status);
    report["error"] = json!(match failure {
        WeightClass::NotPure => "a factor has roots of different absolute values",
        _ => "some roots cannot be assigned a weight at this tolerance",
    });
    Outcome { report, exit_code: code }
}

fn dims_json(dec: &WeightDecomposition, degree: Option<usize>) -> Vec<Value> {
    dec.dims()
        .into_iter()
        .map(|(w, n)| match degree {
            Some(d) => json!({"degree": d, "weight": w, "dim": n}),
            None => json!({"weight": w, "dim": n}),
        })
        .collect()
}

pub fn cmd_weights(text: &str, q: Option<u64>, tol: f64, class: usize) -> Result<Outcome, CliError> {
    let doc = parse_document(text)?;
    let Document::Frobenius(fdoc) = &doc else {
        return Err(CliError::Schema(format!("weights expects a frobenius document, got {}", doc.kind())));
    };
    let q = q.or(fdoc.q).ok_or_else(|| CliError::Schema("q is required (document field or --q)".into()))?;
    let target = fdoc.target()?;
    let mut report = json!({"command": "weights", "q": q, "tolerance": tol});
    match target {
        FrobeniusTarget::Space(f) => {
            if !f.is_square() || f.rows() == 0 {
                return Err(CliError::Schema("matrix must be square and nonempty".into()));
            }
            let classifier = WeilClassifier::new(q, tol).map_err(weight_error)?;
            if f.rank() != f.rows() {
                return Err(weight_error(WeightError::NotInvertible(1)));
            }
            report["dimension"] = json!(f.rows());
            report["characteristic_polynomial"] = json!(charpoly(&f).to_string());
            let (rows, failure) = factor_rows(&f, &classifier, None);
            report["factors"] = Value::Array(rows);
            if let Some(c) = failure {
                return Ok(classification_outcome(report, c));
            }
            let dec = frobenius_weight_decomposition(&f, &classifier).map_err(weight_error)?;
            report["decomposition"] = Value::Array(dims_json(&dec, None));
            let checks = vec![
                ("direct_sum".to_string(), dec.is_direct_sum()),
                ("frobenius_stable".to_string(), dec.is_stable_under(&f)),
            ];
            Ok(finish(report, &checks))
        }
        FrobeniusTarget::Algebra {
            generators,
            presentation,
            degree_one,
            k,
        } => {
            check_class(class)?;
            let classifier = WeilClassifier::for_class(q, tol, class).map_err(weight_error)?;
            let alg = match (generators, presentation) {
                (Some(g), _) => build_free(&g, class).map_err(|e| CliError::Schema(e.to_string()))?,
                (None, Some(datum)) => algebra_of(&datum, class)?,
                (None, None) => unreachable!("validated by the document"),
            };
            weights_on_algebra(report, &alg, &degree_one, k, &classifier)
        }
    }
}

fn algebra_of(datum: &CohomologyDatum, class: usize) -> Result<GradedLieAlgebra, CliError> {
    Ok(Presentation::from_datum(datum, class)
        .map_err(presentation_error)?
        .quotient
        .algebra)
}

fn weights_on_algebra(
    mut report: Value,
    alg: &GradedLieAlgebra,
    f1: &Matrix,
    k: Option<Vec<String>>,
    classifier: &WeilClassifier,
) -> Result<Outcome, CliError> {
    let q = classifier.q();
    let frob = FrobeniusAction::extend_from_degree_one(alg, q, f1).map_err(weight_error)?;
    report["class"] = json!(alg.class_bound());
    report["generators"] = generators_json(alg);

    let mut factor_table = Vec::new();
    let mut failure = None;
    for (d, block) in frob.blocks().iter().enumerate() {
        if block.rows() == 0 {
            continue;
        }
        let (rows, f) = factor_rows(block, classifier, Some(d + 1));
        factor_table.extend(rows);
        failure = failure.or(f);
    }
    report["factors"] = Value::Array(factor_table);
    if let Some(c) = failure {
        return Ok(classification_outcome(report, c));
    }
    let per_degree: Vec<WeightDecomposition> = frob
        .blocks()
        .iter()
        .map(|b| {
            if b.rows() == 0 {
                Ok(WeightDecomposition::new(0, BTreeMap::new()))
            } else {
                frobenius_weight_decomposition(b, classifier)
            }
        })
        .collect::<Result<_, _>>()
        .map_err(weight_error)?;
    report["decomposition"] = Value::Array(
        per_degree
            .iter()
            .enumerate()
            .flat_map(|(d, dec)| dims_json(dec, Some(d + 1)))
            .collect(),
    );

    let additivity = check_bracket_additivity(alg, &frob, &per_degree);
    report["additivity"] = serde_json::to_value(&additivity).expect("serializable");

    let names = alg.generator_names();
    let k_indices: Vec<usize> = match k {
        Some(list) => list
            .iter()
            .map(|n| names.iter().position(|m| m == n).ok_or_else(|| CliError::Schema(format!("unknown generator {n:?} in k"))))
            .collect::<Result<_, _>>()?,
        None => alg
            .generators()
            .iter()
            .enumerate()
            .filter(|(_, g)| g.weight == -2)
            .map(|(i, _)| i)
            .collect(),
    };
    report["k"] = json!(k_indices.iter().map(|&i| names[i].clone()).collect::<Vec<_>>());
    let filtration = weight_filtration(alg, &Subspace::coordinate(names.len(), k_indices)).map_err(weight_error)?;
    report["filtration"] = Value::Array(
        (filtration.bottom()..=filtration.top())
            .map(|n| json!({"weight": n, "dim": filtration.level(n).dim()}))
            .collect(),
    );
    let total = WeightDecomposition::assemble(alg, &per_degree);
    let splitting = check_splitting(&total, &filtration);
    let purity = purity_report(&total, &filtration);
    report["splitting"] = serde_json::to_value(&splitting.rows).expect("serializable");
    report["purity"] = serde_json::to_value(&purity.rows).expect("serializable");
    let checks = vec![
        ("direct_sum".to_string(), per_degree.iter().all(WeightDecomposition::is_direct_sum)),
        (
            "frobenius_stable".to_string(),
            per_degree.iter().zip(frob.blocks()).all(|(d, b)| d.is_stable_under(b)),
        ),
        ("bracket_additivity".to_string(), additivity.passed()),
        ("splitting".to_string(), splitting.passed()),
        ("purity".to_string(), purity.passed()),
    ];
    Ok(finish(report, &checks))
}

pub fn cmd_cech(text: &str, level: usize) -> Result<Outcome, CliError> {
    let doc = parse_document(text)?;
    let Document::Cech(cdoc) = &doc else {
        return Err(CliError::Schema(format!("cech expects a cech document, got {}", doc.kind())));
    };
    let input = cdoc.input()?;
    let alg = cech_build(&input, level + 1).map_err(cosimplicial_error)?;
    let space = alg.space();
    let identities = verify_cosimplicial(space);
    let algebra_violations = alg.algebra_violations();
    let mut report = json!({
        "command": "cech",
        "level": level,
        "opens": input.opens,
        "nerve_dim": input.nerve_dim(),
        "cochain_dims": space.dims(),
        "identities": {
            "checked": identities.checked,
            "violations": serde_json::to_value(&identities.violations).expect("serializable"),
        },
        "algebra_violations": algebra_violations,
    });
    if !identities.passed() || !algebra_violations.is_empty() {
        let checks = vec![
            ("cosimplicial_identities".to_string(), identities.passed()),
            ("multiplicative_structure".to_string(), algebra_violations.is_empty()),
        ];
        return Ok(finish(report, &checks));
    }

    let h = cohomology(space);
    let moore = moore_cohomology(space);
    let shown = level.min(input.nerve_dim()) + 1;
    report["cohomology"] = json!(h.dims[..shown]);

    let mut cups = Vec::new();
    for p in 0..shown {
        for q in 0..shown - p {
            let coboundaries = if p + q == 0 {
                Subspace::zero(space.dim(0))
            } else {
                space.differential(p + q - 1).image()
            };
            for (i, u) in h.representatives[p].iter().enumerate() {
                for (j, v) in h.representatives[q].iter().enumerate() {
                    let prod = alg.aw_cup(p, u, q, v).map_err(cosimplicial_error)?;
                    let mut columns = h.representatives[p + q].clone();
                    let n_reps = columns.len();
                    columns.extend(coboundaries.basis().iter().cloned());
                    let coords = Matrix::from_columns(prod.len(), &columns)
                        .solve(&prod)
                        .map(|c| c[..n_reps].iter().map(fmt_rational).collect::<Vec<_>>());
                    cups.push(json!({
                        "left": format!("H{p}[{i}]"),
                        "right": format!("H{q}[{j}]"),
                        "product": coords,
                    }));
                }
            }
        }
    }
    report["cup_products"] = Value::Array(cups);
    let checks = vec![
        ("cosimplicial_identities".to_string(), true),
        ("multiplicative_structure".to_string(), true),
        ("normalized_equals_moore".to_string(), h.dims == moore.dims),
    ];
    Ok(finish(report, &checks))
}

pub fn cmd_bch(x: &str, y: &str, class: usize, generators: &str) -> Result<Outcome, CliError> {
    check_class(class)?;
    let names: Vec<Generator> = generators
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|n| Generator::new(n, -1))
        .collect();
    let alg = build_free(&names, class).map_err(|e: LieError| CliError::Schema(e.to_string()))?;
    let a = parse_element(&alg, x)?;
    let b = parse_element(&alg, y)?;
    let z = bch(&alg, &a, &b).map_err(|e| CliError::Schema(e.to_string()))?;
    let coordinates: Vec<Value> = z
        .coeffs()
        .iter()
        .map(|(&i, c): (&usize, &Rational)| {
            json!({"basis": alg.label(i), "degree": alg.degree(i), "coefficient": fmt_rational(c)})
        })
        .collect();
    Ok(Outcome::ok(json!({
        "command": "bch",
        "status": "ok",
        "class": class,
        "generators": alg.generator_names(),
        "x": alg.format(&a),
        "y": alg.format(&b),
        "result": alg.format(&z),
        "coordinates": coordinates,
    })))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bch_examples() {
        let o = cmd_bch("x", "y", 2, "x,y").unwrap();
        assert_eq!(o.report["result"], "x + y + 1/2 [x,y]");
        let o = cmd_bch("x", "0", 4, "x,y").unwrap();
        assert_eq!(o.report["result"], "x");
        assert!(matches!(cmd_bch("x", "w", 2, "x,y"), Err(CliError::Schema(_))));
    }

    #[test]
    fn weights_on_companion() {
        let o = cmd_weights(r#"{"kind":"frobenius","matrix":[[0,-5],[1,2]]}"#, Some(5), 1e-6, 5).unwrap();
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["decomposition"], json!([{"weight": 1, "dim": 2}]));
        let o = cmd_weights(r#"{"kind":"frobenius","q":5,"matrix":[[0,3],[1,0]]}"#, None, 1e-6, 5).unwrap();
        assert_eq!(o.exit_code, EXIT_INCONCLUSIVE);
    }

    #[test]
    fn cech_circle() {
        let doc = r#"{"kind":"cech","opens":["U0","U1"],
            "sections":[{"simplex":["U0"],"dim":1},{"simplex":["U1"],"dim":1},{"simplex":["U0","U1"],"dim":2}],
            "restrictions":[{"from":["U0"],"to":["U0","U1"],"matrix":[[1],[1]]},{"from":["U1"],"to":["U0","U1"],"matrix":[[1],[1]]}]}"#;
        let o = cmd_cech(doc, 2).unwrap();
        assert_eq!(o.exit_code, 0);
        assert_eq!(o.report["cohomology"], json!([1, 1]));
    }
}

//! wasm-bindgen bindings behind `www/index.html`.
//!
//! Every export takes plain strings or numbers and returns a JSON string,
//! so the page needs nothing beyond `JSON.parse`.

use coref_reliability::contingency::parse_counts;
use coref_reliability::exact::{parse_decimal, render_rational, Rational};
use coref_reliability::model::Partition;
use coref_reliability::report::{score_annotations, Digits, Flag, TableReport};
use coref_reliability::{
    classes_of, meet, muc, parse_annotation, samples, stddev, table_from_counts, AgreementResult,
    Convention, Orientation, Ratio,
};
use serde_json::{json, Value};
use wasm_bindgen::prelude::*;

fn ratio_json(r: &Ratio, digits: u32) -> Value {
    json!({
        "numerator": r.numerator,
        "denominator": r.denominator,
        "degenerate": r.is_degenerate(),
        "decimal": r.render(digits),
    })
}

fn rational_json(r: &Rational, digits: u32) -> Value {
    json!({
        "numerator": r.numer().to_string(),
        "denominator": r.denom().to_string(),
        "decimal": render_rational(r, digits),
    })
}

fn agreement_json(a: &Option<AgreementResult>, digits: u32) -> Value {
    match a {
        None => json!({ "refused": true }),
        Some(a) => json!({
            "refused": false,
            "p_ao": rational_json(&a.p_ao, digits),
            "p_ae": rational_json(&a.p_ae, digits),
            "degenerate": a.kappa.is_degenerate(),
            "kappa": a.kappa.value().map(|k| rational_json(&k, digits)),
            "alpha": a.alpha.value().map(|k| rational_json(&k, digits)),
        }),
    }
}

fn partition_json(p: &Partition) -> Value {
    Value::Array(
        p.classes()
            .iter()
            .map(|c| Value::Array(c.iter().map(|m| Value::String(m.to_string())).collect()))
            .collect(),
    )
}

fn flag_text(flag: &Flag) -> String {
    match flag {
        Flag::DegenerateRecall => "target has no links: recall is 0/0".into(),
        Flag::DegeneratePrecision => "response has no links: precision is 0/0".into(),
        Flag::DegenerateKappa => "chance agreement is 1: kappa undefined".into(),
        Flag::NegativeCell => "negative cell: kappa refused".into(),
        Flag::DCrossCheck {
            normative,
            from_target,
            from_response,
        } => format!(
            "class-intersection d ({from_target}/{from_response}) differs from d = {normative}"
        ),
    }
}

fn error_json(message: impl ToString) -> Value {
    json!({ "ok": false, "error": message.to_string() })
}

/// Scores two annotation TSV texts and lays out every intermediate step.
pub fn score_value(target_tsv: &str, response_tsv: &str, digits: u32) -> Value {
    let target = match parse_annotation(target_tsv, "target") {
        Ok(a) => a,
        Err(e) => return error_json(format!("target: {e}")),
    };
    let response = match parse_annotation(response_tsv, "response") {
        Ok(a) => a,
        Err(e) => return error_json(format!("response: {e}")),
    };
    let report = match score_annotations(
        &target,
        &response,
        Orientation::new("target", "response"),
        Digits::uniform(digits),
    ) {
        Ok(r) => r,
        Err(e) => return error_json(e),
    };
    let t = classes_of(&target);
    let r = classes_of(&response);
    let m = meet(&t, &r).expect("commensurate annotations share a universe");
    let class_scores: Vec<Value> = muc::class_scores(&target, &response)
        .expect("already scored")
        .iter()
        .map(|s| {
            json!({
                "class": s.target_class.iter().map(|m| m.to_string()).collect::<Vec<_>>(),
                "partition_size": s.partition_size,
                "recall": ratio_json(&s.recall, digits),
            })
        })
        .collect();
    let table = &report.link_table;
    json!({
        "ok": true,
        "markables": report.markables,
        "target_classes": partition_json(&t),
        "response_classes": partition_json(&r),
        "meet_classes": partition_json(&m),
        "class_scores": class_scores,
        "recall": ratio_json(&report.muc_recall, digits),
        "precision": ratio_json(&report.muc_precision, digits),
        "table": {
            "a": table.a, "b": table.b, "c": table.c, "d": table.d, "total": table.total,
            "rows": table.row_marginals(), "columns": table.column_marginals(),
        },
        "agreement": agreement_json(&report.agreement, digits),
        "flags": report.flags.iter().map(flag_text).collect::<Vec<_>>(),
    })
}

/// Agreement and both recall/precision readings for `a,b,c,d`.
pub fn table_value(a: i64, b: i64, c: i64, d: i64, digits: u32) -> Value {
    let table = match table_from_counts(a, b, c, d, Orientation::new("columns", "rows")) {
        Ok(t) => t,
        Err(e) => return error_json(e),
    };
    let report = TableReport::new(table, Digits::uniform(digits));
    let opt = |r: &Option<Ratio>| r.as_ref().map(|r| ratio_json(r, digits));
    json!({
        "ok": true,
        "table": {
            "a": a, "b": b, "c": c, "d": d, "total": report.link_table.total,
            "rows": report.link_table.row_marginals(),
            "columns": report.link_table.column_marginals(),
        },
        "recall": opt(&report.recall),
        "precision": opt(&report.precision),
        "swapped_recall": opt(&report.swapped_recall),
        "swapped_precision": opt(&report.swapped_precision),
        "agreement": agreement_json(&report.agreement, digits),
        "flags": report.flags.iter().map(flag_text).collect::<Vec<_>>(),
    })
}

/// Population and sample σ of whitespace- or comma-separated decimals.
pub fn stddev_value(values: &str, digits: u32) -> Value {
    let mut parsed = Vec::new();
    for token in values
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
    {
        match parse_decimal(token) {
            Some(v) => parsed.push(v),
            None => return error_json(format!("`{token}` is not a decimal number")),
        }
    }
    let render = |c| stddev(&parsed, c).map(|s| s.render(digits)).ok();
    json!({
        "ok": !parsed.is_empty(),
        "count": parsed.len(),
        "population": render(Convention::Population),
        "sample": render(Convention::Sample),
        "error": parsed.is_empty().then_some("no values"),
    })
}

#[wasm_bindgen]
pub fn score(target_tsv: &str, response_tsv: &str, digits: u32) -> String {
    score_value(target_tsv, response_tsv, digits).to_string()
}

#[wasm_bindgen]
pub fn table(a: f64, b: f64, c: f64, d: f64, digits: u32) -> String {
    table_value(a as i64, b as i64, c as i64, d as i64, digits).to_string()
}

/// `a,b,c,d` as typed by the user.
#[wasm_bindgen]
pub fn table_record(record: &str, digits: u32) -> String {
    match parse_counts(record) {
        Ok([a, b, c, d]) => table_value(a, b, c, d, digits).to_string(),
        Err(e) => error_json(e).to_string(),
    }
}

#[wasm_bindgen]
pub fn sigma(values: &str, digits: u32) -> String {
    stddev_value(values, digits).to_string()
}

/// Bundled sample annotations by name.
#[wasm_bindgen]
pub fn sample(name: &str) -> String {
    match name {
        "ca1" => samples::SAMPLE2_CA1,
        "ca2" => samples::SAMPLE2_CA2,
        "alt_ca1" => samples::SAMPLE2_ALT_CA1,
        "alt_ca3" => samples::SAMPLE2_ALT_CA3,
        _ => "",
    }
    .to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn scores_samples() {
        let v = score_value(samples::SAMPLE2_ALT_CA1, samples::SAMPLE2_ALT_CA3, 3);
        assert_eq!(v["ok"], true);
        assert_eq!(v["recall"]["decimal"], "0.857");
        assert_eq!(v["table"]["a"], 6);
        assert_eq!(v["table"]["d"], 2);
        assert_eq!(v["agreement"]["kappa"]["decimal"], "0.524");
        assert_eq!(v["meet_classes"].as_array().unwrap().len(), 5);
    }

    #[test]
    fn reports_incommensurate() {
        let v = score_value(samples::SAMPLE2_CA1, samples::SAMPLE2_ALT_CA3, 3);
        assert_eq!(v["ok"], false);
        assert!(v["error"].as_str().unwrap().contains("D'"));
    }

    #[test]
    fn table_counts() {
        let v: Value = serde_json::from_str(&table_record("166,19,13,44", 3)).unwrap();
        assert_eq!(v["recall"]["decimal"], "0.927");
        assert_eq!(v["swapped_recall"]["decimal"], "0.897");
        let v = table_value(0, 2, 2, -1, 2);
        assert_eq!(v["agreement"]["refused"], true);
        assert_eq!(table_value(0, 0, 0, 0, 2)["ok"], false);
    }

    #[test]
    fn sigma_of_column() {
        let v = stddev_value(
            ".96 .90 .93 .94 .95 .94 .91 .88 .92 .90 .93 .97 .95 .93 .96",
            2,
        );
        assert_eq!(v["population"], "0.02");
        assert_eq!(v["sample"], "0.03");
        assert_eq!(stddev_value("", 2)["ok"], false);
        assert_eq!(stddev_value("1 x", 2)["ok"], false);
    }

    #[test]
    fn samples_by_name() {
        assert!(sample("alt_ca3").contains("D'"));
        assert!(sample("nope").is_empty());
    }
}

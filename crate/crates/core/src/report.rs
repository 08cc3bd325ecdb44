//! Pair, table and batch reports, and their text and JSON renderings.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

#[cfg(feature = "parallel")]
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agreement::{kappa_from_link_table, AgreementResult, Coefficient};
use crate::contingency::{
    build_link_table, d_cross_check, table_precision, table_recall, LinkTable, Orientation,
};
use crate::error::Error;
use crate::exact::{render_rational, Ratio, Rational};
use crate::model::{parse_annotation, Annotation};
use crate::muc::{muc_precision, muc_recall};
use crate::stats::{stddev, Convention, StdDev};

/// Decimal places used when rendering. Exact values are never rounded in
/// storage.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Digits {
    /// Recall and precision.
    pub ratio: u32,
    /// Kappa, alpha, probabilities and σ.
    pub coefficient: u32,
}

impl Default for Digits {
    fn default() -> Self {
        Digits {
            ratio: 3,
            coefficient: 2,
        }
    }
}

impl Digits {
    pub fn uniform(digits: u32) -> Self {
        Digits {
            ratio: digits,
            coefficient: digits,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Flag {
    /// The target has no links; recall is 0/0.
    DegenerateRecall,
    /// The response has no links; precision is 0/0.
    DegeneratePrecision,
    /// Chance agreement is 1; kappa and alpha are undefined.
    DegenerateKappa,
    /// The link table has a negative cell; agreement was not computed.
    NegativeCell,
    /// The class-intersection reading of `d` differs from total − a − b − c.
    DCrossCheck {
        normative: i64,
        from_target: i64,
        from_response: i64,
    },
}

/// Errors that stop a single scoring run, with file context.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: Error },
    #[error(transparent)]
    Score(Error),
}

impl ReportError {
    /// 2 for unreadable or malformed input, 3 for incommensurate codings,
    /// 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Io { .. } | ReportError::Parse { .. } => 2,
            ReportError::Score(Error::Incommensurate { .. }) => 3,
            ReportError::Score(_) => 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairReport {
    pub doc_id: String,
    pub orientation: Orientation,
    pub markables: usize,
    pub muc_recall: Ratio,
    pub muc_precision: Ratio,
    pub link_table: LinkTable,
    /// `None` when the table has a negative cell.
    pub agreement: Option<AgreementResult>,
    pub flags: Vec<Flag>,
    pub digits: Digits,
}

impl PairReport {
    pub fn kappa(&self) -> Option<Coefficient> {
        self.agreement.as_ref().map(|a| a.kappa)
    }

    /// True when no metric has a value.
    pub fn degenerate_only(&self) -> bool {
        self.muc_recall.is_degenerate()
            && self.muc_precision.is_degenerate()
            && self.kappa().and_then(|k| k.value()).is_none()
    }
}

/// Scores two in-memory annotations. The first is the target.
pub fn score_annotations(
    target: &Annotation,
    response: &Annotation,
    orientation: Orientation,
    digits: Digits,
) -> Result<PairReport, Error> {
    let recall = muc_recall(target, response)?;
    let precision = muc_precision(target, response)?;
    let link_table = build_link_table(target, response, orientation.clone())?;

    let mut flags = Vec::new();
    if recall.is_degenerate() {
        flags.push(Flag::DegenerateRecall);
    }
    if precision.is_degenerate() {
        flags.push(Flag::DegeneratePrecision);
    }
    let agreement = match kappa_from_link_table(&link_table) {
        Ok(result) => {
            if result.kappa.is_degenerate() {
                flags.push(Flag::DegenerateKappa);
            }
            Some(result)
        }
        Err(Error::NegativeCellRefusal { .. }) => {
            flags.push(Flag::NegativeCell);
            None
        }
        Err(e) => return Err(e),
    };
    let check = d_cross_check(target, response)?;
    if !check.agrees() {
        flags.push(Flag::DCrossCheck {
            normative: check.normative,
            from_target: check.from_target,
            from_response: check.from_response,
        });
    }

    Ok(PairReport {
        doc_id: target.doc_id().to_string(),
        orientation,
        markables: target.len(),
        muc_recall: recall,
        muc_precision: precision,
        link_table,
        agreement,
        flags,
        digits,
    })
}

fn display_name(path: &Path) -> String {
    path.file_name()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}

pub fn load_annotation(path: &Path, doc_id: &str) -> Result<Annotation, ReportError> {
    let text = fs::read_to_string(path).map_err(|e| ReportError::Io {
        path: path.to_path_buf(),
        message: e.to_string(),
    })?;
    parse_annotation(&text, doc_id).map_err(|source| ReportError::Parse {
        path: path.to_path_buf(),
        source,
    })
}

/// Scores two annotation files. The first path is the target.
pub fn score_pair(
    target_path: &Path,
    response_path: &Path,
    digits: Digits,
) -> Result<PairReport, ReportError> {
    score_pair_as(target_path, response_path, None, digits)
}

fn score_pair_as(
    target_path: &Path,
    response_path: &Path,
    doc_id: Option<&str>,
    digits: Digits,
) -> Result<PairReport, ReportError> {
    let doc = doc_id
        .map(str::to_string)
        .unwrap_or_else(|| display_name(target_path));
    let target = load_annotation(target_path, &doc)?;
    let response = load_annotation(response_path, &doc)?;
    let orientation = Orientation::new(display_name(target_path), display_name(response_path));
    score_annotations(&target, &response, orientation, digits).map_err(ReportError::Score)
}

/// Report for a pre-tabulated link table. Both readings of the table are
/// kept, since published tables do not always say which coder is the
/// target.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableReport {
    pub link_table: LinkTable,
    pub recall: Option<Ratio>,
    pub precision: Option<Ratio>,
    /// Recall with target and response exchanged (equals `precision`).
    pub swapped_recall: Option<Ratio>,
    /// Precision with target and response exchanged (equals `recall`).
    pub swapped_precision: Option<Ratio>,
    pub agreement: Option<AgreementResult>,
    pub flags: Vec<Flag>,
    pub digits: Digits,
}

impl TableReport {
    pub fn new(link_table: LinkTable, digits: Digits) -> Self {
        let swapped = link_table.transpose();
        let mut flags = Vec::new();
        let recall = table_recall(&link_table).ok();
        let precision = table_precision(&link_table).ok();
        if recall.is_some_and(|r| r.is_degenerate()) {
            flags.push(Flag::DegenerateRecall);
        }
        if precision.is_some_and(|r| r.is_degenerate()) {
            flags.push(Flag::DegeneratePrecision);
        }
        let agreement = match kappa_from_link_table(&link_table) {
            Ok(a) => {
                if a.kappa.is_degenerate() {
                    flags.push(Flag::DegenerateKappa);
                }
                Some(a)
            }
            Err(_) => {
                flags.push(Flag::NegativeCell);
                None
            }
        };
        TableReport {
            recall,
            precision,
            swapped_recall: table_recall(&swapped).ok(),
            swapped_precision: table_precision(&swapped).ok(),
            link_table,
            agreement,
            flags,
            digits,
        }
    }

    pub fn degenerate_only(&self) -> bool {
        let has = |r: &Option<Ratio>| r.is_some_and(|r| !r.is_degenerate());
        !has(&self.recall)
            && !has(&self.precision)
            && self
                .agreement
                .as_ref()
                .and_then(|a| a.kappa.value())
                .is_none()
    }
}

/// One manifest line: `doc_id<TAB>target_path<TAB>response_path`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub doc_id: String,
    pub target: PathBuf,
    pub response: PathBuf,
}

/// Parses a manifest. Relative paths are resolved against `base`.
pub fn parse_manifest(text: &str, base: &Path) -> Result<Vec<ManifestEntry>, Error> {
    let mut entries = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let record = raw.strip_suffix('\r').unwrap_or(raw);
        if record.starts_with('#') || record.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = record.split('\t').collect();
        if fields.len() != 3 || fields.iter().any(|f| f.is_empty()) {
            return Err(Error::MalformedRecord {
                line: n + 1,
                reason: "expected doc_id<TAB>target_path<TAB>response_path".into(),
            });
        }
        entries.push(ManifestEntry {
            doc_id: fields[0].to_string(),
            target: base.join(fields[1]),
            response: base.join(fields[2]),
        });
    }
    Ok(entries)
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchRow {
    pub doc_id: String,
    pub kappa: Option<Coefficient>,
    pub recall: Option<Ratio>,
    pub precision: Option<Ratio>,
    pub flags: Vec<Flag>,
    /// Set when the document could not be scored.
    pub error: Option<String>,
}

impl BatchRow {
    pub fn from_report(report: &PairReport) -> Self {
        BatchRow {
            doc_id: report.doc_id.clone(),
            kappa: report.kappa(),
            recall: Some(report.muc_recall),
            precision: Some(report.muc_precision),
            flags: report.flags.clone(),
            error: None,
        }
    }

    pub fn failed(doc_id: impl Into<String>, error: impl ToString) -> Self {
        BatchRow {
            doc_id: doc_id.into(),
            kappa: None,
            recall: None,
            precision: None,
            flags: Vec::new(),
            error: Some(error.to_string()),
        }
    }

    fn kappa_value(&self) -> Option<Rational> {
        self.kappa.and_then(|k| k.value())
    }

    fn recall_value(&self) -> Option<Rational> {
        self.recall.and_then(|r| r.to_rational())
    }

    fn precision_value(&self) -> Option<Rational> {
        self.precision.and_then(|r| r.to_rational())
    }
}

/// σ of one metric column over its non-degenerate entries.
#[derive(Debug, Clone, Serialize)]
pub struct ColumnSigma {
    pub sigma: Option<StdDev>,
    pub excluded: usize,
}

impl ColumnSigma {
    fn over(values: Vec<Option<Rational>>, convention: Convention) -> Self {
        let excluded = values.iter().filter(|v| v.is_none()).count();
        let kept: Vec<Rational> = values.into_iter().flatten().collect();
        ColumnSigma {
            sigma: stddev(&kept, convention).ok(),
            excluded,
        }
    }

    pub fn render(&self, digits: u32) -> String {
        self.sigma
            .as_ref()
            .map(|s| s.render(digits))
            .unwrap_or_else(|| "-".into())
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SigmaRow {
    pub kappa: ColumnSigma,
    pub recall: ColumnSigma,
    pub precision: ColumnSigma,
    pub convention: Convention,
}

#[derive(Debug, Clone, Serialize)]
pub struct BatchReport {
    pub rows: Vec<BatchRow>,
    pub sigma: SigmaRow,
    pub digits: u32,
}

impl BatchReport {
    pub fn from_rows(rows: Vec<BatchRow>, convention: Convention, digits: u32) -> Self {
        let sigma = SigmaRow {
            kappa: ColumnSigma::over(rows.iter().map(BatchRow::kappa_value).collect(), convention),
            recall: ColumnSigma::over(
                rows.iter().map(BatchRow::recall_value).collect(),
                convention,
            ),
            precision: ColumnSigma::over(
                rows.iter().map(BatchRow::precision_value).collect(),
                convention,
            ),
            convention,
        };
        BatchReport {
            rows,
            sigma,
            digits,
        }
    }

    /// True when not a single metric value is available.
    pub fn degenerate_only(&self) -> bool {
        !self.rows.is_empty()
            && self.rows.iter().all(|r| {
                r.kappa_value().is_none()
                    && r.recall_value().is_none()
                    && r.precision_value().is_none()
            })
    }
}

/// Scores every manifest entry. Rows keep manifest order; per-document
/// failures become flagged rows and are excluded from σ.
pub fn score_entries(
    entries: &[ManifestEntry],
    convention: Convention,
    digits: u32,
) -> BatchReport {
    #[cfg(feature = "parallel")]
    let iter = entries.par_iter();
    #[cfg(not(feature = "parallel"))]
    let iter = entries.iter();
    let rows = iter
        .map(|entry| {
            match score_pair_as(
                &entry.target,
                &entry.response,
                Some(&entry.doc_id),
                Digits::uniform(digits),
            ) {
                Ok(report) => BatchRow::from_report(&report),
                Err(e) => BatchRow::failed(&entry.doc_id, e),
            }
        })
        .collect();
    BatchReport::from_rows(rows, convention, digits)
}

pub fn score_batch(
    manifest_path: &Path,
    convention: Convention,
    digits: u32,
) -> Result<BatchReport, ReportError> {
    let text = fs::read_to_string(manifest_path).map_err(|e| ReportError::Io {
        path: manifest_path.to_path_buf(),
        message: e.to_string(),
    })?;
    let base = manifest_path.parent().unwrap_or(Path::new("."));
    let entries = parse_manifest(&text, base).map_err(|source| ReportError::Parse {
        path: manifest_path.to_path_buf(),
        source,
    })?;
    Ok(score_entries(&entries, convention, digits))
}

// ---------------------------------------------------------------------------
// Rendering

fn ratio_cell(r: &Ratio, digits: u32) -> String {
    if r.is_degenerate() {
        format!("{:<9} {} (degenerate)", r.to_string(), r.render(digits))
    } else {
        format!("{:<9} {}", r.to_string(), r.render(digits))
    }
}

fn rational_cell(r: &Rational, digits: u32) -> String {
    format!(
        "{:<9} {}",
        format!("{}/{}", r.numer(), r.denom()),
        render_rational(r, digits)
    )
}

fn coefficient_cell(c: &Coefficient, digits: u32) -> String {
    match c {
        Coefficient::Value(v) => rational_cell(v, digits),
        Coefficient::Degenerate => "degenerate (chance agreement is 1)".into(),
    }
}

/// The 2×2 grid with marginals, response coding on the rows.
pub fn render_link_table(table: &LinkTable) -> String {
    let [r1, r2] = table.row_marginals();
    let [c1, c2] = table.column_marginals();
    let mut out = String::new();
    let w = 8;
    let _ = writeln!(
        out,
        "{:<16}{:^16}",
        "",
        format!("target: {}", table.orientation.target)
    );
    let _ = writeln!(out, "response: {}", table.orientation.response);
    let _ = writeln!(out, "{:<16}{:>w$}{:>w$}", "", "+Link", "-Link");
    let _ = writeln!(
        out,
        "{:<16}{:>w$}{:>w$}{:>w$}",
        "+Link", table.a, table.b, r1
    );
    let _ = writeln!(
        out,
        "{:<16}{:>w$}{:>w$}{:>w$}",
        "-Link", table.c, table.d, r2
    );
    let _ = writeln!(out, "{:<16}{:>w$}{:>w$}{:>w$}", "", c1, c2, table.total);
    out
}

fn render_agreement(out: &mut String, agreement: &Option<AgreementResult>, digits: u32) {
    match agreement {
        Some(a) => {
            let _ = writeln!(out, "p_ao       {}", rational_cell(&a.p_ao, digits));
            let _ = writeln!(out, "p_ae       {}", rational_cell(&a.p_ae, digits));
            let _ = writeln!(out, "p_do       {}", rational_cell(&a.p_do, digits));
            let _ = writeln!(out, "p_de       {}", rational_cell(&a.p_de, digits));
            let _ = writeln!(out, "kappa      {}", coefficient_cell(&a.kappa, digits));
            let _ = writeln!(out, "alpha      {}", coefficient_cell(&a.alpha, digits));
        }
        None => {
            let _ = writeln!(out, "kappa      refused (negative cell)");
        }
    }
}

fn render_flags(out: &mut String, flags: &[Flag]) {
    if flags.is_empty() {
        let _ = writeln!(out, "flags: none");
        return;
    }
    let _ = writeln!(out, "flags:");
    for flag in flags {
        let line = match flag {
            Flag::DegenerateRecall => "degenerate recall: the target has no links".to_string(),
            Flag::DegeneratePrecision => "degenerate precision: the response has no links".to_string(),
            Flag::DegenerateKappa => "degenerate kappa: chance agreement is 1".to_string(),
            Flag::NegativeCell => "negative cell: codings disagree on more links than N - 1".to_string(),
            Flag::DCrossCheck {
                normative,
                from_target,
                from_response,
            } => format!(
                "d cross-check differs: d = {normative}, class intersection gives {from_target} (target) / {from_response} (response)"
            ),
        };
        let _ = writeln!(out, "  - {line}");
    }
}

pub fn render_pair_text(report: &PairReport) -> String {
    let d = report.digits;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "document: {} ({} markables)",
        report.doc_id, report.markables
    );
    let _ = writeln!(out, "orientation: {}", report.orientation);
    let _ = writeln!(out);
    out.push_str(&render_link_table(&report.link_table));
    let _ = writeln!(out);
    let _ = writeln!(
        out,
        "recall     {}",
        ratio_cell(&report.muc_recall, d.ratio)
    );
    let _ = writeln!(
        out,
        "precision  {}",
        ratio_cell(&report.muc_precision, d.ratio)
    );
    render_agreement(&mut out, &report.agreement, d.coefficient);
    render_flags(&mut out, &report.flags);
    out
}

pub fn render_table_text(report: &TableReport) -> String {
    let d = report.digits;
    let o = &report.link_table.orientation;
    let mut out = String::new();
    out.push_str(&render_link_table(&report.link_table));
    let _ = writeln!(out);
    let opt = |r: &Option<Ratio>| {
        r.map_or_else(
            || "refused (negative cell)".into(),
            |r| ratio_cell(&r, d.ratio),
        )
    };
    let _ = writeln!(out, "target = {} (columns):", o.target);
    let _ = writeln!(out, "  recall     a/(a+c)  {}", opt(&report.recall));
    let _ = writeln!(out, "  precision  a/(a+b)  {}", opt(&report.precision));
    let _ = writeln!(out, "target = {} (rows):", o.response);
    let _ = writeln!(out, "  recall     a/(a+b)  {}", opt(&report.swapped_recall));
    let _ = writeln!(
        out,
        "  precision  a/(a+c)  {}",
        opt(&report.swapped_precision)
    );
    render_agreement(&mut out, &report.agreement, d.coefficient);
    render_flags(&mut out, &report.flags);
    out
}

pub fn render_batch_text(report: &BatchReport) -> String {
    let d = report.digits;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<12} {:>8} {:>8} {:>10}  notes",
        "doc", "kappa", "recall", "precision"
    );
    for row in &report.rows {
        let kappa = row.kappa.map_or_else(
            || "-".into(),
            |k| match k {
                Coefficient::Value(v) => render_rational(&v, d),
                Coefficient::Degenerate => "degen".into(),
            },
        );
        let ratio = |r: &Option<Ratio>| {
            r.map_or_else(
                || "-".into(),
                |r| {
                    if r.is_degenerate() {
                        "degen".into()
                    } else {
                        r.render(d)
                    }
                },
            )
        };
        let notes = match &row.error {
            Some(e) => format!("error: {e}"),
            None if row.flags.contains(&Flag::NegativeCell) => "negative cell".into(),
            None => String::new(),
        };
        let _ = writeln!(
            out,
            "{:<12} {:>8} {:>8} {:>10}  {}",
            row.doc_id,
            kappa,
            ratio(&row.recall),
            ratio(&row.precision),
            notes
        );
    }
    if report.rows.is_empty() {
        return out;
    }
    let s = &report.sigma;
    let _ = writeln!(
        out,
        "{:<12} {:>8} {:>8} {:>10}  {} convention; excluded: kappa {}, recall {}, precision {}",
        "sigma",
        s.kappa.render(d),
        s.recall.render(d),
        s.precision.render(d),
        match s.convention {
            Convention::Population => "population",
            Convention::Sample => "sample",
        },
        s.kappa.excluded,
        s.recall.excluded,
        s.precision.excluded
    );
    out
}

/// JSON holding the exact report next to rounded decimals.
pub fn render_pair_machine(report: &PairReport) -> String {
    let d = report.digits;
    let kappa = report
        .agreement
        .as_ref()
        .map(|a| a.kappa.render(d.coefficient));
    let alpha = report
        .agreement
        .as_ref()
        .map(|a| a.alpha.render(d.coefficient));
    let doc = serde_json::json!({
        "report": report,
        "rendered": {
            "muc_recall": report.muc_recall.render(d.ratio),
            "muc_precision": report.muc_precision.render(d.ratio),
            "kappa": kappa,
            "alpha": alpha,
        }
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

/// Reads back the output of [`render_pair_machine`].
pub fn parse_pair_machine(text: &str) -> serde_json::Result<PairReport> {
    #[derive(Deserialize)]
    struct Envelope {
        report: PairReport,
    }
    serde_json::from_str::<Envelope>(text).map(|e| e.report)
}

pub fn render_table_machine(report: &TableReport) -> String {
    let d = report.digits;
    let render = |r: &Option<Ratio>| r.map(|r| r.render(d.ratio));
    let doc = serde_json::json!({
        "report": report,
        "rendered": {
            "recall": render(&report.recall),
            "precision": render(&report.precision),
            "swapped_recall": render(&report.swapped_recall),
            "swapped_precision": render(&report.swapped_precision),
            "kappa": report.agreement.as_ref().map(|a| a.kappa.render(d.coefficient)),
        }
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

pub fn render_batch_machine(report: &BatchReport) -> String {
    let d = report.digits;
    let rendered: Vec<_> = report
        .rows
        .iter()
        .map(|r| {
            serde_json::json!({
                "doc_id": r.doc_id,
                "kappa": r.kappa.map(|k| k.render(d)),
                "recall": r.recall.map(|x| x.render(d)),
                "precision": r.precision.map(|x| x.render(d)),
            })
        })
        .collect();
    let doc = serde_json::json!({
        "report": report,
        "rendered": {
            "rows": rendered,
            "sigma": {
                "kappa": report.sigma.kappa.render(d),
                "recall": report.sigma.recall.render(d),
                "precision": report.sigma.precision.render(d),
            }
        }
    });
    serde_json::to_string_pretty(&doc).expect("report serializes")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::contingency::table_from_counts;
    use crate::model::parse_annotation;
    use crate::samples;

    fn figure_two_report() -> PairReport {
        let t = parse_annotation(samples::SAMPLE2_ALT_CA1, "s2").unwrap();
        let r = parse_annotation(samples::SAMPLE2_ALT_CA3, "s2").unwrap();
        score_annotations(&t, &r, Orientation::new("CA1", "CA3"), Digits::default()).unwrap()
    }

    #[test]
    fn pair_report_values() {
        let rep = figure_two_report();
        assert_eq!(rep.muc_recall, Ratio::new(6, 7));
        assert_eq!(rep.muc_precision, Ratio::new(6, 7));
        assert_eq!(rep.kappa().unwrap().render(2), "0.52");
        assert!(rep.flags.is_empty());
        assert!(!rep.degenerate_only());
    }

    #[test]
    fn text_table_has_marginals() {
        let text = render_pair_text(&figure_two_report());
        assert!(
            text.contains("\n+Link                  6       1       7\n"),
            "{text}"
        );
        assert!(
            text.contains("\n-Link                  1       2       3\n"),
            "{text}"
        );
        assert!(
            text.contains("\n                       7       3      10\n"),
            "{text}"
        );
        assert!(text.contains("recall     6/7       0.857"));
        assert!(text.contains("kappa      11/21     0.52"));
        assert!(text.contains("target=CA1 (columns), response=CA3 (rows)"));
    }

    #[test]
    fn machine_round_trip() {
        let rep = figure_two_report();
        let json = render_pair_machine(&rep);
        assert!(json.contains("\"muc_recall\": \"0.857\""));
        assert_eq!(parse_pair_machine(&json).unwrap(), rep);
    }

    #[test]
    fn published_table_text_shows_both_readings() {
        let t = table_from_counts(166, 19, 13, 44, Orientation::new("R1", "R2")).unwrap();
        let rep = TableReport::new(t, Digits::default());
        let text = render_table_text(&rep);
        for needle in ["185", "57", "179", "63", "242", "0.927", "0.897", "0.65"] {
            assert!(text.contains(needle), "missing {needle} in\n{text}");
        }
        assert_eq!(rep.swapped_recall, rep.precision);
        assert_eq!(rep.swapped_precision, rep.recall);
    }

    #[test]
    fn all_singleton_pair_is_degenerate_only() {
        let a = Annotation::from_pairs("x", [("a", "1"), ("b", "2"), ("c", "3")]).unwrap();
        let rep = score_annotations(&a, &a, Orientation::new("t", "r"), Digits::default()).unwrap();
        assert!(rep.degenerate_only());
        assert!(rep.flags.contains(&Flag::DegenerateKappa));
        assert!(rep.flags.contains(&Flag::DegenerateRecall));
    }

    #[test]
    fn negative_cell_refuses_agreement() {
        let t =
            Annotation::from_pairs("x", [("1", "p"), ("2", "p"), ("3", "q"), ("4", "q")]).unwrap();
        let r =
            Annotation::from_pairs("x", [("1", "p"), ("2", "q"), ("3", "p"), ("4", "q")]).unwrap();
        let rep = score_annotations(&t, &r, Orientation::new("t", "r"), Digits::default()).unwrap();
        assert!(rep.agreement.is_none());
        assert!(rep.flags.contains(&Flag::NegativeCell));
        assert_eq!(rep.muc_recall, Ratio::new(0, 2));
        assert!(render_pair_text(&rep).contains("refused"));
    }

    #[test]
    fn empty_batch_renders_header_only() {
        let rep = BatchReport::from_rows(vec![], Convention::Population, 2);
        let text = render_batch_text(&rep);
        assert_eq!(text.lines().count(), 1);
        assert!(!rep.degenerate_only());
    }

    #[test]
    fn batch_sigma_excludes_failures() {
        let rep = figure_two_report();
        let rows = vec![
            BatchRow::from_report(&rep),
            BatchRow::failed("bad", "line 1: nope"),
        ];
        let batch = BatchReport::from_rows(rows, Convention::Population, 2);
        assert_eq!(batch.sigma.kappa.excluded, 1);
        assert_eq!(batch.sigma.kappa.render(2), "0.00");
        let text = render_batch_text(&batch);
        assert!(text.contains("error: line 1: nope"));
    }

    #[test]
    fn manifest_parsing() {
        let entries = parse_manifest("# docs\nd1\ta.tsv\tb.tsv\n\n", Path::new("/data")).unwrap();
        assert_eq!(
            entries,
            vec![ManifestEntry {
                doc_id: "d1".into(),
                target: PathBuf::from("/data/a.tsv"),
                response: PathBuf::from("/data/b.tsv"),
            }]
        );
        assert!(matches!(
            parse_manifest("d1\ta.tsv\n", Path::new(".")),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }
}

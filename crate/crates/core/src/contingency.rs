//! The 2×2 link coincidence table of a pair of codings.
//!
//! Rows are the response coding and columns the target coding:
//!
//! ```text
//!                target +Link   target -Link
//! response +Link      a              b         a+b
//! response -Link      c              d         c+d
//!                    a+c            b+d      a+b+c+d = N-1
//! ```
//!
//! `a` counts links found by both codings, `b` links only in the response,
//! `c` links only in the target and `d` the remainder of the N − 1 possible
//! spanning links. `d` can come out negative when the two codings disagree
//! on more links than N − 1 can hold; such tables are returned but flagged.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Ratio;
use crate::model::{check_commensurate, classes_of, meet, Annotation, MarkableId};

/// Names the target (column) and response (row) codings of a table.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Orientation {
    pub target: String,
    pub response: String,
}

impl Orientation {
    pub fn new(target: impl Into<String>, response: impl Into<String>) -> Self {
        Orientation {
            target: target.into(),
            response: response.into(),
        }
    }

    pub fn swapped(&self) -> Self {
        Orientation::new(self.response.clone(), self.target.clone())
    }
}

impl fmt::Display for Orientation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "target={} (columns), response={} (rows)",
            self.target, self.response
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LinkTable {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub total: i64,
    pub orientation: Orientation,
}

impl LinkTable {
    /// True if any cell is negative. Such a table has no probability
    /// interpretation and agreement is refused on it.
    pub fn negative_cell(&self) -> bool {
        [self.a, self.b, self.c, self.d].iter().any(|&x| x < 0)
    }

    pub fn cells(&self) -> [[i64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    /// Response +Link and −Link totals: `[a+b, c+d]`.
    pub fn row_marginals(&self) -> [i64; 2] {
        [self.a + self.b, self.c + self.d]
    }

    /// Target +Link and −Link totals: `[a+c, b+d]`.
    pub fn column_marginals(&self) -> [i64; 2] {
        [self.a + self.c, self.b + self.d]
    }

    /// Same counts read with target and response exchanged.
    pub fn transpose(&self) -> LinkTable {
        LinkTable {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
            total: self.total,
            orientation: self.orientation.swapped(),
        }
    }
}

/// Builds the link table of `response` against `target`.
pub fn build_link_table(
    target: &Annotation,
    response: &Annotation,
    orientation: Orientation,
) -> Result<LinkTable> {
    check_commensurate(target, response)?;
    let n = target.len();
    if n < 2 {
        return Err(Error::TooFewMarkables(n));
    }
    let t = classes_of(target);
    let r = classes_of(response);
    let agreed = meet(&t, &r)?.link_count() as i64;
    let target_links = t.link_count() as i64;
    let response_links = r.link_count() as i64;
    let total = n as i64 - 1;
    let a = agreed;
    let b = response_links - agreed;
    let c = target_links - agreed;
    Ok(LinkTable {
        a,
        b,
        c,
        d: total - a - b - c,
        total,
        orientation,
    })
}

/// Wraps published counts in a table. Negative counts are kept and show up
/// through [`LinkTable::negative_cell`].
pub fn table_from_counts(
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    orientation: Orientation,
) -> Result<LinkTable> {
    let total = a + b + c + d;
    if total < 1 {
        return Err(Error::EmptyTable(total));
    }
    Ok(LinkTable {
        a,
        b,
        c,
        d,
        total,
        orientation,
    })
}

/// Parses `a,b,c,d` records, one table per line. Blank lines and `#`
/// comments are skipped.
pub fn parse_count_records(text: &str, orientation: &Orientation) -> Result<Vec<LinkTable>> {
    let mut tables = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let record = raw.trim();
        if record.is_empty() || record.starts_with('#') {
            continue;
        }
        let counts =
            parse_counts(record).map_err(|reason| Error::MalformedRecord { line, reason })?;
        let [a, b, c, d] = counts;
        tables.push(table_from_counts(a, b, c, d, orientation.clone())?);
    }
    Ok(tables)
}

/// Parses one `a,b,c,d` record.
pub fn parse_counts(record: &str) -> std::result::Result<[i64; 4], String> {
    let fields: Vec<&str> = record.split(',').map(str::trim).collect();
    if fields.len() != 4 {
        return Err(format!(
            "expected 4 comma-separated counts, found {}",
            fields.len()
        ));
    }
    let mut out = [0i64; 4];
    for (slot, field) in out.iter_mut().zip(&fields) {
        *slot = field
            .parse()
            .map_err(|_| format!("`{field}` is not an integer"))?;
    }
    Ok(out)
}

fn non_negative(table: &LinkTable, values: &[i64]) -> Result<()> {
    if values.iter().any(|&v| v < 0) {
        Err(Error::NegativeCellRefusal {
            a: table.a,
            b: table.b,
            c: table.c,
            d: table.d,
        })
    } else {
        Ok(())
    }
}

/// a / (a + c). Degenerate (0/0) when the target has no links.
pub fn table_recall(table: &LinkTable) -> Result<Ratio> {
    non_negative(table, &[table.a, table.c])?;
    Ok(Ratio::new(table.a as u64, (table.a + table.c) as u64))
}

/// a / (a + b). Degenerate (0/0) when the response has no links.
pub fn table_precision(table: &LinkTable) -> Result<Ratio> {
    non_negative(table, &[table.a, table.b])?;
    Ok(Ratio::new(table.a as u64, (table.a + table.b) as u64))
}

/// Alternative reading of `d` as the number of classes a coding shares
/// with the meet, less one. Diagnostic only: it need not agree with the
/// normative `d = total − a − b − c`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DCrossCheck {
    pub normative: i64,
    pub from_target: i64,
    pub from_response: i64,
}

impl DCrossCheck {
    pub fn agrees(&self) -> bool {
        self.from_target == self.normative && self.from_response == self.normative
    }
}

pub fn d_cross_check(target: &Annotation, response: &Annotation) -> Result<DCrossCheck> {
    let table = build_link_table(target, response, Orientation::new("target", "response"))?;
    let t = classes_of(target);
    let r = classes_of(response);
    let m = meet(&t, &r)?;
    let shared = |classes: &[Vec<MarkableId>]| -> i64 {
        let meet_classes: BTreeSet<&Vec<MarkableId>> = m.classes().iter().collect();
        classes.iter().filter(|c| meet_classes.contains(c)).count() as i64 - 1
    };
    Ok(DCrossCheck {
        normative: table.d,
        from_target: shared(t.classes()),
        from_response: shared(r.classes()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::parse_annotation;
    use crate::samples;

    fn orient() -> Orientation {
        Orientation::new("CA1", "CA3")
    }

    fn figure_two() -> (Annotation, Annotation) {
        (
            parse_annotation(samples::SAMPLE2_ALT_CA1, "s2").unwrap(),
            parse_annotation(samples::SAMPLE2_ALT_CA3, "s2").unwrap(),
        )
    }

    #[test]
    fn figure_two_link_table() {
        let (ca1, ca3) = figure_two();
        let t = build_link_table(&ca1, &ca3, orient()).unwrap();
        assert_eq!((t.a, t.b, t.c, t.d, t.total), (6, 1, 1, 2, 10));
        assert_eq!(t.row_marginals(), [7, 3]);
        assert_eq!(t.column_marginals(), [7, 3]);
        assert!(!t.negative_cell());
        assert_eq!(table_recall(&t).unwrap(), Ratio::new(6, 7));
        assert_eq!(table_precision(&t).unwrap(), Ratio::new(6, 7));
    }

    #[test]
    fn perfect_agreement_table() {
        let (ca1, _) = figure_two();
        let t = build_link_table(&ca1, &ca1, orient()).unwrap();
        assert_eq!((t.a, t.b, t.c, t.d), (7, 0, 0, 3));
        assert_eq!(table_recall(&t).unwrap(), Ratio::new(7, 7));
    }

    #[test]
    fn crossing_pairs_give_negative_d() {
        let target =
            Annotation::from_pairs("x", [("1", "p"), ("2", "p"), ("3", "q"), ("4", "q")]).unwrap();
        let response =
            Annotation::from_pairs("x", [("1", "p"), ("2", "q"), ("3", "p"), ("4", "q")]).unwrap();
        let t = build_link_table(&target, &response, orient()).unwrap();
        assert_eq!((t.a, t.b, t.c, t.d, t.total), (0, 2, 2, -1, 3));
        assert!(t.negative_cell());
    }

    #[test]
    fn too_few_markables() {
        let one = Annotation::from_pairs("x", [("1", "p")]).unwrap();
        assert_eq!(
            build_link_table(&one, &one, orient()),
            Err(Error::TooFewMarkables(1))
        );
    }

    #[test]
    fn incommensurate() {
        let ca1 = parse_annotation(samples::SAMPLE2_CA1, "s2").unwrap();
        let (_, ca3) = figure_two();
        assert!(matches!(
            build_link_table(&ca1, &ca3, orient()),
            Err(Error::Incommensurate { .. })
        ));
    }

    #[test]
    fn published_counts() {
        let t = table_from_counts(166, 19, 13, 44, Orientation::new("R1", "R2")).unwrap();
        assert_eq!(t.total, 242);
        assert_eq!(t.row_marginals(), [185, 57]);
        assert_eq!(t.column_marginals(), [179, 63]);
        assert_eq!(table_recall(&t).unwrap(), Ratio::new(166, 179));
        assert_eq!(table_precision(&t).unwrap(), Ratio::new(166, 185));
        assert_eq!(table_recall(&t).unwrap().render(3), "0.927");
        assert_eq!(table_precision(&t).unwrap().render(3), "0.897");

        let generic = table_from_counts(47, 14, 10, 29, orient()).unwrap();
        assert_eq!(generic.total, 100);

        let empty_links = table_from_counts(0, 0, 0, 9, orient()).unwrap();
        assert!(table_recall(&empty_links).unwrap().is_degenerate());
        assert!(table_precision(&empty_links).unwrap().is_degenerate());
    }

    #[test]
    fn counts_validation() {
        assert_eq!(
            table_from_counts(0, 0, 0, 0, orient()),
            Err(Error::EmptyTable(0))
        );
        let t = table_from_counts(3, -1, 0, 2, orient()).unwrap();
        assert!(t.negative_cell());
        assert!(matches!(
            table_precision(&t),
            Err(Error::NegativeCellRefusal { .. })
        ));
        assert_eq!(table_recall(&t).unwrap(), Ratio::new(3, 3));
    }

    #[test]
    fn transpose_swaps_off_diagonal_and_orientation() {
        let t = table_from_counts(166, 19, 13, 44, Orientation::new("R1", "R2")).unwrap();
        let s = t.transpose();
        assert_eq!((s.a, s.b, s.c, s.d), (166, 13, 19, 44));
        assert_eq!(s.orientation, Orientation::new("R2", "R1"));
        assert_eq!(table_recall(&s).unwrap(), table_precision(&t).unwrap());
        assert_eq!(s.transpose(), t);
    }

    #[test]
    fn count_records() {
        let text = "# published\n166,19,13,44\n\n 47, 14, 10, 29 \n";
        let tables = parse_count_records(text, &orient()).unwrap();
        assert_eq!(tables.len(), 2);
        assert_eq!(tables[1].total, 100);
        assert!(matches!(
            parse_count_records("1,2,3\n", &orient()),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
        assert!(matches!(
            parse_count_records("ok\n1,2,x,4\n", &orient()),
            Err(Error::MalformedRecord { line: 1, .. })
        ));
    }

    #[test]
    fn d_cross_check_on_figure_two() {
        let (ca1, ca3) = figure_two();
        let check = d_cross_check(&ca1, &ca3).unwrap();
        assert_eq!(
            check,
            DCrossCheck {
                normative: 2,
                from_target: 2,
                from_response: 2
            }
        );
        assert!(check.agrees());
    }

    #[test]
    fn d_cross_check_disagrees_on_split_class() {
        let target = Annotation::from_pairs("x", [("1", "p"), ("2", "p"), ("3", "p")]).unwrap();
        let response = Annotation::from_pairs("x", [("1", "p"), ("2", "p"), ("3", "q")]).unwrap();
        let check = d_cross_check(&target, &response).unwrap();
        assert_eq!(
            check,
            DCrossCheck {
                normative: 0,
                from_target: -1,
                from_response: 1
            }
        );
        assert!(!check.agrees());
    }
}

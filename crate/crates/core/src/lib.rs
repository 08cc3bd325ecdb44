//! Agreement scoring for coreference annotations.
//!
//! Two codings of the same markables are compared in two ways: MUC link
//! recall and precision computed from their equivalence classes, and
//! chance-corrected reliability (Cohen's kappa, Krippendorff's alpha)
//! computed from the 2×2 table of links both, one or neither coder found.
//!
//! ```
//! use coref_reliability::{build_link_table, kappa_from_link_table, muc_recall, parse_annotation, samples, Orientation};
//!
//! let target = parse_annotation(samples::SAMPLE2_ALT_CA1, "s2").unwrap();
//! let response = parse_annotation(samples::SAMPLE2_ALT_CA3, "s2").unwrap();
//! assert_eq!(muc_recall(&target, &response).unwrap().render(3), "0.857");
//!
//! let table = build_link_table(&target, &response, Orientation::new("CA1", "CA3")).unwrap();
//! assert_eq!((table.a, table.b, table.c, table.d), (6, 1, 1, 2));
//! let kappa = kappa_from_link_table(&table).unwrap().kappa;
//! assert_eq!(kappa.render(2), "0.52");
//! ```

pub mod agreement;
#[cfg(feature = "cli")]
pub mod cli;
pub mod contingency;
pub mod error;
pub mod exact;
pub mod model;
pub mod muc;
pub mod report;
pub mod samples;
pub mod stats;

pub use agreement::{
    expected_agreement, kappa, kappa_from_link_table, observed_agreement, AgreementResult,
    Coefficient, CoincidenceMatrix,
};
pub use contingency::{
    build_link_table, d_cross_check, table_from_counts, table_precision, table_recall, LinkTable,
    Orientation,
};
pub use error::{Error, Result};
pub use exact::{Ratio, Rational};
pub use model::{
    check_commensurate, classes_of, link_count, meet, parse_annotation, Annotation, ChainLabel,
    Markable, MarkableId, Partition,
};
pub use muc::{
    class_precision, class_recall, muc_precision, muc_recall, partition_of_class, ClassScore,
};
pub use stats::{stddev, Convention, StdDev};

//! The two-coder sample annotations used throughout the tests and demo.
//!
//! `SAMPLE2_CA1`/`SAMPLE2_CA2` cover ten markables (A–J). The `ALT` pair
//! adds a markable `D'` and recodes `D`, giving eleven markables.

pub const SAMPLE2_CA1: &str = include_str!("../fixtures/sample2_ca1.tsv");
pub const SAMPLE2_CA2: &str = include_str!("../fixtures/sample2_ca2.tsv");
pub const SAMPLE2_ALT_CA1: &str = include_str!("../fixtures/sample2_alt_ca1.tsv");
pub const SAMPLE2_ALT_CA3: &str = include_str!("../fixtures/sample2_alt_ca3.tsv");

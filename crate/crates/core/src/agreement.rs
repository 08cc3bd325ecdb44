//! Cohen's kappa and Krippendorff's alpha over coincidence matrices.
//!
//! Chance agreement is the marginal product Σ_k (row_k / n)(col_k / n).
//! Kappa is computed from agreements and alpha from disagreements, each
//! on its own path; under this chance model they are equal, and the two
//! results are checked against each other on every call.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::contingency::LinkTable;
use crate::error::{Error, Result};
use crate::exact::{render_rational, Rational};

pub const LINK: &str = "+Link";
pub const NO_LINK: &str = "-Link";

/// Square cross-classification of two coders. `counts[i][j]` is the number
/// of items the row coder put in `categories[i]` and the column coder put
/// in `categories[j]`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoincidenceMatrix {
    categories: Vec<String>,
    counts: Vec<Vec<u64>>,
    n: u64,
}

impl CoincidenceMatrix {
    pub fn new(categories: Vec<String>, counts: Vec<Vec<u64>>) -> Result<Self> {
        let k = categories.len();
        if k == 0 {
            return Err(Error::InvalidMatrix("no categories".into()));
        }
        for (i, c) in categories.iter().enumerate() {
            if categories[..i].contains(c) {
                return Err(Error::InvalidMatrix(format!("duplicate category `{c}`")));
            }
        }
        if counts.len() != k || counts.iter().any(|row| row.len() != k) {
            return Err(Error::InvalidMatrix(format!("counts must be {k}x{k}")));
        }
        let n: u64 = counts.iter().flatten().sum();
        if n == 0 {
            return Err(Error::InvalidMatrix(
                "matrix total must be at least 1".into(),
            ));
        }
        Ok(CoincidenceMatrix {
            categories,
            counts,
            n,
        })
    }

    /// Categories named `0..k`.
    pub fn from_counts(counts: Vec<Vec<u64>>) -> Result<Self> {
        let categories = (0..counts.len()).map(|i| i.to_string()).collect();
        CoincidenceMatrix::new(categories, counts)
    }

    pub fn categories(&self) -> &[String] {
        &self.categories
    }

    pub fn counts(&self) -> &[Vec<u64>] {
        &self.counts
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn row_marginals(&self) -> Vec<u64> {
        self.counts.iter().map(|row| row.iter().sum()).collect()
    }

    pub fn column_marginals(&self) -> Vec<u64> {
        (0..self.categories.len())
            .map(|j| self.counts.iter().map(|row| row[j]).sum())
            .collect()
    }

    pub fn transpose(&self) -> Self {
        let k = self.categories.len();
        let counts = (0..k)
            .map(|i| (0..k).map(|j| self.counts[j][i]).collect())
            .collect();
        CoincidenceMatrix {
            categories: self.categories.clone(),
            counts,
            n: self.n,
        }
    }

    /// Embeds a link table with +Link/−Link categories. Negative cells are
    /// refused.
    pub fn from_link_table(table: &LinkTable) -> Result<Self> {
        if table.negative_cell() {
            return Err(Error::NegativeCellRefusal {
                a: table.a,
                b: table.b,
                c: table.c,
                d: table.d,
            });
        }
        let counts = table
            .cells()
            .iter()
            .map(|row| row.iter().map(|&x| x as u64).collect())
            .collect();
        CoincidenceMatrix::new(vec![LINK.into(), NO_LINK.into()], counts)
    }
}

/// A chance-corrected coefficient, or a marker that chance agreement is
/// already total and the coefficient is undefined.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Coefficient {
    Value(Rational),
    Degenerate,
}

impl Coefficient {
    pub fn value(&self) -> Option<Rational> {
        match self {
            Coefficient::Value(v) => Some(*v),
            Coefficient::Degenerate => None,
        }
    }

    pub fn is_degenerate(&self) -> bool {
        matches!(self, Coefficient::Degenerate)
    }

    pub fn render(&self, digits: u32) -> String {
        match self {
            Coefficient::Value(v) => render_rational(v, digits),
            Coefficient::Degenerate => "degenerate".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AgreementResult {
    /// Observed agreement.
    pub p_ao: Rational,
    /// Expected (chance) agreement.
    pub p_ae: Rational,
    /// Observed disagreement.
    pub p_do: Rational,
    /// Expected disagreement.
    pub p_de: Rational,
    pub kappa: Coefficient,
    pub alpha: Coefficient,
}

fn ratio(num: u128, den: u128) -> Rational {
    Rational::new(num as i128, den as i128)
}

/// Diagonal mass over n.
pub fn observed_agreement(m: &CoincidenceMatrix) -> Rational {
    let diag: u64 = (0..m.categories.len()).map(|i| m.counts[i][i]).sum();
    ratio(diag as u128, m.n as u128)
}

/// Σ_k (row_k / n)(col_k / n).
pub fn expected_agreement(m: &CoincidenceMatrix) -> Rational {
    let rows = m.row_marginals();
    let cols = m.column_marginals();
    let product: u128 = rows
        .iter()
        .zip(&cols)
        .map(|(&r, &c)| r as u128 * c as u128)
        .sum();
    let n = m.n as u128;
    ratio(product, n * n)
}

fn observed_disagreement(m: &CoincidenceMatrix) -> Rational {
    let k = m.categories.len();
    let off: u64 = (0..k)
        .flat_map(|i| (0..k).filter(move |&j| j != i).map(move |j| (i, j)))
        .map(|(i, j)| m.counts[i][j])
        .sum();
    ratio(off as u128, m.n as u128)
}

fn expected_disagreement(m: &CoincidenceMatrix) -> Rational {
    let rows = m.row_marginals();
    let cols = m.column_marginals();
    let mut product: u128 = 0;
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            if i != j {
                product += r as u128 * c as u128;
            }
        }
    }
    let n = m.n as u128;
    ratio(product, n * n)
}

/// Computes kappa from agreements and alpha from disagreements.
///
/// Panics if the two disagree, which would mean the arithmetic is wrong.
pub fn kappa(m: &CoincidenceMatrix) -> AgreementResult {
    let p_ao = observed_agreement(m);
    let p_ae = expected_agreement(m);
    let p_do = observed_disagreement(m);
    let p_de = expected_disagreement(m);
    let one = Rational::one();

    let kappa = if p_ae == one {
        Coefficient::Degenerate
    } else {
        Coefficient::Value((p_ao - p_ae) / (one - p_ae))
    };
    let alpha = if p_de.is_zero() {
        Coefficient::Degenerate
    } else {
        Coefficient::Value(one - p_do / p_de)
    };
    assert_eq!(kappa, alpha, "kappa and alpha diverged on {m:?}");
    debug_assert_eq!(p_ao + p_do, one);
    debug_assert_eq!(p_ae + p_de, one);

    AgreementResult {
        p_ao,
        p_ae,
        p_do,
        p_de,
        kappa,
        alpha,
    }
}

pub fn kappa_from_link_table(table: &LinkTable) -> Result<AgreementResult> {
    Ok(kappa(&CoincidenceMatrix::from_link_table(table)?))
}

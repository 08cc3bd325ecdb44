//! MUC link recall and precision computed from equivalence classes.
//!
//! A target class `C` of size k needs k − 1 links. Partitioning `C` by the
//! response chains gives `p(C)`; each extra group is one missing link, so
//! the class contributes `|C| − |p(C)|` found links out of `|C| − 1`.
//! Precision is the same computation with the roles swapped.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::Ratio;
use crate::model::{check_commensurate, classes_of, Annotation, ChainLabel, MarkableId};

/// Recall of one target class against a response.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassScore {
    pub target_class: Vec<MarkableId>,
    /// |p(C)|
    pub partition_size: usize,
    /// |p(C)| − 1
    pub missing_links: usize,
    /// |C| − 1
    pub target_links: usize,
    pub recall: Ratio,
}

impl ClassScore {
    /// Singleton classes have no links to find and score 0/0.
    pub fn is_degenerate(&self) -> bool {
        self.recall.is_degenerate()
    }
}

/// Groups the members of `class` by their chain in `response`, in order of
/// first appearance.
pub fn partition_of_class(
    class: &[MarkableId],
    response: &Annotation,
) -> Result<Vec<Vec<MarkableId>>> {
    let mut groups: Vec<Vec<MarkableId>> = Vec::new();
    let mut slot: HashMap<&ChainLabel, usize> = HashMap::new();
    for id in class {
        let chain = response
            .chain_of(id)
            .ok_or_else(|| Error::UnknownMarkable(id.clone()))?;
        let i = *slot.entry(chain).or_insert_with(|| {
            groups.push(Vec::new());
            groups.len() - 1
        });
        groups[i].push(id.clone());
    }
    Ok(groups)
}

pub fn class_recall(class: &[MarkableId], response: &Annotation) -> Result<ClassScore> {
    let groups = partition_of_class(class, response)?;
    let size = class.len();
    let parts = groups.len();
    let recall = if size <= 1 {
        Ratio::new(0, 0)
    } else {
        Ratio::new((size - parts) as u64, (size - 1) as u64)
    };
    Ok(ClassScore {
        target_class: class.to_vec(),
        partition_size: parts,
        missing_links: parts.saturating_sub(1),
        target_links: size.saturating_sub(1),
        recall,
    })
}

/// Per-class precision of a response class, partitioned by the target.
pub fn class_precision(class: &[MarkableId], target: &Annotation) -> Result<ClassScore> {
    class_recall(class, target)
}

/// Per-class scores for every target class, in canonical class order.
pub fn class_scores(target: &Annotation, response: &Annotation) -> Result<Vec<ClassScore>> {
    check_commensurate(target, response)?;
    classes_of(target)
        .classes()
        .iter()
        .map(|class| class_recall(class, response))
        .collect()
}

/// Σ(|C_i| − |p(C_i)|) / Σ(|C_i| − 1) over the target classes.
///
/// If every target class is a singleton the result is 0/0, which
/// [`Ratio::is_degenerate`] reports.
pub fn muc_recall(target: &Annotation, response: &Annotation) -> Result<Ratio> {
    let (found, total) = class_scores(target, response)?
        .iter()
        .fold((0u64, 0u64), |(found, total), s| {
            (found + s.recall.numerator, total + s.target_links as u64)
        });
    Ok(Ratio::new(found, total))
}

/// Precision is recall with the roles of target and response exchanged.
pub fn muc_precision(target: &Annotation, response: &Annotation) -> Result<Ratio> {
    muc_recall(response, target)
}

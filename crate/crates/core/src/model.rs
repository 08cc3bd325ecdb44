//! Markables, annotations and the equivalence-class partitions they induce.
//!
//! An [`Annotation`] assigns every markable of a document to exactly one
//! chain. Dropping the chain labels leaves a [`Partition`] of the markable
//! set, which is what every metric in this crate is computed from.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Opaque markable identifier, compared by exact string equality.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MarkableId(String);

impl MarkableId {
    pub fn new(id: impl Into<String>) -> Option<Self> {
        let id = id.into();
        (!id.is_empty()).then_some(MarkableId(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for MarkableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<String> for MarkableId {
    /// Panics on an empty string; use [`MarkableId::new`] for untrusted input.
    fn from(id: String) -> Self {
        MarkableId::new(id).expect("markable id must be non-empty")
    }
}

impl From<&str> for MarkableId {
    /// Panics on an empty string; use [`MarkableId::new`] for untrusted input.
    fn from(id: &str) -> Self {
        MarkableId::new(id).expect("markable id must be non-empty")
    }
}

/// Chain label as written by the annotator. Never interpreted.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChainLabel(String);

impl ChainLabel {
    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl<S: Into<String>> From<S> for ChainLabel {
    fn from(s: S) -> Self {
        ChainLabel(s.into())
    }
}

impl fmt::Display for ChainLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// A referring expression. `surface` and `position` are for display only.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Markable {
    pub id: MarkableId,
    pub surface: Option<String>,
    pub position: Option<usize>,
}

impl Markable {
    pub fn new(id: MarkableId) -> Self {
        Markable {
            id,
            surface: None,
            position: None,
        }
    }
}

/// A total assignment of chain labels to the markables of one document.
#[derive(Debug, Clone)]
pub struct Annotation {
    doc_id: String,
    markables: Vec<Markable>,
    chains: Vec<ChainLabel>,
    index: HashMap<MarkableId, usize>,
}

impl Annotation {
    pub fn new(doc_id: impl Into<String>) -> Self {
        Annotation {
            doc_id: doc_id.into(),
            markables: Vec::new(),
            chains: Vec::new(),
            index: HashMap::new(),
        }
    }

    /// Builds an annotation from `(markable, chain)` pairs in document order.
    /// Duplicate ids are reported with their 1-based record number.
    pub fn from_pairs<I, M, C>(doc_id: impl Into<String>, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (M, C)>,
        M: Into<MarkableId>,
        C: Into<ChainLabel>,
    {
        let mut annotation = Annotation::new(doc_id);
        for (n, (id, chain)) in pairs.into_iter().enumerate() {
            let mut markable = Markable::new(id.into());
            markable.position = Some(n);
            annotation.push(markable, chain.into(), n + 1)?;
        }
        Ok(annotation)
    }

    fn push(&mut self, markable: Markable, chain: ChainLabel, line: usize) -> Result<()> {
        if self.index.contains_key(&markable.id) {
            return Err(Error::DuplicateMarkable {
                id: markable.id,
                line,
            });
        }
        self.index.insert(markable.id.clone(), self.markables.len());
        self.markables.push(markable);
        self.chains.push(chain);
        Ok(())
    }

    pub fn doc_id(&self) -> &str {
        &self.doc_id
    }

    pub fn markables(&self) -> &[Markable] {
        &self.markables
    }

    pub fn ids(&self) -> impl Iterator<Item = &MarkableId> {
        self.markables.iter().map(|m| &m.id)
    }

    pub fn len(&self) -> usize {
        self.markables.len()
    }

    pub fn is_empty(&self) -> bool {
        self.markables.is_empty()
    }

    pub fn contains(&self, id: &MarkableId) -> bool {
        self.index.contains_key(id)
    }

    pub fn chain_of(&self, id: &MarkableId) -> Option<&ChainLabel> {
        self.index.get(id).map(|&i| &self.chains[i])
    }

    /// `(markable, chain)` pairs in document order.
    pub fn assignments(&self) -> impl Iterator<Item = (&Markable, &ChainLabel)> {
        self.markables.iter().zip(&self.chains)
    }

    pub fn chain_count(&self) -> usize {
        self.chains.iter().collect::<BTreeSet<_>>().len()
    }

    pub fn partition(&self) -> Partition {
        classes_of(self)
    }
}

/// Parses the annotation TSV format.
///
/// One record per line: `markable_id<TAB>chain_label`, optionally followed by
/// a third `<TAB>surface` column. Lines starting with `#` and blank lines are
/// skipped. Markable order follows file order.
pub fn parse_annotation(text: &str, doc_id: &str) -> Result<Annotation> {
    let mut annotation = Annotation::new(doc_id);
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let record = raw.strip_suffix('\r').unwrap_or(raw);
        if record.starts_with('#') || record.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = record.split('\t').collect();
        if !(2..=3).contains(&fields.len()) {
            return Err(Error::MalformedRecord {
                line,
                reason: format!(
                    "expected 2 or 3 tab-separated fields, found {}",
                    fields.len()
                ),
            });
        }
        let id = MarkableId::new(fields[0]).ok_or_else(|| Error::MalformedRecord {
            line,
            reason: "empty markable id".into(),
        })?;
        if fields[1].trim().is_empty() {
            return Err(Error::MalformedRecord {
                line,
                reason: format!("blank chain label for markable `{id}`"),
            });
        }
        let markable = Markable {
            id,
            surface: fields.get(2).map(|s| s.to_string()),
            position: Some(annotation.len()),
        };
        annotation.push(markable, ChainLabel::from(fields[1]), line)?;
    }
    Ok(annotation)
}

/// A set of disjoint, non-empty classes of markables.
///
/// Stored canonically (members sorted within a class, classes sorted), so
/// two partitions compare equal exactly when they are the same set of sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Partition {
    classes: Vec<Vec<MarkableId>>,
}

impl Partition {
    pub fn new<I, C, M>(classes: I) -> Result<Self>
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = M>,
        M: Into<MarkableId>,
    {
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for class in classes {
            let mut members: Vec<MarkableId> = class.into_iter().map(Into::into).collect();
            if members.is_empty() {
                return Err(Error::EmptyClass);
            }
            for m in &members {
                if !seen.insert(m.clone()) {
                    return Err(Error::OverlappingClasses(m.clone()));
                }
            }
            members.sort();
            out.push(members);
        }
        Ok(Partition::from_canonical(out))
    }

    /// Classes must already be disjoint and non-empty.
    fn from_canonical(mut classes: Vec<Vec<MarkableId>>) -> Self {
        for class in &mut classes {
            class.sort();
        }
        classes.sort();
        Partition { classes }
    }

    pub fn classes(&self) -> &[Vec<MarkableId>] {
        &self.classes
    }

    pub fn class_count(&self) -> usize {
        self.classes.len()
    }

    /// Number of markables (N).
    pub fn size(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }

    pub fn universe(&self) -> BTreeSet<&MarkableId> {
        self.classes.iter().flatten().collect()
    }

    /// Σ (|C| − 1) over classes, i.e. N − |classes|.
    pub fn link_count(&self) -> usize {
        self.size() - self.class_count()
    }

    /// Maps each markable to the index of its class.
    pub fn class_index(&self) -> HashMap<&MarkableId, usize> {
        self.classes
            .iter()
            .enumerate()
            .flat_map(|(i, class)| class.iter().map(move |m| (m, i)))
            .collect()
    }

    /// True when every class of `self` lies inside some class of `other`.
    pub fn refines(&self, other: &Partition) -> bool {
        let index = other.class_index();
        self.classes.iter().all(|class| {
            let mut owners = class.iter().map(|m| index.get(m));
            match owners.next() {
                Some(Some(first)) => owners.all(|o| o == Some(first)),
                _ => false,
            }
        })
    }

    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        meet(self, other)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, class) in self.classes.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("{")?;
            for (j, m) in class.iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{m}")?;
            }
            f.write_str("}")?;
        }
        Ok(())
    }
}

/// One class per distinct chain label, labels discarded.
pub fn classes_of(annotation: &Annotation) -> Partition {
    let mut by_chain: HashMap<&ChainLabel, Vec<MarkableId>> = HashMap::new();
    for (markable, chain) in annotation.assignments() {
        by_chain.entry(chain).or_default().push(markable.id.clone());
    }
    Partition::from_canonical(by_chain.into_values().collect())
}

/// Succeeds iff both annotations cover exactly the same markable ids.
pub fn check_commensurate(a: &Annotation, b: &Annotation) -> Result<()> {
    let only_in_first: Vec<MarkableId> = a.ids().filter(|id| !b.contains(id)).cloned().collect();
    let only_in_second: Vec<MarkableId> = b.ids().filter(|id| !a.contains(id)).cloned().collect();
    if only_in_first.is_empty() && only_in_second.is_empty() {
        Ok(())
    } else {
        Err(Error::Incommensurate {
            only_in_first,
            only_in_second,
        })
    }
}

/// Common refinement: two markables share a class of the result iff they
/// share a class in both `p` and `q`.
pub fn meet(p: &Partition, q: &Partition) -> Result<Partition> {
    if p.universe() != q.universe() {
        return Err(Error::UniverseMismatch);
    }
    let q_index = q.class_index();
    let mut cells: HashMap<(usize, usize), Vec<MarkableId>> = HashMap::new();
    for (i, class) in p.classes.iter().enumerate() {
        for m in class {
            cells.entry((i, q_index[m])).or_default().push(m.clone());
        }
    }
    Ok(Partition::from_canonical(cells.into_values().collect()))
}

pub fn link_count(p: &Partition) -> usize {
    p.link_count()
}

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use coref_reliability::{Annotation, Partition};
use num_rational::Ratio;
use proptest::prelude::*;
use rand::Rng;

pub type Classes = BTreeSet<BTreeSet<String>>;

pub fn id(i: usize) -> String {
    format!("m{i}")
}

/// Annotation where markable `m{i}` is in chain `labels[i]`.
pub fn annotation(labels: &[usize]) -> Annotation {
    Annotation::from_pairs(
        "doc",
        labels
            .iter()
            .enumerate()
            .map(|(i, l)| (id(i), format!("c{l}"))),
    )
    .unwrap()
}

pub fn classes_of_partition(p: &Partition) -> Classes {
    p.classes()
        .iter()
        .map(|c| c.iter().map(|m| m.to_string()).collect())
        .collect()
}

/// Groups markables by pairwise co-membership in both labelings, O(N²).
pub fn oracle_meet(p: &[usize], q: &[usize]) -> Classes {
    let n = p.len();
    let mut assigned = vec![false; n];
    let mut out = Classes::new();
    for x in 0..n {
        if assigned[x] {
            continue;
        }
        let mut class = BTreeSet::new();
        for y in 0..n {
            if p[x] == p[y] && q[x] == q[y] {
                assigned[y] = true;
                class.insert(id(y));
            }
        }
        out.insert(class);
    }
    out
}

/// Classes of a labeling, via pairwise co-membership.
pub fn oracle_classes(p: &[usize]) -> Classes {
    oracle_meet(p, p)
}

/// Links of a labeling: N − number of distinct labels.
pub fn oracle_links(p: &[usize]) -> usize {
    p.len() - p.iter().collect::<BTreeSet<_>>().len()
}

/// Missing links: Σ over target classes of (distinct response labels − 1).
pub fn oracle_missing(target: &[usize], response: &[usize]) -> usize {
    let mut by_class: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
    for (t, r) in target.iter().zip(response) {
        by_class.entry(*t).or_default().insert(*r);
    }
    by_class.values().map(|s| s.len() - 1).sum()
}

/// (found, total) recall counts computed without the library.
pub fn oracle_recall(target: &[usize], response: &[usize]) -> (u64, u64) {
    let total = oracle_links(target);
    (
        (total - oracle_missing(target, response)) as u64,
        total as u64,
    )
}

pub fn random_labels<R: Rng>(rng: &mut R, max_n: usize) -> Vec<usize> {
    let n = rng.gen_range(1..=max_n);
    let chains = rng.gen_range(1..=n);
    (0..n).map(|_| rng.gen_range(0..chains)).collect()
}

pub fn random_pair<R: Rng>(rng: &mut R, max_n: usize) -> (Vec<usize>, Vec<usize>) {
    let t = random_labels(rng, max_n);
    let chains = rng.gen_range(1..=t.len());
    let r = (0..t.len()).map(|_| rng.gen_range(0..chains)).collect();
    (t, r)
}

/// Strategy for two labelings of the same `1..=max_n` markables.
pub fn labeling_pair(max_n: usize) -> impl Strategy<Value = (Vec<usize>, Vec<usize>)> {
    (1..=max_n).prop_flat_map(|n| {
        (
            prop::collection::vec(0..n, n),
            prop::collection::vec(0..n, n),
        )
    })
}

/// 2×2 kappa straight from the definition, by expanding the table into
/// individual items.
pub fn oracle_kappa_2x2(cells: [[u64; 2]; 2]) -> Option<Ratio<i128>> {
    let mut items = Vec::new();
    for (row, cols) in cells.iter().enumerate() {
        for (col, &count) in cols.iter().enumerate() {
            for _ in 0..count {
                items.push((row, col));
            }
        }
    }
    let n = items.len() as i128;
    let agree = items.iter().filter(|(r, c)| r == c).count() as i128;
    let mut chance = Ratio::from_integer(0i128);
    for k in 0..2 {
        let rows = items.iter().filter(|(r, _)| *r == k).count() as i128;
        let cols = items.iter().filter(|(_, c)| *c == k).count() as i128;
        chance += Ratio::new(rows * cols, n * n);
    }
    let one = Ratio::from_integer(1);
    (chance != one).then(|| (Ratio::new(agree, n) - chance) / (one - chance))
}

/// A commensurate pair whose link table is exactly (a, b, c, d).
///
/// A shared chain of a + 1 markables; c more markables join it in the
/// target only and b more in the response only; d markables are
/// singletons in both.
pub fn synthetic_pair(a: usize, b: usize, c: usize, d: usize) -> (Annotation, Annotation) {
    let mut target = Vec::new();
    let mut response = Vec::new();
    let mut next = 1;
    for _ in 0..=a {
        target.push(0);
        response.push(0);
    }
    for _ in 0..c {
        target.push(0);
        response.push(next);
        next += 1;
    }
    for _ in 0..b {
        target.push(next);
        response.push(0);
        next += 1;
    }
    for _ in 0..d {
        target.push(next);
        response.push(next);
        next += 1;
    }
    (annotation(&target), annotation(&response))
}

/// Published per-narrative (narrative, kappa, recall, precision).
pub const NARRATIVES: [(u32, &str, &str, &str); 15] = [
    (1, ".85", ".96", ".96"),
    (2, ".65", ".90", ".93"),
    (3, ".72", ".93", ".94"),
    (4, ".89", ".94", ".98"),
    (5, ".89", ".95", ".99"),
    (6, ".83", ".94", ".97"),
    (8, ".84", ".91", ".96"),
    (9, ".75", ".88", ".96"),
    (11, ".79", ".92", ".95"),
    (12, ".74", ".90", ".92"),
    (15, ".80", ".93", ".93"),
    (16, ".93", ".97", ".98"),
    (17, ".86", ".95", ".96"),
    (18, ".84", ".93", ".96"),
    (19, ".85", ".96", ".93"),
];

/// Smallest (a, b, c, d) reproducing each narrative's kappa, recall
/// a/(a+c) and precision a/(a+b) at two decimals, found by exhaustive
/// search over a ≤ 259, b, c < 30, d < 120.
pub const SYNTHETIC_TABLES: [(usize, usize, usize, usize); 15] = [
    (22, 1, 1, 8),
    (26, 2, 3, 7),
    (50, 3, 4, 13),
    (44, 1, 3, 26),
    (69, 1, 4, 29),
    (29, 1, 2, 11),
    (43, 2, 4, 28),
    (22, 1, 3, 10),
    (35, 2, 3, 15),
    (35, 3, 4, 17),
    (13, 1, 1, 7),
    (56, 1, 2, 30),
    (52, 2, 3, 23),
    (25, 1, 2, 13),
    (25, 2, 1, 14),
];

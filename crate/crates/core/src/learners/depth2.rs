//! Exact two-level trees.
//!
//! The split language: a nominal feature splits multiway (one branch per
//! value plus a missing branch); a numeric feature splits on at most one
//! threshold (lower side, upper side, missing branch), with candidate
//! thresholds at every midpoint between adjacent distinct values of the
//! rows at the node. The no-threshold numeric split (present vs missing)
//! is also a candidate.
//!
//! Given the root split, the subtrees under its branches do not interact,
//! so each child is optimised on its own as either a leaf or the best
//! single split. Scanning every root candidate that way finds the tree with
//! the fewest training errors in the language.

use crate::dataset::{Cell, FeatureKind, Subset};
use crate::error::{Error, Result};

use super::{argmax, branch_errors, majority_or, midpoint, Classifier, SplitForm, SplitRule, StumpModel};

#[derive(Debug, Clone, PartialEq)]
pub enum Child {
    Leaf(usize),
    Stump(StumpModel),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Depth2Model {
    pub root: SplitRule,
    /// One child per root branch.
    pub children: Vec<Child>,
    pub n_features: usize,
}

impl Classifier for Depth2Model {
    fn n_features(&self) -> usize {
        self.n_features
    }

    fn classify(&self, cells: &[Cell]) -> usize {
        match &self.children[self.root.route(cells)] {
            Child::Leaf(class) => *class,
            Child::Stump(stump) => stump.classify(cells),
        }
    }
}

const NO_BRANCH: u32 = u32::MAX;

/// Best split found for one child so far.
#[derive(Clone)]
struct ChildBest {
    errors: u32,
    split: Option<SplitRule>,
}

struct Search<'a> {
    train: &'a Subset<'a>,
    n_classes: usize,
    /// Per numeric feature: (value, dataset row, class) of training rows
    /// with a value, ascending by value.
    sorted: Vec<Option<Vec<(f64, usize, usize)>>>,
    /// Per numeric feature: rank of each dataset row's value among the
    /// distinct training values (`NO_BRANCH` when absent), and the count.
    blocks: Vec<Option<(Vec<u32>, usize)>>,
    /// Root branch of every dataset row under the candidate being scored.
    branch_of: Vec<u32>,
}

impl<'a> Search<'a> {
    fn new(train: &'a Subset<'a>) -> Self {
        let data = train.dataset;
        let sorted = data
            .features()
            .iter()
            .map(|spec| {
                spec.is_numeric().then(|| {
                    let mut v: Vec<(f64, usize, usize)> = train
                        .rows
                        .iter()
                        .filter_map(|&r| match data.rows()[r].cells[spec.index] {
                            Cell::Numeric(x) => Some((x, r, data.rows()[r].class)),
                            _ => None,
                        })
                        .collect();
                    v.sort_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));
                    v
                })
            })
            .collect::<Vec<_>>();
        let blocks = sorted
            .iter()
            .map(|s| {
                s.as_ref().map(|s: &Vec<(f64, usize, usize)>| {
                    let mut of = vec![NO_BRANCH; data.len()];
                    let mut n = 0usize;
                    for (i, &(x, r, _)) in s.iter().enumerate() {
                        if i > 0 && s[i - 1].0 < x {
                            n += 1;
                        }
                        of[r] = n as u32;
                    }
                    (of, if s.is_empty() { 0 } else { n + 1 })
                })
            })
            .collect();
        Search {
            train,
            n_classes: data.n_classes(),
            sorted,
            blocks,
            branch_of: vec![NO_BRANCH; data.len()],
        }
    }

    /// Total errors of every single-threshold root split on numeric feature
    /// `f`, ascending by threshold.
    ///
    /// Rows move from the upper child to the lower one as the threshold
    /// sweeps up, and each child keeps enough running state to report its
    /// best leaf-or-split error after every move.
    fn threshold_errors(&self, f: usize) -> Vec<(f64, u32)> {
        let data = self.train.dataset;
        let sorted = self.sorted[f].as_ref().unwrap();
        if self.n_classes > MAX_SWEEP_CLASSES {
            let mut search = Search::new(self.train);
            let mut out = Vec::new();
            for w in sorted.windows(2) {
                if w[0].0 < w[1].0 {
                    let t = midpoint(w[0].0, w[1].0);
                    out.push((t, search.score_root(&SplitRule::intervals(f, vec![t])).0));
                }
            }
            return out;
        }
        let mut lower = ChildState::new(self);
        let mut upper = ChildState::new(self);
        let mut missing = ChildState::new(self);
        for &r in &self.train.rows {
            match data.rows()[r].cells[f] {
                Cell::Numeric(_) => upper.update(self, r, 1),
                _ => missing.update(self, r, 1),
            }
        }
        let missing_errors = missing.best_errors();
        let mut out = Vec::new();
        let mut i = 0;
        while i < sorted.len() {
            let x = sorted[i].0;
            while i < sorted.len() && sorted[i].0 == x {
                upper.update(self, sorted[i].1, -1);
                lower.update(self, sorted[i].1, 1);
                i += 1;
            }
            if i < sorted.len() {
                let errors = lower.best_errors() + upper.best_errors() + missing_errors;
                out.push((midpoint(x, sorted[i].0), errors));
            }
        }
        out
    }

    /// Scores a root split: returns total errors and, per branch, the class
    /// counts and the best child split (`None` means a leaf).
    fn score_root(&mut self, root: &SplitRule) -> (u32, Vec<Vec<u32>>, Vec<Option<SplitRule>>) {
        let data = self.train.dataset;
        let nb = root.branch_count();
        let c = self.n_classes;
        let mut totals = vec![vec![0u32; c]; nb];
        for &r in &self.train.rows {
            let row = &data.rows()[r];
            let b = root.route(&row.cells);
            self.branch_of[r] = b as u32;
            totals[b][row.class] += 1;
        }

        let mut best = vec![
            ChildBest {
                errors: u32::MAX,
                split: None,
            };
            nb
        ];
        let consider = |best: &mut ChildBest, errors: u32, split: &dyn Fn() -> SplitRule| {
            if errors < best.errors {
                best.errors = errors;
                best.split = Some(split());
            }
        };

        for spec in data.features() {
            let f = spec.index;
            match &spec.kind {
                FeatureKind::Nominal(values) => {
                    let width = values.len() + 1;
                    let mut counts = vec![0u32; nb * width * c];
                    for &r in &self.train.rows {
                        let row = &data.rows()[r];
                        let b = self.branch_of[r] as usize;
                        let v = match row.cells[f] {
                            Cell::Nominal(v) if (v as usize) < values.len() => v as usize,
                            _ => values.len(),
                        };
                        counts[(b * width + v) * c + row.class] += 1;
                    }
                    for (b, slot) in best.iter_mut().enumerate() {
                        let errors = (0..width)
                            .map(|v| branch_errors(&counts[(b * width + v) * c..(b * width + v + 1) * c]))
                            .sum();
                        consider(slot, errors, &|| SplitRule::nominal(f, values.len()));
                    }
                }
                FeatureKind::Numeric => {
                    let sorted = self.sorted[f].as_ref().unwrap();
                    let mut present = vec![vec![0u32; c]; nb];
                    for &(_, r, class) in sorted {
                        present[self.branch_of[r] as usize][class] += 1;
                    }
                    let missing_errors: Vec<u32> = (0..nb)
                        .map(|b| {
                            let m: Vec<u32> = totals[b].iter().zip(&present[b]).map(|(t, p)| t - p).collect();
                            branch_errors(&m)
                        })
                        .collect();
                    for b in 0..nb {
                        let errors = branch_errors(&present[b]) + missing_errors[b];
                        consider(&mut best[b], errors, &|| SplitRule::intervals(f, Vec::new()));
                    }
                    let mut left = vec![vec![0u32; c]; nb];
                    let mut right = vec![0u32; c];
                    let mut previous: Vec<Option<f64>> = vec![None; nb];
                    for &(x, r, class) in sorted {
                        let b = self.branch_of[r] as usize;
                        if let Some(p) = previous[b] {
                            if p < x {
                                for k in 0..c {
                                    right[k] = present[b][k] - left[b][k];
                                }
                                let errors = branch_errors(&left[b]) + branch_errors(&right) + missing_errors[b];
                                consider(&mut best[b], errors, &|| SplitRule::intervals(f, vec![midpoint(p, x)]));
                            }
                        }
                        left[b][class] += 1;
                        previous[b] = Some(x);
                    }
                }
            }
        }

        let mut total_errors = 0;
        let mut children = Vec::with_capacity(nb);
        for (b, slot) in best.into_iter().enumerate() {
            let leaf = branch_errors(&totals[b]);
            if leaf <= slot.errors {
                total_errors += leaf;
                children.push(None);
            } else {
                total_errors += slot.errors;
                children.push(slot.split);
            }
        }
        (total_errors, totals, children)
    }
}

/// Above this many classes the per-class-pair state of the sweep costs more
/// than rescoring each threshold directly.
const MAX_SWEEP_CLASSES: usize = 8;

/// Segment tree over value blocks answering the maximum prefix sum
/// (the empty prefix included) under point updates.
struct PrefixMax {
    size: usize,
    sum: Vec<i32>,
    best: Vec<i32>,
}

impl PrefixMax {
    fn new(n: usize) -> Self {
        let size = n.max(1).next_power_of_two();
        PrefixMax {
            size,
            sum: vec![0; 2 * size],
            best: vec![0; 2 * size],
        }
    }

    fn add(&mut self, pos: usize, delta: i32) {
        let mut i = self.size + pos;
        self.sum[i] += delta;
        self.best[i] = self.sum[i].max(0);
        while i > 1 {
            i /= 2;
            let (l, r) = (2 * i, 2 * i + 1);
            self.sum[i] = self.sum[l] + self.sum[r];
            self.best[i] = self.best[l].max(self.sum[l] + self.best[r]);
        }
    }

    fn max_prefix(&self) -> i32 {
        self.best[1]
    }
}

enum FeatureState {
    /// Class counts per value, missing last.
    Nominal { width: usize, counts: Vec<i32> },
    /// Class counts of rows with a value, and for each ordered class pair
    /// (a, b) a tree over blocks of `count_a - count_b`. A cut after some
    /// prefix then scores `prefix_a + (present_b - prefix_b)` correct rows
    /// when the lower side predicts a and the upper side b.
    Numeric { present: Vec<i32>, pairs: Vec<PrefixMax> },
}

/// Running state of one child of the root, enough to report the errors of
/// its best leaf or single split.
struct ChildState {
    totals: Vec<i32>,
    features: Vec<FeatureState>,
}

fn errors_i32(counts: &[i32]) -> i32 {
    counts.iter().sum::<i32>() - counts.iter().copied().max().unwrap_or(0)
}

impl ChildState {
    fn new(search: &Search<'_>) -> Self {
        let c = search.n_classes;
        let features = search
            .train
            .dataset
            .features()
            .iter()
            .map(|spec| match &spec.kind {
                FeatureKind::Nominal(values) => FeatureState::Nominal {
                    width: values.len() + 1,
                    counts: vec![0; (values.len() + 1) * c],
                },
                FeatureKind::Numeric => {
                    let n = search.blocks[spec.index].as_ref().unwrap().1;
                    FeatureState::Numeric {
                        present: vec![0; c],
                        pairs: (0..c * c)
                            .map(|k| PrefixMax::new(if k / c == k % c { 0 } else { n }))
                            .collect(),
                    }
                }
            })
            .collect();
        ChildState {
            totals: vec![0; c],
            features,
        }
    }

    fn update(&mut self, search: &Search<'_>, r: usize, sign: i32) {
        let c = self.totals.len();
        let row = &search.train.dataset.rows()[r];
        let k = row.class;
        self.totals[k] += sign;
        for (f, state) in self.features.iter_mut().enumerate() {
            match state {
                FeatureState::Nominal { width, counts } => {
                    let v = match row.cells[f] {
                        Cell::Nominal(v) if (v as usize) < *width - 1 => v as usize,
                        _ => *width - 1,
                    };
                    counts[v * c + k] += sign;
                }
                FeatureState::Numeric { present, pairs } => {
                    let b = search.blocks[f].as_ref().unwrap().0[r];
                    if b == NO_BRANCH {
                        continue;
                    }
                    present[k] += sign;
                    for other in (0..c).filter(|&o| o != k) {
                        pairs[k * c + other].add(b as usize, sign);
                        pairs[other * c + k].add(b as usize, -sign);
                    }
                }
            }
        }
    }

    fn best_errors(&self) -> u32 {
        let c = self.totals.len();
        let mut best = errors_i32(&self.totals);
        for state in &self.features {
            let errors = match state {
                FeatureState::Nominal { counts, .. } => counts.chunks(c).map(errors_i32).sum(),
                FeatureState::Numeric { present, pairs } => {
                    let n: i32 = present.iter().sum();
                    let mut correct = present.iter().copied().max().unwrap_or(0);
                    for a in 0..c {
                        for b in (0..c).filter(|&b| b != a) {
                            correct = correct.max(pairs[a * c + b].max_prefix() + present[b]);
                        }
                    }
                    let missing: Vec<i32> = self.totals.iter().zip(present).map(|(t, p)| t - p).collect();
                    n - correct + errors_i32(&missing)
                }
            };
            best = best.min(errors);
        }
        best as u32
    }
}

/// Trains the two-level tree with the fewest training errors.
///
/// Ties go to the earlier root candidate (lower feature index, then no
/// threshold before a threshold, then lower threshold), and a child is a
/// leaf unless a split strictly reduces its errors. Empty branches predict
/// the majority class of their parent node.
pub fn train_depth2(train: &Subset<'_>) -> Result<Depth2Model> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let data = train.dataset;
    if data.features().is_empty() {
        return Err(Error::data("dataset has no features"));
    }
    let root_majority = argmax(&train.class_counts());
    let mut search = Search::new(train);

    let mut best: Option<(u32, SplitRule)> = None;
    let mut offer = |errors: u32, root: &dyn Fn() -> SplitRule| {
        if best.as_ref().is_none_or(|b| errors < b.0) {
            best = Some((errors, root()));
        }
    };
    for spec in data.features() {
        let f = spec.index;
        match &spec.kind {
            FeatureKind::Nominal(values) => {
                let rule = SplitRule::nominal(f, values.len());
                offer(search.score_root(&rule).0, &|| rule.clone());
            }
            FeatureKind::Numeric => {
                let rule = SplitRule::intervals(f, Vec::new());
                offer(search.score_root(&rule).0, &|| rule.clone());
                for (t, errors) in search.threshold_errors(f) {
                    offer(errors, &|| SplitRule::intervals(f, vec![t]));
                }
            }
        }
    }
    let (_, root) = best.expect("every feature yields a root candidate");
    let (_, totals, child_splits) = search.score_root(&root);

    let mut branch_rows = vec![Vec::new(); root.branch_count()];
    for &r in &train.rows {
        branch_rows[root.route(&data.rows()[r].cells)].push(r);
    }
    let children = child_splits
        .into_iter()
        .zip(branch_rows)
        .zip(&totals)
        .map(|((split, rows), counts)| {
            let majority = majority_or(counts, root_majority);
            match split {
                None => Child::Leaf(majority),
                Some(split) => {
                    let subset = Subset { dataset: data, rows };
                    Child::Stump(StumpModel::fit(&subset, split, majority).0)
                }
            }
        })
        .collect();

    Ok(Depth2Model {
        root,
        children,
        n_features: data.features().len(),
    })
}

impl Depth2Model {
    /// Number of thresholds used anywhere in the tree.
    pub fn threshold_count(&self) -> usize {
        let below: usize = self
            .children
            .iter()
            .map(|c| match c {
                Child::Stump(s) => s.split.thresholds().len(),
                Child::Leaf(_) => 0,
            })
            .sum();
        below + self.root.thresholds().len()
    }

    pub fn uses_only_binary_numeric_splits(&self) -> bool {
        let ok = |s: &SplitRule| match &s.form {
            SplitForm::Intervals { thresholds } => thresholds.len() <= 1,
            SplitForm::Nominal { .. } => true,
        };
        ok(&self.root)
            && self.children.iter().all(|c| match c {
                Child::Stump(s) => ok(&s.split),
                Child::Leaf(_) => true,
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_dataset, ParseOptions};
    use crate::learners::{train_one_r, training_error};

    #[test]
    fn xor_needs_two_levels() {
        let d = parse_dataset("a,b,class\n0,0,n\n0,1,y\n1,0,y\n1,1,n\n", &ParseOptions::default()).unwrap();
        let tree = train_depth2(&d.all()).unwrap();
        assert_eq!(training_error(&tree, &d.all()).unwrap(), 0.0);
        let stump = train_one_r(&d.all(), 1).unwrap();
        assert_eq!(training_error(&stump, &d.all()).unwrap(), 0.5);
    }

    #[test]
    fn numeric_xor_uses_single_thresholds() {
        let d = parse_dataset(
            "a,b,class\n1,1,n\n1,2,y\n2,1,y\n2,2,n\n1,1,n\n2,2,n\n",
            &ParseOptions {
                forced_kinds: Default::default(),
                ..ParseOptions::default()
            },
        )
        .unwrap();
        let tree = train_depth2(&d.all()).unwrap();
        assert!(tree.uses_only_binary_numeric_splits());
        assert_eq!(tree.root.feature, 0);
        assert_eq!(tree.root.thresholds(), &[1.5]);
        assert_eq!(training_error(&tree, &d.all()).unwrap(), 0.0);
    }

    #[test]
    fn pure_data_gives_leaves() {
        let d = parse_dataset("a,class\n1,p\n2,p\n3,p\n4,q\n", &ParseOptions::default()).unwrap();
        let only_p = d.subset(vec![0, 1, 2]).unwrap();
        let tree = train_depth2(&only_p).unwrap();
        assert!(tree.children.iter().all(|c| *c == Child::Leaf(0)));
        assert!(tree.root.thresholds().is_empty());
    }

    #[test]
    fn empty_branches_take_parent_majority() {
        let d = parse_dataset("a,class\nx,p\nx,q\ny,q\nz,q\n", &ParseOptions::default()).unwrap();
        let tree = train_depth2(&d.subset(vec![0, 2, 3]).unwrap()).unwrap();
        // value x appears once (class p); missing branch is empty
        assert_eq!(tree.predict(&[Cell::Missing]).unwrap(), 1);
    }

    #[test]
    fn sweep_matches_direct_scoring() {
        let mut rng = crate::rng::Xoshiro256::seed_from_u64(7);
        let mut checked = 0;
        for trial in 0..40 {
            let n_classes = 2 + trial % 3;
            let mut text = String::from("a,b,c,class\n");
            for _ in 0..30 {
                let cell = |rng: &mut crate::rng::Xoshiro256, k: u64| {
                    if rng.below(8) == 0 { "?".to_string() } else { rng.below(k).to_string() }
                };
                let (a, b) = (cell(&mut rng, 6), cell(&mut rng, 4));
                let c = ["x", "y", "z"][rng.below(3) as usize];
                text.push_str(&format!("{a},{b},{c},k{}\n", rng.below(n_classes as u64)));
            }
            let mut kinds = std::collections::HashMap::new();
            kinds.insert("b".to_string(), crate::dataset::ForcedKind::Numeric);
            let Ok(d) = parse_dataset(&text, &ParseOptions { forced_kinds: kinds, ..ParseOptions::default() }) else {
                continue;
            };
            let all = d.all();
            let mut search = Search::new(&all);
            for f in [0, 1] {
                for (t, errors) in search.threshold_errors(f) {
                    assert_eq!(errors, search.score_root(&SplitRule::intervals(f, vec![t])).0);
                    checked += 1;
                }
            }
        }
        assert!(checked > 200, "{checked}");
    }

    #[test]
    fn empty_training_set() {
        let d = parse_dataset("a,class\n1,p\n2,q\n", &ParseOptions::default()).unwrap();
        assert!(train_depth2(&d.subset(vec![]).unwrap()).is_err());
    }
}

use crate::dataset::{Cell, FeatureKind, Subset};
use crate::error::{Error, Result};

use super::{argmax, majority_or, midpoint, Classifier, SplitRule};

/// One-level tree: a single split whose branches each predict one class.
#[derive(Debug, Clone, PartialEq)]
pub struct StumpModel {
    pub split: SplitRule,
    /// Class predicted by each branch, in branch order.
    pub branch_classes: Vec<usize>,
    pub n_features: usize,
}

impl Classifier for StumpModel {
    fn n_features(&self) -> usize {
        self.n_features
    }

    fn classify(&self, cells: &[Cell]) -> usize {
        self.branch_classes[self.split.route(cells)]
    }
}

impl StumpModel {
    /// Labels every branch of `split` with the majority class of the rows
    /// reaching it; empty branches get `fallback`. Returns the model and
    /// its error count on `rows`.
    pub(crate) fn fit(data: &Subset<'_>, split: SplitRule, fallback: usize) -> (StumpModel, u32) {
        let n_classes = data.dataset.n_classes();
        let mut counts = vec![vec![0u32; n_classes]; split.branch_count()];
        for row in data.iter() {
            counts[split.route(&row.cells)][row.class] += 1;
        }
        let branch_classes: Vec<usize> = counts.iter().map(|c| majority_or(c, fallback)).collect();
        let errors = counts
            .iter()
            .zip(&branch_classes)
            .map(|(c, &k)| c.iter().sum::<u32>() - c[k])
            .sum();
        (
            StumpModel {
                split,
                branch_classes,
                n_features: data.dataset.features().len(),
            },
            errors,
        )
    }
}

/// Cuts a numeric feature into intervals for 1R.
///
/// Values are scanned in ascending order in blocks of equal value. The
/// current interval is closed after a block once its majority class has at
/// least `min_bucket` rows and the next block's majority class differs.
/// Neighbouring intervals with the same majority class are then merged.
/// Thresholds are midpoints between the last value of one interval and the
/// first value of the next.
pub fn discretize_numeric(train: &Subset<'_>, feature: usize, min_bucket: usize) -> Result<Vec<f64>> {
    let spec = train
        .dataset
        .features()
        .get(feature)
        .ok_or(Error::OutOfRange {
            index: feature,
            limit: train.dataset.features().len(),
        })?;
    if !spec.is_numeric() {
        return Err(Error::arg(format!("feature '{}' is not numeric", spec.name)));
    }
    if min_bucket == 0 {
        return Err(Error::arg("min_bucket must be at least 1"));
    }
    let n_classes = train.dataset.n_classes();
    let mut values: Vec<(f64, usize)> = train
        .iter()
        .filter_map(|row| match row.cells[feature] {
            Cell::Numeric(x) => Some((x, row.class)),
            _ => None,
        })
        .collect();
    if values.is_empty() {
        return Err(Error::data(format!("feature '{}' has no values", spec.name)));
    }
    values.sort_by(|a, b| a.0.total_cmp(&b.0));

    // (value, class counts) per block of equal values
    let mut blocks: Vec<(f64, Vec<u32>)> = Vec::new();
    for (x, class) in values {
        match blocks.last_mut() {
            Some((v, counts)) if *v == x => counts[class] += 1,
            _ => {
                let mut counts = vec![0; n_classes];
                counts[class] += 1;
                blocks.push((x, counts));
            }
        }
    }

    // intervals as (first block, last block, class counts)
    let mut intervals: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    let mut start = 0;
    let mut current = vec![0u32; n_classes];
    for i in 0..blocks.len() {
        for (c, n) in current.iter_mut().zip(&blocks[i].1) {
            *c += n;
        }
        let majority = argmax(&current);
        let close = i + 1 < blocks.len()
            && current[majority] as usize >= min_bucket
            && argmax(&blocks[i + 1].1) != majority;
        if close {
            intervals.push((start, i, std::mem::replace(&mut current, vec![0; n_classes])));
            start = i + 1;
        }
    }
    intervals.push((start, blocks.len() - 1, current));

    let mut merged: Vec<(usize, usize, Vec<u32>)> = Vec::new();
    for interval in intervals {
        match merged.last_mut() {
            Some(prev) if argmax(&prev.2) == argmax(&interval.2) => {
                prev.1 = interval.1;
                for (c, n) in prev.2.iter_mut().zip(&interval.2) {
                    *c += n;
                }
            }
            _ => merged.push(interval),
        }
    }

    Ok(merged
        .windows(2)
        .map(|w| midpoint(blocks[w[0].1].0, blocks[w[1].0].0))
        .collect())
}

/// 1R: the single-feature rule with the fewest training errors.
///
/// Nominal features branch on every value; numeric features branch on the
/// intervals of [`discretize_numeric`]. Every split also has a missing
/// branch. Empty branches predict the training majority class.
pub fn train_one_r(train: &Subset<'_>, min_bucket: usize) -> Result<StumpModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let features = train.dataset.features();
    if features.is_empty() {
        return Err(Error::data("dataset has no features"));
    }
    let fallback = argmax(&train.class_counts());
    let mut best: Option<(StumpModel, u32)> = None;
    for spec in features {
        let split = match &spec.kind {
            FeatureKind::Nominal(values) => SplitRule::nominal(spec.index, values.len()),
            FeatureKind::Numeric => {
                let thresholds = match discretize_numeric(train, spec.index, min_bucket) {
                    Ok(t) => t,
                    Err(Error::Data(_)) => Vec::new(),
                    Err(e) => return Err(e),
                };
                SplitRule::intervals(spec.index, thresholds)
            }
        };
        let candidate = StumpModel::fit(train, split, fallback);
        if best.as_ref().is_none_or(|b| candidate.1 < b.1) {
            best = Some(candidate);
        }
    }
    Ok(best.expect("at least one feature").0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dataset::{parse_dataset, Dataset, ParseOptions};
    use crate::learners::training_error;

    fn numeric_labels(labels: &str) -> Dataset {
        let mut text = String::from("v,class\n");
        for (i, l) in labels.chars().enumerate() {
            text.push_str(&format!("{},{l}\n", i + 1));
        }
        parse_dataset(&text, &ParseOptions::default()).unwrap()
    }

    #[test]
    fn single_flip_gives_one_threshold() {
        let d = numeric_labels("AAAAAABBBBBB");
        assert_eq!(discretize_numeric(&d.all(), 0, 6).unwrap(), vec![6.5]);
    }

    #[test]
    fn pure_feature_gives_no_threshold() {
        let d = parse_dataset("v,w,class\n1,a,A\n2,b,A\n3,a,A\n4,b,B\n", &ParseOptions::default()).unwrap();
        let only_a = d.subset(vec![0, 1, 2]).unwrap();
        assert!(discretize_numeric(&only_a, 0, 1).unwrap().is_empty());
    }

    #[test]
    fn bucket_larger_than_data_gives_no_threshold() {
        let d = numeric_labels("AABB");
        assert!(discretize_numeric(&d.all(), 0, 5).unwrap().is_empty());
        assert_eq!(discretize_numeric(&d.all(), 0, 2).unwrap(), vec![2.5]);
    }

    #[test]
    fn small_buckets_are_absorbed() {
        // the lone B inside the A run cannot form its own interval with B=3
        let d = numeric_labels("AAABAAABBBB");
        assert_eq!(discretize_numeric(&d.all(), 0, 3).unwrap(), vec![7.5]);
    }

    #[test]
    fn equal_values_are_never_split() {
        let d = parse_dataset("v,class\n1,A\n1,A\n2,A\n2,B\n2,B\n3,B\n", &ParseOptions::default()).unwrap();
        let t = discretize_numeric(&d.all(), 0, 1).unwrap();
        assert_eq!(t, vec![1.5]);
    }

    #[test]
    fn discretize_errors() {
        let d = parse_dataset("v,w,class\n1,a,A\n?,b,B\n2,a,B\n", &ParseOptions::default()).unwrap();
        assert!(discretize_numeric(&d.all(), 1, 6).is_err());
        assert!(discretize_numeric(&d.all(), 0, 0).is_err());
        let only_missing = d.subset(vec![1]).unwrap();
        assert!(matches!(discretize_numeric(&only_missing, 0, 1), Err(Error::Data(_))));
    }

    #[test]
    fn perfect_nominal_feature() {
        let d = parse_dataset(
            "noise,copy,class\nx,p,p\ny,q,q\nx,q,q\ny,p,p\nx,p,p\n",
            &ParseOptions::default(),
        )
        .unwrap();
        let m = train_one_r(&d.all(), 6).unwrap();
        assert_eq!(m.split.feature, 1);
        assert_eq!(training_error(&m, &d.all()).unwrap(), 0.0);
    }

    #[test]
    fn missing_branch_and_unseen_routing() {
        let d = parse_dataset("v,class\n1,A\n2,A\n3,B\n4,B\n?,B\n", &ParseOptions::default()).unwrap();
        let m = train_one_r(&d.all(), 1).unwrap();
        assert_eq!(m.split.thresholds(), &[2.5]);
        assert_eq!(m.predict(&[Cell::Missing]).unwrap(), 1);
        assert_eq!(m.predict(&[Cell::Numeric(7.0)]).unwrap(), 1);
        assert_eq!(m.predict(&[Cell::Numeric(0.0)]).unwrap(), 0);
    }

    /// Enumerates every labeling of every feature's branches.
    fn brute_force_stump_errors(d: &Dataset, min_bucket: usize) -> u32 {
        let n_classes = d.n_classes() as u32;
        let mut best = u32::MAX;
        for spec in d.features() {
            let split = match &spec.kind {
                FeatureKind::Nominal(v) => SplitRule::nominal(spec.index, v.len()),
                FeatureKind::Numeric => {
                    SplitRule::intervals(spec.index, discretize_numeric(&d.all(), spec.index, min_bucket).unwrap())
                }
            };
            let branches = split.branch_count() as u32;
            for code in 0..n_classes.pow(branches) {
                let labeling: Vec<usize> =
                    (0..branches).map(|b| ((code / n_classes.pow(b)) % n_classes) as usize).collect();
                let errors = d
                    .rows()
                    .iter()
                    .filter(|r| labeling[split.route(&r.cells)] != r.class)
                    .count() as u32;
                best = best.min(errors);
            }
        }
        best
    }

    #[test]
    fn matches_brute_force_on_toy_set() {
        let d = parse_dataset(
            "colour,size,class\nred,1,yes\nred,2,no\nblue,3,no\ngreen,4,yes\nblue,5,no\ngreen,?,yes\n",
            &ParseOptions::default(),
        )
        .unwrap();
        for b in [1, 2, 6] {
            let m = train_one_r(&d.all(), b).unwrap();
            let (_, errors) = StumpModel::fit(&d.all(), m.split.clone(), 0);
            assert_eq!(errors, brute_force_stump_errors(&d, b), "min_bucket {b}");
        }
    }
}

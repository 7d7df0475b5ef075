//! Shared generators and oracles for the integration tests.
#![allow(dead_code)]

use simplicity_bench::dataset::{Cell, Dataset, FeatureKind, FeatureSpec, Row};
use simplicity_bench::rng::Xoshiro256;

pub fn manifest_dir() -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR"))
}

/// Small random dataset: up to `max_rows` rows, up to `max_features`
/// features (nominal arity ≤ 3, numeric with ≤ 5 distinct values), 2 or 3
/// classes, roughly one cell in six missing.
pub fn random_small_dataset(rng: &mut Xoshiro256, max_rows: usize, max_features: usize) -> Dataset {
    let n_rows = 1 + rng.below(max_rows as u64) as usize;
    let n_features = 1 + rng.below(max_features as u64) as usize;
    let n_classes = 2 + rng.below(2) as usize;
    let mut features = Vec::new();
    let mut pools: Vec<Vec<f64>> = Vec::new();
    for f in 0..n_features {
        if rng.below(2) == 0 {
            let arity = 1 + rng.below(3) as usize;
            features.push(FeatureSpec {
                name: format!("n{f}"),
                kind: FeatureKind::Nominal((0..arity).map(|v| format!("v{v}")).collect()),
                index: f,
            });
            pools.push(Vec::new());
        } else {
            features.push(FeatureSpec {
                name: format!("x{f}"),
                kind: FeatureKind::Numeric,
                index: f,
            });
            let k = 1 + rng.below(5) as usize;
            pools.push((0..k).map(|i| i as f64 * 1.5 - 2.0).collect());
        }
    }
    let rows = (0..n_rows)
        .map(|_| {
            let cells = features
                .iter()
                .zip(&pools)
                .map(|(spec, pool)| {
                    if rng.below(6) == 0 {
                        return Cell::Missing;
                    }
                    match &spec.kind {
                        FeatureKind::Nominal(values) => Cell::Nominal(rng.below(values.len() as u64) as u32),
                        FeatureKind::Numeric => Cell::Numeric(pool[rng.below(pool.len() as u64) as usize]),
                    }
                })
                .collect();
            Row {
                cells,
                class: rng.below(n_classes as u64) as usize,
            }
        })
        .collect();
    let classes = (0..n_classes).map(|c| format!("c{c}")).collect();
    Dataset::new("rand", features, "class", classes, rows).expect("generator builds valid datasets")
}

/// A split in the depth-2 language, routed by the oracle's own rules.
#[derive(Debug, Clone, Copy)]
enum OracleSplit {
    Nominal { feature: usize, arity: usize },
    /// `None`: present vs missing.
    Threshold { feature: usize, t: Option<f64> },
}

impl OracleSplit {
    fn branches(self) -> usize {
        match self {
            OracleSplit::Nominal { arity, .. } => arity + 1,
            OracleSplit::Threshold { t: None, .. } => 2,
            OracleSplit::Threshold { t: Some(_), .. } => 3,
        }
    }

    fn branch(self, row: &Row) -> usize {
        match self {
            OracleSplit::Nominal { feature, arity } => match row.cells[feature] {
                Cell::Nominal(v) => v as usize,
                _ => arity,
            },
            OracleSplit::Threshold { feature, t } => match (row.cells[feature], t) {
                (Cell::Numeric(_), None) => 0,
                (Cell::Numeric(x), Some(t)) => usize::from(x > t),
                (_, None) => 1,
                (_, Some(_)) => 2,
            },
        }
    }
}

/// Every split of the language over the whole training set. Thresholds sit
/// between every pair of adjacent distinct values; at a child node these
/// produce every partition the child's own midpoints would, plus repeats.
fn all_splits(data: &Dataset, rows: &[usize]) -> Vec<OracleSplit> {
    let mut out = Vec::new();
    for spec in data.features() {
        match &spec.kind {
            FeatureKind::Nominal(values) => out.push(OracleSplit::Nominal {
                feature: spec.index,
                arity: values.len(),
            }),
            FeatureKind::Numeric => {
                out.push(OracleSplit::Threshold { feature: spec.index, t: None });
                let mut vals: Vec<f64> = rows
                    .iter()
                    .filter_map(|&r| match data.rows()[r].cells[spec.index] {
                        Cell::Numeric(x) => Some(x),
                        _ => None,
                    })
                    .collect();
                vals.sort_by(f64::total_cmp);
                vals.dedup();
                for w in vals.windows(2) {
                    out.push(OracleSplit::Threshold {
                        feature: spec.index,
                        t: Some((w[0] + w[1]) / 2.0),
                    });
                }
            }
        }
    }
    out
}

/// Fewest errors over every labelling of `branches` leaves under `split`,
/// by enumerating all `classes^branches` labellings.
fn best_labelling(data: &Dataset, rows: &[usize], split: OracleSplit) -> usize {
    let k = split.branches();
    let c = data.n_classes();
    let mut labels = vec![0usize; k];
    let mut best = usize::MAX;
    loop {
        let errors = rows
            .iter()
            .filter(|&&r| {
                let row = &data.rows()[r];
                labels[split.branch(row)] != row.class
            })
            .count();
        best = best.min(errors);
        let mut i = 0;
        loop {
            if i == k {
                return best;
            }
            labels[i] += 1;
            if labels[i] < c {
                break;
            }
            labels[i] = 0;
            i += 1;
        }
    }
}

fn best_leaf(data: &Dataset, rows: &[usize]) -> usize {
    (0..data.n_classes())
        .map(|c| rows.iter().filter(|&&r| data.rows()[r].class != c).count())
        .min()
        .unwrap()
}

/// Minimum training errors of a two-level tree over the split language:
/// root from [`all_splits`], each branch a leaf or any split with any
/// labelling. Rows reach exactly one branch, so the tree minimum is the
/// sum of per-branch minima.
pub fn brute_force_depth2_errors(data: &Dataset, rows: &[usize]) -> usize {
    let splits = all_splits(data, rows);
    splits
        .iter()
        .map(|&root| {
            (0..root.branches())
                .map(|b| {
                    let child: Vec<usize> = rows
                        .iter()
                        .copied()
                        .filter(|&r| root.branch(&data.rows()[r]) == b)
                        .collect();
                    let stumps = splits.iter().map(|&s| best_labelling(data, &child, s));
                    stumps.fold(best_leaf(data, &child), usize::min)
                })
                .sum::<usize>()
        })
        .min()
        .unwrap()
}

/// Fewest errors of any single split (binary threshold or multiway) with
/// any labelling, or a leaf.
pub fn brute_force_stump_errors(data: &Dataset, rows: &[usize]) -> usize {
    all_splits(data, rows)
        .into_iter()
        .map(|s| best_labelling(data, rows, s))
        .fold(best_leaf(data, rows), usize::min)
}

/// Classifier predictions on a two-class problem with given error rates.
/// Returns (truths, predictions) with class 1 positive.
pub fn synthetic_predictions(rng: &mut Xoshiro256, n: usize, p_pos: f64, fpr: f64, fnr: f64) -> (Vec<usize>, Vec<usize>) {
    let mut truths = Vec::with_capacity(n);
    let mut preds = Vec::with_capacity(n);
    for _ in 0..n {
        let pos = rng.unit_f64() < p_pos;
        let flip = rng.unit_f64() < if pos { fnr } else { fpr };
        truths.push(usize::from(pos));
        preds.push(usize::from(pos != flip));
    }
    (truths, preds)
}

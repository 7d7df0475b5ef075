//! Repeated cross-validation over the learner ladder and the accuracy report.

use std::cmp::Ordering;
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::dataset::{fold_split, Dataset, FoldPlan};
use crate::error::{Error, Result};
use crate::learners::{train, Classifier, Depth, LearnerParams};

/// Prediction tallies: `counts[i][j]` rows of true class `i` predicted as `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfusionCounts {
    pub classes: Vec<String>,
    pub counts: Vec<Vec<u64>>,
}

impl ConfusionCounts {
    pub fn empty(classes: &[String]) -> Self {
        ConfusionCounts {
            classes: classes.to_vec(),
            counts: vec![vec![0; classes.len()]; classes.len()],
        }
    }

    pub fn add(&mut self, truth: usize, prediction: usize) {
        self.counts[truth][prediction] += 1;
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().flatten().sum()
    }

    pub fn correct(&self) -> u64 {
        (0..self.classes.len()).map(|i| self.counts[i][i]).sum()
    }

    /// Fraction correct, in [0, 1].
    pub fn accuracy(&self) -> f64 {
        self.correct() as f64 / self.total() as f64
    }

    pub fn error_rate(&self) -> f64 {
        (self.total() - self.correct()) as f64 / self.total() as f64
    }

    /// Rows whose true class is `class`.
    pub fn actual(&self, class: usize) -> u64 {
        self.counts[class].iter().sum()
    }

    pub fn merge(&mut self, other: &ConfusionCounts) {
        for (row, other_row) in self.counts.iter_mut().zip(&other.counts) {
            for (a, b) in row.iter_mut().zip(other_row) {
                *a += b;
            }
        }
    }
}

/// Tallies aligned truth/prediction class indices.
pub fn confusion(classes: &[String], truths: &[usize], predictions: &[usize]) -> Result<ConfusionCounts> {
    if truths.len() != predictions.len() {
        return Err(Error::data(format!(
            "{} truths but {} predictions",
            truths.len(),
            predictions.len()
        )));
    }
    if truths.is_empty() {
        return Err(Error::data("no predictions to tally"));
    }
    let mut c = ConfusionCounts::empty(classes);
    for (&t, &p) in truths.iter().zip(predictions) {
        if t >= classes.len() || p >= classes.len() {
            return Err(Error::data(format!(
                "class index {} is not one of {} classes",
                t.max(p),
                classes.len()
            )));
        }
        c.add(t, p);
    }
    Ok(c)
}

/// Same as [`confusion`] for textual labels.
pub fn confusion_from_labels(classes: &[String], truths: &[&str], predictions: &[&str]) -> Result<ConfusionCounts> {
    let index = |label: &str| {
        classes
            .iter()
            .position(|c| c == label)
            .ok_or_else(|| Error::data(format!("unknown label '{label}'")))
    };
    let t = truths.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
    let p = predictions.iter().map(|l| index(l)).collect::<Result<Vec<_>>>()?;
    confusion(classes, &t, &p)
}

/// Cross-validation outcome for one dataset at one depth.
///
/// Every repeat tests each row exactly once, so per-repeat accuracy is
/// `correct / rows` pooled over the folds.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CvResult {
    pub dataset: String,
    pub n_classes: usize,
    pub depth: Depth,
    pub rows: u64,
    /// Correct test predictions in each repeat.
    pub correct_per_repeat: Vec<u64>,
}

impl CvResult {
    /// Per-repeat accuracy in percent.
    pub fn repeat_accuracies(&self) -> Vec<f64> {
        self.correct_per_repeat
            .iter()
            .map(|&c| 100.0 * c as f64 / self.rows as f64)
            .collect()
    }

    /// Mean accuracy as an exact fraction (correct, evaluated).
    pub fn mean_fraction(&self) -> (u64, u64) {
        (
            self.correct_per_repeat.iter().sum(),
            self.rows * self.correct_per_repeat.len() as u64,
        )
    }

    /// Mean of the per-repeat accuracies, in percent.
    pub fn mean_accuracy(&self) -> f64 {
        let (c, n) = self.mean_fraction();
        100.0 * c as f64 / n as f64
    }
}

/// Runs every (repeat, fold) of `plan`: train at `depth` on the training
/// side, predict the test side, pool confusions per repeat.
pub fn cross_validate(dataset: &Dataset, depth: Depth, plan: &FoldPlan, params: &LearnerParams) -> Result<CvResult> {
    Ok(cross_validate_confusions(dataset, depth, plan, params)?.0)
}

/// [`cross_validate`] that also returns each repeat's pooled confusion.
pub fn cross_validate_confusions(
    dataset: &Dataset,
    depth: Depth,
    plan: &FoldPlan,
    params: &LearnerParams,
) -> Result<(CvResult, Vec<ConfusionCounts>)> {
    if !plan.matches(dataset) {
        return Err(Error::data("fold plan was built for a different dataset"));
    }
    let jobs: Vec<(usize, usize)> = (0..plan.repeats)
        .flat_map(|r| (0..plan.folds).map(move |k| (r, k)))
        .collect();
    let per_fold: Vec<ConfusionCounts> = jobs
        .par_iter()
        .map(|&(r, k)| {
            let (train_set, test_set) = fold_split(dataset, plan, r, k)?;
            let mut c = ConfusionCounts::empty(dataset.classes());
            if test_set.is_empty() {
                return Ok(c);
            }
            let model = train(depth, &train_set, params)?;
            for row in test_set.iter() {
                c.add(row.class, model.predict(&row.cells)?);
            }
            Ok(c)
        })
        .collect::<Result<_>>()?;

    let mut pooled = vec![ConfusionCounts::empty(dataset.classes()); plan.repeats];
    for (&(r, _), c) in jobs.iter().zip(&per_fold) {
        pooled[r].merge(c);
    }
    let result = CvResult {
        dataset: dataset.name().to_string(),
        n_classes: dataset.n_classes(),
        depth,
        rows: dataset.len() as u64,
        correct_per_repeat: pooled.iter().map(ConfusionCounts::correct).collect(),
    };
    Ok((result, pooled))
}

/// Exact accuracy `numerator / denominator` (as a fraction, not percent).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub numerator: i64,
    pub denominator: i64,
}

impl Ratio {
    pub fn percent(self) -> f64 {
        100.0 * self.numerator as f64 / self.denominator as f64
    }

    fn cmp_value(self, other: Ratio) -> Ordering {
        (i128::from(self.numerator) * i128::from(other.denominator))
            .cmp(&(i128::from(other.numerator) * i128::from(self.denominator)))
    }
}

/// One dataset's row of the ladder table.
///
/// All five quantities share a denominator, so
/// `acc0 + delta_1_0 + delta_2_1 == acc2` holds exactly on the numerators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportRow {
    pub dataset: String,
    pub n_classes: usize,
    pub acc: [Ratio; 3],
    pub delta_1_0: Ratio,
    pub delta_2_1: Ratio,
}

impl ReportRow {
    pub fn label(&self) -> String {
        if self.n_classes == 2 {
            self.dataset.clone()
        } else {
            format!("{} ({})", self.dataset, self.n_classes)
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReportTable {
    pub rows: Vec<ReportRow>,
}

/// Assembles the table from results covering depths 0, 1 and 2 for every
/// dataset. Rows are sorted by ascending Δ(1−0), ties by dataset name.
pub fn build_report(results: &[CvResult]) -> Result<ReportTable> {
    let mut names: Vec<&str> = results.iter().map(|r| r.dataset.as_str()).collect();
    names.sort_unstable();
    names.dedup();
    let mut rows = Vec::with_capacity(names.len());
    for name in names {
        let mut by_depth: [Option<&CvResult>; 3] = [None; 3];
        for r in results.iter().filter(|r| r.dataset == name) {
            let slot = &mut by_depth[r.depth.as_u8() as usize];
            if slot.is_some() {
                return Err(Error::data(format!("dataset '{name}' has two results at {}", r.depth)));
            }
            *slot = Some(r);
        }
        let found: Vec<&CvResult> = by_depth
            .iter()
            .enumerate()
            .map(|(d, r)| r.ok_or_else(|| Error::data(format!("dataset '{name}' has no result at depth {d}"))))
            .collect::<Result<_>>()?;
        let denominator = found[0].mean_fraction().1;
        if found.iter().any(|r| r.mean_fraction().1 != denominator) {
            return Err(Error::data(format!(
                "dataset '{name}' results use different repeat or row counts"
            )));
        }
        let acc = [0, 1, 2].map(|d| Ratio {
            numerator: found[d].mean_fraction().0 as i64,
            denominator: denominator as i64,
        });
        let delta = |hi: usize, lo: usize| Ratio {
            numerator: acc[hi].numerator - acc[lo].numerator,
            denominator: denominator as i64,
        };
        rows.push(ReportRow {
            dataset: name.to_string(),
            n_classes: found[0].n_classes,
            acc,
            delta_1_0: delta(1, 0),
            delta_2_1: delta(2, 1),
        });
    }
    rows.sort_by(|a, b| {
        a.delta_1_0
            .cmp_value(b.delta_1_0)
            .then_with(|| a.dataset.cmp(&b.dataset))
    });
    Ok(ReportTable { rows })
}

fn one_decimal(x: f64) -> String {
    let s = format!("{x:.1}");
    if s == "-0.0" {
        "0.0".to_string()
    } else {
        s
    }
}

impl ReportTable {
    /// Full-precision CSV.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("dataset,classes,acc0,acc1,acc2,delta_1_0,delta_2_1\n");
        for r in &self.rows {
            writeln!(
                out,
                "{},{},{},{},{},{},{}",
                r.dataset,
                r.n_classes,
                r.acc[0].percent(),
                r.acc[1].percent(),
                r.acc[2].percent(),
                r.delta_1_0.percent(),
                r.delta_2_1.percent()
            )
            .unwrap();
        }
        out
    }

    /// Aligned table with one decimal place.
    pub fn to_text(&self) -> String {
        let header = ["Data set", "Zero-level", "One-level", "Two-level", "Δ(1−0)", "Δ(2−1)"];
        let body: Vec<[String; 6]> = self
            .rows
            .iter()
            .map(|r| {
                [
                    r.label(),
                    one_decimal(r.acc[0].percent()),
                    one_decimal(r.acc[1].percent()),
                    one_decimal(r.acc[2].percent()),
                    one_decimal(r.delta_1_0.percent()),
                    one_decimal(r.delta_2_1.percent()),
                ]
            })
            .collect();
        let mut widths = header.map(|h| h.chars().count());
        for row in &body {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.chars().count());
            }
        }
        let mut out = String::new();
        let mut line = |cells: &[String]| {
            let mut parts = Vec::with_capacity(cells.len());
            for (i, cell) in cells.iter().enumerate() {
                let pad = widths[i] - cell.chars().count();
                if i == 0 {
                    parts.push(format!("{cell}{}", " ".repeat(pad)));
                } else {
                    parts.push(format!("{}{cell}", " ".repeat(pad)));
                }
            }
            out.push_str(parts.join("  ").trim_end());
            out.push('\n');
        };
        line(&header.map(String::from));
        for row in &body {
            line(row);
        }
        out
    }
}

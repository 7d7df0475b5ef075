//! Cost curves for two-class classifiers.
//!
//! A classifier with false-positive rate `fpr` and false-negative rate `fnr`
//! has normalized expected cost `NE(x) = fnr * x + fpr * (1 - x)`, where
//! `x = PC(+)` folds the positive-class prior `p` and the two
//! misclassification costs into one number in [0, 1]:
//!
//! ```text
//! PC(+) = p * C(-|+) / (p * C(-|+) + (1 - p) * C(+|-))
//! ```
//!
//! Each classifier is therefore a straight line from `(0, fpr)` to
//! `(1, fnr)`. The always-negative classifier traces `NE = x` and the
//! always-positive classifier `NE = 1 - x`.
//!
//! Confidence bands use the percentile bootstrap: resample the test
//! instances with replacement, recompute the operating point, and take
//! empirical quantiles (linear interpolation between order statistics) of
//! the resampled NE at every grid point. Resample `i` draws from substream
//! `i` of the seed, so results do not depend on scheduling.

use std::fmt;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::evaluation::ConfusionCounts;
use crate::rng::Xoshiro256;

pub const DEFAULT_GRID_SIZE: usize = 101;
pub const DEFAULT_LEVEL: f64 = 0.95;
pub const DEFAULT_RESAMPLES: usize = 1000;
/// Degenerate resamples allowed, as a multiple of the resample count.
pub const RETRY_FACTOR: usize = 10;

const PARALLEL_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OperatingPoint {
    pub fpr: f64,
    pub fnr: f64,
}

impl OperatingPoint {
    pub fn new(fpr: f64, fnr: f64) -> Result<Self> {
        let ok = |v: f64| (0.0..=1.0).contains(&v);
        if !ok(fpr) || !ok(fnr) {
            return Err(Error::arg(format!("rates must lie in [0, 1], got ({fpr}, {fnr})")));
        }
        Ok(OperatingPoint { fpr, fnr })
    }

    /// Always predicts negative.
    pub const ALWAYS_NEGATIVE: OperatingPoint = OperatingPoint { fpr: 0.0, fnr: 1.0 };
    /// Always predicts positive.
    pub const ALWAYS_POSITIVE: OperatingPoint = OperatingPoint { fpr: 1.0, fnr: 0.0 };

    pub fn line(self) -> CostLine {
        CostLine { point: self }
    }
}

/// PC(+), the probability-cost value on the x axis.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct PcPlus(f64);

impl PcPlus {
    pub fn new(x: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&x) {
            return Err(Error::arg(format!("PC(+) must lie in [0, 1], got {x}")));
        }
        Ok(PcPlus(x))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

/// The cost line of one operating point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CostLine {
    pub point: OperatingPoint,
}

impl CostLine {
    pub fn at(&self, x: f64) -> f64 {
        self.point.fnr * x + self.point.fpr * (1.0 - x)
    }

    /// Change in NE per unit of PC(+).
    pub fn slope(&self) -> f64 {
        self.point.fnr - self.point.fpr
    }
}

/// FPR and FNR of a two-class confusion matrix.
pub fn operating_point(c: &ConfusionCounts, positive_class: &str) -> Result<OperatingPoint> {
    if c.classes.len() != 2 {
        return Err(Error::data(format!(
            "cost curves need 2 classes, found {}",
            c.classes.len()
        )));
    }
    let pos = c
        .classes
        .iter()
        .position(|k| k == positive_class)
        .ok_or_else(|| Error::data(format!("positive class '{positive_class}' not present")))?;
    let neg = 1 - pos;
    let (tp, fn_) = (c.counts[pos][pos], c.counts[pos][neg]);
    let (fp, tn) = (c.counts[neg][pos], c.counts[neg][neg]);
    if tp + fn_ == 0 || fp + tn == 0 {
        return Err(Error::data("both classes need at least one true instance"));
    }
    Ok(OperatingPoint {
        fpr: fp as f64 / (fp + tn) as f64,
        fnr: fn_ as f64 / (fn_ + tp) as f64,
    })
}

/// Combines the positive prior and the two misclassification costs.
///
/// `cost_fn` is the cost of predicting negative for a positive instance,
/// `cost_fp` the cost of predicting positive for a negative one.
pub fn pc_plus(p_pos: f64, cost_fn: f64, cost_fp: f64) -> Result<PcPlus> {
    if !(p_pos > 0.0 && p_pos < 1.0) {
        return Err(Error::arg(format!("prior must lie in (0, 1), got {p_pos}")));
    }
    if !(cost_fn > 0.0 && cost_fp > 0.0) || !cost_fn.is_finite() || !cost_fp.is_finite() {
        return Err(Error::arg("misclassification costs must be positive and finite"));
    }
    let pos = p_pos * cost_fn;
    let neg = (1.0 - p_pos) * cost_fp;
    Ok(PcPlus(pos / (pos + neg)))
}

pub fn ne_at(point: OperatingPoint, x: PcPlus) -> f64 {
    point.line().at(x.0)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossover {
    /// Parallel lines, or an intersection outside [0, 1].
    None,
    Identical,
    At(f64),
}

impl fmt::Display for Crossover {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Crossover::None => write!(f, "none"),
            Crossover::Identical => write!(f, "identical"),
            Crossover::At(x) => write!(f, "{x}"),
        }
    }
}

/// Where the cost lines of `a` and `b` meet.
pub fn crossover(a: OperatingPoint, b: OperatingPoint) -> Crossover {
    let offset = a.fpr - b.fpr;
    let slope = a.line().slope() - b.line().slope();
    if slope.abs() <= PARALLEL_TOLERANCE {
        return if offset.abs() <= PARALLEL_TOLERANCE {
            Crossover::Identical
        } else {
            Crossover::None
        };
    }
    let x = -offset / slope;
    if (0.0..=1.0).contains(&x) {
        Crossover::At(x)
    } else {
        Crossover::None
    }
}

/// `n` evenly spaced samples covering [0, 1] (`n >= 2`).
pub fn uniform_grid(n: usize) -> Result<Vec<f64>> {
    if n < 2 {
        return Err(Error::arg(format!("grid needs at least 2 samples, got {n}")));
    }
    Ok((0..n).map(|i| i as f64 / (n - 1) as f64).collect())
}

fn check_grid(grid: &[f64]) -> Result<()> {
    if grid.is_empty() {
        return Err(Error::arg("empty grid"));
    }
    if grid.iter().any(|x| !(0.0..=1.0).contains(x)) || grid.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::arg("grid must be strictly ascending within [0, 1]"));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EnvelopeSample {
    pub ne: f64,
    /// Index of the cheapest line; ties go to the lowest index.
    pub index: usize,
}

/// Pointwise minimum of the cost lines over `grid`.
pub fn lower_envelope(points: &[OperatingPoint], grid: &[f64]) -> Result<Vec<EnvelopeSample>> {
    if points.is_empty() {
        return Err(Error::arg("lower envelope of no lines"));
    }
    check_grid(grid)?;
    Ok(grid
        .iter()
        .map(|&x| {
            let mut best = EnvelopeSample {
                ne: points[0].line().at(x),
                index: 0,
            };
            for (i, p) in points.iter().enumerate().skip(1) {
                let ne = p.line().at(x);
                if ne < best.ne {
                    best = EnvelopeSample { ne, index: i };
                }
            }
            best
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BootstrapConfig {
    pub level: f64,
    pub resamples: usize,
    pub seed: u64,
}

impl Default for BootstrapConfig {
    fn default() -> Self {
        BootstrapConfig {
            level: DEFAULT_LEVEL,
            resamples: DEFAULT_RESAMPLES,
            seed: 0,
        }
    }
}

impl BootstrapConfig {
    fn validate(&self) -> Result<()> {
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::arg(format!("level must lie in (0, 1), got {}", self.level)));
        }
        if self.resamples < 100 {
            return Err(Error::arg(format!(
                "at least 100 resamples required, got {}",
                self.resamples
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConfidenceBand {
    pub grid: Vec<f64>,
    pub lower: Vec<f64>,
    pub upper: Vec<f64>,
    pub level: f64,
    pub resamples: usize,
    pub seed: u64,
}

impl ConfidenceBand {
    pub fn contains(&self, i: usize, value: f64) -> bool {
        self.lower[i] <= value && value <= self.upper[i]
    }

    pub fn width(&self, i: usize) -> f64 {
        self.upper[i] - self.lower[i]
    }
}

/// Whether each test instance is positive, for truth and prediction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Outcome {
    actual: bool,
    predicted: bool,
}

fn outcomes(truths: &[usize], predictions: &[usize], positive: usize) -> Result<Vec<Outcome>> {
    if truths.len() != predictions.len() {
        return Err(Error::data(format!(
            "{} truths but {} predictions",
            truths.len(),
            predictions.len()
        )));
    }
    let mut labels: Vec<usize> = truths.iter().chain(predictions).copied().collect();
    labels.push(positive);
    labels.sort_unstable();
    labels.dedup();
    if labels.len() > 2 {
        return Err(Error::data(format!(
            "cost curves need two classes, saw {}",
            labels.len()
        )));
    }
    let out: Vec<Outcome> = truths
        .iter()
        .zip(predictions)
        .map(|(&t, &p)| Outcome {
            actual: t == positive,
            predicted: p == positive,
        })
        .collect();
    let positives = out.iter().filter(|o| o.actual).count();
    if positives == 0 || positives == out.len() {
        return Err(Error::data("both classes must occur among the true labels"));
    }
    Ok(out)
}

fn rates(sample: impl Iterator<Item = Outcome>) -> Option<OperatingPoint> {
    let (mut tp, mut fn_, mut fp, mut tn) = (0u64, 0u64, 0u64, 0u64);
    for o in sample {
        match (o.actual, o.predicted) {
            (true, true) => tp += 1,
            (true, false) => fn_ += 1,
            (false, true) => fp += 1,
            (false, false) => tn += 1,
        }
    }
    if tp + fn_ == 0 || fp + tn == 0 {
        return None;
    }
    Some(OperatingPoint {
        fpr: fp as f64 / (fp + tn) as f64,
        fnr: fn_ as f64 / (fn_ + tp) as f64,
    })
}

/// Draws `config.resamples` index resamples (n out of n, with
/// replacement), redrawing any whose truths miss a class, and hands each
/// accepted resample to `statistic`.
fn resample<T: Send>(
    truths: &[bool],
    config: &BootstrapConfig,
    cap: usize,
    statistic: impl Fn(&[usize]) -> T + Sync,
) -> Result<Vec<T>> {
    let n = truths.len();
    let drawn: Vec<(usize, Option<T>)> = (0..config.resamples)
        .into_par_iter()
        .map(|i| {
            let mut rng = Xoshiro256::substream(config.seed, i as u64);
            let mut indices = vec![0usize; n];
            let mut retries = 0;
            loop {
                for slot in indices.iter_mut() {
                    *slot = rng.below(n as u64) as usize;
                }
                let positives = indices.iter().filter(|&&j| truths[j]).count();
                if positives > 0 && positives < n {
                    return (retries, Some(statistic(&indices)));
                }
                retries += 1;
                if retries > cap {
                    return (retries, None);
                }
            }
        })
        .collect();
    let total_retries: usize = drawn.iter().map(|d| d.0).sum();
    if total_retries > cap || drawn.iter().any(|d| d.1.is_none()) {
        return Err(Error::RetryCapExceeded(total_retries));
    }
    Ok(drawn.into_iter().map(|d| d.1.unwrap()).collect())
}

/// Empirical quantile with linear interpolation between order statistics
/// (`sorted` ascending, `q` in [0, 1]).
pub fn quantile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn band_from_samples(grid: &[f64], samples: Vec<Vec<f64>>, config: &BootstrapConfig) -> ConfidenceBand {
    let alpha = (1.0 - config.level) / 2.0;
    let mut lower = Vec::with_capacity(grid.len());
    let mut upper = Vec::with_capacity(grid.len());
    for mut column in samples {
        column.sort_by(f64::total_cmp);
        lower.push(quantile(&column, alpha));
        upper.push(quantile(&column, 1.0 - alpha));
    }
    ConfidenceBand {
        grid: grid.to_vec(),
        lower,
        upper,
        level: config.level,
        resamples: config.resamples,
        seed: config.seed,
    }
}

/// Percentile-bootstrap band around one classifier's cost line.
pub fn bootstrap_band(
    truths: &[usize],
    predictions: &[usize],
    positive: usize,
    grid: &[f64],
    config: &BootstrapConfig,
) -> Result<ConfidenceBand> {
    config.validate()?;
    check_grid(grid)?;
    let data = outcomes(truths, predictions, positive)?;
    let actual: Vec<bool> = data.iter().map(|o| o.actual).collect();
    let points = resample(&actual, config, RETRY_FACTOR * config.resamples, |idx| {
        rates(idx.iter().map(|&j| data[j])).expect("resample has both classes")
    })?;
    let samples = grid
        .iter()
        .map(|&x| points.iter().map(|p| p.line().at(x)).collect())
        .collect();
    Ok(band_from_samples(grid, samples, config))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionLabel {
    ABetter,
    BBetter,
    NotSignificant,
}

impl RegionLabel {
    pub fn as_str(self) -> &'static str {
        match self {
            RegionLabel::ABetter => "A-better",
            RegionLabel::BBetter => "B-better",
            RegionLabel::NotSignificant => "not-significant",
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Region {
    pub start: f64,
    pub end: f64,
    pub label: RegionLabel,
}

/// Disjoint labelled intervals covering [0, 1] in order.
#[derive(Debug, Clone, PartialEq)]
pub struct DominanceRegions {
    pub regions: Vec<Region>,
    /// Label at each grid sample.
    pub per_sample: Vec<RegionLabel>,
}

impl DominanceRegions {
    /// Labels each grid sample from a band on `NE_a - NE_b` and merges runs
    /// of equal labels. Run boundaries sit halfway between the samples on
    /// either side.
    pub fn from_difference_band(band: &ConfidenceBand) -> Self {
        let per_sample: Vec<RegionLabel> = band
            .lower
            .iter()
            .zip(&band.upper)
            .map(|(&lo, &hi)| {
                if hi < 0.0 {
                    RegionLabel::ABetter
                } else if lo > 0.0 {
                    RegionLabel::BBetter
                } else {
                    RegionLabel::NotSignificant
                }
            })
            .collect();
        let mut regions: Vec<Region> = Vec::new();
        for (i, &label) in per_sample.iter().enumerate() {
            match regions.last_mut() {
                Some(last) if last.label == label => {}
                Some(last) => {
                    let cut = (band.grid[i - 1] + band.grid[i]) / 2.0;
                    last.end = cut;
                    regions.push(Region {
                        start: cut,
                        end: 1.0,
                        label,
                    });
                }
                None => regions.push(Region {
                    start: 0.0,
                    end: 1.0,
                    label,
                }),
            }
        }
        DominanceRegions { regions, per_sample }
    }
}

/// Paired bootstrap comparison of classifiers `a` and `b` on the same test
/// instances: a band on `NE_a - NE_b` and the regions where one is
/// significantly cheaper.
pub fn difference_regions(
    truths: &[usize],
    preds_a: &[usize],
    preds_b: &[usize],
    positive: usize,
    grid: &[f64],
    config: &BootstrapConfig,
) -> Result<(ConfidenceBand, DominanceRegions)> {
    config.validate()?;
    check_grid(grid)?;
    if preds_a.len() != preds_b.len() {
        return Err(Error::data(format!(
            "prediction lists differ in length ({} vs {})",
            preds_a.len(),
            preds_b.len()
        )));
    }
    let a = outcomes(truths, preds_a, positive)?;
    let b = outcomes(truths, preds_b, positive)?;
    let actual: Vec<bool> = a.iter().map(|o| o.actual).collect();
    let pairs = resample(&actual, config, RETRY_FACTOR * config.resamples, |idx| {
        (
            rates(idx.iter().map(|&j| a[j])).expect("resample has both classes"),
            rates(idx.iter().map(|&j| b[j])).expect("resample has both classes"),
        )
    })?;
    let samples = grid
        .iter()
        .map(|&x| pairs.iter().map(|(pa, pb)| pa.line().at(x) - pb.line().at(x)).collect())
        .collect();
    let band = band_from_samples(grid, samples, config);
    let regions = DominanceRegions::from_difference_band(&band);
    Ok((band, regions))
}

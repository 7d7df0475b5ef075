//! The simplicity ladder: zero-level (majority), one-level (1R) and exact
//! two-level decision trees.
//!
//! All learners are deterministic. Ties are broken by lower feature index,
//! then fewer thresholds, then lower threshold value, then the class that
//! comes first in the dataset's class order.

mod depth2;
mod format;
mod majority;
mod one_r;
mod split;

pub use depth2::{train_depth2, Child, Depth2Model};
pub use format::{read_model, write_model, FORMAT_HEADER};
pub use majority::{train_majority, MajorityModel};
pub use one_r::{discretize_numeric, train_one_r, StumpModel};
pub use split::{SplitForm, SplitRule};

use std::fmt;

use crate::dataset::{Cell, Subset};
use crate::error::{Error, Result};

/// Default minimum bucket size for 1R discretization.
pub const DEFAULT_MIN_BUCKET: usize = 6;

/// Tree depth on the ladder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Depth {
    Zero,
    One,
    Two,
}

impl Depth {
    pub const ALL: [Depth; 3] = [Depth::Zero, Depth::One, Depth::Two];

    pub fn new(d: u8) -> Result<Depth> {
        match d {
            0 => Ok(Depth::Zero),
            1 => Ok(Depth::One),
            2 => Ok(Depth::Two),
            _ => Err(Error::arg(format!("depth must be 0, 1 or 2, got {d}"))),
        }
    }

    pub fn as_u8(self) -> u8 {
        match self {
            Depth::Zero => 0,
            Depth::One => 1,
            Depth::Two => 2,
        }
    }
}

impl fmt::Display for Depth {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d{}", self.as_u8())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LearnerParams {
    /// Minimum majority-class count per 1R interval.
    pub min_bucket: usize,
}

impl Default for LearnerParams {
    fn default() -> Self {
        LearnerParams {
            min_bucket: DEFAULT_MIN_BUCKET,
        }
    }
}

pub trait Classifier {
    /// Number of feature cells a row must have.
    fn n_features(&self) -> usize;

    /// Class index for a row of the right arity.
    fn classify(&self, cells: &[Cell]) -> usize;

    fn predict(&self, cells: &[Cell]) -> Result<usize> {
        if cells.len() != self.n_features() {
            return Err(Error::ArityMismatch {
                expected: self.n_features(),
                found: cells.len(),
            });
        }
        Ok(self.classify(cells))
    }
}

/// Any trained model on the ladder.
#[derive(Debug, Clone, PartialEq)]
pub enum Model {
    Majority(MajorityModel),
    Stump(StumpModel),
    Depth2(Depth2Model),
}

impl Model {
    pub fn depth(&self) -> Depth {
        match self {
            Model::Majority(_) => Depth::Zero,
            Model::Stump(_) => Depth::One,
            Model::Depth2(_) => Depth::Two,
        }
    }
}

impl Classifier for Model {
    fn n_features(&self) -> usize {
        match self {
            Model::Majority(m) => m.n_features(),
            Model::Stump(m) => m.n_features(),
            Model::Depth2(m) => m.n_features(),
        }
    }

    fn classify(&self, cells: &[Cell]) -> usize {
        match self {
            Model::Majority(m) => m.classify(cells),
            Model::Stump(m) => m.classify(cells),
            Model::Depth2(m) => m.classify(cells),
        }
    }
}

/// Trains the learner for `depth` on `train`.
pub fn train(depth: Depth, train: &Subset<'_>, params: &LearnerParams) -> Result<Model> {
    Ok(match depth {
        Depth::Zero => Model::Majority(train_majority(train)?),
        Depth::One => Model::Stump(train_one_r(train, params.min_bucket)?),
        Depth::Two => Model::Depth2(train_depth2(train)?),
    })
}

/// Fraction of rows in `data` the model gets wrong.
pub fn training_error<C: Classifier + ?Sized>(model: &C, data: &Subset<'_>) -> Result<f64> {
    if data.is_empty() {
        return Err(Error::data("cannot measure error on an empty set"));
    }
    let mut wrong = 0usize;
    for row in data.iter() {
        if model.predict(&row.cells)? != row.class {
            wrong += 1;
        }
    }
    Ok(wrong as f64 / data.len() as f64)
}

/// Index of the largest count; ties go to the lowest index.
pub(crate) fn argmax(counts: &[u32]) -> usize {
    let mut best = 0;
    for (i, &c) in counts.iter().enumerate() {
        if c > counts[best] {
            best = i;
        }
    }
    best
}

/// Majority class of `counts`, or `fallback` when every count is zero.
pub(crate) fn majority_or(counts: &[u32], fallback: usize) -> usize {
    if counts.iter().all(|&c| c == 0) {
        fallback
    } else {
        argmax(counts)
    }
}

/// Rows misclassified when a branch predicts its majority class.
pub(crate) fn branch_errors(counts: &[u32]) -> u32 {
    counts.iter().sum::<u32>() - counts.iter().copied().max().unwrap_or(0)
}

/// Midpoint used as a threshold between adjacent distinct values `lo < hi`;
/// always satisfies `lo <= t < hi`.
pub(crate) fn midpoint(lo: f64, hi: f64) -> f64 {
    let m = lo + (hi - lo) / 2.0;
    if m >= lo && m < hi {
        m
    } else {
        lo
    }
}

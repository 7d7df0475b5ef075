use crate::dataset::{Cell, Subset};
use crate::error::{Error, Result};

use super::{argmax, Classifier};

/// Zero-level tree: predicts the most frequent training class.
#[derive(Debug, Clone, PartialEq)]
pub struct MajorityModel {
    pub predicted_class: usize,
    pub class_counts: Vec<u32>,
    pub n_features: usize,
}

pub fn train_majority(train: &Subset<'_>) -> Result<MajorityModel> {
    if train.is_empty() {
        return Err(Error::EmptyTrainingSet);
    }
    let class_counts = train.class_counts();
    Ok(MajorityModel {
        predicted_class: argmax(&class_counts),
        class_counts,
        n_features: train.dataset.features().len(),
    })
}

impl Classifier for MajorityModel {
    fn n_features(&self) -> usize {
        self.n_features
    }

    fn classify(&self, _cells: &[Cell]) -> usize {
        self.predicted_class
    }
}

use crate::dataset::Cell;

#[derive(Debug, Clone, PartialEq)]
pub enum SplitForm {
    /// One branch per feature value, then the missing branch.
    Nominal { arity: usize },
    /// Intervals cut at strictly increasing thresholds, then the missing
    /// branch. A value `v <= t` falls on the lower side of `t`.
    Intervals { thresholds: Vec<f64> },
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplitRule {
    pub feature: usize,
    pub form: SplitForm,
}

impl SplitRule {
    pub fn nominal(feature: usize, arity: usize) -> Self {
        SplitRule {
            feature,
            form: SplitForm::Nominal { arity },
        }
    }

    pub fn intervals(feature: usize, thresholds: Vec<f64>) -> Self {
        debug_assert!(thresholds.windows(2).all(|w| w[0] < w[1]));
        SplitRule {
            feature,
            form: SplitForm::Intervals { thresholds },
        }
    }

    pub fn branch_count(&self) -> usize {
        self.missing_branch() + 1
    }

    pub fn missing_branch(&self) -> usize {
        match &self.form {
            SplitForm::Nominal { arity } => *arity,
            SplitForm::Intervals { thresholds } => thresholds.len() + 1,
        }
    }

    pub fn thresholds(&self) -> &[f64] {
        match &self.form {
            SplitForm::Intervals { thresholds } => thresholds,
            SplitForm::Nominal { .. } => &[],
        }
    }

    /// Branch reached by a row. Missing cells, unseen nominal values and
    /// cells of the wrong kind take the missing branch.
    pub fn route(&self, cells: &[Cell]) -> usize {
        match (&self.form, cells[self.feature]) {
            (SplitForm::Nominal { arity }, Cell::Nominal(v)) if (v as usize) < *arity => v as usize,
            (SplitForm::Intervals { thresholds }, Cell::Numeric(x)) => {
                thresholds.partition_point(|&t| t < x)
            }
            _ => self.missing_branch(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn interval_routing() {
        let s = SplitRule::intervals(0, vec![2.0, 5.0]);
        assert_eq!(s.branch_count(), 4);
        assert_eq!(s.route(&[Cell::Numeric(1.0)]), 0);
        assert_eq!(s.route(&[Cell::Numeric(2.0)]), 0);
        assert_eq!(s.route(&[Cell::Numeric(2.5)]), 1);
        assert_eq!(s.route(&[Cell::Numeric(5.0)]), 1);
        assert_eq!(s.route(&[Cell::Numeric(9.0)]), 2);
        assert_eq!(s.route(&[Cell::Missing]), 3);
    }

    #[test]
    fn nominal_routing() {
        let s = SplitRule::nominal(1, 2);
        assert_eq!(s.route(&[Cell::Missing, Cell::Nominal(1)]), 1);
        assert_eq!(s.route(&[Cell::Missing, Cell::Nominal(5)]), 2);
        assert_eq!(s.route(&[Cell::Missing, Cell::Missing]), 2);
    }
}

//! Train the zero-, one- and two-level trees on a holdout split and
//! compare training and test accuracy.

use simplicity_bench::dataset::{holdout_split, load_dataset};
use simplicity_bench::learners::{train, training_error, Depth, LearnerParams};

fn main() -> simplicity_bench::Result<()> {
    let data = load_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/data/wdbc.csv").as_ref())?;
    let (train_set, test_set) = holdout_split(&data, 1.0 / 3.0, 7)?;
    let params = LearnerParams::default();
    for depth in Depth::ALL {
        let model = train(depth, &train_set, &params)?;
        println!(
            "{depth}: train accuracy {:.3}, test accuracy {:.3}",
            1.0 - training_error(&model, &train_set)?,
            1.0 - training_error(&model, &test_set)?
        );
    }
    Ok(())
}

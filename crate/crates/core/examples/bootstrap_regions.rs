//! Bootstrap bands for two classifiers on the same test set, and the
//! PC(+) ranges where one is significantly cheaper.

use simplicity_bench::costcurves::{bootstrap_band, difference_regions, uniform_grid, BootstrapConfig};
use simplicity_bench::dataset::{holdout_split, load_dataset};
use simplicity_bench::learners::{train, Classifier, Depth, LearnerParams};

fn main() -> simplicity_bench::Result<()> {
    let data = load_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/data/wdbc.csv").as_ref())?;
    let (train_set, test_set) = holdout_split(&data, 1.0 / 3.0, 0)?;
    let truths: Vec<usize> = test_set.iter().map(|r| r.class).collect();
    let predict = |depth| -> simplicity_bench::Result<Vec<usize>> {
        let model = train(depth, &train_set, &LearnerParams::default())?;
        Ok(test_set.iter().map(|r| model.classify(&r.cells)).collect())
    };
    let (one, two) = (predict(Depth::One)?, predict(Depth::Two)?);

    let grid = uniform_grid(21)?;
    let cfg = BootstrapConfig::default();
    let band = bootstrap_band(&truths, &two, 1, &grid, &cfg)?;
    for i in (0..grid.len()).step_by(5) {
        println!("d2 at x = {:.2}: [{:.3}, {:.3}]", grid[i], band.lower[i], band.upper[i]);
    }
    let (_, regions) = difference_regions(&truths, &one, &two, 1, &grid, &cfg)?;
    for r in &regions.regions {
        println!("{:.3}..{:.3}  {}", r.start, r.end, r.label);
    }
    Ok(())
}

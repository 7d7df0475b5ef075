//! Stratified fold assignment: every fold gets near-equal class counts.

use simplicity_bench::dataset::{fold_split, load_dataset, make_fold_plan};

fn main() -> simplicity_bench::Result<()> {
    let data = load_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/data/iris.csv").as_ref())?;
    let plan = make_fold_plan(&data, 2, 5, 42)?;
    for repeat in 0..2 {
        println!("repeat {repeat}");
        for fold in 0..5 {
            let (train, test) = fold_split(&data, &plan, repeat, fold)?;
            println!(
                "  fold {fold}: train {:>3}, test {:>2}, test classes {:?}",
                train.len(),
                test.len(),
                test.class_counts()
            );
        }
    }
    Ok(())
}

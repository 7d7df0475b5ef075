//! Write a trained tree in the text model format and read it back.

use simplicity_bench::dataset::load_dataset;
use simplicity_bench::learners::{read_model, train, write_model, Classifier, Depth, LearnerParams};

fn main() -> simplicity_bench::Result<()> {
    let data = load_dataset(concat!(env!("CARGO_MANIFEST_DIR"), "/data/iris.csv").as_ref())?;
    let model = train(Depth::Two, &data.all(), &LearnerParams::default())?;
    let text = write_model(&model);
    print!("{text}");

    let back = read_model(&text)?;
    assert_eq!(back, model);
    let row = &data.rows()[100];
    println!("row 100 -> {}", data.classes()[back.predict(&row.cells)?]);
    Ok(())
}

//! Load a CSV with its manifest and print the inferred schema.
//!
//! cargo run --example load_dataset -- [path/to/data.csv]

use simplicity_bench::dataset::{load_dataset, FeatureKind};

fn main() -> simplicity_bench::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data/iris.csv").to_string());
    let data = load_dataset(path.as_ref())?;
    println!("{}: {} rows, label '{}'", data.name(), data.len(), data.label_name());
    for f in data.features() {
        let missing = data.rows().iter().filter(|r| r.cells[f.index].is_missing()).count();
        match &f.kind {
            FeatureKind::Numeric => println!("  {:<24} numeric, {missing} missing", f.name),
            FeatureKind::Nominal(values) => println!("  {:<24} nominal {values:?}, {missing} missing", f.name),
        }
    }
    let counts = data.all().class_counts();
    for (class, n) in data.classes().iter().zip(counts) {
        println!("  class {class}: {n}");
    }
    Ok(())
}

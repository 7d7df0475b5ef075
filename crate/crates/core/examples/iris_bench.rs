//! Nine repeats of 25-fold cross-validation over the ladder, as a table.
//!
//! cargo run --release --example iris_bench -- [data-dir]

use simplicity_bench::app::bench_dataset;
use simplicity_bench::dataset::load_dataset;
use simplicity_bench::evaluation::build_report;
use simplicity_bench::learners::LearnerParams;

fn main() -> simplicity_bench::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/data").to_string());
    let mut results = Vec::new();
    for path in simplicity_bench::app::dataset_files(dir.as_ref())? {
        let data = load_dataset(&path)?;
        eprintln!("{} ({} rows)", data.name(), data.len());
        results.extend(bench_dataset(&data, 9, 25, 0, &LearnerParams::default())?);
    }
    let table = build_report(&results)?;
    print!("{}", table.to_text());
    for r in &results {
        let per_repeat: Vec<String> = r.repeat_accuracies().iter().map(|a| format!("{:.1}", 100.0 * a)).collect();
        println!("{} {}: {}", r.dataset, r.depth, per_repeat.join(" "));
    }
    Ok(())
}

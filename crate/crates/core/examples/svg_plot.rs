//! Full cost-curve run on a two-class dataset, writing SVG and CSV.
//!
//! cargo run --release --example svg_plot -- out.svg

use simplicity_bench::app::{run_costcurve, CurveConfig};
use simplicity_bench::learners::Depth;

fn main() -> simplicity_bench::Result<()> {
    let out = std::env::args().nth(1).unwrap_or_else(|| "costcurve.svg".into());
    let mut config = CurveConfig::new(concat!(env!("CARGO_MANIFEST_DIR"), "/data/iris.csv"));
    config.keep_classes = Some(["Iris-versicolor".into(), "Iris-virginica".into()]);
    config.classifiers = vec![Depth::One, Depth::Two];
    config.svg = Some(out.clone().into());
    let outcome = run_costcurve(&config)?;
    print!("{}", outcome.summary);
    println!("wrote {out}");
    Ok(())
}

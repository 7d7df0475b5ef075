//! Cost lines of a few operating points, their crossovers, the lower
//! envelope, and what PC(+) a concrete cost setting corresponds to.

use simplicity_bench::costcurves::{crossover, lower_envelope, ne_at, pc_plus, uniform_grid, OperatingPoint};

fn main() -> simplicity_bench::Result<()> {
    let a = OperatingPoint::new(0.10, 0.45)?;
    let b = OperatingPoint::new(0.25, 0.20)?;
    println!("a vs b cross at {}", crossover(a, b));
    println!("a vs always-negative cross at {}", crossover(a, OperatingPoint::ALWAYS_NEGATIVE));

    // positives are 30% of the data and a miss costs five times a false alarm
    let x = pc_plus(0.3, 5.0, 1.0)?;
    println!("PC(+) = {:.4}: NE(a) = {:.4}, NE(b) = {:.4}", x.value(), ne_at(a, x), ne_at(b, x));

    let points = [a, b, OperatingPoint::ALWAYS_NEGATIVE, OperatingPoint::ALWAYS_POSITIVE];
    let names = ["a", "b", "always-negative", "always-positive"];
    let grid = uniform_grid(11)?;
    for (s, x) in lower_envelope(&points, &grid)?.iter().zip(&grid) {
        println!("x = {x:.1}: best {:<16} NE = {:.3}", names[s.index], s.ne);
    }
    Ok(())
}

mod support;

use proptest::prelude::*;
use simplicity_bench::costcurves::{
    bootstrap_band, crossover, difference_regions, lower_envelope, pc_plus, uniform_grid, BootstrapConfig, Crossover,
    OperatingPoint, RegionLabel,
};
use simplicity_bench::rng::Xoshiro256;
use simplicity_bench::svg::{emit_svg, to_canvas, PlotLine, Styling};
use support::synthetic_predictions;

fn point() -> impl Strategy<Value = OperatingPoint> {
    (0.0..=1.0f64, 0.0..=1.0f64).prop_map(|(a, b)| OperatingPoint::new(a, b).unwrap())
}

proptest! {
    #[test]
    fn pc_plus_grows_with_prior_and_fn_cost(p in 0.01..0.99f64, dp in 0.0..0.5f64, cfn in 0.1..10.0f64, cfp in 0.1..10.0f64, k in 1.0..5.0f64) {
        let base = pc_plus(p, cfn, cfp).unwrap().value();
        let p2 = (p + dp).min(0.99);
        prop_assert!(pc_plus(p2, cfn, cfp).unwrap().value() >= base - 1e-15);
        prop_assert!(pc_plus(p, cfn * k, cfp).unwrap().value() >= base - 1e-15);
        prop_assert!(pc_plus(p, cfn, cfp * k).unwrap().value() <= base + 1e-15);
        prop_assert!((0.0..=1.0).contains(&base));
    }

    #[test]
    fn crossover_is_symmetric(a in point(), b in point()) {
        match (crossover(a, b), crossover(b, a)) {
            (Crossover::At(x), Crossover::At(y)) => {
                prop_assert!((x - y).abs() <= 1e-12);
                prop_assert!((a.line().at(x) - b.line().at(x)).abs() <= 1e-9);
            }
            (x, y) => prop_assert_eq!(x, y),
        }
    }

    #[test]
    fn envelope_is_pointwise_minimum(points in prop::collection::vec(point(), 1..6)) {
        let grid = uniform_grid(21).unwrap();
        for (s, &x) in lower_envelope(&points, &grid).unwrap().iter().zip(&grid) {
            let min = points.iter().map(|p| p.line().at(x)).fold(f64::INFINITY, f64::min);
            prop_assert_eq!(s.ne, min);
            prop_assert_eq!(points[s.index].line().at(x), min);
        }
    }
}

fn median_width_at_half(n: usize, trials: u64) -> f64 {
    let grid = vec![0.5];
    let mut widths: Vec<f64> = (0..trials)
        .map(|t| {
            let (truths, preds) = synthetic_predictions(&mut Xoshiro256::substream(11, t), n, 0.5, 0.2, 0.3);
            let cfg = BootstrapConfig { resamples: 200, seed: t, ..BootstrapConfig::default() };
            bootstrap_band(&truths, &preds, 1, &grid, &cfg).unwrap().width(0)
        })
        .collect();
    widths.sort_by(f64::total_cmp);
    widths[widths.len() / 2]
}

#[test]
fn bands_shrink_with_more_data() {
    let small = median_width_at_half(100, 30);
    let large = median_width_at_half(1000, 30);
    assert!(large < small, "{large} vs {small}");
    // width scales roughly with 1/sqrt(n)
    assert!(large < 0.5 * small);
}

#[test]
fn bands_are_reproducible_and_ordered() {
    let (truths, preds) = synthetic_predictions(&mut Xoshiro256::seed_from_u64(1), 150, 0.4, 0.1, 0.25);
    let grid = uniform_grid(11).unwrap();
    let cfg = BootstrapConfig { resamples: 300, seed: 9, ..BootstrapConfig::default() };
    let a = bootstrap_band(&truths, &preds, 1, &grid, &cfg).unwrap();
    assert_eq!(a, bootstrap_band(&truths, &preds, 1, &grid, &cfg).unwrap());
    assert!(a.lower.iter().zip(&a.upper).all(|(l, u)| l <= u));
}

#[test]
fn clearly_different_classifiers_get_regions() {
    let mut rng = Xoshiro256::seed_from_u64(4);
    let (truths, a) = synthetic_predictions(&mut rng, 600, 0.5, 0.05, 0.6);
    // b errs mostly on negatives
    let b: Vec<usize> = truths
        .iter()
        .map(|&t| if t == 1 { usize::from(rng.unit_f64() >= 0.05) } else { usize::from(rng.unit_f64() < 0.6) })
        .collect();
    let grid = uniform_grid(101).unwrap();
    let cfg = BootstrapConfig { resamples: 300, ..BootstrapConfig::default() };
    let (_, regions) = difference_regions(&truths, &a, &b, 1, &grid, &cfg).unwrap();
    assert_eq!(regions.regions.first().unwrap().label, RegionLabel::ABetter);
    assert_eq!(regions.regions.last().unwrap().label, RegionLabel::BBetter);
    assert_eq!(regions.regions.first().unwrap().start, 0.0);
    assert_eq!(regions.regions.last().unwrap().end, 1.0);
    for w in regions.regions.windows(2) {
        assert_eq!(w[0].end, w[1].start);
        assert_ne!(w[0].label, w[1].label);
    }
}

#[test]
fn svg_lines_cross_where_the_analysis_says() {
    let a = OperatingPoint::new(0.1, 0.6).unwrap();
    let b = OperatingPoint::new(0.3, 0.3).unwrap();
    let Crossover::At(x) = crossover(a, b) else { panic!("lines cross") };
    assert!((x - 0.4).abs() < 1e-12);
    let grid = uniform_grid(101).unwrap();
    let lines = [PlotLine { name: "a".into(), point: a }, PlotLine { name: "b".into(), point: b }];
    let svg = emit_svg(&grid, &lines, &[], None, &Styling::default()).unwrap();

    let polyline = |name: &str| -> Vec<(f64, f64)> {
        let start = svg.find(&format!("data-name=\"{name}\" points=\"")).unwrap();
        let rest = &svg[start..];
        let body = &rest[rest.find("points=\"").unwrap() + 8..];
        body[..body.find('"').unwrap()]
            .split(' ')
            .map(|p| {
                let (x, y) = p.split_once(',').unwrap();
                (x.parse().unwrap(), y.parse().unwrap())
            })
            .collect()
    };
    let (pa, pb) = (polyline("a"), polyline("b"));
    let k = pa.windows(2).zip(pb.windows(2)).position(|(u, v)| (u[0].1 - v[0].1) * (u[1].1 - v[1].1) <= 0.0).unwrap();
    // intersect the two drawn segments
    let (a0, a1, b0, b1) = (pa[k], pa[k + 1], pb[k], pb[k + 1]);
    let da = (a1.1 - a0.1) / (a1.0 - a0.0);
    let db = (b1.1 - b0.1) / (b1.0 - b0.0);
    let cx = a0.0 + (b0.1 - a0.1) / (da - db);
    let (ex, _) = to_canvas(x, a.line().at(x));
    assert!((cx - ex).abs() <= 1.0, "{cx} vs {ex}");
}

mod support;

use proptest::prelude::*;
use simplicity_bench::dataset::{
    holdout_split, infer_schema, load_dataset, make_fold_plan, parse_dataset, FeatureKind, ParseOptions,
};
use simplicity_bench::rng::Xoshiro256;
use support::{manifest_dir, random_small_dataset};

#[test]
fn bundled_datasets_load() {
    let iris = load_dataset(&manifest_dir().join("data/iris.csv")).unwrap();
    assert_eq!(iris.name(), "IR");
    assert_eq!((iris.len(), iris.n_classes(), iris.features().len()), (150, 3, 4));
    let wdbc = load_dataset(&manifest_dir().join("data/wdbc.csv")).unwrap();
    assert_eq!((wdbc.len(), wdbc.n_classes(), wdbc.features().len()), (569, 2, 30));
}

#[test]
fn holdout_is_stratified() {
    let iris = load_dataset(&manifest_dir().join("data/iris.csv")).unwrap();
    let (train, test) = holdout_split(&iris, 1.0 / 3.0, 3).unwrap();
    assert_eq!(test.class_counts(), vec![17, 17, 17]);
    assert_eq!(train.len() + test.len(), 150);
    let mut all: Vec<usize> = train.rows.iter().chain(&test.rows).copied().collect();
    all.sort_unstable();
    assert_eq!(all, (0..150).collect::<Vec<_>>());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn folds_are_stratified_partitions(seed in any::<u64>(), folds in 2usize..6, repeats in 1usize..4) {
        let mut rng = Xoshiro256::seed_from_u64(seed);
        let d = random_small_dataset(&mut rng, 40, 2);
        prop_assume!(d.len() >= folds);
        let plan = make_fold_plan(&d, repeats, folds, seed).unwrap();
        prop_assert!(plan.matches(&d));
        for r in 0..repeats {
            let mut sizes = vec![0usize; folds];
            for c in 0..d.n_classes() {
                let mut per_fold = vec![0usize; folds];
                for (i, row) in d.rows().iter().enumerate() {
                    if row.class == c {
                        per_fold[plan.fold_of(r, i)] += 1;
                        sizes[plan.fold_of(r, i)] += 1;
                    }
                }
                prop_assert!(per_fold.iter().max().unwrap() - per_fold.iter().min().unwrap() <= 1);
            }
            prop_assert!(sizes.iter().max().unwrap() - sizes.iter().min().unwrap() <= 1);
            let covered: usize = (0..folds).map(|k| plan.test_rows(r, k).unwrap().len()).sum();
            prop_assert_eq!(covered, d.len());
        }
    }

    #[test]
    fn csv_round_trips(seed in any::<u64>()) {
        let d = random_small_dataset(&mut Xoshiro256::seed_from_u64(seed), 20, 3);
        let options = ParseOptions {
            name: Some(d.name().to_string()),
            schema_override: Some(d.features().to_vec()),
            ..ParseOptions::default()
        };
        let back = parse_dataset(&d.to_csv(), &options);
        // a class that never occurs cannot survive the trip
        prop_assume!(back.is_ok());
        let back = back.unwrap();
        prop_assert_eq!(back.rows().len(), d.rows().len());
        for (a, b) in back.rows().iter().zip(d.rows()) {
            prop_assert_eq!(&a.cells, &b.cells);
            prop_assert_eq!(&back.classes()[a.class], &d.classes()[b.class]);
        }
    }

    #[test]
    fn schema_ignores_row_order(seed in any::<u64>()) {
        let mut rng = Xoshiro256::seed_from_u64(seed);
        let d = random_small_dataset(&mut rng, 20, 3);
        let text = d.to_csv();
        let mut lines: Vec<Vec<String>> = text.lines().map(|l| l.split(',').map(str::to_string).collect()).collect();
        let header = lines.remove(0);
        let label = header.len() - 1;
        let a = infer_schema(&header, &lines, label);
        rng.shuffle(&mut lines);
        let b = infer_schema(&header, &lines, label);
        prop_assert_eq!(a.is_ok(), b.is_ok());
        if let (Ok(a), Ok(b)) = (a, b) {
            prop_assert_eq!(a.features.len(), b.features.len());
            for (fa, fb) in a.features.iter().zip(&b.features) {
                prop_assert_eq!(&fa.name, &fb.name);
                match (&fa.kind, &fb.kind) {
                    (FeatureKind::Numeric, FeatureKind::Numeric) => {}
                    (FeatureKind::Nominal(x), FeatureKind::Nominal(y)) => {
                        let (mut x, mut y) = (x.clone(), y.clone());
                        x.sort();
                        y.sort();
                        prop_assert_eq!(x, y);
                    }
                    _ => prop_assert!(false, "kind changed under row permutation"),
                }
            }
            let (mut ca, mut cb) = (a.label.classes.clone(), b.label.classes.clone());
            ca.sort();
            cb.sort();
            prop_assert_eq!(ca, cb);
        }
    }
}

mod support;

use proptest::prelude::*;
use simplicity_bench::dataset::{parse_dataset, Dataset, ParseOptions, Row};
use simplicity_bench::learners::{
    read_model, train, train_depth2, train_majority, train_one_r, training_error, write_model, Classifier, Depth,
    LearnerParams,
};
use simplicity_bench::rng::Xoshiro256;
use support::{brute_force_depth2_errors, brute_force_stump_errors, random_small_dataset};

fn errors<C: Classifier>(model: &C, d: &Dataset) -> usize {
    (training_error(model, &d.all()).unwrap() * d.len() as f64).round() as usize
}

#[test]
fn depth2_matches_brute_force_on_random_datasets() {
    let mut rng = Xoshiro256::seed_from_u64(2024);
    for _ in 0..300 {
        let d = random_small_dataset(&mut rng, 10, 3);
        let rows: Vec<usize> = (0..d.len()).collect();
        let tree = train_depth2(&d.all()).unwrap();
        assert_eq!(errors(&tree, &d), brute_force_depth2_errors(&d, &rows), "{}", d.to_csv());
        assert!(tree.uses_only_binary_numeric_splits());
    }
}

#[test]
fn depth2_on_subsets_matches_brute_force() {
    let mut rng = Xoshiro256::seed_from_u64(99);
    for _ in 0..100 {
        let d = random_small_dataset(&mut rng, 12, 3);
        let rows: Vec<usize> = (0..d.len()).filter(|_| rng.below(3) != 0).collect();
        if rows.is_empty() {
            continue;
        }
        let sub = d.subset(rows.clone()).unwrap();
        let tree = train_depth2(&sub).unwrap();
        let wrong = rows.iter().filter(|&&r| tree.classify(&d.rows()[r].cells) != d.rows()[r].class).count();
        assert_eq!(wrong, brute_force_depth2_errors(&d, &rows));
    }
}

#[test]
fn xor_separates_the_ladder() {
    let d = parse_dataset("a,b,class\n0,0,n\n0,1,y\n1,0,y\n1,1,n\n", &ParseOptions::default()).unwrap();
    assert_eq!(training_error(&train_depth2(&d.all()).unwrap(), &d.all()).unwrap(), 0.0);
    assert_eq!(training_error(&train_one_r(&d.all(), 1).unwrap(), &d.all()).unwrap(), 0.5);
}

#[test]
fn model_text_round_trips() {
    let mut rng = Xoshiro256::seed_from_u64(5);
    for _ in 0..60 {
        let d = random_small_dataset(&mut rng, 10, 3);
        for depth in Depth::ALL {
            let model = train(depth, &d.all(), &LearnerParams { min_bucket: 2 }).unwrap();
            let text = write_model(&model);
            let back = read_model(&text).unwrap();
            assert_eq!(back, model);
            assert_eq!(write_model(&back), text);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ladder_is_monotone_on_training_error(seed in any::<u64>()) {
        let d = random_small_dataset(&mut Xoshiro256::seed_from_u64(seed), 10, 3);
        let rows: Vec<usize> = (0..d.len()).collect();
        let two = errors(&train_depth2(&d.all()).unwrap(), &d);
        let zero = errors(&train_majority(&d.all()).unwrap(), &d);
        prop_assert!(two <= brute_force_stump_errors(&d, &rows));
        prop_assert!(brute_force_stump_errors(&d, &rows) <= zero);
    }

    #[test]
    fn training_is_deterministic(seed in any::<u64>(), depth in 0u8..3) {
        let d = random_small_dataset(&mut Xoshiro256::seed_from_u64(seed), 10, 3);
        let depth = Depth::new(depth).unwrap();
        let p = LearnerParams::default();
        prop_assert_eq!(train(depth, &d.all(), &p).unwrap(), train(depth, &d.all(), &p).unwrap());
    }

    #[test]
    fn majority_follows_label_permutation(seed in any::<u64>()) {
        let d = random_small_dataset(&mut Xoshiro256::seed_from_u64(seed), 10, 3);
        let c = d.n_classes();
        // relabel class k as (k + 1) mod c, keeping class order
        let rows: Vec<Row> = d.rows().iter().map(|r| Row { cells: r.cells.clone(), class: (r.class + 1) % c }).collect();
        let shifted = Dataset::new("p", d.features().to_vec(), "class", d.classes().to_vec(), rows).unwrap();
        let a = train_majority(&d.all()).unwrap();
        let b = train_majority(&shifted.all()).unwrap();
        let counts = d.all().class_counts();
        let best = *counts.iter().max().unwrap();
        if counts.iter().filter(|&&n| n == best).count() == 1 {
            prop_assert_eq!(b.predicted_class, (a.predicted_class + 1) % c);
        }
        prop_assert_eq!(errors(&a, &d), errors(&b, &shifted));
    }
}

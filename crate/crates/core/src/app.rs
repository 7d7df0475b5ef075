//! End-to-end runs behind the `bench` and `costcurve` commands.

use std::collections::HashSet;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use crate::costcurves::{
    bootstrap_band, crossover, difference_regions, uniform_grid, BootstrapConfig, ConfidenceBand, Crossover,
    DominanceRegions, OperatingPoint, DEFAULT_GRID_SIZE, DEFAULT_LEVEL, DEFAULT_RESAMPLES,
};
use crate::dataset::{holdout_split, load_dataset, make_fold_plan, Dataset};
use crate::error::{Error, Result};
use crate::evaluation::{build_report, confusion, cross_validate, CvResult, ReportTable};
use crate::learners::{train, Classifier, Depth, LearnerParams, DEFAULT_MIN_BUCKET};
use crate::rng::substream_seed;
use crate::svg::{emit_svg, PlotLine, Styling};

pub const REPORT_CSV: &str = "report.csv";
pub const REPORT_TEXT: &str = "report.txt";

#[derive(Debug, Clone, PartialEq)]
pub struct BenchConfig {
    pub data_dir: PathBuf,
    pub repeats: usize,
    pub folds: usize,
    pub seed: u64,
    pub min_bucket: usize,
    pub out_dir: PathBuf,
}

impl BenchConfig {
    pub fn new(data_dir: impl Into<PathBuf>, out_dir: impl Into<PathBuf>) -> Self {
        BenchConfig {
            data_dir: data_dir.into(),
            repeats: 9,
            folds: 25,
            seed: 0,
            min_bucket: DEFAULT_MIN_BUCKET,
            out_dir: out_dir.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.repeats < 1 {
            return Err(Error::arg("repeats must be at least 1"));
        }
        if self.folds < 2 {
            return Err(Error::arg("folds must be at least 2"));
        }
        if self.min_bucket < 1 {
            return Err(Error::arg("min-bucket must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct BenchOutcome {
    pub table: ReportTable,
    pub results: Vec<CvResult>,
    /// Files that could not be benchmarked, with the reason.
    pub failures: Vec<(PathBuf, String)>,
}

/// CSV files in `dir`, sorted by file name.
pub fn dataset_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))?;
    let mut files = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e.eq_ignore_ascii_case("csv")) {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Cross-validates depths 0, 1 and 2 on one dataset with a shared fold plan.
pub fn bench_dataset(dataset: &Dataset, repeats: usize, folds: usize, seed: u64, params: &LearnerParams) -> Result<Vec<CvResult>> {
    let plan = make_fold_plan(dataset, repeats, folds, seed)?;
    Depth::ALL
        .iter()
        .map(|&d| cross_validate(dataset, d, &plan, params))
        .collect()
}

/// Benchmarks every dataset in the data directory and writes
/// `report.csv` and `report.txt` to the output directory.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutcome> {
    config.validate()?;
    let params = LearnerParams {
        min_bucket: config.min_bucket,
    };
    let mut results = Vec::new();
    let mut failures = Vec::new();
    let mut names = HashSet::new();
    for path in dataset_files(&config.data_dir)? {
        let outcome = load_dataset(&path).and_then(|d| {
            if !names.insert(d.name().to_string()) {
                return Err(Error::data(format!("dataset name '{}' is used twice", d.name())));
            }
            bench_dataset(&d, config.repeats, config.folds, config.seed, &params)
        });
        match outcome {
            Ok(r) => results.extend(r),
            Err(e) => failures.push((path, e.to_string())),
        }
    }
    if results.is_empty() {
        let mut msg = format!("no usable datasets in {}", config.data_dir.display());
        for (path, why) in &failures {
            write!(msg, "\n  {}: {why}", path.display()).unwrap();
        }
        return Err(Error::data(msg));
    }
    let table = build_report(&results)?;
    std::fs::create_dir_all(&config.out_dir).map_err(|e| Error::io(&config.out_dir, e))?;
    let csv_path = config.out_dir.join(REPORT_CSV);
    std::fs::write(&csv_path, table.to_csv()).map_err(|e| Error::io(&csv_path, e))?;
    let text_path = config.out_dir.join(REPORT_TEXT);
    std::fs::write(&text_path, table.to_text()).map_err(|e| Error::io(&text_path, e))?;
    Ok(BenchOutcome {
        table,
        results,
        failures,
    })
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurveConfig {
    pub dataset: PathBuf,
    /// Defaults to the second class.
    pub positive: Option<String>,
    /// Two classes to keep when the dataset has more.
    pub keep_classes: Option<[String; 2]>,
    pub classifiers: Vec<Depth>,
    /// Prediction files for externally trained classifiers.
    pub external: Vec<PathBuf>,
    pub test_fraction: f64,
    pub level: f64,
    pub resamples: usize,
    pub grid_size: usize,
    pub seed: u64,
    pub min_bucket: usize,
    pub svg: Option<PathBuf>,
    pub csv: Option<PathBuf>,
    /// Where to write the test instances (`instance,true`) for external tools.
    pub split_out: Option<PathBuf>,
}

impl CurveConfig {
    pub fn new(dataset: impl Into<PathBuf>) -> Self {
        CurveConfig {
            dataset: dataset.into(),
            positive: None,
            keep_classes: None,
            classifiers: vec![Depth::One, Depth::Two],
            external: Vec::new(),
            test_fraction: 1.0 / 3.0,
            level: DEFAULT_LEVEL,
            resamples: DEFAULT_RESAMPLES,
            grid_size: DEFAULT_GRID_SIZE,
            seed: 0,
            min_bucket: DEFAULT_MIN_BUCKET,
            svg: None,
            csv: None,
            split_out: None,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.classifiers.is_empty() && self.external.is_empty() {
            return Err(Error::arg("select at least one classifier"));
        }
        if !(self.level > 0.0 && self.level < 1.0) {
            return Err(Error::arg(format!("level must lie in (0, 1), got {}", self.level)));
        }
        if self.resamples < 100 {
            return Err(Error::arg("at least 100 resamples required"));
        }
        if self.grid_size < 2 {
            return Err(Error::arg("grid needs at least 2 samples"));
        }
        Ok(())
    }
}

#[derive(Debug)]
pub struct CurveOutcome {
    pub names: Vec<String>,
    pub points: Vec<OperatingPoint>,
    /// `(i, j, crossover)` for every pair `i < j`.
    pub crossovers: Vec<(usize, usize, Crossover)>,
    pub grid: Vec<f64>,
    pub bands: Vec<ConfidenceBand>,
    /// Present when exactly two classifiers are compared.
    pub difference: Option<(ConfidenceBand, DominanceRegions)>,
    pub test_rows: Vec<usize>,
    pub svg: String,
    pub csv: String,
    pub summary: String,
}

/// Parses an `instance,true,predicted` file against the test rows of
/// `dataset`. Instance ids are row indices of `dataset`; the file must list
/// each test row exactly once with its true label. Predictions come back in
/// the order of `test_rows`.
pub fn parse_predictions(text: &str, dataset: &Dataset, test_rows: &[usize]) -> Result<Vec<usize>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let header = reader
        .headers()
        .map_err(|e| Error::parse("predictions header", e.to_string()))?;
    if header.iter().collect::<Vec<_>>() != ["instance", "true", "predicted"] {
        return Err(Error::parse(
            "predictions header",
            "expected 'instance,true,predicted'",
        ));
    }
    let class = |label: &str, line: usize| {
        dataset
            .class_index(label)
            .ok_or_else(|| Error::parse(format!("predictions line {line}"), format!("unknown label '{label}'")))
    };
    let mut by_row: Vec<Option<usize>> = vec![None; dataset.len()];
    for (i, rec) in reader.records().enumerate() {
        let line = i + 2;
        let rec = rec.map_err(|e| Error::parse(format!("predictions line {line}"), e.to_string()))?;
        let id: usize = rec[0]
            .parse()
            .map_err(|_| Error::parse(format!("predictions line {line}"), format!("bad instance id '{}'", &rec[0])))?;
        if id >= dataset.len() {
            return Err(Error::parse(
                format!("predictions line {line}"),
                format!("instance {id} beyond the dataset's {} rows", dataset.len()),
            ));
        }
        if by_row[id].is_some() {
            return Err(Error::parse(format!("predictions line {line}"), format!("duplicate instance {id}")));
        }
        if class(&rec[1], line)? != dataset.rows()[id].class {
            return Err(Error::data(format!(
                "predictions line {line}: instance {id} is labelled '{}' but the dataset says '{}'",
                &rec[1],
                dataset.classes()[dataset.rows()[id].class]
            )));
        }
        by_row[id] = Some(class(&rec[2], line)?);
    }
    let wanted: HashSet<usize> = test_rows.iter().copied().collect();
    if let Some(extra) = (0..dataset.len()).find(|r| by_row[*r].is_some() && !wanted.contains(r)) {
        return Err(Error::data(format!("instance {extra} is not a test row")));
    }
    test_rows
        .iter()
        .map(|&r| by_row[r].ok_or_else(|| Error::data(format!("no prediction for test instance {r}"))))
        .collect()
}

pub fn load_predictions(path: &Path, dataset: &Dataset, test_rows: &[usize]) -> Result<Vec<usize>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_predictions(&text, dataset, test_rows)
}

/// `instance,true` lines for the test rows.
pub fn split_listing(dataset: &Dataset, test_rows: &[usize]) -> String {
    let mut out = String::from("instance,true\n");
    for &r in test_rows {
        writeln!(out, "{r},{}", dataset.classes()[dataset.rows()[r].class]).unwrap();
    }
    out
}

fn external_name(path: &Path) -> String {
    path.file_stem()
        .map_or_else(|| "external".to_string(), |s| s.to_string_lossy().into_owned())
}

/// Trains and evaluates the selected classifiers on a stratified holdout
/// split, then computes cost lines, crossovers, bootstrap bands and (for
/// two classifiers) the paired difference regions. Files named in the
/// config are written; everything is also returned.
pub fn run_costcurve(config: &CurveConfig) -> Result<CurveOutcome> {
    config.validate()?;
    let mut dataset = load_dataset(&config.dataset)?;
    if let Some([a, b]) = &config.keep_classes {
        dataset = dataset.retain_classes(&[a.as_str(), b.as_str()])?;
    }
    if dataset.n_classes() != 2 {
        return Err(Error::data(format!(
            "cost curves need a two-class dataset; '{}' has {} classes (keep two with --keep)",
            dataset.name(),
            dataset.n_classes()
        )));
    }
    let positive = match &config.positive {
        Some(label) => dataset
            .class_index(label)
            .ok_or_else(|| Error::data(format!("positive class '{label}' is not a class of the dataset")))?,
        None => 1,
    };
    let (train_set, test_set) = holdout_split(&dataset, config.test_fraction, config.seed)?;
    let truths: Vec<usize> = test_set.iter().map(|r| r.class).collect();

    let params = LearnerParams {
        min_bucket: config.min_bucket,
    };
    let mut names = Vec::new();
    let mut predictions: Vec<Vec<usize>> = Vec::new();
    for &depth in &config.classifiers {
        let model = train(depth, &train_set, &params)?;
        names.push(depth.to_string());
        predictions.push(test_set.iter().map(|r| model.classify(&r.cells)).collect());
    }
    for path in &config.external {
        names.push(external_name(path));
        predictions.push(load_predictions(path, &dataset, &test_set.rows)?);
    }

    let positive_label = dataset.classes()[positive].clone();
    let points = predictions
        .iter()
        .map(|p| crate::costcurves::operating_point(&confusion(dataset.classes(), &truths, p)?, &positive_label))
        .collect::<Result<Vec<_>>>()?;
    let mut crossovers = Vec::new();
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            crossovers.push((i, j, crossover(points[i], points[j])));
        }
    }

    let grid = uniform_grid(config.grid_size)?;
    let bands = predictions
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let cfg = BootstrapConfig {
                level: config.level,
                resamples: config.resamples,
                seed: substream_seed(config.seed, 1 + i as u64),
            };
            bootstrap_band(&truths, p, positive, &grid, &cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    let difference = if predictions.len() == 2 {
        let cfg = BootstrapConfig {
            level: config.level,
            resamples: config.resamples,
            seed: substream_seed(config.seed, 0),
        };
        Some(difference_regions(&truths, &predictions[0], &predictions[1], positive, &grid, &cfg)?)
    } else {
        None
    };

    let lines: Vec<PlotLine> = names
        .iter()
        .zip(&points)
        .map(|(n, &p)| PlotLine {
            name: n.clone(),
            point: p,
        })
        .collect();
    let svg = emit_svg(
        &grid,
        &lines,
        &bands,
        difference.as_ref().map(|d| &d.1),
        &Styling {
            title: Some(format!("{} (positive: {})", dataset.name(), positive_label)),
        },
    )?;
    let csv = curve_csv(&grid, &names, &points, &bands, difference.as_ref());
    let summary = curve_summary(&dataset, &positive_label, &names, &points, &crossovers, difference.as_ref(), test_set.len());

    if let Some(path) = &config.svg {
        std::fs::write(path, &svg).map_err(|e| Error::io(path, e))?;
    }
    if let Some(path) = &config.csv {
        std::fs::write(path, &csv).map_err(|e| Error::io(path, e))?;
    }
    if let Some(path) = &config.split_out {
        std::fs::write(path, split_listing(&dataset, &test_set.rows)).map_err(|e| Error::io(path, e))?;
    }

    Ok(CurveOutcome {
        names,
        points,
        crossovers,
        grid,
        bands,
        difference,
        test_rows: test_set.rows.clone(),
        svg,
        csv,
        summary,
    })
}

/// Columns: `x`, one `ne_<name>` per classifier, `band_lower`,
/// `band_upper`, `region_label`. The band is the classifier's own band when
/// there is one classifier and the difference band (first minus second)
/// when there are two; with more, the band and region columns are empty.
fn curve_csv(
    grid: &[f64],
    names: &[String],
    points: &[OperatingPoint],
    bands: &[ConfidenceBand],
    difference: Option<&(ConfidenceBand, DominanceRegions)>,
) -> String {
    let mut out = String::from("x");
    for n in names {
        write!(out, ",ne_{n}").unwrap();
    }
    out.push_str(",band_lower,band_upper,region_label\n");
    let band = match (difference, bands) {
        (Some((b, _)), _) => Some(b),
        (None, [only]) => Some(only),
        _ => None,
    };
    for (i, &x) in grid.iter().enumerate() {
        write!(out, "{x}").unwrap();
        for p in points {
            write!(out, ",{}", p.line().at(x)).unwrap();
        }
        match band {
            Some(b) => write!(out, ",{},{}", b.lower[i], b.upper[i]).unwrap(),
            None => out.push_str(",,"),
        }
        match difference {
            Some((_, r)) => writeln!(out, ",{}", r.per_sample[i]).unwrap(),
            None => out.push_str(",\n"),
        }
    }
    out
}

fn curve_summary(
    dataset: &Dataset,
    positive: &str,
    names: &[String],
    points: &[OperatingPoint],
    crossovers: &[(usize, usize, Crossover)],
    difference: Option<&(ConfidenceBand, DominanceRegions)>,
    test_rows: usize,
) -> String {
    let mut out = String::new();
    writeln!(out, "dataset {} ({} test rows, positive class '{positive}')", dataset.name(), test_rows).unwrap();
    for (n, p) in names.iter().zip(points) {
        writeln!(out, "  {n}: fpr {:.4}  fnr {:.4}", p.fpr, p.fnr).unwrap();
    }
    for (i, j, c) in crossovers {
        match c {
            Crossover::At(x) => {
                let (lo, hi) = if points[*i].line().slope() > points[*j].line().slope() {
                    (j, i)
                } else {
                    (i, j)
                };
                writeln!(
                    out,
                    "  crossover {} / {} at PC(+) = {x:.4}; {} cheaper above, {} cheaper below",
                    names[*i], names[*j], names[*lo], names[*hi]
                )
                .unwrap()
            }
            other => writeln!(out, "  crossover {} / {}: {other}", names[*i], names[*j]).unwrap(),
        }
    }
    if let Some((band, regions)) = difference {
        writeln!(out, "  {:.0}% paired bootstrap on NE({}) - NE({}):", band.level * 100.0, names[0], names[1]).unwrap();
        for r in &regions.regions {
            writeln!(out, "    [{:.3}, {:.3}] {}", r.start, r.end, r.label).unwrap();
        }
    }
    out
}

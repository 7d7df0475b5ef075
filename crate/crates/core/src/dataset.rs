//! Labeled tabular datasets: CSV loading, schema inference, stratified fold
//! plans and train/test views.
//!
//! Input documents are comma separated with a header row. `?` marks a
//! missing cell. The label column defaults to the last column and class
//! labels are ordered by first appearance.

use std::collections::{HashMap, HashSet};
use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::rng::Xoshiro256;

pub const MISSING: &str = "?";

#[derive(Debug, Clone, PartialEq)]
pub enum FeatureKind {
    /// Categorical feature; cells hold indices into this value list.
    Nominal(Vec<String>),
    Numeric,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureSpec {
    pub name: String,
    pub kind: FeatureKind,
    /// Column position among the features (the label column is not counted).
    pub index: usize,
}

impl FeatureSpec {
    pub fn is_numeric(&self) -> bool {
        matches!(self.kind, FeatureKind::Numeric)
    }

    /// Number of values of a nominal feature, zero for numeric ones.
    pub fn arity(&self) -> usize {
        match &self.kind {
            FeatureKind::Nominal(values) => values.len(),
            FeatureKind::Numeric => 0,
        }
    }
}

/// The label column as seen by [`infer_schema`].
#[derive(Debug, Clone, PartialEq)]
pub struct LabelSpec {
    pub name: String,
    /// Position of the label column in the raw grid.
    pub column: usize,
    pub classes: Vec<String>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Schema {
    pub features: Vec<FeatureSpec>,
    pub label: LabelSpec,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Cell {
    Nominal(u32),
    Numeric(f64),
    Missing,
}

impl Cell {
    pub fn is_missing(&self) -> bool {
        matches!(self, Cell::Missing)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Row {
    pub cells: Vec<Cell>,
    pub class: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    name: String,
    features: Vec<FeatureSpec>,
    label_name: String,
    classes: Vec<String>,
    rows: Vec<Row>,
}

impl Dataset {
    /// Builds a dataset, checking every structural invariant.
    pub fn new(
        name: impl Into<String>,
        features: Vec<FeatureSpec>,
        label_name: impl Into<String>,
        classes: Vec<String>,
        rows: Vec<Row>,
    ) -> Result<Self> {
        if classes.len() < 2 {
            return Err(Error::data(format!(
                "need at least 2 classes, found {}",
                classes.len()
            )));
        }
        check_unique(classes.iter(), "class label")?;
        check_unique(features.iter().map(|f| &f.name), "feature name")?;
        for (i, f) in features.iter().enumerate() {
            if f.index != i {
                return Err(Error::data(format!(
                    "feature '{}' has index {} at position {i}",
                    f.name, f.index
                )));
            }
            if let FeatureKind::Nominal(values) = &f.kind {
                if values.is_empty() {
                    return Err(Error::data(format!(
                        "nominal feature '{}' has no values",
                        f.name
                    )));
                }
                check_unique(values.iter(), &format!("value of feature '{}'", f.name))?;
            }
        }
        for (r, row) in rows.iter().enumerate() {
            if row.cells.len() != features.len() {
                return Err(Error::data(format!(
                    "row {r} has {} cells, expected {}",
                    row.cells.len(),
                    features.len()
                )));
            }
            if row.class >= classes.len() {
                return Err(Error::data(format!("row {r} has class index {}", row.class)));
            }
            for (cell, f) in row.cells.iter().zip(&features) {
                let ok = match (cell, &f.kind) {
                    (Cell::Missing, _) => true,
                    (Cell::Nominal(v), FeatureKind::Nominal(values)) => (*v as usize) < values.len(),
                    (Cell::Numeric(x), FeatureKind::Numeric) => x.is_finite(),
                    _ => false,
                };
                if !ok {
                    return Err(Error::data(format!(
                        "row {r}: invalid cell {cell:?} for feature '{}'",
                        f.name
                    )));
                }
            }
        }
        Ok(Dataset {
            name: name.into(),
            features,
            label_name: label_name.into(),
            classes,
            rows,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn features(&self) -> &[FeatureSpec] {
        &self.features
    }

    pub fn label_name(&self) -> &str {
        &self.label_name
    }

    pub fn classes(&self) -> &[String] {
        &self.classes
    }

    pub fn n_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    pub fn rows(&self) -> &[Row] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Class index of every row, in row order.
    pub fn class_sequence(&self) -> Vec<usize> {
        self.rows.iter().map(|r| r.class).collect()
    }

    /// A view over every row.
    pub fn all(&self) -> Subset<'_> {
        Subset {
            dataset: self,
            rows: (0..self.rows.len()).collect(),
        }
    }

    pub fn subset(&self, rows: Vec<usize>) -> Result<Subset<'_>> {
        if let Some(&bad) = rows.iter().find(|&&r| r >= self.rows.len()) {
            return Err(Error::OutOfRange {
                index: bad,
                limit: self.rows.len(),
            });
        }
        Ok(Subset { dataset: self, rows })
    }

    /// Keeps only rows whose class is in `keep`, which becomes the new class
    /// list (in the given order).
    pub fn retain_classes(&self, keep: &[&str]) -> Result<Dataset> {
        let mut mapping = vec![None; self.classes.len()];
        for (new, label) in keep.iter().enumerate() {
            let old = self
                .class_index(label)
                .ok_or_else(|| Error::data(format!("unknown class '{label}'")))?;
            mapping[old] = Some(new);
        }
        let rows = self
            .rows
            .iter()
            .filter_map(|r| {
                mapping[r.class].map(|class| Row {
                    cells: r.cells.clone(),
                    class,
                })
            })
            .collect();
        Dataset::new(
            self.name.clone(),
            self.features.clone(),
            self.label_name.clone(),
            keep.iter().map(|s| s.to_string()).collect(),
            rows,
        )
    }

    /// Renders the dataset back to the CSV dialect accepted by
    /// [`parse_dataset`], label column last.
    pub fn to_csv(&self) -> String {
        let mut out = String::new();
        for f in &self.features {
            out.push_str(&f.name);
            out.push(',');
        }
        out.push_str(&self.label_name);
        out.push('\n');
        for row in &self.rows {
            for (cell, f) in row.cells.iter().zip(&self.features) {
                match (cell, &f.kind) {
                    (Cell::Missing, _) => out.push_str(MISSING),
                    (Cell::Numeric(x), _) => write!(out, "{x}").unwrap(),
                    (Cell::Nominal(v), FeatureKind::Nominal(values)) => {
                        out.push_str(&values[*v as usize])
                    }
                    (Cell::Nominal(v), FeatureKind::Numeric) => write!(out, "{v}").unwrap(),
                }
                out.push(',');
            }
            out.push_str(&self.classes[row.class]);
            out.push('\n');
        }
        out
    }
}

fn check_unique<'a>(items: impl Iterator<Item = &'a String>, what: &str) -> Result<()> {
    let mut seen = HashSet::new();
    for item in items {
        if !seen.insert(item.as_str()) {
            return Err(Error::data(format!("duplicate {what} '{item}'")));
        }
    }
    Ok(())
}

/// A borrowed selection of rows, used for training and test splits.
#[derive(Debug, Clone)]
pub struct Subset<'a> {
    pub dataset: &'a Dataset,
    pub rows: Vec<usize>,
}

impl<'a> Subset<'a> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &'a Row> + '_ {
        self.rows.iter().map(move |&r| &self.dataset.rows[r])
    }

    pub fn class_counts(&self) -> Vec<u32> {
        let mut counts = vec![0; self.dataset.n_classes()];
        for row in self.iter() {
            counts[row.class] += 1;
        }
        counts
    }
}

fn is_missing(cell: &str) -> bool {
    cell == MISSING || cell.is_empty()
}

fn parse_number(cell: &str) -> Option<f64> {
    cell.parse::<f64>().ok().filter(|x| x.is_finite())
}

/// Kind forced by a manifest or caller, overriding inference for one column.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ForcedKind {
    Nominal,
    Numeric,
}

/// Decides the kind of every feature column.
///
/// `rows` is the raw cell grid (header excluded). A column is numeric iff
/// every non-missing cell parses as a finite number; nominal values are kept
/// in first-appearance order. The label column is always nominal.
pub fn infer_schema(header: &[String], rows: &[Vec<String>], label_column: usize) -> Result<Schema> {
    infer_schema_with(header, rows, label_column, &HashMap::new())
}

fn infer_schema_with(
    header: &[String],
    rows: &[Vec<String>],
    label_column: usize,
    forced: &HashMap<String, ForcedKind>,
) -> Result<Schema> {
    if rows.is_empty() {
        return Err(Error::data("no data rows"));
    }
    if label_column >= header.len() {
        return Err(Error::OutOfRange {
            index: label_column,
            limit: header.len(),
        });
    }
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::data(format!(
                "row {i} has {} cells, header has {}",
                row.len(),
                header.len()
            )));
        }
    }

    let mut classes: Vec<String> = Vec::new();
    for row in rows {
        let cell = row[label_column].as_str();
        if !is_missing(cell) && !classes.iter().any(|c| c == cell) {
            classes.push(cell.to_string());
        }
    }
    if classes.is_empty() {
        return Err(Error::data(format!(
            "label column '{}' is entirely missing",
            header[label_column]
        )));
    }
    if classes.len() < 2 {
        return Err(Error::data(format!(
            "label column '{}' has a single class '{}'",
            header[label_column], classes[0]
        )));
    }

    let mut features = Vec::with_capacity(header.len() - 1);
    for (col, name) in header.iter().enumerate() {
        if col == label_column {
            continue;
        }
        let present: Vec<&str> = rows
            .iter()
            .map(|r| r[col].as_str())
            .filter(|c| !is_missing(c))
            .collect();
        if present.is_empty() {
            return Err(Error::data(format!("feature '{name}' is entirely missing")));
        }
        let numeric = match forced.get(name) {
            Some(ForcedKind::Nominal) => false,
            Some(ForcedKind::Numeric) => {
                if let Some(bad) = present.iter().find(|c| parse_number(c).is_none()) {
                    return Err(Error::data(format!(
                        "feature '{name}' is declared numeric but has cell '{bad}'"
                    )));
                }
                true
            }
            None => present.iter().all(|c| parse_number(c).is_some()),
        };
        let kind = if numeric {
            let first = parse_number(present[0]).unwrap();
            if present.iter().all(|c| parse_number(c) == Some(first)) {
                return Err(Error::data(format!("feature '{name}' has a single value")));
            }
            FeatureKind::Numeric
        } else {
            let mut values: Vec<String> = Vec::new();
            for c in &present {
                if !values.iter().any(|v| v == c) {
                    values.push(c.to_string());
                }
            }
            if values.len() < 2 {
                return Err(Error::data(format!("feature '{name}' has a single value")));
            }
            FeatureKind::Nominal(values)
        };
        features.push(FeatureSpec {
            name: name.clone(),
            kind,
            index: features.len(),
        });
    }

    Ok(Schema {
        features,
        label: LabelSpec {
            name: header[label_column].clone(),
            column: label_column,
            classes,
        },
    })
}

#[derive(Debug, Clone, Default)]
pub struct ParseOptions {
    /// Dataset display name.
    pub name: Option<String>,
    /// Label column position; defaults to the last column.
    pub label_column: Option<usize>,
    /// Explicit feature specs, one per non-label column, replacing inference.
    pub schema_override: Option<Vec<FeatureSpec>>,
    /// Per-column kind overrides applied during inference.
    pub forced_kinds: HashMap<String, ForcedKind>,
    /// Columns removed before anything else happens.
    pub drop_columns: Vec<String>,
}

fn read_grid(text: &str) -> Result<(Vec<String>, Vec<Vec<String>>)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let mut records = Vec::new();
    for (i, rec) in reader.records().enumerate() {
        let rec = rec.map_err(|e| Error::parse(format!("line {}", i + 1), e.to_string()))?;
        if rec.iter().all(|c| c.is_empty()) {
            continue;
        }
        records.push(rec.iter().map(str::to_string).collect::<Vec<_>>());
    }
    let mut it = records.into_iter();
    let header = it.next().ok_or_else(|| Error::data("empty document"))?;
    let rows: Vec<Vec<String>> = it.collect();
    for (i, row) in rows.iter().enumerate() {
        if row.len() != header.len() {
            return Err(Error::parse(
                format!("data row {}", i + 1),
                format!("{} cells, header has {}", row.len(), header.len()),
            ));
        }
    }
    Ok((header, rows))
}

/// Parses a CSV document into a [`Dataset`].
///
/// Rows whose label cell is missing are skipped. Row order is preserved.
pub fn parse_dataset(text: &str, options: &ParseOptions) -> Result<Dataset> {
    let (mut header, mut rows) = read_grid(text)?;
    check_unique(header.iter(), "column name")?;

    if !options.drop_columns.is_empty() {
        let keep: Vec<usize> = (0..header.len())
            .filter(|&i| !options.drop_columns.contains(&header[i]))
            .collect();
        for d in &options.drop_columns {
            if !header.contains(d) {
                return Err(Error::data(format!("cannot drop unknown column '{d}'")));
            }
        }
        header = keep.iter().map(|&i| header[i].clone()).collect();
        rows = rows
            .into_iter()
            .map(|r| keep.iter().map(|&i| r[i].clone()).collect())
            .collect();
    }
    if header.is_empty() {
        return Err(Error::data("no columns"));
    }

    let label_column = options.label_column.unwrap_or(header.len() - 1);
    if label_column >= header.len() {
        return Err(Error::OutOfRange {
            index: label_column,
            limit: header.len(),
        });
    }
    if !rows.is_empty() && rows.iter().all(|r| is_missing(&r[label_column])) {
        return Err(Error::data(format!(
            "label column '{}' is entirely missing",
            header[label_column]
        )));
    }
    rows.retain(|r| !is_missing(&r[label_column]));

    let schema = match &options.schema_override {
        Some(specs) => {
            if specs.len() != header.len() - 1 {
                return Err(Error::data(format!(
                    "schema override has {} features, document has {}",
                    specs.len(),
                    header.len() - 1
                )));
            }
            let inferred = infer_schema(&header, &rows, label_column);
            let label = match inferred {
                Ok(s) => s.label,
                Err(_) => label_only(&header, &rows, label_column)?,
            };
            Schema {
                features: specs.clone(),
                label,
            }
        }
        None => infer_schema_with(&header, &rows, label_column, &options.forced_kinds)?,
    };

    let mut data_rows = Vec::with_capacity(rows.len());
    for (r, raw) in rows.iter().enumerate() {
        let mut cells = Vec::with_capacity(schema.features.len());
        let mut fi = 0;
        for (col, text) in raw.iter().enumerate() {
            if col == label_column {
                continue;
            }
            let spec = &schema.features[fi];
            fi += 1;
            let cell = if is_missing(text) {
                Cell::Missing
            } else {
                match &spec.kind {
                    FeatureKind::Numeric => Cell::Numeric(parse_number(text).ok_or_else(|| {
                        Error::parse(
                            format!("data row {}", r + 1),
                            format!("'{text}' is not a number (feature '{}')", spec.name),
                        )
                    })?),
                    FeatureKind::Nominal(values) => {
                        let v = values.iter().position(|v| v == text).ok_or_else(|| {
                            Error::parse(
                                format!("data row {}", r + 1),
                                format!("'{text}' is not a value of feature '{}'", spec.name),
                            )
                        })?;
                        Cell::Nominal(v as u32)
                    }
                }
            };
            cells.push(cell);
        }
        let class = schema
            .label
            .classes
            .iter()
            .position(|c| *c == raw[label_column])
            .expect("label inferred from the same rows");
        data_rows.push(Row { cells, class });
    }

    Dataset::new(
        options.name.clone().unwrap_or_else(|| "dataset".to_string()),
        schema.features,
        schema.label.name,
        schema.label.classes,
        data_rows,
    )
}

fn label_only(header: &[String], rows: &[Vec<String>], label_column: usize) -> Result<LabelSpec> {
    let mut classes: Vec<String> = Vec::new();
    for row in rows {
        let c = &row[label_column];
        if !is_missing(c) && !classes.contains(c) {
            classes.push(c.clone());
        }
    }
    if classes.len() < 2 {
        return Err(Error::data(format!(
            "label column '{}' has fewer than 2 classes",
            header[label_column]
        )));
    }
    Ok(LabelSpec {
        name: header[label_column].clone(),
        column: label_column,
        classes,
    })
}

/// Sidecar `key=value` file describing how to load a dataset.
///
/// Recognised keys: `acronym`, `label` (column name or 0-based index),
/// `drop` (comma-separated column names) and `kind.<column>` set to
/// `nominal` or `numeric`. Blank lines and `#` comments are ignored.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Manifest {
    pub acronym: Option<String>,
    pub label: Option<String>,
    pub drop: Vec<String>,
    pub kinds: Vec<(String, ForcedKind)>,
}

impl Manifest {
    pub fn parse(text: &str) -> Result<Manifest> {
        let mut m = Manifest::default();
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let ctx = || format!("manifest line {}", i + 1);
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::parse(ctx(), "expected key=value"))?;
            let (key, value) = (key.trim(), value.trim());
            match key {
                "acronym" => m.acronym = Some(value.to_string()),
                "label" => m.label = Some(value.to_string()),
                "drop" => m.drop.extend(
                    value
                        .split(',')
                        .map(str::trim)
                        .filter(|s| !s.is_empty())
                        .map(str::to_string),
                ),
                _ => {
                    let column = key
                        .strip_prefix("kind.")
                        .ok_or_else(|| Error::parse(ctx(), format!("unknown key '{key}'")))?;
                    let kind = match value {
                        "nominal" => ForcedKind::Nominal,
                        "numeric" => ForcedKind::Numeric,
                        other => {
                            return Err(Error::parse(ctx(), format!("unknown kind '{other}'")))
                        }
                    };
                    m.kinds.push((column.to_string(), kind));
                }
            }
        }
        Ok(m)
    }
}

/// Loads `path`, applying `<stem>.manifest` next to it when present.
///
/// The dataset name is the manifest acronym, else the file stem.
pub fn load_dataset(path: &Path) -> Result<Dataset> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let manifest_path = path.with_extension("manifest");
    let manifest = if manifest_path.is_file() {
        let m = std::fs::read_to_string(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
        Manifest::parse(&m)?
    } else {
        Manifest::default()
    };
    let stem = path
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "dataset".to_string());

    let mut options = ParseOptions {
        name: Some(manifest.acronym.clone().unwrap_or(stem)),
        drop_columns: manifest.drop.clone(),
        forced_kinds: manifest.kinds.iter().cloned().collect(),
        ..ParseOptions::default()
    };
    if let Some(label) = &manifest.label {
        let (header, _) = read_grid(&text)?;
        let header: Vec<&String> = header
            .iter()
            .filter(|h| !manifest.drop.contains(h))
            .collect();
        let index = match label.parse::<usize>() {
            Ok(i) => i,
            Err(_) => header
                .iter()
                .position(|h| *h == label)
                .ok_or_else(|| Error::data(format!("manifest label column '{label}' not found")))?,
        };
        options.label_column = Some(index);
    }
    parse_dataset(&text, &options)
}

/// Deterministic assignment of rows to folds for repeated cross-validation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldPlan {
    pub seed: u64,
    pub repeats: usize,
    pub folds: usize,
    n_rows: usize,
    fingerprint: u64,
    /// `assignment[repeat][row]` is the fold holding `row` in that repeat.
    assignment: Vec<Vec<u32>>,
}

fn class_fingerprint(classes: &[usize]) -> u64 {
    // FNV-1a over the class sequence.
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for &c in classes {
        for b in (c as u64).to_le_bytes() {
            h ^= u64::from(b);
            h = h.wrapping_mul(0x0000_0100_0000_01b3);
        }
    }
    h
}

/// Builds a stratified fold plan.
///
/// For each repeat `r` a generator is seeded with substream `r` of `seed`.
/// Classes are visited in class order; each class's row indices (ascending)
/// are shuffled and dealt round-robin to the folds, continuing from the fold
/// after the one that received the previous class's last row.
pub fn make_fold_plan(dataset: &Dataset, repeats: usize, folds: usize, seed: u64) -> Result<FoldPlan> {
    let classes = dataset.class_sequence();
    make_fold_plan_for(&classes, dataset.n_classes(), repeats, folds, seed)
}

pub(crate) fn make_fold_plan_for(
    classes: &[usize],
    n_classes: usize,
    repeats: usize,
    folds: usize,
    seed: u64,
) -> Result<FoldPlan> {
    if folds < 2 {
        return Err(Error::arg(format!("folds must be at least 2, got {folds}")));
    }
    if folds > classes.len() {
        return Err(Error::arg(format!(
            "folds ({folds}) exceed row count ({})",
            classes.len()
        )));
    }
    if repeats < 1 {
        return Err(Error::arg("repeats must be at least 1"));
    }
    let mut by_class: Vec<Vec<usize>> = vec![Vec::new(); n_classes];
    for (row, &c) in classes.iter().enumerate() {
        by_class[c].push(row);
    }
    let assignment = (0..repeats)
        .map(|r| {
            let mut rng = Xoshiro256::substream(seed, r as u64);
            let mut fold_of = vec![0u32; classes.len()];
            let mut next = 0usize;
            for members in &by_class {
                let mut shuffled = members.clone();
                rng.shuffle(&mut shuffled);
                for row in shuffled {
                    fold_of[row] = next as u32;
                    next = (next + 1) % folds;
                }
            }
            fold_of
        })
        .collect();
    Ok(FoldPlan {
        seed,
        repeats,
        folds,
        n_rows: classes.len(),
        fingerprint: class_fingerprint(classes),
        assignment,
    })
}

impl FoldPlan {
    pub fn n_rows(&self) -> usize {
        self.n_rows
    }

    pub fn fold_of(&self, repeat: usize, row: usize) -> usize {
        self.assignment[repeat][row] as usize
    }

    pub fn assignment(&self, repeat: usize) -> &[u32] {
        &self.assignment[repeat]
    }

    /// Whether the plan was built for `dataset` (same row count and class sequence).
    pub fn matches(&self, dataset: &Dataset) -> bool {
        self.n_rows == dataset.len() && self.fingerprint == class_fingerprint(&dataset.class_sequence())
    }

    /// Row indices of one test fold, ascending.
    pub fn test_rows(&self, repeat: usize, fold: usize) -> Result<Vec<usize>> {
        self.check(repeat, fold)?;
        Ok(self.assignment[repeat]
            .iter()
            .enumerate()
            .filter(|(_, &f)| f as usize == fold)
            .map(|(row, _)| row)
            .collect())
    }

    fn check(&self, repeat: usize, fold: usize) -> Result<()> {
        if repeat >= self.repeats {
            return Err(Error::OutOfRange {
                index: repeat,
                limit: self.repeats,
            });
        }
        if fold >= self.folds {
            return Err(Error::OutOfRange {
                index: fold,
                limit: self.folds,
            });
        }
        Ok(())
    }
}

/// Splits `dataset` into (train, test) for one fold of one repeat.
pub fn fold_split<'a>(
    dataset: &'a Dataset,
    plan: &FoldPlan,
    repeat: usize,
    fold: usize,
) -> Result<(Subset<'a>, Subset<'a>)> {
    if !plan.matches(dataset) {
        return Err(Error::data("fold plan was built for a different dataset"));
    }
    plan.check(repeat, fold)?;
    let (test, train): (Vec<usize>, Vec<usize>) =
        (0..dataset.len()).partition(|&row| plan.fold_of(repeat, row) == fold);
    Ok((
        Subset { dataset, rows: train },
        Subset { dataset, rows: test },
    ))
}

/// Stratified holdout split: in each class, `round(n_c * test_fraction)`
/// shuffled rows go to the test side. Both sides are returned ascending.
pub fn holdout_split(dataset: &Dataset, test_fraction: f64, seed: u64) -> Result<(Subset<'_>, Subset<'_>)> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(Error::arg(format!(
            "test fraction must lie in (0, 1), got {test_fraction}"
        )));
    }
    let mut rng = Xoshiro256::seed_from_u64(seed);
    let mut is_test = vec![false; dataset.len()];
    for class in 0..dataset.n_classes() {
        let mut members: Vec<usize> = (0..dataset.len())
            .filter(|&r| dataset.rows[r].class == class)
            .collect();
        rng.shuffle(&mut members);
        let take = (members.len() as f64 * test_fraction).round() as usize;
        for &row in &members[..take] {
            is_test[row] = true;
        }
    }
    let (test, train): (Vec<usize>, Vec<usize>) = (0..dataset.len()).partition(|&r| is_test[r]);
    if train.is_empty() || test.is_empty() {
        return Err(Error::data("holdout split leaves an empty side"));
    }
    Ok((
        Subset { dataset, rows: train },
        Subset { dataset, rows: test },
    ))
}

//! Dataset ingestion and class bookkeeping.
//!
//! Instances are stored row-major as `f64` vectors: numeric attributes hold
//! their value, categorical attributes hold the index of the category in the
//! attribute's declared category list. Labels are indices into
//! [`Dataset::classes`].

use std::collections::HashSet;
use std::fmt::Write as _;
use std::io::Read;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::Rng;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AttributeKind {
    Numeric { range: Option<(f64, f64)> },
    Categorical { categories: Vec<String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Attribute {
    pub name: String,
    pub kind: AttributeKind,
}

impl Attribute {
    pub fn numeric(name: impl Into<String>) -> Self {
        Attribute {
            name: name.into(),
            kind: AttributeKind::Numeric { range: None },
        }
    }

    pub fn categorical<S: Into<String>>(
        name: impl Into<String>,
        categories: impl IntoIterator<Item = S>,
    ) -> Self {
        Attribute {
            name: name.into(),
            kind: AttributeKind::Categorical {
                categories: categories.into_iter().map(Into::into).collect(),
            },
        }
    }

    pub fn is_categorical(&self) -> bool {
        matches!(self.kind, AttributeKind::Categorical { .. })
    }

    /// Number of declared categories, zero for numeric attributes.
    pub fn num_categories(&self) -> usize {
        match &self.kind {
            AttributeKind::Categorical { categories } => categories.len(),
            AttributeKind::Numeric { .. } => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Dataset {
    pub name: String,
    pub attributes: Vec<Attribute>,
    /// Name of the class attribute.
    pub class_name: String,
    pub classes: Vec<String>,
    pub rows: Vec<Vec<f64>>,
    pub labels: Vec<usize>,
}

impl Dataset {
    /// Builds a dataset after checking the structural invariants: unique
    /// attribute names, non-empty category lists, one value per attribute in
    /// every row, category indices and labels in range.
    pub fn new(
        name: impl Into<String>,
        attributes: Vec<Attribute>,
        class_name: impl Into<String>,
        classes: Vec<String>,
        rows: Vec<Vec<f64>>,
        labels: Vec<usize>,
    ) -> Result<Self> {
        let mut seen = HashSet::new();
        for attr in &attributes {
            if !seen.insert(attr.name.as_str()) {
                return Err(Error::invalid(format!(
                    "duplicate attribute name `{}`",
                    attr.name
                )));
            }
            if let AttributeKind::Categorical { categories } = &attr.kind {
                if categories.is_empty() {
                    return Err(Error::invalid(format!(
                        "categorical attribute `{}` has no categories",
                        attr.name
                    )));
                }
            }
        }
        if classes.is_empty() {
            return Err(Error::invalid("no class values declared"));
        }
        if rows.len() != labels.len() {
            return Err(Error::invalid(format!(
                "{} rows but {} labels",
                rows.len(),
                labels.len()
            )));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != attributes.len() {
                return Err(Error::invalid(format!(
                    "row {i} has {} values, schema has {} attributes",
                    row.len(),
                    attributes.len()
                )));
            }
            for (value, attr) in row.iter().zip(&attributes) {
                let ok = match &attr.kind {
                    AttributeKind::Numeric { .. } => value.is_finite(),
                    AttributeKind::Categorical { categories } => {
                        value.fract() == 0.0
                            && *value >= 0.0
                            && (*value as usize) < categories.len()
                    }
                };
                if !ok {
                    return Err(Error::invalid(format!(
                        "row {i}: value {value} invalid for attribute `{}`",
                        attr.name
                    )));
                }
            }
            if labels[i] >= classes.len() {
                return Err(Error::invalid(format!("row {i}: label index out of range")));
            }
        }
        Ok(Dataset {
            name: name.into(),
            attributes,
            class_name: class_name.into(),
            classes,
            rows,
            labels,
        })
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn num_features(&self) -> usize {
        self.attributes.len()
    }

    /// Instance count per declared class.
    pub fn class_counts(&self) -> Vec<usize> {
        let mut counts = vec![0; self.classes.len()];
        for &label in &self.labels {
            counts[label] += 1;
        }
        counts
    }

    pub fn class_index(&self, label: &str) -> Option<usize> {
        self.classes.iter().position(|c| c == label)
    }

    /// New dataset holding the given rows, in the given order.
    pub fn subset(&self, indices: &[usize]) -> Dataset {
        Dataset {
            name: self.name.clone(),
            attributes: self.attributes.clone(),
            class_name: self.class_name.clone(),
            classes: self.classes.clone(),
            rows: indices.iter().map(|&i| self.rows[i].clone()).collect(),
            labels: indices.iter().map(|&i| self.labels[i]).collect(),
        }
    }

    /// Whether `other` has the same attributes (names and kinds).
    pub fn same_schema(&self, other: &Dataset) -> bool {
        self.attributes == other.attributes
    }

    /// Serializes to KEEL `.dat` text. Parsing the output with
    /// [`parse_keel`] yields a dataset equal to `self`.
    pub fn to_keel(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "@relation {}", self.name);
        for attr in &self.attributes {
            match &attr.kind {
                AttributeKind::Numeric {
                    range: Some((lo, hi)),
                } => {
                    let _ = writeln!(out, "@attribute {} real [{lo}, {hi}]", quote(&attr.name));
                }
                AttributeKind::Numeric { range: None } => {
                    let _ = writeln!(out, "@attribute {} real", quote(&attr.name));
                }
                AttributeKind::Categorical { categories } => {
                    let _ = writeln!(
                        out,
                        "@attribute {} {{{}}}",
                        quote(&attr.name),
                        categories.join(", ")
                    );
                }
            }
        }
        let _ = writeln!(
            out,
            "@attribute {} {{{}}}",
            quote(&self.class_name),
            self.classes.join(", ")
        );
        let inputs: Vec<String> = self.attributes.iter().map(|a| quote(&a.name)).collect();
        let _ = writeln!(out, "@inputs {}", inputs.join(", "));
        let _ = writeln!(out, "@outputs {}", quote(&self.class_name));
        out.push_str("@data\n");
        for (row, &label) in self.rows.iter().zip(&self.labels) {
            for (value, attr) in row.iter().zip(&self.attributes) {
                match &attr.kind {
                    AttributeKind::Numeric { .. } => {
                        let _ = write!(out, "{value}, ");
                    }
                    AttributeKind::Categorical { categories } => {
                        let _ = write!(out, "{}, ", categories[*value as usize]);
                    }
                }
            }
            out.push_str(&self.classes[label]);
            out.push('\n');
        }
        out
    }
}

fn quote(name: &str) -> String {
    if name.contains(|c: char| c.is_whitespace() || c == ',' || c == '{' || c == '[') {
        format!("'{name}'")
    } else {
        name.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetSummary {
    pub name: String,
    pub num_instances: usize,
    pub num_features: usize,
    /// `(label, count)` in class-declaration order.
    pub class_counts: Vec<(String, usize)>,
    /// Largest present class count over smallest present class count.
    pub imbalance_ratio: f64,
}

pub fn summarize(ds: &Dataset) -> DatasetSummary {
    let counts = ds.class_counts();
    let present = counts.iter().copied().filter(|&c| c > 0);
    let max = present.clone().max().unwrap_or(0);
    let min = present.min().unwrap_or(0);
    let imbalance_ratio = if min == 0 {
        1.0
    } else {
        max as f64 / min as f64
    };
    DatasetSummary {
        name: ds.name.clone(),
        num_instances: ds.len(),
        num_features: ds.num_features(),
        class_counts: ds.classes.iter().cloned().zip(counts).collect(),
        imbalance_ratio,
    }
}

/// Minority/majority partition of a dataset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BinaryView {
    pub positive_label: String,
    /// Index of the positive label in the base dataset's classes.
    pub positive_class: usize,
    pub majority_indices: Vec<usize>,
    pub minority_indices: Vec<usize>,
    /// Set when an explicit positive label is the larger side.
    pub positive_is_majority: bool,
}

/// Designates the positive (minority) class. Without an explicit label the
/// rarest present class is used, ties going to the first-declared class.
pub fn binarize(ds: &Dataset, positive_label: Option<&str>) -> Result<BinaryView> {
    let counts = ds.class_counts();
    let positive_class = match positive_label {
        Some(label) => {
            let idx = ds
                .class_index(label)
                .ok_or_else(|| Error::invalid(format!("positive label `{label}` not declared")))?;
            if counts[idx] == 0 {
                return Err(Error::invalid(format!(
                    "positive label `{label}` has no instances"
                )));
            }
            idx
        }
        None => counts
            .iter()
            .enumerate()
            .filter(|(_, &c)| c > 0)
            .min_by_key(|&(i, &c)| (c, i))
            .map(|(i, _)| i)
            .ok_or_else(|| Error::invalid("dataset has no instances"))?,
    };
    let (minority_indices, majority_indices): (Vec<usize>, Vec<usize>) =
        (0..ds.len()).partition(|&i| ds.labels[i] == positive_class);
    if majority_indices.is_empty() {
        return Err(Error::invalid(format!(
            "`{}` is the only label present",
            ds.classes[positive_class]
        )));
    }
    let positive_is_majority = minority_indices.len() > majority_indices.len();
    if positive_is_majority {
        log::warn!(
            "positive label `{}` has {} instances, more than the {} others",
            ds.classes[positive_class],
            minority_indices.len(),
            majority_indices.len()
        );
    }
    Ok(BinaryView {
        positive_label: ds.classes[positive_class].clone(),
        positive_class,
        majority_indices,
        minority_indices,
        positive_is_majority,
    })
}

/// Label used for the merged negative class of a multi-class dataset.
pub const REST_LABEL: &str = "rest";

impl BinaryView {
    /// Two-class copy of `ds` with the view's positive class and everything
    /// else. Two-class datasets keep their declared class order; multi-class
    /// datasets become `[positive, rest]`. Returns the dataset and the index
    /// of the positive class in it.
    pub fn to_binary(&self, ds: &Dataset) -> (Dataset, usize) {
        if ds.classes.len() == 2 {
            return (ds.clone(), self.positive_class);
        }
        let labels = ds
            .labels
            .iter()
            .map(|&l| if l == self.positive_class { 0 } else { 1 })
            .collect();
        let binary = Dataset {
            name: ds.name.clone(),
            attributes: ds.attributes.clone(),
            class_name: ds.class_name.clone(),
            classes: vec![self.positive_label.clone(), REST_LABEL.to_string()],
            rows: ds.rows.clone(),
            labels,
        };
        (binary, 0)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoldPlan {
    pub num_folds: usize,
    pub fold_assignment: Vec<usize>,
    pub seed: u64,
}

impl FoldPlan {
    pub fn test_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_assignment.len())
            .filter(|&i| self.fold_assignment[i] == fold)
            .collect()
    }

    pub fn train_indices(&self, fold: usize) -> Vec<usize> {
        (0..self.fold_assignment.len())
            .filter(|&i| self.fold_assignment[i] != fold)
            .collect()
    }
}

/// Stratified fold assignment. Each class (in declaration order) is shuffled
/// from one shared seeded stream and dealt round-robin, the fold counter
/// carrying over from one class to the next so overall fold sizes also differ
/// by at most one.
pub fn stratified_folds(ds: &Dataset, num_folds: usize, seed: u64) -> Result<FoldPlan> {
    if num_folds < 2 {
        return Err(Error::config("need at least 2 folds"));
    }
    if num_folds > ds.len() {
        return Err(Error::config(format!(
            "{num_folds} folds for {} instances",
            ds.len()
        )));
    }
    let mut rng = Rng::seeded(seed);
    let mut fold_assignment = vec![0; ds.len()];
    let mut counter = 0usize;
    for class in 0..ds.classes.len() {
        let mut members: Vec<usize> = (0..ds.len()).filter(|&i| ds.labels[i] == class).collect();
        rng.shuffle(&mut members);
        for idx in members {
            fold_assignment[idx] = counter % num_folds;
            counter += 1;
        }
    }
    Ok(FoldPlan {
        num_folds,
        fold_assignment,
        seed,
    })
}

// ---------------------------------------------------------------------------
// KEEL .dat

enum Declared {
    Numeric(Option<(f64, f64)>),
    Categorical(Vec<String>),
}

struct RawAttribute {
    name: String,
    decl: Declared,
}

fn is_missing(token: &str) -> bool {
    token == "?" || token.eq_ignore_ascii_case("<null>")
}

fn parse_number(token: &str) -> Option<f64> {
    token.parse::<f64>().ok().filter(|v| v.is_finite())
}

/// Splits `@attribute` content into the attribute name and the remainder.
fn split_name(rest: &str, line: usize) -> Result<(String, &str)> {
    let rest = rest.trim_start();
    if let Some(stripped) = rest.strip_prefix('\'').or_else(|| rest.strip_prefix('"')) {
        let quote = rest.as_bytes()[0] as char;
        let end = stripped
            .find(quote)
            .ok_or_else(|| Error::parse(line, "unterminated quoted attribute name"))?;
        return Ok((stripped[..end].to_string(), &stripped[end + 1..]));
    }
    let end = rest
        .find(|c: char| c.is_whitespace() || c == '{' || c == '[')
        .unwrap_or(rest.len());
    if end == 0 {
        return Err(Error::parse(line, "missing attribute name"));
    }
    Ok((rest[..end].to_string(), &rest[end..]))
}

fn parse_attribute(rest: &str, line: usize) -> Result<RawAttribute> {
    let (name, decl) = split_name(rest, line)?;
    let decl = decl.trim();
    if let Some(body) = decl.strip_prefix('{') {
        let body = body
            .strip_suffix('}')
            .ok_or_else(|| Error::parse(line, "category list is missing `}`"))?;
        let categories: Vec<String> = body
            .split(',')
            .map(|c| c.trim().to_string())
            .filter(|c| !c.is_empty())
            .collect();
        if categories.is_empty() {
            return Err(Error::parse(
                line,
                format!("attribute `{name}` has no categories"),
            ));
        }
        return Ok(RawAttribute {
            name,
            decl: Declared::Categorical(categories),
        });
    }
    let type_end = decl
        .find(|c: char| c.is_whitespace() || c == '[')
        .unwrap_or(decl.len());
    let type_name = decl[..type_end].to_ascii_lowercase();
    if !matches!(type_name.as_str(), "real" | "integer" | "numeric") {
        return Err(Error::parse(
            line,
            format!(
                "attribute `{name}` has unknown type `{}`",
                &decl[..type_end]
            ),
        ));
    }
    let range_text = decl[type_end..].trim();
    let range = if range_text.is_empty() {
        None
    } else {
        let inner = range_text
            .strip_prefix('[')
            .and_then(|r| r.strip_suffix(']'))
            .ok_or_else(|| Error::parse(line, format!("malformed range `{range_text}`")))?;
        let mut bounds = inner.split(',').map(str::trim);
        let (lo, hi) = match (bounds.next(), bounds.next(), bounds.next()) {
            (Some(lo), Some(hi), None) => (lo, hi),
            _ => {
                return Err(Error::parse(
                    line,
                    format!("malformed range `{range_text}`"),
                ))
            }
        };
        let lo = parse_number(lo).ok_or_else(|| Error::parse(line, format!("bad bound `{lo}`")))?;
        let hi = parse_number(hi).ok_or_else(|| Error::parse(line, format!("bad bound `{hi}`")))?;
        Some((lo, hi))
    };
    Ok(RawAttribute {
        name,
        decl: Declared::Numeric(range),
    })
}

fn name_list(rest: &str) -> Vec<String> {
    rest.split(',')
        .map(|n| n.trim().trim_matches('\'').trim_matches('"').to_string())
        .filter(|n| !n.is_empty())
        .collect()
}

/// Parses a KEEL `.dat` file. The `@outputs` attribute (or the last declared
/// attribute) is the class and must be categorical; `@inputs`, when present,
/// selects the features. Keywords are case-insensitive. Missing values (`?`)
/// are rejected; values outside a declared numeric range are accepted with a
/// warning.
pub fn parse_keel(mut source: impl Read) -> Result<Dataset> {
    let mut text = String::new();
    source.read_to_string(&mut text)?;

    let mut relation: Option<String> = None;
    let mut raw: Vec<RawAttribute> = Vec::new();
    let mut inputs: Option<Vec<String>> = None;
    let mut outputs: Option<Vec<String>> = None;
    let mut data_start = None;

    let mut lines = text.lines().enumerate();
    for (i, line) in lines.by_ref() {
        let number = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let Some(body) = line.strip_prefix('@') else {
            return Err(Error::parse(
                number,
                format!("expected a header line, found `{line}`"),
            ));
        };
        let kw_end = body.find(char::is_whitespace).unwrap_or(body.len());
        let keyword = body[..kw_end].to_ascii_lowercase();
        let rest = body[kw_end..].trim();
        match keyword.as_str() {
            "relation" => relation = Some(rest.trim_matches('\'').to_string()),
            "attribute" => raw.push(parse_attribute(rest, number)?),
            "inputs" | "input" => inputs = Some(name_list(rest)),
            "outputs" | "output" => outputs = Some(name_list(rest)),
            "data" => {
                data_start = Some(number);
                break;
            }
            _ => {
                return Err(Error::parse(
                    number,
                    format!("unknown header keyword `@{keyword}`"),
                ))
            }
        }
    }
    let data_line =
        data_start.ok_or_else(|| Error::parse(text.lines().count(), "missing @data"))?;
    if raw.is_empty() {
        return Err(Error::parse(data_line, "no @attribute declarations"));
    }

    let find = |name: &str| -> Result<usize> {
        raw.iter()
            .position(|a| a.name == name)
            .ok_or_else(|| Error::parse(data_line, format!("unknown attribute `{name}` in header")))
    };
    let output = match &outputs {
        Some(names) if names.len() == 1 => find(&names[0])?,
        Some(_) => {
            return Err(Error::parse(
                data_line,
                "exactly one @outputs attribute is supported",
            ))
        }
        None => raw.len() - 1,
    };
    let classes = match &raw[output].decl {
        Declared::Categorical(c) => c.clone(),
        Declared::Numeric(_) => {
            return Err(Error::parse(
                data_line,
                format!(
                    "output attribute `{}` must be categorical",
                    raw[output].name
                ),
            ))
        }
    };
    let features: Vec<usize> = match &inputs {
        Some(names) => {
            let mut idx = names.iter().map(|n| find(n)).collect::<Result<Vec<_>>>()?;
            idx.sort_unstable();
            idx.dedup();
            idx.retain(|&i| i != output);
            idx
        }
        None => (0..raw.len()).filter(|&i| i != output).collect(),
    };

    let mut rows = Vec::new();
    let mut labels = Vec::new();
    let mut out_of_range = vec![0usize; raw.len()];
    for (i, line) in lines {
        let number = i + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        let tokens: Vec<&str> = line.split(',').map(str::trim).collect();
        if tokens.len() != raw.len() {
            return Err(Error::parse(
                number,
                format!("expected {} values, found {}", raw.len(), tokens.len()),
            ));
        }
        let mut values = vec![0.0; raw.len()];
        for (j, (token, attr)) in tokens.iter().zip(&raw).enumerate() {
            if is_missing(token) {
                return Err(Error::parse(
                    number,
                    format!("missing value for `{}` is not supported", attr.name),
                ));
            }
            values[j] = match &attr.decl {
                Declared::Numeric(range) => {
                    let v = parse_number(token).ok_or_else(|| {
                        Error::parse(number, format!("`{token}` is not numeric ({})", attr.name))
                    })?;
                    if let Some((lo, hi)) = range {
                        if v < *lo || v > *hi {
                            out_of_range[j] += 1;
                        }
                    }
                    v
                }
                Declared::Categorical(categories) => {
                    categories.iter().position(|c| c == token).ok_or_else(|| {
                        Error::parse(
                            number,
                            format!("unknown category `{token}` for `{}`", attr.name),
                        )
                    })? as f64
                }
            };
        }
        labels.push(values[output] as usize);
        rows.push(features.iter().map(|&f| values[f]).collect::<Vec<_>>());
    }
    if rows.is_empty() {
        return Err(Error::parse(data_line, "no data rows"));
    }
    for (count, attr) in out_of_range.iter().zip(&raw) {
        if *count > 0 {
            log::warn!(
                "{count} values of `{}` fall outside its declared range",
                attr.name
            );
        }
    }

    let attributes = features
        .iter()
        .map(|&f| {
            let attr = &raw[f];
            let kind = match &attr.decl {
                Declared::Numeric(range) => AttributeKind::Numeric { range: *range },
                Declared::Categorical(c) => AttributeKind::Categorical {
                    categories: c.clone(),
                },
            };
            Attribute {
                name: attr.name.clone(),
                kind,
            }
        })
        .collect();
    Dataset::new(
        relation.unwrap_or_else(|| "unnamed".to_string()),
        attributes,
        raw[output].name.clone(),
        classes,
        rows,
        labels,
    )
    .map_err(|e| Error::parse(data_line, e.to_string()))
}

// ---------------------------------------------------------------------------
// Delimited text

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LabelColumn {
    Index(usize),
    Last,
}

/// Parses delimited text. Columns whose tokens all parse as numbers are
/// numeric, anything else is categorical with categories in order of first
/// appearance. The first row is taken as a header when none of its tokens is
/// numeric while some column is numeric in every other row.
pub fn parse_delimited(
    source: impl Read,
    delimiter: u8,
    label_column: LabelColumn,
    name: &str,
) -> Result<Dataset> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .delimiter(delimiter)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(source);
    let mut records: Vec<Vec<String>> = Vec::new();
    let mut width = None;
    for record in reader.records() {
        let record = record.map_err(|e| {
            let line = e.position().map(|p| p.line() as usize).unwrap_or(0);
            Error::parse(line, e.to_string())
        })?;
        let line = record
            .position()
            .map(|p| p.line() as usize)
            .unwrap_or(records.len() + 1);
        if record.iter().all(str::is_empty) {
            continue;
        }
        let fields: Vec<String> = record.iter().map(str::to_string).collect();
        match width {
            None => width = Some(fields.len()),
            Some(w) if w != fields.len() => {
                return Err(Error::parse(
                    line,
                    format!("expected {w} fields, found {}", fields.len()),
                ))
            }
            _ => {}
        }
        records.push(fields);
    }
    let width = width.ok_or_else(|| Error::parse(1, "empty input"))?;
    if width < 2 {
        return Err(Error::parse(
            1,
            "need at least one feature column and a label column",
        ));
    }
    let label = match label_column {
        LabelColumn::Last => width - 1,
        LabelColumn::Index(i) if i < width => i,
        LabelColumn::Index(i) => {
            return Err(Error::config(format!(
                "label column {i} out of range for {width} columns"
            )))
        }
    };

    let numeric = |s: &str| parse_number(s).is_some();
    let has_header = records.len() > 1
        && records[0].iter().all(|t| !numeric(t))
        && (0..width).any(|c| records[1..].iter().all(|r| numeric(&r[c])));
    let (names, body): (Vec<String>, &[Vec<String>]) = if has_header {
        (records[0].clone(), &records[1..])
    } else {
        (
            (0..width).map(|c| format!("attr{c}")).collect(),
            &records[..],
        )
    };
    if body.is_empty() {
        return Err(Error::parse(1, "no data rows"));
    }

    let mut attributes = Vec::new();
    let mut columns: Vec<Vec<f64>> = Vec::new();
    for c in (0..width).filter(|&c| c != label) {
        if body.iter().all(|r| numeric(&r[c])) {
            attributes.push(Attribute::numeric(names[c].clone()));
            columns.push(body.iter().map(|r| parse_number(&r[c]).unwrap()).collect());
        } else {
            let (categories, codes) = categorize(body.iter().map(|r| r[c].as_str()));
            attributes.push(Attribute::categorical(names[c].clone(), categories));
            columns.push(codes.into_iter().map(|x| x as f64).collect());
        }
    }
    let (classes, labels) = categorize(body.iter().map(|r| r[label].as_str()));
    let rows = (0..body.len())
        .map(|i| columns.iter().map(|col| col[i]).collect())
        .collect();
    Dataset::new(
        name,
        attributes,
        names[label].clone(),
        classes,
        rows,
        labels,
    )
}

fn categorize<'a>(tokens: impl Iterator<Item = &'a str>) -> (Vec<String>, Vec<usize>) {
    let mut categories: Vec<String> = Vec::new();
    let codes = tokens
        .map(|t| match categories.iter().position(|c| c == t) {
            Some(i) => i,
            None => {
                categories.push(t.to_string());
                categories.len() - 1
            }
        })
        .collect();
    (categories, codes)
}

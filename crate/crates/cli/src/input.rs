//! Input formats: distribution JSON, sample CSV and generator specs.

use std::cmp::Ordering;
use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context, Result};
use hoinfo::{
    estimate_from_samples, BuildOptions, EstimatorConfig, GeneratorSpec, JointDistribution,
};
use serde::{Deserialize, Serialize};

/// `{"cardinalities": [...], "entries": [{"state": [...], "p": ...}, ...]}`
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionFile {
    pub cardinalities: Vec<usize>,
    pub entries: Vec<DistributionEntry>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DistributionEntry {
    pub state: Vec<usize>,
    pub p: f64,
}

impl DistributionFile {
    /// Lists the non-zero states only.
    pub fn from_distribution(dist: &JointDistribution) -> Self {
        DistributionFile {
            cardinalities: dist.cardinalities().to_vec(),
            entries: dist
                .support()
                .into_iter()
                .map(|(state, p)| DistributionEntry { state, p })
                .collect(),
        }
    }

    pub fn build(
        &self,
        config: &EstimatorConfig,
        renormalize: bool,
    ) -> hoinfo::Result<JointDistribution> {
        JointDistribution::build(
            &self.cardinalities,
            self.entries.iter().map(|e| (e.state.as_slice(), e.p)),
            config,
            BuildOptions {
                renormalize,
                ..Default::default()
            },
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum InputFormat {
    #[default]
    Auto,
    DistJson,
    SamplesCsv,
}

/// A CSV cell: integers sort numerically and before any text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Symbol {
    Int(i64),
    Text(String),
}

impl Symbol {
    fn parse(raw: &str) -> Self {
        let raw = raw.trim();
        raw.parse()
            .map(Symbol::Int)
            .unwrap_or_else(|_| Symbol::Text(raw.to_string()))
    }
}

impl Ord for Symbol {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Symbol::Int(a), Symbol::Int(b)) => a.cmp(b),
            (Symbol::Int(_), Symbol::Text(_)) => Ordering::Less,
            (Symbol::Text(_), Symbol::Int(_)) => Ordering::Greater,
            (Symbol::Text(a), Symbol::Text(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Symbol {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Symbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Symbol::Int(i) => write!(f, "{i}"),
            Symbol::Text(s) => f.write_str(s),
        }
    }
}

/// Symbol-to-index mapping inferred from sample data.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleMapping {
    pub variables: Vec<String>,
    /// `alphabets[i][j]` is the symbol mapped to index `j` of variable `i`.
    pub alphabets: Vec<Vec<String>>,
    pub n_rows: usize,
}

/// A loaded input and where it came from.
#[derive(Debug, Clone)]
pub struct LoadedInput {
    pub descriptor: String,
    pub distribution: JointDistribution,
    pub samples: Option<SampleMapping>,
}

fn detect(path: &Path, text: &str) -> InputFormat {
    match path
        .extension()
        .and_then(|e| e.to_str())
        .map(str::to_ascii_lowercase)
    {
        Some(ext) if ext == "json" => InputFormat::DistJson,
        Some(ext) if ext == "csv" => InputFormat::SamplesCsv,
        _ => {
            if text.trim_start().starts_with('{') {
                InputFormat::DistJson
            } else {
                InputFormat::SamplesCsv
            }
        }
    }
}

pub fn parse_distribution_json(
    text: &str,
    config: &EstimatorConfig,
    renormalize: bool,
) -> Result<JointDistribution> {
    let file: DistributionFile =
        serde_json::from_str(text).context("malformed distribution JSON")?;
    Ok(file.build(config, renormalize)?)
}

pub fn parse_samples_csv(
    text: &str,
    config: &EstimatorConfig,
) -> Result<(JointDistribution, SampleMapping)> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    let variables: Vec<String> = reader
        .headers()
        .context("missing CSV header")?
        .iter()
        .map(|h| h.trim().to_string())
        .collect();
    let mut rows: Vec<Vec<Symbol>> = Vec::new();
    for record in reader.records() {
        let record = record.context("malformed CSV row")?;
        rows.push(record.iter().map(Symbol::parse).collect());
    }
    if let Some((row, r)) = rows
        .iter()
        .enumerate()
        .find(|(_, r)| r.len() != variables.len())
    {
        return Err(hoinfo::Error::RaggedRows {
            row,
            expected: variables.len(),
            found: r.len(),
        }
        .into());
    }
    let estimate = estimate_from_samples(&rows, config)?;
    let mapping = SampleMapping {
        variables,
        alphabets: estimate
            .alphabets
            .iter()
            .map(|a| a.iter().map(Symbol::to_string).collect())
            .collect(),
        n_rows: rows.len(),
    };
    Ok((estimate.distribution, mapping))
}

pub fn load_file(
    path: &Path,
    format: InputFormat,
    config: &EstimatorConfig,
    renormalize: bool,
) -> Result<LoadedInput> {
    let text =
        fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let format = match format {
        InputFormat::Auto => detect(path, &text),
        f => f,
    };
    let descriptor = path.display().to_string();
    match format {
        InputFormat::DistJson => Ok(LoadedInput {
            descriptor,
            distribution: parse_distribution_json(&text, config, renormalize)
                .with_context(|| format!("in {}", path.display()))?,
            samples: None,
        }),
        InputFormat::SamplesCsv => {
            let (distribution, mapping) = parse_samples_csv(&text, config)
                .with_context(|| format!("in {}", path.display()))?;
            Ok(LoadedInput {
                descriptor,
                distribution,
                samples: Some(mapping),
            })
        }
        InputFormat::Auto => unreachable!("resolved above"),
    }
}

pub fn load_generated(spec: &GeneratorSpec, config: &EstimatorConfig) -> Result<LoadedInput> {
    Ok(LoadedInput {
        descriptor: spec.to_string(),
        distribution: spec.generate(config)?,
        samples: None,
    })
}

/// One entry of a batch manifest: a bare path, `{"input": path}` or `{"gen": spec}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ManifestItem {
    Path(PathBuf),
    File {
        input: PathBuf,
        #[serde(default)]
        format: InputFormat,
    },
    Generator {
        gen: GeneratorSpec,
    },
}

impl ManifestItem {
    pub fn describe(&self) -> String {
        match self {
            ManifestItem::Path(p) | ManifestItem::File { input: p, .. } => p.display().to_string(),
            ManifestItem::Generator { gen } => gen.to_string(),
        }
    }

    pub fn load(
        &self,
        base: &Path,
        default_format: InputFormat,
        config: &EstimatorConfig,
        renormalize: bool,
    ) -> Result<LoadedInput> {
        match self {
            ManifestItem::Path(p) => load_file(&base.join(p), default_format, config, renormalize),
            ManifestItem::File { input, format } => {
                let format = if *format == InputFormat::Auto {
                    default_format
                } else {
                    *format
                };
                load_file(&base.join(input), format, config, renormalize)
            }
            ManifestItem::Generator { gen } => load_generated(gen, config),
        }
    }
}

/// A manifest is either a JSON list of items or `{"items": [...]}`.
pub fn parse_manifest(text: &str) -> Result<Vec<ManifestItem>> {
    #[derive(Deserialize)]
    #[serde(untagged)]
    enum Manifest {
        List(Vec<ManifestItem>),
        Object { items: Vec<ManifestItem> },
    }
    match serde_json::from_str::<Manifest>(text).context("malformed batch manifest")? {
        Manifest::List(items) | Manifest::Object { items } => {
            if items.is_empty() {
                bail!("batch manifest has no items");
            }
            Ok(items)
        }
    }
}

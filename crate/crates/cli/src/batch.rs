//! Batch processing with a bounded worker pool and in-order emission.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::mpsc;
use std::thread;

use anyhow::Result;
use hoinfo::EstimatorConfig;
use serde::{Deserialize, Serialize};

use crate::input::{InputFormat, ManifestItem};
use crate::report::{OutputFormat, RunReport};

/// One line of batch output: a report or an error, tagged with the item index.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BatchRecord {
    pub index: usize,
    pub input: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub report: Option<RunReport>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub error: Option<String>,
}

#[derive(Debug, Clone)]
pub struct BatchOptions {
    pub config: EstimatorConfig,
    pub format: InputFormat,
    pub renormalize: bool,
    pub spectrum: bool,
    pub jobs: usize,
    pub output: OutputFormat,
}

fn process(index: usize, item: &ManifestItem, base: &Path, opts: &BatchOptions) -> BatchRecord {
    let result = item
        .load(base, opts.format, &opts.config, opts.renormalize)
        .and_then(|input| Ok(RunReport::compute(input, &opts.config, opts.spectrum)?));
    match result {
        Ok(report) => BatchRecord {
            index,
            input: report.input.clone(),
            report: Some(report),
            error: None,
        },
        Err(e) => BatchRecord {
            index,
            input: item.describe(),
            report: None,
            error: Some(format!("{e:#}")),
        },
    }
}

fn emit<W: Write>(out: &mut W, record: &BatchRecord, output: OutputFormat) -> Result<()> {
    match output {
        OutputFormat::Json => {
            serde_json::to_writer(&mut *out, record)?;
            writeln!(out)?;
        }
        OutputFormat::Csv => {
            let mut w = csv::WriterBuilder::new()
                .has_headers(false)
                .from_writer(&mut *out);
            let index = record.index.to_string();
            if let Some(report) = &record.report {
                for (k, v) in report.rows() {
                    w.write_record([index.as_str(), record.input.as_str(), &k, &v])?;
                }
            }
            if let Some(e) = &record.error {
                w.write_record([index.as_str(), record.input.as_str(), "error", e])?;
            }
            w.flush()?;
        }
    }
    out.flush()?;
    Ok(())
}

/// Processes every item and writes one record per item in manifest order.
/// Returns the number of failed items.
pub fn run_batch<W: Write>(
    items: &[ManifestItem],
    base: &Path,
    opts: &BatchOptions,
    out: &mut W,
) -> Result<usize> {
    if opts.output == OutputFormat::Csv {
        writeln!(out, "index,input,quantity,value")?;
    }
    let jobs = opts.jobs.clamp(1, items.len().max(1));
    let next = AtomicUsize::new(0);
    let (tx, rx) = mpsc::channel::<BatchRecord>();
    let mut failures = 0;

    thread::scope(|scope| -> Result<()> {
        for _ in 0..jobs {
            let tx = tx.clone();
            let next = &next;
            scope.spawn(move || loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(item) = items.get(i) else { break };
                if tx.send(process(i, item, base, opts)).is_err() {
                    break;
                }
            });
        }
        drop(tx);

        let mut pending = BTreeMap::new();
        let mut expected = 0;
        for record in rx {
            pending.insert(record.index, record);
            while let Some(record) = pending.remove(&expected) {
                if record.error.is_some() {
                    failures += 1;
                }
                emit(out, &record, opts.output)?;
                expected += 1;
            }
        }
        Ok(())
    })?;
    Ok(failures)
}

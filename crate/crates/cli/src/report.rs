//! Run reports and their JSON / CSV renderings.

use std::io::Write;

use anyhow::Result;
use hoinfo::measures::EntropyProfile;
use hoinfo::spectrum::spectrum_from_profile;
use hoinfo::{EstimatorConfig, MeasureReport, SpectrumResult};
use serde::{Deserialize, Serialize};

use crate::input::{LoadedInput, SampleMapping};

pub const TOOL_VERSION: &str = concat!("hoinfo ", env!("CARGO_PKG_VERSION"));

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ConfigEcho {
    pub log_base: f64,
    pub normalization_tolerance: f64,
    pub zero_tolerance: f64,
}

impl From<&EstimatorConfig> for ConfigEcho {
    fn from(c: &EstimatorConfig) -> Self {
        ConfigEcho {
            log_base: c.log_base,
            normalization_tolerance: c.normalization_tolerance,
            zero_tolerance: c.zero_tolerance,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub tool_version: String,
    pub input: String,
    pub n_vars: usize,
    pub cardinalities: Vec<usize>,
    pub config: ConfigEcho,
    /// In `config.log_base` units.
    pub measures: MeasureReport,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumResult>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<SampleMapping>,
}

impl RunReport {
    pub fn compute(
        input: LoadedInput,
        config: &EstimatorConfig,
        with_spectrum: bool,
    ) -> hoinfo::Result<Self> {
        let dist = &input.distribution;
        let profile = EntropyProfile::compute(dist)?;
        let factor = config.bits_to_base();
        let spectrum =
            with_spectrum.then(|| spectrum_from_profile(&profile, config).scaled(factor));
        Ok(RunReport {
            tool_version: TOOL_VERSION.to_string(),
            input: input.descriptor,
            n_vars: dist.n_vars(),
            cardinalities: dist.cardinalities().to_vec(),
            config: config.into(),
            measures: profile.report().scaled(factor),
            spectrum,
            samples: input.samples,
        })
    }

    pub fn is_finite(&self) -> bool {
        let m = &self.measures;
        let mut values = vec![
            m.joint_entropy,
            m.total_correlation,
            m.dual_total_correlation,
            m.s_information,
            m.o_information,
        ];
        if let Some(s) = &self.spectrum {
            values.extend(&s.delta);
            values.extend(&s.gamma);
            values.extend(s.delta_crossing);
            values.extend(s.gamma_crossing);
        }
        values.iter().all(|v| v.is_finite())
    }

    /// `(quantity, value)` pairs, one per scalar. Undefined values are empty.
    pub fn rows(&self) -> Vec<(String, String)> {
        let m = &self.measures;
        let mut rows: Vec<(String, String)> = [
            ("joint_entropy", m.joint_entropy),
            ("total_correlation", m.total_correlation),
            ("dual_total_correlation", m.dual_total_correlation),
            ("s_information", m.s_information),
            ("o_information", m.o_information),
        ]
        .iter()
        .map(|(k, v)| (k.to_string(), v.to_string()))
        .collect();
        if let Some(s) = &self.spectrum {
            for (k, v) in s.delta.iter().enumerate() {
                rows.push((format!("delta_{k}"), v.to_string()));
            }
            for (k, v) in s.gamma.iter().enumerate() {
                rows.push((format!("gamma_{k}"), v.to_string()));
            }
            let opt = |v: Option<String>| v.unwrap_or_default();
            rows.push((
                "synergy_order".into(),
                opt(s.synergy_order.map(|v| v.to_string())),
            ));
            rows.push((
                "redundancy_order".into(),
                opt(s.redundancy_order.map(|v| v.to_string())),
            ));
            rows.push((
                "delta_crossing".into(),
                opt(s.delta_crossing.map(|v| v.to_string())),
            ));
            rows.push((
                "gamma_crossing".into(),
                opt(s.gamma_crossing.map(|v| v.to_string())),
            ));
        }
        rows
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutputFormat {
    #[default]
    Json,
    Csv,
}

pub fn write_json<W: Write>(mut out: W, report: &RunReport) -> Result<()> {
    serde_json::to_writer_pretty(&mut out, report)?;
    writeln!(out)?;
    Ok(())
}

pub fn write_csv<W: Write>(out: W, report: &RunReport) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["quantity", "value"])?;
    for (k, v) in report.rows() {
        w.write_record([k, v])?;
    }
    w.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use hoinfo::generators::parity;

    fn report(spectrum: bool) -> RunReport {
        let c = EstimatorConfig::default();
        let input = LoadedInput {
            descriptor: "parity".into(),
            distribution: parity(3, &c).unwrap(),
            samples: None,
        };
        RunReport::compute(input, &c, spectrum).unwrap()
    }

    #[test]
    fn json_round_trip() {
        for spectrum in [false, true] {
            let r = report(spectrum);
            assert!(r.is_finite());
            let text = serde_json::to_string(&r).unwrap();
            let back: RunReport = serde_json::from_str(&text).unwrap();
            assert_eq!(back, r);
        }
    }

    #[test]
    fn csv_rows() {
        let r = report(true);
        let mut buf = Vec::new();
        write_csv(&mut buf, &r).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert!(text.starts_with("quantity,value\n"));
        assert!(text.contains("delta_3,"));
        assert!(text.contains("synergy_order,3\n"));
        assert_eq!(text.lines().count(), 1 + 5 + 4 + 4 + 4);
    }

    #[test]
    fn nat_reports_rescale() {
        let c = EstimatorConfig {
            log_base: std::f64::consts::E,
            ..Default::default()
        };
        let input = LoadedInput {
            descriptor: "parity".into(),
            distribution: parity(3, &c).unwrap(),
            samples: None,
        };
        let r = RunReport::compute(input, &c, true).unwrap();
        let ln2 = std::f64::consts::LN_2;
        assert!((r.measures.total_correlation - ln2).abs() < 1e-12);
        assert!((r.spectrum.unwrap().delta[0] - 3.0 * ln2).abs() < 1e-12);
    }
}

//! Reports produced by jobs and their human, CSV and JSON renderings.

use std::fmt::Write as _;
use std::time::Duration;

use num_traits::ToPrimitive;
use serde_json::{json, Value};

use crate::formulas::FormulaVerdict;
use crate::hk::{HkEstimate, HkSample};
use crate::Rational;

/// Samples for one ring or module, with the estimate drawn from them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SampleTable {
    pub label: String,
    pub dimension: usize,
    pub samples: Vec<HkSample>,
    pub estimate: Option<HkEstimate>,
    /// Wall-clock per sample, only recorded on request since it breaks
    /// byte-identical output.
    pub timings: Option<Vec<Duration>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Provenance {
    pub command: String,
    pub input_hash: String,
    pub order: String,
    pub e_max: Option<u32>,
    pub method: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub provenance: Provenance,
    pub tables: Vec<SampleTable>,
    pub verdicts: Vec<(String, FormulaVerdict)>,
    pub values: Vec<(String, Rational)>,
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(provenance: Provenance) -> Self {
        Report {
            provenance,
            tables: Vec::new(),
            verdicts: Vec::new(),
            values: Vec::new(),
            notes: Vec::new(),
        }
    }

    /// True unless some verdict failed.
    pub fn passed(&self) -> bool {
        self.verdicts.iter().all(|(_, v)| v.pass)
    }

    pub fn table(&self, label: &str) -> Option<&SampleTable> {
        self.tables.iter().find(|t| t.label == label)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Human,
    Csv,
    Json,
}

pub fn render(report: &Report, format: Format) -> String {
    match format {
        Format::Human => render_human(report),
        Format::Csv => render_csv(report),
        Format::Json => render_json(report),
    }
}

fn approx(r: &Rational) -> String {
    match r.to_f64() {
        Some(v) => format!("{v:.6}"),
        None => "?".into(),
    }
}

pub fn render_human(report: &Report) -> String {
    let p = &report.provenance;
    let mut out = String::new();
    let e_max = p.e_max.map_or("-".to_string(), |e| e.to_string());
    let _ = writeln!(
        out,
        "# hklab {}  sha256:{}  order {}  e_max {}  method {}",
        p.command, p.input_hash, p.order, e_max, p.method
    );
    for note in &report.notes {
        let _ = writeln!(out, "{note}");
    }
    for t in &report.tables {
        let _ = writeln!(out, "\n## {} (dim {})", t.label, t.dimension);
        let timed = t.timings.is_some();
        let _ = write!(out, "{:>3} {:>8} {:>12}  {:<20} {:>12}", "e", "q", "length", "normalized", "~decimal");
        if timed {
            let _ = write!(out, " {:>10}", "ms");
        }
        out.push('\n');
        for (i, s) in t.samples.iter().enumerate() {
            let _ = write!(
                out,
                "{:>3} {:>8} {:>12}  {:<20} {:>12}",
                s.e,
                s.q,
                s.length,
                s.normalized.to_string(),
                approx(&s.normalized)
            );
            if let Some(ts) = &t.timings {
                let _ = write!(out, " {:>10.3}", ts[i].as_secs_f64() * 1000.0);
            }
            out.push('\n');
        }
        if let Some(est) = &t.estimate {
            let _ = writeln!(
                out,
                "estimate {} ~ {} ({}, error indicator {})",
                est.value,
                approx(&est.value),
                est.method.name(),
                est.error_indicator
            );
        }
    }
    if !report.values.is_empty() {
        out.push('\n');
        for (label, v) in &report.values {
            let _ = writeln!(out, "{label} = {v} ~ {}", approx(v));
        }
    }
    if !report.verdicts.is_empty() {
        out.push('\n');
        for (label, v) in &report.verdicts {
            let _ = writeln!(
                out,
                "{} {label}: predicted {} estimated {} relative gap {} tolerance {} [{}]",
                if v.pass { "PASS" } else { "FAIL" },
                v.predicted,
                v.estimated.value,
                v.relative_gap,
                v.tolerance,
                v.citation
            );
            if let Some(n) = &v.note {
                let _ = writeln!(out, "  note: {n}");
            }
        }
    }
    out
}

/// One line per sample. Reports with several tables get a leading `table`
/// column.
pub fn render_csv(report: &Report) -> String {
    let multi = report.tables.len() > 1;
    let timed = report.tables.iter().any(|t| t.timings.is_some());
    let mut out = String::new();
    if multi {
        out.push_str("table,");
    }
    out.push_str("e,q,length,normalized_num,normalized_den");
    if timed {
        out.push_str(",ms");
    }
    out.push('\n');
    for t in &report.tables {
        for (i, s) in t.samples.iter().enumerate() {
            if multi {
                let _ = write!(out, "{},", csv_field(&t.label));
            }
            let _ = write!(out, "{},{},{},{},{}", s.e, s.q, s.length, s.normalized.numer(), s.normalized.denom());
            if timed {
                let ms = t.timings.as_ref().map(|ts| ts[i].as_secs_f64() * 1000.0).unwrap_or(0.0);
                let _ = write!(out, ",{ms:.3}");
            }
            out.push('\n');
        }
    }
    out
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn estimate_json(e: &HkEstimate) -> Value {
    json!({
        "value": e.value.to_string(),
        "method": e.method.name(),
        "error_indicator": e.error_indicator.to_string(),
    })
}

pub fn render_json(report: &Report) -> String {
    let p = &report.provenance;
    let tables: Vec<Value> = report
        .tables
        .iter()
        .map(|t| {
            let samples: Vec<Value> = t
                .samples
                .iter()
                .enumerate()
                .map(|(i, s)| {
                    let mut v = json!({
                        "e": s.e,
                        "q": s.q,
                        "length": s.length,
                        "normalized": s.normalized.to_string(),
                    });
                    if let Some(ts) = &t.timings {
                        v["ms"] = json!(ts[i].as_secs_f64() * 1000.0);
                    }
                    v
                })
                .collect();
            json!({
                "label": t.label,
                "dimension": t.dimension,
                "samples": samples,
                "estimate": t.estimate.as_ref().map(estimate_json),
            })
        })
        .collect();
    let verdicts: Vec<Value> = report
        .verdicts
        .iter()
        .map(|(label, v)| {
            json!({
                "label": label,
                "predicted": v.predicted.to_string(),
                "estimate": estimate_json(&v.estimated),
                "absolute_gap": v.absolute_gap.to_string(),
                "relative_gap": v.relative_gap.to_string(),
                "tolerance": v.tolerance.to_string(),
                "pass": v.pass,
                "citation": v.citation,
                "note": v.note,
            })
        })
        .collect();
    let values: Vec<Value> = report
        .values
        .iter()
        .map(|(label, v)| json!({"label": label, "value": v.to_string()}))
        .collect();
    let doc = json!({
        "provenance": {
            "command": p.command,
            "input_hash": p.input_hash,
            "order": p.order,
            "e_max": p.e_max,
            "method": p.method,
        },
        "tables": tables,
        "verdicts": verdicts,
        "values": values,
        "notes": report.notes,
        "pass": report.passed(),
    });
    let mut s = serde_json::to_string_pretty(&doc).expect("json values always serialize");
    s.push('\n');
    s
}

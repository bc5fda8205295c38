use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::score::Bin;
use super::EvalError;
use crate::guesser::Algorithm;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HistogramRow {
    pub bin: Bin,
    pub words: u64,
    pub percent: f64,
}

/// Word counts and percentages for the seven score bins, in bin order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Histogram(pub Vec<HistogramRow>);

impl Histogram {
    pub fn from_counts(counts: [u64; 7]) -> Self {
        let total: u64 = counts.iter().sum();
        Histogram(
            Bin::ALL
                .iter()
                .zip(counts)
                .map(|(&bin, words)| HistogramRow {
                    bin,
                    words,
                    percent: if total == 0 {
                        0.0
                    } else {
                        100.0 * words as f64 / total as f64
                    },
                })
                .collect(),
        )
    }

    fn row(&self, bin: Bin) -> &HistogramRow {
        &self.0[bin.index()]
    }

    pub fn words(&self, bin: Bin) -> u64 {
        self.row(bin).words
    }

    pub fn percent(&self, bin: Bin) -> f64 {
        self.row(bin).percent
    }

    pub fn total(&self) -> u64 {
        self.0.iter().map(|r| r.words).sum()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TagRow {
    pub tag: String,
    pub words: u64,
    pub histogram: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalReport {
    pub algorithm: Algorithm,
    pub total: u64,
    pub histogram: Histogram,
    /// Rows ordered by descending word count, then tag.
    pub per_tag: Vec<TagRow>,
    /// Words whose candidate list was empty.
    pub unmatched_words: Vec<String>,
    /// Exact fractional scores (`"1/4"`) and how many pairs received each.
    pub partial_scores: BTreeMap<String, u64>,
}

impl EvalReport {
    pub fn summary_line(&self) -> String {
        format!("bin-1: {:.2}%", self.histogram.percent(Bin::One))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Text,
    Csv,
    Json,
}

impl FromStr for ReportFormat {
    type Err = EvalError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "text" | "table" | "table-text" => Ok(ReportFormat::Text),
            "csv" => Ok(ReportFormat::Csv),
            "json" => Ok(ReportFormat::Json),
            other => Err(EvalError::UnknownFormat(other.to_string())),
        }
    }
}

pub const CSV_HEADER: &str = "tag,words,b0,b01,b02,b03,b04,b05,b1";

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn percent_cells(h: &Histogram, sep: &str, width: usize) -> String {
    h.0.iter()
        .map(|r| format!("{:>width$}", format!("{:.2}", r.percent)))
        .collect::<Vec<_>>()
        .join(sep)
}

pub fn emit_report(report: &EvalReport, format: ReportFormat) -> String {
    match format {
        ReportFormat::Json => {
            let mut s = serde_json::to_string_pretty(report).expect("report is serializable");
            s.push('\n');
            s
        }
        ReportFormat::Csv => {
            let mut out = String::new();
            out.push_str(CSV_HEADER);
            out.push('\n');
            for row in &report.per_tag {
                let _ = writeln!(
                    out,
                    "{},{},{}",
                    csv_field(&row.tag),
                    row.words,
                    percent_cells(&row.histogram, ",", 0)
                );
            }
            let _ = writeln!(out, "*,{},{}", report.total, percent_cells(&report.histogram, ",", 0));
            out
        }
        ReportFormat::Text => {
            let tag_width = report
                .per_tag
                .iter()
                .map(|r| r.tag.chars().count())
                .chain([5])
                .max()
                .unwrap_or(5);
            let mut out = String::new();
            let _ = writeln!(
                out,
                "{} ({}), {} pairs evaluated",
                report.algorithm.display_name(),
                report.algorithm,
                report.total
            );
            let bins: Vec<String> = Bin::ALL.iter().map(|b| format!("{:>6}", b.label())).collect();
            let _ = writeln!(out, "{:<tag_width$}  {:>8}  {}", "Tag", "Words", bins.join(" "));
            for row in &report.per_tag {
                let tag = if row.tag.is_empty() { "{}" } else { row.tag.as_str() };
                let pad = tag_width + tag.len() - tag.chars().count();
                let _ = writeln!(
                    out,
                    "{:<pad$}  {:>8}  {}",
                    tag,
                    row.words,
                    percent_cells(&row.histogram, " ", 6)
                );
            }
            let _ = writeln!(
                out,
                "{:<tag_width$}  {:>8}  {}",
                "Total",
                report.total,
                percent_cells(&report.histogram, " ", 6)
            );
            if !report.unmatched_words.is_empty() {
                let _ = writeln!(out, "no suffix match: {}", report.unmatched_words.join(", "));
            }
            out
        }
    }
}

pub fn parse_json_report(s: &str) -> Result<EvalReport, serde_json::Error> {
    serde_json::from_str(s)
}

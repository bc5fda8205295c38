//! Scoring, leave-one-out evaluation, reports and the error transition graph.

mod graph;
mod loo;
mod report;
mod score;

use thiserror::Error;

use crate::guesser::Algorithm;

pub use graph::{build_error_graph, emit_dot, ErrorGraph, GraphEdge, GraphNode};
pub use loo::{aggregate, leave_one_out_eval, leave_one_out_outcomes, EvalLexicon, PairOutcome};
pub use report::{
    emit_report, parse_json_report, EvalReport, Histogram, HistogramRow, ReportFormat, TagRow, CSV_HEADER,
};
pub use score::{eval_score, Bin, EvalScore};

#[derive(Debug, Error)]
pub enum EvalError {
    #[error("cannot evaluate an empty lexicon")]
    EmptyLexicon,
    #[error("algorithm {0} does not apply to this lexicon")]
    AlgorithmMismatch(Algorithm),
    #[error("unknown report format {0:?} (expected text, csv or json)")]
    UnknownFormat(String),
}

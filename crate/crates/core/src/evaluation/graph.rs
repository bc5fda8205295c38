//! Part-of-speech error transition graph and its Graphviz rendering.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use super::loo::{leave_one_out_outcomes, EvalLexicon, PairOutcome};
use super::score::EvalScore;
use super::EvalError;
use crate::guesser::Algorithm;
use crate::lexicon::PosLexicon;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphNode {
    pub tag: String,
    /// Lexicon pairs carrying this tag.
    pub total: u64,
    /// Pairs of this tag whose candidate list was empty.
    pub unmatched: u64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphEdge {
    pub from: String,
    pub to: String,
    pub count: u64,
    pub pct_of_source: f64,
    pub pct_of_target: f64,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ErrorGraph {
    /// Sorted by tag.
    pub nodes: Vec<GraphNode>,
    /// Sorted by `(from, to)`.
    pub edges: Vec<GraphEdge>,
}

impl ErrorGraph {
    pub fn edge(&self, from: &str, to: &str) -> Option<&GraphEdge> {
        self.edges.iter().find(|e| e.from == from && e.to == to)
    }

    /// Builds the graph from already scored pairs.
    pub fn from_outcomes(outcomes: &[PairOutcome]) -> Self {
        let mut nodes: BTreeMap<&str, GraphNode> = BTreeMap::new();
        let mut edges: BTreeMap<(&str, &str), u64> = BTreeMap::new();
        for o in outcomes {
            let node = nodes.entry(o.tag.as_str()).or_insert_with(|| GraphNode {
                tag: o.tag.clone(),
                total: 0,
                unmatched: 0,
            });
            node.total += 1;
            if o.score == EvalScore::ONE {
                continue;
            }
            match o.candidates.top() {
                None => node.unmatched += 1,
                Some(top) => *edges.entry((o.tag.as_str(), top.tag.as_str())).or_insert(0) += 1,
            }
        }
        let pct = |count: u64, tag: &str| {
            let total = nodes.get(tag).map_or(0, |n| n.total);
            if total == 0 {
                0.0
            } else {
                100.0 * count as f64 / total as f64
            }
        };
        let edges = edges
            .iter()
            .map(|(&(from, to), &count)| GraphEdge {
                from: from.to_string(),
                to: to.to_string(),
                count,
                pct_of_source: pct(count, from),
                pct_of_target: pct(count, to),
            })
            .collect();
        ErrorGraph {
            nodes: nodes.into_values().collect(),
            edges,
        }
    }
}

/// Runs POS leave-one-out and attributes every non-1 score with a non-empty
/// candidate list to the edge `correct -> top-ranked candidate`.
pub fn build_error_graph(lexicon: &PosLexicon) -> Result<ErrorGraph, EvalError> {
    let outcomes = leave_one_out_outcomes(EvalLexicon::Pos(lexicon), Algorithm::PosSuffix, None)?;
    Ok(ErrorGraph::from_outcomes(&outcomes))
}

fn escape(s: &str) -> String {
    let mut q = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '"' => q.push_str("\\\""),
            '\\' => q.push_str("\\\\"),
            _ => q.push(c),
        }
    }
    q
}

fn quote(s: &str) -> String {
    format!("\"{}\"", escape(s))
}

pub fn emit_dot(graph: &ErrorGraph) -> String {
    let mut out = String::from("digraph pos_errors {\n");
    out.push_str("    rankdir=TB;\n    node [shape=box];\n");
    for n in &graph.nodes {
        let mut label = format!("{}\\n{}", escape(&n.tag), n.total);
        if n.unmatched > 0 {
            let _ = write!(label, "\\nno match: {}", n.unmatched);
        }
        let _ = writeln!(out, "    {} [label=\"{label}\"];", quote(&n.tag));
    }
    for e in &graph.edges {
        let label = format!("{:.1}% / {} / {:.1}%", e.pct_of_source, e.count, e.pct_of_target);
        let _ = writeln!(
            out,
            "    {} -> {} [label={}, penwidth={:.1}];",
            quote(&e.from),
            quote(&e.to),
            quote(&label),
            1.0 + e.pct_of_source / 10.0
        );
    }
    out.push_str("}\n");
    out
}

//! Print the part-of-speech error graph as Graphviz DOT.
//!
//! cargo run --example error_graph | dot -Tpng > errors.png

use std::path::Path;

use morphguess::evaluation::{build_error_graph, emit_dot};
use morphguess::Dictionary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/error_graph_fixture.tsv");
    let lexicon = Dictionary::from_paths(&[path])?.pos_lexicon()?;
    let graph = build_error_graph(&lexicon)?;
    for e in &graph.edges {
        eprintln!("{} -> {}: {} words", e.from, e.to, e.count);
    }
    print!("{}", emit_dot(&graph));
    Ok(())
}

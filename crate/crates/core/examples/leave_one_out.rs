//! Leave-one-out evaluation of all three guessers on a small dictionary.
//!
//! cargo run --example leave_one_out [-- DICT.tsv...]

use std::path::PathBuf;

use morphguess::evaluation::{emit_report, leave_one_out_eval, EvalLexicon, ReportFormat};
use morphguess::{Algorithm, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut paths: Vec<PathBuf> = std::env::args().skip(1).map(PathBuf::from).collect();
    if paths.is_empty() {
        let data = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("data");
        paths = vec![data.join("karelian_sample.tsv"), data.join("karelian_loanwords.tsv")];
    }
    let dict = Dictionary::from_paths(&paths)?;
    let pos = dict.pos_lexicon()?;
    let gram = dict.gram_lexicon()?;

    for algo in Algorithm::ALL {
        let lexicon = if algo.is_gramset() {
            EvalLexicon::Gram(&gram)
        } else {
            EvalLexicon::Pos(&pos)
        };
        let report = leave_one_out_eval(lexicon, algo, None)?;
        println!("== {} ({})", algo.display_name(), report.summary_line());
        print!("{}", emit_report(&report, ReportFormat::Text));
        println!();
    }
    Ok(())
}

//! Compare suffix and pseudo-ending gramset guesses for Karelian verb forms.
//!
//! cargo run --example gramset_guess

use std::path::Path;

use morphguess::{Algorithm, Dictionary, Guessers};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/huukkua.tsv");
    let dict = Dictionary::from_paths(&[path])?;
    let guessers = Guessers::build(&dict.pos_lexicon()?, &dict.gram_lexicon()?);

    for word in ["čakkuo", "lugetah", "kuččuin"] {
        println!("{word}");
        for algo in [Algorithm::GramSuffix, Algorithm::GramPseudo] {
            let list = guessers.guess(word, algo)?;
            let top = list
                .top()
                .map_or("-".to_string(), |c| format!("{} ({})", c.tag, c.count));
            let suffix = list.matched_suffix.as_deref().unwrap_or("-");
            println!("  {:<16} suffix {suffix:<8} {top}", algo.display_name());
        }
    }
    Ok(())
}

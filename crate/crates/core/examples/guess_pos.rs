//! Guess the part of speech of "kezaman" from a handful of Veps words.
//!
//! cargo run --example guess_pos [-- WORD...]

use std::path::Path;

use morphguess::guesser::guess_pos;
use morphguess::suffix_index::index_pos;
use morphguess::Dictionary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/veps_sample.tsv");
    let lexicon = Dictionary::from_paths(&[path])?.pos_lexicon()?;
    let index = index_pos(&lexicon);

    let mut words: Vec<String> = std::env::args().skip(1).collect();
    if words.is_empty() {
        words = vec!["kezaman".into(), "lugendai".into(), "qqq".into()];
    }
    for word in &words {
        let guess = guess_pos(&index, word)?;
        match &guess.matched_suffix {
            None => println!("{word}: no suffix match"),
            Some(suffix) => {
                let tags: Vec<String> = guess.iter().map(|c| format!("{} ({})", c.tag, c.count)).collect();
                println!("{word}: -{suffix} -> {}", tags.join(", "));
            }
        }
    }
    Ok(())
}

//! Show how paradigm forms split into a pseudo-base and pseudo-endings.
//!
//! cargo run --example pseudo_segments

use std::path::Path;

use morphguess::lexicon::derive_pseudo_segments;
use morphguess::Dictionary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let forms = ["huukkua", "huukuin", "huukutah", "huukkuo"];
    let seg = derive_pseudo_segments(&forms);
    println!("base {:?}", seg.base);
    for (form, ending) in forms.iter().zip(&seg.endings) {
        println!("  {form:<10} -{ending}");
    }

    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/huukkua.tsv");
    let gram = Dictionary::from_paths(&[path])?.gram_lexicon()?;
    println!("\n{} gram entries", gram.len());
    for e in gram.iter() {
        let e = e.to_owned();
        println!(
            "  {:<12} {:<8} -{:<6} {}",
            e.word,
            e.pseudo_base(),
            e.pseudo_ending,
            e.gramset
        );
    }
    Ok(())
}

//! Upload a text, confirm one guess and watch the next guess change.
//!
//! cargo run --example tagging_service

use std::path::Path;

use morphguess::service::TaggingService;
use morphguess::{Algorithm, Dictionary};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/veps_sample.tsv");
    let dict = Dictionary::from_paths(&[path])?;
    let svc = TaggingService::new(dict.pos_lexicon()?, dict.gram_lexicon()?);

    let id = svc.upload_text("demo", "kezaman opendai.")?;
    for t in svc.document(id)?.tokens {
        let c = svc.get_candidates(&t.token_ref, Some(1))?;
        let top = c.pos.top().map_or("-", |c| c.tag.as_str());
        println!("{:<4} {:<8} {:?} top pos {top}", t.token_ref, t.surface, t.status);
    }

    let before = svc.guess("lamaman", Algorithm::PosSuffix, None)?;
    svc.confirm(&format!("{id}:0"), "Noun", "Case=Gen|Number=Sing")?;
    let after = svc.guess("lamaman", Algorithm::PosSuffix, None)?;
    println!(
        "lamaman -{}: Noun {} -> {}",
        after.matched_suffix.as_deref().unwrap_or("-"),
        before.count_of("Noun"),
        after.count_of("Noun")
    );
    print!("{}", svc.export_lexicon());
    Ok(())
}

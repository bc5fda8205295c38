//! Save a suffix index to bytes and load it back.
//!
//! cargo run --example index_snapshot

use std::path::Path;

use morphguess::suffix_index::{index_pos, ReversedTrie};
use morphguess::Dictionary;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("data/karelian_sample.tsv");
    let trie = index_pos(&Dictionary::from_paths(&[path])?.pos_lexicon()?);

    let mut bytes = Vec::new();
    trie.write_snapshot(&mut bytes)?;
    let loaded = ReversedTrie::read_snapshot(bytes.as_slice())?;
    println!("{} pairs, {} bytes", loaded.pair_count(), bytes.len());

    for word in ["kalan", "pagenen", "hyvää"] {
        let a = trie.longest_suffix_query(word)?;
        let b = loaded.longest_suffix_query(word)?;
        assert_eq!(a, b);
        println!("{word}: {:?} {:?}", b.matched_suffix, b.top().map(|c| &c.tag));
    }
    Ok(())
}

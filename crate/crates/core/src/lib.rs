//! Part-of-speech and gramset guessing for unknown words.
//!
//! Words that share a suffix with dictionary words are assumed to share their
//! part of speech and grammatical features. Given a paradigm dictionary the
//! crate builds reversed-suffix indexes, ranks candidate tags for any word,
//! evaluates the guessers with leave-one-out over the dictionary itself, and
//! runs an HTTP service for expert confirmation of guessed tags.
//!
//! ```
//! use morphguess::guesser::guess_pos;
//! use morphguess::lexicon::{PosLexicon, PosTag};
//! use morphguess::suffix_index::index_pos;
//!
//! let lex = PosLexicon::from_pairs([("raman", PosTag::new("Noun").unwrap())]).unwrap();
//! let guess = guess_pos(&index_pos(&lex), "kezaman").unwrap();
//! assert_eq!(guess.matched_suffix.as_deref(), Some("aman"));
//! assert_eq!(guess.top().unwrap().tag, "Noun");
//! ```

pub mod cli;
pub mod evaluation;
pub mod guesser;
pub mod lexicon;
pub mod service;
pub mod suffix_index;

pub use guesser::{Algorithm, GuessRequest, Guessers};
pub use lexicon::{Dictionary, GramLexicon, Gramset, ParadigmEntry, PosLexicon, PosTag};
pub use suffix_index::{Candidate, CandidateList, PseudoEndingTable, ReversedTrie};

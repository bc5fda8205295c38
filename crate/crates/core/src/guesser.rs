//! The three guessing algorithms: POS by suffix, gramset by suffix and
//! gramset by pseudo-ending.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{GramLexicon, PosLexicon};
use crate::suffix_index::{
    index_gram, index_pos, index_pseudo, CandidateList, PseudoEndingTable, QueryError, ReversedTrie,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GuessError {
    #[error("word {0:?} is shorter than two characters")]
    WordTooShort(String),
    #[error("word {0:?} contains whitespace")]
    WhitespaceInWord(String),
    #[error("unknown algorithm {0:?} (expected pos, gram or gram-pseudo)")]
    UnknownAlgorithm(String),
}

impl From<QueryError> for GuessError {
    fn from(e: QueryError) -> Self {
        match e {
            QueryError::WordTooShort(w) => GuessError::WordTooShort(w),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Algorithm {
    #[serde(rename = "pos")]
    PosSuffix,
    #[serde(rename = "gram")]
    GramSuffix,
    #[serde(rename = "gram-pseudo")]
    GramPseudo,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::PosSuffix, Algorithm::GramSuffix, Algorithm::GramPseudo];

    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::PosSuffix => "pos",
            Algorithm::GramSuffix => "gram",
            Algorithm::GramPseudo => "gram-pseudo",
        }
    }

    pub fn display_name(self) -> &'static str {
        match self {
            Algorithm::PosSuffix => "POSGuess",
            Algorithm::GramSuffix => "GramGuess",
            Algorithm::GramPseudo => "GramPseudoGuess",
        }
    }

    pub fn is_gramset(self) -> bool {
        self != Algorithm::PosSuffix
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Algorithm {
    type Err = GuessError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "pos" => Ok(Algorithm::PosSuffix),
            "gram" => Ok(Algorithm::GramSuffix),
            "gram-pseudo" => Ok(Algorithm::GramPseudo),
            other => Err(GuessError::UnknownAlgorithm(other.to_string())),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GuessRequest {
    pub word: String,
    pub algorithm: Algorithm,
    pub top_k: Option<usize>,
}

/// Trims the word and checks it is guessable.
pub fn validate_word(word: &str) -> Result<&str, GuessError> {
    let w = word.trim();
    if w.chars().any(char::is_whitespace) {
        return Err(GuessError::WhitespaceInWord(word.to_string()));
    }
    if w.chars().count() < 2 {
        return Err(GuessError::WordTooShort(word.to_string()));
    }
    Ok(w)
}

pub fn guess_pos(index: &ReversedTrie, word: &str) -> Result<CandidateList, GuessError> {
    Ok(index.longest_suffix_query(validate_word(word)?)?)
}

/// Same search as [`guess_pos`], over words tagged by gramset.
pub fn guess_gramset_suffix(index: &ReversedTrie, word: &str) -> Result<CandidateList, GuessError> {
    Ok(index.longest_suffix_query(validate_word(word)?)?)
}

pub fn guess_gramset_pseudo(table: &PseudoEndingTable, word: &str) -> Result<CandidateList, GuessError> {
    Ok(table.pseudo_ending_query(validate_word(word)?)?)
}

/// All indexes needed to answer any [`GuessRequest`].
#[derive(Debug, Clone, Default)]
pub struct Guessers {
    pub pos: ReversedTrie,
    pub gram: ReversedTrie,
    pub pseudo: PseudoEndingTable,
}

impl Guessers {
    pub fn build(pos: &PosLexicon, gram: &GramLexicon) -> Self {
        Guessers {
            pos: index_pos(pos),
            gram: index_gram(gram),
            pseudo: index_pseudo(gram),
        }
    }

    pub fn guess(&self, word: &str, algorithm: Algorithm) -> Result<CandidateList, GuessError> {
        match algorithm {
            Algorithm::PosSuffix => guess_pos(&self.pos, word),
            Algorithm::GramSuffix => guess_gramset_suffix(&self.gram, word),
            Algorithm::GramPseudo => guess_gramset_pseudo(&self.pseudo, word),
        }
    }

    pub fn answer(&self, req: &GuessRequest) -> Result<CandidateList, GuessError> {
        Ok(self.guess(&req.word, req.algorithm)?.truncated(req.top_k))
    }
}

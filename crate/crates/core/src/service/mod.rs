//! The semi-automatic tagging loop.
//!
//! Texts are tokenized and matched against the dictionary; unknown tokens get
//! ranked candidates on demand. An expert confirmation is journaled and, when
//! the word passes the lexicon constraints, folded into the live lexicons so
//! later guesses see it.
//!
//! Readers work on an immutable [`Snapshot`] behind an `Arc`. Confirmations go
//! through a single writer which builds the next snapshot and swaps it in.

mod http;
mod journal;
mod tokenize;

use std::collections::BTreeMap;
use std::io::{self, BufRead, Write};
use std::sync::{Arc, Mutex, RwLock};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::guesser::{Algorithm, GuessError, Guessers};
use crate::lexicon::{is_indexable, GramLexicon, Gramset, LexiconError, PosLexicon, PosTag};
use crate::suffix_index::CandidateList;

pub use http::{router, serve};
pub use journal::{read_journal, Confirmation};
pub use tokenize::{tokenize, RawToken};

#[derive(Debug, Error)]
pub enum ServiceError {
    #[error("text body is empty")]
    EmptyText,
    #[error("unknown text {0}")]
    UnknownText(u64),
    #[error("unknown token {0:?}")]
    UnknownToken(String),
    #[error("malformed gramset {0:?}")]
    MalformedGramset(String),
    #[error("invalid part of speech {0:?}")]
    InvalidPos(String),
    #[error(transparent)]
    Guess(#[from] GuessError),
    #[error("journal: {0}")]
    Journal(#[from] io::Error),
    #[error("journal line {line}: {reason}")]
    BadJournal { line: usize, reason: String },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum TokenStatus {
    /// Not in the dictionary and too short to guess.
    Unlinked,
    /// Dictionary tags or guesses are available but not verified.
    CandidatesReady,
    Verified,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifiedTag {
    pub pos: PosTag,
    pub gramset: Gramset,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    #[serde(rename = "ref")]
    pub token_ref: String,
    pub surface: String,
    pub sentence: usize,
    pub index: usize,
    pub offset: usize,
    pub status: TokenStatus,
    /// Parts of speech the dictionary lists for this exact surface.
    pub dictionary_pos: Vec<String>,
    /// Gramsets the dictionary lists for this exact surface.
    pub dictionary_gramsets: Vec<String>,
    pub verified: Option<VerifiedTag>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TextDocument {
    pub id: u64,
    pub title: String,
    pub body: String,
    pub tokens: Vec<Token>,
}

/// Candidate lists for one token, one per algorithm.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TokenCandidates {
    pub pos: CandidateList,
    pub gram_suffix: CandidateList,
    pub gram_pseudo: CandidateList,
}

/// Live lexicons and the indexes built over them.
#[derive(Debug, Clone, Default)]
pub struct Snapshot {
    pub pos: PosLexicon,
    pub gram: GramLexicon,
    pub guessers: Guessers,
}

impl Snapshot {
    pub fn new(pos: PosLexicon, gram: GramLexicon) -> Self {
        let guessers = Guessers::build(&pos, &gram);
        Snapshot { pos, gram, guessers }
    }

    /// The snapshot with one more confirmed word. Returns `None` when
    /// nothing changes.
    fn with_confirmation(&self, word: &str, pos: &PosTag, gramset: &Gramset) -> Option<Snapshot> {
        if !is_indexable(word) {
            return None;
        }
        let new_pos = !self.pos.contains(word, pos);
        let new_gram = !self.gram.entries_of(word).any(|e| e.gramset == gramset);
        if !new_pos && !new_gram {
            return None;
        }
        let mut next = self.clone();
        if new_pos {
            next.pos.insert(word, pos.clone());
            next.guessers.pos.insert(word, pos.as_str());
        }
        if new_gram {
            // a confirmed word has no known paradigm, so its pseudo-ending is empty
            next.gram.insert(word, gramset.clone(), "");
            let tag = gramset.to_string();
            next.guessers.gram.insert(word, &tag);
            next.guessers.pseudo.insert("", &tag);
        }
        Some(next)
    }

    pub fn guess(&self, word: &str, algorithm: Algorithm, top_k: Option<usize>) -> Result<CandidateList, GuessError> {
        Ok(self.guessers.guess(word, algorithm)?.truncated(top_k))
    }
}

#[derive(Default)]
struct Documents {
    next_id: u64,
    texts: BTreeMap<u64, TextDocument>,
}

struct Writer {
    journal: Option<Box<dyn Write + Send>>,
    confirmations: Vec<Confirmation>,
}

pub struct TaggingService {
    snapshot: RwLock<Arc<Snapshot>>,
    writer: Mutex<Writer>,
    documents: RwLock<Documents>,
}

fn parse_token_ref(token_ref: &str) -> Option<(u64, usize)> {
    let (doc, pos) = token_ref.split_once(':')?;
    Some((doc.parse().ok()?, pos.parse().ok()?))
}

impl TaggingService {
    pub fn new(pos: PosLexicon, gram: GramLexicon) -> Self {
        Self::from_snapshot(Snapshot::new(pos, gram))
    }

    pub fn from_snapshot(snapshot: Snapshot) -> Self {
        TaggingService {
            snapshot: RwLock::new(Arc::new(snapshot)),
            writer: Mutex::new(Writer {
                journal: None,
                confirmations: Vec::new(),
            }),
            documents: RwLock::new(Documents::default()),
        }
    }

    /// Sends every future confirmation to `journal` as one JSON line.
    pub fn with_journal(self, journal: Box<dyn Write + Send>) -> Self {
        self.writer.lock().unwrap().journal = Some(journal);
        self
    }

    /// Replays a journal over the current lexicons without re-journaling it.
    pub fn replay<R: BufRead>(&self, journal: R) -> Result<usize, ServiceError> {
        let entries = read_journal(journal)?;
        let n = entries.len();
        let mut writer = self.writer.lock().unwrap();
        for c in entries {
            self.apply(&c);
            writer.confirmations.push(c);
        }
        Ok(n)
    }

    fn apply(&self, c: &Confirmation) {
        let current = self.snapshot();
        if let Some(next) = current.with_confirmation(&c.word, &c.pos, &c.gramset) {
            *self.snapshot.write().unwrap() = Arc::new(next);
        }
    }

    pub fn snapshot(&self) -> Arc<Snapshot> {
        self.snapshot.read().unwrap().clone()
    }

    pub fn confirmations(&self) -> Vec<Confirmation> {
        self.writer.lock().unwrap().confirmations.clone()
    }

    pub fn upload_text(&self, title: &str, body: &str) -> Result<u64, ServiceError> {
        if body.trim().is_empty() {
            return Err(ServiceError::EmptyText);
        }
        let snap = self.snapshot();
        let mut docs = self.documents.write().unwrap();
        let id = docs.next_id + 1;
        docs.next_id = id;
        let tokens = tokenize(body)
            .into_iter()
            .enumerate()
            .map(|(i, raw)| {
                let dictionary_pos: Vec<String> = snap.pos.tags_of(raw.surface).iter().map(|p| p.to_string()).collect();
                let dictionary_gramsets: Vec<String> = snap
                    .gram
                    .entries_of(raw.surface)
                    .map(|e| e.gramset.to_string())
                    .collect();
                let guessable = raw.surface.chars().count() >= 2;
                let status = if !dictionary_pos.is_empty() || guessable {
                    TokenStatus::CandidatesReady
                } else {
                    TokenStatus::Unlinked
                };
                Token {
                    token_ref: format!("{id}:{i}"),
                    surface: raw.surface.to_string(),
                    sentence: raw.sentence,
                    index: raw.index,
                    offset: raw.offset,
                    status,
                    dictionary_pos,
                    dictionary_gramsets,
                    verified: None,
                }
            })
            .collect();
        docs.texts.insert(
            id,
            TextDocument {
                id,
                title: title.to_string(),
                body: body.to_string(),
                tokens,
            },
        );
        Ok(id)
    }

    pub fn document(&self, id: u64) -> Result<TextDocument, ServiceError> {
        self.documents
            .read()
            .unwrap()
            .texts
            .get(&id)
            .cloned()
            .ok_or(ServiceError::UnknownText(id))
    }

    pub fn token(&self, token_ref: &str) -> Result<Token, ServiceError> {
        let unknown = || ServiceError::UnknownToken(token_ref.to_string());
        let (doc, i) = parse_token_ref(token_ref).ok_or_else(unknown)?;
        let docs = self.documents.read().unwrap();
        docs.texts
            .get(&doc)
            .and_then(|d| d.tokens.get(i))
            .cloned()
            .ok_or_else(unknown)
    }

    pub fn guess(&self, word: &str, algorithm: Algorithm, top_k: Option<usize>) -> Result<CandidateList, ServiceError> {
        Ok(self.snapshot().guess(word, algorithm, top_k)?)
    }

    pub fn get_candidates(&self, token_ref: &str, top_k: Option<usize>) -> Result<TokenCandidates, ServiceError> {
        let token = self.token(token_ref)?;
        let snap = self.snapshot();
        Ok(TokenCandidates {
            pos: snap.guess(&token.surface, Algorithm::PosSuffix, top_k)?,
            gram_suffix: snap.guess(&token.surface, Algorithm::GramSuffix, top_k)?,
            gram_pseudo: snap.guess(&token.surface, Algorithm::GramPseudo, top_k)?,
        })
    }

    /// Marks the token verified, journals the confirmation and refreshes the
    /// live index. Confirming the same tags twice changes nothing.
    pub fn confirm(&self, token_ref: &str, pos: &str, gramset: &str) -> Result<Token, ServiceError> {
        let pos = PosTag::new(pos).map_err(|_| ServiceError::InvalidPos(pos.to_string()))?;
        let gramset = Gramset::parse(gramset).map_err(|e| match e {
            LexiconError::MalformedGramset(g) => ServiceError::MalformedGramset(g),
            _ => ServiceError::MalformedGramset(gramset.to_string()),
        })?;
        let token = self.token(token_ref)?;
        let tag = VerifiedTag { pos, gramset };

        let mut writer = self.writer.lock().unwrap();
        if token.verified.as_ref() == Some(&tag) {
            return Ok(token);
        }
        let confirmation = Confirmation::now(&token.surface, tag.pos.clone(), tag.gramset.clone(), Some(token_ref));
        if let Some(journal) = writer.journal.as_mut() {
            confirmation.write_line(journal)?;
            journal.flush()?;
        }
        self.apply(&confirmation);
        writer.confirmations.push(confirmation);

        let (doc, i) = parse_token_ref(token_ref).expect("token was resolved above");
        let mut docs = self.documents.write().unwrap();
        let t = &mut docs.texts.get_mut(&doc).expect("document exists").tokens[i];
        t.status = TokenStatus::Verified;
        t.verified = Some(tag);
        Ok(t.clone())
    }

    /// Live `word<TAB>pos` pairs in lexicographic order.
    pub fn export_lexicon(&self) -> String {
        self.snapshot().pos.to_pairs_tsv()
    }

    pub fn pos_pairs(&self) -> usize {
        self.snapshot().pos.len()
    }

    pub fn gram_pairs(&self) -> usize {
        self.snapshot().gram.len()
    }
}

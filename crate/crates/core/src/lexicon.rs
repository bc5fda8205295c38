//! Dictionary ingestion and the two search spaces derived from it.
//!
//! A paradigm dictionary is a TSV stream of `lemma<TAB>pos<TAB>form<TAB>gramset`
//! rows. From it we build:
//!
//! * a [`PosLexicon`]: unique `word -- part of speech` pairs over lemmas and forms;
//! * a [`GramLexicon`]: unique `word -- gramset` pairs over inflected forms and
//!   uninflectable lemmas, each carrying the pseudo-ending of its paradigm.
//!
//! Both spaces drop words of two characters or fewer and words containing
//! whitespace, which removes analytical forms such as "en pagene".

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::fs::File;
use std::io::{self, BufRead, BufReader, Read, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use tracing::warn;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("line {line}: malformed row: {reason}")]
    MalformedRow { line: usize, reason: String },
    #[error("line {line}: empty part-of-speech column")]
    UnknownPos { line: usize },
    #[error("no word survived the lexicon constraints")]
    EmptyLexicon,
    #[error("invalid part-of-speech tag {0:?}")]
    InvalidTag(String),
    #[error("malformed gramset {0:?}")]
    MalformedGramset(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Part-of-speech label such as `Noun` or `Verb`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct PosTag(String);

impl PosTag {
    pub fn new(name: impl Into<String>) -> Result<Self, LexiconError> {
        let name = name.into();
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(LexiconError::InvalidTag(name));
        }
        Ok(PosTag(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl FromStr for PosTag {
    type Err = LexiconError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PosTag::new(s)
    }
}

impl TryFrom<String> for PosTag {
    type Error = LexiconError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        PosTag::new(s)
    }
}

impl From<PosTag> for String {
    fn from(t: PosTag) -> String {
        t.0
    }
}

/// An unordered set of grammatical features.
///
/// The canonical form sorts features and joins them with `|`; the empty set
/// serializes to the empty string.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Gramset(BTreeSet<String>);

impl Gramset {
    pub fn empty() -> Self {
        Gramset::default()
    }

    pub fn parse(s: &str) -> Result<Self, LexiconError> {
        if s.is_empty() {
            return Ok(Gramset::empty());
        }
        let mut features = BTreeSet::new();
        for feature in s.split('|') {
            if feature.is_empty() || feature.contains(['\t', '\n', '\r']) {
                return Err(LexiconError::MalformedGramset(s.to_string()));
            }
            features.insert(feature.to_string());
        }
        Ok(Gramset(features))
    }

    pub fn from_features<I, S>(features: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut set = BTreeSet::new();
        for f in features {
            let f = f.into();
            if f.is_empty() || f.contains(['|', '\t', '\n', '\r']) {
                return Err(LexiconError::MalformedGramset(f));
            }
            set.insert(f);
        }
        Ok(Gramset(set))
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn features(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn canonical(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Gramset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, feature) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            f.write_str(feature)?;
        }
        Ok(())
    }
}

impl FromStr for Gramset {
    type Err = LexiconError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Gramset::parse(s)
    }
}

impl TryFrom<String> for Gramset {
    type Error = LexiconError;
    fn try_from(s: String) -> Result<Self, Self::Error> {
        Gramset::parse(&s)
    }
}

impl From<Gramset> for String {
    fn from(g: Gramset) -> String {
        g.to_string()
    }
}

/// One row of a paradigm dictionary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParadigmEntry {
    pub lemma: String,
    pub pos: PosTag,
    pub form: String,
    pub gramset: Gramset,
}

impl ParadigmEntry {
    /// A lemma without inflected forms (adverbs, prepositions, ...).
    pub fn lemma_only(lemma: impl Into<String>, pos: PosTag) -> Self {
        let lemma = lemma.into();
        ParadigmEntry {
            form: lemma.clone(),
            lemma,
            pos,
            gramset: Gramset::empty(),
        }
    }

    pub fn is_lemma_only(&self) -> bool {
        self.form == self.lemma && self.gramset.is_empty()
    }

    pub fn to_tsv_row(&self) -> String {
        format!("{}\t{}\t{}\t{}", self.lemma, self.pos, self.form, self.gramset)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DictionaryFormat {
    /// `lemma<TAB>pos<TAB>form<TAB>gramset`
    Paradigm,
    /// `word<TAB>pos`
    Pairs,
}

/// Yields `(line_number, line)` for every data row, skipping comments and blank lines.
fn data_lines<R: BufRead>(source: R) -> impl Iterator<Item = Result<(usize, String), LexiconError>> {
    source.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(LexiconError::Io(e))),
        Ok(mut line) => {
            if line.ends_with('\r') {
                line.pop();
            }
            if line.is_empty() || line.starts_with('#') {
                None
            } else {
                Some(Ok((i + 1, line)))
            }
        }
    })
}

fn parse_pos(line: usize, s: &str) -> Result<PosTag, LexiconError> {
    if s.is_empty() {
        return Err(LexiconError::UnknownPos { line });
    }
    PosTag::new(s).map_err(|_| LexiconError::MalformedRow {
        line,
        reason: format!("invalid part of speech {s:?}"),
    })
}

fn split_columns(line_no: usize, line: &str, expected: usize) -> Result<Vec<&str>, LexiconError> {
    let cols: Vec<&str> = line.split('\t').collect();
    if cols.len() != expected {
        return Err(LexiconError::MalformedRow {
            line: line_no,
            reason: format!("expected {expected} tab-separated columns, found {}", cols.len()),
        });
    }
    Ok(cols)
}

/// Parses a paradigm dictionary. No filtering happens here.
pub fn parse_dictionary<R: BufRead>(source: R) -> Result<Vec<ParadigmEntry>, LexiconError> {
    let mut entries = Vec::new();
    for row in data_lines(source) {
        let (line, text) = row?;
        let cols = split_columns(line, &text, 4)?;
        let pos = parse_pos(line, cols[1])?;
        if cols[0].is_empty() || cols[2].is_empty() {
            return Err(LexiconError::MalformedRow {
                line,
                reason: "empty lemma or form".into(),
            });
        }
        let gramset = Gramset::parse(cols[3]).map_err(|_| LexiconError::MalformedRow {
            line,
            reason: format!("malformed gramset {:?}", cols[3]),
        })?;
        entries.push(ParadigmEntry {
            lemma: cols[0].to_string(),
            pos,
            form: cols[2].to_string(),
            gramset,
        });
    }
    Ok(entries)
}

/// Parses a pre-built `word<TAB>pos` search space.
pub fn parse_pairs<R: BufRead>(source: R) -> Result<Vec<(String, PosTag)>, LexiconError> {
    let mut pairs = Vec::new();
    for row in data_lines(source) {
        let (line, text) = row?;
        let cols = split_columns(line, &text, 2)?;
        if cols[0].is_empty() {
            return Err(LexiconError::MalformedRow {
                line,
                reason: "empty word".into(),
            });
        }
        pairs.push((cols[0].to_string(), parse_pos(line, cols[1])?));
    }
    Ok(pairs)
}

/// Everything read from one or more dictionary sources.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    pub entries: Vec<ParadigmEntry>,
    pub pairs: Vec<(String, PosTag)>,
}

impl Dictionary {
    /// Guesses the format from the column count of the first data row.
    pub fn detect_format(text: &str) -> DictionaryFormat {
        let first = text
            .lines()
            .map(|l| l.trim_end_matches('\r'))
            .find(|l| !l.is_empty() && !l.starts_with('#'));
        match first {
            Some(l) if l.split('\t').count() == 2 => DictionaryFormat::Pairs,
            _ => DictionaryFormat::Paradigm,
        }
    }

    pub fn read<R: Read>(&mut self, mut source: R) -> Result<DictionaryFormat, LexiconError> {
        let mut text = String::new();
        source.read_to_string(&mut text)?;
        let format = Self::detect_format(&text);
        match format {
            DictionaryFormat::Paradigm => self.entries.extend(parse_dictionary(text.as_bytes())?),
            DictionaryFormat::Pairs => self.pairs.extend(parse_pairs(text.as_bytes())?),
        }
        Ok(format)
    }

    pub fn load(&mut self, path: impl AsRef<Path>) -> Result<DictionaryFormat, LexiconError> {
        self.read(BufReader::new(File::open(path)?))
    }

    pub fn from_paths<P: AsRef<Path>>(paths: &[P]) -> Result<Self, LexiconError> {
        let mut dict = Dictionary::default();
        for p in paths {
            dict.load(p)?;
        }
        Ok(dict)
    }

    pub fn pos_lexicon(&self) -> Result<PosLexicon, LexiconError> {
        let mut lex = PosLexicon::default();
        lex.extend_from_entries(&self.entries);
        for (word, pos) in &self.pairs {
            lex.insert(word, pos.clone());
        }
        lex.non_empty()
    }

    pub fn gram_lexicon(&self) -> Result<GramLexicon, LexiconError> {
        build_gram_lexicon(&self.entries)
    }
}

/// Words of more than two characters with no whitespace.
pub fn is_indexable(word: &str) -> bool {
    word.chars().count() > 2 && !word.chars().any(char::is_whitespace)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PseudoSegments {
    pub base: String,
    pub endings: Vec<String>,
}

/// Splits paradigm forms into a shared pseudo-base and per-form pseudo-endings.
///
/// The base is the character-wise longest common prefix of all forms.
pub fn derive_pseudo_segments<S: AsRef<str>>(forms: &[S]) -> PseudoSegments {
    let Some(first) = forms.first() else {
        return PseudoSegments {
            base: String::new(),
            endings: Vec::new(),
        };
    };
    let first = first.as_ref();
    // byte length of the common prefix, always on a char boundary of `first`
    let mut prefix_len = first.len();
    for form in &forms[1..] {
        let common: usize = first
            .chars()
            .zip(form.as_ref().chars())
            .take_while(|(a, b)| a == b)
            .map(|(a, _)| a.len_utf8())
            .sum();
        prefix_len = prefix_len.min(common);
    }
    let base = first[..prefix_len].to_string();
    let endings = forms.iter().map(|f| f.as_ref()[prefix_len..].to_string()).collect();
    PseudoSegments { base, endings }
}

/// Unique `word -- part of speech` pairs.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PosLexicon {
    pairs: BTreeSet<(String, PosTag)>,
}

impl PosLexicon {
    pub fn from_entries(entries: &[ParadigmEntry]) -> Result<Self, LexiconError> {
        let mut lex = PosLexicon::default();
        lex.extend_from_entries(entries);
        lex.non_empty()
    }

    pub fn from_pairs<I, S>(pairs: I) -> Result<Self, LexiconError>
    where
        I: IntoIterator<Item = (S, PosTag)>,
        S: AsRef<str>,
    {
        let mut lex = PosLexicon::default();
        for (w, p) in pairs {
            lex.insert(w.as_ref(), p);
        }
        lex.non_empty()
    }

    fn non_empty(self) -> Result<Self, LexiconError> {
        if self.pairs.is_empty() {
            Err(LexiconError::EmptyLexicon)
        } else {
            Ok(self)
        }
    }

    fn extend_from_entries(&mut self, entries: &[ParadigmEntry]) {
        for e in entries {
            self.insert(&e.lemma, e.pos.clone());
            self.insert(&e.form, e.pos.clone());
        }
    }

    /// Adds a pair if the word passes the lexicon constraints.
    /// Returns `true` when the pair is new.
    pub fn insert(&mut self, word: &str, pos: PosTag) -> bool {
        is_indexable(word) && self.pairs.insert((word.to_string(), pos))
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// Pairs in lexicographic `(word, pos)` order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &PosTag)> {
        self.pairs.iter().map(|(w, p)| (w.as_str(), p))
    }

    pub fn contains(&self, word: &str, pos: &PosTag) -> bool {
        self.pairs.contains(&(word.to_string(), pos.clone()))
    }

    pub fn tags_of(&self, word: &str) -> Vec<&PosTag> {
        self.pairs
            .range((word.to_string(), PosTag(String::new()))..)
            .take_while(|(w, _)| w == word)
            .map(|(_, p)| p)
            .collect()
    }

    pub fn contains_word(&self, word: &str) -> bool {
        !self.tags_of(word).is_empty()
    }

    pub fn write_pairs_tsv<W: Write>(&self, mut out: W) -> io::Result<()> {
        for (w, p) in self.iter() {
            writeln!(out, "{w}\t{p}")?;
        }
        Ok(())
    }

    pub fn to_pairs_tsv(&self) -> String {
        let mut buf = Vec::new();
        self.write_pairs_tsv(&mut buf).expect("writing to a Vec");
        String::from_utf8(buf).expect("lexicon words are UTF-8")
    }
}

/// Builds the POS search space from lemmas and forms.
pub fn build_pos_lexicon(entries: &[ParadigmEntry]) -> Result<PosLexicon, LexiconError> {
    PosLexicon::from_entries(entries)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramEntry {
    pub word: String,
    pub gramset: Gramset,
    pub pseudo_ending: String,
}

impl GramEntry {
    pub fn pseudo_base(&self) -> &str {
        &self.word[..self.word.len() - self.pseudo_ending.len()]
    }
}

/// Unique `word -- gramset` pairs with their pseudo-endings.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GramLexicon {
    entries: BTreeMap<(String, Gramset), String>,
}

impl GramLexicon {
    /// Adds a triple unless `(word, gramset)` is already present or the word
    /// fails the lexicon constraints. Returns `true` when inserted.
    ///
    /// # Panics
    /// If `pseudo_ending` is not a suffix of `word`.
    pub fn insert(&mut self, word: &str, gramset: Gramset, pseudo_ending: &str) -> bool {
        assert!(
            word.ends_with(pseudo_ending),
            "{pseudo_ending:?} is not a suffix of {word:?}"
        );
        if !is_indexable(word) {
            return false;
        }
        let key = (word.to_string(), gramset);
        if let Some(existing) = self.entries.get(&key) {
            if existing != pseudo_ending {
                warn!(
                    word,
                    gramset = %key.1,
                    kept = existing.as_str(),
                    dropped = pseudo_ending,
                    "conflicting pseudo-endings for a duplicate word/gramset pair"
                );
            }
            return false;
        }
        self.entries.insert(key, pseudo_ending.to_string());
        true
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in lexicographic `(word, gramset)` order.
    pub fn iter(&self) -> impl Iterator<Item = GramEntryRef<'_>> {
        self.entries.iter().map(|((w, g), e)| GramEntryRef {
            word: w,
            gramset: g,
            pseudo_ending: e,
        })
    }

    pub fn entries_of<'a>(&'a self, word: &'a str) -> impl Iterator<Item = GramEntryRef<'a>> + 'a {
        self.entries
            .range((word.to_string(), Gramset::empty())..)
            .take_while(move |((w, _), _)| w == word)
            .map(|((w, g), e)| GramEntryRef {
                word: w,
                gramset: g,
                pseudo_ending: e,
            })
    }

    pub fn contains_word(&self, word: &str) -> bool {
        self.entries_of(word).next().is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GramEntryRef<'a> {
    pub word: &'a str,
    pub gramset: &'a Gramset,
    pub pseudo_ending: &'a str,
}

impl GramEntryRef<'_> {
    pub fn to_owned(self) -> GramEntry {
        GramEntry {
            word: self.word.to_string(),
            gramset: self.gramset.clone(),
            pseudo_ending: self.pseudo_ending.to_string(),
        }
    }
}

/// Builds the gramset search space.
///
/// Entries are grouped into paradigms by `(lemma, pos)`. The pseudo-base of a
/// paradigm is the common prefix of the lemma and of every form that passes
/// the lexicon constraints. A paradigm made only of lemma-only rows yields the
/// triple `(lemma, {}, "")`.
pub fn build_gram_lexicon(entries: &[ParadigmEntry]) -> Result<GramLexicon, LexiconError> {
    let mut order: Vec<(&str, &PosTag)> = Vec::new();
    let mut groups: HashMap<(&str, &PosTag), Vec<&ParadigmEntry>> = HashMap::new();
    for e in entries {
        let key = (e.lemma.as_str(), &e.pos);
        groups
            .entry(key)
            .or_insert_with(|| {
                order.push(key);
                Vec::new()
            })
            .push(e);
    }

    let mut lex = GramLexicon::default();
    for key in order {
        let rows = &groups[&key];
        let lemma = key.0;
        let inflected: Vec<&ParadigmEntry> = rows.iter().copied().filter(|e| !e.is_lemma_only()).collect();
        if inflected.is_empty() {
            lex.insert(lemma, Gramset::empty(), "");
            continue;
        }
        let kept: Vec<&ParadigmEntry> = inflected.into_iter().filter(|e| is_indexable(&e.form)).collect();
        if kept.is_empty() {
            continue;
        }
        let mut forms: Vec<&str> = Vec::with_capacity(kept.len() + 1);
        if is_indexable(lemma) {
            forms.push(lemma);
        }
        forms.extend(kept.iter().map(|e| e.form.as_str()));
        let base_len = derive_pseudo_segments(&forms).base.len();
        for e in kept {
            lex.insert(&e.form, e.gramset.clone(), &e.form[base_len..]);
        }
    }
    if lex.is_empty() {
        return Err(LexiconError::EmptyLexicon);
    }
    Ok(lex)
}

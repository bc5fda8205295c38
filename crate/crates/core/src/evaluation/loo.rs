//! Leave-one-out evaluation over a lexicon.
//!
//! Each unique `(word, tag)` pair is scored by querying the index as if every
//! pair with the same word string were absent. The exclusion is applied at
//! query time by subtracting the word's own contributions from the counters
//! along the queried path, so one immutable index serves all queries and the
//! queries run in parallel.

use std::collections::BTreeMap;

use rayon::prelude::*;

use super::report::{EvalReport, Histogram, TagRow};
use super::score::{eval_score, EvalScore};
use super::EvalError;
use crate::guesser::Algorithm;
use crate::lexicon::{GramLexicon, PosLexicon};
use crate::suffix_index::{index_gram, index_pos, index_pseudo, CandidateList};

#[derive(Debug, Clone, Copy)]
pub enum EvalLexicon<'a> {
    Pos(&'a PosLexicon),
    Gram(&'a GramLexicon),
}

impl<'a> From<&'a PosLexicon> for EvalLexicon<'a> {
    fn from(l: &'a PosLexicon) -> Self {
        EvalLexicon::Pos(l)
    }
}

impl<'a> From<&'a GramLexicon> for EvalLexicon<'a> {
    fn from(l: &'a GramLexicon) -> Self {
        EvalLexicon::Gram(l)
    }
}

/// Result of scoring one lexicon pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairOutcome {
    pub word: String,
    pub tag: String,
    pub candidates: CandidateList,
    pub score: EvalScore,
}

struct WordGroup<'a> {
    word: &'a str,
    // (tag, pseudo-ending); ending is empty for POS pairs
    items: Vec<(String, &'a str)>,
}

fn group_pairs<'a, I>(pairs: I, limit: Option<usize>) -> Vec<WordGroup<'a>>
where
    I: Iterator<Item = (&'a str, String, &'a str)>,
{
    let mut groups: Vec<WordGroup<'a>> = Vec::new();
    for (word, tag, ending) in pairs.take(limit.unwrap_or(usize::MAX)) {
        match groups.last_mut() {
            Some(g) if g.word == word => g.items.push((tag, ending)),
            _ => groups.push(WordGroup {
                word,
                items: vec![(tag, ending)],
            }),
        }
    }
    groups
}

/// All pairs of a word are in one group because lexicon iteration is sorted
/// by word. With `limit` only the first `limit` pairs are scored, but the
/// exclusion always covers every pair of the queried word.
pub fn leave_one_out_outcomes(
    lexicon: EvalLexicon<'_>,
    algorithm: Algorithm,
    limit: Option<usize>,
) -> Result<Vec<PairOutcome>, EvalError> {
    match (lexicon, algorithm) {
        (EvalLexicon::Pos(lex), Algorithm::PosSuffix) => {
            if lex.is_empty() {
                return Err(EvalError::EmptyLexicon);
            }
            let trie = index_pos(lex);
            let groups = group_pairs(lex.iter().map(|(w, p)| (w, p.to_string(), "")), limit);
            Ok(score_groups(&groups, |word| {
                let excluded: Vec<(&str, &str)> = lex.tags_of(word).into_iter().map(|p| (word, p.as_str())).collect();
                trie.longest_suffix_query_excluding(word, &excluded).unwrap_or_default()
            }))
        }
        (EvalLexicon::Gram(lex), Algorithm::GramSuffix) => {
            if lex.is_empty() {
                return Err(EvalError::EmptyLexicon);
            }
            let trie = index_gram(lex);
            let groups = group_pairs(
                lex.iter().map(|e| (e.word, e.gramset.to_string(), e.pseudo_ending)),
                limit,
            );
            Ok(score_groups(&groups, |word| {
                let tags: Vec<String> = lex.entries_of(word).map(|e| e.gramset.to_string()).collect();
                let excluded: Vec<(&str, &str)> = tags.iter().map(|t| (word, t.as_str())).collect();
                trie.longest_suffix_query_excluding(word, &excluded).unwrap_or_default()
            }))
        }
        (EvalLexicon::Gram(lex), Algorithm::GramPseudo) => {
            if lex.is_empty() {
                return Err(EvalError::EmptyLexicon);
            }
            let table = index_pseudo(lex);
            let groups = group_pairs(
                lex.iter().map(|e| (e.word, e.gramset.to_string(), e.pseudo_ending)),
                limit,
            );
            Ok(score_groups(&groups, |word| {
                let owned: Vec<(String, String)> = lex
                    .entries_of(word)
                    .map(|e| (e.pseudo_ending.to_string(), e.gramset.to_string()))
                    .collect();
                let excluded: Vec<(&str, &str)> = owned.iter().map(|(e, t)| (e.as_str(), t.as_str())).collect();
                table.pseudo_ending_query_excluding(word, &excluded).unwrap_or_default()
            }))
        }
        (_, algorithm) => Err(EvalError::AlgorithmMismatch(algorithm)),
    }
}

fn score_groups<F>(groups: &[WordGroup<'_>], query: F) -> Vec<PairOutcome>
where
    F: Fn(&str) -> CandidateList + Sync,
{
    groups
        .par_iter()
        .flat_map_iter(|g| {
            // lexicon words are at least three characters, so the query cannot fail
            let candidates = query(g.word);
            g.items
                .iter()
                .map(|(tag, _)| PairOutcome {
                    word: g.word.to_string(),
                    tag: tag.clone(),
                    score: eval_score(tag, &candidates),
                    candidates: candidates.clone(),
                })
                .collect::<Vec<_>>()
        })
        .collect()
}

/// Aggregates outcomes into an overall and per-tag histogram.
pub fn aggregate(algorithm: Algorithm, outcomes: &[PairOutcome]) -> EvalReport {
    let mut overall = [0u64; 7];
    let mut per_tag: BTreeMap<&str, [u64; 7]> = BTreeMap::new();
    let mut partial_scores: BTreeMap<String, u64> = BTreeMap::new();
    let mut unmatched = Vec::new();
    for o in outcomes {
        let bin = o.score.bin().index();
        overall[bin] += 1;
        per_tag.entry(o.tag.as_str()).or_default()[bin] += 1;
        if o.score.is_partial() {
            *partial_scores.entry(o.score.to_string()).or_insert(0) += 1;
        }
        if o.candidates.is_empty() && unmatched.last() != Some(&o.word) {
            unmatched.push(o.word.clone());
        }
    }
    let mut rows: Vec<TagRow> = per_tag
        .into_iter()
        .map(|(tag, counts)| TagRow {
            tag: tag.to_string(),
            words: counts.iter().sum(),
            histogram: Histogram::from_counts(counts),
        })
        .collect();
    rows.sort_by(|a, b| b.words.cmp(&a.words).then_with(|| a.tag.cmp(&b.tag)));
    EvalReport {
        algorithm,
        total: outcomes.len() as u64,
        histogram: Histogram::from_counts(overall),
        per_tag: rows,
        unmatched_words: unmatched,
        partial_scores,
    }
}

pub fn leave_one_out_eval(
    lexicon: EvalLexicon<'_>,
    algorithm: Algorithm,
    limit: Option<usize>,
) -> Result<EvalReport, EvalError> {
    let outcomes = leave_one_out_outcomes(lexicon, algorithm, limit)?;
    Ok(aggregate(algorithm, &outcomes))
}

//! Test-only oracles: literal linear-scan transcriptions of the guessing
//! loops and of the scoring function, with no shared code path with the
//! indexed implementation.

#![allow(dead_code)]

pub mod http;

use std::collections::HashMap;

use rand::seq::SliceRandom;
use rand::Rng;

use morphguess::{Gramset, ParadigmEntry, PosTag};

pub type Ranked = (Option<String>, Vec<(String, u64)>);

fn rank(counter: HashMap<String, u64>) -> Vec<(String, u64)> {
    let mut v: Vec<(String, u64)> = counter.into_iter().collect();
    v.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    v
}

/// `z = 2; while z <= len(u) and not found: u_z = substr(u, z); scan W for m/u_z$/`
pub fn naive_suffix_guess(words: &[(String, String)], u: &str) -> Ranked {
    let chars: Vec<char> = u.chars().collect();
    let mut z = 2;
    while z <= chars.len() {
        let u_z: String = chars[z - 1..].iter().collect();
        let mut counter: HashMap<String, u64> = HashMap::new();
        let mut found = false;
        for (w, tag) in words {
            if w.ends_with(&u_z) {
                *counter.entry(tag.clone()).or_insert(0) += 1;
                found = true;
            }
        }
        if found {
            return (Some(u_z), rank(counter));
        }
        z += 1;
    }
    (None, Vec::new())
}

/// Same loop with exact pseudo-ending equality.
pub fn naive_pseudo_guess(entries: &[(String, String, String)], u: &str) -> Ranked {
    let chars: Vec<char> = u.chars().collect();
    let mut z = 2;
    while z <= chars.len() {
        let u_z: String = chars[z - 1..].iter().collect();
        let mut counter: HashMap<String, u64> = HashMap::new();
        let mut found = false;
        for (_, tag, pend) in entries {
            if *pend == u_z {
                *counter.entry(tag.clone()).or_insert(0) += 1;
                found = true;
            }
        }
        if found {
            return (Some(u_z), rank(counter));
        }
        z += 1;
    }
    (None, Vec::new())
}

/// Score in f64 plus the bin label, straight from the case analysis.
pub fn naive_score(correct: &str, ranked: &[(String, u64)]) -> (f64, &'static str) {
    let Some(c1) = ranked.first().map(|r| r.1) else {
        return (0.0, "0");
    };
    let Some(ck) = ranked.iter().find(|r| r.0 == correct).map(|r| r.1) else {
        return (0.0, "0");
    };
    if ck == c1 {
        return (1.0, "1");
    }
    let sum: u64 = ranked.iter().map(|r| r.1).sum();
    let v = ck as f64 / sum as f64;
    // half away from zero; exact ties (k/s = x.x5) are decided in integers
    let tenths = ((ck * 20 + sum) / (sum * 2)).clamp(1, 5);
    (v, ["0", "0.1", "0.2", "0.3", "0.4", "0.5"][tenths as usize])
}

pub fn bin_index(label: &str) -> usize {
    ["0", "0.1", "0.2", "0.3", "0.4", "0.5", "1"]
        .iter()
        .position(|l| *l == label)
        .unwrap()
}

/// Rebuilds the search space without the query word for every pair.
pub fn full_rebuild_histogram(pairs: &[(String, String)]) -> [u64; 7] {
    let mut hist = [0u64; 7];
    for (w, t) in pairs {
        let rest: Vec<(String, String)> = pairs.iter().filter(|p| &p.0 != w).cloned().collect();
        let (_, ranked) = naive_suffix_guess(&rest, w);
        hist[bin_index(naive_score(t, &ranked).1)] += 1;
    }
    hist
}

pub fn full_rebuild_pseudo_histogram(entries: &[(String, String, String)]) -> [u64; 7] {
    let mut hist = [0u64; 7];
    for (w, t, _) in entries {
        let rest: Vec<(String, String, String)> = entries.iter().filter(|e| &e.0 != w).cloned().collect();
        let (_, ranked) = naive_pseudo_guess(&rest, w);
        hist[bin_index(naive_score(t, &ranked).1)] += 1;
    }
    hist
}

pub const TAGS: [&str; 6] = ["Noun", "Verb", "Adjective", "Pronoun", "Numeral", "Adverb"];

pub fn random_alphabet<R: Rng>(rng: &mut R) -> Vec<char> {
    let mut letters: Vec<char> = "aeiouklmnstvdhäöšž".chars().collect();
    letters.shuffle(rng);
    let n = rng.gen_range(3..=12);
    letters.truncate(n);
    letters
}

pub fn random_word<R: Rng>(rng: &mut R, alphabet: &[char], len: std::ops::RangeInclusive<usize>) -> String {
    let n = rng.gen_range(len);
    (0..n).map(|_| *alphabet.choose(rng).unwrap()).collect()
}

/// Up to `max_pairs` unique `(word, tag)` pairs; tag loosely follows the last letter
/// so that suffixes carry signal.
pub fn random_pos_pairs<R: Rng>(rng: &mut R, max_pairs: usize) -> (Vec<char>, Vec<(String, String)>) {
    let alphabet = random_alphabet(rng);
    let target = rng.gen_range(1..=max_pairs);
    let mut set = std::collections::BTreeSet::new();
    for _ in 0..target {
        let w = random_word(rng, &alphabet, 3..=12);
        let last = w.chars().last().unwrap() as usize;
        let tag = if rng.gen_bool(0.7) {
            TAGS[last % TAGS.len()]
        } else {
            TAGS[rng.gen_range(0..TAGS.len())]
        };
        set.insert((w, tag.to_string()));
    }
    (alphabet, set.into_iter().collect())
}

/// Random paradigms: a random base plus endings drawn from a small inventory,
/// each ending tied to a gramset.
pub fn random_paradigms<R: Rng>(rng: &mut R, max_rows: usize) -> (Vec<char>, Vec<ParadigmEntry>) {
    let alphabet = random_alphabet(rng);
    let inventory: Vec<(String, String)> = (0..rng.gen_range(3..=10))
        .map(|i| {
            let e = random_word(rng, &alphabet, 1..=4);
            (
                e,
                format!("Case=C{}|Number={}", i % 5, if i % 2 == 0 { "Sing" } else { "Plur" }),
            )
        })
        .collect();
    let mut rows = Vec::new();
    while rows.len() < max_rows {
        let base = random_word(rng, &alphabet, 2..=7);
        let pos = PosTag::new(TAGS[rng.gen_range(0..TAGS.len())]).unwrap();
        if rng.gen_bool(0.1) {
            rows.push(ParadigmEntry::lemma_only(base, pos));
            continue;
        }
        let nforms = rng.gen_range(1..=inventory.len());
        let mut picked: Vec<&(String, String)> = inventory.iter().collect();
        picked.shuffle(rng);
        for (ending, gram) in picked.into_iter().take(nforms) {
            rows.push(ParadigmEntry {
                lemma: base.clone(),
                pos: pos.clone(),
                form: format!("{base}{ending}"),
                gramset: Gramset::parse(gram).unwrap(),
            });
        }
    }
    rows.truncate(max_rows);
    (alphabet, rows)
}

/// Queries: lexicon words, random strings and mutated lexicon words.
pub fn random_queries<R: Rng>(rng: &mut R, alphabet: &[char], words: &[String], n: usize) -> Vec<String> {
    (0..n)
        .map(|i| match i % 3 {
            0 if !words.is_empty() => words.choose(rng).unwrap().clone(),
            1 if !words.is_empty() => {
                let w = words.choose(rng).unwrap();
                let keep = rng.gen_range(0..w.chars().count());
                let prefix = random_word(rng, alphabet, 1..=4);
                let tail: String = w.chars().skip(keep).collect();
                format!("{prefix}{tail}")
            }
            _ => random_word(rng, alphabet, 2..=12),
        })
        .collect()
}

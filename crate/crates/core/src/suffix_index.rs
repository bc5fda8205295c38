//! Suffix lookup structures.
//!
//! [`ReversedTrie`] answers "which tags do the dictionary words ending in the
//! longest matching suffix of `u` carry, and how often". Every node stores the
//! aggregated tag counters of all indexed words whose suffix equals the node
//! path, so a query walks at most `len(u) - 1` edges.
//!
//! [`PseudoEndingTable`] answers the same question for exact pseudo-ending
//! equality instead of suffix membership.

use std::collections::{BTreeMap, HashMap};
use std::io::{self, Read, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::lexicon::{GramLexicon, PosLexicon};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum QueryError {
    #[error("word {0:?} is shorter than two characters")]
    WordTooShort(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Candidate {
    pub tag: String,
    pub count: u64,
}

/// Tags ranked by how many dictionary words share the matched suffix.
///
/// Counts are non-increasing; equal counts are ordered by ascending tag.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CandidateList {
    pub matched_suffix: Option<String>,
    pub candidates: Vec<Candidate>,
}

impl CandidateList {
    pub fn empty() -> Self {
        CandidateList::default()
    }

    pub fn from_counts<I, S>(matched_suffix: &str, counts: I) -> Self
    where
        I: IntoIterator<Item = (S, u64)>,
        S: Into<String>,
    {
        let mut candidates: Vec<Candidate> = counts
            .into_iter()
            .filter(|(_, c)| *c > 0)
            .map(|(t, count)| Candidate { tag: t.into(), count })
            .collect();
        if candidates.is_empty() {
            return CandidateList::empty();
        }
        candidates.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.tag.cmp(&b.tag)));
        CandidateList {
            matched_suffix: Some(matched_suffix.to_string()),
            candidates,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.candidates.is_empty()
    }

    pub fn len(&self) -> usize {
        self.candidates.len()
    }

    pub fn top(&self) -> Option<&Candidate> {
        self.candidates.first()
    }

    pub fn total(&self) -> u64 {
        self.candidates.iter().map(|c| c.count).sum()
    }

    pub fn count_of(&self, tag: &str) -> u64 {
        self.candidates.iter().find(|c| c.tag == tag).map_or(0, |c| c.count)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Candidate> {
        self.candidates.iter()
    }

    /// Keeps the first `k` candidates.
    pub fn truncated(mut self, k: Option<usize>) -> Self {
        if let Some(k) = k {
            self.candidates.truncate(k);
        }
        self
    }
}

fn check_len(u: &str) -> Result<Vec<char>, QueryError> {
    let chars: Vec<char> = u.chars().collect();
    if chars.len() < 2 {
        return Err(QueryError::WordTooShort(u.to_string()));
    }
    Ok(chars)
}

#[derive(Debug, Clone, Default)]
struct Node {
    children: Vec<(char, u32)>,
    // (tag id, count), sorted by tag id, counts > 0
    counts: Vec<(u32, u32)>,
    total: u64,
}

impl Node {
    fn child(&self, c: char) -> Option<u32> {
        self.children
            .binary_search_by_key(&c, |&(k, _)| k)
            .ok()
            .map(|i| self.children[i].1)
    }

    fn bump(&mut self, tag: u32) {
        match self.counts.binary_search_by_key(&tag, |&(t, _)| t) {
            Ok(i) => self.counts[i].1 += 1,
            Err(i) => self.counts.insert(i, (tag, 1)),
        }
        self.total += 1;
    }

    fn drop_one(&mut self, tag: u32) {
        if let Ok(i) = self.counts.binary_search_by_key(&tag, |&(t, _)| t) {
            self.counts[i].1 -= 1;
            if self.counts[i].1 == 0 {
                self.counts.remove(i);
            }
            self.total -= 1;
        }
    }
}

/// Trie over reversed words with per-node tag counters.
#[derive(Debug, Clone)]
pub struct ReversedTrie {
    tags: Vec<String>,
    tag_ids: HashMap<String, u32>,
    nodes: Vec<Node>,
    // pair multiset, so removals of absent pairs are no-ops
    pairs: HashMap<(String, u32), u32>,
}

impl Default for ReversedTrie {
    fn default() -> Self {
        ReversedTrie {
            tags: Vec::new(),
            tag_ids: HashMap::new(),
            nodes: vec![Node::default()],
            pairs: HashMap::new(),
        }
    }
}

impl ReversedTrie {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_pairs<I, W, T>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (W, T)>,
        W: AsRef<str>,
        T: AsRef<str>,
    {
        let mut trie = ReversedTrie::new();
        for (w, t) in pairs {
            trie.insert(w.as_ref(), t.as_ref());
        }
        trie
    }

    fn tag_id(&mut self, tag: &str) -> u32 {
        if let Some(&id) = self.tag_ids.get(tag) {
            return id;
        }
        let id = self.tags.len() as u32;
        self.tags.push(tag.to_string());
        self.tag_ids.insert(tag.to_string(), id);
        id
    }

    /// Indexes one `(word, tag)` occurrence at every suffix of `word`.
    pub fn insert(&mut self, word: &str, tag: &str) {
        let tag = self.tag_id(tag);
        *self.pairs.entry((word.to_string(), tag)).or_insert(0) += 1;
        let mut node = 0usize;
        self.nodes[0].bump(tag);
        for c in word.chars().rev() {
            let next = match self.nodes[node].child(c) {
                Some(n) => n as usize,
                None => {
                    let id = self.nodes.len();
                    self.nodes.push(Node::default());
                    let children = &mut self.nodes[node].children;
                    let pos = children.partition_point(|&(k, _)| k < c);
                    children.insert(pos, (c, id as u32));
                    id
                }
            };
            node = next;
            self.nodes[node].bump(tag);
        }
    }

    /// Removes one occurrence of `(word, tag)`. Returns `false` if it was not indexed.
    pub fn remove(&mut self, word: &str, tag: &str) -> bool {
        let Some(&tag) = self.tag_ids.get(tag) else {
            return false;
        };
        let key = (word.to_string(), tag);
        match self.pairs.get_mut(&key) {
            Some(n) if *n > 0 => {
                *n -= 1;
                if *n == 0 {
                    self.pairs.remove(&key);
                }
            }
            _ => return false,
        }
        let mut node = 0usize;
        self.nodes[0].drop_one(tag);
        for c in word.chars().rev() {
            node = self.nodes[node].child(c).expect("indexed word has a path") as usize;
            self.nodes[node].drop_one(tag);
        }
        true
    }

    pub fn pair_count(&self) -> u64 {
        self.nodes[0].total
    }

    fn node_at(&self, suffix: &str) -> Option<&Node> {
        let mut node = &self.nodes[0];
        for c in suffix.chars().rev() {
            node = &self.nodes[node.child(c)? as usize];
        }
        Some(node)
    }

    /// Tag counters of words ending in `suffix`. The empty suffix gives the
    /// per-tag totals.
    pub fn counters(&self, suffix: &str) -> BTreeMap<String, u64> {
        self.node_at(suffix)
            .map(|n| {
                n.counts
                    .iter()
                    .map(|&(t, c)| (self.tags[t as usize].clone(), c as u64))
                    .collect()
            })
            .unwrap_or_default()
    }

    /// Longest proper suffix of `u` that ends at least one indexed word.
    pub fn longest_suffix_query(&self, u: &str) -> Result<CandidateList, QueryError> {
        self.longest_suffix_query_excluding(u, &[])
    }

    /// As [`longest_suffix_query`](Self::longest_suffix_query), but as if the
    /// given `(word, tag)` pairs were absent. Every excluded pair must be
    /// indexed, and each must be listed once per indexed occurrence.
    pub fn longest_suffix_query_excluding(
        &self,
        u: &str,
        excluded: &[(&str, &str)],
    ) -> Result<CandidateList, QueryError> {
        let chars = check_len(u)?;
        let n = chars.len();
        let excluded: Vec<(&str, Option<u32>)> = excluded
            .iter()
            .map(|&(w, t)| (w, self.tag_ids.get(t).copied()))
            .collect();

        // path[l - 1] is the node for the suffix of length l
        let mut path = Vec::with_capacity(n - 1);
        let mut node = &self.nodes[0];
        for &c in chars[1..].iter().rev() {
            match node.child(c) {
                Some(id) => {
                    node = &self.nodes[id as usize];
                    path.push(node);
                }
                None => break,
            }
        }

        for (depth, node) in path.iter().enumerate().rev() {
            let suffix: String = chars[n - depth - 1..].iter().collect();
            let mut counts: Vec<(u32, u64)> = node.counts.iter().map(|&(t, c)| (t, c as u64)).collect();
            let mut total = node.total;
            for &(w, t) in &excluded {
                let Some(t) = t else { continue };
                if !w.ends_with(suffix.as_str()) {
                    continue;
                }
                if let Ok(i) = counts.binary_search_by_key(&t, |&(id, _)| id) {
                    if counts[i].1 > 0 {
                        counts[i].1 -= 1;
                        total -= 1;
                    }
                }
            }
            if total > 0 {
                return Ok(CandidateList::from_counts(
                    &suffix,
                    counts.into_iter().map(|(t, c)| (self.tags[t as usize].as_str(), c)),
                ));
            }
        }
        Ok(CandidateList::empty())
    }

    /// Writes a versioned, canonical binary snapshot.
    ///
    /// Identical pair multisets produce identical bytes regardless of the
    /// insertion/removal history.
    pub fn write_snapshot<W: Write>(&self, mut out: W) -> io::Result<()> {
        let mut sorted: Vec<(u32, &str)> = self
            .tags
            .iter()
            .enumerate()
            .filter(|(i, _)| self.nodes[0].counts.iter().any(|&(t, _)| t == *i as u32))
            .map(|(i, t)| (i as u32, t.as_str()))
            .collect();
        sorted.sort_by(|a, b| a.1.cmp(b.1));
        let mut remap = vec![u32::MAX; self.tags.len()];
        for (new, &(old, _)) in sorted.iter().enumerate() {
            remap[old as usize] = new as u32;
        }

        out.write_all(SNAPSHOT_MAGIC)?;
        out.write_all(&SNAPSHOT_VERSION.to_le_bytes())?;
        write_u32(&mut out, sorted.len() as u32)?;
        for (_, tag) in &sorted {
            write_str(&mut out, tag)?;
        }
        let mut pairs: Vec<(&str, &str, u32)> = self
            .pairs
            .iter()
            .map(|((w, t), &n)| (w.as_str(), self.tags[*t as usize].as_str(), n))
            .collect();
        pairs.sort_unstable();
        write_u32(&mut out, pairs.len() as u32)?;
        for (w, t, n) in pairs {
            write_str(&mut out, w)?;
            write_str(&mut out, t)?;
            write_u32(&mut out, n)?;
        }
        self.write_node(&mut out, 0, &remap)
    }

    fn write_node<W: Write>(&self, out: &mut W, id: usize, remap: &[u32]) -> io::Result<()> {
        let node = &self.nodes[id];
        let mut counts: Vec<(u32, u32)> = node.counts.iter().map(|&(t, c)| (remap[t as usize], c)).collect();
        counts.sort_unstable();
        write_u32(out, counts.len() as u32)?;
        for (t, c) in counts {
            write_u32(out, t)?;
            write_u32(out, c)?;
        }
        let live: Vec<(char, u32)> = node
            .children
            .iter()
            .copied()
            .filter(|&(_, n)| self.nodes[n as usize].total > 0)
            .collect();
        write_u32(out, live.len() as u32)?;
        for (c, child) in live {
            write_u32(out, c as u32)?;
            self.write_node(out, child as usize, remap)?;
        }
        Ok(())
    }

    pub fn read_snapshot<R: Read>(mut input: R) -> io::Result<Self> {
        let mut magic = [0u8; 6];
        input.read_exact(&mut magic)?;
        if &magic != SNAPSHOT_MAGIC {
            return Err(invalid("not a suffix index snapshot"));
        }
        let mut ver = [0u8; 2];
        input.read_exact(&mut ver)?;
        if u16::from_le_bytes(ver) != SNAPSHOT_VERSION {
            return Err(invalid("unsupported snapshot version"));
        }
        let mut trie = ReversedTrie::new();
        let ntags = read_u32(&mut input)?;
        for _ in 0..ntags {
            let tag = read_str(&mut input)?;
            trie.tag_id(&tag);
        }
        let npairs = read_u32(&mut input)?;
        for _ in 0..npairs {
            let w = read_str(&mut input)?;
            let t = read_str(&mut input)?;
            let n = read_u32(&mut input)?;
            let id = *trie
                .tag_ids
                .get(&t)
                .ok_or_else(|| invalid("unknown tag in pair table"))?;
            trie.pairs.insert((w, id), n);
        }
        trie.nodes.clear();
        trie.read_node(&mut input, ntags)?;
        Ok(trie)
    }

    fn read_node<R: Read>(&mut self, input: &mut R, ntags: u32) -> io::Result<u32> {
        let id = self.nodes.len() as u32;
        self.nodes.push(Node::default());
        let ncounts = read_u32(input)?;
        let mut counts = Vec::with_capacity(ncounts as usize);
        let mut total = 0u64;
        for _ in 0..ncounts {
            let t = read_u32(input)?;
            let c = read_u32(input)?;
            if t >= ntags {
                return Err(invalid("tag id out of range"));
            }
            total += c as u64;
            counts.push((t, c));
        }
        let nchildren = read_u32(input)?;
        let mut children = Vec::with_capacity(nchildren as usize);
        for _ in 0..nchildren {
            let c = char::from_u32(read_u32(input)?).ok_or_else(|| invalid("bad char"))?;
            let child = self.read_node(input, ntags)?;
            children.push((c, child));
        }
        let node = &mut self.nodes[id as usize];
        node.counts = counts;
        node.total = total;
        node.children = children;
        Ok(id)
    }
}

const SNAPSHOT_MAGIC: &[u8; 6] = b"MGTRIE";
const SNAPSHOT_VERSION: u16 = 1;

fn invalid(msg: &str) -> io::Error {
    io::Error::new(io::ErrorKind::InvalidData, msg.to_string())
}

fn write_u32<W: Write>(out: &mut W, v: u32) -> io::Result<()> {
    out.write_all(&v.to_le_bytes())
}

fn write_str<W: Write>(out: &mut W, s: &str) -> io::Result<()> {
    write_u32(out, s.len() as u32)?;
    out.write_all(s.as_bytes())
}

fn read_u32<R: Read>(input: &mut R) -> io::Result<u32> {
    let mut b = [0u8; 4];
    input.read_exact(&mut b)?;
    Ok(u32::from_le_bytes(b))
}

fn read_str<R: Read>(input: &mut R) -> io::Result<String> {
    let len = read_u32(input)? as usize;
    let mut buf = vec![0u8; len];
    input.read_exact(&mut buf)?;
    String::from_utf8(buf).map_err(|_| invalid("snapshot string is not UTF-8"))
}

pub fn index_pos(lexicon: &PosLexicon) -> ReversedTrie {
    ReversedTrie::from_pairs(lexicon.iter().map(|(w, p)| (w, p.as_str())))
}

/// Indexes the words of a gramset lexicon, tagged by canonical gramset.
pub fn index_gram(lexicon: &GramLexicon) -> ReversedTrie {
    let mut trie = ReversedTrie::new();
    for e in lexicon.iter() {
        trie.insert(e.word, &e.gramset.to_string());
    }
    trie
}

/// Exact pseudo-ending to tag counters.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PseudoEndingTable {
    endings: HashMap<String, BTreeMap<String, u64>>,
    total: u64,
}

impl PseudoEndingTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_gram_lexicon(lexicon: &GramLexicon) -> Self {
        let mut table = PseudoEndingTable::new();
        for e in lexicon.iter() {
            table.insert(e.pseudo_ending, &e.gramset.to_string());
        }
        table
    }

    pub fn insert(&mut self, ending: &str, tag: &str) {
        *self
            .endings
            .entry(ending.to_string())
            .or_default()
            .entry(tag.to_string())
            .or_insert(0) += 1;
        self.total += 1;
    }

    pub fn remove(&mut self, ending: &str, tag: &str) -> bool {
        let Some(counters) = self.endings.get_mut(ending) else {
            return false;
        };
        let Some(c) = counters.get_mut(tag) else {
            return false;
        };
        *c -= 1;
        if *c == 0 {
            counters.remove(tag);
            if counters.is_empty() {
                self.endings.remove(ending);
            }
        }
        self.total -= 1;
        true
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn counters(&self, ending: &str) -> BTreeMap<String, u64> {
        self.endings.get(ending).cloned().unwrap_or_default()
    }

    /// Iterates `(ending, counters)` in arbitrary order.
    pub fn iter(&self) -> impl Iterator<Item = (&str, &BTreeMap<String, u64>)> {
        self.endings.iter().map(|(e, c)| (e.as_str(), c))
    }

    pub fn pseudo_ending_query(&self, u: &str) -> Result<CandidateList, QueryError> {
        self.pseudo_ending_query_excluding(u, &[])
    }

    /// Queries as if the given `(pseudo_ending, tag)` entries were absent.
    pub fn pseudo_ending_query_excluding(
        &self,
        u: &str,
        excluded: &[(&str, &str)],
    ) -> Result<CandidateList, QueryError> {
        let chars = check_len(u)?;
        let mut offset = chars[0].len_utf8();
        for &c in &chars[1..] {
            let suffix = &u[offset..];
            offset += c.len_utf8();
            let Some(counters) = self.endings.get(suffix) else {
                continue;
            };
            let mut counts = counters.clone();
            for &(e, t) in excluded {
                if e == suffix {
                    if let Some(c) = counts.get_mut(t) {
                        *c = c.saturating_sub(1);
                    }
                }
            }
            if counts.values().any(|&c| c > 0) {
                return Ok(CandidateList::from_counts(suffix, counts));
            }
        }
        Ok(CandidateList::empty())
    }
}

/// Builds the pseudo-ending table for a gramset lexicon.
pub fn index_pseudo(lexicon: &GramLexicon) -> PseudoEndingTable {
    PseudoEndingTable::from_gram_lexicon(lexicon)
}

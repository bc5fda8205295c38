//! Append-only confirmation journal, one JSON object per line.

use std::io::{self, BufRead, Write};
use std::time::{SystemTime, UNIX_EPOCH};

use serde::{Deserialize, Serialize};

use super::ServiceError;
use crate::lexicon::{Gramset, PosTag};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Confirmation {
    pub word: String,
    pub pos: PosTag,
    /// Canonical `|`-joined form on the wire.
    pub gramset: Gramset,
    /// Milliseconds since the Unix epoch.
    pub timestamp: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub token: Option<String>,
}

impl Confirmation {
    pub fn now(word: &str, pos: PosTag, gramset: Gramset, token: Option<&str>) -> Self {
        let timestamp = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map(|d| d.as_millis() as u64)
            .unwrap_or(0);
        Confirmation {
            word: word.to_string(),
            pos,
            gramset,
            timestamp,
            token: token.map(str::to_string),
        }
    }

    pub fn write_line<W: Write + ?Sized>(&self, out: &mut W) -> io::Result<()> {
        let line = serde_json::to_string(self).map_err(io::Error::other)?;
        writeln!(out, "{line}")
    }
}

pub fn read_journal<R: BufRead>(input: R) -> Result<Vec<Confirmation>, ServiceError> {
    let mut out = Vec::new();
    for (i, line) in input.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let c = serde_json::from_str(&line).map_err(|e| ServiceError::BadJournal {
            line: i + 1,
            reason: e.to_string(),
        })?;
        out.push(c);
    }
    Ok(out)
}

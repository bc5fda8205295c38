//! Command-line front end.
//!
//! Exit codes: 0 success, 1 parse/IO failure, 2 invalid input, 3 empty
//! candidate list.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufReader, Write};
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;
use tracing::info;

use crate::evaluation::{
    build_error_graph, emit_dot, emit_report, leave_one_out_eval, EvalError, EvalLexicon, ReportFormat,
};
use crate::guesser::{Algorithm, GuessError};
use crate::lexicon::{Dictionary, GramLexicon, LexiconError};
use crate::service::{self, ServiceError, TaggingService};
use crate::suffix_index::CandidateList;

#[derive(Debug, Parser)]
#[command(name = "morphguess", version, about = "Suffix-analogy POS and gramset guessing")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args, Clone)]
pub struct DictArgs {
    /// Dictionary TSV (paradigm or pairs format); repeatable
    #[arg(long = "dict", value_name = "PATH", required = true)]
    pub dict: Vec<PathBuf>,
    #[arg(long, short, global = true)]
    pub verbose: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank candidate tags for one word
    Guess {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long, default_value = "pos")]
        algo: String,
        #[arg(long)]
        word: String,
        #[arg(long = "top-k")]
        top_k: Option<usize>,
    },
    /// Leave-one-out evaluation over the dictionary
    Evaluate {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long, default_value = "pos")]
        algo: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Score only the first N pairs
        #[arg(long)]
        limit: Option<usize>,
    },
    /// Write the POS error transition graph as DOT
    ErrorGraph {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long, default_value = "dot")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the tagging service
    Serve {
        #[command(flatten)]
        dict: DictArgs,
        #[arg(long, default_value = "127.0.0.1:8080")]
        bind: String,
        /// Append-only confirmation journal; replayed at startup if present
        #[arg(long)]
        journal: Option<PathBuf>,
    },
    /// Parse dictionaries and print search-space sizes
    IngestCheck {
        #[command(flatten)]
        dict: DictArgs,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Dictionary { path: String, source: LexiconError },
    #[error(transparent)]
    Lexicon(#[from] LexiconError),
    #[error(transparent)]
    Guess(#[from] GuessError),
    #[error("{0}")]
    InvalidInput(String),
    #[error("no suffix match for {0:?}")]
    NoMatch(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Service(#[from] ServiceError),
}

impl From<EvalError> for CliError {
    fn from(e: EvalError) -> Self {
        match e {
            EvalError::EmptyLexicon => CliError::Lexicon(LexiconError::EmptyLexicon),
            other => CliError::InvalidInput(other.to_string()),
        }
    }
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Guess(_) | CliError::InvalidInput(_) => 2,
            CliError::NoMatch(_) => 3,
            _ => 1,
        }
    }
}

pub fn load_dictionary(paths: &[PathBuf]) -> Result<Dictionary, CliError> {
    let mut dict = Dictionary::default();
    for p in paths {
        dict.load(p).map_err(|source| CliError::Dictionary {
            path: p.display().to_string(),
            source,
        })?;
    }
    Ok(dict)
}

/// Ranks candidates for `word`, which needs at least three characters. An
/// empty list is [`CliError::NoMatch`].
pub fn cmd_guess(
    dict: &Dictionary,
    word: &str,
    algorithm: Algorithm,
    top_k: Option<usize>,
) -> Result<CandidateList, CliError> {
    let w = crate::guesser::validate_word(word)?;
    // the same length rule as for dictionary words
    if w.chars().count() < 3 {
        return Err(CliError::InvalidInput(format!("word {w:?} is too short to guess")));
    }
    let list = match algorithm {
        Algorithm::PosSuffix => crate::guesser::guess_pos(&crate::suffix_index::index_pos(&dict.pos_lexicon()?), word)?,
        Algorithm::GramSuffix => {
            crate::guesser::guess_gramset_suffix(&crate::suffix_index::index_gram(&dict.gram_lexicon()?), word)?
        }
        Algorithm::GramPseudo => {
            crate::guesser::guess_gramset_pseudo(&crate::suffix_index::index_pseudo(&dict.gram_lexicon()?), word)?
        }
    };
    if list.is_empty() {
        return Err(CliError::NoMatch(word.to_string()));
    }
    Ok(list.truncated(top_k))
}

pub fn format_guess(list: &CandidateList) -> String {
    let mut out = String::new();
    for c in list.iter() {
        out.push_str(&format!("{}\t{}\n", c.tag, c.count));
    }
    if let Some(s) = &list.matched_suffix {
        out.push_str(&format!("suffix: {s}\n"));
    }
    out
}

fn parse_algorithm(s: &str) -> Result<Algorithm, CliError> {
    s.parse().map_err(|e: GuessError| CliError::InvalidInput(e.to_string()))
}

fn write_output(out: Option<&Path>, text: &str, stdout: &mut dyn Write) -> Result<(), CliError> {
    match out {
        Some(p) => fs::write(p, text)?,
        None => stdout.write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Runs the evaluation and returns `(report text, summary line)`.
pub fn cmd_evaluate(
    dict: &Dictionary,
    algorithm: Algorithm,
    format: ReportFormat,
    limit: Option<usize>,
) -> Result<(String, String), CliError> {
    let report = match algorithm {
        Algorithm::PosSuffix => leave_one_out_eval(EvalLexicon::Pos(&dict.pos_lexicon()?), algorithm, limit)?,
        _ => {
            let gram: GramLexicon = dict.gram_lexicon()?;
            leave_one_out_eval(EvalLexicon::Gram(&gram), algorithm, limit)?
        }
    };
    Ok((emit_report(&report, format), report.summary_line()))
}

pub fn cmd_error_graph(dict: &Dictionary) -> Result<String, CliError> {
    Ok(emit_dot(&build_error_graph(&dict.pos_lexicon()?)?))
}

pub fn ingest_summary(dict: &Dictionary) -> Result<String, CliError> {
    let pos = dict.pos_lexicon()?;
    let gram_pairs = match dict.gram_lexicon() {
        Ok(g) => g.len(),
        Err(LexiconError::EmptyLexicon) => 0,
        Err(e) => return Err(e.into()),
    };
    Ok(format!(
        "entries: {}\npairs-rows: {}\npos-pairs: {}\ngram-pairs: {}\n",
        dict.entries.len(),
        dict.pairs.len(),
        pos.len(),
        gram_pairs
    ))
}

/// Builds the tagging service for `dict`, replaying `journal` if it exists.
pub fn build_service(dict: &Dictionary, journal: Option<&Path>) -> Result<TaggingService, CliError> {
    let pos = dict.pos_lexicon()?;
    let gram = match dict.gram_lexicon() {
        Ok(g) => g,
        Err(LexiconError::EmptyLexicon) => GramLexicon::default(),
        Err(e) => return Err(e.into()),
    };
    let mut svc = TaggingService::new(pos, gram);
    if let Some(path) = journal {
        if path.exists() {
            let n = svc.replay(BufReader::new(fs::File::open(path)?))?;
            info!(confirmations = n, "replayed journal {}", path.display());
        }
        let file = fs::OpenOptions::new().create(true).append(true).open(path)?;
        svc = svc.with_journal(Box::new(file));
    }
    Ok(svc)
}

pub fn cmd_serve(dict: &Dictionary, bind: &str, journal: Option<&Path>) -> Result<(), CliError> {
    let addr: SocketAddr = bind
        .parse()
        .map_err(|_| CliError::InvalidInput(format!("bad bind address {bind:?}")))?;
    let svc = Arc::new(build_service(dict, journal)?);
    info!("pos-pairs: {} gram-pairs: {}", svc.pos_pairs(), svc.gram_pairs());
    let rt = tokio::runtime::Builder::new_multi_thread().enable_all().build()?;
    rt.block_on(async move {
        let listener = tokio::net::TcpListener::bind(addr).await?;
        info!("listening on {}", listener.local_addr()?);
        tokio::select! {
            r = service::serve(listener, svc) => r,
            _ = tokio::signal::ctrl_c() => Ok(()),
        }
    })?;
    Ok(())
}

fn init_logging(verbose: bool) {
    let level = if verbose { "debug" } else { "info" };
    let filter = tracing_subscriber::EnvFilter::try_from_default_env()
        .unwrap_or_else(|_| tracing_subscriber::EnvFilter::new(level));
    let _ = tracing_subscriber::fmt()
        .with_env_filter(filter)
        .with_writer(io::stderr)
        .with_target(false)
        .try_init();
}

fn execute(cli: Cli, stdout: &mut dyn Write, stderr: &mut dyn Write) -> Result<(), CliError> {
    match cli.command {
        Command::Guess {
            dict,
            algo,
            word,
            top_k,
        } => {
            let algorithm = parse_algorithm(&algo)?;
            let d = load_dictionary(&dict.dict)?;
            let list = cmd_guess(&d, &word, algorithm, top_k)?;
            stdout.write_all(format_guess(&list).as_bytes())?;
        }
        Command::Evaluate {
            dict,
            algo,
            format,
            out,
            limit,
        } => {
            let algorithm = parse_algorithm(&algo)?;
            let format: ReportFormat = format.parse()?;
            let d = load_dictionary(&dict.dict)?;
            let (report, summary) = cmd_evaluate(&d, algorithm, format, limit)?;
            write_output(out.as_deref(), &report, stdout)?;
            if out.is_some() {
                writeln!(stdout, "{summary}")?;
            } else {
                writeln!(stderr, "{summary}")?;
            }
        }
        Command::ErrorGraph { dict, format, out } => {
            if format != "dot" {
                return Err(CliError::InvalidInput(format!(
                    "unknown graph format {format:?} (expected dot)"
                )));
            }
            let d = load_dictionary(&dict.dict)?;
            write_output(out.as_deref(), &cmd_error_graph(&d)?, stdout)?;
        }
        Command::Serve { dict, bind, journal } => {
            init_logging(dict.verbose);
            let d = load_dictionary(&dict.dict)?;
            cmd_serve(&d, &bind, journal.as_deref())?;
        }
        Command::IngestCheck { dict } => {
            let d = load_dictionary(&dict.dict)?;
            stdout.write_all(ingest_summary(&d)?.as_bytes())?;
        }
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(stderr, "{e}");
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli, stdout, stderr) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            e.exit_code()
        }
    }
}

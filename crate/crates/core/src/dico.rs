//! Dictionary application: partitions the word tokens of a stream into
//! simple-word analyses (`dlf`), multiword matches (`dlc`) and unknown
//! forms (`err`).

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::delaf::{serialize_entry, DictEntry};
use crate::lexicon::{AnalysisRef, CaseFoldPolicy, Lexicon};
use crate::preprocess::{TokenKind, TokenStream};

#[derive(Debug, Error)]
pub enum DicoError {
    #[error("cannot merge results computed with different case policies ({0} vs {1})")]
    PolicyMismatch(CaseFoldPolicy, CaseFoldPolicy),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: line {line}: {reason}")]
    BadOutputFile {
        path: PathBuf,
        line: usize,
        reason: &'static str,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenStatus {
    KnownSimple,
    InCompoundOnly,
    Unknown,
}

impl TokenStatus {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenStatus::KnownSimple => "known_simple",
            TokenStatus::InCompoundOnly => "in_compound_only",
            TokenStatus::Unknown => "unknown",
        }
    }
}

impl std::str::FromStr for TokenStatus {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "known_simple" => Ok(TokenStatus::KnownSimple),
            "in_compound_only" => Ok(TokenStatus::InCompoundOnly),
            "unknown" => Ok(TokenStatus::Unknown),
            _ => Err(()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenAnnotation {
    /// Index into [`DicoResult::sources`].
    pub source: u32,
    /// Position of the token in its stream.
    pub token_index: usize,
    pub text: String,
    pub sentence_index: usize,
    pub sentence_initial: bool,
    pub status: TokenStatus,
    /// Simple analyses for known tokens, the compound's analyses otherwise.
    pub analyses: Vec<AnalysisRef>,
    /// DELAF lines of `analyses`, filled when written or read back.
    pub analysis_lines: Vec<String>,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionCounts {
    pub known_simple: u64,
    pub in_compound_only: u64,
    pub unknown: u64,
}

impl PartitionCounts {
    pub fn total(&self) -> u64 {
        self.known_simple + self.in_compound_only + self.unknown
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DicoResult {
    pub corpus_id: String,
    pub policy: CaseFoldPolicy,
    pub dlf: BTreeSet<DictEntry>,
    pub dlc: BTreeMap<DictEntry, u64>,
    pub err: BTreeSet<String>,
    pub sources: Vec<String>,
    pub annotations: Vec<TokenAnnotation>,
    pub counts: PartitionCounts,
}

impl DicoResult {
    pub fn empty(corpus_id: &str, policy: CaseFoldPolicy) -> Self {
        DicoResult {
            corpus_id: corpus_id.to_string(),
            policy,
            dlf: BTreeSet::new(),
            dlc: BTreeMap::new(),
            err: BTreeSet::new(),
            sources: Vec::new(),
            annotations: Vec::new(),
            counts: PartitionCounts::default(),
        }
    }

    pub fn dlf_lines(&self) -> Vec<String> {
        sorted_lines(self.dlf.iter().map(serialize_entry))
    }

    pub fn dlc_lines(&self) -> Vec<String> {
        sorted_lines(self.dlc.iter().map(|(e, n)| format!("{}\t{n}", serialize_entry(e))))
    }
}

fn sorted_lines(it: impl Iterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = it.collect();
    v.sort_unstable();
    v
}

/// Applies a lexicon to one token stream.
///
/// Compounds are matched greedily, longest first and left to right, inside
/// each sentence; accepted matches never overlap. A word token with simple
/// analyses is `known_simple`; without them it is `in_compound_only` when a
/// compound covers it and `unknown` otherwise. Only unknown tokens reach
/// `err`, with their original casing.
pub fn apply_dictionaries(lex: &Lexicon, stream: &TokenStream, policy: CaseFoldPolicy) -> DicoResult {
    let toks = &stream.tokens;
    let n = toks.len();
    let mut result = DicoResult::empty(&stream.source_id, policy);
    result.sources.push(stream.source_id.clone());

    // compound analyses covering each token
    let mut compound_cover: Vec<Option<usize>> = vec![None; n];
    let mut compound_refs: Vec<Vec<AnalysisRef>> = Vec::new();
    if lex.has_compounds() {
        let mut sentence_end = vec![n; n];
        for i in (0..n.saturating_sub(1)).rev() {
            sentence_end[i] = if toks[i + 1].sentence_index != toks[i].sentence_index {
                i + 1
            } else {
                sentence_end[i + 1]
            };
        }
        let mut i = 0;
        while i < n {
            if toks[i].kind == TokenKind::Word {
                let window = &toks[i..sentence_end[i]];
                if let Some(best) = lex.match_compounds(window, policy).into_iter().next() {
                    for r in &best.analyses {
                        *result.dlc.entry(lex.entry(*r)).or_insert(0) += 1;
                    }
                    let slot = compound_refs.len();
                    compound_refs.push(best.analyses);
                    for c in &mut compound_cover[i..i + best.span] {
                        *c = Some(slot);
                    }
                    i += best.span;
                    continue;
                }
            }
            i += 1;
        }
    }

    let mut cache: HashMap<&str, Vec<AnalysisRef>> = HashMap::new();
    for (idx, t) in toks.iter().enumerate() {
        if t.kind != TokenKind::Word {
            continue;
        }
        let refs = match cache.get(t.text.as_str()) {
            Some(r) => r.clone(),
            None => {
                let r = lex.lookup(&t.text, policy);
                for a in &r {
                    result.dlf.insert(lex.entry(*a));
                }
                cache.insert(&t.text, r.clone());
                r
            }
        };
        let (status, analyses) = if !refs.is_empty() {
            result.counts.known_simple += 1;
            (TokenStatus::KnownSimple, refs)
        } else if let Some(slot) = compound_cover[idx] {
            result.counts.in_compound_only += 1;
            (TokenStatus::InCompoundOnly, compound_refs[slot].clone())
        } else {
            result.counts.unknown += 1;
            if !result.err.contains(&t.text) {
                result.err.insert(t.text.clone());
            }
            (TokenStatus::Unknown, Vec::new())
        };
        result.annotations.push(TokenAnnotation {
            source: 0,
            token_index: idx,
            text: t.text.clone(),
            sentence_index: t.sentence_index,
            sentence_initial: t.sentence_initial,
            status,
            analyses,
            analysis_lines: Vec::new(),
        });
    }
    result
}

/// Union of two results over disjoint streams processed with the same policy.
pub fn merge_results(a: DicoResult, b: DicoResult) -> Result<DicoResult, DicoError> {
    if a.policy != b.policy {
        return Err(DicoError::PolicyMismatch(a.policy, b.policy));
    }
    let mut out = a;
    let offset = out.sources.len() as u32;
    out.dlf.extend(b.dlf);
    for (e, n) in b.dlc {
        *out.dlc.entry(e).or_insert(0) += n;
    }
    out.err.extend(b.err);
    out.sources.extend(b.sources);
    out.annotations.extend(b.annotations.into_iter().map(|mut t| {
        t.source += offset;
        t
    }));
    out.counts.known_simple += b.counts.known_simple;
    out.counts.in_compound_only += b.counts.in_compound_only;
    out.counts.unknown += b.counts.unknown;
    if out.corpus_id.is_empty() {
        out.corpus_id = b.corpus_id;
    } else if !b.corpus_id.is_empty() && b.corpus_id != out.corpus_id {
        out.corpus_id = format!("{}+{}", out.corpus_id, b.corpus_id);
    }
    Ok(out)
}

fn io_err(path: &Path) -> impl FnOnce(std::io::Error) -> DicoError + '_ {
    move |source| DicoError::Io {
        path: path.to_path_buf(),
        source,
    }
}

fn write_lines(path: &Path, lines: &[String]) -> Result<(), DicoError> {
    let mut out = String::new();
    for l in lines {
        out.push_str(l);
        out.push('\n');
    }
    fs::write(path, out).map_err(io_err(path))
}

pub const ANNOTATIONS_HEADER: &str =
    "source\ttoken_index\ttoken\tkind\tsentence_index\tsentence_initial\tstatus\tanalyses";

/// Writes `dlf`, `dlc`, `err` and `annotations.tsv` into `dir`.
pub fn write_outputs(result: &DicoResult, lex: &Lexicon, dir: &Path) -> Result<(), DicoError> {
    fs::create_dir_all(dir).map_err(io_err(dir))?;
    write_lines(&dir.join("dlf"), &result.dlf_lines())?;
    write_lines(&dir.join("dlc"), &result.dlc_lines())?;
    let err: Vec<String> = result.err.iter().cloned().collect();
    write_lines(&dir.join("err"), &err)?;

    let mut out = String::with_capacity(result.annotations.len() * 48);
    out.push_str(ANNOTATIONS_HEADER);
    out.push('\n');
    for a in &result.annotations {
        let analyses: Vec<String> = if a.analyses.is_empty() {
            a.analysis_lines.clone()
        } else {
            a.analyses.iter().map(|r| serialize_entry(&lex.entry(*r))).collect()
        };
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}",
            result.sources[a.source as usize],
            a.token_index,
            a.text,
            TokenKind::Word.as_str(),
            a.sentence_index,
            u8::from(a.sentence_initial),
            a.status.as_str(),
            analyses.join(" | ")
        );
    }
    let path = dir.join("annotations.tsv");
    fs::write(&path, out).map_err(io_err(&path))
}

pub fn read_err(dir: &Path) -> Result<BTreeSet<String>, DicoError> {
    let path = dir.join("err");
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    Ok(text.lines().filter(|l| !l.is_empty()).map(str::to_string).collect())
}

/// Reads `annotations.tsv` back. Analysis references are not restored;
/// the DELAF lines are kept in `analysis_lines`.
pub fn read_annotations(dir: &Path) -> Result<(Vec<String>, Vec<TokenAnnotation>), DicoError> {
    let path = dir.join("annotations.tsv");
    let text = fs::read_to_string(&path).map_err(io_err(&path))?;
    let bad = |line: usize, reason: &'static str| DicoError::BadOutputFile {
        path: path.clone(),
        line,
        reason,
    };
    let mut sources: Vec<String> = Vec::new();
    let mut source_ids: HashMap<String, u32> = HashMap::new();
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if i == 0 {
            if line != ANNOTATIONS_HEADER {
                return Err(bad(1, "unexpected header"));
            }
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 8 {
            return Err(bad(i + 1, "expected 8 columns"));
        }
        let source = match source_ids.get(cols[0]) {
            Some(&s) => s,
            None => {
                let s = sources.len() as u32;
                sources.push(cols[0].to_string());
                source_ids.insert(cols[0].to_string(), s);
                s
            }
        };
        let token_index = cols[1].parse().map_err(|_| bad(i + 1, "bad token index"))?;
        let sentence_index = cols[4].parse().map_err(|_| bad(i + 1, "bad sentence index"))?;
        let sentence_initial = match cols[5] {
            "1" => true,
            "0" => false,
            _ => return Err(bad(i + 1, "bad sentence_initial flag")),
        };
        let status = cols[6].parse().map_err(|_| bad(i + 1, "bad status"))?;
        let analysis_lines = if cols[7].is_empty() {
            Vec::new()
        } else {
            cols[7].split(" | ").map(str::to_string).collect()
        };
        rows.push(TokenAnnotation {
            source,
            token_index,
            text: cols[2].to_string(),
            sentence_index,
            sentence_initial,
            status,
            analyses: Vec::new(),
            analysis_lines,
        });
    }
    Ok((sources, rows))
}

//! Raw text to typed token streams.
//!
//! The pipeline runs in the same order as a UNITEX preprocessing pass:
//! delimiter normalization, tokenization, optional replacement of
//! unambiguous forms, then sentence segmentation.

mod normalize;
mod reform;
mod segment;
mod tokenize;

use std::collections::HashMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use normalize::{normalize_bytes, normalize_delimiters};
pub use reform::{reform_normalize, strip_diacritics};
pub use segment::{segment_sentences, AbbreviationList};
pub use tokenize::{tokenize, tokenize_with_id};

#[derive(Debug, Error)]
pub enum PreprocessError {
    #[error("input is not valid UTF-8 (first bad byte at offset {offset})")]
    InvalidUtf8 { offset: usize },
    #[error("replacement table line {line}: {reason}")]
    BadReplacement { line: usize, reason: &'static str },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TokenKind {
    Word,
    Number,
    Punct,
    Space,
}

impl TokenKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TokenKind::Word => "word",
            TokenKind::Number => "number",
            TokenKind::Punct => "punct",
            TokenKind::Space => "space",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub text: String,
    /// Byte offsets into the normalized text.
    pub start: usize,
    pub end: usize,
    pub sentence_index: usize,
    pub sentence_initial: bool,
}

impl Token {
    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TokenStream {
    pub tokens: Vec<Token>,
    pub source_id: String,
    pub word_token_count: usize,
}

impl TokenStream {
    pub fn words(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }

    /// Concatenation of all token texts.
    pub fn text(&self) -> String {
        self.tokens.iter().map(|t| t.text.as_str()).collect()
    }

    pub fn sentence_count(&self) -> usize {
        self.tokens.last().map_or(0, |t| t.sentence_index + 1)
    }
}

/// Token-sequence rewrite table for the "normalize unambiguous forms" step.
///
/// Each rule maps a token sequence (tokenized from the left column) to a
/// literal replacement string. Matching is exact and case-sensitive and
/// prefers the longest pattern at each position.
#[derive(Debug, Clone, Default)]
pub struct ReplacementTable {
    rules: HashMap<String, Vec<(Vec<String>, String)>>,
}

impl ReplacementTable {
    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn insert(&mut self, pattern: &str, replacement: &str) {
        let toks: Vec<String> = tokenize(pattern).tokens.into_iter().map(|t| t.text).collect();
        if toks.is_empty() {
            return;
        }
        let bucket = self.rules.entry(toks[0].clone()).or_default();
        bucket.push((toks, replacement.to_string()));
        bucket.sort_by_key(|b| std::cmp::Reverse(b.0.len()));
    }

    /// Two-column TSV, `pattern<TAB>replacement`. Blank lines and `#` comments are skipped.
    pub fn parse_tsv(text: &str) -> Result<Self, PreprocessError> {
        let mut table = ReplacementTable::default();
        for (i, line) in text.lines().enumerate() {
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((from, to)) = line.split_once('\t') else {
                return Err(PreprocessError::BadReplacement {
                    line: i + 1,
                    reason: "expected two tab-separated columns",
                });
            };
            if from.is_empty() {
                return Err(PreprocessError::BadReplacement {
                    line: i + 1,
                    reason: "empty pattern",
                });
            }
            table.insert(from, to);
        }
        Ok(table)
    }

    /// Rewrites `text` and returns the new text.
    pub fn apply(&self, text: &str) -> String {
        if self.is_empty() {
            return text.to_string();
        }
        let tokens = tokenize(text).tokens;
        let mut out = String::with_capacity(text.len());
        let mut i = 0;
        'outer: while i < tokens.len() {
            if let Some(bucket) = self.rules.get(&tokens[i].text) {
                for (pattern, replacement) in bucket {
                    let end = i + pattern.len();
                    if end <= tokens.len() && tokens[i..end].iter().zip(pattern).all(|(t, p)| t.text == *p) {
                        out.push_str(replacement);
                        i = end;
                        continue 'outer;
                    }
                }
            }
            out.push_str(&tokens[i].text);
            i += 1;
        }
        out
    }
}

#[derive(Debug, Clone, Default)]
pub struct PreprocessConfig {
    pub abbreviations: AbbreviationList,
    pub replacements: ReplacementTable,
}

/// Full pipeline on already-decoded text.
pub fn preprocess(raw: &str, source_id: &str, config: &PreprocessConfig) -> TokenStream {
    let mut text = normalize_delimiters(raw);
    if !config.replacements.is_empty() {
        text = normalize_delimiters(&config.replacements.apply(&text));
    }
    let stream = tokenize_with_id(&text, source_id);
    segment_sentences(stream, &config.abbreviations)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn replacement_table_rewrites_token_sequences() {
        let table = ReplacementTable::parse_tsv("# contractions\nd'água\tde água\npra\tpara\n").unwrap();
        assert_eq!(table.apply("copo d'água pra mim"), "copo de água para mim");
        // token-bounded: no rewrite inside a longer word
        assert_eq!(table.apply("prato"), "prato");
    }

    #[test]
    fn replacement_table_rejects_bad_rows() {
        assert!(matches!(
            ReplacementTable::parse_tsv("semtab\n"),
            Err(PreprocessError::BadReplacement { line: 1, .. })
        ));
    }

    #[test]
    fn pipeline_without_table_is_plain() {
        let s = preprocess("O  time\r\ncorria.", "x", &PreprocessConfig::default());
        assert_eq!(s.text(), "O time\ncorria.");
        assert_eq!(s.word_token_count, 3);
        assert_eq!(s.source_id, "x");
    }
}

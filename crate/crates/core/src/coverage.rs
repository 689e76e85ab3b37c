//! Word lists, coverage reports, version deltas and dictionary diffs.
//!
//! Percentages are kept as integer hundredths and rounded half-up, so a
//! report prints exactly the two decimals a reader would compute by hand.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize, Serializer};
use thiserror::Error;

use crate::casing::fold;
use crate::delaf::DictFile;
use crate::dico::DicoResult;
use crate::lexicon::{CaseFoldPolicy, Lexicon};
use crate::preprocess::TokenStream;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum CoverageError {
    #[error("word list is for corpus {word_list:?} but recognition results are for {results:?}")]
    MismatchedCorpus { word_list: String, results: String },
    #[error("{what}: unknown count {unknown} exceeds total {total}")]
    UnknownExceedsTotal {
        what: &'static str,
        unknown: u64,
        total: u64,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FoldMode {
    Cased,
    #[default]
    Folded,
}

impl FoldMode {
    fn key(self, form: &str) -> String {
        match self {
            FoldMode::Cased => form.to_string(),
            FoldMode::Folded => fold(form),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct WordList {
    pub corpus_id: String,
    pub fold_mode: FoldMode,
    pub entries: BTreeMap<String, u64>,
    pub type_count: u64,
    pub token_count: u64,
}

impl WordList {
    pub fn from_words<'a>(words: impl IntoIterator<Item = &'a str>, fold_mode: FoldMode, corpus_id: &str) -> Self {
        let mut entries: BTreeMap<String, u64> = BTreeMap::new();
        for w in words {
            *entries.entry(fold_mode.key(w)).or_insert(0) += 1;
        }
        let token_count = entries.values().sum();
        WordList {
            corpus_id: corpus_id.to_string(),
            fold_mode,
            type_count: entries.len() as u64,
            entries,
            token_count,
        }
    }

    /// `form<TAB>frequency`, by descending frequency then form.
    pub fn to_tsv(&self) -> String {
        let mut rows: Vec<(&String, &u64)> = self.entries.iter().collect();
        rows.sort_by(|a, b| b.1.cmp(a.1).then(a.0.cmp(b.0)));
        let mut out = String::new();
        for (form, n) in rows {
            let _ = writeln!(out, "{form}\t{n}");
        }
        out
    }
}

/// Counts every word token of the streams.
pub fn build_word_list(streams: &[TokenStream], fold_mode: FoldMode, corpus_id: &str) -> WordList {
    WordList::from_words(
        streams.iter().flat_map(|s| s.words().map(|t| t.text.as_str())),
        fold_mode,
        corpus_id,
    )
}

/// A percentage in hundredths of a percent.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(pub u32);

impl Percent {
    /// `100 * part / whole`, rounded half-up to two decimals. Zero when `whole` is zero.
    pub fn of(part: u64, whole: u64) -> Percent {
        if whole == 0 {
            return Percent(0);
        }
        let (p, w) = (u128::from(part), u128::from(whole));
        Percent(((20_000 * p + w) / (2 * w)) as u32)
    }

    pub fn hundredths(self) -> u32 {
        self.0
    }

    pub fn render(self, locale: Locale) -> String {
        format!("{}%", format_hundredths(i64::from(self.0), locale))
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_hundredths(i64::from(self.0), Locale::Plain))
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(f64::from(self.0) / 100.0)
    }
}

/// Signed difference in hundredths of a percentage point.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PointDelta(pub i64);

impl PointDelta {
    /// Arithmetic mean, rounded half away from zero to two decimals.
    pub fn mean(deltas: &[PointDelta]) -> PointDelta {
        if deltas.is_empty() {
            return PointDelta(0);
        }
        let sum: i64 = deltas.iter().map(|d| d.0).sum();
        let n = deltas.len() as i64;
        let q = (2 * sum.abs() + n) / (2 * n);
        PointDelta(if sum < 0 { -q } else { q })
    }

    pub fn render(self, locale: Locale) -> String {
        format!("{} pp", format_hundredths(self.0, locale))
    }
}

impl fmt::Display for PointDelta {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_hundredths(self.0, Locale::Plain))
    }
}

impl Serialize for PointDelta {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.0 as f64 / 100.0)
    }
}

/// Number rendering. `PtBr` groups thousands with dots and uses a decimal comma.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Locale {
    #[default]
    Plain,
    PtBr,
}

impl std::str::FromStr for Locale {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "plain" | "C" | "en" => Ok(Locale::Plain),
            "pt-BR" | "pt_BR" | "pt-br" => Ok(Locale::PtBr),
            other => Err(format!("unsupported locale {other:?}")),
        }
    }
}

pub fn format_count(n: u64, locale: Locale) -> String {
    let digits = n.to_string();
    if locale == Locale::Plain {
        return digits;
    }
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i).is_multiple_of(3) {
            out.push('.');
        }
        out.push(c);
    }
    out
}

fn format_hundredths(v: i64, locale: Locale) -> String {
    let sign = if v < 0 { "-" } else { "" };
    let a = v.unsigned_abs();
    let sep = match locale {
        Locale::Plain => '.',
        Locale::PtBr => ',',
    };
    format!("{sign}{}{sep}{:02}", format_count(a / 100, locale), a % 100)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CoverageReport {
    pub corpus_id: String,
    pub dict_id: String,
    pub types_total: u64,
    pub tokens_total: u64,
    pub types_unknown: u64,
    pub tokens_unknown: u64,
    pub pct_types_unknown: Percent,
    pub pct_tokens_unknown: Percent,
}

impl CoverageReport {
    /// Report from raw counts, as printed in published tables.
    pub fn from_counts(
        corpus_id: &str,
        dict_id: &str,
        types_total: u64,
        types_unknown: u64,
        tokens_total: u64,
        tokens_unknown: u64,
    ) -> Result<Self, CoverageError> {
        if types_unknown > types_total {
            return Err(CoverageError::UnknownExceedsTotal {
                what: "types",
                unknown: types_unknown,
                total: types_total,
            });
        }
        if tokens_unknown > tokens_total {
            return Err(CoverageError::UnknownExceedsTotal {
                what: "tokens",
                unknown: tokens_unknown,
                total: tokens_total,
            });
        }
        Ok(CoverageReport {
            corpus_id: corpus_id.to_string(),
            dict_id: dict_id.to_string(),
            types_total,
            tokens_total,
            types_unknown,
            tokens_unknown,
            pct_types_unknown: Percent::of(types_unknown, types_total),
            pct_tokens_unknown: Percent::of(tokens_unknown, tokens_total),
        })
    }

    pub fn render_text(&self, locale: Locale) -> String {
        let rows = [
            ("corpus", self.corpus_id.clone()),
            ("dictionary", self.dict_id.clone()),
            ("types", format_count(self.types_total, locale)),
            ("tokens", format_count(self.tokens_total, locale)),
            ("out-of-coverage types", format_count(self.types_unknown, locale)),
            ("% of types", self.pct_types_unknown.render(locale)),
            ("out-of-coverage tokens", format_count(self.tokens_unknown, locale)),
            ("% of tokens", self.pct_tokens_unknown.render(locale)),
        ];
        render_rows(&rows)
    }
}

fn render_rows(rows: &[(&str, String)]) -> String {
    let width = rows.iter().map(|(k, _)| k.chars().count()).max().unwrap_or(0);
    let mut out = String::new();
    for (k, v) in rows {
        let _ = writeln!(out, "{k:<width$}  {v}");
    }
    out
}

/// What decides whether a word-list form is unknown.
pub enum Recognition<'a> {
    /// Forms in a run's `err`, aligned to the word list's fold mode.
    Dico(&'a DicoResult),
    /// Same, from an `err` set read back from disk.
    Unknown {
        corpus_id: &'a str,
        err: &'a BTreeSet<String>,
    },
    /// Looks up each word-list form directly.
    Lexicon {
        lexicon: &'a Lexicon,
        policy: CaseFoldPolicy,
    },
}

/// Type and token coverage of a word list.
pub fn coverage(
    word_list: &WordList,
    recognition: &Recognition<'_>,
    dict_id: &str,
) -> Result<CoverageReport, CoverageError> {
    let is_unknown: Box<dyn Fn(&str) -> bool + '_> = match recognition {
        Recognition::Dico(_) | Recognition::Unknown { .. } => {
            let (corpus_id, err) = match recognition {
                Recognition::Dico(d) => (d.corpus_id.as_str(), &d.err),
                Recognition::Unknown { corpus_id, err } => (*corpus_id, *err),
                Recognition::Lexicon { .. } => unreachable!(),
            };
            if corpus_id != word_list.corpus_id {
                return Err(CoverageError::MismatchedCorpus {
                    word_list: word_list.corpus_id.clone(),
                    results: corpus_id.to_string(),
                });
            }
            let aligned: BTreeSet<String> = err.iter().map(|f| word_list.fold_mode.key(f)).collect();
            Box::new(move |form: &str| aligned.contains(form))
        }
        Recognition::Lexicon { lexicon, policy } => Box::new(move |form: &str| !lexicon.contains(form, *policy)),
    };

    let mut types_unknown = 0;
    let mut tokens_unknown = 0;
    for (form, &n) in &word_list.entries {
        if is_unknown(form) {
            types_unknown += 1;
            tokens_unknown += n;
        }
    }
    CoverageReport::from_counts(
        &word_list.corpus_id,
        dict_id,
        word_list.type_count,
        types_unknown,
        word_list.token_count,
        tokens_unknown,
    )
}

/// Drop in unknown percentage from an old dictionary to a new one.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VersionDelta {
    pub corpus_id: String,
    pub old_dict: String,
    pub new_dict: String,
    /// Old minus new unknown-type percentage.
    pub types_pp: PointDelta,
    pub tokens_pp: PointDelta,
}

impl VersionDelta {
    pub fn render_text(&self, locale: Locale) -> String {
        let rows = [
            ("corpus", self.corpus_id.clone()),
            ("old dictionary", self.old_dict.clone()),
            ("new dictionary", self.new_dict.clone()),
            ("types gain", self.types_pp.render(locale)),
            ("tokens gain", self.tokens_pp.render(locale)),
        ];
        render_rows(&rows)
    }
}

/// Deltas are taken on the two-decimal percentages, as they are printed.
pub fn compare_versions(old: &CoverageReport, new: &CoverageReport) -> Result<VersionDelta, CoverageError> {
    if old.corpus_id != new.corpus_id {
        return Err(CoverageError::MismatchedCorpus {
            word_list: old.corpus_id.clone(),
            results: new.corpus_id.clone(),
        });
    }
    Ok(VersionDelta {
        corpus_id: old.corpus_id.clone(),
        old_dict: old.dict_id.clone(),
        new_dict: new.dict_id.clone(),
        types_pp: PointDelta(i64::from(old.pct_types_unknown.0) - i64::from(new.pct_types_unknown.0)),
        tokens_pp: PointDelta(i64::from(old.pct_tokens_unknown.0) - i64::from(new.pct_tokens_unknown.0)),
    })
}

/// Mean type and token deltas across corpora.
pub fn mean_deltas(deltas: &[VersionDelta]) -> (PointDelta, PointDelta) {
    let types: Vec<PointDelta> = deltas.iter().map(|d| d.types_pp).collect();
    let tokens: Vec<PointDelta> = deltas.iter().map(|d| d.tokens_pp).collect();
    (PointDelta::mean(&types), PointDelta::mean(&tokens))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DictDiff {
    pub only_in_a: BTreeSet<String>,
    pub only_in_b: BTreeSet<String>,
    pub common: u64,
    pub fold_mode: FoldMode,
}

impl DictDiff {
    pub fn is_empty(&self) -> bool {
        self.only_in_a.is_empty() && self.only_in_b.is_empty()
    }

    pub fn render_text(&self, locale: Locale) -> String {
        let mut out = render_rows(&[
            ("only in A", format_count(self.only_in_a.len() as u64, locale)),
            ("only in B", format_count(self.only_in_b.len() as u64, locale)),
            ("common", format_count(self.common, locale)),
        ]);
        for f in &self.only_in_a {
            let _ = writeln!(out, "< {f}");
        }
        for f in &self.only_in_b {
            let _ = writeln!(out, "> {f}");
        }
        out
    }
}

fn unique_forms(files: &[DictFile], fold_mode: FoldMode) -> BTreeSet<String> {
    files
        .iter()
        .flat_map(|f| f.entries.iter().map(|e| fold_mode.key(&e.surface_form)))
        .collect()
}

/// Set comparison of unique surface forms.
pub fn diff_dictionaries(a: &[DictFile], b: &[DictFile], fold_mode: FoldMode) -> DictDiff {
    let fa = unique_forms(a, fold_mode);
    let fb = unique_forms(b, fold_mode);
    DictDiff {
        only_in_a: fa.difference(&fb).cloned().collect(),
        only_in_b: fb.difference(&fa).cloned().collect(),
        common: fa.intersection(&fb).count() as u64,
        fold_mode,
    }
}

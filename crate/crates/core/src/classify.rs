//! Heuristic categories for unknown forms.
//!
//! Every rule is evaluated for every record so the evidence shows all rules
//! that fired; the configured precedence only picks the winner.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::casing::{fold, CaseShape};
use crate::dico::{TokenAnnotation, TokenStatus};
use crate::lexicon::{CaseFoldPolicy, Lexicon};
use crate::preprocess::reform_normalize;

#[derive(Debug, Error)]
pub enum ConfigError {
    #[error("unknown rule id {0:?} in precedence list")]
    UnknownRule(String),
    #[error("rule {0} listed twice in precedence list")]
    DuplicateRule(RuleId),
    #[error("{field} must be {expected}")]
    BadValue {
        field: &'static str,
        expected: &'static str,
    },
    #[error("bad classifier config: {0}")]
    Parse(String),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Category {
    TypingError,
    OldSpelling,
    ProperName,
    AbbreviationAcronym,
    ForeignOrSlang,
    OtherNoun,
    Other,
}

impl Category {
    pub const ALL: [Category; 7] = [
        Category::TypingError,
        Category::OldSpelling,
        Category::ProperName,
        Category::AbbreviationAcronym,
        Category::ForeignOrSlang,
        Category::OtherNoun,
        Category::Other,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Category::TypingError => "typing_error",
            Category::OldSpelling => "old_spelling",
            Category::ProperName => "proper_name",
            Category::AbbreviationAcronym => "abbreviation_acronym",
            Category::ForeignOrSlang => "foreign_or_slang",
            Category::OtherNoun => "other_noun",
            Category::Other => "other",
        }
    }
}

impl fmt::Display for Category {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Category {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Category::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| format!("unknown category {s:?}"))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RuleId {
    Acronym,
    OldSpelling,
    ProperName,
    Typo,
    Foreign,
    OtherNoun,
}

impl RuleId {
    pub const DEFAULT_PRECEDENCE: [RuleId; 6] = [
        RuleId::Acronym,
        RuleId::OldSpelling,
        RuleId::ProperName,
        RuleId::Typo,
        RuleId::Foreign,
        RuleId::OtherNoun,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            RuleId::Acronym => "R-acr",
            RuleId::OldSpelling => "R-old",
            RuleId::ProperName => "R-prop",
            RuleId::Typo => "R-typo",
            RuleId::Foreign => "R-foreign",
            RuleId::OtherNoun => "R-noun",
        }
    }

    /// Long name used in config files.
    pub fn name(self) -> &'static str {
        match self {
            RuleId::Acronym => "acronym",
            RuleId::OldSpelling => "old_spelling",
            RuleId::ProperName => "proper_name",
            RuleId::Typo => "typo",
            RuleId::Foreign => "foreign",
            RuleId::OtherNoun => "other_noun",
        }
    }

    pub fn category(self) -> Category {
        match self {
            RuleId::Acronym => Category::AbbreviationAcronym,
            RuleId::OldSpelling => Category::OldSpelling,
            RuleId::ProperName => Category::ProperName,
            RuleId::Typo => Category::TypingError,
            RuleId::Foreign => Category::ForeignOrSlang,
            RuleId::OtherNoun => Category::OtherNoun,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for RuleId {
    type Err = ConfigError;

    /// Accepts either the long name (`typo`) or the short id (`R-typo`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        RuleId::DEFAULT_PRECEDENCE
            .into_iter()
            .find(|r| r.name() == s || r.as_str() == s)
            .ok_or_else(|| ConfigError::UnknownRule(s.to_string()))
    }
}

/// Occurrence counts by letter-case shape.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CasingProfile {
    pub all_lower: u64,
    pub capitalized: u64,
    pub all_upper: u64,
    pub mixed: u64,
}

impl CasingProfile {
    pub fn total(&self) -> u64 {
        self.all_lower + self.capitalized + self.all_upper + self.mixed
    }

    fn add(&mut self, shape: CaseShape) {
        match shape {
            CaseShape::AllLower => self.all_lower += 1,
            CaseShape::Capitalized => self.capitalized += 1,
            CaseShape::AllUpper => self.all_upper += 1,
            CaseShape::Mixed => self.mixed += 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnknownRecord {
    /// Case-folded form.
    pub form: String,
    pub frequency: u64,
    pub casing: CasingProfile,
    /// Occurrences that do not open a sentence.
    pub non_initial: u64,
    /// Of those, how many start with an uppercase letter.
    pub non_initial_capitalized: u64,
    pub category: Option<Category>,
    pub winning_rule: Option<RuleId>,
    pub evidence: Vec<(RuleId, String)>,
}

impl UnknownRecord {
    /// Record from original occurrences `(text, sentence_initial)`.
    pub fn from_occurrences<'a>(form: &str, occurrences: impl IntoIterator<Item = (&'a str, bool)>) -> Self {
        let mut rec = UnknownRecord {
            form: fold(form),
            frequency: 0,
            casing: CasingProfile::default(),
            non_initial: 0,
            non_initial_capitalized: 0,
            category: None,
            winning_rule: None,
            evidence: Vec::new(),
        };
        for (text, initial) in occurrences {
            rec.add_occurrence(text, initial);
        }
        rec
    }

    fn add_occurrence(&mut self, text: &str, sentence_initial: bool) {
        self.frequency += 1;
        self.casing.add(CaseShape::of(text));
        if !sentence_initial {
            self.non_initial += 1;
            if CaseShape::starts_upper(text) {
                self.non_initial_capitalized += 1;
            }
        }
    }

    /// Share of non-initial occurrences that are capitalized; 0 when there are none.
    pub fn mid_sentence_cap_ratio(&self) -> f64 {
        ratio(self.non_initial_capitalized, self.non_initial)
    }

    pub fn fired_rules(&self) -> Vec<RuleId> {
        self.evidence.iter().map(|(r, _)| *r).collect()
    }
}

fn ratio(part: u64, whole: u64) -> f64 {
    if whole == 0 {
        0.0
    } else {
        part as f64 / whole as f64
    }
}

/// Records for every `err` form, from the unknown-token annotations of a run.
/// Forms are grouped case-insensitively and returned sorted.
pub fn build_records(err: &BTreeSet<String>, annotations: &[TokenAnnotation]) -> Vec<UnknownRecord> {
    let wanted: BTreeSet<String> = err.iter().map(|f| fold(f)).collect();
    let mut by_form: BTreeMap<String, UnknownRecord> = BTreeMap::new();
    for a in annotations.iter().filter(|a| a.status == TokenStatus::Unknown) {
        let key = fold(&a.text);
        if !wanted.contains(&key) {
            continue;
        }
        by_form
            .entry(key)
            .or_insert_with_key(|k| UnknownRecord::from_occurrences(k, []))
            .add_occurrence(&a.text, a.sentence_initial);
    }
    by_form.into_values().collect()
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields, default)]
struct RawConfig {
    precedence: Vec<String>,
    lookup_policy: String,
    alphabet: String,
    acronym_min_len: usize,
    acronym_max_len: usize,
    acronym_upper_ratio: f64,
    acronym_list: Option<PathBuf>,
    acronyms: Vec<String>,
    proper_cap_ratio: f64,
    proper_min_non_initial: u64,
    typo_min_candidate_len: usize,
    split_min_part_len: usize,
    foreign_letters: String,
    foreign_exceptions: Vec<String>,
    foreign_bigrams: Vec<String>,
    bigram_list: Option<PathBuf>,
    noun_lower_ratio: f64,
    noun_min_len: usize,
}

impl Default for RawConfig {
    fn default() -> Self {
        let c = ClassifierConfig::default();
        RawConfig {
            precedence: c.precedence.iter().map(|r| r.name().to_string()).collect(),
            lookup_policy: c.lookup_policy.as_str().to_string(),
            alphabet: c.alphabet.iter().collect(),
            acronym_min_len: c.acronym_min_len,
            acronym_max_len: c.acronym_max_len,
            acronym_upper_ratio: c.acronym_upper_ratio,
            acronym_list: None,
            acronyms: Vec::new(),
            proper_cap_ratio: c.proper_cap_ratio,
            proper_min_non_initial: c.proper_min_non_initial,
            typo_min_candidate_len: c.typo_min_candidate_len,
            split_min_part_len: c.split_min_part_len,
            foreign_letters: c.foreign_letters.iter().collect(),
            foreign_exceptions: c.foreign_exceptions.into_iter().collect(),
            foreign_bigrams: c.foreign_bigrams,
            bigram_list: None,
            noun_lower_ratio: c.noun_lower_ratio,
            noun_min_len: c.noun_min_len,
        }
    }
}

/// Letters tried by the single-edit enumeration.
pub const PORTUGUESE_ALPHABET: &str = "abcdefghijklmnopqrstuvwxyzáàâãéêíóôõúüç";

#[derive(Debug, Clone, PartialEq)]
pub struct ClassifierConfig {
    pub precedence: Vec<RuleId>,
    pub lookup_policy: CaseFoldPolicy,
    pub alphabet: Vec<char>,
    pub acronym_min_len: usize,
    pub acronym_max_len: usize,
    pub acronym_upper_ratio: f64,
    /// Folded forms always taken as acronyms.
    pub acronyms: BTreeSet<String>,
    pub proper_cap_ratio: f64,
    pub proper_min_non_initial: u64,
    pub typo_min_candidate_len: usize,
    pub split_min_part_len: usize,
    pub foreign_letters: Vec<char>,
    pub foreign_exceptions: BTreeSet<String>,
    /// Bigrams with `^` and `$` as word-boundary markers, e.g. `th`, `d$`.
    pub foreign_bigrams: Vec<String>,
    pub noun_lower_ratio: f64,
    pub noun_min_len: usize,
}

impl Default for ClassifierConfig {
    fn default() -> Self {
        ClassifierConfig {
            precedence: RuleId::DEFAULT_PRECEDENCE.to_vec(),
            lookup_policy: CaseFoldPolicy::UnitexLike,
            alphabet: PORTUGUESE_ALPHABET.chars().collect(),
            acronym_min_len: 2,
            acronym_max_len: 6,
            acronym_upper_ratio: 0.9,
            acronyms: BTreeSet::new(),
            proper_cap_ratio: 0.9,
            proper_min_non_initial: 1,
            typo_min_candidate_len: 5,
            split_min_part_len: 2,
            foreign_letters: vec!['k', 'w', 'y'],
            foreign_exceptions: ["km", "kg", "kw", "kwh", "watt", "watts"]
                .iter()
                .map(|s| s.to_string())
                .collect(),
            foreign_bigrams: [
                "th", "sh", "ck", "wh", "ph", "gh", "b$", "c$", "d$", "f$", "g$", "k$", "p$", "t$",
            ]
            .iter()
            .map(|s| s.to_string())
            .collect(),
            noun_lower_ratio: 0.9,
            noun_min_len: 4,
        }
    }
}

impl ClassifierConfig {
    /// Parses TOML config text. Relative list paths resolve against `base_dir`.
    pub fn from_toml_str(text: &str, base_dir: &Path) -> Result<Self, ConfigError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| ConfigError::Parse(e.to_string()))?;
        let mut precedence = Vec::new();
        for name in &raw.precedence {
            let rule: RuleId = name.parse()?;
            if precedence.contains(&rule) {
                return Err(ConfigError::DuplicateRule(rule));
            }
            precedence.push(rule);
        }
        let lookup_policy = raw.lookup_policy.parse().map_err(|_| ConfigError::BadValue {
            field: "lookup_policy",
            expected: "one of exact, unitex_like, full_fold",
        })?;
        for (field, v) in [
            ("acronym_upper_ratio", raw.acronym_upper_ratio),
            ("proper_cap_ratio", raw.proper_cap_ratio),
            ("noun_lower_ratio", raw.noun_lower_ratio),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(ConfigError::BadValue {
                    field,
                    expected: "a ratio in [0, 1]",
                });
            }
        }
        if raw.acronym_min_len > raw.acronym_max_len {
            return Err(ConfigError::BadValue {
                field: "acronym_min_len",
                expected: "at most acronym_max_len",
            });
        }
        if raw.split_min_part_len == 0 {
            return Err(ConfigError::BadValue {
                field: "split_min_part_len",
                expected: "at least 1",
            });
        }
        let mut acronyms: BTreeSet<String> = raw.acronyms.iter().map(|s| fold(s)).collect();
        if let Some(p) = &raw.acronym_list {
            acronyms.extend(read_list(&base_dir.join(p))?.iter().map(|s| fold(s)));
        }
        let mut foreign_bigrams = raw.foreign_bigrams;
        if let Some(p) = &raw.bigram_list {
            foreign_bigrams.extend(read_list(&base_dir.join(p))?);
        }
        Ok(ClassifierConfig {
            precedence,
            lookup_policy,
            alphabet: raw.alphabet.chars().collect(),
            acronym_min_len: raw.acronym_min_len,
            acronym_max_len: raw.acronym_max_len,
            acronym_upper_ratio: raw.acronym_upper_ratio,
            acronyms,
            proper_cap_ratio: raw.proper_cap_ratio,
            proper_min_non_initial: raw.proper_min_non_initial,
            typo_min_candidate_len: raw.typo_min_candidate_len,
            split_min_part_len: raw.split_min_part_len,
            foreign_letters: raw.foreign_letters.chars().collect(),
            foreign_exceptions: raw.foreign_exceptions.iter().map(|s| fold(s)).collect(),
            foreign_bigrams,
            noun_lower_ratio: raw.noun_lower_ratio,
            noun_min_len: raw.noun_min_len,
        })
    }

    pub fn load(path: &Path) -> Result<Self, ConfigError> {
        let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_toml_str(&text, path.parent().unwrap_or(Path::new(".")))
    }
}

/// One item per non-empty line; `#` starts a comment line.
fn read_list(path: &Path) -> Result<Vec<String>, ConfigError> {
    let text = fs::read_to_string(path).map_err(|source| ConfigError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    Ok(text
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect())
}

/// Lexicon forms exactly one insertion, deletion or substitution away from
/// `form`, sorted. Candidates are built over `alphabet` and checked exactly.
pub fn edit_distance_1_candidates_with(form: &str, lex: &Lexicon, alphabet: &[char]) -> Vec<String> {
    let chars: Vec<char> = form.chars().collect();
    let mut cands: BTreeSet<String> = BTreeSet::new();
    let build = |prefix: &[char], mid: Option<char>, suffix: &[char]| -> String {
        prefix
            .iter()
            .copied()
            .chain(mid)
            .chain(suffix.iter().copied())
            .collect()
    };
    for i in 0..chars.len() {
        cands.insert(build(&chars[..i], None, &chars[i + 1..]));
        for &c in alphabet {
            if c != chars[i] {
                cands.insert(build(&chars[..i], Some(c), &chars[i + 1..]));
            }
        }
    }
    for i in 0..=chars.len() {
        for &c in alphabet {
            cands.insert(build(&chars[..i], Some(c), &chars[i..]));
        }
    }
    cands
        .into_iter()
        .filter(|c| !c.is_empty() && c != form && lex.form_id(c).is_some())
        .collect()
}

pub fn edit_distance_1_candidates(form: &str, lex: &Lexicon) -> Vec<String> {
    let alphabet: Vec<char> = PORTUGUESE_ALPHABET.chars().collect();
    edit_distance_1_candidates_with(form, lex, &alphabet)
}

const VOWELS: &str = "aeiouáàâãéêíóôõúü";

fn has_bigram(form: &str, bigram: &str) -> bool {
    let padded = format!("^{form}$");
    padded.contains(bigram)
}

struct Ctx<'a> {
    lex_new: &'a Lexicon,
    lex_old: Option<&'a Lexicon>,
    config: &'a ClassifierConfig,
}

impl Ctx<'_> {
    fn known(&self, form: &str) -> bool {
        self.lex_new.contains(form, self.config.lookup_policy)
    }

    fn rule(&self, rule: RuleId, rec: &UnknownRecord) -> Option<String> {
        let c = self.config;
        let form = rec.form.as_str();
        let len = form.chars().count();
        match rule {
            RuleId::Acronym => {
                if c.acronyms.contains(form) {
                    return Some("in acronym list".into());
                }
                if !(c.acronym_min_len..=c.acronym_max_len).contains(&len) {
                    return None;
                }
                let upper = ratio(rec.casing.all_upper, rec.frequency);
                if rec.frequency > 0 && upper >= c.acronym_upper_ratio {
                    return Some(format!(
                        "all caps in {}/{} occurrences",
                        rec.casing.all_upper, rec.frequency
                    ));
                }
                if form.chars().all(char::is_alphabetic) && !form.chars().any(|ch| VOWELS.contains(ch)) {
                    return Some("no vowels".into());
                }
                None
            }
            RuleId::OldSpelling => {
                let new = reform_normalize(form);
                if new == form || !self.known(&new) {
                    return None;
                }
                let old_note = match self.lex_old {
                    Some(old) if old.contains(form, c.lookup_policy) => ", old form in old lexicon",
                    _ => "",
                };
                Some(format!("reformed spelling {new} is known{old_note}"))
            }
            RuleId::ProperName => {
                if rec.non_initial >= c.proper_min_non_initial
                    && rec.non_initial > 0
                    && rec.mid_sentence_cap_ratio() >= c.proper_cap_ratio
                {
                    Some(format!(
                        "capitalized in {}/{} non-initial occurrences",
                        rec.non_initial_capitalized, rec.non_initial
                    ))
                } else {
                    None
                }
            }
            RuleId::Typo => {
                let near: Vec<String> = edit_distance_1_candidates_with(form, self.lex_new, &c.alphabet)
                    .into_iter()
                    .filter(|f| f.chars().count() >= c.typo_min_candidate_len)
                    .collect();
                if !near.is_empty() {
                    return Some(format!("one edit from {}", near.join(", ")));
                }
                let chars: Vec<(usize, char)> = form.char_indices().collect();
                for k in c.split_min_part_len..chars.len() {
                    if chars.len() - k < c.split_min_part_len {
                        break;
                    }
                    let (a, b) = form.split_at(chars[k].0);
                    if self.known(a) && self.known(b) {
                        return Some(format!("splits into {a}+{b}"));
                    }
                }
                None
            }
            RuleId::Foreign => {
                if !c.foreign_exceptions.contains(form) {
                    if let Some(ch) = form.chars().find(|ch| c.foreign_letters.contains(ch)) {
                        return Some(format!("letter {ch}"));
                    }
                }
                c.foreign_bigrams
                    .iter()
                    .find(|b| has_bigram(form, b))
                    .map(|b| format!("bigram {b}"))
            }
            RuleId::OtherNoun => {
                let lower = ratio(rec.casing.all_lower, rec.frequency);
                if len >= c.noun_min_len && rec.frequency > 0 && lower >= c.noun_lower_ratio {
                    Some(format!(
                        "lowercase in {}/{} occurrences",
                        rec.casing.all_lower, rec.frequency
                    ))
                } else {
                    None
                }
            }
        }
    }
}

/// Assigns a category to every record. `lex_old` only adds evidence.
pub fn classify(
    records: Vec<UnknownRecord>,
    lex_new: &Lexicon,
    lex_old: Option<&Lexicon>,
    config: &ClassifierConfig,
) -> Vec<UnknownRecord> {
    let ctx = Ctx {
        lex_new,
        lex_old,
        config,
    };
    records
        .into_iter()
        .map(|mut rec| {
            rec.evidence = config
                .precedence
                .iter()
                .filter_map(|&r| ctx.rule(r, &rec).map(|d| (r, d)))
                .collect();
            rec.winning_rule = rec.evidence.first().map(|(r, _)| *r);
            rec.category = Some(rec.winning_rule.map_or(Category::Other, RuleId::category));
            rec
        })
        .collect()
}

pub const CLASSIFICATION_HEADER: &str = "form\tfrequency\tcategory\twinning_rule\tfired_rules\tevidence";

pub fn to_tsv(records: &[UnknownRecord]) -> String {
    let mut out = String::from(CLASSIFICATION_HEADER);
    out.push('\n');
    for r in records {
        let fired: Vec<&str> = r.evidence.iter().map(|(id, _)| id.as_str()).collect();
        let evidence: Vec<String> = r.evidence.iter().map(|(id, d)| format!("{id}: {d}")).collect();
        let _ = writeln!(
            out,
            "{}\t{}\t{}\t{}\t{}\t{}",
            r.form,
            r.frequency,
            r.category.unwrap_or(Category::Other),
            r.winning_rule.map_or("-", RuleId::as_str),
            fired.join(","),
            evidence.join("; "),
        );
    }
    out
}

/// Record count per category, every category present.
pub fn histogram(records: &[UnknownRecord]) -> BTreeMap<Category, u64> {
    let mut h: BTreeMap<Category, u64> = Category::ALL.iter().map(|&c| (c, 0)).collect();
    for r in records {
        *h.entry(r.category.unwrap_or(Category::Other)).or_insert(0) += 1;
    }
    h
}

pub fn render_histogram(h: &BTreeMap<Category, u64>) -> String {
    let mut out = String::new();
    let total: u64 = h.values().sum();
    for (c, n) in h {
        let _ = writeln!(out, "{:<20}  {n}", c.as_str());
    }
    let _ = writeln!(out, "{:<20}  {total}", "total");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::delaf::{DictFile, RoleTag};
    use crate::lexicon::compile;

    fn lex(text: &str) -> Lexicon {
        compile(&[DictFile::parse_str(text, RoleTag::General).unwrap()]).unwrap()
    }

    fn fixture_lex() -> Lexicon {
        lex("um,.DET\nchorão,.N\nideia,.N\nabdômen,.N\numbandista,.N\ncasa,.N\n")
    }

    fn lower(form: &str, n: usize) -> UnknownRecord {
        UnknownRecord::from_occurrences(form, std::iter::repeat_n((form, false), n))
    }

    fn run(rec: UnknownRecord) -> UnknownRecord {
        classify(vec![rec], &fixture_lex(), None, &ClassifierConfig::default()).remove(0)
    }

    #[test]
    fn published_examples() {
        assert_eq!(run(lower("umchorão", 1)).category, Some(Category::TypingError));
        assert_eq!(run(lower("idéia", 2)).category, Some(Category::OldSpelling));
        let ufrj = UnknownRecord::from_occurrences("ufrj", [("UFRJ", false), ("UFRJ", true)]);
        assert_eq!(run(ufrj).category, Some(Category::AbbreviationAcronym));
        let uand = UnknownRecord::from_occurrences("uanderson", [("Uanderson", false), ("Uanderson", false)]);
        assert_eq!(run(uand).category, Some(Category::ProperName));
        assert_eq!(run(lower("united", 1)).category, Some(Category::ForeignOrSlang));
        assert_eq!(run(lower("umidificador", 3)).category, Some(Category::OtherNoun));
        let abou = UnknownRecord::from_occurrences("aboubacar", [("Aboubacar", true), ("aboubacar", false)]);
        let abou = run(abou);
        assert_eq!(abou.category, Some(Category::Other));
        assert!(abou.evidence.is_empty());
    }

    #[test]
    fn evidence_records_all_rules() {
        // lowercase, long, one edit from umbandista: typo and noun both fire
        let r = run(lower("ubandista", 2));
        assert_eq!(r.category, Some(Category::TypingError));
        assert_eq!(r.fired_rules(), vec![RuleId::Typo, RuleId::OtherNoun]);
        let cfg = ClassifierConfig {
            precedence: vec![RuleId::OtherNoun, RuleId::Typo],
            ..ClassifierConfig::default()
        };
        let r = classify(vec![lower("ubandista", 2)], &fixture_lex(), None, &cfg).remove(0);
        assert_eq!(r.category, Some(Category::OtherNoun));
    }

    #[test]
    fn edit_candidates() {
        assert_eq!(edit_distance_1_candidates("abdômem", &fixture_lex()), vec!["abdômen"]);
        assert!(edit_distance_1_candidates("xyzq", &fixture_lex()).is_empty());
        assert_eq!(edit_distance_1_candidates("casas", &fixture_lex()), vec!["casa"]);
        assert_eq!(edit_distance_1_candidates("cas", &fixture_lex()), vec!["casa"]);
        assert!(edit_distance_1_candidates("casa", &fixture_lex()).is_empty());
    }

    #[test]
    fn casing_profile_sums() {
        let r = UnknownRecord::from_occurrences("x", [("Abc", true), ("abc", false), ("ABC", false), ("aBc", false)]);
        assert_eq!(r.casing.total(), r.frequency);
        assert_eq!(r.frequency, 4);
        assert_eq!(r.non_initial, 3);
        assert_eq!(r.non_initial_capitalized, 1);
    }

    #[test]
    fn config_parsing() {
        let cfg = ClassifierConfig::from_toml_str(
            "precedence = [\"R-typo\", \"acronym\"]\nsplit_min_part_len = 3\nacronyms = [\"ABS\"]\n",
            Path::new("."),
        )
        .unwrap();
        assert_eq!(cfg.precedence, vec![RuleId::Typo, RuleId::Acronym]);
        assert_eq!(cfg.split_min_part_len, 3);
        assert!(cfg.acronyms.contains("abs"));
        assert!(matches!(
            ClassifierConfig::from_toml_str("precedence = [\"nonsense\"]", Path::new(".")),
            Err(ConfigError::UnknownRule(_))
        ));
        assert!(matches!(
            ClassifierConfig::from_toml_str("precedence = [\"typo\", \"R-typo\"]", Path::new(".")),
            Err(ConfigError::DuplicateRule(RuleId::Typo))
        ));
        assert!(ClassifierConfig::from_toml_str("bogus = 1", Path::new(".")).is_err());
        assert_eq!(
            ClassifierConfig::from_toml_str("", Path::new(".")).unwrap(),
            ClassifierConfig::default()
        );
    }

    #[test]
    fn histogram_is_total() {
        let recs = classify(
            vec![lower("umchorão", 1), lower("united", 1), lower("zz", 1)],
            &fixture_lex(),
            None,
            &ClassifierConfig::default(),
        );
        let h = histogram(&recs);
        assert_eq!(h.values().sum::<u64>(), 3);
        assert_eq!(h.len(), 7);
        let tsv = to_tsv(&recs);
        assert_eq!(tsv.lines().count(), 4);
        assert!(tsv.contains("umchorão\t1\ttyping_error\tR-typo\t"));
    }
}

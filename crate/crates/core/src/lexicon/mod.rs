//! Compiled lexicons.
//!
//! A [`Lexicon`] maps surface forms to deduplicated analyses. Forms live in
//! a minimal acyclic automaton whose key ranks index the payload tables; a
//! second automaton over case-folded forms serves `full_fold` lookups.
//! Forms that span several tokens (`por exemplo`, `guarda-chuva`) are also
//! indexed by their first token for compound matching.

mod binary;
mod dafsa;

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::PathBuf;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::casing::{capitalize_first, fold, is_all_lowercase};
use crate::delaf::{DictEntry, DictFile, RoleTag};
use crate::preprocess::{tokenize, Token, TokenKind};
use dafsa::Dafsa;

pub use binary::FORMAT_VERSION;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("no dictionary entries to compile")]
    EmptyLexicon,
    #[error("lexicon format version {found} is not supported (expected {expected})")]
    FormatVersionMismatch { found: u16, expected: u16 },
    #[error("corrupt lexicon file: {0}")]
    CorruptFile(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

/// Which token variants may match a lexicon form.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseFoldPolicy {
    /// Byte-identical forms only.
    Exact,
    /// Exact match, or an all-lowercase form matched by its capitalized or
    /// all-uppercase variant. Forms with any uppercase letter match exactly.
    #[default]
    UnitexLike,
    /// Case-folded token equals case-folded form.
    FullFold,
}

impl CaseFoldPolicy {
    pub fn as_str(self) -> &'static str {
        match self {
            CaseFoldPolicy::Exact => "exact",
            CaseFoldPolicy::UnitexLike => "unitex_like",
            CaseFoldPolicy::FullFold => "full_fold",
        }
    }

    /// Whether a single token may match a single form under this policy.
    pub fn matches(self, token: &str, form: &str) -> bool {
        match self {
            CaseFoldPolicy::Exact => token == form,
            CaseFoldPolicy::UnitexLike => {
                token == form
                    || (is_all_lowercase(form) && (capitalize_first(form) == token || form.to_uppercase() == token))
            }
            CaseFoldPolicy::FullFold => token == form || fold(token) == fold(form),
        }
    }
}

impl fmt::Display for CaseFoldPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for CaseFoldPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exact" => Ok(CaseFoldPolicy::Exact),
            "unitex_like" | "unitex-like" => Ok(CaseFoldPolicy::UnitexLike),
            "full_fold" | "full-fold" => Ok(CaseFoldPolicy::FullFold),
            other => Err(format!("unknown case policy {other:?}")),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormId(pub u32);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnalysisId(pub u32);

/// One analysis of one lexicon form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AnalysisRef {
    pub form: FormId,
    pub analysis: AnalysisId,
}

/// Set of dictionary roles an analysis came from.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct RoleSet(pub(crate) u8);

impl RoleSet {
    pub fn contains(self, role: RoleTag) -> bool {
        self.0 & role.bit() != 0
    }

    pub fn insert(&mut self, role: RoleTag) {
        self.0 |= role.bit();
    }

    pub fn iter(self) -> impl Iterator<Item = RoleTag> {
        RoleTag::ALL.into_iter().filter(move |r| self.contains(*r))
    }
}

/// Lemma and codes of an analysis. A DELAF line with several `:` groups
/// yields one analysis per group.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Analysis {
    pub lemma: String,
    pub gram_code: String,
    pub sem_traits: Vec<String>,
    pub flex_code: Option<String>,
    pub roles: RoleSet,
}

impl Analysis {
    pub fn to_entry(&self, surface_form: &str) -> DictEntry {
        DictEntry {
            surface_form: surface_form.to_string(),
            lemma: self.lemma.clone(),
            gram_code: self.gram_code.clone(),
            sem_traits: self.sem_traits.clone(),
            flex_codes: self.flex_code.iter().cloned().collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct LexiconStats {
    pub entry_count: u64,
    pub unique_form_count: u64,
    /// Unique forms after case folding.
    pub folded_form_count: u64,
    pub analysis_count: u64,
    pub compound_form_count: u64,
    pub state_count: u64,
    pub transition_count: u64,
}

/// CSR-style lists: values of item `i` are `values[starts[i]..starts[i + 1]]`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub(crate) struct Offsets {
    pub(crate) starts: Vec<u32>,
    pub(crate) values: Vec<u32>,
}

impl Offsets {
    fn get(&self, i: u32) -> &[u32] {
        let i = i as usize;
        &self.values[self.starts[i] as usize..self.starts[i + 1] as usize]
    }

    fn from_lists<I: IntoIterator<Item = Vec<u32>>>(lists: I) -> Self {
        let mut o = Offsets {
            starts: vec![0],
            values: Vec::new(),
        };
        for l in lists {
            o.values.extend(l);
            o.starts.push(o.values.len() as u32);
        }
        o
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct PatternToken {
    text: String,
    space_before: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct CompoundPattern {
    pub(crate) form: FormId,
    /// Position of the form's first entry across all compiled files.
    pub(crate) ordinal: u32,
    tokens: Vec<PatternToken>,
}

/// A multiword entry matched at the start of a token window.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompoundMatch {
    /// Number of source tokens covered, spaces included.
    pub span: usize,
    pub form: FormId,
    pub analyses: Vec<AnalysisRef>,
}

fn pattern_tokens(form: &str) -> Vec<PatternToken> {
    let mut out = Vec::new();
    let mut space_before = false;
    for t in tokenize(form).tokens {
        if t.kind == TokenKind::Space {
            space_before = true;
        } else {
            out.push(PatternToken {
                text: t.text,
                space_before: space_before && !out.is_empty(),
            });
            space_before = false;
        }
    }
    out
}

/// Result of [`Lexicon::check_automaton`]. A sound minimal automaton is
/// deterministic, acyclic and has no equivalent states.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AutomatonCheck {
    pub deterministic: bool,
    pub acyclic: bool,
    pub equivalent_state_pairs: usize,
}

impl AutomatonCheck {
    pub fn is_minimal(&self) -> bool {
        self.deterministic && self.acyclic && self.equivalent_state_pairs == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lexicon {
    pub(crate) forms: Dafsa,
    pub(crate) form_analyses: Offsets,
    pub(crate) folded: Dafsa,
    pub(crate) folded_forms: Offsets,
    pub(crate) analyses: Vec<Analysis>,
    pub(crate) compounds: Vec<CompoundPattern>,
    compound_by_first: HashMap<String, Vec<u32>>,
    pub(crate) stats: LexiconStats,
}

#[derive(Hash, PartialEq, Eq)]
struct AnalysisKey {
    lemma: String,
    gram_code: String,
    sem_traits: Vec<String>,
    flex_code: Option<String>,
}

struct FormAcc {
    analyses: BTreeSet<u32>,
    ordinal: u32,
}

/// Accumulates entries from any number of dictionaries.
#[derive(Default)]
pub struct LexiconBuilder {
    forms: HashMap<String, FormAcc>,
    analysis_ids: HashMap<AnalysisKey, u32>,
    analyses: Vec<Analysis>,
    entry_count: u64,
    next_ordinal: u32,
}

impl LexiconBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    fn intern(&mut self, key: AnalysisKey, roles: RoleSet) -> u32 {
        if let Some(&id) = self.analysis_ids.get(&key) {
            self.analyses[id as usize].roles.0 |= roles.0;
            return id;
        }
        let id = self.analyses.len() as u32;
        self.analyses.push(Analysis {
            lemma: key.lemma.clone(),
            gram_code: key.gram_code.clone(),
            sem_traits: key.sem_traits.clone(),
            flex_code: key.flex_code.clone(),
            roles,
        });
        self.analysis_ids.insert(key, id);
        id
    }

    fn attach(&mut self, form: &str, analysis: u32, ordinal: u32) {
        match self.forms.get_mut(form) {
            Some(acc) => {
                acc.analyses.insert(analysis);
                acc.ordinal = acc.ordinal.min(ordinal);
            }
            None => {
                self.forms.insert(
                    form.to_string(),
                    FormAcc {
                        analyses: BTreeSet::from([analysis]),
                        ordinal,
                    },
                );
            }
        }
    }

    pub fn add_entry(&mut self, entry: &DictEntry, role: RoleTag) {
        let ordinal = self.next_ordinal;
        self.next_ordinal += 1;
        self.entry_count += 1;
        let mut roles = RoleSet::default();
        roles.insert(role);
        let flex: Vec<Option<String>> = if entry.flex_codes.is_empty() {
            vec![None]
        } else {
            entry.flex_codes.iter().cloned().map(Some).collect()
        };
        for flex_code in flex {
            let id = self.intern(
                AnalysisKey {
                    lemma: entry.lemma.clone(),
                    gram_code: entry.gram_code.clone(),
                    sem_traits: entry.sem_traits.clone(),
                    flex_code,
                },
                roles,
            );
            self.attach(&entry.surface_form, id, ordinal);
        }
    }

    pub fn add_file(&mut self, file: &DictFile) {
        for e in &file.entries {
            self.add_entry(e, file.role_tag);
        }
    }

    /// Adds every analysis of an already compiled lexicon, keeping roles and
    /// compound order after anything added before.
    pub fn add_lexicon(&mut self, lex: &Lexicon) {
        let base = self.next_ordinal;
        let mut ordinals: HashMap<u32, u32> = HashMap::new();
        for c in &lex.compounds {
            ordinals.insert(c.form.0, c.ordinal);
        }
        let mut max_ordinal = 0;
        for (rank, form) in lex.forms.keys().into_iter().enumerate() {
            let ordinal = base + ordinals.get(&(rank as u32)).copied().unwrap_or(0);
            max_ordinal = max_ordinal.max(ordinal);
            for &a in lex.form_analyses.get(rank as u32) {
                let an = &lex.analyses[a as usize];
                let id = self.intern(
                    AnalysisKey {
                        lemma: an.lemma.clone(),
                        gram_code: an.gram_code.clone(),
                        sem_traits: an.sem_traits.clone(),
                        flex_code: an.flex_code.clone(),
                    },
                    an.roles,
                );
                self.attach(&form, id, ordinal);
            }
        }
        self.entry_count += lex.stats.entry_count;
        self.next_ordinal = base.max(max_ordinal + 1).max(base + lex.stats.entry_count as u32);
    }

    pub fn build(self) -> Result<Lexicon, LexiconError> {
        if self.entry_count == 0 || self.forms.is_empty() {
            return Err(LexiconError::EmptyLexicon);
        }
        let mut forms: Vec<(String, FormAcc)> = self.forms.into_iter().collect();
        forms.sort_unstable_by(|a, b| a.0.cmp(&b.0));

        let automaton = Dafsa::from_sorted(forms.iter().map(|(f, _)| f.as_str())).expect("sorted unique keys");
        let form_analyses = Offsets::from_lists(forms.iter().map(|(_, acc)| acc.analyses.iter().copied().collect()));

        let mut folded_map: BTreeMap<String, Vec<u32>> = BTreeMap::new();
        for (rank, (form, _)) in forms.iter().enumerate() {
            folded_map.entry(fold(form)).or_default().push(rank as u32);
        }
        let folded = Dafsa::from_sorted(folded_map.keys().map(String::as_str)).expect("sorted unique keys");
        let folded_forms = Offsets::from_lists(folded_map.into_values());

        let mut compounds = Vec::new();
        for (rank, (form, acc)) in forms.iter().enumerate() {
            let tokens = pattern_tokens(form);
            if tokens.len() > 1 {
                compounds.push(CompoundPattern {
                    form: FormId(rank as u32),
                    ordinal: acc.ordinal,
                    tokens,
                });
            }
        }
        compounds.sort_by_key(|c| (c.ordinal, c.form));

        Ok(Lexicon::assemble(
            automaton,
            form_analyses,
            folded,
            folded_forms,
            self.analyses,
            compounds,
            self.entry_count,
        ))
    }
}

/// Compiles dictionaries in the given order.
pub fn compile(dicts: &[DictFile]) -> Result<Lexicon, LexiconError> {
    let mut b = LexiconBuilder::new();
    for d in dicts {
        b.add_file(d);
    }
    b.build()
}

impl Lexicon {
    fn assemble(
        forms: Dafsa,
        form_analyses: Offsets,
        folded: Dafsa,
        folded_forms: Offsets,
        analyses: Vec<Analysis>,
        compounds: Vec<CompoundPattern>,
        entry_count: u64,
    ) -> Lexicon {
        let mut compound_by_first: HashMap<String, Vec<u32>> = HashMap::new();
        for (i, c) in compounds.iter().enumerate() {
            compound_by_first
                .entry(fold(&c.tokens[0].text))
                .or_default()
                .push(i as u32);
        }
        let stats = LexiconStats {
            entry_count,
            unique_form_count: u64::from(forms.key_count),
            folded_form_count: u64::from(folded.key_count),
            analysis_count: analyses.len() as u64,
            compound_form_count: compounds.len() as u64,
            state_count: forms.state_count() as u64,
            transition_count: forms.transition_count() as u64,
        };
        Lexicon {
            forms,
            form_analyses,
            folded,
            folded_forms,
            analyses,
            compounds,
            compound_by_first,
            stats,
        }
    }

    /// Rebuilds a compound pattern list from stored (form, ordinal) pairs.
    pub(crate) fn compounds_from(forms: &Dafsa, stored: &[(u32, u32)]) -> Option<Vec<CompoundPattern>> {
        stored
            .iter()
            .map(|&(form, ordinal)| {
                let text = forms.key(form)?;
                Some(CompoundPattern {
                    form: FormId(form),
                    ordinal,
                    tokens: pattern_tokens(&text),
                })
            })
            .collect()
    }

    pub(crate) fn from_parts(
        forms: Dafsa,
        form_analyses: Offsets,
        folded: Dafsa,
        folded_forms: Offsets,
        analyses: Vec<Analysis>,
        compounds: Vec<CompoundPattern>,
        entry_count: u64,
    ) -> Lexicon {
        Lexicon::assemble(
            forms,
            form_analyses,
            folded,
            folded_forms,
            analyses,
            compounds,
            entry_count,
        )
    }

    /// Union of several compiled lexicons, in order.
    pub fn union(lexicons: &[&Lexicon]) -> Result<Lexicon, LexiconError> {
        let mut b = LexiconBuilder::new();
        for l in lexicons {
            b.add_lexicon(l);
        }
        b.build()
    }

    pub fn stats(&self) -> &LexiconStats {
        &self.stats
    }

    /// Structural checks on the forms automaton.
    pub fn check_automaton(&self) -> AutomatonCheck {
        AutomatonCheck {
            deterministic: self.forms.is_deterministic(),
            acyclic: self.forms.is_acyclic(),
            equivalent_state_pairs: self.forms.equivalent_state_pairs(),
        }
    }

    pub fn form_id(&self, form: &str) -> Option<FormId> {
        self.forms.index(form).map(FormId)
    }

    pub fn form_text(&self, id: FormId) -> String {
        self.forms.key(id.0).expect("form id from this lexicon")
    }

    /// All forms in code-point order.
    pub fn forms(&self) -> Vec<String> {
        self.forms.keys()
    }

    pub fn analysis(&self, id: AnalysisId) -> &Analysis {
        &self.analyses[id.0 as usize]
    }

    pub fn analyses_of(&self, form: FormId) -> impl Iterator<Item = AnalysisRef> + '_ {
        self.form_analyses.get(form.0).iter().map(move |&a| AnalysisRef {
            form,
            analysis: AnalysisId(a),
        })
    }

    /// DELAF entry for one analysis; one flex code per entry.
    pub fn entry(&self, r: AnalysisRef) -> DictEntry {
        self.analysis(r.analysis).to_entry(&self.form_text(r.form))
    }

    pub fn is_compound(&self, form: FormId) -> bool {
        self.compounds.iter().any(|c| c.form == form)
    }

    /// Forms the token may match under the policy, in rank order.
    pub fn lookup_forms(&self, token: &str, policy: CaseFoldPolicy) -> Vec<FormId> {
        let mut out = Vec::new();
        match policy {
            CaseFoldPolicy::Exact => out.extend(self.forms.index(token).map(FormId)),
            CaseFoldPolicy::UnitexLike => {
                out.extend(self.forms.index(token).map(FormId));
                if !is_all_lowercase(token) {
                    let lower = fold(token);
                    if capitalize_first(&lower) == token || lower.to_uppercase() == token {
                        if let Some(id) = self.forms.index(&lower) {
                            out.push(FormId(id));
                        }
                    }
                }
            }
            CaseFoldPolicy::FullFold => {
                if let Some(k) = self.folded.index(&fold(token)) {
                    out.extend(self.folded_forms.get(k).iter().map(|&f| FormId(f)));
                }
            }
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// Union of analyses of every form the token may match. Empty means unknown.
    pub fn lookup(&self, token: &str, policy: CaseFoldPolicy) -> Vec<AnalysisRef> {
        self.lookup_forms(token, policy)
            .into_iter()
            .flat_map(|f| self.analyses_of(f))
            .collect()
    }

    pub fn contains(&self, token: &str, policy: CaseFoldPolicy) -> bool {
        match policy {
            CaseFoldPolicy::Exact => self.forms.index(token).is_some(),
            _ => !self.lookup_forms(token, policy).is_empty(),
        }
    }

    pub fn has_compounds(&self) -> bool {
        !self.compounds.is_empty()
    }

    /// Multiword entries matching at the start of `window`, longest first,
    /// ties in dictionary order. Pattern tokens separated by a space need
    /// exactly one whitespace token between them in the source; adjacent
    /// pattern tokens need adjacent source tokens.
    pub fn match_compounds(&self, window: &[Token], policy: CaseFoldPolicy) -> Vec<CompoundMatch> {
        let Some(first) = window.first() else {
            return Vec::new();
        };
        if first.kind == TokenKind::Space {
            return Vec::new();
        }
        let Some(candidates) = self.compound_by_first.get(&fold(&first.text)) else {
            return Vec::new();
        };
        let mut found: Vec<(usize, u32, FormId)> = Vec::new();
        for &ci in candidates {
            let c = &self.compounds[ci as usize];
            if let Some(span) = match_pattern(&c.tokens, window, policy) {
                found.push((span, c.ordinal, c.form));
            }
        }
        found.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        found
            .into_iter()
            .map(|(span, _, form)| CompoundMatch {
                span,
                form,
                analyses: self.analyses_of(form).collect(),
            })
            .collect()
    }
}

fn match_pattern(pattern: &[PatternToken], window: &[Token], policy: CaseFoldPolicy) -> Option<usize> {
    let mut pos = 0;
    for p in pattern {
        if p.space_before {
            if window.get(pos)?.kind != TokenKind::Space {
                return None;
            }
            pos += 1;
        }
        let t = window.get(pos)?;
        if t.kind == TokenKind::Space || !policy.matches(&t.text, &p.text) {
            return None;
        }
        pos += 1;
    }
    Some(pos)
}

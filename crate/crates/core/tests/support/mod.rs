//! Brute-force reference implementations and random instance generators.
//!
//! Nothing here uses the automaton, the tokenizer or the DICO engine, so the
//! results are an independent check on them.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap};

use lexcov::delaf::DictEntry;
use lexcov::lexicon::CaseFoldPolicy;
use rand::seq::SliceRandom;
use rand::Rng;

pub const LETTERS: &[char] = &[
    'a', 'b', 'c', 'd', 'e', 'i', 'l', 'm', 'n', 'o', 'r', 's', 't', 'u', 'á', 'ã', 'â', 'ç', 'é', 'ê', 'í', 'ó', 'õ',
    'ú',
];

const CODES: &[&str] = &["N", "V", "A", "ADV", "PREP", "DET", "PRO"];
const FLEX: &[&str] = &["ms", "fs", "mp", "fp", "P3s", "J3s"];

pub fn random_word<R: Rng>(rng: &mut R, max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| *LETTERS.choose(rng).unwrap()).collect()
}

fn capitalize(w: &str) -> String {
    let mut c = w.chars();
    match c.next() {
        Some(f) => f.to_uppercase().chain(c).collect(),
        None => String::new(),
    }
}

/// Random simple-word entries. Most forms are lowercase; some are
/// capitalized or all caps, like proper names and acronyms.
pub fn random_entries<R: Rng>(rng: &mut R, n: usize) -> Vec<DictEntry> {
    let mut out = Vec::with_capacity(n);
    for _ in 0..n {
        let base = random_word(rng, 9);
        let form = match rng.gen_range(0..20) {
            0..=1 => capitalize(&base),
            2 => base.to_uppercase(),
            _ => base,
        };
        let lemma = if rng.gen_bool(0.5) {
            form.clone()
        } else {
            random_word(rng, 6)
        };
        let mut e = DictEntry::new(form, lemma, *CODES.choose(rng).unwrap());
        if rng.gen_bool(0.6) {
            e.flex_codes.push(FLEX.choose(rng).unwrap().to_string());
        }
        out.push(e);
    }
    out
}

/// Word tokens for a random text: dictionary forms with random casing mixed
/// with fresh words.
pub fn random_words<R: Rng>(rng: &mut R, entries: &[DictEntry], n: usize) -> Vec<String> {
    (0..n)
        .map(|_| {
            if !entries.is_empty() && rng.gen_bool(0.6) {
                let f = &entries.choose(rng).unwrap().surface_form;
                match rng.gen_range(0..4) {
                    0 => capitalize(f),
                    1 => f.to_uppercase(),
                    2 => f.to_lowercase(),
                    _ => f.clone(),
                }
            } else {
                random_word(rng, 9)
            }
        })
        .collect()
}

/// Joins words with a mix of spaces and punctuation.
pub fn join_words<R: Rng>(rng: &mut R, words: &[String]) -> String {
    let mut text = String::new();
    for (i, w) in words.iter().enumerate() {
        if i > 0 {
            text.push_str(match rng.gen_range(0..10) {
                0 => ", ",
                1 => ". ",
                2 => "\n",
                3 => " - ",
                _ => " ",
            });
        }
        text.push_str(w);
    }
    text.push('.');
    text
}

/// Hash-map lexicon answering lookups by spelling out each policy.
pub struct OracleLexicon {
    by_form: HashMap<String, BTreeSet<DictEntry>>,
    by_folded: HashMap<String, BTreeSet<String>>,
}

impl OracleLexicon {
    pub fn new(entries: &[DictEntry]) -> Self {
        let mut by_form: HashMap<String, BTreeSet<DictEntry>> = HashMap::new();
        let mut by_folded: HashMap<String, BTreeSet<String>> = HashMap::new();
        for e in entries {
            by_form.entry(e.surface_form.clone()).or_default().insert(e.clone());
            by_folded
                .entry(e.surface_form.to_lowercase())
                .or_default()
                .insert(e.surface_form.clone());
        }
        OracleLexicon { by_form, by_folded }
    }

    pub fn matching_forms(&self, token: &str, policy: CaseFoldPolicy) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        if self.by_form.contains_key(token) {
            out.insert(token.to_string());
        }
        match policy {
            CaseFoldPolicy::Exact => {}
            CaseFoldPolicy::UnitexLike => {
                let lower = token.to_lowercase();
                let lower_form_ok = self.by_form.contains_key(&lower) && !lower.chars().any(char::is_uppercase);
                if lower_form_ok && (token == capitalize(&lower) || token == lower.to_uppercase()) {
                    out.insert(lower);
                }
            }
            CaseFoldPolicy::FullFold => {
                if let Some(forms) = self.by_folded.get(&token.to_lowercase()) {
                    out.extend(forms.iter().cloned());
                }
            }
        }
        out
    }

    pub fn lookup(&self, token: &str, policy: CaseFoldPolicy) -> BTreeSet<DictEntry> {
        self.matching_forms(token, policy)
            .iter()
            .flat_map(|f| self.by_form[f].iter().cloned())
            .collect()
    }
}

/// Expected dlf and err for simple-word dictionaries.
pub fn oracle_dico(
    lex: &OracleLexicon,
    words: &[String],
    policy: CaseFoldPolicy,
) -> (BTreeSet<DictEntry>, BTreeSet<String>) {
    let mut dlf = BTreeSet::new();
    let mut err = BTreeSet::new();
    for w in words {
        let found = lex.lookup(w, policy);
        if found.is_empty() {
            err.insert(w.clone());
        } else {
            dlf.extend(found);
        }
    }
    (dlf, err)
}

/// Plain dynamic-programming Levenshtein distance over chars.
pub fn levenshtein(a: &str, b: &str) -> usize {
    let a: Vec<char> = a.chars().collect();
    let b: Vec<char> = b.chars().collect();
    let mut prev: Vec<usize> = (0..=b.len()).collect();
    for i in 1..=a.len() {
        let mut cur = vec![i; b.len() + 1];
        for j in 1..=b.len() {
            let sub = prev[j - 1] + usize::from(a[i - 1] != b[j - 1]);
            cur[j] = sub.min(prev[j] + 1).min(cur[j - 1] + 1);
        }
        prev = cur;
    }
    prev[b.len()]
}

/// One row of the labeled unknown-forms fixture.
pub struct FixtureForm {
    pub form: String,
    /// `(spelling, sentence_initial)` per occurrence.
    pub occurrences: Vec<(String, bool)>,
    pub label: Option<String>,
}

pub fn fixtures_dir() -> std::path::PathBuf {
    std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures")
}

pub fn load_classifier_fixture() -> Vec<FixtureForm> {
    let text = std::fs::read_to_string(fixtures_dir().join("classifier/unknown_forms.tsv")).unwrap();
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.is_empty())
        .map(|l| {
            let cols: Vec<&str> = l.split('\t').collect();
            assert_eq!(cols.len(), 3, "bad fixture row {l:?}");
            let occurrences = cols[1]
                .split(' ')
                .map(|o| match o.strip_prefix('^') {
                    Some(rest) => (rest.to_string(), true),
                    None => (o.to_string(), false),
                })
                .collect();
            FixtureForm {
                form: cols[0].to_string(),
                occurrences,
                label: (cols[2] != "-").then(|| cols[2].to_string()),
            }
        })
        .collect()
}

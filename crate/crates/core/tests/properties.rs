use std::collections::BTreeSet;

use lexcov::classify::{classify, ClassifierConfig, RuleId, UnknownRecord};
use lexcov::coverage::{coverage, diff_dictionaries, FoldMode, Recognition, WordList};
use lexcov::delaf::{parse_entry, serialize_entry, DictEntry, DictFile, RoleTag};
use lexcov::lexicon::{compile, CaseFoldPolicy, Lexicon};
use lexcov::preprocess::{normalize_delimiters, reform_normalize, strip_diacritics, tokenize};
use proptest::prelude::*;
use proptest::sample::subsequence;

fn word() -> impl Strategy<Value = String> {
    "[a-záãâçéêíóõôúü]{1,8}"
}

fn cased_word() -> impl Strategy<Value = String> {
    "[a-zA-ZáãçéíóÁÉÍ]{1,7}"
}

fn lexicon(forms: &[String]) -> Option<Lexicon> {
    let entries: Vec<DictEntry> = forms.iter().map(|f| DictEntry::new(f.clone(), "", "N")).collect();
    compile(&[DictFile::new(entries, RoleTag::General)]).ok()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn tokenize_is_lossless(s in any::<String>()) {
        let stream = tokenize(&s);
        prop_assert_eq!(stream.text(), s.clone());
        let mut at = 0;
        for t in &stream.tokens {
            prop_assert_eq!(t.start, at);
            prop_assert_eq!(&s[t.start..t.end], t.text.as_str());
            at = t.end;
        }
        prop_assert_eq!(at, s.len());
    }

    #[test]
    fn normalize_is_idempotent(s in any::<String>()) {
        let once = normalize_delimiters(&s);
        prop_assert_eq!(normalize_delimiters(&once), once);
    }

    #[test]
    fn reform_is_idempotent_and_keeps_the_skeleton(w in "[a-zçáéíóúâêôãõüàï]{1,12}") {
        let once = reform_normalize(&w);
        prop_assert_eq!(reform_normalize(&once), once.clone());
        prop_assert_eq!(strip_diacritics(&once), strip_diacritics(&w));
    }

    #[test]
    fn delaf_round_trip(
        form in "[a-zá ,.\\\\+:-]{1,10}",
        lemma in "[a-zé,.\\\\]{0,8}",
        code in "[A-Z]{1,4}",
        sem in proptest::collection::vec("[A-Za-z]{1,4}", 0..3),
        flex in proptest::collection::vec("[A-Za-z0-9]{1,4}", 0..3),
    ) {
        let mut e = DictEntry::new(form, lemma, code);
        e.sem_traits = sem;
        e.flex_codes = flex;
        let line = serialize_entry(&e);
        let back = parse_entry(&line).unwrap();
        // an empty lemma reads back as the form
        let mut expected = e.clone();
        if expected.lemma.is_empty() {
            expected.lemma = expected.surface_form.clone();
        }
        prop_assert_eq!(back.clone(), expected);
        prop_assert_eq!(serialize_entry(&back), line);
    }

    #[test]
    fn more_entries_never_add_unknowns(
        base in proptest::collection::vec(word(), 1..30),
        extra in proptest::collection::vec(word(), 0..30),
        corpus in proptest::collection::vec(cased_word(), 0..60),
    ) {
        let small = lexicon(&base).unwrap();
        let all: Vec<String> = base.iter().chain(&extra).cloned().collect();
        let big = lexicon(&all).unwrap();
        for policy in [CaseFoldPolicy::Exact, CaseFoldPolicy::UnitexLike, CaseFoldPolicy::FullFold] {
            for fold in [FoldMode::Cased, FoldMode::Folded] {
                let wl = WordList::from_words(corpus.iter().map(String::as_str), fold, "c");
                let a = coverage(&wl, &Recognition::Lexicon { lexicon: &small, policy }, "small").unwrap();
                let b = coverage(&wl, &Recognition::Lexicon { lexicon: &big, policy }, "big").unwrap();
                prop_assert!(b.types_unknown <= a.types_unknown);
                prop_assert!(b.tokens_unknown <= a.tokens_unknown);
            }
        }
    }

    #[test]
    fn folded_unknown_types_never_exceed_cased(
        forms in proptest::collection::vec(cased_word(), 1..30),
        corpus in proptest::collection::vec(cased_word(), 0..60),
    ) {
        let lex = lexicon(&forms).unwrap();
        let err: BTreeSet<String> = corpus
            .iter()
            .filter(|w| !lex.contains(w, CaseFoldPolicy::UnitexLike))
            .cloned()
            .collect();
        let rec = Recognition::Unknown { corpus_id: "c", err: &err };
        let cased = WordList::from_words(corpus.iter().map(String::as_str), FoldMode::Cased, "c");
        let folded = WordList::from_words(corpus.iter().map(String::as_str), FoldMode::Folded, "c");
        let c = coverage(&cased, &rec, "d").unwrap();
        let f = coverage(&folded, &rec, "d").unwrap();
        prop_assert!(f.types_unknown <= c.types_unknown);
        prop_assert_eq!(c.tokens_total, f.tokens_total);
    }

    #[test]
    fn diff_is_antisymmetric(
        a in proptest::collection::vec(cased_word(), 0..20),
        b in proptest::collection::vec(cased_word(), 0..20),
        folded in any::<bool>(),
    ) {
        let file = |forms: &[String]| {
            DictFile::new(forms.iter().map(|f| DictEntry::new(f.clone(), "", "N")).collect(), RoleTag::General)
        };
        let mode = if folded { FoldMode::Folded } else { FoldMode::Cased };
        let ab = diff_dictionaries(&[file(&a)], &[file(&b)], mode);
        let ba = diff_dictionaries(&[file(&b)], &[file(&a)], mode);
        prop_assert_eq!(&ab.only_in_a, &ba.only_in_b);
        prop_assert_eq!(&ab.only_in_b, &ba.only_in_a);
        prop_assert_eq!(ab.common, ba.common);
        prop_assert!(diff_dictionaries(&[file(&a)], &[file(&a)], mode).is_empty());
    }

    #[test]
    fn precedence_only_matters_when_rules_compete(
        forms in proptest::collection::btree_set("[a-zéãç]{2,9}", 1..25),
        shapes in proptest::collection::vec(0u8..4, 25),
        order in Just(RuleId::DEFAULT_PRECEDENCE.to_vec()).prop_shuffle(),
        lex_forms in subsequence(vec!["um", "bom", "casa", "ideia", "chorão", "umbandista", "aguentar"], 1..7),
    ) {
        let lex = lexicon(&lex_forms.iter().map(|s| s.to_string()).collect::<Vec<_>>()).unwrap();
        let records: Vec<UnknownRecord> = forms
            .iter()
            .zip(&shapes)
            .map(|(f, s)| {
                let cap = {
                    let mut c = f.chars();
                    let first = c.next().unwrap();
                    first.to_uppercase().chain(c).collect::<String>()
                };
                let upper = f.to_uppercase();
                let occ: Vec<(&str, bool)> = match s {
                    0 => vec![(f.as_str(), false), (f.as_str(), false)],
                    1 => vec![(cap.as_str(), false), (cap.as_str(), true)],
                    2 => vec![(upper.as_str(), false)],
                    _ => vec![(cap.as_str(), true), (f.as_str(), false)],
                };
                UnknownRecord::from_occurrences(f, occ)
            })
            .collect();
        let default = ClassifierConfig::default();
        let permuted = ClassifierConfig { precedence: order, ..ClassifierConfig::default() };
        let a = classify(records.clone(), &lex, None, &default);
        let b = classify(records, &lex, None, &permuted);
        for (x, y) in a.iter().zip(&b) {
            let fired_x: BTreeSet<RuleId> = x.fired_rules().into_iter().collect();
            let fired_y: BTreeSet<RuleId> = y.fired_rules().into_iter().collect();
            prop_assert_eq!(&fired_x, &fired_y);
            if fired_x.len() < 2 {
                prop_assert_eq!(x.category, y.category);
            }
            prop_assert!(x.category.is_some());
            prop_assert_eq!(x.evidence.is_empty(), x.category == Some(lexcov::classify::Category::Other));
        }
    }
}

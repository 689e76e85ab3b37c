use std::collections::HashSet;

use super::{TokenKind, TokenStream};
use crate::casing::fold;

/// Abbreviations that do not end a sentence when followed by a period.
/// Stored case-folded, without the trailing period.
#[derive(Debug, Clone, Default)]
pub struct AbbreviationList {
    items: HashSet<String>,
}

impl AbbreviationList {
    /// One abbreviation per line; a trailing period is optional.
    pub fn parse(text: &str) -> Self {
        let items = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(|l| fold(l.trim_end_matches('.')))
            .filter(|l| !l.is_empty())
            .collect();
        AbbreviationList { items }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.items.contains(&fold(word))
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}

fn is_terminator(text: &str) -> bool {
    matches!(text, "." | "!" | "?" | "…")
}

fn is_closer(text: &str) -> bool {
    matches!(text, ")" | "]" | "\"" | "'" | "”" | "’" | "»")
}

/// Marks sentence indices and the first word of each sentence.
///
/// A sentence ends after `.`, `!`, `?` or `…` (optionally followed by more
/// terminators or closing quotes) when the next tokens are whitespace and then
/// an uppercase-initial word, or the end of the text. A lone period after a
/// single uppercase letter or a listed abbreviation never ends a sentence.
pub fn segment_sentences(mut stream: TokenStream, abbreviations: &AbbreviationList) -> TokenStream {
    let toks = &stream.tokens;
    let n = toks.len();
    // starts[i]: a new sentence begins at token i
    let mut starts = vec![false; n];

    let mut i = 0;
    while i < n {
        let t = &toks[i];
        if t.kind != TokenKind::Punct || !is_terminator(&t.text) {
            i += 1;
            continue;
        }
        let run_start = i;
        let mut run_end = i + 1;
        while run_end < n
            && toks[run_end].kind == TokenKind::Punct
            && (is_terminator(&toks[run_end].text) || is_closer(&toks[run_end].text))
        {
            run_end += 1;
        }
        i = run_end;

        let lone_period =
            toks[run_start].text == "." && (run_end == run_start + 1 || !is_terminator(&toks[run_start + 1].text));
        if lone_period && run_start > 0 {
            let prev = &toks[run_start - 1];
            if prev.kind == TokenKind::Word {
                let mut chars = prev.text.chars();
                let single_upper = matches!((chars.next(), chars.next()), (Some(c), None) if c.is_uppercase());
                if single_upper || abbreviations.contains(&prev.text) {
                    continue;
                }
            }
        }

        let mut j = run_end;
        let mut saw_space = false;
        while j < n && toks[j].kind == TokenKind::Space {
            saw_space = true;
            j += 1;
        }
        if j < n
            && saw_space
            && toks[j].kind == TokenKind::Word
            && toks[j].text.chars().next().is_some_and(char::is_uppercase)
        {
            starts[j] = true;
        }
    }

    let mut sentence = 0;
    let mut need_initial = true;
    for (idx, t) in stream.tokens.iter_mut().enumerate() {
        if starts[idx] {
            sentence += 1;
            need_initial = true;
        }
        t.sentence_index = sentence;
        t.sentence_initial = false;
        if t.kind == TokenKind::Word && need_initial {
            t.sentence_initial = true;
            need_initial = false;
        }
    }
    stream
}

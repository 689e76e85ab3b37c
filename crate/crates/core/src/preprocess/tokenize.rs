use unicode_normalization::char::is_combining_mark;

use super::{Token, TokenKind, TokenStream};

fn is_letter(c: char) -> bool {
    c.is_alphabetic()
}

fn is_digit(c: char) -> bool {
    c.is_numeric() && !c.is_alphabetic()
}

/// Splits normalized text into word, number, punctuation and space tokens.
///
/// Words are maximal letter runs (combining marks stay attached to the
/// letter they follow), numbers maximal digit runs, whitespace runs become
/// one space token, and every other character is its own punctuation token.
pub fn tokenize(text: &str) -> TokenStream {
    tokenize_with_id(text, "")
}

pub fn tokenize_with_id(text: &str, source_id: &str) -> TokenStream {
    let mut tokens = Vec::new();
    let mut word_token_count = 0;
    let mut iter = text.char_indices().peekable();

    while let Some((start, c)) = iter.next() {
        let kind = if is_letter(c) {
            TokenKind::Word
        } else if is_digit(c) {
            TokenKind::Number
        } else if c.is_whitespace() {
            TokenKind::Space
        } else {
            TokenKind::Punct
        };
        let mut end = start + c.len_utf8();
        if kind != TokenKind::Punct {
            while let Some(&(i, next)) = iter.peek() {
                let continues = match kind {
                    TokenKind::Word => is_letter(next) || is_combining_mark(next),
                    TokenKind::Number => is_digit(next),
                    TokenKind::Space => next.is_whitespace(),
                    TokenKind::Punct => false,
                };
                if !continues {
                    break;
                }
                end = i + next.len_utf8();
                iter.next();
            }
        }
        if kind == TokenKind::Word {
            word_token_count += 1;
        }
        tokens.push(Token {
            kind,
            text: text[start..end].to_string(),
            start,
            end,
            sentence_index: 0,
            sentence_initial: false,
        });
    }

    TokenStream {
        tokens,
        source_id: source_id.to_string(),
        word_token_count,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn words(s: &TokenStream) -> Vec<&str> {
        s.words().map(|t| t.text.as_str()).collect()
    }

    fn kinds(s: &TokenStream) -> Vec<(TokenKind, &str)> {
        s.tokens.iter().map(|t| (t.kind, t.text.as_str())).collect()
    }

    #[test]
    fn example_sentence() {
        let s = tokenize("O time de Neymar corria atrás do prejuízo");
        assert_eq!(
            words(&s),
            ["O", "time", "de", "Neymar", "corria", "atrás", "do", "prejuízo"]
        );
        assert_eq!(s.word_token_count, 8);
    }

    #[test]
    fn hyphenated_clitic_splits() {
        let s = tokenize("abordá-lo");
        assert_eq!(
            kinds(&s),
            [
                (TokenKind::Word, "abordá"),
                (TokenKind::Punct, "-"),
                (TokenKind::Word, "lo")
            ]
        );
    }

    #[test]
    fn numbers_and_spaces() {
        let s = tokenize("70 anos");
        assert_eq!(
            kinds(&s),
            [
                (TokenKind::Number, "70"),
                (TokenKind::Space, " "),
                (TokenKind::Word, "anos")
            ]
        );
    }

    #[test]
    fn empty_input() {
        let s = tokenize("");
        assert!(s.tokens.is_empty());
        assert_eq!(s.word_token_count, 0);
    }

    #[test]
    fn punctuation_is_one_char_each() {
        let s = tokenize("ué?!...");
        assert_eq!(s.tokens.len(), 6);
        assert_eq!(s.tokens[0].text, "ué");
    }

    #[test]
    fn apostrophe_and_digits_split_words() {
        let s = tokenize("d'água covid19");
        assert_eq!(words(&s), ["d", "água", "covid"]);
        assert_eq!(s.tokens.last().unwrap().kind, TokenKind::Number);
    }

    #[test]
    fn combining_mark_stays_in_word() {
        // q + combining acute has no precomposed form
        let s = tokenize("q\u{301}a b");
        assert_eq!(words(&s), ["q\u{301}a", "b"]);
    }

    #[test]
    fn foreign_letters_are_words() {
        let s = tokenize("Ζεύς Москва 東京");
        assert_eq!(s.word_token_count, 3);
    }

    #[test]
    fn offsets_cover_input() {
        let text = "Fui lá.\n Voltei!";
        let s = tokenize(text);
        let mut pos = 0;
        for t in &s.tokens {
            assert_eq!(t.start, pos);
            assert_eq!(&text[t.start..t.end], t.text);
            pos = t.end;
        }
        assert_eq!(pos, text.len());
    }
}

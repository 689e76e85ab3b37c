use unicode_normalization::UnicodeNormalization;

use super::PreprocessError;

fn is_vertical_break(c: char) -> bool {
    matches!(c, '\n' | '\u{0B}' | '\u{0C}' | '\u{85}' | '\u{2028}' | '\u{2029}')
}

/// Line endings to LF, NFC, runs of horizontal whitespace to one space,
/// control characters other than LF dropped. Idempotent.
pub fn normalize_delimiters(raw: &str) -> String {
    let mut unified = String::with_capacity(raw.len());
    let mut chars = raw.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            '\r' => {
                if chars.peek() == Some(&'\n') {
                    chars.next();
                }
                unified.push('\n');
            }
            c if is_vertical_break(c) => unified.push('\n'),
            '\t' => unified.push(' '),
            // byte-order marks anywhere
            '\u{feff}' => {}
            c if c.is_control() => {}
            c => unified.push(c),
        }
    }

    let mut out = String::with_capacity(unified.len());
    let mut in_space = false;
    for c in unified.nfc() {
        if c != '\n' && c.is_whitespace() {
            if !in_space {
                out.push(' ');
                in_space = true;
            }
        } else {
            out.push(c);
            in_space = false;
        }
    }
    out
}

/// Byte input variant; rejects anything that is not UTF-8.
pub fn normalize_bytes(raw: &[u8]) -> Result<String, PreprocessError> {
    let text = std::str::from_utf8(raw).map_err(|e| PreprocessError::InvalidUtf8 {
        offset: e.valid_up_to(),
    })?;
    Ok(normalize_delimiters(text))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn line_endings() {
        assert_eq!(normalize_delimiters("a\r\nb"), "a\nb");
        assert_eq!(normalize_delimiters("a\rb\n"), "a\nb\n");
        assert_eq!(normalize_delimiters("a\u{2028}b"), "a\nb");
    }

    #[test]
    fn horizontal_whitespace_collapses() {
        assert_eq!(normalize_delimiters("a   b"), "a b");
        assert_eq!(normalize_delimiters("a\t \u{a0}b"), "a b");
        assert_eq!(normalize_delimiters("a \n  b"), "a \n b");
        assert_eq!(normalize_delimiters("a\n\nb"), "a\n\nb");
    }

    #[test]
    fn nfc_composes() {
        assert_eq!(normalize_delimiters("e\u{301}"), "é");
        assert_eq!(normalize_delimiters("e\u{1}\u{301}"), "é");
    }

    #[test]
    fn controls_dropped() {
        assert_eq!(normalize_delimiters("a\u{0}b\u{7f}c"), "abc");
        assert_eq!(normalize_delimiters("\u{feff}abc"), "abc");
    }

    #[test]
    fn invalid_utf8_rejected() {
        assert!(matches!(
            normalize_bytes(b"ab\xffcd"),
            Err(PreprocessError::InvalidUtf8 { offset: 2 })
        ));
        assert_eq!(normalize_bytes("olá".as_bytes()).unwrap(), "olá");
    }
}

//! DELAF inflected-form dictionary entries.
//!
//! One entry per line:
//!
//! ```text
//! form,lemma.CODE+Sem1+Sem2:flex1:flex2
//! ```
//!
//! An empty lemma means the lemma equals the form. A backslash escapes the
//! next character, so `\,` is a literal comma and `\\` a literal backslash.
//! Multiple `:` groups are alternative inflectional readings of the same
//! form; the lexicon compiler splits them into separate analyses.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DelafError {
    #[error("{}malformed entry at line {line}, column {column}: {reason}: {text:?}", path_prefix(.path))]
    MalformedEntry {
        path: Option<PathBuf>,
        line: usize,
        column: usize,
        reason: &'static str,
        text: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("{path}: file is not valid UTF-8")]
    InvalidUtf8 { path: PathBuf },
}

fn path_prefix(path: &Option<PathBuf>) -> String {
    match path {
        Some(p) => format!("{}: ", p.display()),
        None => String::new(),
    }
}

/// Which logical dictionary a file plays in a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RoleTag {
    General,
    AbbreviationsAcronyms,
    User,
}

impl RoleTag {
    pub const ALL: [RoleTag; 3] = [RoleTag::General, RoleTag::AbbreviationsAcronyms, RoleTag::User];

    pub fn as_str(self) -> &'static str {
        match self {
            RoleTag::General => "general",
            RoleTag::AbbreviationsAcronyms => "abbreviations_acronyms",
            RoleTag::User => "user",
        }
    }

    pub(crate) fn bit(self) -> u8 {
        match self {
            RoleTag::General => 1,
            RoleTag::AbbreviationsAcronyms => 2,
            RoleTag::User => 4,
        }
    }
}

impl std::str::FromStr for RoleTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "general" => Ok(RoleTag::General),
            "abbreviations_acronyms" | "abbrev" | "acronyms" => Ok(RoleTag::AbbreviationsAcronyms),
            "user" => Ok(RoleTag::User),
            other => Err(format!("unknown dictionary role {other:?}")),
        }
    }
}

impl fmt::Display for RoleTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DictEntry {
    pub surface_form: String,
    pub lemma: String,
    pub gram_code: String,
    pub sem_traits: Vec<String>,
    pub flex_codes: Vec<String>,
}

impl DictEntry {
    /// Entry with no semantic traits or inflectional codes; lemma defaults to the form.
    pub fn new(surface_form: impl Into<String>, lemma: impl Into<String>, gram_code: impl Into<String>) -> Self {
        let surface_form = surface_form.into();
        let mut lemma = lemma.into();
        if lemma.is_empty() {
            lemma = surface_form.clone();
        }
        DictEntry {
            surface_form,
            lemma,
            gram_code: gram_code.into(),
            sem_traits: Vec::new(),
            flex_codes: Vec::new(),
        }
    }

    pub fn is_multiword(&self) -> bool {
        self.surface_form.contains(' ')
    }

    /// The part after the comma: `lemma.CODE+sem:flex`, with the empty-lemma shorthand.
    pub fn info_string(&self) -> String {
        let mut out = String::new();
        if self.lemma != self.surface_form {
            escape_into(&mut out, &self.lemma, true);
        }
        out.push('.');
        out.push_str(&self.gram_code);
        for s in &self.sem_traits {
            out.push('+');
            out.push_str(s);
        }
        for f in &self.flex_codes {
            out.push(':');
            out.push_str(f);
        }
        out
    }
}

impl fmt::Display for DictEntry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&serialize_entry(self))
    }
}

fn malformed(line: &str, column: usize, reason: &'static str) -> DelafError {
    DelafError::MalformedEntry {
        path: None,
        line: 0,
        column,
        reason,
        text: line.to_string(),
    }
}

/// Scans an escaped field up to the first unescaped `stop` character.
/// Returns the unescaped text and the byte index of the stop character.
fn scan_field(line: &str, start: usize, stop: char) -> Result<(String, Option<usize>), usize> {
    let mut out = String::new();
    let mut chars = line[start..].char_indices();
    while let Some((i, c)) = chars.next() {
        if c == '\\' {
            match chars.next() {
                Some((_, next)) => out.push(next),
                // dangling backslash
                None => return Err(start + i),
            }
        } else if c == stop {
            return Ok((out, Some(start + i)));
        } else {
            out.push(c);
        }
    }
    Ok((out, None))
}

fn column_of(line: &str, byte: usize) -> usize {
    line[..byte.min(line.len())].chars().count() + 1
}

/// Parses one DELAF line (without its line terminator).
pub fn parse_entry(line: &str) -> Result<DictEntry, DelafError> {
    let (surface_form, comma) =
        scan_field(line, 0, ',').map_err(|b| malformed(line, column_of(line, b), "dangling escape"))?;
    let comma = comma.ok_or_else(|| malformed(line, column_of(line, line.len()), "missing comma separator"))?;
    if surface_form.is_empty() {
        return Err(malformed(line, 1, "empty inflected form"));
    }
    let (lemma, dot) =
        scan_field(line, comma + 1, '.').map_err(|b| malformed(line, column_of(line, b), "dangling escape"))?;
    let dot = dot.ok_or_else(|| malformed(line, column_of(line, line.len()), "missing dot separator"))?;

    let codes = &line[dot + 1..];
    let codes_col = column_of(line, dot + 1);
    let (head, flex_part) = match codes.find(':') {
        Some(i) => (&codes[..i], Some(&codes[i + 1..])),
        None => (codes, None),
    };
    let mut head_parts = head.split('+');
    let gram_code = head_parts.next().unwrap_or_default();
    if gram_code.is_empty() {
        return Err(malformed(line, codes_col, "empty grammatical code"));
    }
    let sem_traits: Vec<String> = head_parts.map(str::to_string).collect();
    if sem_traits.iter().any(String::is_empty) {
        return Err(malformed(line, codes_col, "empty semantic trait"));
    }
    let flex_codes: Vec<String> = match flex_part {
        Some(p) => p.split(':').map(str::to_string).collect(),
        None => Vec::new(),
    };
    if flex_codes.iter().any(String::is_empty) {
        return Err(malformed(line, codes_col, "empty inflectional code"));
    }

    let lemma = if lemma.is_empty() { surface_form.clone() } else { lemma };
    Ok(DictEntry {
        surface_form,
        lemma,
        gram_code: gram_code.to_string(),
        sem_traits,
        flex_codes,
    })
}

fn escape_into(out: &mut String, text: &str, is_lemma: bool) {
    for c in text.chars() {
        if c == '\\' || c == ',' || (is_lemma && c == '.') {
            out.push('\\');
        }
        out.push(c);
    }
}

/// Emits the canonical DELAF line for an entry.
pub fn serialize_entry(entry: &DictEntry) -> String {
    let mut out = String::with_capacity(entry.surface_form.len() + entry.gram_code.len() + 8);
    escape_into(&mut out, &entry.surface_form, false);
    out.push(',');
    out.push_str(&entry.info_string());
    out
}

/// Canonical form of a well-formed line: `serialize_entry(parse_entry(line))`.
pub fn canonicalize(line: &str) -> Result<String, DelafError> {
    parse_entry(line).map(|e| serialize_entry(&e))
}

#[derive(Debug, Clone)]
pub struct DictFile {
    pub entries: Vec<DictEntry>,
    /// 1-based source line of each entry.
    pub line_numbers: Vec<usize>,
    pub role_tag: RoleTag,
    pub path: Option<PathBuf>,
}

impl DictFile {
    pub fn new(entries: Vec<DictEntry>, role_tag: RoleTag) -> Self {
        let line_numbers = (1..=entries.len()).collect();
        DictFile {
            entries,
            line_numbers,
            role_tag,
            path: None,
        }
    }

    /// Parses DELAF text. A leading byte-order mark is stripped, blank lines skipped,
    /// LF and CRLF endings accepted.
    pub fn parse_str(text: &str, role_tag: RoleTag) -> Result<Self, DelafError> {
        let text = text.strip_prefix('\u{feff}').unwrap_or(text);
        let mut entries = Vec::new();
        let mut line_numbers = Vec::new();
        for (idx, raw) in text.split('\n').enumerate() {
            let line = raw.strip_suffix('\r').unwrap_or(raw);
            if line.is_empty() {
                continue;
            }
            match parse_entry(line) {
                Ok(e) => {
                    entries.push(e);
                    line_numbers.push(idx + 1);
                }
                Err(DelafError::MalformedEntry {
                    column, reason, text, ..
                }) => {
                    return Err(DelafError::MalformedEntry {
                        path: None,
                        line: idx + 1,
                        column,
                        reason,
                        text,
                    })
                }
                Err(e) => return Err(e),
            }
        }
        Ok(DictFile {
            entries,
            line_numbers,
            role_tag,
            path: None,
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Lines in file order.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            out.push_str(&serialize_entry(e));
            out.push('\n');
        }
        out
    }

    /// Lines sorted by Unicode code point of the serialized line.
    pub fn to_sorted_text(&self) -> String {
        let mut lines: Vec<String> = self.entries.iter().map(serialize_entry).collect();
        lines.sort_unstable();
        let mut out = String::new();
        for l in lines {
            out.push_str(&l);
            out.push('\n');
        }
        out
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<(), DelafError> {
        let path = path.as_ref();
        fs::write(path, self.to_text()).map_err(|source| DelafError::Io {
            path: path.to_path_buf(),
            source,
        })
    }
}

pub fn load_dict_file(path: impl AsRef<Path>, role_tag: RoleTag) -> Result<DictFile, DelafError> {
    let path = path.as_ref();
    let bytes = fs::read(path).map_err(|source| DelafError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let text = String::from_utf8(bytes).map_err(|_| DelafError::InvalidUtf8 {
        path: path.to_path_buf(),
    })?;
    let mut file = DictFile::parse_str(&text, role_tag).map_err(|e| match e {
        DelafError::MalformedEntry {
            line,
            column,
            reason,
            text,
            ..
        } => DelafError::MalformedEntry {
            path: Some(path.to_path_buf()),
            line,
            column,
            reason,
            text,
        },
        other => other,
    })?;
    file.path = Some(path.to_path_buf());
    Ok(file)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn strs(v: &[&str]) -> Vec<String> {
        v.iter().map(|s| s.to_string()).collect()
    }

    #[test]
    fn parses_verb_entry() {
        let e = parse_entry("sambou,sambar.V:J3s").unwrap();
        assert_eq!(e.surface_form, "sambou");
        assert_eq!(e.lemma, "sambar");
        assert_eq!(e.gram_code, "V");
        assert!(e.sem_traits.is_empty());
        assert_eq!(e.flex_codes, strs(&["J3s"]));
    }

    #[test]
    fn empty_lemma_means_form() {
        let e = parse_entry("atrás,.ADV").unwrap();
        assert_eq!(e.lemma, "atrás");
        assert_eq!(e.gram_code, "ADV");
        assert!(e.flex_codes.is_empty());
        assert_eq!(serialize_entry(&e), "atrás,.ADV");
    }

    #[test]
    fn semantic_traits_and_flex() {
        let e = parse_entry("do,.PREPXD+Art+Def:ms").unwrap();
        assert_eq!(e.surface_form, "do");
        assert_eq!(e.lemma, "do");
        assert_eq!(e.gram_code, "PREPXD");
        assert_eq!(e.sem_traits, strs(&["Art", "Def"]));
        assert_eq!(e.flex_codes, strs(&["ms"]));
        let e = parse_entry("corria,correr.V:I1s").unwrap();
        assert_eq!((e.lemma.as_str(), e.flex_codes[0].as_str()), ("correr", "I1s"));
    }

    #[test]
    fn multiple_flex_groups_are_kept() {
        let e = parse_entry("corria,correr.V:I1s:I3s").unwrap();
        assert_eq!(e.flex_codes, strs(&["I1s", "I3s"]));
        assert_eq!(serialize_entry(&e), "corria,correr.V:I1s:I3s");
    }

    #[test]
    fn minimal_entry_serializes() {
        assert_eq!(serialize_entry(&DictEntry::new("x", "x", "N")), "x,.N");
    }

    #[test]
    fn escapes() {
        let e = parse_entry(r"1\,5,um e meio.NUM").unwrap();
        assert_eq!(e.surface_form, "1,5");
        assert_eq!(e.lemma, "um e meio");
        assert!(!e.is_multiword());
        assert_eq!(serialize_entry(&e), r"1\,5,um e meio.NUM");

        let e = parse_entry(r"a\\b,.N").unwrap();
        assert_eq!(e.surface_form, r"a\b");
        assert_eq!(serialize_entry(&e), r"a\\b,.N");

        // lemma dots must be escaped
        let e = parse_entry(r"sr.,sr\..ABREV").unwrap();
        assert_eq!(e.surface_form, "sr.");
        assert_eq!(e.lemma, "sr.");
        assert_eq!(serialize_entry(&e), "sr.,.ABREV");
        let e = parse_entry(r"sra.,senhora\..ABREV").unwrap();
        assert_eq!(e.lemma, "senhora.");
        assert_eq!(serialize_entry(&e), r"sra.,senhora\..ABREV");

        // superfluous escapes canonicalize away
        assert_eq!(canonicalize(r"c\asa,.N").unwrap(), "casa,.N");
        // explicit lemma equal to the form collapses
        assert_eq!(canonicalize("casa,casa.N:fs").unwrap(), "casa,.N:fs");
    }

    #[test]
    fn multiword_detection() {
        assert!(parse_entry("por exemplo,.ADV").unwrap().is_multiword());
        assert!(!parse_entry("guarda-chuva,.N:ms").unwrap().is_multiword());
    }

    #[test]
    fn malformed_lines() {
        for (line, col) in [
            ("bad line without dot", 21),
            ("semvirgula.N", 13),
            (",.N", 1),
            ("casa,.", 7),
            ("casa,.+Sem", 7),
            ("casa,.N:", 7),
            ("casa,.N+:ms", 7),
            ("casa\\", 5),
        ] {
            match parse_entry(line) {
                Err(DelafError::MalformedEntry { column, text, .. }) => {
                    assert_eq!(column, col, "{line}");
                    assert_eq!(text, line);
                }
                other => panic!("{line}: expected MalformedEntry, got {other:?}"),
            }
        }
    }

    #[test]
    fn file_parsing_skips_blank_lines_and_bom() {
        let f = DictFile::parse_str("\u{feff}a,.N\r\nb,.N\n\nc,.N\n", RoleTag::General).unwrap();
        assert_eq!(f.len(), 3);
        assert_eq!(f.line_numbers, vec![1, 2, 4]);
        assert_eq!(f.entries[0].surface_form, "a");
    }

    #[test]
    fn file_error_reports_line() {
        let err = DictFile::parse_str("a,.N\nbad line without dot\n", RoleTag::General).unwrap_err();
        match err {
            DelafError::MalformedEntry { line, .. } => assert_eq!(line, 2),
            other => panic!("{other:?}"),
        }
        assert!(err_string("a,.N\nbad line without dot\n").contains("line 2"));
    }

    fn err_string(text: &str) -> String {
        DictFile::parse_str(text, RoleTag::General).unwrap_err().to_string()
    }

    #[test]
    fn sorted_text_is_code_point_order() {
        let f = DictFile::parse_str("é,.N\nz,.N\na,.N\nZ,.N\n", RoleTag::User).unwrap();
        assert_eq!(f.to_sorted_text(), "Z,.N\na,.N\nz,.N\né,.N\n");
        assert_eq!(f.to_text(), "é,.N\nz,.N\na,.N\nZ,.N\n");
    }

    #[test]
    fn role_tags_parse() {
        assert_eq!("general".parse::<RoleTag>().unwrap(), RoleTag::General);
        assert_eq!(
            "abbreviations_acronyms".parse::<RoleTag>().unwrap(),
            RoleTag::AbbreviationsAcronyms
        );
        assert!("nope".parse::<RoleTag>().is_err());
    }
}

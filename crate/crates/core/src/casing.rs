//! Letter-case helpers shared by lookup, word lists and the classifier.

use serde::{Deserialize, Serialize};

/// Case fold used for comparisons. Unicode lowercase mapping applied per
/// character; for Latin-script text this coincides with simple case folding.
pub fn fold(s: &str) -> String {
    s.to_lowercase()
}

/// True when `s` has no uppercase letter.
pub fn is_all_lowercase(s: &str) -> bool {
    !s.chars().any(char::is_uppercase)
}

/// `s` with its first character uppercased and the rest left untouched.
pub fn capitalize_first(s: &str) -> String {
    let mut chars = s.chars();
    match chars.next() {
        Some(first) => {
            let mut out: String = first.to_uppercase().collect();
            out.push_str(chars.as_str());
            out
        }
        None => String::new(),
    }
}

/// Shape of a word's letter case, as counted in casing profiles.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CaseShape {
    AllLower,
    Capitalized,
    AllUpper,
    Mixed,
}

impl CaseShape {
    pub fn of(word: &str) -> CaseShape {
        let mut chars = word.chars();
        let Some(first) = chars.next() else {
            return CaseShape::AllLower;
        };
        let rest = chars.as_str();
        let upper = word.chars().filter(|c| c.is_uppercase()).count();
        let lower = word.chars().filter(|c| c.is_lowercase()).count();
        if upper == 0 {
            CaseShape::AllLower
        } else if first.is_uppercase() && is_all_lowercase(rest) {
            CaseShape::Capitalized
        } else if lower == 0 && upper >= 2 {
            CaseShape::AllUpper
        } else {
            CaseShape::Mixed
        }
    }

    /// First letter uppercase: capitalized or all-caps words.
    pub fn starts_upper(word: &str) -> bool {
        word.chars().next().is_some_and(char::is_uppercase)
    }
}

//! Old-to-new spelling under the 1990 Portuguese Orthographic Agreement.
//!
//! Only the diacritic rules are implemented:
//!
//! * trema removal: `ü` → `u` (agüentar → aguentar)
//! * open diphthongs `éi`/`ói` lose the accent in paroxytones (idéia → ideia),
//!   except when the word ends in `r`, `l`, `n`, `x` or `ps` (destróier)
//! * circumflex on doubled vowels: `ôo` → `oo`, `êe` → `ee` (vôo → voo)
//! * stressed `í`/`ú` after a falling diphthong in paroxytones (feiúra → feiura)
//!
//! Stress position is estimated by counting vowel groups after the accented
//! vowel: exactly one group left means the accent sits on the penultimate
//! syllable. Hyphenation changes are word-list dependent and not handled here.

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

fn is_vowel(c: char) -> bool {
    matches!(
        c,
        'a' | 'e' | 'i' | 'o' | 'u' | 'á' | 'é' | 'í' | 'ó' | 'ú' | 'â' | 'ê' | 'ô' | 'ã' | 'õ' | 'à' | 'ü'
    )
}

fn vowel_groups(chars: &[char]) -> usize {
    let mut groups = 0;
    let mut in_group = false;
    for &c in chars {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    groups
}

fn keeps_paroxytone_accent(word: &[char]) -> bool {
    matches!(word.last(), Some('r' | 'l' | 'n' | 'x')) || word.ends_with(&['p', 's'])
}

fn apply_once(chars: &mut [char]) -> bool {
    let mut changed = false;
    let n = chars.len();
    for k in 0..n {
        let c = chars[k];
        let next = chars.get(k + 1).copied();
        let replacement = match c {
            'ü' => Some('u'),
            'Ü' => Some('U'),
            'ô' if next == Some('o') => Some('o'),
            'ê' if next == Some('e') => Some('e'),
            'é' | 'ó' if next == Some('i') => {
                let suffix = &chars[k + 2..];
                (vowel_groups(suffix) == 1 && !keeps_paroxytone_accent(chars)).then_some(if c == 'é' {
                    'e'
                } else {
                    'o'
                })
            }
            'í' | 'ú' if k >= 2 => {
                let glide = chars[k - 1];
                let nucleus = chars[k - 2];
                let after_falling_diphthong = matches!(glide, 'i' | 'u') && matches!(nucleus, 'a' | 'e' | 'o');
                let suffix = &chars[k + 1..];
                (after_falling_diphthong && vowel_groups(suffix) == 1).then_some(if c == 'í' { 'i' } else { 'u' })
            }
            _ => None,
        };
        if let Some(r) = replacement {
            chars[k] = r;
            changed = true;
        }
    }
    changed
}

/// Rewrites an old-spelling form into the post-Agreement spelling. Idempotent.
pub fn reform_normalize(form: &str) -> String {
    let mut chars: Vec<char> = form.chars().collect();
    // each pass only removes diacritics, so this terminates
    while apply_once(&mut chars) {}
    chars.into_iter().collect()
}

/// Base letters with all combining marks removed.
pub fn strip_diacritics(s: &str) -> String {
    s.nfd().filter(|c| !is_combining_mark(*c)).nfc().collect()
}

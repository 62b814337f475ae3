use std::collections::HashMap;
use std::sync::OnceLock;

use super::TokenPos;

const IRREGULAR_FORMS: &str = include_str!("irregular_forms.tsv");

/// Surface form to lemma overrides, consulted before the suffix rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ExceptionTable {
    map: HashMap<String, String>,
}

impl ExceptionTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Irregular verb (and a few noun) forms shipped with the crate.
    pub fn builtin() -> &'static ExceptionTable {
        static TABLE: OnceLock<ExceptionTable> = OnceLock::new();
        TABLE.get_or_init(|| {
            let mut table = ExceptionTable::new();
            for line in IRREGULAR_FORMS.lines() {
                let mut cols = line.split('\t');
                let Some(base) = cols.next() else { continue };
                for form in cols {
                    table.insert(form, base);
                }
            }
            table
        })
    }

    pub fn insert(&mut self, surface: &str, lemma: &str) {
        self.map.insert(surface.to_lowercase(), lemma.to_lowercase());
    }

    pub fn get(&self, surface: &str) -> Option<&str> {
        self.map.get(&surface.to_lowercase()).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn extend_from(&mut self, other: &ExceptionTable) {
        for (k, v) in &other.map {
            self.map.insert(k.clone(), v.clone());
        }
    }
}

/// Reduces an inflected form to its lemma: exceptions first, then suffix
/// rules for the given part of speech, then plain lowercasing.
pub fn lemmatize(surface: &str, pos: TokenPos, exceptions: &ExceptionTable) -> String {
    let word = surface.to_lowercase();
    if let Some(lemma) = exceptions.get(&word) {
        return lemma.to_string();
    }
    let stripped = match pos {
        TokenPos::Noun => strip_plural(&word),
        TokenPos::Verb => strip_plural(&word)
            .or_else(|| strip_verbal(&word, "ed"))
            .or_else(|| strip_verbal(&word, "ing")),
        TokenPos::Adj => strip_comparative(&word),
        _ => None,
    };
    stripped.unwrap_or(word)
}

/// Lemma of a pattern word, using the built-in exception table.
pub fn base_form(word: &str, pos: TokenPos) -> String {
    lemmatize(word, pos, ExceptionTable::builtin())
}

fn is_vowel(c: u8) -> bool {
    matches!(c, b'a' | b'e' | b'i' | b'o' | b'u')
}

fn has_vowel(s: &str) -> bool {
    s.bytes().any(|c| is_vowel(c) || c == b'y')
}

fn strip_plural(word: &str) -> Option<String> {
    if !word.is_ascii() || word.len() < 3 {
        return None;
    }
    if let Some(stem) = word.strip_suffix("ies") {
        if stem.len() >= 2 {
            return Some(format!("{stem}y"));
        }
    }
    if let Some(stem) = word.strip_suffix("es") {
        if ["s", "x", "z", "ch", "sh"].iter().any(|e| stem.ends_with(e)) {
            return Some(stem.to_string());
        }
    }
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return None;
    }
    word.strip_suffix('s').map(str::to_string)
}

fn strip_verbal(word: &str, suffix: &str) -> Option<String> {
    if !word.is_ascii() || word.ends_with("eed") {
        return None;
    }
    let stem = word.strip_suffix(suffix)?;
    if stem.len() < 2 || !has_vowel(stem) {
        return None;
    }
    if suffix == "ed" {
        if let Some(s) = stem.strip_suffix('i') {
            // carried -> carry
            if s.len() >= 2 {
                return Some(format!("{s}y"));
            }
        }
    }
    Some(restore_stem(stem))
}

fn strip_comparative(word: &str) -> Option<String> {
    if !word.is_ascii() {
        return None;
    }
    let stem = word.strip_suffix("est").or_else(|| word.strip_suffix("er"))?;
    if stem.len() < 2 || !has_vowel(stem) {
        return None;
    }
    if let Some(s) = stem.strip_suffix('i') {
        // happier -> happy
        return Some(format!("{s}y"));
    }
    Some(restore_stem(stem))
}

/// Undoes consonant doubling (stopped -> stop) and restores a dropped
/// silent e (baked -> bake).
fn restore_stem(stem: &str) -> String {
    let b = stem.as_bytes();
    let n = b.len();
    if n >= 4 && b[n - 1] == b[n - 2] && b"bdgmnprt".contains(&b[n - 1]) {
        return stem[..n - 1].to_string();
    }
    if n >= 3 {
        let (c1, v, c2) = (b[n - 3], b[n - 2], b[n - 1]);
        let cvc = !is_vowel(c1) && is_vowel(v) && !is_vowel(c2) && !b"wxy".contains(&c2);
        if cvc && vowel_groups(stem) == 1 {
            return format!("{stem}e");
        }
    }
    if stem.ends_with('v') || stem.ends_with("iz") {
        return format!("{stem}e");
    }
    stem.to_string()
}

fn vowel_groups(s: &str) -> usize {
    let mut groups = 0;
    let mut in_group = false;
    for c in s.bytes() {
        let v = is_vowel(c);
        if v && !in_group {
            groups += 1;
        }
        in_group = v;
    }
    groups
}

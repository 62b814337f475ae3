use std::collections::HashMap;

use thiserror::Error;

use super::{lemmatize, ExceptionTable, TokenPos};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexiconError {
    #[error("line {line}: {reason}: `{text}`")]
    BadLexiconLine { line: usize, reason: &'static str, text: String },
}

/// Flat lemma + part of speech to Korean gloss table, used for tokens that
/// no phrase unit covers.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Lexicon {
    glosses: HashMap<(String, TokenPos), String>,
    exceptions: ExceptionTable,
}

impl Lexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, lemma: &str, pos: TokenPos, gloss: &str) {
        self.glosses.insert((lemma.to_lowercase(), pos), gloss.to_string());
    }

    pub fn lookup(&self, lemma: &str, pos: TokenPos) -> Option<&str> {
        self.glosses.get(&(lemma.to_lowercase(), pos)).map(String::as_str)
    }

    pub fn exceptions(&self) -> &ExceptionTable {
        &self.exceptions
    }

    pub fn add_exception(&mut self, surface: &str, lemma: &str) {
        self.exceptions.insert(surface, lemma);
    }

    pub fn lemmatize(&self, surface: &str, pos: TokenPos) -> String {
        lemmatize(surface, pos, &self.exceptions)
    }

    /// Number of gloss entries.
    pub fn len(&self) -> usize {
        self.glosses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.glosses.is_empty()
    }
}

/// Loads `lemma<TAB>POS<TAB>gloss` lines and `!surface<TAB>lemma`
/// exception lines. Blank lines are skipped; later keys override earlier.
pub fn load_lexicon(text: &str) -> Result<Lexicon, LexiconError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut lex = Lexicon::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason| LexiconError::BadLexiconLine { line: i + 1, reason, text: line.into() };
        let fields: Vec<&str> = line.split('\t').collect();
        if let Some(surface) = fields[0].strip_prefix('!') {
            match fields.as_slice() {
                [_, lemma] if !surface.is_empty() && !lemma.is_empty() => {
                    lex.add_exception(surface, lemma)
                }
                _ => return Err(bad("exception lines are `!surface<TAB>lemma`")),
            }
            continue;
        }
        let [lemma, pos, gloss] = fields.as_slice() else {
            return Err(bad("expected three tab-separated fields"));
        };
        let pos = TokenPos::parse(pos).ok_or_else(|| bad("unknown part of speech"))?;
        if lemma.is_empty() || gloss.trim().is_empty() {
            return Err(bad("empty lemma or gloss"));
        }
        lex.insert(lemma, pos, gloss.trim());
    }
    Ok(lex)
}

//! Korean synthesis: template filling for matched phrase units and
//! word-by-word glossing for everything else.
//!
//! Slot contents are translated by running the whole pipeline again on the
//! bound sub-span, so phrase units nested inside a parameter are honoured.
//! Glossed regions keep English word order and Korean particles are emitted
//! exactly as the template writes them.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::annotate::{AnnotatedSentence, Lexicon, Token, TokenPos, TokenSpan};
use crate::dbformat::{canonical_slot_name, KoreanTemplate, TemplateToken};
use crate::matchengine::{find_matches, select_matches, MatchMode, MatchResult, PhraseIndex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthError {
    #[error("template placeholder `{0}` has no translation")]
    UnboundSlot(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlotTranslation {
    pub name: String,
    pub text: String,
    pub source: TokenSpan,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Segment {
    Phrase { matched: MatchResult, filled: String },
    Gloss { token: usize, text: String, fallback: bool },
}

impl Segment {
    pub fn text(&self) -> &str {
        match self {
            Segment::Phrase { filled, .. } => filled,
            Segment::Gloss { text, .. } => text,
        }
    }

    /// Token indices this segment accounts for.
    pub fn tokens(&self) -> std::ops::Range<usize> {
        match self {
            Segment::Phrase { matched, .. } => matched.span.indices(),
            Segment::Gloss { token, .. } => *token..*token + 1,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    pub output: String,
    pub segments: Vec<Segment>,
    /// One line per segment, see [`TranslationResult::trace_line`].
    pub trace: Vec<String>,
}

/// Dictionary gloss of a token. Misses copy the surface form and set the
/// fallback flag; punctuation yields empty text.
pub fn gloss_token(token: &Token, lexicon: &Lexicon) -> (String, bool) {
    if token.pos == TokenPos::Punc {
        return (String::new(), true);
    }
    match lexicon.lookup(&token.lemma, token.pos) {
        Some(g) => (g.to_string(), false),
        None => (token.surface.clone(), true),
    }
}

/// Substitutes slot translations into the template and inserts modifier
/// translations. A modifier goes immediately before the Korean token its
/// item is aligned to, or in front of the whole template when the item has
/// no usable alignment.
pub fn fill_template(
    template: &KoreanTemplate,
    slots: &BTreeMap<String, SlotTranslation>,
    modifiers: &BTreeMap<usize, String>,
) -> Result<String, SynthError> {
    let mut before: BTreeMap<usize, Vec<&str>> = BTreeMap::new();
    let mut prefix: Vec<&str> = Vec::new();
    for (item, text) in modifiers {
        if text.is_empty() {
            continue;
        }
        match template.alignment.get(item) {
            Some(&pos) if matches!(template.tokens.get(pos), Some(TemplateToken::Text(_))) => {
                before.entry(pos).or_default().push(text)
            }
            _ => prefix.push(text),
        }
    }

    let mut out: Vec<&str> = prefix;
    for (i, tok) in template.tokens.iter().enumerate() {
        if let Some(mods) = before.get(&i) {
            out.extend(mods.iter().copied());
        }
        match tok {
            TemplateToken::Text(t) => out.push(t),
            TemplateToken::Slot(name) => {
                let tr = slots
                    .get(&canonical_slot_name(name))
                    .ok_or_else(|| SynthError::UnboundSlot(name.clone()))?;
                out.push(&tr.text);
            }
        }
    }
    Ok(out.into_iter().filter(|s| !s.is_empty()).collect::<Vec<_>>().join(" "))
}

/// Matches, selects, fills and glosses one sentence.
pub fn translate_sentence(
    sentence: &AnnotatedSentence,
    index: &PhraseIndex,
    lexicon: &Lexicon,
    mode: MatchMode,
) -> TranslationResult {
    translate(sentence, index, lexicon, mode, true)
}

fn translate(
    sentence: &AnnotatedSentence,
    index: &PhraseIndex,
    lexicon: &Lexicon,
    mode: MatchMode,
    allow_phrases: bool,
) -> TranslationResult {
    let selected = if allow_phrases {
        select_matches(&find_matches(sentence, index, mode))
    } else {
        Vec::new()
    };

    let mut segments = Vec::new();
    let mut cursor = 0;
    for m in selected {
        gloss_range(sentence, lexicon, cursor..m.span.start, &mut segments);
        cursor = m.span.end;
        match fill_match(sentence, index, lexicon, mode, &m) {
            Some(filled) => segments.push(Segment::Phrase { matched: m, filled }),
            None => gloss_range(sentence, lexicon, m.span.indices(), &mut segments),
        }
    }
    gloss_range(sentence, lexicon, cursor..sentence.len(), &mut segments);

    let output = segments
        .iter()
        .map(Segment::text)
        .filter(|t| !t.is_empty())
        .collect::<Vec<_>>()
        .join(" ");
    let trace = segments.iter().map(|s| trace_line(sentence, s)).collect();
    TranslationResult { output, segments, trace }
}

fn gloss_range(
    sentence: &AnnotatedSentence,
    lexicon: &Lexicon,
    range: std::ops::Range<usize>,
    segments: &mut Vec<Segment>,
) {
    for token in range {
        let (text, fallback) = gloss_token(&sentence.tokens[token], lexicon);
        segments.push(Segment::Gloss { token, text, fallback });
    }
}

fn fill_match(
    sentence: &AnnotatedSentence,
    index: &PhraseIndex,
    lexicon: &Lexicon,
    mode: MatchMode,
    m: &MatchResult,
) -> Option<String> {
    let pattern = index.pattern(&m.unit_ref)?;
    let mut slots = BTreeMap::new();
    for b in &m.bindings {
        let sub = sentence.slice(b.span);
        // a slot covering the whole sentence would rematch the same unit
        let nested = b.span.len() < sentence.len();
        let mut text = translate(&sub, index, lexicon, mode, nested).output;
        if text.is_empty() {
            text = sentence.surface_text(b.span);
        }
        slots.insert(b.name.clone(), SlotTranslation { name: b.name.clone(), text, source: b.span });
    }
    let modifiers: BTreeMap<usize, String> = m
        .modifiers
        .iter()
        .map(|(&item, toks)| {
            let words: Vec<String> = toks
                .iter()
                .map(|&t| gloss_token(&sentence.tokens[t], lexicon).0)
                .filter(|g| !g.is_empty())
                .collect();
            (item, words.join(" "))
        })
        .collect();
    fill_template(&pattern.unit.template, &slots, &modifiers).ok()
}

/// `PHRASE<TAB>entry<TAB>unit#<TAB>span<TAB>filled` or
/// `GLOSS<TAB>token#<TAB>surface<TAB>text<TAB>fallback`.
fn trace_line(sentence: &AnnotatedSentence, segment: &Segment) -> String {
    match segment {
        Segment::Phrase { matched, filled } => format!(
            "PHRASE\t{}\t{}\t{}\t{}",
            matched.unit_ref.headword,
            matched.unit_ref.ordinal + 1,
            matched.span,
            filled
        ),
        Segment::Gloss { token, text, fallback } => format!(
            "GLOSS\t{}\t{}\t{}\t{}",
            token, sentence.tokens[*token].surface, text, fallback
        ),
    }
}

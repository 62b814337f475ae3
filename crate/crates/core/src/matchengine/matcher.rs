use std::cmp::Reverse;
use std::collections::BTreeMap;

use crate::annotate::{AnnotatedSentence, Token, TokenPos, TokenSpan};
use crate::dbformat::GrammCategory;

use super::bind::bind_parameter;
use super::compile::{CompiledPattern, ElementMatcher, LiteralMatcher, PhraseIndex};
use super::{MatchMode, MatchResult};

/// Adjective/noun pre-modifiers absorbable before a noun word.
pub const MAX_NOUN_MODIFIERS: usize = 3;
/// Adverbs absorbable next to a verb word.
pub const MAX_ADVERBS: usize = 2;

/// Number of consecutive tokens from `from` satisfying `pred`, capped.
fn run_len(tokens: &[Token], from: usize, cap: usize, pred: impl Fn(&Token) -> bool) -> usize {
    tokens.iter().skip(from).take(cap).take_while(|t| pred(t)).count()
}

/// In extended mode, a literal that does not match at the cursor may still
/// match after a few modifier tokens. Returns how many tokens to absorb and
/// which item owns them.
fn absorb_before_literal(
    m: &LiteralMatcher,
    tokens: &[Token],
    cursor: usize,
    item: usize,
    prev_verb: bool,
) -> Option<(usize, usize)> {
    let hit = |j: usize, pos: Option<TokenPos>| {
        tokens
            .get(cursor + j)
            .is_some_and(|t| m.accepts(t) && pos.is_none_or(|p| t.pos == p))
    };

    let k = run_len(tokens, cursor, MAX_NOUN_MODIFIERS, |t| {
        matches!(t.pos, TokenPos::Adj | TokenPos::Noun)
    });
    if let Some(j) = (1..=k).find(|&j| hit(j, Some(TokenPos::Noun))) {
        return Some((j, item));
    }

    let k = run_len(tokens, cursor, MAX_ADVERBS, |t| t.pos == TokenPos::Adv);
    if let Some(j) = (1..=k).find(|&j| hit(j, Some(TokenPos::Verb))) {
        return Some((j, item));
    }
    if prev_verb && item > 0 {
        if let Some(j) = (1..=k).find(|&j| hit(j, None)) {
            return Some((j, item - 1));
        }
    }
    None
}

/// Walks the pattern left to right from `start`. Words take one token,
/// parameters take their greedy binding. Extended mode additionally
/// absorbs modifiers where a word would otherwise fail, and trailing
/// adverbs after a verbal phrase unless the unit carries `$`.
pub fn match_at(
    pattern: &CompiledPattern,
    sentence: &AnnotatedSentence,
    start: usize,
    mode: MatchMode,
) -> Option<MatchResult> {
    let tokens = &sentence.tokens;
    if start >= tokens.len() {
        return None;
    }
    let extended = mode == MatchMode::Extended;
    let mut cursor = start;
    let mut item_spans = Vec::with_capacity(pattern.elements.len());
    let mut bindings = Vec::new();
    let mut modifiers: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    let mut prev_verb = false;

    for (i, element) in pattern.elements.iter().enumerate() {
        let front_locked = i == 0 && pattern.no_pre_modify;
        match element {
            ElementMatcher::Literal(m) => {
                if !tokens.get(cursor).is_some_and(|t| m.accepts(t)) {
                    if !extended || front_locked {
                        return None;
                    }
                    let (k, owner) = absorb_before_literal(m, tokens, cursor, i, prev_verb)?;
                    modifiers.entry(owner).or_default().extend(cursor..cursor + k);
                    cursor += k;
                }
                item_spans.push(TokenSpan::new(cursor, cursor + 1));
                prev_verb = tokens[cursor].pos == TokenPos::Verb;
                cursor += 1;
            }
            ElementMatcher::Slot(slot) => {
                let binding = match bind_parameter(slot, sentence, cursor) {
                    Some(b) => b,
                    None => {
                        if !extended || !prev_verb {
                            return None;
                        }
                        // adverbs between a verb and its argument
                        let k = run_len(tokens, cursor, MAX_ADVERBS, |t| t.pos == TokenPos::Adv);
                        let (j, b) = (1..=k)
                            .find_map(|j| bind_parameter(slot, sentence, cursor + j).map(|b| (j, b)))?;
                        modifiers.entry(i - 1).or_default().extend(cursor..cursor + j);
                        b
                    }
                };
                item_spans.push(binding.span);
                cursor = binding.span.end;
                bindings.push(binding);
                prev_verb = false;
            }
        }
    }

    if extended && !pattern.no_post_modify && (pattern.category == GrammCategory::Verb || prev_verb) {
        let k = run_len(tokens, cursor, MAX_ADVERBS, |t| t.pos == TokenPos::Adv);
        if k > 0 {
            let last = pattern.elements.len() - 1;
            modifiers.entry(last).or_default().extend(cursor..cursor + k);
            cursor += k;
        }
    }

    let mode = if modifiers.is_empty() { MatchMode::OneToOne } else { MatchMode::Extended };
    Some(MatchResult {
        unit_ref: pattern.unit_ref.clone(),
        span: TokenSpan::new(start, cursor),
        category: pattern.category,
        bindings,
        modifiers,
        mode,
        item_spans,
    })
}

/// Matches of one pattern at one start. Extended mode also reports the
/// plain one-to-one match, so extended results are a superset.
fn matches_from(
    pattern: &CompiledPattern,
    sentence: &AnnotatedSentence,
    start: usize,
    mode: MatchMode,
) -> impl Iterator<Item = MatchResult> {
    let exact = match_at(pattern, sentence, start, MatchMode::OneToOne);
    let extended = match mode {
        MatchMode::Extended => match_at(pattern, sentence, start, MatchMode::Extended),
        MatchMode::OneToOne => None,
    };
    exact.into_iter().chain(extended)
}

/// Every match of every indexed unit in the sentence, ordered by start,
/// then longest first, then DB order.
///
/// Anchored patterns are only tried around tokens whose lemma is their
/// headword, and a result is kept only when the anchor word consumed that
/// token. Unanchored patterns are tried at every position.
pub fn find_matches(
    sentence: &AnnotatedSentence,
    index: &PhraseIndex,
    mode: MatchMode,
) -> Vec<MatchResult> {
    let mut out = Vec::new();
    for (t, tok) in sentence.tokens.iter().enumerate() {
        for pattern in index.group(&tok.lemma) {
            let Some(anchor) = pattern.anchor else { continue };
            for start in 0..=t {
                out.extend(
                    matches_from(pattern, sentence, start, mode)
                        .filter(|m| m.item_spans[anchor].start == t),
                );
            }
        }
    }
    for pattern in index.unanchored() {
        for start in 0..sentence.len() {
            out.extend(matches_from(pattern, sentence, start, mode));
        }
    }
    out.sort_by(|a, b| {
        (a.span.start, Reverse(a.span.len()), a.unit_ref.order)
            .cmp(&(b.span.start, Reverse(b.span.len()), b.unit_ref.order))
            .then_with(|| a.cmp(b))
    });
    out.dedup();
    out
}

//! Shared fixtures, generators and reference implementations for the
//! integration tests.
#![allow(dead_code)]

use std::collections::BTreeMap;
use std::path::PathBuf;

use phrasedb::annotate::{
    base_form, parse_annotated, AnnotatedSentence, ConstituentSpan, SpanLabel, Token, TokenPos,
    TokenSpan,
};
use phrasedb::dbformat::{
    Entry, EntryPos, GrammCategory, KoreanTemplate, Literal, Parameter, PatternElement, PhraseDB,
    PhraseUnit, Slot, TemplateToken,
};
use proptest::prelude::*;
use proptest::strategy::ValueTree;
use proptest::test_runner::{Config, RngAlgorithm, TestError, TestRng, TestRunner};

pub const SEED: [u8; 32] = *b"phrase-unit-db-property-seed-v01";
pub const CASES: u32 = 1000;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

pub fn fixture(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

pub fn sentence(name: &str) -> AnnotatedSentence {
    parse_annotated(&fixture(name)).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Deterministic runner: ChaCha seeded with [`SEED`], [`CASES`] cases.
pub fn runner() -> TestRunner {
    let config = Config { cases: CASES, failure_persistence: None, ..Config::default() };
    TestRunner::new_with_rng(config, TestRng::from_seed(RngAlgorithm::ChaCha, &SEED))
}

/// Runs a property to completion and reports the (shrunk) failure, if any.
pub fn check<S: Strategy>(
    strategy: S,
    test: impl Fn(S::Value) -> Result<(), TestCaseError>,
) -> Result<(), String>
where
    S::Value: std::fmt::Debug,
{
    match runner().run(&strategy, test) {
        Ok(()) => Ok(()),
        Err(TestError::Fail(reason, value)) => Err(format!("{reason}; minimal input: {value:#?}")),
        Err(TestError::Abort(reason)) => Err(format!("aborted: {reason}")),
    }
}

/// Draws one value, for smoke checks that need a concrete sample.
pub fn sample<S: Strategy>(strategy: S) -> S::Value {
    let mut r = runner();
    strategy.new_tree(&mut r).expect("strategy").current()
}

// ---------------------------------------------------------------- sentences

/// Token pool that overlaps with the generated pattern vocabulary.
const TOKEN_POOL: &[(&str, &str, TokenPos)] = &[
    ("take", "take", TokenPos::Verb),
    ("takes", "take", TokenPos::Verb),
    ("took", "take", TokenPos::Verb),
    ("call", "call", TokenPos::Verb),
    ("called", "call", TokenPos::Verb),
    ("call", "call", TokenPos::Noun),
    ("in", "in", TokenPos::Prep),
    ("a", "a", TokenPos::Det),
    ("The", "the", TokenPos::Det),
    ("the", "the", TokenPos::Det),
    ("your", "your", TokenPos::Det),
    ("it", "it", TokenPos::Pron),
    ("himself", "himself", TokenPos::Pron),
    ("apart", "apart", TokenPos::Adv),
    ("carefully", "carefully", TokenPos::Adv),
    ("quickly", "quickly", TokenPos::Adv),
    ("loan", "loan", TokenPos::Noun),
    ("loans", "loan", TokenPos::Noun),
    ("big", "big", TokenPos::Adj),
    ("interest-free", "interest-free", TokenPos::Adj),
    ("command", "command", TokenPos::Noun),
    ("control", "control", TokenPos::Noun),
    ("controls", "control", TokenPos::Verb),
    ("30", "30", TokenPos::Num),
    ("minutes", "minute", TokenPos::Noun),
    ("John", "john", TokenPos::Prpn),
    ("'s", "'s", TokenPos::Part),
    ("that", "that", TokenPos::Conj),
    ("to", "to", TokenPos::Part),
    ("walk", "walk", TokenPos::Verb),
    ("step", "step", TokenPos::Noun),
    (".", ".", TokenPos::Punc),
];

const SPAN_LABELS: [SpanLabel; 4] = [SpanLabel::Np, SpanLabel::ThatClause, SpanLabel::ToInf, SpanLabel::Pp];

/// Drops spans that cross an earlier span of the same label.
fn well_nested(raw: Vec<ConstituentSpan>) -> Vec<ConstituentSpan> {
    let mut kept: Vec<ConstituentSpan> = Vec::new();
    for c in raw {
        let crossing = kept.iter().any(|o| {
            o.label == c.label && o.span.overlaps(&c.span) && !o.span.covers(&c.span) && !c.span.covers(&o.span)
        });
        if !crossing && !kept.contains(&c) {
            kept.push(c);
        }
    }
    kept
}

pub fn arb_sentence(max_tokens: usize) -> impl Strategy<Value = AnnotatedSentence> {
    (1..=max_tokens)
        .prop_flat_map(|n| {
            (
                prop::collection::vec(0..TOKEN_POOL.len(), n),
                prop::collection::vec((0..SPAN_LABELS.len(), 0..n, 1..=n), 0..6),
            )
        })
        .prop_map(|(picks, raw_spans)| {
            let tokens: Vec<Token> = picks
                .iter()
                .map(|&i| {
                    let (s, l, p) = TOKEN_POOL[i];
                    Token::new(s, l, p)
                })
                .collect();
            let n = tokens.len();
            let spans = raw_spans
                .into_iter()
                .map(|(label, start, len)| {
                    let end = (start + len).min(n);
                    ConstituentSpan::new(SPAN_LABELS[label], start, end)
                })
                .collect();
            let source_text = tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
            AnnotatedSentence { tokens, spans: well_nested(spans), source_text }
        })
}

// ---------------------------------------------------------------- databases

const HEADWORDS: [(&str, EntryPos); 4] = [
    ("take", EntryPos::Verb),
    ("call", EntryPos::Verb),
    ("command", EntryPos::Noun),
    ("loan", EntryPos::Noun),
];

const WORDS: &[&str] = &["take", "call", "in", "a", "the", "it", "apart", "loan", "command", "control", "minute", "for"];
const ALTERNATIONS: &[&[&str]] = &[&["loan", "control"], &["step", "walk"], &["picture", "photo"]];
const KOREAN: &[&str] = &["상환을", "요구하다", "를", "분해하다", "가", "걸리다", "의", "사진을", "찍다", "지휘통제"];

/// Slot shapes the generators draw from. Binding names are distinct.
fn slot_pool() -> Vec<Slot> {
    vec![
        Slot::noun_phrase('A'),
        Slot::noun_phrase('B'),
        Slot::new(Parameter::Noun),
        Slot::new(Parameter::Pron),
        Slot::new(Parameter::Prpn),
        Slot::numbered(Parameter::Num, 1),
        Slot::new(Parameter::OneS),
        Slot::new(Parameter::Oneself),
        Slot::new(Parameter::Adv),
        Slot::new(Parameter::Adj),
        Slot::new(Parameter::ThatClause),
        Slot::new(Parameter::ToInf),
        Slot::new(Parameter::Pp),
    ]
}

#[derive(Debug, Clone)]
enum ItemSeed {
    Word { word: usize, morph: bool, detail: bool },
    Alt { set: usize, morph: bool, detail: bool },
    Slot { slot: usize, detail: bool },
}

fn arb_item_seed() -> impl Strategy<Value = ItemSeed> {
    prop_oneof![
        5 => (0..WORDS.len(), prop::bool::weighted(0.2), prop::bool::weighted(0.1))
            .prop_map(|(word, morph, detail)| ItemSeed::Word { word, morph, detail }),
        1 => (0..ALTERNATIONS.len(), prop::bool::weighted(0.2), prop::bool::weighted(0.1))
            .prop_map(|(set, morph, detail)| ItemSeed::Alt { set, morph, detail }),
        3 => (0..13usize, prop::bool::weighted(0.1)).prop_map(|(slot, detail)| ItemSeed::Slot { slot, detail }),
    ]
}

fn build_items(seeds: Vec<ItemSeed>, headword: &str, head_at: Option<usize>) -> Vec<PatternElement> {
    let pool = slot_pool();
    let mut used = Vec::new();
    let mut items = Vec::new();
    for seed in seeds {
        match seed {
            ItemSeed::Word { word, morph, detail } => items.push(PatternElement::Literal(Literal {
                morph_variable: morph,
                detail_marked: detail,
                ..Literal::plain(WORDS[word])
            })),
            ItemSeed::Alt { set, morph, detail } => {
                let alts: Vec<String> = ALTERNATIONS[set].iter().map(|s| s.to_string()).collect();
                items.push(PatternElement::Literal(Literal {
                    word: alts[0].clone(),
                    morph_variable: morph,
                    is_head: false,
                    alternatives: Some(alts),
                    detail_marked: detail,
                }))
            }
            ItemSeed::Slot { slot, detail } => {
                if used.contains(&slot) {
                    continue;
                }
                used.push(slot);
                items.push(PatternElement::Slot(Slot { detail_marked: detail, ..pool[slot].clone() }));
            }
        }
    }
    if let Some(at) = head_at {
        let at = at.min(items.len());
        items.insert(at, PatternElement::Literal(Literal::plain(headword)));
    }
    if items.is_empty() {
        items.push(PatternElement::Literal(Literal::plain(headword)));
    }
    items
}

/// Template over the unit's slots plus Korean words, with an alignment
/// onto text tokens when `align` is set.
fn build_template(
    items: &[PatternElement],
    text_picks: Vec<usize>,
    slot_order: Vec<usize>,
    use_source_name: bool,
    align: Vec<(usize, usize)>,
) -> KoreanTemplate {
    let mut slot_names: Vec<String> = items
        .iter()
        .filter_map(PatternElement::as_slot)
        .map(|s| if use_source_name { s.source_name() } else { s.binding_name() })
        .collect();
    // a cheap deterministic shuffle
    for (i, k) in slot_order.into_iter().enumerate() {
        let n = slot_names.len();
        if n > 1 {
            slot_names.swap(i % n, k % n);
        }
    }
    let mut tokens: Vec<TemplateToken> = Vec::new();
    let mut texts = text_picks.into_iter().map(|i| TemplateToken::Text(KOREAN[i].to_string()));
    for name in slot_names {
        if let Some(t) = texts.next() {
            tokens.push(t);
        }
        tokens.push(TemplateToken::Slot(name));
    }
    tokens.extend(texts);
    if tokens.is_empty() {
        tokens.push(TemplateToken::Text(KOREAN[1].to_string()));
    }
    let text_positions: Vec<usize> = tokens
        .iter()
        .enumerate()
        .filter(|(_, t)| matches!(t, TemplateToken::Text(_)))
        .map(|(i, _)| i)
        .collect();
    let mut alignment = BTreeMap::new();
    if !text_positions.is_empty() {
        for (item, pos) in align {
            alignment.insert(item % items.len(), text_positions[pos % text_positions.len()]);
        }
    }
    KoreanTemplate { tokens, alignment }
}

const CATEGORIES: [GrammCategory; 6] = GrammCategory::ALL;

pub fn arb_unit(headword: &'static str) -> impl Strategy<Value = PhraseUnit> {
    (
        prop::collection::vec(arb_item_seed(), 0..4),
        prop::option::weighted(0.8, 0..4usize),
        0..CATEGORIES.len(),
        prop::collection::vec(0..KOREAN.len(), 0..4),
        prop::collection::vec(0..8usize, 0..3),
        any::<bool>(),
        prop::collection::vec((0..6usize, 0..6usize), 0..3),
        (prop::bool::weighted(0.2), prop::bool::weighted(0.3)),
        prop::option::weighted(0.2, 0..6usize),
    )
        .prop_map(
            move |(seeds, head_at, cat, texts, order, source_names, align, (pre, post), marked_head)| {
                let mut items = build_items(seeds, headword, head_at);
                let template = build_template(&items, texts, order, source_names, align);
                let literal_positions: Vec<usize> =
                    (0..items.len()).filter(|&i| items[i].as_literal().is_some()).collect();
                let head_index = match marked_head {
                    Some(k) if !literal_positions.is_empty() => {
                        let at = literal_positions[k % literal_positions.len()];
                        if let PatternElement::Literal(l) = &mut items[at] {
                            l.is_head = true;
                        }
                        Some(at)
                    }
                    _ => None,
                };
                PhraseUnit {
                    items,
                    category: CATEGORIES[cat],
                    template,
                    no_pre_modify: pre,
                    no_post_modify: post,
                    head_index,
                    raw_line: String::new(),
                    line: 0,
                }
            },
        )
}

pub fn arb_entry() -> impl Strategy<Value = Entry> {
    (0..HEADWORDS.len()).prop_flat_map(|h| {
        let (headword, entry_pos) = HEADWORDS[h];
        prop::collection::vec(arb_unit(headword), 1..4)
            .prop_map(move |units| Entry { headword: headword.to_string(), entry_pos, units })
    })
}

/// Well-formed databases of at most `max_units` units.
pub fn arb_db(max_units: usize) -> impl Strategy<Value = PhraseDB> {
    prop::collection::vec(arb_entry(), 0..4).prop_map(move |entries| {
        let mut budget = max_units;
        let mut kept = Vec::new();
        for mut e in entries {
            if budget == 0 {
                break;
            }
            e.units.truncate(budget);
            budget -= e.units.len();
            kept.push(e);
        }
        PhraseDB { entries: kept, source_name: String::new() }
    })
}

// ------------------------------------------------- reference matcher (no index)

/// One one-to-one match as seen by the reference matcher:
/// (global unit order, start, end, bindings as (name, start, end)).
pub type RefMatch = (usize, usize, usize, Vec<(String, usize, usize)>);

const DETS: [&str; 3] = ["a", "an", "the"];
const POSSESSIVE_DETS: [&str; 7] = ["my", "your", "his", "her", "its", "our", "their"];
const REFLEXIVES: [&str; 9] =
    ["myself", "yourself", "himself", "herself", "itself", "oneself", "ourselves", "yourselves", "themselves"];

fn literal_ok(lit: &Literal, unit: &PhraseUnit, i: usize, entry: &Entry, tok: &Token) -> bool {
    if unit.category == GrammCategory::Noun && tok.pos == TokenPos::Verb {
        return false;
    }
    let hw = entry.headword.to_lowercase();
    let pos = TokenPos::from(entry.entry_pos);
    let words: Vec<String> = match &lit.alternatives {
        Some(a) => a.iter().map(|w| w.to_lowercase()).collect(),
        None => vec![lit.word.to_lowercase()],
    };
    if lit.alternatives.is_none() && !lit.morph_variable && DETS.contains(&words[0].as_str()) && words[0] != hw {
        return DETS.contains(&tok.surface.to_lowercase().as_str());
    }
    let lemmas: Vec<String> = words.iter().map(|w| base_form(w, pos)).collect();
    let after_num = i > 0 && matches!(&unit.items[i - 1], PatternElement::Slot(s) if s.kind == Parameter::Num);
    if lit.morph_variable || after_num || words.contains(&hw) || lemmas.contains(&hw) {
        lemmas.contains(&tok.lemma)
    } else {
        words.contains(&tok.surface.to_lowercase())
    }
}

fn longest(s: &AnnotatedSentence, label: SpanLabel, at: usize) -> Option<usize> {
    s.spans.iter().filter(|c| c.label == label && c.span.start == at).map(|c| c.span.end).max()
}

fn nominal_end(s: &AnnotatedSentence, at: usize) -> Option<usize> {
    longest(s, SpanLabel::Np, at).or_else(|| {
        matches!(s.tokens[at].pos, TokenPos::Noun | TokenPos::Pron | TokenPos::Prpn).then_some(at + 1)
    })
}

fn slot_end(slot: &Slot, s: &AnnotatedSentence, at: usize) -> Option<usize> {
    let tok = s.tokens.get(at)?;
    let low = tok.surface.to_lowercase();
    let pos_is = |p: TokenPos| (tok.pos == p).then_some(at + 1);
    match slot.kind {
        Parameter::Noun | Parameter::Np => nominal_end(s, at),
        Parameter::Pron => pos_is(TokenPos::Pron),
        Parameter::Prpn => pos_is(TokenPos::Prpn),
        Parameter::Num => pos_is(TokenPos::Num),
        Parameter::Adj => pos_is(TokenPos::Adj),
        Parameter::Adv => pos_is(TokenPos::Adv),
        Parameter::Oneself => REFLEXIVES.contains(&low.as_str()).then_some(at + 1),
        Parameter::OneS => {
            if tok.pos == TokenPos::Det && POSSESSIVE_DETS.contains(&low.as_str()) {
                return Some(at + 1);
            }
            let end = nominal_end(s, at)?;
            let marker = s.tokens.get(end)?;
            ["'s", "'", "\u{2019}s"].contains(&marker.surface.as_str()).then_some(end + 1)
        }
        Parameter::ThatClause => longest(s, SpanLabel::ThatClause, at),
        Parameter::ToInf => longest(s, SpanLabel::ToInf, at),
        Parameter::Pp => longest(s, SpanLabel::Pp, at),
        other => panic!("reference matcher does not model {other:?}"),
    }
}

/// Tries every unit at every start, without an index or anchors.
pub fn reference_matches(db: &PhraseDB, s: &AnnotatedSentence) -> Vec<RefMatch> {
    let mut out = Vec::new();
    let mut order = 0;
    for entry in &db.entries {
        for unit in &entry.units {
            'start: for start in 0..s.len() {
                let mut cur = start;
                let mut binds = Vec::new();
                for (i, item) in unit.items.iter().enumerate() {
                    match item {
                        PatternElement::Literal(lit) => {
                            match s.tokens.get(cur) {
                                Some(t) if literal_ok(lit, unit, i, entry, t) => cur += 1,
                                _ => continue 'start,
                            }
                        }
                        PatternElement::Slot(slot) => match slot_end(slot, s, cur) {
                            Some(end) => {
                                binds.push((slot.binding_name(), cur, end));
                                cur = end;
                            }
                            None => continue 'start,
                        },
                    }
                }
                out.push((order, start, cur, binds));
            }
            order += 1;
        }
    }
    out.sort();
    out
}

/// Spans overlap when they share a token.
pub fn spans_overlap(a: TokenSpan, b: TokenSpan) -> bool {
    (a.start..a.end).any(|i| (b.start..b.end).contains(&i))
}

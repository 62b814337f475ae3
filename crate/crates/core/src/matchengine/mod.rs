//! Phrase-unit matching over annotated sentences.
//!
//! Units are compiled into matchers and indexed by headword. Matching runs in
//! one of two modes: one-to-one, where every token of the match is a pattern
//! word or a bound parameter, and extended, where a bounded number of
//! adjective/noun pre-modifiers and adverbs may sit between pattern words.
//! Overlapping candidates are resolved by [`select_matches`].

mod bind;
mod compile;
mod matcher;
mod select;

use std::collections::BTreeMap;
use std::fmt;

use crate::annotate::{SpanLabel, TokenSpan};
use crate::dbformat::GrammCategory;

pub use bind::{
    bind_parameter, constituent_label, POSSESSIVE_DETERMINERS, POSSESSIVE_MARKERS,
    REFLEXIVE_PRONOUNS,
};
pub use compile::{
    build_index, compile_unit, CompiledPattern, ElementMatcher, LiteralMatcher, PhraseIndex,
    WordTest, DETERMINERS,
};
pub use matcher::{find_matches, match_at, MAX_ADVERBS, MAX_NOUN_MODIFIERS};
pub use select::select_matches;

/// Identifies a phrase unit: its headword, its position among that
/// headword's units, and its global position in the database.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitRef {
    /// Global DB order; compares first.
    pub order: usize,
    pub headword: String,
    /// 0-based position among the units sharing this headword.
    pub ordinal: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub enum MatchMode {
    OneToOne,
    #[default]
    Extended,
}

impl MatchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            MatchMode::OneToOne => "one-to-one",
            MatchMode::Extended => "extended",
        }
    }
}

impl fmt::Display for MatchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum BindingKind {
    Token,
    Constituent(SpanLabel),
    /// Noun phrase plus its possessive marker, for `ONE_S`.
    Possessive,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SlotBinding {
    pub name: String,
    pub span: TokenSpan,
    pub kind: BindingKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MatchResult {
    pub unit_ref: UnitRef,
    /// Covers every matched word, bound span and absorbed modifier.
    pub span: TokenSpan,
    pub category: GrammCategory,
    pub bindings: Vec<SlotBinding>,
    /// Pattern item index to the tokens absorbed as its modifiers.
    pub modifiers: BTreeMap<usize, Vec<usize>>,
    /// `Extended` only when something was absorbed.
    pub mode: MatchMode,
    /// Tokens consumed by each pattern item, in item order.
    pub item_spans: Vec<TokenSpan>,
}

impl MatchResult {
    pub fn binding(&self, name: &str) -> Option<&SlotBinding> {
        self.bindings.iter().find(|b| b.name == name)
    }

    /// `entry<TAB>unit#<TAB>category<TAB>start..end<TAB>slot=span,...<TAB>mode`,
    /// with a 1-based unit number.
    pub fn render_line(&self) -> String {
        let slots: Vec<String> =
            self.bindings.iter().map(|b| format!("{}={}", b.name, b.span)).collect();
        format!(
            "{}\t{}\t{}\t{}\t{}\t{}",
            self.unit_ref.headword,
            self.unit_ref.ordinal + 1,
            self.category,
            self.span,
            slots.join(","),
            self.mode
        )
    }
}

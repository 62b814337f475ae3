//! Annotated input sentences, lemmatization and the fallback gloss lexicon.
//!
//! Sentences arrive already tagged and chunked; this module only defines
//! and loads that representation.

mod lemma;
mod lexicon;
mod sentence;

use std::fmt;

pub use lemma::{base_form, lemmatize, ExceptionTable};
pub use lexicon::{load_lexicon, Lexicon, LexiconError};
pub use sentence::{
    parse_annotated, parse_document, render_sentence, tokenize, AnnotateError,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenPos {
    Noun,
    Verb,
    Adj,
    Adv,
    Prep,
    Conj,
    Det,
    Pron,
    Prpn,
    Num,
    Part,
    Punc,
}

impl TokenPos {
    pub const ALL: [TokenPos; 12] = [
        TokenPos::Noun,
        TokenPos::Verb,
        TokenPos::Adj,
        TokenPos::Adv,
        TokenPos::Prep,
        TokenPos::Conj,
        TokenPos::Det,
        TokenPos::Pron,
        TokenPos::Prpn,
        TokenPos::Num,
        TokenPos::Part,
        TokenPos::Punc,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            TokenPos::Noun => "NOUN",
            TokenPos::Verb => "VERB",
            TokenPos::Adj => "ADJ",
            TokenPos::Adv => "ADV",
            TokenPos::Prep => "PREP",
            TokenPos::Conj => "CONJ",
            TokenPos::Det => "DET",
            TokenPos::Pron => "PRON",
            TokenPos::Prpn => "PRPN",
            TokenPos::Num => "NUM",
            TokenPos::Part => "PART",
            TokenPos::Punc => "PUNC",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        TokenPos::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl From<crate::dbformat::EntryPos> for TokenPos {
    fn from(p: crate::dbformat::EntryPos) -> Self {
        use crate::dbformat::EntryPos;
        match p {
            EntryPos::Noun => TokenPos::Noun,
            EntryPos::Verb => TokenPos::Verb,
            EntryPos::Adj => TokenPos::Adj,
            EntryPos::Adv => TokenPos::Adv,
            EntryPos::Prep => TokenPos::Prep,
            EntryPos::Conj => TokenPos::Conj,
        }
    }
}

impl fmt::Display for TokenPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SpanLabel {
    Np,
    Vp,
    Pp,
    Sent,
    ToInf,
    BareInf,
    ThatClause,
    WhatClause,
    WhetherClause,
    IfClause,
    HowClause,
    WhereClause,
    WhClause,
    PastP,
    PresP,
}

impl SpanLabel {
    pub const ALL: [SpanLabel; 15] = [
        SpanLabel::Np,
        SpanLabel::Vp,
        SpanLabel::Pp,
        SpanLabel::Sent,
        SpanLabel::ToInf,
        SpanLabel::BareInf,
        SpanLabel::ThatClause,
        SpanLabel::WhatClause,
        SpanLabel::WhetherClause,
        SpanLabel::IfClause,
        SpanLabel::HowClause,
        SpanLabel::WhereClause,
        SpanLabel::WhClause,
        SpanLabel::PastP,
        SpanLabel::PresP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            SpanLabel::Np => "NP",
            SpanLabel::Vp => "VP",
            SpanLabel::Pp => "PP",
            SpanLabel::Sent => "SENT",
            SpanLabel::ToInf => "TO_INF",
            SpanLabel::BareInf => "BARE_INF",
            SpanLabel::ThatClause => "THAT_CLAUSE",
            SpanLabel::WhatClause => "WHAT_CLAUSE",
            SpanLabel::WhetherClause => "WHETHER_CLAUSE",
            SpanLabel::IfClause => "IF_CLAUSE",
            SpanLabel::HowClause => "HOW_CLAUSE",
            SpanLabel::WhereClause => "WHERE_CLAUSE",
            SpanLabel::WhClause => "WH_CLAUSE",
            SpanLabel::PastP => "PASTP",
            SpanLabel::PresP => "PRESP",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        SpanLabel::ALL.into_iter().find(|l| l.as_str() == s)
    }
}

impl fmt::Display for SpanLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Half-open token range `start..end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TokenSpan {
    pub start: usize,
    pub end: usize,
}

impl TokenSpan {
    pub fn new(start: usize, end: usize) -> Self {
        TokenSpan { start, end }
    }

    pub fn len(&self) -> usize {
        self.end - self.start
    }

    pub fn is_empty(&self) -> bool {
        self.end <= self.start
    }

    pub fn contains(&self, i: usize) -> bool {
        self.start <= i && i < self.end
    }

    pub fn overlaps(&self, other: &TokenSpan) -> bool {
        self.start < other.end && other.start < self.end
    }

    pub fn covers(&self, other: &TokenSpan) -> bool {
        self.start <= other.start && other.end <= self.end
    }

    pub fn indices(&self) -> std::ops::Range<usize> {
        self.start..self.end
    }
}

impl fmt::Display for TokenSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Token {
    pub surface: String,
    /// Always lowercase.
    pub lemma: String,
    pub pos: TokenPos,
}

impl Token {
    pub fn new(surface: &str, lemma: &str, pos: TokenPos) -> Self {
        Token { surface: surface.to_string(), lemma: lemma.to_lowercase(), pos }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ConstituentSpan {
    pub label: SpanLabel,
    pub span: TokenSpan,
}

impl ConstituentSpan {
    pub fn new(label: SpanLabel, start: usize, end: usize) -> Self {
        ConstituentSpan { label, span: TokenSpan::new(start, end) }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct AnnotatedSentence {
    pub tokens: Vec<Token>,
    pub spans: Vec<ConstituentSpan>,
    pub source_text: String,
}

impl AnnotatedSentence {
    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }

    pub fn full_span(&self) -> TokenSpan {
        TokenSpan::new(0, self.tokens.len())
    }

    /// Longest span with `label` starting at `start`.
    pub fn longest_span_at(&self, label: SpanLabel, start: usize) -> Option<TokenSpan> {
        self.spans
            .iter()
            .filter(|c| c.label == label && c.span.start == start)
            .map(|c| c.span)
            .max_by_key(|s| s.end)
    }

    /// The tokens of `range` as a sentence of their own. Constituents lying
    /// wholly inside the range are kept and re-based; the rest are dropped.
    pub fn slice(&self, range: TokenSpan) -> AnnotatedSentence {
        let tokens = self.tokens[range.indices()].to_vec();
        let spans = self
            .spans
            .iter()
            .filter(|c| range.covers(&c.span))
            .map(|c| ConstituentSpan::new(c.label, c.span.start - range.start, c.span.end - range.start))
            .collect();
        let source_text = tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ");
        AnnotatedSentence { tokens, spans, source_text }
    }

    pub fn surface_text(&self, range: TokenSpan) -> String {
        self.tokens[range.indices()]
            .iter()
            .map(|t| t.surface.as_str())
            .collect::<Vec<_>>()
            .join(" ")
    }
}

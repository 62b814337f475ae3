use crate::annotate::{AnnotatedSentence, SpanLabel, TokenPos, TokenSpan};
use crate::dbformat::{Parameter, Slot};

use super::{BindingKind, SlotBinding};

pub const POSSESSIVE_DETERMINERS: [&str; 7] = ["my", "your", "his", "her", "its", "our", "their"];
pub const POSSESSIVE_MARKERS: [&str; 3] = ["'s", "'", "\u{2019}s"];
pub const REFLEXIVE_PRONOUNS: [&str; 9] = [
    "myself",
    "yourself",
    "himself",
    "herself",
    "itself",
    "oneself",
    "ourselves",
    "yourselves",
    "themselves",
];

/// Span label a clause-like parameter binds to. Token-level parameters
/// have none.
pub fn constituent_label(kind: Parameter) -> Option<SpanLabel> {
    Some(match kind {
        Parameter::Vp => SpanLabel::Vp,
        Parameter::Pp => SpanLabel::Pp,
        Parameter::Sent => SpanLabel::Sent,
        Parameter::ThatClause => SpanLabel::ThatClause,
        Parameter::WhatClause => SpanLabel::WhatClause,
        Parameter::WhetherClause => SpanLabel::WhetherClause,
        Parameter::IfClause => SpanLabel::IfClause,
        Parameter::HowClause => SpanLabel::HowClause,
        Parameter::WhereClause => SpanLabel::WhereClause,
        Parameter::WhClause => SpanLabel::WhClause,
        Parameter::ToInf => SpanLabel::ToInf,
        Parameter::BareInf => SpanLabel::BareInf,
        Parameter::PastP => SpanLabel::PastP,
        Parameter::PresP => SpanLabel::PresP,
        _ => return None,
    })
}

/// Longest NP constituent at `cursor`, else a single nominal token.
fn noun_phrase(sentence: &AnnotatedSentence, cursor: usize) -> Option<(TokenSpan, BindingKind)> {
    if let Some(span) = sentence.longest_span_at(SpanLabel::Np, cursor) {
        return Some((span, BindingKind::Constituent(SpanLabel::Np)));
    }
    let tok = sentence.tokens.get(cursor)?;
    matches!(tok.pos, TokenPos::Noun | TokenPos::Pron | TokenPos::Prpn)
        .then(|| (TokenSpan::new(cursor, cursor + 1), BindingKind::Token))
}

/// Tries to bind `slot` at `cursor`. Token parameters take exactly one
/// token; phrase and clause parameters take the longest constituent with
/// the matching label that starts at the cursor.
pub fn bind_parameter(
    slot: &Slot,
    sentence: &AnnotatedSentence,
    cursor: usize,
) -> Option<SlotBinding> {
    let tok = sentence.tokens.get(cursor)?;
    let single = TokenSpan::new(cursor, cursor + 1);
    let by_pos = |pos: TokenPos| (tok.pos == pos).then_some((single, BindingKind::Token));
    let lower = tok.surface.to_lowercase();

    let (span, kind) = match slot.kind {
        Parameter::Noun | Parameter::Np => noun_phrase(sentence, cursor)?,
        Parameter::Pron => by_pos(TokenPos::Pron)?,
        Parameter::Prpn => by_pos(TokenPos::Prpn)?,
        Parameter::Num => by_pos(TokenPos::Num)?,
        Parameter::Adj => by_pos(TokenPos::Adj)?,
        Parameter::Adv => by_pos(TokenPos::Adv)?,
        Parameter::Oneself => {
            REFLEXIVE_PRONOUNS.contains(&lower.as_str()).then_some((single, BindingKind::Token))?
        }
        Parameter::OneS => {
            if tok.pos == TokenPos::Det && POSSESSIVE_DETERMINERS.contains(&lower.as_str()) {
                (single, BindingKind::Token)
            } else {
                let (np, _) = noun_phrase(sentence, cursor)?;
                let marker = sentence.tokens.get(np.end)?;
                if !POSSESSIVE_MARKERS.contains(&marker.surface.as_str()) {
                    return None;
                }
                (TokenSpan::new(cursor, np.end + 1), BindingKind::Possessive)
            }
        }
        other => {
            let label = constituent_label(other)?;
            (sentence.longest_span_at(label, cursor)?, BindingKind::Constituent(label))
        }
    };
    Some(SlotBinding { name: slot.binding_name(), span, kind })
}

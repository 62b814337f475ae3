use thiserror::Error;

use super::{
    lemmatize, AnnotatedSentence, ConstituentSpan, ExceptionTable, SpanLabel, Token, TokenPos,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnnotateError {
    #[error("line {line}: expected `surface<TAB>lemma<TAB>POS`, got `{text}`")]
    BadTokenLine { line: usize, text: String },
    #[error("line {line}: expected `SPAN<TAB>label<TAB>start<TAB>end`, got `{text}`")]
    BadSpanLine { line: usize, text: String },
    #[error("line {line}: unknown part of speech `{pos}`")]
    UnknownPos { line: usize, pos: String },
    #[error("line {line}: unknown span label `{label}`")]
    UnknownSpanLabel { line: usize, label: String },
    #[error("line {line}: span {start}..{end} is outside the sentence's {len} tokens")]
    SpanOutOfRange { line: usize, start: usize, end: usize, len: usize },
    #[error("line {line}: {label} span {start}..{end} partially overlaps another {label} span")]
    SpanOverlap { line: usize, label: SpanLabel, start: usize, end: usize },
}

struct Pending {
    tokens: Vec<Token>,
    spans: Vec<(usize, ConstituentSpan)>,
    text: Option<String>,
}

impl Pending {
    fn new() -> Self {
        Pending { tokens: Vec::new(), spans: Vec::new(), text: None }
    }

    fn is_empty(&self) -> bool {
        self.tokens.is_empty() && self.spans.is_empty() && self.text.is_none()
    }

    fn finish(self) -> Result<AnnotatedSentence, AnnotateError> {
        let len = self.tokens.len();
        for (i, (line, c)) in self.spans.iter().enumerate() {
            let (start, end) = (c.span.start, c.span.end);
            if start >= end || end > len {
                return Err(AnnotateError::SpanOutOfRange { line: *line, start, end, len });
            }
            let crossing = self.spans[..i].iter().any(|(_, o)| {
                o.label == c.label
                    && o.span.overlaps(&c.span)
                    && !o.span.covers(&c.span)
                    && !c.span.covers(&o.span)
            });
            if crossing {
                return Err(AnnotateError::SpanOverlap { line: *line, label: c.label, start, end });
            }
        }
        let source_text = self.text.unwrap_or_else(|| {
            self.tokens.iter().map(|t| t.surface.as_str()).collect::<Vec<_>>().join(" ")
        });
        Ok(AnnotatedSentence {
            tokens: self.tokens,
            spans: self.spans.into_iter().map(|(_, c)| c).collect(),
            source_text,
        })
    }
}

/// Reads every sentence in an annotation document. Sentences are separated
/// by blank lines.
///
/// A lemma column of `_` asks for the lemma to be derived from the surface
/// form with the built-in exception table.
pub fn parse_document(text: &str) -> Result<Vec<AnnotatedSentence>, AnnotateError> {
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    let mut sentences = Vec::new();
    let mut pending = Pending::new();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.trim_end_matches('\r');
        if line.trim().is_empty() {
            if !pending.is_empty() {
                sentences.push(std::mem::replace(&mut pending, Pending::new()).finish()?);
            }
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        match fields.as_slice() {
            ["TEXT", text] => pending.text = Some(text.to_string()),
            ["SPAN", rest @ ..] => {
                let [label, start, end] = rest else {
                    return Err(AnnotateError::BadSpanLine { line: line_no, text: line.into() });
                };
                let label = SpanLabel::parse(label).ok_or_else(|| {
                    AnnotateError::UnknownSpanLabel { line: line_no, label: label.to_string() }
                })?;
                let (Ok(start), Ok(end)) = (start.parse::<usize>(), end.parse::<usize>()) else {
                    return Err(AnnotateError::BadSpanLine { line: line_no, text: line.into() });
                };
                pending.spans.push((line_no, ConstituentSpan::new(label, start, end)));
            }
            [surface, lemma, pos] => {
                if surface.is_empty() || lemma.is_empty() {
                    return Err(AnnotateError::BadTokenLine { line: line_no, text: line.into() });
                }
                let pos = TokenPos::parse(pos).ok_or_else(|| AnnotateError::UnknownPos {
                    line: line_no,
                    pos: pos.to_string(),
                })?;
                let lemma = if *lemma == "_" {
                    lemmatize(surface, pos, ExceptionTable::builtin())
                } else {
                    lemma.to_lowercase()
                };
                pending.tokens.push(Token { surface: surface.to_string(), lemma, pos });
            }
            _ => return Err(AnnotateError::BadTokenLine { line: line_no, text: line.into() }),
        }
    }
    if !pending.is_empty() {
        sentences.push(pending.finish()?);
    }
    Ok(sentences)
}

/// Reads the first sentence of a document; a blank document gives an empty
/// sentence.
pub fn parse_annotated(text: &str) -> Result<AnnotatedSentence, AnnotateError> {
    Ok(parse_document(text)?.into_iter().next().unwrap_or_default())
}

/// Writes a sentence back in the annotation format.
pub fn render_sentence(sentence: &AnnotatedSentence) -> String {
    let mut out = format!("TEXT\t{}\n", sentence.source_text);
    for t in &sentence.tokens {
        out.push_str(&format!("{}\t{}\t{}\n", t.surface, t.lemma, t.pos));
    }
    for c in &sentence.spans {
        out.push_str(&format!("SPAN\t{}\t{}\t{}\n", c.label, c.span.start, c.span.end));
    }
    out
}

/// Whitespace split with sentence punctuation peeled off into its own
/// tokens. Only a convenience for building annotation files by hand.
pub fn tokenize(text: &str) -> Vec<String> {
    const PUNCT: &[char] = &['.', ',', '!', '?', ';', ':', '"', '(', ')'];
    let mut out = Vec::new();
    for word in text.split_whitespace() {
        let mut core = word;
        let mut leading = Vec::new();
        while let Some(c) = core.chars().next().filter(|c| PUNCT.contains(c)) {
            leading.push(c.to_string());
            core = &core[c.len_utf8()..];
        }
        let mut trailing = Vec::new();
        while let Some(c) = core.chars().last().filter(|c| PUNCT.contains(c)) {
            trailing.push(c.to_string());
            core = &core[..core.len() - c.len_utf8()];
        }
        out.extend(leading);
        if !core.is_empty() {
            out.push(core.to_string());
        }
        out.extend(trailing.into_iter().rev());
    }
    out
}

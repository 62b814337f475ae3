use std::collections::HashSet;

use super::model::*;
use crate::annotate::{base_form, TokenPos};

/// Advisory checks over a parsed database. Only warnings are produced.
pub fn lint_db(db: &PhraseDB) -> Vec<Diagnostic> {
    let mut out = Vec::new();
    for entry in &db.entries {
        let headword = entry.headword.to_lowercase();
        let pos = TokenPos::from(entry.entry_pos);
        let mut seen: Vec<(&[PatternElement], GrammCategory)> = Vec::new();

        for unit in &entry.units {
            let line = unit.line;
            let names_headword = |lit: &Literal| {
                lit.words()
                    .iter()
                    .any(|w| w.to_lowercase() == headword || base_form(w, pos) == headword)
            };
            let literals: Vec<&Literal> = unit.items.iter().filter_map(|i| i.as_literal()).collect();
            if !literals.iter().any(|l| names_headword(l)) {
                out.push(Diagnostic::warning(
                    DiagCode::HeadwordNotInItems,
                    line,
                    format!("no word of `{}` is a form of \"{}\"", unit.raw_line, entry.headword),
                ));
            } else if !literals.iter().any(|l| l.alternatives.is_none() && names_headword(l)) {
                out.push(Diagnostic::warning(
                    DiagCode::UnanchoredUnit,
                    line,
                    format!(
                        "\"{}\" only occurs inside an alternation; the unit is matched by full scan",
                        entry.headword
                    ),
                ));
            }

            let key = (unit.items.as_slice(), unit.category);
            if seen.contains(&key) {
                out.push(Diagnostic::warning(
                    DiagCode::DuplicateUnit,
                    line,
                    format!("duplicate phrase `{}` under \"{}\"", unit.raw_line, entry.headword),
                ));
            } else {
                seen.push(key);
            }

            for lit in &literals {
                if let Some(alts) = &lit.alternatives {
                    let mut words = HashSet::new();
                    for w in alts {
                        if !words.insert(w.to_lowercase()) {
                            out.push(Diagnostic::warning(
                                DiagCode::UnreachableAlternative,
                                line,
                                format!("alternative `{w}` is listed twice"),
                            ));
                        }
                    }
                }
            }

            for (&item, &tok) in &unit.template.alignment {
                let ok = item < unit.items.len()
                    && matches!(unit.template.tokens.get(tok), Some(TemplateToken::Text(_)));
                if !ok {
                    out.push(Diagnostic::warning(
                        DiagCode::AlignmentOutOfRange,
                        line,
                        format!("alignment {item}={tok} does not pair an item with Korean text"),
                    ));
                }
            }
        }
    }
    out
}

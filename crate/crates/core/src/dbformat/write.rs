use std::fmt::Write as _;

use super::model::*;

/// Renders one pattern item in canonical form (`^@*` prefix order,
/// alternations in brackets).
pub fn render_item(item: &PatternElement) -> String {
    match item {
        PatternElement::Literal(lit) => {
            let mut s = String::new();
            if lit.morph_variable {
                s.push('^');
            }
            if lit.is_head {
                s.push('@');
            }
            if lit.detail_marked {
                s.push('*');
            }
            match &lit.alternatives {
                Some(alts) => {
                    s.push('[');
                    s.push_str(&alts.join("/"));
                    s.push(']');
                }
                None => s.push_str(&lit.word),
            }
            s
        }
        PatternElement::Slot(slot) => {
            let prefix = if slot.detail_marked { "*" } else { "" };
            format!("{prefix}{}", slot.source_name())
        }
    }
}

/// The English side of a unit, edge flags included.
pub fn render_pattern(unit: &PhraseUnit) -> String {
    let mut parts = Vec::with_capacity(unit.items.len() + 2);
    if unit.no_pre_modify {
        parts.push("|".to_string());
    }
    parts.extend(unit.items.iter().map(render_item));
    if unit.no_post_modify {
        parts.push("$".to_string());
    }
    parts.join(" ")
}

/// Canonical phrase line, without any `#align` sidecar.
pub fn render_phrase_line(unit: &PhraseUnit) -> String {
    format!(
        "# {} ({}) : {}",
        render_pattern(unit),
        unit.category,
        unit.template.source_text()
    )
}

pub fn serialize_db(db: &PhraseDB) -> String {
    let mut out = String::new();
    for (i, entry) in db.entries.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "\"{}\"", entry.headword);
        let _ = writeln!(out, "[{}]", entry.entry_pos);
        for unit in &entry.units {
            out.push_str(&render_phrase_line(unit));
            out.push('\n');
            if !unit.template.alignment.is_empty() {
                out.push_str("#align");
                for (item, tok) in &unit.template.alignment {
                    let _ = write!(out, " {item}={tok}");
                }
                out.push('\n');
            }
        }
    }
    out
}

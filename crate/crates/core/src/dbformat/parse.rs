use std::collections::{BTreeMap, HashSet};

use super::model::*;

/// Parses a whole database document. Never fails: malformed constructs are
/// reported as diagnostics and left out of the returned database.
pub fn parse_db(text: &str) -> (PhraseDB, Vec<Diagnostic>) {
    parse_db_named(text, "")
}

pub fn parse_db_named(text: &str, source_name: &str) -> (PhraseDB, Vec<Diagnostic>) {
    let mut parser = DbParser::default();
    let text = text.strip_prefix('\u{feff}').unwrap_or(text);
    for (i, line) in text.lines().enumerate() {
        parser.line(i + 1, line.trim());
    }
    parser.finish();
    let db = PhraseDB { entries: parser.entries, source_name: source_name.to_string() };
    (db, parser.diagnostics)
}

#[derive(Default)]
enum State {
    #[default]
    Outside,
    /// Header seen, waiting for the `[pos]` line.
    Header { headword: String, line: usize },
    InEntry(Entry),
    /// The current entry was rejected; its lines are dropped.
    Skipping,
}

#[derive(Default)]
struct DbParser {
    entries: Vec<Entry>,
    diagnostics: Vec<Diagnostic>,
    state: State,
    /// Outcome of the previous non-blank line when it was a phrase line.
    last_phrase: Option<bool>,
}

impl DbParser {
    fn line(&mut self, no: usize, line: &str) {
        if line.is_empty() {
            return;
        }
        let prev_phrase = self.last_phrase.take();

        if line.starts_with('"') || line.starts_with('\u{201c}') {
            self.header(no, line);
        } else if line.starts_with('[') {
            self.pos_line(no, line);
        } else if is_align_line(line) {
            self.align_line(no, line, prev_phrase);
        } else if line.starts_with('#') {
            self.phrase(no, line);
        } else {
            self.diagnostics.push(Diagnostic::error(
                DiagCode::UnexpectedLine,
                no,
                format!("unrecognized line `{line}`"),
            ));
        }
    }

    fn close_entry(&mut self) {
        match std::mem::take(&mut self.state) {
            State::InEntry(entry) => self.entries.push(entry),
            State::Header { headword, line } => self.diagnostics.push(Diagnostic::error(
                DiagCode::MissingEntryPos,
                line,
                format!("entry \"{headword}\" has no [part of speech] line"),
            )),
            State::Outside | State::Skipping => {}
        }
    }

    fn finish(&mut self) {
        self.close_entry();
    }

    fn header(&mut self, no: usize, line: &str) {
        self.close_entry();
        let body = &line[line.chars().next().map_or(0, char::len_utf8)..];
        let Some(headword) = body.strip_suffix('"').or_else(|| body.strip_suffix('\u{201d}'))
        else {
            self.diagnostics.push(Diagnostic::error(
                DiagCode::UnexpectedLine,
                no,
                "entry header lacks a closing quote",
            ));
            self.state = State::Skipping;
            return;
        };
        if headword.trim().is_empty() {
            self.diagnostics.push(Diagnostic::error(
                DiagCode::UnexpectedLine,
                no,
                "entry header is empty",
            ));
            self.state = State::Skipping;
        } else if headword.chars().any(char::is_whitespace) {
            self.diagnostics.push(Diagnostic::error(
                DiagCode::EntryHasSpace,
                no,
                format!("entry \"{headword}\" must be a single word"),
            ));
            self.state = State::Skipping;
        } else {
            self.state = State::Header { headword: headword.to_string(), line: no };
        }
    }

    fn pos_line(&mut self, no: usize, line: &str) {
        let headword = match &self.state {
            State::Skipping => return,
            State::Outside => {
                self.diagnostics.push(Diagnostic::error(
                    DiagCode::UnexpectedLine,
                    no,
                    "part-of-speech line outside an entry",
                ));
                return;
            }
            State::Header { headword, .. } => headword.clone(),
            // another [pos] block under the same header starts a sibling entry
            State::InEntry(entry) => entry.headword.clone(),
        };
        if matches!(self.state, State::InEntry(_)) {
            self.close_entry();
        }
        let tag = line
            .strip_prefix('[')
            .and_then(|s| s.strip_suffix(']'))
            .map(str::trim);
        match tag.and_then(EntryPos::parse) {
            Some(entry_pos) => {
                self.state = State::InEntry(Entry { headword, entry_pos, units: Vec::new() });
            }
            None => {
                self.diagnostics.push(Diagnostic::error(
                    DiagCode::UnknownEntryPos,
                    no,
                    format!("unknown entry part of speech `{line}`"),
                ));
                self.state = State::Skipping;
            }
        }
    }

    fn phrase(&mut self, no: usize, line: &str) {
        match &mut self.state {
            State::Skipping => {}
            State::Outside => self.diagnostics.push(Diagnostic::error(
                DiagCode::PhraseOutsideEntry,
                no,
                "phrase line before any entry header",
            )),
            State::Header { headword, .. } => {
                let msg = format!("entry \"{headword}\" has no [part of speech] line");
                self.diagnostics.push(Diagnostic::error(DiagCode::MissingEntryPos, no, msg));
                self.state = State::Skipping;
            }
            State::InEntry(entry) => match parse_phrase_line(line, no) {
                Ok(unit) => {
                    entry.units.push(unit);
                    self.last_phrase = Some(true);
                }
                Err(d) => {
                    self.diagnostics.push(d);
                    self.last_phrase = Some(false);
                }
            },
        }
    }

    fn align_line(&mut self, no: usize, line: &str, prev_phrase: Option<bool>) {
        let unit = match (&mut self.state, prev_phrase) {
            (State::Skipping, _) | (_, Some(false)) => return,
            (State::InEntry(entry), Some(true)) => entry.units.last_mut(),
            _ => None,
        };
        let Some(unit) = unit else {
            self.diagnostics.push(Diagnostic::error(
                DiagCode::OrphanAlign,
                no,
                "#align must directly follow a phrase line",
            ));
            return;
        };
        match parse_align_pairs(&line["#align".len()..]) {
            Ok(pairs) => unit.template.alignment.extend(pairs),
            Err(msg) => self.diagnostics.push(Diagnostic::error(DiagCode::BadAlign, no, msg)),
        }
        // a following #align line continues the same unit
        self.last_phrase = Some(true);
    }
}

fn is_align_line(line: &str) -> bool {
    match line.strip_prefix("#align") {
        Some(rest) => rest.is_empty() || rest.starts_with(char::is_whitespace),
        None => false,
    }
}

fn parse_align_pairs(body: &str) -> Result<Vec<(usize, usize)>, String> {
    let mut pairs = Vec::new();
    for tok in body.split_whitespace() {
        let (item, target) = tok
            .split_once('=')
            .ok_or_else(|| format!("alignment `{tok}` is not of the form item=token"))?;
        let item: usize = item
            .parse()
            .map_err(|_| format!("bad item index in alignment `{tok}`"))?;
        let target: usize = target
            .parse()
            .map_err(|_| format!("bad template index in alignment `{tok}`"))?;
        pairs.push((item, target));
    }
    if pairs.is_empty() {
        return Err("#align line has no pairs".to_string());
    }
    Ok(pairs)
}

/// Parses one `# items (CATEGORY) : template` line.
pub fn parse_phrase_line(line: &str, line_no: usize) -> Result<PhraseUnit, Diagnostic> {
    let err = |code, msg: String| Diagnostic::error(code, line_no, msg);
    let trimmed = line.trim();
    let body = trimmed
        .strip_prefix('#')
        .ok_or_else(|| err(DiagCode::UnexpectedLine, "phrase line must start with `#`".into()))?;

    let (english, korean) = body
        .split_once(':')
        .ok_or_else(|| err(DiagCode::MissingColon, "no `:` between phrase and Korean".into()))?;

    let english = english.trim_end();
    let open = english
        .strip_suffix(')')
        .and_then(|e| e.rfind('('))
        .ok_or_else(|| {
            err(DiagCode::MissingCategory, "`(CATEGORY)` must precede the colon".into())
        })?;
    let cat_text = english[open + 1..english.len() - 1].trim();
    if cat_text.is_empty() {
        return Err(err(DiagCode::MissingCategory, "empty grammatical category".into()));
    }
    let category = GrammCategory::parse(cat_text).ok_or_else(|| {
        err(DiagCode::UnknownCategory, format!("unknown grammatical category `{cat_text}`"))
    })?;

    let mut items = Vec::new();
    let mut no_pre_modify = false;
    let mut no_post_modify = false;
    for tok in english[..open].split_whitespace() {
        match tok {
            "|" => no_pre_modify = true,
            "$" => no_post_modify = true,
            _ => items.push(parse_item(tok).map_err(|(code, msg)| err(code, msg))?),
        }
    }
    if items.is_empty() {
        return Err(err(DiagCode::EmptyPattern, "phrase has no items".into()));
    }

    let mut head_index = None;
    for (i, item) in items.iter().enumerate() {
        if item.as_literal().is_some_and(|l| l.is_head) {
            if head_index.is_some() {
                return Err(err(DiagCode::InvalidItem, "more than one `@` main word".into()));
            }
            head_index = Some(i);
        }
    }

    let mut seen = HashSet::new();
    let mut names = HashSet::new();
    for (_, slot) in items.iter().enumerate().filter_map(|(i, e)| e.as_slot().map(|s| (i, s))) {
        let name = slot.binding_name();
        if !seen.insert(name.clone()) {
            return Err(err(
                DiagCode::DuplicateSlot,
                format!("parameter `{}` occurs twice; number them", slot.source_name()),
            ));
        }
        names.insert(slot.source_name());
        names.insert(name);
    }

    let mut tokens = Vec::new();
    for tok in korean.split_whitespace() {
        if names.contains(tok) {
            tokens.push(TemplateToken::Slot(tok.to_string()));
        } else if looks_like_slot(tok) {
            return Err(err(
                DiagCode::UnboundTemplateSlot,
                format!("template refers to `{tok}` which is not in the pattern"),
            ));
        } else {
            tokens.push(TemplateToken::Text(tok.to_string()));
        }
    }
    if tokens.is_empty() {
        return Err(err(DiagCode::EmptyTemplate, "empty Korean equivalent".into()));
    }

    Ok(PhraseUnit {
        items,
        category,
        template: KoreanTemplate { tokens, alignment: BTreeMap::new() },
        no_pre_modify,
        no_post_modify,
        head_index,
        raw_line: trimmed.to_string(),
        line: line_no,
    })
}

type ItemError = (DiagCode, String);

fn parse_item(tok: &str) -> Result<PatternElement, ItemError> {
    let mut morph_variable = false;
    let mut is_head = false;
    let mut detail_marked = false;
    let mut rest = tok;
    loop {
        match rest.chars().next() {
            Some('^') => morph_variable = true,
            Some('@') => is_head = true,
            Some('*') => detail_marked = true,
            _ => break,
        }
        rest = &rest[1..];
    }
    if rest.is_empty() {
        return Err((DiagCode::InvalidItem, format!("item `{tok}` has no word")));
    }

    if is_parameter_like(rest) {
        let slot = parse_slot(rest)?;
        if morph_variable || is_head {
            return Err((
                DiagCode::InvalidItem,
                format!("`^` and `@` apply to words, not to parameter `{rest}`"),
            ));
        }
        return Ok(PatternElement::Slot(Slot { detail_marked, ..slot }));
    }

    let alternatives = if let Some(inner) = rest.strip_prefix('[') {
        let inner = inner
            .strip_suffix(']')
            .ok_or_else(|| (DiagCode::InvalidItem, format!("unclosed alternation `{tok}`")))?;
        Some(split_alternatives(inner, tok)?)
    } else if rest.contains('/') {
        Some(split_alternatives(rest, tok)?)
    } else {
        None
    };
    let word = match &alternatives {
        Some(alts) => alts[0].clone(),
        None => rest.to_string(),
    };
    for w in std::iter::once(&word).chain(alternatives.iter().flatten()) {
        if w.contains(['[', ']', '(', ')', ':']) {
            return Err((DiagCode::InvalidItem, format!("malformed word `{w}` in `{tok}`")));
        }
    }
    Ok(PatternElement::Literal(Literal {
        word,
        morph_variable,
        is_head,
        alternatives,
        detail_marked,
    }))
}

fn split_alternatives(inner: &str, tok: &str) -> Result<Vec<String>, ItemError> {
    let parts: Vec<String> = inner.split('/').map(str::to_string).collect();
    if parts.len() < 2 || parts.iter().any(String::is_empty) {
        return Err((
            DiagCode::EmptyAlternation,
            format!("alternation `{tok}` needs two or more nonempty words"),
        ));
    }
    Ok(parts)
}

/// Capitals, digits and underscores, at least two characters, or one of the
/// noun-phrase letters. A lone capital like `I` stays a word.
fn is_parameter_like(s: &str) -> bool {
    let mut chars = s.chars();
    let Some(first) = chars.next() else { return false };
    if !first.is_ascii_uppercase() {
        return false;
    }
    if s.len() == 1 {
        return NP_LETTERS.contains(&first);
    }
    s.chars().all(|c| c.is_ascii_uppercase() || c.is_ascii_digit() || c == '_')
}

fn parse_slot(s: &str) -> Result<Slot, ItemError> {
    if s.len() == 1 {
        let letter = s.chars().next().unwrap_or('A');
        return Ok(Slot::noun_phrase(letter));
    }
    let name = s.trim_end_matches(|c: char| c.is_ascii_digit());
    let digits = &s[name.len()..];
    let kind = Parameter::from_name(name)
        .ok_or_else(|| (DiagCode::UnknownParameter, format!("unknown parameter `{s}`")))?;
    let ordinal = if digits.is_empty() {
        None
    } else {
        Some(
            digits
                .parse::<u32>()
                .map_err(|_| (DiagCode::UnknownParameter, format!("bad ordinal in `{s}`")))?,
        )
    };
    Ok(Slot { kind, ordinal, np_letter: None, detail_marked: false })
}

/// Template tokens that name a parameter but are not bound by the pattern
/// are rejected rather than silently emitted as Korean text.
fn looks_like_slot(tok: &str) -> bool {
    is_parameter_like(tok)
        && (parse_slot(tok).is_ok()
            || tok.trim_end_matches(|c: char| c.is_ascii_digit()) == "ONE")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lit(w: &str) -> PatternElement {
        PatternElement::Literal(Literal::plain(w))
    }

    fn text(s: &str) -> TemplateToken {
        TemplateToken::Text(s.into())
    }

    fn slot(s: &str) -> TemplateToken {
        TemplateToken::Slot(s.into())
    }

    #[test]
    fn loan_example_block() {
        let (db, diags) = parse_db("\"call\"\n[verb]\n# call in a loan (VERB) : 상환을 요구하다\n");
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(db.entries.len(), 1);
        let e = &db.entries[0];
        assert_eq!(e.headword, "call");
        assert_eq!(e.entry_pos, EntryPos::Verb);
        assert_eq!(e.units.len(), 1);
        let u = &e.units[0];
        assert_eq!(u.items, vec![lit("call"), lit("in"), lit("a"), lit("loan")]);
        assert_eq!(u.category, GrammCategory::Verb);
        assert_eq!(u.template.tokens, vec![text("상환을"), text("요구하다")]);
        assert_eq!(u.slots().count(), 0);
    }

    #[test]
    fn empty_document() {
        let (db, diags) = parse_db("");
        assert!(db.entries.is_empty());
        assert!(diags.is_empty());
    }

    #[test]
    fn entry_with_space_is_skipped() {
        let (db, diags) = parse_db("\"call in\"\n[verb]\n# call in a loan (VERB) : 상환을 요구하다\n");
        assert!(db.entries.is_empty());
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagCode::EntryHasSpace);
        assert_eq!(diags[0].line_number, 1);
    }

    #[test]
    fn noun_phrase_letters_and_infinitive() {
        let u = parse_phrase_line(
            "# it take A for B TO_INF (SENT) : B 가 TO_INF 하는데 A 가 걸리다",
            1,
        )
        .unwrap();
        assert_eq!(
            u.items,
            vec![
                lit("it"),
                lit("take"),
                PatternElement::Slot(Slot::noun_phrase('A')),
                lit("for"),
                PatternElement::Slot(Slot::noun_phrase('B')),
                PatternElement::Slot(Slot::new(Parameter::ToInf)),
            ]
        );
        assert_eq!(u.category, GrammCategory::Sent);
        assert_eq!(
            u.template.tokens,
            vec![
                slot("B"),
                text("가"),
                slot("TO_INF"),
                text("하는데"),
                slot("A"),
                text("가"),
                text("걸리다")
            ]
        );
    }

    #[test]
    fn possessive_alternation_and_head() {
        let u = parse_phrase_line("# have ONE_S [picture/photo] @taken (VERB) : ONE 의 사진을 찍다", 1)
            .unwrap();
        let picture = Literal {
            alternatives: Some(vec!["picture".into(), "photo".into()]),
            ..Literal::plain("picture")
        };
        let taken = Literal { is_head: true, ..Literal::plain("taken") };
        assert_eq!(
            u.items,
            vec![
                lit("have"),
                PatternElement::Slot(Slot::new(Parameter::OneS)),
                PatternElement::Literal(picture),
                PatternElement::Literal(taken),
            ]
        );
        assert_eq!(u.head_index, Some(3));
        assert_eq!(u.template.tokens[0], slot("ONE"));
        assert_eq!(u.slot_item("ONE"), Some(1));
    }

    #[test]
    fn trailing_dollar_is_an_edge_flag() {
        let u = parse_phrase_line("# take A apart $ (VERB) : A 를 분해하다", 1).unwrap();
        assert!(u.no_post_modify);
        assert!(!u.no_pre_modify);
        assert_eq!(
            u.items,
            vec![lit("take"), PatternElement::Slot(Slot::noun_phrase('A')), lit("apart")]
        );
    }

    #[test]
    fn numbered_parameter_and_morph_flag() {
        let u = parse_phrase_line(
            "# ^take A NUM1 minute TO_INF (VERB) : A 가 TO_INF 하는데 NUM1 분 걸리다",
            1,
        )
        .unwrap();
        let take = u.items[0].as_literal().unwrap();
        assert!(take.morph_variable);
        assert_eq!(u.items[2], PatternElement::Slot(Slot::numbered(Parameter::Num, 1)));
        assert_eq!(u.template.tokens[4], slot("NUM1"));
    }

    #[test]
    fn colon_without_space_before() {
        let u = parse_phrase_line(
            "# take it for granted THAT_CLAUSE (VERB): 응당 THAT_CLAUSE 할것으로 생각하다",
            1,
        )
        .unwrap();
        assert_eq!(u.items.len(), 5);
        assert_eq!(u.template.tokens[1], slot("THAT_CLAUSE"));
    }

    #[test]
    fn missing_colon() {
        let d = parse_phrase_line("# take it as read (VERB) 하다", 7).unwrap_err();
        assert_eq!(d.code, DiagCode::MissingColon);
        assert_eq!(d.line_number, 7);
    }

    #[test]
    fn category_errors() {
        let d = parse_phrase_line("# take it : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::MissingCategory);
        let d = parse_phrase_line("# take it (VERBAL) : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::UnknownCategory);
        let d = parse_phrase_line("# take it (verb) : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::UnknownCategory);
        let d = parse_phrase_line("# take it () : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::MissingCategory);
    }

    #[test]
    fn parameter_errors() {
        let d = parse_phrase_line("# take FOO (VERB) : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::UnknownParameter);
        let d = parse_phrase_line("# take A (VERB) : B 를 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::UnboundTemplateSlot);
        let d = parse_phrase_line("# take NOUN NOUN (VERB) : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::DuplicateSlot);
        let d = parse_phrase_line("# take ^A (VERB) : 하다", 1).unwrap_err();
        assert_eq!(d.code, DiagCode::InvalidItem);
    }

    #[test]
    fn alternation_errors() {
        for line in ["# take a [step/] (VERB) : 하다", "# take a [] (VERB) : 하다", "# take [a] (VERB) : 하다"] {
            let d = parse_phrase_line(line, 1).unwrap_err();
            assert_eq!(d.code, DiagCode::EmptyAlternation, "{line}");
        }
    }

    #[test]
    fn lone_capital_i_is_a_word() {
        let u = parse_phrase_line("# I take it (SENT) : 알다", 1).unwrap();
        assert_eq!(u.items[0], lit("I"));
    }

    #[test]
    fn detail_mark_on_slot_is_recorded() {
        let u = parse_phrase_line("# take *NOUN (VERB) : NOUN 하다", 1).unwrap();
        let s = u.items[1].as_slot().unwrap();
        assert!(s.detail_marked);
        assert_eq!(u.template.tokens[0], slot("NOUN"));
    }

    #[test]
    fn align_sidecar_attaches_to_previous_phrase() {
        let text = "\"call\"\n[verb]\n# call in a loan (VERB) : 상환을 요구하다\n#align 3=0\n";
        let (db, diags) = parse_db(text);
        assert!(diags.is_empty(), "{diags:?}");
        let align = &db.entries[0].units[0].template.alignment;
        assert_eq!(align.get(&3), Some(&0));
    }

    #[test]
    fn orphan_and_bad_align() {
        let (_, diags) = parse_db("\"call\"\n[verb]\n#align 3=0\n");
        assert_eq!(diags[0].code, DiagCode::OrphanAlign);
        let (db, diags) = parse_db("\"call\"\n[verb]\n# call in a loan (VERB) : 상환을 요구하다\n#align x\n");
        assert_eq!(diags[0].code, DiagCode::BadAlign);
        assert_eq!(db.unit_count(), 1);
    }

    #[test]
    fn align_after_rejected_phrase_is_silent() {
        let (db, diags) = parse_db("\"call\"\n[verb]\n# call in a loan (VERB) 상환을\n#align 3=0\n");
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].code, DiagCode::MissingColon);
        assert_eq!(db.unit_count(), 0);
    }

    #[test]
    fn multiple_pos_blocks_become_sibling_entries() {
        let text = "\"call\"\n[verb]\n# call in a loan (VERB) : 상환을 요구하다\n[noun]\n# call centre (NOUN) : 콜센터\n";
        let (db, diags) = parse_db(text);
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(db.entries.len(), 2);
        assert_eq!(db.entries[1].headword, "call");
        assert_eq!(db.entries[1].entry_pos, EntryPos::Noun);
    }

    #[test]
    fn structural_errors() {
        let (db, diags) = parse_db("# call in a loan (VERB) : 상환을 요구하다\n\"call\"\n# call (VERB) : 부르다\nrandom text\n\"x\"\n[pronoun]\n# x (NOUN) : 엑스\n");
        let codes: Vec<_> = diags.iter().map(|d| d.code).collect();
        assert_eq!(
            codes,
            vec![
                DiagCode::PhraseOutsideEntry,
                DiagCode::MissingEntryPos,
                DiagCode::UnexpectedLine,
                DiagCode::UnknownEntryPos
            ]
        );
        assert!(db.entries.is_empty());
    }

    #[test]
    fn curly_quotes_and_indentation() {
        let (db, diags) = parse_db(" \u{201c}take\u{201d}\n [Verb]\n # take A apart $ (VERB) : A 를 분해하다\n");
        assert!(diags.is_empty(), "{diags:?}");
        assert_eq!(db.entries[0].headword, "take");
        assert_eq!(db.entries[0].units[0].raw_line, "# take A apart $ (VERB) : A 를 분해하다");
    }

    #[test]
    fn reparse_is_identical() {
        let text = "\"take\"\n[verb]\n# take A apart $ (VERB) : A 를 분해하다\n# bogus\n";
        assert_eq!(parse_db(text), parse_db(text));
    }
}

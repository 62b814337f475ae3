use std::collections::BTreeMap;
use std::fmt;

/// Part of speech of an entry headword, written as `[verb]` etc.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntryPos {
    Noun,
    Verb,
    Adj,
    Adv,
    Prep,
    Conj,
}

impl EntryPos {
    pub const ALL: [EntryPos; 6] = [
        EntryPos::Noun,
        EntryPos::Verb,
        EntryPos::Adj,
        EntryPos::Adv,
        EntryPos::Prep,
        EntryPos::Conj,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            EntryPos::Noun => "noun",
            EntryPos::Verb => "verb",
            EntryPos::Adj => "adj",
            EntryPos::Adv => "adv",
            EntryPos::Prep => "prep",
            EntryPos::Conj => "conj",
        }
    }

    /// Case-insensitive.
    pub fn parse(s: &str) -> Option<Self> {
        let lower = s.to_ascii_lowercase();
        EntryPos::ALL.into_iter().find(|p| p.as_str() == lower)
    }
}

impl fmt::Display for EntryPos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// The part-of-sentence label that replaces a matched span.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GrammCategory {
    Pp,
    Verb,
    Adv,
    Adj,
    Noun,
    Sent,
}

impl GrammCategory {
    pub const ALL: [GrammCategory; 6] = [
        GrammCategory::Pp,
        GrammCategory::Verb,
        GrammCategory::Adv,
        GrammCategory::Adj,
        GrammCategory::Noun,
        GrammCategory::Sent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            GrammCategory::Pp => "PP",
            GrammCategory::Verb => "VERB",
            GrammCategory::Adv => "ADV",
            GrammCategory::Adj => "ADJ",
            GrammCategory::Noun => "NOUN",
            GrammCategory::Sent => "SENT",
        }
    }

    /// Categories are written in capitals; anything else is rejected.
    pub fn parse(s: &str) -> Option<Self> {
        GrammCategory::ALL.into_iter().find(|c| c.as_str() == s)
    }
}

impl fmt::Display for GrammCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Pattern variables. Noun phrases are written with the letters `A`, `B`, `C`
/// (or as `NP`); everything else uses its capitalized name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Parameter {
    Noun,
    Pron,
    Prpn,
    Num,
    OneS,
    Oneself,
    Np,
    Adj,
    Adv,
    Vp,
    Pp,
    Sent,
    ThatClause,
    WhatClause,
    WhetherClause,
    IfClause,
    HowClause,
    WhereClause,
    WhClause,
    ToInf,
    BareInf,
    PastP,
    PresP,
}

impl Parameter {
    pub const ALL: [Parameter; 23] = [
        Parameter::Noun,
        Parameter::Pron,
        Parameter::Prpn,
        Parameter::Num,
        Parameter::OneS,
        Parameter::Oneself,
        Parameter::Np,
        Parameter::Adj,
        Parameter::Adv,
        Parameter::Vp,
        Parameter::Pp,
        Parameter::Sent,
        Parameter::ThatClause,
        Parameter::WhatClause,
        Parameter::WhetherClause,
        Parameter::IfClause,
        Parameter::HowClause,
        Parameter::WhereClause,
        Parameter::WhClause,
        Parameter::ToInf,
        Parameter::BareInf,
        Parameter::PastP,
        Parameter::PresP,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            Parameter::Noun => "NOUN",
            Parameter::Pron => "PRON",
            Parameter::Prpn => "PRPN",
            Parameter::Num => "NUM",
            Parameter::OneS => "ONE_S",
            Parameter::Oneself => "ONESELF",
            Parameter::Np => "NP",
            Parameter::Adj => "ADJ",
            Parameter::Adv => "ADV",
            Parameter::Vp => "VP",
            Parameter::Pp => "PP",
            Parameter::Sent => "SENT",
            Parameter::ThatClause => "THAT_CLAUSE",
            Parameter::WhatClause => "WHAT_CLAUSE",
            Parameter::WhetherClause => "WHETHER_CLAUSE",
            Parameter::IfClause => "IF_CLAUSE",
            Parameter::HowClause => "HOW_CLAUSE",
            Parameter::WhereClause => "WHERE_CLAUSE",
            Parameter::WhClause => "WH_CLAUSE",
            Parameter::ToInf => "TO_INF",
            Parameter::BareInf => "BARE_INF",
            Parameter::PastP => "PASTP",
            Parameter::PresP => "PRESP",
        }
    }

    pub fn from_name(s: &str) -> Option<Self> {
        Parameter::ALL.into_iter().find(|p| p.as_str() == s)
    }
}

impl fmt::Display for Parameter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Letters usable as noun-phrase variables.
pub const NP_LETTERS: [char; 3] = ['A', 'B', 'C'];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Literal {
    /// First word of an alternation, or the only word.
    pub word: String,
    /// `^`: inflected forms match.
    pub morph_variable: bool,
    /// `@`: main word.
    pub is_head: bool,
    pub alternatives: Option<Vec<String>>,
    /// `*`: recorded, no matching effect.
    pub detail_marked: bool,
}

impl Literal {
    pub fn plain(word: impl Into<String>) -> Self {
        Literal {
            word: word.into(),
            morph_variable: false,
            is_head: false,
            alternatives: None,
            detail_marked: false,
        }
    }

    /// Every word this literal accepts.
    pub fn words(&self) -> &[String] {
        match &self.alternatives {
            Some(alts) => alts,
            None => std::slice::from_ref(&self.word),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Slot {
    pub kind: Parameter,
    pub ordinal: Option<u32>,
    pub np_letter: Option<char>,
    pub detail_marked: bool,
}

impl Slot {
    pub fn new(kind: Parameter) -> Self {
        Slot { kind, ordinal: None, np_letter: None, detail_marked: false }
    }

    pub fn numbered(kind: Parameter, ordinal: u32) -> Self {
        Slot { ordinal: Some(ordinal), ..Slot::new(kind) }
    }

    pub fn noun_phrase(letter: char) -> Self {
        Slot { np_letter: Some(letter), ..Slot::new(Parameter::Np) }
    }

    /// The name as written in the English pattern, e.g. `A`, `NUM1`, `ONE_S`.
    pub fn source_name(&self) -> String {
        if let Some(letter) = self.np_letter {
            return letter.to_string();
        }
        match self.ordinal {
            Some(n) => format!("{}{}", self.kind.as_str(), n),
            None => self.kind.as_str().to_string(),
        }
    }

    /// The name a binding is reported under. Identical to the source name
    /// except that the possessive `ONE_S` binds as `ONE`.
    pub fn binding_name(&self) -> String {
        if self.kind == Parameter::OneS {
            return match self.ordinal {
                Some(n) => format!("ONE{n}"),
                None => "ONE".to_string(),
            };
        }
        self.source_name()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternElement {
    Literal(Literal),
    Slot(Slot),
}

impl PatternElement {
    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            PatternElement::Literal(l) => Some(l),
            PatternElement::Slot(_) => None,
        }
    }

    pub fn as_slot(&self) -> Option<&Slot> {
        match self {
            PatternElement::Slot(s) => Some(s),
            PatternElement::Literal(_) => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum TemplateToken {
    Text(String),
    /// Placeholder, holding the name exactly as written in the template.
    Slot(String),
}

impl TemplateToken {
    pub fn as_str(&self) -> &str {
        match self {
            TemplateToken::Text(s) | TemplateToken::Slot(s) => s,
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct KoreanTemplate {
    pub tokens: Vec<TemplateToken>,
    /// Pattern item index to template token index. Empty when the unit has
    /// no `#align` line.
    pub alignment: BTreeMap<usize, usize>,
}

impl KoreanTemplate {
    /// The Korean side as written: tokens joined by single spaces.
    pub fn source_text(&self) -> String {
        let parts: Vec<&str> = self.tokens.iter().map(TemplateToken::as_str).collect();
        parts.join(" ")
    }
}

/// Maps a template placeholder name onto the binding name it refers to.
/// `ONE_S` and `ONE` (with any ordinal) both denote the possessive slot.
pub fn canonical_slot_name(name: &str) -> String {
    match name.strip_prefix("ONE_S") {
        Some(rest) if rest.chars().all(|c| c.is_ascii_digit()) => format!("ONE{rest}"),
        _ => name.to_string(),
    }
}

/// One `#` line of the database.
///
/// Equality is structural: `raw_line` and `line` record provenance and are
/// ignored when comparing units.
#[derive(Debug, Clone)]
pub struct PhraseUnit {
    pub items: Vec<PatternElement>,
    pub category: GrammCategory,
    pub template: KoreanTemplate,
    /// `|`
    pub no_pre_modify: bool,
    /// `$`
    pub no_post_modify: bool,
    pub head_index: Option<usize>,
    pub raw_line: String,
    pub line: usize,
}

impl PartialEq for PhraseUnit {
    fn eq(&self, other: &Self) -> bool {
        self.items == other.items
            && self.category == other.category
            && self.template == other.template
            && self.no_pre_modify == other.no_pre_modify
            && self.no_post_modify == other.no_post_modify
            && self.head_index == other.head_index
    }
}

impl Eq for PhraseUnit {}

impl PhraseUnit {
    pub fn slots(&self) -> impl Iterator<Item = (usize, &Slot)> {
        self.items
            .iter()
            .enumerate()
            .filter_map(|(i, el)| el.as_slot().map(|s| (i, s)))
    }

    /// Resolves a template placeholder to the index of its pattern slot.
    pub fn slot_item(&self, name: &str) -> Option<usize> {
        let wanted = canonical_slot_name(name);
        self.slots()
            .find(|(_, s)| s.binding_name() == wanted)
            .map(|(i, _)| i)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Entry {
    pub headword: String,
    pub entry_pos: EntryPos,
    pub units: Vec<PhraseUnit>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PhraseDB {
    pub entries: Vec<Entry>,
    pub source_name: String,
}

impl PhraseDB {
    pub fn unit_count(&self) -> usize {
        self.entries.iter().map(|e| e.units.len()).sum()
    }

    /// Appends another database's entries after this one's.
    pub fn merge(&mut self, other: PhraseDB) {
        self.entries.extend(other.entries);
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Severity {
    Error,
    Warning,
}

impl Severity {
    pub fn as_str(self) -> &'static str {
        match self {
            Severity::Error => "error",
            Severity::Warning => "warning",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DiagCode {
    EntryHasSpace,
    UnknownEntryPos,
    UnknownCategory,
    MissingColon,
    MissingCategory,
    UnknownParameter,
    UnboundTemplateSlot,
    EmptyAlternation,
    EmptyPattern,
    EmptyTemplate,
    InvalidItem,
    DuplicateSlot,
    MissingEntryPos,
    PhraseOutsideEntry,
    OrphanAlign,
    BadAlign,
    UnexpectedLine,
    HeadwordNotInItems,
    UnanchoredUnit,
    DuplicateUnit,
    UnreachableAlternative,
    AlignmentOutOfRange,
}

impl DiagCode {
    pub fn as_str(self) -> &'static str {
        match self {
            DiagCode::EntryHasSpace => "EntryHasSpace",
            DiagCode::UnknownEntryPos => "UnknownEntryPos",
            DiagCode::UnknownCategory => "UnknownCategory",
            DiagCode::MissingColon => "MissingColon",
            DiagCode::MissingCategory => "MissingCategory",
            DiagCode::UnknownParameter => "UnknownParameter",
            DiagCode::UnboundTemplateSlot => "UnboundTemplateSlot",
            DiagCode::EmptyAlternation => "EmptyAlternation",
            DiagCode::EmptyPattern => "EmptyPattern",
            DiagCode::EmptyTemplate => "EmptyTemplate",
            DiagCode::InvalidItem => "InvalidItem",
            DiagCode::DuplicateSlot => "DuplicateSlot",
            DiagCode::MissingEntryPos => "MissingEntryPos",
            DiagCode::PhraseOutsideEntry => "PhraseOutsideEntry",
            DiagCode::OrphanAlign => "OrphanAlign",
            DiagCode::BadAlign => "BadAlign",
            DiagCode::UnexpectedLine => "UnexpectedLine",
            DiagCode::HeadwordNotInItems => "HeadwordNotInItems",
            DiagCode::UnanchoredUnit => "UnanchoredUnit",
            DiagCode::DuplicateUnit => "DuplicateUnit",
            DiagCode::UnreachableAlternative => "UnreachableAlternative",
            DiagCode::AlignmentOutOfRange => "AlignmentOutOfRange",
        }
    }
}

impl fmt::Display for DiagCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: DiagCode,
    pub line_number: usize,
    pub message: String,
}

impl Diagnostic {
    pub fn error(code: DiagCode, line_number: usize, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Error, code, line_number, message: message.into() }
    }

    pub fn warning(code: DiagCode, line_number: usize, message: impl Into<String>) -> Self {
        Diagnostic { severity: Severity::Warning, code, line_number, message: message.into() }
    }

    pub fn is_error(&self) -> bool {
        self.severity == Severity::Error
    }
}

/// Tab-separated: `severity code line message`.
impl fmt::Display for Diagnostic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}\t{}\t{}\t{}",
            self.severity.as_str(),
            self.code,
            self.line_number,
            self.message
        )
    }
}

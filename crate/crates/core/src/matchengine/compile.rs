use std::collections::BTreeMap;

use crate::annotate::{base_form, Token, TokenPos};
use crate::dbformat::{Entry, GrammCategory, Literal, Parameter, PatternElement, PhraseDB, PhraseUnit, Slot};

use super::UnitRef;

pub const DETERMINERS: [&str; 3] = ["a", "an", "the"];

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WordTest {
    /// The token's lemma must be one of these.
    Lemma(Vec<String>),
    /// Case-insensitive comparison with the surface form.
    Surface(Vec<String>),
    /// Any of `a`, `an`, `the`.
    Determiner,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiteralMatcher {
    pub test: WordTest,
    /// Set for words of NOUN-category units: a verb-tagged token means the
    /// word combination is not the noun compound.
    pub reject_verb: bool,
}

impl LiteralMatcher {
    pub fn accepts(&self, token: &Token) -> bool {
        if self.reject_verb && token.pos == TokenPos::Verb {
            return false;
        }
        match &self.test {
            WordTest::Lemma(lemmas) => lemmas.iter().any(|l| *l == token.lemma),
            WordTest::Surface(words) => {
                let surface = token.surface.to_lowercase();
                words.iter().any(|w| *w == surface)
            }
            WordTest::Determiner => DETERMINERS.contains(&token.surface.to_lowercase().as_str()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ElementMatcher {
    Literal(LiteralMatcher),
    Slot(Slot),
}

/// A phrase unit turned into a matcher.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompiledPattern {
    pub unit_ref: UnitRef,
    pub elements: Vec<ElementMatcher>,
    /// First plain literal that only matches tokens whose lemma is the
    /// headword. `None` sends the pattern to the full-scan list.
    pub anchor: Option<usize>,
    pub category: GrammCategory,
    pub no_pre_modify: bool,
    pub no_post_modify: bool,
    pub unit: PhraseUnit,
}

pub fn compile_unit(unit: &PhraseUnit, entry: &Entry, unit_ref: UnitRef) -> CompiledPattern {
    let headword = entry.headword.to_lowercase();
    let pos = TokenPos::from(entry.entry_pos);
    let mut elements = Vec::with_capacity(unit.items.len());
    let mut anchor = None;

    for (i, item) in unit.items.iter().enumerate() {
        match item {
            PatternElement::Slot(slot) => elements.push(ElementMatcher::Slot(slot.clone())),
            PatternElement::Literal(lit) => {
                let after_number = i > 0
                    && matches!(&unit.items[i - 1], PatternElement::Slot(s) if s.kind == Parameter::Num);
                let test = word_test(lit, &headword, pos, after_number);
                if anchor.is_none()
                    && lit.alternatives.is_none()
                    && test == WordTest::Lemma(vec![headword.clone()])
                {
                    anchor = Some(i);
                }
                elements.push(ElementMatcher::Literal(LiteralMatcher {
                    test,
                    reject_verb: unit.category == GrammCategory::Noun,
                }));
            }
        }
    }

    CompiledPattern {
        unit_ref,
        elements,
        anchor,
        category: unit.category,
        no_pre_modify: unit.no_pre_modify,
        no_post_modify: unit.no_post_modify,
        unit: unit.clone(),
    }
}

fn word_test(lit: &Literal, headword: &str, pos: TokenPos, after_number: bool) -> WordTest {
    let words = lit.words();
    let lower = |w: &String| w.to_lowercase();
    if lit.alternatives.is_none()
        && !lit.morph_variable
        && DETERMINERS.contains(&lower(&lit.word).as_str())
        && lower(&lit.word) != headword
    {
        return WordTest::Determiner;
    }
    let lemmas: Vec<String> = words.iter().map(|w| base_form(w, pos)).collect();
    let names_headword = words.iter().any(|w| lower(w) == headword) || lemmas.iter().any(|l| l == headword);
    if lit.morph_variable || names_headword || after_number {
        let mut uniq: Vec<String> = Vec::with_capacity(lemmas.len());
        for l in lemmas {
            if !uniq.contains(&l) {
                uniq.push(l);
            }
        }
        WordTest::Lemma(uniq)
    } else {
        WordTest::Surface(words.iter().map(lower).collect())
    }
}

/// Compiled patterns grouped by headword lemma, DB order preserved within
/// each group. Patterns without an anchor live in a separate list and are
/// tried at every position.
#[derive(Debug, Clone, Default)]
pub struct PhraseIndex {
    patterns: Vec<CompiledPattern>,
    by_lemma: BTreeMap<String, Vec<usize>>,
    unanchored: Vec<usize>,
}

impl PhraseIndex {
    pub fn group(&self, lemma: &str) -> impl Iterator<Item = &CompiledPattern> {
        self.by_lemma
            .get(lemma)
            .into_iter()
            .flatten()
            .map(move |&i| &self.patterns[i])
    }

    pub fn unanchored(&self) -> impl Iterator<Item = &CompiledPattern> {
        self.unanchored.iter().map(move |&i| &self.patterns[i])
    }

    pub fn keys(&self) -> impl Iterator<Item = &str> {
        self.by_lemma.keys().map(String::as_str)
    }

    pub fn group_len(&self, lemma: &str) -> usize {
        self.by_lemma.get(lemma).map_or(0, Vec::len)
    }

    pub fn pattern(&self, unit_ref: &UnitRef) -> Option<&CompiledPattern> {
        self.patterns.get(unit_ref.order).filter(|p| p.unit_ref == *unit_ref)
    }

    /// All patterns in DB order.
    pub fn patterns(&self) -> &[CompiledPattern] {
        &self.patterns
    }

    pub fn len(&self) -> usize {
        self.patterns.len()
    }

    pub fn is_empty(&self) -> bool {
        self.patterns.is_empty()
    }
}

pub fn build_index(db: &PhraseDB) -> PhraseIndex {
    let mut index = PhraseIndex::default();
    let mut ordinals: BTreeMap<String, usize> = BTreeMap::new();
    for entry in &db.entries {
        let key = entry.headword.to_lowercase();
        for unit in &entry.units {
            let ordinal = ordinals.entry(key.clone()).or_default();
            let unit_ref = UnitRef {
                order: index.patterns.len(),
                headword: entry.headword.clone(),
                ordinal: *ordinal,
            };
            *ordinal += 1;
            let pattern = compile_unit(unit, entry, unit_ref);
            let slot = index.patterns.len();
            match pattern.anchor {
                Some(_) => index.by_lemma.entry(key.clone()).or_default().push(slot),
                None => index.unanchored.push(slot),
            }
            index.patterns.push(pattern);
        }
    }
    index
}

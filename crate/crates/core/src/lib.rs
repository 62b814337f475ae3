//! Phrase-unit database engine for English to Korean transfer translation.
//!
//! * [`dbformat`] reads, writes and lints the phrase database.
//! * [`annotate`] loads pre-tagged input sentences and the gloss lexicon.
//! * [`matchengine`] finds phrase units in a sentence, one-to-one or with
//!   absorbed modifiers, and resolves overlaps.
//! * [`synth`] fills the Korean templates and glosses everything else.
//! * [`cli`] is the command-line front end.

pub mod annotate;
pub mod cli;
pub mod dbformat;
pub mod matchengine;
pub mod synth;

//! The bilingual phrase-database text format.
//!
//! ```text
//! "take"
//! [verb]
//! # take A apart $ (VERB) : A 를 분해하다
//! #align 2=2
//! ```
//!
//! An entry is a quoted single-word headword, a `[pos]` line and any number
//! of `#` phrase lines. Each phrase line holds the English pattern, its
//! grammatical category in parentheses and, after the colon, the Korean
//! equivalent with parameter placeholders. The optional `#align` line maps
//! pattern items onto Korean tokens so that absorbed modifiers can be placed.

mod lint;
mod model;
mod parse;
mod write;

pub use lint::lint_db;
pub use model::*;
pub use parse::{parse_db, parse_db_named, parse_phrase_line};
pub use write::{render_item, render_pattern, render_phrase_line, serialize_db};

//! Command-line front end: `lint`, `match`, `translate` and `stats`.
//!
//! Exit statuses are 0 on success, 1 when `lint` finds errors, and 2 for
//! unreadable input or malformed sentence/lexicon files.

use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use crate::annotate::{load_lexicon, parse_document, AnnotateError, AnnotatedSentence, Lexicon, LexiconError};
use crate::dbformat::{lint_db, parse_db_named, Diagnostic, GrammCategory, Parameter, PhraseDB};
use crate::matchengine::{build_index, find_matches, select_matches, MatchMode};
use crate::synth::translate_sentence;

#[derive(Debug, Parser)]
#[command(name = "phrasedb", version, about = "Phrase-unit database tools for English to Korean translation")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check database files and report diagnostics
    Lint(CommonArgs),
    /// Show the phrase units selected for each input sentence
    Match(CommonArgs),
    /// Translate annotated sentences
    Translate(CommonArgs),
    /// Count entries, units, categories and parameters
    Stats(CommonArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    OneToOne,
    Extended,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, ValueEnum)]
pub enum OutputFormat {
    #[default]
    Text,
    Trace,
}

#[derive(Debug, Args)]
pub struct CommonArgs {
    /// Phrase database file; repeat to merge several in order
    #[arg(long = "db", value_name = "PATH", required = true)]
    pub db: Vec<PathBuf>,
    /// Gloss lexicon (lemma, POS, gloss per line)
    #[arg(long, value_name = "PATH")]
    pub lexicon: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "extended")]
    pub mode: ModeArg,
    #[arg(long, value_enum, default_value = "text")]
    pub format: OutputFormat,
    /// Annotated sentence file; standard input when absent
    #[arg(long, value_name = "PATH")]
    pub input: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunConfig {
    pub db_paths: Vec<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub mode: MatchMode,
    pub input: Option<PathBuf>,
    pub format: OutputFormat,
}

impl From<&CommonArgs> for RunConfig {
    fn from(a: &CommonArgs) -> Self {
        RunConfig {
            db_paths: a.db.clone(),
            lexicon: a.lexicon.clone(),
            mode: match a.mode {
                ModeArg::OneToOne => MatchMode::OneToOne,
                ModeArg::Extended => MatchMode::Extended,
            },
            input: a.input.clone(),
            format: a.format,
        }
    }
}

impl RunConfig {
    pub fn new(db_paths: Vec<PathBuf>) -> Self {
        RunConfig {
            db_paths,
            lexicon: None,
            mode: MatchMode::Extended,
            input: None,
            format: OutputFormat::Text,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    LintErrors = 1,
    Failure = 2,
}

impl ExitStatus {
    pub fn code(self) -> u8 {
        self as u8
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error("{path}: not valid UTF-8")]
    Utf8 { path: String },
    #[error("{path}: {source}")]
    Annotation { path: String, source: AnnotateError },
    #[error("{path}: {source}")]
    Lexicon { path: String, source: LexiconError },
    #[error("no database given")]
    NoDatabase,
}

/// Standard streams, swappable for tests.
pub struct Io<'a> {
    pub stdin: &'a mut dyn Read,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
}

fn read_utf8(path: &Path) -> Result<String, CliError> {
    let display = path.display().to_string();
    let bytes = std::fs::read(path).map_err(|source| CliError::Io { path: display.clone(), source })?;
    String::from_utf8(bytes).map_err(|_| CliError::Utf8 { path: display })
}

struct LoadedDb {
    db: PhraseDB,
    /// Parse diagnostics with the file name folded into the message.
    diagnostics: Vec<Diagnostic>,
}

fn load_dbs(config: &RunConfig) -> Result<LoadedDb, CliError> {
    if config.db_paths.is_empty() {
        return Err(CliError::NoDatabase);
    }
    let mut merged = PhraseDB::default();
    let mut diagnostics = Vec::new();
    for path in &config.db_paths {
        let text = read_utf8(path)?;
        let name = path.display().to_string();
        let (db, diags) = parse_db_named(&text, &name);
        diagnostics.extend(diags.into_iter().map(|d| with_path(d, &name)));
        // linting per file keeps line numbers meaningful
        diagnostics.extend(lint_db(&db).into_iter().map(|d| with_path(d, &name)));
        if merged.source_name.is_empty() {
            merged.source_name = name;
        }
        merged.merge(db);
    }
    Ok(LoadedDb { db: merged, diagnostics })
}

fn with_path(mut d: Diagnostic, path: &str) -> Diagnostic {
    d.message = format!("{path}: {}", d.message);
    d
}

fn load_sentences(config: &RunConfig, stdin: &mut dyn Read) -> Result<Vec<AnnotatedSentence>, CliError> {
    let (text, path) = match &config.input {
        Some(p) => (read_utf8(p)?, p.display().to_string()),
        None => {
            let mut bytes = Vec::new();
            stdin
                .read_to_end(&mut bytes)
                .map_err(|source| CliError::Io { path: "<stdin>".into(), source })?;
            let text = String::from_utf8(bytes).map_err(|_| CliError::Utf8 { path: "<stdin>".into() })?;
            (text, "<stdin>".to_string())
        }
    };
    parse_document(&text).map_err(|source| CliError::Annotation { path, source })
}

fn load_lexicon_file(config: &RunConfig) -> Result<Lexicon, CliError> {
    match &config.lexicon {
        None => Ok(Lexicon::new()),
        Some(p) => {
            let text = read_utf8(p)?;
            load_lexicon(&text).map_err(|source| CliError::Lexicon { path: p.display().to_string(), source })
        }
    }
}

fn fail(io: &mut Io<'_>, err: CliError) -> ExitStatus {
    let _ = writeln!(io.stderr, "error: {err}");
    ExitStatus::Failure
}

fn report(io: &mut Io<'_>, diagnostics: &[Diagnostic]) {
    for d in diagnostics {
        let _ = writeln!(io.stderr, "{d}");
    }
}

pub fn cmd_lint(config: &RunConfig, io: &mut Io<'_>) -> ExitStatus {
    let loaded = match load_dbs(config) {
        Ok(l) => l,
        Err(e) => return fail(io, e),
    };
    report(io, &loaded.diagnostics);
    if loaded.diagnostics.iter().any(Diagnostic::is_error) {
        ExitStatus::LintErrors
    } else {
        ExitStatus::Success
    }
}

pub fn cmd_match(config: &RunConfig, io: &mut Io<'_>) -> ExitStatus {
    let result = (|| {
        let loaded = load_dbs(config)?;
        let sentences = load_sentences(config, io.stdin)?;
        Ok::<_, CliError>((loaded, sentences))
    })();
    let (loaded, sentences) = match result {
        Ok(v) => v,
        Err(e) => return fail(io, e),
    };
    report_errors_only(io, &loaded.diagnostics);
    let index = build_index(&loaded.db);
    for sentence in &sentences {
        for m in select_matches(&find_matches(sentence, &index, config.mode)) {
            let _ = writeln!(io.stdout, "{}", m.render_line());
        }
    }
    ExitStatus::Success
}

pub fn cmd_translate(config: &RunConfig, io: &mut Io<'_>) -> ExitStatus {
    let result = (|| {
        let loaded = load_dbs(config)?;
        let lexicon = load_lexicon_file(config)?;
        let sentences = load_sentences(config, io.stdin)?;
        Ok::<_, CliError>((loaded, lexicon, sentences))
    })();
    let (loaded, lexicon, sentences) = match result {
        Ok(v) => v,
        Err(e) => return fail(io, e),
    };
    report_errors_only(io, &loaded.diagnostics);
    let index = build_index(&loaded.db);
    for sentence in &sentences {
        let r = translate_sentence(sentence, &index, &lexicon, config.mode);
        let _ = writeln!(io.stdout, "{}", r.output);
        if config.format == OutputFormat::Trace {
            for line in &r.trace {
                let _ = writeln!(io.stdout, "{line}");
            }
        }
    }
    ExitStatus::Success
}

/// Database problems do not stop `match` or `translate`; the broken
/// constructs are simply absent. Warnings are left to `lint`.
fn report_errors_only(io: &mut Io<'_>, diagnostics: &[Diagnostic]) {
    let errors: Vec<Diagnostic> = diagnostics.iter().filter(|d| d.is_error()).cloned().collect();
    report(io, &errors);
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct DbStats {
    pub entries: usize,
    pub units: usize,
    pub categories: Vec<(GrammCategory, usize)>,
    pub parameters: Vec<(Parameter, usize)>,
}

pub fn db_stats(db: &PhraseDB) -> DbStats {
    let units = db.entries.iter().flat_map(|e| &e.units);
    let mut categories: Vec<(GrammCategory, usize)> = GrammCategory::ALL.iter().map(|&c| (c, 0)).collect();
    let mut parameters: Vec<(Parameter, usize)> = Parameter::ALL.iter().map(|&p| (p, 0)).collect();
    for unit in units {
        if let Some(c) = categories.iter_mut().find(|(c, _)| *c == unit.category) {
            c.1 += 1;
        }
        for (_, slot) in unit.slots() {
            if let Some(p) = parameters.iter_mut().find(|(p, _)| *p == slot.kind) {
                p.1 += 1;
            }
        }
    }
    DbStats { entries: db.entries.len(), units: db.unit_count(), categories, parameters }
}

pub fn cmd_stats(config: &RunConfig, io: &mut Io<'_>) -> ExitStatus {
    let loaded = match load_dbs(config) {
        Ok(l) => l,
        Err(e) => return fail(io, e),
    };
    report_errors_only(io, &loaded.diagnostics);
    let stats = db_stats(&loaded.db);
    let _ = writeln!(io.stdout, "entries\t{}", stats.entries);
    let _ = writeln!(io.stdout, "units\t{}", stats.units);
    for (c, n) in &stats.categories {
        let _ = writeln!(io.stdout, "category\t{c}\t{n}");
    }
    for (p, n) in &stats.parameters {
        let _ = writeln!(io.stdout, "parameter\t{p}\t{n}");
    }
    ExitStatus::Success
}

pub fn run(cli: &Cli, io: &mut Io<'_>) -> ExitStatus {
    match &cli.command {
        Command::Lint(a) => cmd_lint(&a.into(), io),
        Command::Match(a) => cmd_match(&a.into(), io),
        Command::Translate(a) => cmd_translate(&a.into(), io),
        Command::Stats(a) => cmd_stats(&a.into(), io),
    }
}

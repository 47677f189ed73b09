//! Command-line front end: `check`, `fix` and `gen`.
//!
//! Exit codes: 0 when no error remains, 1 when errors are reported (or
//! generation is refused), 2 on usage or I/O failures.

mod report;

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

pub use report::{DiagnosticsReport, write_human, write_json};

use crate::docgen::{self, Mode};
use crate::linguistic::Lexicon;
use crate::model::{apply_edits, codes, Diagnostic, Language, QuickFix, TextEdit};
use crate::validators::{check_document, CheckOptions, GlossaryOptions};
use crate::workspace::{load_manifest, Document, ResolvedModel, Workspace};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERRORS: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Upper bound on fix-and-recheck rounds of `fix --apply`.
const MAX_FIX_PASSES: usize = 8;

#[derive(Debug, Parser)]
#[command(name = "rsl", version, about = "Validate RSL specifications and generate documents from them")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Report grammar, semantic and linguistic diagnostics.
    Check {
        #[command(flatten)]
        input: InputArgs,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Apply or preview the automatic quick fixes.
    Fix {
        #[command(flatten)]
        input: InputArgs,
        /// Rewrite the files.
        #[arg(long, conflicts_with = "dry_run", required_unless_present = "dry_run")]
        apply: bool,
        /// Print the changes as diffs without touching the files.
        #[arg(long)]
        dry_run: bool,
        /// Also create elements that linguistic rules found missing.
        #[arg(long)]
        create_missing: bool,
        #[arg(long, value_enum, default_value_t = Format::Human)]
        format: Format,
    },
    /// Generate a document from a valid specification.
    Gen {
        kind: GenKind,
        #[command(flatten)]
        input: InputArgs,
        /// Template file (for `gen template`).
        #[arg(long, required_if_eq("kind", "template"))]
        template: Option<PathBuf>,
        /// Output file.
        #[arg(short, long)]
        output: PathBuf,
        /// Render unresolved template tags as empty text instead of failing.
        #[arg(long)]
        lenient: bool,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GenKind {
    Json,
    Text,
    Template,
}

#[derive(Debug, Args)]
pub struct InputArgs {
    /// Specification files to process.
    pub files: Vec<PathBuf>,
    /// Name a system: `--system Name=path.rsl` (repeatable). Files not
    /// listed as inputs are loaded for include resolution only.
    #[arg(long = "system", value_name = "NAME=PATH")]
    pub systems: Vec<String>,
    /// Manifest with one `systemId=path` per line.
    #[arg(long)]
    pub manifest: Option<PathBuf>,
    /// Lexicon for a language: `--lexicon pt=path.tsv` (repeatable).
    #[arg(long = "lexicon", value_name = "LANG=PATH")]
    pub lexicons: Vec<String>,
    /// Also check element ids against the glossary.
    #[arg(long)]
    pub scan_ids: bool,
}

struct Entry {
    system: String,
    path: PathBuf,
    source: String,
    target: bool,
}

struct Inputs {
    entries: Vec<Entry>,
    options: CheckOptions,
}

fn split_pair<'a>(s: &'a str, what: &str) -> Result<(&'a str, &'a str), String> {
    s.split_once('=')
        .map(|(a, b)| (a.trim(), b.trim()))
        .filter(|(a, b)| !a.is_empty() && !b.is_empty())
        .ok_or_else(|| format!("invalid {what} '{s}': expected NAME=PATH"))
}

fn same_file(a: &Path, b: &Path) -> bool {
    match (a.canonicalize(), b.canonicalize()) {
        (Ok(x), Ok(y)) => x == y,
        _ => a == b,
    }
}

fn read(path: &Path) -> Result<String, String> {
    std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
}

impl Inputs {
    fn load(args: &InputArgs) -> Result<Inputs, String> {
        let mut named: Vec<(String, PathBuf)> = Vec::new();
        for s in &args.systems {
            let (name, path) = split_pair(s, "--system")?;
            named.push((name.to_string(), PathBuf::from(path)));
        }
        if let Some(m) = &args.manifest {
            named.extend(load_manifest(m).map_err(|e| e.to_string())?);
        }

        let mut entries: Vec<Entry> = Vec::new();
        for f in &args.files {
            let system = named
                .iter()
                .find(|(_, p)| same_file(p, f))
                .map(|(n, _)| n.clone())
                .unwrap_or_else(|| f.file_stem().unwrap_or_default().to_string_lossy().into_owned());
            entries.push(Entry {
                system,
                path: f.clone(),
                source: read(f)?,
                target: true,
            });
        }
        let libraries_are_targets = entries.is_empty();
        for (system, path) in named {
            if entries.iter().any(|e| same_file(&e.path, &path)) {
                continue;
            }
            entries.push(Entry {
                system,
                source: read(&path)?,
                path,
                target: libraries_are_targets,
            });
        }
        if entries.is_empty() {
            return Err("no input files".into());
        }

        let mut options = CheckOptions {
            glossary: GlossaryOptions {
                scan_ids: args.scan_ids,
            },
            ..CheckOptions::default()
        };
        for s in &args.lexicons {
            let (lang, path) = split_pair(s, "--lexicon")?;
            let language = Language::from_tag(lang)
                .or_else(|| lang.parse().ok())
                .ok_or_else(|| format!("unknown language '{lang}'"))?;
            let lex = Lexicon::load(path, language.tag()).map_err(|e| e.to_string())?;
            options.lexicons.insert(language, lex);
        }
        Ok(Inputs { entries, options })
    }

    fn workspace(&self) -> Workspace {
        let mut ws = Workspace::new();
        for e in &self.entries {
            ws.add(Document::parse(Some(&e.system), &e.path, e.source.as_str()));
        }
        ws
    }

    /// Checks every target in parallel; results follow the entry order.
    fn check(&self) -> Vec<(usize, ResolvedModel, Vec<Diagnostic>)> {
        let ws = self.workspace();
        let (ws, options) = (&ws, &self.options);
        std::thread::scope(|scope| {
            let handles: Vec<_> = self
                .entries
                .iter()
                .enumerate()
                .filter(|(_, e)| e.target)
                .map(|(i, _)| {
                    scope.spawn(move || {
                        let (rm, diags) = check_document(ws.document(i), ws, options);
                        (i, rm, diags)
                    })
                })
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("checker thread panicked"))
                .collect()
        })
    }
}

fn emit(
    out: &mut dyn Write,
    format: Format,
    inputs: &Inputs,
    results: &[(usize, ResolvedModel, Vec<Diagnostic>)],
) -> std::io::Result<i32> {
    let files: Vec<(&Path, &[Diagnostic])> = results
        .iter()
        .map(|(i, _, d)| (inputs.entries[*i].path.as_path(), d.as_slice()))
        .collect();
    match format {
        Format::Human => write_human(out, &files)?,
        Format::Json => write_json(out, &files)?,
    }
    Ok(if report::has_errors(&files) {
        EXIT_ERRORS
    } else {
        EXIT_OK
    })
}

/// Fixes applied by `fix`: renames, glossary replacements, cycle breaks,
/// include inlining and, on request, element creation.
fn auto_fixes(diags: &[Diagnostic], create_missing: bool) -> Vec<&QuickFix> {
    let mut out: Vec<&QuickFix> = Vec::new();
    for d in diags {
        let wanted = match d.code {
            codes::DUPLICATE_ID | codes::GLOSSARY_TERM | codes::HIERARCHY_CYCLE | codes::INLINE_INCLUDE => true,
            codes::LINGUISTIC_RULE => create_missing,
            _ => false,
        };
        if wanted {
            for f in &d.fixes {
                if !out.contains(&f) {
                    out.push(f);
                }
            }
        }
    }
    out
}

/// Non-conflicting subset of `fixes`, in order; the rest is counted.
fn compatible<'a>(fixes: &[&'a QuickFix]) -> (Vec<&'a QuickFix>, usize) {
    let mut chosen: Vec<&QuickFix> = Vec::new();
    let mut edits: Vec<&TextEdit> = Vec::new();
    let mut skipped = 0;
    for f in fixes {
        if f.edits.iter().any(|e| edits.iter().any(|c| c.overlaps(e))) {
            skipped += 1;
            continue;
        }
        edits.extend(&f.edits);
        chosen.push(f);
    }
    (chosen, skipped)
}

/// A unified-diff hunk for one fix.
fn preview(path: &Path, source: &str, fix: &QuickFix) -> String {
    let start = fix.edits.iter().map(|e| e.span.byte_offset).min().unwrap_or(0);
    let end = fix.edits.iter().map(|e| e.span.end_offset()).max().unwrap_or(0);
    let line_start = source[..start].rfind('\n').map_or(0, |i| i + 1);
    let line_end = source[end..].find('\n').map_or(source.len(), |i| end + i + 1);
    let old = &source[line_start..line_end];
    let shifted: Vec<TextEdit> = fix
        .edits
        .iter()
        .map(|e| {
            let mut e = e.clone();
            e.span.byte_offset -= line_start;
            e
        })
        .collect();
    let new = apply_edits(old, &shifted).unwrap_or_default();
    let first_line = source[..line_start].matches('\n').count() + 1;
    let old_lines: Vec<&str> = old.lines().collect();
    let new_lines: Vec<&str> = new.lines().collect();
    let mut s = format!(
        "--- {p}\n+++ {p}\n@@ -{first_line},{} +{first_line},{} @@ {}\n",
        old_lines.len(),
        new_lines.len(),
        fix.title,
        p = path.display()
    );
    for l in old_lines {
        s.push_str(&format!("-{l}\n"));
    }
    for l in new_lines {
        s.push_str(&format!("+{l}\n"));
    }
    s
}

fn cmd_check(input: &InputArgs, format: Format, out: &mut dyn Write) -> Result<i32, String> {
    let inputs = Inputs::load(input)?;
    let results = inputs.check();
    emit(out, format, &inputs, &results).map_err(|e| e.to_string())
}

fn cmd_fix(
    input: &InputArgs,
    apply: bool,
    create_missing: bool,
    format: Format,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, String> {
    let mut inputs = Inputs::load(input)?;
    let io = |e: std::io::Error| e.to_string();
    if !apply {
        let results = inputs.check();
        let mut count = 0;
        for (i, _, diags) in &results {
            let entry = &inputs.entries[*i];
            for fix in compatible(&auto_fixes(diags, create_missing)).0 {
                write!(out, "{}", preview(&entry.path, &entry.source, fix)).map_err(io)?;
                count += 1;
            }
        }
        writeln!(out, "{count} fix(es) would be applied").map_err(io)?;
        return emit(&mut std::io::sink(), format, &inputs, &results).map_err(io);
    }

    let original: Vec<String> = inputs.entries.iter().map(|e| e.source.clone()).collect();
    let mut applied = 0;
    let mut pending = 0;
    for _ in 0..MAX_FIX_PASSES {
        let results = inputs.check();
        let mut changed = false;
        pending = 0;
        let mut updates: BTreeMap<usize, String> = BTreeMap::new();
        for (i, _, diags) in &results {
            let fixes = auto_fixes(diags, create_missing);
            let (chosen, skipped) = compatible(&fixes);
            pending += skipped;
            if chosen.is_empty() {
                continue;
            }
            let edits: Vec<TextEdit> = chosen.iter().flat_map(|f| f.edits.iter().cloned()).collect();
            let source = &inputs.entries[*i].source;
            let fixed = apply_edits(source, &edits).map_err(|e| e.to_string())?;
            if fixed != *source {
                applied += chosen.len();
                updates.insert(*i, fixed);
                changed = true;
            }
        }
        for (i, s) in updates {
            inputs.entries[i].source = s;
        }
        if !changed {
            break;
        }
    }
    for (e, before) in inputs.entries.iter().zip(&original) {
        if e.source != *before {
            std::fs::write(&e.path, &e.source)
                .map_err(|x| format!("cannot write {}: {x}", e.path.display()))?;
        }
    }
    if pending > 0 {
        writeln!(err, "note: {pending} conflicting fix(es) were skipped; run `fix` again").map_err(io)?;
    }
    writeln!(err, "{applied} fix(es) applied").map_err(io)?;
    let results = inputs.check();
    emit(out, format, &inputs, &results).map_err(io)
}

fn cmd_gen(
    kind: GenKind,
    input: &InputArgs,
    template: Option<&Path>,
    output: &Path,
    lenient: bool,
    out: &mut dyn Write,
) -> Result<i32, String> {
    let inputs = Inputs::load(input)?;
    let results = inputs.check();
    let [(_, rm, diags)] = results.as_slice() else {
        return Err(format!("gen needs exactly one input document, got {}", results.len()));
    };
    if let Err(refusal) = docgen::ensure_valid(diags) {
        emit(out, Format::Human, &inputs, &results).map_err(|e| e.to_string())?;
        writeln!(out, "generation refused: {refusal}").map_err(|e| e.to_string())?;
        return Ok(EXIT_ERRORS);
    }
    let text = match kind {
        GenKind::Json => docgen::generate_json(rm),
        GenKind::Text => docgen::generate_text(rm),
        GenKind::Template => {
            let path = template.ok_or("gen template needs --template")?;
            let tpl = docgen::parse_template(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))?;
            let mode = if lenient { Mode::Lenient } else { Mode::Strict };
            docgen::render_template(&tpl, rm, mode).map_err(|e| format!("{}: {e}", path.display()))?
        }
    };
    std::fs::write(output, text).map_err(|e| format!("cannot write {}: {e}", output.display()))?;
    writeln!(out, "wrote {}", output.display()).map_err(|e| e.to_string())?;
    Ok(EXIT_OK)
}

/// Runs the CLI on `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                write!(out, "{text}")
            } else {
                write!(err, "{text}")
            };
            return code;
        }
    };
    let result = match &cli.command {
        Command::Check { input, format } => cmd_check(input, *format, out),
        Command::Fix {
            input,
            apply,
            dry_run: _,
            create_missing,
            format,
        } => cmd_fix(input, *apply, *create_missing, *format, out, err),
        Command::Gen {
            kind,
            input,
            template,
            output,
            lenient,
        } => cmd_gen(*kind, input, template.as_deref(), output, *lenient, out),
    };
    match result {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;

use crate::model::{Diagnostic, Severity, SourceSpan};

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct Pos {
    pub line: u32,
    pub col: u32,
}

#[derive(Debug, Serialize, PartialEq, Eq)]
pub struct Range {
    pub start: Pos,
    pub end: Pos,
}

impl From<&SourceSpan> for Range {
    fn from(s: &SourceSpan) -> Self {
        Range {
            start: Pos {
                line: s.start_line,
                col: s.start_col,
            },
            end: Pos {
                line: s.end_line,
                col: s.end_col,
            },
        }
    }
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "camelCase")]
pub struct EditOut {
    pub range: Range,
    pub new_text: String,
}

#[derive(Debug, Serialize)]
pub struct FixOut {
    pub title: String,
    pub edits: Vec<EditOut>,
}

#[derive(Debug, Serialize)]
pub struct RelatedOut {
    pub path: String,
    pub range: Range,
    pub message: String,
}

#[derive(Debug, Serialize)]
pub struct DiagnosticOut {
    pub code: String,
    pub severity: String,
    pub message: String,
    pub range: Range,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub related: Vec<RelatedOut>,
    pub fixes: Vec<FixOut>,
}

#[derive(Debug, Serialize)]
pub struct FileOut {
    pub path: String,
    pub diagnostics: Vec<DiagnosticOut>,
}

/// Machine-readable check report.
#[derive(Debug, Serialize)]
pub struct DiagnosticsReport {
    pub version: u32,
    pub files: Vec<FileOut>,
}

fn path_str(p: &Path) -> String {
    p.display().to_string()
}

impl DiagnosticsReport {
    pub fn new(files: &[(&Path, &[Diagnostic])]) -> Self {
        let files = files
            .iter()
            .map(|(path, diags)| FileOut {
                path: path_str(path),
                diagnostics: diags
                    .iter()
                    .map(|d| DiagnosticOut {
                        code: d.code.to_string(),
                        severity: d.severity.label().to_string(),
                        message: d.message.clone(),
                        range: (&d.span).into(),
                        related: d
                            .related
                            .iter()
                            .map(|r| RelatedOut {
                                path: path_str(&r.span.file),
                                range: (&r.span).into(),
                                message: r.note.clone(),
                            })
                            .collect(),
                        fixes: d
                            .fixes
                            .iter()
                            .map(|f| FixOut {
                                title: f.title.clone(),
                                edits: f
                                    .edits
                                    .iter()
                                    .map(|e| EditOut {
                                        range: (&e.span).into(),
                                        new_text: e.new_text.clone(),
                                    })
                                    .collect(),
                            })
                            .collect(),
                    })
                    .collect(),
            })
            .collect();
        DiagnosticsReport { version: 1, files }
    }
}

pub fn write_json(out: &mut dyn Write, files: &[(&Path, &[Diagnostic])]) -> io::Result<()> {
    let report = DiagnosticsReport::new(files);
    serde_json::to_writer_pretty(&mut *out, &report)?;
    writeln!(out)
}

/// `path:line:col: severity[code]: message`, continuation lines indented,
/// then the available fixes and a summary line.
pub fn write_human(out: &mut dyn Write, files: &[(&Path, &[Diagnostic])]) -> io::Result<()> {
    let mut counts = [0usize; 3];
    for (path, diags) in files {
        for d in *diags {
            counts[d.severity as usize] += 1;
            let mut lines = d.message.lines();
            writeln!(
                out,
                "{}:{}:{}: {}[{}]: {}",
                path.display(),
                d.span.start_line,
                d.span.start_col,
                d.severity.label(),
                d.code,
                lines.next().unwrap_or_default()
            )?;
            for l in lines {
                writeln!(out, "    {l}")?;
            }
            for r in &d.related {
                writeln!(
                    out,
                    "    note: {}:{}:{}: {}",
                    r.span.file.display(),
                    r.span.start_line,
                    r.span.start_col,
                    r.note
                )?;
            }
            for f in &d.fixes {
                writeln!(out, "    fix: {}", f.title)?;
            }
        }
    }
    let [e, w, i] = counts;
    writeln!(
        out,
        "{e} error(s), {w} warning(s), {i} info(s) in {} file(s)",
        files.len()
    )
}

pub fn has_errors(files: &[(&Path, &[Diagnostic])]) -> bool {
    files
        .iter()
        .any(|(_, ds)| ds.iter().any(|d| d.severity == Severity::Error))
}

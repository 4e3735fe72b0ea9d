//! CSV emission: RFC-4180-style output with 12 significant digits, LF
//! line endings, and a metadata sidecar carrying the config hash.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use sha2::{Digest, Sha256};

use crate::error::CliError;

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Debug, Clone, Default)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new<S: Into<String>>(columns: Vec<S>) -> Self {
        Self {
            columns: columns.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len(), "ragged row");
        self.rows.push(row);
    }
}

/// 12 significant digits, '.' decimal separator, plain decimal notation in
/// the ranges the outputs use, scientific elsewhere.
pub fn format_sig(v: f64) -> String {
    if v == 0.0 {
        return "0.00000000000".to_string();
    }
    if !v.is_finite() {
        return format!("{v}");
    }
    let exp = v.abs().log10().floor() as i32;
    if (-5..12).contains(&exp) {
        let decimals = (11 - exp).clamp(0, 17) as usize;
        format!("{v:.decimals$}")
    } else {
        format!("{v:.11e}")
    }
}

fn escape(text: &str) -> String {
    if text.contains([',', '"', '\n']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn render(table: &Table) -> String {
    let mut out = String::new();
    out.push_str(
        &table
            .columns
            .iter()
            .map(|c| escape(c))
            .collect::<Vec<_>>()
            .join(","),
    );
    out.push('\n');
    for row in &table.rows {
        let line = row
            .iter()
            .map(|cell| match cell {
                Cell::Int(v) => v.to_string(),
                Cell::Float(v) => format_sig(*v),
                Cell::Text(s) => escape(s),
            })
            .collect::<Vec<_>>()
            .join(",");
        out.push_str(&line);
        out.push('\n');
    }
    out
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitStatus {
    Ok,
    EmptyTable,
}

/// Writes the CSV and its `<stem>.meta.toml` sidecar; returns a warning
/// status for header-only output.
pub fn emit_csv(
    table: &Table,
    path: &Path,
    metadata: &RunMetadata,
) -> Result<(EmitStatus, PathBuf), CliError> {
    if let Some(dir) = path.parent() {
        std::fs::create_dir_all(dir)
            .map_err(|e| CliError::Io(format!("creating {}: {e}", dir.display())))?;
    }
    let body = render(table);
    std::fs::write(path, &body)
        .map_err(|e| CliError::Io(format!("writing {}: {e}", path.display())))?;
    let meta_path = path.with_extension("meta.toml");
    std::fs::write(&meta_path, metadata.render())
        .map_err(|e| CliError::Io(format!("writing {}: {e}", meta_path.display())))?;
    let status = if table.rows.is_empty() {
        EmitStatus::EmptyTable
    } else {
        EmitStatus::Ok
    };
    Ok((status, meta_path))
}

/// Reproducibility record attached to every output file.
#[derive(Debug, Clone)]
pub struct RunMetadata {
    pub config_hash: String,
    pub version: String,
    pub switches: Vec<(String, String)>,
}

impl RunMetadata {
    pub fn from_canonical_config(canonical: &str, switches: Vec<(String, String)>) -> Self {
        let mut hasher = Sha256::new();
        hasher.update(canonical.as_bytes());
        Self {
            config_hash: format!("sha256:{:x}", hasher.finalize()),
            version: format!("qwr {}", env!("CARGO_PKG_VERSION")),
            switches,
        }
    }

    fn render(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "config_hash = \"{}\"", self.config_hash);
        let _ = writeln!(s, "version = \"{}\"", self.version);
        let _ = writeln!(s, "\n[switches]");
        for (k, v) in &self.switches {
            let _ = writeln!(s, "{k} = \"{v}\"");
        }
        s
    }
}

//! Output plumbing shared by every subcommand: a schema-stable CSV
//! writer and a JSON mirror with identical field names.
//!
//! The CSV contract is deliberately rigid so downstream scripts can
//! hard-code parsers: fixed header, fixed column order, 17 significant
//! digits on every float, LF line endings, empty cell for a metadata
//! field that does not apply. New columns would be appended, never
//! inserted.

use cplaw::OutputRecord;
use serde::Serialize;
use std::io::Write;
use std::path::{Path, PathBuf};

/// Single superset header used by every command that emits value
/// records (bounds, exact, sweep). Inapplicable cells stay empty so
/// one parser handles every record stream.
pub const RECORD_HEADER: &str =
    "n,ell,q,beta,value_kind,value,d_used,x_used,mu,nu,steps,r_max,residual";

/// 17 significant digits round-trip any f64 exactly.
pub fn fmt17(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn opt17(x: Option<f64>) -> String {
    x.map(fmt17).unwrap_or_default()
}

/// Quote a free-text CSV cell (error messages may contain commas).
pub fn csv_cell(s: &str) -> String {
    if s.contains(',') || s.contains('"') || s.contains('\n') {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn record_line(r: &OutputRecord) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{},{}",
        r.n,
        r.ell,
        fmt17(r.q),
        opt17(r.beta),
        r.value_kind.as_str(),
        fmt17(r.value),
        opt17(r.meta.d_used),
        opt17(r.meta.x_used),
        opt17(r.meta.mu),
        opt17(r.meta.nu),
        r.meta.steps.map(|s| s.to_string()).unwrap_or_default(),
        opt17(r.meta.r_max),
        opt17(r.meta.residual),
    )
}

/// Assemble a CSV document from a header and prebuilt lines.
pub fn csv<I>(header: &str, lines: I) -> String
where
    I: IntoIterator<Item = String>,
{
    let mut text = String::from(header);
    text.push('\n');
    for line in lines {
        text.push_str(&line);
        text.push('\n');
    }
    text
}

/// JSON mirror: an array of row objects whose keys match the CSV
/// header names. serde_json prints floats shortest-roundtrip, so the
/// values survive a parse exactly like the 17-digit CSV cells.
pub fn json<T: Serialize>(rows: &[T]) -> Result<String, serde_json::Error> {
    let mut text = serde_json::to_string_pretty(rows)?;
    text.push('\n');
    Ok(text)
}

/// Where a document goes. Files are written atomically.
pub enum Dest {
    Stdout,
    File(PathBuf),
}

/// Resolve the output target. An explicit relative path lands in the
/// output directory; a command with a default filename (figure,
/// table1) never writes to stdout.
pub fn resolve(out: Option<&Path>, out_dir: &Path, default_name: Option<&str>) -> Dest {
    match (out, default_name) {
        (Some(path), _) if path.is_absolute() => Dest::File(path.to_path_buf()),
        (Some(path), _) => Dest::File(out_dir.join(path)),
        (None, Some(name)) => Dest::File(out_dir.join(name)),
        (None, None) => Dest::Stdout,
    }
}

/// Write the full document. File targets go through a sibling .tmp
/// plus rename so a failed run never leaves a partial file behind;
/// returns the final path when one was written.
pub fn write(dest: &Dest, content: &str) -> std::io::Result<Option<PathBuf>> {
    match dest {
        Dest::Stdout => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(None)
        }
        Dest::File(path) => {
            let tmp = tmp_path(path);
            let result = std::fs::write(&tmp, content).and_then(|()| std::fs::rename(&tmp, path));
            if result.is_err() {
                let _ = std::fs::remove_file(&tmp);
            }
            result.map(|()| Some(path.clone()))
        }
    }
}

fn tmp_path(path: &Path) -> PathBuf {
    let mut name = path
        .file_name()
        .map(std::ffi::OsStr::to_os_string)
        .unwrap_or_default();
    name.push(".tmp");
    path.with_file_name(name)
}

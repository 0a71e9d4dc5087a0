use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use c4ex_core::graph::graph6;
use c4ex_core::Graph;

use crate::CliError;

/// Reads a graph6 file (first non-empty line; an optional `>>graph6<<` header is
/// accepted). `-` reads standard input.
pub fn read_graph(path: &Path) -> Result<Graph, CliError> {
    let text = if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else {
        fs::read_to_string(path).map_err(|e| CliError::Usage(format!("cannot read {}: {e}", path.display())))?
    };
    let line = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty())
        .ok_or_else(|| CliError::Usage(format!("{} holds no graph", path.display())))?;
    let line = line.strip_prefix(">>graph6<<").unwrap_or(line);
    graph6::decode(line).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))
}

/// Writes to `path`, or to standard output when `path` is `None`.
pub fn write_text(path: Option<&Path>, text: &str) -> Result<(), CliError> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            out.flush()?;
            Ok(())
        }
    }
}

pub fn print_json<T: serde::Serialize>(value: &T) -> Result<(), CliError> {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

//! Locating genus tables and root data: a path as given, then relative to
//! `CHARSTACK_DATA_DIR`, then the shipped copies by name.

use std::path::PathBuf;

use charstack::genus_tables::{builtin_text, parse_genus_table, GenusTable};
use charstack::rootdata::RootDatum;

use crate::Failure;

pub const DATA_DIR_VAR: &str = "CHARSTACK_DATA_DIR";

fn find(name: &str) -> Option<PathBuf> {
    let direct = PathBuf::from(name);
    if direct.is_file() {
        return Some(direct);
    }
    let dir = std::env::var_os(DATA_DIR_VAR)?;
    let joined = PathBuf::from(dir).join(name);
    joined.is_file().then_some(joined)
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

pub fn genus_table(name: &str) -> Result<GenusTable, Failure> {
    let text = match find(name) {
        Some(path) => read(&path)?,
        None => match builtin_text(name) {
            Some(t) => t.to_string(),
            None => return Err(Failure::Usage(format!("genus table {name:?} not found"))),
        },
    };
    Ok(parse_genus_table(&text)?)
}

pub fn root_datum(name: &str) -> Result<RootDatum, Failure> {
    if let Some(path) = find(name) {
        return Ok(RootDatum::parse(&read(&path)?)?);
    }
    let stem = name.trim_end_matches(".datum");
    RootDatum::builtin(stem).ok_or_else(|| Failure::Usage(format!("root datum {name:?} not found")))
}

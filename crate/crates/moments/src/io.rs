//! Zero tables and Stieltjes tables on disk.

use std::fs;
use std::path::{Path, PathBuf};

use zeta_moments_core::stieltjes::parse_tsv;
use zeta_moments_core::{Real, ZeroTable};

use crate::error::{AppError, Result};

/// `data/zeros_100k.txt` in the source tree: the first 100,000 ordinates.
pub fn bundled_zeros_path() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../data/zeros_100k.txt")
}

/// Decimal places carried by the bundled zero table.
pub const BUNDLED_ZERO_DIGITS: usize = 12;

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| AppError::io(path, e))
}

/// One ordinate per line, ascending, `#` comments allowed. Ordinates are
/// held at `prec` bits.
pub fn load_zeros(path: impl AsRef<Path>, declared_digits: usize, prec: usize) -> Result<ZeroTable> {
    load_zeros_prefix(path, declared_digits, prec, usize::MAX)
}

/// The first `limit` ordinates of a zero file.
pub fn load_zeros_prefix(path: impl AsRef<Path>, declared_digits: usize, prec: usize, limit: usize) -> Result<ZeroTable> {
    let path = path.as_ref();
    let text = read(path)?;
    ZeroTable::parse_prefix(&text, declared_digits, prec, limit).map_err(|e| AppError::from(e).in_file(path))
}

/// Writes a table in the format [`load_zeros`] reads.
pub fn write_zeros(table: &ZeroTable, path: impl AsRef<Path>, digits: usize, header: &str) -> Result<()> {
    let path = path.as_ref();
    let mut text = String::new();
    for line in header.lines() {
        text.push_str("# ");
        text.push_str(line);
        text.push('\n');
    }
    text.push_str(&table.to_text(digits));
    fs::write(path, text).map_err(|e| AppError::io(path, e))
}

/// `index<TAB>value` lines, as in the bundled Stieltjes table.
pub fn load_stieltjes(path: impl AsRef<Path>, prec: usize) -> Result<Vec<Real>> {
    let path = path.as_ref();
    parse_tsv(&read(path)?, prec).map_err(|e| AppError::from(e).in_file(path))
}

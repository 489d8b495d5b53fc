use std::fs;
use std::io::Write;
use std::path::Path;

use crate::Failure;

/// Builds a CSV in memory and moves it into place with a rename, so a
/// reader never sees a partial file.
pub fn write_csv(dir: &Path, name: &str, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| Failure::Io(e.to_string()))?;
    write_atomic(dir, name, &bytes)
}

pub fn write_atomic(dir: &Path, name: &str, bytes: &[u8]) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    let tmp = dir.join(format!(".{name}.tmp"));
    let dst = dir.join(name);
    let mut f = fs::File::create(&tmp).map_err(|e| Failure::Io(format!("{}: {e}", tmp.display())))?;
    f.write_all(bytes).and_then(|_| f.sync_all()).map_err(|e| Failure::Io(format!("{}: {e}", tmp.display())))?;
    fs::rename(&tmp, &dst).map_err(|e| Failure::Io(format!("{}: {e}", dst.display())))?;
    Ok(())
}

fn io(e: csv::Error) -> Failure {
    Failure::Io(e.to_string())
}

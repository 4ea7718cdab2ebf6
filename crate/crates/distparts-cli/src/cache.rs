//! Optional on-disk cache of exact `D` tables.
//!
//! One plain-text file per `(r, t, length)` triple: a header line naming
//! the producing version and the table shape, then one decimal
//! coefficient per line. Any mismatch — version bump, wrong shape, parse
//! failure — invalidates the file: the table is recomputed and the file
//! overwritten, with a note added to the command's warnings. Writes are
//! best-effort; a cache that cannot be written never fails a command.

use std::fs;
use std::path::PathBuf;

use distparts::series::CongruenceClass;
use rug::Integer;

const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Handle on one cache directory, accumulating non-fatal warnings.
pub struct Cache {
    dir: PathBuf,
    warnings: Vec<String>,
}

impl Cache {
    pub fn new(dir: PathBuf) -> Self {
        Self {
            dir,
            warnings: Vec::new(),
        }
    }

    /// Drains the warnings gathered so far (unusable files, failed writes).
    pub fn take_warnings(&mut self) -> Vec<String> {
        std::mem::take(&mut self.warnings)
    }

    fn file_for(&self, cls: &CongruenceClass, trunc: u64) -> PathBuf {
        self.dir.join(format!(
            "dtable-v{VERSION}-r{}-t{}-n{trunc}.txt",
            cls.r(),
            cls.t()
        ))
    }

    fn header_for(cls: &CongruenceClass, trunc: u64) -> String {
        format!(
            "distparts-cache v{VERSION} r={} t={} n={trunc}",
            cls.r(),
            cls.t()
        )
    }

    /// Returns the cached table when a file with the exact expected
    /// header and shape exists; `None` otherwise (with a warning if a
    /// file was present but unusable).
    pub fn load(&mut self, cls: &CongruenceClass, trunc: u64) -> Option<Vec<Integer>> {
        let path = self.file_for(cls, trunc);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            // No file is the ordinary cold-cache case, not a warning.
            Err(_) => return None,
        };
        match parse_table(&text, &Self::header_for(cls, trunc), trunc) {
            Ok(table) => Some(table),
            Err(why) => {
                self.warnings
                    .push(format!("ignored cache file {}: {why}", path.display()));
                None
            }
        }
    }

    /// Writes (or overwrites) the snapshot for one table.
    pub fn store(&mut self, cls: &CongruenceClass, trunc: u64, table: &[Integer]) {
        let path = self.file_for(cls, trunc);
        let mut text = Self::header_for(cls, trunc);
        text.push('\n');
        for v in table {
            text.push_str(&v.to_string());
            text.push('\n');
        }
        let written = fs::create_dir_all(&self.dir).and_then(|()| fs::write(&path, text));
        if let Err(e) = written {
            self.warnings
                .push(format!("could not write cache file {}: {e}", path.display()));
        }
    }
}

fn parse_table(text: &str, header: &str, trunc: u64) -> Result<Vec<Integer>, String> {
    let mut lines = text.lines();
    match lines.next() {
        Some(h) if h == header => {}
        Some(h) => return Err(format!("header mismatch (found '{h}')")),
        None => return Err("empty file".into()),
    }
    let mut table = Vec::with_capacity(trunc as usize + 1);
    for line in lines {
        let v = line
            .trim()
            .parse::<Integer>()
            .map_err(|e| format!("bad coefficient line: {e}"))?;
        table.push(v);
    }
    if table.len() != trunc as usize + 1 {
        return Err(format!(
            "expected {} coefficients, found {}",
            trunc + 1,
            table.len()
        ));
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn scratch(label: &str) -> PathBuf {
        let dir = std::env::temp_dir().join(format!(
            "distparts-cache-test-{label}-{}",
            std::process::id()
        ));
        let _ = fs::remove_dir_all(&dir);
        dir
    }

    fn small_table() -> Vec<Integer> {
        (0..5u32).map(Integer::from).collect()
    }

    #[test]
    fn stores_and_reloads_a_table() {
        let dir = scratch("roundtrip");
        let cls = CongruenceClass::new(1, 2).unwrap();
        let mut cache = Cache::new(dir.clone());
        cache.store(&cls, 4, &small_table());
        assert!(cache.take_warnings().is_empty());
        assert_eq!(cache.load(&cls, 4), Some(small_table()));
        let _ = fs::remove_dir_all(dir);
    }

    #[test]
    fn rejects_a_stale_version_header() {
        let dir = scratch("version");
        let cls = CongruenceClass::new(1, 2).unwrap();
        let mut cache = Cache::new(dir.clone());
        cache.store(&cls, 4, &small_table());
        let path = cache.file_for(&cls, 4);
        let stale = fs::read_to_string(&path)
            .unwrap()
            .replacen(&format!("v{VERSION}"), "v0.0.0-old", 1);
        fs::write(&path, stale).unwrap();
        assert_eq!(cache.load(&cls, 4), None);
        let warnings = cache.take_warnings();
        assert_eq!(warnings.len(), 1);
        assert!(warnings[0].contains("header mismatch"));
        let _ = fs::remove_dir_all(dir);
    }

    #[test]
    fn rejects_wrong_shape_and_garbled_lines() {
        let dir = scratch("shape");
        let cls = CongruenceClass::new(2, 3).unwrap();
        let mut cache = Cache::new(dir.clone());
        cache.store(&cls, 4, &small_table());
        let path = cache.file_for(&cls, 4);

        // Truncated body: header fine, one coefficient missing.
        let text = fs::read_to_string(&path).unwrap();
        let shortened: String = text.lines().take(4).map(|l| format!("{l}\n")).collect();
        fs::write(&path, shortened).unwrap();
        assert_eq!(cache.load(&cls, 4), None);
        assert!(cache.take_warnings()[0].contains("expected 5 coefficients"));

        // Garbled body: a non-numeric line.
        cache.store(&cls, 4, &small_table());
        let mut text = fs::read_to_string(&path).unwrap();
        text.push_str("not-a-number\n");
        fs::write(&path, text).unwrap();
        assert_eq!(cache.load(&cls, 4), None);
        assert!(cache.take_warnings()[0].contains("bad coefficient"));
        let _ = fs::remove_dir_all(dir);
    }

    #[test]
    fn missing_file_is_silent() {
        let cls = CongruenceClass::new(1, 2).unwrap();
        let mut cache = Cache::new(scratch("cold"));
        assert_eq!(cache.load(&cls, 10), None);
        assert!(cache.take_warnings().is_empty());
    }
}

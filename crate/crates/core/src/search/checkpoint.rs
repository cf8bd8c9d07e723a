use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::SearchError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ScanMode {
    Exhaustive3,
    Smooth3,
    Exhaustive4,
}

impl ScanMode {
    /// First outer value the mode visits.
    pub fn first_outer(self) -> u64 {
        match self {
            ScanMode::Exhaustive3 | ScanMode::Smooth3 => 2,
            ScanMode::Exhaustive4 => 1,
        }
    }
}

/// One best-so-far statistic and the instance attaining it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtremalRecord {
    pub stat: String,
    pub value: f64,
    pub instance: String,
}

/// Resumable scan state over the half-open outer range
/// `[range_lo, range_hi)`. `cursor` is the next outer value to process, so
/// `cursor == range_hi` marks a finished scan.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScanCheckpoint {
    pub mode: ScanMode,
    pub range_lo: u64,
    pub range_hi: u64,
    pub cursor: u64,
    pub params: BTreeMap<String, f64>,
    pub extremal: Vec<ExtremalRecord>,
    /// Records written so far.
    pub count: u64,
    /// Length of the output file when this checkpoint was taken.
    pub output_bytes: u64,
}

impl ScanCheckpoint {
    pub fn is_done(&self) -> bool {
        self.cursor >= self.range_hi
    }

    pub fn extremal(&self, stat: &str) -> Option<&ExtremalRecord> {
        self.extremal.iter().find(|r| r.stat == stat)
    }

    /// Raise `stat` to `value` if it beats the current record. Ties keep
    /// the earlier instance.
    pub fn offer(&mut self, stat: &str, value: f64, instance: impl FnOnce() -> String) {
        offer(&mut self.extremal, stat, value, instance);
    }

    pub fn to_line(&self) -> String {
        serde_json::to_string(self).expect("checkpoint serializes")
    }

    /// Reads the last nonempty line of `path`.
    pub fn load(path: &Path) -> Result<Self, SearchError> {
        let text = fs::read_to_string(path)?;
        let line = text
            .lines()
            .rev()
            .find(|l| !l.trim().is_empty())
            .ok_or_else(|| SearchError::CheckpointFormat("empty file".into()))?;
        let cp: ScanCheckpoint =
            serde_json::from_str(line).map_err(|e| SearchError::CheckpointFormat(e.to_string()))?;
        if !(cp.range_lo <= cp.cursor && cp.cursor <= cp.range_hi) {
            return Err(SearchError::CheckpointFormat(format!(
                "cursor {} outside [{}, {}]",
                cp.cursor, cp.range_lo, cp.range_hi
            )));
        }
        Ok(cp)
    }

    /// Writes to a sibling temp file, syncs it, and renames over `path`.
    pub fn save(&self, path: &Path) -> Result<(), SearchError> {
        let tmp = temp_path(path);
        {
            let mut f = fs::File::create(&tmp)?;
            writeln!(f, "{}", self.to_line())?;
            f.sync_all()?;
        }
        fs::rename(&tmp, path)?;
        Ok(())
    }
}

pub(crate) fn offer(
    records: &mut Vec<ExtremalRecord>,
    stat: &str,
    value: f64,
    instance: impl FnOnce() -> String,
) {
    match records.iter_mut().find(|r| r.stat == stat) {
        Some(r) if value > r.value => {
            r.value = value;
            r.instance = instance();
        }
        Some(_) => {}
        None => records.push(ExtremalRecord {
            stat: stat.to_string(),
            value,
            instance: instance(),
        }),
    }
}

fn temp_path(path: &Path) -> PathBuf {
    let mut name = path.file_name().unwrap_or_default().to_os_string();
    name.push(".tmp");
    path.with_file_name(name)
}

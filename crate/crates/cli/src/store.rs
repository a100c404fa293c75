//! Append-only JSONL store of zero records.

use std::fs::OpenOptions;
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use quadzeta::complexzeros::{ZeroMethod, ZeroRecord};
use serde::{Deserialize, Serialize};

use crate::output::TOOL_VERSION;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ZeroStoreRecord {
    /// `a` in decimal.
    pub a: String,
    /// `a` as `r/q` when it was given exactly.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub a_fraction: Option<String>,
    pub s_re: f64,
    pub s_im: f64,
    pub method: ZeroMethod,
    pub residual: f64,
    /// RFC 3339; set only on records written to a store file.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timestamp: Option<String>,
    pub tool_version: String,
}

impl ZeroStoreRecord {
    pub fn new(a: (String, Option<String>), z: &ZeroRecord) -> Self {
        Self {
            a: a.0,
            a_fraction: a.1,
            s_re: z.s.re,
            s_im: z.s.im,
            method: z.method,
            residual: z.residual,
            timestamp: None,
            tool_version: TOOL_VERSION.to_string(),
        }
    }
}

/// Appends `records`, each stamped with the current time.
pub fn append(path: &Path, records: &[ZeroStoreRecord]) -> std::io::Result<()> {
    let stamp = chrono::Utc::now().to_rfc3339_opts(chrono::SecondsFormat::Micros, true);
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    let mut buf = Vec::new();
    for r in records {
        let stamped = ZeroStoreRecord {
            timestamp: Some(stamp.clone()),
            ..r.clone()
        };
        serde_json::to_writer(&mut buf, &stamped).map_err(std::io::Error::other)?;
        buf.push(b'\n');
    }
    file.write_all(&buf)
}

/// Every record in the store; blank lines are skipped.
pub fn read(path: &Path) -> std::io::Result<Vec<ZeroStoreRecord>> {
    let file = std::fs::File::open(path)?;
    let mut out = Vec::new();
    for (n, line) in BufReader::new(file).lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let rec = serde_json::from_str(&line).map_err(|e| {
            std::io::Error::new(std::io::ErrorKind::InvalidData, format!("line {}: {e}", n + 1))
        })?;
        out.push(rec);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use quadzeta::ComplexValue;

    fn record(t: f64) -> ZeroStoreRecord {
        let z = ZeroRecord {
            s: ComplexValue::new(0.5, t),
            method: ZeroMethod::HardyScan,
            residual: 1e-13,
            newton_refined: false,
            multiplicity: 1,
        };
        ZeroStoreRecord::new(("0.5".into(), Some("1/2".into())), &z)
    }

    #[test]
    fn append_only_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("zeros.jsonl");
        append(&path, &[record(1.0), record(2.0)]).unwrap();
        append(&path, &[record(1.0)]).unwrap();
        let back = read(&path).unwrap();
        assert_eq!(back.len(), 3);
        assert!(back.iter().all(|r| r.timestamp.is_some()));
        assert_eq!(back[0].s_im, 1.0);
        assert_eq!(back[2].a_fraction.as_deref(), Some("1/2"));
    }

    #[test]
    fn stdout_form_has_no_timestamp() {
        let text = serde_json::to_string(&record(1.0)).unwrap();
        assert!(!text.contains("timestamp"));
    }
}

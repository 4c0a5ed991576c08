//! JSON instance files. The kind of an instance is read off its keys:
//!
//! | keys                              | kind          |
//! |-----------------------------------|---------------|
//! | `elements`, `leq`                 | frame         |
//! | `frame`, `first`, `second`        | bilocale      |
//! | `frame`, `tau1`, `tau2`           | topobilocale  |
//! | `points`, `tau1`, `tau2`          | bispace       |
//! | `source`, `target`, `mapping`     | biframe map   |

use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::bilocale::{Bilocale, RawBilocale};
use crate::bispace::{Bispace, RawBispace};
use crate::error::{Error, Result};
use crate::frame::{Frame, Guards, RawFrame};
use crate::maps::{BiframeMap, RawBiframeMap};
use crate::topo::{RawTopoBilocale, TopoBilocale};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum InstanceKind {
    Frame,
    Bilocale,
    Bispace,
    TopoBilocale,
    Map,
}

impl fmt::Display for InstanceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            InstanceKind::Frame => "frame",
            InstanceKind::Bilocale => "bilocale",
            InstanceKind::Bispace => "bispace",
            InstanceKind::TopoBilocale => "topobilocale",
            InstanceKind::Map => "map",
        })
    }
}

#[derive(Debug, Clone)]
pub enum Instance {
    Frame(Frame),
    Bilocale(Bilocale),
    Bispace(Bispace),
    TopoBilocale(TopoBilocale),
    Map(BiframeMap),
}

impl Instance {
    pub fn kind(&self) -> InstanceKind {
        match self {
            Instance::Frame(_) => InstanceKind::Frame,
            Instance::Bilocale(_) => InstanceKind::Bilocale,
            Instance::Bispace(_) => InstanceKind::Bispace,
            Instance::TopoBilocale(_) => InstanceKind::TopoBilocale,
            Instance::Map(_) => InstanceKind::Map,
        }
    }

    /// Number of frame elements (join-topology opens for bispaces; source
    /// elements for maps).
    pub fn size(&self) -> usize {
        match self {
            Instance::Frame(f) => f.len(),
            Instance::Bilocale(b) => b.frame().len(),
            Instance::Bispace(bs) => bs.bilocale().frame().len(),
            Instance::TopoBilocale(t) => t.frame().len(),
            Instance::Map(m) => m.source().frame().len(),
        }
    }

    pub fn to_json(&self) -> Value {
        let v = match self {
            Instance::Frame(f) => serde_json::to_value(f.to_raw()),
            Instance::Bilocale(b) => serde_json::to_value(b.to_raw()),
            Instance::Bispace(bs) => serde_json::to_value(bs.to_raw()),
            Instance::TopoBilocale(t) => serde_json::to_value(t.to_raw()),
            Instance::Map(m) => serde_json::to_value(m.to_raw()),
        };
        v.expect("raw instances serialize")
    }
}

fn has(v: &Value, keys: &[&str]) -> bool {
    keys.iter().all(|k| v.get(k).is_some())
}

pub fn detect_kind(v: &Value) -> Result<InstanceKind> {
    if !v.is_object() {
        return Err(Error::Invalid("instance must be a JSON object".into()));
    }
    if has(v, &["source", "target", "mapping"]) {
        Ok(InstanceKind::Map)
    } else if has(v, &["points", "tau1", "tau2"]) {
        Ok(InstanceKind::Bispace)
    } else if has(v, &["frame", "tau1", "tau2"]) {
        Ok(InstanceKind::TopoBilocale)
    } else if has(v, &["frame", "first", "second"]) {
        Ok(InstanceKind::Bilocale)
    } else if has(v, &["elements", "leq"]) {
        Ok(InstanceKind::Frame)
    } else {
        Err(Error::Invalid("unrecognised instance: no known key set".into()))
    }
}

fn decode<T: serde::de::DeserializeOwned>(v: Value) -> Result<T> {
    serde_json::from_value(v).map_err(|e| Error::Invalid(format!("malformed instance: {e}")))
}

pub fn instance_from_value(v: Value, guards: Guards) -> Result<Instance> {
    Ok(match detect_kind(&v)? {
        InstanceKind::Frame => Instance::Frame(Frame::validate_with(&decode::<RawFrame>(v)?, guards)?),
        InstanceKind::Bilocale => Instance::Bilocale(Bilocale::from_raw_with(&decode::<RawBilocale>(v)?, guards)?),
        InstanceKind::Bispace => Instance::Bispace(Bispace::from_raw_with(&decode::<RawBispace>(v)?, guards)?),
        InstanceKind::TopoBilocale => {
            Instance::TopoBilocale(TopoBilocale::from_raw_with(&decode::<RawTopoBilocale>(v)?, guards)?)
        }
        InstanceKind::Map => Instance::Map(BiframeMap::from_raw_with(&decode::<RawBiframeMap>(v)?, guards)?),
    })
}

pub fn parse_instance(text: &str, guards: Guards) -> Result<Instance> {
    let v: Value = serde_json::from_str(text).map_err(|e| Error::Invalid(format!("invalid JSON: {e}")))?;
    instance_from_value(v, guards)
}

/// Reads and validates one file; errors carry the path.
pub fn load_instance(path: &Path, guards: Guards) -> Result<Instance> {
    std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(e.to_string()))
        .and_then(|text| parse_instance(&text, guards))
        .map_err(|e| Error::InFile {
            path: path.display().to_string(),
            source: Box::new(e),
        })
}

/// `*.json` files of a directory, sorted by file name.
pub fn corpus_files(dir: &Path) -> Result<Vec<std::path::PathBuf>> {
    let entries = std::fs::read_dir(dir).map_err(|e| Error::Invalid(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<_> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Loads every instance of a directory, keyed by file stem.
pub fn load_corpus(dir: &Path, guards: Guards) -> Result<Vec<(String, Instance)>> {
    corpus_files(dir)?
        .into_iter()
        .map(|p| {
            let id = p.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            load_instance(&p, guards).map(|inst| (id, inst))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn detects_kinds() {
        let frame = serde_json::to_value(RawFrame::chain3()).unwrap();
        assert_eq!(detect_kind(&frame).unwrap(), InstanceKind::Frame);
        let bil = serde_json::json!({"frame": frame, "first": [0, 1, 2], "second": [0, 2]});
        assert_eq!(detect_kind(&bil).unwrap(), InstanceKind::Bilocale);
        let topo = serde_json::json!({"frame": frame, "tau1": [0, 2], "tau2": [0, 2]});
        assert_eq!(detect_kind(&topo).unwrap(), InstanceKind::TopoBilocale);
        assert!(detect_kind(&serde_json::json!({"x": 1})).is_err());
        assert!(detect_kind(&serde_json::json!([1])).is_err());
    }

    #[test]
    fn round_trips() {
        let text = serde_json::to_string(&RawFrame::powerset(2)).unwrap();
        let inst = parse_instance(&text, Guards::default()).unwrap();
        assert_eq!(inst.kind(), InstanceKind::Frame);
        let again = instance_from_value(inst.to_json(), Guards::default()).unwrap();
        assert_eq!(again.size(), 4);
    }

    #[test]
    fn malformed_inputs() {
        assert!(matches!(parse_instance("", Guards::default()), Err(Error::Invalid(_))));
        assert!(matches!(
            parse_instance(r#"{"elements": "x", "leq": []}"#, Guards::default()),
            Err(Error::Invalid(_))
        ));
    }
}

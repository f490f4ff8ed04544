//! The bundled corpus: one bundle per ring, embedded at compile time.

use std::path::Path;

use crate::jobspec::{parse_bundle, Bundle, InputError};

/// File names and contents, sorted by name.
pub const FILES: &[(&str, &str)] = &[
    ("artinian-f101.json", include_str!("../corpus/artinian-f101.json")),
    ("artinian-q.json", include_str!("../corpus/artinian-q.json")),
    ("node-f101.json", include_str!("../corpus/node-f101.json")),
    ("node-q.json", include_str!("../corpus/node-q.json")),
    ("noncm-f101.json", include_str!("../corpus/noncm-f101.json")),
    ("noncm-q.json", include_str!("../corpus/noncm-q.json")),
    ("plane-f101.json", include_str!("../corpus/plane-f101.json")),
    ("plane-q.json", include_str!("../corpus/plane-q.json")),
    ("space-f101.json", include_str!("../corpus/space-f101.json")),
    ("space-q.json", include_str!("../corpus/space-q.json")),
    ("xsquared-f101.json", include_str!("../corpus/xsquared-f101.json")),
    ("xsquared-q.json", include_str!("../corpus/xsquared-q.json")),
];

fn located(file: &str, e: InputError) -> InputError {
    match e {
        InputError::Invalid { path, message } => InputError::Invalid { path: format!("{file}: {path}"), message },
        InputError::Syntax { line, column, message } => {
            InputError::Syntax { line, column, message: format!("{file}: {message}") }
        }
        other => other,
    }
}

pub fn bundled() -> Result<Vec<Bundle>, InputError> {
    FILES.iter().map(|(name, text)| parse_bundle(text).map_err(|e| located(name, e))).collect()
}

/// Every `*.json` bundle in a directory, sorted by file name.
pub fn from_dir(dir: &Path) -> Result<Vec<Bundle>, std::io::Error> {
    let mut paths: Vec<_> = std::fs::read_dir(dir)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    paths.sort();
    paths
        .iter()
        .map(|p| {
            let text = std::fs::read_to_string(p)?;
            parse_bundle(&text).map_err(|e| {
                std::io::Error::new(std::io::ErrorKind::InvalidData, located(&p.display().to_string(), e))
            })
        })
        .collect()
}

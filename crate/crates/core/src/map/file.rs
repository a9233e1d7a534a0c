//! Map files: JSON documents holding a rotation system with 1-based darts.
//!
//! ```json
//! { "name": "theta", "darts": 6,
//!   "sigma": [[1, 2, 3], [4, 6, 5]],
//!   "alpha": [[1, 4], [2, 5], [3, 6]] }
//! ```
//!
//! Unknown keys are rejected.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{Map, MapError};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapFile {
    pub name: String,
    pub darts: usize,
    pub sigma: Vec<Vec<usize>>,
    pub alpha: Vec<[usize; 2]>,
}

impl MapFile {
    pub fn from_map(map: &Map) -> Self {
        MapFile {
            name: map.name().to_string(),
            darts: map.dart_count(),
            sigma: map.sigma_cycles(),
            alpha: map.alpha_pairs(),
        }
    }

    pub fn into_map(self) -> Result<Map, MapError> {
        if self.darts % 2 == 1 {
            return Err(MapError::MalformedInput(format!(
                "odd dart count {}",
                self.darts
            )));
        }
        let listed: usize = self.sigma.iter().map(Vec::len).sum();
        if listed != self.darts || 2 * self.alpha.len() != self.darts {
            return Err(MapError::MalformedInput(format!(
                "declared {} darts but sigma lists {} and alpha {}",
                self.darts,
                listed,
                2 * self.alpha.len()
            )));
        }
        Map::from_rotation_system(&self.sigma, &self.alpha, self.name)
    }

    pub fn to_json(&self) -> String {
        let mut out = String::from("{\n");
        out += &format!("  \"name\": {},\n", serde_json::to_string(&self.name).unwrap());
        out += &format!("  \"darts\": {},\n", self.darts);
        out += &format!("  \"sigma\": {},\n", compact_rows(&self.sigma));
        let alpha: Vec<Vec<usize>> = self.alpha.iter().map(|p| p.to_vec()).collect();
        out += &format!("  \"alpha\": {}\n", compact_rows(&alpha));
        out += "}\n";
        out
    }
}

/// One inner list per line; keeps files diffable.
fn compact_rows(rows: &[Vec<usize>]) -> String {
    let body: Vec<String> = rows
        .iter()
        .map(|r| format!("    {}", serde_json::to_string(r).unwrap()))
        .collect();
    format!("[\n{}\n  ]", body.join(",\n"))
}

pub fn save(map: &Map, path: impl AsRef<Path>) -> Result<(), MapError> {
    fs::write(path, MapFile::from_map(map).to_json())?;
    Ok(())
}

pub fn load(path: impl AsRef<Path>) -> Result<Map, MapError> {
    let text = fs::read_to_string(path)?;
    parse(&text)
}

pub fn parse(text: &str) -> Result<Map, MapError> {
    let file: MapFile =
        serde_json::from_str(text).map_err(|e| MapError::MalformedInput(e.to_string()))?;
    file.into_map()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::map::prism;

    #[test]
    fn round_trip_prism4() {
        let m = prism(4).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("prism4.json");
        save(&m, &path).unwrap();
        assert_eq!(load(&path).unwrap(), m);
    }

    #[test]
    fn odd_dart_count_is_malformed() {
        let text = r#"{"name": "x", "darts": 3, "sigma": [[1,2,3]], "alpha": [[1,2]]}"#;
        assert!(matches!(parse(text), Err(MapError::MalformedInput(_))));
    }

    #[test]
    fn unknown_fields_are_rejected() {
        let text = r#"{"name": "t", "darts": 6, "sigma": [[1,2,3],[4,6,5]],
                       "alpha": [[1,4],[2,5],[3,6]], "colour": "red"}"#;
        assert!(matches!(parse(text), Err(MapError::MalformedInput(_))));
        let ok = r#"{"name": "t", "darts": 6, "sigma": [[1,2,3],[4,6,5]],
                     "alpha": [[1,4],[2,5],[3,6]]}"#;
        assert_eq!(parse(ok).unwrap().face_count(), 3);
    }

    #[test]
    fn declared_count_must_match() {
        let text = r#"{"name": "t", "darts": 8, "sigma": [[1,2,3],[4,6,5]],
                       "alpha": [[1,4],[2,5],[3,6]]}"#;
        assert!(matches!(parse(text), Err(MapError::MalformedInput(_))));
    }

    #[test]
    fn missing_file_is_io_error() {
        assert!(matches!(load("/nonexistent/map.json"), Err(MapError::Io(_))));
    }
}

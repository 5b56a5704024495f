//! Distribution files: `{"pmf": [..], "labels": [..]}` or a bare JSON array.

use std::path::Path;

use serde::Deserialize;

use super::CliError;
use crate::simplex::ProbDist;

#[derive(Deserialize)]
#[serde(untagged)]
enum DistFile {
    Bare(Vec<f64>),
    Object {
        pmf: Vec<f64>,
        #[serde(default)]
        labels: Option<Vec<String>>,
    },
}

/// Parses and validates a distribution from JSON text.
pub fn parse_dist(text: &str) -> Result<ProbDist, String> {
    let file: DistFile =
        serde_json::from_str(text).map_err(|e| format!("invalid distribution JSON: {e}"))?;
    let (pmf, labels) = match file {
        DistFile::Bare(pmf) => (pmf, None),
        DistFile::Object { pmf, labels } => (pmf, labels),
    };
    let dist = ProbDist::new(pmf).map_err(|e| e.to_string())?;
    match labels {
        Some(l) => dist
            .with_labels(l)
            .map_err(|_| "labels must match the pmf length".to_string()),
        None => Ok(dist),
    }
}

/// Reads a distribution file; errors name the file.
pub fn load_dist(path: &Path) -> Result<ProbDist, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    parse_dist(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn both_layouts_parse() {
        let a = parse_dist("[0.65, 0.35]").unwrap();
        let b = parse_dist(r#"{"pmf": [0.65, 0.35], "labels": ["x", "y"]}"#).unwrap();
        assert_eq!(a.masses(), b.masses());
        assert_eq!(b.labels().unwrap(), ["x", "y"]);
        assert!(parse_dist(r#"{"pmf": [0.5, 0.5]}"#)
            .unwrap()
            .labels()
            .is_none());
    }

    #[test]
    fn bad_files_are_reported() {
        assert!(parse_dist("[0.3, 0.3]").unwrap_err().contains("sum"));
        assert!(parse_dist("{\"p\": [1]}").is_err());
        assert!(parse_dist(r#"{"pmf": [0.5, 0.5], "labels": ["x"]}"#).is_err());
        let err = load_dist(Path::new("/nonexistent/dist.json")).unwrap_err();
        assert!(err.to_string().contains("/nonexistent/dist.json"));
    }
}

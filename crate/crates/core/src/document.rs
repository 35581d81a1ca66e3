//! JSON document holding one complex matrix as separate real/imaginary grids.
//!
//! ```json
//! { "dim": 3, "re": [[...], [...], [...]], "im": [[...], [...], [...]], "label": "optional" }
//! ```

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::SquareComplexMatrix;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StateFileDocument {
    pub dim: usize,
    pub re: Vec<Vec<f64>>,
    pub im: Vec<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
}

impl StateFileDocument {
    pub fn from_matrix(m: &SquareComplexMatrix, label: Option<String>) -> Self {
        Self {
            dim: m.dim(),
            re: m.real_rows(),
            im: m.imag_rows(),
            label,
        }
    }

    pub fn parse(text: &str) -> Result<Self> {
        let doc: Self = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        doc.check_shape()?;
        Ok(doc)
    }

    fn check_shape(&self) -> Result<()> {
        if self.dim == 0 {
            return Err(Error::Parse("dim must be at least 1".into()));
        }
        for (name, grid) in [("re", &self.re), ("im", &self.im)] {
            if grid.len() != self.dim || grid.iter().any(|row| row.len() != self.dim) {
                return Err(Error::Parse(format!(
                    "grid '{name}' is not {0}x{0}",
                    self.dim
                )));
            }
            if grid.iter().flatten().any(|x| !x.is_finite()) {
                return Err(Error::Parse(format!("grid '{name}' has a non-finite entry")));
            }
        }
        Ok(())
    }

    pub fn to_matrix(&self) -> Result<SquareComplexMatrix> {
        self.check_shape()?;
        SquareComplexMatrix::from_parts(&self.re, &self.im)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds_matrix() {
        let text = r#"{"dim": 2, "re": [[0.5, 0.0], [0.0, 0.5]], "im": [[0, 0.1], [-0.1, 0]], "label": "x"}"#;
        let doc = StateFileDocument::parse(text).unwrap();
        assert_eq!(doc.label.as_deref(), Some("x"));
        let m = doc.to_matrix().unwrap();
        assert_eq!(m[(0, 1)].im, 0.1);
        let again = StateFileDocument::parse(&StateFileDocument::from_matrix(&m, doc.label.clone()).to_json()).unwrap();
        assert_eq!(again, doc);
    }

    #[test]
    fn rejects_malformed() {
        for text in [
            "not json",
            r#"{"dim": 2, "re": [[1, 0], [0, 1]]}"#,
            r#"{"dim": 2, "re": [[1, 0], [0]], "im": [[0, 0], [0, 0]]}"#,
            r#"{"dim": 3, "re": [[1, 0], [0, 1]], "im": [[0, 0], [0, 0]]}"#,
            r#"{"dim": 0, "re": [], "im": []}"#,
            r#"{"dim": 1, "re": [[1]], "im": [[0]], "extra": 1}"#,
        ] {
            assert!(matches!(StateFileDocument::parse(text), Err(Error::Parse(_))), "{text}");
        }
    }
}

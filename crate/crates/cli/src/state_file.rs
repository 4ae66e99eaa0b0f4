//! `{"matrix": [[[re, im], ...], ...]}` with four rows of four entries.

use std::fs;
use std::path::Path;

use serde::Deserialize;

use bellcert_core::linalg::{CMat4, C64};
use bellcert_core::DensityMatrix;

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct StateFile {
    matrix: Vec<Vec<[f64; 2]>>,
}

pub fn parse(text: &str) -> Result<DensityMatrix, String> {
    let file: StateFile = serde_json::from_str(text).map_err(|e| format!("state file: {e}"))?;
    if file.matrix.len() != 4 || file.matrix.iter().any(|r| r.len() != 4) {
        return Err("state file: matrix must be 4×4".into());
    }
    let mut m = CMat4::zeros();
    for (i, row) in file.matrix.iter().enumerate() {
        for (j, &[re, im]) in row.iter().enumerate() {
            m.0[i][j] = C64::new(re, im);
        }
    }
    DensityMatrix::new(m).map_err(|e| format!("state file: {e}"))
}

pub fn load(path: &Path) -> Result<DensityMatrix, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse(&text)
}

use serde::Serialize;

use super::{DenseMatrix, LinalgError, SpectralNucleus};

/// One row of decimal numbers per line; blank lines are skipped.
pub fn parse_matrix_csv(text: &str) -> Result<DenseMatrix, LinalgError> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .trim(csv::Trim::All)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut rows = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(|e| LinalgError::Parse(e.to_string()))?;
        let line = rec.position().map_or(0, |p| p.line());
        if rec.iter().all(str::is_empty) {
            continue;
        }
        let row = rec
            .iter()
            .map(|cell| {
                cell.parse::<f64>()
                    .map_err(|_| LinalgError::Parse(format!("line {line}: bad number `{cell}`")))
            })
            .collect::<Result<Vec<f64>, _>>()?;
        rows.push(row);
    }
    if rows.is_empty() {
        return Err(LinalgError::Parse("empty matrix".into()));
    }
    DenseMatrix::from_rows(&rows)
}

/// Output record: `{sigma, U, V, rank, residual}`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SvdJson {
    pub sigma: Vec<f64>,
    #[serde(rename = "U")]
    pub u: Vec<Vec<f64>>,
    #[serde(rename = "V")]
    pub v: Vec<Vec<f64>>,
    pub rank: usize,
    pub residual: f64,
}

impl SvdJson {
    pub fn new(m: &DenseMatrix, s: &SpectralNucleus) -> Self {
        SvdJson {
            sigma: s.sigma.clone(),
            u: s.u.to_rows(),
            v: s.v.to_rows(),
            rank: s.rank,
            residual: s.residual(m),
        }
    }
}

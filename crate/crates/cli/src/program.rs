use std::path::Path;

use serde::Deserialize;

use qfoundry_core::quantum::{normalize, CVector, ComplexMatrix, DensityOperator, C64};

use crate::error::CliError;

/// A matrix or vector entry: a real number or `[re, im]`.
#[derive(Debug, Deserialize)]
#[serde(untagged)]
enum Entry {
    Real(f64),
    Complex([f64; 2]),
}

impl Entry {
    fn value(&self) -> C64 {
        match *self {
            Entry::Real(x) => C64::new(x, 0.0),
            Entry::Complex([re, im]) => C64::new(re, im),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawProgram {
    /// Initial pure state; maximally mixed when absent.
    state: Option<Vec<Entry>>,
    /// Hermitian matrices, each as a list of rows.
    observables: Vec<Vec<Vec<Entry>>>,
}

pub struct Program {
    pub state: DensityOperator,
    pub observables: Vec<ComplexMatrix>,
}

pub fn load_program(path: &Path, dim: usize) -> Result<Program, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    let bad = |message: String| CliError::MalformedProgram {
        path: path.to_path_buf(),
        message,
    };
    let raw: RawProgram = serde_json::from_str(&text).map_err(|e| bad(e.to_string()))?;
    let state = match raw.state {
        None => DensityOperator::maximally_mixed(dim),
        Some(v) => {
            if v.len() != dim {
                return Err(bad(format!("state has {} entries, expected {dim}", v.len())));
            }
            let v = CVector::from_iterator(dim, v.iter().map(Entry::value));
            DensityOperator::pure(&normalize(&v).map_err(|e| bad(e.to_string()))?).map_err(|e| bad(e.to_string()))?
        }
    };
    let observables = raw
        .observables
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            if rows.len() != dim || rows.iter().any(|r| r.len() != dim) {
                return Err(bad(format!("observable {k} is not {dim}x{dim}")));
            }
            let entries: Vec<C64> = rows.iter().flatten().map(Entry::value).collect();
            let m = ComplexMatrix::from_rows(dim, &entries).map_err(|e| bad(format!("observable {k}: {e}")))?;
            if !m.is_hermitian(1e-10) {
                return Err(bad(format!("observable {k} is not Hermitian")));
            }
            Ok(m)
        })
        .collect::<Result<_, _>>()?;
    Ok(Program { state, observables })
}

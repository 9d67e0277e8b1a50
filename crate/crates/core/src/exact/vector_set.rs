use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use super::{ExactVector, GeometryError, QuadScalar};

const PERES33_JSON: &str = include_str!("../../data/peres33.json");
const CABELLO18_JSON: &str = include_str!("../../data/cabello18.json");

/// A labelled collection of vectors sharing one ambient dimension.
#[derive(Clone, Debug)]
pub struct VectorSet {
    dimension: usize,
    vectors: Vec<ExactVector>,
}

/// The data sets compiled into the crate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BuiltinSet {
    Peres33,
    Cabello18,
}

impl BuiltinSet {
    pub const ALL: [BuiltinSet; 2] = [BuiltinSet::Peres33, BuiltinSet::Cabello18];

    pub fn name(self) -> &'static str {
        match self {
            BuiltinSet::Peres33 => "peres33",
            BuiltinSet::Cabello18 => "cabello18",
        }
    }

    pub fn raw_json(self) -> &'static str {
        match self {
            BuiltinSet::Peres33 => PERES33_JSON,
            BuiltinSet::Cabello18 => CABELLO18_JSON,
        }
    }

    pub fn load(self) -> VectorSet {
        VectorSet::from_json(self.raw_json()).expect("embedded data set is well formed")
    }
}

impl FromStr for BuiltinSet {
    type Err = GeometryError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "peres33" => Ok(BuiltinSet::Peres33),
            "cabello18" => Ok(BuiltinSet::Cabello18),
            other => Err(GeometryError::UnknownSet(other.to_string())),
        }
    }
}

#[derive(Serialize, Deserialize)]
struct VectorSetFile {
    dimension: usize,
    vectors: Vec<VectorEntry>,
}

#[derive(Serialize, Deserialize)]
struct VectorEntry {
    label: String,
    /// One `[a, b, c, d]` per coordinate, each coefficient a `[numer, denom]` pair.
    entries: Vec<[[i64; 2]; 4]>,
}

impl VectorSet {
    pub fn new(dimension: usize, vectors: Vec<ExactVector>) -> Result<Self, GeometryError> {
        if let Some(v) = vectors.iter().find(|v| v.dim() != dimension) {
            return Err(GeometryError::DimensionMismatch {
                left: dimension,
                right: v.dim(),
            });
        }
        Ok(Self { dimension, vectors })
    }

    pub fn peres33() -> Self {
        BuiltinSet::Peres33.load()
    }

    pub fn cabello18() -> Self {
        BuiltinSet::Cabello18.load()
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn vectors(&self) -> &[ExactVector] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn into_vectors(self) -> Vec<ExactVector> {
        self.vectors
    }

    pub fn position(&self, label: &str) -> Option<usize> {
        self.vectors.iter().position(|v| v.label() == label)
    }

    /// The set with every vector whose label is listed removed.
    pub fn without_labels(&self, labels: &[&str]) -> Self {
        Self {
            dimension: self.dimension,
            vectors: self
                .vectors
                .iter()
                .filter(|v| !labels.contains(&v.label()))
                .cloned()
                .collect(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self, GeometryError> {
        let file: VectorSetFile =
            serde_json::from_str(text).map_err(|e| GeometryError::Malformed(e.to_string()))?;
        let mut vectors = Vec::with_capacity(file.vectors.len());
        for entry in file.vectors {
            let mut coords = Vec::with_capacity(entry.entries.len());
            for coord in &entry.entries {
                let mut coeffs = Vec::with_capacity(4);
                for [n, d] in coord {
                    if *d == 0 {
                        return Err(GeometryError::ZeroDenominator(entry.label.clone()));
                    }
                    coeffs.push(BigRational::new(BigInt::from(*n), BigInt::from(*d)));
                }
                let coeffs: [BigRational; 4] = coeffs.try_into().expect("four coefficients");
                coords.push(QuadScalar::from_coeffs(coeffs));
            }
            vectors.push(ExactVector::new(entry.label, coords)?);
        }
        Self::new(file.dimension, vectors)
    }

    pub fn to_json(&self) -> Result<String, GeometryError> {
        let mut out = Vec::with_capacity(self.vectors.len());
        for v in &self.vectors {
            let mut entries = Vec::with_capacity(v.dim());
            for s in v.entries() {
                let mut coord = [[0i64; 2]; 4];
                for (slot, q) in coord.iter_mut().zip(s.coeffs()) {
                    let overflow = || GeometryError::CoefficientOverflow(v.label().to_string());
                    *slot = [
                        q.numer().to_i64().ok_or_else(overflow)?,
                        q.denom().to_i64().ok_or_else(overflow)?,
                    ];
                }
                entries.push(coord);
            }
            out.push(VectorEntry {
                label: v.label().to_string(),
                entries,
            });
        }
        let file = VectorSetFile {
            dimension: self.dimension,
            vectors: out,
        };
        serde_json::to_string_pretty(&file).map_err(|e| GeometryError::Malformed(e.to_string()))
    }
}

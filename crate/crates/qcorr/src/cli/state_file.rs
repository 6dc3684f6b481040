//! State files: a flat JSON map from exponent bitstrings to coefficients.
//!
//! ```json
//! { "n": 1, "10": 0.3, "01": 0.2, "11": 0.1 }
//! ```
//!
//! Missing entries are zero; the identity entry may be omitted (implied 1).
//! Keys other than `"n"` and bitstrings of length 2n are rejected.

use serde_json::Value;

use crate::bell_state::CorrelationTensor;
use crate::error::{Error, Result};
use crate::pauli_algebra::ExponentVector;

#[derive(Debug, Clone)]
pub struct StateFile {
    pub n: usize,
    pub coefficients: Vec<(ExponentVector, f64)>,
}

impl StateFile {
    pub fn parse(text: &str) -> Result<Self> {
        let value: Value = serde_json::from_str(text)
            .map_err(|e| Error::InvalidArgument(format!("state file is not valid JSON: {e}")))?;
        let map = value
            .as_object()
            .ok_or_else(|| Error::InvalidArgument("state file must be a JSON object".into()))?;

        let n = match map.get("n") {
            Some(Value::Number(num)) => num
                .as_u64()
                .filter(|&v| v >= 1)
                .ok_or_else(|| Error::InvalidArgument("\"n\" must be a positive integer".into()))?
                as usize,
            Some(other) => {
                return Err(Error::InvalidArgument(format!(
                    "\"n\" must be a positive integer, got {other}"
                )))
            }
            None => return Err(Error::InvalidArgument("state file is missing \"n\"".into())),
        };

        let mut coefficients = Vec::new();
        for (key, value) in map {
            if key == "n" {
                continue;
            }
            if key.len() != 2 * n || !key.chars().all(|c| c == '0' || c == '1') {
                return Err(Error::InvalidArgument(format!(
                    "unknown key {key:?}: expected \"n\" or a {}-bit string",
                    2 * n
                )));
            }
            let coeff = value.as_f64().ok_or_else(|| {
                Error::InvalidArgument(format!("coefficient for {key:?} must be a number"))
            })?;
            coefficients.push((ExponentVector::from_bitstring(key)?, coeff));
        }
        Ok(Self { n, coefficients })
    }

    pub fn to_tensor(&self) -> Result<CorrelationTensor<f64>> {
        CorrelationTensor::from_entries(self.n, &self.coefficients)
    }
}

//! Formula-versus-oracle comparison reports and their JSON / CSV forms.

use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::Mode;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Mismatch {
    pub m: usize,
    pub formula: i64,
    pub brute: i64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Elapsed {
    pub formula: u64,
    pub brute: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub disc: i64,
    pub form: String,
    pub mode: Mode,
    #[serde(rename = "N")]
    pub n: usize,
    pub coeffs_formula: Vec<i64>,
    pub coeffs_brute: Vec<i64>,
    pub mismatches: Vec<Mismatch>,
    /// Wall-clock milliseconds per side; the only field that varies between runs.
    pub elapsed_ms: Elapsed,
}

impl VerificationReport {
    pub fn new(disc: i64, form: String, mode: Mode, formula: Vec<i64>, brute: Vec<i64>, elapsed_ms: Elapsed) -> Self {
        let mismatches = formula
            .iter()
            .zip(&brute)
            .enumerate()
            .filter(|(_, (f, b))| f != b)
            .map(|(i, (&formula, &brute))| Mismatch { m: i + 1, formula, brute })
            .collect();
        VerificationReport { disc, form, mode, n: formula.len(), coeffs_formula: formula, coeffs_brute: brute, mismatches, elapsed_ms }
    }

    pub fn passed(&self) -> bool {
        self.mismatches.is_empty() && self.coeffs_formula.len() == self.coeffs_brute.len()
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("m,a_formula,a_brute,match\n");
        for (i, (f, b)) in self.coeffs_formula.iter().zip(&self.coeffs_brute).enumerate() {
            out.push_str(&format!("{},{f},{b},{}\n", i + 1, u8::from(f == b)));
        }
        out
    }
}

/// Serializes with object keys in sorted order, so that parsing and
/// re-emitting yields identical bytes.
pub fn canonical_json<T: Serialize>(value: &T) -> Result<String> {
    let v: Value = serde_json::to_value(value).map_err(|e| Error::Inconsistent(e.to_string()))?;
    serde_json::to_string_pretty(&v).map_err(|e| Error::Inconsistent(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> VerificationReport {
        VerificationReport::new(-23, "(2,1,3)".into(), Mode::Gl, vec![1, 2, 3], vec![1, 2, 4], Elapsed { formula: 3, brute: 5 })
    }

    #[test]
    fn mismatches_listed() {
        let r = sample();
        assert_eq!(r.mismatches, vec![Mismatch { m: 3, formula: 3, brute: 4 }]);
        assert!(!r.passed());
    }

    #[test]
    fn json_round_trip() {
        let text = canonical_json(&sample()).unwrap();
        let back: VerificationReport = serde_json::from_str(&text).unwrap();
        assert_eq!(back, sample());
        let reparsed: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string_pretty(&reparsed).unwrap(), text);
        let keys: Vec<&str> = text.lines().filter(|l| l.starts_with("  \"")).map(|l| l.trim().split('"').nth(1).unwrap()).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
    }

    #[test]
    fn csv_columns() {
        let csv = sample().to_csv();
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines[0], "m,a_formula,a_brute,match");
        assert_eq!(lines[3], "3,3,4,0");
    }
}

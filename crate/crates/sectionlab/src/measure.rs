use serde::{Deserialize, Serialize};
use std::fmt;
use std::str::FromStr;

/// Scalar field of a matrix or subspace.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Real => write!(f, "real"),
            Field::Complex => write!(f, "complex"),
        }
    }
}

impl FromStr for Field {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "real" | "r" => Ok(Field::Real),
            "complex" | "c" => Ok(Field::Complex),
            other => Err(format!("unknown field '{other}' (expected real|complex)")),
        }
    }
}

/// Underlying measure on the N coordinates.
///
/// `Counting` is the plain ℓ_p sum. `Normalized` averages: the p-th powers
/// are divided by N before the 1/p root, so the all-ones vector has norm 1
/// for every p. The choice matters because the extremal comparison
/// constants between ℓ_p and ℓ₂ shift by N^{1/p−1/2} between the two
/// conventions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Measure {
    Counting,
    Normalized,
}

impl Measure {
    /// Factor mapping a counting-measure comparison constant
    /// λ = extremum of ‖x‖_p over the counting ℓ₂ unit sphere
    /// to the same constant expressed in this measure, where *both*
    /// norms are taken w.r.t. the measure. Equals N^{1/2−1/p} for the
    /// normalized measure and 1 for counting.
    pub fn lambda_scale(self, n: usize, p: f64) -> f64 {
        match self {
            Measure::Counting => 1.0,
            Measure::Normalized => (n as f64).powf(0.5 - 1.0 / p),
        }
    }

    /// Scale applied to a counting-unit ℓ₂ witness vector so that it has
    /// unit ℓ₂ norm under this measure (√N for the normalized measure).
    pub fn witness_scale(self, n: usize) -> f64 {
        match self {
            Measure::Counting => 1.0,
            Measure::Normalized => (n as f64).sqrt(),
        }
    }
}

impl fmt::Display for Measure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Measure::Counting => write!(f, "counting"),
            Measure::Normalized => write!(f, "normalized"),
        }
    }
}

impl FromStr for Measure {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "counting" => Ok(Measure::Counting),
            "normalized" => Ok(Measure::Normalized),
            other => Err(format!(
                "unknown measure '{other}' (expected counting|normalized)"
            )),
        }
    }
}

//! Born distributions and the statistics taken of them: total variation
//! distance to the constant distribution and diagonal-observable (statistical
//! query) expectation values.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::{Error, Result};

/// Tolerance on `Σ P(x) = 1` for a distribution read off a unitary column.
const NORMALIZATION_TOL: f64 = 1e-10;

/// A Born distribution: `d` probabilities summing to one.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BornDist {
    probs: Vec<f64>,
}

impl BornDist {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(Error::Domain("empty distribution".into()));
        }
        if probs.iter().any(|&p| !(0.0..=1.0).contains(&p)) {
            return Err(Error::Invariant(
                "Born probabilities must lie in [0, 1]".into(),
            ));
        }
        let sum: f64 = probs.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::Invariant(format!(
                "Born probabilities sum to {sum}, expected 1"
            )));
        }
        Ok(Self { probs })
    }

    pub fn dim(&self) -> usize {
        self.probs.len()
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }
}

/// A bounded diagonal observable `Φ = Σ φ(x) |x⟩⟨x|` with `φ(x) ∈ [-1, 1]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiagObservable {
    values: Vec<f64>,
}

impl DiagObservable {
    pub fn new(values: Vec<f64>) -> Result<Self> {
        if values.iter().any(|&v| !(-1.0..=1.0).contains(&v)) {
            return Err(Error::Domain(
                "diagonal observable values must lie in [-1, 1]".into(),
            ));
        }
        Ok(Self { values })
    }

    /// `φ ≡ c`.
    pub fn constant(dim: usize, c: f64) -> Result<Self> {
        Self::new(vec![c; dim])
    }

    /// `+1` on the first half of the basis, `-1` on the rest.
    pub fn sign_split(dim: usize) -> Self {
        Self {
            values: (0..dim)
                .map(|x| if x < dim / 2 { 1.0 } else { -1.0 })
                .collect(),
        }
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.values.len() as f64
    }
}

/// The Born distribution of the `ref_index` column: `P(x) = |V[x][ref]|²`.
pub fn born_distribution(v: &ComplexMatrix, ref_index: usize) -> Result<BornDist> {
    if ref_index >= v.dim() {
        return Err(Error::Domain(format!(
            "reference index {ref_index} out of range for dimension {}",
            v.dim()
        )));
    }
    let probs: Vec<f64> = (0..v.dim()).map(|x| v[(x, ref_index)].norm_sqr()).collect();
    BornDist::new(probs)
}

/// Same as [`born_distribution`] but from a bare column vector.
pub fn born_from_column(col: &[Complex64]) -> Result<BornDist> {
    BornDist::new(col.iter().map(|z| z.norm_sqr()).collect())
}

/// `½ Σ_x |P(x) - 1/d|`, the total variation distance to the constant
/// distribution on `d` outcomes. Lies in `[0, 1 - 1/d]`.
pub fn tvd_to_uniform(p: &BornDist) -> f64 {
    let d = p.dim() as f64;
    0.5 * p.probs.iter().map(|&x| (x - 1.0 / d).abs()).sum::<f64>()
}

/// The exact statistical-query value `⟨0|V† Φ V|0⟩ = Σ_x φ(x) |⟨x|V|0⟩|²`.
pub fn sq_value(v: &ComplexMatrix, phi: &DiagObservable) -> Result<f64> {
    if phi.values.len() != v.dim() {
        return Err(Error::DimMismatch(format!(
            "observable of length {} against dimension {}",
            phi.values.len(),
            v.dim()
        )));
    }
    let p = born_distribution(v, 0)?;
    Ok(p.probs
        .iter()
        .zip(&phi.values)
        .map(|(&px, &fx)| fx * px)
        .sum())
}

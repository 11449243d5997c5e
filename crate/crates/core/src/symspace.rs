//! Compact symmetric spaces: the involution catalog for the seven Cartan
//! families, the symplectic form and its index-partner map, and the coset
//! sampler `V = σ(g)⁻¹ g` with `g` Haar on the parent group.
//!
//! Parent groups: DIII and BDI sit over the orthogonal group, every other
//! sampled family over the unitary group. CI would need a Haar sampler on
//! the symplectic group, which this crate does not provide; its involution
//! is still in the catalog.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::rng::RngStream;
use crate::sampling::{sample_haar, GroupFamily, GroupSpec};
use crate::{Error, Result};

/// Cartan family label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SpaceFamily {
    AI,
    AII,
    AIII,
    BDI,
    DIII,
    CI,
    CII,
}

impl SpaceFamily {
    pub fn name(self) -> &'static str {
        match self {
            SpaceFamily::AI => "AI",
            SpaceFamily::AII => "AII",
            SpaceFamily::AIII => "AIII",
            SpaceFamily::BDI => "BDI",
            SpaceFamily::DIII => "DIII",
            SpaceFamily::CI => "CI",
            SpaceFamily::CII => "CII",
        }
    }
}

/// A validated symmetric-space choice: family, Hilbert-space dimension, and
/// the `(p, q)` split where the involution needs one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SpaceSpec {
    family: SpaceFamily,
    dim: usize,
    split: Option<(usize, usize)>,
}

impl SpaceSpec {
    pub fn new(family: SpaceFamily, dim: usize, split: Option<(usize, usize)>) -> Result<Self> {
        if dim < 4 {
            return Err(Error::InvalidSpec(format!(
                "space dimension must be at least 4, got {dim}"
            )));
        }
        match family {
            SpaceFamily::AII | SpaceFamily::DIII | SpaceFamily::CI => {
                if !dim.is_multiple_of(2) {
                    return Err(Error::InvalidSpec(format!(
                        "{} requires even dimension, got {dim}",
                        family.name()
                    )));
                }
            }
            SpaceFamily::AIII | SpaceFamily::BDI => {
                let (p, q) = split.ok_or_else(|| {
                    Error::InvalidSpec(format!("{} requires a (p, q) split", family.name()))
                })?;
                if p == 0 || q == 0 || p + q != dim {
                    return Err(Error::InvalidSpec(format!(
                        "{} requires p + q = dim with p, q ≥ 1; got ({p}, {q}) for dim {dim}",
                        family.name()
                    )));
                }
            }
            SpaceFamily::CII => {
                if !dim.is_multiple_of(2) {
                    return Err(Error::InvalidSpec(format!(
                        "CII requires even dimension, got {dim}"
                    )));
                }
                let (p, q) = split
                    .ok_or_else(|| Error::InvalidSpec("CII requires a (p, q) split".into()))?;
                if p == 0 || q == 0 || 2 * (p + q) != dim {
                    return Err(Error::InvalidSpec(format!(
                        "CII requires 2(p + q) = dim with p, q ≥ 1; got ({p}, {q}) for dim {dim}"
                    )));
                }
            }
            SpaceFamily::AI => {}
        }
        let split = match family {
            SpaceFamily::AIII | SpaceFamily::BDI | SpaceFamily::CII => split,
            _ => None,
        };
        Ok(Self { family, dim, split })
    }

    pub fn family(&self) -> SpaceFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn split(&self) -> Option<(usize, usize)> {
        self.split
    }

    /// The group whose Haar measure drives the coset sampler.
    pub fn parent_group(&self) -> Result<GroupSpec> {
        let family = match self.family {
            SpaceFamily::DIII | SpaceFamily::BDI => GroupFamily::Orthogonal,
            SpaceFamily::CI => {
                return Err(Error::Unsupported(
                    "CI needs a symplectic-group Haar sampler, which is not provided".into(),
                ))
            }
            _ => GroupFamily::Unitary,
        };
        GroupSpec::new(family, self.dim)
    }
}

/// The canonical symplectic form in block convention:
/// `J = [[0, 1], [-1, 0]]` with `d/2 × d/2` identity blocks.
///
/// Satisfies `Jᵀ = -J`, `JᵀJ = 1`, and `J² = -1` exactly in the stored
/// 0/±1 entries.
pub fn build_j(d: usize) -> Result<ComplexMatrix> {
    if !d.is_multiple_of(2) || d < 2 {
        return Err(Error::Domain(format!(
            "symplectic form needs positive even dimension, got {d}"
        )));
    }
    let half = d / 2;
    let mut j = ComplexMatrix::zeros(d);
    for i in 0..half {
        j[(i, i + half)] = Complex64::new(1.0, 0.0);
        j[(i + half, i)] = Complex64::new(-1.0, 0.0);
    }
    Ok(j)
}

/// The index partner under the block form: `e_xᵀ J = sign · e_{x'}ᵀ`.
pub fn partner_index(x: usize, d: usize) -> Result<(usize, i32)> {
    if !d.is_multiple_of(2) || d < 2 {
        return Err(Error::Domain(format!(
            "partner map needs positive even dimension, got {d}"
        )));
    }
    if x >= d {
        return Err(Error::Domain(format!(
            "index {x} out of range for dimension {d}"
        )));
    }
    let half = d / 2;
    Ok(if x < half {
        (x + half, 1)
    } else {
        (x - half, -1)
    })
}

/// The Cartan involution of the family, applied to `g`.
///
/// AI: entrywise conjugation. AII: `J g* Jᵀ`. AIII/BDI: `I_{p,q} g I_{p,q}`.
/// DIII/CI: `J g Jᵀ`. CII: `K_{p,q} g K_{p,q}`.
///
/// The conjugating matrices are signed permutations, so the products are
/// applied as entry maps: `(J A Jᵀ)[i][j] = s_i s_j A[i'][j']` and
/// `(I A I)[i][j] = ε_i ε_j A[i][j]`. Entry for entry this matches the
/// literal matrix product exactly (the skipped terms are exact zeros).
pub fn apply_involution(spec: &SpaceSpec, g: &ComplexMatrix) -> Result<ComplexMatrix> {
    if g.dim() != spec.dim() {
        return Err(Error::DimMismatch(format!(
            "involution for dim {} applied to a {}x{} matrix",
            spec.dim(),
            g.dim(),
            g.dim()
        )));
    }
    let d = spec.dim();
    match spec.family {
        SpaceFamily::AI => Ok(g.conj()),
        SpaceFamily::AII => {
            let half = d / 2;
            Ok(ComplexMatrix::from_fn(d, |i, j| {
                let (ip, si) = if i < half {
                    (i + half, 1.0)
                } else {
                    (i - half, -1.0)
                };
                let (jp, sj) = if j < half {
                    (j + half, 1.0)
                } else {
                    (j - half, -1.0)
                };
                g[(ip, jp)].conj() * (si * sj)
            }))
        }
        SpaceFamily::DIII | SpaceFamily::CI => {
            let half = d / 2;
            Ok(ComplexMatrix::from_fn(d, |i, j| {
                let (ip, si) = if i < half {
                    (i + half, 1.0)
                } else {
                    (i - half, -1.0)
                };
                let (jp, sj) = if j < half {
                    (j + half, 1.0)
                } else {
                    (j - half, -1.0)
                };
                g[(ip, jp)] * (si * sj)
            }))
        }
        SpaceFamily::AIII | SpaceFamily::BDI => {
            let (p, _) = spec.split.expect("validated at construction");
            let sign = |k: usize| if k < p { 1.0 } else { -1.0 };
            Ok(ComplexMatrix::from_fn(d, |i, j| {
                g[(i, j)] * (sign(i) * sign(j))
            }))
        }
        SpaceFamily::CII => {
            let (p, q) = spec.split.expect("validated at construction");
            let n = p + q;
            let sign = |k: usize| if (k % n) < p { 1.0 } else { -1.0 };
            Ok(ComplexMatrix::from_fn(d, |i, j| {
                g[(i, j)] * (sign(i) * sign(j))
            }))
        }
    }
}

/// A sample from the invariant measure on the coset space: draw `g` Haar on
/// the parent group and return `V = σ(g)⁻¹ g = σ(g)† g`.
///
/// The output satisfies `σ(V) = V†`; for AI additionally `Vᵀ = V`, and for
/// AII/DIII the partner entry `⟨e_{0'}|V|e_0⟩` vanishes identically.
pub fn sample_space(spec: &SpaceSpec, rng: &mut RngStream) -> Result<ComplexMatrix> {
    let g = sample_haar(&spec.parent_group()?, rng);
    apply_involution(spec, &g)?.adjoint().mul(&g)
}

/// First column of [`sample_space`] for the same stream state, without
/// forming the full product. Bit-identical to `sample_space(..).column(0)`.
pub fn sample_space_column(spec: &SpaceSpec, rng: &mut RngStream) -> Result<Vec<Complex64>> {
    let g = sample_haar(&spec.parent_group()?, rng);
    let col0 = g.column(0);
    apply_involution(spec, &g)?.adjoint().matvec(&col0)
}

//! Dense square complex matrices.
//!
//! A thin row-major container with exactly the operations the samplers and
//! verification harness need: products, adjoints, involution plumbing, and
//! the Frobenius-norm diagnostics used by the unitarity invariants.

use num_complex::Complex64;

use crate::{Error, Result};

/// A `d × d` complex matrix, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexMatrix {
    dim: usize,
    data: Vec<Complex64>,
}

impl ComplexMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![Complex64::new(0.0, 0.0); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn from_fn(dim: usize, mut f: impl FnMut(usize, usize) -> Complex64) -> Self {
        let mut m = Self::zeros(dim);
        for i in 0..dim {
            for j in 0..dim {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    /// Rank-one projector `|k⟩⟨k|`.
    pub fn basis_projector(dim: usize, k: usize) -> Self {
        let mut m = Self::zeros(dim);
        m[(k, k)] = Complex64::new(1.0, 0.0);
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn column(&self, j: usize) -> Vec<Complex64> {
        (0..self.dim).map(|i| self[(i, j)]).collect()
    }

    /// `self * rhs`; inner sums run over `k` in ascending order so the
    /// result is bit-identical to [`Self::matvec`] applied column-wise.
    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        let d = self.dim;
        let mut out = Self::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                let lhs_row = i * d;
                let rhs_row = k * d;
                for j in 0..d {
                    out.data[lhs_row + j] += a * rhs.data[rhs_row + j];
                }
            }
        }
        Ok(out)
    }

    /// Matrix–vector product with the same summation order as [`Self::mul`].
    pub fn matvec(&self, v: &[Complex64]) -> Result<Vec<Complex64>> {
        if v.len() != self.dim {
            return Err(Error::DimMismatch(format!(
                "matvec: matrix dim {} vs vector len {}",
                self.dim,
                v.len()
            )));
        }
        let d = self.dim;
        let mut out = vec![Complex64::new(0.0, 0.0); d];
        for (k, &vk) in v.iter().enumerate() {
            if vk == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (o, row) in out.iter_mut().zip(self.data.chunks_exact(d)) {
                *o += row[k] * vk;
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)])
    }

    pub fn conj(&self) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|z| z.conj()).collect(),
        }
    }

    pub fn adjoint(&self) -> Self {
        Self::from_fn(self.dim, |i, j| self[(j, i)].conj())
    }

    pub fn add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(Complex64, Complex64) -> Complex64) -> Result<Self> {
        if self.dim != rhs.dim {
            return Err(Error::DimMismatch(format!(
                "element-wise op on {}x{} and {}x{}",
                self.dim, self.dim, rhs.dim, rhs.dim
            )));
        }
        Ok(Self {
            dim: self.dim,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(&a, &b)| f(a, b))
                .collect(),
        })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&z| z * s).collect(),
        }
    }

    pub fn trace(&self) -> Complex64 {
        (0..self.dim).map(|i| self[(i, i)]).sum()
    }

    pub fn frobenius_norm(&self) -> f64 {
        self.data.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn max_imag_abs(&self) -> f64 {
        self.data.iter().fold(0.0, |m, z| m.max(z.im.abs()))
    }

    /// `‖M†M − 1‖_F`, the defect used by the unitarity invariant.
    pub fn unitarity_defect(&self) -> f64 {
        let gram = self.adjoint().mul(self).expect("same dim");
        gram.sub(&Self::identity(self.dim))
            .expect("same dim")
            .frobenius_norm()
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }
}

impl std::ops::Index<(usize, usize)> for ComplexMatrix {
    type Output = Complex64;
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.dim + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for ComplexMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.dim + j]
    }
}

//! Haar sampling on the unitary and orthogonal groups.
//!
//! A Haar matrix is obtained by modified Gram–Schmidt on an i.i.d. Gaussian
//! matrix. Normalizing each pivot to a positive real norm is exactly the QR
//! decomposition with the diagonal of `R` forced positive — the phase (sign,
//! in the orthogonal case) correction without which plain QR output is not
//! Haar distributed.

use num_complex::Complex64;

use crate::matrix::ComplexMatrix;
use crate::rng::RngStream;
use crate::{Error, Result};

/// Guard for the measure-zero event of a degenerate Gaussian draw.
const DEGENERATE_NORM: f64 = 1e-300;

/// Scalar field of the Gaussian draws.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Field {
    Real,
    Complex,
}

/// One of the two classical compact groups with samplers in this crate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupFamily {
    Unitary,
    Orthogonal,
}

impl GroupFamily {
    pub fn field(self) -> Field {
        match self {
            GroupFamily::Unitary => Field::Complex,
            GroupFamily::Orthogonal => Field::Real,
        }
    }
}

/// A validated group choice: family plus dimension `d ≥ 4`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct GroupSpec {
    family: GroupFamily,
    dim: usize,
}

impl GroupSpec {
    pub fn new(family: GroupFamily, dim: usize) -> Result<Self> {
        if dim < 4 {
            return Err(Error::InvalidSpec(format!(
                "group dimension must be at least 4, got {dim}"
            )));
        }
        Ok(Self { family, dim })
    }

    pub fn family(&self) -> GroupFamily {
        self.family
    }

    pub fn dim(&self) -> usize {
        self.dim
    }
}

/// A vector of i.i.d. standard normals over the requested field.
///
/// Complex entries have independent real and imaginary parts of variance
/// one half each, so `E|g_j|² = 1` in both fields.
pub fn sample_gaussian_vector(
    d: usize,
    field: Field,
    rng: &mut RngStream,
) -> Result<Vec<Complex64>> {
    if d == 0 {
        return Err(Error::Domain(
            "gaussian vector length must be positive".into(),
        ));
    }
    Ok(match field {
        Field::Real => {
            let mut buf = vec![0.0f64; d];
            rng.fill_gaussian(&mut buf);
            buf.into_iter().map(|x| Complex64::new(x, 0.0)).collect()
        }
        Field::Complex => (0..d)
            .map(|_| {
                let (re, im) = rng.next_gaussian_pair();
                Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
            })
            .collect(),
    })
}

/// A Haar-distributed element of the chosen group.
///
/// Orthogonal samples are returned as complex matrices whose imaginary
/// parts are exactly zero.
pub fn sample_haar(spec: &GroupSpec, rng: &mut RngStream) -> ComplexMatrix {
    match spec.family {
        GroupFamily::Unitary => haar_complex(spec.dim, rng),
        GroupFamily::Orthogonal => haar_real(spec.dim, rng),
    }
}

fn haar_complex(d: usize, rng: &mut RngStream) -> ComplexMatrix {
    // Columns live contiguously in one buffer; column j is orthogonalized
    // in place against the finished block to its left.
    let mut cols = vec![Complex64::new(0.0, 0.0); d * d];
    for j in 0..d {
        let (done, rest) = cols.split_at_mut(j * d);
        let v = &mut rest[..d];
        loop {
            for entry in v.iter_mut() {
                let (re, im) = rng.next_gaussian_pair();
                *entry = Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2;
            }
            for q in done.chunks_exact(d) {
                let r: Complex64 = q
                    .iter()
                    .zip(v.iter())
                    .map(|(&qi, &vi)| qi.conj() * vi)
                    .sum();
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= r * qi;
                }
            }
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > DEGENERATE_NORM {
                let inv = 1.0 / norm;
                for vi in v.iter_mut() {
                    *vi *= inv;
                }
                break;
            }
        }
    }
    ComplexMatrix::from_fn(d, |i, j| cols[j * d + i])
}

fn haar_real(d: usize, rng: &mut RngStream) -> ComplexMatrix {
    let mut cols = vec![0.0f64; d * d];
    for j in 0..d {
        let (done, rest) = cols.split_at_mut(j * d);
        let v = &mut rest[..d];
        loop {
            rng.fill_gaussian(v);
            for q in done.chunks_exact(d) {
                let r: f64 = q.iter().zip(v.iter()).map(|(&qi, &vi)| qi * vi).sum();
                for (vi, &qi) in v.iter_mut().zip(q) {
                    *vi -= r * qi;
                }
            }
            let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > DEGENERATE_NORM {
                let inv = 1.0 / norm;
                for vi in v.iter_mut() {
                    *vi *= inv;
                }
                break;
            }
        }
    }
    ComplexMatrix::from_fn(d, |i, j| Complex64::new(cols[j * d + i], 0.0))
}

/// First column of [`sample_haar`] for the same stream state, without
/// generating the columns the caller does not need. The first Gram–Schmidt
/// pivot is untouched by the later ones, so this is bit-identical to
/// `sample_haar(spec).column(0)`.
pub fn haar_first_column(spec: &GroupSpec, rng: &mut RngStream) -> Vec<Complex64> {
    let d = spec.dim;
    match spec.family {
        GroupFamily::Unitary => loop {
            let mut v = sample_gaussian_vector(d, Field::Complex, rng).expect("d > 0");
            let norm = v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
            if norm > DEGENERATE_NORM {
                let inv = 1.0 / norm;
                for vi in &mut v {
                    *vi *= inv;
                }
                return v;
            }
        },
        GroupFamily::Orthogonal => loop {
            let mut buf = vec![0.0f64; d];
            rng.fill_gaussian(&mut buf);
            let norm = buf.iter().map(|x| x * x).sum::<f64>().sqrt();
            if norm > DEGENERATE_NORM {
                let inv = 1.0 / norm;
                for x in &mut buf {
                    *x *= inv;
                }
                return buf.into_iter().map(|x| Complex64::new(x, 0.0)).collect();
            }
        },
    }
}

/// Two jointly Haar-distributed columns, by the Gram–Schmidt recipe:
/// normalize the first draw, orthogonalize the second against it.
pub fn sample_two_columns(
    d: usize,
    field: Field,
    rng: &mut RngStream,
) -> Result<(Vec<Complex64>, Vec<Complex64>)> {
    if d < 2 {
        return Err(Error::Domain(format!(
            "two joint columns need dimension at least 2, got {d}"
        )));
    }
    let mut a = sample_gaussian_vector(d, field, rng)?;
    let norm = a.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    let inv = 1.0 / norm;
    for ai in &mut a {
        *ai *= inv;
    }
    loop {
        let g2 = sample_gaussian_vector(d, field, rng)?;
        let overlap: Complex64 = a.iter().zip(&g2).map(|(&ai, &gi)| ai.conj() * gi).sum();
        let mut b: Vec<Complex64> = g2
            .iter()
            .zip(&a)
            .map(|(&gi, &ai)| gi - overlap * ai)
            .collect();
        let norm = b.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        if norm > DEGENERATE_NORM {
            let inv = 1.0 / norm;
            for bi in &mut b {
                *bi *= inv;
            }
            return Ok((a, b));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn group_spec_enforces_minimum_dimension() {
        assert!(GroupSpec::new(GroupFamily::Unitary, 3).is_err());
        assert!(GroupSpec::new(GroupFamily::Unitary, 4).is_ok());
        assert!(sample_gaussian_vector(0, Field::Real, &mut RngStream::new(0, 0)).is_err());
    }

    #[test]
    fn gaussian_vector_norms_have_the_right_mean() {
        // E ||g||^2 = d in both fields.
        let trials = 100_000;
        let d = 8;
        for field in [Field::Complex, Field::Real] {
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for t in 0..trials {
                let mut rng = RngStream::new(11, t);
                let g = sample_gaussian_vector(d, field, &mut rng).unwrap();
                let n2 = g.iter().map(|z| z.norm_sqr()).sum::<f64>();
                sum += n2;
                sum_sq += n2 * n2;
            }
            let n = trials as f64;
            let mean = sum / n;
            let stderr = ((sum_sq / n - mean * mean) / n).sqrt();
            assert!(
                (mean - d as f64).abs() < 3.0 * stderr,
                "{field:?}: mean {mean} stderr {stderr}"
            );
        }
    }

    #[test]
    fn first_entry_second_moment() {
        // E |g_0|^2 = 1 for real draws.
        let trials = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for t in 0..trials {
            let mut rng = RngStream::new(5, t);
            let g = sample_gaussian_vector(4, Field::Real, &mut rng).unwrap();
            let v = g[0].norm_sqr();
            sum += v;
            sum_sq += v * v;
        }
        let n = trials as f64;
        let mean = sum / n;
        let stderr = ((sum_sq / n - mean * mean) / n).sqrt();
        assert!((mean - 1.0).abs() < 3.0 * stderr, "mean {mean}");
    }

    #[test]
    fn draws_are_deterministic_in_the_key() {
        let spec = GroupSpec::new(GroupFamily::Unitary, 6).unwrap();
        let a = sample_haar(&spec, &mut RngStream::new(99, 4));
        let b = sample_haar(&spec, &mut RngStream::new(99, 4));
        assert_eq!(a.data(), b.data());
        let g1 = sample_gaussian_vector(9, Field::Complex, &mut RngStream::new(3, 1)).unwrap();
        let g2 = sample_gaussian_vector(9, Field::Complex, &mut RngStream::new(3, 1)).unwrap();
        assert_eq!(g1, g2);
    }

    #[test]
    fn haar_unitary_is_unitary() {
        let spec = GroupSpec::new(GroupFamily::Unitary, 4).unwrap();
        for t in 0..50 {
            let v = sample_haar(&spec, &mut RngStream::new(1, t));
            assert!(
                v.unitarity_defect() <= 1e-12,
                "defect {}",
                v.unitarity_defect()
            );
        }
        let spec = GroupSpec::new(GroupFamily::Unitary, 32).unwrap();
        let v = sample_haar(&spec, &mut RngStream::new(1, 0));
        assert!(v.unitarity_defect() <= 1e-10 * 32.0);
    }

    #[test]
    fn orthogonal_samples_are_exactly_real() {
        let spec = GroupSpec::new(GroupFamily::Orthogonal, 8).unwrap();
        for t in 0..20 {
            let v = sample_haar(&spec, &mut RngStream::new(2, t));
            assert_eq!(v.max_imag_abs(), 0.0);
            assert!(v.unitarity_defect() <= 1e-12);
        }
    }

    #[test]
    fn haar_first_entry_mean_is_one_over_d() {
        // Exchangeability forces E |V_00|^2 = 1/d.
        let d = 4;
        let spec = GroupSpec::new(GroupFamily::Unitary, d).unwrap();
        let trials = 100_000;
        let mut sum = 0.0;
        let mut sum_sq = 0.0;
        for t in 0..trials {
            let v = sample_haar(&spec, &mut RngStream::new(7, t));
            let p = v[(0, 0)].norm_sqr();
            sum += p;
            sum_sq += p * p;
        }
        let n = trials as f64;
        let mean = sum / n;
        let stderr = ((sum_sq / n - mean * mean) / n).sqrt();
        assert!(
            (mean - 1.0 / d as f64).abs() < 3.0 * stderr,
            "mean {mean} stderr {stderr}"
        );
    }

    #[test]
    fn first_column_shortcut_is_bit_identical() {
        for family in [GroupFamily::Unitary, GroupFamily::Orthogonal] {
            let spec = GroupSpec::new(family, 7).unwrap();
            let full = sample_haar(&spec, &mut RngStream::new(55, 3)).column(0);
            let short = haar_first_column(&spec, &mut RngStream::new(55, 3));
            assert_eq!(full, short, "{family:?}");
        }
    }

    #[test]
    fn two_columns_are_orthonormal() {
        for t in 0..200 {
            let mut rng = RngStream::new(13, t);
            let (a, b) = sample_two_columns(8, Field::Complex, &mut rng).unwrap();
            let na = a.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let nb = b.iter().map(|z| z.norm_sqr()).sum::<f64>();
            let dot: num_complex::Complex64 =
                a.iter().zip(&b).map(|(&ai, &bi)| ai.conj() * bi).sum();
            assert!((na - 1.0).abs() < 1e-12);
            assert!((nb - 1.0).abs() < 1e-12);
            assert!(dot.norm() <= 1e-12, "overlap {}", dot.norm());
        }
    }
}

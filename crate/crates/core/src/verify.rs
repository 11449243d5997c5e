//! Monte Carlo verification harness: empirical expected TVD, empirical
//! twirls, one-sample Kolmogorov–Smirnov law checks, concentration tails,
//! and TVD-ball fraction estimates.
//!
//! Determinism contract: trial `i` of a run draws from
//! `RngStream::new(master_seed, i)`, results are collected in trial order,
//! and every reduction is a sequential compensated sum over that order —
//! so reports are bit-identical for any rayon worker count.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::born::{born_from_column, tvd_to_uniform};
use crate::closedform::{twirl_closed_form, EnsembleFamily, EnsembleId};
use crate::matrix::ComplexMatrix;
use crate::rng::RngStream;
use crate::sampling::{haar_first_column, GroupFamily, GroupSpec};
use crate::special::{beta_cdf, BetaParams};
use crate::symspace::{partner_index, sample_space, sample_space_column, SpaceFamily, SpaceSpec};
use crate::{Error, Result};

/// Significance level of every KS check in the catalog.
pub const KS_ALPHA: f64 = 1e-3;

/// Absolute tolerance for the algebraically-zero partner entries.
pub const DEGENERATE_TOL: f64 = 1e-12;

/// Trials per work unit handed to rayon; fixed so the reduction tree does
/// not depend on the worker count.
const CHUNK: u64 = 512;

/// A Monte Carlo estimate with its provenance.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct McReport {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub master_seed: u64,
    pub wall_time_s: f64,
}

/// Entry classes with an exact distribution law in the catalog.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EntryClass {
    GroupEntry,
    DotProduct,
    AiDiagonal,
    AiiGeneric,
    AiiPartner,
    DiiiGeneric,
    DiiiPartner,
}

impl EntryClass {
    pub fn name(self) -> &'static str {
        match self {
            EntryClass::GroupEntry => "group_entry",
            EntryClass::DotProduct => "dot_product",
            EntryClass::AiDiagonal => "ai_diagonal",
            EntryClass::AiiGeneric => "aii_generic",
            EntryClass::AiiPartner => "aii_partner",
            EntryClass::DiiiGeneric => "diii_generic",
            EntryClass::DiiiPartner => "diii_partner",
        }
    }
}

/// The exact law an entry statistic follows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Law {
    Beta(BetaParams),
    DegenerateAtZero,
}

/// A catalog entry: ensemble, entry class, and the law the class follows.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LawSpec {
    ensemble: EnsembleId,
    entry_class: EntryClass,
    law: Law,
}

impl LawSpec {
    /// Look up the `(family, entry class)` pair in the catalog.
    pub fn catalog(ensemble: EnsembleId, entry_class: EntryClass) -> Result<Self> {
        let d = ensemble.dim() as f64;
        let law = match (ensemble.family(), entry_class) {
            (EnsembleFamily::Unitary, EntryClass::GroupEntry) => {
                Law::Beta(BetaParams::new(1.0, d - 1.0)?)
            }
            (EnsembleFamily::Orthogonal, EntryClass::GroupEntry) => {
                Law::Beta(BetaParams::new(0.5, (d - 1.0) / 2.0)?)
            }
            (EnsembleFamily::Unitary, EntryClass::DotProduct) => {
                Law::Beta(BetaParams::new(1.0, (d - 1.0) / 2.0)?)
            }
            (EnsembleFamily::AI, EntryClass::AiDiagonal) => {
                Law::Beta(BetaParams::new(1.0, (d - 1.0) / 2.0)?)
            }
            (EnsembleFamily::AII, EntryClass::AiiGeneric) => {
                Law::Beta(BetaParams::new(1.0, d - 2.0)?)
            }
            (EnsembleFamily::AII, EntryClass::AiiPartner) => Law::DegenerateAtZero,
            (EnsembleFamily::DIII, EntryClass::DiiiGeneric) => {
                Law::Beta(BetaParams::new(0.5, (d - 2.0) / 2.0)?)
            }
            (EnsembleFamily::DIII, EntryClass::DiiiPartner) => Law::DegenerateAtZero,
            (family, class) => {
                return Err(Error::Domain(format!(
                    "no law in the catalog for ({}, {})",
                    family.name(),
                    class.name()
                )))
            }
        };
        Ok(Self {
            ensemble,
            entry_class,
            law,
        })
    }

    pub fn ensemble(&self) -> EnsembleId {
        self.ensemble
    }

    pub fn entry_class(&self) -> EntryClass {
        self.entry_class
    }

    pub fn law(&self) -> Law {
        self.law
    }

    /// All catalog entries for one ensemble.
    pub fn all_for(ensemble: EnsembleId) -> Vec<Self> {
        use EntryClass::*;
        [
            GroupEntry,
            DotProduct,
            AiDiagonal,
            AiiGeneric,
            AiiPartner,
            DiiiGeneric,
            DiiiPartner,
        ]
        .into_iter()
        .filter_map(|class| Self::catalog(ensemble, class).ok())
        .collect()
    }
}

/// Outcome of a one-sample KS check (or of the degenerate-entry check,
/// where the statistic is the largest observed magnitude and the threshold
/// is [`DEGENERATE_TOL`]).
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct KsReport {
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
    pub trials: u64,
    pub master_seed: u64,
}

/// Empirical twirl against the closed form.
#[derive(Debug, Clone, PartialEq)]
pub struct TwirlReport {
    pub mean: ComplexMatrix,
    pub frobenius_err: f64,
    pub trials: u64,
    pub master_seed: u64,
}

/// Empirical tail probability next to its Levy-type bound.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct TailReport {
    pub t: f64,
    pub empirical: f64,
    pub stderr: f64,
    pub levy_bound: f64,
    pub trials: u64,
    pub master_seed: u64,
}

// ---- deterministic reduction helpers -----------------------------------

/// Neumaier-compensated sequential sum.
pub fn compensated_sum(xs: &[f64]) -> f64 {
    let mut sum = 0.0f64;
    let mut comp = 0.0f64;
    for &x in xs {
        let t = sum + x;
        comp += if sum.abs() >= x.abs() {
            (sum - t) + x
        } else {
            (x - t) + sum
        };
        sum = t;
    }
    sum + comp
}

fn mean_and_stderr(xs: &[f64]) -> (f64, f64) {
    let n = xs.len() as f64;
    let mean = compensated_sum(xs) / n;
    if xs.len() < 2 {
        return (mean, 0.0);
    }
    let sq: Vec<f64> = xs.iter().map(|&x| (x - mean) * (x - mean)).collect();
    let var = compensated_sum(&sq) / (n - 1.0);
    (mean, (var / n).sqrt())
}

/// Map trial indices through `f`, in parallel, into a trial-ordered vector.
fn collect_trials<T: Send>(trials: u64, f: impl Fn(u64) -> T + Sync + Send) -> Vec<T> {
    (0..trials).into_par_iter().map(f).collect()
}

// ---- per-family sampling plumbing ---------------------------------------

fn space_spec_of(e: &EnsembleId) -> Result<SpaceSpec> {
    let family = match e.family() {
        EnsembleFamily::AI => SpaceFamily::AI,
        EnsembleFamily::AII => SpaceFamily::AII,
        EnsembleFamily::DIII => SpaceFamily::DIII,
        other => {
            return Err(Error::Unsupported(format!(
                "{} is not a symmetric space",
                other.name()
            )))
        }
    };
    SpaceSpec::new(family, e.dim(), None)
}

/// One Born column of the ensemble.
///
/// The group families read off the first column of the Haar factorization
/// directly (bit-identical to `sample_haar(..).column(0)`); the symplectic
/// group shares the unitary Born statistics and delegates to the unitary
/// sampler.
fn born_column(e: &EnsembleId, rng: &mut RngStream) -> Result<Vec<Complex64>> {
    match e.family() {
        EnsembleFamily::Unitary | EnsembleFamily::Symplectic => Ok(haar_first_column(
            &GroupSpec::new(GroupFamily::Unitary, e.dim())?,
            rng,
        )),
        EnsembleFamily::Orthogonal => Ok(haar_first_column(
            &GroupSpec::new(GroupFamily::Orthogonal, e.dim())?,
            rng,
        )),
        _ => sample_space_column(&space_spec_of(e)?, rng),
    }
}

fn born_tvd(e: &EnsembleId, rng: &mut RngStream) -> Result<f64> {
    Ok(tvd_to_uniform(&born_from_column(&born_column(e, rng)?)?))
}

fn collect_tvds(e: &EnsembleId, trials: u64, seed: u64) -> Result<Vec<f64>> {
    if trials == 0 {
        return Err(Error::Domain("at least one trial required".into()));
    }
    born_tvd(e, &mut RngStream::new(seed, 0))?;
    Ok(collect_trials(trials, |i| {
        born_tvd(e, &mut RngStream::new(seed, i)).expect("validated by the probe trial")
    }))
}

// ---- public operations ---------------------------------------------------

/// Sample mean and standard error of the TVD to the constant distribution
/// over i.i.d. ensemble draws.
pub fn mc_expected_tvd(e: &EnsembleId, trials: u64, seed: u64) -> Result<McReport> {
    if trials < 100 {
        return Err(Error::Domain(format!(
            "mc_expected_tvd needs at least 100 trials, got {trials}"
        )));
    }
    let start = std::time::Instant::now();
    let tvds = collect_tvds(e, trials, seed)?;
    let (estimate, stderr) = mean_and_stderr(&tvds);
    Ok(McReport {
        estimate,
        stderr,
        trials,
        master_seed: seed,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

/// Empirical mean of `V A V†` over the symmetric space, with its Frobenius
/// distance from the closed-form twirl.
pub fn mc_twirl(e: &EnsembleId, a: &ComplexMatrix, trials: u64, seed: u64) -> Result<TwirlReport> {
    if trials < 1_000 {
        return Err(Error::Domain(format!(
            "mc_twirl needs at least 1000 trials, got {trials}"
        )));
    }
    let closed = twirl_closed_form(e, a)?;
    let spec = space_spec_of(e)?;
    let d = e.dim();

    let chunk_bounds: Vec<(u64, u64)> = (0..trials)
        .step_by(CHUNK as usize)
        .map(|lo| (lo, (lo + CHUNK).min(trials)))
        .collect();
    let chunk_sums: Vec<ComplexMatrix> = chunk_bounds
        .into_par_iter()
        .map(|(lo, hi)| {
            let mut acc = ComplexMatrix::zeros(d);
            for i in lo..hi {
                let mut rng = RngStream::new(seed, i);
                let v = sample_space(&spec, &mut rng).expect("spec validated");
                let conjugated = v
                    .mul(a)
                    .and_then(|m| m.mul(&v.adjoint()))
                    .expect("dims match");
                acc = acc.add(&conjugated).expect("dims match");
            }
            acc
        })
        .collect();

    let mut total = ComplexMatrix::zeros(d);
    for s in &chunk_sums {
        total = total.add(s)?;
    }
    let mean = total.scale(1.0 / trials as f64);
    let frobenius_err = mean.sub(&closed)?.frobenius_norm();
    Ok(TwirlReport {
        mean,
        frobenius_err,
        trials,
        master_seed: seed,
    })
}

/// The statistic a law-check trial observes.
fn entry_statistic(spec: &LawSpec, rng: &mut RngStream) -> Result<f64> {
    let e = spec.ensemble();
    let d = e.dim();
    match spec.entry_class() {
        EntryClass::GroupEntry => {
            let family = match e.family() {
                EnsembleFamily::Unitary => GroupFamily::Unitary,
                EnsembleFamily::Orthogonal => GroupFamily::Orthogonal,
                _ => unreachable!("catalog restricts group entries"),
            };
            let col = haar_first_column(&GroupSpec::new(family, d)?, rng);
            Ok(col[0].norm_sqr())
        }
        EntryClass::DotProduct => {
            let col = haar_first_column(&GroupSpec::new(GroupFamily::Unitary, d)?, rng);
            let dot: Complex64 = col.iter().map(|&z| z * z).sum();
            Ok(dot.norm_sqr())
        }
        EntryClass::AiDiagonal => {
            let col = sample_space_column(&space_spec_of(&e)?, rng)?;
            Ok(col[0].norm_sqr())
        }
        EntryClass::AiiGeneric | EntryClass::DiiiGeneric => {
            let col = sample_space_column(&space_spec_of(&e)?, rng)?;
            Ok(col[1].norm_sqr())
        }
        EntryClass::AiiPartner | EntryClass::DiiiPartner => {
            let col = sample_space_column(&space_spec_of(&e)?, rng)?;
            let (partner, _) = partner_index(0, d)?;
            Ok(col[partner].norm_sqr())
        }
    }
}

/// One-sample KS statistic of sorted samples against a cdf.
pub fn ks_statistic(samples: &mut [f64], cdf: impl Fn(f64) -> f64) -> f64 {
    samples.sort_unstable_by(f64::total_cmp);
    let n = samples.len() as f64;
    let mut d_max = 0.0f64;
    for (i, &x) in samples.iter().enumerate() {
        let f = cdf(x);
        let above = (i as f64 + 1.0) / n - f;
        let below = f - i as f64 / n;
        d_max = d_max.max(above).max(below);
    }
    d_max
}

/// Asymptotic one-sample KS acceptance threshold at level `alpha`.
pub fn ks_threshold(n: u64, alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / (2.0 * n as f64)).sqrt()
}

/// Two-sample KS statistic.
pub fn ks_two_sample(xs: &mut [f64], ys: &mut [f64]) -> f64 {
    xs.sort_unstable_by(f64::total_cmp);
    ys.sort_unstable_by(f64::total_cmp);
    let (n, m) = (xs.len(), ys.len());
    let mut i = 0;
    let mut j = 0;
    let mut d_max = 0.0f64;
    while i < n && j < m {
        let x = xs[i];
        let y = ys[j];
        if x <= y {
            i += 1;
        }
        if y <= x {
            j += 1;
        }
        let diff = (i as f64 / n as f64 - j as f64 / m as f64).abs();
        d_max = d_max.max(diff);
    }
    d_max
}

/// Asymptotic two-sample KS acceptance threshold at level `alpha`.
pub fn ks_two_sample_threshold(n: u64, m: u64, alpha: f64) -> f64 {
    let c = (-(alpha / 2.0).ln() / 2.0).sqrt();
    c * ((n + m) as f64 / (n as f64 * m as f64)).sqrt()
}

/// Check an entry law from the catalog: KS at `alpha = 1e-3` for the beta
/// laws, exact-zero check at [`DEGENERATE_TOL`] for the partner entries.
pub fn ks_law_check(spec: &LawSpec, trials: u64, seed: u64) -> Result<KsReport> {
    if trials < 1_000 {
        return Err(Error::Domain(format!(
            "ks_law_check needs at least 1000 trials, got {trials}"
        )));
    }
    entry_statistic(spec, &mut RngStream::new(seed, 0))?;
    let mut samples = collect_trials(trials, |i| {
        entry_statistic(spec, &mut RngStream::new(seed, i)).expect("validated by probe")
    });
    match spec.law() {
        Law::Beta(params) => {
            let statistic = ks_statistic(&mut samples, |x| {
                beta_cdf(x.clamp(0.0, 1.0), &params).unwrap()
            });
            let threshold = ks_threshold(trials, KS_ALPHA);
            Ok(KsReport {
                statistic,
                threshold,
                pass: statistic <= threshold,
                trials,
                master_seed: seed,
            })
        }
        Law::DegenerateAtZero => {
            let statistic = samples.iter().fold(0.0f64, |m, &x| m.max(x.abs()));
            Ok(KsReport {
                statistic,
                threshold: DEGENERATE_TOL,
                pass: statistic <= DEGENERATE_TOL,
                trials,
                master_seed: seed,
            })
        }
    }
}

/// Empirical tail `Pr[|tvd - mean| ≥ t]` next to the Levy-type bound
/// `2 exp(-(d-2) t² / 24)` (groups) or `2 exp(-(d-2) t² / 96)` (symmetric
/// spaces), both for Lipschitz constant 1.
///
/// The tail is centered at the empirical mean of the same run.
pub fn mc_tail_probability(e: &EnsembleId, t: f64, trials: u64, seed: u64) -> Result<TailReport> {
    if t < 0.0 {
        return Err(Error::Domain(format!(
            "tail threshold must be ≥ 0, got {t}"
        )));
    }
    let tvds = collect_tvds(e, trials, seed)?;
    let (mean, _) = mean_and_stderr(&tvds);
    let hits = tvds.iter().filter(|&&x| (x - mean).abs() >= t).count();
    let empirical = hits as f64 / trials as f64;
    let stderr = (empirical * (1.0 - empirical) / trials as f64).sqrt();
    let denom = if e.family().is_symmetric_space() {
        96.0
    } else {
        24.0
    };
    let levy_bound = 2.0 * (-((e.dim() as f64 - 2.0) * t * t) / denom).exp();
    Ok(TailReport {
        t,
        empirical,
        stderr,
        levy_bound,
        trials,
        master_seed: seed,
    })
}

/// Empirical fraction of draws with `tvd ≤ radius` (the TVD-ball mass
/// around the constant distribution), with a binomial standard error.
pub fn mc_ball_fraction(e: &EnsembleId, radius: f64, trials: u64, seed: u64) -> Result<McReport> {
    if radius < 0.0 {
        return Err(Error::Domain(format!(
            "ball radius must be ≥ 0, got {radius}"
        )));
    }
    let start = std::time::Instant::now();
    let tvds = collect_tvds(e, trials, seed)?;
    let hits = tvds.iter().filter(|&&x| x <= radius).count();
    let estimate = hits as f64 / trials as f64;
    let stderr = (estimate * (1.0 - estimate) / trials as f64).sqrt();
    Ok(McReport {
        estimate,
        stderr,
        trials,
        master_seed: seed,
        wall_time_s: start.elapsed().as_secs_f64(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closedform::expected_tvd;

    fn e(family: EnsembleFamily, d: usize) -> EnsembleId {
        EnsembleId::new(family, d).unwrap()
    }

    #[test]
    fn ks_statistic_trivial_cases() {
        // Perfectly placed quantiles (i - 1/2)/n against Uniform: D = 1/(2n).
        let n = 100usize;
        let mut xs: Vec<f64> = (0..n).map(|i| (i as f64 + 0.5) / n as f64).collect();
        let d = ks_statistic(&mut xs, |x| x);
        assert!((d - 1.0 / (2.0 * n as f64)).abs() < 1e-12, "{d}");

        // All-zero samples against Uniform(0,1): D = 1.
        let mut zeros = vec![0.0; 50];
        let d = ks_statistic(&mut zeros, |x| x);
        assert!((d - 1.0).abs() < 1e-12, "{d}");
    }

    #[test]
    fn ks_threshold_matches_the_formula() {
        let th = ks_threshold(100_000, KS_ALPHA);
        assert!((th - (-(5e-4f64).ln() / 2e5).sqrt()).abs() < 1e-15);
    }

    #[test]
    fn two_sample_ks_on_identical_samples_is_zero() {
        let mut xs = vec![1.0, 2.0, 3.0, 4.0];
        let mut ys = vec![4.0, 3.0, 2.0, 1.0];
        assert_eq!(ks_two_sample(&mut xs, &mut ys), 0.0);
        let mut xs = vec![1.0, 1.0, 4.0, 4.0];
        let mut ys = vec![1.0, 1.0, 1.0, 4.0];
        assert!((ks_two_sample(&mut xs, &mut ys) - 0.25).abs() < 1e-12);
    }

    #[test]
    fn catalog_hits_and_misses() {
        assert!(LawSpec::catalog(e(EnsembleFamily::Unitary, 8), EntryClass::GroupEntry).is_ok());
        assert!(LawSpec::catalog(e(EnsembleFamily::Unitary, 8), EntryClass::AiiPartner).is_err());
        assert!(
            LawSpec::catalog(e(EnsembleFamily::Symplectic, 8), EntryClass::GroupEntry).is_err()
        );
        assert_eq!(LawSpec::all_for(e(EnsembleFamily::Unitary, 8)).len(), 2);
        assert_eq!(LawSpec::all_for(e(EnsembleFamily::AII, 8)).len(), 2);
        assert_eq!(LawSpec::all_for(e(EnsembleFamily::AI, 8)).len(), 1);
    }

    #[test]
    fn mc_tvd_is_deterministic_and_agrees_with_the_closed_form() {
        let id = e(EnsembleFamily::AII, 8);
        let a = mc_expected_tvd(&id, 2_000, 11).unwrap();
        let b = mc_expected_tvd(&id, 2_000, 11).unwrap();
        assert_eq!(a.estimate.to_bits(), b.estimate.to_bits());
        assert_eq!(a.stderr.to_bits(), b.stderr.to_bits());
        let exact = expected_tvd(&id);
        assert!(
            (a.estimate - exact).abs() <= 5.0 * a.stderr,
            "mc {} vs exact {exact} (stderr {})",
            a.estimate,
            a.stderr
        );
    }

    #[test]
    fn mc_tvd_is_worker_count_independent() {
        let id = e(EnsembleFamily::AI, 8);
        let run = |threads: usize| {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build()
                .unwrap();
            pool.install(|| mc_expected_tvd(&id, 1_500, 7).unwrap())
        };
        let single = run(1);
        let four = run(4);
        assert_eq!(single.estimate.to_bits(), four.estimate.to_bits());
        assert_eq!(single.stderr.to_bits(), four.stderr.to_bits());
    }

    #[test]
    fn mc_twirl_identity_is_exact() {
        // Every term V 1 V† is the identity, so the error is pure rounding.
        let id = e(EnsembleFamily::AII, 4);
        let report = mc_twirl(&id, &ComplexMatrix::identity(4), 1_000, 3).unwrap();
        assert!(report.frobenius_err <= 1e-12, "{}", report.frobenius_err);
    }

    #[test]
    fn mc_twirl_projector_converges() {
        let id = e(EnsembleFamily::AI, 4);
        let proj = ComplexMatrix::basis_projector(4, 0);
        let report = mc_twirl(&id, &proj, 20_000, 5).unwrap();
        assert!(
            report.frobenius_err <= 6.0 / (20_000f64).sqrt(),
            "{}",
            report.frobenius_err
        );
    }

    #[test]
    fn partner_entries_vanish() {
        for family in [EnsembleFamily::AII, EnsembleFamily::DIII] {
            let id = e(family, 8);
            let class = if family == EnsembleFamily::AII {
                EntryClass::AiiPartner
            } else {
                EntryClass::DiiiPartner
            };
            let spec = LawSpec::catalog(id, class).unwrap();
            let report = ks_law_check(&spec, 1_000, 13).unwrap();
            assert!(
                report.pass,
                "{}: max |entry| = {}",
                family.name(),
                report.statistic
            );
        }
    }

    #[test]
    fn law_checks_pass_at_moderate_size() {
        for (family, class) in [
            (EnsembleFamily::Unitary, EntryClass::GroupEntry),
            (EnsembleFamily::Unitary, EntryClass::DotProduct),
            (EnsembleFamily::AII, EntryClass::AiiGeneric),
        ] {
            let spec = LawSpec::catalog(e(family, 8), class).unwrap();
            let report = ks_law_check(&spec, 10_000, 19).unwrap();
            assert!(
                report.pass,
                "({}, {}): D = {} > {}",
                family.name(),
                class.name(),
                report.statistic,
                report.threshold
            );
        }
    }

    #[test]
    fn tails_never_exceed_two() {
        let id = e(EnsembleFamily::AI, 8);
        let report = mc_tail_probability(&id, 0.0, 500, 23).unwrap();
        assert!(report.levy_bound == 2.0);
        assert!(report.empirical <= 2.0);
        // Far tails are empty.
        let report = mc_tail_probability(&id, 1.0, 500, 23).unwrap();
        assert_eq!(report.empirical, 0.0);
    }

    #[test]
    fn ball_fraction_endpoints() {
        let id = e(EnsembleFamily::Unitary, 8);
        let all = mc_ball_fraction(&id, 1.0, 1_000, 29).unwrap();
        assert_eq!(all.estimate, 1.0);
        let none = mc_ball_fraction(&id, 0.0, 1_000, 29).unwrap();
        assert_eq!(none.estimate, 0.0);
    }

    #[test]
    fn trial_count_preconditions() {
        let id = e(EnsembleFamily::Unitary, 8);
        assert!(mc_expected_tvd(&id, 99, 0).is_err());
        assert!(mc_twirl(&id, &ComplexMatrix::identity(8), 999, 0).is_err());
        let spec = LawSpec::catalog(id, EntryClass::GroupEntry).unwrap();
        assert!(ks_law_check(&spec, 999, 0).is_err());
    }
}

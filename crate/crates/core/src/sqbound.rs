//! Statistical-query lower bounds for learning the Born distributions of
//! the symmetric-space ensembles, with the ball-mass and distinguishing
//! terms exposed.
//!
//! Everything is carried in natural-log space: the success fractions of
//! interest scale like `exp(-2^{0.49 n})`, which underflows any fixed-width
//! float long before the bound itself stops being meaningful.

use crate::closedform::{asymptote_of, EnsembleFamily};
use crate::{Error, Result};

/// Which constants enter the bound.
///
/// `Combined` is the single statement covering all three families
/// (`10/d` recentering, `τ_min = 2/(d-1)`); `PerEnsemble` uses the sharper
/// per-family constants (`5/d` for AI and AII, `10/d` for DIII, and
/// `τ_min = 2/(d+1)` for AI).
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BoundMode {
    Combined,
    PerEnsemble,
}

/// Parameters of a lower-bound evaluation.
///
/// `dim` is carried as `f64` so qubit counts up to `n = 1023` stay exact
/// (powers of two are representable); `beta` is carried as `ln β`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct SqParams {
    family: EnsembleFamily,
    dim: f64,
    tau: f64,
    eps: f64,
    ln_beta: f64,
    mode: BoundMode,
}

impl SqParams {
    pub fn new(
        family: EnsembleFamily,
        dim: f64,
        tau: f64,
        eps: f64,
        beta: f64,
        mode: BoundMode,
    ) -> Result<Self> {
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::Domain(format!(
                "success fraction must lie in (0, 1], got {beta}"
            )));
        }
        Self::with_ln_beta(family, dim, tau, eps, beta.ln(), mode)
    }

    /// Constructor taking `ln β` directly, for the regimes where `β`
    /// itself underflows.
    pub fn with_ln_beta(
        family: EnsembleFamily,
        dim: f64,
        tau: f64,
        eps: f64,
        ln_beta: f64,
        mode: BoundMode,
    ) -> Result<Self> {
        if !family.is_symmetric_space() {
            return Err(Error::Unsupported(format!(
                "statistical-query bounds cover the symmetric-space families, not {}",
                family.name()
            )));
        }
        if !(dim >= 4.0 && dim.is_finite()) {
            return Err(Error::InvalidSpec(format!(
                "dimension must be finite and at least 4, got {dim}"
            )));
        }
        if !(tau > 0.0 && tau.is_finite()) {
            return Err(Error::Domain(format!(
                "tolerance must be positive, got {tau}"
            )));
        }
        if !(eps >= 0.0 && eps.is_finite()) {
            return Err(Error::Domain(format!(
                "accuracy must be non-negative, got {eps}"
            )));
        }
        if !(ln_beta.is_finite() && ln_beta <= 0.0) {
            return Err(Error::Domain(format!(
                "ln of the success fraction must be ≤ 0, got {ln_beta}"
            )));
        }
        Ok(Self {
            family,
            dim,
            tau,
            eps,
            ln_beta,
            mode,
        })
    }

    /// Standard qubit parameterization `d = 2^n`.
    pub fn from_qubits(
        family: EnsembleFamily,
        n: u32,
        tau: f64,
        eps: f64,
        beta: f64,
        mode: BoundMode,
    ) -> Result<Self> {
        if !(2..=1023).contains(&n) {
            return Err(Error::InvalidSpec(format!(
                "qubit count must lie in [2, 1023], got {n}"
            )));
        }
        Self::new(family, 2.0f64.powi(n as i32), tau, eps, beta, mode)
    }

    pub fn family(&self) -> EnsembleFamily {
        self.family
    }

    pub fn dim(&self) -> f64 {
        self.dim
    }

    pub fn tau(&self) -> f64 {
        self.tau
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn ln_beta(&self) -> f64 {
        self.ln_beta
    }

    pub fn mode(&self) -> BoundMode {
        self.mode
    }

    /// The recentering constant `c` in `ξ = ξ₀ - c/d - ε - τ`.
    fn recenter_constant(&self) -> f64 {
        match (self.mode, self.family) {
            (BoundMode::Combined, _) => 10.0,
            (BoundMode::PerEnsemble, EnsembleFamily::AI | EnsembleFamily::AII) => 5.0,
            (BoundMode::PerEnsemble, _) => 10.0,
        }
    }

    /// The least tolerance the bound covers.
    pub fn tau_min(&self) -> f64 {
        match (self.mode, self.family) {
            (BoundMode::PerEnsemble, EnsembleFamily::AI) => 2.0 / (self.dim + 1.0),
            _ => 2.0 / (self.dim - 1.0),
        }
    }
}

/// `ξ = ξ₀ - c/d - ε - τ`, the concentration margin left after paying for
/// the finite-`d` recentering, the learning accuracy, and the tolerance.
pub fn xi_of(p: &SqParams) -> Result<f64> {
    let xi0 = asymptote_of(p.family());
    let xi = xi0 - p.recenter_constant() / p.dim() - p.eps() - p.tau();
    if xi <= 0.0 {
        return Err(Error::Domain(format!(
            "margin exhausted: xi = {xi} (xi0 = {xi0}, d = {}, eps = {}, tau = {})",
            p.dim(),
            p.eps(),
            p.tau()
        )));
    }
    Ok(xi)
}

/// `ln` of the TVD-ball mass bound `2 exp(-(d-2) ξ² / 96)`.
pub fn ln_u_ball_bound(p: &SqParams) -> Result<f64> {
    let xi = xi_of(p)?;
    Ok(std::f64::consts::LN_2 - (p.dim() - 2.0) * xi * xi / 96.0)
}

/// The ball-mass bound itself; underflows to zero once the exponent passes
/// ~745, which is why callers in the large-`n` regimes use the `ln` form.
pub fn u_ball_bound(p: &SqParams) -> Result<f64> {
    Ok(ln_u_ball_bound(p)?.exp())
}

/// `ln` of the distinguishing-fraction bound
/// `2 exp(-(d-2)(τ - τ_min)² / 384)`.
pub fn ln_f_bound(p: &SqParams) -> Result<f64> {
    let tau_min = p.tau_min();
    if p.tau() <= tau_min {
        return Err(Error::Domain(format!(
            "tolerance {} does not exceed tau_min = {tau_min}",
            p.tau()
        )));
    }
    let gap = p.tau() - tau_min;
    Ok(std::f64::consts::LN_2 - (p.dim() - 2.0) * gap * gap / 384.0)
}

pub fn f_bound(p: &SqParams) -> Result<f64> {
    Ok(ln_f_bound(p)?.exp())
}

/// A lower bound on the query count, in log space, with its constituents.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct BoundResult {
    /// Natural log of the certified lower bound on `q + 1`. Zero when the
    /// result is vacuous (every query count satisfies `q ≥ 0`).
    pub log_q_plus_1: f64,
    pub xi: f64,
    pub ln_u_bound: f64,
    pub ln_f_bound: f64,
    /// `exp` of the log fields; may underflow to zero at large dimension.
    pub u_bound: f64,
    pub f_bound: f64,
    /// Set when `β ≤ u_bound`, i.e. the numerator is non-positive.
    pub vacuous: bool,
}

/// The query-count bound `q + 1 ≥ (β - u) / f`, assembled in log space.
///
/// An exhausted margin (`ξ ≤ 0`) yields the vacuous result rather than an
/// error: the ball-mass bound saturates at its trivial value 2, which no
/// success fraction can exceed. A tolerance at or below `τ_min` is still a
/// domain error.
pub fn lower_bound_q(p: &SqParams) -> Result<BoundResult> {
    let ln_f = ln_f_bound(p)?;
    let Ok(xi) = xi_of(p) else {
        return Ok(BoundResult {
            log_q_plus_1: 0.0,
            xi: 0.0,
            ln_u_bound: std::f64::consts::LN_2,
            ln_f_bound: ln_f,
            u_bound: 2.0,
            f_bound: ln_f.exp(),
            vacuous: true,
        });
    };
    let ln_u = ln_u_ball_bound(p)?;
    let (log_q_plus_1, vacuous) = combine_bound(p.ln_beta(), ln_u, ln_f);
    Ok(BoundResult {
        log_q_plus_1,
        xi,
        ln_u_bound: ln_u,
        ln_f_bound: ln_f,
        u_bound: ln_u.exp(),
        f_bound: ln_f.exp(),
        vacuous,
    })
}

/// `ln((β - u)/f)` from `ln β`, `ln u`, `ln f`; flags `β ≤ u` as vacuous.
fn combine_bound(ln_beta: f64, ln_u: f64, ln_f: f64) -> (f64, bool) {
    if ln_u >= ln_beta {
        return (0.0, true);
    }
    // ln(β - u) = ln β + ln(1 - e^{ln u - ln β}).
    let ln_numerator = ln_beta + (-((ln_u - ln_beta).exp())).ln_1p();
    (ln_numerator - ln_f, false)
}

// ---- regime table ---------------------------------------------------------

/// Row classification for the schedule sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RowStatus {
    /// `β > u` and the certified `q + 1` exceeds one.
    Nonvacuous,
    /// `β > u` but the certified bound is below one query.
    Trivial,
    /// `β ≤ u` (or the parameters left no margin at all).
    Vacuous,
}

/// One row of [`regime_table`].
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct RegimeRow {
    pub n: u32,
    pub tau: f64,
    pub xi: f64,
    pub ln_beta: f64,
    pub ln_u_bound: f64,
    pub ln_f_bound: f64,
    pub log_q_plus_1: f64,
    pub status: RowStatus,
    /// `ln ln(q+1)`, present only when the bound is nonvacuous.
    pub log_log_q_plus_1: Option<f64>,
}

/// Parameter schedule in the qubit count: `τ = ξ = 2^{-tau_power · n}` and
/// `ln β = -2^{beta_power · n}`.
#[derive(Debug, Clone, Copy, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct Schedule {
    pub tau_power: f64,
    pub beta_power: f64,
}

impl Schedule {
    /// The doubly-exponential-claim schedule: `τ, ξ ~ 2^{-n/4}`,
    /// `β ~ exp(-2^{0.49 n})`.
    pub fn quarter() -> Self {
        Self {
            tau_power: 0.25,
            beta_power: 0.49,
        }
    }

    /// The fragility schedule: sharpening the tolerance to `τ ~ 2^{-n/2}`
    /// collapses the bound.
    pub fn half() -> Self {
        Self {
            tau_power: 0.5,
            beta_power: 0.49,
        }
    }
}

/// Sweep the schedule over qubit counts. The accuracy `ε` is implied:
/// both `τ` and the concentration margin `ξ` follow the schedule scale, and
/// `ε = ξ₀ - c/d - τ - ξ` absorbs the rest. Rows whose parameters leave no
/// valid margin are flagged vacuous rather than aborting the sweep.
pub fn regime_table(
    family: EnsembleFamily,
    n_list: &[u32],
    schedule: &Schedule,
    mode: BoundMode,
) -> Result<Vec<RegimeRow>> {
    if !family.is_symmetric_space() {
        return Err(Error::Unsupported(format!(
            "statistical-query bounds cover the symmetric-space families, not {}",
            family.name()
        )));
    }
    let mut rows = Vec::with_capacity(n_list.len());
    for &n in n_list {
        rows.push(regime_row(family, n, schedule, mode));
    }
    Ok(rows)
}

fn regime_row(family: EnsembleFamily, n: u32, schedule: &Schedule, mode: BoundMode) -> RegimeRow {
    let scale = 2.0f64.powf(-schedule.tau_power * n as f64);
    let ln_beta = -2.0f64.powf(schedule.beta_power * n as f64);
    let vacuous_row = |tau: f64, ln_beta: f64| RegimeRow {
        n,
        tau,
        xi: 0.0,
        ln_beta,
        ln_u_bound: std::f64::consts::LN_2,
        ln_f_bound: std::f64::consts::LN_2,
        log_q_plus_1: 0.0,
        status: RowStatus::Vacuous,
        log_log_q_plus_1: None,
    };
    if !(4..=1023).contains(&n) {
        return vacuous_row(scale, ln_beta);
    }
    let d = 2.0f64.powi(n as i32);
    let tau = scale;
    let xi = scale;
    // ε must absorb what is left of the margin: ξ₀ - c/d - τ - ξ ≥ 0.
    let c = match (mode, family) {
        (BoundMode::Combined, _) => 10.0,
        (BoundMode::PerEnsemble, EnsembleFamily::AI | EnsembleFamily::AII) => 5.0,
        (BoundMode::PerEnsemble, _) => 10.0,
    };
    let eps = asymptote_of(family) - c / d - tau - xi;
    if eps < 0.0 {
        return vacuous_row(tau, ln_beta);
    }
    let params = match SqParams::with_ln_beta(family, d, tau, eps, ln_beta, mode) {
        Ok(p) => p,
        Err(_) => return vacuous_row(tau, ln_beta),
    };
    let tau_min = params.tau_min();
    if tau <= tau_min {
        return vacuous_row(tau, ln_beta);
    }
    let ln_u = std::f64::consts::LN_2 - (d - 2.0) * xi * xi / 96.0;
    let ln_f = ln_f_bound(&params).expect("tau checked above");
    let (log_q_plus_1, vacuous) = combine_bound(ln_beta, ln_u, ln_f);
    let status = if vacuous {
        RowStatus::Vacuous
    } else if log_q_plus_1 <= 0.0 {
        RowStatus::Trivial
    } else {
        RowStatus::Nonvacuous
    };
    RegimeRow {
        n,
        tau,
        xi,
        ln_beta,
        ln_u_bound: ln_u,
        ln_f_bound: ln_f,
        log_q_plus_1,
        status,
        log_log_q_plus_1: if status == RowStatus::Nonvacuous && log_q_plus_1 > 0.0 {
            Some(log_q_plus_1.ln())
        } else {
            None
        },
    }
}

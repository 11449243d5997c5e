//! C ABI for the symspace library.
//!
//! Conventions:
//! * every fallible function returns a [`SymspaceStatus`]; outputs go
//!   through caller-provided pointers;
//! * samplers are opaque handles created by `symspace_sampler_new_*`,
//!   advanced by `symspace_sampler_next`, and released by
//!   `symspace_sampler_free`;
//! * matrices cross the boundary as row-major `f64` buffers of length
//!   `2 d²`, interleaved `re, im`;
//! * the last error message is thread-local; fetch it with
//!   `symspace_last_error_message` after a non-zero status.

use std::cell::RefCell;
use std::ffi::{c_char, CString};

use symspace::closedform::{
    appendix_interval, asymptote, expected_tvd, per_entry_deviation, EnsembleFamily, EnsembleId,
    Slot,
};
use symspace::matrix::ComplexMatrix;
use symspace::num_complex::Complex64;
use symspace::rng::RngStream;
use symspace::sampling::{sample_haar, GroupFamily, GroupSpec};
use symspace::sqbound::{lower_bound_q, BoundMode, SqParams};
use symspace::symspace::{sample_space, SpaceFamily, SpaceSpec};
use symspace::verify::mc_expected_tvd;
use symspace::Error;

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::new("").unwrap());
}

fn set_error(message: &str) {
    let sanitized: String = message.chars().filter(|&c| c != '\0').collect();
    LAST_ERROR.with(|slot| {
        *slot.borrow_mut() = CString::new(sanitized).unwrap();
    });
}

/// Status codes returned by every fallible entry point.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymspaceStatus {
    Ok = 0,
    NullPointer = 1,
    InvalidSpec = 2,
    DomainError = 3,
    Unsupported = 4,
    BufferTooSmall = 5,
    InternalError = 6,
}

fn status_of(err: &Error) -> SymspaceStatus {
    match err {
        Error::InvalidSpec(_) | Error::DimMismatch(_) => SymspaceStatus::InvalidSpec,
        Error::Domain(_) => SymspaceStatus::DomainError,
        Error::Unsupported(_) => SymspaceStatus::Unsupported,
        _ => SymspaceStatus::InternalError,
    }
}

fn fail(err: Error) -> SymspaceStatus {
    let status = status_of(&err);
    set_error(&err.to_string());
    status
}

fn fail_null(what: &str) -> SymspaceStatus {
    set_error(&format!("null pointer: {what}"));
    SymspaceStatus::NullPointer
}

/// Ensemble families with closed-form Born statistics.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymspaceFamily {
    Unitary = 0,
    Orthogonal = 1,
    Symplectic = 2,
    Ai = 3,
    Aii = 4,
    Diii = 5,
}

impl From<SymspaceFamily> for EnsembleFamily {
    fn from(f: SymspaceFamily) -> Self {
        match f {
            SymspaceFamily::Unitary => EnsembleFamily::Unitary,
            SymspaceFamily::Orthogonal => EnsembleFamily::Orthogonal,
            SymspaceFamily::Symplectic => EnsembleFamily::Symplectic,
            SymspaceFamily::Ai => EnsembleFamily::AI,
            SymspaceFamily::Aii => EnsembleFamily::AII,
            SymspaceFamily::Diii => EnsembleFamily::DIII,
        }
    }
}

/// Cartan families of the coset sampler.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymspaceSpace {
    Ai = 0,
    Aii = 1,
    Aiii = 2,
    Bdi = 3,
    Diii = 4,
    Ci = 5,
    Cii = 6,
}

impl From<SymspaceSpace> for SpaceFamily {
    fn from(s: SymspaceSpace) -> Self {
        match s {
            SymspaceSpace::Ai => SpaceFamily::AI,
            SymspaceSpace::Aii => SpaceFamily::AII,
            SymspaceSpace::Aiii => SpaceFamily::AIII,
            SymspaceSpace::Bdi => SpaceFamily::BDI,
            SymspaceSpace::Diii => SpaceFamily::DIII,
            SymspaceSpace::Ci => SpaceFamily::CI,
            SymspaceSpace::Cii => SpaceFamily::CII,
        }
    }
}

/// Per-entry deviation classes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymspaceSlot {
    Diagonal = 0,
    Partner = 1,
    Generic = 2,
}

/// Constant selection for the statistical-query bound.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SymspaceMode {
    Combined = 0,
    PerEnsemble = 1,
}

/// A closed interval.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SymspaceInterval {
    pub lower: f64,
    pub upper: f64,
}

/// A Monte Carlo estimate and its provenance.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SymspaceMcReport {
    pub estimate: f64,
    pub stderr: f64,
    pub trials: u64,
    pub master_seed: u64,
}

/// The statistical-query lower bound and its constituents, in log space.
#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct SymspaceSqBound {
    pub log_q_plus_1: f64,
    pub xi: f64,
    pub ln_u_bound: f64,
    pub ln_f_bound: f64,
    pub u_bound: f64,
    pub f_bound: f64,
    pub vacuous: bool,
}

/// NUL-terminated library version; the pointer is static.
#[no_mangle]
pub extern "C" fn symspace_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr() as *const c_char
}

/// Copy the last error message (NUL-terminated) into `buf`; returns the
/// full length including the terminator. A null or short buffer still
/// yields the required length, so call once with `len = 0` to size it.
///
/// # Safety
/// `buf` must be valid for writes of `len` bytes, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_last_error_message(buf: *mut c_char, len: usize) -> usize {
    LAST_ERROR.with(|slot| {
        let msg = slot.borrow();
        let bytes = msg.as_bytes_with_nul();
        if !buf.is_null() && len >= bytes.len() {
            std::ptr::copy_nonoverlapping(bytes.as_ptr() as *const c_char, buf, bytes.len());
        }
        bytes.len()
    })
}

/// Exact expected total variation distance to the constant distribution.
///
/// # Safety
/// `out` must be valid for a write, or null (reported as a status).
#[no_mangle]
pub unsafe extern "C" fn symspace_expected_tvd(
    family: SymspaceFamily,
    dim: u32,
    out: *mut f64,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match EnsembleId::new(family.into(), dim as usize) {
        Ok(e) => {
            *out = expected_tvd(&e);
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// The `d → ∞` limit of the expected TVD.
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_asymptote(
    family: SymspaceFamily,
    dim: u32,
    out: *mut f64,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match EnsembleId::new(family.into(), dim as usize) {
        Ok(e) => {
            *out = asymptote(&e);
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// The finite-`d` interval guaranteed to contain the expected TVD.
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_appendix_interval(
    family: SymspaceFamily,
    dim: u32,
    out: *mut SymspaceInterval,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match EnsembleId::new(family.into(), dim as usize) {
        Ok(e) => {
            let interval = appendix_interval(&e);
            *out = SymspaceInterval {
                lower: interval.lower,
                upper: interval.upper,
            };
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Per-entry deviation `E |d P(x) - 1|` for the given entry class.
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_per_entry_deviation(
    family: SymspaceFamily,
    dim: u32,
    slot: SymspaceSlot,
    out: *mut f64,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    let slot = match slot {
        SymspaceSlot::Diagonal => Slot::Diagonal,
        SymspaceSlot::Partner => Slot::Partner,
        SymspaceSlot::Generic => Slot::Generic,
    };
    match EnsembleId::new(family.into(), dim as usize).and_then(|e| per_entry_deviation(&e, slot)) {
        Ok(v) => {
            *out = v;
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Monte Carlo estimate of the expected TVD; deterministic in
/// `(seed, trials)` and independent of worker count.
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_mc_expected_tvd(
    family: SymspaceFamily,
    dim: u32,
    trials: u64,
    seed: u64,
    out: *mut SymspaceMcReport,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    match EnsembleId::new(family.into(), dim as usize)
        .and_then(|e| mc_expected_tvd(&e, trials, seed))
    {
        Ok(r) => {
            *out = SymspaceMcReport {
                estimate: r.estimate,
                stderr: r.stderr,
                trials: r.trials,
                master_seed: r.master_seed,
            };
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Statistical-query lower bound `q + 1 ≥ (β - u)/f` in log space.
/// `dim` is a plain dimension; for qubit counts beyond `f64`-exact reach
/// use [`symspace_sq_lower_bound_qubits`].
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_sq_lower_bound(
    family: SymspaceFamily,
    dim: u32,
    tau: f64,
    eps: f64,
    beta: f64,
    mode: SymspaceMode,
    out: *mut SymspaceSqBound,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    let mode = match mode {
        SymspaceMode::Combined => BoundMode::Combined,
        SymspaceMode::PerEnsemble => BoundMode::PerEnsemble,
    };
    match SqParams::new(family.into(), dim as f64, tau, eps, beta, mode)
        .and_then(|p| lower_bound_q(&p))
    {
        Ok(r) => {
            *out = SymspaceSqBound {
                log_q_plus_1: r.log_q_plus_1,
                xi: r.xi,
                ln_u_bound: r.ln_u_bound,
                ln_f_bound: r.ln_f_bound,
                u_bound: r.u_bound,
                f_bound: r.f_bound,
                vacuous: r.vacuous,
            };
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Qubit-count variant taking `ln β` directly, for the regimes where the
/// success fraction underflows.
///
/// # Safety
/// `out` must be valid for a write, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_sq_lower_bound_qubits(
    family: SymspaceFamily,
    qubits: u32,
    tau: f64,
    eps: f64,
    ln_beta: f64,
    mode: SymspaceMode,
    out: *mut SymspaceSqBound,
) -> SymspaceStatus {
    if out.is_null() {
        return fail_null("out");
    }
    if !(2..=1023).contains(&qubits) {
        set_error("qubit count must lie in [2, 1023]");
        return SymspaceStatus::InvalidSpec;
    }
    let mode = match mode {
        SymspaceMode::Combined => BoundMode::Combined,
        SymspaceMode::PerEnsemble => BoundMode::PerEnsemble,
    };
    let dim = 2.0f64.powi(qubits as i32);
    match SqParams::with_ln_beta(family.into(), dim, tau, eps, ln_beta, mode)
        .and_then(|p| lower_bound_q(&p))
    {
        Ok(r) => {
            *out = SymspaceSqBound {
                log_q_plus_1: r.log_q_plus_1,
                xi: r.xi,
                ln_u_bound: r.ln_u_bound,
                ln_f_bound: r.ln_f_bound,
                u_bound: r.u_bound,
                f_bound: r.f_bound,
                vacuous: r.vacuous,
            };
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

enum SamplerKind {
    Group(GroupSpec),
    Space(SpaceSpec),
}

/// Opaque sampler handle. Each call to `symspace_sampler_next` draws from
/// the stream `(seed, counter)` and advances the counter.
pub struct SymspaceSampler {
    kind: SamplerKind,
    seed: u64,
    counter: u64,
    dim: usize,
}

/// New sampler on a classical compact group (`Unitary` or `Orthogonal`).
/// Returns null on error; inspect `symspace_last_error_message`.
#[no_mangle]
pub extern "C" fn symspace_sampler_new_group(
    family: SymspaceFamily,
    dim: u32,
    seed: u64,
) -> *mut SymspaceSampler {
    let group = match family {
        SymspaceFamily::Unitary => GroupFamily::Unitary,
        SymspaceFamily::Orthogonal => GroupFamily::Orthogonal,
        other => {
            set_error(&format!("no matrix sampler for {other:?}"));
            return std::ptr::null_mut();
        }
    };
    match GroupSpec::new(group, dim as usize) {
        Ok(spec) => Box::into_raw(Box::new(SymspaceSampler {
            kind: SamplerKind::Group(spec),
            seed,
            counter: 0,
            dim: dim as usize,
        })),
        Err(e) => {
            set_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// New sampler on a compact symmetric space. The split families (AIII,
/// BDI, CII) read `(p, q)`; the others ignore it. Returns null on error.
#[no_mangle]
pub extern "C" fn symspace_sampler_new_space(
    space: SymspaceSpace,
    dim: u32,
    p: u32,
    q: u32,
    seed: u64,
) -> *mut SymspaceSampler {
    let split = if p > 0 || q > 0 {
        Some((p as usize, q as usize))
    } else {
        None
    };
    let spec = SpaceSpec::new(space.into(), dim as usize, split)
        .and_then(|spec| spec.parent_group().map(|_| spec));
    match spec {
        Ok(spec) => Box::into_raw(Box::new(SymspaceSampler {
            kind: SamplerKind::Space(spec),
            seed,
            counter: 0,
            dim: dim as usize,
        })),
        Err(e) => {
            set_error(&e.to_string());
            std::ptr::null_mut()
        }
    }
}

/// Hilbert-space dimension of the sampler, or 0 for a null handle.
///
/// # Safety
/// `sampler` must be a live handle from a `symspace_sampler_new_*` call,
/// or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_sampler_dim(sampler: *const SymspaceSampler) -> u32 {
    if sampler.is_null() {
        return 0;
    }
    (*sampler).dim as u32
}

/// Draw the next matrix into `out` (row-major, interleaved `re, im`;
/// `out_len` must be at least `2 d²`).
///
/// # Safety
/// `sampler` must be a live handle; `out` must be valid for `out_len`
/// writes.
#[no_mangle]
pub unsafe extern "C" fn symspace_sampler_next(
    sampler: *mut SymspaceSampler,
    out: *mut f64,
    out_len: usize,
) -> SymspaceStatus {
    if sampler.is_null() {
        return fail_null("sampler");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let sampler = &mut *sampler;
    let needed = 2 * sampler.dim * sampler.dim;
    if out_len < needed {
        set_error(&format!(
            "output buffer holds {out_len} doubles, need {needed}"
        ));
        return SymspaceStatus::BufferTooSmall;
    }
    let mut rng = RngStream::new(sampler.seed, sampler.counter);
    let matrix = match &sampler.kind {
        SamplerKind::Group(spec) => Ok(sample_haar(spec, &mut rng)),
        SamplerKind::Space(spec) => sample_space(spec, &mut rng),
    };
    match matrix {
        Ok(m) => {
            sampler.counter += 1;
            let buf = std::slice::from_raw_parts_mut(out, needed);
            for (k, z) in m.data().iter().enumerate() {
                buf[2 * k] = z.re;
                buf[2 * k + 1] = z.im;
            }
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/// Release a sampler handle; null is a no-op.
///
/// # Safety
/// `sampler` must be a handle from a `symspace_sampler_new_*` call that
/// has not been freed already, or null.
#[no_mangle]
pub unsafe extern "C" fn symspace_sampler_free(sampler: *mut SymspaceSampler) {
    if !sampler.is_null() {
        drop(Box::from_raw(sampler));
    }
}

/// Total variation distance to the constant distribution of the Born
/// column `|matrix[x][ref_index]|²`, for a row-major interleaved matrix.
///
/// # Safety
/// `matrix` must be valid for `2 dim²` reads; `out` for one write.
#[no_mangle]
pub unsafe extern "C" fn symspace_born_tvd(
    matrix: *const f64,
    dim: u32,
    ref_index: u32,
    out: *mut f64,
) -> SymspaceStatus {
    if matrix.is_null() {
        return fail_null("matrix");
    }
    if out.is_null() {
        return fail_null("out");
    }
    let d = dim as usize;
    let buf = std::slice::from_raw_parts(matrix, 2 * d * d);
    let m = ComplexMatrix::from_fn(d, |i, j| {
        let k = 2 * (i * d + j);
        Complex64::new(buf[k], buf[k + 1])
    });
    match symspace::born::born_distribution(&m, ref_index as usize) {
        Ok(p) => {
            *out = symspace::born::tvd_to_uniform(&p);
            SymspaceStatus::Ok
        }
        Err(e) => fail(e),
    }
}

/* C ABI for the symspace library. */

#ifndef SYMSPACE_H
#define SYMSPACE_H

#include <stdarg.h>
#include <stdbool.h>
#include <stdint.h>
#include <stdlib.h>

/**
 * Ensemble families with closed-form Born statistics.
 */
typedef enum SymspaceFamily {
  SYMSPACE_FAMILY_UNITARY = 0,
  SYMSPACE_FAMILY_ORTHOGONAL = 1,
  SYMSPACE_FAMILY_SYMPLECTIC = 2,
  SYMSPACE_FAMILY_AI = 3,
  SYMSPACE_FAMILY_AII = 4,
  SYMSPACE_FAMILY_DIII = 5,
} SymspaceFamily;

/**
 * Constant selection for the statistical-query bound.
 */
typedef enum SymspaceMode {
  SYMSPACE_MODE_COMBINED = 0,
  SYMSPACE_MODE_PER_ENSEMBLE = 1,
} SymspaceMode;

/**
 * Per-entry deviation classes.
 */
typedef enum SymspaceSlot {
  SYMSPACE_SLOT_DIAGONAL = 0,
  SYMSPACE_SLOT_PARTNER = 1,
  SYMSPACE_SLOT_GENERIC = 2,
} SymspaceSlot;

/**
 * Cartan families of the coset sampler.
 */
typedef enum SymspaceSpace {
  SYMSPACE_SPACE_AI = 0,
  SYMSPACE_SPACE_AII = 1,
  SYMSPACE_SPACE_AIII = 2,
  SYMSPACE_SPACE_BDI = 3,
  SYMSPACE_SPACE_DIII = 4,
  SYMSPACE_SPACE_CI = 5,
  SYMSPACE_SPACE_CII = 6,
} SymspaceSpace;

/**
 * Status codes returned by every fallible entry point.
 */
typedef enum SymspaceStatus {
  SYMSPACE_STATUS_OK = 0,
  SYMSPACE_STATUS_NULL_POINTER = 1,
  SYMSPACE_STATUS_INVALID_SPEC = 2,
  SYMSPACE_STATUS_DOMAIN_ERROR = 3,
  SYMSPACE_STATUS_UNSUPPORTED = 4,
  SYMSPACE_STATUS_BUFFER_TOO_SMALL = 5,
  SYMSPACE_STATUS_INTERNAL_ERROR = 6,
} SymspaceStatus;

/**
 * Opaque sampler handle. Each call to `symspace_sampler_next` draws from
 * the stream `(seed, counter)` and advances the counter.
 */
typedef struct SymspaceSampler SymspaceSampler;

/**
 * A closed interval.
 */
typedef struct SymspaceInterval {
  double lower;
  double upper;
} SymspaceInterval;

/**
 * A Monte Carlo estimate and its provenance.
 */
typedef struct SymspaceMcReport {
  double estimate;
  double stderr;
  uint64_t trials;
  uint64_t master_seed;
} SymspaceMcReport;

/**
 * The statistical-query lower bound and its constituents, in log space.
 */
typedef struct SymspaceSqBound {
  double log_q_plus_1;
  double xi;
  double ln_u_bound;
  double ln_f_bound;
  double u_bound;
  double f_bound;
  bool vacuous;
} SymspaceSqBound;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

/**
 * NUL-terminated library version; the pointer is static.
 */
const char *symspace_version(void);

/**
 * Copy the last error message (NUL-terminated) into `buf`; returns the
 * full length including the terminator. A null or short buffer still
 * yields the required length, so call once with `len = 0` to size it.
 *
 * # Safety
 * `buf` must be valid for writes of `len` bytes, or null.
 */
uintptr_t symspace_last_error_message(char *buf, uintptr_t len);

/**
 * Exact expected total variation distance to the constant distribution.
 *
 * # Safety
 * `out` must be valid for a write, or null (reported as a status).
 */
enum SymspaceStatus symspace_expected_tvd(enum SymspaceFamily family, uint32_t dim, double *out);

/**
 * The `d → ∞` limit of the expected TVD.
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_asymptote(enum SymspaceFamily family, uint32_t dim, double *out);

/**
 * The finite-`d` interval guaranteed to contain the expected TVD.
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_appendix_interval(enum SymspaceFamily family,
                                               uint32_t dim,
                                               struct SymspaceInterval *out);

/**
 * Per-entry deviation `E |d P(x) - 1|` for the given entry class.
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_per_entry_deviation(enum SymspaceFamily family,
                                                 uint32_t dim,
                                                 enum SymspaceSlot slot,
                                                 double *out);

/**
 * Monte Carlo estimate of the expected TVD; deterministic in
 * `(seed, trials)` and independent of worker count.
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_mc_expected_tvd(enum SymspaceFamily family,
                                             uint32_t dim,
                                             uint64_t trials,
                                             uint64_t seed,
                                             struct SymspaceMcReport *out);

/**
 * Statistical-query lower bound `q + 1 ≥ (β - u)/f` in log space.
 * `dim` is a plain dimension; for qubit counts beyond `f64`-exact reach
 * use [`symspace_sq_lower_bound_qubits`].
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_sq_lower_bound(enum SymspaceFamily family,
                                            uint32_t dim,
                                            double tau,
                                            double eps,
                                            double beta,
                                            enum SymspaceMode mode,
                                            struct SymspaceSqBound *out);

/**
 * Qubit-count variant taking `ln β` directly, for the regimes where the
 * success fraction underflows.
 *
 * # Safety
 * `out` must be valid for a write, or null.
 */
enum SymspaceStatus symspace_sq_lower_bound_qubits(enum SymspaceFamily family,
                                                   uint32_t qubits,
                                                   double tau,
                                                   double eps,
                                                   double ln_beta,
                                                   enum SymspaceMode mode,
                                                   struct SymspaceSqBound *out);

/**
 * New sampler on a classical compact group (`Unitary` or `Orthogonal`).
 * Returns null on error; inspect `symspace_last_error_message`.
 */
struct SymspaceSampler *symspace_sampler_new_group(enum SymspaceFamily family,
                                                   uint32_t dim,
                                                   uint64_t seed);

/**
 * New sampler on a compact symmetric space. The split families (AIII,
 * BDI, CII) read `(p, q)`; the others ignore it. Returns null on error.
 */
struct SymspaceSampler *symspace_sampler_new_space(enum SymspaceSpace space,
                                                   uint32_t dim,
                                                   uint32_t p,
                                                   uint32_t q,
                                                   uint64_t seed);

/**
 * Hilbert-space dimension of the sampler, or 0 for a null handle.
 *
 * # Safety
 * `sampler` must be a live handle from a `symspace_sampler_new_*` call,
 * or null.
 */
uint32_t symspace_sampler_dim(const struct SymspaceSampler *sampler);

/**
 * Draw the next matrix into `out` (row-major, interleaved `re, im`;
 * `out_len` must be at least `2 d²`).
 *
 * # Safety
 * `sampler` must be a live handle; `out` must be valid for `out_len`
 * writes.
 */
enum SymspaceStatus symspace_sampler_next(struct SymspaceSampler *sampler,
                                          double *out,
                                          uintptr_t out_len);

/**
 * Release a sampler handle; null is a no-op.
 *
 * # Safety
 * `sampler` must be a handle from a `symspace_sampler_new_*` call that
 * has not been freed already, or null.
 */
void symspace_sampler_free(struct SymspaceSampler *sampler);

/**
 * Total variation distance to the constant distribution of the Born
 * column `|matrix[x][ref_index]|²`, for a row-major interleaved matrix.
 *
 * # Safety
 * `matrix` must be valid for `2 dim²` reads; `out` for one write.
 */
enum SymspaceStatus symspace_born_tvd(const double *matrix,
                                      uint32_t dim,
                                      uint32_t ref_index,
                                      double *out);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* SYMSPACE_H */

/* C interface for the antisym library. All output strings are allocated by the library and must be released with antisym_string_free(). */

#ifndef ANTISYM_H
#define ANTISYM_H

#include <stdarg.h>
#include <stdbool.h>
#include <stddef.h>
#include <stdint.h>
#include <stdlib.h>

// Status codes returned by every fallible call.
typedef enum AntisymStatus {
  ANTISYM_STATUS_OK = 0,
  ANTISYM_STATUS_INVALID_ARGUMENT = 1,
  ANTISYM_STATUS_BUDGET_EXCEEDED = 2,
  ANTISYM_STATUS_PARSE_ERROR = 3,
  ANTISYM_STATUS_NON_INTEGRABLE = 4,
  ANTISYM_STATUS_PRECISION_OUT_OF_RANGE = 5,
  ANTISYM_STATUS_NULL_POINTER = 6,
  ANTISYM_STATUS_INTERNAL = 7,
} AntisymStatus;

// Opaque handle to an exact multivariate polynomial (particle block width
// `d` is carried along for rendering and symmetry checks).
typedef struct AntisymPsi AntisymPsi;

#ifdef __cplusplus
extern "C" {
#endif // __cplusplus

// Library version as a static string; do not free.
const char *antisym_version(void);

// Message for the most recent failure on this thread, or NULL. The pointer
// stays valid until the next failing call on the same thread; do not free.
const char *antisym_last_error(void);

// Releases a string returned by this library.
//
// # Safety
// `s` must have been returned by this library and not freed before.
void antisym_string_free(char *s);

// Degree of the minimal antisymmetric harmonic polynomial, as a decimal
// string.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_vandermonde_degree(uint32_t d, uint64_t n, char **out);

// Minimal Laplace-Beltrami eigenvalue on antisymmetric functions, as a
// decimal string.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_lambda_min(uint32_t d, uint64_t n, char **out);

// Shell index `m` with `N_m <= N < N_{m+1}`, plus the filled count `N_m`
// as a decimal string.
//
// # Safety
// All output pointers must be valid.
enum AntisymStatus antisym_shell(uint32_t d, uint64_t n, uint64_t *out_m, char **out_filled);

// Sharp antisymmetric Hardy constant as an exact rational string
// (e.g. `49/4`).
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_hardy_constant(uint32_t d, uint64_t n, char **out);

// Asymptotic approximant `xi_d(N)` at 17 printed digits.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_xi(uint32_t d, uint64_t n, uint32_t digits, char **out);

// Upper bound for `V_d(N) - xi_d(N)` at 17 printed digits.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_gap_bound(uint32_t d, uint64_t n, uint32_t digits, char **out);

// Classical sharp Sobolev constant `S(n)`, `n >= 3`.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_sobolev_classical(uint64_t n, uint32_t digits, char **out);

// Sharp antisymmetric Sobolev constant `S_A(dN)`, `dN >= 3`.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_sobolev(uint32_t d, uint64_t n, uint32_t digits, char **out);

// CKN constants at interpolation parameter `nu` (a decimal or fraction
// string in `[0, 1]`): the inequality constant through `out_lower` and the
// interpolation constant through `out_upper`.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_ckn_constant(uint32_t d,
                                        uint64_t n,
                                        const char *nu,
                                        uint32_t digits,
                                        char **out_upper,
                                        char **out_lower);

// Builds the minimal antisymmetric harmonic polynomial for `(d, N)` as an
// opaque handle. The expansion has `N!` terms and is rejected beyond the
// budget (`ANTISYM_BUDGET` overrides the default cap of 400000).
//
// # Safety
// `out` must be a valid pointer; the handle must be released with
// [`antisym_psi_free`].
enum AntisymStatus antisym_psi_new(uint32_t d, uint64_t n, struct AntisymPsi **out);

// Releases a polynomial handle.
//
// # Safety
// `psi` must come from [`antisym_psi_new`] and not be freed twice.
void antisym_psi_free(struct AntisymPsi *psi);

// Canonical text rendering of the polynomial.
//
// # Safety
// `psi` and `out` must be valid pointers.
enum AntisymStatus antisym_psi_render(const struct AntisymPsi *psi, char **out);

// Term count and total degree of the polynomial.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_psi_stats(const struct AntisymPsi *psi,
                                     uint64_t *out_terms,
                                     uint64_t *out_degree);

// Exact symbolic checks: antisymmetry under block transpositions and
// vanishing Laplacian.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_psi_check(const struct AntisymPsi *psi,
                                     bool *out_antisymmetric,
                                     bool *out_harmonic);

// Reference eigenvalue table as CSV
// (`d,N,lambda_computed,lambda_paper,match`); `out_all_match` reports the
// comparison outcome.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_table_csv(char **out, bool *out_all_match);

// Gap series CSV (`d,N,V,xi,gap,bound,is_cusp`) for
// `d in d_lo..=d_hi, N in 2..=n_max`.
//
// # Safety
// `out` must be a valid pointer.
enum AntisymStatus antisym_gap_csv(uint32_t d_lo,
                                   uint32_t d_hi,
                                   uint64_t n_max,
                                   uint32_t digits,
                                   char **out);

// Oracle sweep CSV over all `(d, N)` with `dN <= max_dn`;
// `out_all_agree` reports whether every non-skipped check agreed.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_oracle_csv(uint32_t max_dn, char **out, bool *out_all_agree);

// Positivity screening of `-Delta - V` from a radial potential descriptor
// (the same grammar the CLI reads from files). On success writes
// `1` (positive) or `0` (inconclusive) through `out_positive` and the
// threshold/norm pair as strings.
//
// # Safety
// All pointers must be valid.
enum AntisymStatus antisym_positivity_check(const char *descriptor,
                                            uint32_t d,
                                            uint64_t n,
                                            const char *nu,
                                            uint32_t digits,
                                            bool *out_positive,
                                            char **out_threshold,
                                            char **out_norm);

#ifdef __cplusplus
}  // extern "C"
#endif  // __cplusplus

#endif  /* ANTISYM_H */

#ifndef DBARLAB_H
#define DBARLAB_H

/* C interface to the dbarlab core.
 *
 * Every call returns a dbl_status. On failure the message is available from
 * dbl_last_error() on the same thread until the next failing call. Strings
 * returned through char** are owned by the caller and released with
 * dbl_string_free(). Handles are released with their *_destroy function;
 * destroying NULL is a no-op. */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(DBARLAB_BUILD)
#    define DBL_API __declspec(dllexport)
#  else
#    define DBL_API __declspec(dllimport)
#  endif
#else
#  define DBL_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum dbl_status {
  DBL_OK = 0,
  DBL_INVALID_ARGUMENT = 1,
  DBL_PRECONDITION = 2,
  DBL_CERTIFICATION = 3,
  DBL_PARSE = 4,
  DBL_INTERNAL = 5
} dbl_status;

typedef enum dbl_delta_mode {
  DBL_DELTA_TRUNCATED = 0,
  DBL_DELTA_CERTIFIED = 1,
  DBL_DELTA_CONVERGED = 2
} dbl_delta_mode;

typedef struct dbl_context dbl_context;
typedef struct dbl_expansion dbl_expansion;
typedef struct dbl_polyfunc dbl_polyfunc;
typedef struct dbl_polyform dbl_polyform;
typedef struct dbl_gform dbl_gform;

DBL_API const char* dbl_version(void);
DBL_API const char* dbl_last_error(void);
DBL_API void dbl_string_free(char* s);

/* threads == 0 keeps the current worker count, which is process-wide. */
DBL_API dbl_status dbl_context_create(uint64_t seed, unsigned threads, dbl_context** out);
DBL_API void dbl_context_destroy(dbl_context* ctx);

/* ---- multi-homogeneous expansions ---------------------------------------- */

DBL_API dbl_status dbl_expansion_from_json(const char* json, dbl_expansion** out);
DBL_API dbl_status dbl_expansion_to_json(const dbl_expansion* e, char** out);
DBL_API void dbl_expansion_destroy(dbl_expansion* e);

/* Components of a sum-space polynomial {space, R, monomials} for blocks
 * 1..max_block and total degree <= max_degree. */
DBL_API dbl_status dbl_expand_polynomial(const char* polynomial_json, uint32_t max_block,
                                         uint32_t max_degree, dbl_expansion** out);

/* Fills missing term norms; samples == 0 keeps the default sampler. */
DBL_API dbl_status dbl_expansion_fill_norms(dbl_context* ctx, dbl_expansion* e, size_t samples);

/* Homogeneity norm of a k-homogeneous polynomial {space, R, monomials}.
 * Writes {"k", "value", "exact"}. */
DBL_API dbl_status dbl_khom_norm(dbl_context* ctx, const char* polynomial_json, size_t samples,
                                 char** out_json);

/* k^k ‖k‖^{-‖k‖} for a multiindex given as [[position, exponent], ...]. */
DBL_API dbl_status dbl_monomial_norm(const char* multiindex_json, double* out);

/* ---- dominating function --------------------------------------------------- */

DBL_API dbl_status dbl_delta(double q_re, double q_im, const double* z, size_t n, uint32_t max_degree,
                             dbl_delta_mode mode, char** out_json);
DBL_API dbl_status dbl_delta_sup_bound(double q_abs, double theta, double* out);

/* ---- Runge approximation --------------------------------------------------- */

/* Runs the driver on e (whose R is used). Writes the approximant and the
 * certificate JSON. An unsatisfied certificate is still written and the
 * call returns DBL_CERTIFICATION. */
DBL_API dbl_status dbl_runge_approximate(dbl_context* ctx, const dbl_expansion* e, double r, double eps,
                                         dbl_expansion** approximant, char** certificate_json);

/* ---- polynomials and (0,1)-forms on C^n ---------------------------------- */

DBL_API dbl_status dbl_polyfunc_from_json(const char* json, dbl_polyfunc** out);
DBL_API dbl_status dbl_polyfunc_to_json(const dbl_polyfunc* u, char** out);
DBL_API void dbl_polyfunc_destroy(dbl_polyfunc* u);

DBL_API dbl_status dbl_polyform_from_json(const char* json, dbl_polyform** out);
DBL_API dbl_status dbl_polyform_to_json(const dbl_polyform* f, char** out);
DBL_API void dbl_polyform_destroy(dbl_polyform* f);

DBL_API dbl_status dbl_dbar(const dbl_polyfunc* u, dbl_polyform** out);

/* exact != 0 runs the check over Gaussian rationals. Writes
 * {"closed", "residuals": [{"i", "j", "value"}]} with 1-based i < j. */
DBL_API dbl_status dbl_is_closed(const dbl_polyform* f, int exact, int* closed, char** report_json);

/* Returns DBL_PRECONDITION when f is not closed. */
DBL_API dbl_status dbl_homotopy_solve(const dbl_polyform* f, int exact, dbl_polyfunc** out);

/* Cauchy-Pompeiu solve of du/dzbar = g(z) on the disc |z| < radius,
 * restricted to the complex line a + z v. points is interleaved re, im.
 * Writes {"points", "values", "skipped", "dbar_residual"}. */
DBL_API dbl_status dbl_slice_solve(const dbl_polyform* f, const double* a, const double* v,
                                   double radius, const double* points, size_t count,
                                   uint32_t nodes, char** out_json);

DBL_API dbl_status dbl_min_sup_solution(dbl_context* ctx, const dbl_polyform* f, double r,
                                        uint32_t degree, size_t grid, size_t iterations,
                                        dbl_polyfunc** out, double* sup);

DBL_API dbl_status dbl_cm_norm_function(dbl_context* ctx, const dbl_polyfunc* u, uint32_t m,
                                        double radius, double p, size_t samples, double* out);
DBL_API dbl_status dbl_cm_norm_form(dbl_context* ctx, const dbl_polyform* f, uint32_t m,
                                    double radius, double p, size_t samples, double* out);

/* Condensation of a family. The request is either
 *   {"P", "family": "zbar-power" | "zero", "n"}  or
 *   {"P", "members": [{"p", "n", "radius", "form"}]}.
 * Writes {"space", "form", "weights", "scale_factors", "measured_norms"}. */
DBL_API dbl_status dbl_condense(dbl_context* ctx, const char* request_json, char** out_json);

/* Growth table CSV (p,n,r,cm_norm,min_sup) for a builtin family. */
DBL_API dbl_status dbl_growth_table(dbl_context* ctx, const char* family, uint32_t n,
                                    const double* radii, size_t radius_count, uint32_t p_min,
                                    uint32_t p_max, char** out_csv);

/* ---- almost complex structure on B x G ------------------------------------ */

DBL_API dbl_status dbl_gform_from_json(const char* json, dbl_gform** out);
DBL_API dbl_status dbl_gform_to_json(const dbl_gform* f, char** out);
DBL_API void dbl_gform_destroy(dbl_gform* f);

/* Membership of a tangent vector {x, z, zeta10, zeta01, nu10, nu01}.
 * Writes {"member", "zeta10", "fiber"}. */
DBL_API dbl_status dbl_acs_check(const dbl_gform* f, const char* tangent_json, double tol,
                                 char** out_json);

/* Writes {"v1", "v2", "v1_residual", "conj_v2_residual", "kernel_dim"}. */
DBL_API dbl_status dbl_acs_decompose(const dbl_gform* f, const char* tangent_json, char** out_json);

/* Integrability residual table as CSV (point,vector,residual_norm). */
DBL_API dbl_status dbl_acs_residual(dbl_context* ctx, const dbl_gform* f, size_t points,
                                    size_t vectors, char** out_csv);

/* Additive group: g = f + dbar u and the sampled pushforward residual.
 * Writes {"form", "residual"}. */
DBL_API dbl_status dbl_acs_transport(dbl_context* ctx, const dbl_gform* f, const dbl_polyfunc* u,
                                     size_t samples, char** out_json);

/* Finite-difference Maurer-Cartan residual on GL(m). */
DBL_API dbl_status dbl_acs_mc_check(dbl_context* ctx, uint32_t m, double h, size_t samples,
                                    double* out);

/* ---- self test ------------------------------------------------------------ */

DBL_API dbl_status dbl_selftest(uint64_t seed, char** out_json, int* passed);

#ifdef __cplusplus
}
#endif

#endif /* DBARLAB_H */

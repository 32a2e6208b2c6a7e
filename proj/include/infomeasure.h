/*
 * infomeasure: information measures on finite probability distributions.
 *
 * Shannon and relative (Kullback-Leibler) entropy, their q-logarithmic
 * (Tsallis / Havrda-Charvat) deformations, an axiom-audit engine that
 * evaluates the residuals of symmetry / vanishing / chain-rule identities
 * on randomized instances, a characterization engine that recovers the
 * scale constant of a candidate measure, and a small expression DSL for
 * user-supplied candidates.
 *
 * The API uses opaque handles and status codes.  All functions return
 * im_status; results go through out-parameters.  On failure, a thread-local
 * message (and, for parse errors, a source span) describes what went wrong.
 * Strings returned through char** out-parameters are heap-allocated and
 * must be released with im_string_free.
 */

#ifndef INFOMEASURE_H
#define INFOMEASURE_H

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#define IM_API __declspec(dllexport)
#else
#define IM_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum im_status {
  IM_OK = 0,
  IM_ERR_INVALID_ARGUMENT = 1, /* validation or usage error */
  IM_ERR_DOMAIN = 2,           /* argument outside a function's domain */
  IM_ERR_PARSE = 3,            /* DSL syntax error; span available */
  IM_ERR_KIND_MISMATCH = 4,    /* entropy/divergence kind mismatch */
  IM_ERR_NOMEM = 5,
  IM_ERR_INTERNAL = 6
} im_status;

typedef enum im_measure_kind {
  IM_KIND_ENTROPY = 0,   /* evaluated on single distributions */
  IM_KIND_DIVERGENCE = 1 /* evaluated on absolutely continuous pairs */
} im_measure_kind;

typedef struct im_distribution im_distribution;
typedef struct im_pair im_pair;
typedef struct im_measure im_measure;

IM_API const char* im_version(void);

/* Thread-local description of the most recent failure in this thread. */
IM_API const char* im_last_error_message(void);

/* Byte span of the most recent parse error; returns 1 and fills the
 * out-parameters if a span is available, 0 otherwise. */
IM_API int im_last_error_span(size_t* begin, size_t* end);

IM_API void im_string_free(char* s);

/* ---- distributions and pairs ------------------------------------------- */

/* Validates: entries nonnegative and finite, summing to 1 within 1e-9,
 * with nonempty support.  Weights are stored as given. */
IM_API im_status im_distribution_create(const double* weights, size_t n,
                                        im_distribution** out);

/* Rescales the weights by their (positive) sum, then validates. */
IM_API im_status im_distribution_create_normalized(const double* weights,
                                                   size_t n,
                                                   im_distribution** out);

IM_API void im_distribution_free(im_distribution* d);
IM_API size_t im_distribution_size(const im_distribution* d);

/* Validates both coordinates plus absolute continuity: p_i = 0 whenever
 * r_i = 0 (exactly the pairs with finite relative entropy). */
IM_API im_status im_pair_create(const double* p, const double* r, size_t n,
                                im_pair** out);
IM_API void im_pair_free(im_pair* pair);

/* ---- direct computations ----------------------------------------------- */

/* ln_q(x) = integral of t^(-q) from 1 to x; natural log at q = 1. */
IM_API im_status im_q_logarithm(double x, double q, double* out);

IM_API im_status im_shannon_entropy(const im_distribution* p, double* out);
IM_API im_status im_relative_entropy(const im_pair* pair, double* out);

/* Relative entropy on raw arrays, valued in [0, +inf]: returns IM_OK with
 * *out = +infinity when some index has p_i > 0 and r_i = 0. */
IM_API im_status im_relative_entropy_extended(const double* p, const double* r,
                                              size_t n, double* out);

IM_API im_status im_q_entropy(const im_distribution* p, double q, double* out);
IM_API im_status im_q_relative_entropy(const im_pair* pair, double q,
                                       double* out);

/* ---- measure handles ---------------------------------------------------- */

/* name: "shannon" | "kl" | "q-entropy" | "q-kl".  The q-deformed measures
 * take their parameter from `q`; it is ignored for shannon and kl. */
IM_API im_status im_measure_builtin(const char* name, double q,
                                    im_measure** out);

/* Parses a DSL source string (a per-index summand over p, r, q, with an
 * optional affine(a, b, ...) wrapper) and wraps it as a measure of the
 * given kind.  Pass has_q = 0 when no q parameter applies. */
IM_API im_status im_measure_dsl(const char* source, im_measure_kind kind,
                                int has_q, double q, im_measure** out);

IM_API void im_measure_free(im_measure* m);
IM_API im_measure_kind im_measure_kind_of(const im_measure* m);
IM_API const char* im_measure_label(const im_measure* m);

IM_API im_status im_measure_eval_distribution(const im_measure* m,
                                              const im_distribution* p,
                                              double* out);
IM_API im_status im_measure_eval_pair(const im_measure* m, const im_pair* pair,
                                      double* out);

/* ---- axiom audit -------------------------------------------------------- */

typedef struct im_audit_options {
  uint64_t seed;
  int trials;              /* >= 1 */
  size_t max_n;            /* largest sampled distribution length, >= 2 */
  size_t max_blocks;       /* largest number of chain blocks, >= 1 */
  double tol;              /* absolute residual tolerance */
  double zero_pattern_prob; /* probability of sampling a zero pattern */
  int has_weight_q;        /* nonzero to override the chain weight exponent */
  double weight_q;
} im_audit_options;

/* Fills the documented defaults: seed 0, 1000 trials, max_n 8, max_blocks 4,
 * tol 1e-9, zero_pattern_prob 0.25, measure-derived weight exponent. */
IM_API void im_audit_options_init(im_audit_options* options);

/* Axiom names: "symmetry", "vanishing", "chain", "recursivity", "two-block"
 * (divergence), "q-chain", "q-mult" (entropy), "q-rel-mult" (divergence).
 * Passing n_axioms = 0 audits every axiom applicable to the measure kind.
 * The report is a JSON document; identical seed and configuration produce
 * byte-identical reports.  *all_pass is set to 1 iff every audited axiom
 * stayed within tolerance. */
IM_API im_status im_audit_run(const im_measure* m,
                              const char* const* axiom_names, size_t n_axioms,
                              const im_audit_options* options,
                              char** report_json, int* all_pass);

/* ---- characterization --------------------------------------------------- */

typedef struct im_characterize_options {
  int has_q;
  double q;    /* required by thm2/thm3; must satisfy |q - 1| > 1e-12 */
  double tol;  /* pass threshold on max_residual */
  int trials;  /* instances for scaling verification */
  uint64_t seed;
} im_characterize_options;

/* Defaults: no q, tol 1e-9, 500 trials, seed 0. */
IM_API void im_characterize_options_init(im_characterize_options* options);

/* method: "fit" (log-fit of alpha -> m((1,0)||(alpha,1-alpha)) against
 * -log alpha, divergence-type), "thm2" (entropy-type constant extraction at
 * q != 1), "thm3" (divergence-type constant extraction at q != 1).
 * The result JSON is {"c", "max_residual", "method", "sign_note"}; *within_tol
 * is set to 1 iff max_residual <= options->tol. */
IM_API im_status im_characterize_run(const im_measure* m, const char* method,
                                     const im_characterize_options* options,
                                     char** result_json, int* within_tol);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* INFOMEASURE_H */

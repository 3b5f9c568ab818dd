/* hiddenset - hidden set recovery on noisy graphs.
 *
 * C API over the C++ core: opaque handles, integer error codes. Every
 * function returns HS_OK (0) on success; hs_last_error() describes the most
 * recent failure on the calling thread. Handles are freed with their
 * matching hs_*_free function; out-pointers stay valid until the owning
 * handle is freed.
 */
#ifndef HIDDENSET_H
#define HIDDENSET_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

#define HS_API __attribute__((visibility("default")))

enum hs_error_code {
    HS_OK = 0,
    HS_EINVAL = 1,      /* invalid argument or configuration */
    HS_EIO = 2,         /* file could not be read or written */
    HS_EDIVERGED = 3,   /* numeric recursion left its admissible range */
    HS_EUNSUPPORTED = 4,/* operation undefined for this model */
    HS_EINTERNAL = 5,
};

HS_API const char* hs_version(void);
/* Message for the last failing call on this thread ("" if none). */
HS_API const char* hs_last_error(void);

/* ---- noise specifications ------------------------------------------- */

typedef struct hs_noise hs_noise;

HS_API int hs_noise_rademacher(hs_noise** out);
HS_API int hs_noise_gaussian_shift(double lambda, hs_noise** out);
HS_API int hs_noise_custom_discrete(const double* q0_support, const double* q0_prob, size_t q0_len,
                                    const double* q1_support, const double* q1_prob, size_t q1_len,
                                    double rho, hs_noise** out);
HS_API double hs_noise_lambda(const hs_noise* noise);
HS_API int hs_noise_lambda_tilde(const hs_noise* noise, double* out);
HS_API void hs_noise_free(hs_noise* noise);

/* ---- dense instances -------------------------------------------------- */

typedef struct hs_dense_instance hs_dense_instance;

/* k >= 0 samples a uniform hidden set of that size. */
HS_API int hs_dense_generate(int64_t n, int64_t k, const hs_noise* noise, uint64_t seed,
                             hs_dense_instance** out);
HS_API int hs_dense_generate_with_set(int64_t n, const int32_t* hidden, size_t hidden_len,
                                      const hs_noise* noise, uint64_t seed,
                                      hs_dense_instance** out);
HS_API int hs_dense_save(const hs_dense_instance* inst, const char* path);
HS_API int hs_dense_load(const char* path, hs_dense_instance** out);
HS_API int64_t hs_dense_n(const hs_dense_instance* inst);
HS_API int hs_dense_hidden(const hs_dense_instance* inst, const int32_t** data, size_t* len);
/* Row-major n*n symmetric matrix with zero diagonal. */
HS_API int hs_dense_matrix(const hs_dense_instance* inst, const double** data);
HS_API void hs_dense_free(hs_dense_instance* inst);

/* ---- sparse instances ------------------------------------------------- */

typedef struct hs_sparse_instance hs_sparse_instance;

/* sampling: 0 = iid labels, 1 = fixed size. */
HS_API int hs_sparse_generate(int32_t n, int32_t delta, double kappa, const hs_noise* noise,
                              int sampling, uint64_t seed, hs_sparse_instance** out);
HS_API int hs_sparse_save(const hs_sparse_instance* inst, const char* path);
HS_API int hs_sparse_load(const char* path, hs_sparse_instance** out);
HS_API int32_t hs_sparse_n(const hs_sparse_instance* inst);
HS_API int hs_sparse_labels(const hs_sparse_instance* inst, const uint8_t** data, size_t* len);
HS_API void hs_sparse_free(hs_sparse_instance* inst);

/* ---- state evolution --------------------------------------------------- */

typedef struct hs_schedule hs_schedule;

HS_API int hs_schedule_build(double lambda, double kappa, int d_star, int t_star,
                             hs_schedule** out);
/* t_star = first level with mu_hat above m_threshold, capped at t_cap. */
HS_API int hs_schedule_build_auto(double lambda, double kappa, int d_star, double m_threshold,
                                  int t_cap, hs_schedule** out);
HS_API int hs_schedule_t_star(const hs_schedule* s);
HS_API int hs_schedule_mu_hat(const hs_schedule* s, int t, double* out);
HS_API int hs_schedule_diverged_at(const hs_schedule* s); /* -1 when bounded */
HS_API void hs_schedule_free(hs_schedule* s);

/* Fills up to cap entries; *len reports how many were produced. A truncated
 * trace (divergence) is reported through *diverged_at, not as an error. */
HS_API int hs_se_ideal(double lambda_kappa, int t_max, double* mu, size_t cap, size_t* len,
                       int* diverged_at);
HS_API int hs_se_general(const hs_schedule* s, int t_max, double* mu, double* tau, size_t cap,
                         size_t* len, int* diverged_at);
HS_API int hs_se_sparse(double kappa, int t_max, double* mu0, double* mu1, double* sigma2,
                        double* predicted_error, size_t cap, size_t* len, int* diverged_at);

/* ---- dense pipeline ---------------------------------------------------- */

typedef struct hs_dense_result hs_dense_result;

typedef struct hs_dense_params {
    int d_star;         /* <= 0: 40 */
    double m_threshold; /* <= 0: 10 */
    int t_star;         /* <= 0: auto */
    int t_power;        /* <= 0: ceil(10 ln n) */
    double rho_bar;     /* <= 0: per noise family */
    int threads;        /* <= 0: 1 */
} hs_dense_params;

HS_API int hs_dense_run(const hs_dense_instance* inst, int64_t k, const hs_dense_params* params,
                        hs_dense_result** out);
HS_API int hs_dense_result_success(const hs_dense_result* r);
HS_API int hs_dense_result_set(const hs_dense_result* r, const int32_t** data, size_t* len);
HS_API int hs_dense_result_stage_sizes(const hs_dense_result* r, int64_t* candidate,
                                       int64_t* eigen, int64_t* final_size);
HS_API void hs_dense_result_free(hs_dense_result* r);

/* Spectral baseline: top-k of the leading eigenvector. Overlap outputs are
 * filled when the instance carries a nonempty hidden set. */
HS_API int hs_dense_spectral(const hs_dense_instance* inst, int64_t k, int iterations,
                             int32_t* set_out, size_t cap, size_t* len, double* truth_overlap,
                             double* eigvec_overlap);

/* ---- sparse pipeline ---------------------------------------------------- */

/* Runs t rounds of BP and thresholds the vertex odds at sqrt(delta).
 * symdiff/overlap are against the instance labels. */
HS_API int hs_sparse_bp_run(const hs_sparse_instance* inst, int t, int64_t* symdiff,
                            double* error_rate, int32_t* set_out, size_t cap, size_t* len);

typedef struct hs_population hs_population;

HS_API int hs_population_create(double kappa, int32_t delta, int64_t pool_size, uint64_t seed,
                                hs_population** out);
HS_API int hs_population_step(hs_population* pop, int threads);
HS_API int hs_population_means(const hs_population* pop, double* mean0, double* mean1);
HS_API int hs_population_misclassification(const hs_population* pop, int threads, double* out);
HS_API void hs_population_free(hs_population* pop);

/* Conditional error rates of the counting rule, p[0..t], q[0..t]. */
HS_API int hs_local_rule_pq(double kappa, int32_t delta, double eps, int t_rounds,
                            int64_t replicas, uint64_t seed, double* p, double* q, size_t cap,
                            size_t* len);

/* ---- harness ------------------------------------------------------------ */

/* config_text holds key=value lines (same keys as the CLI flags). Runs the
 * sweep for the config and writes the CSV to out_path. */
HS_API int hs_sweep_run(const char* config_text, const char* out_path);

/* One seeded trial; fields are written into the out-params. algo may be ""
 * to use the configured one. */
HS_API int hs_trial_run(const char* config_text, int64_t trial_index, const char* algo,
                        int* success, int64_t* symdiff, double* overlap, uint64_t* seed_out);

/* run-sparse / se CSV emission for the CLI. */
HS_API int hs_sparse_modes_csv(const char* config_text, const char* out_path);
HS_API int hs_se_csv(const char* config_text, const char* out_path);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* HIDDENSET_H */

/* cftray — compound flexible-tailed Rayleigh clutter amplitude model.
 *
 * C interface of the shared library: plain structs, opaque handles and
 * status codes. All functions are thread-safe except that an rng or fit
 * handle must not be used from two threads at once. On failure the return
 * code is non-zero and cftray_last_error() gives a thread-local message.
 */
#ifndef CFTRAY_H
#define CFTRAY_H

#include <stddef.h>
#include <stdint.h>

#ifdef __cplusplus
extern "C" {
#endif

typedef enum cftray_status {
  CFTRAY_OK = 0,
  CFTRAY_EINVAL = 1,       /* invalid argument / parameter validation */
  CFTRAY_ENOCONV = 2,      /* quadrature or search did not converge */
  CFTRAY_ELOGDOM = 3,      /* empirical CF nonpositive (log undefined) */
  CFTRAY_ENODES = 4,       /* too many nodes outside the effective zone */
  CFTRAY_EDEGREF = 5,      /* degenerate reference frequency */
  CFTRAY_ENOMEM = 6,
  CFTRAY_EINTERNAL = 7
} cftray_status;

/* Model parameters (alpha, gamma, eta). eta_infinite selects the
 * heavy-tailed limit; eta is then ignored. alpha = 2 is exactly Rayleigh. */
typedef struct cftray_model {
  double alpha;
  double gamma;
  double eta;
  int eta_infinite;
} cftray_model;

typedef struct cftray_quad {
  double abs_tol;  /* default 1e-10 */
  double rel_tol;  /* default 1e-8 */
  int max_lobes;   /* default 10000 */
  double tail_cut; /* default 1e-16 */
} cftray_quad;

typedef struct cftray_eval {
  double value;
  double est_error;
  int lobes_used;
} cftray_eval;

typedef struct cftray_gof_report {
  double ks_stat;
  double ks_critical;
  double te_stat;
  double te_critical;
  double pfa;
  int pass_ks;
  int pass_te;
  int insufficient_tail;
} cftray_gof_report;

/* Estimator configuration as grid descriptors. alpha grid is
 * alpha_min, alpha_min + alpha_step, ..., up to alpha_max; eta grid is
 * eta_points log-spaced points on [10^eta_log10_min, 10^eta_log10_max]. */
typedef struct cftray_fit_config {
  int k_nodes;
  double alpha_min;
  double alpha_max;
  double alpha_step;
  double eta_log10_min;
  double eta_log10_max;
  int eta_points;
  int refine_rounds;
  double refine_shrink;
} cftray_fit_config;

void cftray_quad_defaults(cftray_quad* q);
void cftray_fit_config_defaults(cftray_fit_config* cfg);

const char* cftray_version(void);
const char* cftray_status_string(cftray_status s);
/* Message describing the most recent failure on this thread. */
const char* cftray_last_error(void);

/* ---- characteristic functions --------------------------------------- */

/* Stable CF at frequency xi; out_reim = {Re, Im}. */
cftray_status cftray_stable_cf(double xi, double alpha, double gamma,
                               double beta, double out_reim[2]);
/* Tempered stable CF (finite eta required). */
cftray_status cftray_tempered_stable_cf(double xi, double alpha,
                                        double gamma, double beta,
                                        double eta, double out_reim[2]);
/* Radial exponent Psi(s) of the bivariate isotropic model. */
cftray_status cftray_isotropic_exponent(const cftray_model* m, double s,
                                        double* out);
/* exp(Psi(sqrt(xi1^2 + xi2^2))). */
cftray_status cftray_cg_cf(const cftray_model* m, double xi1, double xi2,
                           double* out);
/* Laplace transform of the texture law at s'. */
cftray_status cftray_texture_laplace(const cftray_model* m, double sprime,
                                     double* out);

/* ---- amplitude law ---------------------------------------------------- */

cftray_status cftray_pdf(const cftray_model* m, double r,
                         const cftray_quad* q, cftray_eval* out);
cftray_status cftray_ccdf(const cftray_model* m, double r,
                          const cftray_quad* q, cftray_eval* out);
/* r with ccdf(r) = p. */
cftray_status cftray_quantile(const cftray_model* m, double p,
                              const cftray_quad* q, double* out);
/* E[R^2]; fails for the heavy-tailed model with alpha < 2. */
cftray_status cftray_mean_square(const cftray_model* m, double* out);

/* ---- sampling --------------------------------------------------------- */

typedef struct cftray_rng cftray_rng;

cftray_rng* cftray_rng_new(uint64_t seed);
void cftray_rng_free(cftray_rng* rng);

/* n texture draws into out[n]. low_acceptance (may be NULL) is set when the
 * analytic single-shot acceptance falls below 1e-3. */
cftray_status cftray_sample_texture(const cftray_model* m, cftray_rng* rng,
                                    size_t n, double* out,
                                    int* low_acceptance);
cftray_status cftray_sample_complex(const cftray_model* m, cftray_rng* rng,
                                    size_t n, double* out_i, double* out_q,
                                    int* low_acceptance);
cftray_status cftray_sample_amplitude(const cftray_model* m,
                                      cftray_rng* rng, size_t n, double* out,
                                      int* low_acceptance);

/* ---- estimation -------------------------------------------------------- */

typedef struct cftray_fit cftray_fit;

/* kind values reported by cftray_fit_kind */
enum {
  CFTRAY_FIT_RAYLEIGH = 0,
  CFTRAY_FIT_HT_RAYLEIGH = 1,
  CFTRAY_FIT_CFT_RAYLEIGH = 2
};

cftray_status cftray_fit_cft_rayleigh(const double* r, size_t n,
                                      const cftray_fit_config* cfg,
                                      cftray_fit** out);
cftray_status cftray_fit_ht_rayleigh(const double* r, size_t n,
                                     const cftray_fit_config* cfg,
                                     cftray_fit** out);
cftray_status cftray_fit_rayleigh(const double* r, size_t n,
                                  cftray_fit** out);
void cftray_fit_free(cftray_fit* fit);

cftray_status cftray_fit_get_model(const cftray_fit* fit, cftray_model* m);
double cftray_fit_objective(const cftray_fit* fit);
int cftray_fit_kind(const cftray_fit* fit);
int cftray_fit_eta_at_boundary(const cftray_fit* fit);
int cftray_fit_dropped_nodes(const cftray_fit* fit);
size_t cftray_fit_trace_len(const cftray_fit* fit);
cftray_status cftray_fit_trace_entry(const cftray_fit* fit, size_t i,
                                     int* round, double* alpha, double* eta,
                                     double* objective);

/* (1/n) sum J0(s r_i). */
cftray_status cftray_empirical_cf(const double* r, size_t n, double s,
                                  double* out);
/* K positive order-2K Gauss-Hermite nodes and weights into arrays of
 * length K. */
cftray_status cftray_gauss_hermite(int k, double* nodes, double* weights);

/* ---- goodness of fit --------------------------------------------------- */

/* KS + TE against the given model. te_critical_db <= 0 selects the 1 dB
 * default. */
cftray_status cftray_gof_evaluate(const double* r, size_t n,
                                  const cftray_model* m,
                                  const cftray_quad* q, double pfa,
                                  double te_critical_db,
                                  cftray_gof_report* out);
cftray_status cftray_empirical_ccdf(const double* r, size_t n, double x,
                                    double* out);

#ifdef __cplusplus
} /* extern "C" */
#endif

#endif /* CFTRAY_H */

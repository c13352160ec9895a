#include "cftray/cftray.h"

#include <cmath>
#include <cstring>
#include <new>
#include <stdexcept>
#include <string>

#include "amplitude.hpp"
#include "charfn.hpp"
#include "errors.hpp"
#include "estimate.hpp"
#include "gof.hpp"
#include "rng.hpp"
#include "sampler.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const char* what) { g_last_error = what ? what : ""; }

template <class Fn>
cftray_status wrap(Fn&& fn) {
  try {
    fn();
    return CFTRAY_OK;
  } catch (const cftray::NonConvergence& e) {
    set_error(e.what());
    return CFTRAY_ENOCONV;
  } catch (const cftray::LogDomainError& e) {
    set_error(e.what());
    return CFTRAY_ELOGDOM;
  } catch (const cftray::AllNodesInvalid& e) {
    set_error(e.what());
    return CFTRAY_ENODES;
  } catch (const cftray::DegenerateReference& e) {
    set_error(e.what());
    return CFTRAY_EDEGREF;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return CFTRAY_EINVAL;
  } catch (const std::bad_alloc& e) {
    set_error(e.what());
    return CFTRAY_ENOMEM;
  } catch (const std::exception& e) {
    set_error(e.what());
    return CFTRAY_EINTERNAL;
  } catch (...) {
    set_error("unknown failure");
    return CFTRAY_EINTERNAL;
  }
}

cftray::ModelParams to_model(const cftray_model* m) {
  if (!m) throw std::invalid_argument("model pointer is null");
  if (m->eta_infinite)
    return cftray::ModelParams::heavy_tailed(m->alpha, m->gamma);
  return cftray::ModelParams::tempered(m->alpha, m->gamma, m->eta);
}

cftray::QuadratureSpec to_quad(const cftray_quad* q) {
  cftray::QuadratureSpec spec;
  if (q) {
    spec.abs_tol = q->abs_tol;
    spec.rel_tol = q->rel_tol;
    spec.max_lobes = q->max_lobes;
    spec.tail_cut = q->tail_cut;
  }
  spec.validate();
  return spec;
}

cftray::EstimationConfig to_config(const cftray_fit_config* cfg) {
  cftray::EstimationConfig out;
  if (!cfg) return out;
  out.k_nodes = cfg->k_nodes;
  out.refine_rounds = cfg->refine_rounds;
  out.refine_shrink = cfg->refine_shrink;
  if (!(cfg->alpha_step > 0.0) || !(cfg->alpha_max >= cfg->alpha_min))
    throw std::invalid_argument("fit config: bad alpha grid descriptor");
  out.alpha_grid.clear();
  for (int i = 0;; ++i) {
    const double a = cfg->alpha_min + i * cfg->alpha_step;
    if (a > cfg->alpha_max * (1.0 + 1e-12)) break;
    out.alpha_grid.push_back(std::min(a, 2.0));
    if (out.alpha_grid.size() > 10000)
      throw std::invalid_argument("fit config: alpha grid too large");
  }
  if (cfg->eta_points < 1)
    throw std::invalid_argument("fit config: eta_points must be >= 1");
  out.eta_grid.clear();
  for (int j = 0; j < cfg->eta_points; ++j) {
    const double t =
        cfg->eta_points == 1
            ? cfg->eta_log10_min
            : cfg->eta_log10_min + (cfg->eta_log10_max - cfg->eta_log10_min) *
                                       j / (cfg->eta_points - 1);
    out.eta_grid.push_back(std::pow(10.0, t));
  }
  out.validate();
  return out;
}

cftray::AmplitudeSeries to_series(const double* r, size_t n) {
  if (!r) throw std::invalid_argument("sample pointer is null");
  return cftray::AmplitudeSeries(std::vector<double>(r, r + n));
}

void fill_model(const cftray::ModelParams& p, cftray_model* out) {
  out->alpha = p.alpha;
  out->gamma = p.gamma;
  out->eta = p.eta_infinite ? 0.0 : p.eta;
  out->eta_infinite = p.eta_infinite ? 1 : 0;
}

}  // namespace

struct cftray_rng {
  cftray::Rng impl;
};

struct cftray_fit {
  cftray::FitResult res;
};

extern "C" {

void cftray_quad_defaults(cftray_quad* q) {
  if (!q) return;
  const cftray::QuadratureSpec spec;
  q->abs_tol = spec.abs_tol;
  q->rel_tol = spec.rel_tol;
  q->max_lobes = spec.max_lobes;
  q->tail_cut = spec.tail_cut;
}

void cftray_fit_config_defaults(cftray_fit_config* cfg) {
  if (!cfg) return;
  cfg->k_nodes = 10;
  cfg->alpha_min = 0.05;
  cfg->alpha_max = 2.0;
  cfg->alpha_step = 0.05;
  cfg->eta_log10_min = -3.0;
  cfg->eta_log10_max = 3.0;
  cfg->eta_points = 41;
  cfg->refine_rounds = 2;
  cfg->refine_shrink = 0.1;
}

const char* cftray_version(void) { return "0.1.0"; }

const char* cftray_status_string(cftray_status s) {
  switch (s) {
    case CFTRAY_OK:
      return "ok";
    case CFTRAY_EINVAL:
      return "invalid argument";
    case CFTRAY_ENOCONV:
      return "did not converge";
    case CFTRAY_ELOGDOM:
      return "empirical CF outside log domain";
    case CFTRAY_ENODES:
      return "too many nodes outside the effective zone";
    case CFTRAY_EDEGREF:
      return "degenerate reference frequency";
    case CFTRAY_ENOMEM:
      return "out of memory";
    case CFTRAY_EINTERNAL:
      return "internal error";
  }
  return "unknown status";
}

const char* cftray_last_error(void) { return g_last_error.c_str(); }

cftray_status cftray_stable_cf(double xi, double alpha, double gamma,
                               double beta, double out_reim[2]) {
  return wrap([&] {
    if (!out_reim) throw std::invalid_argument("output pointer is null");
    const auto v =
        cftray::alpha_stable_cf(xi, cftray::StableParams(alpha, gamma, beta));
    out_reim[0] = v.real();
    out_reim[1] = v.imag();
  });
}

cftray_status cftray_tempered_stable_cf(double xi, double alpha,
                                        double gamma, double beta,
                                        double eta, double out_reim[2]) {
  return wrap([&] {
    if (!out_reim) throw std::invalid_argument("output pointer is null");
    const auto v = cftray::tempered_stable_cf(
        xi, cftray::TemperedStableParams(alpha, gamma, beta, eta));
    out_reim[0] = v.real();
    out_reim[1] = v.imag();
  });
}

cftray_status cftray_isotropic_exponent(const cftray_model* m, double s,
                                        double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::isotropic_exponent(s, to_model(m));
  });
}

cftray_status cftray_cg_cf(const cftray_model* m, double xi1, double xi2,
                           double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::cg_ptas_cf(xi1, xi2, to_model(m));
  });
}

cftray_status cftray_texture_laplace(const cftray_model* m, double sprime,
                                     double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::texture_laplace(sprime, to_model(m));
  });
}

cftray_status cftray_pdf(const cftray_model* m, double r,
                         const cftray_quad* q, cftray_eval* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    const auto e = cftray::pdf(r, to_model(m), to_quad(q));
    out->value = e.value;
    out->est_error = e.est_error;
    out->lobes_used = e.lobes_used;
  });
}

cftray_status cftray_ccdf(const cftray_model* m, double r,
                          const cftray_quad* q, cftray_eval* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    const auto e = cftray::ccdf(r, to_model(m), to_quad(q));
    out->value = e.value;
    out->est_error = e.est_error;
    out->lobes_used = e.lobes_used;
  });
}

cftray_status cftray_quantile(const cftray_model* m, double p,
                              const cftray_quad* q, double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::quantile(p, to_model(m), to_quad(q));
  });
}

cftray_status cftray_mean_square(const cftray_model* m, double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::mean_square(to_model(m));
  });
}

cftray_rng* cftray_rng_new(uint64_t seed) {
  return new (std::nothrow) cftray_rng{cftray::Rng(seed)};
}

void cftray_rng_free(cftray_rng* rng) { delete rng; }

cftray_status cftray_sample_texture(const cftray_model* m, cftray_rng* rng,
                                    size_t n, double* out,
                                    int* low_acceptance) {
  return wrap([&] {
    if (!rng || !out) throw std::invalid_argument("null pointer argument");
    const auto model = to_model(m);
    cftray::SampleStats stats;
    for (size_t i = 0; i < n; ++i)
      out[i] = cftray::sample_texture(model, rng->impl, &stats);
    if (low_acceptance) *low_acceptance = stats.low_acceptance ? 1 : 0;
  });
}

cftray_status cftray_sample_complex(const cftray_model* m, cftray_rng* rng,
                                    size_t n, double* out_i, double* out_q,
                                    int* low_acceptance) {
  return wrap([&] {
    if (!rng || !out_i || !out_q)
      throw std::invalid_argument("null pointer argument");
    cftray::SampleStats stats;
    const auto series =
        cftray::sample_complex(to_model(m), n, rng->impl, &stats);
    std::memcpy(out_i, series.i_comp.data(), n * sizeof(double));
    std::memcpy(out_q, series.q_comp.data(), n * sizeof(double));
    if (low_acceptance) *low_acceptance = stats.low_acceptance ? 1 : 0;
  });
}

cftray_status cftray_sample_amplitude(const cftray_model* m,
                                      cftray_rng* rng, size_t n, double* out,
                                      int* low_acceptance) {
  return wrap([&] {
    if (!rng || !out) throw std::invalid_argument("null pointer argument");
    cftray::SampleStats stats;
    const auto series =
        cftray::sample_amplitude(to_model(m), n, rng->impl, &stats);
    std::memcpy(out, series.data(), n * sizeof(double));
    if (low_acceptance) *low_acceptance = stats.low_acceptance ? 1 : 0;
  });
}

cftray_status cftray_fit_cft_rayleigh(const double* r, size_t n,
                                      const cftray_fit_config* cfg,
                                      cftray_fit** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    auto res = cftray::fit_cft_rayleigh(to_series(r, n), to_config(cfg));
    *out = new cftray_fit{std::move(res)};
  });
}

cftray_status cftray_fit_ht_rayleigh(const double* r, size_t n,
                                     const cftray_fit_config* cfg,
                                     cftray_fit** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    auto res = cftray::fit_ht_rayleigh(to_series(r, n), to_config(cfg));
    *out = new cftray_fit{std::move(res)};
  });
}

cftray_status cftray_fit_rayleigh(const double* r, size_t n,
                                  cftray_fit** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    auto res = cftray::fit_rayleigh(to_series(r, n));
    *out = new cftray_fit{std::move(res)};
  });
}

void cftray_fit_free(cftray_fit* fit) { delete fit; }

cftray_status cftray_fit_get_model(const cftray_fit* fit, cftray_model* m) {
  return wrap([&] {
    if (!fit || !m) throw std::invalid_argument("null pointer argument");
    fill_model(fit->res.params, m);
  });
}

double cftray_fit_objective(const cftray_fit* fit) {
  return fit ? fit->res.objective : 0.0;
}

int cftray_fit_kind(const cftray_fit* fit) {
  if (!fit) return -1;
  switch (fit->res.kind) {
    case cftray::ModelKind::Rayleigh:
      return CFTRAY_FIT_RAYLEIGH;
    case cftray::ModelKind::HtRayleigh:
      return CFTRAY_FIT_HT_RAYLEIGH;
    case cftray::ModelKind::CftRayleigh:
      return CFTRAY_FIT_CFT_RAYLEIGH;
  }
  return -1;
}

int cftray_fit_eta_at_boundary(const cftray_fit* fit) {
  return fit && fit->res.eta_at_boundary ? 1 : 0;
}

int cftray_fit_dropped_nodes(const cftray_fit* fit) {
  return fit ? fit->res.dropped_nodes : 0;
}

size_t cftray_fit_trace_len(const cftray_fit* fit) {
  return fit ? fit->res.trace.size() : 0;
}

cftray_status cftray_fit_trace_entry(const cftray_fit* fit, size_t i,
                                     int* round, double* alpha, double* eta,
                                     double* objective) {
  return wrap([&] {
    if (!fit || i >= fit->res.trace.size())
      throw std::invalid_argument("trace index out of range");
    const auto& t = fit->res.trace[i];
    if (round) *round = t.round;
    if (alpha) *alpha = t.alpha;
    if (eta) *eta = t.eta;
    if (objective) *objective = t.objective;
  });
}

cftray_status cftray_empirical_cf(const double* r, size_t n, double s,
                                  double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::empirical_cf(to_series(r, n), s);
  });
}

cftray_status cftray_gauss_hermite(int k, double* nodes, double* weights) {
  return wrap([&] {
    if (!nodes || !weights)
      throw std::invalid_argument("output pointer is null");
    const auto [xs, ws] = cftray::gauss_hermite_nodes(k);
    for (int i = 0; i < k; ++i) {
      nodes[i] = xs[static_cast<std::size_t>(i)];
      weights[i] = ws[static_cast<std::size_t>(i)];
    }
  });
}

cftray_status cftray_gof_evaluate(const double* r, size_t n,
                                  const cftray_model* m,
                                  const cftray_quad* q, double pfa,
                                  double te_critical_db,
                                  cftray_gof_report* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    cftray::GofConfig cfg;
    if (pfa > 0.0) cfg.pfa = pfa;
    if (te_critical_db > 0.0) cfg.te_critical_db = te_critical_db;
    const auto rep =
        cftray::evaluate_gof(to_series(r, n), to_model(m), cfg, to_quad(q));
    out->ks_stat = rep.ks_stat;
    out->ks_critical = rep.ks_critical;
    out->te_stat = rep.te_stat;
    out->te_critical = rep.te_critical;
    out->pfa = rep.pfa;
    out->pass_ks = rep.pass_ks ? 1 : 0;
    out->pass_te = rep.pass_te ? 1 : 0;
    out->insufficient_tail = rep.insufficient_tail ? 1 : 0;
  });
}

cftray_status cftray_empirical_ccdf(const double* r, size_t n, double x,
                                    double* out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("output pointer is null");
    *out = cftray::empirical_ccdf(to_series(r, n), x);
  });
}

}  // extern "C"

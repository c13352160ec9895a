// cftray command-line tool: simulate synthetic clutter, evaluate the
// amplitude law, fit models to recorded data and run goodness-of-fit.
// Everything numeric goes through the shared library's C interface.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "cftray/cftray.h"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitNumeric = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NumericError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void check(cftray_status s, const std::string& context) {
  if (s == CFTRAY_OK) return;
  const std::string msg =
      context + ": " + cftray_status_string(s) + " (" + cftray_last_error() +
      ")";
  if (s == CFTRAY_EINVAL) throw UsageError(msg);
  throw NumericError(msg);
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

// ---- input parsing ------------------------------------------------------

struct SourceOptions {
  std::string path;
  std::string format = "amplitude-csv";
  long decimate = 1;
  long max_pulses = -1;  // unlimited
};

bool keep_index(long index, long decimate) { return index % decimate == 0; }

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<double> read_amplitude_csv(const SourceOptions& src) {
  std::ifstream in(src.path);
  if (!in) throw UsageError(src.path + ": cannot open for reading");
  std::vector<double> out;
  std::string line;
  long lineno = 0;
  long pulse = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = line;
    const auto hash = t.find('#');
    if (hash != std::string::npos) t.erase(hash);
    while (!t.empty() && std::isspace(static_cast<unsigned char>(t.back())))
      t.pop_back();
    std::size_t first = 0;
    while (first < t.size() &&
           std::isspace(static_cast<unsigned char>(t[first])))
      ++first;
    t.erase(0, first);
    if (t.empty()) continue;
    char* end = nullptr;
    const double v = std::strtod(t.c_str(), &end);
    if (end == t.c_str() || *end != '\0')
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": not a number: '" + t + "'");
    if (!(v >= 0.0) || !std::isfinite(v))
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": amplitude must be finite and nonnegative");
    if (keep_index(pulse, src.decimate)) out.push_back(v);
    ++pulse;
    if (src.max_pulses > 0 &&
        static_cast<long>(out.size()) >= src.max_pulses)
      break;
  }
  return out;
}

std::vector<double> read_iq_csv(const SourceOptions& src) {
  std::ifstream in(src.path);
  if (!in) throw UsageError(src.path + ": cannot open for reading");
  std::vector<double> out;
  std::string line;
  long lineno = 0;
  long pulse = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::string t = line;
    const auto hash = t.find('#');
    if (hash != std::string::npos) t.erase(hash);
    bool blank = true;
    for (char c : t)
      if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
    if (blank) continue;
    const auto comma = t.find(',');
    if (comma == std::string::npos)
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": expected 'I,Q'");
    char* end = nullptr;
    const std::string is = trim(t.substr(0, comma));
    const std::string qs = trim(t.substr(comma + 1));
    const double iv = std::strtod(is.c_str(), &end);
    if (is.empty() || end != is.c_str() + is.size())
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": bad I component '" + is + "'");
    const double qv = std::strtod(qs.c_str(), &end);
    if (qs.empty() || end != qs.c_str() + qs.size())
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": bad Q component '" + qs + "'");
    if (!std::isfinite(iv) || !std::isfinite(qv))
      throw UsageError(src.path + ":" + std::to_string(lineno) +
                       ": components must be finite");
    if (keep_index(pulse, src.decimate))
      out.push_back(std::sqrt(iv * iv + qv * qv));
    ++pulse;
    if (src.max_pulses > 0 &&
        static_cast<long>(out.size()) >= src.max_pulses)
      break;
  }
  return out;
}

std::vector<double> read_iq_f32le(const SourceOptions& src) {
  std::ifstream in(src.path, std::ios::binary);
  if (!in) throw UsageError(src.path + ": cannot open for reading");
  std::vector<char> raw((std::istreambuf_iterator<char>(in)),
                        std::istreambuf_iterator<char>());
  if (raw.size() % 8 != 0)
    throw UsageError(src.path + ": byte " +
                     std::to_string(raw.size() - raw.size() % 8) +
                     ": truncated (I, Q) float32 pair");
  std::vector<double> out;
  const long pulses = static_cast<long>(raw.size() / 8);
  for (long pulse = 0; pulse < pulses; ++pulse) {
    if (!keep_index(pulse, src.decimate)) continue;
    std::uint32_t bi = 0, bq = 0;
    const auto* p =
        reinterpret_cast<const unsigned char*>(raw.data() + pulse * 8);
    bi = static_cast<std::uint32_t>(p[0]) |
         (static_cast<std::uint32_t>(p[1]) << 8) |
         (static_cast<std::uint32_t>(p[2]) << 16) |
         (static_cast<std::uint32_t>(p[3]) << 24);
    bq = static_cast<std::uint32_t>(p[4]) |
         (static_cast<std::uint32_t>(p[5]) << 8) |
         (static_cast<std::uint32_t>(p[6]) << 16) |
         (static_cast<std::uint32_t>(p[7]) << 24);
    float fi, fq;
    std::memcpy(&fi, &bi, 4);
    std::memcpy(&fq, &bq, 4);
    if (!std::isfinite(fi) || !std::isfinite(fq))
      throw UsageError(src.path + ": byte " + std::to_string(pulse * 8) +
                       ": non-finite sample");
    const double iv = fi, qv = fq;
    out.push_back(std::sqrt(iv * iv + qv * qv));
    if (src.max_pulses > 0 &&
        static_cast<long>(out.size()) >= src.max_pulses)
      break;
  }
  return out;
}

std::vector<double> read_amplitudes(const SourceOptions& src) {
  if (src.decimate < 1) throw UsageError("--decimate must be >= 1");
  if (src.format == "amplitude-csv") return read_amplitude_csv(src);
  if (src.format == "iq-csv") return read_iq_csv(src);
  if (src.format == "iq-f32le") return read_iq_f32le(src);
  throw UsageError("unknown input format '" + src.format + "'");
}

// ---- model option block --------------------------------------------------

struct ModelOptions {
  double alpha = 0.0;
  double gamma = 0.0;
  std::string eta;  // decimal or "inf"
};

cftray_model parse_model(const ModelOptions& opt) {
  cftray_model m{};
  m.alpha = opt.alpha;
  m.gamma = opt.gamma;
  if (opt.eta == "inf" || opt.eta == "INF" || opt.eta == "infinity") {
    m.eta_infinite = 1;
  } else {
    char* end = nullptr;
    m.eta = std::strtod(opt.eta.c_str(), &end);
    if (end == opt.eta.c_str() || *end != '\0')
      throw UsageError("--eta expects a number or 'inf', got '" + opt.eta +
                       "'");
    m.eta_infinite = 0;
  }
  return m;
}

json model_to_json(const cftray_model& m) {
  json j;
  j["alpha"] = m.alpha;
  j["gamma"] = m.gamma;
  if (m.eta_infinite)
    j["eta"] = "inf";
  else
    j["eta"] = m.eta;
  return j;
}

cftray_model model_from_json(const json& j) {
  cftray_model m{};
  m.alpha = j.at("alpha").get<double>();
  m.gamma = j.at("gamma").get<double>();
  if (j.at("eta").is_string()) {
    if (j.at("eta").get<std::string>() != "inf")
      throw UsageError("report: eta must be a number or \"inf\"");
    m.eta_infinite = 1;
  } else {
    m.eta = j.at("eta").get<double>();
    m.eta_infinite = 0;
  }
  return m;
}

json gof_to_json(const cftray_gof_report& g) {
  json j;
  j["ks_stat"] = g.ks_stat;
  j["ks_critical"] = g.ks_critical;
  j["ks_convention"] = "asymptotic 5% level, 1.36/sqrt(L)";
  j["pass_ks"] = g.pass_ks != 0;
  j["te_stat_db"] = g.te_stat;
  j["te_critical_db"] = g.te_critical;
  j["te_convention"] = "absolute dB quantile error at a single pfa";
  j["pass_te"] = g.pass_te != 0;
  j["pfa"] = g.pfa;
  if (g.insufficient_tail) j["insufficient_tail"] = true;
  return j;
}

void write_text(const std::string& path, const std::string& body) {
  if (path.empty() || path == "-") {
    std::cout << body;
    return;
  }
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError(path + ": cannot open for writing");
  out << body;
}

// ---- subcommand: simulate -------------------------------------------------

int run_simulate(const ModelOptions& mopt, long n, std::uint64_t seed,
                 const std::string& out_path, const std::string& format) {
  if (n < 1) throw UsageError("simulate: -n must be >= 1");
  const cftray_model m = parse_model(mopt);

  cftray_rng* rng = cftray_rng_new(seed);
  if (!rng) throw NumericError("simulate: rng allocation failed");
  int low = 0;
  std::string body;
  if (format == "amplitude-csv") {
    std::vector<double> amp(static_cast<std::size_t>(n));
    const cftray_status s = cftray_sample_amplitude(
        &m, rng, amp.size(), amp.data(), &low);
    cftray_rng_free(rng);
    check(s, "simulate");
    std::string text;
    text.reserve(amp.size() * 20);
    for (double v : amp) {
      text += fmt(v);
      text += '\n';
    }
    body.swap(text);
  } else if (format == "iq-f32le") {
    std::vector<double> iv(static_cast<std::size_t>(n));
    std::vector<double> qv(static_cast<std::size_t>(n));
    const cftray_status s =
        cftray_sample_complex(&m, rng, iv.size(), iv.data(), qv.data(), &low);
    cftray_rng_free(rng);
    check(s, "simulate");
    std::string bytes;
    bytes.reserve(iv.size() * 8);
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const float f[2] = {static_cast<float>(iv[i]),
                          static_cast<float>(qv[i])};
      char raw[8];
      std::memcpy(raw, f, 8);
      bytes.append(raw, 8);
    }
    body.swap(bytes);
  } else {
    cftray_rng_free(rng);
    throw UsageError("simulate: --format must be amplitude-csv or iq-f32le");
  }
  if (low)
    std::cerr << "warning: texture acceptance below 1e-3 for these "
                 "parameters; generation used chunked rejection\n";
  write_text(out_path, body);
  return kExitOk;
}

// ---- subcommand: eval ------------------------------------------------------

int run_eval(const ModelOptions& mopt, double rmin, double rmax, int points,
             bool log_spacing, double tol_abs, double tol_rel,
             const std::string& out_path) {
  if (points < 1) throw UsageError("eval: --points must be >= 1");
  if (!(rmax >= rmin) || rmin < 0.0)
    throw UsageError("eval: need 0 <= rmin <= rmax");
  if (log_spacing && rmin <= 0.0)
    throw UsageError("eval: log spacing needs rmin > 0");
  const cftray_model m = parse_model(mopt);
  cftray_quad q;
  cftray_quad_defaults(&q);
  if (tol_abs > 0.0) q.abs_tol = tol_abs;
  if (tol_rel > 0.0) q.rel_tol = tol_rel;

  std::ostringstream out;
  out << "# r,pdf,pdf_err,ccdf,ccdf_err,status\n";
  for (int i = 0; i < points; ++i) {
    const double t = points == 1 ? 0.0 : static_cast<double>(i) / (points - 1);
    const double r = log_spacing
                         ? rmin * std::pow(rmax / rmin, t)
                         : rmin + (rmax - rmin) * t;
    cftray_eval pe{}, ce{};
    const cftray_status sp = cftray_pdf(&m, r, &q, &pe);
    const cftray_status sc = cftray_ccdf(&m, r, &q, &ce);
    out << fmt(r) << ',';
    if (sp == CFTRAY_OK)
      out << fmt(pe.value) << ',' << fmt(pe.est_error) << ',';
    else
      out << "nan,nan,";
    if (sc == CFTRAY_OK)
      out << fmt(ce.value) << ',' << fmt(ce.est_error) << ',';
    else
      out << "nan,nan,";
    out << ((sp == CFTRAY_OK && sc == CFTRAY_OK) ? "ok" : "nonconvergent")
        << '\n';
  }
  write_text(out_path, out.str());
  return kExitOk;
}

// ---- subcommand: fit --------------------------------------------------------

struct FitBlock {
  std::string name;
  cftray_fit* fit = nullptr;
  std::string error;
};

json fit_block_json(const FitBlock& b, const std::vector<double>& amp,
                    const cftray_quad& q, double pfa, double te_critical) {
  json j;
  if (!b.fit) {
    j["error"] = b.error;
    return j;
  }
  cftray_model m{};
  check(cftray_fit_get_model(b.fit, &m), "fit: read model");
  j["params"] = model_to_json(m);
  j["objective"] = cftray_fit_objective(b.fit);
  json warnings = json::array();
  const int dropped = cftray_fit_dropped_nodes(b.fit);
  if (dropped > 0) {
    j["dropped_nodes"] = dropped;
    warnings.push_back(std::to_string(dropped) +
                       " quadrature node(s) outside the effective zone "
                       "were dropped");
  }
  if (cftray_fit_eta_at_boundary(b.fit)) {
    j["eta_at_boundary"] = true;
    warnings.push_back(
        "eta estimate sits on the search-grid boundary; the optimum may "
        "lie outside the configured range");
    std::cerr << "warning: " << b.name
              << ": eta estimate at the search-grid boundary\n";
  }
  j["warnings"] = warnings;
  if (b.name == "cft_rayleigh" || b.name == "ht_rayleigh") {
    json trace = json::array();
    const size_t len = cftray_fit_trace_len(b.fit);
    for (size_t i = 0; i < len; ++i) {
      int round = 0;
      double alpha = 0, eta = 0, obj = 0;
      check(cftray_fit_trace_entry(b.fit, i, &round, &alpha, &eta, &obj),
            "fit: read trace");
      json e;
      e["round"] = round;
      e["alpha"] = alpha;
      if (std::isfinite(eta))
        e["eta"] = eta;
      else
        e["eta"] = "inf";
      e["objective"] = obj;
      trace.push_back(e);
    }
    j["trace"] = trace;
  }
  cftray_gof_report g{};
  const cftray_status gs = cftray_gof_evaluate(amp.data(), amp.size(), &m,
                                               &q, pfa, te_critical, &g);
  if (gs == CFTRAY_OK)
    j["gof"] = gof_to_json(g);
  else
    j["gof_error"] = std::string(cftray_status_string(gs)) + ": " +
                     cftray_last_error();
  return j;
}

int run_fit(const SourceOptions& src, const std::string& models_csv,
            int k_nodes, double tol_abs, double tol_rel, double pfa,
            double te_critical, const std::string& out_path,
            const std::string& ccdf_out, int ccdf_points) {
  const std::vector<double> amp = read_amplitudes(src);
  if (amp.size() < 100)
    throw UsageError(src.path + ": needs at least 100 amplitudes, got " +
                     std::to_string(amp.size()));
  if (amp.size() < 10000)
    std::cerr << "warning: only " << amp.size()
              << " samples; estimates may be noisy below 10^4\n";

  cftray_quad q;
  cftray_quad_defaults(&q);
  if (tol_abs > 0.0) q.abs_tol = tol_abs;
  if (tol_rel > 0.0) q.rel_tol = tol_rel;
  cftray_fit_config cfg;
  cftray_fit_config_defaults(&cfg);
  if (k_nodes > 0) cfg.k_nodes = k_nodes;

  std::vector<std::string> requested;
  {
    std::stringstream ss(models_csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item == "rayleigh" || item == "ht-rayleigh" ||
          item == "cft-rayleigh")
        requested.push_back(item);
      else if (!item.empty())
        throw UsageError("fit: unknown model '" + item + "'");
    }
  }
  if (requested.empty()) throw UsageError("fit: no models requested");

  std::vector<FitBlock> blocks;
  bool any_ok = false;
  for (const auto& name : requested) {
    FitBlock b;
    cftray_status s = CFTRAY_OK;
    if (name == "rayleigh") {
      b.name = "rayleigh";
      s = cftray_fit_rayleigh(amp.data(), amp.size(), &b.fit);
    } else if (name == "ht-rayleigh") {
      b.name = "ht_rayleigh";
      s = cftray_fit_ht_rayleigh(amp.data(), amp.size(), &cfg, &b.fit);
    } else {
      b.name = "cft_rayleigh";
      s = cftray_fit_cft_rayleigh(amp.data(), amp.size(), &cfg, &b.fit);
    }
    if (s != CFTRAY_OK) {
      b.fit = nullptr;
      b.error = std::string(cftray_status_string(s)) + ": " +
                cftray_last_error();
      std::cerr << "warning: " << b.name << " fit failed: " << b.error
                << '\n';
    } else {
      any_ok = true;
    }
    blocks.push_back(b);
  }

  double power_sq = 0.0;
  for (double v : amp) power_sq += v * v;
  const double power = std::sqrt(power_sq / static_cast<double>(amp.size()));

  json report;
  report["tool"] = "cftray";
  report["version"] = cftray_version();
  json input;
  input["path"] = src.path;
  input["format"] = src.format;
  input["decimate"] = src.decimate;
  if (src.max_pulses > 0) input["max_pulses"] = src.max_pulses;
  input["samples"] = amp.size();
  input["power"] = power;
  report["input"] = input;
  json config;
  config["k_nodes"] = cfg.k_nodes;
  config["alpha_grid"] = {cfg.alpha_min, cfg.alpha_max, cfg.alpha_step};
  config["eta_log10_range"] = {cfg.eta_log10_min, cfg.eta_log10_max};
  config["eta_points"] = cfg.eta_points;
  config["refine_rounds"] = cfg.refine_rounds;
  config["refine_shrink"] = cfg.refine_shrink;
  config["abs_tol"] = q.abs_tol;
  config["rel_tol"] = q.rel_tol;
  config["pfa"] = pfa;
  config["te_critical_db"] = te_critical;
  report["config"] = config;

  json jmodels;
  for (const auto& b : blocks)
    jmodels[b.name] = fit_block_json(b, amp, q, pfa, te_critical);
  report["models"] = jmodels;

  if (!ccdf_out.empty()) {
    std::vector<double> sorted = amp;
    std::sort(sorted.begin(), sorted.end());
    double r_lo = 0.0;
    for (double v : sorted)
      if (v > 0.0) {
        r_lo = v;
        break;
      }
    const double r_hi = sorted.back();
    if (r_lo <= 0.0 || r_hi <= r_lo)
      throw NumericError("fit: degenerate sample range for --ccdf-out");
    std::ostringstream table;
    table << "# r,empirical_ccdf";
    for (const auto& b : blocks)
      if (b.fit) table << ',' << b.name << "_ccdf";
    table << '\n';
    for (int i = 0; i < ccdf_points; ++i) {
      const double t =
          ccdf_points == 1 ? 0.0 : static_cast<double>(i) / (ccdf_points - 1);
      const double r = r_lo * std::pow(r_hi / r_lo, t);
      double emp = 0.0;
      check(cftray_empirical_ccdf(amp.data(), amp.size(), r, &emp),
            "fit: empirical ccdf");
      table << fmt(r) << ',' << fmt(emp);
      for (const auto& b : blocks) {
        if (!b.fit) continue;
        cftray_model m{};
        check(cftray_fit_get_model(b.fit, &m), "fit: read model");
        cftray_eval ce{};
        if (cftray_ccdf(&m, r, &q, &ce) == CFTRAY_OK)
          table << ',' << fmt(ce.value);
        else
          table << ",nan";
      }
      table << '\n';
    }
    write_text(ccdf_out, table.str());
  }

  write_text(out_path, report.dump(2) + "\n");
  for (auto& b : blocks) cftray_fit_free(b.fit);
  return any_ok ? kExitOk : kExitNumeric;
}

// ---- subcommand: gof ---------------------------------------------------------

int run_gof(const SourceOptions& src, const ModelOptions& mopt,
            const std::string& report_path, const std::string& model_name,
            double pfa, double te_critical, double tol_abs, double tol_rel,
            const std::string& out_path) {
  const std::vector<double> amp = read_amplitudes(src);
  if (amp.size() < 2) throw UsageError(src.path + ": needs >= 2 samples");

  cftray_model m{};
  if (!report_path.empty()) {
    std::ifstream in(report_path);
    if (!in) throw UsageError(report_path + ": cannot open for reading");
    json rep;
    try {
      in >> rep;
    } catch (const json::exception& e) {
      throw UsageError(report_path + ": " + e.what());
    }
    const std::string key = model_name.empty() ? "cft_rayleigh" : model_name;
    if (!rep.contains("models") || !rep["models"].contains(key))
      throw UsageError(report_path + ": no fitted model '" + key + "'");
    if (!rep["models"][key].contains("params"))
      throw UsageError(report_path + ": model '" + key +
                       "' carries no parameters");
    m = model_from_json(rep["models"][key]["params"]);
  } else {
    m = parse_model(mopt);
  }

  cftray_quad q;
  cftray_quad_defaults(&q);
  if (tol_abs > 0.0) q.abs_tol = tol_abs;
  if (tol_rel > 0.0) q.rel_tol = tol_rel;

  cftray_gof_report g{};
  check(cftray_gof_evaluate(amp.data(), amp.size(), &m, &q, pfa, te_critical,
                            &g),
        "gof");

  json out;
  out["tool"] = "cftray";
  out["version"] = cftray_version();
  out["input"] = src.path;
  out["samples"] = amp.size();
  out["model"] = model_to_json(m);
  out["gof"] = gof_to_json(g);
  write_text(out_path, out.dump(2) + "\n");
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"compound flexible-tailed Rayleigh clutter model tool"};
  app.require_subcommand(1);

  // simulate
  auto* sim = app.add_subcommand("simulate", "generate synthetic clutter");
  ModelOptions sim_model;
  long sim_n = 0;
  std::uint64_t sim_seed = 0;
  std::string sim_out = "-";
  std::string sim_format = "amplitude-csv";
  sim->add_option("--alpha", sim_model.alpha, "characteristic exponent")
      ->required();
  sim->add_option("--gamma", sim_model.gamma, "scale")->required();
  sim->add_option("--eta", sim_model.eta, "truncation (number or 'inf')")
      ->required();
  sim->add_option("-n,--count", sim_n, "number of pulses")->required();
  sim->add_option("--seed", sim_seed, "rng seed")->default_val(0);
  sim->add_option("--out", sim_out, "output file ('-' = stdout)");
  sim->add_option("--format", sim_format, "amplitude-csv | iq-f32le");

  // eval
  auto* ev = app.add_subcommand("eval", "tabulate pdf and ccdf");
  ModelOptions ev_model;
  double ev_rmin = 0.0, ev_rmax = 10.0;
  int ev_points = 101;
  bool ev_log = false;
  double ev_tol_abs = 0.0, ev_tol_rel = 0.0;
  std::string ev_out = "-";
  ev->add_option("--alpha", ev_model.alpha)->required();
  ev->add_option("--gamma", ev_model.gamma)->required();
  ev->add_option("--eta", ev_model.eta)->required();
  ev->add_option("--rmin", ev_rmin, "grid start");
  ev->add_option("--rmax", ev_rmax, "grid end");
  ev->add_option("--points", ev_points, "grid size");
  ev->add_flag("--log", ev_log, "log-spaced grid");
  ev->add_option("--tol-abs", ev_tol_abs, "absolute quadrature tolerance");
  ev->add_option("--tol-rel", ev_tol_rel, "relative quadrature tolerance");
  ev->add_option("--out", ev_out, "output file ('-' = stdout)");

  // fit
  auto* fit = app.add_subcommand("fit", "fit models to recorded clutter");
  SourceOptions fit_src;
  std::string fit_models = "rayleigh,ht-rayleigh,cft-rayleigh";
  int fit_k = 0;
  double fit_tol_abs = 0.0, fit_tol_rel = 0.0;
  double fit_pfa = 1e-2, fit_te_critical = 1.0;
  std::string fit_out = "-";
  std::string fit_ccdf_out;
  int fit_ccdf_points = 200;
  fit->add_option("input", fit_src.path, "clutter recording")->required();
  fit->add_option("--format", fit_src.format,
                  "amplitude-csv | iq-csv | iq-f32le");
  fit->add_option("--decimate", fit_src.decimate,
                  "keep one pulse in N (indices 0, N, 2N, ...)");
  fit->add_option("--max-pulses", fit_src.max_pulses, "cap on samples read");
  fit->add_option("--models", fit_models, "comma list of models to fit");
  fit->add_option("--k-nodes", fit_k, "Gauss-Hermite half-order");
  fit->add_option("--tol-abs", fit_tol_abs, "absolute quadrature tolerance");
  fit->add_option("--tol-rel", fit_tol_rel, "relative quadrature tolerance");
  fit->add_option("--pfa", fit_pfa, "false-alarm probability for TE");
  fit->add_option("--te-critical", fit_te_critical, "TE pass threshold, dB");
  fit->add_option("--out", fit_out, "report file ('-' = stdout)");
  fit->add_option("--ccdf-out", fit_ccdf_out, "write a ccdf table here");
  fit->add_option("--ccdf-points", fit_ccdf_points, "table size");

  // gof
  auto* gof = app.add_subcommand(
      "gof", "goodness of fit for given parameters (no refit)");
  SourceOptions gof_src;
  ModelOptions gof_model;
  std::string gof_report, gof_model_name;
  double gof_pfa = 1e-2, gof_te_critical = 1.0;
  double gof_tol_abs = 0.0, gof_tol_rel = 0.0;
  std::string gof_out = "-";
  gof->add_option("input", gof_src.path, "clutter recording")->required();
  gof->add_option("--format", gof_src.format,
                  "amplitude-csv | iq-csv | iq-f32le");
  gof->add_option("--decimate", gof_src.decimate, "keep one pulse in N");
  gof->add_option("--max-pulses", gof_src.max_pulses, "cap on samples read");
  gof->add_option("--alpha", gof_model.alpha);
  gof->add_option("--gamma", gof_model.gamma);
  gof->add_option("--eta", gof_model.eta);
  gof->add_option("--report", gof_report, "take parameters from this report");
  gof->add_option("--model", gof_model_name,
                  "model block to read from the report");
  gof->add_option("--pfa", gof_pfa, "false-alarm probability for TE");
  gof->add_option("--te-critical", gof_te_critical, "TE pass threshold, dB");
  gof->add_option("--tol-abs", gof_tol_abs);
  gof->add_option("--tol-rel", gof_tol_rel);
  gof->add_option("--out", gof_out, "output file ('-' = stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << '\n';
    return kExitUsage;
  }

  try {
    if (sim->parsed())
      return run_simulate(sim_model, sim_n, sim_seed, sim_out, sim_format);
    if (ev->parsed())
      return run_eval(ev_model, ev_rmin, ev_rmax, ev_points, ev_log,
                      ev_tol_abs, ev_tol_rel, ev_out);
    if (fit->parsed())
      return run_fit(fit_src, fit_models, fit_k, fit_tol_abs, fit_tol_rel,
                     fit_pfa, fit_te_critical, fit_out, fit_ccdf_out,
                     fit_ccdf_points);
    if (gof->parsed()) {
      if (gof_report.empty() &&
          (gof_model.alpha == 0.0 || gof_model.gamma == 0.0 ||
           gof_model.eta.empty()))
        throw UsageError(
            "gof: pass either --report or all of --alpha/--gamma/--eta");
      return run_gof(gof_src, gof_model, gof_report, gof_model_name, gof_pfa,
                     gof_te_critical, gof_tol_abs, gof_tol_rel, gof_out);
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const NumericError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitNumeric;
  }
  return kExitUsage;
}

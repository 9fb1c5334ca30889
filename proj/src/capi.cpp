#include "xlag/xlag.h"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <fmt/format.h>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "xlag/error.hpp"
#include "xlag/manybody.hpp"
#include "xlag/model.hpp"
#include "xlag/report.hpp"
#include "xlag/special_functions.hpp"
#include "xlag/spectral_verifier.hpp"
#include "xlag/tables.hpp"
#include "xlag/wavefunctions.hpp"

struct xlag_model {
  xlag::ModelParams params;
};

struct xlag_report {
  xlag::ModelParams params;
  std::vector<xlag::VerificationReport> suites;
};

namespace {

thread_local std::string last_error;

xlag_status to_status(xlag::ErrorCode code) {
  switch (code) {
    case xlag::ErrorCode::invalid_argument: return XLAG_ERR_INVALID_ARGUMENT;
    case xlag::ErrorCode::domain: return XLAG_ERR_DOMAIN;
    case xlag::ErrorCode::numeric: return XLAG_ERR_NUMERIC;
    case xlag::ErrorCode::io: return XLAG_ERR_IO;
  }
  return XLAG_ERR_INTERNAL;
}

template <class F>
xlag_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return XLAG_OK;
  } catch (const xlag::Error& e) {
    last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return XLAG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return XLAG_ERR_INTERNAL;
  } catch (...) {
    last_error = "unknown error";
    return XLAG_ERR_INTERNAL;
  }
}

template <class T>
void require(const T* ptr, const char* name) {
  if (ptr == nullptr) throw xlag::ValidationError(name, "must not be null");
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

xlag::ModelParams from_c(const xlag_params& p) {
  return xlag::ModelParams{p.n_particles, p.lambda, p.range, p.omega, p.degree_s, p.ext_m};
}

std::span<const double> positions(const double* x, size_t count) {
  require(x, "x");
  return {x, count};
}

xlag::Configuration configuration(const xlag_model* model, const double* x, size_t count) {
  auto span = positions(x, count);
  if (static_cast<int>(count) != model->params.n_particles)
    throw xlag::ValidationError("positions", "count does not match N");
  return xlag::Configuration(std::vector<double>(span.begin(), span.end()));
}

// ---------------------------------------------------------------------------

xlag::VerificationReport residual_suite(const xlag::ModelParams& p, const xlag_verify_options& o) {
  xlag::VerificationReport r;
  r.suite = "residual";
  xlag::ResidualOptions options;
  options.v_new_scale = o.perturb;
  for (int n = 0; n < o.levels; ++n) {
    const auto result = xlag::ode_residual(n, p, xlag::default_residual_grid(p, n), options);
    r.expect_at_most(fmt::format("level {} scaled residual", n), result.residual, options.tolerance,
                     xlag::to_string(result.status));
  }
  if (p.ext_m == 1) {
    xlag::ResidualOptions printed = options;
    printed.printed_x1_denominator = true;
    const auto result = xlag::ode_residual(0, p, xlag::default_residual_grid(p, 0), printed);
    r.expect_above("level 0 residual with denominator 2g + alpha (must fail)", result.residual, 1e-2,
                   xlag::to_string(result.status));
    r.notes.push_back("denominator 2g + alpha does not solve the radial equation; g + alpha does");
  }
  return r;
}

xlag::VerificationReport spectrum_suite(const xlag::ModelParams& p, const xlag_verify_options& o) {
  if (xlag::derived_params(p).tau <= 2.0) {
    xlag::VerificationReport r;
    r.suite = "spectrum";
    r.notes.push_back("skipped: tau <= 2, the Dirichlet treatment at the origin is not valid; increase lambda, s or N");
    return r;
  }
  xlag::SolverOptions options;
  options.v_new_scale = o.perturb;
  options.threads = o.threads;
  return xlag::isospectrality_check(p, o.levels, options, {}, o.points);
}

xlag::VerificationReport ortho_suite(const xlag::ModelParams& p, const xlag_verify_options& o) {
  xlag::VerificationReport r;
  r.suite = "ortho";
  const auto quad = xlag::default_quadrature(p, o.levels - 1);
  const auto m = xlag::orthogonality_matrix(p, o.levels, quad);
  r.expect_at_most("max normalized off-diagonal inner product", m.max_off_diagonal(), 1e-8);

  double drift = 0.0;
  for (int n = 0; n < o.levels; ++n) {
    const double coarse = xlag::norm(n, p, quad);
    const double fine = xlag::norm(n, p, xlag::refined(quad));
    drift = std::max(drift, std::abs(fine - coarse) / fine);
  }
  r.expect_at_most("norm change under panel doubling", drift, 1e-10);

  for (int n = 0; n < o.levels; ++n) {
    const auto nodes = xlag::count_nodes(n, p, xlag::default_node_grid(p, n));
    r.expect_true(fmt::format("level {} has {} sign changes", n, n), nodes.nodes == n && !nodes.refinement_suggested,
                  fmt::format("counted {}{}", nodes.nodes, nodes.refinement_suggested ? ", refinement suggested" : ""));
  }

  xlag::Json matrix = xlag::Json::array();
  for (int i = 0; i < m.size; ++i) {
    xlag::Json row = xlag::Json::array();
    for (int j = 0; j < m.size; ++j) row.push_back(m(i, j));
    matrix.push_back(std::move(row));
  }
  r.data["orthogonality_matrix"] = std::move(matrix);
  return r;
}

xlag::VerificationReport manybody_suite(const xlag::ModelParams& p, const xlag_verify_options& o) {
  if (p.degree_s != 0) {
    xlag::VerificationReport r;
    r.suite = "local-energy";
    r.notes.push_back("skipped: only the s = 0 ground state has an explicit many-body wavefunction");
    return r;
  }
  xlag::LocalEnergyOptions options;
  options.v_new_scale = o.perturb;
  return xlag::local_energy_suite(p, o.samples, o.seed, options, o.threads);
}

xlag::Json report_json(const xlag_report& r) {
  bool pass = true;
  xlag::Json suites = xlag::Json::array();
  for (const auto& s : r.suites) {
    pass = pass && s.passed();
    suites.push_back(s.to_json());
  }
  xlag::Json j;
  j["params"] = xlag::Json::parse(xlag::params_to_json(r.params));
  j["pass"] = pass;
  j["suites"] = std::move(suites);
  return j;
}

}  // namespace

// ---------------------------------------------------------------------------

extern "C" {

const char* xlag_last_error(void) { return last_error.c_str(); }

const char* xlag_status_string(xlag_status status) {
  switch (status) {
    case XLAG_OK: return "ok";
    case XLAG_ERR_INVALID_ARGUMENT: return "invalid argument";
    case XLAG_ERR_DOMAIN: return "domain error";
    case XLAG_ERR_NUMERIC: return "numerical failure";
    case XLAG_ERR_IO: return "i/o error";
    case XLAG_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

void xlag_string_free(char* s) { std::free(s); }

xlag_status xlag_laguerre(int n, double alpha, double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = xlag::special::laguerre(n, alpha, x);
  });
}

xlag_status xlag_laguerre_derivative(int n, double alpha, double x, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = xlag::special::laguerre_derivative(n, alpha, x);
  });
}

xlag_status xlag_x1_laguerre(int n_hat, double alpha, double g, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = xlag::special::x1_laguerre(n_hat, alpha, g);
  });
}

xlag_status xlag_xm_laguerre(int n, int m, double alpha, double g, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = xlag::special::xm_laguerre(n, m, alpha, g);
  });
}

xlag_status xlag_xm_denominator(int m, double alpha, double g, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = xlag::special::xm_denominator(m, alpha, g);
  });
}

xlag_status xlag_model_create(const xlag_params* params, xlag_model** out) {
  return guarded([&] {
    require(params, "params");
    require(out, "out");
    *out = nullptr;
    const auto p = from_c(*params);
    xlag::validate(p);
    *out = new xlag_model{p};
  });
}

xlag_status xlag_model_from_json(const char* text, xlag_model** out) {
  return guarded([&] {
    require(text, "text");
    require(out, "out");
    *out = nullptr;
    *out = new xlag_model{xlag::params_from_json(text)};
  });
}

void xlag_model_destroy(xlag_model* model) { delete model; }

xlag_status xlag_model_params(const xlag_model* model, xlag_params* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& p = model->params;
    *out = xlag_params{p.n_particles, p.lambda, p.range, p.omega, p.degree_s, p.ext_m};
  });
}

xlag_status xlag_model_derived(const xlag_model* model, xlag_derived* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto d = xlag::derived_params(model->params);
    *out = xlag_derived{d.tau, d.alpha, d.pair_count};
  });
}

xlag_status xlag_model_to_json(const xlag_model* model, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = copy_string(xlag::params_to_json(model->params));
  });
}

xlag_status xlag_energy_level(const xlag_model* model, int n, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::energy_level(n, model->params);
  });
}

xlag_status xlag_ext_constants_get(const xlag_model* model, xlag_ext_constants* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto c = xlag::ext_constants(model->params);
    *out = xlag_ext_constants{c.alpha1, c.alpha2, c.beta1, c.beta2};
  });
}

xlag_status xlag_v_new(const xlag_model* model, double rho, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::v_new(rho, model->params);
  });
}

xlag_status xlag_v_eff(const xlag_model* model, double rho, int extended, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::v_eff_radial(rho, model->params, extended != 0);
  });
}

xlag_status xlag_v_interaction(const xlag_model* model, const double* x, size_t count, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::v_interaction(configuration(model, x, count), model->params);
  });
}

xlag_status xlag_radial_eigenfunction(const xlag_model* model, int n, double rho, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::radial_eigenfunction(n, model->params, rho);
  });
}

xlag_status xlag_jastrow(const xlag_model* model, const double* x, size_t count, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::jastrow(configuration(model, x, count), model->params);
  });
}

xlag_status xlag_groundstate(const xlag_model* model, const double* x, size_t count, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    *out = xlag::manybody_groundstate(configuration(model, x, count), model->params);
  });
}

xlag_status xlag_local_energy(const xlag_model* model, const double* x, size_t count, double step, double* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    xlag::LocalEnergyOptions options;
    if (step > 0.0) options.step = step;
    *out = xlag::local_energy(configuration(model, x, count), model->params, options);
  });
}

xlag_status xlag_params_report(const xlag_model* model, int format_json, char** out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const auto& p = model->params;
    const auto d = xlag::derived_params(p);
    std::vector<double> energies;
    for (int n = 0; n < 5; ++n) energies.push_back(xlag::energy_level(n, p));

    if (format_json) {
      xlag::Json j;
      j["params"] = xlag::Json::parse(xlag::params_to_json(p));
      j["tau"] = d.tau;
      j["alpha"] = d.alpha;
      j["pair_count"] = d.pair_count;
      j["energies"] = energies;
      if (p.ext_m == 1) {
        const auto c = xlag::ext_constants(p);
        j["ext_constants"] = {{"alpha1", c.alpha1}, {"alpha2", c.alpha2}, {"beta1", c.beta1}, {"beta2", c.beta2}};
      }
      j["warnings"] = xlag::warnings(p);
      *out = copy_string(j.dump(2) + "\n");
      return;
    }

    std::string text = fmt::format("N = {}  lambda = {}  r = {}  omega = {}  s = {}  m = {}\n", p.n_particles,
                                   xlag::format_real(p.lambda), p.range, xlag::format_real(p.omega), p.degree_s,
                                   p.ext_m);
    text += fmt::format("tau        = {}\n", xlag::format_real(d.tau));
    text += fmt::format("alpha      = {}\n", xlag::format_real(d.alpha));
    text += fmt::format("pair_count = {}\n", d.pair_count);
    for (std::size_t n = 0; n < energies.size(); ++n)
      text += fmt::format("E_{}        = {}\n", n, xlag::format_real(energies[n]));
    if (p.ext_m == 1) {
      const auto c = xlag::ext_constants(p);
      text += fmt::format("constants  = alpha1 {}  alpha2 {}  beta1 {}  beta2 {}\n", xlag::format_real(c.alpha1),
                          xlag::format_real(c.alpha2), xlag::format_real(c.beta1), xlag::format_real(c.beta2));
    }
    for (const auto& w : xlag::warnings(p)) text += "warning: " + w + "\n";
    *out = copy_string(text);
  });
}

xlag_status xlag_table(const xlag_model* model, const char* what, double rho_max, int points, int level, int levels,
                       int threads, char** out) {
  return guarded([&] {
    require(model, "model");
    require(what, "what");
    require(out, "out");
    const auto& p = model->params;
    const std::string kind = what;
    if (kind == "spectrum") {
      if (levels < 1) throw xlag::ValidationError("levels", "must be >= 1");
      xlag::SolverOptions options;
      options.threads = threads;
      const auto grid = xlag::default_spectral_grid(p, levels, options.stencil, points > 0 ? points : 20001);
      *out = copy_string(xlag::numeric_spectrum(p, levels, grid, options).to_csv());
      return;
    }
    xlag::TableGrid grid;
    grid.rho_max = rho_max > 0.0 ? rho_max : xlag::default_node_grid(p, std::max(level, 0)).rho_max;
    if (points > 0) grid.points = points;
    if (kind == "potential") *out = copy_string(xlag::potential_table(p, grid));
    else if (kind == "wavefunction") *out = copy_string(xlag::wavefunction_table(p, level, grid));
    else throw xlag::ValidationError("what", "expected potential, wavefunction or spectrum");
  });
}

xlag_status xlag_polynomial_table(int max_n, int m, double alpha, double g_max, int points, char** out) {
  return guarded([&] {
    require(out, "out");
    *out = copy_string(xlag::polynomial_table(max_n, m, alpha, g_max, points));
  });
}

void xlag_verify_options_init(xlag_verify_options* options) {
  if (options == nullptr) return;
  *options = xlag_verify_options{5, 1.0, 1, 200, 1, 20001};
}

xlag_status xlag_verify(const xlag_model* model, const char* suite, const xlag_verify_options* options,
                        xlag_report** out) {
  return guarded([&] {
    require(model, "model");
    require(suite, "suite");
    require(out, "out");
    *out = nullptr;
    xlag_verify_options o;
    xlag_verify_options_init(&o);
    if (options != nullptr) o = *options;
    if (o.levels < 1) throw xlag::ValidationError("levels", "must be >= 1");
    if (!std::isfinite(o.perturb)) throw xlag::ValidationError("perturb", "must be finite");
    if (o.samples < 2) throw xlag::ValidationError("samples", "must be >= 2");
    if (o.points < 3) throw xlag::ValidationError("points", "must be >= 3");
    o.threads = std::max(o.threads, 1);

    const std::string name = suite;
    const bool all = name == "all";
    if (!all && name != "residual" && name != "spectrum" && name != "ortho" && name != "consistency" &&
        name != "local-energy")
      throw xlag::ValidationError("suite", "expected residual, spectrum, ortho, consistency, local-energy or all");

    auto report = std::make_unique<xlag_report>();
    report->params = model->params;
    const auto& p = model->params;
    if (all || name == "residual") report->suites.push_back(residual_suite(p, o));
    if (all || name == "spectrum") report->suites.push_back(spectrum_suite(p, o));
    if (all || name == "ortho") report->suites.push_back(ortho_suite(p, o));
    if (all || name == "consistency") report->suites.push_back(xlag::consistency_suite(p));
    if (all || name == "local-energy") report->suites.push_back(manybody_suite(p, o));
    *out = report.release();
  });
}

int xlag_report_passed(const xlag_report* report) {
  if (report == nullptr) return 0;
  for (const auto& s : report->suites)
    if (!s.passed()) return 0;
  return 1;
}

xlag_status xlag_report_json(const xlag_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    *out = copy_string(report_json(*report).dump(2) + "\n");
  });
}

xlag_status xlag_report_text(const xlag_report* report, char** out) {
  return guarded([&] {
    require(report, "report");
    require(out, "out");
    std::string text = "params: " + xlag::params_to_json(report->params) + "\n";
    for (const auto& s : report->suites) text += s.to_text();
    text += xlag_report_passed(report) ? "RESULT: PASS\n" : "RESULT: FAIL\n";
    *out = copy_string(text);
  });
}

void xlag_report_destroy(xlag_report* report) { delete report; }

xlag_status xlag_constancy_scan(const xlag_model* model, int samples, uint64_t seed, int threads, char** json,
                                int* passed) {
  return guarded([&] {
    require(model, "model");
    require(json, "json");
    const auto stats = xlag::constancy_scan(model->params, samples, seed, {}, std::max(threads, 1));
    *json = copy_string(stats.to_json().dump(2) + "\n");
    if (passed != nullptr) *passed = stats.passed ? 1 : 0;
  });
}

}  // extern "C"

// Acceptance run over the parameter battery: five base cases times m = 0..3.
// Prints one PASS/FAIL line per criterion and exits non-zero if any fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fmt/format.h>
#include <map>
#include <string>
#include <thread>
#include <vector>

#include "xlag/manybody.hpp"
#include "xlag/special_functions.hpp"
#include "xlag/spectral_verifier.hpp"
#include "xlag/wavefunctions.hpp"

using namespace xlag;

namespace {

struct Base {
  int n;
  double lambda;
  int r;
  int s;
  double omega;
};

const Base kBases[] = {{2, 1, 1, 0, 1}, {3, 1, 1, 0, 1}, {3, 1.5, 2, 0, 1}, {4, 0.5, 3, 0, 2}, {3, 2, 1, 1, 1}};

std::vector<ModelParams> battery() {
  std::vector<ModelParams> out;
  for (const auto& b : kBases)
    for (int m = 0; m <= 3; ++m) out.push_back(ModelParams{b.n, b.lambda, b.r, b.omega, b.s, m});
  return out;
}

std::string label(const ModelParams& p) {
  return fmt::format("N={} lambda={} r={} omega={} s={} m={}", p.n_particles, p.lambda, p.range, p.omega,
                     p.degree_s, p.ext_m);
}

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Per-case outcome of criteria 1..7, reused by criterion 8.
std::map<int, std::map<int, bool>> case_results;

struct Outcome {
  bool passed = true;
  std::string detail;
  std::vector<std::string> failures;

  void fail(std::string what) {
    passed = false;
    failures.push_back(std::move(what));
  }
};

void record(int criterion, int index, bool ok) {
  auto& slot = case_results[index];
  slot[criterion] = slot.count(criterion) ? (slot[criterion] && ok) : ok;
}

int threads() { return std::max(1, static_cast<int>(std::min(8u, std::thread::hardware_concurrency()))); }

// ---------------------------------------------------------------------------

Outcome isospectrality(const std::vector<ModelParams>& cases) {
  Outcome o;
  SolverOptions options;
  options.threads = threads();
  double worst_rel = 0.0, worst_iso = 0.0;
  int run = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    if (derived_params(p).tau <= 2.0) {
      record(1, static_cast<int>(i), true);
      continue;
    }
    ++run;
    const auto s = numeric_spectrum(p, 4, default_spectral_grid(p, 4), options);
    bool ok = true;
    for (const auto& row : s.rows) {
      const double rel = std::max(row.rel_err_conv, row.rel_err_ext);
      const double iso = std::abs(row.e_ext - row.e_conv) / row.e_analytic;
      worst_rel = std::max(worst_rel, rel);
      worst_iso = std::max(worst_iso, iso);
      if (!(rel <= 1e-6) || !(iso <= 1e-6)) ok = false;
    }
    record(1, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("{} cases, max rel err vs analytic {:.2e}, max rel |E_ext - E_conv| {:.2e}", run,
                         worst_rel, worst_iso);
  return o;
}

Outcome residuals(const std::vector<ModelParams>& cases) {
  Outcome o;
  double worst = 0.0, weakest_witness = INFINITY;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    bool ok = true;
    for (int n = 0; n <= 3; ++n) {
      const auto r = ode_residual(n, p, default_residual_grid(p, n));
      worst = std::max(worst, r.residual);
      if (!(r.residual <= 1e-8)) ok = false;
      if (p.ext_m == 1) {
        ResidualOptions printed;
        printed.printed_x1_denominator = true;
        const auto w = ode_residual(n, p, default_residual_grid(p, n), printed);
        weakest_witness = std::min(weakest_witness, w.residual);
        if (!(w.residual > 1e-2)) ok = false;
      }
    }
    record(2, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("max corrected residual {:.2e}, min printed-denominator residual {:.2e}", worst,
                         weakest_witness);
  return o;
}

Outcome cross_consistency(const std::vector<ModelParams>& cases) {
  Outcome o;
  double worst_forms = 0.0, worst_zero = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    bool ok = true;
    for (int k = 0; k <= 2000; ++k) {
      const double rho = 0.05 + k * (10.0 - 0.05) / 2000;
      if (p.ext_m == 0) {
        const double v = std::abs(v_new(rho, p));
        worst_zero = std::max(worst_zero, v);
        if (!(v <= 1e-14)) ok = false;
      } else if (p.ext_m == 1) {
        const double a = v_new(rho, p);
        const double b = v_new_x1_fraction(rho, p);
        const double c = v_new_from_constants(rho, ext_constants(p), p.omega);
        // V_new changes sign inside the range; measure against the size of its two fractions
        const double w = p.omega, tau = derived_params(p).tau;
        const double d2 = 2.0 * w * rho * rho + tau - 1.0;
        const double scale = std::abs(4.0 * w / d2) + std::abs(8.0 * w * (tau - 1.0) / (d2 * d2));
        const double d = std::max({std::abs(a - b), std::abs(a - c), std::abs(b - c)}) / scale;
        worst_forms = std::max(worst_forms, d);
        if (!(d <= 1e-12)) ok = false;
      }
    }
    if (p.ext_m == 1 && !consistency_suite(p).passed()) ok = false;
    record(3, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("m=1 three-form max rel diff {:.2e}, m=0 max |V_new| {:.2e}", worst_forms, worst_zero);
  return o;
}

Outcome polynomial_identities(const std::vector<ModelParams>& cases) {
  Outcome o;
  double worst0 = 0.0, worst1 = 0.0, min_den = INFINITY;
  std::vector<double> alphas;
  for (const auto& p : cases) alphas.push_back(derived_params(p).alpha);
  for (double a : {0.25, 1.0, 3.5, 8.0}) alphas.push_back(a);
  for (double a : alphas) {
    for (int n = 0; n <= 6; ++n) {
      for (int k = 0; k <= 400; ++k) {
        const double g = 0.05 * k;
        const double classical = special::laguerre(n, a, g);
        const double reduced = special::xm_laguerre(n, 0, a, g);
        const double s0 = std::max(std::abs(classical),
                                   std::abs(special::laguerre(n, a - 1.0, g)) + std::abs(special::laguerre(n - 1, a, g)));
        worst0 = std::max(worst0, std::abs(reduced - classical) / s0);

        const double x1 = special::x1_laguerre(n + 1, a, g);
        const double xm = special::xm_laguerre(n, 1, a, g);
        const double s1 = std::max(std::abs(x1), (g + a + 1.0) * std::abs(special::laguerre(n, a, g)) +
                                                     std::abs(special::laguerre(n - 1, a, g)));
        worst1 = std::max(worst1, std::abs(xm + x1) / s1);
      }
    }
    for (int m = 0; m <= 6; ++m)
      for (int k = 0; k <= 1000; ++k) min_den = std::min(min_den, special::xm_denominator(m, a, 0.05 * k));
  }
  if (!(worst0 <= 1e-12)) o.fail("m=0 reduction");
  if (!(worst1 <= 1e-12)) o.fail("m=1 proportionality");
  if (!(min_den > 0.0)) o.fail("denominator positivity");
  for (std::size_t i = 0; i < cases.size(); ++i) record(4, static_cast<int>(i), o.passed);
  o.detail = fmt::format("m=0 reduction {:.2e}, m=1 proportionality {:.2e}, min denominator {:.3g}", worst0,
                         worst1, min_den);
  return o;
}

Outcome orthogonality(const std::vector<ModelParams>& cases) {
  Outcome o;
  double worst = 0.0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    const double v = orthogonality_matrix(p, 5, default_quadrature(p, 4)).max_off_diagonal();
    worst = std::max(worst, v);
    const bool ok = v <= 1e-8;
    record(5, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("max normalized off-diagonal {:.2e}", worst);
  return o;
}

Outcome nodes(const std::vector<ModelParams>& cases) {
  Outcome o;
  int checked = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    bool ok = true;
    for (int n = 0; n <= 4; ++n) {
      ++checked;
      if (count_nodes(n, p, default_node_grid(p, n)).nodes != n) ok = false;
    }
    record(6, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("{} eigenfunctions checked", checked);
  return o;
}

Outcome local_energy(const std::vector<ModelParams>& cases) {
  Outcome o;
  double worst_spread = 0.0, worst_bias = 0.0, weakest_control = INFINITY;
  int run = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    if (p.degree_s != 0 || p.n_particles > 4) {
      record(7, static_cast<int>(i), true);
      continue;
    }
    ++run;
    const auto stats = constancy_scan(p, 200, 1, {}, threads());
    worst_spread = std::max(worst_spread, stats.stddev / std::abs(stats.mean));
    worst_bias = std::max(worst_bias, std::abs(stats.mean - stats.e_analytic) / stats.e_analytic);
    bool ok = stats.passed;

    LocalEnergyOptions shifted;
    shifted.psi_lambda_shift = 0.1;
    const auto a = constancy_scan(p, 200, 1, shifted, threads());
    weakest_control = std::min(weakest_control, a.stddev / std::abs(a.mean));
    if (a.passed) ok = false;
    if (p.ext_m > 0) {
      LocalEnergyOptions scaled;
      scaled.v_new_scale = 1.01;
      if (constancy_scan(p, 200, 1, scaled, threads()).passed) ok = false;
    }
    record(7, static_cast<int>(i), ok);
    if (!ok) o.fail(label(p));
  }
  o.detail = fmt::format("{} cases x 200 samples, max std/|mean| {:.2e}, max rel bias {:.2e}, "
                         "lambda+0.1 control min std/|mean| {:.2e}",
                         run, worst_spread, worst_bias, weakest_control);
  return o;
}

Outcome limits(const std::vector<ModelParams>& cases) {
  Outcome o;
  int jk = 0, csm = 0;
  for (std::size_t i = 0; i < cases.size(); ++i) {
    const auto& p = cases[i];
    const int n = p.n_particles;
    const bool is_jk = p.range == 1, is_csm = p.range == n - 1;
    if (!is_jk && !is_csm) continue;
    const int pairs = derived_params(p).pair_count;
    if (is_jk && pairs != n - 1) o.fail(label(p) + " pair count");
    if (is_csm && pairs != n * (n - 1) / 2) o.fail(label(p) + " pair count");
    jk += is_jk;
    csm += is_csm;
    for (int c = 1; c <= 7; ++c)
      if (!case_results[static_cast<int>(i)][c]) o.fail(fmt::format("{} criterion {}", label(p), c));
  }

  // m = 0: extension term exactly zero, eigenfunctions and solver columns identical
  for (const auto& p : cases) {
    if (p.ext_m != 0) continue;
    const double a = derived_params(p).alpha;
    for (int k = 1; k <= 200; ++k) {
      const double rho = 0.03 * k;
      if (v_new(rho, p) != 0.0 || v_eff_radial(rho, p, true) != v_eff_radial(rho, p, false))
        o.fail(label(p) + " potential");
      for (int n = 0; n <= 4; ++n) {
        const double g = p.omega * rho * rho;
        if (radial_eigenfunction(n, p, rho) != std::exp(-0.5 * g) * special::laguerre(n, a, g))
          o.fail(label(p) + " eigenfunction");
      }
    }
    if (derived_params(p).tau > 2.0) {
      const auto grid = default_spectral_grid(p, 4, Stencil::conservative, 4001);
      if (radial_levels(p, 4, grid, true) != radial_levels(p, 4, grid, false)) o.fail(label(p) + " spectrum");
    }
  }
  o.detail = fmt::format("{} JK-limit and {} CSM-limit cases, m=0 bitwise checks", jk, csm);
  return o;
}

Outcome convergence(const std::vector<ModelParams>& cases) {
  Outcome o;
  double lo2 = INFINITY, hi2 = -INFINITY, lo4 = INFINITY, hi4 = -INFINITY;
  for (const auto& p : cases) {
    if (derived_params(p).tau <= 2.0) continue;
    const auto study = convergence_study(p, 4, 250, {}, 3);
    lo2 = std::min(lo2, study.raw_slope);
    hi2 = std::max(hi2, study.raw_slope);
    lo4 = std::min(lo4, study.extrapolated_slope);
    hi4 = std::max(hi4, study.extrapolated_slope);
    if (std::abs(study.raw_slope - 2.0) > 0.3 || std::abs(study.extrapolated_slope - 4.0) > 0.3)
      o.fail(fmt::format("{} slopes {:.3f} {:.3f}", label(p), study.raw_slope, study.extrapolated_slope));
  }
  o.detail = fmt::format("raw slopes [{:.3f}, {:.3f}], extrapolated slopes [{:.3f}, {:.3f}]", lo2, hi2, lo4, hi4);
  return o;
}

}  // namespace

int main() {
  const auto cases = battery();
  struct Entry {
    int id;
    const char* name;
    Outcome (*run)(const std::vector<ModelParams>&);
  };
  const Entry entries[] = {
      {1, "isospectrality", isospectrality},         {2, "eigenfunction residual", residuals},
      {3, "formula cross-consistency", cross_consistency}, {4, "polynomial identities", polynomial_identities},
      {5, "orthogonality", orthogonality},           {6, "node counts", nodes},
      {7, "many-body local energy", local_energy},   {8, "limit reductions", limits},
      {9, "convergence orders", convergence},
  };

  bool all = true;
  for (const auto& e : entries) {
    const auto t0 = Clock::now();
    Outcome o;
    try {
      o = e.run(cases);
    } catch (const std::exception& ex) {
      o.fail(ex.what());
    }
    all = all && o.passed;
    std::printf("criterion %d %-26s %s  (%.1f s)  %s\n", e.id, e.name, o.passed ? "PASS" : "FAIL",
                seconds_since(t0), o.detail.c_str());
    for (const auto& f : o.failures) std::printf("    failed: %s\n", f.c_str());
    std::fflush(stdout);
  }
  std::printf("%s\n", all ? "ALL CRITERIA PASS" : "SOME CRITERIA FAIL");
  return all ? 0 : 1;
}

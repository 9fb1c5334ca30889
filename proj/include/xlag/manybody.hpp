#pragma once

// Direct N-body check: the local energy (H Psi)/Psi of the ground state
// Psi = jastrow * Phi_0(rho) must be the same constant E_0 at every configuration.

#include <cstdint>
#include <vector>

#include "xlag/model.hpp"
#include "xlag/report.hpp"

namespace xlag {

struct LocalEnergyOptions {
  double step = 1e-3;              // finite-difference step per coordinate
  double psi_lambda_shift = 0.0;   // trial Jastrow exponent lambda + shift (negative control)
  double v_new_scale = 1.0;        // scales the extension term in H (negative control)
  InteractionForm interaction = InteractionForm::exact;
};

/// -1/2 sum_i d^2 Psi/dx_i^2 / Psi (5-point stencil) + 1/2 w^2 sum x_i^2
/// + v_interaction + v_new(rho). Requires s = 0, separations >= 10 step.
double local_energy(const Configuration& c, const ModelParams& p, const LocalEnergyOptions& options = {});

struct ConstancyStats {
  ModelParams params;
  int n_samples = 0;
  std::uint64_t seed = 0;
  double mean = 0.0;
  double stddev = 0.0;   // sample standard deviation
  double max_dev = 0.0;  // max |E_loc - mean|
  double e_analytic = 0.0;
  bool passed = false;   // stddev/|mean| <= 1e-5 and |mean - E_0| <= 1e-5 E_0

  Json to_json() const;
};

/// Ordered configurations: particle i sits near site (i - (N-1)/2) / sqrt(w) with a
/// uniform jitter of +-0.3 site spacings. Deterministic for a fixed seed,
/// independent of `threads`.
std::vector<Configuration> sample_configurations(const ModelParams& p, int n_samples, std::uint64_t seed,
                                                 double min_separation);

ConstancyStats constancy_scan(const ModelParams& p, int n_samples, std::uint64_t seed,
                              const LocalEnergyOptions& options = {}, int threads = 1);

VerificationReport local_energy_suite(const ModelParams& p, int n_samples, std::uint64_t seed,
                                      const LocalEnergyOptions& options = {}, int threads = 1);

}  // namespace xlag

#include "xlag/manybody.hpp"

#include <cmath>
#include <fmt/format.h>
#include <random>

#include "xlag/error.hpp"
#include "xlag/parallel.hpp"
#include "xlag/wavefunctions.hpp"

namespace xlag {

namespace {

constexpr double kConstancyTolerance = 1e-5;

double trial_psi(std::span<const double> x, const ModelParams& hamiltonian, const ModelParams& trial) {
  return jastrow(x, trial) * radial_eigenfunction(0, hamiltonian, hyperradius(x));
}

}  // namespace

double local_energy(const Configuration& c, const ModelParams& p, const LocalEnergyOptions& options) {
  validate(p);
  if (p.degree_s != 0) throw ValidationError("s", "local energy is only defined for the s = 0 ground state");
  if (static_cast<int>(c.size()) != p.n_particles)
    throw ValidationError("positions", "configuration size does not match N");
  const double h = options.step;
  if (!(h > 0.0)) throw ValidationError("step", "must be > 0");

  const auto pos = c.positions();
  for (std::size_t i = 1; i < pos.size(); ++i) {
    const double gap = pos[i] - pos[i - 1];
    if (gap < 10.0 * h || pos[i - 1] + 2.0 * h >= pos[i] - 2.0 * h)
      throw ValidationError("positions", "finite-difference stencil would leave the ordered sector; "
                                         "separations must be >= 10 step");
  }

  ModelParams trial = p;
  trial.lambda = p.lambda + options.psi_lambda_shift;
  if (!(trial.lambda > 0.0)) throw ValidationError("psi_lambda_shift", "trial lambda must stay > 0");

  std::vector<double> x(pos.begin(), pos.end());
  const double psi0 = trial_psi(x, p, trial);
  if (!(psi0 > 0.0) && !(psi0 < 0.0))
    throw Error(ErrorCode::numeric, "wavefunction vanishes at the configuration");

  double laplacian = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    double f[5];
    for (int k = -2; k <= 2; ++k) {
      x[i] = xi + k * h;
      f[k + 2] = trial_psi(x, p, trial);
    }
    x[i] = xi;
    laplacian += (-f[0] + 16.0 * f[1] - 30.0 * f[2] + 16.0 * f[3] - f[4]) / (12.0 * h * h);
  }

  const double w = p.omega;
  const double rho = c.rho();
  const double potential = 0.5 * w * w * rho * rho + v_interaction(pos, p, options.interaction) +
                           options.v_new_scale * v_new(rho, p);
  return -0.5 * laplacian / psi0 + potential;
}

// ---------------------------------------------------------------------------

std::vector<Configuration> sample_configurations(const ModelParams& p, int n_samples, std::uint64_t seed,
                                                 double min_separation) {
  validate(p);
  if (n_samples < 1) throw ValidationError("n_samples", "must be >= 1");
  const int n = p.n_particles;
  const double spacing = 1.0 / std::sqrt(p.omega);
  const double jitter = 0.3 * spacing;

  std::mt19937_64 rng(seed);
  auto uniform = [&] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(n_samples));
  const long long max_attempts = 100LL * n_samples;
  for (long long attempt = 0; attempt < max_attempts && static_cast<int>(out.size()) < n_samples; ++attempt) {
    std::vector<double> x(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i)
      x[static_cast<std::size_t>(i)] = (i - 0.5 * (n - 1)) * spacing + (2.0 * uniform() - 1.0) * jitter;
    bool ok = true;
    for (int i = 1; i < n && ok; ++i) ok = x[static_cast<std::size_t>(i)] - x[static_cast<std::size_t>(i - 1)] >= min_separation;
    if (ok) out.emplace_back(std::move(x), min_separation);
  }
  if (static_cast<int>(out.size()) < n_samples)
    throw Error(ErrorCode::numeric, fmt::format("only {} of {} valid configurations after {} attempts", out.size(),
                                                n_samples, max_attempts));
  return out;
}

Json ConstancyStats::to_json() const {
  Json j;
  j["params"] = Json::parse(params_to_json(params));
  j["n_samples"] = n_samples;
  j["seed"] = seed;
  j["mean"] = mean;
  j["stddev"] = stddev;
  j["max_dev"] = max_dev;
  j["E_analytic"] = e_analytic;
  j["pass"] = passed;
  return j;
}

ConstancyStats constancy_scan(const ModelParams& p, int n_samples, std::uint64_t seed,
                              const LocalEnergyOptions& options, int threads) {
  if (n_samples < 2) throw ValidationError("n_samples", "need at least 2 samples for a spread");
  const auto configs = sample_configurations(p, n_samples, seed, 10.0 * options.step);

  std::vector<double> values(configs.size());
  parallel_for(static_cast<int>(configs.size()), threads,
               [&](int i) { values[static_cast<std::size_t>(i)] = local_energy(configs[static_cast<std::size_t>(i)], p, options); });

  // Neumaier summation over the fixed sample order
  auto compensated_sum = [](const std::vector<double>& v, auto&& term) {
    double sum = 0.0, c = 0.0;
    for (double x : v) {
      const double t = term(x);
      const double s = sum + t;
      c += std::abs(sum) >= std::abs(t) ? (sum - s) + t : (t - s) + sum;
      sum = s;
    }
    return sum + c;
  };

  ConstancyStats stats;
  stats.params = p;
  stats.n_samples = n_samples;
  stats.seed = seed;
  stats.mean = compensated_sum(values, [](double x) { return x; }) / n_samples;
  const double var = compensated_sum(values, [&](double x) { return (x - stats.mean) * (x - stats.mean); }) /
                     (n_samples - 1);
  stats.stddev = std::sqrt(var);
  for (double v : values) stats.max_dev = std::max(stats.max_dev, std::abs(v - stats.mean));
  stats.e_analytic = energy_level(0, p);
  stats.passed = std::isfinite(stats.mean) && stats.stddev <= kConstancyTolerance * std::abs(stats.mean) &&
                 std::abs(stats.mean - stats.e_analytic) <= kConstancyTolerance * stats.e_analytic;
  return stats;
}

VerificationReport local_energy_suite(const ModelParams& p, int n_samples, std::uint64_t seed,
                                      const LocalEnergyOptions& options, int threads) {
  const ConstancyStats stats = constancy_scan(p, n_samples, seed, options, threads);
  VerificationReport report;
  report.suite = "local-energy";
  report.expect_at_most("stddev / |mean|", stats.stddev / std::abs(stats.mean), kConstancyTolerance);
  report.expect_at_most("|mean - E_0| / E_0", std::abs(stats.mean - stats.e_analytic) / stats.e_analytic,
                        kConstancyTolerance);
  report.data["local_energy"] = stats.to_json();
  return report;
}

}  // namespace xlag

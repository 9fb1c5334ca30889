#pragma once

// Model parameters, derived constants, energies, the many-body interaction and
// the extended radial potentials. Units: hbar = mass = 1.

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace xlag {

struct ModelParams {
  int n_particles = 2;    // N
  double lambda = 1.0;    // coupling
  int range = 1;          // truncation range r, in particle index distance
  double omega = 1.0;     // trap frequency
  int degree_s = 0;       // degree of the homogeneous polynomial sector
  int ext_m = 0;          // exceptional index m (0 = conventional model)

  friend bool operator==(const ModelParams&, const ModelParams&) = default;
};

/// Throws ValidationError naming the first failing field.
void validate(const ModelParams& p);

/// Non-fatal remarks, e.g. the attractive two-body regime 0 < lambda < 1.
std::vector<std::string> warnings(const ModelParams& p);

struct DerivedParams {
  double tau = 0.0;    // N + 2s - 1 + lambda r (2N - r - 1)
  double alpha = 0.0;  // (tau - 1) / 2
  int pair_count = 0;  // pairs i<j with |i-j| <= r, i.e. r (2N - r - 1) / 2
};

DerivedParams derived_params(const ModelParams& p);

/// E_n = omega (2n + alpha + 1); independent of m.
double energy_level(int n, const ModelParams& p);

/// Exact JSON object with keys N, lambda, r, omega, s, m. Unknown or missing keys are rejected.
ModelParams params_from_json(std::string_view text);
std::string params_to_json(const ModelParams& p);

// ---------------------------------------------------------------------------

/// Ordered N-particle configuration x_1 < ... < x_N with a minimum separation.
class Configuration {
 public:
  static constexpr double kDefaultMinSeparation = 1e-3;

  explicit Configuration(std::vector<double> positions,
                         double min_separation = kDefaultMinSeparation);

  /// Sorts the positions first; the particle label follows the ordering.
  static Configuration from_unsorted(std::vector<double> positions,
                                     double min_separation = kDefaultMinSeparation);

  std::span<const double> positions() const noexcept { return positions_; }
  std::size_t size() const noexcept { return positions_.size(); }
  double min_separation() const noexcept { return min_separation_; }

  /// Hyperradius sqrt(sum x_i^2).
  double rho() const noexcept;

 private:
  std::vector<double> positions_;
  double min_separation_;
};

double hyperradius(std::span<const double> x) noexcept;

enum class InteractionForm {
  /// Three-body term lambda^2 r_ji.r_jk / (r_ji^2 r_jk^2) over index triples
  /// i<j<k with |i-j| <= r, |j-k| <= r and |i-k| > r. This is the form for
  /// which the truncated Jastrow product is an exact eigenfunction factor; it
  /// vanishes identically at r = N-1.
  exact,
  /// Literal transcription: lambda^2 r_ij.r_jk / (r_ji^2 r_jk^2) over all
  /// i<j<k with |i-j| <= r and |j-k| <= r. Kept as a witness only.
  printed,
};

double v_interaction(const Configuration& c, const ModelParams& p,
                     InteractionForm form = InteractionForm::exact);

/// Same as above on raw positions (assumed ordered, not validated).
double v_interaction(std::span<const double> x, const ModelParams& p, InteractionForm form);

// ---------------------------------------------------------------------------
// Extended radial potentials, with g = omega rho^2.

/// Rational extension term for index m; exactly 0 when m = 0.
double v_new(double rho, const ModelParams& p);

/// m = 1 extension in its two-fraction form 4w/(2g+tau-1) - 8w(tau-1)/(2g+tau-1)^2.
double v_new_x1_fraction(double rho, const ModelParams& p);

struct ExtConstants {
  double alpha1 = 0.0;
  double alpha2 = 0.0;
  double beta1 = 0.0;
  double beta2 = 0.0;
};

/// Constants of the ansatz (a1 + a2 w^2 rho^2) / (b1 + b2 w^2 rho^2)^2. Only for m = 1.
ExtConstants ext_constants(const ModelParams& p);

double v_new_from_constants(double rho, const ExtConstants& c, double omega);

/// Effective 1D potential for u = rho^(tau/2) Phi:
/// 1/2 w^2 rho^2 + (tau/2)(tau/2 - 1)/(2 rho^2) [+ v_new when extended].
double v_eff_radial(double rho, const ModelParams& p, bool extended);

}  // namespace xlag

#include "xlag/model.hpp"

#include <algorithm>
#include <cmath>
#include <nlohmann/json.hpp>

#include "xlag/error.hpp"
#include "xlag/special_functions.hpp"

namespace xlag {

using special::laguerre;

void validate(const ModelParams& p) {
  if (p.n_particles < 2) throw ValidationError("N", "need at least 2 particles");
  if (p.range < 1 || p.range > p.n_particles - 1)
    throw ValidationError("r", "truncation range must satisfy 1 <= r <= N-1");
  if (!std::isfinite(p.omega) || p.omega <= 0.0) throw ValidationError("omega", "must be finite and > 0");
  if (!std::isfinite(p.lambda) || p.lambda <= 0.0)
    throw ValidationError("lambda", "must be finite and > 0 (Jastrow factor is not normalizable otherwise)");
  if (p.degree_s < 0) throw ValidationError("s", "must be >= 0");
  if (p.ext_m < 0) throw ValidationError("m", "must be >= 0");
}

std::vector<std::string> warnings(const ModelParams& p) {
  std::vector<std::string> out;
  if (p.lambda > 0.0 && p.lambda < 1.0)
    out.emplace_back("lambda in (0,1): the two-body interaction lambda(lambda-1)/x^2 is attractive");
  return out;
}

DerivedParams derived_params(const ModelParams& p) {
  validate(p);
  const int n = p.n_particles;
  const int r = p.range;
  DerivedParams d;
  d.pair_count = r * (2 * n - r - 1) / 2;
  d.tau = n + 2 * p.degree_s - 1 + p.lambda * r * (2 * n - r - 1);
  d.alpha = 0.5 * (d.tau - 1.0);
  return d;
}

double energy_level(int n, const ModelParams& p) {
  if (n < 0) throw ValidationError("n", "level must be >= 0");
  return p.omega * (2.0 * n + derived_params(p).alpha + 1.0);
}

// ---------------------------------------------------------------------------

namespace {

int integer_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && std::floor(d) == d && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw ValidationError(key, "must be an integer");
}

double real_field(const nlohmann::json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ValidationError(key, "must be a number");
  return v.get<double>();
}

constexpr const char* kKeys[] = {"N", "lambda", "r", "omega", "s", "m"};

}  // namespace

ModelParams params_from_json(std::string_view text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw ValidationError("config", std::string("invalid JSON: ") + e.what());
  }
  if (!j.is_object()) throw ValidationError("config", "expected a JSON object");
  for (const auto& item : j.items()) {
    if (std::find_if(std::begin(kKeys), std::end(kKeys),
                     [&](const char* k) { return item.key() == k; }) == std::end(kKeys))
      throw ValidationError(item.key(), "unknown key");
  }
  for (const char* key : kKeys) {
    if (!j.contains(key)) throw ValidationError(key, "missing key");
  }

  ModelParams p;
  p.n_particles = integer_field(j, "N");
  p.lambda = real_field(j, "lambda");
  p.range = integer_field(j, "r");
  p.omega = real_field(j, "omega");
  p.degree_s = integer_field(j, "s");
  p.ext_m = integer_field(j, "m");
  validate(p);
  return p;
}

std::string params_to_json(const ModelParams& p) {
  nlohmann::ordered_json j;
  j["N"] = p.n_particles;
  j["lambda"] = p.lambda;
  j["r"] = p.range;
  j["omega"] = p.omega;
  j["s"] = p.degree_s;
  j["m"] = p.ext_m;
  return j.dump();
}

// ---------------------------------------------------------------------------

Configuration::Configuration(std::vector<double> positions, double min_separation)
    : positions_(std::move(positions)), min_separation_(min_separation) {
  if (!(min_separation_ > 0.0)) throw ValidationError("min_separation", "must be > 0");
  if (positions_.size() < 2) throw ValidationError("positions", "need at least 2 particles");
  for (std::size_t i = 0; i < positions_.size(); ++i) {
    if (!std::isfinite(positions_[i])) throw ValidationError("positions", "must be finite");
    if (i > 0) {
      const double gap = positions_[i] - positions_[i - 1];
      if (gap <= 0.0) throw ValidationError("positions", "must be strictly increasing");
      if (gap < min_separation_)
        throw ValidationError("positions", "particles " + std::to_string(i - 1) + " and " +
                                               std::to_string(i) + " closer than the minimum separation");
    }
  }
}

Configuration Configuration::from_unsorted(std::vector<double> positions, double min_separation) {
  std::sort(positions.begin(), positions.end());
  return Configuration(std::move(positions), min_separation);
}

double hyperradius(std::span<const double> x) noexcept {
  double sum = 0.0;
  for (double xi : x) sum += xi * xi;
  return std::sqrt(sum);
}

double Configuration::rho() const noexcept { return hyperradius(positions_); }

double v_interaction(std::span<const double> x, const ModelParams& p, InteractionForm form) {
  const int n = static_cast<int>(x.size());
  const int r = p.range;
  const double lambda = p.lambda;

  double two_body = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= r; ++j) {
      const double d = x[i] - x[j];
      two_body += lambda * (lambda - 1.0) / (d * d);
    }
  }

  double three_body = 0.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= r; ++j) {
      for (int k = j + 1; k < n && k - j <= r; ++k) {
        const double r_ji = x[j] - x[i];
        const double r_jk = x[j] - x[k];
        const double denom = r_ji * r_ji * r_jk * r_jk;
        if (form == InteractionForm::exact) {
          if (k - i <= r) continue;
          three_body += lambda * lambda * (r_ji * r_jk) / denom;
        } else {
          three_body += lambda * lambda * ((x[i] - x[j]) * (x[j] - x[k])) / denom;
        }
      }
    }
  }
  return two_body + three_body;
}

double v_interaction(const Configuration& c, const ModelParams& p, InteractionForm form) {
  validate(p);
  if (static_cast<int>(c.size()) != p.n_particles)
    throw ValidationError("positions", "configuration size does not match N");
  return v_interaction(c.positions(), p, form);
}

// ---------------------------------------------------------------------------

namespace {

void require_radius(double rho) {
  if (!std::isfinite(rho) || rho < 0.0) throw ValidationError("rho", "must be finite and >= 0");
}

}  // namespace

double v_new(double rho, const ModelParams& p) {
  require_radius(rho);
  const int m = p.ext_m;
  if (m == 0) return 0.0;

  const double w = p.omega;
  const double alpha = derived_params(p).alpha;
  const double g = w * rho * rho;

  const double denominator = special::xm_denominator(m, alpha, g);
  const double ratio = laguerre(m - 1, alpha, -g) / denominator;
  return -2.0 * w * g * laguerre(m - 2, alpha + 1.0, -g) / denominator +
         2.0 * w * (alpha + g - 1.0) * ratio + 4.0 * w * g * ratio * ratio - 2.0 * m * w;
}

double v_new_x1_fraction(double rho, const ModelParams& p) {
  require_radius(rho);
  const double w = p.omega;
  const double tau = derived_params(p).tau;
  const double d = 2.0 * w * rho * rho + tau - 1.0;
  return 4.0 * w / d - 8.0 * w * (tau - 1.0) / (d * d);
}

ExtConstants ext_constants(const ModelParams& p) {
  if (p.ext_m != 1)
    throw ValidationError("m", "the rational ansatz (a1 + a2 w^2 rho^2)/(b1 + b2 w^2 rho^2)^2 applies to m = 1 only");
  const double tau = derived_params(p).tau;
  const double w = p.omega;
  return ExtConstants{-4.0 * w * (tau - 1.0), 8.0, tau - 1.0, 2.0 / w};
}

double v_new_from_constants(double rho, const ExtConstants& c, double omega) {
  require_radius(rho);
  const double w2r2 = omega * omega * rho * rho;
  const double d = c.beta1 + c.beta2 * w2r2;
  return (c.alpha1 + c.alpha2 * w2r2) / (d * d);
}

double v_eff_radial(double rho, const ModelParams& p, bool extended) {
  if (!std::isfinite(rho) || rho <= 0.0)
    throw Error(ErrorCode::domain, "rho: effective potential is singular at rho = 0; rho must be > 0");
  const double w = p.omega;
  const double half_tau = 0.5 * derived_params(p).tau;
  const double base = 0.5 * w * w * rho * rho + half_tau * (half_tau - 1.0) / (2.0 * rho * rho);
  return extended ? base + v_new(rho, p) : base;
}

}  // namespace xlag

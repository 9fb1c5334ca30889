#include "xlag/wavefunctions.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "xlag/error.hpp"
#include "xlag/quadrature.hpp"
#include "xlag/special_functions.hpp"

namespace xlag {

RadialPoint RadialPoint::at(double rho, double omega) {
  if (!std::isfinite(rho) || rho < 0.0) throw ValidationError("rho", "must be finite and >= 0");
  return RadialPoint{rho, omega * rho * rho};
}

double radial_eigenfunction(int n, const ModelParams& p, double rho) {
  if (n < 0) throw ValidationError("n", "level must be >= 0");
  const double alpha = derived_params(p).alpha;
  const double g = RadialPoint::at(rho, p.omega).g;
  const double envelope = std::exp(-0.5 * g);
  if (p.ext_m == 0) return envelope * special::laguerre(n, alpha, g);
  return envelope * special::xm_laguerre(n, p.ext_m, alpha, g) /
         special::xm_denominator(p.ext_m, alpha, g);
}

double x1_eigenfunction(int n, const ModelParams& p, double rho, X1Denominator denominator) {
  if (n < 0) throw ValidationError("n", "level must be >= 0");
  const double alpha = derived_params(p).alpha;
  const double g = RadialPoint::at(rho, p.omega).g;
  const double den = (denominator == X1Denominator::corrected) ? g + alpha : 2.0 * g + alpha;
  return std::exp(-0.5 * g) * special::x1_laguerre(n + 1, alpha, g) / den;
}

double jastrow(std::span<const double> x, const ModelParams& p) {
  const int n = static_cast<int>(x.size());
  double product = 1.0;
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n && j - i <= p.range; ++j) product *= std::pow(x[j] - x[i], p.lambda);
  }
  return product;
}

double jastrow(const Configuration& c, const ModelParams& p) {
  validate(p);
  if (static_cast<int>(c.size()) != p.n_particles)
    throw ValidationError("positions", "configuration size does not match N");
  return jastrow(c.positions(), p);
}

double manybody_groundstate(const Configuration& c, const ModelParams& p) {
  if (p.degree_s != 0)
    throw ValidationError("s", "only the s = 0 sector (P_0 = 1) is implemented for many-body states");
  return jastrow(c, p) * radial_eigenfunction(0, p, c.rho());
}

// ---------------------------------------------------------------------------

QuadratureSpec default_quadrature(const ModelParams& p, int max_level) {
  if (max_level < 0) throw ValidationError("level", "must be >= 0");
  const double alpha = derived_params(p).alpha;
  const double w = p.omega;
  const double e = energy_level(max_level, p);
  QuadratureSpec q;
  q.split = std::sqrt(2.0 * e) / w;
  q.rho_max = std::sqrt((3.0 * (2.0 * max_level + alpha + 1.0) + 40.0) / w);
  q.panels = 8;
  return q;
}

QuadratureSpec refined(const QuadratureSpec& q) {
  QuadratureSpec out = q;
  out.panels *= 2;
  return out;
}

namespace {

void check_spec(const QuadratureSpec& q, int level, const ModelParams& p) {
  if (q.panels < 1) throw ValidationError("panels", "must be >= 1");
  if (!(q.split > 0.0) || !(q.rho_max > q.split))
    throw ValidationError("rho_max", "need 0 < split < rho_max");
  const double alpha = derived_params(p).alpha;
  if (p.omega * q.rho_max * q.rho_max < 2.0 * (2.0 * level + alpha + 1.0) + 20.0)
    throw ValidationError("rho_max", "omega rho_max^2 must be >= 2(2n + alpha + 1) + 20");
}

template <class F>
double radial_integral(F&& f, double a, double split, double b, int panels) {
  const auto& rule = gauss_legendre_64();
  return integrate_panels(f, a, split, panels, rule) + integrate_panels(f, split, b, panels, rule);
}

}  // namespace

double inner_product(int i, int j, const ModelParams& p, const QuadratureSpec& q) {
  check_spec(q, std::max(i, j), p);
  const double tau = derived_params(p).tau;
  auto integrand = [&](double rho) {
    return radial_eigenfunction(i, p, rho) * radial_eigenfunction(j, p, rho) * std::pow(rho, tau);
  };
  return radial_integral(integrand, 0.0, q.split, q.rho_max, q.panels);
}

double norm(int n, const ModelParams& p, const QuadratureSpec& q) {
  const double total = inner_product(n, n, p, q);
  const double tau = derived_params(p).tau;
  auto integrand = [&](double rho) {
    const double phi = radial_eigenfunction(n, p, rho);
    return phi * phi * std::pow(rho, tau);
  };
  const double tail = integrate_panels(integrand, q.rho_max, 1.5 * q.rho_max, q.panels, gauss_legendre_64());
  if (!(total > 0.0) || !std::isfinite(total))
    throw Error(ErrorCode::numeric, "norm: quadrature produced a non-positive or non-finite value");
  if (tail > 1e-10 * total)
    throw Error(ErrorCode::numeric, "norm: truncated tail beyond rho_max exceeds 1e-10 of the total; increase rho_max");
  return total;
}

// ---------------------------------------------------------------------------

RadialGrid default_node_grid(const ModelParams& p, int level) {
  const double alpha = derived_params(p).alpha;
  const double w = p.omega;
  const double rho_max = std::sqrt((2.0 * (2.0 * level + alpha + 1.0) + 20.0) / w);
  // 200 points per unit g at the outer end, where g-spacing 2 w rho h is largest
  const double h = 1.0 / (250.0 * 2.0 * w * rho_max);
  return grid_from_spacing(h, rho_max);
}

NodeCount count_nodes(int n, const ModelParams& p, const RadialGrid& grid) {
  validate(grid);
  const double h = grid.spacing();
  const double dg_max = 2.0 * p.omega * grid.rho_max * h + p.omega * h * h;
  if (dg_max > 1.0 / 200.0) throw ValidationError("n_points", "grid must resolve >= 200 points per unit g");

  std::vector<double> phi(static_cast<std::size_t>(grid.n_points));
  for (int i = 0; i < grid.n_points; ++i) phi[static_cast<std::size_t>(i)] = radial_eigenfunction(n, p, grid.point(i));

  NodeCount out;
  int last_sign = 0;
  for (double v : phi) {
    const int sign = (v > 0.0) - (v < 0.0);
    if (sign == 0) continue;
    if (last_sign != 0 && sign != last_sign) ++out.nodes;
    last_sign = sign;
  }

  double peak = 0.0;
  for (double v : phi) peak = std::max(peak, std::abs(v));
  for (std::size_t i = 1; i + 1 < phi.size(); ++i) {
    const double a = std::abs(phi[i - 1]), b = std::abs(phi[i]), c = std::abs(phi[i + 1]);
    const bool local_min = b <= a && b <= c;
    const bool same_sign = phi[i - 1] * phi[i] > 0.0 && phi[i] * phi[i + 1] > 0.0;
    if (local_min && same_sign && b < 1e-6 * peak) {
      out.refinement_suggested = true;
      break;
    }
  }
  return out;
}

}  // namespace xlag

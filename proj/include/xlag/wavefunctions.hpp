#pragma once

// Analytic radial eigenfunctions (unnormalized), the truncated Jastrow factor
// and radial-measure integrals rho^tau d rho.

#include <span>

#include "xlag/grid.hpp"
#include "xlag/model.hpp"

namespace xlag {

struct RadialPoint {
  double rho = 0.0;
  double g = 0.0;  // omega rho^2

  static RadialPoint at(double rho, double omega);
};

/// m = 0: exp(-g/2) L_n^(a)(g).
/// m >= 1: exp(-g/2) Lhat_{n+m}^(a)(g) / L_m^(a-1)(-g).
double radial_eigenfunction(int n, const ModelParams& p, double rho);

enum class X1Denominator {
  corrected,  // g + alpha, equal to L_1^(alpha-1)(-g)
  printed,    // 2g + alpha; not an eigenfunction, used as a negative witness
};

/// m = 1 eigenfunction in X1 normalization: exp(-g/2) x1_laguerre(n+1, a, g) / den.
/// With the corrected denominator this is -radial_eigenfunction(n, p|m=1, rho).
double x1_eigenfunction(int n, const ModelParams& p, double rho, X1Denominator denominator);

/// prod_{i<j, |i-j| <= r} (x_j - x_i)^lambda on the ordered sector.
double jastrow(const Configuration& c, const ModelParams& p);
double jastrow(std::span<const double> x, const ModelParams& p);

/// jastrow(c) * radial_eigenfunction(0, p, rho(c)); s = 0 sector only.
double manybody_groundstate(const Configuration& c, const ModelParams& p);

// ---------------------------------------------------------------------------

/// Composite 64-point Gauss-Legendre on [0, split] and [split, rho_max],
/// `panels` panels in each part.
struct QuadratureSpec {
  double rho_max = 0.0;
  double split = 0.0;
  int panels = 8;
};

/// split at the classical turning point of level max_level, omega rho_max^2 = 3(2n+a+1) + 40.
QuadratureSpec default_quadrature(const ModelParams& p, int max_level);

/// Same spec with twice the panels.
QuadratureSpec refined(const QuadratureSpec& q);

/// <Phi_i, Phi_j> with weight rho^tau on [0, rho_max].
double inner_product(int i, int j, const ModelParams& p, const QuadratureSpec& q);

/// <Phi_n, Phi_n>. Throws ErrorCode::numeric when the tail beyond rho_max exceeds
/// 1e-10 of the total.
double norm(int n, const ModelParams& p, const QuadratureSpec& q);

struct NodeCount {
  int nodes = 0;
  bool refinement_suggested = false;  // |Phi| has a near-zero local minimum without a sign change
};

/// Sign changes of Phi_n on the grid. The grid must have >= 200 points per unit g.
NodeCount count_nodes(int n, const ModelParams& p, const RadialGrid& grid);

RadialGrid default_node_grid(const ModelParams& p, int level);

}  // namespace xlag

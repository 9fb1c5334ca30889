#pragma once

namespace xlag {

/// Uniform grid rho_min, rho_min + h, ..., rho_max on the hyperradius.
struct RadialGrid {
  double rho_min = 0.0;
  double rho_max = 0.0;
  int n_points = 0;

  double spacing() const noexcept { return (rho_max - rho_min) / (n_points - 1); }
  double point(int i) const noexcept { return rho_min + i * spacing(); }
};

/// Requires n_points >= 3, rho_max > rho_min and rho_min >= h/2.
void validate(const RadialGrid& grid);

/// Grid with spacing h and first point h (rho_min = h).
RadialGrid grid_from_spacing(double h, double rho_max);

}  // namespace xlag

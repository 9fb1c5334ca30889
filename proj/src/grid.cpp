#include "xlag/grid.hpp"

#include <cmath>

#include "xlag/error.hpp"

namespace xlag {

void validate(const RadialGrid& grid) {
  if (grid.n_points < 3) throw ValidationError("n_points", "need at least 3 grid points");
  if (!std::isfinite(grid.rho_min) || !std::isfinite(grid.rho_max))
    throw ValidationError("rho", "grid bounds must be finite");
  if (!(grid.rho_max > grid.rho_min)) throw ValidationError("rho_max", "must exceed rho_min");
  const double h = grid.spacing();
  if (grid.rho_min < 0.5 * h * (1.0 - 1e-12)) throw ValidationError("rho_min", "must be >= h/2");
}

RadialGrid grid_from_spacing(double h, double rho_max) {
  if (!(h > 0.0) || !(rho_max > 2.0 * h)) throw ValidationError("h", "need 0 < 2h < rho_max");
  const int intervals = static_cast<int>(std::ceil(rho_max / h - 1e-9)) - 1;
  RadialGrid grid{h, h * (intervals + 1), intervals + 1};
  validate(grid);
  return grid;
}

}  // namespace xlag

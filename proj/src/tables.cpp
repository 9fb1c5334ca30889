#include "xlag/tables.hpp"

#include <cmath>
#include <fmt/format.h>

#include "xlag/error.hpp"
#include "xlag/report.hpp"
#include "xlag/special_functions.hpp"
#include "xlag/wavefunctions.hpp"

namespace xlag {

namespace {

void check(const TableGrid& grid) {
  if (!std::isfinite(grid.rho_max) || !(grid.rho_max > 0.0)) throw ValidationError("rho-max", "must be > 0");
  if (grid.points < 1) throw ValidationError("points", "must be >= 1");
}

double rho_at(const TableGrid& grid, int i) { return i * grid.rho_max / grid.points; }

void append_row(std::string& out, std::initializer_list<double> values) {
  bool first = true;
  for (double v : values) {
    if (!first) out += ',';
    out += format_real(v);
    first = false;
  }
  out += '\n';
}

}  // namespace

std::string potential_table(const ModelParams& p, const TableGrid& grid) {
  validate(p);
  check(grid);
  const double w = p.omega;
  std::string out = "rho,g,v_oscillator,v_new,v_eff_conventional,v_eff_extended\n";
  for (int i = 1; i <= grid.points; ++i) {
    const double rho = rho_at(grid, i);
    append_row(out, {rho, w * rho * rho, 0.5 * w * w * rho * rho, v_new(rho, p), v_eff_radial(rho, p, false),
                     v_eff_radial(rho, p, true)});
  }
  return out;
}

std::string wavefunction_table(const ModelParams& p, int level, const TableGrid& grid) {
  validate(p);
  check(grid);
  if (level < 0) throw ValidationError("level", "must be >= 0");
  ModelParams conventional = p;
  conventional.ext_m = 0;
  const double w = p.omega;
  std::string out = "rho,g,phi_conventional,phi_extended,v_eff_conventional,v_eff_extended\n";
  for (int i = 1; i <= grid.points; ++i) {
    const double rho = rho_at(grid, i);
    append_row(out, {rho, w * rho * rho, radial_eigenfunction(level, conventional, rho),
                     radial_eigenfunction(level, p, rho), v_eff_radial(rho, p, false), v_eff_radial(rho, p, true)});
  }
  return out;
}

std::string polynomial_table(int max_n, int m, double alpha, double g_max, int points) {
  if (max_n < 0) throw ValidationError("n", "must be >= 0");
  if (m < 0) throw ValidationError("m", "must be >= 0");
  if (!(alpha > 0.0)) throw ValidationError("alpha", "must be > 0");
  if (!(g_max > 0.0)) throw ValidationError("g_max", "must be > 0");
  if (points < 1) throw ValidationError("points", "must be >= 1");
  std::string out = "n,m,alpha,g,value\n";
  for (int n = 0; n <= max_n; ++n) {
    for (int i = 0; i <= points; ++i) {
      const double g = i * g_max / points;
      out += fmt::format("{},{},{},{},{}\n", n, m, format_real(alpha), format_real(g),
                         format_real(special::xm_laguerre(n, m, alpha, g)));
    }
  }
  return out;
}

}  // namespace xlag

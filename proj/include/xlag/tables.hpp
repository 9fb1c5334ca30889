#pragma once

// CSV tables for external plotting. Comma delimiter, '.' decimal point,
// header row, reals with 17 significant digits.

#include <string>

#include "xlag/model.hpp"

namespace xlag {

struct TableGrid {
  double rho_max = 6.0;
  int points = 200;  // rows at rho_i = i rho_max / points, i = 1..points
};

/// rho,g,v_oscillator,v_new,v_eff_conventional,v_eff_extended
std::string potential_table(const ModelParams& p, const TableGrid& grid);

/// rho,g,phi_conventional,phi_extended,v_eff_conventional,v_eff_extended for level n.
std::string wavefunction_table(const ModelParams& p, int level, const TableGrid& grid);

/// n,m,alpha,g,value of xm_laguerre for n <= max_n on g_i = i g_max / points, i = 0..points.
std::string polynomial_table(int max_n, int m, double alpha, double g_max, int points);

}  // namespace xlag

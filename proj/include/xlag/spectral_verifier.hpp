#pragma once

// Independent numerical checks of the analytic spectrum and eigenfunctions:
// a finite-difference radial eigensolver (Sturm-sequence bisection plus
// Richardson extrapolation), closed-form ODE residuals, orthogonality and
// formula cross-consistency.

#include <utility>
#include <vector>

#include "xlag/grid.hpp"
#include "xlag/model.hpp"
#include "xlag/report.hpp"
#include "xlag/wavefunctions.hpp"

namespace xlag {

/// Symmetric tridiagonal matrix with Sturm-count based eigenvalue bisection.
class SymmetricTridiagonal {
 public:
  SymmetricTridiagonal(std::vector<double> diagonal, std::vector<double> off_diagonal);

  int size() const noexcept { return static_cast<int>(diagonal_.size()); }
  const std::vector<double>& diagonal() const noexcept { return diagonal_; }
  const std::vector<double>& off_diagonal() const noexcept { return off_diagonal_; }

  /// Number of eigenvalues strictly below x.
  int count_below(double x) const noexcept;

  /// Gershgorin enclosure of the spectrum.
  std::pair<double, double> bounds() const noexcept;

  /// k-th smallest eigenvalue (0-based), bisected until the bracket cannot shrink.
  double eigenvalue(int k) const;

 private:
  std::vector<double> diagonal_;
  std::vector<double> off_diagonal_;
  std::vector<double> off_squared_;
  double pivot_floor_ = 0.0;
};

enum class Stencil {
  /// Flux form (rho^tau Phi')' / rho^tau on cells centred at the grid points,
  /// symmetrized to act on u ~ rho^(tau/2) Phi. Inner face at rho_min - h/2
  /// (zero flux when that face is the origin), Dirichlet ghost at rho_max + h.
  conservative,
  /// -u''/2 + V_eff u with the centrifugal term sampled at the nodes and
  /// Dirichlet nodes at rho_min - h and rho_max + h.
  centrifugal,
};

const char* to_string(Stencil s) noexcept;

struct SolverOptions {
  Stencil stencil = Stencil::conservative;
  double v_new_scale = 1.0;  // scales the extension term (negative controls)
  int threads = 1;
};

SymmetricTridiagonal radial_hamiltonian(const ModelParams& p, const RadialGrid& grid, bool extended,
                                        const SolverOptions& options = {});

/// Lowest k eigenvalues on a single grid (no extrapolation).
std::vector<double> radial_levels(const ModelParams& p, int k, const RadialGrid& grid, bool extended,
                                  const SolverOptions& options = {});

/// n_points unknowns; outer boundary at 1/2 w^2 rho^2 = E_{k-1} + 25 w, inner boundary at 0.
RadialGrid default_spectral_grid(const ModelParams& p, int k, Stencil stencil = Stencil::conservative,
                                 int n_points = 20001);

/// Grid with half the spacing and the same boundary locations.
RadialGrid halved(const RadialGrid& grid, Stencil stencil);

struct SpectrumRow {
  int n = 0;
  double e_analytic = 0.0;
  double e_conv = 0.0;  // extrapolated
  double e_ext = 0.0;   // extrapolated
  double e_conv_coarse = 0.0;
  double e_conv_fine = 0.0;
  double e_ext_coarse = 0.0;
  double e_ext_fine = 0.0;
  double abs_err_conv = 0.0;
  double abs_err_ext = 0.0;
  double rel_err_conv = 0.0;
  double rel_err_ext = 0.0;
};

struct SpectrumReport {
  std::vector<SpectrumRow> rows;  // sorted by n
  RadialGrid grid;
  RadialGrid fine_grid;
  Stencil stencil = Stencil::conservative;
  int extrapolation_order = 4;
  double v_new_scale = 1.0;

  Json to_json() const;
  /// n,E_analytic,E_conv_numeric,E_ext_numeric,rel_err_conv,rel_err_ext
  std::string to_csv() const;
};

/// Conventional and extended levels from grids h and h/2, Richardson-extrapolated.
SpectrumReport numeric_spectrum(const ModelParams& p, int k, const RadialGrid& grid,
                                const SolverOptions& options = {});

struct SpectralTolerances {
  double iso_per_omega = 1e-8;  // |E_ext - E_conv| <= iso_per_omega * omega
  double analytic_rel = 1e-6;   // |E - E_analytic| <= analytic_rel * E_analytic
};

/// numeric_spectrum on the default grid plus pass/fail per level.
VerificationReport isospectrality_check(const ModelParams& p, int k, const SolverOptions& options = {},
                                        const SpectralTolerances& tol = {}, int n_points = 20001);

// ---------------------------------------------------------------------------

enum class ResidualStatus { converged, grid_too_coarse, mismatch };

const char* to_string(ResidualStatus s) noexcept;

struct ResidualOptions {
  double v_new_scale = 1.0;
  bool printed_x1_denominator = false;  // m = 1 only: use 2g + alpha in the eigenfunction
  double tolerance = 1e-8;
};

struct ResidualResult {
  double residual = 0.0;       // on the given grid
  double residual_half = 0.0;  // same range, spacing h/2
  ResidualStatus status = ResidualStatus::converged;
};

/// max |Phi'' + (tau/rho) Phi' + 2(E_n - V_ext) Phi| / (max |Phi| * E_n) over interior
/// grid points, with 4th-order central differences.
ResidualResult ode_residual(int n, const ModelParams& p, const RadialGrid& grid,
                            const ResidualOptions& options = {});

/// h = 0.001 / sqrt(omega) up to omega rho^2 = 2(2n + alpha + 1) + 20.
RadialGrid default_residual_grid(const ModelParams& p, int n);

// ---------------------------------------------------------------------------

struct SquareMatrix {
  int size = 0;
  std::vector<double> values;  // row-major

  double operator()(int i, int j) const { return values[static_cast<std::size_t>(i * size + j)]; }
  double max_off_diagonal() const noexcept;
};

/// Normalized inner products <Phi_i, Phi_j> / (|Phi_i| |Phi_j|), i, j < k.
SquareMatrix orthogonality_matrix(const ModelParams& p, int k, const QuadratureSpec& quad);

/// Pointwise agreement of the three m = 1 potential forms, the m = 0 reduction,
/// and the ODE coefficient diagnosis.
VerificationReport consistency_suite(const ModelParams& p);

// ---------------------------------------------------------------------------

struct ConvergenceStudy {
  std::vector<double> spacings;             // coarse spacing of each level
  std::vector<double> raw_errors;           // max_n |E_n(h) - E_n|
  std::vector<double> extrapolated_errors;  // max_n |(4E(h/2) - E(h))/3 - E_n|
  double raw_slope = 0.0;
  double extrapolated_slope = 0.0;
};

/// Log-log slopes over `levels` successive halvings starting from `coarse_points` unknowns.
ConvergenceStudy convergence_study(const ModelParams& p, int k, int coarse_points, const SolverOptions& options = {},
                                   int levels = 3);

}  // namespace xlag

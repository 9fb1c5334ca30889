#pragma once

// Classical generalized Laguerre polynomials and the exceptional X1 / Xm
// Laguerre families built from them.
//
// Conventions:
//   * L_{-1}^(a) == 0 for every a, so the exceptional relations hold at their
//     boundary indices without special cases.
//   * Exceptional polynomials are always assembled from classical ones; the
//     second-order ODE they satisfy is only used as a residual diagnostic.
//   * The X1 family written as -(g+a+1) L_n + L_{n-1} and the Xm family at m=1
//     differ by an overall factor -1. Nothing here compares the two families
//     without accounting for that sign.
//
// All functions are pure and thread-safe.

#include <array>

namespace xlag::special {

/// L_n^(alpha)(x) by upward three-term recurrence. n = -1 yields 0.
/// Negative x is allowed (needed for the denominators L_m(-g)).
double laguerre(int n, double alpha, double x);

/// d/dx L_n^(alpha)(x) = -L_{n-1}^(alpha+1)(x).
double laguerre_derivative(int n, double alpha, double x);

/// k-th derivative: (-1)^k L_{n-k}^(alpha+k)(x).
double laguerre_derivative(int n, double alpha, double x, int order);

/// X1 exceptional Laguerre polynomial of degree n_hat >= 1:
///   -(g + alpha + 1) L_{n_hat-1}^(alpha)(g) + L_{n_hat-2}^(alpha)(g)
double x1_laguerre(int n_hat, double alpha, double g);

/// Xm exceptional Laguerre polynomial of degree n + m:
///   L_m^(a)(-g) L_n^(a-1)(g) + L_m^(a-1)(-g) L_{n-1}^(a)(g)
double xm_laguerre(int n, int m, double alpha, double g);

/// Value, first and second g-derivative of xm_laguerre, all from closed forms.
std::array<double, 3> xm_laguerre_jet(int n, int m, double alpha, double g);

/// L_m^(alpha-1)(-g). Strictly positive for alpha > 0 and g >= 0 because every
/// series coefficient of L_m^(b)(-g) is positive when b > -1.
double xm_denominator(int m, double alpha, double g);

// ---------------------------------------------------------------------------
// Second-order ODE  y'' + Q(g) y' + R(g) y = 0  satisfied by the Xm family.
// R(g) = degree / g + r_offset(g), where degree = n + m is the polynomial degree.

enum class RCoefficientSet {
  /// X1 form: R = ((g - a)/(g + a) + degree - 1) / g. Only defined for m = 1.
  x1_form,
  /// General-m form as commonly printed: offset -2a L_{m-1}^(a)(-g) / (g L_m^(a)(-g)).
  xm_printed,
  /// General-m form with denominator L_m^(a-1)(-g). Coincides with x1_form at m = 1.
  xm_corrected,
};

const char* to_string(RCoefficientSet set) noexcept;

/// Which of the two printed R sets (X1 form, general-m form at m=1) annihilates
/// the closed-form X1 polynomial.
enum class RCoefficientVerdict { x1_form_only, xm_printed_only, both, neither };

const char* to_string(RCoefficientVerdict verdict) noexcept;

struct OdeCoefficients {
  double q = 0.0;
  double r_offset = 0.0;  // n-independent part of R for the requested set
  RCoefficientVerdict verdict = RCoefficientVerdict::neither;
};

/// Q_m(g) and the n-independent part of R_m(g). Defaults to the general-m
/// printed set. g = 0 is a pole and is rejected.
OdeCoefficients ode_coefficients(int m, double alpha, double g,
                                 RCoefficientSet set = RCoefficientSet::xm_printed);

/// |g y'' + g Q y' + g R y| divided by the sum of the three term magnitudes,
/// with y = xm_laguerre(n, m, alpha, .) and its exact derivatives.
double ode_relative_residual(int n, int m, double alpha, double g, RCoefficientSet set);

struct RCoefficientDiagnosis {
  int m = 1;
  double alpha = 0.0;
  double x1_form_residual = 0.0;      // NaN when m != 1
  double xm_printed_residual = 0.0;
  double xm_corrected_residual = 0.0;
  bool x1_form_consistent = false;
  bool xm_printed_consistent = false;
  bool xm_corrected_consistent = false;
  RCoefficientVerdict verdict = RCoefficientVerdict::neither;
};

/// Maximum relative ODE residual of each R set over degrees n = 0..4 and a
/// fixed g sample in (0, 12]. A set is consistent when its residual <= 1e-9.
RCoefficientDiagnosis diagnose_r_coefficients(int m, double alpha);

}  // namespace xlag::special

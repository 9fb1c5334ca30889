#include "xlag/special_functions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "xlag/error.hpp"

namespace xlag::special {
namespace {

void require_finite(double value, const char* field) {
  if (!std::isfinite(value)) throw ValidationError(field, "must be finite");
}

void require_exceptional_domain(double alpha, double g) {
  require_finite(alpha, "alpha");
  require_finite(g, "g");
  if (alpha <= 0.0) throw ValidationError("alpha", "must be > 0 for exceptional Laguerre polynomials");
  if (g < 0.0) throw ValidationError("g", "must be >= 0");
}

// Ratio L_{m-1}^(a)(-g) / denominator shared by Q and the corrected R.
double xm_log_derivative_ratio(int m, double alpha, double g, double denominator) {
  return laguerre(m - 1, alpha, -g) / denominator;
}

}  // namespace

double laguerre(int n, double alpha, double x) {
  require_finite(alpha, "alpha");
  require_finite(x, "x");
  if (n < -1) throw ValidationError("n", "degree must be >= -1");
  if (n == -1) return 0.0;

  double previous = 0.0;  // L_{-1}
  double current = 1.0;   // L_0
  for (int k = 0; k < n; ++k) {
    const double next = ((2 * k + 1 + alpha - x) * current - (k + alpha) * previous) / (k + 1);
    previous = current;
    current = next;
  }
  return current;
}

double laguerre_derivative(int n, double alpha, double x) {
  return laguerre_derivative(n, alpha, x, 1);
}

double laguerre_derivative(int n, double alpha, double x, int order) {
  if (order < 0) throw ValidationError("order", "must be >= 0");
  if (n < -1) throw ValidationError("n", "degree must be >= -1");
  if (n - order < 0) {
    require_finite(alpha, "alpha");
    require_finite(x, "x");
    return 0.0;
  }
  const double value = laguerre(n - order, alpha + order, x);
  return (order % 2 == 0) ? value : -value;
}

double x1_laguerre(int n_hat, double alpha, double g) {
  if (n_hat < 1) throw ValidationError("n_hat", "X1 family starts at degree 1");
  require_exceptional_domain(alpha, g);
  const int n = n_hat - 1;
  return -(g + alpha + 1.0) * laguerre(n, alpha, g) + laguerre(n - 1, alpha, g);
}

double xm_laguerre(int n, int m, double alpha, double g) {
  if (n < 0) throw ValidationError("n", "must be >= 0");
  if (m < 0) throw ValidationError("m", "must be >= 0");
  require_exceptional_domain(alpha, g);
  return laguerre(m, alpha, -g) * laguerre(n, alpha - 1.0, g) +
         laguerre(m, alpha - 1.0, -g) * laguerre(n - 1, alpha, g);
}

std::array<double, 3> xm_laguerre_jet(int n, int m, double alpha, double g) {
  if (n < 0) throw ValidationError("n", "must be >= 0");
  if (m < 0) throw ValidationError("m", "must be >= 0");
  require_exceptional_domain(alpha, g);

  // f(g) = A(-g) B(g) + C(-g) D(g). The k-th g-derivative of P(-g) is
  // (-1)^k P^(k)(-g), which for Laguerre P equals L_{deg-k}^(a+k)(-g).
  auto reflected = [&](int degree, double a, int order) {
    const double d = laguerre_derivative(degree, a, -g, order);
    return (order % 2 == 0) ? d : -d;
  };
  auto direct = [&](int degree, double a, int order) {
    return laguerre_derivative(degree, a, g, order);
  };

  std::array<double, 3> jet{};
  for (int order = 0; order <= 2; ++order) {
    double sum = 0.0;
    for (int k = 0; k <= order; ++k) {
      const double binom = (order == 2 && k == 1) ? 2.0 : 1.0;
      sum += binom * reflected(m, alpha, k) * direct(n, alpha - 1.0, order - k);
      sum += binom * reflected(m, alpha - 1.0, k) * direct(n - 1, alpha, order - k);
    }
    jet[static_cast<std::size_t>(order)] = sum;
  }
  return jet;
}

double xm_denominator(int m, double alpha, double g) {
  if (m < 0) throw ValidationError("m", "must be >= 0");
  require_finite(alpha, "alpha");
  require_finite(g, "g");
  if (alpha <= 0.0) throw ValidationError("alpha", "must be > 0; denominator positivity is not guaranteed otherwise");
  if (g < 0.0) throw ValidationError("g", "must be >= 0");
  return laguerre(m, alpha - 1.0, -g);
}

const char* to_string(RCoefficientSet set) noexcept {
  switch (set) {
    case RCoefficientSet::x1_form: return "x1_form";
    case RCoefficientSet::xm_printed: return "xm_printed";
    case RCoefficientSet::xm_corrected: return "xm_corrected";
  }
  return "unknown";
}

const char* to_string(RCoefficientVerdict verdict) noexcept {
  switch (verdict) {
    case RCoefficientVerdict::x1_form_only: return "x1_form_only";
    case RCoefficientVerdict::xm_printed_only: return "xm_printed_only";
    case RCoefficientVerdict::both: return "both";
    case RCoefficientVerdict::neither: return "neither";
  }
  return "unknown";
}

namespace {

OdeCoefficients coefficients_only(int m, double alpha, double g, RCoefficientSet set) {
  if (m < 1) throw ValidationError("m", "ODE coefficients are defined for m >= 1");
  require_finite(alpha, "alpha");
  require_finite(g, "g");
  if (alpha <= 0.0) throw ValidationError("alpha", "must be > 0");
  if (g <= 0.0) throw Error(ErrorCode::domain, "g: coefficients have a pole at g = 0; g must be > 0");

  const double denominator = xm_denominator(m, alpha, g);
  const double ratio = xm_log_derivative_ratio(m, alpha, g, denominator);

  OdeCoefficients out;
  out.q = ((alpha + 1.0 - g) - 2.0 * g * ratio) / g;
  switch (set) {
    case RCoefficientSet::x1_form:
      if (m != 1) throw ValidationError("m", "the X1 form of R is only defined for m = 1");
      out.r_offset = ((g - alpha) / (g + alpha) - 1.0) / g;
      break;
    case RCoefficientSet::xm_printed:
      out.r_offset = -2.0 * alpha * laguerre(m - 1, alpha, -g) / (g * laguerre(m, alpha, -g));
      break;
    case RCoefficientSet::xm_corrected:
      out.r_offset = -2.0 * alpha * ratio / g;
      break;
  }
  return out;
}

constexpr double kConsistencyTolerance = 1e-9;
constexpr std::array<double, 8> kDiagnosisPoints{0.25, 0.5, 1.0, 2.0, 3.5, 5.0, 8.0, 12.0};

double max_residual(int m, double alpha, RCoefficientSet set) {
  double worst = 0.0;
  for (int n = 0; n <= 4; ++n) {
    for (double g : kDiagnosisPoints) {
      worst = std::max(worst, ode_relative_residual(n, m, alpha, g, set));
    }
  }
  return worst;
}

}  // namespace

double ode_relative_residual(int n, int m, double alpha, double g, RCoefficientSet set) {
  const OdeCoefficients c = coefficients_only(m, alpha, g, set);
  const auto [y, dy, d2y] = xm_laguerre_jet(n, m, alpha, g);
  const double degree = static_cast<double>(n + m);
  const double r = degree / g + c.r_offset;

  const double t2 = g * d2y;
  const double t1 = g * c.q * dy;
  const double t0 = g * r * y;
  const double scale = std::abs(t2) + std::abs(t1) + std::abs(t0);
  if (scale == 0.0) return 0.0;
  return std::abs(t2 + t1 + t0) / scale;
}

RCoefficientDiagnosis diagnose_r_coefficients(int m, double alpha) {
  RCoefficientDiagnosis d;
  d.m = m;
  d.alpha = alpha;
  d.xm_printed_residual = max_residual(m, alpha, RCoefficientSet::xm_printed);
  d.xm_corrected_residual = max_residual(m, alpha, RCoefficientSet::xm_corrected);
  d.x1_form_residual = (m == 1) ? max_residual(m, alpha, RCoefficientSet::x1_form)
                                : std::numeric_limits<double>::quiet_NaN();

  d.xm_printed_consistent = d.xm_printed_residual <= kConsistencyTolerance;
  d.xm_corrected_consistent = d.xm_corrected_residual <= kConsistencyTolerance;
  d.x1_form_consistent = (m == 1) && d.x1_form_residual <= kConsistencyTolerance;

  if (m == 1) {
    if (d.x1_form_consistent && d.xm_printed_consistent) d.verdict = RCoefficientVerdict::both;
    else if (d.x1_form_consistent) d.verdict = RCoefficientVerdict::x1_form_only;
    else if (d.xm_printed_consistent) d.verdict = RCoefficientVerdict::xm_printed_only;
    else d.verdict = RCoefficientVerdict::neither;
  } else {
    d.verdict = d.xm_printed_consistent ? RCoefficientVerdict::xm_printed_only
                                        : RCoefficientVerdict::neither;
  }
  return d;
}

OdeCoefficients ode_coefficients(int m, double alpha, double g, RCoefficientSet set) {
  OdeCoefficients out = coefficients_only(m, alpha, g, set);
  out.verdict = diagnose_r_coefficients(1, alpha).verdict;
  return out;
}

}  // namespace xlag::special

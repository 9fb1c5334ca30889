#include "xlag/report.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/format.h>

namespace xlag {

std::string format_real(double value) { return fmt::format("{:.17g}", value); }

bool VerificationReport::passed() const noexcept {
  return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.passed; });
}

Check& VerificationReport::expect_at_most(std::string name, double value, double tolerance, std::string detail) {
  checks.push_back(Check{std::move(name), value, tolerance, std::isfinite(value) && value <= tolerance, std::move(detail)});
  return checks.back();
}

Check& VerificationReport::expect_above(std::string name, double value, double threshold, std::string detail) {
  checks.push_back(Check{std::move(name), value, threshold, std::isfinite(value) && value > threshold, std::move(detail)});
  return checks.back();
}

Check& VerificationReport::expect_true(std::string name, bool condition, std::string detail) {
  checks.push_back(Check{std::move(name), condition ? 1.0 : 0.0, 1.0, condition, std::move(detail)});
  return checks.back();
}

namespace {

Json number(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;  // JSON has no NaN/inf
}

}  // namespace

Json VerificationReport::to_json() const {
  Json j;
  j["suite"] = suite;
  j["pass"] = passed();
  Json list = Json::array();
  for (const auto& c : checks) {
    Json item;
    item["name"] = c.name;
    item["value"] = number(c.value);
    item["tolerance"] = number(c.tolerance);
    item["pass"] = c.passed;
    if (!c.detail.empty()) item["detail"] = c.detail;
    list.push_back(std::move(item));
  }
  j["checks"] = std::move(list);
  j["notes"] = notes;
  if (!data.empty()) j["data"] = data;
  return j;
}

std::string VerificationReport::to_text() const {
  std::size_t width = 5;
  for (const auto& c : checks) width = std::max(width, c.name.size());

  std::string out = fmt::format("suite: {}  [{}]\n", suite, passed() ? "PASS" : "FAIL");
  for (const auto& c : checks) {
    out += fmt::format("  {:<4}  {:<{}}  value={:<24}  tol={}", c.passed ? "ok" : "FAIL", c.name, width,
                       format_real(c.value), format_real(c.tolerance));
    if (!c.detail.empty()) out += "  (" + c.detail + ")";
    out += '\n';
  }
  for (const auto& n : notes) out += "  note: " + n + '\n';
  return out;
}

}  // namespace xlag

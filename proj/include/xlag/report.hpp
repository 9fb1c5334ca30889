#pragma once

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace xlag {

using Json = nlohmann::ordered_json;

/// One verification line: a measured value against a threshold.
struct Check {
  std::string name;
  double value = 0.0;
  double tolerance = 0.0;
  bool passed = false;
  std::string detail;
};

struct VerificationReport {
  std::string suite;
  std::vector<Check> checks;
  std::vector<std::string> notes;
  Json data = Json::object();  // suite-specific tables (spectra, matrices, ...)

  bool passed() const noexcept;

  /// value <= tolerance
  Check& expect_at_most(std::string name, double value, double tolerance, std::string detail = {});
  /// value > threshold; used for negative controls and witnesses
  Check& expect_above(std::string name, double value, double threshold, std::string detail = {});
  Check& expect_true(std::string name, bool condition, std::string detail = {});

  Json to_json() const;
  std::string to_text() const;
};

/// "%.17g"
std::string format_real(double value);

}  // namespace xlag

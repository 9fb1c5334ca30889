#include <doctest.h>

#include <cmath>

#include "xlag/error.hpp"
#include "xlag/manybody.hpp"

using namespace xlag;
using doctest::Approx;

namespace {

ModelParams make(int n, double lambda, int r, double omega, int s, int m) {
  return ModelParams{n, lambda, r, omega, s, m};
}

const ModelParams kBattery[] = {make(2, 1, 1, 1, 0, 0), make(3, 1, 1, 1, 0, 0), make(3, 1.5, 2, 1, 0, 0),
                                make(4, 0.5, 3, 2, 0, 0)};

}  // namespace

TEST_CASE("local energy examples") {
  const Configuration c({-0.4, 0.3});
  auto p = make(2, 1, 1, 1, 0, 0);
  CHECK(std::abs(local_energy(c, p) - 2.0) <= 1e-6);
  p.ext_m = 1;
  CHECK(std::abs(local_energy(c, p) - 2.0) <= 1e-6);

  const auto jk = make(3, 1, 1, 1, 0, 0);
  const double e0 = energy_level(0, jk);
  CHECK(std::abs(local_energy(Configuration({-1.0, 0.1, 1.3}), jk) - e0) <= 1e-6 * e0);
}

TEST_CASE("local energy is constant over sampled configurations") {
  for (const auto& base : kBattery) {
    for (int m = 0; m <= 3; ++m) {
      auto p = base;
      p.ext_m = m;
      const auto stats = constancy_scan(p, 60, 11);
      CHECK(stats.passed);
      CHECK(stats.stddev / std::abs(stats.mean) <= 1e-5);
      CHECK(std::abs(stats.mean - stats.e_analytic) <= 1e-5 * stats.e_analytic);
      CHECK(stats.max_dev >= 0.0);
    }
  }
}

TEST_CASE("wrong trial wavefunction is detected") {
  LocalEnergyOptions shifted;
  shifted.psi_lambda_shift = 0.1;
  for (const auto& p : kBattery) {
    const auto stats = constancy_scan(p, 60, 5, shifted);
    CHECK_FALSE(stats.passed);
    // the two-body coefficient lambda(lambda - 1) only moves by 0.01 at lambda = 0.5
    CHECK(stats.stddev / std::abs(stats.mean) > (p.lambda >= 1.0 ? 1e-2 : 1e-3));
  }
}

TEST_CASE("scaled extension term is detected") {
  LocalEnergyOptions scaled;
  scaled.v_new_scale = 1.01;
  for (int m = 1; m <= 3; ++m) {
    auto p = make(3, 1.5, 2, 1, 0, m);
    CHECK_FALSE(constancy_scan(p, 60, 5, scaled).passed);
  }
}

TEST_CASE("literal three-body form breaks constancy") {
  LocalEnergyOptions printed;
  printed.interaction = InteractionForm::printed;
  CHECK_FALSE(constancy_scan(make(3, 1, 1, 1, 0, 0), 60, 5, printed).passed);
  CHECK_FALSE(constancy_scan(make(3, 1.5, 2, 1, 0, 0), 60, 5, printed).passed);
}

TEST_CASE("m = 0 and m = 2 share the ground-state energy") {
  auto p0 = make(3, 1.5, 2, 1, 0, 0);
  auto p2 = p0;
  p2.ext_m = 2;
  const double a = constancy_scan(p0, 40, 3).mean;
  const double b = constancy_scan(p2, 40, 3).mean;
  CHECK(std::abs(a - b) <= 1e-6 * std::abs(a));
}

TEST_CASE("sorting unsorted positions gives the same value bitwise") {
  const auto p = make(4, 0.5, 3, 2, 0, 2);
  const Configuration ordered({-0.9, -0.2, 0.35, 1.1});
  const auto relabeled = Configuration::from_unsorted({0.35, -0.9, 1.1, -0.2});
  CHECK(local_energy(ordered, p) == local_energy(relabeled, p));
}

TEST_CASE("scan is deterministic and independent of the thread count") {
  const auto p = make(4, 0.5, 3, 2, 0, 1);
  const auto a = constancy_scan(p, 50, 42, {}, 1);
  const auto b = constancy_scan(p, 50, 42, {}, 4);
  CHECK(a.mean == b.mean);
  CHECK(a.stddev == b.stddev);
  CHECK(a.max_dev == b.max_dev);
  CHECK(a.to_json().dump() == b.to_json().dump());
  CHECK(constancy_scan(p, 50, 43).mean != a.mean);
}

TEST_CASE("sampled configurations are ordered and separated") {
  const auto p = make(4, 0.5, 3, 2, 0, 0);
  const auto configs = sample_configurations(p, 100, 9, 0.01);
  CHECK(configs.size() == 100);
  for (const auto& c : configs) {
    const auto x = c.positions();
    for (std::size_t i = 1; i < x.size(); ++i) CHECK(x[i] - x[i - 1] >= 0.01);
  }
  const auto again = sample_configurations(p, 100, 9, 0.01);
  CHECK(std::equal(configs[17].positions().begin(), configs[17].positions().end(), again[17].positions().begin()));
}

TEST_CASE("stats JSON layout") {
  const auto stats = constancy_scan(make(2, 1, 1, 1, 0, 1), 10, 1);
  const auto j = stats.to_json();
  std::vector<std::string> keys;
  for (const auto& [k, v] : j.items()) keys.push_back(k);
  CHECK(keys == std::vector<std::string>{"params", "n_samples", "seed", "mean", "stddev", "max_dev", "E_analytic",
                                         "pass"});
  CHECK(j["pass"] == true);
}

TEST_CASE("local energy preconditions") {
  const auto p = make(3, 1, 1, 1, 0, 0);
  CHECK_THROWS_AS(local_energy(Configuration({-1.0, 0.0}), p), ValidationError);
  CHECK_THROWS_AS(local_energy(Configuration({-1.0, 0.0, 0.005}), p), ValidationError);
  auto ps = p;
  ps.degree_s = 1;
  ps.lambda = 2;
  CHECK_THROWS_AS(local_energy(Configuration({-1.0, 0.0, 1.0}), ps), ValidationError);
  LocalEnergyOptions bad;
  bad.step = 0.0;
  CHECK_THROWS_AS(local_energy(Configuration({-1.0, 0.0, 1.0}), p, bad), ValidationError);
  bad.step = 1e-3;
  bad.psi_lambda_shift = -2.0;
  CHECK_THROWS_AS(local_energy(Configuration({-1.0, 0.0, 1.0}), p, bad), ValidationError);
  CHECK_THROWS_AS(constancy_scan(p, 1, 1), ValidationError);
}

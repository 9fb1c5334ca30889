#include <doctest.h>

#include <cmath>
#include <cstring>
#include <string>

#include "xlag/xlag.h"

namespace {

std::string take(char* s) {
  std::string out = s ? s : "";
  xlag_string_free(s);
  return out;
}

xlag_model* model(int n, double lambda, int r, double omega, int s, int m) {
  const xlag_params p{n, lambda, r, omega, s, m};
  xlag_model* out = nullptr;
  REQUIRE(xlag_model_create(&p, &out) == XLAG_OK);
  return out;
}

}  // namespace

TEST_CASE("special functions through the C API") {
  double v = 0.0;
  CHECK(xlag_laguerre(2, 0.0, 2.0, &v) == XLAG_OK);
  CHECK(v == doctest::Approx(-1.0));
  CHECK(xlag_x1_laguerre(1, 1.0, 1.0, &v) == XLAG_OK);
  CHECK(v == doctest::Approx(-3.0));
  CHECK(xlag_xm_denominator(1, 1.0, 1.0, &v) == XLAG_OK);
  CHECK(v == doctest::Approx(2.0));
  CHECK(xlag_laguerre(2, 1.0, NAN, &v) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(std::string(xlag_last_error()).find("x") != std::string::npos);
  CHECK(xlag_laguerre(2, 1.0, 1.0, nullptr) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_x1_laguerre(1, 1.0, -1.0, &v) == XLAG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("status strings") {
  CHECK(std::string(xlag_status_string(XLAG_OK)) == "ok");
  CHECK(std::strlen(xlag_status_string(XLAG_ERR_NUMERIC)) > 0);
  CHECK(std::strlen(xlag_status_string(static_cast<xlag_status>(42))) > 0);
}

TEST_CASE("model lifecycle") {
  xlag_model* m = model(2, 1, 1, 1, 0, 1);
  xlag_derived d{};
  CHECK(xlag_model_derived(m, &d) == XLAG_OK);
  CHECK(d.tau == doctest::Approx(3.0));
  CHECK(d.alpha == doctest::Approx(1.0));
  CHECK(d.pair_count == 1);

  double e = 0.0;
  CHECK(xlag_energy_level(m, 2, &e) == XLAG_OK);
  CHECK(e == doctest::Approx(6.0));

  xlag_ext_constants c{};
  CHECK(xlag_ext_constants_get(m, &c) == XLAG_OK);
  CHECK(c.alpha1 == doctest::Approx(-8.0));
  CHECK(c.beta2 == doctest::Approx(2.0));

  char* json = nullptr;
  CHECK(xlag_model_to_json(m, &json) == XLAG_OK);
  const std::string text = take(json);
  xlag_model* copy = nullptr;
  CHECK(xlag_model_from_json(text.c_str(), &copy) == XLAG_OK);
  xlag_params a{}, b{};
  xlag_model_params(m, &a);
  xlag_model_params(copy, &b);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  xlag_model_destroy(copy);

  double phi = 0.0;
  CHECK(xlag_radial_eigenfunction(m, 0, 1.0, &phi) == XLAG_OK);
  CHECK(std::abs(phi) == doctest::Approx(std::exp(-0.5) * 1.5));

  const double x[] = {-0.4, 0.3};
  double le = 0.0;
  CHECK(xlag_local_energy(m, x, 2, 0.0, &le) == XLAG_OK);
  CHECK(std::abs(le - 2.0) <= 1e-6);
  const double unordered[] = {0.3, -0.4};
  CHECK(xlag_local_energy(m, unordered, 2, 0.0, &le) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_jastrow(m, x, 1, &le) == XLAG_ERR_INVALID_ARGUMENT);

  xlag_model_destroy(m);
  xlag_model_destroy(nullptr);
}

TEST_CASE("invalid models are rejected with a field name") {
  const xlag_params bad{3, 1.0, 5, 1.0, 0, 0};
  xlag_model* out = reinterpret_cast<xlag_model*>(0x1);
  CHECK(xlag_model_create(&bad, &out) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(out == nullptr);
  CHECK(std::string(xlag_last_error()).rfind("r", 0) == 0);
  CHECK(xlag_model_from_json("{\"N\": 2}", &out) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_model_from_json("not json", &out) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_model_create(nullptr, &out) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_energy_level(nullptr, 0, nullptr) == XLAG_ERR_INVALID_ARGUMENT);
}

TEST_CASE("tables") {
  xlag_model* m = model(2, 1, 1, 1, 0, 1);
  char* out = nullptr;
  CHECK(xlag_table(m, "potential", 4.0, 10, 0, 0, 1, &out) == XLAG_OK);
  const std::string csv = take(out);
  CHECK(csv.rfind("rho,g,v_oscillator,v_new,v_eff_conventional,v_eff_extended\n", 0) == 0);
  CHECK(xlag_table(m, "banana", 0, 0, 0, 0, 1, &out) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_polynomial_table(3, 2, 1.5, 5.0, 6, &out) == XLAG_OK);
  CHECK(take(out).rfind("n,m,alpha,g,value\n", 0) == 0);
  CHECK(xlag_params_report(m, 1, &out) == XLAG_OK);
  CHECK(take(out).find("\"tau\"") != std::string::npos);
  xlag_model_destroy(m);
}

TEST_CASE("verification reports") {
  xlag_model* m = model(2, 1, 1, 1, 0, 1);
  xlag_verify_options o;
  xlag_verify_options_init(&o);
  CHECK(o.levels == 5);
  CHECK(o.perturb == 1.0);
  CHECK(o.samples == 200);
  o.levels = 3;
  o.points = 4001;
  o.samples = 20;

  xlag_report* r = nullptr;
  CHECK(xlag_verify(m, "all", &o, &r) == XLAG_OK);
  CHECK(xlag_report_passed(r) == 1);
  char* out = nullptr;
  CHECK(xlag_report_text(r, &out) == XLAG_OK);
  const std::string text = take(out);
  CHECK(text.find("RESULT: PASS") != std::string::npos);
  CHECK(xlag_report_json(r, &out) == XLAG_OK);
  CHECK(take(out).rfind("{\n  \"params\"", 0) == 0);
  xlag_report_destroy(r);

  o.perturb = 1.01;
  CHECK(xlag_verify(m, "spectrum", &o, &r) == XLAG_OK);
  CHECK(xlag_report_passed(r) == 0);
  xlag_report_destroy(r);

  CHECK(xlag_verify(m, "everything", &o, &r) == XLAG_ERR_INVALID_ARGUMENT);
  CHECK(xlag_verify(m, "consistency", nullptr, &r) == XLAG_OK);
  CHECK(xlag_report_passed(r) == 1);
  xlag_report_destroy(r);
  CHECK(xlag_report_passed(nullptr) == 0);

  int passed = 0;
  CHECK(xlag_constancy_scan(m, 20, 1, 2, &out, &passed) == XLAG_OK);
  CHECK(passed == 1);
  CHECK(take(out).find("\"E_analytic\"") != std::string::npos);
  xlag_model_destroy(m);
}

TEST_CASE("errors are per thread and cleared by success") {
  double v = 0.0;
  CHECK(xlag_laguerre(-3, 1.0, 1.0, &v) != XLAG_OK);
  CHECK(std::strlen(xlag_last_error()) > 0);
  CHECK(xlag_laguerre(1, 1.0, 1.0, &v) == XLAG_OK);
  CHECK(std::strlen(xlag_last_error()) == 0);
  xlag_string_free(nullptr);
}

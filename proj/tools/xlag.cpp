// xlag: command-line front end over the C interface.
//
// Exit codes: 0 success, 1 usage or configuration error, 2 verification failure.

#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "xlag/xlag.h"

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitVerification = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ModelFlags {
  std::string config;
  std::optional<int> n;
  std::optional<double> lambda;
  std::optional<int> r;
  std::optional<double> omega;
  std::optional<int> s;
  std::optional<int> m;

  void attach(CLI::App* cmd) {
    cmd->add_option("--config", config, "JSON file with keys N, lambda, r, omega, s, m");
    cmd->add_option("--N", n, "number of particles (overrides config)");
    cmd->add_option("--lambda", lambda, "coupling (overrides config)");
    cmd->add_option("--r", r, "truncation range (overrides config)");
    cmd->add_option("--omega", omega, "trap frequency (overrides config)");
    cmd->add_option("--s", s, "polynomial sector degree (overrides config)");
    cmd->add_option("--m", m, "exceptional index (overrides config)");
  }
};

// Owns a C string returned by the library.
struct OwnedString {
  char* ptr = nullptr;
  ~OwnedString() { xlag_string_free(ptr); }
  std::string str() const { return ptr ? std::string(ptr) : std::string(); }
};

struct Model {
  xlag_model* ptr = nullptr;
  ~Model() { xlag_model_destroy(ptr); }
};

void check(xlag_status status) {
  if (status != XLAG_OK) throw UsageError(std::string(xlag_status_string(status)) + ": " + xlag_last_error());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw UsageError("cannot read config file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw UsageError("cannot write '" + path.string() + "'");
  out << text;
  if (!out.flush()) throw UsageError("write to '" + path.string() + "' failed");
}

void emit(const std::string& out_path, const std::string& text) {
  if (out_path.empty() || out_path == "-") {
    std::fwrite(text.data(), 1, text.size(), stdout);
    return;
  }
  write_file(out_path, text);
}

void load_model(const ModelFlags& f, Model& model) {
  xlag_params p{};
  bool have[6] = {};
  if (!f.config.empty()) {
    Model from_config;
    check(xlag_model_from_json(read_file(f.config).c_str(), &from_config.ptr));
    check(xlag_model_params(from_config.ptr, &p));
    std::fill(std::begin(have), std::end(have), true);
  }
  if (f.n) p.n_particles = *f.n, have[0] = true;
  if (f.lambda) p.lambda = *f.lambda, have[1] = true;
  if (f.r) p.range = *f.r, have[2] = true;
  if (f.omega) p.omega = *f.omega, have[3] = true;
  if (f.s) p.degree_s = *f.s, have[4] = true;
  if (f.m) p.ext_m = *f.m, have[5] = true;
  static const char* names[] = {"N", "lambda", "r", "omega", "s", "m"};
  for (int i = 0; i < 6; ++i)
    if (!have[i]) throw UsageError(std::string(names[i]) + ": missing (give --config or --" + names[i] + ")");
  check(xlag_model_create(&p, &model.ptr));
}

int thread_cap() {
  int threads = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
  if (const char* env = std::getenv("XLAG_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end == env || *end != '\0' || cap < 1) throw UsageError("XLAG_THREADS must be a positive integer");
    threads = std::min<long>(threads, cap);
  }
  return threads;
}

std::vector<double> parse_positions(const std::string& text) {
  std::vector<double> x;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      x.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw UsageError("--positions: '" + item + "' is not a number");
    }
  }
  return x;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Rationally extended truncated Calogero-Sutherland model: tables and verification"};
  app.require_subcommand(1);

  ModelFlags params_flags, table_flags, verify_flags, energy_flags;

  auto* params_cmd = app.add_subcommand("params", "print derived constants and the lowest energies");
  params_flags.attach(params_cmd);
  std::string params_format = "text";
  params_cmd->add_option("--format", params_format, "text or json")->check(CLI::IsMember({"text", "json"}));

  auto* table_cmd = app.add_subcommand("table", "write a CSV table");
  table_flags.attach(table_cmd);
  std::string what = "potential";
  std::string table_out;
  double rho_max = 0.0;
  int table_points = 0;
  int level = 0;
  int table_levels = 5;
  bool dump_polynomials = false;
  table_cmd->add_option("--what", what, "potential, wavefunction or spectrum")
      ->check(CLI::IsMember({"potential", "wavefunction", "spectrum"}));
  table_cmd->add_option("--out", table_out, "output file (default stdout)");
  table_cmd->add_option("--rho-max", rho_max, "outer radius for potential and wavefunction tables");
  table_cmd->add_option("--points", table_points, "rows, or solver unknowns for spectrum tables");
  table_cmd->add_option("--level", level, "level n for wavefunction tables");
  table_cmd->add_option("--levels", table_levels, "number of levels for spectrum tables");
  table_cmd->add_flag("--dump-polynomials", dump_polynomials)->group("");

  auto* verify_cmd = app.add_subcommand("verify", "run verification suites and write report.json / report.txt");
  verify_flags.attach(verify_cmd);
  xlag_verify_options vopts;
  xlag_verify_options_init(&vopts);
  std::string suite = "all";
  std::string out_dir = ".";
  verify_cmd->add_option("--suite", suite, "residual, spectrum, ortho, consistency, local-energy or all")
      ->check(CLI::IsMember({"residual", "spectrum", "ortho", "consistency", "local-energy", "all"}));
  verify_cmd->add_option("--out", out_dir, "report directory");
  verify_cmd->add_option("--levels", vopts.levels, "levels per suite");
  verify_cmd->add_option("--perturb", vopts.perturb, "factor on the extension term (negative control)");
  verify_cmd->add_option("--seed", vopts.seed, "local-energy sampler seed");
  verify_cmd->add_option("--samples", vopts.samples, "local-energy configurations");
  verify_cmd->add_option("--points", vopts.points, "radial solver unknowns on the coarse grid");

  auto* energy_cmd = app.add_subcommand("local-energy", "many-body local energy constancy scan");
  energy_flags.attach(energy_cmd);
  int samples = 200;
  std::uint64_t seed = 1;
  std::string positions;
  std::string energy_out;
  energy_cmd->add_option("--samples", samples, "number of configurations");
  energy_cmd->add_option("--seed", seed, "sampler seed");
  energy_cmd->add_option("--positions", positions, "comma-separated ordered positions for a single evaluation");
  energy_cmd->add_option("--out", energy_out, "output file (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (params_cmd->parsed()) {
      Model model;
      load_model(params_flags, model);
      OwnedString text;
      check(xlag_params_report(model.ptr, params_format == "json", &text.ptr));
      std::cout << text.str();
      return 0;
    }

    if (table_cmd->parsed()) {
      Model model;
      load_model(table_flags, model);
      OwnedString csv;
      if (dump_polynomials) {
        xlag_params p;
        xlag_derived d;
        check(xlag_model_params(model.ptr, &p));
        check(xlag_model_derived(model.ptr, &d));
        check(xlag_polynomial_table(std::max(table_levels, 1) - 1, p.ext_m, d.alpha, rho_max > 0 ? rho_max : 20.0,
                                    table_points > 0 ? table_points : 200, &csv.ptr));
      } else {
        check(xlag_table(model.ptr, what.c_str(), rho_max, table_points, level, table_levels, thread_cap(), &csv.ptr));
      }
      emit(table_out, csv.str());
      return 0;
    }

    if (verify_cmd->parsed()) {
      Model model;
      load_model(verify_flags, model);
      vopts.threads = thread_cap();
      xlag_report* raw = nullptr;
      check(xlag_verify(model.ptr, suite.c_str(), &vopts, &raw));
      std::unique_ptr<xlag_report, decltype(&xlag_report_destroy)> report(raw, &xlag_report_destroy);
      OwnedString json, text;
      check(xlag_report_json(report.get(), &json.ptr));
      check(xlag_report_text(report.get(), &text.ptr));
      std::error_code ec;
      std::filesystem::create_directories(out_dir, ec);
      if (ec) throw UsageError("cannot create '" + out_dir + "': " + ec.message());
      write_file(std::filesystem::path(out_dir) / "report.json", json.str());
      write_file(std::filesystem::path(out_dir) / "report.txt", text.str());
      std::cout << text.str();
      return xlag_report_passed(report.get()) ? 0 : kExitVerification;
    }

    if (energy_cmd->parsed()) {
      Model model;
      load_model(energy_flags, model);
      if (!positions.empty()) {
        const auto x = parse_positions(positions);
        double e = 0.0;
        check(xlag_local_energy(model.ptr, x.data(), x.size(), 0.0, &e));
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.17g\n", e);
        emit(energy_out, buf);
        return 0;
      }
      OwnedString json;
      int passed = 0;
      check(xlag_constancy_scan(model.ptr, samples, seed, thread_cap(), &json.ptr, &passed));
      emit(energy_out, json.str());
      return passed ? 0 : kExitVerification;
    }
  } catch (const UsageError& e) {
    std::cerr << "xlag: " << e.what() << '\n';
    return kExitUsage;
  }
  return kExitUsage;
}

#include "gaussdyn/catalog.hpp"
#include "gaussdyn/scenario.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <atomic>
#include <cmath>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <optional>
#include <string>
#include <thread>
#include <vector>

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct RunOptions {
  std::vector<std::string> scenarios;
  std::string out;
  std::string format = "csv";
  bool oracle = false;
  int oracle_substeps = 100;
  double tol = -1.0;
  int jobs = 1;
};

ordered_json number(double x) { return std::isfinite(x) ? ordered_json(x) : ordered_json(nullptr); }

fs::path output_path(const RunOptions& opt, const std::string& scenario, const std::string& ext) {
  if (opt.scenarios.size() == 1 && !opt.out.empty() && !fs::is_directory(opt.out)) {
    return opt.out;
  }
  const fs::path dir = opt.out.empty() ? fs::path(".") : fs::path(opt.out);
  return dir / (fs::path(scenario).stem().string() + "." + ext);
}

int run_command(const RunOptions& opt) {
  const auto format = gaussdyn::table_format_from_string(opt.format);
  const std::string ext = format == gaussdyn::TableFormat::csv ? "csv" : "json";
  if (opt.scenarios.size() > 1 && !opt.out.empty()) fs::create_directories(opt.out);
  const bool to_stdout = opt.scenarios.size() == 1 && opt.out.empty();

  std::mutex log_mutex;
  std::atomic<std::size_t> next{0};
  std::atomic<int> failures{0};

  auto worker = [&] {
    for (std::size_t k = next++; k < opt.scenarios.size(); k = next++) {
      const std::string& path = opt.scenarios[k];
      try {
        const auto scenario = gaussdyn::load_scenario(path);
        const auto table = opt.oracle
                               ? gaussdyn::run_trajectory_oracle(scenario, opt.oracle_substeps, opt.tol)
                               : gaussdyn::run_trajectory(scenario, opt.tol);
        if (to_stdout) {
          std::lock_guard lock(log_mutex);
          if (format == gaussdyn::TableFormat::csv) {
            gaussdyn::write_csv(table, std::cout);
          } else {
            gaussdyn::write_json(table, std::cout);
          }
        } else {
          const fs::path out = output_path(opt, path, ext);
          gaussdyn::emit(table, format, out);
          std::lock_guard lock(log_mutex);
          std::cerr << path << " -> " << out.string() << " (" << table.rows.size() << " rows";
          if (!table.metadata.cp.passes) std::cerr << ", generator not CP";
          if (!table.metadata.all_rows_valid) std::cerr << ", invalid states";
          std::cerr << ")\n";
        }
      } catch (const std::exception& e) {
        ++failures;
        std::lock_guard lock(log_mutex);
        std::cerr << "error: " << e.what() << '\n';
      }
    }
  };

  const int n_threads =
      std::max(1, std::min<int>(opt.jobs, static_cast<int>(opt.scenarios.size())));
  std::vector<std::thread> pool;
  for (int i = 1; i < n_threads; ++i) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return failures == 0 ? 0 : 1;
}

int classify_command(const std::string& path) {
  const auto scenario = gaussdyn::load_scenario(path);
  const auto& g = scenario.generator;
  const auto rec = gaussdyn::classify(g);

  ordered_json rows = ordered_json::array();
  for (const auto& r : rec.rows) {
    rows.push_back({{"name", r.name},
                    {"single_mode", r.single_mode},
                    {"symplectic", r.symplectic},
                    {"passive", r.passive},
                    {"state_dependent", r.state_dependent},
                    {"possible", r.possible},
                    {"magnitude", number(r.magnitude)},
                    {"present", r.present}});
  }
  auto summary = [](const gaussdyn::DichotomySummary& s) {
    return ordered_json{{"first", number(s.first)}, {"second", number(s.second)}};
  };

  const auto cp = gaussdyn::check_cp_generator(g);
  const auto pur = gaussdyn::purification_report(g);
  const auto sym = gaussdyn::check_symplectic(g);

  ordered_json out;
  out["scenario"] = scenario.name;
  out["n_modes"] = scenario.n_modes;
  out["classification"] = {{"tol", rec.tol},
                           {"rows", rows},
                           {"symplectic_unsymplectic", summary(rec.symplectic_unsymplectic)},
                           {"passive_active", summary(rec.passive_active)},
                           {"single_multi", summary(rec.single_multi)},
                           {"dependent_independent", summary(rec.dependent_independent)}};
  out["cp"] = {{"test", "differential"},
               {"passes", cp.passes},
               {"min_eig", number(cp.min_eig)},
               {"tol", cp.tol}};
  out["symplectic"] = {{"is_symplectic", sym.is_symplectic}, {"defect", number(sym.defect)}};
  out["minimal_thermal_noise"] = gaussdyn::minimal_thermal_noise(g);
  out["purification"] = {{"trace_omega_a", number(pur.trace_omega_a)},
                         {"can_purify", pur.can_purify},
                         {"nu_bound", pur.nu_bound ? number(*pur.nu_bound) : ordered_json(nullptr)},
                         {"nu_thermal", pur.nu_thermal ? number(*pur.nu_thermal) : ordered_json(nullptr)}};
  std::cout << out.dump(2) << '\n';
  return 0;
}

int catalog_command() {
  for (const auto& e : gaussdyn::catalog()) {
    std::cout << e.id << "  param=" << e.parameter << "  modes=" << e.modes;
    if (!(e.variants.size() == 1 && e.variants[0].empty())) {
      std::cout << "  variants=";
      for (std::size_t k = 0; k < e.variants.size(); ++k) std::cout << (k ? "," : "") << e.variants[k];
    }
    std::cout << "  class=\"" << e.class_name << "\"\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Gaussian open-system dynamics: propagate, classify and certify generators"};
  app.require_subcommand(1);

  RunOptions run_opt;
  auto* run = app.add_subcommand("run", "Propagate scenarios and write trajectory tables");
  run->add_option("--scenario", run_opt.scenarios, "Scenario JSON file(s)")->required()->check(CLI::ExistingFile);
  run->add_option("--out", run_opt.out,
                  "Output file (single scenario) or directory; stdout when omitted with one scenario");
  run->add_option("--format", run_opt.format, "csv or json")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  run->add_flag("--oracle", run_opt.oracle, "Use the RK4 integrator instead of the exact solution");
  run->add_option("--oracle-substeps", run_opt.oracle_substeps, "RK4 steps per output interval")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  run->add_option("--tol", run_opt.tol, "Absolute tolerance for per-row validity checks");
  run->add_option("--jobs", run_opt.jobs, "Scenarios processed in parallel")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();

  std::string classify_path;
  auto* cls = app.add_subcommand("classify", "Print classification and certificates as JSON");
  cls->add_option("--scenario", classify_path, "Scenario JSON file")->required()->check(CLI::ExistingFile);

  auto* cat = app.add_subcommand("catalog", "List named generator kinds");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*run) return run_command(run_opt);
    if (*cls) return classify_command(classify_path);
    if (*cat) return catalog_command();
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}

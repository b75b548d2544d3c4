// Command-line front end for the prescribed-time adaptive control toolkit.
// Talks to the core exclusively through the C API in ptctl.h.

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <memory>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ptctl.h"

namespace {

namespace fs = std::filesystem;

struct ScenarioFree {
  void operator()(ptctl_scenario* p) const { ptctl_scenario_free(p); }
};
struct TrajectoryFree {
  void operator()(ptctl_trajectory* p) const { ptctl_trajectory_free(p); }
};
using ScenarioHandle = std::unique_ptr<ptctl_scenario, ScenarioFree>;
using TrajectoryHandle = std::unique_ptr<ptctl_trajectory, TrajectoryFree>;

[[noreturn]] void die(const std::string& context) {
  std::cerr << "error: " << context;
  const std::string detail = ptctl_last_error();
  if (!detail.empty()) std::cerr << ": " << detail;
  std::cerr << "\n";
  std::exit(1);
}

fs::path output_dir(const std::string& flag_value) {
  if (!flag_value.empty()) return flag_value;
  if (const char* env = std::getenv("PTCTL_OUT_DIR")) return env;
  return ".";
}

struct RunArtifacts {
  std::string name;
  std::string csv;
  TrajectoryHandle traj;
};

RunArtifacts run_one(ptctl_scenario* sc, const fs::path& out_dir, bool write_plot) {
  RunArtifacts art;
  art.name = ptctl_scenario_name(sc);
  ptctl_trajectory* raw = nullptr;
  if (ptctl_run(sc, &raw) != PTCTL_OK) die("running " + art.name);
  art.traj.reset(raw);

  fs::create_directories(out_dir);
  std::string csv = ptctl_scenario_csv_path(sc);
  if (csv.empty()) csv = art.name + ".csv";
  const fs::path csv_path = out_dir / csv;
  if (ptctl_trajectory_write_csv(art.traj.get(), csv_path.string().c_str()) != PTCTL_OK)
    die("writing " + csv_path.string());
  art.csv = csv_path.string();

  if (write_plot) {
    std::string plot = ptctl_scenario_plot_path(sc);
    if (plot.empty()) plot = art.name + ".gp";
    const fs::path plot_path = out_dir / plot;
    if (ptctl_trajectory_write_plot_script(art.traj.get(), art.csv.c_str(),
                                           plot_path.string().c_str()) != PTCTL_OK)
      die("writing " + plot_path.string());
  }
  return art;
}

void print_metrics(const RunArtifacts& art, double band) {
  const size_t n = ptctl_trajectory_state_count(art.traj.get());
  std::cout << art.name << ": " << ptctl_trajectory_rows(art.traj.get()) << " samples -> "
            << art.csv << "\n";
  for (size_t i = 0; i < n; ++i) {
    double settle = 0;
    if (ptctl_settling_time(art.traj.get(), band, i, &settle) != PTCTL_OK) die("metrics");
    std::cout << "  settling(|x" << i + 1 << "| <= " << band << "): ";
    if (std::isinf(settle))
      std::cout << "not settled";
    else
      std::cout << settle << " s";
    std::cout << "\n";
  }
  double peak = 0, norm = 0;
  ptctl_peak_input(art.traj.get(), &peak);
  ptctl_terminal_state_norm(art.traj.get(), &norm);
  std::cout << "  peak |u|: " << peak << "\n  terminal |x|: " << norm << "\n";
  const size_t rows = ptctl_trajectory_rows(art.traj.get());
  const size_t q = ptctl_trajectory_param_count(art.traj.get());
  std::cout << "  terminal estimates:";
  for (size_t c = 4 + n; c < 4 + n + q + 2; ++c) {
    double v = 0;
    ptctl_trajectory_cell(art.traj.get(), rows - 1, c, &v);
    std::cout << " " << ptctl_trajectory_column_name(art.traj.get(), c) << "=" << v;
  }
  std::cout << "\n";
}

int cmd_run(const std::string& file, const std::string& out_flag, double band) {
  ptctl_scenario* raw = nullptr;
  if (ptctl_scenario_load_file(file.c_str(), &raw) != PTCTL_OK) die("loading " + file);
  const ScenarioHandle sc(raw);
  const RunArtifacts art = run_one(sc.get(), output_dir(out_flag), true);
  print_metrics(art, band);
  return 0;
}

int cmd_compare(std::vector<std::string> files, const std::string& preset,
                const std::string& out_flag, double band) {
  std::vector<ScenarioHandle> scenarios;
  if (!preset.empty()) {
    if (preset != "table2") die("unknown preset \"" + preset + "\" (available: table2)");
    for (const char* name : {"table2_prescribed", "table2_super_exponential",
                             "table2_exponential", "table2_asymptotic"}) {
      ptctl_scenario* raw = nullptr;
      if (ptctl_scenario_preset(name, &raw) != PTCTL_OK) die(name);
      scenarios.emplace_back(raw);
    }
  }
  for (const std::string& f : files) {
    ptctl_scenario* raw = nullptr;
    if (ptctl_scenario_load_file(f.c_str(), &raw) != PTCTL_OK) die("loading " + f);
    scenarios.emplace_back(raw);
  }
  if (scenarios.size() < 2) die("compare needs at least two scenarios");
  const std::string model0 = ptctl_scenario_model_name(scenarios[0].get());
  for (const auto& h : scenarios) {
    if (model0 != ptctl_scenario_model_name(h.get()))
      die("compared scenarios must share the model (got " + model0 + " vs " +
          ptctl_scenario_model_name(h.get()) + ")");
  }

  const fs::path dir = output_dir(out_flag);
  std::vector<RunArtifacts> runs;
  for (auto& h : scenarios) runs.push_back(run_one(h.get(), dir, false));

  // combined long-format CSV
  fs::create_directories(dir);
  const fs::path combined = dir / "compare.csv";
  {
    std::ofstream out(combined);
    if (!out) die("writing " + combined.string());
    const size_t cols = ptctl_trajectory_cols(runs[0].traj.get());
    out << "scenario";
    for (size_t c = 0; c < cols; ++c)
      out << "," << ptctl_trajectory_column_name(runs[0].traj.get(), c);
    out << "\n";
    out.precision(17);
    for (const RunArtifacts& art : runs) {
      const size_t rows = ptctl_trajectory_rows(art.traj.get());
      for (size_t r = 0; r < rows; ++r) {
        out << art.name;
        for (size_t c = 0; c < cols; ++c) {
          double v = 0;
          ptctl_trajectory_cell(art.traj.get(), r, c, &v);
          out << "," << v;
        }
        out << "\n";
      }
    }
  }

  // overlay plot script for x1
  const fs::path overlay = dir / "compare.gp";
  {
    std::ofstream out(overlay);
    out << "# gnuplot script; run: gnuplot " << overlay.string() << "\n";
    out << "set datafile separator ','\nset grid\nset xlabel 't'\nset ylabel 'x1'\n";
    out << "plot";
    for (size_t i = 0; i < runs.size(); ++i)
      out << (i ? "," : "") << " '" << runs[i].csv << "' using 1:3 with lines title '"
          << runs[i].name << "'";
    out << "\npause -1\n";
  }

  std::cout << "combined CSV: " << combined.string() << "\noverlay plot: " << overlay.string()
            << "\n\nsettling times, band " << band << " on x1:\n";
  for (const RunArtifacts& art : runs) {
    double settle = 0, peak = 0;
    ptctl_settling_time(art.traj.get(), band, 0, &settle);
    ptctl_peak_input(art.traj.get(), &peak);
    std::cout << "  " << art.name << ": ";
    if (std::isinf(settle))
      std::cout << "not settled";
    else
      std::cout << settle << " s";
    std::cout << " (peak |u| " << peak << ")\n";
  }
  return 0;
}

int cmd_verify(const std::string& only, unsigned long long seed) {
  std::vector<ptctl_check_result> results(64);
  size_t count = 0;
  if (ptctl_verify(only.empty() ? nullptr : only.c_str(), seed, results.data(),
                   results.size(), &count) != PTCTL_OK)
    die("verify");
  if (count == 0) die("no check matches \"" + only + "\"");
  bool all_ok = true;
  for (size_t i = 0; i < count && i < results.size(); ++i) {
    const auto& r = results[i];
    std::cout << r.name << ": " << (r.passed ? "PASS" : "FAIL") << " (worst margin "
              << r.worst_margin << "; " << r.detail << ")\n";
    all_ok = all_ok && r.passed;
  }
  return all_ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prescribed-time adaptive control toolkit"};
  app.require_subcommand(1);

  std::string run_file, out_dir;
  double band = 0.01;
  CLI::App* run = app.add_subcommand("run", "simulate one scenario file");
  run->add_option("file", run_file, "scenario file")->required();
  run->add_option("--out", out_dir, "output directory (default $PTCTL_OUT_DIR or .)");
  run->add_option("--band", band, "settling band for the metrics summary");

  std::vector<std::string> cmp_files;
  std::string preset;
  CLI::App* cmp = app.add_subcommand("compare", "run several scenarios side by side");
  cmp->add_option("files", cmp_files, "scenario files (same model)");
  cmp->add_option("--preset", preset, "built-in set: table2");
  cmp->add_option("--out", out_dir, "output directory (default $PTCTL_OUT_DIR or .)");
  cmp->add_option("--band", band, "settling band");

  std::string only;
  unsigned long long seed = 20240001ULL;
  CLI::App* ver = app.add_subcommand("verify", "run the numeric check suite");
  ver->add_option("--only", only, "run a single named check");
  ver->add_option("--seed", seed, "sampling seed");

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) return cmd_run(run_file, out_dir, band);
  if (cmp->parsed()) return cmd_compare(cmp_files, preset, out_dir, band);
  if (ver->parsed()) return cmd_verify(only, seed);
  return 1;
}

#include "ptctl.h"

#include <cmath>
#include <cstdio>
#include <cstring>
#include <string>

#include "ptctl/scenario.hpp"
#include "ptctl/sim.hpp"
#include "ptctl/trajectory_io.hpp"
#include "ptctl/verify.hpp"

struct ptctl_scenario {
  ptctl::Scenario impl;
};

struct ptctl_trajectory {
  ptctl::Trajectory impl;
  std::vector<std::string> columns;
};

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }

template <typename Fn>
ptctl_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ptctl::ScenarioError& e) {
    set_error(e.what());
    return PTCTL_ERROR_PARSE;
  } catch (const ptctl::SimulationError& e) {
    set_error(e.what());
    return PTCTL_ERROR_RUNTIME;
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return PTCTL_ERROR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return PTCTL_ERROR_VALIDATION;
  } catch (const std::exception& e) {
    set_error(e.what());
    return PTCTL_ERROR_RUNTIME;
  }
}

ptctl_status require(bool ok, const char* msg) {
  if (!ok) {
    set_error(msg);
    return PTCTL_ERROR_INVALID_ARGUMENT;
  }
  return PTCTL_OK;
}

void copy_string(char* dst, size_t cap, const std::string& src) {
  std::snprintf(dst, cap, "%s", src.c_str());
}

}  // namespace

extern "C" {

const char* ptctl_status_name(ptctl_status status) {
  switch (status) {
    case PTCTL_OK: return "ok";
    case PTCTL_ERROR_INVALID_ARGUMENT: return "invalid_argument";
    case PTCTL_ERROR_PARSE: return "parse_error";
    case PTCTL_ERROR_VALIDATION: return "validation_error";
    case PTCTL_ERROR_DOMAIN: return "domain_error";
    case PTCTL_ERROR_RUNTIME: return "runtime_error";
    case PTCTL_ERROR_IO: return "io_error";
  }
  return "unknown";
}

const char* ptctl_last_error(void) { return g_last_error.c_str(); }

ptctl_status ptctl_scenario_load_file(const char* path, ptctl_scenario** out) {
  if (ptctl_status s = require(path && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = new ptctl_scenario{ptctl::load_scenario_file(path)};
    return PTCTL_OK;
  });
}

ptctl_status ptctl_scenario_load_string(const char* text, ptctl_scenario** out) {
  if (ptctl_status s = require(text && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = new ptctl_scenario{ptctl::parse_scenario_json(text)};
    return PTCTL_OK;
  });
}

ptctl_status ptctl_scenario_preset(const char* name, ptctl_scenario** out) {
  if (ptctl_status s = require(name && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = new ptctl_scenario{ptctl::scenario_preset(name)};
    return PTCTL_OK;
  });
}

void ptctl_scenario_free(ptctl_scenario* scenario) { delete scenario; }

const char* ptctl_scenario_name(const ptctl_scenario* sc) {
  return sc ? sc->impl.name.c_str() : "";
}
const char* ptctl_scenario_model_name(const ptctl_scenario* sc) {
  return sc ? sc->impl.model.name.c_str() : "";
}
const char* ptctl_scenario_csv_path(const ptctl_scenario* sc) {
  return sc ? sc->impl.csv_path.c_str() : "";
}
const char* ptctl_scenario_plot_path(const ptctl_scenario* sc) {
  return sc ? sc->impl.plot_path.c_str() : "";
}

ptctl_status ptctl_run(const ptctl_scenario* scenario, ptctl_trajectory** out) {
  if (ptctl_status s = require(scenario && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    auto* traj = new ptctl_trajectory{ptctl::integrate(scenario->impl), {}};
    traj->columns = ptctl::trajectory_columns(traj->impl);
    *out = traj;
    return PTCTL_OK;
  });
}

void ptctl_trajectory_free(ptctl_trajectory* trajectory) { delete trajectory; }

size_t ptctl_trajectory_rows(const ptctl_trajectory* traj) { return traj ? traj->impl.rows() : 0; }
size_t ptctl_trajectory_cols(const ptctl_trajectory* traj) {
  return traj ? traj->columns.size() : 0;
}
size_t ptctl_trajectory_state_count(const ptctl_trajectory* traj) {
  return traj ? static_cast<size_t>(traj->impl.n) : 0;
}
size_t ptctl_trajectory_param_count(const ptctl_trajectory* traj) {
  return traj ? static_cast<size_t>(traj->impl.q) : 0;
}

const char* ptctl_trajectory_column_name(const ptctl_trajectory* traj, size_t col) {
  if (!traj || col >= traj->columns.size()) return "";
  return traj->columns[col].c_str();
}

ptctl_status ptctl_trajectory_cell(const ptctl_trajectory* traj, size_t row, size_t col,
                                   double* out) {
  if (ptctl_status s = require(traj && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = ptctl::trajectory_cell(traj->impl, row, col);
    return PTCTL_OK;
  });
}

ptctl_status ptctl_trajectory_write_csv(const ptctl_trajectory* traj, const char* path) {
  if (ptctl_status s = require(traj && path, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    ptctl::write_trajectory_csv(traj->impl, path);
    return PTCTL_OK;
  });
}

ptctl_status ptctl_trajectory_write_plot_script(const ptctl_trajectory* traj,
                                                const char* csv_path, const char* path) {
  if (ptctl_status s = require(traj && csv_path && path, "null argument"); s != PTCTL_OK)
    return s;
  return guarded([&] {
    ptctl::write_plot_script(traj->impl, csv_path, path);
    return PTCTL_OK;
  });
}

ptctl_status ptctl_settling_time(const ptctl_trajectory* traj, double band, size_t state_index,
                                 double* out) {
  if (ptctl_status s = require(traj && out, "null argument"); s != PTCTL_OK) return s;
  if (ptctl_status s = require(state_index < static_cast<size_t>(traj->impl.n),
                               "state index out of range");
      s != PTCTL_OK)
    return s;
  return guarded([&] {
    const ptctl::Metrics m = ptctl::compute_metrics(traj->impl, band);
    *out = m.band_entry_time[state_index];
    return PTCTL_OK;
  });
}

ptctl_status ptctl_peak_input(const ptctl_trajectory* traj, double* out) {
  if (ptctl_status s = require(traj && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = ptctl::compute_metrics(traj->impl, 1.0).peak_u;
    return PTCTL_OK;
  });
}

ptctl_status ptctl_terminal_state_norm(const ptctl_trajectory* traj, double* out) {
  if (ptctl_status s = require(traj && out, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    *out = ptctl::compute_metrics(traj->impl, 1.0).terminal_state_norm;
    return PTCTL_OK;
  });
}

ptctl_status ptctl_verify(const char* only, unsigned long long seed,
                          ptctl_check_result* results, size_t capacity, size_t* count) {
  if (ptctl_status s = require(count != nullptr, "null argument"); s != PTCTL_OK) return s;
  return guarded([&] {
    const std::vector<ptctl::CheckResult> all =
        ptctl::run_check_suite(only ? only : "", seed);
    *count = all.size();
    if (results) {
      for (size_t i = 0; i < all.size() && i < capacity; ++i) {
        copy_string(results[i].name, sizeof results[i].name, all[i].name);
        results[i].passed = all[i].passed ? 1 : 0;
        results[i].worst_margin = all[i].worst_margin;
        copy_string(results[i].detail, sizeof results[i].detail, all[i].detail);
      }
    }
    return PTCTL_OK;
  });
}

}  // extern "C"

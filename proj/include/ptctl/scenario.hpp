#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ptctl/sim.hpp"

namespace ptctl {

/// Parse failure with position diagnostics (1-based; 0 when unknown).
class ScenarioError : public std::runtime_error {
 public:
  ScenarioError(const std::string& msg, int line = 0, int column = 0)
      : std::runtime_error(msg), line_(line), column_(column) {}
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

/// Declarative scenario document (JSON object). Unknown keys are rejected;
/// times are seconds, gains dimensionless. See the repository README for the
/// full grammar.
Scenario parse_scenario_json(const std::string& text);
Scenario load_scenario_file(const std::string& path);

/// Built-in setups:
///   benchmark_t1             benchmark plant, recursive prescribed-time law
///   benchmark_asymptotic     benchmark plant, recursive law, constant gain
///   table2_prescribed        wing-rock, filter law, T = 0.5 s
///   table2_super_exponential wing-rock, filter law, gain exp(exp(0.1 t))
///   table2_exponential       wing-rock, filter law, gain exp(t)
///   table2_asymptotic        wing-rock, filter law, gain 1
///   wingrock_nonstop         table2_prescribed continued open loop to 2T
Scenario scenario_preset(const std::string& name);
std::vector<std::string> scenario_preset_names();

}  // namespace ptctl

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ptctl/sim.hpp"

namespace ptctl {

/// Column order: t,tau,x1..xn,u,u_bar,theta_hat_1..q,delta_hat,rho_hat,K,s_or_zn.
std::vector<std::string> trajectory_columns(const Trajectory& traj);
double trajectory_cell(const Trajectory& traj, std::size_t row, std::size_t col);

/// Full double precision (17 significant digits); bit-stable across runs.
void write_trajectory_csv(const Trajectory& traj, const std::string& path);

/// Standalone gnuplot script with state / input / estimate panels reading the
/// given CSV.
void write_plot_script(const Trajectory& traj, const std::string& csv_path,
                       const std::string& path);

/// Long-format CSV for several runs: a leading scenario column, then the
/// per-run schema above (runs must share the model).
void write_combined_csv(const std::vector<std::pair<std::string, const Trajectory*>>& runs,
                        const std::string& path);

/// Overlay script plotting x1 of each run's CSV on one panel.
void write_overlay_plot_script(const std::vector<std::pair<std::string, std::string>>& name_csv,
                               const std::string& path);

}  // namespace ptctl

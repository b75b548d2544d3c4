#include "ptctl/trajectory_io.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace ptctl {
namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::ofstream open_or_throw(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  return out;
}

}  // namespace

std::vector<std::string> trajectory_columns(const Trajectory& traj) {
  std::vector<std::string> cols = {"t", "tau"};
  for (int i = 1; i <= traj.n; ++i) cols.push_back("x" + std::to_string(i));
  cols.push_back("u");
  cols.push_back("u_bar");
  for (int r = 1; r <= traj.q; ++r) cols.push_back("theta_hat_" + std::to_string(r));
  cols.push_back("delta_hat");
  cols.push_back("rho_hat");
  cols.push_back("K");
  cols.push_back("s_or_zn");
  return cols;
}

double trajectory_cell(const Trajectory& traj, std::size_t row, std::size_t col) {
  if (row >= traj.rows()) throw std::out_of_range("row out of range");
  std::size_t c = col;
  if (c == 0) return traj.t[row];
  if (c == 1) return traj.tau[row];
  c -= 2;
  if (c < static_cast<std::size_t>(traj.n)) return traj.x(row, c);
  c -= traj.n;
  if (c == 0) return traj.u[row];
  if (c == 1) return traj.u_bar[row];
  c -= 2;
  if (c < static_cast<std::size_t>(traj.q)) return traj.theta_hat(row, c);
  c -= traj.q;
  if (c == 0) return traj.delta_hat[row];
  if (c == 1) return traj.rho_hat[row];
  if (c == 2) return traj.K[row];
  if (c == 3) return traj.s_or_zn[row];
  throw std::out_of_range("column out of range");
}

void write_trajectory_csv(const Trajectory& traj, const std::string& path) {
  std::ofstream out = open_or_throw(path);
  const std::vector<std::string> cols = trajectory_columns(traj);
  for (std::size_t c = 0; c < cols.size(); ++c) out << (c ? "," : "") << cols[c];
  out << "\n";
  for (std::size_t r = 0; r < traj.rows(); ++r) {
    for (std::size_t c = 0; c < cols.size(); ++c)
      out << (c ? "," : "") << fmt(trajectory_cell(traj, r, c));
    out << "\n";
  }
}

void write_plot_script(const Trajectory& traj, const std::string& csv_path,
                       const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "# gnuplot script; run: gnuplot " << path << "\n";
  out << "set datafile separator ','\n";
  out << "set key autotitle columnhead\n";
  out << "set grid\n";
  out << "set multiplot layout 3,1\n";
  out << "set ylabel 'states'\n";
  out << "plot";
  for (int i = 0; i < traj.n; ++i)
    out << (i ? "," : "") << " '" << csv_path << "' using 1:" << 3 + i << " with lines";
  out << "\n";
  out << "set ylabel 'input'\n";
  out << "plot '" << csv_path << "' using 1:" << 3 + traj.n << " with lines\n";
  out << "set ylabel 'estimates'\n";
  out << "plot";
  const int est_first = 5 + traj.n;  // first theta_hat column (1-based)
  for (int r = 0; r < traj.q + 2; ++r)
    out << (r ? "," : "") << " '" << csv_path << "' using 1:" << est_first + r << " with lines";
  out << "\n";
  out << "unset multiplot\n";
  out << "pause -1\n";
}

void write_combined_csv(const std::vector<std::pair<std::string, const Trajectory*>>& runs,
                        const std::string& path) {
  if (runs.empty()) throw std::invalid_argument("no runs to combine");
  std::ofstream out = open_or_throw(path);
  const std::vector<std::string> cols = trajectory_columns(*runs.front().second);
  out << "scenario";
  for (const std::string& c : cols) out << "," << c;
  out << "\n";
  for (const auto& [name, traj] : runs) {
    for (std::size_t r = 0; r < traj->rows(); ++r) {
      out << name;
      for (std::size_t c = 0; c < cols.size(); ++c)
        out << "," << fmt(trajectory_cell(*traj, r, c));
      out << "\n";
    }
  }
}

void write_overlay_plot_script(const std::vector<std::pair<std::string, std::string>>& name_csv,
                               const std::string& path) {
  std::ofstream out = open_or_throw(path);
  out << "# gnuplot script; run: gnuplot " << path << "\n";
  out << "set datafile separator ','\n";
  out << "set grid\n";
  out << "set xlabel 't'\n";
  out << "set ylabel 'x1'\n";
  out << "plot";
  bool first = true;
  for (const auto& [name, csv] : name_csv) {
    out << (first ? "" : ",") << " '" << csv << "' using 1:3 with lines title '" << name << "'";
    first = false;
  }
  out << "\n";
  out << "pause -1\n";
}

}  // namespace ptctl

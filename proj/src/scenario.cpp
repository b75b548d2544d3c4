#include "ptctl/scenario.hpp"

#include <fstream>
#include <set>
#include <sstream>

#include "json.hpp"

namespace ptctl {
namespace {

using nlohmann::json;

[[noreturn]] void fail_at_offset(const std::string& text, std::size_t byte, const std::string& msg) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  std::ostringstream os;
  os << "line " << line << ", column " << col << ": " << msg;
  throw ScenarioError(os.str(), line, col);
}

void require_keys(const json& obj, const std::string& where,
                  const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key()))
      throw ScenarioError("unknown key \"" + item.key() + "\" in " + where);
  }
}

const json& need(const json& obj, const std::string& where, const std::string& key) {
  auto it = obj.find(key);
  if (it == obj.end()) throw ScenarioError("missing key \"" + key + "\" in " + where);
  return *it;
}

double need_number(const json& obj, const std::string& where, const std::string& key) {
  const json& v = need(obj, where, key);
  if (!v.is_number()) throw ScenarioError("\"" + key + "\" in " + where + " must be a number");
  return v.get<double>();
}

Eigen::VectorXd as_vector(const json& v, const std::string& what) {
  if (v.is_number()) {
    Eigen::VectorXd out(1);
    out[0] = v.get<double>();
    return out;
  }
  if (!v.is_array()) throw ScenarioError(what + " must be a number or an array of numbers");
  Eigen::VectorXd out(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (!v[i].is_number()) throw ScenarioError(what + " must contain only numbers");
    out[i] = v[i].get<double>();
  }
  return out;
}

ControllerKind controller_from_string(const std::string& s) {
  if (s == "recursive") return ControllerKind::Recursive;
  if (s == "filter_prescribed_time") return ControllerKind::FilterPrescribedTime;
  if (s == "filter_exponential") return ControllerKind::FilterExponential;
  if (s == "filter_super_exponential") return ControllerKind::FilterSuperExponential;
  if (s == "filter_asymptotic") return ControllerKind::FilterAsymptotic;
  throw ScenarioError("unknown controller kind \"" + s + "\"");
}

TimeScale timescale_from_json(const json& v) {
  if (!v.is_object()) throw ScenarioError("\"timescale\" must be an object");
  const std::string kind = need(v, "timescale", "kind").get<std::string>();
  if (kind == "asymptotic") {
    require_keys(v, "timescale", {"kind"});
    return TimeScale::asymptotic();
  }
  if (kind == "prescribed_time") {
    require_keys(v, "timescale", {"kind", "T"});
    return TimeScale::prescribed_time(need_number(v, "timescale", "T"));
  }
  if (kind == "exponential") {
    require_keys(v, "timescale", {"kind", "lambda1"});
    return TimeScale::exponential(need_number(v, "timescale", "lambda1"));
  }
  if (kind == "super_exponential") {
    require_keys(v, "timescale", {"kind", "lambda1", "lambda2"});
    return TimeScale::super_exponential(need_number(v, "timescale", "lambda1"),
                                        need_number(v, "timescale", "lambda2"));
  }
  throw ScenarioError("unknown timescale kind \"" + kind + "\"");
}

EpsilonSchedule epsilon_from_json(const json& v) {
  if (v.is_number()) return EpsilonSchedule::constant(v.get<double>());
  if (!v.is_object()) throw ScenarioError("\"epsilon\" must be a number or an object");
  require_keys(v, "epsilon", {"kind", "scale", "rate"});
  const std::string kind = need(v, "epsilon", "kind").get<std::string>();
  if (kind == "constant") return EpsilonSchedule::constant(need_number(v, "epsilon", "scale"));
  if (kind == "exponential")
    return EpsilonSchedule::exponential(need_number(v, "epsilon", "scale"),
                                        need_number(v, "epsilon", "rate"));
  throw ScenarioError("unknown epsilon kind \"" + kind + "\"");
}

}  // namespace

Scenario parse_scenario_json(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail_at_offset(text, e.byte > 0 ? e.byte - 1 : 0, e.what());
  }
  if (!doc.is_object()) throw ScenarioError("scenario document must be a JSON object");
  require_keys(doc, "scenario",
               {"name", "model", "controller", "timescale", "gains", "initial", "integration",
                "t_end", "non_stop", "output"});

  Scenario sc;
  sc.name = need(doc, "scenario", "name").get<std::string>();

  {
    const json& m = need(doc, "scenario", "model");
    if (!m.is_object()) throw ScenarioError("\"model\" must be an object");
    require_keys(m, "model", {"name", "b_lower"});
    sc.model = model_by_name(need(m, "model", "name").get<std::string>());
    if (m.contains("b_lower")) sc.model.b_lower = need_number(m, "model", "b_lower");
  }

  sc.controller = controller_from_string(need(doc, "scenario", "controller").get<std::string>());
  sc.timescale = timescale_from_json(need(doc, "scenario", "timescale"));

  {
    const json& g = need(doc, "scenario", "gains");
    if (!g.is_object()) throw ScenarioError("\"gains\" must be an object");
    require_keys(g, "gains", {"k", "Gamma", "gamma_delta", "gamma_rho", "epsilon"});
    sc.gains.k = as_vector(need(g, "gains", "k"), "\"k\"");
    const json& gamma = need(g, "gains", "Gamma");
    if (gamma.is_number()) {
      sc.gains.Gamma = gamma.get<double>() * Eigen::MatrixXd::Identity(sc.model.q, sc.model.q);
    } else if (gamma.is_array()) {
      sc.gains.Gamma.resize(sc.model.q, sc.model.q);
      if (static_cast<int>(gamma.size()) != sc.model.q)
        throw ScenarioError("\"Gamma\" must be scalar or a q x q array of rows");
      for (int r = 0; r < sc.model.q; ++r) {
        const Eigen::VectorXd row = as_vector(gamma[r], "\"Gamma\" row");
        if (row.size() != sc.model.q) throw ScenarioError("\"Gamma\" rows must have q entries");
        sc.gains.Gamma.row(r) = row.transpose();
      }
    } else {
      throw ScenarioError("\"Gamma\" must be a number or an array of rows");
    }
    sc.gains.gamma_delta = need_number(g, "gains", "gamma_delta");
    sc.gains.gamma_rho = need_number(g, "gains", "gamma_rho");
    sc.gains.epsilon = epsilon_from_json(need(g, "gains", "epsilon"));
    if (sc.timescale.finite_horizon()) sc.gains.T = sc.timescale.horizon();
  }

  {
    const json& init = need(doc, "scenario", "initial");
    if (!init.is_object()) throw ScenarioError("\"initial\" must be an object");
    require_keys(init, "initial", {"x", "theta_hat", "delta_hat", "rho_hat"});
    sc.x0 = as_vector(need(init, "initial", "x"), "\"x\"");
    sc.a0.theta_hat = as_vector(need(init, "initial", "theta_hat"), "\"theta_hat\"");
    sc.a0.delta_hat = need_number(init, "initial", "delta_hat");
    sc.a0.rho_hat = need_number(init, "initial", "rho_hat");
  }

  if (doc.contains("integration")) {
    const json& integ = doc["integration"];
    if (!integ.is_object()) throw ScenarioError("\"integration\" must be an object");
    require_keys(integ, "integration", {"domain", "h", "singular_step_factor", "stop_margin"});
    if (integ.contains("domain")) {
      const std::string d = integ["domain"].get<std::string>();
      if (d == "t")
        sc.integration.domain = IntegrationOptions::Domain::T;
      else if (d == "tau")
        sc.integration.domain = IntegrationOptions::Domain::Tau;
      else
        throw ScenarioError("\"domain\" must be \"t\" or \"tau\"");
    }
    if (integ.contains("h")) sc.integration.h = need_number(integ, "integration", "h");
    if (integ.contains("singular_step_factor"))
      sc.integration.singular_step_factor =
          need_number(integ, "integration", "singular_step_factor");
    if (integ.contains("stop_margin"))
      sc.integration.stop_margin = need_number(integ, "integration", "stop_margin");
  }

  if (doc.contains("non_stop")) {
    if (!doc["non_stop"].is_boolean()) throw ScenarioError("\"non_stop\" must be a boolean");
    sc.non_stop = doc["non_stop"].get<bool>();
  }

  if (doc.contains("t_end")) {
    sc.t_end = need_number(doc, "scenario", "t_end");
  } else if (sc.timescale.finite_horizon() && !sc.non_stop) {
    sc.t_end = sc.switch_time();
  } else {
    throw ScenarioError("missing key \"t_end\" in scenario");
  }

  if (doc.contains("output")) {
    const json& out = doc["output"];
    if (!out.is_object()) throw ScenarioError("\"output\" must be an object");
    require_keys(out, "output", {"csv", "plot"});
    if (out.contains("csv")) sc.csv_path = out["csv"].get<std::string>();
    if (out.contains("plot")) sc.plot_path = out["plot"].get<std::string>();
  }
  return sc;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ScenarioError("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_json(buf.str());
}

namespace {

Scenario benchmark_t1_base() {
  Scenario sc;
  sc.name = "benchmark_t1";
  sc.model = builtin_benchmark();
  sc.controller = ControllerKind::Recursive;
  sc.timescale = TimeScale::prescribed_time(2.0);
  sc.gains.k = Eigen::Vector3d(6.0, 6.0, 6.0);
  sc.gains.Gamma = 0.01 * Eigen::MatrixXd::Identity(1, 1);
  sc.gains.gamma_delta = 0.01;
  sc.gains.gamma_rho = 0.01;
  sc.gains.epsilon = EpsilonSchedule::constant(0.1);
  sc.gains.T = 2.0;
  sc.x0 = Eigen::Vector3d(0.2, 0.0, -0.2);
  sc.a0.theta_hat = Eigen::VectorXd::Zero(1);
  sc.a0.delta_hat = 0.0;
  sc.a0.rho_hat = 1.0;
  sc.integration.h = 1e-4;
  sc.t_end = sc.switch_time();
  return sc;
}

Scenario wing_rock_base(const std::string& name) {
  Scenario sc;
  sc.name = name;
  sc.model = builtin_wing_rock();
  sc.gains.k = Eigen::Vector2d(3.0, 3.0);
  sc.gains.Gamma = Eigen::MatrixXd::Identity(2, 2);
  sc.gains.gamma_delta = 0.01;
  sc.gains.gamma_rho = 0.01;
  sc.x0 = Eigen::Vector2d(0.2, 0.0);
  sc.a0.theta_hat = Eigen::VectorXd::Zero(2);
  sc.a0.delta_hat = 0.0;
  sc.a0.rho_hat = 1.0;
  sc.integration.h = 1e-4;
  return sc;
}

}  // namespace

Scenario scenario_preset(const std::string& name) {
  if (name == "benchmark_t1") return benchmark_t1_base();
  if (name == "benchmark_asymptotic") {
    Scenario sc = benchmark_t1_base();
    sc.name = "benchmark_asymptotic";
    sc.timescale = TimeScale::asymptotic();
    sc.gains.T = 0.0;
    sc.integration.h = 2e-4;
    sc.t_end = 12.0;
    return sc;
  }
  if (name == "table2_prescribed") {
    Scenario sc = wing_rock_base("wingrock_pt");
    sc.controller = ControllerKind::FilterPrescribedTime;
    sc.timescale = TimeScale::prescribed_time(0.5);
    sc.gains.T = 0.5;
    sc.gains.epsilon = EpsilonSchedule::constant(0.1);
    sc.t_end = sc.switch_time();
    return sc;
  }
  if (name == "table2_super_exponential") {
    Scenario sc = wing_rock_base("wingrock_superexponential");
    sc.controller = ControllerKind::FilterSuperExponential;
    sc.timescale = TimeScale::super_exponential(0.1, 1.0);
    sc.gains.epsilon = EpsilonSchedule::exponential(1.0, -0.1);
    sc.t_end = 4.0;
    return sc;
  }
  if (name == "table2_exponential") {
    Scenario sc = wing_rock_base("wingrock_exponential");
    sc.controller = ControllerKind::FilterExponential;
    sc.timescale = TimeScale::exponential(1.0);
    sc.gains.epsilon = EpsilonSchedule::exponential(1.0, -0.1);
    sc.t_end = 6.0;
    return sc;
  }
  if (name == "table2_asymptotic") {
    Scenario sc = wing_rock_base("wingrock_asymptotic");
    sc.controller = ControllerKind::FilterAsymptotic;
    sc.timescale = TimeScale::asymptotic();
    sc.gains.epsilon = EpsilonSchedule::exponential(1.0, -0.1);
    sc.t_end = 10.0;
    return sc;
  }
  if (name == "wingrock_nonstop") {
    Scenario sc = scenario_preset("table2_prescribed");
    sc.name = "wingrock_nonstop";
    sc.non_stop = true;
    sc.t_end = 1.0;
    return sc;
  }
  throw ScenarioError("unknown preset \"" + name + "\"");
}

std::vector<std::string> scenario_preset_names() {
  return {"benchmark_t1",          "benchmark_asymptotic",      "table2_prescribed",
          "table2_super_exponential", "table2_exponential", "table2_asymptotic",
          "wingrock_nonstop"};
}

}  // namespace ptctl

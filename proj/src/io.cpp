#include "priorcheck/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace priorcheck {

std::string check_result_json(const CheckResult& r) {
  nlohmann::ordered_json j;
  j["statistic_obs"] = r.statistic_obs;
  j["p_value"] = r.p_value;
  j["p_upper"] = r.p_upper;
  j["p_lower"] = r.p_lower;
  j["n_draws"] = r.n_draws;
  j["tail"] = to_string(r.tail);
  j["base_seed"] = r.base_seed;
  j["draws_summary"] = {{"mean", r.draws_summary.mean},
                        {"sd", r.draws_summary.sd},
                        {"min", r.draws_summary.min},
                        {"max", r.draws_summary.max}};
  return j.dump(2);
}

namespace {
void put_num(std::ostream& os, double v) {
  std::ostringstream ss;
  ss.precision(12);
  ss << v;
  os << ss.str();
}
}  // namespace

void write_power_curve_csv(std::ostream& os, const PowerCurve& pc) {
  os << "gamma,power,n_reps,alpha,seed\n";
  for (std::size_t i = 0; i < pc.gamma_grid.size(); ++i) {
    put_num(os, pc.gamma_grid[i]);
    os << ',';
    put_num(os, pc.power[i]);
    os << ',' << pc.n_reps << ',';
    put_num(os, pc.alpha);
    os << ',' << pc.base_seed << '\n';
  }
}

void write_lasso_power_csv(std::ostream& os, const lasso::PowerPair& pp, long n, long p,
                           long m, double tau) {
  os << "q,power_kurtosis,power_score,n,p,m,tau,n_reps,seed\n";
  for (std::size_t i = 0; i < pp.q_grid.size(); ++i) {
    put_num(os, pp.q_grid[i]);
    os << ',';
    put_num(os, pp.power_kurtosis[i]);
    os << ',';
    put_num(os, pp.power_score[i]);
    os << ',' << n << ',' << p << ',' << m << ',';
    put_num(os, tau);
    os << ',' << pp.n_reps << ',' << pp.base_seed << '\n';
  }
}

ConfigMap parse_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file: " + path);
  ConfigMap cfg;
  std::string section;
  std::string line;
  auto trim = [](std::string s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return std::string();
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
  };
  long lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    if (t.front() == '[' && t.back() == ']') {
      section = trim(t.substr(1, t.size() - 2));
      continue;
    }
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(lineno) +
                               ": expected key = value");
    const std::string key = trim(t.substr(0, eq));
    const std::string value = trim(t.substr(eq + 1));
    if (key.empty())
      throw std::runtime_error(path + ":" + std::to_string(lineno) + ": empty key");
    cfg[section][key] = value;
  }
  return cfg;
}

}  // namespace priorcheck

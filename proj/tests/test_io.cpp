#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "priorcheck/io.hpp"

using namespace priorcheck;

TEST_CASE("check result JSON carries every field") {
  CheckResult r;
  r.statistic_obs = 1.5;
  r.p_value = 0.031;
  r.p_upper = 0.031;
  r.p_lower = 0.97;
  r.n_draws = 1000;
  r.tail = Tail::two_sided;
  r.base_seed = 42;
  r.draws_summary = {0.1, 1.2, -3.0, 4.0};
  const auto j = nlohmann::json::parse(check_result_json(r));
  CHECK(j["statistic_obs"].get<double>() == 1.5);
  CHECK(j["p_value"].get<double>() == 0.031);
  CHECK(j["p_upper"].get<double>() == 0.031);
  CHECK(j["p_lower"].get<double>() == 0.97);
  CHECK(j["n_draws"].get<long>() == 1000);
  CHECK(j["tail"].get<std::string>() == "two_sided");
  CHECK(j["base_seed"].get<std::uint64_t>() == 42);
  CHECK(j["draws_summary"]["sd"].get<double>() == 1.2);
}

TEST_CASE("power curve CSV schema") {
  PowerCurve pc;
  pc.gamma_grid = {0.0, 0.5};
  pc.power = {0.05, 0.4};
  pc.n_reps = 100;
  pc.alpha = 0.05;
  pc.base_seed = 7;
  std::ostringstream os;
  write_power_curve_csv(os, pc);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "gamma,power,n_reps,alpha,seed");
  std::getline(is, line);
  CHECK(line == "0,0.05,100,0.05,7");
}

TEST_CASE("lasso power CSV schema") {
  lasso::PowerPair pp;
  pp.q_grid = {0.2};
  pp.power_kurtosis = {0.8};
  pp.power_score = {0.9};
  pp.n_reps = 500;
  pp.base_seed = 3;
  std::ostringstream os;
  write_lasso_power_csv(os, pp, 10, 0, 20, 1.0);
  std::istringstream is(os.str());
  std::string line;
  std::getline(is, line);
  CHECK(line == "q,power_kurtosis,power_score,n,p,m,tau,n_reps,seed");
  std::getline(is, line);
  CHECK(line == "0.2,0.8,0.9,10,0,20,1,500,3");
}

TEST_CASE("config file parsing") {
  const char* path = "pc_test_config.tmp";
  {
    std::ofstream f(path);
    f << "# comment\n"
      << "seed = 99\n\n"
      << "[check.normal]\n"
      << "mu0 = 0.5\n"
      << "tau0sq=2.0\n";
  }
  const ConfigMap cfg = parse_config_file(path);
  CHECK(cfg.at("").at("seed") == "99");
  CHECK(cfg.at("check.normal").at("mu0") == "0.5");
  CHECK(cfg.at("check.normal").at("tau0sq") == "2.0");
  std::remove(path);
}

TEST_CASE("config file errors") {
  CHECK_THROWS_AS(parse_config_file("definitely_missing.cfg"), std::runtime_error);
  const char* path = "pc_bad_config.tmp";
  {
    std::ofstream f(path);
    f << "not a key value pair\n";
  }
  CHECK_THROWS_AS(parse_config_file(path), std::runtime_error);
  std::remove(path);
}

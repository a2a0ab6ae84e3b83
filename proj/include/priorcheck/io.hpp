#pragma once

#include <iosfwd>
#include <map>
#include <string>

#include "priorcheck/lasso.hpp"
#include "priorcheck/mc.hpp"

namespace priorcheck {

// JSON text for a CheckResult (stable field set, 12 significant digits).
std::string check_result_json(const CheckResult& r);

// CSV with header "gamma,power,n_reps,alpha,seed".
void write_power_curve_csv(std::ostream& os, const PowerCurve& pc);

// CSV with header "q,power_kurtosis,power_score,n,p,m,tau,n_reps,seed";
// p is 0 for the many-means study.
void write_lasso_power_csv(std::ostream& os, const lasso::PowerPair& pp, long n, long p,
                           long m, double tau);

// Flat key = value configuration files with [section] headers. Blank
// lines and lines starting with '#' are ignored. Returns
// section -> key -> value; keys before any header land in section "".
using ConfigMap = std::map<std::string, std::map<std::string, std::string>>;
ConfigMap parse_config_file(const std::string& path);

}  // namespace priorcheck

// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/check_report.hpp"

#include <cmath>
#include <cstdio>

namespace spherecalc {

const char* to_string(CheckReport::Margin m) {
  switch (m) {
    case CheckReport::Margin::exact_tol: return "exact_tol";
    case CheckReport::Margin::sigma_4: return "sigma_4";
    case CheckReport::Margin::inequality_slack: return "inequality_slack";
  }
  return "?";
}

const char* to_string(CheckReport::Outcome o) {
  switch (o) {
    case CheckReport::Outcome::pass: return "pass";
    case CheckReport::Outcome::fail: return "fail";
    case CheckReport::Outcome::inapplicable: return "inapplicable";
  }
  return "?";
}

nlohmann::json CheckReport::to_json() const {
  nlohmann::json j{{"name", name},
                   {"paper_ref", paper_ref},
                   {"n", n},
                   {"lhs", lhs},
                   {"rhs", rhs},
                   {"stderr", std_error},
                   {"margin_policy", to_string(margin)},
                   {"pass", passed()},
                   {"outcome", to_string(outcome)},
                   {"seed", seed}};
  if (!params.empty()) j["params"] = params;
  if (!note.empty()) j["note"] = note;
  return j;
}

std::string CheckReport::csv_header() { return "name,paper_ref,n,lhs,rhs,stderr,pass,seed"; }

namespace {
std::string fmt_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string CheckReport::csv_row() const {
  std::string row = name;
  row += ',';
  row += paper_ref;
  row += ',';
  row += std::to_string(n);
  row += ',';
  row += fmt_double(lhs);
  row += ',';
  row += fmt_double(rhs);
  row += ',';
  row += fmt_double(std_error);
  row += ',';
  row += outcome == Outcome::inapplicable ? "inapplicable" : (passed() ? "true" : "false");
  row += ',';
  row += std::to_string(seed);
  return row;
}

CheckReport make_identity_report(std::string name, std::string ref, int n, double lhs,
                                 double rhs, double allowance, double std_error,
                                 CheckReport::Margin margin, std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.paper_ref = std::move(ref);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.std_error = std_error;
  r.margin = margin;
  r.seed = seed;
  r.params["allowance"] = allowance;
  r.outcome = std::abs(lhs - rhs) <= allowance ? CheckReport::Outcome::pass
                                               : CheckReport::Outcome::fail;
  return r;
}

CheckReport make_inequality_report(std::string name, std::string ref, int n, double lhs,
                                   double rhs, double allowance, double std_error,
                                   CheckReport::Margin margin, std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.paper_ref = std::move(ref);
  r.n = n;
  r.lhs = lhs;
  r.rhs = rhs;
  r.std_error = std_error;
  r.margin = margin;
  r.seed = seed;
  r.params["allowance"] = allowance;
  r.outcome =
      lhs <= rhs + allowance ? CheckReport::Outcome::pass : CheckReport::Outcome::fail;
  return r;
}

CheckReport make_inapplicable_report(std::string name, std::string ref, int n,
                                     std::string why, std::uint64_t seed) {
  CheckReport r;
  r.name = std::move(name);
  r.paper_ref = std::move(ref);
  r.n = n;
  r.outcome = CheckReport::Outcome::inapplicable;
  r.note = std::move(why);
  r.seed = seed;
  return r;
}

std::string reports_to_json_lines(const std::vector<CheckReport>& reports) {
  std::string out;
  for (const auto& r : reports) {
    out += r.to_json().dump();
    out += '\n';
  }
  return out;
}

std::string reports_to_csv(const std::vector<CheckReport>& reports) {
  std::string out = CheckReport::csv_header();
  out += '\n';
  for (const auto& r : reports) {
    out += r.csv_row();
    out += '\n';
  }
  return out;
}

}  // namespace spherecalc

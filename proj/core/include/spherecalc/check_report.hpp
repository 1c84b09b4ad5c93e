// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace spherecalc {

/// Outcome record of one identity or inequality check. "inapplicable" is a
/// distinct outcome from pass/fail: it marks a hypothesis-audit failure and
/// never counts as a pass.
struct CheckReport {
  enum class Margin { exact_tol, sigma_4, inequality_slack };
  enum class Outcome { pass, fail, inapplicable };

  std::string name;
  std::string paper_ref;
  int n = 0;
  std::map<std::string, double> params;
  double lhs = 0.0;
  double rhs = 0.0;
  double std_error = 0.0;  // 0 for exact paths
  Margin margin = Margin::exact_tol;
  Outcome outcome = Outcome::fail;
  std::string note;
  std::uint64_t seed = 0;

  bool passed() const { return outcome == Outcome::pass; }
  bool applicable() const { return outcome != Outcome::inapplicable; }

  nlohmann::json to_json() const;
  static std::string csv_header();
  std::string csv_row() const;
};

const char* to_string(CheckReport::Margin m);
const char* to_string(CheckReport::Outcome o);

/// Identity check: pass iff |lhs - rhs| <= allowance.
CheckReport make_identity_report(std::string name, std::string ref, int n, double lhs,
                                 double rhs, double allowance, double std_error,
                                 CheckReport::Margin margin, std::uint64_t seed);

/// Inequality check: pass iff lhs <= rhs + allowance.
CheckReport make_inequality_report(std::string name, std::string ref, int n, double lhs,
                                   double rhs, double allowance, double std_error,
                                   CheckReport::Margin margin, std::uint64_t seed);

CheckReport make_inapplicable_report(std::string name, std::string ref, int n,
                                     std::string why, std::uint64_t seed);

/// Serializes reports one JSON object per line.
std::string reports_to_json_lines(const std::vector<CheckReport>& reports);
/// Serializes reports as CSV with the aggregate schema
/// name,paper_ref,n,lhs,rhs,stderr,pass,seed.
std::string reports_to_csv(const std::vector<CheckReport>& reports);

}  // namespace spherecalc

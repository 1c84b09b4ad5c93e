// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/moments.hpp"

namespace spherecalc {

namespace {

// Collects the factors of prod_i (alpha_i - 1)!! = prod_i (alpha_i-1)(alpha_i-3)...1.
// The factor count equals |alpha|/2, matching the denominator factor count,
// which lets the caller interleave multiplications and divisions so the
// running product stays well scaled even at high degree.
std::vector<double> double_factorial_factors(const MultiIndex& alpha) {
  std::vector<double> f;
  for (int a : alpha)
    for (int k = a - 1; k >= 1; k -= 2) f.push_back(static_cast<double>(k));
  return f;
}

}  // namespace

double sphere_moment(const MultiIndex& alpha) {
  if (!multi_index_all_even(alpha)) return 0.0;
  const int n = static_cast<int>(alpha.size());
  const int half = multi_index_degree(alpha) / 2;
  const std::vector<double> num = double_factorial_factors(alpha);
  double r = 1.0;
  for (int k = 0; k < half; ++k) {
    r *= num[k];
    r /= static_cast<double>(n + 2 * k);
  }
  return r;
}

double poly_sphere_integral(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) s += c * sphere_moment(alpha);
  return s;
}

double gaussian_moment(const MultiIndex& alpha) {
  if (!multi_index_all_even(alpha)) return 0.0;
  double r = 1.0;
  for (int a : alpha)
    for (int k = a - 1; k >= 1; k -= 2) r *= static_cast<double>(k);
  return r;
}

double poly_gaussian_integral(const Polynomial& p) {
  double s = 0.0;
  for (const auto& [alpha, c] : p.terms()) s += c * gaussian_moment(alpha);
  return s;
}

}  // namespace spherecalc

// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <vector>

#include "spherecalc/polynomial.hpp"

namespace spherecalc {

struct HarmonicComponent {
  int degree;
  Polynomial harmonic;
};

/// Decomposition of the sphere restriction of a polynomial into harmonic
/// homogeneous polynomials of distinct degrees. On |x| = 1 the sum of the
/// components equals the original polynomial.
class HarmonicDecomposition {
 public:
  HarmonicDecomposition(int dimension, std::vector<HarmonicComponent> components);

  int dimension() const noexcept { return dim_; }
  const std::vector<HarmonicComponent>& components() const noexcept { return components_; }
  /// Component of the given degree, or nullptr when absent.
  const Polynomial* component(int degree) const;
  int max_degree() const;

  /// Sum of the components at a point (intended for |theta| = 1).
  double evaluate(const Eigen::VectorXd& theta) const;

  nlohmann::json to_json() const;

 private:
  int dim_;
  std::vector<HarmonicComponent> components_;  // sorted by degree, no zero components
};

/// Splits p into harmonic components h_d with p|_{S^{n-1}} = sum_d h_d.
/// Each homogeneous part p_m of p satisfies p_m = sum_j |x|^{2j} h_{m-2j}
/// as a polynomial identity; components of equal degree coming from
/// different homogeneous parts are merged.
///
/// Guards: degree(p) <= max_degree (default 12) and dimension <= 30.
HarmonicDecomposition harmonic_decompose(const Polynomial& p, int max_degree = 12);

namespace detail {
/// p_m homogeneous of degree m; returns pairs (j, h) with
/// p_m = sum |x|^{2j} h and each h harmonic homogeneous of degree m - 2j.
std::vector<std::pair<int, Polynomial>> decompose_homogeneous(const Polynomial& p_m, int m);
}  // namespace detail

/// Laplace-Beltrami eigenvalue magnitude d(n+d-2); the eigenvalue of a
/// degree-d spherical harmonic is -eigenvalue(n, d).
double sphere_eigenvalue(int n, int d);

}  // namespace spherecalc

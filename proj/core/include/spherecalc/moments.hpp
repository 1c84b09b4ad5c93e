// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include "spherecalc/polynomial.hpp"

namespace spherecalc {

/// Exact moment of the uniform probability measure on S^{n-1}:
///   integral of prod_i theta_i^{alpha_i}.
/// Zero when any exponent is odd; otherwise
///   prod_i (alpha_i - 1)!! / prod_{k=0}^{|alpha|/2 - 1} (n + 2k).
double sphere_moment(const MultiIndex& alpha);

/// Term-wise exact integral of p over the uniform measure on S^{n-1}.
double poly_sphere_integral(const Polynomial& p);

/// Exact moment of the standard Gaussian measure on R^n:
///   E prod_i x_i^{alpha_i} = prod_i (alpha_i - 1)!!, zero for odd exponents.
double gaussian_moment(const MultiIndex& alpha);

/// Term-wise exact integral of p against the standard Gaussian on R^n.
double poly_gaussian_integral(const Polynomial& p);

}  // namespace spherecalc

// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <memory>
#include <optional>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "spherecalc/polynomial.hpp"

namespace spherecalc {

class ScalarField;
using FieldPtr = std::shared_ptr<const ScalarField>;

/// A scalar function defined on an open shell around S^{n-1} supplying
/// Euclidean value, gradient and Hessian. Fields are immutable and all
/// evaluation is pure, so instances may be shared across threads.
///
/// Derivatives default to central finite differences of value() with step
/// 1e-5 * max(1, |x|); built-ins override them with closed forms.
class ScalarField {
 public:
  enum class Derivatives { exact, finite_difference };

  virtual ~ScalarField() = default;

  int dimension() const noexcept { return dim_; }
  virtual Derivatives derivatives() const { return Derivatives::exact; }

  virtual double value(const Eigen::VectorXd& x) const = 0;
  virtual Eigen::VectorXd gradient(const Eigen::VectorXd& x) const;
  virtual Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const;

  /// Exact field for the partial derivative d_i f, when the family is closed
  /// under differentiation (polynomials, plane waves, their sums); nullptr
  /// otherwise. Repeated application yields derivatives of any order.
  virtual FieldPtr partial(int /*i*/) const { return nullptr; }

  /// Polynomial representation, when one exists exactly.
  virtual std::optional<Polynomial> as_polynomial() const { return std::nullopt; }

 protected:
  explicit ScalarField(int dim);
  int dim_;
};

/// f(x) = <v, x>
FieldPtr make_linear(const Eigen::VectorXd& v);

/// f(x) = (1/2) <Ax, x>; A must be symmetric to 1e-12.
FieldPtr make_quadratic(const Eigen::MatrixXd& a);

/// Exact polynomial field; derivatives of all orders via polynomial algebra.
FieldPtr make_polynomial(Polynomial p);

enum class WavePhase { cos, sin };

/// f(x) = amplitude * cos(t <x, x0>) or amplitude * sin(t <x, x0>).
FieldPtr make_plane_wave(double t, const Eigen::VectorXd& x0, WavePhase phase,
                         double amplitude = 1.0);

/// f(x) = c * g(x) - (a/2) |x|^2
FieldPtr make_scaled_shifted(FieldPtr g, double c, double a);

FieldPtr make_constant(int n, double c);

/// Weighted sum of fields (all of one dimension).
FieldPtr make_sum(std::vector<std::pair<double, FieldPtr>> parts);

/// f - m - <v, x>: the residual after removing an affine part.
FieldPtr make_affine_reduced(FieldPtr f, double m, const Eigen::VectorXd& v);

/// User field supplying only evaluation; gradient and Hessian fall back to
/// central finite differences.
FieldPtr make_value_only(int n, std::function<double(const Eigen::VectorXd&)> fn);

/// Parses {"kind": "linear"|"quadratic"|"polynomial"|"plane_wave"|
/// "scaled_shifted"|"constant", ...}. Unknown kinds are rejected.
FieldPtr parse_field_json(const nlohmann::json& spec);

/// Compact command-line forms, e.g. "linear:v=e1", "quadratic:diag=2,-2",
/// "poly:x1^2-0.5*x2*x3", "plane_wave:t=0.9,x0=e1,phase=cos", "const:1.5".
/// Vectors shorter than n are zero-padded.
FieldPtr parse_field_preset(const std::string& text, int n);

/// Parses "e2", "(0.6,0.8)", or "0.6,0.8" into an n-vector (zero-padded).
Eigen::VectorXd parse_point(const std::string& text, int n);

}  // namespace spherecalc

// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <stdexcept>

#include <Eigen/Core>

namespace spherecalc {

/// A point on S^{n-1}; renormalized on construction.
class UnitVector {
 public:
  explicit UnitVector(Eigen::VectorXd coords) : v_(std::move(coords)) {
    if (v_.size() < 2) throw std::invalid_argument("UnitVector: dimension must be >= 2");
    const double norm = v_.norm();
    if (!(norm > 1e-14)) throw std::invalid_argument("UnitVector: cannot normalize near-zero vector");
    v_ /= norm;
  }

  static UnitVector axis(int n, int i) {
    Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
    e[i] = 1.0;
    return UnitVector(std::move(e));
  }

  int dimension() const noexcept { return static_cast<int>(v_.size()); }
  const Eigen::VectorXd& coords() const noexcept { return v_; }
  double operator[](int i) const { return v_[i]; }

 private:
  Eigen::VectorXd v_;
};

}  // namespace spherecalc

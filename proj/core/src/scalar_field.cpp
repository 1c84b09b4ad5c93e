// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/scalar_field.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace spherecalc {

ScalarField::ScalarField(int dim) : dim_(dim) {
  if (dim < 2) throw std::invalid_argument("ScalarField: dimension must be >= 2");
}

Eigen::VectorXd ScalarField::gradient(const Eigen::VectorXd& x) const {
  const double h = 1e-5 * std::max(1.0, x.norm());
  Eigen::VectorXd g(dim_);
  Eigen::VectorXd xp = x, xm = x;
  for (int i = 0; i < dim_; ++i) {
    xp[i] = x[i] + h;
    xm[i] = x[i] - h;
    g[i] = (value(xp) - value(xm)) / (2.0 * h);
    xp[i] = x[i];
    xm[i] = x[i];
  }
  return g;
}

Eigen::MatrixXd ScalarField::hessian(const Eigen::VectorXd& x) const {
  // symmetric four-point second differences of value()
  const double h = 1e-4 * std::max(1.0, x.norm());
  Eigen::MatrixXd hess(dim_, dim_);
  Eigen::VectorXd p = x;
  const double f0 = value(x);
  for (int i = 0; i < dim_; ++i) {
    p[i] = x[i] + h;
    const double fp = value(p);
    p[i] = x[i] - h;
    const double fm = value(p);
    p[i] = x[i];
    hess(i, i) = (fp - 2.0 * f0 + fm) / (h * h);
    for (int j = i + 1; j < dim_; ++j) {
      p[i] = x[i] + h;
      p[j] = x[j] + h;
      const double fpp = value(p);
      p[j] = x[j] - h;
      const double fpm = value(p);
      p[i] = x[i] - h;
      const double fmm = value(p);
      p[j] = x[j] + h;
      const double fmp = value(p);
      p[i] = x[i];
      p[j] = x[j];
      const double d = (fpp - fpm - fmp + fmm) / (4.0 * h * h);
      hess(i, j) = d;
      hess(j, i) = d;
    }
  }
  return hess;
}

namespace {

class PolynomialField final : public ScalarField {
 public:
  explicit PolynomialField(Polynomial p)
      : ScalarField(p.dimension()), poly_(std::move(p)) {}

  double value(const Eigen::VectorXd& x) const override { return poly_.evaluate(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return poly_.gradient(x);
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    return poly_.hessian(x);
  }
  FieldPtr partial(int i) const override {
    return std::make_shared<PolynomialField>(poly_.derivative(i));
  }
  std::optional<Polynomial> as_polynomial() const override { return poly_; }

 private:
  Polynomial poly_;
};

class LinearField final : public ScalarField {
 public:
  explicit LinearField(Eigen::VectorXd v)
      : ScalarField(static_cast<int>(v.size())), v_(std::move(v)) {
    if (!v_.allFinite()) throw std::invalid_argument("make_linear: v must be finite");
  }

  double value(const Eigen::VectorXd& x) const override { return v_.dot(x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd&) const override { return v_; }
  Eigen::MatrixXd hessian(const Eigen::VectorXd&) const override {
    return Eigen::MatrixXd::Zero(dim_, dim_);
  }
  FieldPtr partial(int i) const override {
    return make_constant(dim_, v_[i]);
  }
  std::optional<Polynomial> as_polynomial() const override {
    Polynomial p(dim_);
    for (int i = 0; i < dim_; ++i)
      if (v_[i] != 0.0) p += Polynomial::variable(dim_, i) * v_[i];
    return p;
  }

 private:
  Eigen::VectorXd v_;
};

class QuadraticField final : public ScalarField {
 public:
  explicit QuadraticField(Eigen::MatrixXd a)
      : ScalarField(static_cast<int>(a.rows())), a_(std::move(a)) {
    if (a_.rows() != a_.cols()) throw std::invalid_argument("make_quadratic: A must be square");
    if ((a_ - a_.transpose()).cwiseAbs().maxCoeff() > 1e-12)
      throw std::invalid_argument("make_quadratic: A must be symmetric");
  }

  double value(const Eigen::VectorXd& x) const override { return 0.5 * x.dot(a_ * x); }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override { return a_ * x; }
  Eigen::MatrixXd hessian(const Eigen::VectorXd&) const override { return a_; }
  FieldPtr partial(int i) const override {
    return make_linear(a_.row(i).transpose());
  }
  std::optional<Polynomial> as_polynomial() const override {
    Polynomial p(dim_);
    MultiIndex alpha(dim_, 0);
    for (int i = 0; i < dim_; ++i) {
      for (int j = i; j < dim_; ++j) {
        const double c = (i == j) ? 0.5 * a_(i, i) : a_(i, j);
        if (c == 0.0) continue;
        std::fill(alpha.begin(), alpha.end(), 0);
        alpha[i] += 1;
        alpha[j] += 1;
        p.add_term(alpha, c);
      }
    }
    return p;
  }

 private:
  Eigen::MatrixXd a_;
};

class PlaneWaveField final : public ScalarField {
 public:
  PlaneWaveField(double t, Eigen::VectorXd x0, WavePhase phase, double amplitude)
      : ScalarField(static_cast<int>(x0.size())),
        t_(t),
        x0_(std::move(x0)),
        phase_(phase),
        amp_(amplitude) {
    if (!std::isfinite(t_) || !x0_.allFinite() || !std::isfinite(amp_))
      throw std::invalid_argument("make_plane_wave: parameters must be finite");
  }

  double value(const Eigen::VectorXd& x) const override {
    return amp_ * trig(t_ * x0_.dot(x));
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    return (amp_ * t_ * dtrig(t_ * x0_.dot(x))) * x0_;
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    // second derivative of either phase is -trig, so the Hessian is the
    // rank-one outer product -amp t^2 trig(arg) x0 x0^T
    return (-amp_ * t_ * t_ * trig(t_ * x0_.dot(x))) * (x0_ * x0_.transpose());
  }
  FieldPtr partial(int i) const override {
    // d/dx_i [A cos(t<x,x0>)] = -A t x0_i sin(...); cos <-> sin swap keeps
    // the family closed under differentiation.
    if (phase_ == WavePhase::cos)
      return std::make_shared<PlaneWaveField>(t_, x0_, WavePhase::sin, -amp_ * t_ * x0_[i]);
    return std::make_shared<PlaneWaveField>(t_, x0_, WavePhase::cos, amp_ * t_ * x0_[i]);
  }

 private:
  double trig(double a) const { return phase_ == WavePhase::cos ? std::cos(a) : std::sin(a); }
  double dtrig(double a) const { return phase_ == WavePhase::cos ? -std::sin(a) : std::cos(a); }

  double t_;
  Eigen::VectorXd x0_;
  WavePhase phase_;
  double amp_;
};

class SumField final : public ScalarField {
 public:
  SumField(int dim, std::vector<std::pair<double, FieldPtr>> parts)
      : ScalarField(dim), parts_(std::move(parts)) {
    for (const auto& [w, f] : parts_) {
      if (!f) throw std::invalid_argument("make_sum: null field");
      if (f->dimension() != dim) throw std::invalid_argument("make_sum: dimension mismatch");
    }
  }

  Derivatives derivatives() const override {
    for (const auto& [w, f] : parts_)
      if (f->derivatives() == Derivatives::finite_difference)
        return Derivatives::finite_difference;
    return Derivatives::exact;
  }
  double value(const Eigen::VectorXd& x) const override {
    double s = 0.0;
    for (const auto& [w, f] : parts_) s += w * f->value(x);
    return s;
  }
  Eigen::VectorXd gradient(const Eigen::VectorXd& x) const override {
    Eigen::VectorXd g = Eigen::VectorXd::Zero(dim_);
    for (const auto& [w, f] : parts_) g += w * f->gradient(x);
    return g;
  }
  Eigen::MatrixXd hessian(const Eigen::VectorXd& x) const override {
    Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim_, dim_);
    for (const auto& [w, f] : parts_) h += w * f->hessian(x);
    return h;
  }
  FieldPtr partial(int i) const override {
    std::vector<std::pair<double, FieldPtr>> dp;
    dp.reserve(parts_.size());
    for (const auto& [w, f] : parts_) {
      FieldPtr df = f->partial(i);
      if (!df) return nullptr;
      dp.emplace_back(w, std::move(df));
    }
    return std::make_shared<SumField>(dim_, std::move(dp));
  }
  std::optional<Polynomial> as_polynomial() const override {
    Polynomial p(dim_);
    for (const auto& [w, f] : parts_) {
      auto fp = f->as_polynomial();
      if (!fp) return std::nullopt;
      p += *fp * w;
    }
    return p;
  }

 private:
  std::vector<std::pair<double, FieldPtr>> parts_;
};

class ValueOnlyField final : public ScalarField {
 public:
  ValueOnlyField(int n, std::function<double(const Eigen::VectorXd&)> fn)
      : ScalarField(n), fn_(std::move(fn)) {}

  Derivatives derivatives() const override { return Derivatives::finite_difference; }
  double value(const Eigen::VectorXd& x) const override { return fn_(x); }

 private:
  std::function<double(const Eigen::VectorXd&)> fn_;
};

}  // namespace

FieldPtr make_linear(const Eigen::VectorXd& v) { return std::make_shared<LinearField>(v); }

FieldPtr make_quadratic(const Eigen::MatrixXd& a) {
  return std::make_shared<QuadraticField>(a);
}

FieldPtr make_polynomial(Polynomial p) {
  return std::make_shared<PolynomialField>(std::move(p));
}

FieldPtr make_plane_wave(double t, const Eigen::VectorXd& x0, WavePhase phase,
                         double amplitude) {
  return std::make_shared<PlaneWaveField>(t, x0, phase, amplitude);
}

FieldPtr make_constant(int n, double c) {
  return make_polynomial(Polynomial::constant(n, c));
}

FieldPtr make_scaled_shifted(FieldPtr g, double c, double a) {
  if (!g) throw std::invalid_argument("make_scaled_shifted: null field");
  const int n = g->dimension();
  std::vector<std::pair<double, FieldPtr>> parts;
  parts.emplace_back(c, std::move(g));
  if (a != 0.0)
    parts.emplace_back(-a / 2.0, make_polynomial(Polynomial::radius_sq(n)));
  return std::make_shared<SumField>(n, std::move(parts));
}

FieldPtr make_sum(std::vector<std::pair<double, FieldPtr>> parts) {
  if (parts.empty()) throw std::invalid_argument("make_sum: empty sum");
  const int n = parts.front().second->dimension();
  return std::make_shared<SumField>(n, std::move(parts));
}

FieldPtr make_affine_reduced(FieldPtr f, double m, const Eigen::VectorXd& v) {
  if (!f) throw std::invalid_argument("make_affine_reduced: null field");
  const int n = f->dimension();
  if (v.size() != n) throw std::invalid_argument("make_affine_reduced: vector dimension mismatch");
  std::vector<std::pair<double, FieldPtr>> parts;
  parts.emplace_back(1.0, std::move(f));
  Polynomial affine = Polynomial::constant(n, m);
  for (int i = 0; i < n; ++i)
    if (v[i] != 0.0) affine += Polynomial::variable(n, i) * v[i];
  parts.emplace_back(-1.0, make_polynomial(std::move(affine)));
  return std::make_shared<SumField>(n, std::move(parts));
}

FieldPtr make_value_only(int n, std::function<double(const Eigen::VectorXd&)> fn) {
  return std::make_shared<ValueOnlyField>(n, std::move(fn));
}

}  // namespace spherecalc

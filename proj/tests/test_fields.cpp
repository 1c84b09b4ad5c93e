// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include <Eigen/Dense>

#include "spherecalc/rng.hpp"
#include "spherecalc/scalar_field.hpp"
#include "spherecalc/unit_vector.hpp"

using namespace spherecalc;

namespace {

Eigen::VectorXd basis(int n, int i) {
  Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
  e[i] = 1.0;
  return e;
}

Eigen::VectorXd shell_point(std::uint64_t seed, std::uint64_t idx, int n) {
  SampleStream s(seed, idx);
  Eigen::VectorXd x(n);
  s.fill_gaussian(x);
  x *= (0.9 + 0.2 * s.uniform()) / x.norm();
  return x;
}

void check_derivative_consistency(const ScalarField& f, std::uint64_t seed) {
  const int n = f.dimension();
  for (int k = 0; k < 20; ++k) {
    const Eigen::VectorXd x = shell_point(seed, k, n);
    const Eigen::VectorXd g = f.gradient(x);
    const Eigen::MatrixXd h = f.hessian(x);

    CHECK((h - h.transpose()).cwiseAbs().maxCoeff() <= 1e-12);

    const double step = 1e-6;
    Eigen::VectorXd xp = x, xm = x;
    for (int i = 0; i < n; ++i) {
      xp[i] = x[i] + step;
      xm[i] = x[i] - step;
      const double fd = (f.value(xp) - f.value(xm)) / (2.0 * step);
      CHECK(std::abs(fd - g[i]) <= 1e-5 * std::max(1.0, std::abs(g[i])));
      for (int j = 0; j < n; ++j) {
        const double fd2 = (f.gradient(xp)[j] - f.gradient(xm)[j]) / (2.0 * step);
        CHECK(std::abs(fd2 - h(i, j)) <= 1e-4 * std::max(1.0, std::abs(h(i, j))));
      }
      xp[i] = x[i];
      xm[i] = x[i];
    }
  }
}

}  // namespace

TEST_CASE("linear fields") {
  const int n = 5;
  const FieldPtr f = make_linear(basis(n, 0));
  CHECK(f->value(basis(n, 1)) == 0.0);
  CHECK((f->gradient(basis(n, 1)) - basis(n, 0)).norm() == 0.0);
  CHECK(f->value(basis(n, 0)) == 1.0);
  CHECK(f->hessian(shell_point(3, 0, n)).norm() == 0.0);
  REQUIRE(f->as_polynomial().has_value());
  CHECK(f->as_polynomial()->evaluate(basis(n, 0)) == 1.0);
}

TEST_CASE("quadratic fields") {
  const int n = 4;
  const FieldPtr f = make_quadratic(Eigen::MatrixXd::Identity(n, n));
  const UnitVector theta(shell_point(5, 1, n));
  CHECK(f->value(theta.coords()) == doctest::Approx(0.5).epsilon(1e-12));

  Eigen::MatrixXd bad = Eigen::MatrixXd::Zero(n, n);
  bad(0, 1) = 1.0;
  CHECK_THROWS_AS(make_quadratic(bad), std::invalid_argument);

  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  a(0, 0) = 2.0;
  a(1, 1) = -2.0;
  const FieldPtr g = make_quadratic(a);
  auto p = g->as_polynomial();
  REQUIRE(p.has_value());
  // restriction is the quadratic harmonic x1^2 - x2^2
  for (int k = 0; k < 10; ++k) {
    const Eigen::VectorXd x = shell_point(6, k, n);
    CHECK(g->value(x) == doctest::Approx(x[0] * x[0] - x[1] * x[1]).epsilon(1e-12));
    CHECK(p->evaluate(x) == doctest::Approx(g->value(x)).epsilon(1e-12));
  }
}

TEST_CASE("polynomial field derivatives are exact") {
  const int n = 4;
  Polynomial p(n);
  p.add_term({2, 1, 0, 0}, 1.0);  // x1^2 x2
  const FieldPtr f = make_polynomial(p);
  const Eigen::VectorXd g = f->gradient(basis(n, 0));
  CHECK(g[0] == 0.0);
  CHECK(g[1] == 1.0);
  CHECK(g[2] == 0.0);

  const Eigen::VectorXd x = shell_point(7, 2, n);
  const Eigen::MatrixXd h = f->hessian(x);
  CHECK(h(0, 0) == doctest::Approx(2.0 * x[1]));
  CHECK(h(0, 1) == doctest::Approx(2.0 * x[0]));
  CHECK(h(1, 1) == 0.0);

  // partial() chains to arbitrary order
  const FieldPtr d1 = f->partial(0);
  REQUIRE(d1);
  const FieldPtr d12 = d1->partial(1);
  REQUIRE(d12);
  CHECK(d12->value(x) == doctest::Approx(2.0 * x[0]));
}

TEST_CASE("plane waves") {
  const int n = 6;
  Eigen::VectorXd x0 = shell_point(9, 0, n);
  x0 /= x0.norm();

  SUBCASE("degenerate frequency is constant") {
    const FieldPtr f = make_plane_wave(0.0, x0, WavePhase::cos);
    const Eigen::VectorXd x = shell_point(9, 1, n);
    CHECK(f->value(x) == 1.0);
    CHECK(f->gradient(x).norm() == 0.0);
    CHECK(f->hessian(x).norm() == 0.0);
  }

  SUBCASE("hessian is the analytic rank-one outer product") {
    const double t = 1.3;
    for (auto phase : {WavePhase::cos, WavePhase::sin}) {
      const FieldPtr f = make_plane_wave(t, x0, phase);
      for (int k = 0; k < 10; ++k) {
        const Eigen::VectorXd x = shell_point(10, k, n);
        const double arg = t * x0.dot(x);
        const double pv = phase == WavePhase::cos ? std::cos(arg) : std::sin(arg);
        const Eigen::MatrixXd expected = -t * t * pv * (x0 * x0.transpose());
        CHECK((f->hessian(x) - expected).cwiseAbs().maxCoeff() <= 1e-12);

        Eigen::JacobiSVD<Eigen::MatrixXd> svd(f->hessian(x));
        CHECK(svd.singularValues().tail(n - 1).cwiseAbs().maxCoeff() <= 1e-12);
      }
    }
  }

  SUBCASE("value at orthogonal points") {
    const FieldPtr f = make_plane_wave(2.0, x0, WavePhase::cos);
    Eigen::VectorXd perp = shell_point(11, 0, n);
    perp -= perp.dot(x0) * x0;
    CHECK(f->value(perp) == doctest::Approx(1.0).epsilon(1e-12));
  }

  SUBCASE("partial derivatives stay in the family") {
    const FieldPtr f = make_plane_wave(0.9, x0, WavePhase::sin);
    const FieldPtr d0 = f->partial(0);
    REQUIRE(d0);
    const Eigen::VectorXd x = shell_point(12, 0, n);
    CHECK(d0->value(x) == doctest::Approx(f->gradient(x)[0]).epsilon(1e-12));
    const FieldPtr d01 = d0->partial(1);
    REQUIRE(d01);
    CHECK(d01->value(x) == doctest::Approx(f->hessian(x)(0, 1)).epsilon(1e-12));
  }
}

TEST_CASE("scaled and shifted fields") {
  const int n = 4;
  Polynomial p(n);
  p.add_term({2, 1, 0, 0}, 1.0);
  const FieldPtr f = make_polynomial(p);

  const FieldPtr id = make_scaled_shifted(f, 1.0, 0.0);
  const Eigen::VectorXd x = shell_point(13, 0, n);
  CHECK(id->value(x) == doctest::Approx(f->value(x)).epsilon(1e-15));

  const FieldPtr flat = make_scaled_shifted(make_quadratic(Eigen::MatrixXd::Identity(n, n)),
                                            1.0, 1.0);
  CHECK(flat->hessian(x).norm() <= 1e-14);
  CHECK(flat->value(x) == doctest::Approx(0.0).epsilon(1e-12));

  // hessian = c f'' - a I
  const FieldPtr shifted = make_scaled_shifted(f, 2.0, 0.7);
  Eigen::MatrixXd expected = 2.0 * f->hessian(x);
  expected.diagonal().array() -= 0.7;
  CHECK((shifted->hessian(x) - expected).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("built-ins pass the finite-difference self-test") {
  const int n = 4;
  check_derivative_consistency(*make_linear(shell_point(20, 0, n)), 21);
  Eigen::MatrixXd a(n, n);
  a.setRandom();
  a = (a + a.transpose()).eval();
  check_derivative_consistency(*make_quadratic(a), 22);
  Polynomial p(n);
  p.add_term({2, 1, 0, 0}, 1.0);
  p.add_term({0, 0, 3, 0}, -0.5);
  check_derivative_consistency(*make_polynomial(p), 23);
  Eigen::VectorXd x0 = shell_point(24, 0, n);
  x0 /= x0.norm();
  check_derivative_consistency(*make_plane_wave(1.1, x0, WavePhase::sin), 25);
}

TEST_CASE("value-only fields fall back to finite differences") {
  const int n = 3;
  const FieldPtr f = make_value_only(n, [](const Eigen::VectorXd& x) {
    return std::exp(x[0]) * x[1] + x[2] * x[2];
  });
  CHECK(f->derivatives() == ScalarField::Derivatives::finite_difference);
  const Eigen::VectorXd x = shell_point(26, 0, n);
  const Eigen::VectorXd g = f->gradient(x);
  CHECK(g[0] == doctest::Approx(std::exp(x[0]) * x[1]).epsilon(1e-5));
  CHECK(g[1] == doctest::Approx(std::exp(x[0])).epsilon(1e-5));
  CHECK(g[2] == doctest::Approx(2.0 * x[2]).epsilon(1e-5));
  const Eigen::MatrixXd h = f->hessian(x);
  CHECK(h(0, 1) == doctest::Approx(std::exp(x[0])).epsilon(1e-4));
  CHECK(h(2, 2) == doctest::Approx(2.0).epsilon(1e-4));
  CHECK(f->partial(0) == nullptr);
}

TEST_CASE("json field specs parse and evaluate") {
  const nlohmann::json linear = {{"kind", "linear"}, {"v", {1.0, 0.0, 0.0}}};
  CHECK(parse_field_json(linear)->value(basis(3, 0)) == 1.0);

  const nlohmann::json quad = {{"kind", "quadratic"}, {"diag", {2.0, -2.0, 0.0}}};
  Eigen::VectorXd x(3);
  x << 0.5, 0.5, std::sqrt(0.5);
  CHECK(parse_field_json(quad)->value(x) == doctest::Approx(0.0).epsilon(1e-12));

  Polynomial p(3);
  p.add_term({2, 0, 0}, 1.0);
  const nlohmann::json poly = {{"kind", "polynomial"}, {"p", p.to_json()}};
  CHECK(parse_field_json(poly)->value(basis(3, 0)) == 1.0);

  const nlohmann::json wave = {
      {"kind", "plane_wave"}, {"t", 0.5}, {"x0", {1.0, 0.0, 0.0}}, {"phase", "sin"}};
  CHECK(parse_field_json(wave)->value(basis(3, 0)) == doctest::Approx(std::sin(0.5)));

  const nlohmann::json shifted = {
      {"kind", "scaled_shifted"}, {"f", linear}, {"c", 2.0}, {"a", 1.0}};
  CHECK(parse_field_json(shifted)->value(basis(3, 0)) == doctest::Approx(2.0 - 0.5));

  CHECK_THROWS_AS(parse_field_json({{"kind", "mystery"}}), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_json(nlohmann::json::array()), std::invalid_argument);
}

TEST_CASE("preset field specs") {
  const int n = 5;
  CHECK(parse_field_preset("linear:v=e1", n)->value(basis(n, 0)) == 1.0);
  CHECK(parse_field_preset("const:1.5", n)->value(basis(n, 1)) == 1.5);

  const FieldPtr poly = parse_field_preset("poly:x1^2-0.5*x2*x3+1", n);
  Eigen::VectorXd x = Eigen::VectorXd::Zero(n);
  x[0] = 2.0;
  x[1] = 1.0;
  x[2] = 4.0;
  CHECK(poly->value(x) == doctest::Approx(4.0 - 2.0 + 1.0));

  const FieldPtr quad = parse_field_preset("quadratic:diag=2,-2", n);
  CHECK(quad->value(basis(n, 0)) == doctest::Approx(1.0));
  CHECK(quad->value(basis(n, 1)) == doctest::Approx(-1.0));
  CHECK(quad->value(basis(n, 2)) == doctest::Approx(0.0));

  const FieldPtr wave2 = parse_field_preset("plane_wave:t=0.5,x0=0.6,0.8,phase=sin", n);
  Eigen::VectorXd mixed = Eigen::VectorXd::Zero(n);
  mixed[0] = 1.0;
  CHECK(wave2->value(mixed) == doctest::Approx(std::sin(0.5 * 0.6)));

  const FieldPtr wave = parse_field_preset("plane_wave:t=0.9,x0=e2,phase=cos", n);
  CHECK(wave->value(basis(n, 1)) == doctest::Approx(std::cos(0.9)));

  CHECK_THROWS_AS(parse_field_preset("nosuch:v=1", n), std::invalid_argument);
  CHECK_THROWS_AS(parse_field_preset("poly:x9^2", 3), std::invalid_argument);
}

TEST_CASE("point specs") {
  const Eigen::VectorXd e2 = parse_point("e2", 4);
  CHECK(e2[1] == 1.0);
  CHECK(e2.norm() == 1.0);
  const Eigen::VectorXd p = parse_point("(0.6,0.8)", 4);
  CHECK(p[0] == 0.6);
  CHECK(p[1] == 0.8);
  CHECK(p[2] == 0.0);
  CHECK_THROWS_AS(parse_point("e9", 4), std::invalid_argument);
}

TEST_CASE("unit vectors renormalize and reject near-zero input") {
  Eigen::VectorXd x(3);
  x << 3.0, 4.0, 0.0;
  const UnitVector u(x);
  CHECK(std::abs(u.coords().norm() - 1.0) <= 1e-12);
  CHECK(u[0] == doctest::Approx(0.6));
  CHECK_THROWS_AS(UnitVector(Eigen::VectorXd::Zero(3)), std::invalid_argument);
}

// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <vector>

#include "spherecalc/harmonic.hpp"
#include "spherecalc/moments.hpp"
#include "spherecalc/polynomial.hpp"
#include "spherecalc/rng.hpp"

using namespace spherecalc;

namespace {

Polynomial mono(std::vector<int> alpha, double c) {
  return Polynomial::monomial(std::move(alpha), c);
}

// Brute-force quadrature oracle for n = 3 monomial moments, independent of
// the closed form: Gauss-Legendre in cos(polar) x trapezoid in azimuth.
// Both rules are exact for the (trigonometric) polynomial integrands that
// arise from even monomials of modest degree.
struct GaussLegendre {
  std::vector<double> nodes, weights;
  explicit GaussLegendre(int k) {
    nodes.resize(k);
    weights.resize(k);
    for (int i = 0; i < k; ++i) {
      double x = std::cos(M_PI * (i + 0.75) / (k + 0.5));
      for (int it = 0; it < 100; ++it) {
        double p0 = 1.0, p1 = x;
        for (int j = 2; j <= k; ++j) {
          const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
          p0 = p1;
          p1 = p2;
        }
        const double dp = k * (x * p1 - p0) / (x * x - 1.0);
        const double dx = p1 / dp;
        x -= dx;
        if (std::abs(dx) < 1e-16) break;
      }
      double p0 = 1.0, p1 = x;
      for (int j = 2; j <= k; ++j) {
        const double p2 = ((2.0 * j - 1.0) * x * p1 - (j - 1.0) * p0) / j;
        p0 = p1;
        p1 = p2;
      }
      const double dp = k * (x * p1 - p0) / (x * x - 1.0);
      nodes[i] = x;
      weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
  }
};

double quadrature_moment_n3(int a, int b, int c) {
  const GaussLegendre gl(48);
  const int n_phi = 128;
  double total = 0.0;
  for (std::size_t iu = 0; iu < gl.nodes.size(); ++iu) {
    const double u = gl.nodes[iu];  // cos(polar)
    const double s = std::sqrt(std::max(0.0, 1.0 - u * u));
    double phi_sum = 0.0;
    for (int ip = 0; ip < n_phi; ++ip) {
      const double phi = 2.0 * M_PI * ip / n_phi;
      phi_sum += ipow(s * std::cos(phi), a) * ipow(s * std::sin(phi), b) * ipow(u, c);
    }
    total += gl.weights[iu] * (phi_sum / n_phi);
  }
  return total / 2.0;  // normalize: weights sum to 2
}

}  // namespace

TEST_CASE("partial derivatives follow the power rule") {
  const int n = 3;
  const Polynomial p = mono({2, 1, 0}, 1.0);  // x1^2 x2
  const Polynomial d1 = p.derivative(0);
  CHECK(d1.terms().size() == 1);
  CHECK(d1.terms().at({1, 1, 0}) == 2.0);

  CHECK(mono({2, 0, 0}, 1.0).derivative(1).is_zero());

  const Polynomial d11 = mono({4, 0, 0}, 1.0).derivative(0).derivative(0);
  CHECK(d11.terms().at({2, 0, 0}) == 12.0);

  CHECK_THROWS_AS((void)p.derivative(3), std::out_of_range);
  CHECK_THROWS_AS((void)p.derivative(-1), std::out_of_range);
  (void)n;
}

TEST_CASE("laplacian of radius squared and harmonic quadratics") {
  CHECK(Polynomial::radius_sq(5).laplacian().terms().at({0, 0, 0, 0, 0}) == 10.0);
  Polynomial h = mono({2, 0, 0}, 1.0) - mono({0, 2, 0}, 1.0);
  CHECK(h.laplacian().is_zero());
  const Polynomial cube = mono({3, 0, 0}, 1.0).laplacian();
  CHECK(cube.terms().at({1, 0, 0}) == 6.0);
}

TEST_CASE("arithmetic keeps no zero terms and respects dimensions") {
  Polynomial p = mono({1, 0}, 2.0);
  p -= mono({1, 0}, 2.0);
  CHECK(p.empty());
  CHECK_THROWS_AS(p += Polynomial::constant(3, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial::monomial({1, -1}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(Polynomial(1), std::invalid_argument);
}

TEST_CASE("evaluation, gradient and hessian agree with direct algebra") {
  const Polynomial p = mono({2, 1, 0}, 1.0) + mono({0, 0, 3}, -0.5);
  Eigen::VectorXd x(3);
  x << 1.5, -2.0, 0.5;
  const double expected = 1.5 * 1.5 * -2.0 - 0.5 * 0.125;
  CHECK(p.evaluate(x) == doctest::Approx(expected).epsilon(1e-15));

  const Eigen::VectorXd g = p.gradient(x);
  CHECK(g[0] == doctest::Approx(2.0 * 1.5 * -2.0));
  CHECK(g[1] == doctest::Approx(1.5 * 1.5));
  CHECK(g[2] == doctest::Approx(-1.5 * 0.25));

  const Eigen::MatrixXd h = p.hessian(x);
  CHECK(h(0, 0) == doctest::Approx(2.0 * -2.0));
  CHECK(h(0, 1) == doctest::Approx(2.0 * 1.5));
  CHECK(h(1, 0) == h(0, 1));
  CHECK(h(2, 2) == doctest::Approx(-3.0 * 0.5));
  CHECK(h(1, 1) == 0.0);
}

TEST_CASE("json round trip preserves terms exactly") {
  SampleStream s(77, 0);
  for (int rep = 0; rep < 10; ++rep) {
    Polynomial p(4);
    for (int t = 0; t < 6; ++t) {
      MultiIndex alpha(4, 0);
      for (int k = 0; k < 3; ++k) alpha[static_cast<int>(s.uniform() * 4) % 4] += 1;
      p.add_term(alpha, 2.0 * s.uniform() - 1.0);
    }
    const Polynomial q = Polynomial::from_json(p.to_json());
    CHECK(q.dimension() == p.dimension());
    CHECK(q.terms() == p.terms());
  }
}

TEST_CASE("sphere moments: symmetry values") {
  for (int n : {2, 3, 8, 20}) {
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    CHECK(sphere_moment(alpha) == doctest::Approx(1.0 / n).epsilon(1e-14));
    alpha[0] = 1;
    CHECK(sphere_moment(alpha) == 0.0);
  }
}

TEST_CASE("sphere moments match the n=3 quadrature oracle") {
  // frozen spec values first
  CHECK(sphere_moment({4, 0, 0}) == doctest::Approx(0.2).epsilon(1e-13));
  CHECK(sphere_moment({2, 2, 0}) == doctest::Approx(1.0 / 15.0).epsilon(1e-13));
  CHECK(quadrature_moment_n3(4, 0, 0) == doctest::Approx(0.2).epsilon(1e-12));
  CHECK(quadrature_moment_n3(2, 2, 0) == doctest::Approx(1.0 / 15.0).epsilon(1e-12));

  for (int a = 0; a <= 6; a += 2)
    for (int b = 0; a + b <= 6; b += 2)
      for (int c = 0; a + b + c <= 6; c += 2) {
        const double closed = sphere_moment({a, b, c});
        const double oracle = quadrature_moment_n3(a, b, c);
        CHECK(std::abs(closed - oracle) <= 1e-12);
      }
}

TEST_CASE("polynomial sphere integrals") {
  const int n = 4;
  CHECK(poly_sphere_integral(Polynomial::constant(n, 1.0)) == 1.0);

  Polynomial diff(4);
  diff += mono({2, 0, 0, 0}, 1.0);
  diff -= mono({0, 2, 0, 0}, 1.0);
  CHECK(poly_sphere_integral(diff) == 0.0);
  CHECK(poly_sphere_integral(diff * diff) == doctest::Approx(1.0 / 6.0).epsilon(1e-14));
}

TEST_CASE("gaussian moments") {
  CHECK(gaussian_moment({2, 0}) == 1.0);
  CHECK(gaussian_moment({4, 0}) == 3.0);
  CHECK(gaussian_moment({1, 2}) == 0.0);
  CHECK(gaussian_moment({2, 2}) == 1.0);
  Polynomial p = mono({2, 0}, 1.0) - Polynomial::constant(2, 1.0);
  CHECK(poly_gaussian_integral(p) == 0.0);
}

TEST_CASE("harmonic decomposition of x1^2 in dimension 3") {
  const auto dec = harmonic_decompose(mono({2, 0, 0}, 1.0));
  REQUIRE(dec.components().size() == 2);
  const Polynomial* h0 = dec.component(0);
  const Polynomial* h2 = dec.component(2);
  REQUIRE(h0 != nullptr);
  REQUIRE(h2 != nullptr);
  CHECK(h0->terms().at({0, 0, 0}) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(h2->terms().at({2, 0, 0}) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(h2->terms().at({0, 2, 0}) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(h2->terms().at({0, 0, 2}) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("harmonic decomposition keeps already-harmonic inputs") {
  const auto dec = harmonic_decompose(mono({1, 1, 0}, 1.0));
  REQUIRE(dec.components().size() == 1);
  CHECK(dec.components()[0].degree == 2);
  CHECK(dec.components()[0].harmonic.terms().at({1, 1, 0}) == 1.0);
}

TEST_CASE("harmonic decomposition of x1^3 in dimension 3") {
  const auto dec = harmonic_decompose(mono({3, 0, 0}, 1.0));
  REQUIRE(dec.components().size() == 2);
  const Polynomial* h1 = dec.component(1);
  const Polynomial* h3 = dec.component(3);
  REQUIRE(h1 != nullptr);
  REQUIRE(h3 != nullptr);
  CHECK(h1->terms().at({1, 0, 0}) == doctest::Approx(0.6).epsilon(1e-15));
  // h3 = x1^3 - (3/5) x1 |x|^2
  CHECK(h3->terms().at({3, 0, 0}) == doctest::Approx(0.4).epsilon(1e-15));
  CHECK(h3->terms().at({1, 2, 0}) == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(h3->terms().at({1, 0, 2}) == doctest::Approx(-0.6).epsilon(1e-15));
  CHECK(h3->laplacian().is_zero(1e-14));
}

TEST_CASE("decomposition components are harmonic and reconstruct the restriction") {
  for (int n : {3, 6}) {
    for (std::uint64_t rep = 0; rep < 5; ++rep) {
      SampleStream s(mix_seed(1234, rep * 10 + n), 0);
      Polynomial p(n);
      for (int t = 0; t < 8; ++t) {
        MultiIndex alpha(n, 0);
        const int deg = 1 + static_cast<int>(s.uniform() * 4) % 4;
        for (int k = 0; k < deg; ++k) alpha[static_cast<int>(s.uniform() * n) % n] += 1;
        p.add_term(alpha, std::round((2.0 * s.uniform() - 1.0) * 8.0) / 4.0);
      }
      if (p.is_zero()) continue;
      const auto dec = harmonic_decompose(p);

      for (const auto& comp : dec.components()) {
        const double scale = std::max(1.0, comp.harmonic.max_abs_coefficient());
        CHECK(comp.harmonic.laplacian().max_abs_coefficient() <= 1e-10 * scale);
      }
      int prev = -1;
      for (const auto& comp : dec.components()) {
        CHECK(comp.degree > prev);
        prev = comp.degree;
      }
      for (int k = 0; k < 100; ++k) {
        Eigen::VectorXd x(n);
        SampleStream ps(mix_seed(4321, rep), static_cast<std::uint64_t>(k));
        ps.fill_gaussian(x);
        x /= x.norm();
        const double pv = p.evaluate(x);
        CHECK(std::abs(pv - dec.evaluate(x)) <= 1e-10 * (1.0 + std::abs(pv)));
      }
    }
  }
}

TEST_CASE("homogeneous split is a polynomial identity") {
  const int n = 4;
  SampleStream s(99, 0);
  Polynomial pm(n);
  // homogeneous degree 4
  for (int t = 0; t < 6; ++t) {
    MultiIndex alpha(n, 0);
    for (int k = 0; k < 4; ++k) alpha[static_cast<int>(s.uniform() * n) % n] += 1;
    pm.add_term(alpha, std::round((2.0 * s.uniform() - 1.0) * 8.0) / 4.0);
  }
  const auto parts = detail::decompose_homogeneous(pm, 4);
  Polynomial sum(n);
  const Polynomial r2 = Polynomial::radius_sq(n);
  for (const auto& [j, h] : parts) {
    Polynomial term = h;
    for (int k = 0; k < j; ++k) term = term * r2;
    sum += term;
  }
  sum -= pm;
  CHECK(sum.max_abs_coefficient() <= 1e-12 * std::max(1.0, pm.max_abs_coefficient()));
}

TEST_CASE("decomposition guards") {
  MultiIndex big(3, 0);
  big[0] = 13;
  CHECK_THROWS_AS(harmonic_decompose(Polynomial::monomial(big, 1.0)), std::invalid_argument);
  MultiIndex wide(31, 0);
  wide[0] = 2;
  CHECK_THROWS_AS(harmonic_decompose(Polynomial::monomial(wide, 1.0)), std::invalid_argument);
}

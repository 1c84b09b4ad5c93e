// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>

#include "spherecalc/moments.hpp"
#include "spherecalc/rng.hpp"
#include "spherecalc/spectral.hpp"
#include "spherecalc/sphere_ops.hpp"

using namespace spherecalc;

namespace {

Polynomial var_poly(int n, int i) { return Polynomial::variable(n, i); }

Polynomial random_poly(std::uint64_t seed, int n, int degree, int terms) {
  SampleStream s(seed, 0);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    MultiIndex alpha(n, 0);
    const int deg = 1 + static_cast<int>(s.uniform() * degree) % degree;
    for (int k = 0; k < deg; ++k) alpha[static_cast<int>(s.uniform() * n) % n] += 1;
    p.add_term(alpha, std::round((2.0 * s.uniform() - 1.0) * 8.0) / 4.0);
  }
  if (p.is_zero()) p.add_term(MultiIndex(n, 0), 1.0);
  return p;
}

UnitVector rand_theta(std::uint64_t seed, std::uint64_t idx, int n) {
  SampleStream s(seed, idx);
  Eigen::VectorXd x(n);
  s.fill_gaussian(x);
  return UnitVector(x);
}

}  // namespace

TEST_CASE("exact integral helpers on monomials") {
  for (int n : {3, 5, 10}) {
    const Polynomial x1 = var_poly(n, 0);
    CHECK(integral_sq(x1) == doctest::Approx(1.0 / n).epsilon(1e-13));
    CHECK(integral_grad_sq(x1) == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(integral_sph_grad_sq(x1) == doctest::Approx((n - 1.0) / n).epsilon(1e-13));

    const Polynomial x1x2 = var_poly(n, 0) * var_poly(n, 1);
    const double l2 = 1.0 / (n * (n + 2.0));
    CHECK(integral_sq(x1x2) == doctest::Approx(l2).epsilon(1e-13));
    CHECK(integral_sph_grad_sq(x1x2) == doctest::Approx(2.0 * n * l2).epsilon(1e-12));
    CHECK(integral_hess_hs_sq(x1x2) == doctest::Approx(2.0).epsilon(1e-13));
  }
}

TEST_CASE("symbolic spherical-hessian integral equals the spectral value") {
  for (int n : {3, 5, 8}) {
    const Polynomial x1 = var_poly(n, 0);
    CHECK(integral_sph_hess_hs_sq(x1) == doctest::Approx((n - 1.0) / n).epsilon(1e-12));
    const SpectralField f1 = SpectralField::from_polynomial(x1);
    CHECK(f1.hess_hs_sq_spectral() == doctest::Approx((n - 1.0) / n).epsilon(1e-12));

    const Polynomial x1x2 = var_poly(n, 0) * var_poly(n, 1);
    CHECK(integral_sph_hess_hs_sq(x1x2) == doctest::Approx(2.0).epsilon(1e-12));

    const Polynomial p = random_poly(mix_seed(41, n), n, 4, 5);
    const double exact = integral_sph_hess_hs_sq(p);
    const double spectral = SpectralField::from_polynomial(p).hess_hs_sq_spectral();
    CHECK(exact == doctest::Approx(spectral).epsilon(1e-9));
  }
}

TEST_CASE("hessian-laplacian integral identity: exact and Monte Carlo paths") {
  const int n = 4;
  const SpectralField f12 =
      SpectralField::from_polynomial(var_poly(n, 0) * var_poly(n, 1));
  SamplerConfig cfg{n, 100'000, 51, 0};

  const CheckReport exact = check_hessian_laplacian_identity(f12, cfg, IntegralPath::exact);
  CHECK(exact.passed());
  CHECK(exact.std_error == 0.0);
  // frozen closed form at n = 4: 48 * (1/24) = 2
  CHECK(exact.rhs == doctest::Approx(2.0).epsilon(1e-12));

  const CheckReport mc = check_hessian_laplacian_identity(f12, cfg, IntegralPath::monte_carlo);
  CHECK(mc.passed());
  CHECK(std::abs(mc.lhs - mc.rhs) <= 4.0 * mc.std_error);

  const SpectralField zero = SpectralField::from_polynomial(Polynomial(n));
  const CheckReport trivial = check_hessian_laplacian_identity(zero, cfg, IntegralPath::exact);
  CHECK(trivial.passed());
  CHECK(trivial.lhs == 0.0);
  CHECK(trivial.rhs == 0.0);

  MultiIndex big(n, 0);
  big[0] = 9;
  CHECK_THROWS_AS(check_hessian_laplacian_identity(SpectralField::from_polynomial(Polynomial::monomial(big, 1.0)),
                                 cfg, IntegralPath::exact),
                  std::invalid_argument);
}

TEST_CASE("sharp constants hit their equality cases") {
  for (int n : {4, 10}) {
    const SpectralField lin = SpectralField::from_polynomial(var_poly(n, 0));
    const SpectralField quad =
        SpectralField::from_polynomial(var_poly(n, 0) * var_poly(n, 1));

    const CheckReport r11 = check_sharp_constants(lin, SharpInequality::poincare);
    CHECK(r11.passed());
    CHECK(r11.lhs == doctest::Approx(1.0 / (n - 1)).epsilon(1e-9));

    const CheckReport r55 = check_sharp_constants(quad, SharpInequality::gradient_vs_hessian);
    CHECK(r55.passed());
    CHECK(r55.lhs == doctest::Approx(1.0 / (n + 2)).epsilon(1e-9));

    const CheckReport r56 = check_sharp_constants(lin, SharpInequality::l2_vs_hessian);
    CHECK(r56.passed());
    CHECK(r56.lhs == doctest::Approx(1.0 / (n - 1)).epsilon(1e-9));

    const CheckReport r57 = check_sharp_constants(quad, SharpInequality::l2_vs_hessian_orthogonal);
    CHECK(r57.passed());
    CHECK(r57.lhs == doctest::Approx(1.0 / (2.0 * n * (n + 2))).epsilon(1e-9));
  }
}

TEST_CASE("sharp-constant preconditions are read from the decomposition") {
  const int n = 5;
  Polynomial affine = Polynomial::constant(n, 3.0) + var_poly(n, 0) * 2.0;
  const SpectralField f = SpectralField::from_polynomial(affine);
  const CheckReport r = check_sharp_constants(f, SharpInequality::l2_vs_hessian_orthogonal);
  CHECK(r.outcome == CheckReport::Outcome::inapplicable);
  CHECK(!r.passed());
  CHECK(r.params.count("offending_degree") == 1);

  // degree-0 components do not block the gradient-side inequality
  Polynomial shifted = var_poly(n, 0) * var_poly(n, 1) + Polynomial::constant(n, 1.0);
  const CheckReport ok = check_sharp_constants(SpectralField::from_polynomial(shifted),
                                               SharpInequality::gradient_vs_hessian);
  CHECK(ok.applicable());
  CHECK(ok.passed());
}

TEST_CASE("eigenvalue bound table") {
  const auto table = eigen_minimization_scan(10, 6);
  CHECK(table[0] == std::pair<int, double>{1, 1.0});
  CHECK(table[1].second == doctest::Approx(12.0));
  for (std::size_t i = 1; i < table.size(); ++i) CHECK(table[i].second > table[i - 1].second);
  CHECK_THROWS_AS(eigen_minimization_scan(5, 0), std::invalid_argument);
}

TEST_CASE("spectral laplacian powers act diagonally") {
  const int n = 5;
  Polynomial p = var_poly(n, 0) * var_poly(n, 1) + Polynomial::constant(n, 2.0);
  const SpectralField f = SpectralField::from_polynomial(p);

  const SpectralField lap = f.laplacian_power(1);
  const SpectralField lap2 = f.laplacian_power(2);
  // constants are killed; the d=2 component scales by -2n and (2n)^2
  CHECK(lap.decomposition().component(0) == nullptr);
  const UnitVector theta = rand_theta(61, 0, n);
  const double h = theta[0] * theta[1];
  CHECK(lap.evaluate(theta) == doctest::Approx(-2.0 * n * h).epsilon(1e-12));
  CHECK(lap2.evaluate(theta) == doctest::Approx(4.0 * n * n * h).epsilon(1e-12));
  CHECK(lap2.evaluate(theta) == doctest::Approx(100.0 * h).epsilon(1e-12));

  const SpectralField linear = SpectralField::from_polynomial(var_poly(n, 0));
  CHECK(linear.laplacian_power(1).evaluate(theta) ==
        doctest::Approx(-(n - 1.0) * theta[0]).epsilon(1e-12));

  CHECK_THROWS_AS(f.laplacian_power(3), std::invalid_argument);
}

TEST_CASE("spectral eigen-action matches the differential route") {
  const int n = 6;
  const Polynomial p = random_poly(71, n, 4, 6);
  const SpectralField f = SpectralField::from_polynomial(p);
  const FieldPtr pf = make_polynomial(p);
  for (int k = 0; k < 20; ++k) {
    const UnitVector theta = rand_theta(72, k, n);
    const double spectral = f.eval_laplacian(theta);
    const double differential = spherical_laplacian(*pf, theta);
    CHECK(std::abs(spectral - differential) <=
          1e-9 * std::max(1.0, std::abs(differential)));
  }
}

TEST_CASE("parseval") {
  const int n = 5;
  const Polynomial p = random_poly(81, n, 4, 8);
  const SpectralField f = SpectralField::from_polynomial(p);
  const double direct = integral_sq(p);
  CHECK(f.l2_sq() == doctest::Approx(direct).epsilon(1e-10));
}

TEST_CASE("affine projection") {
  const int n = 5;
  SamplerConfig cfg{n, 50'000, 91, 0};

  Polynomial sq(n);
  sq.add_term({2, 0, 0, 0, 0}, 1.0);
  const AffineProjection p1 = project_affine(make_polynomial(sq), cfg);
  CHECK(p1.exact);
  CHECK(p1.m == doctest::Approx(1.0 / n).epsilon(1e-13));
  CHECK(p1.v.norm() == 0.0);
  const UnitVector theta = rand_theta(92, 0, n);
  CHECK(p1.residual->value(theta.coords()) ==
        doctest::Approx(theta[0] * theta[0] - 1.0 / n).epsilon(1e-12));
  // residual is orthogonal to affine functions, exactly
  auto rp = p1.residual->as_polynomial();
  REQUIRE(rp.has_value());
  CHECK(std::abs(poly_sphere_integral(*rp)) <= 1e-10);
  for (int i = 0; i < n; ++i)
    CHECK(std::abs(poly_sphere_integral(*rp * var_poly(n, i))) <= 1e-10);

  Polynomial aff = Polynomial::constant(n, 3.0) + var_poly(n, 0) * 2.0;
  const AffineProjection p2 = project_affine(make_polynomial(aff), cfg);
  for (int k = 0; k < 10; ++k) {
    const UnitVector t2 = rand_theta(93, k, n);
    CHECK(std::abs(p2.residual->value(t2.coords())) <= 1e-12);
  }

  const Polynomial odd2 = var_poly(n, 0) * var_poly(n, 1);
  const AffineProjection p3 = project_affine(make_polynomial(odd2), cfg);
  CHECK(p3.m == 0.0);
  CHECK(p3.v.norm() == 0.0);
}

TEST_CASE("dimension-asymptotic chain for fields orthogonal to linear parts") {
  for (int n : {4, 8}) {
    Polynomial p = var_poly(n, 0) * var_poly(n, 1);
    MultiIndex alpha(n, 0);
    alpha[0] = 3;
    const auto dec = harmonic_decompose(Polynomial::monomial(alpha, 1.0));
    p += *dec.component(3) * 0.5;
    const SpectralField f = SpectralField::from_polynomial(p);

    const double dir = f.dirichlet_sq();
    const double hess = f.hess_hs_sq_spectral();
    const double l2 = f.l2_sq();
    CHECK((n - 2) * dir <= hess + 1e-12);
    CHECK(l2 <= hess / ((n - 1.0) * (n - 2.0)) + 1e-12);
    CHECK(l2 <= dir / (2.0 * n) + 1e-12);
  }
}

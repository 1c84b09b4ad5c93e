// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cmath>
#include <cstring>

#include "spherecalc/moments.hpp"
#include "spherecalc/sampling.hpp"
#include "spherecalc/scalar_field.hpp"
#include "spherecalc/spectral.hpp"

using namespace spherecalc;

TEST_CASE("uniform samples are deterministic and on the sphere") {
  SamplerConfig cfg{5, 1000, 99, 1};
  const auto pts = sample_uniform(cfg, 100);
  REQUIRE(pts.size() == 100);
  for (const auto& p : pts) CHECK(std::abs(p.coords().norm() - 1.0) <= 1e-12);
  const auto again = sample_uniform(cfg, 100);
  for (std::size_t i = 0; i < pts.size(); ++i)
    CHECK((pts[i].coords() - again[i].coords()).norm() == 0.0);
}

TEST_CASE("estimates are bit-identical across runs and worker counts") {
  auto g = [](const UnitVector& u) { return u[0] * u[0] - 0.3 * u[1]; };
  SamplerConfig one{8, 200'000, 1234, 1};
  SamplerConfig four{8, 200'000, 1234, 4};
  const MonteCarloEstimate a = mc_integrate(g, one);
  const MonteCarloEstimate b = mc_integrate(g, four);
  const MonteCarloEstimate c = mc_integrate(g, one);
  CHECK(std::memcmp(&a.mean, &b.mean, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.std_error, &b.std_error, sizeof(double)) == 0);
  CHECK(std::memcmp(&a.mean, &c.mean, sizeof(double)) == 0);
}

TEST_CASE("sampler moments match closed forms") {
  SamplerConfig cfg{3, 100'000, 7, 0};

  for (int i = 0; i < 3; ++i) {
    const MonteCarloEstimate m = mc_integrate(
        [i](const UnitVector& u) { return u[i]; }, cfg.with_seed(100 + i));
    CHECK(std::abs(m.mean) <= 4.0 * m.std_error);
  }

  const MonteCarloEstimate sq =
      mc_integrate([](const UnitVector& u) { return u[0] * u[0]; }, cfg.with_seed(200));
  CHECK(std::abs(sq.mean - 1.0 / 3.0) <= 4.0 * sq.std_error);

  const MonteCarloEstimate quart = mc_integrate(
      [](const UnitVector& u) { return ipow(u[0], 4); }, cfg.with_seed(300));
  CHECK(std::abs(quart.mean - 0.2) <= 4.0 * quart.std_error);
}

TEST_CASE("mc_integrate basics") {
  SamplerConfig cfg{4, 50'000, 11, 0};
  const MonteCarloEstimate one = mc_integrate([](const UnitVector&) { return 1.0; }, cfg);
  CHECK(one.mean == 1.0);
  CHECK(one.std_error == 0.0);

  const MonteCarloEstimate odd = mc_integrate(
      [](const UnitVector& u) { return u[0] * u[0] - u[1] * u[1]; }, cfg.with_seed(12));
  CHECK(std::abs(odd.mean) <= 4.0 * odd.std_error);

  const MonteCarloEstimate sq = mc_integrate(
      [](const UnitVector& u) {
        const double d = u[0] * u[0] - u[1] * u[1];
        return d * d;
      },
      cfg.with_seed(13));
  CHECK(std::abs(sq.mean - 1.0 / 6.0) <= 4.0 * sq.std_error);

  CHECK_THROWS_WITH_AS(
      mc_integrate([](const UnitVector& u) { return 1.0 / (u[0] - u[0]); }, cfg),
      doctest::Contains("non-finite"), std::runtime_error);
}

TEST_CASE("polynomial integrands stay within 4 standard errors") {
  // distribution-level guarantee, checked over 100 seeded trials
  Polynomial p(5);
  p.add_term({2, 0, 0, 0, 0}, 1.0);
  p.add_term({0, 1, 1, 0, 0}, -0.5);
  const double exact = poly_sphere_integral(p);
  int hits = 0;
  for (std::uint64_t trial = 0; trial < 100; ++trial) {
    SamplerConfig cfg{5, 10'000, mix_seed(500, trial), 0};
    const MonteCarloEstimate e =
        mc_integrate([&p](const UnitVector& u) { return p.evaluate(u.coords()); }, cfg);
    if (std::abs(e.mean - exact) <= 4.0 * e.std_error) ++hits;
  }
  CHECK(hits >= 95);
}

TEST_CASE("entropy estimates") {
  SamplerConfig cfg{5, 200'000, 21, 0};

  const MonteCarloEstimate flat =
      entropy_estimate([](const UnitVector&) { return 2.5; }, cfg);
  CHECK(flat.mean == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(flat.std_error == doctest::Approx(0.0).epsilon(1e-12));

  // small-perturbation expansion: Ent(1 + eps theta_1) ~ eps^2/(2n)
  const double eps = 0.05;
  const int n = 5;
  const MonteCarloEstimate small = entropy_estimate(
      [eps](const UnitVector& u) { return 1.0 + eps * u[0]; }, cfg.with_seed(22));
  const double predicted = eps * eps / (2.0 * n);
  CHECK(std::abs(small.mean - predicted) <= 4.0 * small.std_error + 1e-6);

  // matches Var(u)/(2 E u) in the same regime
  CHECK(predicted == doctest::Approx((eps * eps / n) / 2.0));

  CHECK_THROWS_WITH_AS(entropy_estimate([](const UnitVector& u) { return u[0]; }, cfg),
                       doctest::Contains("negative"), std::runtime_error);

  // log-Sobolev direction for u = f^2, f = theta_1
  const MonteCarloEstimate ent_f2 = entropy_estimate(
      [](const UnitVector& u) { return u[0] * u[0]; }, cfg.with_seed(23));
  Polynomial x1(5);
  x1.add_term({1, 0, 0, 0, 0}, 1.0);
  const double rhs = 2.0 / (n - 1) * integral_sph_grad_sq(x1);
  CHECK(ent_f2.mean <= rhs + 4.0 * ent_f2.std_error);
}

TEST_CASE("log-exp moments") {
  SamplerConfig cfg{6, 100'000, 31, 0};
  const LogExpEstimate unit = mc_log_exp_moment([](const UnitVector&) { return 0.0; }, cfg);
  CHECK(unit.mean == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.std_error == doctest::Approx(0.0).epsilon(1e-12));

  // large shifts must not overflow
  const LogExpEstimate shifted = mc_log_exp_moment(
      [](const UnitVector& u) { return 500.0 + u[0]; }, cfg.with_seed(32));
  CHECK(std::isfinite(shifted.log_mean));
  CHECK(shifted.log_mean == doctest::Approx(500.0).epsilon(1e-2));

  const LogExpEstimate direct = mc_log_exp_moment(
      [](const UnitVector& u) { return 0.8 * u[0]; }, cfg.with_seed(33));
  const MonteCarloEstimate ref = mc_integrate(
      [](const UnitVector& u) { return std::exp(0.8 * u[0]); }, cfg.with_seed(33));
  CHECK(direct.mean == doctest::Approx(ref.mean).epsilon(1e-12));
}

TEST_CASE("vector_mean: exact and sampled paths") {
  const int n = 6;
  SamplerConfig cfg{n, 200'000, 41, 0};

  Polynomial x1(n);
  x1.add_term({1, 0, 0, 0, 0, 0}, 1.0);
  const VectorMeanResult lin = vector_mean(*make_polynomial(x1), cfg);
  CHECK(lin.exact);
  CHECK(lin.m == 0.0);
  CHECK(lin.v[0] == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(lin.v.tail(n - 1).norm() == 0.0);
  CHECK(lin.correlation_i == doctest::Approx(1.0 / (n * n)).epsilon(1e-12));

  const VectorMeanResult flat = vector_mean(*make_constant(n, 3.0), cfg);
  CHECK(flat.m == 3.0);
  CHECK(flat.v.norm() == 0.0);
  CHECK(flat.correlation_i == 0.0);

  // even field: v = 0, so the affine projection is f - m
  Polynomial sq(n);
  sq.add_term({2, 0, 0, 0, 0, 0}, 1.0);
  const VectorMeanResult even = vector_mean(*make_polynomial(sq), cfg);
  CHECK(even.m == doctest::Approx(1.0 / n).epsilon(1e-12));
  CHECK(even.v.norm() == 0.0);

  Eigen::VectorXd x0 = Eigen::VectorXd::Zero(n);
  x0[0] = 1.0;
  const VectorMeanResult wave = vector_mean(*make_plane_wave(0.9, x0, WavePhase::sin), cfg);
  CHECK(!wave.exact);
  CHECK(wave.samples == cfg.samples);
  CHECK(std::abs(wave.m) <= 4.0 * wave.m_std_error);
  CHECK(wave.w[0] > 0.0);
}

TEST_CASE("correlation factorizes as the squared first moment") {
  // I = double integral of <x,y> f(x) f(y) equals |E theta f|^2; compare the
  // exact value against an independent paired double-sum estimate
  const int n = 4;
  Polynomial p(n);
  p.add_term({1, 0, 0, 0}, 1.0);
  p.add_term({1, 1, 0, 0}, 0.3);
  const FieldPtr f = make_polynomial(p);
  const VectorMeanResult exact = vector_mean(*f, SamplerConfig{n, 1000, 1, 0});
  REQUIRE(exact.exact);

  const std::int64_t m = 1000;
  SamplerConfig cfg_x{n, m, 71, 0};
  SamplerConfig cfg_y{n, m, 72, 0};
  struct Acc {
    std::int64_t count = 0;
    Eigen::VectorXd sum;
    Eigen::VectorXd sumsq;
    void add(const Eigen::VectorXd& v) {
      if (sum.size() == 0) {
        sum = Eigen::VectorXd::Zero(v.size());
        sumsq = Eigen::VectorXd::Zero(v.size());
      }
      ++count;
      sum += v;
      sumsq += v.cwiseProduct(v);
    }
    void merge(const Acc& o) {
      if (o.count == 0) return;
      if (count == 0) {
        *this = o;
        return;
      }
      count += o.count;
      sum += o.sum;
      sumsq += o.sumsq;
    }
  };
  auto side = [&](const SamplerConfig& cfg) {
    return run_sphere<Acc>(cfg, [&f](std::int64_t, const Eigen::VectorXd& theta, Acc& a) {
      a.add((f->value(theta) * theta).eval());
    });
  };
  const Acc ax = side(cfg_x);
  const Acc ay = side(cfg_y);
  const Eigen::VectorXd mx = ax.sum / m;
  const Eigen::VectorXd my = ay.sum / m;
  const double double_sum = mx.dot(my);

  Eigen::VectorXd se_x(n), se_y(n);
  for (int i = 0; i < n; ++i) {
    se_x[i] = std::sqrt(std::max(0.0, ax.sumsq[i] / m - mx[i] * mx[i]) / m);
    se_y[i] = std::sqrt(std::max(0.0, ay.sumsq[i] / m - my[i] * my[i]) / m);
  }
  double se = 0.0;
  for (int i = 0; i < n; ++i)
    se += ipow(my[i] * se_x[i], 2) + ipow(mx[i] * se_y[i], 2) + ipow(se_x[i] * se_y[i], 2);
  se = std::sqrt(se);
  CHECK(std::abs(double_sum - exact.correlation_i) <= 4.0 * se);
}

TEST_CASE("closed-form moments agree with Monte Carlo at 1e6 samples") {
  // 20 random even multi-indices per dimension
  for (int n : {3, 8}) {
    SampleStream picker(mix_seed(600, n), 0);
    int hits = 0;
    for (int rep = 0; rep < 20; ++rep) {
      MultiIndex alpha(n, 0);
      const int pairs = 1 + static_cast<int>(picker.uniform() * 3) % 3;
      for (int k = 0; k < pairs; ++k)
        alpha[static_cast<int>(picker.uniform() * n) % n] += 2;
      SamplerConfig cfg{n, 1'000'000, mix_seed(601, n * 100 + rep), 0};
      const MonteCarloEstimate e = mc_integrate(
          [&alpha](const UnitVector& u) {
            double t = 1.0;
            for (int i = 0; i < u.dimension(); ++i)
              if (alpha[i] != 0) t *= ipow(u[i], alpha[i]);
            return t;
          },
          cfg);
      if (std::abs(e.mean - sphere_moment(alpha)) <= 4.0 * e.std_error) ++hits;
    }
    CHECK(hits >= 19);
  }
}

TEST_CASE("estimate serialization schema") {
  const MonteCarloEstimate e{0.5, 0.001, 1000, 7};
  const nlohmann::json j = e.to_json();
  CHECK(j.at("mean") == 0.5);
  CHECK(j.at("stderr") == 0.001);
  CHECK(j.at("samples") == 1000);
  CHECK(j.at("seed") == 7);
}

TEST_CASE("block partition invariance of the multivariate accumulator") {
  MultiStats<2> whole;
  MultiStats<2> left, right;
  SampleStream s(5, 0);
  for (int i = 0; i < 1000; ++i) {
    const std::array<double, 2> x{s.uniform(), s.uniform() * 2.0 - 1.0};
    whole.add(x, i);
    (i < 400 ? left : right).add(x, i);
  }
  left.merge(right);
  CHECK(left.count == whole.count);
  CHECK(left.mean[0] == doctest::Approx(whole.mean[0]).epsilon(1e-13));
  CHECK(left.cov(0, 1) == doctest::Approx(whole.cov(0, 1)).epsilon(1e-12));
}

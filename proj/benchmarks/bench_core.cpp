// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <benchmark/benchmark.h>

#include "spherecalc/harmonic.hpp"
#include "spherecalc/moments.hpp"
#include "spherecalc/sampling.hpp"
#include "spherecalc/sphere_ops.hpp"

using namespace spherecalc;

namespace {

Polynomial bench_poly(int n) {
  Polynomial p(n);
  MultiIndex alpha(n, 0);
  alpha[0] = 2;
  alpha[1] = 1;
  p.add_term(alpha, 1.0);
  std::fill(alpha.begin(), alpha.end(), 0);
  alpha[2] = 4;
  p.add_term(alpha, -0.5);
  std::fill(alpha.begin(), alpha.end(), 0);
  alpha[0] = 1;
  alpha[3] = 2;
  p.add_term(alpha, 0.25);
  return p;
}

void BM_PolynomialHessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const Polynomial p = bench_poly(n);
  Eigen::VectorXd x = Eigen::VectorXd::Constant(n, 1.0 / std::sqrt(n));
  for (auto _ : state) {
    benchmark::DoNotOptimize(p.hessian(x));
  }
}
BENCHMARK(BM_PolynomialHessian)->Arg(5)->Arg(10)->Arg(20);

void BM_HarmonicDecompose(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  MultiIndex alpha(n, 0);
  alpha[0] = 4;
  alpha[1] = 2;
  const Polynomial p = Polynomial::monomial(alpha, 1.0);
  for (auto _ : state) {
    benchmark::DoNotOptimize(harmonic_decompose(p));
  }
}
BENCHMARK(BM_HarmonicDecompose)->Arg(5)->Arg(10);

void BM_SphereSampling(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  SamplerConfig cfg{n, 10'000, 42, 1};
  for (auto _ : state) {
    auto est = mc_integrate([](const UnitVector& u) { return u[0] * u[0]; }, cfg);
    benchmark::DoNotOptimize(est);
  }
  state.SetItemsProcessed(state.iterations() * cfg.samples);
}
BENCHMARK(BM_SphereSampling)->Arg(10)->Arg(40);

void BM_SphericalHessian(benchmark::State& state) {
  const int n = static_cast<int>(state.range(0));
  const FieldPtr f = make_polynomial(bench_poly(n));
  const UnitVector theta = UnitVector(Eigen::VectorXd::Constant(n, 1.0));
  for (auto _ : state) {
    benchmark::DoNotOptimize(spherical_hessian(*f, theta));
  }
}
BENCHMARK(BM_SphericalHessian)->Arg(10)->Arg(50);

void BM_SphereMoment(benchmark::State& state) {
  MultiIndex alpha(20, 0);
  alpha[0] = 6;
  alpha[5] = 4;
  alpha[11] = 2;
  for (auto _ : state) {
    benchmark::DoNotOptimize(sphere_moment(alpha));
  }
}
BENCHMARK(BM_SphereMoment);

}  // namespace

BENCHMARK_MAIN();

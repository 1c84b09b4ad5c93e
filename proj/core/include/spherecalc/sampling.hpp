// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <array>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <functional>
#include <limits>
#include <stdexcept>
#include <thread>
#include <vector>

#include <Eigen/Core>
#include <json.hpp>

#include "spherecalc/rng.hpp"
#include "spherecalc/unit_vector.hpp"

namespace spherecalc {

class ScalarField;

struct SamplerConfig {
  int n = 10;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  int workers = 0;  // 0 = available parallelism

  SamplerConfig with_seed(std::uint64_t s) const {
    SamplerConfig c = *this;
    c.seed = s;
    return c;
  }
  SamplerConfig with_samples(std::int64_t s) const {
    SamplerConfig c = *this;
    c.samples = s;
    return c;
  }
};

struct MonteCarloEstimate {
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;

  nlohmann::json to_json() const {
    return {{"mean", mean}, {"stderr", std_error}, {"samples", samples}, {"seed", seed}};
  }
};

int effective_workers(int requested);

/// Runs block_fn(lo, hi, acc) over fixed-size index blocks of [0, samples).
/// Blocks are processed by a worker pool but accumulated into per-block slots
/// and merged in block order, so results are bit-identical for any worker
/// count. Acc needs: default ctor, merge(const Acc&).
template <class Acc, class BlockFn>
Acc run_blocks(const SamplerConfig& cfg, BlockFn&& block_fn) {
  if (cfg.samples < 1) throw std::invalid_argument("SamplerConfig: samples must be >= 1");
  constexpr std::int64_t kBlock = 65536;
  const std::int64_t nblocks = (cfg.samples + kBlock - 1) / kBlock;
  std::vector<Acc> accs(static_cast<std::size_t>(nblocks));

  auto run_one = [&](std::int64_t b) {
    const std::int64_t lo = b * kBlock;
    const std::int64_t hi = std::min(cfg.samples, lo + kBlock);
    block_fn(lo, hi, accs[static_cast<std::size_t>(b)]);
  };

  const int workers = static_cast<int>(
      std::min<std::int64_t>(effective_workers(cfg.workers), nblocks));
  if (workers <= 1) {
    for (std::int64_t b = 0; b < nblocks; ++b) run_one(b);
  } else {
    std::atomic<std::int64_t> next{0};
    std::exception_ptr error;
    std::atomic<bool> failed{false};
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (int w = 0; w < workers; ++w) {
      pool.emplace_back([&] {
        try {
          for (;;) {
            const std::int64_t b = next.fetch_add(1);
            if (b >= nblocks || failed.load()) return;
            run_one(b);
          }
        } catch (...) {
          if (!failed.exchange(true)) error = std::current_exception();
        }
      });
    }
    for (auto& t : pool) t.join();
    if (failed.load()) std::rethrow_exception(error);
  }

  Acc total;
  for (const Acc& a : accs) total.merge(a);
  return total;
}

/// Per-sample driver over uniform points on S^{n-1}. fn(index, theta, acc)
/// receives a unit vector; it must be reentrant.
template <class Acc, class Fn>
Acc run_sphere(const SamplerConfig& cfg, Fn&& fn) {
  return run_blocks<Acc>(cfg, [&cfg, &fn](std::int64_t lo, std::int64_t hi, Acc& acc) {
    Eigen::VectorXd g(cfg.n);
    for (std::int64_t i = lo; i < hi; ++i) {
      SampleStream stream(cfg.seed, static_cast<std::uint64_t>(i));
      stream.fill_gaussian(g);
      const double norm = g.norm();
      if (norm > 1e-14) {
        g /= norm;
      } else {
        g.setZero();
        g[0] = 1.0;
      }
      fn(i, g, acc);
    }
  });
}

/// Per-sample driver over standard Gaussian vectors in R^n.
template <class Acc, class Fn>
Acc run_gaussian(const SamplerConfig& cfg, Fn&& fn) {
  return run_blocks<Acc>(cfg, [&cfg, &fn](std::int64_t lo, std::int64_t hi, Acc& acc) {
    Eigen::VectorXd g(cfg.n);
    for (std::int64_t i = lo; i < hi; ++i) {
      SampleStream stream(cfg.seed, static_cast<std::uint64_t>(i));
      stream.fill_gaussian(g);
      fn(i, g, acc);
    }
  });
}

/// Welford accumulation of K jointly observed statistics with full
/// co-moments; merge uses the pairwise update so any block partition gives
/// the same totals when merged in order.
template <int K>
struct MultiStats {
  std::int64_t count = 0;
  std::array<double, K> mean{};
  std::array<std::array<double, K>, K> com{};
  std::int64_t first_bad = -1;

  void add(const std::array<double, K>& x, std::int64_t idx) {
    for (int k = 0; k < K; ++k) {
      if (!std::isfinite(x[k])) {
        if (first_bad < 0) first_bad = idx;
        return;
      }
    }
    ++count;
    std::array<double, K> delta;
    for (int k = 0; k < K; ++k) {
      delta[k] = x[k] - mean[k];
      mean[k] += delta[k] / static_cast<double>(count);
    }
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) com[i][j] += delta[i] * (x[j] - mean[j]);
  }

  void merge(const MultiStats& o) {
    if (o.first_bad >= 0 && (first_bad < 0 || o.first_bad < first_bad)) first_bad = o.first_bad;
    if (o.count == 0) return;
    if (count == 0) {
      count = o.count;
      mean = o.mean;
      com = o.com;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const double n = na + nb;
    std::array<double, K> d;
    for (int k = 0; k < K; ++k) d[k] = o.mean[k] - mean[k];
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) com[i][j] += o.com[i][j] + d[i] * d[j] * na * nb / n;
    for (int k = 0; k < K; ++k) mean[k] += d[k] * nb / n;
    count += o.count;
  }

  double cov(int i, int j) const {
    return count > 1 ? com[i][j] / static_cast<double>(count - 1) : 0.0;
  }
  double variance(int k) const { return cov(k, k); }
  double se(int k) const {
    return count > 0 ? std::sqrt(std::max(0.0, variance(k)) / static_cast<double>(count)) : 0.0;
  }
  /// Standard error of g(means) with gradient grad, by the delta method.
  double delta_se(const std::array<double, K>& grad) const {
    if (count < 2) return 0.0;
    double v = 0.0;
    for (int i = 0; i < K; ++i)
      for (int j = 0; j < K; ++j) v += grad[i] * grad[j] * cov(i, j);
    return std::sqrt(std::max(0.0, v) / static_cast<double>(count));
  }
};

template <int K>
struct MaxStats {
  std::array<double, K> max_v;
  std::int64_t count = 0;

  MaxStats() { max_v.fill(-std::numeric_limits<double>::infinity()); }
  void add(const std::array<double, K>& x) {
    ++count;
    for (int k = 0; k < K; ++k) max_v[k] = std::max(max_v[k], x[k]);
  }
  void merge(const MaxStats& o) {
    count += o.count;
    for (int k = 0; k < K; ++k) max_v[k] = std::max(max_v[k], o.max_v[k]);
  }
};

/// Streaming log-sum-exp of x and 2x, for exponential-moment estimates that
/// must not overflow: log-mean and the standard error of the mean both come
/// out in log space.
struct LogExpStats {
  std::int64_t count = 0;
  double max1 = -std::numeric_limits<double>::infinity();
  double sum1 = 0.0;
  double max2 = -std::numeric_limits<double>::infinity();
  double sum2 = 0.0;
  std::int64_t first_bad = -1;

  static void accumulate(double& mx, double& sm, double x) {
    if (x <= mx) {
      sm += std::exp(x - mx);
    } else {
      sm = sm * std::exp(mx - x) + 1.0;
      mx = x;
    }
  }
  static void combine(double& mx, double& sm, double omx, double osm) {
    if (osm == 0.0) return;
    if (sm == 0.0) {
      mx = omx;
      sm = osm;
      return;
    }
    if (omx <= mx) {
      sm += osm * std::exp(omx - mx);
    } else {
      sm = sm * std::exp(mx - omx) + osm;
      mx = omx;
    }
  }

  void add(double x, std::int64_t idx) {
    if (!std::isfinite(x)) {
      if (first_bad < 0) first_bad = idx;
      return;
    }
    ++count;
    accumulate(max1, sum1, x);
    accumulate(max2, sum2, 2.0 * x);
  }
  void merge(const LogExpStats& o) {
    if (o.first_bad >= 0 && (first_bad < 0 || o.first_bad < first_bad)) first_bad = o.first_bad;
    count += o.count;
    combine(max1, sum1, o.max1, o.sum1);
    combine(max2, sum2, o.max2, o.sum2);
  }

  double log_sum1() const { return max1 + std::log(sum1); }
  double log_sum2() const { return max2 + std::log(sum2); }
  double log_mean() const { return log_sum1() - std::log(static_cast<double>(count)); }
  double mean() const { return std::exp(log_mean()); }
  /// Relative standard error of the mean, se(mean)/mean.
  double rel_se() const {
    if (count < 2) return 0.0;
    const double ratio =
        std::exp(std::log(static_cast<double>(count)) + log_sum2() - 2.0 * log_sum1());
    return std::sqrt(std::max(0.0, ratio - 1.0) / static_cast<double>(count - 1));
  }
  double se() const { return mean() * rel_se(); }
  /// Standard error of log(mean), by the delta method.
  double log_se() const { return rel_se(); }
};

/// Concatenates per-sample values in block order (for quantiles).
struct CollectStats {
  std::vector<double> values;
  void add(double x) { values.push_back(x); }
  void merge(const CollectStats& o) {
    values.insert(values.end(), o.values.begin(), o.values.end());
  }
};

// ---------------------------------------------------------------------------
// Spec-level operations

/// Draws `count` uniform points in sequence (index order of the stream).
std::vector<UnitVector> sample_uniform(const SamplerConfig& cfg, std::int64_t count);

/// Sample mean and standard error of g over the uniform sphere measure.
/// Throws on non-finite g values, naming the offending sample index.
MonteCarloEstimate mc_integrate(const std::function<double(const UnitVector&)>& g,
                                const SamplerConfig& cfg);

/// Plug-in entropy estimate Ent(u) = E[u log u] - E[u] log E[u] with the
/// 0 log 0 = 0 convention; the standard error comes from the delta method
/// applied to the two joint sample means. Throws on negative u.
MonteCarloEstimate entropy_estimate(const std::function<double(const UnitVector&)>& u,
                                    const SamplerConfig& cfg);

/// log E exp(h) with log-space accumulation. Returned estimate carries the
/// LINEAR-scale mean and stderr; log-scale values are in LogExpEstimate.
struct LogExpEstimate {
  double log_mean = 0.0;
  double log_std_error = 0.0;
  double mean = 0.0;
  double std_error = 0.0;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};
LogExpEstimate mc_log_exp_moment(const std::function<double(const UnitVector&)>& h,
                                 const SamplerConfig& cfg);

/// Mean, first moment vector and derived affine quantities of a field:
///   m = E f,  w = E[theta f],  v = n w,  I = |w|^2.
/// Exact (stderr 0) when the field has a polynomial representation.
struct VectorMeanResult {
  double m = 0.0;
  double m_std_error = 0.0;
  Eigen::VectorXd w;
  Eigen::VectorXd w_std_error;
  Eigen::VectorXd v;
  double correlation_i = 0.0;  // I = |w|^2
  bool exact = false;
  std::int64_t samples = 0;
  std::uint64_t seed = 0;
};
VectorMeanResult vector_mean(const ScalarField& f, const SamplerConfig& cfg);

}  // namespace spherecalc

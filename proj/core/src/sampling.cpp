// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/sampling.hpp"

#include <stdexcept>

#include "spherecalc/moments.hpp"
#include "spherecalc/scalar_field.hpp"

namespace spherecalc {

int effective_workers(int requested) {
  if (requested > 0) return requested;
  const unsigned hc = std::thread::hardware_concurrency();
  return hc > 0 ? static_cast<int>(hc) : 1;
}

std::vector<UnitVector> sample_uniform(const SamplerConfig& cfg, std::int64_t count) {
  std::vector<UnitVector> out;
  out.reserve(static_cast<std::size_t>(count));
  Eigen::VectorXd g(cfg.n);
  for (std::int64_t i = 0; i < count; ++i) {
    SampleStream stream(cfg.seed, static_cast<std::uint64_t>(i));
    stream.fill_gaussian(g);
    out.emplace_back(g);
  }
  return out;
}

MonteCarloEstimate mc_integrate(const std::function<double(const UnitVector&)>& g,
                                const SamplerConfig& cfg) {
  auto stats = run_sphere<MultiStats<1>>(
      cfg, [&g](std::int64_t idx, const Eigen::VectorXd& theta, MultiStats<1>& acc) {
        acc.add({g(UnitVector(theta))}, idx);
      });
  if (stats.first_bad >= 0)
    throw std::runtime_error("mc_integrate: non-finite integrand value at sample index " +
                             std::to_string(stats.first_bad));
  return {stats.mean[0], stats.se(0), stats.count, cfg.seed};
}

MonteCarloEstimate entropy_estimate(const std::function<double(const UnitVector&)>& u,
                                    const SamplerConfig& cfg) {
  struct EntropyAcc {
    MultiStats<2> stats;       // (u, u log u)
    std::int64_t first_neg = -1;
    void merge(const EntropyAcc& o) {
      stats.merge(o.stats);
      if (o.first_neg >= 0 && (first_neg < 0 || o.first_neg < first_neg)) first_neg = o.first_neg;
    }
  };
  auto acc = run_sphere<EntropyAcc>(
      cfg, [&u](std::int64_t idx, const Eigen::VectorXd& theta, EntropyAcc& a) {
        const double uv = u(UnitVector(theta));
        if (uv < 0.0) {
          if (a.first_neg < 0) a.first_neg = idx;
          return;
        }
        const double ulogu = uv > 0.0 ? uv * std::log(uv) : 0.0;
        a.stats.add({uv, ulogu}, idx);
      });
  if (acc.first_neg >= 0)
    throw std::runtime_error("entropy_estimate: negative integrand value at sample index " +
                             std::to_string(acc.first_neg));
  if (acc.stats.first_bad >= 0)
    throw std::runtime_error("entropy_estimate: non-finite integrand value at sample index " +
                             std::to_string(acc.stats.first_bad));

  const double b = acc.stats.mean[0];  // E u
  const double a_ = acc.stats.mean[1]; // E u log u
  if (b <= 0.0) return {0.0, 0.0, acc.stats.count, cfg.seed};
  const double ent = a_ - b * std::log(b);
  // Ent = g(B, A) = A - B log B over joint means (B, A); delta method
  const double se = acc.stats.delta_se({-(std::log(b) + 1.0), 1.0});
  return {ent, se, acc.stats.count, cfg.seed};
}

LogExpEstimate mc_log_exp_moment(const std::function<double(const UnitVector&)>& h,
                                 const SamplerConfig& cfg) {
  auto stats = run_sphere<LogExpStats>(
      cfg, [&h](std::int64_t idx, const Eigen::VectorXd& theta, LogExpStats& acc) {
        acc.add(h(UnitVector(theta)), idx);
      });
  if (stats.first_bad >= 0)
    throw std::runtime_error("mc_log_exp_moment: non-finite exponent at sample index " +
                             std::to_string(stats.first_bad));
  LogExpEstimate est;
  est.log_mean = stats.log_mean();
  est.log_std_error = stats.log_se();
  est.mean = stats.mean();
  est.std_error = stats.se();
  est.samples = stats.count;
  est.seed = cfg.seed;
  return est;
}

namespace {

struct VecMeanAcc {
  std::int64_t count = 0;
  double mean_f = 0.0, m2_f = 0.0;
  Eigen::VectorXd mean_w, m2_w;

  void init(int n) {
    if (mean_w.size() == 0) {
      mean_w = Eigen::VectorXd::Zero(n);
      m2_w = Eigen::VectorXd::Zero(n);
    }
  }
  void add(double f, const Eigen::VectorXd& theta_f) {
    init(static_cast<int>(theta_f.size()));
    ++count;
    const double df = f - mean_f;
    mean_f += df / static_cast<double>(count);
    m2_f += df * (f - mean_f);
    for (Eigen::Index i = 0; i < theta_f.size(); ++i) {
      const double d = theta_f[i] - mean_w[i];
      mean_w[i] += d / static_cast<double>(count);
      m2_w[i] += d * (theta_f[i] - mean_w[i]);
    }
  }
  void merge(const VecMeanAcc& o) {
    if (o.count == 0) return;
    if (count == 0) {
      *this = o;
      return;
    }
    const double na = static_cast<double>(count), nb = static_cast<double>(o.count);
    const double n = na + nb;
    const double df = o.mean_f - mean_f;
    m2_f += o.m2_f + df * df * na * nb / n;
    mean_f += df * nb / n;
    for (Eigen::Index i = 0; i < mean_w.size(); ++i) {
      const double d = o.mean_w[i] - mean_w[i];
      m2_w[i] += o.m2_w[i] + d * d * na * nb / n;
      mean_w[i] += d * nb / n;
    }
    count += o.count;
  }
};

}  // namespace

VectorMeanResult vector_mean(const ScalarField& f, const SamplerConfig& cfg) {
  const int n = f.dimension();
  VectorMeanResult r;
  r.seed = cfg.seed;

  if (auto p = f.as_polynomial()) {
    r.exact = true;
    r.m = poly_sphere_integral(*p);
    r.w = Eigen::VectorXd(n);
    for (int i = 0; i < n; ++i)
      r.w[i] = poly_sphere_integral(*p * Polynomial::variable(n, i));
    r.m_std_error = 0.0;
    r.w_std_error = Eigen::VectorXd::Zero(n);
    r.samples = 0;
  } else {
    auto acc = run_sphere<VecMeanAcc>(
        cfg, [&f](std::int64_t, const Eigen::VectorXd& theta, VecMeanAcc& a) {
          const double val = f.value(theta);
          a.add(val, (val * theta).eval());
        });
    r.exact = false;
    r.m = acc.mean_f;
    r.m_std_error = acc.count > 1
                        ? std::sqrt(std::max(0.0, acc.m2_f / (acc.count - 1)) / acc.count)
                        : 0.0;
    r.w = acc.mean_w;
    r.w_std_error = Eigen::VectorXd::Zero(n);
    if (acc.count > 1)
      for (int i = 0; i < n; ++i)
        r.w_std_error[i] =
            std::sqrt(std::max(0.0, acc.m2_w[i] / (acc.count - 1)) / acc.count);
    r.samples = acc.count;
  }
  r.v = static_cast<double>(n) * r.w;
  r.correlation_i = r.w.squaredNorm();
  return r;
}

}  // namespace spherecalc

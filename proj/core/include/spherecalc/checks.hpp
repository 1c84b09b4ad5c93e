// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <functional>
#include <optional>

#include "spherecalc/check_report.hpp"
#include "spherecalc/sampling.hpp"
#include "spherecalc/scalar_field.hpp"
#include "spherecalc/spectral.hpp"

namespace spherecalc {

/// Sampled evidence for the hypotheses of the exponential-moment theorems.
/// Suprema are sampled maxima over at least 1e4 points, recorded as such;
/// b is padded by 4 standard errors when it comes from a Monte Carlo
/// integral (exact polynomial paths carry no padding).
struct HypothesisAudit {
  std::map<std::string, double> sup_norm_estimates;
  double a = 0.0;
  double b = 0.0;
  double b0 = 0.0;
  std::int64_t audit_samples = 0;
  bool ok = true;
  std::string failed_clause;

  nlohmann::json to_json() const;
};

/// Var f <= 1/(n-1) E |grad_S f|^2; exact on both sides for polynomials.
CheckReport check_poincare(FieldPtr f, const SamplerConfig& cfg);

/// Ent(f^2) <= 2/(n-1) E |grad_S f|^2 (Monte Carlo entropy, exact right side
/// for polynomials).
CheckReport check_log_sobolev(FieldPtr f, const SamplerConfig& cfg);

enum class ExpMomentVariant {
  modulus_bound,           // |grad^2_S f| <= 1 audited; log E e^{k(f-m)} <= k E|grad_S f|^2
  gradient_bound,          // log E e^{f-m} <= log E e^{|grad_S f|^2/(n-1)}
  square_bound,            // |grad_S u| <= 1, t < (n-1)/2: log E e^{t u^2} <= t/(1-2t/(n-1)) E u^2
  spherical_hessian_bound, // ||f''_S|| <= 1 audited; same bound as modulus_bound
  euclidean_hessian_bound  // ||f''|| <= 1 audited; k E |grad f|^2 on the right
};

/// Exponential-moment inequalities, log-scale comparison at 4-sigma slack.
/// Fields are re-centered automatically where the variant requires mean zero.
/// Throws std::invalid_argument when t is out of range for square_bound.
CheckReport check_exp_moment(FieldPtr f, const SamplerConfig& cfg, ExpMomentVariant variant,
                             std::optional<double> t = std::nullopt);

enum class SecondOrderBound { intrinsic_hessian, euclidean_hessian, euclidean_affine_part };

struct TheoremCheck {
  CheckReport report;
  HypothesisAudit audit;
};

/// Second-order concentration bounds: E exp(kappa |f|) <= 2 with
///   kappa = (n-1)/(2(1+b^2))         [intrinsic_hessian]
///   kappa = (n-1)/(2(1+4b^2))        [euclidean_hessian, on f'' - aI]
///   kappa = (n-1)/(4(1+b0^2+4b^2))   [euclidean_affine_part, b0 from the
///                                     affine correlation I]
/// Hypotheses are audited (sampled suprema, exact or padded integrals);
/// audit failure yields an inapplicable report naming the failed clause.
TheoremCheck check_second_order_concentration(FieldPtr f, const SamplerConfig& cfg,
                                              SecondOrderBound which,
                                              std::optional<double> a = std::nullopt);

/// E |grad f|^2 <= c/(n-1) E ||f''||_HS^2 for f orthogonal to linear
/// functions, reported against the refined constant
/// c_n = 1 + (1 + 1/sqrt(n-1))^2 with the plain c = 5 value in params.
CheckReport check_euclid_gradient_bound(FieldPtr f, const SamplerConfig& cfg);

/// E f^2 <= 5/(n-1)^2 E ||f'' - aI||_HS^2 for f orthogonal to affine functions.
CheckReport check_euclid_l2_bound(FieldPtr f, const SamplerConfig& cfg, double a);

/// Gaussian variant: E_mu f^2 <= 1/2 E_mu ||f''||_HS^2 under the standard
/// Gaussian, for f with E f = 0 and E grad f = 0 (audited).
CheckReport check_gaussian_second_order(FieldPtr f, const SamplerConfig& cfg);

struct TailScalingRow {
  int n;
  double q50;
  double q90;
  double q99;
};
struct TailScalingResult {
  std::vector<TailScalingRow> rows;
  double slope;  // least-squares slope of log median |f| against log n
};

/// Empirical quantiles of |f_n| across dimensions and the fitted log-log
/// slope of the median: ~ -1 for Hessian-normalized quadratic families,
/// ~ -1/2 for Lipschitz (linear) families.
TailScalingResult tail_scaling_report(const std::function<FieldPtr(int)>& family,
                                      const std::vector<int>& n_list,
                                      const SamplerConfig& cfg);

/// Sampled maximum of ||f''_S(theta)|| over `samples` points (audit helper,
/// also used to normalize theorem inputs).
double sampled_sup_spherical_hessian_norm(const ScalarField& f, const SamplerConfig& cfg,
                                          std::int64_t samples);

/// Number of points the hypothesis audits sample: max(1e4, samples/100).
std::int64_t audit_sample_count(const SamplerConfig& cfg);

}  // namespace spherecalc

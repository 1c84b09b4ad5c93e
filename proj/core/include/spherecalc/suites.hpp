// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#pragma once

#include <string>
#include <vector>

#include "spherecalc/check_report.hpp"
#include "spherecalc/checks.hpp"
#include "spherecalc/scalar_field.hpp"

namespace spherecalc {

struct SuiteConfig {
  int n = 10;
  std::int64_t samples = 1'000'000;
  std::uint64_t seed = 42;
  int workers = 0;

  SamplerConfig sampler() const { return {n, samples, seed, workers}; }
};

/// Pointwise differential identities and bounds of the spherical calculus,
/// each evaluated as a max residual over 50 random (field, point, vector)
/// draws. Requires n >= 3.
std::vector<CheckReport> run_identity_suite(const SuiteConfig& cfg);

/// Spectral-route checks: the Hessian-Laplacian integral identity, sharp
/// constants with their equality cases, Parseval, Green-type formulas and
/// the weaker dimension-asymptotic bounds.
std::vector<CheckReport> run_spectral_suite(const SuiteConfig& cfg);

/// Concentration inequalities: Poincare, log-Sobolev, exponential-moment
/// bounds and the three second-order concentration theorems with audited
/// hypotheses. An optional user field is run through the measure-level
/// checks in addition to the built-in set.
std::vector<CheckReport> run_concentration_suite(const SuiteConfig& cfg,
                                                 FieldPtr user_field = nullptr);

/// suite in {"identities", "spectral", "concentration", "all"}.
std::vector<CheckReport> run_suite(const std::string& suite, const SuiteConfig& cfg,
                                   FieldPtr user_field = nullptr);

/// Built-in families for the tail-scaling study: "quadratic-harmonic"
/// (Hessian-normalized), "linear", "constant".
FieldPtr scaling_family_field(const std::string& preset, int n);

}  // namespace spherecalc

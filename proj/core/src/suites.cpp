// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/suites.hpp"

#include <cmath>
#include <stdexcept>

#include "spherecalc/moments.hpp"
#include "spherecalc/rng.hpp"
#include "spherecalc/sphere_ops.hpp"

namespace spherecalc {

namespace {

SamplerConfig sub_cfg(const SuiteConfig& cfg, std::string_view row) {
  SamplerConfig c = cfg.sampler();
  c.seed = mix_seed(cfg.seed, fnv1a(row));
  return c;
}

Eigen::VectorXd draw_vector(std::uint64_t seed, std::uint64_t idx, int n) {
  SampleStream s(seed, idx);
  Eigen::VectorXd v(n);
  s.fill_gaussian(v);
  return v;
}

UnitVector draw_theta(std::uint64_t seed, std::uint64_t idx, int n) {
  return UnitVector(draw_vector(seed, idx, n));
}

// deterministic sparse polynomial with integer-friendly coefficients
Polynomial draw_polynomial(std::uint64_t seed, int n, int degree, int terms) {
  SampleStream s(seed, 0);
  Polynomial p(n);
  for (int t = 0; t < terms; ++t) {
    MultiIndex alpha(n, 0);
    const int deg = 1 + static_cast<int>(s.uniform() * degree) % degree;
    for (int k = 0; k < deg; ++k) {
      const int i = static_cast<int>(s.uniform() * n) % n;
      alpha[i] += 1;
    }
    const double c = std::round((2.0 * s.uniform() - 1.0) * 8.0) / 4.0;
    if (c != 0.0) p.add_term(alpha, c);
  }
  if (p.is_zero()) p.add_term(MultiIndex(n, 0), 1.0);
  return p;
}

struct IdentityRow {
  std::string name;
  std::string ref;
  double tol;
  double max_residual = 0.0;
};

CheckReport residual_report(const IdentityRow& row, int n, std::uint64_t seed) {
  return make_identity_report(row.name, row.ref, n, row.max_residual, 0.0, row.tol, 0.0,
                              CheckReport::Margin::exact_tol, seed);
}

void append_with_suffix(std::vector<CheckReport>& out, CheckReport r,
                        const std::string& suffix) {
  r.name += "/" + suffix;
  out.push_back(std::move(r));
}

// named built-in fields for the identity rows
struct NamedField {
  std::string label;
  FieldPtr field;
};

std::vector<NamedField> identity_fields(const SuiteConfig& cfg) {
  const int n = cfg.n;
  std::vector<NamedField> fields;
  Eigen::VectorXd v = draw_vector(mix_seed(cfg.seed, fnv1a("field-linear")), 0, n);
  v /= v.norm();
  fields.push_back({"linear", make_linear(v)});

  SampleStream qs(mix_seed(cfg.seed, fnv1a("field-quadratic")), 0);
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
  for (int i = 0; i < n; ++i) a(i, i) = 2.0 * qs.uniform() - 1.0;
  fields.push_back({"quadratic", make_quadratic(a)});

  Polynomial p(n);
  {
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    alpha[1] = 1;
    p.add_term(alpha, 1.0);  // x1^2 x2
    std::fill(alpha.begin(), alpha.end(), 0);
    alpha[1] = 1;
    alpha[2 % n] = alpha[2 % n] + 1;
    p.add_term(alpha, -0.75);
    std::fill(alpha.begin(), alpha.end(), 0);
    alpha[0] = 1;
    p.add_term(alpha, 0.5);
  }
  fields.push_back({"poly-cubic", make_polynomial(p)});

  Eigen::VectorXd x0 = draw_vector(mix_seed(cfg.seed, fnv1a("field-wave")), 0, n);
  x0 /= x0.norm();
  fields.push_back({"plane-wave", make_plane_wave(0.7, x0, WavePhase::cos)});
  return fields;
}

}  // namespace

std::vector<CheckReport> run_identity_suite(const SuiteConfig& cfg) {
  const int n = cfg.n;
  if (n < 3) throw std::invalid_argument("identity suite requires n >= 3");
  constexpr int kDraws = 50;
  std::vector<CheckReport> out;
  const auto fields = identity_fields(cfg);

  // per-field differential identities
  for (const auto& [label, f] : fields) {
    const std::uint64_t seed42 = mix_seed(cfg.seed, fnv1a("lemma-4.2/" + label));
    IdentityRow l42{"hessian-vector-identity/" + label, "4.2", 1e-8};
    IdentityRow l43{"laplacian-gradient-commutator/" + label, "4.3", 1e-7};
    IdentityRow l45{"laplacian-trace-consistency/" + label, "4.5", 1e-9};
    IdentityRow p111{"laplacian-dii-sum/" + label, "11.1", 1e-9};
    IdentityRow l112{"dij-antisymmetry-defect/" + label, "11.2", 1e-9};
    SampleStream idx_stream(seed42, 1);
    for (int k = 0; k < kDraws; ++k) {
      const UnitVector theta = draw_theta(seed42, 100 + k, n);
      const Eigen::VectorXd v = draw_vector(seed42, 1000 + k, n);

      l42.max_residual =
          std::max(l42.max_residual, hessian_vector_identity_residual(*f, theta, v));
      l43.max_residual = std::max(l43.max_residual, commutator_residual(*f, theta, v));

      const double lap = spherical_laplacian(*f, theta);
      const double tr = spherical_hessian(*f, theta).trace();
      const double scale = std::max(1.0, std::abs(lap));
      l45.max_residual = std::max(l45.max_residual, std::abs(lap - tr) / scale);

      double dii = 0.0;
      for (int i = 0; i < n; ++i) dii += d_ij(*f, theta, i, i);
      p111.max_residual = std::max(p111.max_residual, std::abs(dii - lap) / scale);

      const int i = static_cast<int>(idx_stream.uniform() * n) % n;
      const int j = static_cast<int>(idx_stream.uniform() * n) % n;
      const Eigen::VectorXd grad = f->gradient(theta.coords());
      const double defect = d_ij(*f, theta, i, j) - d_ij(*f, theta, j, i);
      const double expected = theta[i] * grad[j] - theta[j] * grad[i];
      l112.max_residual = std::max(l112.max_residual, std::abs(defect - expected));
    }
    out.push_back(residual_report(l42, n, seed42));
    out.push_back(residual_report(l43, n, seed42));
    out.push_back(residual_report(l45, n, seed42));
    out.push_back(residual_report(p111, n, seed42));
    out.push_back(residual_report(l112, n, seed42));
  }

  // homogeneous-extension formulas against finite differences
  for (const auto& [label, f] :
       {std::pair{std::string("poly-cubic"), fields[2].field},
        std::pair{std::string("plane-wave"), fields[3].field}}) {
    const std::uint64_t seed12 = mix_seed(cfg.seed, fnv1a("prop-12/" + label));
    IdentityRow grad_row{"hom-gradient-vs-fd/" + label, "12.1", 1e-5};
    IdentityRow hess_row{"hom-hessian-vs-fd/" + label, "12.2", 1e-5};
    IdentityRow lap_row{"hom-laplacian-vs-fd/" + label, "12.4", 1e-5};
    const double orders[] = {0.0, 1.0, 2.0};
    SampleStream rs(seed12, 7);
    for (int k = 0; k < kDraws; ++k) {
      const double d = orders[k % 3];
      Eigen::VectorXd x = draw_vector(seed12, 100 + k, n);
      x *= (0.8 + 0.4 * rs.uniform()) / x.norm();
      const Eigen::VectorXd v = draw_vector(seed12, 1000 + k, n);

      auto hom_value = [&](const Eigen::VectorXd& y) {
        const double r = y.norm();
        return std::pow(r, d) * f->value(y / r);
      };
      const double h = 1e-6;
      Eigen::VectorXd fd_grad(n);
      Eigen::VectorXd xp = x, xm = x;
      for (int i = 0; i < n; ++i) {
        xp[i] = x[i] + h;
        xm[i] = x[i] - h;
        fd_grad[i] = (hom_value(xp) - hom_value(xm)) / (2.0 * h);
        xp[i] = x[i];
        xm[i] = x[i];
      }
      grad_row.max_residual =
          std::max(grad_row.max_residual, (hom_gradient(*f, d, x) - fd_grad).norm());

      const double hv = 1e-5;
      const Eigen::VectorXd fd_hv =
          (hom_gradient(*f, d, x + hv * v) - hom_gradient(*f, d, x - hv * v)) / (2.0 * hv);
      hess_row.max_residual =
          std::max(hess_row.max_residual, (hom_hessian_apply(*f, d, x, v) - fd_hv).norm());

      const double hl = 1e-4;
      double fd_lap = 0.0;
      const double f0 = hom_value(x);
      for (int i = 0; i < n; ++i) {
        xp[i] = x[i] + hl;
        xm[i] = x[i] - hl;
        fd_lap += (hom_value(xp) - 2.0 * f0 + hom_value(xm)) / (hl * hl);
        xp[i] = x[i];
        xm[i] = x[i];
      }
      lap_row.max_residual =
          std::max(lap_row.max_residual, std::abs(hom_laplacian(*f, d, x) - fd_lap));
    }
    out.push_back(residual_report(grad_row, n, seed12));
    out.push_back(residual_report(hess_row, n, seed12));
    out.push_back(residual_report(lap_row, n, seed12));
  }

  // exact integral identities for polynomials
  {
    const std::uint64_t seed14 = mix_seed(cfg.seed, fnv1a("integral-identities"));
    const Polynomial p1 = draw_polynomial(mix_seed(seed14, 1), n, 3, 6);
    const Polynomial p2 = draw_polynomial(mix_seed(seed14, 2), n, 4, 6);
    const Polynomial w = draw_polynomial(mix_seed(seed14, 3), n, 2, 4);

    auto sph_grad_poly = [n](const Polynomial& p, int i) {
      return p.derivative(i) - Polynomial::variable(n, i) * p.radial_derivative();
    };
    auto lap_s_poly = [n](const Polynomial& p) {
      // ambient extension of Delta_S p, exact on the sphere
      Polynomial g = p.laplacian() - p.radial_derivative() * static_cast<double>(n - 1);
      Polynomial quad(n);
      for (int i = 0; i < n; ++i) {
        const Polynomial di = p.derivative(i);
        for (int j = 0; j < n; ++j)
          quad += di.derivative(j) * (Polynomial::variable(n, i) * Polynomial::variable(n, j));
      }
      return g - quad;
    };

    int row_i = 0;
    for (const Polynomial* p : {&p1, &p2}) {
      ++row_i;
      IdentityRow r141{"mean-vector-vs-gradient/poly" + std::to_string(row_i), "14.2", 1e-10};
      for (int i = 0; i < n; ++i) {
        const double lhs = poly_sphere_integral(*p * Polynomial::variable(n, i));
        const double rhs = poly_sphere_integral(sph_grad_poly(*p, i)) / (n - 1);
        r141.max_residual = std::max(r141.max_residual, std::abs(lhs - rhs));
      }
      out.push_back(residual_report(r141, n, seed14));
    }

    // unweighted Green formula
    {
      IdentityRow green{"green-formula/poly-pair", "4.3", 1e-9};
      Polynomial dot(n);
      for (int i = 0; i < n; ++i) dot += sph_grad_poly(p1, i) * sph_grad_poly(p2, i);
      const double lhs = poly_sphere_integral(dot);
      const double rhs = -poly_sphere_integral(p1 * lap_s_poly(p2));
      green.max_residual = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      out.push_back(residual_report(green, n, seed14));
    }

    // weighted Green formula, general weight and the linear-weight case
    for (int variant = 0; variant < 2; ++variant) {
      Polynomial weight = w;
      std::string label = "poly-weight";
      if (variant == 1) {
        const Eigen::VectorXd v = draw_vector(seed14, 55, n);
        weight = Polynomial(n);
        for (int i = 0; i < n; ++i) weight += Polynomial::variable(n, i) * v[i];
        label = "linear-weight";
      }
      IdentityRow wg{"weighted-green-formula/" + label, variant == 1 ? "4.4" : "14.3", 1e-9};
      Polynomial dot(n);
      for (int i = 0; i < n; ++i) dot += sph_grad_poly(p1, i) * sph_grad_poly(p2, i);
      const double lhs = poly_sphere_integral(dot * weight);
      Polynomial cross(n);
      for (int i = 0; i < n; ++i) cross += sph_grad_poly(p2, i) * sph_grad_poly(weight, i);
      const double rhs = -poly_sphere_integral(p1 * lap_s_poly(p2) * weight) -
                         poly_sphere_integral(p1 * cross);
      wg.max_residual = std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs));
      out.push_back(residual_report(wg, n, seed14));
    }
  }

  // pointwise structural bounds over all fields
  {
    const std::uint64_t seedb = mix_seed(cfg.seed, fnv1a("structural-bounds"));
    IdentityRow tangency{"sph-gradient-tangency", "8", 1e-10};
    IdentityRow annihilate{"sph-hessian-annihilates-theta", "8", 1e-10};
    IdentityRow idem{"projector-idempotence", "8", 1e-12};
    IdentityRow contraction{"hessian-contraction-hs", "8", 1e-12};
    IdentityRow mod_bound{"modulus-bound-euclid", "2.8", 1e-12};
    IdentityRow mod_bound_s{"modulus-bound-sph", "3.1(lem)", 1e-12};
    for (const auto& [label, f] : fields) {
      for (int k = 0; k < 25; ++k) {
        const UnitVector theta = draw_theta(mix_seed(seedb, fnv1a(label)), 100 + k, n);
        const Eigen::VectorXd& t = theta.coords();
        const Eigen::VectorXd gs = spherical_gradient(*f, theta);
        const Eigen::MatrixXd hs = spherical_hessian(*f, theta);
        tangency.max_residual = std::max(tangency.max_residual, std::abs(gs.dot(t)));
        annihilate.max_residual = std::max(annihilate.max_residual, (hs * t).norm());
        idem.max_residual =
            std::max(idem.max_residual, (gs - (gs - gs.dot(t) * t)).norm());
        Eigen::MatrixXd b = f->hessian(t);
        b.diagonal().array() -= f->gradient(t).dot(t);
        contraction.max_residual =
            std::max(contraction.max_residual, hs.norm() - b.norm());
        mod_bound.max_residual =
            std::max(mod_bound.max_residual,
                     euclidean_second_order_modulus(*f, t) - operator_norm(f->hessian(t)));
        mod_bound_s.max_residual =
            std::max(mod_bound_s.max_residual, second_order_modulus(*f, theta) - operator_norm(hs));
      }
    }
    // one-sided bounds: negative slack means satisfied
    for (IdentityRow* row : {&contraction, &mod_bound, &mod_bound_s})
      row->max_residual = std::max(0.0, row->max_residual);
    for (const IdentityRow& row : {tangency, annihilate, idem, contraction, mod_bound, mod_bound_s})
      out.push_back(residual_report(row, n, seedb));
  }

  // HS-norm sampling identity ||B||^2 = n E_v |Bv|^2
  {
    const std::uint64_t seedh = mix_seed(cfg.seed, fnv1a("hs-sampling"));
    SampleStream s(seedh, 0);
    Eigen::MatrixXd b(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j <= i; ++j) {
        b(i, j) = 2.0 * s.uniform() - 1.0;
        b(j, i) = b(i, j);
      }
    SamplerConfig mc = cfg.sampler();
    mc.seed = seedh;
    mc.samples = std::min<std::int64_t>(cfg.samples, 200'000);
    auto stats = run_sphere<MultiStats<1>>(
        mc, [&b](std::int64_t idx, const Eigen::VectorXd& v, MultiStats<1>& acc) {
          acc.add({(b * v).squaredNorm()}, idx);
        });
    const double lhs = b.squaredNorm();
    const double rhs = n * stats.mean[0];
    const double se = n * stats.se(0);
    out.push_back(make_identity_report("hs-norm-sampling-identity", "4.1(proof)", n, lhs,
                                       rhs, 4.0 * se, se, CheckReport::Margin::sigma_4,
                                       seedh));
  }

  // closed-form moments against Monte Carlo
  {
    const std::uint64_t seedm = mix_seed(cfg.seed, fnv1a("moment-vs-mc"));
    SampleStream s(seedm, 0);
    for (int rep = 0; rep < 2; ++rep) {
      MultiIndex alpha(n, 0);
      int budget = 3;
      for (int k = 0; k < budget; ++k) {
        const int i = static_cast<int>(s.uniform() * n) % n;
        alpha[i] += 2;
      }
      SamplerConfig mc = cfg.sampler();
      mc.seed = mix_seed(seedm, rep + 1);
      mc.samples = std::min<std::int64_t>(cfg.samples, 500'000);
      auto stats = run_sphere<MultiStats<1>>(
          mc, [&alpha](std::int64_t idx, const Eigen::VectorXd& theta, MultiStats<1>& acc) {
            double t = 1.0;
            for (int i = 0; i < theta.size(); ++i)
              if (alpha[i] != 0) t *= ipow(theta[i], alpha[i]);
            acc.add({t}, idx);
          });
      out.push_back(make_identity_report("moment-vs-mc/" + std::to_string(rep), "5.5(moments)",
                                         n, sphere_moment(alpha), stats.mean[0],
                                         4.0 * stats.se(0), stats.se(0),
                                         CheckReport::Margin::sigma_4, mc.seed));
    }
  }

  // eigenfunction law and decomposition reconstruction
  {
    const std::uint64_t seede = mix_seed(cfg.seed, fnv1a("eigen-law"));
    Polynomial x1x2 = Polynomial::variable(n, 0) * Polynomial::variable(n, 1);
    MultiIndex cubic(n, 0);
    cubic[0] = 3;
    const auto dec3 = harmonic_decompose(Polynomial::monomial(cubic, 1.0));
    const Polynomial* h3 = dec3.component(3);
    int row = 0;
    for (const auto& [d, h] : {std::pair{2, x1x2}, std::pair{3, *h3}}) {
      IdentityRow law{"eigenvalue-law/d" + std::to_string(d), "5.2", 1e-9};
      FieldPtr hf = make_polynomial(h);
      for (int k = 0; k < kDraws; ++k) {
        const UnitVector theta = draw_theta(mix_seed(seede, row), 100 + k, n);
        const double lap = spherical_laplacian(*hf, theta);
        const double expected = -sphere_eigenvalue(n, d) * h.evaluate(theta.coords());
        law.max_residual =
            std::max(law.max_residual,
                     std::abs(lap - expected) /
                         std::max(1.0, sphere_eigenvalue(n, d) * std::abs(h.evaluate(theta.coords()))));
      }
      out.push_back(residual_report(law, n, seede));
      ++row;
    }

    const Polynomial pr = draw_polynomial(mix_seed(seede, 77), n, 4, 8);
    const auto dec = harmonic_decompose(pr);
    IdentityRow recon{"decomposition-reconstruction", "5.2", 1e-10};
    for (int k = 0; k < 100; ++k) {
      const UnitVector theta = draw_theta(mix_seed(seede, 78), k, n);
      const double pv = pr.evaluate(theta.coords());
      recon.max_residual = std::max(
          recon.max_residual, std::abs(pv - dec.evaluate(theta.coords())) / (1.0 + std::abs(pv)));
    }
    out.push_back(residual_report(recon, n, seede));

    IdentityRow harm{"decomposition-harmonicity", "5.2", 1e-10};
    for (const auto& c : dec.components()) {
      const double scale = std::max(1.0, c.harmonic.max_abs_coefficient());
      harm.max_residual =
          std::max(harm.max_residual, c.harmonic.laplacian().max_abs_coefficient() / scale);
    }
    out.push_back(residual_report(harm, n, seede));
  }

  return out;
}

std::vector<CheckReport> run_spectral_suite(const SuiteConfig& cfg) {
  const int n = cfg.n;
  if (n < 3) throw std::invalid_argument("spectral suite requires n >= 3");
  std::vector<CheckReport> out;

  const Polynomial x1 = Polynomial::variable(n, 0);
  const Polynomial x1x2 = Polynomial::variable(n, 0) * Polynomial::variable(n, 1);
  const SpectralField f1 = SpectralField::from_polynomial(x1);
  const SpectralField f12 = SpectralField::from_polynomial(x1x2);

  append_with_suffix(out, check_hessian_laplacian_identity(f1, sub_cfg(cfg, "hess-lap-theta1"), IntegralPath::exact),
                     "theta1");
  append_with_suffix(out,
                     check_hessian_laplacian_identity(f12, sub_cfg(cfg, "hess-lap-theta1theta2"), IntegralPath::exact),
                     "theta1theta2");
  {
    Polynomial p(n);
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    alpha[1] = 1;
    p.add_term(alpha, 1.0);
    append_with_suffix(
        out,
        check_hessian_laplacian_identity(SpectralField::from_polynomial(p), sub_cfg(cfg, "hess-lap-x1x1x2"),
                       IntegralPath::exact),
        "x1^2x2");
  }
  for (int rep = 0; rep < 2; ++rep) {
    const std::string row = "hess-lap-mc-" + std::to_string(rep);
    const Polynomial p =
        draw_polynomial(mix_seed(cfg.seed, fnv1a(row)), n, rep == 0 ? 3 : 4, 6);
    SamplerConfig mc = sub_cfg(cfg, row);
    mc.samples = std::min<std::int64_t>(cfg.samples, 300'000);
    append_with_suffix(out, check_hessian_laplacian_identity(SpectralField::from_polynomial(p), mc),
                       "random-deg" + std::to_string(rep == 0 ? 3 : 4));
  }

  append_with_suffix(out,
                     check_sharp_constants(f1, SharpInequality::poincare,
                                           mix_seed(cfg.seed, fnv1a("sharp-poincare"))),
                     "theta1");
  append_with_suffix(out,
                     check_sharp_constants(f12, SharpInequality::gradient_vs_hessian,
                                           mix_seed(cfg.seed, fnv1a("sharp-grad-hess"))),
                     "theta1theta2");
  append_with_suffix(out,
                     check_sharp_constants(f1, SharpInequality::l2_vs_hessian,
                                           mix_seed(cfg.seed, fnv1a("sharp-l2-hess"))),
                     "theta1");
  append_with_suffix(out,
                     check_sharp_constants(f12, SharpInequality::l2_vs_hessian_orthogonal,
                                           mix_seed(cfg.seed, fnv1a("sharp-l2-hess-ortho"))),
                     "theta1theta2");

  // a mixed field with degree >= 2 components only: strict inequality
  Polynomial mixed = x1x2;
  {
    MultiIndex alpha(n, 0);
    alpha[0] = 3;
    Polynomial cube = Polynomial::monomial(alpha, 1.0);
    const auto dec = harmonic_decompose(cube);
    if (const Polynomial* h3 = dec.component(3)) mixed += *h3 * 0.5;
  }
  const SpectralField fm = SpectralField::from_polynomial(mixed);
  append_with_suffix(out,
                     check_sharp_constants(fm, SharpInequality::l2_vs_hessian_orthogonal,
                                           mix_seed(cfg.seed, fnv1a("sharp-l2-hess-ortho-mixed"))),
                     "mixed");

  // Parseval over a random polynomial
  {
    const std::uint64_t seedp = mix_seed(cfg.seed, fnv1a("parseval"));
    const Polynomial p = draw_polynomial(seedp, n, 4, 8);
    const SpectralField sf = SpectralField::from_polynomial(p);
    const double lhs = sf.l2_sq();
    const double rhs = integral_sq(p);
    out.push_back(make_identity_report("parseval", "5.2", n, lhs, rhs,
                                       1e-10 * std::max(1.0, std::abs(rhs)), 0.0,
                                       CheckReport::Margin::exact_tol, seedp));
  }

  // eigenvalue-bound scan: minimizers at d = 1 and d = 2
  {
    const auto table = eigen_minimization_scan(n, 6);
    out.push_back(make_identity_report("eigen-scan-d1", "5.4", n, table[0].second, 1.0, 0.0,
                                       0.0, CheckReport::Margin::exact_tol, cfg.seed));
    out.push_back(make_identity_report("eigen-scan-d2", "5.4", n, table[1].second,
                                       static_cast<double>(n + 2), 0.0, 0.0,
                                       CheckReport::Margin::exact_tol, cfg.seed));
  }

  // dimension-asymptotic chain for fields orthogonal to linear functions
  {
    const double dir = fm.dirichlet_sq();
    const double hess = fm.hess_hs_sq_spectral();
    const double l2 = fm.l2_sq();
    out.push_back(make_inequality_report("gradient-hessian-chain", "5.3", n, (n - 2) * dir,
                                         hess, 1e-9 * std::max(1.0, hess), 0.0,
                                         CheckReport::Margin::inequality_slack, cfg.seed));
    if (n >= 3)
      out.push_back(make_inequality_report(
          "l2-hessian-suboptimal", "5.3", n, l2, hess / ((n - 1.0) * (n - 2.0)),
          1e-9 * std::max(1.0, hess), 0.0, CheckReport::Margin::inequality_slack, cfg.seed));
    CheckReport ortho = make_inequality_report(
        "l2-gradient-ortho-bound", "5.6(pre)", n, l2, dir / (2.0 * n),
        1e-9 * std::max(1.0, dir), 0.0, CheckReport::Margin::inequality_slack, cfg.seed);
    if (!ortho.passed())
      ortho.note = "stated bound violated; holds for mean-zero fields with degree >= 2 only";
    out.push_back(std::move(ortho));
  }

  return out;
}

std::vector<CheckReport> run_concentration_suite(const SuiteConfig& cfg, FieldPtr user_field) {
  const int n = cfg.n;
  if (n < 3) throw std::invalid_argument("concentration suite requires n >= 3");
  std::vector<CheckReport> out;

  const FieldPtr theta1 = make_polynomial(Polynomial::variable(n, 0));
  const FieldPtr theta12 =
      make_polynomial(Polynomial::variable(n, 0) * Polynomial::variable(n, 1));
  Eigen::VectorXd x0 = draw_vector(mix_seed(cfg.seed, fnv1a("conc-wave")), 0, n);
  x0 /= x0.norm();
  const FieldPtr wave = make_plane_wave(0.8, x0, WavePhase::cos);
  const FieldPtr wave_odd = make_plane_wave(0.5, x0, WavePhase::sin);

  append_with_suffix(out, check_poincare(theta1, sub_cfg(cfg, "poincare-theta1")), "theta1");
  append_with_suffix(out, check_poincare(theta12, sub_cfg(cfg, "poincare-theta12")),
                     "theta1theta2");
  append_with_suffix(out, check_poincare(wave, sub_cfg(cfg, "poincare-wave")), "plane-wave");

  {
    Polynomial p = Polynomial::constant(n, 1.0) + Polynomial::variable(n, 0) * 0.05;
    append_with_suffix(out,
                       check_log_sobolev(make_polynomial(p), sub_cfg(cfg, "ls-perturbed")),
                       "one-plus-eps-theta1");
  }
  append_with_suffix(out, check_log_sobolev(theta12, sub_cfg(cfg, "ls-theta12")),
                     "theta1theta2");
  append_with_suffix(out, check_log_sobolev(wave, sub_cfg(cfg, "ls-wave")), "plane-wave");

  const FieldPtr half12 = make_sum({{0.5, theta12}});
  append_with_suffix(
      out, check_exp_moment(half12, sub_cfg(cfg, "em-modulus"), ExpMomentVariant::modulus_bound),
      "half-theta1theta2");
  append_with_suffix(out,
                     check_exp_moment(wave, sub_cfg(cfg, "em-gradient"), ExpMomentVariant::gradient_bound),
                     "plane-wave");
  append_with_suffix(
      out, check_exp_moment(theta1, sub_cfg(cfg, "em-square"), ExpMomentVariant::square_bound),
      "theta1");
  append_with_suffix(out,
                     check_exp_moment(half12, sub_cfg(cfg, "em-sph-hess"),
                                      ExpMomentVariant::spherical_hessian_bound),
                     "half-theta1theta2");
  append_with_suffix(out,
                     check_exp_moment(half12, sub_cfg(cfg, "em-euclid-hess"),
                                      ExpMomentVariant::euclidean_hessian_bound),
                     "half-theta1theta2");

  {
    // scale so the sampled sup of ||f''_S|| equals 1, using the same seed
    // and sample count the theorem audit will use
    SamplerConfig tc = sub_cfg(cfg, "thm-intrinsic");
    const double sup =
        sampled_sup_spherical_hessian_norm(*theta12, tc, audit_sample_count(tc));
    const FieldPtr scaled = make_sum({{1.0 / sup, theta12}});
    append_with_suffix(out, check_second_order_concentration(scaled, tc, SecondOrderBound::intrinsic_hessian).report,
                       "normalized-theta1theta2");
  }
  append_with_suffix(out,
                     check_second_order_concentration(wave, sub_cfg(cfg, "thm-euclid"), SecondOrderBound::euclidean_hessian).report,
                     "plane-wave");
  append_with_suffix(
      out, check_second_order_concentration(wave_odd, sub_cfg(cfg, "thm-affine"), SecondOrderBound::euclidean_affine_part).report,
      "odd-plane-wave");

  {
    Polynomial p(n);
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    p.add_term(alpha, 1.0);
    p -= Polynomial::constant(n, 1.0 / n);
    append_with_suffix(out,
                       check_euclid_gradient_bound(make_polynomial(p), sub_cfg(cfg, "egb-quad")),
                       "theta1sq-centered");
  }
  append_with_suffix(out, check_euclid_gradient_bound(wave, sub_cfg(cfg, "egb-wave")), "plane-wave");

  append_with_suffix(out, check_euclid_l2_bound(theta12, sub_cfg(cfg, "elb-a0"), 0.0),
                     "theta1theta2-a0");
  {
    Polynomial p(n);
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    p.add_term(alpha, 1.0);
    const double a = poly_sphere_integral(p.laplacian()) / n;
    append_with_suffix(out,
                       check_euclid_l2_bound(make_polynomial(p), sub_cfg(cfg, "elb-diag"), a),
                       "theta1sq-mean-diagonal");
  }

  append_with_suffix(
      out, check_gaussian_second_order(theta12, sub_cfg(cfg, "gauss-12")), "x1x2");
  {
    Polynomial p(n);
    MultiIndex alpha(n, 0);
    alpha[0] = 2;
    p.add_term(alpha, 1.0 / std::sqrt(2.0));
    p -= Polynomial::constant(n, 1.0 / std::sqrt(2.0));
    append_with_suffix(out,
                       check_gaussian_second_order(make_polynomial(p), sub_cfg(cfg, "gauss-h2")),
                       "hermite2");
  }

  if (user_field) {
    append_with_suffix(out, check_poincare(user_field, sub_cfg(cfg, "user-poincare")), "user");
    append_with_suffix(out, check_log_sobolev(user_field, sub_cfg(cfg, "user-ls")), "user");
    append_with_suffix(
        out,
        check_exp_moment(user_field, sub_cfg(cfg, "user-em"), ExpMomentVariant::gradient_bound),
        "user");
  }

  return out;
}

std::vector<CheckReport> run_suite(const std::string& suite, const SuiteConfig& cfg,
                                   FieldPtr user_field) {
  if (suite == "identities") return run_identity_suite(cfg);
  if (suite == "spectral") return run_spectral_suite(cfg);
  if (suite == "concentration") return run_concentration_suite(cfg, user_field);
  if (suite == "all") {
    std::vector<CheckReport> out = run_identity_suite(cfg);
    auto spectral = run_spectral_suite(cfg);
    out.insert(out.end(), std::make_move_iterator(spectral.begin()),
               std::make_move_iterator(spectral.end()));
    auto conc = run_concentration_suite(cfg, user_field);
    out.insert(out.end(), std::make_move_iterator(conc.begin()),
               std::make_move_iterator(conc.end()));
    return out;
  }
  throw std::invalid_argument("unknown suite '" + suite + "'");
}

FieldPtr scaling_family_field(const std::string& preset, int n) {
  if (preset == "quadratic-harmonic" || preset == "quadratic") {
    // Hessian has unit operator norm; the restriction is the quadratic
    // harmonic theta_1 theta_2
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a(0, 1) = 1.0;
    a(1, 0) = 1.0;
    return make_quadratic(a);
  }
  if (preset == "linear") {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
    v[0] = 1.0;
    return make_linear(v);
  }
  // the constant member is centered, so its deviations are identically zero
  if (preset == "constant") return make_constant(n, 0.0);
  throw std::invalid_argument("unknown scaling family '" + preset + "'");
}

}  // namespace spherecalc

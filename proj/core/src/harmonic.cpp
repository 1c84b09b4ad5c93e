// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include "spherecalc/harmonic.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace spherecalc {

HarmonicDecomposition::HarmonicDecomposition(int dimension,
                                             std::vector<HarmonicComponent> components)
    : dim_(dimension), components_(std::move(components)) {
  std::sort(components_.begin(), components_.end(),
            [](const HarmonicComponent& a, const HarmonicComponent& b) {
              return a.degree < b.degree;
            });
  for (std::size_t i = 1; i < components_.size(); ++i)
    if (components_[i].degree == components_[i - 1].degree)
      throw std::invalid_argument("HarmonicDecomposition: duplicate degree");
}

const Polynomial* HarmonicDecomposition::component(int degree) const {
  for (const auto& c : components_)
    if (c.degree == degree) return &c.harmonic;
  return nullptr;
}

int HarmonicDecomposition::max_degree() const {
  return components_.empty() ? 0 : components_.back().degree;
}

double HarmonicDecomposition::evaluate(const Eigen::VectorXd& theta) const {
  double s = 0.0;
  for (const auto& c : components_) s += c.harmonic.evaluate(theta);
  return s;
}

nlohmann::json HarmonicDecomposition::to_json() const {
  nlohmann::json comps = nlohmann::json::array();
  for (const auto& c : components_)
    comps.push_back({{"degree", c.degree}, {"harmonic", c.harmonic.to_json()}});
  return {{"n", dim_}, {"components", comps}};
}

double sphere_eigenvalue(int n, int d) {
  return static_cast<double>(d) * static_cast<double>(n + d - 2);
}

namespace detail {

std::vector<std::pair<int, Polynomial>> decompose_homogeneous(const Polynomial& p_m, int m) {
  const int n = p_m.dimension();
  if (m <= 1) return {{0, p_m}};

  // g = Lap(p_m) is homogeneous of degree m-2. We need q of degree m-2 with
  // Lap(p_m - |x|^2 q) = 0. Expanding q over harmonics, q = sum |x|^{2j} q_d,
  // the map q -> Lap(|x|^2 q) is diagonal:
  //   Lap(|x|^{2J} h_d) = 2J (2d + n + 2J - 2) |x|^{2J-2} h_d,
  // so decomposing g recursively and dividing each piece by its eigenvalue
  // solves the system exactly.
  Polynomial g = p_m.laplacian();
  if (g.is_zero()) return {{0, p_m}};

  const auto g_parts = decompose_homogeneous(g, m - 2);

  Polynomial r2 = Polynomial::radius_sq(n);
  Polynomial q(n);
  std::vector<std::pair<int, Polynomial>> result;
  for (const auto& [j, gd] : g_parts) {
    const int d = m - 2 - 2 * j;  // harmonic degree of this piece of g
    const int J = j + 1;
    const double mu = 2.0 * J * (2.0 * d + n + 2.0 * J - 2.0);
    Polynomial piece = gd * (1.0 / mu);
    // accumulate q = sum |x|^{2j} piece
    Polynomial pw = piece;
    for (int k = 0; k < j; ++k) pw = pw * r2;
    q += pw;
    result.emplace_back(J, std::move(piece));
  }
  Polynomial h_m = p_m - r2 * q;
  h_m.prune_relative(1e-14);
  result.emplace_back(0, std::move(h_m));
  return result;
}

}  // namespace detail

HarmonicDecomposition harmonic_decompose(const Polynomial& p, int max_degree) {
  const int n = p.dimension();
  if (n > 30) throw std::invalid_argument("harmonic_decompose: dimension guard n <= 30 exceeded");
  const int deg = p.degree();
  if (deg > max_degree)
    throw std::invalid_argument("harmonic_decompose: degree guard exceeded");

  std::map<int, Polynomial> by_degree;
  for (int m = 0; m <= deg; ++m) {
    Polynomial pm = p.homogeneous_part(m);
    if (pm.is_zero()) continue;
    for (auto& [j, h] : detail::decompose_homogeneous(pm, m)) {
      const int d = m - 2 * j;
      auto it = by_degree.find(d);
      if (it == by_degree.end())
        by_degree.emplace(d, std::move(h));
      else
        it->second += h;
    }
  }

  std::vector<HarmonicComponent> comps;
  for (auto& [d, h] : by_degree) {
    h.prune_relative(1e-14);
    if (h.is_zero()) continue;
    comps.push_back({d, std::move(h)});
  }
  return HarmonicDecomposition(n, std::move(comps));
}

}  // namespace spherecalc

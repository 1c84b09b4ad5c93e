// Copyright (c) 2026 spherecalc developers
// SPDX-License-Identifier: Apache-2.0

#include <cctype>
#include <charconv>
#include <stdexcept>
#include <string>
#include <vector>

#include "spherecalc/scalar_field.hpp"

namespace spherecalc {

namespace {

[[noreturn]] void bad_spec(const std::string& what) {
  throw std::invalid_argument("field spec: " + what);
}

Eigen::VectorXd json_vector(const nlohmann::json& j) {
  std::vector<double> v = j.get<std::vector<double>>();
  return Eigen::Map<const Eigen::VectorXd>(v.data(), static_cast<Eigen::Index>(v.size()));
}

Eigen::MatrixXd json_matrix(const nlohmann::json& j) {
  const auto rows = j.get<std::vector<std::vector<double>>>();
  if (rows.empty()) bad_spec("empty matrix");
  Eigen::MatrixXd m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) bad_spec("ragged matrix");
    for (std::size_t k = 0; k < rows[i].size(); ++k) m(i, k) = rows[i][k];
  }
  return m;
}

// Splits "a,b,c" outside parentheses.
std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  int depth = 0;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

double parse_number(const std::string& s) {
  try {
    std::size_t pos = 0;
    const double v = std::stod(s, &pos);
    if (pos != s.size()) bad_spec("trailing characters in number '" + s + "'");
    return v;
  } catch (const std::invalid_argument&) {
    bad_spec("expected a number, got '" + s + "'");
  } catch (const std::out_of_range&) {
    bad_spec("number out of range: '" + s + "'");
  }
}

Eigen::VectorXd parse_vector_text(const std::string& raw, int n) {
  std::string s = raw;
  if (!s.empty() && s.front() == '(' && s.back() == ')') s = s.substr(1, s.size() - 2);
  if (s.size() >= 2 && s[0] == 'e') {
    // basis vector e<k>, 1-based
    int k = 0;
    auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), k);
    if (ec == std::errc() && p == s.data() + s.size()) {
      if (k < 1 || k > n) bad_spec("basis index out of range in '" + raw + "'");
      Eigen::VectorXd e = Eigen::VectorXd::Zero(n);
      e[k - 1] = 1.0;
      return e;
    }
  }
  const auto parts = split(s, ',');
  if (static_cast<int>(parts.size()) > n) bad_spec("vector longer than dimension");
  Eigen::VectorXd v = Eigen::VectorXd::Zero(n);
  for (std::size_t i = 0; i < parts.size(); ++i) v[static_cast<int>(i)] = parse_number(parts[i]);
  return v;
}

// One '*'-separated product of factors: number, x<k>, x<k>^e, or r2 (=|x|^2).
// Returns the product as a polynomial.
Polynomial parse_poly_term(const std::string& term, int n) {
  Polynomial p = Polynomial::constant(n, 1.0);
  for (const std::string& f : split(term, '*')) {
    if (f.empty()) bad_spec("empty factor in '" + term + "'");
    if (f == "r2") {
      p = p * Polynomial::radius_sq(n);
      continue;
    }
    if (f[0] == 'x') {
      const auto caret = f.find('^');
      const std::string idx_s = f.substr(1, caret == std::string::npos ? std::string::npos : caret - 1);
      int idx = 0;
      auto [ptr, ec] = std::from_chars(idx_s.data(), idx_s.data() + idx_s.size(), idx);
      if (ec != std::errc() || ptr != idx_s.data() + idx_s.size())
        bad_spec("bad variable '" + f + "'");
      if (idx < 1 || idx > n) bad_spec("variable index out of range in '" + f + "'");
      int e = 1;
      if (caret != std::string::npos) {
        const std::string exp_s = f.substr(caret + 1);
        auto [p2, ec2] = std::from_chars(exp_s.data(), exp_s.data() + exp_s.size(), e);
        if (ec2 != std::errc() || p2 != exp_s.data() + exp_s.size() || e < 0)
          bad_spec("bad exponent in '" + f + "'");
      }
      MultiIndex alpha(n, 0);
      alpha[idx - 1] = e;
      p = p * Polynomial::monomial(alpha, 1.0);
    } else {
      p = p * parse_number(f);
    }
  }
  return p;
}

Polynomial parse_poly_expr(const std::string& expr, int n) {
  // split into signed terms at top-level + and - (not inside exponents)
  Polynomial p(n);
  std::string cur;
  std::vector<std::pair<double, std::string>> terms;
  double sign = 1.0;
  for (std::size_t i = 0; i < expr.size(); ++i) {
    const char c = expr[i];
    if ((c == '+' || c == '-') && i > 0 && expr[i - 1] != '*' && expr[i - 1] != '^' &&
        expr[i - 1] != 'e' && expr[i - 1] != 'E') {
      if (!cur.empty()) terms.emplace_back(sign, cur);
      cur.clear();
      sign = (c == '-') ? -1.0 : 1.0;
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) terms.emplace_back(sign, cur);
  if (terms.empty()) bad_spec("empty polynomial expression");
  for (const auto& [s, t] : terms) p += parse_poly_term(t, n) * s;
  return p;
}

}  // namespace

FieldPtr parse_field_json(const nlohmann::json& spec) {
  if (!spec.is_object() || !spec.contains("kind")) bad_spec("missing \"kind\"");
  const std::string kind = spec.at("kind").get<std::string>();
  if (kind == "linear") {
    return make_linear(json_vector(spec.at("v")));
  }
  if (kind == "quadratic") {
    if (spec.contains("diag")) {
      const Eigen::VectorXd d = json_vector(spec.at("diag"));
      Eigen::MatrixXd a = Eigen::MatrixXd::Zero(d.size(), d.size());
      a.diagonal() = d;
      return make_quadratic(a);
    }
    return make_quadratic(json_matrix(spec.at("a")));
  }
  if (kind == "polynomial") {
    return make_polynomial(Polynomial::from_json(spec.at("p")));
  }
  if (kind == "plane_wave") {
    const double t = spec.at("t").get<double>();
    const Eigen::VectorXd x0 = json_vector(spec.at("x0"));
    const std::string ph = spec.at("phase").get<std::string>();
    if (ph != "cos" && ph != "sin") bad_spec("phase must be cos or sin");
    const double amp = spec.value("amplitude", 1.0);
    return make_plane_wave(t, x0, ph == "cos" ? WavePhase::cos : WavePhase::sin, amp);
  }
  if (kind == "scaled_shifted") {
    FieldPtr inner = parse_field_json(spec.at("f"));
    return make_scaled_shifted(std::move(inner), spec.value("c", 1.0), spec.value("a", 0.0));
  }
  if (kind == "constant") {
    return make_constant(spec.at("n").get<int>(), spec.at("c").get<double>());
  }
  bad_spec("unknown field kind '" + kind + "'");
}

FieldPtr parse_field_preset(const std::string& text, int n) {
  if (!text.empty() && text.front() == '{') return parse_field_json(nlohmann::json::parse(text));
  const auto colon = text.find(':');
  const std::string kind = text.substr(0, colon);
  const std::string rest = colon == std::string::npos ? "" : text.substr(colon + 1);

  // key=value pairs separated by commas; a segment without '=' is part of
  // the previous value ("diag=2,-2" stays one pair)
  std::vector<std::string> pairs;
  for (const std::string& seg : split(rest, ',')) {
    if (seg.find('=') == std::string::npos && !pairs.empty())
      pairs.back() += "," + seg;
    else
      pairs.push_back(seg);
  }
  auto keyed = [&](const std::string& key) -> std::string {
    for (const std::string& kv : pairs) {
      const auto eq = kv.find('=');
      if (eq != std::string::npos && kv.substr(0, eq) == key) return kv.substr(eq + 1);
    }
    bad_spec("missing key '" + key + "' in '" + text + "'");
  };

  if (kind == "linear") return make_linear(parse_vector_text(keyed("v"), n));
  if (kind == "quadratic") {
    const Eigen::VectorXd d = parse_vector_text(keyed("diag"), n);
    Eigen::MatrixXd a = Eigen::MatrixXd::Zero(n, n);
    a.diagonal() = d;
    return make_quadratic(a);
  }
  if (kind == "poly") return make_polynomial(parse_poly_expr(rest, n));
  if (kind == "plane_wave") {
    const std::string ph = keyed("phase");
    if (ph != "cos" && ph != "sin") bad_spec("phase must be cos or sin");
    return make_plane_wave(parse_number(keyed("t")), parse_vector_text(keyed("x0"), n),
                           ph == "cos" ? WavePhase::cos : WavePhase::sin);
  }
  if (kind == "const") return make_constant(n, parse_number(rest));
  bad_spec("unknown preset '" + text + "'");
}

Eigen::VectorXd parse_point(const std::string& text, int n) {
  return parse_vector_text(text, n);
}

}  // namespace spherecalc

#include "critport/polynomial.h"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <numeric>
#include <sstream>

#include "critport/text_format.h"

namespace critport {

namespace {

constexpr double kPi = 3.14159265358979323846;

Complex horner(const std::vector<Complex> &c, Complex z) {
  Complex acc = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    acc = acc * z + *it;
  }
  return acc;
}

// p(z) and p'(z) in one pass.
std::pair<Complex, Complex> horner2(const std::vector<Complex> &c, Complex z) {
  Complex p = 0;
  Complex dp = 0;
  for (auto it = c.rbegin(); it != c.rend(); ++it) {
    dp = dp * z + p;
    p = p * z + *it;
  }
  return {p, dp};
}

std::size_t find_root(std::vector<std::size_t> &parent, std::size_t i) {
  while (parent[i] != i) {
    parent[i] = parent[parent[i]];
    i = parent[i];
  }
  return i;
}

}  // namespace

std::vector<Complex> polynomial_roots(const std::vector<Complex> &coeffs, double cluster_tol) {
  std::vector<Complex> c = coeffs;
  while (!c.empty() && c.back() == Complex(0)) {
    c.pop_back();
  }
  if (c.size() < 2) {
    throw RootError("polynomial has no roots to find");
  }
  const Complex lead = c.back();
  for (auto &x : c) {
    x /= lead;
  }
  const std::size_t n = c.size() - 1;
  if (n == 1) {
    return {-c[0]};
  }

  // Start on a circle around the centroid of the roots, radius from the
  // Fujiwara-style bound of the shifted polynomial.
  const Complex center = -c[n - 1] / static_cast<double>(n);
  double radius = 0;
  for (std::size_t k = 0; k < n; ++k) {
    radius = std::max(radius, std::pow(std::abs(c[k]), 1.0 / static_cast<double>(n - k)));
  }
  radius = std::max(2 * radius, 1e-3);
  std::vector<Complex> z(n);
  for (std::size_t k = 0; k < n; ++k) {
    z[k] = center + std::polar(radius, 2 * kPi * static_cast<double>(k) / static_cast<double>(n) + 0.4);
  }

  bool converged = false;
  for (int iter = 0; iter < 1000 && !converged; ++iter) {
    converged = true;
    for (std::size_t i = 0; i < n; ++i) {
      auto [p, dp] = horner2(c, z[i]);
      if (p == Complex(0)) {
        continue;
      }
      Complex ratio = p / dp;
      Complex s = 0;
      for (std::size_t j = 0; j < n; ++j) {
        if (j != i) {
          s += 1.0 / (z[i] - z[j]);
        }
      }
      Complex step = ratio / (1.0 - ratio * s);
      if (!std::isfinite(step.real()) || !std::isfinite(step.imag())) {
        step = ratio;
      }
      z[i] -= step;
      if (std::abs(step) > 1e-15 * std::max(1.0, std::abs(z[i]))) {
        converged = false;
      }
    }
  }

  double scale = 1.0;
  for (const auto &r : z) {
    scale = std::max(scale, std::abs(r));
  }
  for (auto &r : z) {
    for (int k = 0; k < 3; ++k) {
      auto [p, dp] = horner2(c, r);
      if (std::abs(dp) < 1e-300) {
        break;
      }
      Complex next = r - p / dp;
      if (std::abs(horner(c, next)) >= std::abs(p)) {
        break;
      }
      r = next;
    }
  }

  // Merge clusters: a multiple root is better estimated by the mean.
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(z[i] - z[j]) < cluster_tol * scale) {
        parent[find_root(parent, i)] = find_root(parent, j);
      }
    }
  }
  std::vector<Complex> sum(n, 0);
  std::vector<int> count(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    sum[find_root(parent, i)] += z[i];
    ++count[find_root(parent, i)];
  }
  // A cluster of m roots sits near a simple root of the (m-1)th derivative;
  // polishing the mean there recovers the multiple root to full precision.
  std::vector<Complex> centre(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (find_root(parent, i) != i) {
      continue;
    }
    Complex mean = sum[i] / static_cast<double>(count[i]);
    if (count[i] > 1) {
      std::vector<Complex> dc = c;
      for (int k = 1; k < count[i]; ++k) {
        for (std::size_t j = 1; j < dc.size(); ++j) {
          dc[j - 1] = dc[j] * static_cast<double>(j);
        }
        dc.pop_back();
      }
      for (int k = 0; k < 8; ++k) {
        auto [p, dp] = horner2(dc, mean);
        if (std::abs(dp) < 1e-300) {
          break;
        }
        Complex next = mean - p / dp;
        if (std::abs(horner(dc, next)) >= std::abs(p)) {
          break;
        }
        mean = next;
      }
    }
    centre[i] = mean;
  }
  for (std::size_t i = 0; i < n; ++i) {
    z[i] = centre[find_root(parent, i)];
  }

  if (!converged) {
    double size = 0;
    for (const auto &x : c) {
      size += std::abs(x) * std::pow(scale, static_cast<double>(&x - c.data()));
    }
    for (const auto &r : z) {
      if (std::abs(horner(c, r)) > 1e-8 * size) {
        throw RootError("root finder did not converge");
      }
    }
  }
  return z;
}

Polynomial::Polynomial(std::vector<Complex> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 3) {
    throw std::invalid_argument("polynomial degree must be at least 2");
  }
  if (coeffs_.back() != Complex(1)) {
    throw std::invalid_argument("polynomial must be monic");
  }
  if (coeffs_[coeffs_.size() - 2] != Complex(0)) {
    throw std::invalid_argument("polynomial must be centered (no z^(d-1) term)");
  }
}

Polynomial Polynomial::unicritical(int d, Complex c) {
  std::vector<Complex> coeffs(static_cast<std::size_t>(d) + 1, 0);
  coeffs[0] = c;
  coeffs[d] = 1;
  return Polynomial(std::move(coeffs));
}

namespace {

double parse_real(std::string_view s, std::string_view whole) {
  double v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw FormatError("malformed number '" + std::string(s) + "' in polynomial '" + std::string(whole) + "'");
  }
  return v;
}

// A coefficient without its sign: "", "2.5", "2.5i", "i", "(a+bi)".
Complex parse_coefficient(std::string_view s, std::string_view whole) {
  if (s.empty()) {
    return 1;
  }
  if (s.front() == '(') {
    if (s.back() != ')') {
      throw FormatError("unbalanced parenthesis in polynomial '" + std::string(whole) + "'");
    }
    std::string_view inner = s.substr(1, s.size() - 2);
    Complex total = 0;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= inner.size(); ++i) {
      bool split = i == inner.size() ||
                   ((inner[i] == '+' || inner[i] == '-') && inner[i - 1] != 'e' && inner[i - 1] != 'E');
      if (split) {
        std::string_view term = inner.substr(start, i - start);
        double sign = 1;
        if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
          sign = term.front() == '-' ? -1 : 1;
          term.remove_prefix(1);
        }
        total += sign * parse_coefficient(term, whole);
        start = i;
      }
    }
    return total;
  }
  if (s.back() == 'i') {
    s.remove_suffix(1);
    if (!s.empty() && s.back() == '*') {
      s.remove_suffix(1);
    }
    return Complex(0, s.empty() ? 1.0 : parse_real(s, whole));
  }
  return parse_real(s, whole);
}

}  // namespace

Polynomial Polynomial::parse(std::string_view text) {
  std::string s;
  for (char ch : text) {
    if (!std::isspace(static_cast<unsigned char>(ch))) {
      s += ch;
    }
  }
  if (s.empty()) {
    throw FormatError("empty polynomial");
  }

  // Split into signed terms at top-level +/-, skipping exponent signs.
  std::vector<std::string> terms;
  int depth = 0;
  std::size_t start = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    char ch = s[i];
    if (ch == '(') {
      ++depth;
    } else if (ch == ')') {
      --depth;
    } else if ((ch == '+' || ch == '-') && depth == 0 && i > start &&
               !(std::tolower(static_cast<unsigned char>(s[i - 1])) == 'e' && i >= 2 &&
                 std::isdigit(static_cast<unsigned char>(s[i - 2])))) {
      terms.push_back(s.substr(start, i - start));
      start = i;
    }
  }
  terms.push_back(s.substr(start));
  if (depth != 0) {
    throw FormatError("unbalanced parenthesis in polynomial '" + std::string(text) + "'");
  }

  std::vector<Complex> coeffs;
  for (std::string_view term : terms) {
    double sign = 1;
    if (!term.empty() && (term.front() == '+' || term.front() == '-')) {
      sign = term.front() == '-' ? -1 : 1;
      term.remove_prefix(1);
    }
    if (term.empty()) {
      throw FormatError("empty term in polynomial '" + std::string(text) + "'");
    }
    std::size_t power = 0;
    std::string_view coef = term;
    auto zpos = term.find('z');
    if (zpos != std::string_view::npos) {
      coef = term.substr(0, zpos);
      std::string_view rest = term.substr(zpos + 1);
      power = 1;
      if (!rest.empty()) {
        if (rest.front() != '^' || rest.size() < 2 ||
            !std::all_of(rest.begin() + 1, rest.end(), [](char c) { return c >= '0' && c <= '9'; })) {
          throw FormatError("malformed power in polynomial '" + std::string(text) + "'");
        }
        power = std::stoul(std::string(rest.substr(1)));
      }
      if (!coef.empty() && coef.back() == '*') {
        coef.remove_suffix(1);
      }
      if (coef.find('z') != std::string_view::npos) {
        throw FormatError("malformed term in polynomial '" + std::string(text) + "'");
      }
    } else if (coef.empty()) {
      throw FormatError("empty term in polynomial '" + std::string(text) + "'");
    }
    if (power > 64) {
      throw FormatError("degree too large in polynomial '" + std::string(text) + "'");
    }
    if (coeffs.size() <= power) {
      coeffs.resize(power + 1, 0);
    }
    coeffs[power] += sign * parse_coefficient(coef, text);
  }
  while (coeffs.size() > 1 && coeffs.back() == Complex(0)) {
    coeffs.pop_back();
  }
  if (coeffs.size() < 3) {
    throw FormatError("polynomial '" + std::string(text) + "' has degree below 2");
  }
  if (coeffs.back() != Complex(1)) {
    throw FormatError("polynomial '" + std::string(text) + "' is not monic");
  }
  if (coeffs[coeffs.size() - 2] != Complex(0)) {
    throw FormatError("polynomial '" + std::string(text) + "' is not centered");
  }
  return Polynomial(std::move(coeffs));
}

Complex Polynomial::operator()(Complex z) const { return horner(coeffs_, z); }

Complex Polynomial::derivative(Complex z) const { return horner2(coeffs_, z).second; }

std::vector<Complex> Polynomial::preimages(Complex w) const {
  std::vector<Complex> c = coeffs_;
  c[0] -= w;
  return polynomial_roots(c);
}

std::vector<Complex> Polynomial::critical_points() const {
  std::vector<Complex> dc;
  for (std::size_t k = 1; k < coeffs_.size(); ++k) {
    dc.push_back(coeffs_[k] * static_cast<double>(k));
  }
  return polynomial_roots(dc);
}

bool Polynomial::is_unicritical() const {
  for (std::size_t k = 1; k + 1 < coeffs_.size(); ++k) {
    if (coeffs_[k] != Complex(0)) {
      return false;
    }
  }
  return true;
}

std::string Polynomial::str() const {
  std::ostringstream out;
  out.precision(17);
  out << "z^" << degree();
  for (int k = degree() - 2; k >= 0; --k) {
    Complex a = coeffs_[k];
    if (a == Complex(0)) {
      continue;
    }
    if (a.imag() == 0) {
      out << (a.real() < 0 ? " - " : " + ") << std::abs(a.real());
    } else {
      out << " + (" << a.real() << (a.imag() < 0 ? "-" : "+") << std::abs(a.imag()) << "i)";
    }
    if (k == 1) {
      out << "*z";
    } else if (k > 1) {
      out << "*z^" << k;
    }
  }
  return out.str();
}

}  // namespace critport

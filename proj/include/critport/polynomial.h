#pragma once

// Monic centered complex polynomials z^d + a_{d-2} z^{d-2} + ... + a_0 and a
// simultaneous root finder.

#include <complex>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace critport {

using Complex = std::complex<double>;

class RootError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class Polynomial {
 public:
  /// coeffs[k] multiplies z^k. coeffs.back() must be 1 and coeffs[d-1] 0.
  explicit Polynomial(std::vector<Complex> coeffs);

  /// z^d + c.
  static Polynomial unicritical(int d, Complex c);

  /// Accepts e.g. "z^3 - 2.25 z + 0.4330127", "z^3 + 0.2203+1.1863i",
  /// "z^2 + (1-2i)*z". Whitespace is ignored. Throws FormatError.
  static Polynomial parse(std::string_view text);

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Complex> &coeffs() const { return coeffs_; }

  Complex operator()(Complex z) const;
  Complex derivative(Complex z) const;

  /// All d roots of f(z) = w.
  std::vector<Complex> preimages(Complex w) const;

  /// The d - 1 roots of f', with multiplicity.
  std::vector<Complex> critical_points() const;

  /// True iff only the constant term is nonzero below z^d.
  bool is_unicritical() const;

  std::string str() const;

 private:
  std::vector<Complex> coeffs_;
};

/// Roots of sum coeffs[k] z^k (leading coefficient nonzero), by Aberth
/// iteration with a Newton polish. Roots closer than cluster_tol (relative
/// to the root scale) are replaced by their mean, so a multiple root comes
/// back as exact duplicates. Throws RootError when the iteration stalls.
std::vector<Complex> polynomial_roots(const std::vector<Complex> &coeffs, double cluster_tol = 1e-6);

}  // namespace critport

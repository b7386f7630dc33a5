#include <gtest/gtest.h>

#include <random>

#include "critport/polynomial.h"
#include "critport/text_format.h"

using namespace critport;

TEST(Polynomial, Parse) {
  const auto f = Polynomial::parse("z^3 - 2.25z + 0.4330127");
  ASSERT_EQ(f.degree(), 3);
  EXPECT_EQ(f.coeffs()[1], Complex(-2.25, 0));
  EXPECT_EQ(f.coeffs()[0], Complex(0.4330127, 0));

  const auto g = Polynomial::parse("z^3 + 0.2203+1.1863i");
  EXPECT_EQ(g.coeffs()[0], Complex(0.2203, 1.1863));
  EXPECT_TRUE(g.is_unicritical());
  EXPECT_FALSE(f.is_unicritical());

  const auto h = Polynomial::parse("z^2 + (1-2i)");
  EXPECT_EQ(h.coeffs()[0], Complex(1, -2));
  EXPECT_EQ(Polynomial::parse("z^4 + i*z^2 - 3").coeffs()[2], Complex(0, 1));
  EXPECT_EQ(Polynomial::parse(" z ^ 2 - 1e-3 ").coeffs()[0], Complex(-1e-3, 0));
}

TEST(Polynomial, ParseErrors) {
  EXPECT_THROW(Polynomial::parse(""), FormatError);
  EXPECT_THROW(Polynomial::parse("2z^2 + 1"), FormatError);
  EXPECT_THROW(Polynomial::parse("z^2 + z"), FormatError);
  EXPECT_THROW(Polynomial::parse("z + 1"), FormatError);
  EXPECT_THROW(Polynomial::parse("z^2 + (1+i"), FormatError);
  EXPECT_THROW(Polynomial::parse("z^2 + q"), FormatError);
  EXPECT_THROW(Polynomial({Complex(1), Complex(1)}), std::invalid_argument);
}

TEST(Polynomial, StrRoundTrip) {
  for (const char *text : {"z^3 - 2.25z + 0.4330127", "z^3 + 0.2203+1.1863i", "z^5 + (1-2i)*z^3 - 7"}) {
    const auto f = Polynomial::parse(text);
    EXPECT_EQ(Polynomial::parse(f.str()).coeffs(), f.coeffs()) << f.str();
  }
}

TEST(Polynomial, EvaluationAndDerivative) {
  const auto f = Polynomial::unicritical(3, Complex(1, 1));
  const Complex z(0.5, -2);
  EXPECT_LT(std::abs(f(z) - (z * z * z + Complex(1, 1))), 1e-14);
  EXPECT_LT(std::abs(f.derivative(z) - 3.0 * z * z), 1e-14);
}

TEST(Roots, SimpleAndMultiple) {
  // (z - 1)(z + 2)(z - i) expanded.
  const std::vector<Complex> c{Complex(0, 2), Complex(-2, -1), Complex(1, -1), Complex(1)};
  auto r = polynomial_roots(c);
  ASSERT_EQ(r.size(), 3u);
  for (Complex expected : {Complex(1), Complex(-2), Complex(0, 1)}) {
    double best = 1;
    for (auto x : r) best = std::min(best, std::abs(x - expected));
    EXPECT_LT(best, 1e-13);
  }
  // (z - a)^2 (z + 2a) with a = sqrt(3)/2: the double root comes back twice.
  const double a = std::sqrt(3.0) / 2;
  r = polynomial_roots({2 * a * a * a, -3 * a * a, 0, 1});
  int at_a = 0;
  for (auto x : r) at_a += std::abs(x - a) < 1e-14;
  EXPECT_EQ(at_a, 2);
}

TEST(RootsProperty, RandomRootsAreRecovered) {
  std::mt19937 rng(21);
  std::normal_distribution<double> n(0, 1);
  for (int trial = 0; trial < 200; ++trial) {
    const int deg = 2 + trial % 7;
    std::vector<Complex> roots(deg);
    for (auto &x : roots) x = Complex(n(rng), n(rng));
    std::vector<Complex> c{Complex(1)};
    for (auto x : roots) {
      std::vector<Complex> next(c.size() + 1);
      for (std::size_t i = 0; i < c.size(); ++i) {
        next[i + 1] += c[i];
        next[i] -= x * c[i];
      }
      c = next;
    }
    const auto found = polynomial_roots(c);
    ASSERT_EQ(found.size(), roots.size());
    for (auto x : roots) {
      double best = 1e9;
      for (auto y : found) best = std::min(best, std::abs(x - y));
      EXPECT_LT(best, 1e-7) << "trial " << trial;
    }
  }
}

TEST(PolynomialProperty, PreimagesMapBack) {
  std::mt19937 rng(22);
  std::normal_distribution<double> n(0, 2);
  const auto f = Polynomial::parse("z^4 + (0.3-0.1i)*z^2 - 0.2z + 1");
  for (int trial = 0; trial < 100; ++trial) {
    const Complex w(n(rng), n(rng));
    const auto pre = f.preimages(w);
    ASSERT_EQ(pre.size(), 4u);
    for (auto z : pre) EXPECT_LT(std::abs(f(z) - w), 1e-10 * (1 + std::abs(w)));
  }
  const auto crit = f.critical_points();
  ASSERT_EQ(crit.size(), 3u);
  for (auto z : crit) EXPECT_LT(std::abs(f.derivative(z)), 1e-10);
}

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "critport/dynamics.h"
#include "critport/lamination.h"
#include "fixtures.h"

using namespace critport;
using fixtures::A;
using fixtures::S;

namespace {

Complex cis(double turns) { return std::polar(1.0, 2 * std::numbers::pi * turns); }

Polynomial example_a() {
  const double a = std::sqrt(3.0) / 2;
  return Polynomial({Complex(a / 2), Complex(-2.25), Complex(0), Complex(1)});
}

}  // namespace

TEST(Potential, Basics) {
  const auto f = Polynomial::unicritical(2, 0);
  EXPECT_NEAR(green(f, 2.0), std::log(2.0), 1e-12);
  EXPECT_EQ(green(f, 0.5), 0.0);
  EXPECT_FALSE(escape_potential(f, 0.5).escaped);
  EXPECT_TRUE(escape_potential(f, 2.0).escaped);
}

TEST(PotentialProperty, FunctionalEquation) {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> u(-3, 3);
  const auto f = Polynomial::parse("z^3 - 1.743318z + 0.50322");
  for (int trial = 0; trial < 200; ++trial) {
    const Complex z(u(rng), u(rng));
    const double g = green(f, z);
    if (g < 1e-3) continue;
    EXPECT_NEAR(green(f, f(z)), 3 * g, 1e-9 * (1 + g));
  }
}

TEST(Rays, PowerMapClosedForm) {
  std::mt19937 rng(32);
  for (int d : {2, 3}) {
    const auto f = Polynomial::unicritical(d, 0);
    for (int trial = 0; trial < 10; ++trial) {
      const int den = std::uniform_int_distribution<int>(2, 500)(rng);
      const Angle t(std::uniform_int_distribution<int>(0, den - 1)(rng), den);
      const auto ray = trace_ray(f, t);
      ASSERT_TRUE(ray.landed()) << t << " " << ray.note;
      EXPECT_LT(std::abs(*ray.landing - cis(t.to_double())), 1e-9) << t;
      for (const auto &s : ray.samples) {
        EXPECT_LT(std::abs(s.z - std::exp(s.potential) * cis(t.to_double())), 1e-9 * std::abs(s.z)) << t;
      }
      for (std::size_t k = 1; k < ray.samples.size(); ++k) {
        EXPECT_LT(ray.samples[k].potential, ray.samples[k - 1].potential);
      }
    }
  }
}

TEST(Rays, SamplesHaveTheirPotential) {
  const auto f = Polynomial::parse("z^3 + 0.2203+1.1863i");
  const auto ray = trace_ray(f, A("11/216"));
  for (std::size_t k = 0; k < ray.samples.size(); k += 7) {
    const auto &s = ray.samples[k];
    if (s.potential < 1e-3) break;
    EXPECT_NEAR(green(f, s.z), s.potential, 1e-8 * s.potential);
  }
}

TEST(Rays, ExampleALandsAtCriticalPoints) {
  const auto f = example_a();
  const double a = std::sqrt(3.0) / 2;
  for (const char *t : {"1/3", "2/3"}) {
    const auto ray = trace_ray(f, A(t));
    ASSERT_TRUE(ray.landed()) << t;
    EXPECT_LT(std::abs(*ray.landing + a), 1e-6) << t;
  }
  for (const char *t : {"1/9", "2/9", "7/9", "8/9"}) {
    const auto ray = trace_ray(f, A(t));
    ASSERT_TRUE(ray.landed()) << t;
    EXPECT_LT(std::abs(*ray.landing - a), 1e-6) << t;
  }
}

TEST(Rays, CsvFormat) {
  const auto ray = trace_ray(Polynomial::unicritical(2, 0), A("1/3"));
  const auto csv = ray_csv(ray);
  EXPECT_EQ(csv.rfind("potential,re,im\n", 0), 0u);
  EXPECT_EQ(static_cast<std::size_t>(std::count(csv.begin(), csv.end(), '\n')), ray.samples.size() + 1);
}

TEST(Rays, RayPoint) {
  const auto f = Polynomial::unicritical(2, 0);
  EXPECT_LT(std::abs(ray_point(f, 0.1, 0.5) - std::exp(0.5) * cis(0.1)), 1e-10);
}

TEST(Rays, ParallelMatchesSerial) {
  const auto f = example_a();
  const std::vector<Angle> angles{A("1/9"), A("1/3"), A("1/4"), A("5/8")};
  const auto par = trace_rays(f, angles, {}, 3);
  ASSERT_EQ(par.size(), angles.size());
  for (std::size_t i = 0; i < angles.size(); ++i) {
    const auto ser = trace_ray(f, angles[i]);
    EXPECT_EQ(par[i].argument, angles[i]);
    ASSERT_EQ(par[i].landed(), ser.landed());
    if (ser.landing) EXPECT_EQ(*par[i].landing, *ser.landing);
  }
}

TEST(Empirical, ExampleAMatchesPredictedClasses) {
  const auto f = example_a();
  const auto p = fixtures::cubic_ninths();
  const auto lam = classes_up_to(p, 2, 1);
  std::vector<Angle> angles;
  for (const auto &c : lam.classes()) angles.insert(angles.end(), c.elems.begin(), c.elems.end());
  const auto emp = empirical_lamination(f, AngleSet(angles), 1e-5);
  ASSERT_TRUE(emp.complete());
  const auto cmp = compare_laminations(emp.groups, lam.class_sets());
  EXPECT_TRUE(cmp.equal);
  EXPECT_TRUE(cmp.empirical_refines_predicted);
}

TEST(Empirical, GroupingAndComparison) {
  TracedRay a, b, c;
  a.argument = A("1/3");
  b.argument = A("2/3");
  c.argument = A("0");
  a.status = b.status = c.status = TraceStatus::Landed;
  a.landing = Complex(0, 0);
  b.landing = Complex(1e-7, 0);
  c.landing = Complex(1, 0);
  const auto emp = group_landings({a, b, c}, 1e-5);
  ASSERT_EQ(emp.groups.size(), 2u);
  auto cmp = compare_laminations(emp.groups, {S({"1/3", "2/3"}), S({"0"})});
  EXPECT_TRUE(cmp.equal);
  cmp = compare_laminations(emp.groups, {S({"0", "1/3", "2/3"})});
  EXPECT_FALSE(cmp.equal);
  EXPECT_TRUE(cmp.empirical_refines_predicted);
  EXPECT_EQ(cmp.unmatched_predicted.size(), 1u);
  // Predicted classes are restricted to the covered angles first.
  cmp = compare_laminations(emp.groups, {S({"1/3", "2/3", "1/9"}), S({"0", "1/2"})});
  EXPECT_TRUE(cmp.equal);

  TracedRay lost = a;
  lost.status = TraceStatus::Bounced;
  lost.landing.reset();
  const auto partial = group_landings({lost, c}, 1e-5);
  EXPECT_FALSE(partial.complete());
  EXPECT_EQ(partial.failures[0].kind, DynamicsError::Kind::Ambiguous);
}

TEST(Sector, ExampleA) {
  const auto f = example_a();
  const auto r1 = trace_ray(f, A("1/3"));
  const auto r2 = trace_ray(f, A("2/3"));
  EXPECT_TRUE(point_in_sector(f, r1, r2, Complex(-1.5, 0)));
  EXPECT_FALSE(point_in_sector(f, r1, r2, Complex(1.5, 0)));
  EXPECT_FALSE(point_in_sector(f, r2, r1, Complex(-1.5, 0)));
  EXPECT_TRUE(point_in_sector(f, r2, r1, Complex(1.5, 0)));
  EXPECT_THROW(point_in_sector(f, r1, r2, *r1.landing), DynamicsError);
  const auto r3 = trace_ray(f, A("1/9"));
  EXPECT_THROW(point_in_sector(f, r1, r3, Complex(-1.5, 0)), DynamicsError);
}

TEST(Unicritical, RealParameters) {
  auto u = unicritical_portrait(Polynomial::unicritical(2, -3));
  EXPECT_EQ(u.critical_value_angle, A("1/2"));
  EXPECT_EQ(u.portrait, validate_portrait(2, {S({"1/4", "3/4"})}));
  u = unicritical_portrait(Polynomial::unicritical(3, 5));
  EXPECT_EQ(u.critical_value_angle, A("0"));
  EXPECT_EQ(u.portrait, validate_portrait(3, {S({"0", "1/3", "2/3"})}));
}

TEST(Unicritical, LargeParameterAngleIsArgument) {
  // For |c| large the Boettcher coordinate of c is close to c itself.
  const Complex c = 1e4 * cis(0.3);
  const auto u = unicritical_portrait(Polynomial::unicritical(2, c), 4);
  EXPECT_EQ(u.critical_value_angle, A("3/10"));
}

TEST(Unicritical, Errors) {
  try {
    unicritical_portrait(Polynomial::unicritical(2, Complex(-0.1, 0.1)));
    FAIL();
  } catch (const DynamicsError &e) {
    EXPECT_EQ(e.kind(), DynamicsError::Kind::NotEscaping);
  }
  try {
    unicritical_portrait(Polynomial::parse("z^3 - z"));
    FAIL();
  } catch (const DynamicsError &e) {
    EXPECT_EQ(e.kind(), DynamicsError::Kind::NotUnicritical);
  }
}

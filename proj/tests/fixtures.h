#pragma once

#include <random>
#include <string>
#include <vector>

#include "critport/angle.h"
#include "critport/portrait.h"

namespace fixtures {

using namespace critport;

inline Angle A(const char *text) { return Angle::parse(text); }

inline AngleSet S(std::initializer_list<const char *> items) {
  std::vector<Angle> v;
  for (const char *t : items) v.push_back(Angle::parse(t));
  return AngleSet(v);
}

// {{1/3,2/3},{1/9,7/9}}
inline CriticalPortrait cubic_ninths() { return validate_portrait(3, {S({"1/3", "2/3"}), S({"1/9", "7/9"})}); }

// {{11/216,83/216},{89/216,161/216}}
inline CriticalPortrait cubic_216() {
  return validate_portrait(3, {S({"11/216", "83/216"}), S({"89/216", "161/216"})});
}

inline std::string data_path(const std::string &name) { return std::string(CRITPORT_TEST_DATA) + "/" + name; }

/// Random valid portrait of degree 2 or 3 with angles k/den, den drawn from
/// `dens`. Rejection-samples until validate_portrait accepts.
inline CriticalPortrait random_portrait(std::mt19937 &rng, int d, const std::vector<int> &dens) {
  std::uniform_int_distribution<std::size_t> pick_den(0, dens.size() - 1);
  auto random_angle = [&] {
    const int den = dens[pick_den(rng)];
    return Angle(std::uniform_int_distribution<int>(0, den - 1)(rng), den);
  };
  auto fibre = [&](const Angle &t, int count) {
    std::vector<Angle> v;
    for (int j = 0; j < count; ++j) v.push_back(Angle(t.value() + Rational(j, d)));
    return AngleSet(v);
  };
  for (;;) {
    std::vector<AngleSet> blocks;
    if (d == 2) {
      blocks.push_back(fibre(random_angle(), 2));
    } else if (std::bernoulli_distribution(0.2)(rng)) {
      blocks.push_back(fibre(random_angle(), 3));
    } else {
      // A pair {t, t + j/3}, j = 1 or 2, twice.
      for (int b = 0; b < 2; ++b) {
        const Angle t = random_angle();
        const int j = std::uniform_int_distribution<int>(1, 2)(rng);
        blocks.push_back(AngleSet{t, Angle(t.value() + Rational(j, 3))});
      }
    }
    try {
      return validate_portrait(d, blocks);
    } catch (const PortraitError &) {
    }
  }
}

}  // namespace fixtures

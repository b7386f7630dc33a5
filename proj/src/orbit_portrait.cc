#include "critport/orbit_portrait.h"

#include <algorithm>
#include <map>
#include <set>

#include "critport/text_format.h"

namespace critport {

std::string to_string(OrbitPortraitError::Kind kind) {
  switch (kind) {
    case OrbitPortraitError::Kind::NotInvariant:
      return "NotInvariant";
    case OrbitPortraitError::Kind::Linked:
      return "Linked";
    case OrbitPortraitError::Kind::OrderViolation:
      return "OrderViolation";
    case OrbitPortraitError::Kind::NotBijective:
      return "NotBijective";
    case OrbitPortraitError::Kind::NotPeriodic:
      return "NotPeriodic";
  }
  return "unknown";
}

std::string OrbitPortrait::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < sets_.size(); ++i) {
    s += (i ? ", {" : "{") + sets_[i].str() + "}";
  }
  return s + "]";
}

namespace {

// Shift s with f(a_j) = b_{j+s} for all j, if f maps the sorted a onto the
// sorted b as a cyclic rotation.
std::optional<std::size_t> rotation_shift(const std::vector<Angle> &images, const AngleSet &target) {
  const std::size_t n = target.size();
  if (images.size() != n || n == 0) {
    return std::nullopt;
  }
  auto it = std::lower_bound(target.begin(), target.end(), images[0]);
  if (it == target.end() || *it != images[0]) {
    return std::nullopt;
  }
  const std::size_t s = static_cast<std::size_t>(it - target.begin());
  for (std::size_t j = 0; j < n; ++j) {
    if (images[j] != target[(j + s) % n]) {
      return std::nullopt;
    }
  }
  return s;
}

}  // namespace

OrbitPortrait validate_orbit_portrait(int d, std::vector<AngleSet> sets) {
  using K = OrbitPortraitError::Kind;
  if (d < 2) {
    throw std::invalid_argument("degree must be at least 2");
  }
  if (sets.empty() || std::any_of(sets.begin(), sets.end(), [](const AngleSet &a) { return a.empty(); })) {
    throw std::invalid_argument("orbit portrait needs at least one nonempty set");
  }
  const std::size_t p = sets.size();
  for (std::size_t i = 0; i < p; ++i) {
    const AngleSet &next = sets[(i + 1) % p];
    std::map<Angle, std::size_t> fibre;
    for (const auto &t : sets[i]) {
      ++fibre[times_d(t, d)];
    }
    std::vector<Angle> image;
    for (const auto &[angle, count] : fibre) {
      image.push_back(angle);
    }
    if (AngleSet(image) != next) {
      throw OrbitPortraitError(K::NotInvariant, "m_" + std::to_string(d) + "({" + sets[i].str() + "}) is not {" +
                                                    next.str() + "}");
    }
    const std::size_t k = fibre.begin()->second;
    if (std::any_of(fibre.begin(), fibre.end(), [k](const auto &f) { return f.second != k; })) {
      throw OrbitPortraitError(K::NotInvariant, "m_" + std::to_string(d) + " is not k-to-1 on {" + sets[i].str() + "}");
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    for (std::size_t j = i + 1; j < p; ++j) {
      if (sets[i].intersects(sets[j]) || !unlinked(sets[i], sets[j])) {
        throw OrbitPortraitError(K::Linked, "sets {" + sets[i].str() + "} and {" + sets[j].str() + "} are linked");
      }
    }
  }
  for (std::size_t i = 0; i < p; ++i) {
    const AngleSet &next = sets[(i + 1) % p];
    if (sets[i].size() != next.size()) {
      continue;
    }
    std::vector<Angle> images;
    for (const auto &t : sets[i]) {
      images.push_back(times_d(t, d));
    }
    if (!rotation_shift(images, next)) {
      throw OrbitPortraitError(K::OrderViolation,
                               "m_" + std::to_string(d) + " does not preserve cyclic order on {" + sets[i].str() + "}");
    }
  }
  OrbitPortrait out;
  out.degree_ = d;
  out.sets_ = std::move(sets);
  return out;
}

OrbitPortrait parse_orbit_portrait(std::string_view text) {
  auto parsed = parse_degree_and_sets(text);
  return validate_orbit_portrait(parsed.degree, std::move(parsed.sets));
}

std::string format_orbit_portrait(const OrbitPortrait &portrait) {
  return format_degree_and_sets(portrait.degree(), portrait.sets());
}

Angle rotation_number(const OrbitPortrait &portrait, std::size_t base) {
  const AngleSet &a = portrait.sets().at(base);
  std::vector<Angle> images;
  for (const auto &t : a) {
    images.push_back(times_d_pow(t, portrait.degree(), static_cast<int>(portrait.period())));
  }
  auto shift = rotation_shift(images, a);
  if (!shift) {
    throw OrbitPortraitError(OrbitPortraitError::Kind::NotBijective,
                             "first return map on {" + a.str() + "} is not a rotation");
  }
  return Angle(static_cast<std::int64_t>(*shift), static_cast<std::int64_t>(a.size()));
}

int cycle_count(const OrbitPortrait &portrait) {
  std::set<Angle> pending;
  for (const auto &a : portrait.sets()) {
    pending.insert(a.begin(), a.end());
  }
  int cycles = 0;
  while (!pending.empty()) {
    Angle start = *pending.begin();
    Orbit orbit = orbit_of(start, portrait.degree());
    if (orbit.preperiod != 0) {
      throw OrbitPortraitError(OrbitPortraitError::Kind::NotPeriodic, start.str() + " is not periodic");
    }
    for (const auto &t : orbit.points) {
      pending.erase(t);
    }
    ++cycles;
  }
  return cycles;
}

CycleBoundReport check_cycle_bounds(const OrbitPortrait &portrait, std::optional<int> k_critical_values) {
  CycleBoundReport report;
  report.cycles = cycle_count(portrait);
  report.rotation = rotation_number(portrait);
  const int d = portrait.degree();
  const std::string rot = report.rotation.str();
  if (report.cycles > d) {
    report.violations.push_back(std::to_string(report.cycles) + " cycles exceed degree " + std::to_string(d));
  }
  if (report.cycles == d && !report.rotation.is_zero()) {
    report.violations.push_back(std::to_string(d) + " cycles with nonzero rotation number " + rot);
  }
  if (k_critical_values) {
    const int k = *k_critical_values;
    if (report.cycles > k + 1) {
      report.violations.push_back(std::to_string(report.cycles) + " cycles exceed k+1 = " + std::to_string(k + 1));
    }
    if (report.cycles == k + 1 && !report.rotation.is_zero()) {
      report.violations.push_back("k+1 cycles with nonzero rotation number " + rot);
    }
  }
  return report;
}

std::vector<Sector> sectors(const OrbitPortrait &portrait, std::size_t base) {
  std::vector<Sector> out;
  for (const auto &arc : portrait.sets().at(base).complementary_arcs()) {
    out.push_back(Sector{base, arc});
  }
  return out;
}

Arc sector_map(const Arc &span, int d) { return Arc{times_d(span.lo, d), times_d(span.hi, d)}; }

Sector sector_map(const Sector &sector, const OrbitPortrait &portrait) {
  return Sector{(sector.base_index + 1) % portrait.period(), sector_map(sector.span, portrait.degree())};
}

int critical_weight(const Rational &alpha, int d) {
  Rational x = alpha * d;
  BigInt q = numerator(x) / denominator(x);  // floor for x >= 0
  if (q * denominator(x) == numerator(x)) {
    return static_cast<int>(q) - 1;
  }
  return static_cast<int>(q);
}

LengthStep sector_length_step(const Rational &alpha, int d) {
  LengthStep step;
  step.length = alpha * d - critical_weight(alpha, d);
  step.full_circle = step.length >= 1;
  return step;
}

namespace {

Rational offset(const Angle &from, const Angle &to) {
  Rational off = to.value() - from.value();
  if (off < 0) {
    off += 1;
  }
  return off;
}

}  // namespace

bool arc_within(const Arc &a, const Arc &b) { return offset(b.lo, a.lo) + a.length() <= b.length(); }

Nesting nesting(const Arc &a, const Arc &b) {
  Nesting n;
  const bool a_full = a.length() == 1;
  const bool b_full = b.length() == 1;
  n.first_in_second = arc_within(a, b);
  n.second_in_first = arc_within(b, a);
  n.disjoint = !a_full && !b_full && arc_within(a, Arc{b.hi, b.lo});
  n.complements_nested = !a_full && !b_full && arc_within(Arc{a.hi, a.lo}, b);
  return n;
}

std::vector<OrbitPortrait> enumerate_periodic_portraits(int d, int max_period, std::size_t max_angles) {
  // All m_d cycles of period <= max_period, each as a sorted list of angles.
  std::set<Angle> periodic;
  for (int p = 1; p <= max_period; ++p) {
    for (const auto &t : angles_with_denominator(pow(BigInt(d), static_cast<unsigned>(p)) - 1)) {
      periodic.insert(t);
    }
  }
  std::vector<std::vector<Angle>> cycles;
  while (!periodic.empty()) {
    Orbit orbit = orbit_of(*periodic.begin(), d);
    for (const auto &t : orbit.points) {
      periodic.erase(t);
    }
    if (orbit.points.size() <= max_angles) {
      cycles.push_back(orbit.points);
    }
  }

  std::vector<OrbitPortrait> out;
  auto try_union = [&](const std::vector<Angle> &angles) {
    AngleSet universe(angles);
    const std::size_t n = universe.size();
    // The set holding the smallest angle is A_0, so bit 0 is always set.
    for (unsigned mask = 1; mask < (1u << n); mask += 2) {
      std::vector<Angle> first;
      for (std::size_t i = 0; i < n; ++i) {
        if (mask & (1u << i)) {
          first.push_back(universe[i]);
        }
      }
      std::vector<AngleSet> sets{AngleSet(first)};
      std::size_t total = sets[0].size();
      bool ok = true;
      while (ok) {
        AngleSet next = sets.back().image(d);
        if (next == sets[0]) {
          break;
        }
        total += next.size();
        ok = total <= n;
        sets.push_back(std::move(next));
      }
      if (!ok || total != n) {
        continue;
      }
      std::vector<Angle> seen;
      for (const auto &a : sets) {
        seen.insert(seen.end(), a.begin(), a.end());
      }
      if (AngleSet(seen).size() != n) {
        continue;
      }
      try {
        out.push_back(validate_orbit_portrait(d, std::move(sets)));
      } catch (const OrbitPortraitError &) {
      }
    }
  };

  std::vector<Angle> chosen;
  auto recurse = [&](auto &self, std::size_t from) -> void {
    if (!chosen.empty()) {
      try_union(chosen);
    }
    for (std::size_t c = from; c < cycles.size(); ++c) {
      if (chosen.size() + cycles[c].size() > max_angles) {
        continue;
      }
      chosen.insert(chosen.end(), cycles[c].begin(), cycles[c].end());
      self(self, c + 1);
      chosen.resize(chosen.size() - cycles[c].size());
    }
  };
  recurse(recurse, 0);
  return out;
}

}  // namespace critport

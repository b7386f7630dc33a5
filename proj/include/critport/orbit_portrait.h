#pragma once

// Orbit portraits: a cycle A_0 -> A_1 -> ... -> A_{p-1} -> A_0 of angle sets
// under m_d, with sectors, the sector map and critical weights. Sectors are
// kept as circle arcs only.

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "critport/angle.h"

namespace critport {

class OrbitPortraitError : public std::runtime_error {
 public:
  enum class Kind { NotInvariant, Linked, OrderViolation, NotBijective, NotPeriodic };

  OrbitPortraitError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(OrbitPortraitError::Kind kind);

class OrbitPortrait {
 public:
  int degree() const { return degree_; }
  const std::vector<AngleSet> &sets() const { return sets_; }
  std::size_t period() const { return sets_.size(); }
  const AngleSet &operator[](std::size_t i) const { return sets_[i]; }

  std::string str() const;

 private:
  friend OrbitPortrait validate_orbit_portrait(int d, std::vector<AngleSet> sets);

  int degree_ = 0;
  std::vector<AngleSet> sets_;
};

/// Checks m_d(A_i) = A_{i+1} (with a uniform k-to-1 fibre count), pairwise
/// disjoint unlinked sets, and cyclic order preservation wherever m_d is
/// injective on A_i.
OrbitPortrait validate_orbit_portrait(int d, std::vector<AngleSet> sets);

OrbitPortrait parse_orbit_portrait(std::string_view text);
std::string format_orbit_portrait(const OrbitPortrait &portrait);

/// Rotation number of the first-return map m_d^p on A_base, as an index
/// shift s/|A_base| reduced. Throws NotBijective if the return map collapses.
Angle rotation_number(const OrbitPortrait &portrait, std::size_t base = 0);

/// Number of m_d cycles in A_0 u ... u A_{p-1}. Throws NotPeriodic if some
/// angle is strictly preperiodic.
int cycle_count(const OrbitPortrait &portrait);

struct CycleBoundReport {
  int cycles = 0;
  Angle rotation;
  std::vector<std::string> violations;
  bool ok() const { return violations.empty(); }
};

/// cycles <= d, and cycles == d forces rotation 0. With k critical values
/// also cycles <= k + 1, and cycles == k + 1 forces rotation 0.
CycleBoundReport check_cycle_bounds(const OrbitPortrait &portrait, std::optional<int> k_critical_values = {});

struct Sector {
  std::size_t base_index = 0;
  Arc span;

  Rational angular_length() const { return span.length(); }
  friend bool operator==(const Sector &, const Sector &) = default;
};

/// The |A_base| sectors at A_base, in increasing order of their first edge.
std::vector<Sector> sectors(const OrbitPortrait &portrait, std::size_t base);

/// (d t1, d t2) for span (t1, t2).
Arc sector_map(const Arc &span, int d);

/// tau(S): the sector at A_{base+1} spanned by (d t1, d t2).
Sector sector_map(const Sector &sector, const OrbitPortrait &portrait);

/// Largest integer strictly less than d * alpha.
int critical_weight(const Rational &alpha, int d);

struct LengthStep {
  Rational length;
  /// d * alpha - w reached 1; the image would be the whole circle.
  bool full_circle = false;
};

/// d * alpha - w(alpha).
LengthStep sector_length_step(const Rational &alpha, int d);

/// Which of the four arc relations hold between two open arcs.
struct Nesting {
  bool disjoint = false;
  bool first_in_second = false;
  bool second_in_first = false;
  /// The complements are nested, i.e. the arcs together cover the circle.
  bool complements_nested = false;

  int count() const { return disjoint + first_in_second + second_in_first + complements_nested; }
};

Nesting nesting(const Arc &a, const Arc &b);

/// Closed arc containment: every point of the open arc a lies in b.
bool arc_within(const Arc &a, const Arc &b);

/// All orbit portraits whose angles are m_d-periodic with period <= max_period
/// and which use at most max_angles angles in total. Each portrait is listed
/// once, starting from its smallest set.
std::vector<OrbitPortrait> enumerate_periodic_portraits(int d, int max_period, std::size_t max_angles);

}  // namespace critport

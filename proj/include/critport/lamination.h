#pragma once

// One-sided itineraries with respect to a critical portrait, kneading, and
// the equivalence relation on rational angles generated by shared
// itineraries.

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "critport/angle.h"
#include "critport/portrait.h"

namespace critport {

enum class Side { Left, Right };

std::string to_string(Side side);

/// Eventually periodic word over {1..d}, in canonical form: the cycle is
/// primitive and the preperiod is as short as possible.
class Itinerary {
 public:
  Itinerary() = default;
  /// Canonicalizes the given preperiod/cycle pair. The cycle must be nonempty.
  Itinerary(std::vector<int> preperiod, std::vector<int> cycle);

  const std::vector<int> &preperiod() const { return preperiod_; }
  const std::vector<int> &cycle() const { return cycle_; }
  bool purely_periodic() const { return preperiod_.empty(); }

  int symbol(std::size_t n) const;
  Itinerary shift() const;

  /// Compact form, e.g. "13(1)" for 13111...
  std::string str() const;
  /// First n symbols followed by "...", e.g. "13111...".
  std::string expand(std::size_t n) const;

  friend bool operator==(const Itinerary &, const Itinerary &) = default;
  friend auto operator<=>(const Itinerary &, const Itinerary &) = default;

 private:
  std::vector<int> preperiod_;
  std::vector<int> cycle_;
};

Itinerary itinerary(const Angle &t, Side side, const CriticalPortrait &portrait);

enum class Kneading { Periodic, Aperiodic };

std::string to_string(Kneading k);

/// Periodic iff some portrait angle has a purely periodic one-sided itinerary.
Kneading kneading(const CriticalPortrait &portrait);

class LaminationError : public std::runtime_error {
 public:
  enum class Kind { BudgetExceeded, Precondition };

  LaminationError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

struct LaminationOptions {
  /// Largest candidate denominator d^l (d^p - 1) that may be enumerated.
  BigInt budget = 10'000'000;
};

/// An equivalence class with the left/right itinerary of each element,
/// aligned with elems.
struct AngleClass {
  AngleSet elems;
  std::vector<Itinerary> left;
  std::vector<Itinerary> right;
};

/// Computes classes of one portrait, caching the itinerary index of every
/// candidate pool it enumerates. Not thread-safe; use one engine per thread.
class LaminationEngine {
 public:
  explicit LaminationEngine(CriticalPortrait portrait, LaminationOptions options = {});
  ~LaminationEngine();
  LaminationEngine(LaminationEngine &&) noexcept;
  LaminationEngine &operator=(LaminationEngine &&) noexcept;

  const CriticalPortrait &portrait() const { return portrait_; }

  /// The full class of t: the component of t in the graph joining angles
  /// that share a one-sided itinerary.
  AngleClass class_of(const Angle &t);

 private:
  struct Pool;
  const Pool &pool_for(const Signature &sig);
  const Pool &preimage_pool(int depth);

  CriticalPortrait portrait_;
  LaminationOptions options_;
  std::map<std::pair<int, int>, std::unique_ptr<Pool>> pools_;
  std::map<int, std::unique_ptr<Pool>> preimages_;
};

AngleClass class_of(const Angle &t, const CriticalPortrait &portrait, LaminationOptions options = {});

/// A bounded materialization: every class meeting the angles with
/// preperiod <= preperiod_max and period <= period_max.
class RationalLamination {
 public:
  RationalLamination(CriticalPortrait portrait, std::vector<AngleClass> classes);

  int degree() const { return portrait_.degree(); }
  const CriticalPortrait &portrait() const { return portrait_; }
  /// Sorted by smallest element.
  const std::vector<AngleClass> &classes() const { return classes_; }
  std::vector<AngleSet> class_sets() const;

  /// Class containing t, or nullptr when t was not materialized.
  const AngleClass *find(const Angle &t) const;

  /// One class per line, angles increasing, lines sorted by smallest element.
  std::string dump() const;

 private:
  CriticalPortrait portrait_;
  std::vector<AngleClass> classes_;
  std::map<Angle, std::size_t> index_;
};

/// All angles with preperiod <= preperiod_max and period <= period_max.
std::vector<Angle> angles_up_to(int d, int preperiod_max, int period_max);

RationalLamination classes_up_to(const CriticalPortrait &portrait, int preperiod_max, int period_max,
                                 LaminationOptions options = {});

RationalLamination classes_up_to(LaminationEngine &engine, int preperiod_max, int period_max);

struct PropertyViolation {
  enum class Property { R2, R3, R4, R5 };
  Property property;
  std::string detail;
};

std::string to_string(PropertyViolation::Property p);

struct PropertyReport {
  std::vector<PropertyViolation> violations;
  /// Classes larger than max(2^d, d * period); informational only.
  std::vector<std::string> cardinality_findings;
  /// Pairs of distinct classes that could be merged without linking any
  /// other materialized class ("bounded maximality"); informational only.
  std::size_t mergeable_pairs = 0;

  bool ok() const { return violations.empty(); }
};

/// Checks R2 (cardinality bound), R3 (pairwise unlinked), R4 (image of a
/// class is a class) and R5 (complementary arcs map to complementary arcs)
/// over the materialized classes.
PropertyReport check_R_properties(const RationalLamination &lam);

/// Same checks on bare class sets, for laminations built by hand.
PropertyReport check_R_properties(int degree, const std::vector<AngleSet> &classes);

/// True iff the sets are pairwise disjoint and pairwise unlinked, by a single
/// sweep around the circle.
bool pairwise_unlinked(const std::vector<AngleSet> &sets);

}  // namespace critport

#pragma once

// Critical portraits, their unlinked classes, and the escape-rate region.

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "critport/angle.h"

namespace critport {

class PortraitError : public std::runtime_error {
 public:
  enum class Kind { BadImage, TooSmall, Linked, WrongCount };

  PortraitError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

/// Name of the violated axiom, e.g. "CP1 (BadImage)".
std::string to_string(PortraitError::Kind kind);

/// The d classes of the circle minus the portrait angles. Each gap between
/// consecutive portrait angles belongs to exactly one class.
///
/// Labels run 1..d. Label 1 is the class holding a right neighborhood of
/// angle 0; the others are numbered in order of first appearance while
/// walking counterclockwise from 0.
class UnlinkedClasses {
 public:
  UnlinkedClasses() = default;
  UnlinkedClasses(int degree, const std::vector<AngleSet> &blocks);

  int degree() const { return degree_; }
  const AngleSet &boundary() const { return boundary_; }

  /// Arcs of the class with the given label, in walk order from angle 0.
  const std::vector<Arc> &arcs(int label) const { return classes_.at(label - 1); }
  const std::vector<std::vector<Arc>> &all() const { return classes_; }

  Rational length(int label) const;

  /// Label of the class containing (x, x + eps) or (x - eps, x).
  int label_right_of(const Angle &x) const { return gap_label_[boundary_.gap_index(x, true)]; }
  int label_left_of(const Angle &x) const { return gap_label_[boundary_.gap_index(x, false)]; }

  /// Label of the class containing x, or 0 when x is a portrait angle.
  int label_of(const Angle &x) const;

 private:
  int degree_ = 0;
  AngleSet boundary_;
  std::vector<int> gap_label_;
  std::vector<std::vector<Arc>> classes_;
};

/// True iff every element of closed_set lies in the open class `label`.
bool contains_closed_set(const UnlinkedClasses &classes, int label, const AngleSet &closed_set);

class CriticalPortrait {
 public:
  int degree() const { return degree_; }
  /// Blocks in the order they were given.
  const std::vector<AngleSet> &blocks() const { return blocks_; }
  /// Union of all blocks.
  const AngleSet &all_angles() const { return classes_.boundary(); }
  const UnlinkedClasses &classes() const { return classes_; }

  /// Block equality ignoring order.
  friend bool operator==(const CriticalPortrait &a, const CriticalPortrait &b);

  std::string str() const;

 private:
  friend CriticalPortrait validate_portrait(int d, std::vector<AngleSet> blocks);

  int degree_ = 0;
  std::vector<AngleSet> blocks_;
  UnlinkedClasses classes_;
};

/// Checks CP1-CP3. Errors are reported in the order TooSmall/BadImage per
/// block, then Linked, then WrongCount.
CriticalPortrait validate_portrait(int d, std::vector<AngleSet> blocks);

inline const UnlinkedClasses &unlinked_classes(const CriticalPortrait &portrait) { return portrait.classes(); }

/// Portrait text: `d=<int>` then one block per line.
CriticalPortrait parse_portrait(std::string_view text);
std::string format_portrait(const CriticalPortrait &portrait);

/// Escape rates paired with the portrait blocks; all strictly positive.
class EscapeRates {
 public:
  explicit EscapeRates(std::vector<double> rates);
  const std::vector<double> &rates() const { return rates_; }
  double operator[](std::size_t i) const { return rates_[i]; }
  std::size_t size() const { return rates_.size(); }

 private:
  std::vector<double> rates_;
};

/// One inequality d^steps * r[from] > r[to].
struct RateConstraint {
  std::size_t from = 0;
  std::size_t to = 0;
  int steps = 0;
  friend bool operator==(const RateConstraint &, const RateConstraint &) = default;
};

/// All constraints found by following the forward orbit of each block's
/// image until it cycles.
std::vector<RateConstraint> escape_rate_constraints(const CriticalPortrait &portrait);

bool escape_rates_feasible(const CriticalPortrait &portrait, const EscapeRates &rates);

}  // namespace critport

#pragma once

// Exact arithmetic on the circle R/Z.
//
// An Angle is a reduced fraction num/den with 0 <= num < den. Everything in
// this header is exact; floating point only appears in to_double(), which
// exists for the numerical side of the library.

#include <compare>
#include <cstdint>
#include <initializer_list>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace critport {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class AngleError : public std::runtime_error {
 public:
  enum class Kind { Parse, ZeroDenominator, NotDisjoint };

  AngleError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

class Angle {
 public:
  Angle() : num_(0), den_(1) {}
  /// num/den taken mod 1 and reduced. Throws AngleError on den == 0.
  Angle(BigInt num, BigInt den);
  Angle(std::int64_t num, std::int64_t den) : Angle(BigInt(num), BigInt(den)) {}
  explicit Angle(const Rational &value);

  /// Parses `num/den` (or a bare integer). Unreduced input is reduced.
  static Angle parse(std::string_view text);

  const BigInt &num() const { return num_; }
  const BigInt &den() const { return den_; }
  Rational value() const { return Rational(num_, den_); }
  double to_double() const;
  bool is_zero() const { return num_ == 0; }
  std::string str() const;

  friend bool operator==(const Angle &a, const Angle &b) { return a.num_ == b.num_ && a.den_ == b.den_; }
  friend std::strong_ordering operator<=>(const Angle &a, const Angle &b);

 private:
  BigInt num_;
  BigInt den_;
};

std::ostream &operator<<(std::ostream &out, const Angle &t);

/// d*t mod 1.
Angle times_d(const Angle &t, int d);

/// d^n * t mod 1.
Angle times_d_pow(const Angle &t, int d, int n);

struct Signature {
  int preperiod = 0;
  int period = 1;
  friend bool operator==(const Signature &, const Signature &) = default;
};

/// Preperiod and exact period of t under m_d, found by hashing the orbit.
Signature preperiod_period(const Angle &t, int d);

/// Forward orbit of t under m_d: the preperiodic part followed by one copy of
/// the cycle, so points.size() == preperiod + period.
struct Orbit {
  std::vector<Angle> points;
  int preperiod = 0;
  int period() const { return static_cast<int>(points.size()) - preperiod; }
};

Orbit orbit_of(const Angle &t, int d);

inline std::vector<Angle> forward_orbit(const Angle &t, int d) { return orbit_of(t, d).points; }

/// Open counterclockwise arc (lo, hi). lo == hi is the circle minus {lo}.
struct Arc {
  Angle lo;
  Angle hi;

  Rational length() const;
  bool contains(const Angle &x) const;
  friend bool operator==(const Arc &, const Arc &) = default;
};

std::ostream &operator<<(std::ostream &out, const Arc &arc);

/// Length of the counterclockwise arc from lo to hi, in (0, 1].
Rational arc_length(const Angle &lo, const Angle &hi);

/// True iff x lies strictly inside the open arc.
bool cyclic_between(const Angle &x, const Arc &arc);

/// Finite set of angles kept sorted by value, without duplicates.
class AngleSet {
 public:
  AngleSet() = default;
  AngleSet(std::vector<Angle> elems);
  AngleSet(std::initializer_list<Angle> elems) : AngleSet(std::vector<Angle>(elems)) {}

  static AngleSet parse(std::string_view text);

  std::size_t size() const { return elems_.size(); }
  bool empty() const { return elems_.empty(); }
  const Angle &operator[](std::size_t i) const { return elems_[i]; }
  auto begin() const { return elems_.begin(); }
  auto end() const { return elems_.end(); }
  const std::vector<Angle> &elems() const { return elems_; }
  const Angle &front() const { return elems_.front(); }

  bool contains(const Angle &t) const;
  bool intersects(const AngleSet &other) const;

  /// The |A| components of the circle minus A, as (a_i, a_{i+1}) in order.
  /// A singleton yields the single arc (t, t).
  std::vector<Arc> complementary_arcs() const;

  /// Index i of the complementary arc (a_i, a_{i+1}) that contains x, for x
  /// not in the set. With right_side, a point of the set maps to the arc it
  /// starts; otherwise to the arc it ends.
  std::size_t gap_index(const Angle &x, bool right_side = true) const;

  AngleSet image(int d) const;
  AngleSet united(const AngleSet &other) const;

  std::string str() const;

  friend bool operator==(const AngleSet &, const AngleSet &) = default;
  friend auto operator<=>(const AngleSet &a, const AngleSet &b) { return a.elems_ <=> b.elems_; }

 private:
  std::vector<Angle> elems_;
};

std::ostream &operator<<(std::ostream &out, const AngleSet &set);

/// True iff a lies in a single component of the circle minus b. Throws
/// AngleError(NotDisjoint) when the sets intersect.
bool unlinked(const AngleSet &a, const AngleSet &b);

/// All angles k/den for k in [0, den), reduced.
std::vector<Angle> angles_with_denominator(const BigInt &den);

}  // namespace critport

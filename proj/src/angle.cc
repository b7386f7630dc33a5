#include "critport/angle.h"

#include <algorithm>
#include <charconv>
#include <map>
#include <ostream>
#include <sstream>

namespace critport {

namespace {

BigInt mod_positive(const BigInt &a, const BigInt &m) {
  BigInt r = a % m;
  if (r < 0) {
    r += m;
  }
  return r;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) {
    s.remove_prefix(1);
  }
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) {
    s.remove_suffix(1);
  }
  return s;
}

BigInt parse_integer(std::string_view s, std::string_view whole) {
  s = trim(s);
  bool negative = false;
  if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
    negative = s.front() == '-';
    s.remove_prefix(1);
  }
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; })) {
    throw AngleError(AngleError::Kind::Parse, "malformed angle '" + std::string(whole) + "'");
  }
  BigInt v{std::string(s)};
  return negative ? BigInt(-v) : v;
}

}  // namespace

Angle::Angle(BigInt num, BigInt den) {
  if (den == 0) {
    throw AngleError(AngleError::Kind::ZeroDenominator, "angle with zero denominator");
  }
  if (den < 0) {
    num = -num;
    den = -den;
  }
  num = mod_positive(num, den);
  BigInt g = gcd(num, den);
  if (g == 0) {
    g = 1;
  }
  num_ = num / g;
  den_ = den / g;
  if (num_ == 0) {
    den_ = 1;
  }
}

Angle::Angle(const Rational &value) : Angle(numerator(value), denominator(value)) {}

Angle Angle::parse(std::string_view text) {
  std::string_view s = trim(text);
  auto slash = s.find('/');
  if (slash == std::string_view::npos) {
    return Angle(parse_integer(s, text), BigInt(1));
  }
  BigInt num = parse_integer(s.substr(0, slash), text);
  BigInt den = parse_integer(s.substr(slash + 1), text);
  return Angle(std::move(num), std::move(den));
}

double Angle::to_double() const {
  return static_cast<double>(Rational(num_, den_));
}

std::string Angle::str() const {
  if (num_ == 0) {
    return "0";
  }
  return num_.str() + "/" + den_.str();
}

std::strong_ordering operator<=>(const Angle &a, const Angle &b) {
  BigInt lhs = a.num_ * b.den_;
  BigInt rhs = b.num_ * a.den_;
  if (lhs < rhs) {
    return std::strong_ordering::less;
  }
  if (lhs > rhs) {
    return std::strong_ordering::greater;
  }
  return std::strong_ordering::equal;
}

std::ostream &operator<<(std::ostream &out, const Angle &t) { return out << t.str(); }

Angle times_d(const Angle &t, int d) { return Angle(t.num() * d, t.den()); }

Angle times_d_pow(const Angle &t, int d, int n) {
  BigInt factor = pow(BigInt(d), static_cast<unsigned>(n));
  return Angle(t.num() * factor, t.den());
}

Orbit orbit_of(const Angle &t, int d) {
  std::map<Angle, int> seen;
  Orbit orbit;
  Angle x = t;
  while (true) {
    auto [it, inserted] = seen.emplace(x, static_cast<int>(orbit.points.size()));
    if (!inserted) {
      orbit.preperiod = it->second;
      return orbit;
    }
    orbit.points.push_back(x);
    x = times_d(x, d);
  }
}

Signature preperiod_period(const Angle &t, int d) {
  Orbit orbit = orbit_of(t, d);
  return Signature{orbit.preperiod, orbit.period()};
}

Rational arc_length(const Angle &lo, const Angle &hi) {
  Rational len = hi.value() - lo.value();
  if (len <= 0) {
    len += 1;
  }
  return len;
}

Rational Arc::length() const { return arc_length(lo, hi); }

bool cyclic_between(const Angle &x, const Arc &arc) {
  if (arc.lo == arc.hi) {
    return x != arc.lo;
  }
  if (arc.lo < arc.hi) {
    return arc.lo < x && x < arc.hi;
  }
  return x > arc.lo || x < arc.hi;
}

bool Arc::contains(const Angle &x) const { return cyclic_between(x, *this); }

std::ostream &operator<<(std::ostream &out, const Arc &arc) { return out << "(" << arc.lo << "," << arc.hi << ")"; }

AngleSet::AngleSet(std::vector<Angle> elems) : elems_(std::move(elems)) {
  std::sort(elems_.begin(), elems_.end());
  elems_.erase(std::unique(elems_.begin(), elems_.end()), elems_.end());
}

AngleSet AngleSet::parse(std::string_view text) {
  std::vector<Angle> out;
  std::istringstream in{std::string(text)};
  std::string token;
  while (in >> token) {
    out.push_back(Angle::parse(token));
  }
  return AngleSet(std::move(out));
}

bool AngleSet::contains(const Angle &t) const { return std::binary_search(elems_.begin(), elems_.end(), t); }

bool AngleSet::intersects(const AngleSet &other) const {
  auto a = elems_.begin();
  auto b = other.elems_.begin();
  while (a != elems_.end() && b != other.elems_.end()) {
    auto c = *a <=> *b;
    if (c == 0) {
      return true;
    }
    if (c < 0) {
      ++a;
    } else {
      ++b;
    }
  }
  return false;
}

std::vector<Arc> AngleSet::complementary_arcs() const {
  std::vector<Arc> arcs;
  arcs.reserve(elems_.size());
  for (std::size_t i = 0; i < elems_.size(); ++i) {
    arcs.push_back(Arc{elems_[i], elems_[(i + 1) % elems_.size()]});
  }
  return arcs;
}

std::size_t AngleSet::gap_index(const Angle &x, bool right_side) const {
  // Gap i starts at elems_[i]. Find the last element <= x (right side) or
  // < x (left side); wrap to the last gap when there is none.
  auto it = right_side ? std::upper_bound(elems_.begin(), elems_.end(), x)
                       : std::lower_bound(elems_.begin(), elems_.end(), x);
  if (it == elems_.begin()) {
    return elems_.size() - 1;
  }
  return static_cast<std::size_t>(it - elems_.begin()) - 1;
}

AngleSet AngleSet::image(int d) const {
  std::vector<Angle> out;
  out.reserve(elems_.size());
  for (const auto &t : elems_) {
    out.push_back(times_d(t, d));
  }
  return AngleSet(std::move(out));
}

AngleSet AngleSet::united(const AngleSet &other) const {
  std::vector<Angle> out = elems_;
  out.insert(out.end(), other.elems_.begin(), other.elems_.end());
  return AngleSet(std::move(out));
}

std::string AngleSet::str() const {
  std::string s;
  for (const auto &t : elems_) {
    if (!s.empty()) {
      s += ' ';
    }
    s += t.str();
  }
  return s;
}

std::ostream &operator<<(std::ostream &out, const AngleSet &set) { return out << "{" << set.str() << "}"; }

bool unlinked(const AngleSet &a, const AngleSet &b) {
  if (a.intersects(b)) {
    throw AngleError(AngleError::Kind::NotDisjoint, "unlinked() on intersecting sets " + a.str() + " and " + b.str());
  }
  // Walk the merged cyclic sequence; a is unlinked from b iff the elements
  // of a form one contiguous run, i.e. the membership flag changes at most
  // twice around the circle.
  std::vector<bool> tags;
  tags.reserve(a.size() + b.size());
  auto ia = a.begin();
  auto ib = b.begin();
  while (ia != a.end() || ib != b.end()) {
    if (ib == b.end() || (ia != a.end() && *ia < *ib)) {
      tags.push_back(true);
      ++ia;
    } else {
      tags.push_back(false);
      ++ib;
    }
  }
  int changes = 0;
  for (std::size_t i = 0; i < tags.size(); ++i) {
    if (tags[i] != tags[(i + 1) % tags.size()]) {
      ++changes;
    }
  }
  return changes <= 2;
}

std::vector<Angle> angles_with_denominator(const BigInt &den) {
  std::vector<Angle> out;
  for (BigInt k = 0; k < den; ++k) {
    out.emplace_back(k, den);
  }
  return out;
}

}  // namespace critport

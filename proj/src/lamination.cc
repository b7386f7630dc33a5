#include "critport/lamination.h"

#include <algorithm>
#include <set>

namespace critport {

std::string to_string(Side side) { return side == Side::Left ? "left" : "right"; }

std::string to_string(Kneading k) { return k == Kneading::Periodic ? "periodic" : "aperiodic"; }

std::string to_string(PropertyViolation::Property p) {
  switch (p) {
    case PropertyViolation::Property::R2:
      return "R2";
    case PropertyViolation::Property::R3:
      return "R3";
    case PropertyViolation::Property::R4:
      return "R4";
    case PropertyViolation::Property::R5:
      return "R5";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// Itinerary

Itinerary::Itinerary(std::vector<int> preperiod, std::vector<int> cycle)
    : preperiod_(std::move(preperiod)), cycle_(std::move(cycle)) {
  if (cycle_.empty()) {
    throw std::invalid_argument("itinerary cycle must be nonempty");
  }
  // Primitive cycle.
  const std::size_t p = cycle_.size();
  for (std::size_t q = 1; q < p; ++q) {
    if (p % q != 0) {
      continue;
    }
    bool repeats = true;
    for (std::size_t i = q; i < p && repeats; ++i) {
      repeats = cycle_[i] == cycle_[i - q];
    }
    if (repeats) {
      cycle_.resize(q);
      break;
    }
  }
  // Absorb trailing preperiod symbols that the cycle already supplies.
  while (!preperiod_.empty() && preperiod_.back() == cycle_.back()) {
    preperiod_.pop_back();
    std::rotate(cycle_.rbegin(), cycle_.rbegin() + 1, cycle_.rend());
  }
}

int Itinerary::symbol(std::size_t n) const {
  if (n < preperiod_.size()) {
    return preperiod_[n];
  }
  return cycle_[(n - preperiod_.size()) % cycle_.size()];
}

Itinerary Itinerary::shift() const {
  if (!preperiod_.empty()) {
    return Itinerary(std::vector<int>(preperiod_.begin() + 1, preperiod_.end()), cycle_);
  }
  std::vector<int> c = cycle_;
  std::rotate(c.begin(), c.begin() + 1, c.end());
  return Itinerary({}, std::move(c));
}

namespace {

std::string symbols_str(const std::vector<int> &word) {
  bool wide = std::any_of(word.begin(), word.end(), [](int s) { return s > 9; });
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) {
    if (wide && i) {
      out += ',';
    }
    out += std::to_string(word[i]);
  }
  return out;
}

}  // namespace

std::string Itinerary::str() const { return symbols_str(preperiod_) + "(" + symbols_str(cycle_) + ")"; }

std::string Itinerary::expand(std::size_t n) const {
  std::vector<int> word;
  for (std::size_t i = 0; i < n; ++i) {
    word.push_back(symbol(i));
  }
  return symbols_str(word) + "...";
}

namespace {

struct ItineraryPair {
  Itinerary left;
  Itinerary right;
};

ItineraryPair both_itineraries(const Angle &t, const CriticalPortrait &portrait) {
  const auto &classes = portrait.classes();
  Orbit orbit = orbit_of(t, portrait.degree());
  std::vector<int> left;
  std::vector<int> right;
  left.reserve(orbit.points.size());
  right.reserve(orbit.points.size());
  for (const auto &x : orbit.points) {
    left.push_back(classes.label_left_of(x));
    right.push_back(classes.label_right_of(x));
  }
  auto split = [&](const std::vector<int> &seq) {
    auto mid = seq.begin() + orbit.preperiod;
    return Itinerary(std::vector<int>(seq.begin(), mid), std::vector<int>(mid, seq.end()));
  };
  return ItineraryPair{split(left), split(right)};
}

}  // namespace

Itinerary itinerary(const Angle &t, Side side, const CriticalPortrait &portrait) {
  auto both = both_itineraries(t, portrait);
  return side == Side::Left ? both.left : both.right;
}

Kneading kneading(const CriticalPortrait &portrait) {
  for (const auto &theta : portrait.all_angles()) {
    auto both = both_itineraries(theta, portrait);
    if (both.left.purely_periodic() || both.right.purely_periodic()) {
      return Kneading::Periodic;
    }
  }
  return Kneading::Aperiodic;
}

// ---------------------------------------------------------------------------
// Class computation

struct LaminationEngine::Pool {
  std::map<Itinerary, std::vector<Angle>> by_itinerary;
  std::map<Angle, ItineraryPair> itineraries;

  void add(const Angle &t, const CriticalPortrait &portrait) {
    if (itineraries.count(t)) {
      return;
    }
    auto both = both_itineraries(t, portrait);
    by_itinerary[both.left].push_back(t);
    if (both.right != both.left) {
      by_itinerary[both.right].push_back(t);
    }
    itineraries.emplace(t, std::move(both));
  }
};

LaminationEngine::LaminationEngine(CriticalPortrait portrait, LaminationOptions options)
    : portrait_(std::move(portrait)), options_(std::move(options)) {}

LaminationEngine::~LaminationEngine() = default;
LaminationEngine::LaminationEngine(LaminationEngine &&) noexcept = default;
LaminationEngine &LaminationEngine::operator=(LaminationEngine &&) noexcept = default;

const LaminationEngine::Pool &LaminationEngine::pool_for(const Signature &sig) {
  auto key = std::make_pair(sig.preperiod, sig.period);
  auto it = pools_.find(key);
  if (it != pools_.end()) {
    return *it->second;
  }
  const int d = portrait_.degree();
  BigInt den = pow(BigInt(d), static_cast<unsigned>(sig.preperiod)) *
               (pow(BigInt(d), static_cast<unsigned>(sig.period)) - 1);
  if (den > options_.budget) {
    throw LaminationError(LaminationError::Kind::BudgetExceeded,
                          "candidate denominator " + den.str() + " exceeds budget " + options_.budget.str());
  }
  auto pool = std::make_unique<Pool>();
  for (BigInt k = 0; k < den; ++k) {
    pool->add(Angle(k, den), portrait_);
  }
  return *pools_.emplace(key, std::move(pool)).first->second;
}

const LaminationEngine::Pool &LaminationEngine::preimage_pool(int depth) {
  auto it = preimages_.find(depth);
  if (it != preimages_.end()) {
    return *it->second;
  }
  const int d = portrait_.degree();
  BigInt scale = pow(BigInt(d), static_cast<unsigned>(depth));
  if (scale * portrait_.all_angles().size() > options_.budget) {
    throw LaminationError(LaminationError::Kind::BudgetExceeded,
                          "preimages of depth " + std::to_string(depth) + " exceed budget");
  }
  auto pool = std::make_unique<Pool>();
  for (const auto &theta : portrait_.all_angles()) {
    // (theta + j) / d^depth for j in [0, d^depth).
    for (BigInt j = 0; j < scale; ++j) {
      pool->add(Angle(theta.num() + j * theta.den(), theta.den() * scale), portrait_);
    }
  }
  return *preimages_.emplace(depth, std::move(pool)).first->second;
}

AngleClass LaminationEngine::class_of(const Angle &t) {
  const int d = portrait_.degree();
  std::map<Angle, ItineraryPair> members;
  members.emplace(t, both_itineraries(t, portrait_));
  std::vector<Angle> frontier{t};

  auto visit = [&](const Pool &pool, const ItineraryPair &its) {
    for (const Itinerary *it : {&its.left, &its.right}) {
      auto found = pool.by_itinerary.find(*it);
      if (found == pool.by_itinerary.end()) {
        continue;
      }
      for (const auto &y : found->second) {
        if (members.emplace(y, pool.itineraries.at(y)).second) {
          frontier.push_back(y);
        }
      }
    }
  };

  while (!frontier.empty()) {
    Angle x = frontier.back();
    frontier.pop_back();
    ItineraryPair its = members.at(x);
    Signature sig = preperiod_period(x, d);
    visit(pool_for(sig), its);
    for (int k = 0; k <= sig.preperiod; ++k) {
      visit(preimage_pool(k), its);
    }
  }

  AngleClass out;
  std::vector<Angle> elems;
  for (auto &[angle, its] : members) {
    elems.push_back(angle);
    out.left.push_back(its.left);
    out.right.push_back(its.right);
  }
  out.elems = AngleSet(std::move(elems));
  return out;
}

AngleClass class_of(const Angle &t, const CriticalPortrait &portrait, LaminationOptions options) {
  LaminationEngine engine(portrait, std::move(options));
  return engine.class_of(t);
}

// ---------------------------------------------------------------------------
// Materialization

RationalLamination::RationalLamination(CriticalPortrait portrait, std::vector<AngleClass> classes)
    : portrait_(std::move(portrait)), classes_(std::move(classes)) {
  std::sort(classes_.begin(), classes_.end(),
            [](const AngleClass &a, const AngleClass &b) { return a.elems.front() < b.elems.front(); });
  for (std::size_t i = 0; i < classes_.size(); ++i) {
    for (const auto &t : classes_[i].elems) {
      index_[t] = i;
    }
  }
}

std::vector<AngleSet> RationalLamination::class_sets() const {
  std::vector<AngleSet> out;
  out.reserve(classes_.size());
  for (const auto &c : classes_) {
    out.push_back(c.elems);
  }
  return out;
}

const AngleClass *RationalLamination::find(const Angle &t) const {
  auto it = index_.find(t);
  return it == index_.end() ? nullptr : &classes_[it->second];
}

std::string RationalLamination::dump() const {
  std::string out;
  for (const auto &c : classes_) {
    out += c.elems.str();
    out += '\n';
  }
  return out;
}

std::vector<Angle> angles_up_to(int d, int preperiod_max, int period_max) {
  std::set<Angle> universe;
  BigInt head = pow(BigInt(d), static_cast<unsigned>(preperiod_max));
  for (int p = 1; p <= period_max; ++p) {
    BigInt den = head * (pow(BigInt(d), static_cast<unsigned>(p)) - 1);
    for (BigInt k = 0; k < den; ++k) {
      universe.emplace(k, den);
    }
  }
  return {universe.begin(), universe.end()};
}

RationalLamination classes_up_to(LaminationEngine &engine, int preperiod_max, int period_max) {
  if (period_max < 1 || preperiod_max < 0) {
    throw LaminationError(LaminationError::Kind::Precondition,
                          "classes_up_to requires preperiod_max >= 0 and period_max >= 1");
  }
  const int d = engine.portrait().degree();
  std::vector<AngleClass> classes;
  std::set<Angle> assigned;
  for (const auto &t : angles_up_to(d, preperiod_max, period_max)) {
    if (assigned.count(t)) {
      continue;
    }
    AngleClass c = engine.class_of(t);
    assigned.insert(c.elems.begin(), c.elems.end());
    classes.push_back(std::move(c));
  }
  return RationalLamination(engine.portrait(), std::move(classes));
}

RationalLamination classes_up_to(const CriticalPortrait &portrait, int preperiod_max, int period_max,
                                 LaminationOptions options) {
  if (period_max < 1 || preperiod_max < 0) {
    throw LaminationError(LaminationError::Kind::Precondition,
                          "classes_up_to requires preperiod_max >= 0 and period_max >= 1");
  }
  const int d = portrait.degree();
  BigInt largest = pow(BigInt(d), static_cast<unsigned>(preperiod_max)) *
                   (pow(BigInt(d), static_cast<unsigned>(period_max)) - 1);
  if (largest > options.budget) {
    throw LaminationError(LaminationError::Kind::BudgetExceeded,
                          "enumeration denominator " + largest.str() + " exceeds budget " + options.budget.str());
  }
  LaminationEngine engine(portrait, std::move(options));
  return classes_up_to(engine, preperiod_max, period_max);
}

// ---------------------------------------------------------------------------
// R-property checks

bool pairwise_unlinked(const std::vector<AngleSet> &sets) {
  // Sweep all angles in cyclic order. Sets are pairwise unlinked iff the
  // sequence of set ids never interleaves as a..b..a..b, which a stack of
  // "open" sets detects in one pass.
  std::vector<std::pair<Angle, std::size_t>> points;
  std::vector<std::size_t> remaining(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto &t : sets[i]) {
      points.emplace_back(t, i);
    }
    remaining[i] = sets[i].size();
  }
  std::sort(points.begin(), points.end());
  for (std::size_t k = 1; k < points.size(); ++k) {
    if (points[k].first == points[k - 1].first) {
      return false;
    }
  }
  std::vector<std::size_t> stack;
  std::vector<bool> open(sets.size(), false);
  for (const auto &[t, id] : points) {
    if (open[id]) {
      if (stack.back() != id) {
        return false;
      }
    } else {
      open[id] = true;
      stack.push_back(id);
    }
    if (--remaining[id] == 0) {
      stack.pop_back();
      open[id] = false;
    }
  }
  return true;
}

namespace {

std::size_t count_mergeable_pairs(const std::vector<AngleSet> &sets) {
  // Faces of the non-crossing partition: walk each circle arc between
  // consecutive angles, then jump along the polygon of the class reached.
  std::vector<std::pair<Angle, std::size_t>> points;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    for (const auto &t : sets[i]) {
      points.emplace_back(t, i);
    }
  }
  std::sort(points.begin(), points.end());
  const std::size_t n = points.size();
  if (n == 0) {
    return 0;
  }
  std::vector<std::vector<std::size_t>> positions(sets.size());
  for (std::size_t k = 0; k < n; ++k) {
    positions[points[k].second].push_back(k);
  }
  std::vector<std::size_t> next_in_class(n);
  for (const auto &pos : positions) {
    for (std::size_t j = 0; j < pos.size(); ++j) {
      next_in_class[pos[j]] = pos[(j + 1) % pos.size()];
    }
  }
  std::set<std::pair<std::size_t, std::size_t>> pairs;
  std::vector<bool> seen(n, false);
  for (std::size_t start = 0; start < n; ++start) {
    if (seen[start]) {
      continue;
    }
    std::set<std::size_t> face;
    std::size_t arc = start;
    while (!seen[arc]) {
      seen[arc] = true;
      face.insert(points[arc].second);
      std::size_t reached = (arc + 1) % n;
      face.insert(points[reached].second);
      arc = next_in_class[reached];
    }
    for (auto a = face.begin(); a != face.end(); ++a) {
      for (auto b = std::next(a); b != face.end(); ++b) {
        pairs.emplace(*a, *b);
      }
    }
  }
  return pairs.size();
}

}  // namespace

PropertyReport check_R_properties(int degree, const std::vector<AngleSet> &classes) {
  using P = PropertyViolation::Property;
  const int d = degree;
  PropertyReport report;

  std::map<Angle, std::size_t> index;
  for (std::size_t i = 0; i < classes.size(); ++i) {
    for (const auto &t : classes[i]) {
      index[t] = i;
    }
  }

  for (const auto &c : classes) {
    if (c.empty()) {
      report.violations.push_back({P::R2, "empty class"});
      continue;
    }
    Signature sig = preperiod_period(c.front(), d);
    BigInt bound = pow(BigInt(d), static_cast<unsigned>(sig.preperiod)) *
                   (pow(BigInt(d), static_cast<unsigned>(sig.period)) - 1);
    if (BigInt(c.size()) > bound) {
      report.violations.push_back({P::R2, "class {" + c.str() + "} exceeds its denominator bound " + bound.str()});
    }
    std::size_t soft = std::max<std::size_t>(std::size_t{1} << d, static_cast<std::size_t>(d) * sig.period);
    if (c.size() > soft) {
      report.cardinality_findings.push_back("class {" + c.str() + "} has " + std::to_string(c.size()) +
                                            " elements, above " + std::to_string(soft));
    }
  }

  const bool non_crossing = pairwise_unlinked(classes);
  if (!non_crossing) {
    for (std::size_t i = 0; i < classes.size(); ++i) {
      for (std::size_t j = i + 1; j < classes.size(); ++j) {
        if (classes[i].intersects(classes[j])) {
          report.violations.push_back({P::R3, "classes {" + classes[i].str() + "} and {" + classes[j].str() +
                                                  "} intersect"});
        } else if (!unlinked(classes[i], classes[j])) {
          report.violations.push_back({P::R3, "classes {" + classes[i].str() + "} and {" + classes[j].str() +
                                                  "} are linked"});
        }
      }
    }
  }

  for (const auto &c : classes) {
    if (c.empty()) {
      continue;
    }
    AngleSet img = c.image(d);
    auto it = index.find(img.front());
    if (it == index.end()) {
      report.violations.push_back({P::R4, "image of {" + c.str() + "} is not materialized"});
    } else if (classes[it->second] != img) {
      report.violations.push_back({P::R4, "image {" + img.str() + "} of {" + c.str() + "} is not a class (class is {" +
                                              classes[it->second].str() + "})"});
    }
    for (const auto &gap : c.complementary_arcs()) {
      Arc image_arc{times_d(gap.lo, d), times_d(gap.hi, d)};
      for (const auto &x : img) {
        if (image_arc.contains(x)) {
          report.violations.push_back({P::R5, "gap (" + gap.lo.str() + "," + gap.hi.str() + ") of {" + c.str() +
                                                  "} maps over " + x.str()});
          break;
        }
      }
    }
  }

  if (non_crossing) {
    report.mergeable_pairs = count_mergeable_pairs(classes);
  }
  return report;
}

PropertyReport check_R_properties(const RationalLamination &lam) {
  return check_R_properties(lam.degree(), lam.class_sets());
}

}  // namespace critport

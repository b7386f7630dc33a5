#include "critport/portrait.h"

#include <algorithm>
#include <cmath>
#include <map>

#include "critport/text_format.h"

namespace critport {

std::string to_string(PortraitError::Kind kind) {
  switch (kind) {
    case PortraitError::Kind::BadImage:
      return "CP1 (BadImage)";
    case PortraitError::Kind::TooSmall:
      return "CP1 (TooSmall)";
    case PortraitError::Kind::Linked:
      return "CP2 (Linked)";
    case PortraitError::Kind::WrongCount:
      return "CP3 (WrongCount)";
  }
  return "unknown";
}

UnlinkedClasses::UnlinkedClasses(int degree, const std::vector<AngleSet> &blocks) : degree_(degree) {
  std::vector<Angle> all;
  for (const auto &b : blocks) {
    all.insert(all.end(), b.begin(), b.end());
  }
  boundary_ = AngleSet(std::move(all));
  const std::size_t gaps = boundary_.size();

  // Two gaps are in the same class iff every block sees them in the same
  // complementary arc. A gap (p_i, p_{i+1}) lies in the arc of a block that
  // starts at the last block element <= p_i.
  std::vector<std::vector<std::size_t>> address(gaps);
  for (std::size_t i = 0; i < gaps; ++i) {
    for (const auto &b : blocks) {
      address[i].push_back(b.gap_index(boundary_[i], true));
    }
  }

  gap_label_.assign(gaps, 0);
  std::map<std::vector<std::size_t>, int> label_of_address;
  const std::size_t start = boundary_.gap_index(Angle(), true);
  for (std::size_t k = 0; k < gaps; ++k) {
    std::size_t i = (start + k) % gaps;
    auto [it, inserted] = label_of_address.emplace(address[i], static_cast<int>(label_of_address.size()) + 1);
    gap_label_[i] = it->second;
    if (inserted) {
      classes_.emplace_back();
    }
    classes_[it->second - 1].push_back(Arc{boundary_[i], boundary_[(i + 1) % gaps]});
  }
}

Rational UnlinkedClasses::length(int label) const {
  Rational total = 0;
  for (const auto &arc : arcs(label)) {
    total += arc.length();
  }
  return total;
}

int UnlinkedClasses::label_of(const Angle &x) const {
  if (boundary_.contains(x)) {
    return 0;
  }
  return label_right_of(x);
}

bool contains_closed_set(const UnlinkedClasses &classes, int label, const AngleSet &closed_set) {
  return std::all_of(closed_set.begin(), closed_set.end(),
                     [&](const Angle &x) { return classes.label_of(x) == label; });
}

bool operator==(const CriticalPortrait &a, const CriticalPortrait &b) {
  if (a.degree_ != b.degree_ || a.blocks_.size() != b.blocks_.size()) {
    return false;
  }
  auto sa = a.blocks_;
  auto sb = b.blocks_;
  std::sort(sa.begin(), sa.end());
  std::sort(sb.begin(), sb.end());
  return sa == sb;
}

std::string CriticalPortrait::str() const {
  std::string s = "{";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    s += (i ? ", {" : "{") + blocks_[i].str() + "}";
  }
  return s + "}";
}

CriticalPortrait validate_portrait(int d, std::vector<AngleSet> blocks) {
  if (d < 2) {
    throw std::invalid_argument("degree must be at least 2");
  }
  for (const auto &b : blocks) {
    if (b.size() < 2) {
      throw PortraitError(PortraitError::Kind::TooSmall, "block " + b.str() + " has fewer than two angles");
    }
    if (b.image(d).size() != 1) {
      throw PortraitError(PortraitError::Kind::BadImage,
                          "block " + b.str() + " does not map to a single angle under m_" + std::to_string(d));
    }
  }
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      if (blocks[i].intersects(blocks[j]) || !unlinked(blocks[i], blocks[j])) {
        throw PortraitError(PortraitError::Kind::Linked,
                            "blocks " + blocks[i].str() + " and " + blocks[j].str() + " are linked");
      }
    }
  }
  std::size_t weight = 0;
  for (const auto &b : blocks) {
    weight += b.size() - 1;
  }
  if (weight != static_cast<std::size_t>(d - 1)) {
    throw PortraitError(PortraitError::Kind::WrongCount, "sum of (|block| - 1) is " + std::to_string(weight) +
                                                             ", expected " + std::to_string(d - 1));
  }
  CriticalPortrait p;
  p.degree_ = d;
  p.classes_ = UnlinkedClasses(d, blocks);
  p.blocks_ = std::move(blocks);
  return p;
}

CriticalPortrait parse_portrait(std::string_view text) {
  auto parsed = parse_degree_and_sets(text);
  return validate_portrait(parsed.degree, std::move(parsed.sets));
}

std::string format_portrait(const CriticalPortrait &portrait) {
  return format_degree_and_sets(portrait.degree(), portrait.blocks());
}

EscapeRates::EscapeRates(std::vector<double> rates) : rates_(std::move(rates)) {
  for (double r : rates_) {
    if (!(r > 0) || !std::isfinite(r)) {
      throw std::invalid_argument("escape rates must be finite and strictly positive");
    }
  }
}

std::vector<RateConstraint> escape_rate_constraints(const CriticalPortrait &portrait) {
  const int d = portrait.degree();
  const auto &blocks = portrait.blocks();
  std::vector<RateConstraint> out;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    // d^n Theta_i for n >= 1 is the orbit of the single image angle.
    auto orbit = forward_orbit(times_d(blocks[i].front(), d), d);
    for (std::size_t k = 0; k < orbit.size(); ++k) {
      for (std::size_t j = 0; j < blocks.size(); ++j) {
        if (blocks[j].contains(orbit[k])) {
          out.push_back(RateConstraint{i, j, static_cast<int>(k) + 1});
        }
      }
    }
  }
  return out;
}

bool escape_rates_feasible(const CriticalPortrait &portrait, const EscapeRates &rates) {
  if (rates.size() != portrait.blocks().size()) {
    throw std::invalid_argument("expected one escape rate per portrait block");
  }
  for (const auto &c : escape_rate_constraints(portrait)) {
    double scaled = rates[c.from] * std::pow(static_cast<double>(portrait.degree()), c.steps);
    if (!(scaled > rates[c.to])) {
      return false;
    }
  }
  return true;
}

}  // namespace critport

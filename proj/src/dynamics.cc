#include "critport/dynamics.h"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <numeric>
#include <sstream>
#include <thread>

namespace critport {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kEps = std::numeric_limits<double>::epsilon();

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

}  // namespace

std::string to_string(DynamicsError::Kind kind) {
  switch (kind) {
    case DynamicsError::Kind::NonConvergence:
      return "NonConvergence";
    case DynamicsError::Kind::Diverged:
      return "Diverged";
    case DynamicsError::Kind::Ambiguous:
      return "Ambiguous";
    case DynamicsError::Kind::NotLanded:
      return "NotLanded";
    case DynamicsError::Kind::NotEscaping:
      return "NotEscaping";
    case DynamicsError::Kind::NotUnicritical:
      return "NotUnicritical";
    case DynamicsError::Kind::OnBoundary:
      return "OnBoundary";
    case DynamicsError::Kind::Precondition:
      return "Precondition";
  }
  return "unknown";
}

std::string to_string(TraceStatus status) {
  switch (status) {
    case TraceStatus::Landed:
      return "landed";
    case TraceStatus::EscapedBudget:
      return "escaped-budget";
    case TraceStatus::Bounced:
      return "bounced";
  }
  return "unknown";
}

Potential escape_potential(const Polynomial &f, Complex z, int budget) {
  const int d = f.degree();
  const double radius = std::pow(10.0, std::min(100.0, 300.0 / d));
  Potential out;
  int n = 0;
  while (std::abs(z) <= radius) {
    if (n >= budget) {
      out.iterations = n;
      return out;
    }
    z = f(z);
    ++n;
  }
  out.escaped = true;
  out.iterations = n;
  out.value = std::log(std::abs(z)) / std::pow(static_cast<double>(d), n);
  return out;
}

std::vector<Complex> critical_points(const Polynomial &f) {
  try {
    return f.critical_points();
  } catch (const RootError &e) {
    throw DynamicsError(DynamicsError::Kind::NonConvergence, e.what());
  }
}

namespace {

// Points of one ray at one potential G: levels[j] is the point of the ray
// d^j t at potential d^j G, so f(levels[j]) = levels[j + 1].
struct Chain {
  double potential = 0;
  std::vector<Complex> levels;
};

struct Pull {
  Chain chain;
  bool ambiguous = false;
  // Rounding error has grown to the size of the root separation.
  bool floor = false;
};

class Tracer {
 public:
  Tracer(const Polynomial &f, const TraceOptions &opts, std::function<double(int)> angle_at)
      : f_(f), opts_(opts), d_(f.degree()), angle_at_(std::move(angle_at)) {}

  int depth(double potential) const {
    int n = 0;
    double g = potential;
    while (g < opts_.top_log_radius) {
      g *= d_;
      ++n;
    }
    return n;
  }

  Complex bottcher_guess(double potential, int level) const {
    return std::polar(std::exp(potential * std::pow(static_cast<double>(d_), level)), 2 * kPi * angle_at_(level));
  }

  Complex reference(const Chain &ref, int level) const {
    if (level < static_cast<int>(ref.levels.size())) {
      return ref.levels[level];
    }
    Complex z = ref.levels.back();
    for (int j = static_cast<int>(ref.levels.size()) - 1; j < level; ++j) {
      z = f_(z);
    }
    return z;
  }

  std::vector<Complex> preimages(Complex w, double cluster_tol) const {
    std::vector<Complex> c = f_.coeffs();
    c[0] -= w;
    try {
      return polynomial_roots(c, cluster_tol);
    } catch (const RootError &e) {
      throw DynamicsError(DynamicsError::Kind::NonConvergence, e.what());
    }
  }

  // Pull the Boettcher target at potential G back to level 0, choosing at
  // each level the root nearest the reference chain (or, without one, the
  // Boettcher approximation, which is accurate at high potential).
  Pull pull(double potential, const Chain *ref) const {
    const int n = depth(potential);
    Pull out;
    out.chain.potential = potential;
    out.chain.levels.assign(static_cast<std::size_t>(n) + 1, Complex());
    Complex w = bottcher_guess(potential, n);
    if (!finite(w)) {
      throw DynamicsError(DynamicsError::Kind::Diverged, "Boettcher target overflowed");
    }
    out.chain.levels[n] = w;
    double err = kEps * std::abs(w);
    for (int j = n - 1; j >= 0; --j) {
      const Complex target = out.chain.levels[j + 1];
      // High up, the Boettcher guess beats the previous sample: the modulus
      // there changes a lot between potential steps.
      const bool high = potential * std::pow(static_cast<double>(d_), j) >= opts_.start_potential;
      const Complex r = ref && !high ? reference(*ref, j) : bottcher_guess(potential, j);
      auto roots = preimages(target, opts_.cluster_tol);
      std::size_t best = 0;
      for (std::size_t k = 1; k < roots.size(); ++k) {
        if (std::abs(roots[k] - r) < std::abs(roots[best] - r)) {
          best = k;
        }
      }
      const Complex z = roots[best];
      double sep = std::numeric_limits<double>::infinity();
      for (const auto &x : roots) {
        double gap = std::abs(x - z);
        if (gap > 0) {
          sep = std::min(sep, gap);
        }
      }
      if (std::abs(r - z) > opts_.ambiguity_margin * sep) {
        out.ambiguous = true;
      }
      err = (err + kEps * std::abs(target)) / std::max(std::abs(f_.derivative(z)), 1e-300);
      if (err > 0.1 * sep) {
        out.floor = true;
      }
      if (!finite(z)) {
        throw DynamicsError(DynamicsError::Kind::Diverged, "ray point is not finite");
      }
      out.chain.levels[j] = z;
    }
    return out;
  }

  struct Run {
    std::vector<Chain> chains;
    bool bounced = false;
    bool floor = false;
    bool budget = false;
    std::string note;
  };

  // Descend from the start potential to stop_potential. `done` may end the
  // descent early; it is consulted about once per potential decade.
  Run descend(double stop_potential, const std::function<bool(const Run &)> &done = {}) const {
    Run run;
    const double default_step = std::log(2.0) / opts_.steps_per_halving;
    const int check_every = std::max(1, static_cast<int>(std::lround(std::log(10.0) / default_step)));
    double step = default_step;
    int subdivisions = 0;
    run.chains.push_back(pull(opts_.start_potential, nullptr).chain);
    if (opts_.start_potential <= stop_potential) {
      return run;
    }
    long iterations = 0;
    int accepted = 0;
    double g = opts_.start_potential;
    while (g > stop_potential) {
      if (++iterations > opts_.iteration_budget) {
        run.budget = true;
        run.note = "iteration budget exhausted";
        break;
      }
      double next = std::max(g * std::exp(-step), stop_potential);
      Pull p = pull(next, &run.chains.back());
      if (p.floor) {
        run.floor = true;
        std::ostringstream note;
        note << "precision floor at potential " << next;
        run.note = note.str();
        break;
      }
      const double spacing = std::abs(p.chain.levels[0] - run.chains.back().levels[0]);
      if (p.ambiguous || spacing > opts_.max_spacing) {
        if (subdivisions < opts_.max_subdivisions) {
          step /= 2;
          ++subdivisions;
          continue;
        }
        if (p.ambiguous) {
          run.bounced = true;
          std::ostringstream note;
          note << "ambiguous pullback at potential " << next;
          run.note = note.str();
          break;
        }
      }
      run.chains.push_back(std::move(p.chain));
      g = next;
      if (subdivisions > 0) {
        step *= 2;
        --subdivisions;
      }
      if (done && ++accepted % check_every == 0 && done(run)) {
        break;
      }
    }
    return run;
  }

 private:
  const Polynomial &f_;
  const TraceOptions &opts_;
  int d_;
  std::function<double(int)> angle_at_;
};

// Exact orbit angles as doubles, extended on demand.
std::function<double(int)> exact_angles(const Angle &t, int d) {
  auto cache = std::make_shared<std::vector<Angle>>(1, t);
  return [cache, d](int level) {
    while (static_cast<int>(cache->size()) <= level) {
      cache->push_back(times_d(cache->back(), d));
    }
    return (*cache)[level].to_double();
  };
}

std::function<double(int)> float_angles(double s, int d) {
  return [s, d](int level) {
    double x = s;
    for (int j = 0; j < level; ++j) {
      x = std::fmod(x * d, 1.0);
    }
    return x < 0 ? x + 1 : x;
  };
}

struct Refined {
  // Periodic point at level l and its pullback to level 0.
  Complex periodic;
  Complex landing;
};

// Newton on f^p(z) - z from the ray's level-l point, then back down l levels
// choosing the preimage nearest the ray.
std::optional<Refined> refine_landing(const Polynomial &f, const Tracer &tracer, const Chain &chain,
                                      const Orbit &orbit, const TraceOptions &opts) {
  const int d = f.degree();
  const int l = orbit.preperiod;
  const int p = orbit.period();
  if (std::pow(static_cast<double>(d), p) > opts.max_refine_multiplier) {
    return std::nullopt;
  }
  Complex z = tracer.reference(chain, l);
  bool converged = false;
  for (int iter = 0; iter < 100; ++iter) {
    Complex w = z;
    Complex dw = 1;
    for (int k = 0; k < p; ++k) {
      dw *= f.derivative(w);
      w = f(w);
    }
    Complex denom = dw - 1.0;
    if (std::abs(denom) < 1e-300 || !finite(w)) {
      return std::nullopt;
    }
    Complex step = (w - z) / denom;
    z -= step;
    if (!finite(z)) {
      return std::nullopt;
    }
    if (std::abs(step) <= 4 * kEps * std::max(1.0, std::abs(z))) {
      converged = true;
      break;
    }
  }
  if (!converged) {
    return std::nullopt;
  }
  Refined out{z, z};
  for (int j = l - 1; j >= 0; --j) {
    const Complex r = tracer.reference(chain, j);
    auto roots = tracer.preimages(out.landing, opts.landing_cluster_tol);
    out.landing = *std::min_element(roots.begin(), roots.end(),
                                    [&](Complex a, Complex b) { return std::abs(a - r) < std::abs(b - r); });
  }
  return out;
}

// Landing point if the ray has visibly arrived at the refined point. The
// test is made at the periodic level, where the approach is geometric even
// when the level-0 landing point is critical.
std::optional<Complex> captured_landing(const Polynomial &f, const Tracer &tracer,
                                        const std::vector<Chain> &chains, const Orbit &orbit,
                                        const TraceOptions &opts) {
  if (chains.size() < 2) {
    return std::nullopt;
  }
  auto q = refine_landing(f, tracer, chains.back(), orbit, opts);
  if (!q) {
    return std::nullopt;
  }
  const std::size_t lookback = std::min<std::size_t>(chains.size() - 1, static_cast<std::size_t>(opts.steps_per_halving));
  const int l = orbit.preperiod;
  const double now = std::abs(tracer.reference(chains.back(), l) - q->periodic);
  const double before = std::abs(tracer.reference(chains[chains.size() - 1 - lookback], l) - q->periodic);
  if (now < opts.capture_radius && now < before) {
    return q->landing;
  }
  return std::nullopt;
}

}  // namespace

TracedRay trace_ray(const Polynomial &f, const Angle &t, const TraceOptions &opts) {
  const int d = f.degree();
  Tracer tracer(f, opts, exact_angles(t, d));
  const Orbit orbit = orbit_of(t, d);

  std::optional<Complex> landing;
  auto done = [&](const Tracer::Run &run) {
    landing = captured_landing(f, tracer, run.chains, orbit, opts);
    return landing.has_value();
  };
  Tracer::Run run = tracer.descend(opts.min_potential, done);

  TracedRay ray;
  ray.argument = t;
  ray.note = run.note;
  for (const auto &c : run.chains) {
    ray.samples.push_back(RaySample{c.potential, c.levels[0]});
  }
  if (!landing && !run.bounced) {
    landing = captured_landing(f, tracer, run.chains, orbit, opts);
  }
  if (landing) {
    ray.landing = landing;
    ray.status = TraceStatus::Landed;
    return ray;
  }
  // No refined point: accept the last sample if it has stopped moving over
  // the last potential decade.
  if (!run.bounced && ray.samples.size() >= 2) {
    const auto &last = ray.samples.back();
    for (auto it = ray.samples.rbegin(); it != ray.samples.rend(); ++it) {
      if (it->potential >= 10 * last.potential) {
        if (std::abs(it->z - last.z) < opts.landing_tol) {
          ray.landing = last.z;
          ray.status = TraceStatus::Landed;
          return ray;
        }
        break;
      }
    }
  }
  ray.status = run.bounced ? TraceStatus::Bounced : TraceStatus::EscapedBudget;
  if (ray.note.empty()) {
    ray.note = "no landing detected above minimum potential";
  }
  return ray;
}

std::vector<TracedRay> trace_rays(const Polynomial &f, const std::vector<Angle> &angles, const TraceOptions &opts,
                                  unsigned threads) {
  std::vector<TracedRay> out(angles.size());
  std::vector<std::exception_ptr> errors(angles.size());
  if (threads == 0) {
    threads = std::max(1u, std::thread::hardware_concurrency());
  }
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, angles.size())));
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < angles.size(); i += threads) {
      try {
        out[i] = trace_ray(f, angles[i], opts);
      } catch (...) {
        errors[i] = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) {
    pool.emplace_back(work, w);
  }
  work(0);
  for (auto &th : pool) {
    th.join();
  }
  for (const auto &e : errors) {
    if (e) {
      std::rethrow_exception(e);
    }
  }
  return out;
}

Complex ray_point(const Polynomial &f, double angle, double potential, const TraceOptions &opts) {
  Tracer tracer(f, opts, float_angles(angle, f.degree()));
  if (potential >= opts.start_potential) {
    return tracer.pull(potential, nullptr).chain.levels[0];
  }
  auto run = tracer.descend(potential);
  if (run.bounced || run.floor || run.budget) {
    throw DynamicsError(run.bounced ? DynamicsError::Kind::Ambiguous : DynamicsError::Kind::NonConvergence,
                        "could not follow ray to potential: " + run.note);
  }
  return run.chains.back().levels[0];
}

std::string ray_csv(const TracedRay &ray) {
  std::ostringstream out;
  out.precision(17);
  out << "potential,re,im\n";
  for (const auto &s : ray.samples) {
    out << s.potential << ',' << s.z.real() << ',' << s.z.imag() << '\n';
  }
  return out.str();
}

EmpiricalLamination group_landings(const std::vector<TracedRay> &rays, double tol) {
  EmpiricalLamination lam;
  lam.tolerance = tol;
  std::vector<const TracedRay *> landed;
  for (const auto &r : rays) {
    if (r.landed()) {
      landed.push_back(&r);
    } else {
      auto kind = r.status == TraceStatus::Bounced ? DynamicsError::Kind::Ambiguous : DynamicsError::Kind::NotLanded;
      lam.failures.push_back(RayFailure{r.argument, kind, r.note});
    }
  }
  std::sort(landed.begin(), landed.end(), [](auto *a, auto *b) { return a->argument < b->argument; });
  const std::size_t n = landed.size();
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::size_t(std::size_t)> root = [&](std::size_t i) {
    return parent[i] == i ? i : parent[i] = root(parent[i]);
  };
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (std::abs(*landed[i]->landing - *landed[j]->landing) <= tol) {
        parent[root(i)] = root(j);
      }
    }
  }
  std::map<std::size_t, std::vector<std::size_t>> members;
  for (std::size_t i = 0; i < n; ++i) {
    members[root(i)].push_back(i);
  }
  std::vector<std::pair<AngleSet, Complex>> groups;
  for (const auto &[r, idx] : members) {
    std::vector<Angle> angles;
    for (auto i : idx) {
      angles.push_back(landed[i]->argument);
    }
    groups.emplace_back(AngleSet(std::move(angles)), *landed[idx.front()]->landing);
  }
  std::sort(groups.begin(), groups.end(), [](const auto &a, const auto &b) { return a.first.front() < b.first.front(); });
  for (auto &[set, z] : groups) {
    lam.groups.push_back(std::move(set));
    lam.landing_points.push_back(z);
  }
  return lam;
}

EmpiricalLamination empirical_lamination(const Polynomial &f, const AngleSet &angles, double tol,
                                         const TraceOptions &opts) {
  std::vector<Angle> list(angles.begin(), angles.end());
  std::vector<TracedRay> rays(list.size());
  std::vector<RayFailure> thrown;
  // Per-angle errors are collected rather than aborting the batch.
  std::vector<std::optional<RayFailure>> errors(list.size());
  unsigned threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(1, list.size())));
  auto work = [&](unsigned worker) {
    for (std::size_t i = worker; i < list.size(); i += threads) {
      try {
        rays[i] = trace_ray(f, list[i], opts);
      } catch (const DynamicsError &e) {
        errors[i] = RayFailure{list[i], e.kind(), e.what()};
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < threads; ++w) {
    pool.emplace_back(work, w);
  }
  work(0);
  for (auto &th : pool) {
    th.join();
  }
  std::vector<TracedRay> ok;
  for (std::size_t i = 0; i < list.size(); ++i) {
    if (errors[i]) {
      thrown.push_back(*errors[i]);
    } else {
      ok.push_back(std::move(rays[i]));
    }
  }
  EmpiricalLamination lam = group_landings(ok, tol);
  lam.failures.insert(lam.failures.end(), thrown.begin(), thrown.end());
  std::sort(lam.failures.begin(), lam.failures.end(),
            [](const RayFailure &a, const RayFailure &b) { return a.angle < b.angle; });
  return lam;
}

LaminationComparison compare_laminations(const std::vector<AngleSet> &empirical,
                                         const std::vector<AngleSet> &predicted) {
  std::vector<Angle> covered;
  for (const auto &g : empirical) {
    covered.insert(covered.end(), g.begin(), g.end());
  }
  AngleSet universe(covered);
  std::vector<AngleSet> restricted;
  for (const auto &c : predicted) {
    std::vector<Angle> keep;
    for (const auto &t : c) {
      if (universe.contains(t)) {
        keep.push_back(t);
      }
    }
    if (!keep.empty()) {
      restricted.emplace_back(std::move(keep));
    }
  }
  std::map<Angle, std::size_t> predicted_of;
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    for (const auto &t : restricted[i]) {
      predicted_of[t] = i;
    }
  }

  LaminationComparison out;
  out.empirical_refines_predicted = true;
  std::vector<bool> matched(restricted.size(), false);
  for (const auto &g : empirical) {
    auto it = predicted_of.find(g.front());
    bool inside = it != predicted_of.end() && std::all_of(g.begin(), g.end(), [&](const Angle &t) {
                    auto jt = predicted_of.find(t);
                    return jt != predicted_of.end() && jt->second == it->second;
                  });
    if (!inside) {
      out.empirical_refines_predicted = false;
    }
    if (inside && restricted[it->second] == g) {
      matched[it->second] = true;
    } else {
      out.unmatched_empirical.push_back(g);
    }
  }
  for (std::size_t i = 0; i < restricted.size(); ++i) {
    if (!matched[i]) {
      out.unmatched_predicted.push_back(restricted[i]);
    }
  }
  out.equal = out.unmatched_empirical.empty() && out.unmatched_predicted.empty();
  return out;
}

namespace {

double segment_distance(Complex p, Complex a, Complex b) {
  Complex ab = b - a;
  double len2 = std::norm(ab);
  double s = len2 > 0 ? std::clamp(((p - a) * std::conj(ab)).real() / len2, 0.0, 1.0) : 0.0;
  return std::abs(p - (a + s * ab));
}

}  // namespace

bool point_in_sector(const Polynomial &f, const TracedRay &ray1, const TracedRay &ray2, Complex z,
                     const TraceOptions &opts, double tol) {
  if (!ray1.landed() || !ray2.landed()) {
    throw DynamicsError(DynamicsError::Kind::Precondition, "sector rays must both land");
  }
  const double common = std::max(1e-6, 1e3 * tol);
  if (std::abs(*ray1.landing - *ray2.landing) > common) {
    throw DynamicsError(DynamicsError::Kind::Precondition,
                        "rays " + ray1.argument.str() + " and " + ray2.argument.str() + " land at distinct points");
  }
  const double cap = std::min(ray1.samples.front().potential, ray2.samples.front().potential);
  if (green(f, z) > cap) {
    return false;
  }

  // ray1 down to the landing point, ray2 back up, then the equipotential
  // arc at the cap through the angles of (t1, t2).
  std::vector<Complex> curve;
  for (const auto &s : ray1.samples) {
    curve.push_back(s.z);
  }
  curve.push_back(*ray1.landing);
  for (auto it = ray2.samples.rbegin(); it != ray2.samples.rend(); ++it) {
    curve.push_back(it->z);
  }
  const double t1 = ray1.argument.to_double();
  const double span = static_cast<double>(arc_length(ray1.argument, ray2.argument));
  const int arc_points = std::max(16, static_cast<int>(512 * span));
  for (int k = arc_points - 1; k >= 1; --k) {
    double s = std::fmod(t1 + span * k / arc_points, 1.0);
    curve.push_back(ray_point(f, s, cap, opts));
  }
  curve.push_back(curve.front());

  double winding = 0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    if (segment_distance(z, curve[i], curve[i + 1]) < tol) {
      throw DynamicsError(DynamicsError::Kind::OnBoundary, "point lies on the sector boundary");
    }
    winding += std::arg((curve[i + 1] - z) / (curve[i] - z));
  }
  return std::lround(winding / (2 * kPi)) != 0;
}

UnicriticalPortrait unicritical_portrait(const Polynomial &f, int precision, const TraceOptions &opts) {
  if (!f.is_unicritical()) {
    throw DynamicsError(DynamicsError::Kind::NotUnicritical, "polynomial is not of the form z^d + c");
  }
  const int d = f.degree();
  const Potential g0 = escape_potential(f, Complex(0));
  if (!g0.escaped || !(g0.value > 0)) {
    throw DynamicsError(DynamicsError::Kind::NotEscaping, "critical point does not escape");
  }
  const double gv = d * g0.value;

  // Orbit of the critical value up to a level where the Boettcher map is
  // the identity to double precision.
  std::vector<Complex> orbit{f(Complex(0))};
  double g = gv;
  while (g < opts.top_log_radius) {
    orbit.push_back(f(orbit.back()));
    g *= d;
  }
  const int top = static_cast<int>(orbit.size()) - 1;
  double theta = std::arg(orbit[top]) / (2 * kPi);
  if (theta < 0) {
    theta += 1;
  }
  // Walk down: of the d candidate preimage angles, keep the one whose ray
  // passes through the orbit point.
  for (int j = top - 1; j >= 0; --j) {
    const double potential = gv * std::pow(static_cast<double>(d), j);
    double best_angle = 0;
    double best_dist = std::numeric_limits<double>::infinity();
    for (int k = 0; k < d; ++k) {
      double s = (theta + k) / d;
      double dist = std::abs(ray_point(f, s, potential, opts) - orbit[j]);
      if (dist < best_dist) {
        best_dist = dist;
        best_angle = s;
      }
    }
    theta = best_angle;
  }

  const double scale = std::pow(10.0, precision);
  BigInt den = pow(BigInt(10), static_cast<unsigned>(precision));
  BigInt num(std::llround(theta * scale));
  UnicriticalPortrait out;
  out.raw_angle = theta;
  out.critical_value_angle = Angle(num, den);
  const Angle &tv = out.critical_value_angle;
  std::vector<Angle> block;
  for (int k = 0; k < d; ++k) {
    block.emplace_back(tv.num() + BigInt(k) * tv.den(), tv.den() * d);
  }
  out.portrait = validate_portrait(d, {AngleSet(block)});
  return out;
}

}  // namespace critport

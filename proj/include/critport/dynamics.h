#pragma once

// Double-precision dynamics of a polynomial: escape rate, external rays by
// pullback of Boettcher targets, landing detection, empirical laminations,
// sector membership and portraits of escaping unicritical maps.

#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "critport/angle.h"
#include "critport/polynomial.h"
#include "critport/portrait.h"

namespace critport {

class DynamicsError : public std::runtime_error {
 public:
  enum class Kind { NonConvergence, Diverged, Ambiguous, NotLanded, NotEscaping, NotUnicritical, OnBoundary, Precondition };

  DynamicsError(Kind kind, const std::string &what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }

 private:
  Kind kind_;
};

std::string to_string(DynamicsError::Kind kind);

struct Potential {
  double value = 0;
  /// False when the orbit stayed bounded for the whole iteration budget.
  bool escaped = false;
  int iterations = 0;
};

/// log|f^n(z)| / d^n once |f^n(z)| passes 10^min(100, 300/d).
Potential escape_potential(const Polynomial &f, Complex z, int budget = 100000);

inline double green(const Polynomial &f, Complex z) { return escape_potential(f, z).value; }

/// Roots of f'. Throws DynamicsError(NonConvergence).
std::vector<Complex> critical_points(const Polynomial &f);

struct TraceOptions {
  double start_potential = 4.0;
  int steps_per_halving = 12;
  double min_potential = 1e-10;
  double landing_tol = 1e-8;
  /// Pullback is ambiguous when the reference point is farther from the
  /// chosen root than margin * (distance to the next root).
  double ambiguity_margin = 0.25;
  /// log|w| at which the Boettcher map is replaced by the identity.
  double top_log_radius = 24.0;
  long iteration_budget = 100000;
  /// Largest accepted distance between consecutive samples.
  double max_spacing = 0.25;
  /// How often a step may be halved before giving up on it.
  int max_subdivisions = 10;
  /// A Newton-refined landing point is accepted once the ray is this close.
  double capture_radius = 1e-2;
  /// Landing refinement is skipped when d^period exceeds this.
  double max_refine_multiplier = 1e8;
  /// Preimages closer than this (relative to their size) are one root.
  double cluster_tol = 1e-6;
  /// Same, for the final pullback from a refined periodic point. Wider,
  /// because a landing at a critical point of multiplicity m leaves roots
  /// about eps^(1/m) apart.
  double landing_cluster_tol = 1e-4;
};

enum class TraceStatus { Landed, EscapedBudget, Bounced };

std::string to_string(TraceStatus status);

struct RaySample {
  double potential = 0;
  Complex z;
};

struct TracedRay {
  Angle argument;
  /// Ordered by strictly decreasing potential.
  std::vector<RaySample> samples;
  std::optional<Complex> landing;
  TraceStatus status = TraceStatus::EscapedBudget;
  std::string note;

  bool landed() const { return status == TraceStatus::Landed; }
};

/// Traces the external ray of argument t down from opts.start_potential.
/// A bounce is reported through the status, not thrown. Throws
/// DynamicsError(Diverged) if the arithmetic overflows.
TracedRay trace_ray(const Polynomial &f, const Angle &t, const TraceOptions &opts = {});

/// Traces independent rays on worker threads; results follow the input order.
std::vector<TracedRay> trace_rays(const Polynomial &f, const std::vector<Angle> &angles,
                                  const TraceOptions &opts = {}, unsigned threads = 0);

/// Point of the ray with a floating-point argument at potential g, reached
/// by tracing down from the start potential.
Complex ray_point(const Polynomial &f, double angle, double potential, const TraceOptions &opts = {});

/// `potential,re,im` header then one row per sample.
std::string ray_csv(const TracedRay &ray);

struct RayFailure {
  Angle angle;
  DynamicsError::Kind kind;
  std::string reason;
};

struct EmpiricalLamination {
  /// Groups of angles whose rays land within tolerance, chained.
  std::vector<AngleSet> groups;
  /// Landing point of the first ray of each group.
  std::vector<Complex> landing_points;
  double tolerance = 0;
  std::vector<RayFailure> failures;

  bool complete() const { return failures.empty(); }
};

EmpiricalLamination empirical_lamination(const Polynomial &f, const AngleSet &angles, double tol,
                                         const TraceOptions &opts = {});

/// Single-linkage grouping of already traced rays. Rays that did not land
/// are reported as failures.
EmpiricalLamination group_landings(const std::vector<TracedRay> &rays, double tol);

struct LaminationComparison {
  bool equal = false;
  /// Every empirical group lies inside one predicted class.
  bool empirical_refines_predicted = false;
  std::vector<AngleSet> unmatched_empirical;
  std::vector<AngleSet> unmatched_predicted;
};

/// Compares two partitions after restricting the predicted classes to the
/// angles covered by the empirical groups.
LaminationComparison compare_laminations(const std::vector<AngleSet> &empirical,
                                         const std::vector<AngleSet> &predicted);

/// Whether z lies in the sector between the landed rays t1 and t2 (taken
/// counterclockwise from t1), below the start potential. The sector is
/// closed off by the equipotential arc at that potential. Throws
/// Precondition if the rays do not land together and OnBoundary if z is
/// within tol of the boundary curve.
bool point_in_sector(const Polynomial &f, const TracedRay &ray1, const TracedRay &ray2, Complex z,
                     const TraceOptions &opts = {}, double tol = 1e-9);

struct UnicriticalPortrait {
  /// External argument of the critical value, rounded to the precision.
  Angle critical_value_angle;
  double raw_angle = 0;
  CriticalPortrait portrait;
};

/// Portrait {(t_v + k)/d} of an escaping z^d + c, with t_v rounded to a
/// fraction with denominator 10^precision.
UnicriticalPortrait unicritical_portrait(const Polynomial &f, int precision = 6, const TraceOptions &opts = {});

}  // namespace critport

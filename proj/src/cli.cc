#include "critport/cli.h"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <optional>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>

#include "critport/diagram.h"
#include "critport/dynamics.h"
#include "critport/lamination.h"
#include "critport/orbit_portrait.h"
#include "critport/portrait.h"
#include "critport/text_format.h"

namespace critport {

namespace {

std::string complex_str(Complex z) {
  std::ostringstream s;
  s << std::setprecision(12) << z.real() << (z.imag() < 0 ? " - " : " + ") << std::abs(z.imag()) << "i";
  return s.str();
}

void write_output(const std::string &path, const std::string &text, std::ostream &out) {
  if (path.empty() || path == "-") {
    out << text;
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) {
    throw std::runtime_error("cannot write '" + path + "'");
  }
  file << text;
}

CriticalPortrait load_portrait(const std::string &path) { return parse_portrait(read_text_file(path)); }

// Largest preperiod among the portrait's own angles, so that the classes of
// the portrait angles are always part of the materialization.
int portrait_preperiod(const CriticalPortrait &portrait) {
  int l = 0;
  for (const auto &t : portrait.all_angles()) {
    l = std::max(l, preperiod_period(t, portrait.degree()).preperiod);
  }
  return l;
}

struct Args {
  std::string portrait;
  std::string input;
  std::string polynomial;
  std::string angle;
  std::string out;
  std::string side = "both";
  std::optional<int> preperiod;
  int period = 0;
  int size = 512;
  bool labels = false;
  bool sectors = false;
  double group_tol = 1e-5;
  double min_potential = 0;
  double start_potential = 0;
  int precision = 6;
  std::optional<int> critical_values;
  std::vector<double> rates;
  long long budget = 10'000'000;
  long long seed = 0;
};

int cmd_classes(const Args &a, std::ostream &out, std::ostream &err) {
  CriticalPortrait portrait = load_portrait(a.portrait);
  const Kneading k = kneading(portrait);
  if (k == Kneading::Periodic) {
    err << "warning: portrait has periodic kneading\n";
  }
  LaminationOptions opts;
  opts.budget = a.budget;
  auto lam = classes_up_to(portrait, a.preperiod.value_or(portrait_preperiod(portrait)), a.period, opts);
  out << "# kneading: " << to_string(k) << "\n" << lam.dump();
  return kExitOk;
}

int cmd_diagram(const Args &a, std::ostream &out, std::ostream &) {
  std::string text = read_text_file(a.input);
  std::vector<AngleSet> sets;
  // A `d=` header marks a portrait or orbit-portrait file; anything else is
  // read as a lamination dump.
  bool has_header = false;
  std::istringstream lines(text);
  for (std::string line; std::getline(lines, line);) {
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') {
      continue;
    }
    has_header = line.compare(first, 2, "d=") == 0;
    break;
  }
  if (has_header) {
    sets = parse_degree_and_sets(text).sets;
  } else {
    sets = parse_angle_set_lines(text);
  }
  DiagramOptions opts;
  opts.size = a.size;
  opts.labels = a.labels;
  write_output(a.out, render_svg(sets, opts), out);
  return kExitOk;
}

int cmd_verify(const Args &a, std::ostream &out, std::ostream &err) {
  Polynomial f = Polynomial::parse(a.polynomial);
  CriticalPortrait portrait = load_portrait(a.portrait);
  if (f.degree() != portrait.degree()) {
    throw FormatError("polynomial degree " + std::to_string(f.degree()) + " does not match portrait degree " +
                      std::to_string(portrait.degree()));
  }
  LaminationOptions lopts;
  lopts.budget = a.budget;
  auto lam = classes_up_to(portrait, a.preperiod.value_or(portrait_preperiod(portrait)), a.period, lopts);
  std::vector<Angle> angles;
  for (const auto &c : lam.classes()) {
    angles.insert(angles.end(), c.elems.begin(), c.elems.end());
  }
  auto empirical = empirical_lamination(f, AngleSet(angles), a.group_tol);
  out << "# polynomial: " << f.str() << "\n";
  out << "# portrait: " << portrait.str() << "\n";
  out << "# kneading: " << to_string(kneading(portrait)) << "\n";
  out << "rays traced: " << angles.size() << "\n";
  out << "predicted classes: " << lam.classes().size() << "\n";
  out << "observed groups: " << empirical.groups.size() << "\n";
  if (!empirical.complete()) {
    for (const auto &f_ : empirical.failures) {
      err << "ray " << f_.angle.str() << ": " << to_string(f_.kind) << " (" << f_.reason << ")\n";
    }
    out << "result: tracing failed for " << empirical.failures.size() << " rays\n";
    return kExitTraceFailure;
  }
  auto cmp = compare_laminations(empirical.groups, lam.class_sets());
  if (cmp.equal) {
    out << "result: agreement\n";
    return kExitOk;
  }
  for (const auto &c : cmp.unmatched_predicted) {
    out << "predicted: " << c.str() << "\n";
  }
  for (const auto &g : cmp.unmatched_empirical) {
    out << "observed: " << g.str() << "\n";
  }
  out << "result: mismatch\n";
  return kExitMismatch;
}

int cmd_itin(const Args &a, std::ostream &out, std::ostream &) {
  CriticalPortrait portrait = load_portrait(a.portrait);
  Angle t = Angle::parse(a.angle);
  for (Side side : {Side::Left, Side::Right}) {
    if (a.side != "both" && a.side != to_string(side)) {
      continue;
    }
    Itinerary it = itinerary(t, side, portrait);
    out << to_string(side) << " " << it.str() << " " << it.expand(12) << "\n";
  }
  return kExitOk;
}

int cmd_kneading(const Args &a, std::ostream &out, std::ostream &) {
  out << to_string(kneading(load_portrait(a.portrait))) << "\n";
  return kExitOk;
}

int cmd_orbit_portrait(const Args &a, std::ostream &out, std::ostream &) {
  OrbitPortrait p = parse_orbit_portrait(read_text_file(a.input));
  out << "valid orbit portrait of period " << p.period() << "\n";
  try {
    out << "rotation number: " << rotation_number(p).str() << "\n";
    auto report = check_cycle_bounds(p, a.critical_values);
    out << "cycles: " << report.cycles << "\n";
    for (const auto &v : report.violations) {
      out << "violation: " << v << "\n";
    }
    out << "cycle bounds: " << (report.ok() ? "ok" : "violated") << "\n";
  } catch (const OrbitPortraitError &e) {
    out << to_string(e.kind()) << ": " << e.what() << "\n";
  }
  if (a.sectors) {
    for (std::size_t i = 0; i < p.period(); ++i) {
      for (const auto &s : sectors(p, i)) {
        Rational alpha = s.angular_length();
        auto step = sector_length_step(alpha, p.degree());
        Arc image = sector_map(s.span, p.degree());
        out << "sector A" << i << " (" << s.span.lo.str() << "," << s.span.hi.str() << ") length " << alpha
            << " weight " << critical_weight(alpha, p.degree()) << " image (" << image.lo.str() << ","
            << image.hi.str() << ") length " << step.length << (step.full_circle ? " full-circle" : "") << "\n";
      }
    }
  }
  return kExitOk;
}

int cmd_rates(const Args &a, std::ostream &out, std::ostream &) {
  CriticalPortrait portrait = load_portrait(a.portrait);
  EscapeRates rates(a.rates);
  for (const auto &c : escape_rate_constraints(portrait)) {
    out << "constraint: " << portrait.degree() << "^" << c.steps << " r" << c.from + 1 << " > r" << c.to + 1 << "\n";
  }
  out << (escape_rates_feasible(portrait, rates) ? "feasible" : "infeasible") << "\n";
  return kExitOk;
}

int cmd_trace(const Args &a, std::ostream &out, std::ostream &err) {
  Polynomial f = Polynomial::parse(a.polynomial);
  Angle t = Angle::parse(a.angle);
  TraceOptions opts;
  if (a.min_potential > 0) {
    opts.min_potential = a.min_potential;
  }
  if (a.start_potential > 0) {
    opts.start_potential = a.start_potential;
  }
  TracedRay ray = trace_ray(f, t, opts);
  write_output(a.out, ray_csv(ray), out);
  std::ostream &summary = (a.out.empty() || a.out == "-") ? err : out;
  summary << "ray " << t.str() << ": " << to_string(ray.status);
  if (ray.landing) {
    summary << " at " << complex_str(*ray.landing);
  }
  if (!ray.note.empty()) {
    summary << " (" << ray.note << ")";
  }
  summary << "\n";
  return ray.landed() ? kExitOk : kExitTraceFailure;
}

int cmd_unicritical(const Args &a, std::ostream &out, std::ostream &) {
  Polynomial f = Polynomial::parse(a.polynomial);
  auto result = unicritical_portrait(f, a.precision);
  std::ostringstream raw;
  raw << std::setprecision(15) << result.raw_angle;
  out << "# critical value angle " << result.critical_value_angle.str() << " (" << raw.str() << ")\n";
  out << format_portrait(result.portrait);
  return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err) {
  CLI::App app{"Critical portraits, rational laminations and external rays"};
  app.require_subcommand(1);
  app.fallthrough();
  Args a;
  app.add_option("--seed", a.seed, "Reserved; all operations are deterministic");

  auto *classes = app.add_subcommand("classes", "Classes of the lamination generated by a portrait");
  classes->add_option("portrait", a.portrait, "Portrait file")->required();
  classes->add_option("--preperiod", a.preperiod, "Largest preperiod (default: that of the portrait angles)");
  classes->add_option("--period", a.period, "Largest period")->required();
  classes->add_option("--budget", a.budget, "Largest enumerated denominator");

  auto *diagram = app.add_subcommand("diagram", "SVG diagram of a portrait or lamination dump");
  diagram->add_option("input", a.input, "Portrait file or lamination dump")->required();
  diagram->add_option("--out", a.out, "Output SVG (default: stdout)");
  diagram->add_option("--size", a.size, "Canvas size in pixels")->check(CLI::Range(16, 100000));
  diagram->add_flag("--labels", a.labels, "Print angles next to their points");

  auto *verify = app.add_subcommand("verify", "Compare traced landings with the predicted lamination");
  verify->add_option("polynomial", a.polynomial, "Monic centered polynomial, e.g. 'z^3 - 2.25z + 0.4330127'")
      ->required();
  verify->add_option("portrait", a.portrait, "Portrait file")->required();
  verify->add_option("--period", a.period, "Largest period")->required();
  verify->add_option("--preperiod", a.preperiod, "Largest preperiod (default: that of the portrait angles)");
  verify->add_option("--group-tol", a.group_tol, "Landing points closer than this are grouped");
  verify->add_option("--budget", a.budget, "Largest enumerated denominator");

  auto *itin = app.add_subcommand("itin", "One-sided itineraries of an angle");
  itin->add_option("portrait", a.portrait, "Portrait file")->required();
  itin->add_option("angle", a.angle, "Angle num/den")->required();
  itin->add_option("--side", a.side, "left, right or both")->check(CLI::IsMember({"left", "right", "both"}));

  auto *kn = app.add_subcommand("kneading", "Periodic or aperiodic kneading");
  kn->add_option("portrait", a.portrait, "Portrait file")->required();

  auto *op = app.add_subcommand("orbit-portrait", "Validate an orbit portrait and report rotation and cycles");
  op->add_option("file", a.input, "Orbit portrait file")->required();
  op->add_option("--critical-values", a.critical_values, "Number k of critical values for the k+1 bound");
  op->add_flag("--sectors", a.sectors, "List sectors with lengths, weights and images");

  auto *rates = app.add_subcommand("rates", "Check escape rates against the portrait's constraints");
  rates->add_option("portrait", a.portrait, "Portrait file")->required();
  rates->add_option("rates", a.rates, "One rate per block")->required();

  auto *trace = app.add_subcommand("trace", "Trace one external ray and print it as CSV");
  trace->add_option("polynomial", a.polynomial, "Monic centered polynomial")->required();
  trace->add_option("angle", a.angle, "Angle num/den")->required();
  trace->add_option("--out", a.out, "Output CSV (default: stdout)");
  trace->add_option("--min-potential", a.min_potential, "Lowest potential to trace to");
  trace->add_option("--start-potential", a.start_potential, "Potential of the first sample");

  auto *uni = app.add_subcommand("unicritical-portrait", "Portrait of an escaping z^d + c");
  uni->add_option("polynomial", a.polynomial, "Polynomial z^d + c")->required();
  uni->add_option("--precision", a.precision, "Decimal digits of the critical value angle")->check(CLI::Range(1, 15));

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::CallForAllHelp &e) {
    app.exit(e, out, err);
    return kExitOk;
  } catch (const CLI::ParseError &e) {
    err << "error: " << e.what() << "\n";
    return kExitParse;
  }

  try {
    if (*classes) {
      return cmd_classes(a, out, err);
    }
    if (*diagram) {
      return cmd_diagram(a, out, err);
    }
    if (*verify) {
      return cmd_verify(a, out, err);
    }
    if (*itin) {
      return cmd_itin(a, out, err);
    }
    if (*kn) {
      return cmd_kneading(a, out, err);
    }
    if (*op) {
      return cmd_orbit_portrait(a, out, err);
    }
    if (*rates) {
      return cmd_rates(a, out, err);
    }
    if (*trace) {
      return cmd_trace(a, out, err);
    }
    if (*uni) {
      return cmd_unicritical(a, out, err);
    }
  } catch (const FormatError &e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const AngleError &e) {
    err << "parse error: " << e.what() << "\n";
    return kExitParse;
  } catch (const PortraitError &e) {
    err << "invalid portrait: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitInvalidPortrait;
  } catch (const OrbitPortraitError &e) {
    err << "invalid orbit portrait: " << to_string(e.kind()) << ": " << e.what() << "\n";
    return kExitInvalidPortrait;
  } catch (const DynamicsError &e) {
    err << "error: " << to_string(e.kind()) << ": " << e.what() << "\n";
    switch (e.kind()) {
      case DynamicsError::Kind::NotEscaping:
      case DynamicsError::Kind::NotUnicritical:
      case DynamicsError::Kind::Precondition:
        return kExitOther;
      default:
        return kExitTraceFailure;
    }
  } catch (const std::invalid_argument &e) {
    err << "invalid argument: " << e.what() << "\n";
    return kExitParse;
  } catch (const std::exception &e) {
    err << "error: " << e.what() << "\n";
    return kExitOther;
  }
  return kExitOther;
}

}  // namespace critport

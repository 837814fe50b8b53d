#ifndef PROBMETRICS_AUDIT_HPP
#define PROBMETRICS_AUDIT_HPP

// Randomized relation auditing: reproducible instance generation,
// metric-axiom fuzzing for the two line metrics, and a gap search that
// compares the band distance against the neighborhood distance on every
// instance.  The search always carries two curated instances — the
// split pair (a point mass against mass half at -1, half at +1), whose
// gap is 1/2, and the ramp pair, whose gap is 0 — so a report is
// informative even at a single trial.  Report language sticks to "gap
// observed": the records state exact values and leave interpretation to
// the reader.

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "probmetrics/levy.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/prohorov.hpp"
#include "probmetrics/rational.hpp"

namespace probmetrics {

// Generation bounds for random discrete instances.  Identical specs yield
// identical instances: draws come from a seeded mt19937_64 through
// rejection sampling only, so the stream is platform-independent.
struct InstanceSpec {
  std::uint64_t seed = 1;
  std::size_t min_atoms = 1;
  std::size_t max_atoms = 4;
  long coord_span = 4;          // atom coordinates lie in [-coord_span, coord_span]
  std::uint64_t den_bound = 8;  // atom and weight denominators stay <= den_bound
};

namespace detail {

inline std::uint64_t bounded_draw(std::mt19937_64& rng, std::uint64_t n) {
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Number of distinct rationals p/q with q <= den_bound and |p/q| <= span.
inline std::size_t coord_count(long span, std::uint64_t den_bound) {
  std::size_t count = 0;
  for (long q = 1; q <= static_cast<long>(den_bound); ++q)
    for (long p = -span * q; p <= span * q; ++p)
      if (std::gcd(p < 0 ? -p : p, q) == 1) ++count;
  return count;
}

inline void validate_spec(const InstanceSpec& spec) {
  if (spec.min_atoms < 1 || spec.min_atoms > spec.max_atoms)
    throw ValidationError("instance spec: atom-count range [" +
                          std::to_string(spec.min_atoms) + ", " +
                          std::to_string(spec.max_atoms) + "] is empty or starts below 1");
  if (spec.coord_span < 0)
    throw ValidationError("instance spec: negative coordinate span");
  if (spec.den_bound < 1) throw ValidationError("instance spec: denominator bound below 1");
  if (spec.den_bound < spec.max_atoms)
    throw ValidationError("instance spec: infeasible bounds, denominator bound " +
                          std::to_string(spec.den_bound) +
                          " cannot split unit mass into up to " +
                          std::to_string(spec.max_atoms) + " positive weights");
  if (spec.max_atoms > static_cast<std::size_t>(2 * spec.coord_span + 1) &&
      spec.max_atoms > coord_count(spec.coord_span, spec.den_bound))
    throw ValidationError("instance spec: infeasible bounds, atom range too small for " +
                          std::to_string(spec.max_atoms) + " distinct atoms");
}

inline DiscreteMeasure draw_measure(std::mt19937_64& rng, const InstanceSpec& spec) {
  std::size_t m = spec.min_atoms + bounded_draw(rng, spec.max_atoms - spec.min_atoms + 1);
  std::vector<Rat> atoms;
  while (atoms.size() < m) {
    long q = 1 + static_cast<long>(bounded_draw(rng, spec.den_bound));
    long p = static_cast<long>(bounded_draw(rng, 2 * spec.coord_span * q + 1)) -
             spec.coord_span * q;
    Rat a(p, q);
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  }
  // Unit mass split into m positive parts over a common denominator
  // D <= den_bound: distinct cut points inside 1..D-1.
  std::uint64_t total = m + bounded_draw(rng, spec.den_bound - m + 1);
  std::vector<std::uint64_t> cuts{0, total};
  while (cuts.size() < m + 1) {
    std::uint64_t c = 1 + bounded_draw(rng, total - 1);
    if (std::find(cuts.begin(), cuts.end(), c) == cuts.end()) cuts.push_back(c);
  }
  std::sort(cuts.begin(), cuts.end());
  std::vector<Rat> weights;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i)
    weights.emplace_back(static_cast<long>(cuts[i + 1] - cuts[i]), static_cast<long>(total));
  return make_discrete_measure(std::move(atoms), std::move(weights));
}

}  // namespace detail

inline std::pair<DiscreteMeasure, DiscreteMeasure> random_instance(const InstanceSpec& spec) {
  detail::validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  DiscreteMeasure mu = detail::draw_measure(rng, spec);
  DiscreteMeasure nu = detail::draw_measure(rng, spec);
  return {std::move(mu), std::move(nu)};
}

// --- metric-axiom fuzzing ---

struct AxiomViolation {
  std::size_t trial = 0;  // 1-based
  std::string metric;     // "levy" | "prohorov"
  std::string axiom;      // "symmetry" | "identity" | "triangle"
  std::string note;       // rendered values of the violated comparison
};

struct FuzzReport {
  InstanceSpec spec;
  std::size_t trials = 0;
  std::size_t checks = 0;  // individual exact assertions evaluated
  std::vector<AxiomViolation> violations;
};

// Draws `trials` random triples and checks, in exact arithmetic, symmetry,
// identity of indiscernibles, and the triangle inequality for both the
// band distance and the neighborhood distance.  Violations are collected
// with their concrete values rather than thrown: the report is the
// deliverable, and an empty violation list is the expected outcome.
inline FuzzReport metric_axiom_fuzz(const InstanceSpec& spec, std::size_t trials) {
  if (trials < 1) throw ValidationError("metric_axiom_fuzz: trials must be at least 1");
  detail::validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  FuzzReport rep{spec, trials, 0, {}};

  auto flag = [&rep](std::size_t trial, const char* metric, const char* axiom,
                     std::string note) {
    rep.violations.push_back({trial, metric, axiom, std::move(note)});
  };

  for (std::size_t t = 1; t <= trials; ++t) {
    DiscreteMeasure ms[3] = {detail::draw_measure(rng, spec), detail::draw_measure(rng, spec),
                             detail::draw_measure(rng, spec)};
    PiecewiseCdf fs[3] = {cdf_of(ms[0]), cdf_of(ms[1]), cdf_of(ms[2])};
    Rat lv[3][3], pv[3][3];
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) {
        lv[i][j] = levy_distance(fs[i], fs[j]).value;
        pv[i][j] = prohorov_bruteforce(Measure(ms[i]), Measure(ms[j])).value;
      }

    for (int i = 0; i < 3; ++i) {
      ++rep.checks;
      if (lv[i][i] != 0) flag(t, "levy", "identity", "self-distance " + to_string(lv[i][i]));
      ++rep.checks;
      if (pv[i][i] != 0)
        flag(t, "prohorov", "identity", "self-distance " + to_string(pv[i][i]));
    }
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) {
        ++rep.checks;
        if (lv[i][j] != lv[j][i])
          flag(t, "levy", "symmetry", to_string(lv[i][j]) + " vs " + to_string(lv[j][i]));
        ++rep.checks;
        if (pv[i][j] != pv[j][i])
          flag(t, "prohorov", "symmetry", to_string(pv[i][j]) + " vs " + to_string(pv[j][i]));
        bool equal = ms[i] == ms[j];
        ++rep.checks;
        if ((lv[i][j] == 0) != equal)
          flag(t, "levy", "identity",
               "distance " + to_string(lv[i][j]) + (equal ? " on equal" : " on distinct") +
                   " measures");
        ++rep.checks;
        if ((pv[i][j] == 0) != equal)
          flag(t, "prohorov", "identity",
               "distance " + to_string(pv[i][j]) + (equal ? " on equal" : " on distinct") +
                   " measures");
      }
    const int perms[3][3] = {{0, 1, 2}, {1, 2, 0}, {2, 0, 1}};
    for (const auto& p : perms) {
      ++rep.checks;
      if (lv[p[0]][p[2]] > lv[p[0]][p[1]] + lv[p[1]][p[2]])
        flag(t, "levy", "triangle",
             to_string(lv[p[0]][p[2]]) + " > " + to_string(lv[p[0]][p[1]]) + " + " +
                 to_string(lv[p[1]][p[2]]));
      ++rep.checks;
      if (pv[p[0]][p[2]] > pv[p[0]][p[1]] + pv[p[1]][p[2]])
        flag(t, "prohorov", "triangle",
             to_string(pv[p[0]][p[2]]) + " > " + to_string(pv[p[0]][p[1]]) + " + " +
                 to_string(pv[p[1]][p[2]]));
    }
  }
  return rep;
}

// --- band-vs-neighborhood gap search ---

struct GapRecord {
  std::size_t trial = 0;  // 1-based for random draws, 0 for curated instances
  std::string label;      // "random" | "split-pair" | "ramp-pair" | "adhoc"
  Measure mu, nu;
  Distance levy;
  Distance prohorov;
  Rat gap;  // prohorov - levy, nonnegative on every record
  std::optional<ProhorovWitness> pi_witness;
  Rat levy_probe = 0;  // width just below the band distance; 0 when levy == 0
  std::optional<BandViolation> levy_witness;  // band failure at levy_probe
};

struct GapSearchReport {
  InstanceSpec spec;
  std::size_t trials = 0;
  std::vector<GapRecord> records;  // sorted by gap, largest first, stable in trial order
};

// Audits one pair: both distances with certificates, and the gap between
// them.  A negative gap would contradict the one-sided domination of the
// band distance by the neighborhood distance, so it raises logic_error
// rather than entering a report.
inline GapRecord gap_record(const Measure& mu, const Measure& nu, std::size_t trial = 0,
                            std::string label = "adhoc") {
  PiecewiseCdf f = as_cdf(mu), g = as_cdf(nu);
  GapRecord r;
  r.trial = trial;
  r.label = std::move(label);
  r.mu = mu;
  r.nu = nu;
  r.levy = levy_distance(f, g);
  ProhorovReport pr = prohorov_bruteforce(mu, nu);
  r.prohorov = {pr.value, pr.attained};
  r.pi_witness = pr.witness;
  r.gap = r.prohorov.value - r.levy.value;
  if (r.gap < 0)
    throw std::logic_error("gap_record: band distance " + to_string(r.levy.value) +
                           " exceeds neighborhood distance " + to_string(r.prohorov.value));
  if (r.levy.value > 0) {
    r.levy_probe = r.levy.value * Rat(1023, 1024);
    r.levy_witness = levy_violation(f, g, r.levy_probe);
    if (!r.levy_witness)
      throw std::logic_error("gap_record: band feasible below its computed distance");
  }
  return r;
}

namespace detail {

inline Measure split_pair_mu() { return Measure(make_discrete_measure({Rat(0)}, {Rat(1)})); }
inline Measure split_pair_nu() {
  return Measure(make_discrete_measure({Rat(-1), Rat(1)}, {Rat(1, 2), Rat(1, 2)}));
}
inline Measure ramp_pair_mu() {
  return Measure(PiecewiseCdf({Rat(0), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1)}));
}
inline Measure ramp_pair_nu() {
  return Measure(make_discrete_measure({Rat(0), Rat(1, 4)}, {Rat(2, 3), Rat(1, 3)}));
}

}  // namespace detail

inline GapSearchReport levy_prohorov_gap_search(const InstanceSpec& spec, std::size_t trials) {
  if (trials < 1)
    throw ValidationError("levy_prohorov_gap_search: trials must be at least 1");
  detail::validate_spec(spec);
  std::mt19937_64 rng(spec.seed);
  GapSearchReport rep{spec, trials, {}};
  for (std::size_t t = 1; t <= trials; ++t) {
    Measure mu{detail::draw_measure(rng, spec)};
    Measure nu{detail::draw_measure(rng, spec)};
    rep.records.push_back(gap_record(mu, nu, t, "random"));
  }
  rep.records.push_back(
      gap_record(detail::split_pair_mu(), detail::split_pair_nu(), 0, "split-pair"));
  rep.records.push_back(
      gap_record(detail::ramp_pair_mu(), detail::ramp_pair_nu(), 0, "ramp-pair"));
  std::stable_sort(rep.records.begin(), rep.records.end(),
                   [](const GapRecord& a, const GapRecord& b) { return a.gap > b.gap; });
  return rep;
}

// Neutral one-line summary for reports; states what was observed and
// nothing more.
inline std::string gap_summary(const GapSearchReport& rep) {
  if (rep.records.empty()) return "no records";
  const GapRecord& top = rep.records.front();
  if (top.gap == 0) return "no gap observed: band and neighborhood distances agreed everywhere";
  return "largest gap observed: " + to_string(top.gap) + " (band " + to_string(top.levy.value) +
         ", neighborhood " + to_string(top.prohorov.value) + ") on " + top.label +
         " instance";
}

}  // namespace probmetrics

#endif  // PROBMETRICS_AUDIT_HPP

#ifndef PROBMETRICS_CONVERGENCE_HPP
#define PROBMETRICS_CONVERGENCE_HPP

// Weak-convergence diagnostics on finite sequence prefixes: Portmanteau
// condition reports, Levy-metric convergence profiles, support quantization,
// tightness witnesses, and a deterministic Helly-style subsequence
// extraction.  All verdicts are evidence at prefix length N, never proofs;
// every report carries the prefix length and the index window it examined.

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "probmetrics/levy.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"

namespace probmetrics {

// Ordered prefix (mu_1, ..., mu_N), index base 1.  Operations validate
// nonemptiness and that every entry lives on the line.
using MeasureSequence = std::vector<Measure>;

// Continuous piecewise-linear function: linear between knots, constant
// outside them.  Used as the test-function family of condition (iv) and
// integrated exactly against either measure kind.
class PiecewiseLinearFn {
 public:
  PiecewiseLinearFn(std::vector<Rat> knots, std::vector<Rat> values)
      : knots_(std::move(knots)), values_(std::move(values)) {
    if (knots_.empty()) throw ValidationError("piecewise-linear fn: no knots");
    if (knots_.size() != values_.size())
      throw ValidationError("piecewise-linear fn: " + std::to_string(knots_.size()) +
                            " knots vs " + std::to_string(values_.size()) + " values");
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i)
      if (knots_[i] >= knots_[i + 1])
        throw ValidationError("piecewise-linear fn: knots not increasing at " +
                              to_string(knots_[i + 1]));
  }

  const std::vector<Rat>& knots() const { return knots_; }
  const std::vector<Rat>& values() const { return values_; }

  Rat operator()(const Rat& x) const {
    if (x <= knots_.front()) return values_.front();
    if (x >= knots_.back()) return values_.back();
    auto it = std::upper_bound(knots_.begin(), knots_.end(), x);
    std::size_t i = static_cast<std::size_t>(it - knots_.begin()) - 1;
    return values_[i] + (values_[i + 1] - values_[i]) * (x - knots_[i]) /
                            (knots_[i + 1] - knots_[i]);
  }

 private:
  std::vector<Rat> knots_;
  std::vector<Rat> values_;
};

// Hat function of height 1 and slope 1 centered at `a`; values stay in
// [0, 1], so it is admissible for condition (iv).
inline PiecewiseLinearFn unit_bump(const Rat& a) {
  return PiecewiseLinearFn({a - 1, a, a + 1}, {Rat(0), Rat(1), Rat(0)});
}

// Exact integral of f against a line measure.  Atoms contribute weights
// times point values; continuous slabs split at the knots, where the
// integrand f * density is linear, so trapezoids are exact.
inline Rat integral(const PiecewiseLinearFn& f, const Measure& m) {
  if (!measure_on_line(m))
    throw ValidationError("integral: measure lives on a finite metric space");
  if (is_discrete(m)) {
    const auto& d = as_discrete(m);
    Rat total = 0;
    for (std::size_t i = 0; i < d.size(); ++i) total += d.weight(i) * f(d.atom(i));
    return total;
  }
  const auto& g = std::get<PiecewiseCdf>(m);
  Rat total = 0;
  for (std::size_t i = 0; i < g.size(); ++i) {
    total += g.jump(i) * f(g.breakpoints()[i]);
    if (i + 1 == g.size() || g.slopes()[i] == 0) continue;
    std::vector<Rat> cuts{g.breakpoints()[i]};
    for (const auto& k : f.knots())
      if (k > g.breakpoints()[i] && k < g.breakpoints()[i + 1]) cuts.push_back(k);
    cuts.push_back(g.breakpoints()[i + 1]);
    for (std::size_t c = 0; c + 1 < cuts.size(); ++c)
      total += g.slopes()[i] * (f(cuts[c]) + f(cuts[c + 1])) / 2 * (cuts[c + 1] - cuts[c]);
  }
  return total;
}

// Test families for the four Portmanteau conditions.  Closed sets are
// finite point sets; open and continuity sets are interval unions (the
// caller supplies genuinely open parts for condition (ii)); functions must
// take values in [0, 1].
struct TestFamilies {
  std::vector<PointSet> closed_sets;
  std::vector<IntervalUnion> open_sets;
  std::vector<IntervalUnion> continuity_sets;
  std::vector<PiecewiseLinearFn> functions;

  bool empty() const {
    return closed_sets.empty() && open_sets.empty() && continuity_sets.empty() &&
           functions.empty();
  }
};

// Per-condition evidence: one margin per evaluated family member (max over
// the tail window), the raw window traces, and the members whose traces
// reverse direction at least twice (oscillation, as with alternating-sign
// atom sequences).  `members` holds 1-based positions into the family, so
// conditions that skip members — continuity sets with massive boundaries —
// keep an explicit mapping.
struct ConditionReport {
  bool passed = true;
  Rat worst_margin = 0;
  std::vector<std::size_t> members;
  std::vector<Rat> margins;
  std::vector<std::vector<Rat>> traces;
  std::vector<std::size_t> oscillating;
};

struct PortmanteauReport {
  std::size_t prefix = 0;        // N, the evaluated prefix length
  std::size_t window_begin = 1;  // 1-based first index of the tail window
  Rat tolerance;
  ConditionReport closed_sets;      // max mu_n(C) - mu_0(C)  <= 0
  ConditionReport open_sets;        // max mu_0(G) - mu_n(G)  <= 0
  ConditionReport continuity_sets;  // max |mu_n(A) - mu_0(A)| <= tol
  ConditionReport functions;        // max |int f dmu_n - int f dmu_0| <= tol
  std::vector<IntervalUnion> excluded_continuity_sets;

  bool all_passed() const {
    return closed_sets.passed && open_sets.passed && continuity_sets.passed &&
           functions.passed;
  }
};

namespace detail {

inline void require_line_sequence(const MeasureSequence& seq, const char* op) {
  if (seq.empty()) throw ValidationError(std::string(op) + ": empty sequence");
  for (const auto& m : seq)
    if (!measure_on_line(m))
      throw ValidationError(std::string(op) +
                            ": space mismatch, sequence diagnostics need line measures");
}

// Tail window: the last quarter of the prefix (at least one index).
inline std::size_t window_begin_of(std::size_t n) {
  std::size_t count = std::max<std::size_t>(1, n / 4);
  return n - count + 1;
}

// Atom locations of a line measure; continuous CDFs without jumps fall
// back to their breakpoints, the only places mass distribution changes.
inline std::vector<Rat> atom_locations(const Measure& m) {
  if (is_discrete(m)) return as_discrete(m).atoms();
  PiecewiseCdf f = std::get<PiecewiseCdf>(m).normalized();
  std::vector<Rat> out;
  for (const auto& [x, w] : jump_points(f)) out.push_back(x);
  if (out.empty()) out = f.breakpoints();
  return out;
}

inline bool oscillates(const std::vector<Rat>& trace) {
  int reversals = 0, prev = 0;
  for (std::size_t k = 0; k + 1 < trace.size(); ++k) {
    int s = 0;
    if (trace[k + 1] > trace[k]) s = 1;
    else if (trace[k + 1] < trace[k]) s = -1;
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++reversals;
    prev = s;
  }
  return reversals >= 2;
}

enum class MarginKind { Upper, Lower, Absolute };

// Folds one family member into a condition report: evaluates `quantity`
// on every window index, takes the margin against the limit's value and
// checks it against `bound`.
template <typename Quantity>
void fold_member(ConditionReport& rep, std::size_t member, const MeasureSequence& seq,
                 std::size_t wbegin, const Rat& base, MarginKind kind, const Rat& bound,
                 Quantity quantity) {
  std::vector<Rat> trace;
  std::optional<Rat> margin;
  for (std::size_t n = wbegin; n <= seq.size(); ++n) {
    Rat v = quantity(seq[n - 1]);
    Rat m;
    switch (kind) {
      case MarginKind::Upper: m = v - base; break;
      case MarginKind::Lower: m = base - v; break;
      case MarginKind::Absolute: m = rat_abs(v - base); break;
    }
    if (!margin || m > *margin) margin = m;
    trace.push_back(std::move(v));
  }
  if (oscillates(trace)) rep.oscillating.push_back(member);
  if (rep.members.empty() || *margin > rep.worst_margin) rep.worst_margin = *margin;
  if (*margin > bound) rep.passed = false;
  rep.members.push_back(member);
  rep.margins.push_back(*margin);
  rep.traces.push_back(std::move(trace));
}

}  // namespace detail

// Default Portmanteau families, generated from the limit's atom locations
// and the atoms appearing in the sequence's tail window (plus midpoints):
// the only points where finitely supported masses can move.  Closed and
// open families anchor at the limit; per-index tail atoms enter only
// through the combined anchor set and the midpoint bump functions, so a
// convergent sequence is not failed for mass that sits at one index only.
inline TestFamilies default_families(const MeasureSequence& seq, const Measure& limit) {
  detail::require_line_sequence(seq, "default_families");
  if (!measure_on_line(limit))
    throw ValidationError("default_families: space mismatch, limit must be a line measure");
  std::vector<Rat> limit_anchors = detail::atom_locations(limit);
  std::vector<Rat> anchors = limit_anchors;
  for (std::size_t n = detail::window_begin_of(seq.size()); n <= seq.size(); ++n)
    for (const auto& a : detail::atom_locations(seq[n - 1])) anchors.push_back(a);
  std::sort(anchors.begin(), anchors.end());
  anchors.erase(std::unique(anchors.begin(), anchors.end()), anchors.end());
  if (anchors.size() > 160) {  // keep family sizes bounded for long windows
    std::vector<Rat> thin;
    std::size_t stride = (anchors.size() + 159) / 160;
    for (std::size_t i = 0; i < anchors.size(); i += stride) thin.push_back(anchors[i]);
    if (thin.back() != anchors.back()) thin.push_back(anchors.back());
    anchors = std::move(thin);
  }

  Rat radius = 1;
  for (std::size_t i = 0; i + 1 < limit_anchors.size(); ++i)
    radius = rat_min(radius, (limit_anchors[i + 1] - limit_anchors[i]) / 2);

  TestFamilies fams;
  for (const auto& a : limit_anchors) fams.closed_sets.push_back(PointSet::on_line({a}));
  if (limit_anchors.size() > 1) fams.closed_sets.push_back(PointSet::on_line(limit_anchors));
  if (anchors.size() > limit_anchors.size())
    fams.closed_sets.push_back(PointSet::on_line(anchors));

  for (const auto& a : limit_anchors)
    fams.open_sets.push_back(IntervalUnion({Interval::open(a - radius, a + radius)}));
  for (std::size_t i = 0; i + 1 < limit_anchors.size(); ++i) {
    Rat mid = (limit_anchors[i] + limit_anchors[i + 1]) / 2;
    fams.open_sets.push_back(IntervalUnion({{Endpoint::neg_inf(), Endpoint::at(mid, false)}}));
    fams.open_sets.push_back(IntervalUnion({{Endpoint::at(mid, false), Endpoint::pos_inf()}}));
  }

  for (const auto& a : limit_anchors) {
    fams.continuity_sets.push_back(IntervalUnion({Interval::closed(a, a)}));
    fams.continuity_sets.push_back(
        IntervalUnion({Interval::closed(a - radius / 2, a + radius / 2)}));
  }
  auto [slo, shi] = support_bounds(limit);
  fams.continuity_sets.push_back(IntervalUnion({Interval::closed(slo - radius, shi + radius)}));

  std::vector<Rat> centers = limit_anchors;
  for (std::size_t i = 0; i + 1 < anchors.size(); ++i)
    centers.push_back((anchors[i] + anchors[i + 1]) / 2);
  std::sort(centers.begin(), centers.end());
  centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
  for (const auto& c : centers) fams.functions.push_back(unit_bump(c));
  return fams;
}

// Numerical Portmanteau evidence over the tail window of a finite prefix:
// (i) closed sets must not gain mass against the limit, (ii) open sets
// must not lose mass, (iii) limit-continuity sets and (iv) test functions
// must agree within `tol`.  Sets whose boundary carries limit mass are
// excluded from (iii) and listed.
inline PortmanteauReport portmanteau_report(const MeasureSequence& seq, const Measure& limit,
                                            const TestFamilies& families,
                                            const Rat& tol = Rat(1, 16)) {
  detail::require_line_sequence(seq, "portmanteau_report");
  if (!measure_on_line(limit))
    throw ValidationError("portmanteau_report: space mismatch, limit must be a line measure");
  if (families.empty()) throw ValidationError("portmanteau_report: empty test family");
  if (tol <= 0) throw ValidationError("portmanteau_report: tol must be positive");
  for (const auto& f : families.functions)
    for (const auto& v : f.values())
      if (v < 0 || v > 1)
        throw ValidationError("portmanteau_report: test function value " + to_string(v) +
                              " outside [0,1]");

  PortmanteauReport rep;
  rep.prefix = seq.size();
  rep.window_begin = detail::window_begin_of(seq.size());
  rep.tolerance = tol;
  const Rat zero = 0;

  for (std::size_t k = 0; k < families.closed_sets.size(); ++k) {
    const PointSet& c = families.closed_sets[k];
    detail::fold_member(rep.closed_sets, k + 1, seq, rep.window_begin, measure_of(limit, c),
                        detail::MarginKind::Upper, zero,
                        [&](const Measure& m) { return measure_of(m, c); });
  }
  for (std::size_t k = 0; k < families.open_sets.size(); ++k) {
    const IntervalUnion& g = families.open_sets[k];
    detail::fold_member(rep.open_sets, k + 1, seq, rep.window_begin, measure_of(limit, g),
                        detail::MarginKind::Lower, zero,
                        [&](const Measure& m) { return measure_of(m, g); });
  }
  for (std::size_t k = 0; k < families.continuity_sets.size(); ++k) {
    const IntervalUnion& a = families.continuity_sets[k];
    PointSet boundary = PointSet::on_line(a.finite_endpoints());
    if (measure_of(limit, boundary) > 0) {
      rep.excluded_continuity_sets.push_back(a);
      continue;
    }
    detail::fold_member(rep.continuity_sets, k + 1, seq, rep.window_begin,
                        measure_of(limit, a), detail::MarginKind::Absolute, tol,
                        [&](const Measure& m) { return measure_of(m, a); });
  }
  for (std::size_t k = 0; k < families.functions.size(); ++k) {
    const PiecewiseLinearFn& f = families.functions[k];
    detail::fold_member(rep.functions, k + 1, seq, rep.window_begin, integral(f, limit),
                        detail::MarginKind::Absolute, tol,
                        [&](const Measure& m) { return integral(f, m); });
  }
  return rep;
}

inline PortmanteauReport portmanteau_report(const MeasureSequence& seq, const Measure& limit,
                                            const Rat& tol = Rat(1, 16)) {
  return portmanteau_report(seq, limit, default_families(seq, limit), tol);
}

// One row of a Levy convergence profile: the exact distance to the limit
// and, when a grid of continuity points is supplied, the raw differences
// F_n(x) - F(x) there.
struct ProfilePoint {
  std::size_t index = 0;  // 1-based
  Distance levy;
  std::vector<Rat> grid_diffs;
};

inline std::vector<ProfilePoint> levy_convergence_profile(const MeasureSequence& seq,
                                                          const Measure& limit,
                                                          const std::vector<Rat>& grid = {}) {
  detail::require_line_sequence(seq, "levy_convergence_profile");
  if (!measure_on_line(limit))
    throw ValidationError(
        "levy_convergence_profile: space mismatch, limit must be a line measure");
  PiecewiseCdf f0 = as_cdf(limit);
  std::vector<ProfilePoint> out;
  out.reserve(seq.size());
  for (std::size_t n = 1; n <= seq.size(); ++n) {
    PiecewiseCdf fn = as_cdf(seq[n - 1]);
    ProfilePoint p{n, levy_distance(fn, f0), {}};
    p.grid_diffs.reserve(grid.size());
    for (const auto& x : grid) p.grid_diffs.push_back(fn.value(x) - f0.value(x));
    out.push_back(std::move(p));
  }
  return out;
}

namespace detail {

inline BigInt floor_nonneg(const Rat& q) { return numerator(q) / denominator(q); }

}  // namespace detail

// Collapses a line measure onto finitely many representative points: the
// support splits into left-closed right-open cells of width `delta`
// anchored at the support minimum, and each nonempty cell sends its mass
// to the cell midpoint.  A cell whose mass sits at a single atom keeps
// that atom as its representative, so a finitely supported measure with
// atom gaps above delta comes back unchanged.  Guarantee: no mass moves
// by delta or more, hence the Prohorov distance to the input is <= delta.
inline DiscreteMeasure quantize(const Measure& mu, const Rat& delta) {
  if (delta <= 0)
    throw ValidationError("quantize: delta must be positive, got " + to_string(delta));
  if (!measure_on_line(mu))
    throw ValidationError("quantize: measure lives on a finite metric space, not the line");
  auto [lo, hi] = support_bounds(mu);
  if (lo == hi) {
    if (is_discrete(mu)) return as_discrete(mu);
    return make_discrete_measure({lo}, {Rat(1)});
  }

  if (is_discrete(mu)) {
    const auto& d = as_discrete(mu);
    std::vector<Rat> reps, masses;
    std::size_t i = 0;
    while (i < d.size()) {
      Rat cell_lo = lo + Rat(detail::floor_nonneg((d.atom(i) - lo) / delta)) * delta;
      Rat cell_hi = cell_lo + delta;
      Rat mass = 0;
      std::size_t first = i;
      while (i < d.size() && d.atom(i) < cell_hi) mass += d.weight(i++);
      reps.push_back(i - first == 1 ? d.atom(first) : cell_lo + delta / 2);
      masses.push_back(std::move(mass));
    }
    return make_discrete_measure(std::move(reps), std::move(masses));
  }

  PiecewiseCdf f = std::get<PiecewiseCdf>(mu).normalized();
  BigInt cells = detail::floor_nonneg((hi - lo) / delta) + 1;
  if (cells > (1 << 20))
    throw ValidationError("quantize: delta " + to_string(delta) + " yields " + cells.str() +
                          " cells over the support span");
  auto jumps = jump_points(f);
  std::size_t jp = 0;
  std::vector<Rat> reps, masses;
  for (BigInt k = 0; k < cells; ++k) {
    Rat cell_lo = lo + Rat(k) * delta;
    Rat cell_hi = cell_lo + delta;
    Rat mass = measure_of(f, Interval{Endpoint::at(cell_lo, true), Endpoint::at(cell_hi, false)});
    Rat jump_mass = 0;
    std::optional<Rat> jump_at;
    std::size_t jumps_in_cell = 0;
    for (; jp < jumps.size() && jumps[jp].first < cell_hi; ++jp) {
      ++jumps_in_cell;
      jump_mass += jumps[jp].second;
      jump_at = jumps[jp].first;
    }
    if (mass == 0) continue;
    reps.push_back(jumps_in_cell == 1 && jump_mass == mass ? *jump_at : cell_lo + delta / 2);
    masses.push_back(std::move(mass));
  }
  return make_discrete_measure(std::move(reps), std::move(masses));
}

// Smallest closed interval, endpoints restricted to the family's atom
// coordinates and breakpoints, that every member loads with mass > 1-eps.
// `binding_left`/`binding_right` name (1-based) members that lose the mass
// condition when the respective endpoint shrinks one candidate inward;
// 0 means that endpoint cannot shrink.  At eps >= 1 the strict condition
// degenerates, and the convention is the leftmost single-candidate
// interval with the strictness waived.
struct TightnessWitness {
  Rat lo, hi;
  bool degenerate = false;
  std::vector<Rat> masses;  // per member, mass of [lo, hi]
  std::size_t binding_left = 0, binding_right = 0;
};

inline TightnessWitness tightness_witness(const MeasureSequence& family, const Rat& eps) {
  detail::require_line_sequence(family, "tightness_witness");
  if (eps <= 0) throw ValidationError("tightness_witness: eps must be positive");

  std::vector<Rat> cand;
  for (const auto& m : family) {
    if (is_discrete(m)) {
      const auto& a = as_discrete(m).atoms();
      cand.insert(cand.end(), a.begin(), a.end());
    } else {
      PiecewiseCdf f = std::get<PiecewiseCdf>(m).normalized();
      cand.insert(cand.end(), f.breakpoints().begin(), f.breakpoints().end());
    }
  }
  std::sort(cand.begin(), cand.end());
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());

  auto masses_of = [&](const Rat& a, const Rat& b) {
    std::vector<Rat> out;
    IntervalUnion k({Interval::closed(a, b)});
    for (const auto& m : family) out.push_back(measure_of(m, k));
    return out;
  };

  if (eps >= 1) {
    TightnessWitness w{cand.front(), cand.front(), true, masses_of(cand.front(), cand.front())};
    return w;
  }

  Rat need = 1 - eps;  // strict: mass must exceed this
  auto feasible = [&](std::size_t i, std::size_t j) {
    IntervalUnion k({Interval::closed(cand[i], cand[j])});
    for (const auto& m : family)
      if (measure_of(m, k) <= need) return false;
    return true;
  };
  auto first_failing = [&](std::size_t i, std::size_t j) -> std::size_t {
    IntervalUnion k({Interval::closed(cand[i], cand[j])});
    for (std::size_t m = 0; m < family.size(); ++m)
      if (measure_of(family[m], k) <= need) return m + 1;
    return 0;
  };

  // Minimal-width window over the candidate grid; interval mass is
  // monotone in both endpoints, so the two-pointer sweep is exhaustive.
  std::optional<std::pair<std::size_t, std::size_t>> best;
  std::size_t j = 0;
  for (std::size_t i = 0; i < cand.size(); ++i) {
    if (j < i) j = i;
    while (j < cand.size() && !feasible(i, j)) ++j;
    if (j == cand.size()) break;  // no right end works; shrinking left only loses mass
    if (!best || cand[j] - cand[i] < cand[best->second] - cand[best->first]) best = {{i, j}};
  }
  if (!best)
    throw std::logic_error("tightness_witness: full candidate hull carries every support");

  auto [bi, bj] = *best;
  TightnessWitness w{cand[bi], cand[bj], false, masses_of(cand[bi], cand[bj])};
  if (bj > bi) {
    w.binding_left = first_failing(bi + 1, bj);
    w.binding_right = first_failing(bi, bj - 1);
  }
  return w;
}

// Result of the Helly-style selection.  When the prefix cannot be refined
// within tol at some grid point, `sufficient` is false and `failing_grid`
// lists those points; `indices` still reports the last viable selection.
struct HellyOutcome {
  bool sufficient = false;
  std::vector<std::size_t> indices;  // selected subsequence, 1-based
  std::optional<PiecewiseCdf> limit;
  std::vector<Rat> levy_to_limit;  // per selected index
  std::vector<Rat> failing_grid;
  std::size_t prefix = 0;
};

// Deterministic diagonal selection: at each grid point in turn, bisect the
// value range [0,1], keeping the half holding the majority of the current
// subsequence (ties go to the lower half), until the range width is within
// tol.  The surviving values at each grid point then agree within tol, and
// the limit candidate is the last survivor's grid values extended to a
// right-continuous step CDF (exactly the survivors' common CDF when they
// coincide as distributions).
inline HellyOutcome helly_subsequence(const MeasureSequence& seq, std::vector<Rat> grid,
                                      const Rat& tol) {
  detail::require_line_sequence(seq, "helly_subsequence");
  if (seq.size() < 2)
    throw ValidationError("helly_subsequence: need a prefix of at least two CDFs");
  if (grid.empty()) throw ValidationError("helly_subsequence: empty grid");
  if (tol <= 0) throw ValidationError("helly_subsequence: tol must be positive");
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

  std::vector<PiecewiseCdf> fs;
  fs.reserve(seq.size());
  for (const auto& m : seq) fs.push_back(as_cdf(m));

  HellyOutcome out;
  out.prefix = seq.size();
  std::vector<std::size_t> live(seq.size());
  for (std::size_t i = 0; i < live.size(); ++i) live[i] = i;

  for (const auto& g : grid) {
    std::vector<std::size_t> cur = live;
    Rat lo = 0, hi = 1;
    while (hi - lo > tol) {
      Rat mid = (lo + hi) / 2;
      std::vector<std::size_t> low, high;
      for (std::size_t i : cur)
        (fs[i].value(g) <= mid ? low : high).push_back(i);
      if (low.size() >= high.size()) {
        cur = std::move(low);
        hi = mid;
      } else {
        cur = std::move(high);
        lo = mid;
      }
    }
    if (cur.size() < 2) {
      out.failing_grid.push_back(g);  // keep the pre-refinement selection
      continue;
    }
    live = std::move(cur);
  }

  for (std::size_t i : live) out.indices.push_back(i + 1);
  if (!out.failing_grid.empty()) return out;

  out.sufficient = true;
  bool constant = true;
  for (std::size_t i : live)
    if (!same_distribution(fs[i], fs[live.front()])) constant = false;
  if (constant) {
    out.limit = fs[live.back()].normalized();
  } else {
    const PiecewiseCdf& last = fs[live.back()];
    std::vector<Rat> right_values;
    for (std::size_t k = 0; k < grid.size(); ++k)
      right_values.push_back(k + 1 < grid.size() ? last.value(grid[k + 1]) : Rat(1));
    out.limit =
        PiecewiseCdf(grid, std::move(right_values), std::vector<Rat>(grid.size() - 1, Rat(0)))
            .normalized();
  }
  for (std::size_t i : live) out.levy_to_limit.push_back(levy_distance(fs[i], *out.limit).value);
  return out;
}

}  // namespace probmetrics

#endif  // PROBMETRICS_CONVERGENCE_HPP

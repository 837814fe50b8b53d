#ifndef PROBMETRICS_LEVY_HPP
#define PROBMETRICS_LEVY_HPP

// Levy and Kolmogorov (uniform) distances between piecewise-linear CDFs,
// computed exactly.  The Levy distance is the least h such that G fits in
// the closed band F(x-h)-h <= G(x) <= F(x+h)+h; equivalently both one-sided
// shift conditions  A(x) <= B(x+h)+h  hold with (A,B) = (F,G) and (G,F).
//
// Everything here is piecewise linear with rational data, so feasibility
// at fixed h reduces to finitely many corner checks, and the infimum over
// h lies in a finite candidate set of corner-vs-segment crossing solutions.

#include <algorithm>
#include <optional>
#include <vector>

#include "probmetrics/measure.hpp"
#include "probmetrics/rational.hpp"

namespace probmetrics {

struct Distance {
  Rat value;
  bool attained;  // does the defining inequality system hold at `value` itself?
};

struct BandViolation {
  Rat x;        // concrete point where the band fails
  bool lower;   // true: F(x-h)-h <= G(x) side fails; false: upper side
  Rat lhs, rhs; // the violated comparison, lhs > rhs
};

namespace detail {

// Checks  A(x) <= B(x+h)+h  for all x.  On the open segment between two
// consecutive critical points both sides are linear, so it is enough to
// test right values and left limits at the critical points themselves:
// the union of A's breakpoints and B's breakpoints shifted by -h.
inline std::optional<BandViolation> shift_violation(const PiecewiseCdf& a, const PiecewiseCdf& b,
                                                    const Rat& h) {
  std::vector<Rat> xs = a.breakpoints();
  for (const auto& c : b.breakpoints()) xs.push_back(c - h);
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (std::size_t k = 0; k < xs.size(); ++k) {
    const Rat& x = xs[k];
    Rat lhs = a.value(x);
    Rat rhs = b.value(x + h) + h;
    if (lhs > rhs) return BandViolation{x, false, lhs, rhs};
    Rat llhs = a.left(x);
    Rat lrhs = b.left(x + h) + h;
    if (llhs > lrhs) {
      // The violation lives in the open segment just left of x; pick a
      // concrete interior point past the zero crossing of the (linear)
      // margin  B(t+h)+h - A(t).
      Rat prev = (k == 0) ? Rat(x - 1) : xs[k - 1];
      Rat vprev = b.value(prev + h) + h - a.value(prev);  // >= 0, checked earlier
      Rat vleft = lrhs - llhs;                            // < 0
      Rat cross = prev + (x - prev) * vprev / (vprev - vleft);
      Rat witness = (cross + x) / 2;
      return BandViolation{witness, false, a.value(witness), b.value(witness + h) + h};
    }
  }
  return std::nullopt;
}

// Candidate h values where the constraint family  A(x) <= B(x+h)+h  can
// first become satisfiable: a corner value of A meeting a segment or
// corner of B shifted by h.  Superset is harmless; completeness follows
// from per-segment linearity of the binding threshold in x.
inline void one_sided_candidates(const PiecewiseCdf& a, const PiecewiseCdf& b,
                                 std::vector<Rat>& out) {
  const auto& ab = a.breakpoints();
  const auto& bb = b.breakpoints();
  auto push = [&out](const Rat& h) {
    if (h > 0 && h <= 1) out.push_back(h);
  };
  for (std::size_t i = 0; i < ab.size(); ++i) {
    for (const Rat& av : {a.left_value(i), a.values()[i]}) {
      push(av);  // A-corner against B's zero tail:  av = 0 + h
      for (std::size_t j = 0; j + 1 < bb.size(); ++j) {
        // av = V_j + s_j*(b_i + h - c_j) + h
        const Rat& s = b.slopes()[j];
        push((av - b.values()[j] + s * (bb[j] - ab[i])) / (1 + s));
      }
    }
    for (const auto& c : bb) push(c - ab[i]);
  }
  for (std::size_t j = 0; j < bb.size(); ++j) {
    for (const Rat& bv : {b.left_value(j), b.values()[j]}) {
      push(1 - bv);  // B-corner against A's unit tail
      for (std::size_t i = 0; i + 1 < ab.size(); ++i) {
        // W_i + t_i*(c_j - h - b_i) = bv + h
        const Rat& t = a.slopes()[i];
        push((a.values()[i] + t * (bb[j] - ab[i]) - bv) / (1 + t));
      }
    }
  }
}

}  // namespace detail

// Exact feasibility of the Levy band at width h; returns a violation
// certificate with a concrete x on failure.
inline std::optional<BandViolation> levy_violation(const PiecewiseCdf& f, const PiecewiseCdf& g,
                                                   const Rat& h) {
  if (h <= 0) throw ValidationError("levy_feasible: h must be positive");
  // Upper side: G(x) <= F(x+h)+h.
  if (auto v = detail::shift_violation(g, f, h)) {
    v->lower = false;
    return v;
  }
  // Lower side: F(x-h)-h <= G(x), i.e. F(t) <= G(t+h)+h.
  if (auto v = detail::shift_violation(f, g, h)) {
    return BandViolation{v->x + h, true, v->lhs - h, v->rhs - h};
  }
  return std::nullopt;
}

inline bool levy_feasible(const PiecewiseCdf& f, const PiecewiseCdf& g, const Rat& h) {
  return !levy_violation(f, g, h).has_value();
}

namespace detail {

// Shared search: smallest h in (0,1] satisfying a monotone feasibility
// predicate, where the transition is known to lie in `cands`.
template <typename Feasible>
Distance threshold_search(std::vector<Rat> cands, Feasible feasible) {
  cands.push_back(Rat(1));
  std::sort(cands.begin(), cands.end());
  cands.erase(std::unique(cands.begin(), cands.end()), cands.end());
  std::size_t lo = 0, hi = cands.size() - 1;  // cands[hi] = 1 is always feasible
  if (feasible(cands[0])) {
    hi = 0;
  } else {
    while (hi - lo > 1) {  // invariant: cands[lo] infeasible, cands[hi] feasible
      std::size_t mid = (lo + hi) / 2;
      (feasible(cands[mid]) ? hi : lo) = mid;
    }
  }
  if (hi == 0) {
    // Probe below the smallest candidate: if still feasible there, the
    // infimum is 0 (possible for one-sided variants only).
    Rat probe = cands[0] / 2;
    if (probe > 0 && feasible(probe)) return {Rat(0), false};
    return {cands[0], true};
  }
  Rat mid = (cands[hi - 1] + cands[hi]) / 2;
  if (feasible(mid)) return {cands[hi - 1], false};
  return {cands[hi], true};
}

}  // namespace detail

// Exact Levy distance with attainment flag.  Symmetric by construction.
inline Distance levy_distance(const PiecewiseCdf& f, const PiecewiseCdf& g) {
  PiecewiseCdf fn = f.normalized(), gn = g.normalized();
  if (fn == gn) return {Rat(0), true};
  std::vector<Rat> cands;
  detail::one_sided_candidates(fn, gn, cands);
  detail::one_sided_candidates(gn, fn, cands);
  Distance d = detail::threshold_search(
      std::move(cands), [&](const Rat& h) { return levy_feasible(fn, gn, h); });
  if (d.value == 0)
    throw std::logic_error("levy_distance: zero distance for distinct distributions");
  return d;
}

// One-sided variant: least eps with F(x) <= G(x+eps)+eps for all x.  This
// is a lower bound for the Levy distance; the band distance equals the
// larger of the two orientations.
inline Distance levy_onesided(const PiecewiseCdf& f, const PiecewiseCdf& g) {
  PiecewiseCdf fn = f.normalized(), gn = g.normalized();
  std::vector<Rat> cands;
  detail::one_sided_candidates(fn, gn, cands);
  Distance d = detail::threshold_search(std::move(cands), [&](const Rat& h) {
    return !detail::shift_violation(fn, gn, h).has_value();
  });
  if (d.value == 0) {
    // Attained at 0 iff F <= G pointwise; check corner values.
    bool leq = true;
    std::vector<Rat> xs = fn.breakpoints();
    xs.insert(xs.end(), gn.breakpoints().begin(), gn.breakpoints().end());
    for (const auto& x : xs)
      if (fn.value(x) > gn.value(x) || fn.left(x) > gn.left(x)) leq = false;
    d.attained = leq;
  }
  return d;
}

// Exact uniform distance sup |F - G| with attainment flag.  On each open
// segment the difference is linear, so the supremum is approached at
// breakpoint values or left limits.
inline Distance kolmogorov_distance(const PiecewiseCdf& f, const PiecewiseCdf& g) {
  std::vector<Rat> xs = f.breakpoints();
  xs.insert(xs.end(), g.breakpoints().begin(), g.breakpoints().end());
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Rat best = 0;
  for (const auto& x : xs) {
    best = rat_max(best, rat_abs(f.value(x) - g.value(x)));
    best = rat_max(best, rat_abs(f.left(x) - g.left(x)));
  }
  // Left limits are only approached; the sup is attained iff some right
  // value reaches it (constant stretches hit this via their left corner).
  bool attained = best == 0;
  for (const auto& x : xs)
    if (!attained && rat_abs(f.value(x) - g.value(x)) == best) attained = true;
  return {best, attained};
}

}  // namespace probmetrics

#endif  // PROBMETRICS_LEVY_HPP

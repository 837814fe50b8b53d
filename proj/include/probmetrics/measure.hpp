#ifndef PROBMETRICS_MEASURE_HPP
#define PROBMETRICS_MEASURE_HPP

// Probability measures: finitely supported measures on the line or on a
// finite metric space, and piecewise-linear CDFs (mixtures of finitely
// many atoms and a piecewise-uniform continuous part).

#include <algorithm>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"
#include "probmetrics/space.hpp"

namespace probmetrics {

class DiscreteMeasure {
 public:
  // Line measure: `atoms` are coordinates.  Sorted on construction.
  static DiscreteMeasure on_line(std::vector<Rat> atoms, std::vector<Rat> weights) {
    DiscreteMeasure m;
    m.sort_and_validate(std::move(atoms), std::move(weights));
    return m;
  }

  // Measure on a finite metric space: `points` are indices into the space.
  static DiscreteMeasure on_space(SpaceHandle space, std::vector<std::size_t> points,
                                  std::vector<Rat> weights) {
    if (!space) throw ValidationError("discrete measure: null space handle");
    DiscreteMeasure m;
    m.space_ = std::move(space);
    std::vector<Rat> coords;
    coords.reserve(points.size());
    for (std::size_t p : points) {
      if (p >= m.space_->size())
        throw ValidationError("discrete measure: point index " + std::to_string(p) +
                              " out of range for space of size " +
                              std::to_string(m.space_->size()));
      coords.push_back(Rat(static_cast<long>(p)));
    }
    m.sort_and_validate(std::move(coords), std::move(weights));
    for (const auto& c : m.atoms_) m.points_.push_back(static_cast<std::size_t>(numerator(c).convert_to<long>()));
    return m;
  }

  bool on_line_space() const { return space_ == nullptr; }
  const SpaceHandle& space() const { return space_; }
  std::size_t size() const { return atoms_.size(); }
  const std::vector<Rat>& atoms() const { return atoms_; }
  const std::vector<std::size_t>& points() const { return points_; }
  const std::vector<Rat>& weights() const { return weights_; }
  const Rat& atom(std::size_t i) const { return atoms_[i]; }
  const Rat& weight(std::size_t i) const { return weights_[i]; }

  PointSet support() const {
    if (on_line_space()) return PointSet::on_line(atoms_);
    return PointSet::on_space(space_, points_);
  }

  bool operator==(const DiscreteMeasure& o) const {
    return same_space(space_, o.space_) && atoms_ == o.atoms_ && weights_ == o.weights_;
  }

 private:
  void sort_and_validate(std::vector<Rat> atoms, std::vector<Rat> weights) {
    if (atoms.empty()) throw ValidationError("discrete measure: no atoms");
    if (atoms.size() != weights.size())
      throw ValidationError("discrete measure: " + std::to_string(atoms.size()) + " atoms vs " +
                            std::to_string(weights.size()) + " weights");
    std::vector<std::size_t> order(atoms.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return atoms[a] < atoms[b]; });
    Rat total = 0;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const Rat& a = atoms[order[k]];
      const Rat& w = weights[order[k]];
      if (k > 0 && a == atoms_.back())
        throw ValidationError("discrete measure: duplicate atom " + to_string(a));
      if (w <= 0)
        throw ValidationError("discrete measure: nonpositive weight " + to_string(w) +
                              " at atom " + to_string(a));
      atoms_.push_back(a);
      weights_.push_back(w);
      total += w;
    }
    if (total != 1)
      throw ValidationError("discrete measure: weights sum to " + to_string(total) +
                            ", expected 1");
  }

  SpaceHandle space_;             // nullptr = line
  std::vector<Rat> atoms_;        // line coordinates, or indices as rationals
  std::vector<std::size_t> points_;  // finite-space indices (parallel to atoms_)
  std::vector<Rat> weights_;
};

inline DiscreteMeasure make_discrete_measure(std::vector<Rat> atoms, std::vector<Rat> weights) {
  return DiscreteMeasure::on_line(std::move(atoms), std::move(weights));
}

inline DiscreteMeasure make_discrete_measure(SpaceHandle space, std::vector<std::size_t> points,
                                             std::vector<Rat> weights) {
  return DiscreteMeasure::on_space(std::move(space), std::move(points), std::move(weights));
}

inline Rat atom_distance(const DiscreteMeasure& a, std::size_t i, const DiscreteMeasure& b,
                         std::size_t j) {
  if (!same_space(a.space(), b.space()))
    throw ValidationError("space mismatch: measures live on different spaces");
  if (a.on_line_space()) return rat_abs(a.atom(i) - b.atom(j));
  return a.space()->dist(a.points()[i], b.points()[j]);
}

// Right-continuous piecewise-linear CDF.  `values` are the right values at
// the breakpoints; `slopes[i]` is the density between breakpoints i and
// i+1.  F is 0 before the first breakpoint and 1 from the last one on, so
// the final value must be 1.
class PiecewiseCdf {
 public:
  PiecewiseCdf(std::vector<Rat> breakpoints, std::vector<Rat> values, std::vector<Rat> slopes)
      : breakpoints_(std::move(breakpoints)), values_(std::move(values)), slopes_(std::move(slopes)) {
    const std::size_t k = breakpoints_.size();
    if (k == 0) throw ValidationError("cdf: no breakpoints");
    if (values_.size() != k)
      throw ValidationError("cdf: " + std::to_string(values_.size()) + " values for " +
                            std::to_string(k) + " breakpoints");
    if (slopes_.size() != k - 1)
      throw ValidationError("cdf: expected " + std::to_string(k - 1) + " slopes, got " +
                            std::to_string(slopes_.size()));
    for (std::size_t i = 0; i + 1 < k; ++i)
      if (breakpoints_[i] >= breakpoints_[i + 1])
        throw ValidationError("cdf: breakpoints not increasing at " + to_string(breakpoints_[i + 1]));
    for (std::size_t i = 0; i + 1 < k; ++i)
      if (slopes_[i] < 0)
        throw ValidationError("cdf: negative slope after breakpoint " + to_string(breakpoints_[i]));
    for (std::size_t i = 0; i < k; ++i) {
      if (values_[i] < 0 || values_[i] > 1)
        throw ValidationError("cdf: value out of [0,1] at breakpoint " + to_string(breakpoints_[i]));
      if (left_value(i) > values_[i])
        throw ValidationError("cdf: decreases at breakpoint " + to_string(breakpoints_[i]));
    }
    if (values_.back() != 1)
      throw ValidationError("cdf: value at last breakpoint is " + to_string(values_.back()) +
                            ", expected 1");
  }

  const std::vector<Rat>& breakpoints() const { return breakpoints_; }
  const std::vector<Rat>& values() const { return values_; }
  const std::vector<Rat>& slopes() const { return slopes_; }
  std::size_t size() const { return breakpoints_.size(); }

  // Left limit at breakpoint i.
  Rat left_value(std::size_t i) const {
    if (i == 0) return 0;
    return values_[i - 1] + slopes_[i - 1] * (breakpoints_[i] - breakpoints_[i - 1]);
  }

  Rat jump(std::size_t i) const { return values_[i] - left_value(i); }

  // F(x): value just right of every point, per right continuity.
  Rat value(const Rat& x) const {
    if (x < breakpoints_.front()) return 0;
    std::size_t i = last_leq(x);
    if (i + 1 == breakpoints_.size()) return values_[i];
    return values_[i] + slopes_[i] * (x - breakpoints_[i]);
  }

  // F(x-): left limit at x.
  Rat left(const Rat& x) const {
    if (x <= breakpoints_.front()) return 0;
    std::size_t i = last_leq(x);
    if (breakpoints_[i] == x) return left_value(i);
    if (i + 1 == breakpoints_.size()) return values_[i];
    return values_[i] + slopes_[i] * (x - breakpoints_[i]);
  }

  // Drops breakpoints that carry no jump and no slope change, so equal
  // distributions get equal representations.
  PiecewiseCdf normalized() const {
    const std::size_t k = breakpoints_.size();
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < k; ++i) {
      Rat in_slope = (i == 0) ? Rat(0) : slopes_[i - 1];
      Rat out_slope = (i + 1 == k) ? Rat(0) : slopes_[i];
      if (jump(i) == 0 && in_slope == out_slope) continue;
      keep.push_back(i);
    }
    if (keep.empty()) keep.push_back(k - 1);  // degenerate; last point carries value 1
    std::vector<Rat> bps, vals, slps;
    for (std::size_t j = 0; j < keep.size(); ++j) {
      bps.push_back(breakpoints_[keep[j]]);
      vals.push_back(values_[keep[j]]);
      if (j + 1 < keep.size()) slps.push_back(slopes_[keep[j]]);
    }
    return PiecewiseCdf(std::move(bps), std::move(vals), std::move(slps));
  }

  bool operator==(const PiecewiseCdf& o) const {
    return breakpoints_ == o.breakpoints_ && values_ == o.values_ && slopes_ == o.slopes_;
  }

 private:
  std::size_t last_leq(const Rat& x) const {
    auto it = std::upper_bound(breakpoints_.begin(), breakpoints_.end(), x);
    return static_cast<std::size_t>(it - breakpoints_.begin()) - 1;
  }

  std::vector<Rat> breakpoints_;
  std::vector<Rat> values_;
  std::vector<Rat> slopes_;
};

inline bool same_distribution(const PiecewiseCdf& a, const PiecewiseCdf& b) {
  return a.normalized() == b.normalized();
}

inline PiecewiseCdf cdf_of(const DiscreteMeasure& mu) {
  if (!mu.on_line_space())
    throw ValidationError("cdf_of: measure lives on a finite metric space, not the line");
  std::vector<Rat> vals;
  Rat cum = 0;
  for (const auto& w : mu.weights()) {
    cum += w;
    vals.push_back(cum);
  }
  return PiecewiseCdf(mu.atoms(), std::move(vals), std::vector<Rat>(mu.size() - 1, Rat(0)));
}

inline Rat eval_cdf(const PiecewiseCdf& f, const Rat& x) { return f.value(x); }
inline Rat eval_cdf_left(const PiecewiseCdf& f, const Rat& x) { return f.left(x); }

// --- measure_of: exact mass of interval unions and point sets ---

inline Rat measure_of(const DiscreteMeasure& mu, const IntervalUnion& s) {
  if (!mu.on_line_space())
    throw ValidationError("measure_of: interval sets require a line measure");
  Rat total = 0;
  for (std::size_t i = 0; i < mu.size(); ++i)
    if (s.contains(mu.atom(i))) total += mu.weight(i);
  return total;
}

inline Rat measure_of(const DiscreteMeasure& mu, const PointSet& s) {
  if (mu.on_line_space() != s.on_line_space())
    throw ValidationError("measure_of: point set and measure live on different spaces");
  if (!mu.on_line_space() && !same_space(mu.space(), s.space))
    throw ValidationError("space mismatch: measures live on different spaces");
  Rat total = 0;
  if (mu.on_line_space()) {
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (std::binary_search(s.coords.begin(), s.coords.end(), mu.atom(i))) total += mu.weight(i);
  } else {
    for (std::size_t i = 0; i < mu.size(); ++i)
      if (std::binary_search(s.indices.begin(), s.indices.end(), mu.points()[i]))
        total += mu.weight(i);
  }
  return total;
}

inline Rat measure_of(const PiecewiseCdf& f, const Interval& p) {
  if (p.empty()) return 0;
  Rat below;  // mass strictly left of the interval
  if (!p.lo.finite())
    below = 0;
  else
    below = p.lo.closed ? f.left(p.lo.value) : f.value(p.lo.value);
  Rat upto;  // mass up to and including the right end as specified
  if (!p.hi.finite())
    upto = 1;
  else
    upto = p.hi.closed ? f.value(p.hi.value) : f.left(p.hi.value);
  return upto - below;
}

inline Rat measure_of(const PiecewiseCdf& f, const IntervalUnion& s) {
  Rat total = 0;
  for (const auto& p : s.parts()) total += measure_of(f, p);
  return total;
}

inline Rat measure_of(const PiecewiseCdf& f, const PointSet& s) {
  if (!s.on_line_space())
    throw ValidationError("measure_of: cdf measures live on the line");
  Rat total = 0;
  for (const auto& c : s.coords) total += f.value(c) - f.left(c);
  return total;
}

// --- Measure: either representation, as accepted by file formats ---

using Measure = std::variant<DiscreteMeasure, PiecewiseCdf>;

inline bool is_discrete(const Measure& m) { return std::holds_alternative<DiscreteMeasure>(m); }

inline const DiscreteMeasure& as_discrete(const Measure& m) {
  return std::get<DiscreteMeasure>(m);
}

inline PiecewiseCdf as_cdf(const Measure& m) {
  if (is_discrete(m)) return cdf_of(as_discrete(m));
  return std::get<PiecewiseCdf>(m);
}

inline bool measure_on_line(const Measure& m) {
  return !is_discrete(m) || as_discrete(m).on_line_space();
}

template <typename SetT>
Rat measure_of(const Measure& m, const SetT& s) {
  if (is_discrete(m)) return measure_of(as_discrete(m), s);
  return measure_of(std::get<PiecewiseCdf>(m), s);
}

inline bool same_measure(const Measure& a, const Measure& b) {
  if (is_discrete(a) && is_discrete(b)) return as_discrete(a) == as_discrete(b);
  if (!measure_on_line(a) || !measure_on_line(b)) return false;
  return same_distribution(as_cdf(a), as_cdf(b));
}

// Jump locations with their masses; for a discrete line measure these are
// exactly the atoms.
inline std::vector<std::pair<Rat, Rat>> jump_points(const PiecewiseCdf& f) {
  std::vector<std::pair<Rat, Rat>> out;
  for (std::size_t i = 0; i < f.size(); ++i)
    if (f.jump(i) > 0) out.emplace_back(f.breakpoints()[i], f.jump(i));
  return out;
}

// Smallest closed interval carrying all mass (line measures).
inline std::pair<Rat, Rat> support_bounds(const Measure& m) {
  if (is_discrete(m)) {
    const auto& d = as_discrete(m);
    if (!d.on_line_space())
      throw ValidationError("support_bounds: measure lives on a finite metric space");
    return {d.atoms().front(), d.atoms().back()};
  }
  PiecewiseCdf f = std::get<PiecewiseCdf>(m).normalized();
  return {f.breakpoints().front(), f.breakpoints().back()};
}

}  // namespace probmetrics

#endif  // PROBMETRICS_MEASURE_HPP

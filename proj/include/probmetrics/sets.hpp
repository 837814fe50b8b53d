#ifndef PROBMETRICS_SETS_HPP
#define PROBMETRICS_SETS_HPP

// Interval unions on the line with exact open/closed endpoint semantics,
// finite point sets, and epsilon-neighborhoods.  The neighborhood of a set
// is always open: it collects the points at distance STRICTLY below eps.

#include <algorithm>
#include <optional>
#include <string>
#include <vector>

#include "probmetrics/rational.hpp"
#include "probmetrics/space.hpp"

namespace probmetrics {

struct Endpoint {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rat value = 0;     // meaningful only when finite
  bool closed = false;  // infinities are always open

  static Endpoint neg_inf() { return {Kind::NegInf, 0, false}; }
  static Endpoint pos_inf() { return {Kind::PosInf, 0, false}; }
  static Endpoint at(Rat v, bool closed_end) { return {Kind::Finite, std::move(v), closed_end}; }

  bool finite() const { return kind == Kind::Finite; }
  bool operator==(const Endpoint& o) const {
    if (kind != o.kind) return false;
    if (kind != Kind::Finite) return true;
    return value == o.value && closed == o.closed;
  }
};

// A nonempty interval; lo may be -inf, hi may be +inf.
struct Interval {
  Endpoint lo, hi;

  static Interval closed(Rat a, Rat b) { return {Endpoint::at(std::move(a), true), Endpoint::at(std::move(b), true)}; }
  static Interval open(Rat a, Rat b) { return {Endpoint::at(std::move(a), false), Endpoint::at(std::move(b), false)}; }
  static Interval whole_line() { return {Endpoint::neg_inf(), Endpoint::pos_inf()}; }

  bool empty() const {
    if (!lo.finite() || !hi.finite()) return false;
    if (lo.value > hi.value) return true;
    if (lo.value == hi.value) return !(lo.closed && hi.closed);
    return false;
  }

  bool contains(const Rat& x) const {
    if (lo.finite()) {
      if (x < lo.value) return false;
      if (x == lo.value && !lo.closed) return false;
    }
    if (hi.finite()) {
      if (x > hi.value) return false;
      if (x == hi.value && !hi.closed) return false;
    }
    return true;
  }

  bool operator==(const Interval& o) const { return lo == o.lo && hi == o.hi; }
};

namespace detail {

// Does interval `b` start inside or flush against `a`'s right end, so that
// a union of the two is connected?  Tangent open endpoints do NOT connect:
// (u,v) followed by (v,w) leaves v uncovered.
inline bool connects(const Interval& a, const Interval& b) {
  if (!a.hi.finite()) return true;
  if (!b.lo.finite()) return true;
  if (b.lo.value < a.hi.value) return true;
  if (b.lo.value > a.hi.value) return false;
  return a.hi.closed || b.lo.closed;
}

inline bool lo_before(const Endpoint& a, const Endpoint& b) {
  if (a.kind != b.kind) return a.kind == Endpoint::Kind::NegInf;
  if (!a.finite()) return false;
  if (a.value != b.value) return a.value < b.value;
  return a.closed && !b.closed;  // [v.. starts before (v..
}

inline bool hi_before(const Endpoint& a, const Endpoint& b) {
  if (a.kind != b.kind) return b.kind == Endpoint::Kind::PosInf;
  if (!a.finite()) return false;
  if (a.value != b.value) return a.value < b.value;
  return !a.closed && b.closed;  // ..v) ends before ..v]
}

}  // namespace detail

// Normalized union of disjoint, non-connectable intervals, sorted left to
// right.  Value type; all mutators return new unions.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts) {
    std::erase_if(parts, [](const Interval& p) { return p.empty(); });
    std::sort(parts.begin(), parts.end(), [](const Interval& x, const Interval& y) {
      if (!(x.lo == y.lo)) return detail::lo_before(x.lo, y.lo);
      return detail::hi_before(x.hi, y.hi);
    });
    for (auto& p : parts) {
      if (!parts_.empty() && detail::connects(parts_.back(), p)) {
        if (detail::hi_before(parts_.back().hi, p.hi)) parts_.back().hi = p.hi;
      } else {
        parts_.push_back(p);
      }
    }
  }

  static IntervalUnion empty_set() { return IntervalUnion(); }
  static IntervalUnion whole_line() { return IntervalUnion({Interval::whole_line()}); }

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }

  bool contains(const Rat& x) const {
    for (const auto& p : parts_)
      if (p.contains(x)) return true;
    return false;
  }

  IntervalUnion unite(const IntervalUnion& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return IntervalUnion(std::move(all));
  }

  // Complement walks the gaps between consecutive parts, flipping each
  // endpoint's closedness.
  IntervalUnion complement() const {
    if (parts_.empty()) return whole_line();
    std::vector<Interval> out;
    auto flip = [](Endpoint e) {
      e.closed = !e.closed;
      return e;
    };
    if (parts_.front().lo.finite())
      out.push_back({Endpoint::neg_inf(), flip(parts_.front().lo)});
    for (std::size_t i = 0; i + 1 < parts_.size(); ++i)
      out.push_back({flip(parts_[i].hi), flip(parts_[i + 1].lo)});
    if (parts_.back().hi.finite())
      out.push_back({flip(parts_.back().hi), Endpoint::pos_inf()});
    return IntervalUnion(std::move(out));
  }

  IntervalUnion closure() const {
    std::vector<Interval> out = parts_;
    for (auto& p : out) {
      if (p.lo.finite()) p.lo.closed = true;
      if (p.hi.finite()) p.hi.closed = true;
    }
    return IntervalUnion(std::move(out));
  }

  // Finite endpoints; for intervals with nonempty interior this is the
  // topological boundary, and a degenerate [v,v] contributes v itself.
  std::vector<Rat> finite_endpoints() const {
    std::vector<Rat> out;
    for (const auto& p : parts_) {
      if (p.lo.finite()) out.push_back(p.lo.value);
      if (p.hi.finite()) out.push_back(p.hi.value);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
  }

  bool operator==(const IntervalUnion& o) const { return parts_ == o.parts_; }

 private:
  std::vector<Interval> parts_;
};

// Finite set of points: coordinates on the line, or point indices of a
// FiniteMetricSpace.  Used for neighborhood arguments and as the witness
// payload of infeasibility certificates.
struct PointSet {
  SpaceHandle space;          // nullptr = real line
  std::vector<Rat> coords;    // line case, sorted unique
  std::vector<std::size_t> indices;  // finite-space case, sorted unique

  static PointSet on_line(std::vector<Rat> pts) {
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return {nullptr, std::move(pts), {}};
  }
  static PointSet on_space(SpaceHandle s, std::vector<std::size_t> idx) {
    if (!s) throw ValidationError("point set: null space handle");
    std::sort(idx.begin(), idx.end());
    idx.erase(std::unique(idx.begin(), idx.end()), idx.end());
    for (std::size_t i : idx)
      if (i >= s->size())
        throw ValidationError("point set: index " + std::to_string(i) + " out of range");
    return {std::move(s), {}, std::move(idx)};
  }

  bool on_line_space() const { return space == nullptr; }
  std::size_t size() const { return space ? indices.size() : coords.size(); }
};

// Open eps-neighborhood of a finite set of line points: union of the open
// balls (p - eps, p + eps).  Tangent balls merge because overlapping open
// intervals share interior points; balls that only touch stay split.
inline IntervalUnion eps_neighborhood(const std::vector<Rat>& points, const Rat& eps) {
  if (eps <= 0) throw ValidationError("eps_neighborhood: eps must be positive");
  std::vector<Interval> balls;
  balls.reserve(points.size());
  for (const auto& p : points) balls.push_back(Interval::open(p - eps, p + eps));
  return IntervalUnion(std::move(balls));
}

inline IntervalUnion eps_neighborhood(const IntervalUnion& a, const Rat& eps) {
  if (eps <= 0) throw ValidationError("eps_neighborhood: eps must be positive");
  std::vector<Interval> out;
  for (const auto& p : a.parts()) {
    Endpoint lo = p.lo.finite() ? Endpoint::at(p.lo.value - eps, false) : Endpoint::neg_inf();
    Endpoint hi = p.hi.finite() ? Endpoint::at(p.hi.value + eps, false) : Endpoint::pos_inf();
    out.push_back({lo, hi});
  }
  return IntervalUnion(std::move(out));
}

// Finite-space variant: the set of points at distance < eps from A.
inline PointSet eps_neighborhood(const PointSet& a, const Rat& eps) {
  if (eps <= 0) throw ValidationError("eps_neighborhood: eps must be positive");
  if (a.on_line_space())
    throw ValidationError("eps_neighborhood(PointSet): line sets yield interval unions");
  std::vector<std::size_t> out;
  for (std::size_t x = 0; x < a.space->size(); ++x)
    for (std::size_t y : a.indices)
      if (a.space->dist(x, y) < eps) {
        out.push_back(x);
        break;
      }
  return PointSet::on_space(a.space, std::move(out));
}

}  // namespace probmetrics

#endif  // PROBMETRICS_SETS_HPP

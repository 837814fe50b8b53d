#ifndef PROBMETRICS_PROHOROV_HPP
#define PROBMETRICS_PROHOROV_HPP

// Prohorov distance by exhaustive enumeration: the least eps such that
//   mu(A) <= nu(A^eps) + eps   and   nu(A) <= mu(A^eps) + eps
// for every closed A, where A^eps is the strict (open) eps-neighborhood.
//
// For a finitely supported side it is enough to test subsets of its
// support.  When a side is a CDF, its constraints reduce to the family
//   A_T = complement of  U_{y in supp(nu) \ T} (y-eps, y+eps),
// indexed by subsets T of the other side's support: every closed A obeys
// mu(A) <= mu(A_T(A)) with T(A) = supp(nu) intersected with A^eps, and
// each A_T is itself closed, so the two constraint families are
// equivalent at every eps.  Pairs of CDFs are rejected; quantize first.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "probmetrics/measure.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"

namespace probmetrics {

// Raised when a support is too large to enumerate subsets of.
struct CapacityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ProhorovOptions {
  std::size_t enumeration_cap = 20;  // largest support size enumerated
};

// A concrete set whose mass bound fails (or binds) at `eps`.  Exactly one
// of `subset` / `region` is engaged: finitely supported sides yield point
// sets, a CDF side yields a closed co-neighborhood region.  In all cases
//   lhs > rhs_mass + eps   certifies infeasibility at eps, where rhs_mass
// bounds the opposite measure of the strict eps-neighborhood of the set.
struct ProhorovWitness {
  bool mu_side;  // true: the first argument's mass bound is the one failing
  std::optional<PointSet> subset;
  std::optional<IntervalUnion> region;
  Rat lhs;
  Rat rhs_mass;
  Rat eps;
};

struct ProhorovReport {
  Rat value;
  bool attained;  // do both mass-bound families hold at `value` itself?
  std::optional<ProhorovWitness> witness;  // a binding set at eps = value
  std::uint64_t subsets_checked = 0;
};

namespace detail {

struct Crossing {
  Rat value;
  bool attained;
};

// Least eps > 0 with  c + eps + reach(eps) >= t,  where `reach` is
// nondecreasing, left-continuous, and linear on each interval between
// consecutive entries of `breaks` (jumps land just after a break).  Two
// interior probes per interval recover the linear piece exactly.
template <typename ReachFn>
Crossing crossing_threshold(const Rat& c, const Rat& t, std::vector<Rat> breaks, ReachFn reach) {
  if (t <= c) return {Rat(0), true};
  breaks.push_back(Rat(0));
  std::sort(breaks.begin(), breaks.end());
  breaks.erase(std::unique(breaks.begin(), breaks.end()), breaks.end());
  while (!breaks.empty() && breaks.front() < 0) breaks.erase(breaks.begin());
  // Past the last break every point lies in the neighborhood, so c+eps+1
  // crosses t before this sentinel.
  breaks.push_back(breaks.back() + 1 + rat_abs(t - c));
  for (std::size_t k = 1; k < breaks.size(); ++k) {
    const Rat& lo = breaks[k - 1];
    const Rat& hi = breaks[k];
    Rat p1 = lo + (hi - lo) / 3;
    Rat p2 = lo + 2 * (hi - lo) / 3;
    Rat g1 = c + p1 + reach(p1);
    Rat g2 = c + p2 + reach(p2);
    Rat slope = (g2 - g1) / (p2 - p1);  // >= 1
    Rat at_hi = g2 + slope * (hi - p2);
    if (at_hi < t) continue;
    Rat cross = p2 + (t - g2) / slope;
    if (cross <= lo) return {lo, false};  // crossed by the jump at lo
    return {cross, true};
  }
  throw std::logic_error("crossing_threshold: no crossing before sentinel");
}

// One direction of the Prohorov system: the `from` measure's mass bounds
// against the `to` measure.  Enumerates the appropriate subset family and
// folds per-subset thresholds into a running maximum.
struct DirectionResult {
  Rat value = 0;
  bool attained = true;      // all maximizing subsets attained
  std::uint64_t checked = 0;
  std::uint64_t witness_mask = 0;  // a maximizer; prefers a non-attained one
  bool witness_attained = true;
  bool tfamily = false;  // witness comes from the co-neighborhood family
};

inline void fold_entry(DirectionResult& r, const Crossing& c, std::uint64_t mask, bool tfam) {
  ++r.checked;
  if (c.value > r.value) {
    r.value = c.value;
    r.attained = c.attained;
    r.witness_mask = mask;
    r.witness_attained = c.attained;
    r.tfamily = tfam;
  } else if (c.value == r.value && r.value > 0) {
    r.attained = r.attained && c.attained;
    if (!c.attained && r.witness_attained) {
      r.witness_mask = mask;
      r.witness_attained = false;
      r.tfamily = tfam;
    }
  }
}

// Subset masses and neighborhood reach for a finitely supported `from`.
inline DirectionResult scan_point_side(const DiscreteMeasure& from, const Measure& to,
                                       const ProhorovOptions& opts) {
  std::size_t m = from.size();
  if (m > opts.enumeration_cap)
    throw CapacityError("prohorov enumeration: support of size " + std::to_string(m) +
                        " exceeds cap " + std::to_string(opts.enumeration_cap) +
                        "; use the flow method");
  DirectionResult result;
  const bool to_discrete = is_discrete(to);
  std::vector<Rat> cdf_breaks;  // |b - p| distances, rebuilt per subset
  PiecewiseCdf to_cdf = to_discrete ? PiecewiseCdf({Rat(0)}, {Rat(1)}, {}) : as_cdf(to).normalized();
  for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << m); ++mask) {
    Rat t = 0;
    std::vector<std::size_t> members;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (std::uint64_t{1} << i)) {
        t += from.weight(i);
        members.push_back(i);
      }
    Crossing c;
    if (to_discrete) {
      const auto& tod = as_discrete(to);
      std::vector<Rat> dist(tod.size());
      std::vector<Rat> breaks;
      for (std::size_t j = 0; j < tod.size(); ++j) {
        Rat best = atom_distance(tod, j, from, members[0]);
        for (std::size_t k = 1; k < members.size(); ++k)
          best = rat_min(best, atom_distance(tod, j, from, members[k]));
        dist[j] = best;
        breaks.push_back(best);
      }
      auto reach = [&](const Rat& eps) {
        Rat mass = 0;
        for (std::size_t j = 0; j < tod.size(); ++j)
          if (dist[j] < eps) mass += tod.weight(j);
        return mass;
      };
      c = crossing_threshold(Rat(0), t, std::move(breaks), reach);
    } else {
      std::vector<Rat> coords;
      for (std::size_t i : members) coords.push_back(from.atom(i));
      std::vector<Rat> breaks;
      for (const auto& b : to_cdf.breakpoints())
        for (const auto& p : coords) breaks.push_back(rat_abs(b - p));
      for (std::size_t i = 0; i + 1 < coords.size(); ++i)
        for (std::size_t j = i + 1; j < coords.size(); ++j)
          breaks.push_back((coords[j] - coords[i]) / 2);
      auto reach = [&](const Rat& eps) {
        return measure_of(to_cdf, eps_neighborhood(coords, eps));
      };
      c = crossing_threshold(Rat(0), t, std::move(breaks), reach);
    }
    fold_entry(result, c, mask, false);
  }
  return result;
}

// Co-neighborhood family for a CDF `from` against a finitely supported
// `to`:  1 - from(U_{y notin T} (y-eps, y+eps)) <= to(T) + eps.
inline DirectionResult scan_cdf_side(const PiecewiseCdf& from, const DiscreteMeasure& to,
                                     const ProhorovOptions& opts) {
  std::size_t n = to.size();
  if (n > opts.enumeration_cap)
    throw CapacityError("prohorov enumeration: support of size " + std::to_string(n) +
                        " exceeds cap " + std::to_string(opts.enumeration_cap) +
                        "; use the flow method");
  if (!to.on_line_space())
    throw ValidationError("space mismatch: a cdf lives on the line");
  DirectionResult result;
  PiecewiseCdf f = from.normalized();
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << n); ++mask) {
    Rat c_weight = 0;
    std::vector<Rat> outside;  // support atoms not in T
    for (std::size_t j = 0; j < n; ++j) {
      if (mask & (std::uint64_t{1} << j))
        c_weight += to.weight(j);
      else
        outside.push_back(to.atom(j));
    }
    std::vector<Rat> breaks;
    for (const auto& b : f.breakpoints())
      for (const auto& p : outside) breaks.push_back(rat_abs(b - p));
    for (std::size_t i = 0; i + 1 < outside.size(); ++i)
      for (std::size_t j = i + 1; j < outside.size(); ++j)
        breaks.push_back((outside[j] - outside[i]) / 2);
    auto reach = [&](const Rat& eps) {
      if (outside.empty()) return Rat(0);
      return measure_of(f, eps_neighborhood(outside, eps));
    };
    Crossing c = crossing_threshold(c_weight, Rat(1), std::move(breaks), reach);
    fold_entry(result, c, mask, true);
  }
  return result;
}

inline DirectionResult scan_direction(const Measure& from, const Measure& to,
                                      const ProhorovOptions& opts) {
  if (is_discrete(from)) return scan_point_side(as_discrete(from), to, opts);
  return scan_cdf_side(std::get<PiecewiseCdf>(from), as_discrete(to), opts);
}

inline void validate_pair(const Measure& mu, const Measure& nu) {
  if (is_discrete(mu) && is_discrete(nu)) {
    if (!same_space(as_discrete(mu).space(), as_discrete(nu).space()))
      throw ValidationError("space mismatch: measures live on different spaces");
    return;
  }
  if (!is_discrete(mu) && !is_discrete(nu))
    throw ValidationError(
        "prohorov enumeration: need a finitely supported side; quantize one argument first");
  const Measure& d = is_discrete(mu) ? mu : nu;
  if (!as_discrete(d).on_line_space())
    throw ValidationError("space mismatch: a cdf lives on the line");
}

// Materializes the subset (or region) behind a fold entry, with exact
// masses evaluated at `eps`.
inline ProhorovWitness build_witness(const Measure& from, const Measure& to, bool mu_side,
                                     bool tfamily, std::uint64_t mask, const Rat& eps) {
  ProhorovWitness w;
  w.mu_side = mu_side;
  w.eps = eps;
  if (!tfamily) {
    const auto& d = as_discrete(from);
    std::vector<Rat> coords;
    std::vector<std::size_t> indices;
    Rat lhs = 0;
    for (std::size_t i = 0; i < d.size(); ++i)
      if (mask & (std::uint64_t{1} << i)) {
        coords.push_back(d.atom(i));
        if (!d.on_line_space()) indices.push_back(d.points()[i]);
        lhs += d.weight(i);
      }
    w.lhs = lhs;
    if (d.on_line_space()) {
      w.subset = PointSet::on_line(coords);
      w.rhs_mass = measure_of(to, eps_neighborhood(coords, eps));
    } else {
      w.subset = PointSet::on_space(d.space(), indices);
      w.rhs_mass = measure_of(as_discrete(to), eps_neighborhood(*w.subset, eps));
    }
  } else {
    const PiecewiseCdf f = as_cdf(from);
    const auto& d = as_discrete(to);
    std::vector<Rat> outside;
    Rat rhs = 0;
    for (std::size_t j = 0; j < d.size(); ++j) {
      if (mask & (std::uint64_t{1} << j))
        rhs += d.weight(j);
      else
        outside.push_back(d.atom(j));
    }
    IntervalUnion hole =
        outside.empty() ? IntervalUnion::empty_set() : eps_neighborhood(outside, eps);
    w.region = hole.complement();
    w.lhs = 1 - measure_of(f, hole);
    w.rhs_mass = rhs;
  }
  return w;
}

}  // namespace detail

// Direct feasibility check at a fixed eps; returns a violating set if the
// defining system fails there.
inline std::optional<ProhorovWitness> prohorov_violation(const Measure& mu, const Measure& nu,
                                                         const Rat& eps,
                                                         const ProhorovOptions& opts = {}) {
  if (eps <= 0) throw ValidationError("prohorov feasibility: eps must be positive");
  detail::validate_pair(mu, nu);
  for (int side = 0; side < 2; ++side) {
    const Measure& from = (side == 0) ? mu : nu;
    const Measure& to = (side == 0) ? nu : mu;
    bool tfam = !is_discrete(from);
    const DiscreteMeasure& base = tfam ? as_discrete(to) : as_discrete(from);
    std::size_t m = base.size();
    if (m > opts.enumeration_cap)
      throw CapacityError("prohorov enumeration: support of size " + std::to_string(m) +
                          " exceeds cap " + std::to_string(opts.enumeration_cap) +
                          "; use the flow method");
    std::uint64_t first = tfam ? 0 : 1;
    for (std::uint64_t mask = first; mask < (std::uint64_t{1} << m); ++mask) {
      ProhorovWitness w = detail::build_witness(from, to, side == 0, tfam, mask, eps);
      if (w.lhs > w.rhs_mass + eps) return w;
    }
  }
  return std::nullopt;
}

inline bool prohorov_feasible(const Measure& mu, const Measure& nu, const Rat& eps,
                              const ProhorovOptions& opts = {}) {
  return !prohorov_violation(mu, nu, eps, opts).has_value();
}

namespace detail {

inline ProhorovReport combine_directions(const Measure& mu, const Measure& nu,
                                         std::vector<std::pair<bool, DirectionResult>> dirs) {
  ProhorovReport rep;
  rep.value = 0;
  rep.attained = true;
  bool have_witness = false;
  bool witness_mu_side = false;
  DirectionResult const* witness_dir = nullptr;
  for (const auto& [mu_side, dir] : dirs) {
    rep.subsets_checked += dir.checked;
    if (dir.value > rep.value) {
      rep.value = dir.value;
      rep.attained = dir.attained;
      witness_mu_side = mu_side;
      witness_dir = &dir;
      have_witness = true;
    } else if (dir.value == rep.value && rep.value > 0) {
      rep.attained = rep.attained && dir.attained;
      if (witness_dir && witness_dir->witness_attained && !dir.witness_attained) {
        witness_mu_side = mu_side;
        witness_dir = &dir;
      }
    }
  }
  if (have_witness && rep.value > 0 && witness_dir) {
    const Measure& from = witness_mu_side ? mu : nu;
    const Measure& to = witness_mu_side ? nu : mu;
    rep.witness = build_witness(from, to, witness_mu_side, witness_dir->tfamily,
                                witness_dir->witness_mask, rep.value);
  }
  return rep;
}

}  // namespace detail

// Exact Prohorov distance by subset enumeration, with attainment flag and
// a binding witness set evaluated at the distance itself.
inline ProhorovReport prohorov_bruteforce(const Measure& mu, const Measure& nu,
                                          const ProhorovOptions& opts = {}) {
  detail::validate_pair(mu, nu);
  if (same_measure(mu, nu)) return {Rat(0), true, std::nullopt, 0};
  std::vector<std::pair<bool, detail::DirectionResult>> dirs;
  dirs.emplace_back(true, detail::scan_direction(mu, nu, opts));
  dirs.emplace_back(false, detail::scan_direction(nu, mu, opts));
  return detail::combine_directions(mu, nu, std::move(dirs));
}

// Only the first argument's mass bounds:  mu(A) <= nu(A^eps) + eps for all
// closed A.  For the Prohorov system this one-sided value already equals
// the symmetric distance; exposing it separately lets tests check that.
inline ProhorovReport prohorov_onesided(const Measure& mu, const Measure& nu,
                                        const ProhorovOptions& opts = {}) {
  detail::validate_pair(mu, nu);
  if (same_measure(mu, nu)) return {Rat(0), true, std::nullopt, 0};
  std::vector<std::pair<bool, detail::DirectionResult>> dirs;
  dirs.emplace_back(true, detail::scan_direction(mu, nu, opts));
  return detail::combine_directions(mu, nu, std::move(dirs));
}

}  // namespace probmetrics

#endif  // PROBMETRICS_PROHOROV_HPP

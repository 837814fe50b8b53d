#ifndef PROBMETRICS_TESTS_UTIL_HPP
#define PROBMETRICS_TESTS_UTIL_HPP

// Shared helpers for the test suites: deterministic random instances and
// brute-force oracles that work straight from the definitions.

#include <algorithm>
#include <random>
#include <vector>

#include "probmetrics/measure.hpp"
#include "probmetrics/rational.hpp"

namespace pmtest {

using probmetrics::DiscreteMeasure;
using probmetrics::PiecewiseCdf;
using probmetrics::Rat;

inline std::uint64_t bounded(std::mt19937_64& rng, std::uint64_t n) {
  // Rejection sampling keeps the draw unbiased and portable.
  std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return v % n;
}

// Composition of `total` into `parts` nonnegative integers (uniform cuts).
inline std::vector<std::uint64_t> random_composition(std::mt19937_64& rng, std::uint64_t total,
                                                     std::size_t parts) {
  std::vector<std::uint64_t> cuts;
  for (std::size_t i = 0; i + 1 < parts; ++i) cuts.push_back(bounded(rng, total + 1));
  cuts.push_back(0);
  cuts.push_back(total);
  std::sort(cuts.begin(), cuts.end());
  std::vector<std::uint64_t> out;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) out.push_back(cuts[i + 1] - cuts[i]);
  return out;
}

// Random finitely supported measure on the line with small denominators.
inline DiscreteMeasure random_line_measure(std::mt19937_64& rng, std::size_t max_atoms = 5,
                                           std::uint64_t den_bound = 8, long coord_span = 8) {
  std::size_t m = 1 + bounded(rng, max_atoms);
  std::vector<Rat> atoms;
  while (atoms.size() < m) {
    long den = 1 + static_cast<long>(bounded(rng, den_bound));
    long num = static_cast<long>(bounded(rng, 2 * coord_span * den + 1)) - coord_span * den;
    Rat a(num, den);
    if (std::find(atoms.begin(), atoms.end(), a) == atoms.end()) atoms.push_back(a);
  }
  std::uint64_t total = m + bounded(rng, 16);
  std::vector<std::uint64_t> parts;
  do {
    parts = random_composition(rng, total, m);
  } while (std::find(parts.begin(), parts.end(), 0u) != parts.end());
  std::vector<Rat> weights;
  for (auto p : parts) weights.emplace_back(static_cast<long>(p), static_cast<long>(total));
  return probmetrics::make_discrete_measure(std::move(atoms), std::move(weights));
}

// Random piecewise-linear CDF mixing atoms and uniform stretches.
inline PiecewiseCdf random_cdf(std::mt19937_64& rng, std::size_t max_breaks = 4,
                               std::uint64_t den_bound = 6, long coord_span = 6) {
  std::size_t k = 1 + bounded(rng, max_breaks);
  std::vector<Rat> bps;
  while (bps.size() < k) {
    long den = 1 + static_cast<long>(bounded(rng, den_bound));
    long num = static_cast<long>(bounded(rng, 2 * coord_span * den + 1)) - coord_span * den;
    Rat b(num, den);
    if (std::find(bps.begin(), bps.end(), b) == bps.end()) bps.push_back(b);
  }
  std::sort(bps.begin(), bps.end());
  // 2k-1 mass slots: jump at each breakpoint, slab between consecutive ones.
  std::uint64_t total = 4 + bounded(rng, 24);
  std::vector<std::uint64_t> slots = random_composition(rng, total, 2 * k - 1);
  std::vector<Rat> values(k), slopes;
  Rat cum = 0;
  for (std::size_t i = 0; i < k; ++i) {
    cum += Rat(static_cast<long>(slots[2 * i]), static_cast<long>(total));
    values[i] = cum;
    if (i + 1 < k) {
      Rat slab(static_cast<long>(slots[2 * i + 1]), static_cast<long>(total));
      cum += slab;
      slopes.push_back(slab / (bps[i + 1] - bps[i]));
    }
  }
  values.back() = 1;  // exact by construction; composition sums to total
  return PiecewiseCdf(std::move(bps), std::move(values), std::move(slopes));
}

// Star metric: node 0 at the hub, leaves pairwise distance 2.
inline probmetrics::SpaceHandle star_space(std::size_t leaves) {
  std::size_t n = leaves + 1;
  std::vector<std::vector<Rat>> d(n, std::vector<Rat>(n, Rat(0)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i == j) continue;
      d[i][j] = (i == 0 || j == 0) ? Rat(1) : Rat(2);
    }
  return std::make_shared<const probmetrics::FiniteMetricSpace>(std::move(d));
}

inline DiscreteMeasure random_space_measure(std::mt19937_64& rng,
                                            const probmetrics::SpaceHandle& space) {
  std::size_t n = space->size();
  std::vector<std::size_t> points;
  while (points.empty()) {
    points.clear();
    for (std::size_t i = 0; i < n; ++i)
      if (bounded(rng, 2) == 1) points.push_back(i);
  }
  std::uint64_t total = points.size() + bounded(rng, 12);
  std::vector<std::uint64_t> parts;
  do {
    parts = random_composition(rng, total, points.size());
  } while (std::find(parts.begin(), parts.end(), 0u) != parts.end());
  std::vector<Rat> weights;
  for (auto p : parts) weights.emplace_back(static_cast<long>(p), static_cast<long>(total));
  return probmetrics::make_discrete_measure(space, std::move(points), std::move(weights));
}

inline PiecewiseCdf shift_cdf(const PiecewiseCdf& f, const Rat& c) {
  std::vector<Rat> bps;
  for (const auto& b : f.breakpoints()) bps.push_back(b + c);
  return PiecewiseCdf(std::move(bps), f.values(), f.slopes());
}

// Definition-level check of the band F(x-h)-h <= G(x) <= F(x+h)+h.
// Both sides are piecewise linear between critical points, so checking
// values and left limits at every critical point is exhaustive.
inline bool oracle_band_feasible(const PiecewiseCdf& f, const PiecewiseCdf& g, const Rat& h) {
  std::vector<Rat> xs = g.breakpoints();
  for (const auto& b : f.breakpoints()) {
    xs.push_back(b + h);
    xs.push_back(b - h);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  for (const auto& x : xs) {
    if (f.value(x - h) - h > g.value(x)) return false;
    if (f.left(x - h) - h > g.left(x)) return false;
    if (g.value(x) > f.value(x + h) + h) return false;
    if (g.left(x) > f.left(x + h) + h) return false;
  }
  return true;
}

}  // namespace pmtest

#endif  // PROBMETRICS_TESTS_UTIL_HPP

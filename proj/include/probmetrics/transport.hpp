#ifndef PROBMETRICS_TRANSPORT_HPP
#define PROBMETRICS_TRANSPORT_HPP

// Coupling formulation between finitely supported measures: there is a
// coupling placing at most `allowance` mass on pairs further apart than
// `radius` exactly when  mu(A) <= nu(A^radius) + allowance  for every A.
// A bipartite flow network decides this exactly: source -> mu-atoms with
// weight capacities, unit-dominating "wide" arcs across close pairs, one
// bottleneck arc of capacity `allowance` for everything else, and
// nu-atoms -> sink.  A maximum flow below one yields, via its minimum
// cut, a concrete deficient set; a flow of one yields the coupling.

#include <cstdint>
#include <optional>
#include <vector>

#include "probmetrics/maxflow.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/prohorov.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"

namespace probmetrics {

struct CouplingEntry {
  std::size_t i, j;  // indices into mu's / nu's sorted support
  Rat mass;
};

struct TransportPlan {
  std::vector<CouplingEntry> entries;
  Rat overflow_mass;  // mass routed through the bottleneck (bounds the far mass)
};

// Certificate that no admissible coupling exists:
//   mass > nbhd_mass + allowance  for this subset of mu's support.
struct MassDeficitWitness {
  PointSet set;
  Rat mass;       // mu(set)
  Rat nbhd_mass;  // nu of the strict radius-neighborhood of set
  Rat radius;
  Rat allowance;
};

struct StrassenCheck {
  bool feasible;
  Rat routed;  // total flow; equals one exactly when feasible
  std::optional<TransportPlan> plan;
  std::optional<MassDeficitWitness> witness;
};

namespace detail {

inline void require_same_space(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  if (!same_space(mu.space(), nu.space()))
    throw ValidationError("space mismatch: measures live on different spaces");
}

inline Rat nbhd_mass_of(const DiscreteMeasure& nu, const DiscreteMeasure& mu,
                        const std::vector<std::size_t>& members, const Rat& eps) {
  Rat mass = 0;
  for (std::size_t j = 0; j < nu.size(); ++j) {
    for (std::size_t i : members) {
      if (atom_distance(mu, i, nu, j) < eps) {
        mass += nu.weight(j);
        break;
      }
    }
  }
  return mass;
}

}  // namespace detail

inline StrassenCheck strassen_feasible(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                                       const Rat& eps,
                                       std::optional<Rat> allowance = std::nullopt) {
  if (eps <= 0) throw ValidationError("coupling check: radius must be positive");
  Rat slack = allowance.value_or(eps);
  if (slack < 0) throw ValidationError("coupling check: allowance must be nonnegative");
  detail::require_same_space(mu, nu);

  const std::size_t m = mu.size(), n = nu.size();
  const std::size_t src = 0, o1 = 1 + m + n, o2 = o1 + 1, sink = o2 + 1;
  FlowNetwork net(sink + 1);
  auto mu_node = [&](std::size_t i) { return 1 + i; };
  auto nu_node = [&](std::size_t j) { return 1 + m + j; };
  const Rat wide(2);  // exceeds total mass, so these arcs never bind

  std::vector<std::size_t> src_arc(m), sink_arc(n), to_over(m), from_over(n);
  std::vector<std::vector<std::optional<std::size_t>>> close(
      m, std::vector<std::optional<std::size_t>>(n));
  for (std::size_t i = 0; i < m; ++i) src_arc[i] = net.add_arc(src, mu_node(i), mu.weight(i));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (atom_distance(mu, i, nu, j) < eps) close[i][j] = net.add_arc(mu_node(i), nu_node(j), wide);
  std::size_t bottleneck = 0;
  if (slack > 0) {
    for (std::size_t i = 0; i < m; ++i) to_over[i] = net.add_arc(mu_node(i), o1, wide);
    bottleneck = net.add_arc(o1, o2, slack);
    for (std::size_t j = 0; j < n; ++j) from_over[j] = net.add_arc(o2, nu_node(j), wide);
  }
  for (std::size_t j = 0; j < n; ++j) sink_arc[j] = net.add_arc(nu_node(j), sink, nu.weight(j));

  StrassenCheck out;
  out.routed = net.max_flow(src, sink);
  out.feasible = out.routed == 1;

  if (out.feasible) {
    TransportPlan plan;
    plan.overflow_mass = slack > 0 ? net.flow(bottleneck) : Rat(0);
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (close[i][j] && net.flow(*close[i][j]) > 0)
          plan.entries.push_back({i, j, net.flow(*close[i][j])});
    if (slack > 0) {
      // Leftover mass through the bottleneck, matched greedily.
      std::size_t i = 0, j = 0;
      Rat row = 0, col = 0;  // unmatched remainder of the current atom
      while (true) {
        while (row == 0 && i < m) {
          row = net.flow(to_over[i]);
          if (row == 0) ++i;
        }
        while (col == 0 && j < n) {
          col = net.flow(from_over[j]);
          if (col == 0) ++j;
        }
        if (row == 0 || col == 0) break;
        Rat take = rat_min(row, col);
        plan.entries.push_back({i, j, take});
        row -= take;
        col -= take;
        if (row == 0) ++i;
        if (col == 0) ++j;
      }
    }
    out.plan = std::move(plan);
    return out;
  }

  std::vector<bool> side = net.min_cut_source_side();
  std::vector<std::size_t> members;
  std::vector<Rat> coords;
  std::vector<std::size_t> indices;
  Rat mass = 0;
  for (std::size_t i = 0; i < m; ++i)
    if (side[mu_node(i)]) {
      members.push_back(i);
      coords.push_back(mu.atom(i));
      if (!mu.on_line_space()) indices.push_back(mu.points()[i]);
      mass += mu.weight(i);
    }
  if (members.empty())
    throw std::logic_error("coupling check: empty cut despite deficit");
  MassDeficitWitness w{mu.on_line_space() ? PointSet::on_line(coords)
                                          : PointSet::on_space(mu.space(), indices),
                       mass, detail::nbhd_mass_of(nu, mu, members, eps), eps, slack};
  out.witness = std::move(w);
  return out;
}

// Largest mass matchable across pairs no further than `radius` apart
// (closed comparison), plus what is left over.
struct FrontierRow {
  Rat radius;
  Rat routable;
  Rat deficiency;  // 1 - routable
};

namespace detail {

inline Rat routable_within(const DiscreteMeasure& mu, const DiscreteMeasure& nu,
                           const Rat& radius) {
  const std::size_t m = mu.size(), n = nu.size();
  FlowNetwork net(2 + m + n);
  const Rat wide(2);
  for (std::size_t i = 0; i < m; ++i) net.add_arc(0, 1 + i, mu.weight(i));
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (atom_distance(mu, i, nu, j) <= radius) net.add_arc(1 + i, 1 + m + j, wide);
  for (std::size_t j = 0; j < n; ++j) net.add_arc(1 + m + j, 1 + m + n, nu.weight(j));
  return net.max_flow(0, 1 + m + n);
}

inline std::vector<Rat> pairwise_radii(const DiscreteMeasure& mu, const DiscreteMeasure& nu) {
  std::vector<Rat> radii{Rat(0)};
  for (std::size_t i = 0; i < mu.size(); ++i)
    for (std::size_t j = 0; j < nu.size(); ++j) radii.push_back(atom_distance(mu, i, nu, j));
  std::sort(radii.begin(), radii.end());
  radii.erase(std::unique(radii.begin(), radii.end()), radii.end());
  return radii;
}

}  // namespace detail

inline std::vector<FrontierRow> transport_frontier(const DiscreteMeasure& mu,
                                                   const DiscreteMeasure& nu) {
  detail::require_same_space(mu, nu);
  std::vector<FrontierRow> rows;
  for (const Rat& r : detail::pairwise_radii(mu, nu)) {
    Rat routable = detail::routable_within(mu, nu, r);
    rows.push_back({r, routable, 1 - routable});
  }
  return rows;
}

// Prohorov distance through the coupling formulation.  On each interval
// between consecutive pairwise distances the close-arc set is constant,
// so feasibility there reads  eps >= 1 - routable;  the scan finds the
// first interval containing its own threshold.
inline ProhorovReport prohorov_via_flow(const Measure& mu, const Measure& nu) {
  if (!is_discrete(mu) || !is_discrete(nu))
    throw ValidationError(
        "flow method: both measures must be finitely supported; use enumeration for cdf inputs");
  const DiscreteMeasure& a = as_discrete(mu);
  const DiscreteMeasure& b = as_discrete(nu);
  detail::require_same_space(a, b);
  if (same_measure(mu, nu)) return {Rat(0), true, std::nullopt, 0};

  std::vector<Rat> radii = detail::pairwise_radii(a, b);
  ProhorovReport rep;
  for (std::size_t k = 0; k < radii.size(); ++k) {
    Rat deficiency = 1 - detail::routable_within(a, b, radii[k]);
    rep.subsets_checked += 1;  // here: number of flow subproblems solved
    Rat value;
    bool attained;
    if (deficiency <= radii[k]) {
      value = radii[k];
      attained = false;  // the previous interval was infeasible throughout
    } else if (k + 1 == radii.size() || deficiency <= radii[k + 1]) {
      value = deficiency;
      attained = true;
    } else {
      continue;
    }
    rep.value = value;
    rep.attained = attained;
    // Certify with a concrete deficient set at (or just below) the value.
    Rat probe = attained ? (radii[k] + value) / 2 : value;
    if (probe > 0) {
      auto check = strassen_feasible(a, b, probe);
      if (check.witness.has_value())
        rep.witness = ProhorovWitness{true, check.witness->set, std::nullopt,
                                      check.witness->mass, check.witness->nbhd_mass, probe};
    }
    return rep;
  }
  throw std::logic_error("flow scan: no feasible interval found");
}

}  // namespace probmetrics

#endif  // PROBMETRICS_TRANSPORT_HPP

// Acceptance gate: eight checks, one PASS/FAIL line each, nonzero exit
// if anything fails.  Every comparison is exact rational arithmetic; the
// two timed checks print their measured wall time.

#include <algorithm>
#include <chrono>
#include <iostream>
#include <string>
#include <vector>

#include "probmetrics/audit.hpp"
#include "probmetrics/convergence.hpp"
#include "probmetrics/levy.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/prohorov.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"
#include "probmetrics/transport.hpp"

using namespace probmetrics;
using Clock = std::chrono::steady_clock;

namespace {

struct Line {
  int idx;
  std::string what;
  bool ok;
  std::string detail;
};
std::vector<Line> results;

void report(int idx, const std::string& what, bool ok, const std::string& detail = "") {
  results.push_back({idx, what, ok, detail});
}

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

Measure ramp() {
  return Measure{PiecewiseCdf({Rat(0), Rat(1)}, {Rat(0), Rat(1)}, {Rat(1)})};
}

Measure step_nu() {
  return Measure{make_discrete_measure({Rat(0), Rat(1, 4)}, {Rat(2, 3), Rat(1, 3)})};
}

// 1. The ramp/step pair: both metrics 3/8 and sup distance 3/4, exactly,
//    inside one second.
void criterion_worked_pair() {
  auto t0 = Clock::now();
  Distance lv = levy_distance(as_cdf(ramp()), as_cdf(step_nu()));
  ProhorovReport pr = prohorov_bruteforce(ramp(), step_nu());
  Distance ks = kolmogorov_distance(as_cdf(ramp()), as_cdf(step_nu()));
  double secs = seconds_since(t0);
  bool ok = lv.value == Rat(3, 8) && pr.value == Rat(3, 8) && ks.value == Rat(3, 4) &&
            secs < 1.0;
  report(1, "ramp/step pair: band 3/8, neighborhood 3/8, sup 3/4, exact", ok,
         "levy " + to_string(lv.value) + ", prohorov " + to_string(pr.value) + ", sup " +
             to_string(ks.value) + ", " + std::to_string(secs) + "s");
}

// 2 & 5. Five hundred random pairs with combined support at most twelve:
//    the flow scan, the subset enumeration, and the one-sided variant all
//    produce the same exact value; the flow-vs-enumeration sweep stays
//    under sixty seconds.
void criterion_random_agreement() {
  InstanceSpec spec;
  spec.min_atoms = 1;
  spec.max_atoms = 6;
  spec.coord_span = 4;
  spec.den_bound = 8;

  std::size_t flow_bad = 0, onesided_bad = 0;
  std::string first_flow_bad, first_onesided_bad;
  auto t0 = Clock::now();
  for (std::uint64_t t = 1; t <= 500; ++t) {
    spec.seed = t;
    auto [mu, nu] = random_instance(spec);
    Measure a{mu}, b{nu};
    Rat brute = prohorov_bruteforce(a, b).value;
    Rat flow = prohorov_via_flow(a, b).value;
    Rat onesided = prohorov_onesided(a, b).value;
    if (flow != brute && ++flow_bad == 1)
      first_flow_bad = "seed " + std::to_string(t) + ": flow " + to_string(flow) +
                       " != enumerate " + to_string(brute);
    if (onesided != brute && ++onesided_bad == 1)
      first_onesided_bad = "seed " + std::to_string(t) + ": one-sided " + to_string(onesided) +
                           " != enumerate " + to_string(brute);
  }
  double secs = seconds_since(t0);
  report(2, "flow scan matches enumeration on 500 random pairs (support <= 12)",
         flow_bad == 0 && secs < 60.0,
         flow_bad ? first_flow_bad : std::to_string(secs) + "s");
  report(5, "one-sided evaluation matches enumeration on all 500 random pairs",
         onesided_bad == 0, first_onesided_bad);
}

// 3. Two hundred random triples: exact symmetry, identity and triangle
//    inequality for both metrics.
void criterion_axioms() {
  InstanceSpec spec;
  spec.seed = 20260814;
  FuzzReport rep = metric_axiom_fuzz(spec, 200);
  std::string detail;
  if (!rep.violations.empty()) {
    const AxiomViolation& v = rep.violations.front();
    detail = v.metric + " " + v.axiom + " at trial " + std::to_string(v.trial) + ": " + v.note;
  }
  report(3, "metric axioms hold exactly over 200 random triples", rep.violations.empty(),
         detail.empty() ? std::to_string(rep.checks) + " checks" : detail);
}

// 4. The band distance never exceeds the neighborhood distance on any
//    audited instance, and the curated split pair realizes band 1/2,
//    neighborhood 1, gap 1/2 — re-derived by the enumeration oracles
//    before comparing with the pinned constants.
void criterion_gap() {
  InstanceSpec spec;
  spec.seed = 41;
  bool ok = true;
  std::string detail;
  try {
    GapSearchReport rep = levy_prohorov_gap_search(spec, 300);
    for (const GapRecord& r : rep.records)
      if (r.gap < 0) {
        ok = false;
        detail = "negative gap " + to_string(r.gap);
        break;
      }
    Rat lv = levy_distance(as_cdf(detail::split_pair_mu()), as_cdf(detail::split_pair_nu())).value;
    Rat pv = prohorov_bruteforce(detail::split_pair_mu(), detail::split_pair_nu()).value;
    if (lv != Rat(1, 2) || pv != 1) {
      ok = false;
      detail = "split pair: band " + to_string(lv) + ", neighborhood " + to_string(pv);
    }
    bool curated_seen = false;
    for (const GapRecord& r : rep.records)
      if (r.label == "split-pair")
        curated_seen = r.levy.value == Rat(1, 2) && r.prohorov.value == 1 && r.gap == Rat(1, 2);
    if (!curated_seen) {
      ok = false;
      if (detail.empty()) detail = "curated record missing or off its pinned values";
    }
  } catch (const std::exception& e) {
    ok = false;
    detail = e.what();
  }
  report(4, "band <= neighborhood on 300 audited instances; split pair gap exactly 1/2", ok,
         detail);
}

// 6. Collapsing onto width-delta cells moves a measure by at most delta
//    in the neighborhood metric, over a hundred generated pairs.
void criterion_quantize() {
  const Rat deltas[] = {Rat(1, 3), Rat(1, 7), Rat(2, 5), Rat(1)};
  InstanceSpec spec;
  std::size_t bad = 0, count = 0;
  std::string first_bad;
  for (std::uint64_t t = 1; t <= 100; ++t) {
    spec.seed = 1000 + t;
    Measure mu{random_instance(spec).first};
    const Rat& delta = deltas[t % 4];
    Rat moved = prohorov_bruteforce(mu, Measure{quantize(mu, delta)}).value;
    ++count;
    if (moved > delta && ++bad == 1)
      first_bad = "seed " + std::to_string(spec.seed) + ": moved " + to_string(moved) +
                  " > delta " + to_string(delta);
  }
  for (long k = 0; k <= 3; ++k) {
    for (const Rat& delta : {Rat(1), Rat(3, 2), Rat(1, 2)}) {
      Measure mu{PiecewiseCdf({Rat(k, 3), Rat(k, 3) + 1}, {Rat(0), Rat(1)}, {Rat(1)})};
      Rat moved = prohorov_bruteforce(mu, Measure{quantize(mu, delta)}).value;
      ++count;
      if (moved > delta && ++bad == 1)
        first_bad = "ramp at " + to_string(Rat(k, 3)) + ": moved " + to_string(moved) +
                    " > delta " + to_string(delta);
    }
  }
  report(6, "quantization moves measures at most delta (" + std::to_string(count) + " pairs)",
         bad == 0, first_bad);
}

// 7. Point masses at 1/n: the band profile equals 1/n at every index,
//    and the grid-cluster subsequence reports strictly decreasing
//    band values ending below 1/16.
void criterion_profile_and_subsequence() {
  MeasureSequence seq;
  for (long n = 1; n <= 64; ++n)
    seq.push_back(Measure{make_discrete_measure({Rat(1, n)}, {Rat(1)})});
  Measure limit{make_discrete_measure({Rat(0)}, {Rat(1)})};

  bool profile_ok = true;
  std::string detail;
  std::vector<ProfilePoint> profile = levy_convergence_profile(seq, limit);
  for (std::size_t k = 0; k < profile.size(); ++k)
    if (profile[k].levy.value != Rat(1, static_cast<long>(k + 1))) {
      profile_ok = false;
      detail = "index " + std::to_string(k + 1) + ": " + to_string(profile[k].levy.value);
      break;
    }

  std::vector<Rat> grid;
  for (long k = 0; k <= 16; ++k) grid.emplace_back(k, 16);
  HellyOutcome out = helly_subsequence(seq, grid, Rat(1, 32));
  bool helly_ok = out.sufficient && !out.levy_to_limit.empty();
  for (std::size_t k = 1; helly_ok && k < out.levy_to_limit.size(); ++k)
    if (out.levy_to_limit[k] >= out.levy_to_limit[k - 1]) helly_ok = false;
  if (helly_ok && out.levy_to_limit.back() >= Rat(1, 16)) helly_ok = false;
  if (!helly_ok && detail.empty())
    detail = out.sufficient ? "subsequence values not decreasing below 1/16"
                            : "no convergent cluster found";

  report(7, "band profile is exactly 1/n; selected subsequence decreases below 1/16",
         profile_ok && helly_ok, detail);
}

// 8. The two-atom family 1/2 at 0, 1/2 at n (n = 1..5) with eps = 2/5:
//    minimal interval exactly [0, 5], and pulling in either endpoint
//    drops some member below the required mass.
void criterion_tightness() {
  MeasureSequence family;
  for (long n = 1; n <= 5; ++n)
    family.push_back(Measure{make_discrete_measure({Rat(0), Rat(n)}, {Rat(1, 2), Rat(1, 2)})});
  TightnessWitness w = tightness_witness(family, Rat(2, 5));
  bool interval_ok = w.lo == 0 && w.hi == 5 && !w.degenerate;

  auto min_mass = [&family](const Rat& lo, const Rat& hi) {
    Rat least = 2;
    for (const Measure& m : family) {
      Rat mass = measure_of(m, IntervalUnion({Interval::closed(lo, hi)}));
      least = rat_min(least, mass);
    }
    return least;
  };
  const Rat need = Rat(3, 5);  // 1 - eps, strict comparison
  bool shrink_ok = min_mass(Rat(0), Rat(5)) > need && min_mass(Rat(1), Rat(5)) <= need &&
                   min_mass(Rat(0), Rat(4)) <= need;
  report(8, "two-atom family needs exactly [0, 5] at eps 2/5; both endpoints bind",
         interval_ok && shrink_ok,
         "got [" + to_string(w.lo) + ", " + to_string(w.hi) + "]");
}

}  // namespace

int main() {
  criterion_worked_pair();
  criterion_random_agreement();
  criterion_axioms();
  criterion_gap();
  criterion_quantize();
  criterion_profile_and_subsequence();
  criterion_tightness();

  std::sort(results.begin(), results.end(),
            [](const Line& a, const Line& b) { return a.idx < b.idx; });
  int failures = 0;
  for (const Line& r : results) {
    std::cout << (r.ok ? "PASS" : "FAIL") << "  " << r.idx << ". " << r.what;
    if (!r.detail.empty()) std::cout << "  [" << r.detail << "]";
    std::cout << "\n";
    if (!r.ok) ++failures;
  }
  if (failures) {
    std::cout << failures << " criterion(s) failed" << std::endl;
    return 1;
  }
  std::cout << "all criteria passed" << std::endl;
  return 0;
}

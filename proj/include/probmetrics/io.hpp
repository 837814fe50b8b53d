#ifndef PROBMETRICS_IO_HPP
#define PROBMETRICS_IO_HPP

// JSON measure files and report rendering, plus the CSV writers used by
// the command-line tool.  Every numeric field is emitted twice: the
// exact rational as a canonically reduced string ("3/8", never "6/16"),
// and a double under the matching *_approx key.  Approximations are for
// reading; the strings round-trip losslessly, and emit-then-parse gives
// back the identical measure.

#include <fstream>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "probmetrics/audit.hpp"
#include "probmetrics/convergence.hpp"
#include "probmetrics/levy.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/prohorov.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/sets.hpp"
#include "probmetrics/transport.hpp"

namespace probmetrics {

using Json = nlohmann::ordered_json;

inline void put_rat(Json& j, const std::string& key, const Rat& v) {
  j[key] = to_string(v);
  j[key + "_approx"] = approx(v);
}

// --- measures ---

inline Json emit_measure(const Measure& m) {
  if (!measure_on_line(m))
    throw ValidationError("emit_measure: only line measures have a file form");
  Json j;
  j["space"] = "line";
  if (is_discrete(m)) {
    const DiscreteMeasure& d = as_discrete(m);
    Json atoms = Json::array(), weights = Json::array();
    for (std::size_t i = 0; i < d.size(); ++i) {
      atoms.push_back(to_string(d.atom(i)));
      weights.push_back(to_string(d.weight(i)));
    }
    j["atoms"] = std::move(atoms);
    j["weights"] = std::move(weights);
  } else {
    const PiecewiseCdf& f = std::get<PiecewiseCdf>(m);
    Json bp = Json::array(), vals = Json::array(), slopes = Json::array();
    for (const Rat& b : f.breakpoints()) bp.push_back(to_string(b));
    for (const Rat& v : f.values()) vals.push_back(to_string(v));
    for (const Rat& s : f.slopes()) slopes.push_back(to_string(s));
    j["breakpoints"] = std::move(bp);
    j["values"] = std::move(vals);
    j["slopes"] = std::move(slopes);
  }
  return j;
}

namespace detail {

inline Rat rat_field(const Json& j, const std::string& ctx) {
  if (j.is_number_integer()) return Rat(static_cast<long long>(j.get<long long>()));
  if (!j.is_string())
    throw ValidationError(ctx + ": expected a rational string like \"3/8\"");
  return parse_rational(j.get<std::string>(), ctx);
}

inline std::vector<Rat> rat_array(const Json& j, const std::string& ctx) {
  if (!j.is_array()) throw ValidationError(ctx + ": expected an array");
  std::vector<Rat> out;
  out.reserve(j.size());
  for (std::size_t i = 0; i < j.size(); ++i)
    out.push_back(rat_field(j[i], ctx + "[" + std::to_string(i) + "]"));
  return out;
}

}  // namespace detail

// Parses one measure object; `ctx` (usually the file path) prefixes every
// diagnostic so errors name the offending field.
inline Measure parse_measure(const Json& j, const std::string& ctx) {
  if (!j.is_object()) throw ValidationError(ctx + ": expected a measure object");
  if (j.contains("space") && j["space"] != "line")
    throw ValidationError(ctx + ": space: only \"line\" measures have a file form");

  if (j.contains("atoms")) {
    std::vector<Rat> atoms = detail::rat_array(j["atoms"], ctx + ": atoms");
    if (atoms.empty()) throw ValidationError(ctx + ": atoms: empty list");
    if (!j.contains("weights")) throw ValidationError(ctx + ": weights: missing");
    std::vector<Rat> weights = detail::rat_array(j["weights"], ctx + ": weights");
    if (weights.size() != atoms.size())
      throw ValidationError(ctx + ": weights: expected " + std::to_string(atoms.size()) +
                            " entries, got " + std::to_string(weights.size()));
    Rat total = 0;
    for (std::size_t i = 0; i < weights.size(); ++i) {
      if (weights[i] <= 0)
        throw ValidationError(ctx + ": weights[" + std::to_string(i) +
                              "]: must be positive, got " + to_string(weights[i]));
      total += weights[i];
    }
    if (total != 1)
      throw ValidationError(ctx + ": weights: sum " + to_string(total) + " != 1");
    try {
      return Measure(make_discrete_measure(std::move(atoms), std::move(weights)));
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": " + e.what());
    }
  }

  if (j.contains("breakpoints")) {
    std::vector<Rat> bp = detail::rat_array(j["breakpoints"], ctx + ": breakpoints");
    if (bp.empty()) throw ValidationError(ctx + ": breakpoints: empty list");
    if (!j.contains("values")) throw ValidationError(ctx + ": values: missing");
    std::vector<Rat> vals = detail::rat_array(j["values"], ctx + ": values");
    std::vector<Rat> slopes =
        j.contains("slopes") ? detail::rat_array(j["slopes"], ctx + ": slopes")
                             : std::vector<Rat>(bp.size() - 1, Rat(0));
    if (vals.size() != bp.size())
      throw ValidationError(ctx + ": values: expected " + std::to_string(bp.size()) +
                            " entries, got " + std::to_string(vals.size()));
    if (slopes.size() + 1 != bp.size())
      throw ValidationError(ctx + ": slopes: expected " + std::to_string(bp.size() - 1) +
                            " entries, got " + std::to_string(slopes.size()));
    for (std::size_t i = 1; i < bp.size(); ++i) {
      if (bp[i] <= bp[i - 1])
        throw ValidationError(ctx + ": breakpoints[" + std::to_string(i) +
                              "]: not strictly increasing at " + to_string(bp[i]));
      if (slopes[i - 1] < 0)
        throw ValidationError(ctx + ": slopes[" + std::to_string(i - 1) +
                              "]: negative slope " + to_string(slopes[i - 1]));
      Rat left = vals[i - 1] + slopes[i - 1] * (bp[i] - bp[i - 1]);
      if (vals[i] < left)
        throw ValidationError(ctx + ": values[" + std::to_string(i) +
                              "]: cdf decreases at breakpoint " + to_string(bp[i]));
    }
    try {
      return Measure(PiecewiseCdf(std::move(bp), std::move(vals), std::move(slopes)));
    } catch (const ValidationError& e) {
      throw ValidationError(ctx + ": " + e.what());
    }
  }

  throw ValidationError(ctx + ": expected atoms/weights or breakpoints/values/slopes");
}

inline Json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError(path + ": unreadable file");
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error& e) {
    throw ValidationError(path + ": " + e.what());
  }
}

inline Measure parse_measure_file(const std::string& path) {
  return parse_measure(load_json_file(path), path);
}

// --- sequence corpora ---

struct SequenceCorpus {
  MeasureSequence measures;
  std::optional<Measure> limit;
};

inline Json emit_sequence(const SequenceCorpus& c) {
  Json j;
  Json ms = Json::array();
  for (const Measure& m : c.measures) ms.push_back(emit_measure(m));
  j["measures"] = std::move(ms);
  if (c.limit) j["limit"] = emit_measure(*c.limit);
  return j;
}

inline SequenceCorpus parse_sequence(const Json& j, const std::string& ctx) {
  if (!j.is_object() || !j.contains("measures"))
    throw ValidationError(ctx + ": measures: missing");
  if (!j["measures"].is_array()) throw ValidationError(ctx + ": measures: expected an array");
  SequenceCorpus c;
  for (std::size_t i = 0; i < j["measures"].size(); ++i)
    c.measures.push_back(
        parse_measure(j["measures"][i], ctx + ": measures[" + std::to_string(i) + "]"));
  if (c.measures.empty()) throw ValidationError(ctx + ": measures: empty list");
  if (j.contains("limit")) c.limit = parse_measure(j["limit"], ctx + ": limit");
  return c;
}

inline SequenceCorpus parse_sequence_file(const std::string& path) {
  return parse_sequence(load_json_file(path), path);
}

// --- sets and certificates ---

inline Json interval_json(const Interval& iv) {
  Json j;
  if (iv.lo.finite()) {
    j["lo"] = to_string(iv.lo.value);
    j["lo_closed"] = iv.lo.closed;
  } else {
    j["lo"] = "-inf";
  }
  if (iv.hi.finite()) {
    j["hi"] = to_string(iv.hi.value);
    j["hi_closed"] = iv.hi.closed;
  } else {
    j["hi"] = "+inf";
  }
  return j;
}

inline Json interval_union_json(const IntervalUnion& u) {
  Json j = Json::array();
  for (const Interval& p : u.parts()) j.push_back(interval_json(p));
  return j;
}

inline Json point_set_json(const PointSet& s) {
  Json j;
  if (s.on_line_space()) {
    Json pts = Json::array();
    for (const Rat& p : s.coords) pts.push_back(to_string(p));
    j["points"] = std::move(pts);
  } else {
    j["indices"] = s.indices;
  }
  return j;
}

inline Json distance_json(const Distance& d) {
  Json j;
  put_rat(j, "value", d.value);
  j["attained"] = d.attained;
  return j;
}

inline Json prohorov_witness_json(const ProhorovWitness& w) {
  Json j;
  j["side"] = w.mu_side ? "first" : "second";
  if (w.subset) j["set"] = point_set_json(*w.subset);
  if (w.region) j["region"] = interval_union_json(*w.region);
  put_rat(j, "lhs", w.lhs);
  put_rat(j, "rhs_mass", w.rhs_mass);
  put_rat(j, "eps", w.eps);
  return j;
}

inline Json band_violation_json(const BandViolation& v) {
  Json j;
  j["side"] = v.lower ? "lower" : "upper";
  put_rat(j, "x", v.x);
  put_rat(j, "lhs", v.lhs);
  put_rat(j, "rhs", v.rhs);
  return j;
}

inline Json prohorov_report_json(const ProhorovReport& r) {
  Json j;
  put_rat(j, "value", r.value);
  j["attained"] = r.attained;
  if (r.witness) j["witness"] = prohorov_witness_json(*r.witness);
  j["subsets_checked"] = r.subsets_checked;
  return j;
}

// --- convergence reports ---

inline Json condition_json(const ConditionReport& c) {
  Json j;
  j["passed"] = c.passed;
  put_rat(j, "worst_margin", c.worst_margin);
  j["members"] = c.members;
  Json margins = Json::array();
  for (const Rat& m : c.margins) margins.push_back(to_string(m));
  j["margins"] = std::move(margins);
  j["oscillating"] = c.oscillating;
  return j;
}

inline Json portmanteau_json(const PortmanteauReport& r) {
  Json j;
  j["prefix"] = r.prefix;
  j["window_begin"] = r.window_begin;
  put_rat(j, "tolerance", r.tolerance);
  j["closed_sets"] = condition_json(r.closed_sets);
  j["open_sets"] = condition_json(r.open_sets);
  j["continuity_sets"] = condition_json(r.continuity_sets);
  j["functions"] = condition_json(r.functions);
  Json excluded = Json::array();
  for (const IntervalUnion& u : r.excluded_continuity_sets)
    excluded.push_back(interval_union_json(u));
  j["excluded_continuity_sets"] = std::move(excluded);
  j["all_passed"] = r.all_passed();
  return j;
}

inline Json profile_json(const std::vector<ProfilePoint>& pts) {
  Json j = Json::array();
  for (const ProfilePoint& p : pts) {
    Json row;
    row["index"] = p.index;
    put_rat(row, "levy", p.levy.value);
    row["attained"] = p.levy.attained;
    if (!p.grid_diffs.empty()) {
      Json diffs = Json::array();
      for (const Rat& d : p.grid_diffs) diffs.push_back(to_string(d));
      row["grid_diffs"] = std::move(diffs);
    }
    j.push_back(std::move(row));
  }
  return j;
}

inline Json tightness_json(const TightnessWitness& w, const Rat& eps) {
  Json j;
  put_rat(j, "epsilon", eps);
  put_rat(j, "lo", w.lo);
  put_rat(j, "hi", w.hi);
  j["degenerate"] = w.degenerate;
  Json masses = Json::array();
  for (const Rat& m : w.masses) masses.push_back(to_string(m));
  j["masses"] = std::move(masses);
  j["binding_left"] = w.binding_left;
  j["binding_right"] = w.binding_right;
  return j;
}

// --- audit reports ---

inline Json fuzz_json(const FuzzReport& r) {
  Json j;
  j["seed"] = r.spec.seed;
  j["trials"] = r.trials;
  j["checks"] = r.checks;
  Json vs = Json::array();
  for (const AxiomViolation& v : r.violations) {
    Json row;
    row["trial"] = v.trial;
    row["metric"] = v.metric;
    row["axiom"] = v.axiom;
    row["note"] = v.note;
    vs.push_back(std::move(row));
  }
  j["violations"] = std::move(vs);
  return j;
}

inline Json gap_record_json(const GapRecord& r) {
  Json j;
  j["trial"] = r.trial;
  j["label"] = r.label;
  j["mu"] = emit_measure(r.mu);
  j["nu"] = emit_measure(r.nu);
  j["levy"] = distance_json(r.levy);
  j["prohorov"] = distance_json(r.prohorov);
  put_rat(j, "gap", r.gap);
  if (r.pi_witness) j["pi_witness"] = prohorov_witness_json(*r.pi_witness);
  if (r.levy_witness) {
    put_rat(j, "levy_probe", r.levy_probe);
    j["levy_witness"] = band_violation_json(*r.levy_witness);
  }
  return j;
}

inline Json gap_search_json(const GapSearchReport& r) {
  Json j;
  j["seed"] = r.spec.seed;
  j["trials"] = r.trials;
  j["summary"] = gap_summary(r);
  Json records = Json::array();
  for (const GapRecord& rec : r.records) records.push_back(gap_record_json(rec));
  j["records"] = std::move(records);
  return j;
}

// --- CSV writers ---

inline std::string audit_csv(const GapSearchReport& r) {
  std::string out = "seed,trial,levy,prohorov,gap\n";
  for (const GapRecord& rec : r.records) {
    out += std::to_string(r.spec.seed) + "," + std::to_string(rec.trial) + "," +
           to_string(rec.levy.value) + "," + to_string(rec.prohorov.value) + "," +
           to_string(rec.gap) + "\n";
  }
  return out;
}

inline std::string frontier_csv(const std::vector<FrontierRow>& rows) {
  std::string out = "radius,routable,deficiency\n";
  for (const FrontierRow& r : rows)
    out += to_string(r.radius) + "," + to_string(r.routable) + "," + to_string(r.deficiency) +
           "\n";
  return out;
}

inline std::string profile_csv(const std::vector<ProfilePoint>& pts) {
  std::string out = "index,levy,attained\n";
  for (const ProfilePoint& p : pts)
    out += std::to_string(p.index) + "," + to_string(p.levy.value) + "," +
           (p.levy.attained ? "1" : "0") + "\n";
  return out;
}

}  // namespace probmetrics

#endif  // PROBMETRICS_IO_HPP

#ifndef PROBMETRICS_CLI_HPP
#define PROBMETRICS_CLI_HPP

// Command-line front end.  Five subcommands — dist, converge, tightness,
// quantize, audit — each reading JSON measure files and writing a JSON
// (default) or CSV report to stdout or --output.  Exit codes: 0 on
// success, 2 on any validation problem (the diagnostic names the
// offending field or file), 1 on internal errors.  The PROBMETRICS_FORMAT
// environment variable supplies the default for --format.  Dispatch is
// single-threaded throughout.

#include <cstdlib>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "probmetrics/audit.hpp"
#include "probmetrics/convergence.hpp"
#include "probmetrics/io.hpp"
#include "probmetrics/levy.hpp"
#include "probmetrics/measure.hpp"
#include "probmetrics/prohorov.hpp"
#include "probmetrics/rational.hpp"
#include "probmetrics/transport.hpp"

namespace probmetrics::cli {

// One parsed invocation: the chosen subcommand plus every option it can
// carry.  Rational-valued options stay strings until use so diagnostics
// can name the flag that failed to parse.
struct Command {
  std::string subcommand;

  // dist
  std::string metric;
  std::string a_path, b_path;
  std::string method = "auto";
  std::size_t auto_threshold = 13;  // combined atoms at which auto switches to flow
  bool verify = false;
  std::string frontier_path;

  // converge / tightness / quantize
  std::string in_path;
  std::string tol = "1/16";
  std::string epsilon;
  std::string delta;

  // audit
  std::uint64_t seed = 1;
  std::size_t trials = 20;
  std::size_t min_atoms = 1, max_atoms = 4;
  long coord_span = 4;
  std::uint64_t den_bound = 8;

  // common
  std::string output_path;
  std::string format;  // json | csv; empty -> $PROBMETRICS_FORMAT or json
};

namespace detail {

inline std::string resolved_format(const Command& cmd) {
  std::string fmt = cmd.format;
  if (fmt.empty()) {
    const char* env = std::getenv("PROBMETRICS_FORMAT");
    fmt = env ? env : "json";
  }
  if (fmt != "json" && fmt != "csv")
    throw ValidationError("--format: expected json or csv, got \"" + fmt + "\"");
  return fmt;
}

inline void deliver(const std::string& text, const Command& cmd, std::ostream& out) {
  if (cmd.output_path.empty()) {
    out << text;
    if (text.empty() || text.back() != '\n') out << '\n';
    return;
  }
  std::ofstream f(cmd.output_path);
  if (!f) throw ValidationError("--output: cannot write " + cmd.output_path);
  f << text;
  if (text.empty() || text.back() != '\n') f << '\n';
}

inline Rat positive_option(const std::string& text, const std::string& flag) {
  Rat v = parse_rational(text, flag);
  if (v <= 0) throw ValidationError(flag + ": must be positive, got " + to_string(v));
  return v;
}

inline std::size_t combined_atoms(const Measure& a, const Measure& b) {
  std::size_t n = 0;
  if (is_discrete(a)) n += as_discrete(a).size();
  if (is_discrete(b)) n += as_discrete(b).size();
  return n;
}

inline int run_dist(const Command& cmd, std::ostream& out) {
  if (cmd.metric != "levy" && cmd.metric != "prohorov" && cmd.metric != "kolmogorov")
    throw ValidationError("--metric: expected levy, prohorov or kolmogorov, got \"" +
                          cmd.metric + "\"");
  if (cmd.method != "enumerate" && cmd.method != "flow" && cmd.method != "auto")
    throw ValidationError("--method: expected enumerate, flow or auto, got \"" + cmd.method +
                          "\"");
  Measure a = parse_measure_file(cmd.a_path);
  Measure b = parse_measure_file(cmd.b_path);

  Json j;
  j["metric"] = cmd.metric;
  j["a"] = cmd.a_path;
  j["b"] = cmd.b_path;
  std::string method_used;

  if (cmd.metric == "levy") {
    Distance d = levy_distance(as_cdf(a), as_cdf(b));
    put_rat(j, "value", d.value);
    j["attained"] = d.attained;
  } else if (cmd.metric == "kolmogorov") {
    Distance d = kolmogorov_distance(as_cdf(a), as_cdf(b));
    put_rat(j, "value", d.value);
    j["attained"] = d.attained;
  } else {
    bool both_discrete = is_discrete(a) && is_discrete(b);
    method_used = cmd.method;
    if (method_used == "auto")
      method_used =
          (both_discrete && combined_atoms(a, b) >= cmd.auto_threshold) ? "flow" : "enumerate";
    ProhorovReport rep;
    if (cmd.verify) {
      if (!both_discrete)
        throw ValidationError("--verify: runs both methods, so the flow method's "
                              "finitely-supported requirement applies");
      rep = prohorov_bruteforce(a, b);
      ProhorovReport flow = prohorov_via_flow(a, b);
      if (rep.value != flow.value)
        throw std::logic_error("enumerate gave " + to_string(rep.value) + " but flow gave " +
                               to_string(flow.value));
      Json v;
      v["enumerate"] = to_string(rep.value);
      v["flow"] = to_string(flow.value);
      v["agree"] = true;
      j["verify"] = std::move(v);
      method_used = "enumerate";
    } else if (method_used == "enumerate") {
      try {
        rep = prohorov_bruteforce(a, b);
      } catch (const CapacityError& e) {
        throw ValidationError(std::string("--method enumerate: ") + e.what() +
                              "; use --method flow");
      }
    } else {
      rep = prohorov_via_flow(a, b);
    }
    j["method"] = method_used;
    put_rat(j, "value", rep.value);
    j["attained"] = rep.attained;
    if (rep.witness) j["witness"] = prohorov_witness_json(*rep.witness);
    j["subsets_checked"] = rep.subsets_checked;
  }

  if (!cmd.frontier_path.empty()) {
    if (!is_discrete(a) || !is_discrete(b))
      throw ValidationError("--frontier: requires finitely supported measures on both sides");
    std::vector<FrontierRow> rows = transport_frontier(as_discrete(a), as_discrete(b));
    std::ofstream f(cmd.frontier_path);
    if (!f) throw ValidationError("--frontier: cannot write " + cmd.frontier_path);
    f << frontier_csv(rows);
    j["frontier"] = cmd.frontier_path;
    j["frontier_rows"] = rows.size();
  }

  if (resolved_format(cmd) == "csv") {
    std::string row = cmd.metric + "," + j["value"].get<std::string>() + "," +
                      (j["attained"].get<bool>() ? "1" : "0");
    deliver("metric,value,attained\n" + row, cmd, out);
  } else {
    deliver(j.dump(2), cmd, out);
  }
  return 0;
}

inline int run_converge(const Command& cmd, std::ostream& out) {
  Rat tol = positive_option(cmd.tol, "--tol");
  SequenceCorpus corpus = parse_sequence_file(cmd.in_path);
  if (!corpus.limit)
    throw ValidationError(cmd.in_path + ": limit: missing (converge compares against a limit)");
  PortmanteauReport rep = portmanteau_report(corpus.measures, *corpus.limit, tol);
  std::vector<ProfilePoint> profile = levy_convergence_profile(corpus.measures, *corpus.limit);
  if (resolved_format(cmd) == "csv") {
    deliver(profile_csv(profile), cmd, out);
  } else {
    Json j = portmanteau_json(rep);
    j["profile"] = profile_json(profile);
    deliver(j.dump(2), cmd, out);
  }
  return 0;
}

inline int run_tightness(const Command& cmd, std::ostream& out) {
  Rat eps = positive_option(cmd.epsilon, "--epsilon");
  SequenceCorpus corpus = parse_sequence_file(cmd.in_path);
  TightnessWitness w = tightness_witness(corpus.measures, eps);
  if (resolved_format(cmd) == "csv") {
    std::string text = "lo,hi,degenerate,binding_left,binding_right\n" + to_string(w.lo) + "," +
                       to_string(w.hi) + "," + (w.degenerate ? "1" : "0") + "," +
                       std::to_string(w.binding_left) + "," + std::to_string(w.binding_right);
    deliver(text, cmd, out);
  } else {
    deliver(tightness_json(w, eps).dump(2), cmd, out);
  }
  return 0;
}

inline int run_quantize(const Command& cmd, std::ostream& out) {
  Rat delta = positive_option(cmd.delta, "--delta");
  Measure m = parse_measure_file(cmd.in_path);
  DiscreteMeasure q = quantize(m, delta);
  if (resolved_format(cmd) == "csv") {
    std::string text = "atom,weight\n";
    for (std::size_t i = 0; i < q.size(); ++i)
      text += to_string(q.atom(i)) + "," + to_string(q.weight(i)) + "\n";
    deliver(text, cmd, out);
  } else {
    // Pure measure schema, so the output feeds straight back into --a/--b.
    deliver(emit_measure(Measure(q)).dump(2), cmd, out);
  }
  return 0;
}

inline int run_audit(const Command& cmd, std::ostream& out) {
  InstanceSpec spec;
  spec.seed = cmd.seed;
  spec.min_atoms = cmd.min_atoms;
  spec.max_atoms = cmd.max_atoms;
  spec.coord_span = cmd.coord_span;
  spec.den_bound = cmd.den_bound;
  FuzzReport fuzz = metric_axiom_fuzz(spec, cmd.trials);
  GapSearchReport gaps = levy_prohorov_gap_search(spec, cmd.trials);
  if (resolved_format(cmd) == "csv") {
    deliver(audit_csv(gaps), cmd, out);
  } else {
    Json j;
    j["seed"] = spec.seed;
    j["trials"] = cmd.trials;
    j["fuzz"] = fuzz_json(fuzz);
    j["gap_search"] = gap_search_json(gaps);
    deliver(j.dump(2), cmd, out);
  }
  return 0;
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"exact band and neighborhood distances between probability measures"};
  app.require_subcommand(1);
  Command cmd;

  auto add_common = [&cmd](CLI::App* sub) {
    sub->add_option("--output", cmd.output_path, "write the report here instead of stdout");
    sub->add_option("--format", cmd.format, "json or csv (default: $PROBMETRICS_FORMAT, json)");
  };

  CLI::App* dist = app.add_subcommand("dist", "distance between two measure files");
  dist->add_option("--metric", cmd.metric, "levy, prohorov or kolmogorov")->required();
  dist->add_option("--a", cmd.a_path, "first measure file")->required();
  dist->add_option("--b", cmd.b_path, "second measure file")->required();
  dist->add_option("--method", cmd.method, "enumerate, flow or auto (prohorov only)");
  dist->add_option("--auto-threshold", cmd.auto_threshold,
                   "combined atom count at which auto picks flow");
  dist->add_flag("--verify", cmd.verify, "run enumerate and flow, require exact agreement");
  dist->add_option("--frontier", cmd.frontier_path, "write coupling frontier rows to this csv");
  add_common(dist);

  CLI::App* converge = app.add_subcommand("converge", "portmanteau conditions and band profile");
  converge->add_option("--in", cmd.in_path, "sequence file with measures and limit")->required();
  converge->add_option("--tol", cmd.tol, "tolerance for the approximate conditions");
  add_common(converge);

  CLI::App* tightness = app.add_subcommand("tightness", "minimal common interval for a family");
  tightness->add_option("--in", cmd.in_path, "family file with measures")->required();
  tightness->add_option("--epsilon", cmd.epsilon, "mass defect bound")->required();
  add_common(tightness);

  CLI::App* quantize = app.add_subcommand("quantize", "collapse a measure onto delta cells");
  quantize->add_option("--in", cmd.in_path, "measure file")->required();
  quantize->add_option("--delta", cmd.delta, "cell width")->required();
  add_common(quantize);

  CLI::App* audit = app.add_subcommand("audit", "axiom fuzz and band-vs-neighborhood gap search");
  audit->add_option("--seed", cmd.seed, "generator seed");
  audit->add_option("--trials", cmd.trials, "random instances per report");
  audit->add_option("--min-atoms", cmd.min_atoms, "fewest atoms per instance");
  audit->add_option("--max-atoms", cmd.max_atoms, "most atoms per instance");
  audit->add_option("--span", cmd.coord_span, "atom coordinates stay within [-span, span]");
  audit->add_option("--den-bound", cmd.den_bound, "denominator bound for atoms and weights");
  add_common(audit);

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return 2;
  }

  try {
    if (dist->parsed()) {
      cmd.subcommand = "dist";
      return detail::run_dist(cmd, out);
    }
    if (converge->parsed()) {
      cmd.subcommand = "converge";
      return detail::run_converge(cmd, out);
    }
    if (tightness->parsed()) {
      cmd.subcommand = "tightness";
      return detail::run_tightness(cmd, out);
    }
    if (quantize->parsed()) {
      cmd.subcommand = "quantize";
      return detail::run_quantize(cmd, out);
    }
    cmd.subcommand = "audit";
    return detail::run_audit(cmd, out);
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const CapacityError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << '\n';
    return 1;
  }
}

}  // namespace probmetrics::cli

#endif  // PROBMETRICS_CLI_HPP

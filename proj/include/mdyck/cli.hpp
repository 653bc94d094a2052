#pragma once

#include <cmath>
#include <cstdio>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "census.hpp"
#include "conjugacy.hpp"
#include "errors.hpp"
#include "graph.hpp"
#include "height_data.hpp"
#include "matrix.hpp"
#include "power_series.hpp"
#include "sampling.hpp"
#include "semigroup.hpp"
#include "spectra.hpp"
#include "zeta.hpp"

namespace mdyck {

using Json = nlohmann::ordered_json;

struct RunConfig {
  std::string command;
  std::string data;        // comma-separated level counts
  std::string graph_name;  // "fibonacci" or "dyck:N"; alternative to data
  long n_max = 6;
  int order = 8;
  int census_order = 8;  // series order used for census cross-checks
  unsigned long long seed = 1;
  long steps = 100000;
  long budget = kDefaultCensusBudget;
  std::string format = "json";
};

namespace detail {

inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.15g", v);
  return buf;
}

inline Json json_certified(const CertifiedReal& x) {
  return Json::array({format_double(x.lo.get_d()), format_double(x.hi.get_d())});
}

inline Json json_series(const PowerSeries& s) {
  Json out = Json::array();
  for (int k = 0; k <= s.order(); k++) out.push_back(s[k].get_str());
  return out;
}

inline Json json_census(const PeriodicCensus& cen) {
  Json rows = Json::array();
  for (int n = 1; n <= cen.n_max(); n++) {
    const CensusRow& r = cen.at(n);
    rows.push_back({{"n", n},
                    {"total", r.total.get_str()},
                    {"neutral", r.neutral.get_str()},
                    {"negative", r.negative.get_str()},
                    {"positive", r.positive.get_str()}});
  }
  return rows;
}

inline Json json_graph(const Graph& g) {
  Json vertices = Json::array();
  for (long v = 0; v < g.vertex_count(); v++)
    vertices.push_back({{"id", v}, {"name", g.vertex_label(v).name}});
  Json edges = Json::array();
  for (long e = 0; e < g.edge_count(); e++)
    edges.push_back(
        {{"id", e}, {"name", g.edge_label(e).name}, {"src", g.src(e)}, {"dst", g.dst(e)}});
  return {{"vertices", vertices}, {"edges", edges}};
}

inline Json json_matrix(const IntMatrix& a) {
  Json rows = Json::array();
  for (long r = 0; r < a.size(); r++) {
    Json row = Json::array();
    for (long c = 0; c < a.size(); c++) row.push_back(a.at(r, c).get_si());
    rows.push_back(std::move(row));
  }
  return rows;
}

inline IntMatrix adjacency_of(const Graph& g) {
  IntMatrix a(g.vertex_count());
  for (long e = 0; e < g.edge_count(); e++) a.at(g.src(e), g.dst(e)) += 1;
  return a;
}

struct ResolvedInput {
  std::optional<HeightData> data;
  Graph graph;
  std::string label;
};

inline ResolvedInput resolve_input(const RunConfig& cfg) {
  if (!cfg.graph_name.empty() && !cfg.data.empty())
    throw InputError("give either --data or --graph, not both");
  if (cfg.graph_name == "fibonacci") return {std::nullopt, fibonacci_graph(), "fibonacci"};
  if (cfg.graph_name.rfind("dyck:", 0) == 0) {
    HeightData data = HeightData::parse(cfg.graph_name.substr(5));
    if (data.levels() != 1) throw InputError("dyck:N takes a single count");
    return {data, build_rotational(data), cfg.graph_name};
  }
  if (!cfg.graph_name.empty()) throw InputError("unknown graph name: " + cfg.graph_name);
  if (cfg.data.empty()) throw InputError("command needs --data or --graph");
  HeightData data = HeightData::parse(cfg.data);
  return {data, build_rotational(data), data.to_string()};
}

inline std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

inline std::string scalar_text(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  return v.dump();
}

inline void flatten(const Json& v, const std::string& path,
                    std::vector<std::pair<std::string, std::string>>& out) {
  if (v.is_object()) {
    for (const auto& [key, val] : v.items())
      flatten(val, path.empty() ? key : path + "." + key, out);
  } else if (v.is_array()) {
    long i = 0;
    for (const Json& item : v) flatten(item, path + "[" + std::to_string(i++) + "]", out);
  } else {
    out.push_back({path, scalar_text(v)});
  }
}

// CSV renders the first array-of-objects field as a table; anything else
// degrades to flattened key,value rows.
inline std::string to_csv(const Json& rep) {
  for (const auto& [key, val] : rep.items()) {
    (void)key;
    if (!val.is_array() || val.empty() || !val[0].is_object()) continue;
    bool scalar_only = true;
    for (const auto& [k2, v2] : val[0].items()) {
      (void)k2;
      if (v2.is_object() || v2.is_array()) scalar_only = false;
    }
    if (!scalar_only) continue;
    std::string out;
    std::string sep;
    for (const auto& [col, cell] : val[0].items()) {
      (void)cell;
      out += sep + csv_escape(col);
      sep = ",";
    }
    out += "\n";
    for (const Json& row : val) {
      sep = "";
      for (const auto& [col, cell] : row.items()) {
        (void)col;
        out += sep + csv_escape(scalar_text(cell));
        sep = ",";
      }
      out += "\n";
    }
    return out;
  }
  std::vector<std::pair<std::string, std::string>> pairs;
  flatten(rep, "", pairs);
  std::string out = "key,value\n";
  for (const auto& [k, v] : pairs) out += csv_escape(k) + "," + csv_escape(v) + "\n";
  return out;
}

inline std::string to_text(const Json& rep) {
  std::vector<std::pair<std::string, std::string>> pairs;
  flatten(rep, "", pairs);
  std::string out;
  for (const auto& [k, v] : pairs) out += k + " = " + v + "\n";
  return out;
}

}  // namespace detail

inline std::string emit_report(const Json& rep, const std::string& format) {
  if (format == "json") return rep.dump(2) + "\n";
  if (format == "csv") return detail::to_csv(rep);
  if (format == "text") return detail::to_text(rep);
  if (format == "dot") throw InputError("dot output is only available for the graph command");
  throw InputError("unsupported format: " + format);
}

namespace detail {

inline int run_graph(const ResolvedInput& in, Json& rep) {
  rep["strongly_connected"] = in.graph.is_strongly_connected();
  auto [homogeneous, recovered] = check_rotational_homogeneity(in.graph);
  rep["rotationally_homogeneous"] = homogeneous;
  rep["recovered_data"] = recovered ? Json(recovered->to_string()) : Json();
  Json shape = json_graph(in.graph);
  rep["vertices"] = shape["vertices"];
  rep["edges"] = shape["edges"];
  if (in.data) {
    auto [companion, matrix] = build_companion(*in.data);
    Json comp = json_graph(companion);
    comp["matrix"] = json_matrix(matrix);
    rep["companion"] = comp;
    if (!homogeneous || !recovered || !(*recovered == *in.data)) return 2;
  }
  return 0;
}

inline int run_entropy(const ResolvedInput& in, Json& rep) {
  if (!in.data) {
    CertifiedReal h = fibonacci_entropy();
    rep["entropy"] = json_certified(h);
    rep["entropy_value"] = format_double(h.to_double());
    return 0;
  }
  EntropyFormulaReport formulas = entropy_formula_report(*in.data);
  rep["lambda"] = json_certified(formulas.lambda);
  CertifiedReal h = entropy(*in.data);
  rep["entropy"] = json_certified(h);
  rep["entropy_value"] = format_double(h.to_double());
  Json checks = Json::array();
  for (const FormulaCheck& c : formulas.checks)
    checks.push_back({{"label", c.label},
                      {"corrected", c.corrected},
                      {"evaluable", c.evaluable},
                      {"value", c.evaluable ? Json(format_double(c.value)) : Json()},
                      {"agrees", c.agrees}});
  rep["checks"] = checks;
  rep["all_corrected_agree"] = formulas.all_corrected_agree();
  rep["as_written_defect"] = formulas.any_as_written_defect();
  return (formulas.any_as_written_defect() || !formulas.all_corrected_agree()) ? 2 : 0;
}

inline int run_zeta(const RunConfig& cfg, const ResolvedInput& in, Json& rep) {
  if (!in.data) throw InputError("zeta needs height data");
  int census_order = std::min(cfg.order, cfg.census_order);
  ZetaReport zr = zeta_report(*in.data, cfg.order, census_order, cfg.budget);
  rep["order"] = zr.order;
  rep["census_order"] = zr.census_order;
  rep["zeta_census"] = json_series(zr.census_zeta);
  Json checks = Json::array();
  for (const ZetaCheck& c : zr.checks)
    checks.push_back({{"label", c.label},
                      {"corrected", c.corrected},
                      {"evaluable", c.evaluable},
                      {"mismatch_order", c.mismatch_order ? Json(*c.mismatch_order) : Json()},
                      {"candidate", json_series(c.candidate)},
                      {"reference", json_series(c.reference)}});
  rep["checks"] = checks;
  rep["all_corrected_match"] = zr.all_corrected_match();
  rep["as_written_defect"] = zr.any_as_written_defect();
  return (zr.any_as_written_defect() || !zr.all_corrected_match()) ? 2 : 0;
}

inline int run_census(const RunConfig& cfg, const ResolvedInput& in, Json& rep) {
  rep["n_max"] = cfg.n_max;
  rep["rows"] = json_census(census(in.graph, static_cast<int>(cfg.n_max), cfg.budget));
  return 0;
}

inline int run_conjugacy(const RunConfig& cfg, const ResolvedInput& in, Json& rep) {
  if (!in.data) throw InputError("conjugacy checks need height data");
  ConjugacyContext ctx(*in.data);
  const long window_length = 100;
  const long windows = 50;
  long positions = 0;
  long determined = 0;
  long interior = 0;
  long interior_determined = 0;
  long mismatches = 0;
  for (long i = 0; i < windows; i++) {
    WindowY y = sample_window(ctx, window_length, cfg.seed + static_cast<unsigned long long>(i));
    DecodedWindow dec = omega_decode(ctx, omega_encode(ctx, y));
    for (size_t p = 0; p < y.letters.size(); p++) {
      positions++;
      bool inner = p >= 20;
      if (inner) interior++;
      if (!dec.letters[p].has_value()) continue;
      determined++;
      if (inner) interior_determined++;
      if (!(*dec.letters[p] == y.letters[p])) mismatches++;
    }
  }
  rep["round_trip"] = {{"windows", windows},
                       {"window_length", window_length},
                       {"positions", positions},
                       {"determined", determined},
                       {"interior_positions", interior},
                       {"interior_determined", interior_determined},
                       {"mismatches", mismatches}};
  bool pass = mismatches == 0 && 10 * interior_determined >= 9 * interior;

  CertifiedReal base_root = perron_root(build_companion(*in.data).second);
  Json resolving = Json::array();
  for (long reps = 1; reps <= 3; reps++) {
    bool ok = resolving_check(*in.data, reps);
    CertifiedReal rep_root = perron_root(build_companion(in.data->repeat(reps)).second);
    bool agree = std::abs(rep_root.to_double() - base_root.to_double()) < 1e-9;
    resolving.push_back({{"reps", reps},
                         {"resolving", ok},
                         {"lambda_base", format_double(base_root.to_double())},
                         {"lambda_repeated", format_double(rep_root.to_double())},
                         {"perron_agree", agree}});
    pass = pass && ok && agree;
  }
  rep["resolving"] = resolving;
  rep["pass"] = pass;
  return pass ? 0 : 2;
}

inline int run_sample(const RunConfig& cfg, const ResolvedInput& in, Json& rep) {
  ParryChain chain = in.data ? parry_chain(*in.data)
                             : parry_chain(in.graph, adjacency_of(in.graph));
  rep["prng"] = "mt19937_64";
  rep["seed"] = cfg.seed;
  rep["steps"] = cfg.steps;
  rep["lambda"] = format_double(chain.lambda);
  rep["entropy_rate"] = format_double(chain.entropy_rate());
  Json stationary = Json::array();
  for (double pi : chain.stationary) stationary.push_back(format_double(pi));
  Json chain_edges = Json::array();
  for (long e = 0; e < chain.graph.edge_count(); e++)
    chain_edges.push_back({{"name", chain.graph.edge_label(e).name},
                           {"prob", format_double(chain.edge_prob(e))},
                           {"measure", format_double(chain.edge_measure(e))}});
  rep["chain"] = {{"stationary", stationary}, {"edges", chain_edges}};

  SamplePath path = sample_path(chain, cfg.steps, cfg.seed);
  rep["path_length"] = static_cast<long>(path.window.edges.size());
  Json prefix = Json::array();
  const long cap = std::min<long>(cfg.steps, 200);
  for (long i = 0; i < cap; i++)
    prefix.push_back(chain.graph.edge_label(path.window.edges[static_cast<size_t>(i)]).name);
  rep["path_prefix"] = prefix;

  if (!in.data) return 0;
  MmeReport mme = mme_checks(*in.data, cfg.steps, cfg.seed);
  Json blocks = Json::array();
  for (double h : mme.block_entropy) blocks.push_back(format_double(h));
  Json conditional = Json::array();
  for (double h : mme.conditional_entropy) conditional.push_back(format_double(h));
  rep["mme"] = {{"log_lambda", format_double(mme.log_lambda)},
                {"freq_plus", format_double(mme.freq_plus)},
                {"freq_minus", format_double(mme.freq_minus)},
                {"guard_band", format_double(mme.guard_band)},
                {"plus_dominates", mme.plus_dominates},
                {"block_entropy", blocks},
                {"conditional_entropy", conditional},
                {"conditional_gap", format_double(mme.conditional_gap)},
                {"windows", mme.windows},
                {"positions", mme.positions},
                {"determined", mme.determined},
                {"decoded_admissible", mme.decoded_admissible},
                {"reversed_admissible", mme.reversed_admissible},
                {"reversed_freq_plus", format_double(mme.reversed_freq_plus)},
                {"reversed_mirrored", mme.reversed_mirrored},
                {"all_pass", mme.all_pass()}};
  return mme.all_pass() ? 0 : 2;
}

}  // namespace detail

// Dispatches a parsed configuration, prints the report, and returns the exit
// status: 0 ok, 1 input error, 2 verification mismatch, 3 budget exceeded.
inline int run(const RunConfig& cfg, std::ostream& out) {
  try {
    detail::ResolvedInput in = detail::resolve_input(cfg);
    if (cfg.command == "graph" && cfg.format == "dot") {
      out << in.graph.to_dot();
      return 0;
    }
    Json rep;
    rep["command"] = cfg.command;
    rep["input"] = in.label;
    int status = 0;
    if (cfg.command == "graph")
      status = detail::run_graph(in, rep);
    else if (cfg.command == "entropy")
      status = detail::run_entropy(in, rep);
    else if (cfg.command == "zeta")
      status = detail::run_zeta(cfg, in, rep);
    else if (cfg.command == "census")
      status = detail::run_census(cfg, in, rep);
    else if (cfg.command == "conjugacy")
      status = detail::run_conjugacy(cfg, in, rep);
    else if (cfg.command == "sample")
      status = detail::run_sample(cfg, in, rep);
    else
      throw InputError("unknown command: " + cfg.command);
    rep["status"] = status;
    out << emit_report(rep, cfg.format);
    return status;
  } catch (const InputError& e) {
    if (cfg.format == "json")
      out << Json{{"error", e.what()}}.dump(2) << "\n";
    else
      out << "error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::input_error);
  } catch (const BudgetExceeded& e) {
    if (cfg.format == "json")
      out << Json{{"error", e.what()}}.dump(2) << "\n";
    else
      out << "error: " << e.what() << "\n";
    return static_cast<int>(ExitStatus::budget_exceeded);
  }
}

}  // namespace mdyck

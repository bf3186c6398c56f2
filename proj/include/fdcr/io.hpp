// Copyright 2026 the fdcr authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

/// @file io.hpp
/// @brief JSON scenario/spec files and CSV result serialization.
///
/// File schemas (all CNR fields in dB, suffixed `_db`; powers in watts,
/// rates in bits/s/Hz):
///   scenario:   {p, r0, gamma_p_db, gamma_s_db, i_s_db, i_p_db,
///                upsilon_p_db, ps_max}
///   statistics: scenario fields plus pu_direct_correlation
///   sweep spec: {stats, axis, axis_values, family, family_values,
///                trials, seed}
/// CSV numbers use %.17g so written values round-trip bit-exactly.

#ifndef FDCR_IO_HPP
#define FDCR_IO_HPP

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "fdcr/montecarlo.hpp"
#include "fdcr/oracle.hpp"

namespace fdcr {

class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace io_detail {

using nlohmann::json;

inline double number_field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field: " + key);
  if (!j.at(key).is_number()) throw ParseError("field is not a number: " + key);
  return j.at(key).get<double>();
}

inline NodePair pair_field(const json& j, const std::string& key) {
  if (!j.contains(key)) throw ParseError("missing field: " + key);
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ParseError("field is not a pair of numbers: " + key);
  return {v[0].get<double>(), v[1].get<double>()};
}

inline json pair_json(const NodePair& p) { return json::array({p.n1, p.n2}); }

}  // namespace io_detail

inline std::string format_full(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline ScenarioInstance scenario_from_json(const nlohmann::json& j) {
  using io_detail::number_field;
  using io_detail::pair_field;
  ScenarioInstance sc;
  sc.p = pair_field(j, "p");
  sc.r0 = pair_field(j, "r0");
  const NodePair gp = pair_field(j, "gamma_p_db");
  sc.gamma_p = {db_to_linear(gp.n1), db_to_linear(gp.n2)};
  sc.gamma_s = db_to_linear(number_field(j, "gamma_s_db"));
  const NodePair is = pair_field(j, "i_s_db");
  sc.i_s = {db_to_linear(is.n1), db_to_linear(is.n2)};
  const NodePair ip = pair_field(j, "i_p_db");
  sc.i_p = {db_to_linear(ip.n1), db_to_linear(ip.n2)};
  const NodePair up = pair_field(j, "upsilon_p_db");
  sc.upsilon_p = {db_to_linear(up.n1), db_to_linear(up.n2)};
  sc.ps_max = number_field(j, "ps_max");
  try {
    sc.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid scenario: ") + e.what());
  }
  return sc;
}

inline nlohmann::json to_json(const ScenarioInstance& sc) {
  using io_detail::pair_json;
  return {{"p", pair_json(sc.p)},
          {"r0", pair_json(sc.r0)},
          {"gamma_p_db", pair_json({linear_to_db(sc.gamma_p.n1), linear_to_db(sc.gamma_p.n2)})},
          {"gamma_s_db", linear_to_db(sc.gamma_s)},
          {"i_s_db", pair_json({linear_to_db(sc.i_s.n1), linear_to_db(sc.i_s.n2)})},
          {"i_p_db", pair_json({linear_to_db(sc.i_p.n1), linear_to_db(sc.i_p.n2)})},
          {"upsilon_p_db",
           pair_json({linear_to_db(sc.upsilon_p.n1), linear_to_db(sc.upsilon_p.n2)})},
          {"ps_max", sc.ps_max}};
}

inline ScenarioStatistics statistics_from_json(const nlohmann::json& j) {
  using io_detail::number_field;
  using io_detail::pair_field;
  ScenarioStatistics st;
  st.p = pair_field(j, "p");
  st.r0 = pair_field(j, "r0");
  st.gamma_p_db = pair_field(j, "gamma_p_db");
  st.gamma_s_db = number_field(j, "gamma_s_db");
  st.i_s_db = pair_field(j, "i_s_db");
  st.i_p_db = pair_field(j, "i_p_db");
  st.upsilon_p_db = pair_field(j, "upsilon_p_db");
  st.ps_max = number_field(j, "ps_max");
  st.pu_direct_correlation = number_field(j, "pu_direct_correlation");
  try {
    st.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid statistics: ") + e.what());
  }
  return st;
}

inline nlohmann::json to_json(const ScenarioStatistics& st) {
  using io_detail::pair_json;
  return {{"p", pair_json(st.p)},
          {"r0", pair_json(st.r0)},
          {"gamma_p_db", pair_json(st.gamma_p_db)},
          {"gamma_s_db", st.gamma_s_db},
          {"i_s_db", pair_json(st.i_s_db)},
          {"i_p_db", pair_json(st.i_p_db)},
          {"upsilon_p_db", pair_json(st.upsilon_p_db)},
          {"ps_max", st.ps_max},
          {"pu_direct_correlation", st.pu_direct_correlation}};
}

inline SweepAxis axis_from_name(const std::string& name) {
  if (name == "gamma_s_db") return SweepAxis::gamma_s_db;
  if (name == "upsilon_p_db") return SweepAxis::upsilon_p_db;
  if (name == "i_s_db") return SweepAxis::i_s_db;
  if (name == "r0") return SweepAxis::r0;
  throw ParseError("unknown sweep axis: " + name);
}

inline std::string axis_name(SweepAxis a) {
  switch (a) {
    case SweepAxis::gamma_s_db: return "gamma_s_db";
    case SweepAxis::upsilon_p_db: return "upsilon_p_db";
    case SweepAxis::i_s_db: return "i_s_db";
    case SweepAxis::r0: return "r0";
  }
  return {};
}

inline SweepFamily family_from_name(const std::string& name) {
  if (name == "gamma_p_db") return SweepFamily::gamma_p_db;
  if (name == "r0") return SweepFamily::r0;
  if (name == "ps_max") return SweepFamily::ps_max;
  throw ParseError("unknown sweep family: " + name);
}

inline std::string family_name(SweepFamily f) {
  switch (f) {
    case SweepFamily::gamma_p_db: return "gamma_p_db";
    case SweepFamily::r0: return "r0";
    case SweepFamily::ps_max: return "ps_max";
  }
  return {};
}

inline SweepSpec sweep_spec_from_json(const nlohmann::json& j) {
  SweepSpec spec;
  if (!j.contains("stats")) throw ParseError("missing field: stats");
  spec.base = statistics_from_json(j.at("stats"));
  if (!j.contains("axis") || !j.at("axis").is_string())
    throw ParseError("missing or non-string field: axis");
  spec.axis = axis_from_name(j.at("axis").get<std::string>());
  if (!j.contains("family") || !j.at("family").is_string())
    throw ParseError("missing or non-string field: family");
  spec.family = family_from_name(j.at("family").get<std::string>());
  auto values = [&j](const char* key) {
    if (!j.contains(key) || !j.at(key).is_array())
      throw ParseError(std::string("missing or non-array field: ") + key);
    std::vector<double> out;
    for (const auto& v : j.at(key)) {
      if (!v.is_number()) throw ParseError(std::string("non-numeric entry in ") + key);
      out.push_back(v.get<double>());
    }
    return out;
  };
  spec.axis_values = values("axis_values");
  spec.family_values = values("family_values");
  if (j.contains("trials")) spec.trials = j.at("trials").get<int>();
  if (j.contains("seed")) spec.seed = j.at("seed").get<std::uint64_t>();
  try {
    spec.validate();
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid sweep spec: ") + e.what());
  }
  return spec;
}

inline nlohmann::json to_json(const SweepSpec& spec) {
  return {{"stats", to_json(spec.base)},
          {"axis", axis_name(spec.axis)},
          {"axis_values", spec.axis_values},
          {"family", family_name(spec.family)},
          {"family_values", spec.family_values},
          {"trials", spec.trials},
          {"seed", spec.seed}};
}

inline nlohmann::json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open file: " + path);
  try {
    return nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError("malformed JSON in " + path + ": " + e.what());
  }
}

/// Applies a `path=value` override to a JSON document; `path` may be dotted
/// to reach nested objects (e.g. stats.gamma_s_db=20). The value is parsed
/// as JSON, so arrays work: i_s_db=[25,15].
inline void apply_override(nlohmann::json& doc, const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || eq == 0)
    throw ParseError("override must look like key=value: " + assignment);
  const std::string path = assignment.substr(0, eq);
  const std::string value = assignment.substr(eq + 1);
  nlohmann::json parsed;
  try {
    parsed = nlohmann::json::parse(value);
  } catch (const nlohmann::json::parse_error&) {
    throw ParseError("override value is not valid JSON: " + value);
  }
  nlohmann::json* node = &doc;
  std::size_t start = 0;
  while (true) {
    const auto dot = path.find('.', start);
    const std::string key = path.substr(start, dot - start);
    if (key.empty()) throw ParseError("override has an empty path segment: " + path);
    if (dot == std::string::npos) {
      (*node)[key] = parsed;
      return;
    }
    node = &(*node)[key];
    start = dot + 1;
  }
}

// ---- CSV ----

inline std::string sweep_csv_header() {
  return "family_value,axis_value,mean_rs_pgs,mean_rs_igs,mean_cx,idle_frac,trials,seed";
}

inline std::string sweep_csv(const SweepResult& res) {
  std::string out = sweep_csv_header() + "\n";
  for (const auto& c : res.cells) {
    out += format_full(c.family_value) + ',' + format_full(c.axis_value) + ',' +
           format_full(c.mean_rs_pgs) + ',' + format_full(c.mean_rs_igs) + ',' +
           format_full(c.mean_cx) + ',' + format_full(c.idle_fraction) + ',' +
           std::to_string(res.trials) + ',' + std::to_string(res.seed) + '\n';
  }
  return out;
}

/// Inverse of sweep_csv, for round-trip checks and downstream tooling.
inline SweepResult sweep_from_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != sweep_csv_header())
    throw ParseError("sweep CSV: bad or missing header");
  SweepResult res;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream row(line);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields.size() != 8) throw ParseError("sweep CSV: bad row: " + line);
    try {
      SweepCell c;
      c.family_value = std::stod(fields[0]);
      c.axis_value = std::stod(fields[1]);
      c.mean_rs_pgs = std::stod(fields[2]);
      c.mean_rs_igs = std::stod(fields[3]);
      c.mean_cx = std::stod(fields[4]);
      c.idle_fraction = std::stod(fields[5]);
      res.trials = std::stoi(fields[6]);
      res.seed = std::stoull(fields[7]);
      res.cells.push_back(c);
    } catch (const std::logic_error&) {  // stod/stoi conversion failure
      throw ParseError("sweep CSV: non-numeric field in row: " + line);
    }
  }
  return res;
}

inline std::string comparison_csv_header() {
  return "scenario_id,alg_ps,alg_cx,alg_rs,grid_ps,grid_cx,grid_rs,rate_gap,"
         "alg_feasible,grid_feasible,tolerance,pass";
}

inline std::string comparison_csv_row(const ComparisonReport& r) {
  return r.scenario_id + ',' + format_full(r.alg_design.ps) + ',' +
         format_full(r.alg_design.cx) + ',' + format_full(r.alg_rate) + ',' +
         format_full(r.grid_design.ps) + ',' + format_full(r.grid_design.cx) + ',' +
         format_full(r.grid_rate) + ',' + format_full(r.rate_gap) + ',' +
         (r.alg_feasible ? "1" : "0") + ',' + (r.grid_feasible ? "1" : "0") + ',' +
         format_full(r.tolerance) + ',' + (r.pass ? "1" : "0");
}

}  // namespace fdcr

#endif  // FDCR_IO_HPP

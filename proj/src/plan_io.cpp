// Copyright 2026 The sg-lab Authors
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

#include "sglab/plan_io.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include <json.hpp>

namespace sglab::cli {

namespace {

using nlohmann::json;

constexpr double kPi = 3.14159265358979323846;

[[noreturn]] void fail(const std::string& msg) { throw ValidationError(msg); }

std::string fmt(const char* spec, double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), spec, v);
  return buf;
}

// --- strict JSON helpers -------------------------------------------------

void require_object(const json& j, const std::string& path) {
  if (!j.is_object()) fail(path + ": expected an object");
}

void reject_unknown_keys(const json& obj, const std::string& path,
                         const std::set<std::string>& allowed) {
  for (const auto& item : obj.items()) {
    if (!allowed.count(item.key())) {
      fail(path + ": unknown key '" + item.key() + "'");
    }
  }
}

const json& require_key(const json& obj, const std::string& path,
                        const std::string& key) {
  const auto it = obj.find(key);
  if (it == obj.end()) fail(path + "." + key + ": missing required key");
  return *it;
}

double get_number(const json& obj, const std::string& path,
                  const std::string& key) {
  const json& v = require_key(obj, path, key);
  if (!v.is_number()) fail(path + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path + "." + key + ": must be finite");
  return x;
}

std::uint64_t get_u64(const json& obj, const std::string& path,
                      const std::string& key) {
  const json& v = require_key(obj, path, key);
  if (!v.is_number_unsigned()) {
    fail(path + "." + key + ": expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

Port parse_port(const json& obj, const std::string& path) {
  const json& v = require_key(obj, path, "port");
  if (v.is_string()) {
    const std::string s = v.get<std::string>();
    if (s == "+") return Port::plus;
    if (s == "-") return Port::minus;
  }
  fail(path + ".port: expected \"+\" or \"-\"");
}

Direction parse_direction(const json& stage, const std::string& path) {
  const double theta = get_number(stage, path, "theta");
  const double phi = get_number(stage, path, "phi");
  if (theta < 0.0 || theta > kPi) {
    fail(path + ".theta: must lie in [0, pi], got " + fmt("%.12g", theta));
  }
  return Direction(theta, phi);
}

PureState parse_source_state(const json& src, const std::string& path) {
  reject_unknown_keys(src, path,
                      {"amp0_re", "amp0_im", "amp1_re", "amp1_im"});
  const Complex amp0(get_number(src, path, "amp0_re"),
                     get_number(src, path, "amp0_im"));
  const Complex amp1(get_number(src, path, "amp1_re"),
                     get_number(src, path, "amp1_im"));
  const double norm = std::sqrt(std::norm(amp0) + std::norm(amp1));
  if (std::abs(norm - 1.0) > 1e-6) {
    fail(path + ": amplitudes must be normalized within 1e-6, got norm " +
         fmt("%.12g", norm));
  }
  return PureState(amp0 / norm, amp1 / norm);
}

json parse_json_text(const std::string& text) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    fail(e.what());  // includes "at line L, column C"
  }
}

// --- CSV helpers ----------------------------------------------------------

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_probability_field(const std::string& s, int line_no) {
  double v = 0.0;
  try {
    std::size_t used = 0;
    v = std::stod(s, &used);
    if (used != s.size()) throw std::invalid_argument(s);
  } catch (const std::exception&) {
    fail("line " + std::to_string(line_no) + ": bad probability value '" + s +
         "'");
  }
  if (!(v >= -1e-12 && v <= 1.0 + 1e-12)) {
    fail("line " + std::to_string(line_no) + ": probability out of range: " +
         s);
  }
  return std::clamp(v, 0.0, 1.0);
}

int parse_index_field(const std::string& s, int line_no, const char* what) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(s, &used);
    if (used != s.size() || v < 1) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    fail("line " + std::to_string(line_no) + ": bad " + std::string(what) +
         " '" + s + "'");
  }
}

}  // namespace

std::string format_sig12(double v) {
  if (v == 0.0) return "0";  // never render the sign of a negative zero
  return fmt("%.12g", v);
}
std::string format_exact(double v) { return fmt("%.17g", v); }

sim::ExperimentPlan parse_plan_json(const std::string& text) {
  const json j = parse_json_text(text);
  require_object(j, "plan");
  reject_unknown_keys(j, "plan",
                      {"source", "stages", "n_particles", "seed"});

  sim::ExperimentPlan plan;

  const json& source = require_key(j, "plan", "source");
  if (source.is_string()) {
    if (source.get<std::string>() != "unpolarized") {
      fail("plan.source: expected \"unpolarized\" or an amplitude object");
    }
  } else if (source.is_object()) {
    plan.source = parse_source_state(source, "plan.source");
  } else {
    fail("plan.source: expected \"unpolarized\" or an amplitude object");
  }

  const json& stages = require_key(j, "plan", "stages");
  if (!stages.is_array() || stages.empty()) {
    fail("plan.stages: must be a non-empty array of stages");
  }
  for (std::size_t i = 0; i < stages.size(); ++i) {
    const std::string path = "plan.stages[" + std::to_string(i) + "]";
    require_object(stages[i], path);
    reject_unknown_keys(stages[i], path, {"theta", "phi", "port"});
    plan.stages.push_back(sim::SGStage{parse_direction(stages[i], path),
                                       parse_port(stages[i], path)});
  }

  plan.n_particles = get_u64(j, "plan", "n_particles");
  if (plan.n_particles < 1) fail("plan.n_particles: must be at least 1");
  plan.seed = get_u64(j, "plan", "seed");
  return plan;
}

sim::ExperimentPlan load_plan_file(const std::string& path) {
  return parse_plan_json(read_file(path));
}

TableSpec parse_table_spec_json(const std::string& text) {
  const json j = parse_json_text(text);
  require_object(j, "plans");
  reject_unknown_keys(j, "plans",
                      {"preparations", "mode", "n_particles", "seed"});

  TableSpec spec;
  const json& mode = require_key(j, "plans", "mode");
  if (!mode.is_string() ||
      (mode.get<std::string>() != "analytic" &&
       mode.get<std::string>() != "sampled")) {
    fail("plans.mode: expected \"analytic\" or \"sampled\"");
  }
  spec.sampled = mode.get<std::string>() == "sampled";
  if (spec.sampled) {
    spec.n_particles = get_u64(j, "plans", "n_particles");
    if (spec.n_particles < 1) fail("plans.n_particles: must be at least 1");
    spec.seed = get_u64(j, "plans", "seed");
  } else if (j.contains("n_particles") || j.contains("seed")) {
    fail("plans: n_particles/seed only apply to mode \"sampled\"");
  }

  const json& preps = require_key(j, "plans", "preparations");
  if (!preps.is_array() || preps.size() < 2) {
    fail("plans.preparations: need at least two preparations");
  }
  for (std::size_t i = 0; i < preps.size(); ++i) {
    const std::string path = "plans.preparations[" + std::to_string(i) + "]";
    require_object(preps[i], path);
    reject_unknown_keys(preps[i], path, {"theta", "phi", "port"});
    spec.preparations.push_back(witness::Preparation{
        parse_direction(preps[i], path), parse_port(preps[i], path)});
  }
  return spec;
}

TableSpec load_table_spec_file(const std::string& path) {
  return parse_table_spec_json(read_file(path));
}

std::string chain_csv_text(const sim::CountRecord& record) {
  std::ostringstream out;
  out << "stage_index,transmitted,outcome_plus,outcome_minus\n";
  for (std::size_t i = 0; i < record.per_stage_transmitted.size(); ++i) {
    out << i + 1 << ',' << record.per_stage_transmitted[i] << ','
        << record.outcome_plus[i] << ',' << record.outcome_minus[i] << '\n';
  }
  return out.str();
}

std::string sweep_csv_text(const std::vector<sim::SweepPoint>& rows) {
  std::ostringstream out;
  out << "angle_rad,analytic_p,estimate_p,ci_low,ci_high,n\n";
  for (const sim::SweepPoint& r : rows) {
    out << format_sig12(r.angle) << ',' << format_sig12(r.analytic_p) << ','
        << format_sig12(r.estimate.p_hat) << ','
        << format_sig12(r.estimate.ci_low) << ','
        << format_sig12(r.estimate.ci_high) << ',' << r.estimate.n << '\n';
  }
  return out.str();
}

std::string table_csv_text(const witness::ProbabilityTable& table) {
  std::ostringstream out;
  if (table.kind() == witness::WitnessKind::U) {
    out << "prep,outcome,probability\n";
    for (int x = 1; x <= table.n_preps(); ++x) {
      for (int b = 1; b <= table.n_preps(); ++b) {
        out << x << ',' << b << ',' << format_exact(table.u_prob(x, b))
            << '\n';
      }
    }
  } else {
    out << "prep,pair_hi,pair_lo,outcome,probability\n";
    for (int x = 1; x <= table.n_preps(); ++x) {
      for (int hi = 2; hi <= table.n_preps(); ++hi) {
        for (int lo = 1; lo < hi; ++lo) {
          out << x << ',' << hi << ',' << lo << ",+1,"
              << format_exact(table.w_prob_plus(x, hi, lo)) << '\n';
          out << x << ',' << hi << ',' << lo << ",-1,"
              << format_exact(table.w_prob_minus(x, hi, lo)) << '\n';
        }
      }
    }
  }
  return out.str();
}

witness::ProbabilityTable parse_table_csv(const std::string& text,
                                          witness::WitnessKind kind,
                                          int n_preps, double sum_tolerance) {
  if (n_preps < 2) fail("n_preps must be at least 2");
  std::istringstream in(text);
  std::string line;
  int line_no = 0;

  const std::string u_header = "prep,outcome,probability";
  const std::string w_header = "prep,pair_hi,pair_lo,outcome,probability";
  const std::string& expected_header =
      kind == witness::WitnessKind::U ? u_header : w_header;
  if (!std::getline(in, line) || line != expected_header) {
    fail("line 1: expected header '" + expected_header + "'");
  }
  ++line_no;

  const int n_pairs = n_preps * (n_preps - 1) / 2;
  std::vector<std::vector<double>> u_rows(
      n_preps, std::vector<double>(n_preps, -1.0));
  std::vector<std::vector<double>> w_plus(
      n_preps, std::vector<double>(n_pairs, -1.0));
  std::vector<std::vector<double>> w_minus(
      n_preps, std::vector<double>(n_pairs, -1.0));

  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto fields = split_csv_line(line);
    if (kind == witness::WitnessKind::U) {
      if (fields.size() != 3) {
        fail("line " + std::to_string(line_no) + ": expected 3 fields");
      }
      const int prep = parse_index_field(fields[0], line_no, "prep");
      const int outcome = parse_index_field(fields[1], line_no, "outcome");
      if (prep > n_preps || outcome > n_preps) {
        fail("line " + std::to_string(line_no) + ": index out of range");
      }
      double& cell = u_rows[prep - 1][outcome - 1];
      if (cell >= 0.0) {
        fail("line " + std::to_string(line_no) + ": duplicate cell");
      }
      cell = parse_probability_field(fields[2], line_no);
    } else {
      if (fields.size() != 5) {
        fail("line " + std::to_string(line_no) + ": expected 5 fields");
      }
      const int prep = parse_index_field(fields[0], line_no, "prep");
      const int hi = parse_index_field(fields[1], line_no, "pair_hi");
      const int lo = parse_index_field(fields[2], line_no, "pair_lo");
      if (prep > n_preps || hi > n_preps || lo >= hi) {
        fail("line " + std::to_string(line_no) +
             ": pair indices must satisfy hi > lo within range");
      }
      const int k = witness::ProbabilityTable::pair_index(hi, lo);
      double* cell = nullptr;
      if (fields[3] == "+1") {
        cell = &w_plus[prep - 1][k];
      } else if (fields[3] == "-1") {
        cell = &w_minus[prep - 1][k];
      } else {
        fail("line " + std::to_string(line_no) +
             ": outcome must be +1 or -1");
      }
      if (*cell >= 0.0) {
        fail("line " + std::to_string(line_no) + ": duplicate cell");
      }
      *cell = parse_probability_field(fields[4], line_no);
    }
  }

  // every cell must be present exactly once
  auto check_complete = [](const std::vector<std::vector<double>>& rows,
                           const char* what) {
    for (const auto& row : rows) {
      for (double v : row) {
        if (v < 0.0) fail(std::string("table is missing ") + what);
      }
    }
  };

  try {
    if (kind == witness::WitnessKind::U) {
      check_complete(u_rows, "prep/outcome entries");
      return witness::ProbabilityTable::u_scenario(std::move(u_rows),
                                                   sum_tolerance);
    }
    check_complete(w_plus, "+1 pair entries");
    check_complete(w_minus, "-1 pair entries");
    return witness::ProbabilityTable::w_scenario(
        n_preps, std::move(w_plus), std::move(w_minus), sum_tolerance);
  } catch (const std::invalid_argument& e) {
    fail(e.what());
  }
}

witness::ProbabilityTable load_table_csv(const std::string& path,
                                         witness::WitnessKind kind,
                                         int n_preps, double sum_tolerance) {
  return parse_table_csv(read_file(path), kind, n_preps, sum_tolerance);
}

std::string report_json_text(const witness::WitnessReport& report) {
  std::ostringstream out;
  out << "{\n";
  out << "  \"witness_kind\": \""
      << (report.kind == witness::WitnessKind::U ? "U" : "W") << "\",\n";
  out << "  \"n_preps\": " << report.n_preps << ",\n";
  out << "  \"witness_value\": " << format_exact(report.witness_value)
      << ",\n";
  out << "  \"tolerance\": " << format_sig12(report.tolerance) << ",\n";
  out << "  \"bounds\": [\n";
  for (std::size_t i = 0; i < report.bound_per_d.size(); ++i) {
    out << "    {\"d\": " << i + 1
        << ", \"bound\": " << format_exact(report.bound_per_d[i]) << "}"
        << (i + 1 < report.bound_per_d.size() ? "," : "") << "\n";
  }
  out << "  ],\n";
  if (report.inferred_min_d) {
    out << "  \"inferred_min_d\": " << *report.inferred_min_d << ",\n";
  } else {
    out << "  \"inferred_min_d\": \"unbounded\",\n";
  }
  const auto tight = witness::solve_dimension_tight(report.n_preps);
  if (tight) {
    out << "  \"tight_dimension\": " << *tight << "\n";
  } else {
    out << "  \"tight_dimension\": null\n";
  }
  out << "}\n";
  return out.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << contents;
  out.flush();
  if (!out) throw IoError("failed while writing '" + path + "'");
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read input file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace sglab::cli

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

#ifndef SGLAB_PLAN_IO_HPP_
#define SGLAB_PLAN_IO_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "sglab/dimension_witness.hpp"
#include "sglab/sg_simulator.hpp"

namespace sglab::cli {

// Bit-stable file formats.  Plans come in as JSON (schema committed at
// docs/plan.schema.json; unknown keys are errors).  Results go out as CSV
// with 12-significant-digit decimals, or, for witness tables, with exact
// 17-digit round-trip decimals so re-reading a table reproduces the witness
// bit for bit.  All files are UTF-8 with LF line endings.

/// Input could not be parsed or violates its schema -> exit code 2.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The filesystem failed us -> exit code 3.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// %.12g rendering used by the results CSVs.
std::string format_sig12(double v);
/// %.17g rendering; parses back to the identical double.
std::string format_exact(double v);

sim::ExperimentPlan parse_plan_json(const std::string& text);
sim::ExperimentPlan load_plan_file(const std::string& path);

/// Generation recipe for witness tables built from preparations
/// (the --from-plans input).
struct TableSpec {
  std::vector<witness::Preparation> preparations;
  bool sampled = false;
  std::uint64_t n_particles = 0;  // sampled mode only
  std::uint64_t seed = 0;         // sampled mode only
};

TableSpec parse_table_spec_json(const std::string& text);
TableSpec load_table_spec_file(const std::string& path);

/// Chain schema: stage_index,transmitted,outcome_plus,outcome_minus
/// (stage_index is 1-based).
std::string chain_csv_text(const sim::CountRecord& record);

/// Sweep schema: angle_rad,analytic_p,estimate_p,ci_low,ci_high,n.
std::string sweep_csv_text(const std::vector<sim::SweepPoint>& rows);

/// Witness table schemas (probabilities rendered with format_exact):
///   U: prep,outcome,probability          (outcomes 1..N)
///   W: prep,pair_hi,pair_lo,outcome,probability   (outcome +1 / -1)
std::string table_csv_text(const witness::ProbabilityTable& table);
witness::ProbabilityTable parse_table_csv(const std::string& text,
                                          witness::WitnessKind kind,
                                          int n_preps, double sum_tolerance);
witness::ProbabilityTable load_table_csv(const std::string& path,
                                         witness::WitnessKind kind,
                                         int n_preps, double sum_tolerance);

std::string report_json_text(const witness::WitnessReport& report);

/// Writes bytes exactly as given (binary mode, no newline translation).
void write_file(const std::string& path, const std::string& contents);
std::string read_file(const std::string& path);

}  // namespace sglab::cli

#endif  // SGLAB_PLAN_IO_HPP_

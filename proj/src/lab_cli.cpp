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

#include "sglab/lab_cli.hpp"

#include <array>
#include <cmath>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "sglab/dimension_witness.hpp"
#include "sglab/hopf_geometry.hpp"
#include "sglab/plan_io.hpp"
#include "sglab/sg_simulator.hpp"

namespace sglab::cli {

namespace {

// Inputs may carry up to 1e-6 of normalization error (think hand-typed
// decimals); anything worse is rejected, anything beyond round-off is
// renormalized with a warning so silent typos cannot skew results.
double checked_norm(double norm2, const char* what, std::ostream& err) {
  const double norm = std::sqrt(norm2);
  if (!(std::abs(norm - 1.0) <= 1e-6)) {
    throw ValidationError(std::string(what) +
                          " must be normalized within 1e-6, got norm " +
                          format_sig12(norm));
  }
  if (std::abs(norm - 1.0) > 1e-12) {
    err << "warning: " << what << " renormalized (norm was "
        << format_sig12(norm) << ")\n";
  }
  return norm;
}

hopf::SpinorPair parse_spinor(const std::array<double, 4>& v,
                              std::ostream& err) {
  const double norm = checked_norm(
      v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3], "spinor", err);
  return hopf::SpinorPair(Complex(v[0] / norm, v[1] / norm),
                          Complex(v[2] / norm, v[3] / norm));
}

hopf::SpherePoint parse_sphere_point(const std::array<double, 3>& v,
                                     std::ostream& err) {
  const double norm = checked_norm(
      v[0] * v[0] + v[1] * v[1] + v[2] * v[2], "sphere point", err);
  return hopf::SpherePoint(v[0] / norm, v[1] / norm, v[2] / norm);
}

std::string sphere_json(const hopf::SpherePoint& p) {
  return "{\n  \"x1\": " + format_sig12(p.x1()) +
         ",\n  \"x2\": " + format_sig12(p.x2()) +
         ",\n  \"x3\": " + format_sig12(p.x3()) + "\n}\n";
}

std::string plane_json(hopf::PlanePoint z) {
  return "{\n  \"re\": " + format_sig12(z.real()) +
         ",\n  \"im\": " + format_sig12(z.imag()) + "\n}\n";
}

std::string fiber_json(const std::vector<hopf::SpinorPair>& pairs) {
  std::string out = "{\n  \"pairs\": [\n";
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    out += "    {\"a_re\": " + format_sig12(pairs[i].a().real()) +
           ", \"a_im\": " + format_sig12(pairs[i].a().imag()) +
           ", \"b_re\": " + format_sig12(pairs[i].b().real()) +
           ", \"b_im\": " + format_sig12(pairs[i].b().imag()) + "}";
    out += (i + 1 < pairs.size()) ? ",\n" : "\n";
  }
  out += "  ]\n}\n";
  return out;
}

struct WitnessArgs {
  std::string table_path;
  std::string plans_path;
  std::string kind = "W";
  int n_preps = 0;
  double tolerance = 1e-9;
  std::string out_path;
  std::string dump_table_path;
};

void run_witness(const WitnessArgs& a, std::ostream& err) {
  if (a.table_path.empty() == a.plans_path.empty()) {
    throw ValidationError(
        "witness requires exactly one of --table or --from-plans");
  }
  if (a.n_preps < 2) {
    throw ValidationError("--n-preps must be at least 2");
  }
  if (a.tolerance < 0.0) {
    throw ValidationError("--tolerance must be non-negative");
  }
  const witness::WitnessKind kind =
      a.kind == "U" ? witness::WitnessKind::U : witness::WitnessKind::W;

  witness::ProbabilityTable table = [&]() {
    if (!a.table_path.empty()) {
      return load_table_csv(a.table_path, kind, a.n_preps, 1e-6);
    }
    const TableSpec spec = load_table_spec_file(a.plans_path);
    if (static_cast<int>(spec.preparations.size()) != a.n_preps) {
      throw ValidationError("--n-preps does not match the " +
                            std::to_string(spec.preparations.size()) +
                            " preparations in " + a.plans_path);
    }
    if (kind == witness::WitnessKind::U) {
      return spec.sampled ? witness::sampled_u_table(spec.preparations,
                                                     spec.n_particles,
                                                     spec.seed)
                          : witness::analytic_u_table(spec.preparations);
    }
    return spec.sampled ? witness::sampled_w_table(spec.preparations,
                                                   spec.n_particles,
                                                   spec.seed)
                        : witness::analytic_w_table(spec.preparations);
  }();

  const witness::WitnessReport report = witness::analyze(table, a.tolerance);
  write_file(a.out_path, report_json_text(report));
  if (!a.dump_table_path.empty()) {
    write_file(a.dump_table_path, table_csv_text(table));
  }
  (void)err;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out,
        std::ostream& err) {
  CLI::App app{"sg-lab: prepare-and-measure laboratory for chained "
               "ideal spin-splitting devices"};
  app.require_subcommand(1);

  // simulate
  std::string plan_path, sim_out;
  CLI::App* simulate = app.add_subcommand(
      "simulate", "Run a chain plan and write the per-stage counts CSV");
  simulate->add_option("--plan", plan_path, "plan JSON file")->required();
  simulate->add_option("--out", sim_out, "output CSV path")->required();

  // sweep
  double prep_theta = 0.0, prep_phi = 0.0, start = 0.0, end = 0.0;
  int steps = 0;
  std::uint64_t particles = 0, sweep_seed = 0;
  std::string sweep_out;
  CLI::App* sweep = app.add_subcommand(
      "sweep",
      "Estimate the two-device law over a grid of separation angles");
  sweep->add_option("--prep-theta", prep_theta, "preparation theta (rad)")
      ->required();
  sweep->add_option("--prep-phi", prep_phi, "preparation phi (rad)")
      ->required();
  sweep->add_option("--start", start, "first angle (rad)")->required();
  sweep->add_option("--end", end, "last angle (rad)")->required();
  sweep->add_option("--steps", steps, "number of grid points")->required();
  sweep->add_option("--particles", particles, "particles per point")
      ->required();
  sweep->add_option("--seed", sweep_seed, "base RNG seed")->required();
  sweep->add_option("--out", sweep_out, "output CSV path")->required();

  // witness
  WitnessArgs wargs;
  CLI::App* witness_cmd = app.add_subcommand(
      "witness", "Evaluate a dimension witness over a probability table");
  witness_cmd->add_option("--table", wargs.table_path,
                          "probability table CSV");
  witness_cmd->add_option("--from-plans", wargs.plans_path,
                          "preparation list JSON to generate the table");
  witness_cmd->add_option("--kind", wargs.kind, "witness kind")
      ->required()
      ->check(CLI::IsMember({"U", "W"}));
  witness_cmd->add_option("--n-preps", wargs.n_preps, "number of buttons")
      ->required();
  witness_cmd->add_option("--tolerance", wargs.tolerance,
                          "bound comparison tolerance");
  witness_cmd->add_option("--out", wargs.out_path, "report JSON path")
      ->required();
  witness_cmd->add_option("--dump-table", wargs.dump_table_path,
                          "also write the table CSV here");

  // hopf
  CLI::App* hopf_cmd = app.add_subcommand(
      "hopf", "State-space geometry: projections and fibers");
  hopf_cmd->require_subcommand(1);

  std::array<double, 4> spinor{};
  std::string chart = "direct";
  CLI::App* project = hopf_cmd->add_subcommand(
      "project", "Project a spinor pair (a, b) onto the sphere");
  project->add_option("a_re", spinor[0], "Re a")->required();
  project->add_option("a_im", spinor[1], "Im a")->required();
  project->add_option("b_re", spinor[2], "Re b")->required();
  project->add_option("b_im", spinor[3], "Im b")->required();
  project->add_option("--chart", chart, "direct formula or the h chart")
      ->check(CLI::IsMember({"direct", "h"}));

  std::array<double, 3> sphere{};
  CLI::App* stereo = hopf_cmd->add_subcommand(
      "stereo", "Equatorial stereographic projection of a sphere point");
  stereo->add_option("x1", sphere[0], "x1")->required();
  stereo->add_option("x2", sphere[1], "x2")->required();
  stereo->add_option("x3", sphere[2], "x3")->required();

  std::array<double, 3> fiber_target{};
  int n_phases = 1;
  CLI::App* fiber = hopf_cmd->add_subcommand(
      "fiber", "Sample the circle of indistinguishable states over a point");
  fiber->add_option("x1", fiber_target[0], "x1")->required();
  fiber->add_option("x2", fiber_target[1], "x2")->required();
  fiber->add_option("x3", fiber_target[2], "x3")->required();
  fiber->add_option("--n", n_phases, "number of phases")
      ->check(CLI::Range(1, 1000000));

  std::vector<const char*> argv;
  argv.push_back("sg-lab");
  for (const std::string& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (simulate->parsed()) {
      const sim::ExperimentPlan plan = load_plan_file(plan_path);
      write_file(sim_out, chain_csv_text(sim::simulate_chain(plan)));
    } else if (sweep->parsed()) {
      if (steps < 2) throw ValidationError("--steps must be at least 2");
      if (!(start < end)) {
        throw ValidationError("--start must be smaller than --end");
      }
      if (particles < 1) {
        throw ValidationError("--particles must be at least 1");
      }
      const Direction prep(prep_theta, prep_phi);
      std::vector<double> angles;
      angles.reserve(steps);
      for (int i = 0; i < steps; ++i) {
        angles.push_back(start + (end - start) * i / (steps - 1));
      }
      const auto rows = sim::sweep_angle(prep, Port::plus, Port::plus,
                                         angles, particles, sweep_seed);
      write_file(sweep_out, sweep_csv_text(rows));
    } else if (witness_cmd->parsed()) {
      run_witness(wargs, err);
    } else if (project->parsed()) {
      const hopf::SpinorPair p = parse_spinor(spinor, err);
      const hopf::SpherePoint s =
          chart == "h" ? hopf::stereographic_inverse(hopf::h_map(p))
                       : hopf::hopf_projection(p);
      out << sphere_json(s);
    } else if (stereo->parsed()) {
      out << plane_json(hopf::stereographic(parse_sphere_point(sphere, err)));
    } else if (fiber->parsed()) {
      if (n_phases < 1) throw ValidationError("--n must be at least 1");
      out << fiber_json(
          hopf::fiber_sample(parse_sphere_point(fiber_target, err),
                             n_phases));
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << "\n";
    return kExitIo;
  } catch (const ValidationError& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::domain_error& e) {
    err << "error: " << e.what() << "\n";
    return kExitValidation;
  }
  return kExitOk;
}

}  // namespace sglab::cli

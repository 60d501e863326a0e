// Copyright 2026 The ZECS Toolkit Authors
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

// zecs: simulate shadow records, reconstruct subsystem reports, route chains,
// scan for non-local correlations and run the perturbation study.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "zecs/commands.hpp"

namespace {

using namespace zecs;

/// "19,20;2,3" -> {(19,20), (2,3)}
std::vector<QubitPair> parse_pairs(const std::string& text) {
  std::vector<QubitPair> out;
  std::stringstream all(text);
  std::string item;
  while (std::getline(all, item, ';')) {
    if (item.empty()) continue;
    const auto comma = item.find(',');
    if (comma == std::string::npos) throw Error(ErrorCode::BadConfig, "pair '" + item + "' needs the form a,b");
    try {
      out.emplace_back(std::stoi(item.substr(0, comma)), std::stoi(item.substr(comma + 1)));
    } catch (const std::logic_error&) {
      throw Error(ErrorCode::BadConfig, "pair '" + item + "' is not numeric");
    }
  }
  return out;
}

void emit(const std::string& text, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << text;
  } else {
    io::write_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Classical-shadow reconstruction, zero-entropy projection and device diagnostics"};
  app.set_config("--config", "", "Read options from a TOML/INI file");
  app.require_subcommand(1);

  RunConfig cfg;
  std::string out_path, records_path, layout_path, subsystems_path, report_path;
  std::string endianness = "q0-leftmost", entropy_norm = "per-kind";
  std::string targets, candidates;
  std::vector<double> sigmas{0.05, 0.1, 0.15, 0.2, 0.25, 0.3, 0.35, 0.4, 0.45, 0.5};
  std::size_t trials = 1000;

  auto* simulate = app.add_subcommand("simulate", "Sample snapshot records from a circuit specification");
  simulate->add_option("--circuit", cfg.circuit_path, "Circuit specification (JSON)")->required();
  simulate->add_option("--snapshots", cfg.n_snapshots, "Number of snapshot records");
  simulate->add_option("--seed", cfg.seed, "Random seed");
  simulate->add_option("--endianness", endianness, "Bit order written to the file")
      ->check(CLI::IsMember({"q0-leftmost", "q0-rightmost"}));
  simulate->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* reconstruct = app.add_subcommand("reconstruct", "Build a diagnostic report from snapshot records");
  reconstruct->add_option("--records", records_path, "Snapshot records (JSON lines)")->required();
  reconstruct->add_option("--circuit", cfg.circuit_path, "Circuit specification providing reference states")
      ->required();
  reconstruct->add_option("--subsystems", subsystems_path, "Subsystem list (JSON)")->required();
  reconstruct->add_option("--endianness", endianness, "Bit order of records without a header")
      ->check(CLI::IsMember({"q0-leftmost", "q0-rightmost"}));
  reconstruct->add_option("--entropy-norm", entropy_norm, "Entropy normalization")
      ->check(CLI::IsMember({"per-kind", "global"}));
  reconstruct->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* route = app.add_subcommand("route", "Select the best qubit chain from a report");
  route->add_option("--report", report_path, "Diagnostic report (JSON)")->required();
  route->add_option("--layout", layout_path, "Device layout (JSON)")->required();
  route->add_option("--length", cfg.length, "Chain length");
  route->add_option("--weight", cfg.weight, "Entropy weight");
  route->add_option("--entropy-norm", entropy_norm, "Entropy normalization")
      ->check(CLI::IsMember({"per-kind", "global"}));
  route->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* nonlocal = app.add_subcommand("nonlocal", "Scan uncoupled pairs for correlations with target pairs");
  nonlocal->add_option("--records", records_path, "Snapshot records (JSON lines)")->required();
  nonlocal->add_option("--layout", layout_path, "Device layout (JSON)")->required();
  nonlocal->add_option("--targets", targets, "Target pairs, e.g. \"19,20;40,41\"")->required();
  nonlocal->add_option("--candidates", candidates, "Candidate pairs (default: every edge clear of the targets)");
  nonlocal->add_option("--endianness", endianness, "Bit order of records without a header")
      ->check(CLI::IsMember({"q0-leftmost", "q0-rightmost"}));
  nonlocal->add_option("-o,--output", out_path, "Output file (default stdout)");

  auto* perturb = app.add_subcommand("perturb-study", "Perturbed Bell states: raw versus projected");
  perturb->add_option("--sigmas", sigmas, "Perturbation strengths")->delimiter(',');
  perturb->add_option("--trials", trials, "Trials per sigma");
  perturb->add_option("--seed", cfg.seed, "Random seed");
  perturb->add_option("-o,--output", out_path, "Output file (default stdout)");

  CLI11_PARSE(app, argc, argv);

  try {
    cfg.entropy_norm = entropy_norm_from_string(entropy_norm);
    cfg.validate();
    const auto order = io::endianness_from_string(endianness);
    if (simulate->parsed()) {
      const auto device = io::parse_circuit_spec(io::read_file(cfg.circuit_path), cfg.circuit_path);
      emit(io::write_snapshots(cmd_simulate(device, cfg.n_snapshots, cfg.seed, order)), out_path);
    } else if (reconstruct->parsed()) {
      const auto device = io::parse_circuit_spec(io::read_file(cfg.circuit_path), cfg.circuit_path);
      const auto snaps = io::parse_snapshots(io::read_file(records_path), order, records_path);
      cfg.subsystems = io::subsystems_from_json(io::parse_json(io::read_file(subsystems_path), subsystems_path),
                                                subsystems_path);
      emit(io::write_report(cmd_reconstruct(snaps, cfg.subsystems, device, cfg.entropy_norm, records_path)),
           out_path);
    } else if (route->parsed()) {
      const auto report = io::parse_report(io::read_file(report_path), report_path);
      const auto layout = io::parse_layout(io::read_file(layout_path), layout_path);
      const auto chain = cmd_route(report, layout, cfg.length, cfg.weight, cfg.entropy_norm);
      emit(io::canonical(io::to_json(chain)), out_path);
    } else if (nonlocal->parsed()) {
      const auto snaps = io::parse_snapshots(io::read_file(records_path), order, records_path);
      const auto layout = io::parse_layout(io::read_file(layout_path), layout_path);
      const auto hits = cmd_nonlocal(snaps, layout, parse_pairs(targets), parse_pairs(candidates));
      emit(io::canonical(io::to_json(std::span<const NonlocalHit>(hits))), out_path);
    } else if (perturb->parsed()) {
      const auto points = cmd_perturb_study(sigmas, trials, cfg.seed);
      emit(io::canonical(io::to_json(std::span<const PerturbationPoint>(points))), out_path);
    }
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 0;
}

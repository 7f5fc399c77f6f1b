#pragma once

#include <json.hpp>

#include <cstdint>
#include <string>
#include <vector>

#include "supertask/construct.hpp"
#include "supertask/convergence.hpp"
#include "supertask/rational.hpp"
#include "supertask/simulate.hpp"
#include "supertask/target_set.hpp"

namespace supertask {

// Diagnostics defaults for experiment runs: trailing tenth of the trace,
// tolerance 1/100.
inline const Rat kDefaultWindowFraction = Rat(1, 10);
inline const Rat kDefaultTolerance = Rat(1, 100);

// One named end-to-end run: construct a chain steered to `goal`, verify the
// exact identities at truncation `n`, sample, and diagnose convergence.
//
// JSON form:
//   {"format_version":1, "name":"evens-third",
//    "target":{"kind":"residue","mod":2,"res":0}, "p":"1/3",
//    "steps":10000, "mode":"paper", "n":8,
//    "trials":100000, "seed":1000003,
//    "outputs":{"chain":"chain.json","trace":"trace.csv","report":"report.json"}}
struct ExperimentManifest {
  static constexpr int kFormatVersion = 1;

  std::string name = "experiment";
  TargetSet target = TargetSet::residue(2, 0);
  Rat goal = Rat(1, 2);
  std::size_t steps = 10000;
  SteeringMode mode = SteeringMode::Covering;
  Level n = 8;
  std::uint64_t trials = 100000;
  std::uint64_t seed = kDefaultSeed;
  std::string chain_path = "chain.json";
  std::string trace_path = "trace.csv";
  std::string report_path = "report.json";
};

ExperimentManifest manifest_from_json(const nlohmann::json& doc);
nlohmann::json manifest_to_json(const ExperimentManifest& manifest);

struct ExperimentResult {
  nlohmann::json report;
  bool exact_ok = false;        // enumeration identities held exactly
  bool statistical_ok = false;  // sampled and diagnostic checks within bounds
  bool ok() const { return exact_ok && statistical_ok; }
};

// Runs the manifest and writes chain/trace/report files. Finite and cofinite
// targets skip construction (their final-ball density is forced to 0 or 1)
// and produce the bound sections instead; every report section is always
// present, carrying a "skipped" marker when it does not apply.
ExperimentResult run_experiment(const ExperimentManifest& manifest);

// For every residue class r mod m and every requested goal p, steers a chain
// so the class's final-ball density converges to p. Converging to any
// p != 1/m exhibits a run of the process under which the classes are not
// equiprobable.
ExperimentResult residue_demo(std::uint64_t modulus, const std::vector<Rat>& goals,
                              std::size_t steps);

}  // namespace supertask

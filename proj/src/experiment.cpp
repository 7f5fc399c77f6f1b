#include "supertask/experiment.hpp"

#include <algorithm>
#include <cmath>

#include "supertask/enumerate.hpp"
#include "supertask/json_io.hpp"

namespace supertask {

using nlohmann::json;

namespace {

json exact_value(const Rat& value) {
  json doc;
  doc["value"] = rat_string(value);
  doc["decimal"] = rat_double(value);
  doc["provenance"] = "exact";
  return doc;
}

json sampled_value(double value) {
  json doc;
  doc["value"] = value;
  doc["provenance"] = "sampled";
  return doc;
}

json skipped(const std::string& reason) {
  json doc;
  doc["skipped"] = reason;
  return doc;
}

ChainPrefix identity_chain(Level n) {
  std::vector<Ball> added(n);
  for (Level i = 0; i < n; ++i) added[i] = i + 1;
  return ChainPrefix(std::move(added));
}

std::vector<Level> decade_points(Level max_n) {
  std::vector<Level> points;
  for (Level p = 1; p <= max_n; p *= 10) points.push_back(p);
  if (points.empty() || points.back() != max_n) points.push_back(max_n);
  return points;
}

json bound_section(const ChainPrefix& chain, const std::vector<Ball>& finite_side, bool complement) {
  const FiniteBoundSweep sweep =
      finite_bound_sweep(chain, finite_side, complement, decade_points(chain.size()));
  json doc;
  doc["finite_side"] = finite_side;
  doc["max_n"] = static_cast<std::uint64_t>(sweep.max_n);
  doc["all_within"] = sweep.all_within;
  json samples = json::array();
  for (const FiniteBoundReport& row : sweep.samples) {
    json r = report_to_json(row);
    r["provenance"] = "exact";
    samples.push_back(std::move(r));
  }
  doc["samples"] = std::move(samples);
  return doc;
}

}  // namespace

ExperimentManifest manifest_from_json(const json& doc) {
  if (!doc.is_object()) throw std::invalid_argument("manifest must be an object");
  if (!doc.contains("format_version") || !doc["format_version"].is_number_integer() ||
      doc["format_version"].get<int>() != ExperimentManifest::kFormatVersion)
    throw std::invalid_argument("manifest format_version must be " +
                                std::to_string(ExperimentManifest::kFormatVersion));
  if (!doc.contains("target")) throw std::invalid_argument("manifest needs a target");

  ExperimentManifest m;
  m.target = target_from_json(doc["target"]);
  if (doc.contains("name")) m.name = doc["name"].get<std::string>();
  if (doc.contains("p")) m.goal = parse_rat(doc["p"].get<std::string>());
  if (doc.contains("steps")) m.steps = doc["steps"].get<std::size_t>();
  if (doc.contains("mode")) {
    const std::string mode = doc["mode"].get<std::string>();
    if (mode == "paper")
      m.mode = SteeringMode::Covering;
    else if (mode == "greedy")
      m.mode = SteeringMode::Greedy;
    else
      throw std::invalid_argument("mode must be 'paper' or 'greedy'");
  }
  if (doc.contains("n")) m.n = doc["n"].get<Level>();
  if (doc.contains("trials")) m.trials = doc["trials"].get<std::uint64_t>();
  if (doc.contains("seed")) m.seed = doc["seed"].get<std::uint64_t>();
  if (doc.contains("outputs")) {
    const json& outputs = doc["outputs"];
    if (outputs.contains("chain")) m.chain_path = outputs["chain"].get<std::string>();
    if (outputs.contains("trace")) m.trace_path = outputs["trace"].get<std::string>();
    if (outputs.contains("report")) m.report_path = outputs["report"].get<std::string>();
  }
  return m;
}

json manifest_to_json(const ExperimentManifest& m) {
  json doc;
  doc["format_version"] = ExperimentManifest::kFormatVersion;
  doc["name"] = m.name;
  doc["target"] = target_to_json(m.target);
  doc["p"] = rat_string(m.goal);
  doc["steps"] = static_cast<std::uint64_t>(m.steps);
  doc["mode"] = m.mode == SteeringMode::Covering ? "paper" : "greedy";
  doc["n"] = static_cast<std::uint64_t>(m.n);
  doc["trials"] = m.trials;
  doc["seed"] = m.seed;
  doc["outputs"]["chain"] = m.chain_path;
  doc["outputs"]["trace"] = m.trace_path;
  doc["outputs"]["report"] = m.report_path;
  return doc;
}

ExperimentResult run_experiment(const ExperimentManifest& manifest) {
  ExperimentResult result;
  json& report = result.report;
  report["name"] = manifest.name;
  report["format_version"] = ExperimentManifest::kFormatVersion;
  report["inputs"] = manifest_to_json(manifest);

  const TargetSet::Classification cls = manifest.target.classification();

  if (cls == TargetSet::Classification::InfiniteCoinfinite) {
    const ConstructionConfig config{manifest.target, manifest.goal, manifest.steps, manifest.mode};
    const ChainPrefix chain = construct_chain(config);
    const std::vector<std::uint64_t> counts = target_prefix_counts(chain, manifest.target);
    const std::vector<Rat> trace = density_trace(chain, manifest.target);

    save_json_file(manifest.chain_path, chain_to_json(chain));
    write_trace_csv(manifest.trace_path, counts);

    json construction;
    construction["chain_length"] = static_cast<std::uint64_t>(chain.size());
    construction["chain_file"] = manifest.chain_path;
    construction["trace_file"] = manifest.trace_path;
    construction["mode"] = manifest.mode == SteeringMode::Covering ? "paper" : "greedy";
    report["construction"] = std::move(construction);

    json tail = json::array();
    const std::size_t tail_begin = trace.size() > 10 ? trace.size() - 10 : 0;
    for (std::size_t i = tail_begin; i < trace.size(); ++i) {
      json row;
      row["k"] = static_cast<std::uint64_t>(i + 1);
      row["density"] = rat_string(trace[i]);
      row["decimal"] = rat_double(trace[i]);
      row["provenance"] = "exact";
      tail.push_back(std::move(row));
    }
    report["trace_tail"] = std::move(tail);

    // Exact section: enumerate the truncated process and check it against
    // the counting identities that make the trace meaningful.
    const Level n = std::min<Level>(std::min<Level>(manifest.n, effective_cap()), chain.size());
    const EventSpec final_in_target = EventSpec::at_level(1, events::final_in(manifest.target));
    const DensityReport exact = density(chain, final_in_target, n);
    const Rat bridge = rat_from_uint(counts[n - 1], n);
    const bool bridge_ok = exact.value == bridge;

    bool uniform_ok = true;
    for (Level i = 1; i <= n; ++i) {
      const Rat share =
          density(chain, EventSpec::at_level(1, events::final_is(chain.added_at(i))), n).value;
      if (share != rat_from_uint(1, n)) uniform_ok = false;
    }

    json exact_section;
    exact_section["n"] = static_cast<std::uint64_t>(n);
    exact_section["final_in_target"] = exact_value(exact.value);
    exact_section["chain_share"] = exact_value(bridge);
    exact_section["bridge_ok"] = bridge_ok;
    exact_section["uniform_final_ball_ok"] = uniform_ok;
    report["exact"] = std::move(exact_section);
    result.exact_ok = bridge_ok && uniform_ok;

    // Sampled section at the same truncation.
    SimulationConfig sim_config{chain.prefix(n), manifest.trials, manifest.seed, manifest.target};
    const SimulationReport sim = simulate(sim_config);
    const double p_exact = rat_double(exact.value);
    const double freq = sim.target_frequency();
    const double bound = 4.0 * std::sqrt(p_exact * (1.0 - p_exact) / static_cast<double>(manifest.trials));
    const double deviation = std::abs(freq - p_exact);
    const bool mc_ok = deviation <= bound;

    json mc;
    mc["n"] = static_cast<std::uint64_t>(n);
    mc["trials"] = manifest.trials;
    mc["seed"] = manifest.seed;
    mc["frequency"] = sampled_value(freq);
    mc["exact"] = rat_string(exact.value);
    mc["deviation"] = sampled_value(deviation);
    mc["bound"] = sampled_value(bound);
    mc["ok"] = mc_ok;
    report["monte_carlo"] = std::move(mc);

    // Convergence of the trace towards the goal.
    const SequenceDiagnostics diag =
        diagnose(trace, kDefaultWindowFraction, kDefaultTolerance, manifest.name);
    Rat gap = diag.value - manifest.goal;
    if (gap < 0) gap = -gap;
    const bool diag_ok = diag.verdict == ConvergenceVerdict::Converged && gap <= kDefaultTolerance;
    json diag_doc = report_to_json(diag);
    diag_doc["goal"] = rat_string(manifest.goal);
    diag_doc["within_tolerance_of_goal"] = diag_ok;
    diag_doc["provenance"] = "diagnostic";
    report["diagnostics"] = std::move(diag_doc);

    result.statistical_ok = mc_ok && diag_ok;
    report["finite_bound"] = skipped("target and complement are both infinite");
    report["cofinite_bound"] = skipped("target and complement are both infinite");
  } else {
    const bool finite = cls == TargetSet::Classification::Finite;
    const std::string reason =
        std::string("construction refused: a ") + (finite ? "finite" : "cofinite") +
        " target already forces final-ball density " + (finite ? "0" : "1") +
        "; steering is only meaningful when the target and its complement are both infinite";
    report["construction"] = skipped(reason);
    report["trace_tail"] = skipped(reason);
    report["exact"] = skipped(reason);
    report["monte_carlo"] = skipped(reason);
    report["diagnostics"] = skipped(reason);

    const std::vector<Ball> side = manifest.target.finite_side();
    Level sweep_len = std::max<Level>(manifest.steps, 1000);
    for (Ball b : side) sweep_len = std::max<Level>(sweep_len, b);
    const ChainPrefix chain = identity_chain(sweep_len);

    if (finite) {
      json section = bound_section(chain, side, /*complement=*/false);
      result.exact_ok = section["all_within"].get<bool>();
      report["finite_bound"] = std::move(section);
      report["cofinite_bound"] = skipped("target is finite, not cofinite");
    } else {
      json section = bound_section(chain, side, /*complement=*/true);
      result.exact_ok = section["all_within"].get<bool>();
      report["cofinite_bound"] = std::move(section);
      report["finite_bound"] = skipped("target is cofinite, not finite");
    }
    result.statistical_ok = true;
  }

  save_json_file(manifest.report_path, report);
  return result;
}

ExperimentResult residue_demo(std::uint64_t modulus, const std::vector<Rat>& goals,
                              std::size_t steps) {
  if (modulus < 2) throw std::invalid_argument("residue demo needs modulus >= 2");
  if (goals.empty()) throw std::invalid_argument("residue demo needs at least one goal");

  ExperimentResult result;
  result.exact_ok = true;
  bool all_ok = true;
  std::uint64_t violations = 0;

  const Rat uniform_share = rat_from_uint(1, modulus);
  json rows = json::array();
  for (std::uint64_t r = 0; r < modulus; ++r) {
    const TargetSet cls = TargetSet::residue(modulus, r);
    for (const Rat& goal : goals) {
      const ConstructionConfig config{cls, goal, steps, SteeringMode::Covering};
      const ChainPrefix chain = construct_chain(config);
      const std::vector<Rat> trace = density_trace(chain, cls);
      const SequenceDiagnostics diag = diagnose(trace, kDefaultWindowFraction, kDefaultTolerance,
                                                "residue " + std::to_string(r));
      Rat gap = diag.value - goal;
      if (gap < 0) gap = -gap;
      const bool ok = diag.verdict == ConvergenceVerdict::Converged && gap <= kDefaultTolerance;
      if (!ok) all_ok = false;
      if (ok && goal != uniform_share) ++violations;

      json row;
      row["residue"] = r;
      row["goal"] = rat_string(goal);
      row["verdict"] = verdict_name(diag.verdict);
      row["value"] = rat_string(diag.value);
      row["decimal"] = rat_double(diag.value);
      row["ok"] = ok;
      row["provenance"] = "diagnostic";
      rows.push_back(std::move(row));
    }
  }

  result.report["type"] = "residue_demo";
  result.report["modulus"] = modulus;
  result.report["steps"] = static_cast<std::uint64_t>(steps);
  result.report["uniform_share"] = rat_string(uniform_share);
  result.report["rows"] = std::move(rows);
  result.report["uniformity_violations"] = violations;
  result.statistical_ok = all_ok;
  return result;
}

}  // namespace supertask

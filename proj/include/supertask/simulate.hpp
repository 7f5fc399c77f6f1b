#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "supertask/chain.hpp"
#include "supertask/rational.hpp"
#include "supertask/target_set.hpp"

namespace supertask {

// Documented runs use this seed unless overridden.
inline constexpr std::uint64_t kDefaultSeed = 1000003;

struct SimulationConfig {
  ChainPrefix chain;
  std::uint64_t trials = 1;
  std::uint64_t seed = kDefaultSeed;
  std::optional<TargetSet> target;  // enables the final-in-target statistic
};

struct SimulationReport {
  Level n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<Ball> balls;                   // sorted level-n urn
  std::vector<std::uint64_t> final_counts;   // parallel to balls
  std::optional<std::uint64_t> in_target;    // trials whose final ball is in the target

  double frequency(std::size_t index) const {
    return static_cast<double>(final_counts[index]) / static_cast<double>(trials);
  }
  double target_frequency() const {
    return static_cast<double>(*in_target) / static_cast<double>(trials);
  }
};

// Plays the truncated process `trials` times: one uniformly random removal
// per level, from level n-1 down to the final ball. Each trial owns an
// independent (seed, trial-index) stream, so the report depends only on the
// config, not on the worker count or schedule.
SimulationReport simulate(const SimulationConfig& config, unsigned workers = 1);

struct CrosscheckLine {
  Ball ball = 0;
  Rat exact;               // enumeration density of "final ball is this one"
  double empirical = 0;
  double deviation = 0;
  double bound = 0;        // four binomial standard deviations
  bool ok = false;
};

struct CrosscheckReport {
  Level n = 0;
  std::uint64_t trials = 0;
  std::uint64_t seed = 0;
  std::vector<CrosscheckLine> per_ball;
  double max_deviation = 0;
  bool pass = false;
};

// Monte Carlo against the exact enumeration oracle, ball by ball.
CrosscheckReport crosscheck(const ChainPrefix& chain, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers = 1);

}  // namespace supertask

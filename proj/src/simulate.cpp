#include "supertask/simulate.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "supertask/enumerate.hpp"
#include "supertask/rng.hpp"

namespace supertask {

namespace {

struct TallyBlock {
  std::vector<std::uint64_t> final_counts;
  std::uint64_t in_target = 0;
};

// Runs trials [first, last), counting final balls by index in the sorted urn.
void run_trials(const std::vector<Ball>& balls, std::uint64_t seed, std::uint64_t first,
                std::uint64_t last, const TargetSet* target, TallyBlock& block) {
  const std::size_t n = balls.size();
  block.final_counts.assign(n, 0);
  std::vector<Ball> urn;
  for (std::uint64_t trial = first; trial < last; ++trial) {
    TrialRng rng(seed, trial);
    urn = balls;
    for (std::size_t remaining = n; remaining > 1; --remaining) {
      const std::uint64_t pick = rng.below(remaining);
      urn[pick] = urn[remaining - 1];  // swap-remove
      urn.pop_back();
    }
    const Ball final_ball = urn.front();
    const auto it = std::lower_bound(balls.begin(), balls.end(), final_ball);
    ++block.final_counts[static_cast<std::size_t>(it - balls.begin())];
    if (target != nullptr && target->member(final_ball)) ++block.in_target;
  }
}

}  // namespace

SimulationReport simulate(const SimulationConfig& config, unsigned workers) {
  if (config.trials < 1) throw std::invalid_argument("at least one trial is required");
  const Level n = config.chain.size();
  const std::vector<Ball> balls = config.chain.level_set(n);
  const TargetSet* target = config.target ? &*config.target : nullptr;

  const unsigned used = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), config.trials));
  std::vector<TallyBlock> blocks(used);

  auto run_block = [&](unsigned w) {
    const std::uint64_t first = config.trials * w / used;
    const std::uint64_t last = config.trials * (w + 1) / used;
    run_trials(balls, config.seed, first, last, target, blocks[w]);
  };

  if (used == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) pool.emplace_back(run_block, w);
    for (std::thread& t : pool) t.join();
  }

  SimulationReport report;
  report.n = n;
  report.trials = config.trials;
  report.seed = config.seed;
  report.balls = balls;
  report.final_counts.assign(n, 0);
  if (target != nullptr) report.in_target = 0;
  for (const TallyBlock& block : blocks) {
    for (std::size_t i = 0; i < n; ++i) report.final_counts[i] += block.final_counts[i];
    if (target != nullptr) *report.in_target += block.in_target;
  }
  return report;
}

CrosscheckReport crosscheck(const ChainPrefix& chain, std::uint64_t trials, std::uint64_t seed,
                            unsigned workers) {
  const Level n = chain.size();
  if (n > effective_cap())
    throw CapacityError("crosscheck needs exact densities; chain length " + std::to_string(n) +
                        " exceeds the enumeration cap of " + std::to_string(effective_cap()));

  SimulationConfig config{chain, trials, seed, std::nullopt};
  const SimulationReport sim = simulate(config, workers);

  CrosscheckReport report;
  report.n = n;
  report.trials = trials;
  report.seed = seed;
  report.pass = true;

  for (std::size_t i = 0; i < sim.balls.size(); ++i) {
    CrosscheckLine line;
    line.ball = sim.balls[i];
    line.exact =
        density(chain, EventSpec::at_level(1, events::final_is(line.ball)), n, workers).value;
    line.empirical = sim.frequency(i);
    const double p = rat_double(line.exact);
    line.deviation = std::abs(line.empirical - p);
    line.bound = 4.0 * std::sqrt(p * (1.0 - p) / static_cast<double>(trials));
    line.ok = line.deviation <= line.bound;
    if (!line.ok) report.pass = false;
    report.max_deviation = std::max(report.max_deviation, line.deviation);
    report.per_ball.push_back(std::move(line));
  }
  return report;
}

}  // namespace supertask

#pragma once

#include <cstdint>
#include <vector>

#include "supertask/chain.hpp"
#include "supertask/rational.hpp"
#include "supertask/target_set.hpp"

namespace supertask {

enum class SteeringMode {
  // Balance the running density against the goal, except that step j*j
  // always takes the least unused target element and step j*j+1 the least
  // unused complement element. The exception steps are what guarantee that
  // every ball is eventually added.
  Covering,
  // Pure density balancing, no exception steps.
  Greedy,
};

struct ConstructionConfig {
  TargetSet target;
  Rat goal;                  // density to steer towards, in [0, 1]
  std::size_t steps = 1;
  SteeringMode mode = SteeringMode::Covering;
};

// Builds (z_1, ..., z_{steps+1}) with z_1 = 1. Step k adds either the least
// target element or the least complement element not yet in the chain,
// depending on whether |Z_k cap A| / k is <= the goal (ties take the target
// side). Requires a target whose classification is infinite/co-infinite;
// throws std::domain_error otherwise, since a finite or cofinite side would
// eventually run out of fresh elements.
ChainPrefix construct_chain(const ConstructionConfig& config);

// |Z_k cap A| for k = 1..n, as one pass over the chain.
std::vector<std::uint64_t> target_prefix_counts(const ChainPrefix& chain, const TargetSet& target);

// (|Z_k cap A| / k) for k = 1..n, exact.
std::vector<Rat> density_trace(const ChainPrefix& chain, const TargetSet& target);

}  // namespace supertask

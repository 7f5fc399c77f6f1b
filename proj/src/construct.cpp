#include "supertask/construct.hpp"

#include <cmath>
#include <stdexcept>
#include <unordered_set>

namespace supertask {

namespace {

bool is_square(std::uint64_t k) {
  if (k == 0) return false;
  std::uint64_t r = static_cast<std::uint64_t>(std::sqrt(static_cast<double>(k)));
  while (r * r > k) --r;
  while ((r + 1) * (r + 1) <= k) ++r;
  return r * r == k;
}

// Least element of the target side (or complement side) not yet in the
// chain. Both cursors only ever move right: the chain only grows.
class LeastUnusedCursor {
 public:
  LeastUnusedCursor(const TargetSet& target, bool complement_side, const std::unordered_set<Ball>& used)
      : target_(&target), complement_(complement_side), used_(&used) {
    advance();
  }

  Ball current() const { return at_; }

  void advance() {
    while (at_ == 0 || used_->contains(at_) || target_->member(at_) == complement_) ++at_;
  }

 private:
  const TargetSet* target_;
  bool complement_;
  const std::unordered_set<Ball>* used_;
  Ball at_ = 0;
};

}  // namespace

ChainPrefix construct_chain(const ConstructionConfig& config) {
  if (config.goal < 0 || config.goal > 1)
    throw std::invalid_argument("density goal must lie in [0, 1]");
  if (config.steps < 1) throw std::invalid_argument("at least one step is required");
  if (config.target.classification() != TargetSet::Classification::InfiniteCoinfinite)
    throw std::domain_error(
        "chain construction needs a target whose set and complement are both infinite "
        "(a finite side already forces final-ball density 0, a cofinite side forces 1): " +
        config.target.describe());

  std::vector<Ball> added;
  added.reserve(config.steps + 1);
  added.push_back(1);

  std::unordered_set<Ball> used;
  used.reserve(config.steps * 2);
  used.insert(1);

  LeastUnusedCursor target_cursor(config.target, /*complement_side=*/false, used);
  LeastUnusedCursor complement_cursor(config.target, /*complement_side=*/true, used);

  std::uint64_t in_target = config.target.member(1) ? 1 : 0;

  for (std::uint64_t k = 1; k <= config.steps; ++k) {
    bool take_target;
    if (config.mode == SteeringMode::Covering && is_square(k)) {
      take_target = true;
    } else if (config.mode == SteeringMode::Covering && k >= 2 && is_square(k - 1)) {
      take_target = false;
    } else {
      take_target = rat_from_uint(in_target, k) <= config.goal;
    }

    const Ball next = take_target ? target_cursor.current() : complement_cursor.current();
    added.push_back(next);
    used.insert(next);
    if (take_target) ++in_target;
    target_cursor.advance();
    complement_cursor.advance();
  }

  return ChainPrefix(std::move(added));
}

std::vector<std::uint64_t> target_prefix_counts(const ChainPrefix& chain, const TargetSet& target) {
  std::vector<std::uint64_t> counts;
  counts.reserve(chain.size());
  std::uint64_t running = 0;
  for (Ball b : chain.added()) {
    if (target.member(b)) ++running;
    counts.push_back(running);
  }
  return counts;
}

std::vector<Rat> density_trace(const ChainPrefix& chain, const TargetSet& target) {
  const std::vector<std::uint64_t> counts = target_prefix_counts(chain, target);
  std::vector<Rat> trace;
  trace.reserve(counts.size());
  for (std::size_t k = 1; k <= counts.size(); ++k)
    trace.push_back(rat_from_uint(counts[k - 1], k));
  return trace;
}

}  // namespace supertask

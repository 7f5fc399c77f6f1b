#include "supertask/removal_order.hpp"

#include <algorithm>
#include <stdexcept>

namespace supertask {

RemovalOrder::RemovalOrder(std::shared_ptr<const ChainPrefix> base, std::vector<Ball> removed)
    : base_(std::move(base)), removed_(std::move(removed)) {
  if (!base_) throw std::invalid_argument("removal order needs a base chain");
  const Level n = base_->size();
  if (removed_.size() + 1 != n)
    throw std::invalid_argument("a length-n chain takes exactly n-1 removals");

  // Replay the removals to validate membership and find the survivor.
  std::vector<Ball> urn = base_->level_set(n);
  for (Ball b : removed_) {
    auto it = std::find(urn.begin(), urn.end(), b);
    if (it == urn.end()) throw std::domain_error("removal of a ball that is not in the urn");
    urn.erase(it);
  }
  final_ = urn.front();
}

RemovalOrder::RemovalOrder(const ChainPrefix& base, std::vector<Ball> removed)
    : RemovalOrder(std::make_shared<const ChainPrefix>(base), std::move(removed)) {}

Ball RemovalOrder::removed_into_level(Level k) const {
  const Level n = base_->size();
  if (k < 1 || k >= n) throw std::out_of_range("no removal produced that level");
  return removed_[n - 1 - k];
}

std::vector<Ball> RemovalOrder::urn_at(Level k) const {
  const Level n = base_->size();
  if (k < 1 || k > n) throw std::out_of_range("urn level out of range");
  std::vector<Ball> urn = base_->level_set(n);
  for (Level i = 0; i + k < n; ++i)
    urn.erase(std::find(urn.begin(), urn.end(), removed_[i]));
  return urn;
}

}  // namespace supertask

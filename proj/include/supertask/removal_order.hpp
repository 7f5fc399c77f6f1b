#pragma once

#include <memory>
#include <vector>

#include "supertask/chain.hpp"

namespace supertask {

// One fully resolved outcome of the truncated process over a length-n chain:
// the n-1 removals that shrink the level-n urn down to a single ball.
//
// Removals are stored in the order they happen, i.e. removed()[0] leaves the
// level n-1 urn and removed()[n-2] leaves the final ball.
class RemovalOrder {
 public:
  RemovalOrder(std::shared_ptr<const ChainPrefix> base, std::vector<Ball> removed);
  RemovalOrder(const ChainPrefix& base, std::vector<Ball> removed);

  const ChainPrefix& base() const { return *base_; }
  const std::vector<Ball>& removed() const { return removed_; }

  // The ball whose removal produced the level-k urn (1 <= k <= n-1).
  Ball removed_into_level(Level k) const;

  Ball final_ball() const { return final_; }

  // Urn contents after the removal into level k; level n is the full urn.
  // Sorted ascending. Throws std::out_of_range for k outside [1, n].
  std::vector<Ball> urn_at(Level k) const;

  bool operator==(const RemovalOrder& other) const {
    return *base_ == *other.base_ && removed_ == other.removed_;
  }

 private:
  std::shared_ptr<const ChainPrefix> base_;
  std::vector<Ball> removed_;  // size n-1
  Ball final_ = 0;
};

}  // namespace supertask

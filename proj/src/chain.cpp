#include "supertask/chain.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

namespace supertask {

ChainPrefix::ChainPrefix(std::vector<Ball> added) : added_(std::move(added)) {
  if (added_.empty()) throw std::invalid_argument("chain must contain at least one ball");
  std::unordered_set<Ball> seen;
  seen.reserve(added_.size() * 2);
  for (Ball b : added_) {
    if (b == 0) throw std::invalid_argument("balls are numbered from 1");
    if (!seen.insert(b).second) throw std::invalid_argument("chain adds a ball twice");
  }
}

Ball ChainPrefix::added_at(Level k) const {
  if (k < 1 || k > added_.size()) throw std::out_of_range("chain level out of range");
  return added_[k - 1];
}

std::vector<Ball> ChainPrefix::level_set(Level k) const {
  if (k < 1 || k > added_.size()) throw std::out_of_range("chain level out of range");
  std::vector<Ball> balls(added_.begin(), added_.begin() + static_cast<std::ptrdiff_t>(k));
  std::sort(balls.begin(), balls.end());
  return balls;
}

bool ChainPrefix::level_contains(Level k, Ball ball) const {
  if (k < 1 || k > added_.size()) throw std::out_of_range("chain level out of range");
  const auto end = added_.begin() + static_cast<std::ptrdiff_t>(k);
  return std::find(added_.begin(), end, ball) != end;
}

ChainPrefix ChainPrefix::prefix(Level k) const {
  if (k < 1 || k > added_.size()) throw std::out_of_range("chain level out of range");
  return ChainPrefix(std::vector<Ball>(added_.begin(), added_.begin() + static_cast<std::ptrdiff_t>(k)));
}

}  // namespace supertask

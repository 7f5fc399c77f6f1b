#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

namespace supertask {

using Ball = std::uint64_t;
using Level = std::size_t;

// Finite prefix of a nested urn chain. Only the sequence of added balls is
// stored; the level-k urn is the set of the first k entries, so nesting and
// |Z_k| = k hold by construction.
class ChainPrefix {
 public:
  // added = (z_1, ..., z_n): distinct balls, all >= 1, n >= 1.
  explicit ChainPrefix(std::vector<Ball> added);

  Level size() const { return added_.size(); }
  std::span<const Ball> added() const { return added_; }

  // z_k (1-based). Throws std::out_of_range.
  Ball added_at(Level k) const;

  // Z_k as a sorted vector.
  std::vector<Ball> level_set(Level k) const;

  bool level_contains(Level k, Ball ball) const;

  // The first k entries as a chain of their own.
  ChainPrefix prefix(Level k) const;

  bool operator==(const ChainPrefix&) const = default;

 private:
  std::vector<Ball> added_;
};

}  // namespace supertask

#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "supertask/chain.hpp"

namespace supertask {

// Membership oracle for a set of balls A. The representable kinds are chosen
// so that whether A and its complement are infinite can be read off the
// representation instead of being trusted.
class TargetSet {
 public:
  enum class Kind { ResidueClass, PeriodicWord };

  enum class Classification {
    InfiniteCoinfinite,  // both A and its complement are infinite
    Finite,              // A itself is finite (periodic word, all-zero block)
    Cofinite,            // the complement is finite (all-one block)
  };

  // Balls congruent to `residue` mod `modulus`; modulus >= 2. Always
  // infinite/co-infinite.
  static TargetSet residue(std::uint64_t modulus, std::uint64_t residue);

  // Bit strings over {'0','1'}: position i (1-based) decides ball i, first
  // from `prefix`, then from `block` repeated forever. block must be
  // nonempty.
  static TargetSet periodic(std::string prefix, std::string block);

  bool member(Ball ball) const;

  Kind kind() const { return kind_; }
  Classification classification() const;

  // Elements of the finite side (A when Finite, the complement when
  // Cofinite). Throws std::domain_error for infinite/co-infinite sets.
  std::vector<Ball> finite_side() const;

  std::string describe() const;

  std::uint64_t modulus() const { return modulus_; }
  std::uint64_t residue_value() const { return residue_; }
  const std::string& prefix_bits() const { return prefix_; }
  const std::string& block_bits() const { return block_; }

  bool operator==(const TargetSet&) const = default;

 private:
  TargetSet() = default;

  Kind kind_ = Kind::ResidueClass;
  std::uint64_t modulus_ = 2;
  std::uint64_t residue_ = 0;
  std::string prefix_;
  std::string block_;
};

}  // namespace supertask

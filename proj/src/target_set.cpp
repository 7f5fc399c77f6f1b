#include "supertask/target_set.hpp"

#include <stdexcept>

namespace supertask {

namespace {

void check_bits(const std::string& bits, const char* what) {
  for (char c : bits)
    if (c != '0' && c != '1')
      throw std::invalid_argument(std::string(what) + " must consist of '0' and '1'");
}

}  // namespace

TargetSet TargetSet::residue(std::uint64_t modulus, std::uint64_t residue) {
  if (modulus < 2) throw std::invalid_argument("residue class needs modulus >= 2");
  if (residue >= modulus) throw std::invalid_argument("residue must lie in [0, modulus)");
  TargetSet t;
  t.kind_ = Kind::ResidueClass;
  t.modulus_ = modulus;
  t.residue_ = residue;
  return t;
}

TargetSet TargetSet::periodic(std::string prefix, std::string block) {
  if (block.empty()) throw std::invalid_argument("periodic word needs a nonempty block");
  check_bits(prefix, "prefix");
  check_bits(block, "block");
  TargetSet t;
  t.kind_ = Kind::PeriodicWord;
  t.prefix_ = std::move(prefix);
  t.block_ = std::move(block);
  return t;
}

bool TargetSet::member(Ball ball) const {
  if (ball == 0) throw std::domain_error("balls are numbered from 1");
  if (kind_ == Kind::ResidueClass) return ball % modulus_ == residue_;
  if (ball <= prefix_.size()) return prefix_[ball - 1] == '1';
  const std::uint64_t offset = (ball - prefix_.size() - 1) % block_.size();
  return block_[offset] == '1';
}

TargetSet::Classification TargetSet::classification() const {
  if (kind_ == Kind::ResidueClass) return Classification::InfiniteCoinfinite;
  bool any_one = false, any_zero = false;
  for (char c : block_) (c == '1' ? any_one : any_zero) = true;
  if (any_one && any_zero) return Classification::InfiniteCoinfinite;
  return any_one ? Classification::Cofinite : Classification::Finite;
}

std::vector<Ball> TargetSet::finite_side() const {
  const Classification c = classification();
  if (c == Classification::InfiniteCoinfinite)
    throw std::domain_error("set and complement are both infinite; no finite side");
  const char wanted = c == Classification::Finite ? '1' : '0';
  std::vector<Ball> balls;
  for (std::size_t i = 0; i < prefix_.size(); ++i)
    if (prefix_[i] == wanted) balls.push_back(static_cast<Ball>(i + 1));
  return balls;
}

std::string TargetSet::describe() const {
  if (kind_ == Kind::ResidueClass)
    return "residue " + std::to_string(residue_) + " mod " + std::to_string(modulus_);
  return "periodic word prefix='" + prefix_ + "' block='" + block_ + "'";
}

}  // namespace supertask

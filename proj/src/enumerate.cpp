#include "supertask/enumerate.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cassert>
#include <cstdlib>
#include <memory>
#include <thread>

namespace supertask {

namespace {

constexpr std::uint64_t kFactorial[] = {1,       1,       2,       6,        24,
                                        120,     720,     5040,    40320,    362880,
                                        3628800, 39916800};

using Mask = std::uint32_t;
using MaskArray = std::array<Mask, kEnumerationCap + 1>;

// Event predicate specialized against a fixed chain and truncation level:
// atoms above the truncation are folded to constants (all orders agree
// there), the rest become bit tests against the per-level urn masks.
struct CompiledNode {
  enum class Op : std::uint8_t { True, False, And, Or, Not, ContainsBit, UrnEquals, FinalIn };

  Op op = Op::True;
  Level level = 0;
  Mask mask = 0;
  std::vector<CompiledNode> children;
};

bool eval_compiled(const CompiledNode& node, const MaskArray& masks) {
  switch (node.op) {
    case CompiledNode::Op::True:
      return true;
    case CompiledNode::Op::False:
      return false;
    case CompiledNode::Op::And:
      for (const CompiledNode& c : node.children)
        if (!eval_compiled(c, masks)) return false;
      return true;
    case CompiledNode::Op::Or:
      for (const CompiledNode& c : node.children)
        if (eval_compiled(c, masks)) return true;
      return false;
    case CompiledNode::Op::Not:
      return !eval_compiled(node.children.front(), masks);
    case CompiledNode::Op::ContainsBit:
      return (masks[node.level] & node.mask) != 0;
    case CompiledNode::Op::UrnEquals:
      return masks[node.level] == node.mask;
    case CompiledNode::Op::FinalIn:
      return (masks[1] & node.mask) != 0;
  }
  return false;
}

CompiledNode make_node(CompiledNode::Op op, Level level = 0, Mask mask = 0) {
  CompiledNode node;
  node.op = op;
  node.level = level;
  node.mask = mask;
  return node;
}

CompiledNode constant(bool value) {
  return make_node(value ? CompiledNode::Op::True : CompiledNode::Op::False);
}

bool is_const(const CompiledNode& n, bool value) {
  return n.op == (value ? CompiledNode::Op::True : CompiledNode::Op::False);
}

// bit index of `ball` within the sorted level-n urn, or -1
int bit_of(const std::vector<Ball>& sorted_balls, Ball ball) {
  auto it = std::lower_bound(sorted_balls.begin(), sorted_balls.end(), ball);
  if (it == sorted_balls.end() || *it != ball) return -1;
  return static_cast<int>(it - sorted_balls.begin());
}

CompiledNode compile_node(const EventNode& node, const ChainPrefix& chain, Level n,
                          const std::vector<Ball>& sorted_balls) {
  switch (node.kind) {
    case EventNode::Kind::And: {
      CompiledNode out = make_node(CompiledNode::Op::And);
      for (const EventNode& child : node.children) {
        CompiledNode c = compile_node(child, chain, n, sorted_balls);
        if (is_const(c, false)) return constant(false);
        if (!is_const(c, true)) out.children.push_back(std::move(c));
      }
      if (out.children.empty()) return constant(true);
      return out;
    }
    case EventNode::Kind::Or: {
      CompiledNode out = make_node(CompiledNode::Op::Or);
      for (const EventNode& child : node.children) {
        CompiledNode c = compile_node(child, chain, n, sorted_balls);
        if (is_const(c, true)) return constant(true);
        if (!is_const(c, false)) out.children.push_back(std::move(c));
      }
      if (out.children.empty()) return constant(false);
      return out;
    }
    case EventNode::Kind::Not: {
      CompiledNode c = compile_node(node.children.front(), chain, n, sorted_balls);
      if (is_const(c, true)) return constant(false);
      if (is_const(c, false)) return constant(true);
      CompiledNode out = make_node(CompiledNode::Op::Not);
      out.children.push_back(std::move(c));
      return out;
    }
    case EventNode::Kind::Contains: {
      if (node.level > n) return constant(chain.level_contains(node.level, node.ball));
      const int bit = bit_of(sorted_balls, node.ball);
      if (bit < 0) return constant(false);
      return make_node(CompiledNode::Op::ContainsBit, node.level, Mask{1} << bit);
    }
    case EventNode::Kind::Equals: {
      if (node.level > n) return constant(chain.level_set(node.level) == node.elements);
      Mask mask = 0;
      for (Ball b : node.elements) {
        const int bit = bit_of(sorted_balls, b);
        if (bit < 0) return constant(false);
        mask |= Mask{1} << bit;
      }
      return make_node(CompiledNode::Op::UrnEquals, node.level, mask);
    }
    case EventNode::Kind::FinalIs: {
      const int bit = bit_of(sorted_balls, node.ball);
      if (bit < 0) return constant(false);
      return make_node(CompiledNode::Op::UrnEquals, 1, Mask{1} << bit);
    }
    case EventNode::Kind::FinalInTarget: {
      Mask mask = 0;
      for (std::size_t i = 0; i < sorted_balls.size(); ++i)
        if (node.target->member(sorted_balls[i])) mask |= Mask{1} << i;
      if (mask == 0) return constant(false);
      return make_node(CompiledNode::Op::FinalIn, 1, mask);
    }
  }
  return constant(false);
}

// Counts event hits among the orders whose lexicographic rank lies in
// [lo, hi). Recursion peels one removal per level; the subtree under a
// removal choice covers a contiguous rank block of size (level-1)!.
void count_range(MaskArray& masks, const CompiledNode& pred, Level level, std::uint64_t base,
                 std::uint64_t lo, std::uint64_t hi, std::uint64_t& hits) {
  if (level == 1) {
    if (eval_compiled(pred, masks)) ++hits;
    return;
  }
  const std::uint64_t step = kFactorial[level - 1];
  Mask rest = masks[level];
  std::uint64_t child_lo = base;
  while (rest != 0) {
    const Mask bit = rest & (~rest + 1);
    rest &= rest - 1;
    if (child_lo >= hi) break;
    if (child_lo + step > lo) {
      masks[level - 1] = masks[level] & ~bit;
      count_range(masks, pred, level - 1, child_lo, lo, hi, hits);
    }
    child_lo += step;
  }
}

void check_levels(const ChainPrefix& chain, const EventSpec& event, Level n) {
  if (n < 1 || n > chain.size()) throw std::out_of_range("truncation level outside the chain");
  if (event.horizon() > chain.size())
    throw std::out_of_range("event horizon exceeds the chain length");
  if (n > effective_cap())
    throw CapacityError("truncation level " + std::to_string(n) + " exceeds the enumeration cap of " +
                        std::to_string(effective_cap()));
}

std::vector<Ball> unmask(const std::vector<Ball>& sorted_balls, Mask mask) {
  std::vector<Ball> out;
  out.reserve(static_cast<std::size_t>(std::popcount(mask)));
  while (mask != 0) {
    const int bit = std::countr_zero(mask);
    out.push_back(sorted_balls[static_cast<std::size_t>(bit)]);
    mask &= mask - 1;
  }
  return out;
}

std::string set_string(const std::vector<Ball>& balls) {
  std::string s = "{";
  for (std::size_t i = 0; i < balls.size(); ++i) {
    if (i > 0) s += ",";
    s += std::to_string(balls[i]);
  }
  return s + "}";
}

// Counts leaves and event hits over the whole subtree below `level`.
void count_all(MaskArray& masks, const CompiledNode& pred, Level level, std::uint64_t& total,
               std::uint64_t& hits) {
  if (level == 1) {
    ++total;
    if (eval_compiled(pred, masks)) ++hits;
    return;
  }
  Mask rest = masks[level];
  while (rest != 0) {
    const Mask bit = rest & (~rest + 1);
    rest &= rest - 1;
    masks[level - 1] = masks[level] & ~bit;
    count_all(masks, pred, level - 1, total, hits);
  }
}

constexpr std::uint64_t kMaxHistoryLines = 10000;

struct HistoryWalk {
  const ChainPrefix* chain = nullptr;
  const EventSpec* event = nullptr;
  const CompiledNode* pred = nullptr;
  const std::vector<Ball>* sorted_balls = nullptr;
  Level k = 0;
  Level n = 0;
  ConstraintCheck* out = nullptr;

  void visit(MaskArray& masks, Level level) {
    if (level == k + 1) {
      handle_history(masks);
      return;
    }
    Mask rest = masks[level];
    while (rest != 0) {
      const Mask bit = rest & (~rest + 1);
      rest &= rest - 1;
      masks[level - 1] = masks[level] & ~bit;
      visit(masks, level - 1);
    }
  }

  void handle_history(MaskArray& masks) {
    // Route 1: walk every completion of this history, evaluating the event
    // on full outcomes.
    std::uint64_t total = 0, in_event = 0;
    count_all(masks, *pred, k + 1, total, in_event);
    assert(total == kFactorial[k + 1]);

    // Route 2: count the removals out of the level-(k+1) urn that land in
    // the event, directly from its definition.
    const std::vector<Ball> urn = unmask(*sorted_balls, masks[k + 1]);
    std::vector<std::vector<Ball>> context;
    for (Level l = k + 2; l <= event->horizon(); ++l)
      context.push_back(l <= n ? unmask(*sorted_balls, masks[l]) : chain->level_set(l));
    const std::uint64_t qualifying = qualifying_removals(*event, urn, context);

    const bool ok = (k + 1) * in_event == qualifying * total;

    ++out->histories_total;
    if (!ok) out->pass = false;
    if (!ok || out->per_history.size() < kMaxHistoryLines) {
      std::string id;
      for (Level l = k + 1; l <= n; ++l) {
        if (!id.empty()) id += "|";
        id += "B" + std::to_string(l) + "=" + set_string(unmask(*sorted_balls, masks[l]));
      }
      out->per_history.push_back(HistoryLine{std::move(id), total, qualifying, in_event, ok});
    } else {
      out->truncated = true;
    }
  }
};

}  // namespace

Level cap_from_env(const char* value) {
  if (value == nullptr || *value == '\0') return kEnumerationCap;
  char* end = nullptr;
  const unsigned long parsed = std::strtoul(value, &end, 10);
  if (end == value || *end != '\0') return kEnumerationCap;
  if (parsed < 1) return 1;
  return std::min<Level>(static_cast<Level>(parsed), kEnumerationCap);
}

Level effective_cap() { return cap_from_env(std::getenv("SUPERTASK_CAP")); }

void for_each_order(const ChainPrefix& chain, const std::function<void(const RemovalOrder&)>& fn) {
  const Level n = chain.size();
  if (n > effective_cap())
    throw CapacityError("chain length " + std::to_string(n) + " exceeds the enumeration cap of " +
                        std::to_string(effective_cap()));
  const auto base = std::make_shared<const ChainPrefix>(chain);
  std::vector<Ball> urn = chain.level_set(n);
  std::vector<Ball> removed;
  removed.reserve(n - 1);

  // Plain depth-first generation; removal candidates ascend by ball value,
  // which makes the order stream lexicographic in the removal sequence.
  auto descend = [&](auto&& self) -> void {
    if (removed.size() + 1 == n) {
      fn(RemovalOrder(base, removed));
      return;
    }
    for (std::size_t i = 0; i < urn.size(); ++i) {
      const Ball b = urn[i];
      urn.erase(urn.begin() + static_cast<std::ptrdiff_t>(i));
      removed.push_back(b);
      self(self);
      removed.pop_back();
      urn.insert(urn.begin() + static_cast<std::ptrdiff_t>(i), b);
    }
  };
  descend(descend);
}

std::vector<RemovalOrder> enumerate_orders(const ChainPrefix& chain) {
  std::vector<RemovalOrder> orders;
  if (chain.size() <= kEnumerationCap) orders.reserve(kFactorial[chain.size()]);
  for_each_order(chain, [&orders](const RemovalOrder& order) { orders.push_back(order); });
  return orders;
}

DensityReport density(const ChainPrefix& chain, const EventSpec& event, Level n, unsigned workers) {
  check_levels(chain, event, n);
  const std::vector<Ball> sorted_balls = chain.level_set(n);
  const CompiledNode pred = compile_node(event.pred(), chain, n, sorted_balls);
  const std::uint64_t total = kFactorial[n];
  const Mask full = (Mask{1} << n) - 1;

  const unsigned used = static_cast<unsigned>(
      std::min<std::uint64_t>(std::max(1u, workers), total));
  std::vector<std::uint64_t> partial(used, 0);

  auto run_block = [&](unsigned w) {
    const std::uint64_t lo = total * w / used;
    const std::uint64_t hi = total * (w + 1) / used;
    if (lo >= hi) return;
    MaskArray masks{};
    masks[n] = full;
    count_range(masks, pred, n, 0, lo, hi, partial[w]);
  };

  if (used == 1) {
    run_block(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(used);
    for (unsigned w = 0; w < used; ++w) pool.emplace_back(run_block, w);
    for (std::thread& t : pool) t.join();
  }

  std::uint64_t hits = 0;
  for (std::uint64_t p : partial) hits += p;

  return DensityReport{event, n, hits, total, rat_from_uint(hits, total)};
}

std::uint64_t qualifying_removals(const EventSpec& event, const std::vector<Ball>& urn,
                                  const std::vector<std::vector<Ball>>& context) {
  const Level k = event.level();
  if (urn.size() != k + 1)
    throw std::invalid_argument("the urn one level above a level-k event holds k+1 balls");
  if (event.horizon() > k + 1 && context.size() < event.horizon() - k - 1)
    throw std::out_of_range("context does not cover the event horizon");

  std::vector<Ball> sorted_urn = urn;
  std::sort(sorted_urn.begin(), sorted_urn.end());

  std::vector<std::vector<Ball>> sorted_context = context;
  for (std::size_t i = 0; i < sorted_context.size(); ++i) {
    if (sorted_context[i].size() != k + 2 + i)
      throw std::invalid_argument("context urn at level " + std::to_string(k + 2 + i) +
                                  " has the wrong cardinality");
    std::sort(sorted_context[i].begin(), sorted_context[i].end());
  }

  std::uint64_t count = 0;
  for (std::size_t i = 0; i < sorted_urn.size(); ++i) {
    std::vector<Ball> shrunk = sorted_urn;
    shrunk.erase(shrunk.begin() + static_cast<std::ptrdiff_t>(i));
    auto urn_of = [&](Level level) -> std::vector<Ball> {
      if (level == k) return shrunk;
      if (level == k + 1) return sorted_urn;
      if (level > k + 1 && level - k - 2 < sorted_context.size())
        return sorted_context[level - k - 2];
      throw std::out_of_range("event atom outside the provided context");
    };
    if (eval_event_with(event.pred(), urn_of)) ++count;
  }
  return count;
}

ConstraintCheck verify_constraint(const ChainPrefix& chain, const EventSpec& event, Level n) {
  const Level k = event.level();
  if (k + 1 > n) throw std::invalid_argument("need at least one level above the event");
  check_levels(chain, event, n);

  const std::vector<Ball> sorted_balls = chain.level_set(n);
  const CompiledNode pred = compile_node(event.pred(), chain, n, sorted_balls);

  ConstraintCheck check;
  check.k = k;
  check.n = n;
  check.event = event;
  check.pass = true;

  HistoryWalk walk{&chain, &event, &pred, &sorted_balls, k, n, &check};
  MaskArray masks{};
  masks[n] = (Mask{1} << n) - 1;
  walk.visit(masks, n);
  return check;
}

Rat survival_density(const ChainPrefix& chain, Ball ball, Level k, Level n) {
  if (n < 1 || n > chain.size()) throw std::out_of_range("truncation level outside the chain");
  if (!chain.level_contains(n, ball))
    throw std::domain_error("ball " + std::to_string(ball) + " is not in the level-" +
                            std::to_string(n) + " urn");
  if (k < 1 || k > n) throw std::out_of_range("survival level outside [1, n]");
  const EventSpec still_present = EventSpec::at_level(k, events::contains(k, ball));
  return density(chain, still_present, n).value;
}

FiniteBoundReport finite_set_bound(const ChainPrefix& chain, const std::vector<Ball>& finite_set,
                                   Level n, bool complement) {
  if (n < 1 || n > chain.size()) throw std::out_of_range("truncation level outside the chain");
  std::vector<Ball> sorted_set = finite_set;
  std::sort(sorted_set.begin(), sorted_set.end());
  sorted_set.erase(std::unique(sorted_set.begin(), sorted_set.end()), sorted_set.end());

  std::uint64_t in_chain = 0;
  for (Level k = 1; k <= n; ++k)
    if (std::binary_search(sorted_set.begin(), sorted_set.end(), chain.added_at(k))) ++in_chain;

  FiniteBoundReport report;
  report.n = n;
  report.in_chain = in_chain;
  if (!complement) {
    report.value = rat_from_uint(in_chain, n);
    report.bound = rat_from_uint(sorted_set.size(), n);
    report.within = report.value <= report.bound;
  } else {
    report.value = Rat(1) - rat_from_uint(in_chain, n);
    report.bound = Rat(1) - rat_from_uint(sorted_set.size(), n);
    report.within = report.value >= report.bound;
  }
  assert(report.within);
  return report;
}

FiniteBoundSweep finite_bound_sweep(const ChainPrefix& chain, const std::vector<Ball>& finite_set,
                                    bool complement, const std::vector<Level>& sample_points) {
  std::vector<Ball> sorted_set = finite_set;
  std::sort(sorted_set.begin(), sorted_set.end());
  sorted_set.erase(std::unique(sorted_set.begin(), sorted_set.end()), sorted_set.end());

  FiniteBoundSweep sweep;
  sweep.max_n = chain.size();
  sweep.all_within = true;

  std::uint64_t in_chain = 0;
  for (Level n = 1; n <= chain.size(); ++n) {
    if (std::binary_search(sorted_set.begin(), sorted_set.end(), chain.added_at(n))) ++in_chain;
    // Both bound directions reduce to |Z_n intersect set| <= |set|.
    if (in_chain > sorted_set.size()) sweep.all_within = false;
  }
  for (Level point : sample_points)
    if (point >= 1 && point <= chain.size())
      sweep.samples.push_back(finite_set_bound(chain, finite_set, point, complement));
  return sweep;
}

}  // namespace supertask

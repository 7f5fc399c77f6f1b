#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "supertask/chain.hpp"
#include "supertask/event.hpp"
#include "supertask/rational.hpp"
#include "supertask/removal_order.hpp"

namespace supertask {

// Exact brute-force engine over the n! removal orders that refine a fixed
// chain below level n. All counting is integral and all reported values are
// exact rationals; nothing in this module touches floating point.

// Hard ceiling on exhaustive enumeration: 10! = 3,628,800 outcomes.
inline constexpr Level kEnumerationCap = 10;

// The SUPERTASK_CAP environment variable may lower (never raise) the cap.
Level effective_cap();

// Parsing rule behind effective_cap(), exposed for tests: clamps to
// [1, kEnumerationCap], ignores unparseable values.
Level cap_from_env(const char* value);

class CapacityError : public std::length_error {
 public:
  using std::length_error::length_error;
};

struct DensityReport {
  EventSpec event;
  Level n = 0;
  std::uint64_t hits = 0;
  std::uint64_t total = 0;  // n!
  Rat value;                // hits / n! in lowest terms
};

struct HistoryLine {
  std::string id;                       // urn sets from level k+1 up to n
  std::uint64_t outcomes = 0;           // orders sharing this history
  std::uint64_t qualifying_removals = 0;  // balls whose removal lands in the event
  std::uint64_t in_event = 0;           // orders sharing the history that land in the event
  bool ok = false;  // (k+1) * in_event == qualifying_removals * outcomes
};

// Per-history uniformity check: grouping the n! orders by everything that
// happened down to level k+1, each of the k+1 possible removals is equally
// represented, so the share of orders landing in a level-k event must be
// exactly (qualifying removals)/(k+1). The two sides of each line are
// computed by independent routes: brute-force counting over complete orders
// versus direct removal counting on the history's urn.
struct ConstraintCheck {
  Level k = 0;
  Level n = 0;
  EventSpec event;
  std::vector<HistoryLine> per_history;
  std::uint64_t histories_total = 0;
  bool truncated = false;  // per_history capped; failing lines are always kept
  bool pass = false;
};

// Visits all n! orders of chain's full length in lexicographic removal
// order.
void for_each_order(const ChainPrefix& chain, const std::function<void(const RemovalOrder&)>& fn);

std::vector<RemovalOrder> enumerate_orders(const ChainPrefix& chain);

// Exact share of the n! orders satisfying the event. Atoms above level n are
// decided by the chain itself (every order agrees there). The rank space may
// be split across workers; the count is independent of the split.
DensityReport density(const ChainPrefix& chain, const EventSpec& event, Level n, unsigned workers = 1);

// Number of balls in `urn` (size level+1) whose removal satisfies the event.
// context[i] is the urn at level k+2+i, needed only when the event's horizon
// reaches past level k+1.
std::uint64_t qualifying_removals(const EventSpec& event, const std::vector<Ball>& urn,
                                  const std::vector<std::vector<Ball>>& context = {});

ConstraintCheck verify_constraint(const ChainPrefix& chain, const EventSpec& event, Level n);

// Exact share of orders in which `ball` is still present at level k.
Rat survival_density(const ChainPrefix& chain, Ball ball, Level k, Level n);

struct FiniteBoundReport {
  Level n = 0;
  std::uint64_t in_chain = 0;  // |Z_n intersect set|
  Rat value;                   // final-ball density of the set (or complement)
  Rat bound;                   // |set|/n, or 1 - |set|/n for complements
  bool within = false;
};

// Final-ball density of an explicit finite set (or of its complement), by
// the counting identity: the final ball is uniform over Z_n, so the density
// is |Z_n intersect set| / n. No enumeration, so n may be large.
FiniteBoundReport finite_set_bound(const ChainPrefix& chain, const std::vector<Ball>& finite_set,
                                   Level n, bool complement = false);

struct FiniteBoundSweep {
  Level max_n = 0;
  bool all_within = false;               // bound held at every n in [1, max_n]
  std::vector<FiniteBoundReport> samples;
};

// finite_set_bound at every n up to chain.size() in one pass, reporting the
// requested sample points.
FiniteBoundSweep finite_bound_sweep(const ChainPrefix& chain, const std::vector<Ball>& finite_set,
                                    bool complement, const std::vector<Level>& sample_points);

}  // namespace supertask

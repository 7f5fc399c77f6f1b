#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "supertask/chain.hpp"
#include "supertask/removal_order.hpp"
#include "supertask/target_set.hpp"

namespace supertask {

// Predicate tree over urn states. The atom set is deliberately closed (no
// user callbacks): that keeps events serializable and makes the per-urn
// removal count computable.
//
// Atoms:
//   Contains(level, ball)    "ball is in the level's urn"
//   Equals(level, elements)  "the level's urn is exactly this set"
//   FinalIs(ball)            "the final ball is this ball"
//   FinalInTarget(target)    "the final ball lies in the target set"
struct EventNode {
  enum class Kind { And, Or, Not, Contains, Equals, FinalIs, FinalInTarget };

  Kind kind = Kind::And;
  std::vector<EventNode> children;   // And/Or: any arity; Not: exactly one
  Level level = 0;                   // Contains/Equals
  Ball ball = 0;                     // Contains/FinalIs
  std::vector<Ball> elements;        // Equals (sorted on construction)
  std::optional<TargetSet> target;   // FinalInTarget

  bool operator==(const EventNode&) const = default;
};

namespace events {

EventNode always();  // empty conjunction
EventNode never();   // empty disjunction
EventNode contains(Level level, Ball ball);
EventNode equals(Level level, std::vector<Ball> elements);
EventNode final_is(Ball ball);
EventNode final_in(TargetSet target);
EventNode all_of(std::vector<EventNode> nodes);
EventNode any_of(std::vector<EventNode> nodes);
EventNode negate(EventNode node);

}  // namespace events

// An event observed at a fixed level: a predicate on the urns at levels
// [level, horizon] only. The two final-ball atoms force level == 1.
class EventSpec {
 public:
  // The trivial event: always true at level 1.
  EventSpec() : level_(1), horizon_(1) {}

  EventSpec(Level level, Level horizon, EventNode pred);

  // horizon = deepest atom level (or `level` if the tree has no atoms).
  static EventSpec at_level(Level level, EventNode pred);

  Level level() const { return level_; }
  Level horizon() const { return horizon_; }
  const EventNode& pred() const { return pred_; }

  bool operator==(const EventSpec&) const = default;

 private:
  Level level_;
  Level horizon_;
  EventNode pred_;
};

// True iff the outcome's urns satisfy the event. Requires
// event.horizon() <= order.base().size().
bool eval_event(const EventSpec& event, const RemovalOrder& order);

// Evaluate against explicit urn contents; urn_of(level) must return the
// sorted urn at that level for every level an atom mentions.
bool eval_event_with(const EventNode& pred, const std::function<std::vector<Ball>(Level)>& urn_of);

}  // namespace supertask

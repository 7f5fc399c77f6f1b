#include "supertask/event.hpp"

#include <algorithm>
#include <stdexcept>
#include <utility>

namespace supertask {

namespace events {

EventNode always() {
  EventNode n;
  n.kind = EventNode::Kind::And;
  return n;
}

EventNode never() {
  EventNode n;
  n.kind = EventNode::Kind::Or;
  return n;
}

EventNode contains(Level level, Ball ball) {
  EventNode n;
  n.kind = EventNode::Kind::Contains;
  n.level = level;
  n.ball = ball;
  return n;
}

EventNode equals(Level level, std::vector<Ball> elements) {
  EventNode n;
  n.kind = EventNode::Kind::Equals;
  n.level = level;
  std::sort(elements.begin(), elements.end());
  n.elements = std::move(elements);
  return n;
}

EventNode final_is(Ball ball) {
  EventNode n;
  n.kind = EventNode::Kind::FinalIs;
  n.ball = ball;
  return n;
}

EventNode final_in(TargetSet target) {
  EventNode n;
  n.kind = EventNode::Kind::FinalInTarget;
  n.target = std::move(target);
  return n;
}

EventNode all_of(std::vector<EventNode> nodes) {
  EventNode n;
  n.kind = EventNode::Kind::And;
  n.children = std::move(nodes);
  return n;
}

EventNode any_of(std::vector<EventNode> nodes) {
  EventNode n;
  n.kind = EventNode::Kind::Or;
  n.children = std::move(nodes);
  return n;
}

EventNode negate(EventNode node) {
  EventNode n;
  n.kind = EventNode::Kind::Not;
  n.children.push_back(std::move(node));
  return n;
}

}  // namespace events

namespace {

Level atom_level(const EventNode& node) {
  switch (node.kind) {
    case EventNode::Kind::Contains:
    case EventNode::Kind::Equals:
      return node.level;
    case EventNode::Kind::FinalIs:
    case EventNode::Kind::FinalInTarget:
      return 1;
    default:
      return 0;  // not an atom
  }
}

void validate_node(const EventNode& node, Level level, Level horizon) {
  switch (node.kind) {
    case EventNode::Kind::And:
    case EventNode::Kind::Or:
      for (const EventNode& child : node.children) validate_node(child, level, horizon);
      return;
    case EventNode::Kind::Not:
      if (node.children.size() != 1)
        throw std::invalid_argument("'not' takes exactly one operand");
      validate_node(node.children.front(), level, horizon);
      return;
    case EventNode::Kind::Contains:
      if (node.level < level || node.level > horizon)
        throw std::invalid_argument("atom level outside [level, horizon]");
      if (node.ball == 0) throw std::invalid_argument("balls are numbered from 1");
      return;
    case EventNode::Kind::Equals: {
      if (node.level < level || node.level > horizon)
        throw std::invalid_argument("atom level outside [level, horizon]");
      if (node.elements.size() != node.level)
        throw std::invalid_argument("an equals atom must list exactly `level` balls");
      if (std::adjacent_find(node.elements.begin(), node.elements.end()) != node.elements.end())
        throw std::invalid_argument("equals atom lists a ball twice");
      for (Ball b : node.elements)
        if (b == 0) throw std::invalid_argument("balls are numbered from 1");
      return;
    }
    case EventNode::Kind::FinalIs:
      if (level != 1) throw std::invalid_argument("final-ball atoms require a level-1 event");
      if (node.ball == 0) throw std::invalid_argument("balls are numbered from 1");
      return;
    case EventNode::Kind::FinalInTarget:
      if (level != 1) throw std::invalid_argument("final-ball atoms require a level-1 event");
      if (!node.target) throw std::invalid_argument("final-in-target atom needs a target set");
      return;
  }
}

Level deepest_atom(const EventNode& node) {
  Level deepest = 0;
  if (Level l = atom_level(node); l > 0) deepest = l;
  for (const EventNode& child : node.children) deepest = std::max(deepest, deepest_atom(child));
  return deepest;
}

bool eval_node(const EventNode& node, const std::function<std::vector<Ball>(Level)>& urn_of) {
  switch (node.kind) {
    case EventNode::Kind::And:
      return std::all_of(node.children.begin(), node.children.end(),
                         [&](const EventNode& c) { return eval_node(c, urn_of); });
    case EventNode::Kind::Or:
      return std::any_of(node.children.begin(), node.children.end(),
                         [&](const EventNode& c) { return eval_node(c, urn_of); });
    case EventNode::Kind::Not:
      return !eval_node(node.children.front(), urn_of);
    case EventNode::Kind::Contains: {
      const std::vector<Ball> urn = urn_of(node.level);
      return std::binary_search(urn.begin(), urn.end(), node.ball);
    }
    case EventNode::Kind::Equals:
      return urn_of(node.level) == node.elements;
    case EventNode::Kind::FinalIs:
      return urn_of(1) == std::vector<Ball>{node.ball};
    case EventNode::Kind::FinalInTarget:
      return node.target->member(urn_of(1).front());
  }
  return false;
}

}  // namespace

EventSpec::EventSpec(Level level, Level horizon, EventNode pred)
    : level_(level), horizon_(horizon), pred_(std::move(pred)) {
  if (level_ < 1) throw std::invalid_argument("event level starts at 1");
  if (horizon_ < level_) throw std::invalid_argument("event horizon must be >= level");
  validate_node(pred_, level_, horizon_);
}

EventSpec EventSpec::at_level(Level level, EventNode pred) {
  const Level deepest = deepest_atom(pred);
  return EventSpec(level, std::max(level, deepest), std::move(pred));
}

bool eval_event(const EventSpec& event, const RemovalOrder& order) {
  if (event.horizon() > order.base().size())
    throw std::out_of_range("event horizon exceeds the chain length");
  return eval_node(event.pred(), [&order](Level level) { return order.urn_at(level); });
}

bool eval_event_with(const EventNode& pred, const std::function<std::vector<Ball>(Level)>& urn_of) {
  return eval_node(pred, urn_of);
}

}  // namespace supertask

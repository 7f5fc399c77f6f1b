#include <doctest.h>

#include <stdexcept>

#include "supertask/event.hpp"

using namespace supertask;
using namespace supertask::events;

TEST_SUITE("event") {
  TEST_CASE("final-ball atoms evaluate on the worked outcomes") {
    const ChainPrefix chain({1, 2, 3});
    const RemovalOrder order(chain, {2, 3});  // final ball 1

    CHECK(eval_event(EventSpec::at_level(1, final_is(1)), order));
    CHECK_FALSE(eval_event(EventSpec::at_level(1, final_is(3)), order));

    const TargetSet evens = TargetSet::residue(2, 0);
    CHECK_FALSE(eval_event(EventSpec::at_level(1, final_in(evens)), order));

    const RemovalOrder even_final(chain, {1, 3});  // final ball 2
    CHECK(eval_event(EventSpec::at_level(1, final_in(evens)), even_final));
  }

  TEST_CASE("the top urn contains every added ball") {
    const ChainPrefix chain({4, 1, 6});
    const RemovalOrder order(chain, {6, 4});
    for (Ball b : chain.added())
      CHECK(eval_event(EventSpec::at_level(3, contains(3, b)), order));
  }

  TEST_CASE("boolean structure behaves") {
    const ChainPrefix chain({1, 2, 3});
    const RemovalOrder order(chain, {3, 2});  // urns {1},{1,2},{1,2,3}

    const EventSpec both = EventSpec::at_level(1, all_of({final_is(1), contains(2, 2)}));
    CHECK(eval_event(both, order));

    const EventSpec either = EventSpec::at_level(1, any_of({final_is(3), contains(2, 2)}));
    CHECK(eval_event(either, order));

    const EventSpec neither = EventSpec::at_level(1, negate(contains(2, 1)));
    CHECK_FALSE(eval_event(neither, order));

    CHECK(eval_event(EventSpec::at_level(2, equals(2, {1, 2})), order));
    CHECK_FALSE(eval_event(EventSpec::at_level(2, equals(2, {1, 3})), order));

    CHECK(eval_event(EventSpec::at_level(1, always()), order));
    CHECK_FALSE(eval_event(EventSpec::at_level(1, never()), order));
  }

  TEST_CASE("construction validates the atom band and cardinalities") {
    CHECK_THROWS_AS(EventSpec(0, 1, always()), std::invalid_argument);
    CHECK_THROWS_AS(EventSpec(2, 1, always()), std::invalid_argument);
    // atom below the event level
    CHECK_THROWS_AS(EventSpec(2, 3, contains(1, 1)), std::invalid_argument);
    // atom above the horizon
    CHECK_THROWS_AS(EventSpec(1, 2, contains(3, 1)), std::invalid_argument);
    // final atoms force level 1
    CHECK_THROWS_AS(EventSpec(2, 3, final_is(1)), std::invalid_argument);
    CHECK_THROWS_AS(EventSpec(2, 3, final_in(TargetSet::residue(2, 0))), std::invalid_argument);
    // an equals atom must list exactly `level` balls
    CHECK_THROWS_AS(EventSpec(2, 2, equals(2, {1})), std::invalid_argument);
    CHECK_THROWS_AS(EventSpec(2, 2, equals(2, {1, 1})), std::invalid_argument);
    CHECK_NOTHROW(EventSpec(2, 2, equals(2, {2, 1})));
  }

  TEST_CASE("at_level picks the deepest atom as horizon") {
    const EventSpec event = EventSpec::at_level(1, all_of({final_is(1), contains(3, 2)}));
    CHECK(event.level() == 1);
    CHECK(event.horizon() == 3);
    CHECK(EventSpec::at_level(2, always()).horizon() == 2);
  }

  TEST_CASE("evaluation needs the horizon inside the chain") {
    const ChainPrefix chain({1, 2});
    const RemovalOrder order(chain, {2});
    CHECK_THROWS_AS(eval_event(EventSpec::at_level(1, contains(3, 1)), order), std::out_of_range);
  }

  TEST_CASE("raising the horizon without new atoms never changes the value") {
    const ChainPrefix chain({2, 4, 6, 8, 10});
    const RemovalOrder order(chain, {4, 10, 2, 8});
    const EventNode pred = any_of({final_is(6), all_of({contains(2, 6), negate(contains(3, 4))})});
    const bool base_value = eval_event(EventSpec(1, 3, pred), order);
    for (Level horizon = 3; horizon <= 5; ++horizon)
      CHECK(eval_event(EventSpec(1, horizon, pred), order) == base_value);
  }
}

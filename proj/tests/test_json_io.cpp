#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "supertask/json_io.hpp"

using namespace supertask;
using namespace supertask::events;
using nlohmann::json;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / ("supertask_test_" + name);
}

EventNode random_node(std::mt19937_64& rng, int depth) {
  std::uniform_int_distribution<int> pick(0, depth > 0 ? 6 : 3);
  std::uniform_int_distribution<Ball> ball(1, 9);
  std::uniform_int_distribution<Level> level(2, 4);
  switch (pick(rng)) {
    case 0:
      return contains(level(rng), ball(rng));
    case 1: {
      const Level l = level(rng);
      std::vector<Ball> elems;
      for (Level i = 0; i < l; ++i) elems.push_back(100 + i * 3 + ball(rng) % 2);
      return equals(l, elems);
    }
    case 2:
      return final_is(ball(rng));
    case 3:
      return final_in(rng() % 2 == 0 ? TargetSet::residue(3, 1) : TargetSet::periodic("01", "110"));
    case 4:
      return negate(random_node(rng, depth - 1));
    case 5:
      return all_of({random_node(rng, depth - 1), random_node(rng, depth - 1)});
    default:
      return any_of({random_node(rng, depth - 1), random_node(rng, depth - 1)});
  }
}

}  // namespace

TEST_SUITE("json_io") {
  TEST_CASE("chain schema") {
    const ChainPrefix chain({1, 2, 3, 5, 8});
    const json doc = chain_to_json(chain);
    CHECK(doc.dump() == R"({"added":[1,2,3,5,8]})");
    CHECK(chain_from_json(doc) == chain);
    CHECK_THROWS_AS(chain_from_json(json::parse(R"({"added":"nope"})")), std::invalid_argument);
    CHECK_THROWS_AS(chain_from_json(json::parse(R"({})")), std::invalid_argument);
  }

  TEST_CASE("target schema") {
    const TargetSet evens = TargetSet::residue(2, 0);
    CHECK(target_to_json(evens).dump() == R"({"kind":"residue","mod":2,"res":0})");
    CHECK(target_from_json(target_to_json(evens)) == evens);

    const TargetSet word = TargetSet::periodic("011", "10");
    CHECK(target_to_json(word).dump() == R"({"block":"10","kind":"periodic","prefix":"011"})");
    CHECK(target_from_json(target_to_json(word)) == word);

    CHECK_THROWS_AS(target_from_json(json::parse(R"({"kind":"weird"})")), std::invalid_argument);
  }

  TEST_CASE("event schema accepts wrapped and bare forms") {
    const json bare = json::parse(R"({"op":"atom","atom":"final_is","ball":1})");
    const EventSpec from_bare = event_from_json(bare);
    CHECK(from_bare.level() == 1);
    CHECK(from_bare.pred() == final_is(1));

    const json wrapped =
        json::parse(R"({"level":2,"horizon":3,"pred":{"op":"atom","atom":"contains","level":2,"ball":4}})");
    const EventSpec from_wrapped = event_from_json(wrapped);
    CHECK(from_wrapped.level() == 2);
    CHECK(from_wrapped.horizon() == 3);

    // A bare trivial event sits at level 1.
    CHECK(event_from_json(json::parse(R"({"op":"and","args":[]})")).level() == 1);
  }

  TEST_CASE("event round trip over random trees") {
    std::mt19937_64 rng(606);
    for (int round = 0; round < 60; ++round) {
      EventNode node = random_node(rng, 3);
      EventSpec event = EventSpec::at_level(1, std::move(node));
      const json doc = event_to_json(event);
      const EventSpec back = event_from_json(doc);
      CHECK(back == event);
      CHECK(event_to_json(back) == doc);
    }
  }

  TEST_CASE("written files parse back to identical bytes") {
    const auto path = temp_file("chain.json");
    const ChainPrefix chain({2, 1, 7});
    save_json_file(path.string(), chain_to_json(chain));

    std::ifstream in(path);
    std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    CHECK(bytes == canonical_dump(chain_to_json(chain_from_json(load_json_file(path.string())))));
    std::filesystem::remove(path);
  }

  TEST_CASE("trace csv round trip") {
    const auto path = temp_file("trace.csv");
    write_trace_csv(path.string(), {0, 1, 1, 2, 2});
    const std::vector<Rat> densities = read_trace_csv(path.string());
    CHECK(densities == std::vector<Rat>{make_rat(0), make_rat(1, 2), make_rat(1, 3),
                                        make_rat(1, 2), make_rat(2, 5)});
    std::filesystem::remove(path);
  }

  TEST_CASE("trace csv rejects malformed files") {
    const auto path = temp_file("bad_trace.csv");
    {
      std::ofstream out(path);
      out << "wrong,header\n1,2,3,4\n";
    }
    CHECK_THROWS_AS(read_trace_csv(path.string()), std::invalid_argument);
    {
      std::ofstream out(path);
      out << "k,count,density_num,density_den\n2,1,1,2\n";
    }
    CHECK_THROWS_AS(read_trace_csv(path.string()), std::invalid_argument);
    std::filesystem::remove(path);
  }

  TEST_CASE("density report carries exact strings") {
    const ChainPrefix chain({1, 2, 3});
    const DensityReport report = density(chain, EventSpec::at_level(1, final_is(1)), 3);
    const json doc = report_to_json(report);
    CHECK(doc["value"] == "1/3");
    CHECK(doc["hits"] == 2);
    CHECK(doc["total"] == 6);
    CHECK(doc["decimal"].get<double>() == doctest::Approx(1.0 / 3.0));
  }
}

#include <doctest.h>

#include <cmath>

#include "supertask/construct.hpp"
#include "supertask/enumerate.hpp"
#include "supertask/json_io.hpp"
#include "supertask/simulate.hpp"

using namespace supertask;

namespace {

const TargetSet kEvens = TargetSet::residue(2, 0);

ChainPrefix identity_chain(Level n) {
  std::vector<Ball> added(n);
  for (Level i = 0; i < n; ++i) added[i] = i + 1;
  return ChainPrefix(std::move(added));
}

}  // namespace

TEST_SUITE("simulate") {
  TEST_CASE("a single ball always survives") {
    const SimulationReport report = simulate({ChainPrefix({5}), 1000, 7, kEvens});
    CHECK(report.final_counts == std::vector<std::uint64_t>{1000});
    CHECK(report.target_frequency() == doctest::Approx(0.0));
  }

  TEST_CASE("counts sum to the number of trials") {
    const SimulationReport report = simulate({identity_chain(6), 20000, 99, std::nullopt});
    std::uint64_t sum = 0;
    for (std::uint64_t c : report.final_counts) sum += c;
    CHECK(sum == 20000);
  }

  TEST_CASE("reports are identical across worker counts") {
    const SimulationConfig config{identity_chain(10), 50000, 20250607, kEvens};
    const SimulationReport one = simulate(config, 1);
    for (unsigned workers : {2u, 3u, 8u}) {
      const SimulationReport split = simulate(config, workers);
      CHECK(split.final_counts == one.final_counts);
      CHECK(*split.in_target == *one.in_target);
      CHECK(canonical_dump(report_to_json(split)) == canonical_dump(report_to_json(one)));
    }
  }

  TEST_CASE("ten balls: every frequency is near one tenth") {
    const SimulationReport report = simulate({identity_chain(10), 100000, 31337, std::nullopt});
    for (std::size_t i = 0; i < 10; ++i)
      CHECK(std::abs(report.frequency(i) - 0.1) < 0.005);
  }

  TEST_CASE("empirical final-ball distribution passes a chi-square check") {
    // 99.9% quantile of chi-square with 9 degrees of freedom; seed frozen.
    const SimulationReport report = simulate({identity_chain(10), 200000, 1000003, std::nullopt});
    const double expected = 200000.0 / 10.0;
    double statistic = 0;
    for (std::size_t i = 0; i < 10; ++i) {
      const double diff = static_cast<double>(report.final_counts[i]) - expected;
      statistic += diff * diff / expected;
    }
    CHECK(statistic < 27.877);
  }

  TEST_CASE("target frequency tracks the steered chain") {
    const ChainPrefix chain =
        construct_chain({kEvens, make_rat(1, 3), 8, SteeringMode::Greedy});  // 9 levels
    const SimulationReport report = simulate({chain, 100000, 555, kEvens});
    CHECK(std::abs(report.target_frequency() - 1.0 / 3.0) < 0.005);
  }

  TEST_CASE("crosscheck agrees with the exact densities") {
    const CrosscheckReport z3 = crosscheck(ChainPrefix({1, 2, 3}), 60000, 1206);
    CHECK(z3.pass);
    CHECK(z3.max_deviation < 0.008);

    const CrosscheckReport z5 = crosscheck(identity_chain(5), 100000, 1207);
    CHECK(z5.pass);
    CHECK(z5.max_deviation < 0.006);

    const CrosscheckReport trivial = crosscheck(ChainPrefix({9}), 5000, 1);
    CHECK(trivial.pass);
    CHECK(trivial.max_deviation == 0.0);
  }

  TEST_CASE("crosscheck respects the enumeration cap") {
    CHECK_THROWS_AS(crosscheck(identity_chain(11), 100, 1), CapacityError);
  }

  TEST_CASE("rejects empty runs") {
    CHECK_THROWS_AS(simulate({identity_chain(3), 0, 1, std::nullopt}), std::invalid_argument);
  }
}

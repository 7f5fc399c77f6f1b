#include <doctest.h>

#include <stdexcept>

#include "supertask/construct.hpp"
#include "supertask/convergence.hpp"

using namespace supertask;

TEST_SUITE("convergence") {
  TEST_CASE("constant sequences converge to the constant") {
    const std::vector<Rat> seq(25, make_rat(2, 7));
    const SequenceDiagnostics diag = diagnose(seq, make_rat(1, 2), make_rat(1, 100));
    CHECK(diag.verdict == ConvergenceVerdict::Converged);
    CHECK(diag.value == make_rat(2, 7));
    CHECK(diag.cesaro_mean == make_rat(2, 7));
    CHECK(diag.liminf_estimate == make_rat(2, 7));
    CHECK(diag.limsup_estimate == make_rat(2, 7));
  }

  TEST_CASE("alternating zero-one oscillates with the full band") {
    std::vector<Rat> seq;
    for (int i = 0; i < 40; ++i) seq.push_back(make_rat(i % 2));
    const SequenceDiagnostics diag = diagnose(seq, make_rat(1, 2), make_rat(1, 100));
    CHECK(diag.verdict == ConvergenceVerdict::Oscillating);
    CHECK(diag.liminf_estimate == 0);
    CHECK(diag.limsup_estimate == 1);
    CHECK(diag.cesaro_mean == make_rat(1, 2));
  }

  TEST_CASE("a slow one-sided drift is undecided, not oscillating") {
    // 1/k over k = 1..60 with a tolerance far below the window spread.
    std::vector<Rat> seq;
    for (long long k = 1; k <= 60; ++k) seq.push_back(make_rat(1, k));
    const SequenceDiagnostics diag = diagnose(seq, make_rat(1, 2), make_rat(1, 10000));
    CHECK(diag.verdict == ConvergenceVerdict::Undecided);
  }

  TEST_CASE("window selection is the trailing ceil(fraction * count)") {
    std::vector<Rat> seq;
    for (int i = 0; i < 10; ++i) seq.push_back(make_rat(i));
    const SequenceDiagnostics diag = diagnose(seq, make_rat(3, 10), make_rat(1, 2));
    CHECK(diag.window_count == 3);
    CHECK(diag.liminf_estimate == 7);
    CHECK(diag.limsup_estimate == 9);
  }

  TEST_CASE("steered construction traces converge to the goal") {
    const TargetSet evens = TargetSet::residue(2, 0);
    const ChainPrefix chain =
        construct_chain({evens, make_rat(1, 3), 10000, SteeringMode::Covering});
    const SequenceDiagnostics diag =
        diagnose(density_trace(chain, evens), make_rat(1, 10), make_rat(1, 100));
    CHECK(diag.verdict == ConvergenceVerdict::Converged);
    Rat gap = diag.value - make_rat(1, 3);
    if (gap < 0) gap = -gap;
    CHECK(gap <= make_rat(1, 100));
    // The exact mean of a converged trace sits near the limit estimate too.
    Rat mean_gap = diag.cesaro_mean - make_rat(1, 3);
    if (mean_gap < 0) mean_gap = -mean_gap;
    CHECK(mean_gap <= make_rat(1, 100));
  }

  TEST_CASE("diagnostics commute with constant shifts") {
    std::vector<Rat> seq;
    for (long long k = 1; k <= 30; ++k) seq.push_back(make_rat((k % 5) + 1, 7));
    std::vector<Rat> shifted;
    const Rat delta = make_rat(3, 11);
    for (const Rat& q : seq) shifted.push_back(q + delta);

    const SequenceDiagnostics base = diagnose(seq, make_rat(1, 3), make_rat(1, 50));
    const SequenceDiagnostics moved = diagnose(shifted, make_rat(1, 3), make_rat(1, 50));
    CHECK(moved.verdict == base.verdict);
    CHECK(moved.liminf_estimate == base.liminf_estimate + delta);
    CHECK(moved.limsup_estimate == base.limsup_estimate + delta);
    CHECK(moved.cesaro_mean == base.cesaro_mean + delta);
    CHECK(moved.value == base.value + delta);
  }

  TEST_CASE("input validation") {
    CHECK_THROWS_AS(diagnose({}, make_rat(1, 2), make_rat(1, 100)), std::domain_error);
    CHECK_THROWS_AS(diagnose({make_rat(1)}, make_rat(0), make_rat(1, 100)), std::invalid_argument);
    CHECK_THROWS_AS(diagnose({make_rat(1)}, make_rat(3, 2), make_rat(1, 100)),
                    std::invalid_argument);
    CHECK_THROWS_AS(diagnose({make_rat(1)}, make_rat(1, 2), make_rat(-1, 100)),
                    std::invalid_argument);
  }

  TEST_CASE("exact mean of a short explicit sequence") {
    const std::vector<Rat> seq{make_rat(1, 2), make_rat(1, 3), make_rat(1, 6)};
    const SequenceDiagnostics diag = diagnose(seq, make_rat(1), make_rat(10));
    CHECK(diag.cesaro_mean == make_rat(1, 3));
  }
}

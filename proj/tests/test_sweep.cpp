#include <doctest.h>

#include <cmath>

#include "causabound/bounds.hpp"
#include "causabound/oracle.hpp"
#include "causabound/sweep.hpp"
#include "test_support.hpp"

using namespace causabound;
using namespace causabound::test;

namespace {

constexpr Structure kAll[] = {Structure::Basic, Structure::Mediator, Structure::Covariate,
                              Structure::MediatorCovariate};

}  // namespace

TEST_CASE("random scenarios are reproducible") {
  for (auto structure : kAll) {
    for (int trial = 0; trial < 50; ++trial) {
      CHECK(random_scenario(structure, 7, trial) == random_scenario(structure, 7, trial));
    }
    CHECK_FALSE(random_scenario(structure, 7, 0) == random_scenario(structure, 8, 0));
    CHECK_FALSE(random_scenario(structure, 7, 0) == random_scenario(structure, 7, 1));
  }
}

TEST_CASE("random scenarios are valid and well conditioned") {
  for (auto structure : kAll) {
    for (int trial = 0; trial < 300; ++trial) {
      const auto s = random_scenario(structure, 99, trial);
      CHECK(s.structure == structure);
      CHECK(validate_scenario(s).empty());
      if (has_covariate(structure)) {
        CHECK(s.covariate_prior.size() >= 2);
        CHECK(s.covariate_prior.size() <= 3);
      }

      const JointLaw law(s);
      CHECK(law.prob([](const Cell& c) { return c.e == 1; }) >= kMinDenominator);
      CHECK(law.prob([](const Cell& c) { return c.e == 0; }) >= kMinDenominator);
      if (has_mediator(structure)) {
        CHECK(law.prob([](const Cell& c) { return c.m == 1; }) >= kMinDenominator);
        CHECK(law.prob([](const Cell& c) { return c.m == 0; }) >= kMinDenominator);
      }
      if (has_covariate(structure)) {
        for (int level = 0; level < static_cast<int>(s.covariate_prior.size()); ++level) {
          CHECK(law.s_given_e(level, 1) >= kMinDenominator);
        }
      }
      for (auto mode : applicable_modes(structure)) {
        CHECK(derive_observables(s, mode).p_r1_given_e1 >= kMinDenominator);
      }
    }
  }
}

TEST_CASE("closed form and oracle agree on random scenarios") {
  for (auto structure : kAll) {
    for (int trial = 0; trial < 250; ++trial) {
      const auto s = random_scenario(structure, 2024, trial);
      CHECK(endpoint_discrepancy(s) <= kEquivalenceTolerance);
    }
  }
}

TEST_CASE("discrepancy is infinite when an endpoint cannot be computed") {
  auto s = example1_basic();
  s.response[{.e = 1}] = 0.0;
  CHECK(std::isinf(endpoint_discrepancy(s)));
}

TEST_CASE("sweep summaries") {
  const auto serial = oracle_sweep(42, 60);
  CHECK(serial.seed == 42);
  CHECK(serial.trials == 60);
  REQUIRE(serial.structures.size() == 4);
  for (std::size_t i = 0; i < 4; ++i) {
    CHECK(serial.structures[i].structure == kAll[i]);
    CHECK(serial.structures[i].trials == 60);
    CHECK(serial.structures[i].worst_trial >= 0);
    CHECK(serial.structures[i].worst_trial < 60);
  }
  CHECK(serial.passed());
  CHECK(serial.worst().max_discrepancy == serial.max_discrepancy());

  SUBCASE("the parallel kernel reproduces the serial reference exactly") {
    const auto parallel = oracle_sweep_parallel(42, 60);
    REQUIRE(parallel.structures.size() == serial.structures.size());
    for (std::size_t i = 0; i < serial.structures.size(); ++i) {
      CHECK(parallel.structures[i].structure == serial.structures[i].structure);
      CHECK(parallel.structures[i].max_discrepancy == serial.structures[i].max_discrepancy);
      CHECK(parallel.structures[i].worst_trial == serial.structures[i].worst_trial);
    }
  }
  SUBCASE("the worst trial is the one with the largest gap") {
    for (const auto& st : serial.structures) {
      const auto s = random_scenario(st.structure, 42, st.worst_trial);
      CHECK(endpoint_discrepancy(s) == st.max_discrepancy);
    }
  }
}

// Seeded random scenarios and the closed-form vs oracle equivalence sweep.
#pragma once

#include <cstdint>
#include <vector>

#include "causabound/probability.hpp"

namespace causabound {

// Conditioning events below this probability are rejected by the generator.
inline constexpr double kMinDenominator = 1e-3;
inline constexpr double kEquivalenceTolerance = 1e-9;

// Uniform probabilities, 2 or 3 strata for covariate structures. Redraws
// until P(E=e), P(M=m), P(S=s|E=1) and P(R=1|E=1) under every applicable
// mode are at least kMinDenominator. Depends only on (seed, structure, trial).
Scenario random_scenario(Structure structure, std::uint64_t seed, int trial);

// Largest |closed form - oracle| over both endpoints and every applicable
// analysis mode. +infinity if either side throws.
double endpoint_discrepancy(const Scenario& s);

struct StructureSweep {
  Structure structure = Structure::Basic;
  int trials = 0;
  double max_discrepancy = 0;
  int worst_trial = 0;
};

struct SweepSummary {
  std::uint64_t seed = 0;
  int trials = 0;
  std::vector<StructureSweep> structures;

  double max_discrepancy() const;
  const StructureSweep& worst() const;
  bool passed() const { return max_discrepancy() <= kEquivalenceTolerance; }
};

// Serial reference.
SweepSummary oracle_sweep(std::uint64_t seed, int trials);
// OpenMP over trials; identical result to oracle_sweep.
SweepSummary oracle_sweep_parallel(std::uint64_t seed, int trials);

}  // namespace causabound

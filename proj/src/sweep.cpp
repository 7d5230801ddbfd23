#include "causabound/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>

#include "causabound/bounds.hpp"
#include "causabound/oracle.hpp"

namespace causabound {

namespace {

constexpr Structure kAllStructures[] = {Structure::Basic, Structure::Mediator, Structure::Covariate,
                                        Structure::MediatorCovariate};

Scenario draw(Structure structure, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  Scenario s;
  s.structure = structure;

  int strata = 0;
  if (has_covariate(structure)) {
    strata = std::uniform_int_distribution<int>(2, 3)(rng);
    double total = 0;
    for (int k = 0; k < strata; ++k) {
      s.covariate_prior.push_back(unit(rng));
      total += s.covariate_prior.back();
    }
    for (double& p : s.covariate_prior) p /= total;
    for (int k = 0; k < strata; ++k) s.exposure[{.s = k}] = unit(rng);
  } else {
    s.exposure[{}] = unit(rng);
  }

  switch (structure) {
    case Structure::Basic:
      for (int e = 0; e < 2; ++e) s.response[{.e = e}] = unit(rng);
      break;
    case Structure::Mediator:
      for (int v = 0; v < 2; ++v) s.mediator[{.e = v}] = unit(rng);
      for (int v = 0; v < 2; ++v) s.response[{.m = v}] = unit(rng);
      break;
    case Structure::Covariate:
      for (int k = 0; k < strata; ++k) {
        for (int e = 0; e < 2; ++e) s.response[{.e = e, .s = k}] = unit(rng);
      }
      break;
    case Structure::MediatorCovariate:
      for (int k = 0; k < strata; ++k) {
        for (int v = 0; v < 2; ++v) s.mediator[{.e = v, .s = k}] = unit(rng);
        for (int v = 0; v < 2; ++v) s.response[{.m = v, .s = k}] = unit(rng);
      }
      break;
  }
  return s;
}

double mediator_marginal(const Scenario& s, int m) {
  auto pm = [m](double m1) { return m == 1 ? m1 : 1.0 - m1; };
  if (s.structure == Structure::Mediator) {
    const double e1 = s.exposure.at({});
    return e1 * pm(s.mediator.at({.e = 1})) + (1 - e1) * pm(s.mediator.at({.e = 0}));
  }
  double total = 0;
  for (std::size_t k = 0; k < s.covariate_prior.size(); ++k) {
    const int sk = static_cast<int>(k);
    const double e1 = s.exposure.at({.s = sk});
    total += s.covariate_prior[k] *
             (e1 * pm(s.mediator.at({.e = 1, .s = sk})) + (1 - e1) * pm(s.mediator.at({.e = 0, .s = sk})));
  }
  return total;
}

bool well_conditioned(const Scenario& s) {
  try {
    for (int e = 0; e < 2; ++e) {
      double pe = 0;
      if (has_covariate(s.structure)) {
        for (std::size_t k = 0; k < s.covariate_prior.size(); ++k) {
          const double e1 = s.exposure.at({.s = static_cast<int>(k)});
          pe += s.covariate_prior[k] * (e == 1 ? e1 : 1 - e1);
        }
      } else {
        pe = e == 1 ? s.exposure.at({}) : 1 - s.exposure.at({});
      }
      if (pe < kMinDenominator) return false;
    }
    if (has_mediator(s.structure)) {
      for (int m = 0; m < 2; ++m) {
        if (mediator_marginal(s, m) < kMinDenominator) return false;
      }
    }
    for (auto mode : applicable_modes(s.structure)) {
      const auto obs = derive_observables(s, mode);
      if (obs.p_r1_given_e1 < kMinDenominator) return false;
      for (const auto& st : obs.strata) {
        if (st.weight < kMinDenominator) return false;
      }
    }
  } catch (const CausaboundError&) {
    return false;
  }
  return true;
}

double trial_discrepancy(Structure structure, std::uint64_t seed, int trial) {
  return endpoint_discrepancy(random_scenario(structure, seed, trial));
}

// Largest value wins; ties keep the earliest trial.
StructureSweep reduce(Structure structure, const std::vector<double>& gaps) {
  StructureSweep out;
  out.structure = structure;
  out.trials = static_cast<int>(gaps.size());
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] > out.max_discrepancy || std::isnan(gaps[i])) {
      out.max_discrepancy = std::isnan(gaps[i]) ? std::numeric_limits<double>::infinity() : gaps[i];
      out.worst_trial = static_cast<int>(i);
    }
  }
  return out;
}

}  // namespace

Scenario random_scenario(Structure structure, std::uint64_t seed, int trial) {
  for (std::uint32_t attempt = 0;; ++attempt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(structure), static_cast<std::uint32_t>(trial), attempt};
    std::mt19937_64 rng(seq);
    Scenario s = draw(structure, rng);
    if (well_conditioned(s)) return s;
  }
}

double endpoint_discrepancy(const Scenario& s) {
  double worst = 0;
  try {
    for (auto mode : applicable_modes(s.structure)) {
      const auto closed = pc_bounds(derive_observables(s, mode));
      const auto oracle = oracle_bounds(s, mode).interval;
      worst = std::max({worst, std::abs(closed.lower - oracle.lower), std::abs(closed.upper - oracle.upper)});
    }
  } catch (const std::exception&) {
    return std::numeric_limits<double>::infinity();
  }
  return worst;
}

double SweepSummary::max_discrepancy() const { return worst().max_discrepancy; }

const StructureSweep& SweepSummary::worst() const {
  static const StructureSweep empty;
  const StructureSweep* best = &empty;
  for (const auto& s : structures) {
    if (s.max_discrepancy > best->max_discrepancy) best = &s;
  }
  return *best;
}

SweepSummary oracle_sweep(std::uint64_t seed, int trials) {
  SweepSummary summary{seed, trials, {}};
  for (auto structure : kAllStructures) {
    std::vector<double> gaps(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) gaps[static_cast<std::size_t>(t)] = trial_discrepancy(structure, seed, t);
    summary.structures.push_back(reduce(structure, gaps));
  }
  return summary;
}

SweepSummary oracle_sweep_parallel(std::uint64_t seed, int trials) {
  SweepSummary summary{seed, trials, {}};
  for (auto structure : kAllStructures) {
    std::vector<double> gaps(static_cast<std::size_t>(trials));
#pragma omp parallel for schedule(dynamic, 16)
    for (int t = 0; t < trials; ++t) gaps[static_cast<std::size_t>(t)] = trial_discrepancy(structure, seed, t);
    summary.structures.push_back(reduce(structure, gaps));
  }
  return summary;
}

}  // namespace causabound

// Test-only fixtures and a brute-force joint-law enumerator.
//
// JointLaw expands a scenario into P(S, E, M, R) cell by cell and answers
// conditional queries by summation. It never calls the library's
// marginalization code, so it serves as the reference for derived values.
#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <random>
#include <vector>

#include "causabound/probability.hpp"

namespace causabound::test {

inline Scenario example1_basic() {
  Scenario s;
  s.structure = Structure::Basic;
  s.response = {{{.e = 1}, 0.30}, {{.e = 0}, 0.12}};
  return s;
}

inline ContingencyTable trial_counts() {
  ContingencyTable t;
  t.variables = {'E', 'R'};
  t.counts = {{{1, 1}, 30}, {{1, 0}, 70}, {{0, 1}, 12}, {{0, 0}, 88}};
  return t;
}

inline Scenario example2_mediator() {
  Scenario s;
  s.structure = Structure::Mediator;
  s.mediator = {{{.e = 1}, 0.75}, {{.e = 0}, 0.975}};
  s.response = {{{.m = 1}, 0.1}, {{.m = 0}, 0.9}};
  return s;
}

inline Scenario example3_covariate() {
  Scenario s;
  s.structure = Structure::Covariate;
  s.covariate_prior = {0.5, 0.5};
  s.exposure = {{{.s = 1}, 0.2}, {{.s = 0}, 0.8}};
  s.response = {{{.e = 1, .s = 1}, 0.2}, {{.e = 0, .s = 1}, 0.8}, {{.e = 1, .s = 0}, 0.8}, {{.e = 0, .s = 0}, 0.2}};
  return s;
}

inline Scenario example4_mediator_covariate() {
  Scenario s;
  s.structure = Structure::MediatorCovariate;
  s.covariate_prior = {0.1, 0.9};
  s.exposure = {{{.s = 0}, 0.9}, {{.s = 1}, 0.1}};
  s.mediator = {{{.e = 0, .s = 0}, 0.1}, {{.e = 0, .s = 1}, 0.8}, {{.e = 1, .s = 0}, 0.3}, {{.e = 1, .s = 1}, 0.8}};
  s.response = {{{.m = 0, .s = 0}, 0.8}, {{.m = 0, .s = 1}, 0.9}, {{.m = 1, .s = 0}, 0.7}, {{.m = 1, .s = 1}, 0.3}};
  return s;
}

struct Cell {
  int s, e, m, r;
  double p;
};

// Full joint law. Structures without S get one stratum; structures without
// M set M = E; a missing exposure marginal defaults to 1/2.
class JointLaw {
 public:
  explicit JointLaw(const Scenario& sc) {
    const bool with_s = has_covariate(sc.structure);
    const bool with_m = has_mediator(sc.structure);
    const int strata = with_s ? static_cast<int>(sc.covariate_prior.size()) : 1;
    auto bern = [](double p1, int v) { return v == 1 ? p1 : 1.0 - p1; };

    for (int s = 0; s < strata; ++s) {
      const double ps = with_s ? sc.covariate_prior[static_cast<std::size_t>(s)] : 1.0;
      std::optional<int> sk = with_s ? std::optional<int>(s) : std::nullopt;
      const double pe1 = with_s ? sc.exposure.at({.s = s})
                                : (sc.exposure.contains({}) ? sc.exposure.at({}) : 0.5);
      for (int e = 0; e < 2; ++e) {
        for (int m = 0; m < 2; ++m) {
          double pm = 0;
          if (with_m) pm = bern(sc.mediator.at({.e = e, .s = sk}), m);
          else pm = (m == e) ? 1.0 : 0.0;
          for (int r = 0; r < 2; ++r) {
            const double pr = with_m ? bern(sc.response.at({.m = m, .s = sk}), r)
                                     : bern(sc.response.at({.e = e, .s = sk}), r);
            cells_.push_back({s, e, m, r, ps * bern(pe1, e) * pm * pr});
          }
        }
      }
    }
  }

  double prob(const std::function<bool(const Cell&)>& event) const {
    double total = 0;
    for (const auto& c : cells_) {
      if (event(c)) total += c.p;
    }
    return total;
  }

  double conditional(const std::function<bool(const Cell&)>& event,
                     const std::function<bool(const Cell&)>& given) const {
    return prob([&](const Cell& c) { return event(c) && given(c); }) / prob(given);
  }

  // P(R=1 | E=e) from the joint law.
  double r_given_e(int e) const {
    return conditional([](const Cell& c) { return c.r == 1; }, [e](const Cell& c) { return c.e == e; });
  }
  double m_given_e(int m, int e) const {
    return conditional([m](const Cell& c) { return c.m == m; }, [e](const Cell& c) { return c.e == e; });
  }
  double r_given_m(int r, int m) const {
    return conditional([r](const Cell& c) { return c.r == r; }, [m](const Cell& c) { return c.m == m; });
  }
  double r_given_e_s(int e, int s) const {
    return conditional([](const Cell& c) { return c.r == 1; }, [e, s](const Cell& c) { return c.e == e && c.s == s; });
  }
  double s_given_e(int s, int e) const {
    return conditional([s](const Cell& c) { return c.s == s; }, [e](const Cell& c) { return c.e == e; });
  }

 private:
  std::vector<Cell> cells_;
};

inline std::mt19937_64 test_rng(std::uint64_t seed) { return std::mt19937_64(seed); }

}  // namespace causabound::test

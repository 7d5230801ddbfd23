// Brute-force bounds on the probability of causation.
//
// Each pair of binary potential outcomes (R(0), R(1)) or (M(0), M(1)) with
// known margins has a one-parameter joint law, the Frechet box. The oracle
// writes PC as an explicit function of those parameters by summing over the
// potential-outcome cells and optimizes it by enumerating box corners. It
// shares no arithmetic with the closed forms in bounds.hpp.
#pragma once

#include <array>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "causabound/bounds.hpp"
#include "causabound/probability.hpp"

namespace causabound {

// Joint law of a binary pair (V(0), V(1)) with P(V(0)=1) = p0 and
// P(V(1)=1) = p1, parameterized by q = P(V(0)=1, V(1)=1).
struct FrechetBox {
  double p0 = 0;
  double p1 = 0;
  double q_min = 0;
  double q_max = 0;

  // cells[v0][v1] = P(V(0)=v0, V(1)=v1) at the given q.
  std::array<std::array<double, 2>, 2> cells(double q) const;
  bool degenerate() const { return q_min == q_max; }
};

FrechetBox frechet_box(double p0, double p1);

struct OracleStratum {
  std::string label;  // "" or "S=k"
  double weight = 1;  // P(S=s | E=1)
  std::optional<FrechetBox> mediator;  // (M(0), M(1)) when a mediator is modelled
  FrechetBox response;                 // (R(0), R(1)) indexed by E, or by M when mediated
};

// Independent strata of potential-outcome boxes. The free parameters are
// laid out stratum by stratum, mediator box before response box.
struct OracleProblem {
  std::vector<OracleStratum> strata;

  std::size_t parameter_count() const;
  std::vector<std::string> parameter_labels() const;
};

// Builds the problem from a scenario taken at face value (Full mode).
OracleProblem build_oracle_problem(const Scenario& s);

// P(R(0)=0, R(1)=1 | E=1) at the given box parameters.
double causal_numerator(const OracleProblem& problem, std::span<const double> q);
// P(R=1 | E=1); depends on the margins only.
double response_probability(const OracleProblem& problem);
// PC at the given box parameters. Throws UndefinedPC when P(R=1|E=1) = 0.
double evaluate_pc(const OracleProblem& problem, std::span<const double> q);

struct VertexChoice {
  std::string box;  // e.g. "M|S=0"
  double q = 0;
};

struct OracleCertificate {
  PcInterval interval;
  std::vector<VertexChoice> argmin;
  std::vector<VertexChoice> argmax;
};

// Exact extremes of PC by corner enumeration. Ties keep the
// lexicographically smallest vertex.
OracleCertificate oracle_bounds(const OracleProblem& problem, AnalysisMode mode = AnalysisMode::Full);
OracleCertificate oracle_bounds(const Scenario& s, AnalysisMode mode = AnalysisMode::Full);

// Exhaustive uniform grid over every box (resolution points per box,
// Cartesian product within each stratum). Strata are separable, so the
// product over strata reduces to a sum of per-stratum extremes.
PcInterval grid_scan_bounds(const Scenario& s, int resolution, AnalysisMode mode = AnalysisMode::Full);
// OpenMP kernel; must agree bit-for-bit with grid_scan_bounds.
PcInterval grid_scan_bounds_parallel(const Scenario& s, int resolution, AnalysisMode mode = AnalysisMode::Full);

}  // namespace causabound

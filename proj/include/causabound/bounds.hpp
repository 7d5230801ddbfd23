// Closed-form bounds on the probability of causation
//
//   PC = P(R(0)=0, R(1)=1 | E=1, R=1)
//
// for the basic, complete-mediator, sufficient-covariate and
// mediator-with-covariate structures. Every function is pure and consumes
// only an ObservableSet.
#pragma once

#include <string>
#include <vector>

#include "causabound/probability.hpp"

namespace causabound {

enum class Method { ClosedForm, Oracle };

std::string to_string(Method m);
Method parse_method(const std::string& name);

struct PcInterval {
  double lower = 0;
  double upper = 1;
  Method method = Method::ClosedForm;
  AnalysisMode mode = AnalysisMode::Full;
  std::vector<std::string> notes;
};

// Builds an interval, clamping both ends into [0, 1]. Throws
// std::logic_error if lower exceeds upper by more than 1e-12.
PcInterval make_interval(double lower, double upper, Method method, AnalysisMode mode,
                         std::vector<std::string> notes = {});

/// Upper-bound numerator N for a complete mediator, selected by the
/// orderings of (a, b) and (c, d). Ties take the "<=" branch; both
/// branches agree there.
double mediator_numerator(const MediatorSummary& m);

PcInterval pc_bounds_basic(const ObservableSet& obs);
PcInterval pc_bounds_mediator(const ObservableSet& obs);
PcInterval pc_bounds_covariate(const ObservableSet& obs);
PcInterval pc_bounds_med_cov(const ObservableSet& obs);

// Dispatches on obs.formula.
PcInterval pc_bounds(const ObservableSet& obs);

}  // namespace causabound

#include "causabound/bounds.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace causabound {

std::string to_string(Method m) { return m == Method::ClosedForm ? "closed_form" : "oracle"; }

Method parse_method(const std::string& name) {
  if (name == "closed" || name == "closed_form") return Method::ClosedForm;
  if (name == "oracle") return Method::Oracle;
  throw InputError("unknown method \"" + name + "\"");
}

PcInterval make_interval(double lower, double upper, Method method, AnalysisMode mode,
                         std::vector<std::string> notes) {
  lower = std::clamp(lower, 0.0, 1.0);
  upper = std::clamp(upper, 0.0, 1.0);
  if (lower > upper) {
    if (lower - upper > 1e-12) throw std::logic_error("probability-of-causation interval is inverted");
    upper = lower;
  }
  return {lower, upper, method, mode, std::move(notes)};
}

double mediator_numerator(const MediatorSummary& m) {
  const auto [a, b, c, d] = m;
  if (a <= b) {
    return c <= d ? a * c + (1 - b) * (1 - d) : a * d + (1 - b) * (1 - c);
  }
  return c <= d ? b * c + (1 - a) * (1 - d) : b * d + (1 - a) * (1 - c);
}

namespace {

void require_defined(double p_r1_given_e1) {
  if (!(p_r1_given_e1 > 0)) {
    throw UndefinedPC("P(R=1|E=1) = 0: the probability of causation is undefined");
  }
}

std::vector<std::string> source_notes(const ObservableSet& obs) {
  std::vector<std::string> notes;
  notes.push_back("P(R=1|E=1) source: " + to_string(obs.source));
  if (obs.true_p_r1_given_e1) {
    char buf[96];
    std::snprintf(buf, sizeof buf, "joint-law P(R=1|E=1) = %.12g (not used by this bound)", *obs.true_p_r1_given_e1);
    notes.emplace_back(buf);
  }
  return notes;
}

// 1 - 1/RR with RR = p1/p0; +infinite RR gives 1.
double risk_ratio_lower(double p1, double p0, std::vector<std::string>& notes) {
  if (p0 == 0) {
    notes.emplace_back("P(R=1|E=0) = 0: risk ratio is infinite");
    return 1.0;
  }
  return std::max(0.0, 1.0 - p0 / p1);
}

struct StratumSums {
  double p_r1_given_e1 = 0;
  double delta = 0;
  double gamma = 0;
  double numerator = 0;  // sum_s w_s N_s, mediated strata only
};

StratumSums sum_strata(const ObservableSet& obs) {
  if (obs.strata.empty()) throw std::invalid_argument("observable set carries no strata");
  StratumSums sums;
  for (const auto& st : obs.strata) {
    sums.p_r1_given_e1 += st.weight * st.r1_e1;
    sums.delta += st.weight * std::max(0.0, st.r1_e1 - st.r1_e0);
    sums.gamma += st.weight * std::max(0.0, st.r1_e1 - (1.0 - st.r1_e0));
    if (st.mediator) sums.numerator += st.weight * mediator_numerator(*st.mediator);
  }
  return sums;
}

}  // namespace

PcInterval pc_bounds_basic(const ObservableSet& obs) {
  const double p1 = obs.p_r1_given_e1;
  const double p0 = obs.p_r1_given_e0;
  require_defined(p1);
  auto notes = source_notes(obs);
  const double lower = risk_ratio_lower(p1, p0, notes);
  const double upper = std::min(1.0, (1.0 - p0) / p1);
  return make_interval(lower, upper, Method::ClosedForm, obs.mode, std::move(notes));
}

PcInterval pc_bounds_mediator(const ObservableSet& obs) {
  if (!obs.mediator_summary) throw std::invalid_argument("observable set carries no mediator summary");
  const double p1 = obs.p_r1_given_e1;
  require_defined(p1);
  auto notes = source_notes(obs);
  const double lower = risk_ratio_lower(p1, obs.p_r1_given_e0, notes);
  const double upper = std::min(1.0, mediator_numerator(*obs.mediator_summary) / p1);
  return make_interval(lower, upper, Method::ClosedForm, obs.mode, std::move(notes));
}

PcInterval pc_bounds_covariate(const ObservableSet& obs) {
  const auto sums = sum_strata(obs);
  require_defined(sums.p_r1_given_e1);
  return make_interval(sums.delta / sums.p_r1_given_e1, 1.0 - sums.gamma / sums.p_r1_given_e1,
                       Method::ClosedForm, obs.mode, source_notes(obs));
}

PcInterval pc_bounds_med_cov(const ObservableSet& obs) {
  for (const auto& st : obs.strata) {
    if (!st.mediator) throw std::invalid_argument("stratum carries no mediator summary");
  }
  const auto sums = sum_strata(obs);
  require_defined(sums.p_r1_given_e1);
  return make_interval(sums.delta / sums.p_r1_given_e1, std::min(1.0, sums.numerator / sums.p_r1_given_e1),
                       Method::ClosedForm, obs.mode, source_notes(obs));
}

PcInterval pc_bounds(const ObservableSet& obs) {
  switch (obs.formula) {
    case Formula::Basic: return pc_bounds_basic(obs);
    case Formula::Mediator: return pc_bounds_mediator(obs);
    case Formula::Covariate: return pc_bounds_covariate(obs);
    case Formula::MediatorCovariate: return pc_bounds_med_cov(obs);
  }
  throw std::logic_error("unhandled formula");
}

}  // namespace causabound

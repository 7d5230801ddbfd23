#include "causabound/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

#include <omp.h>

namespace causabound {

std::array<std::array<double, 2>, 2> FrechetBox::cells(double q) const {
  return {{{1.0 - p0 - p1 + q, p1 - q}, {p0 - q, q}}};
}

FrechetBox frechet_box(double p0, double p1) {
  return {p0, p1, std::max(0.0, p0 + p1 - 1.0), std::min(p0, p1)};
}

std::size_t OracleProblem::parameter_count() const {
  std::size_t n = 0;
  for (const auto& st : strata) n += st.mediator ? 2 : 1;
  return n;
}

std::vector<std::string> OracleProblem::parameter_labels() const {
  std::vector<std::string> out;
  for (const auto& st : strata) {
    const std::string suffix = st.label.empty() ? "" : "|" + st.label;
    if (st.mediator) out.push_back("M" + suffix);
    out.push_back("R" + suffix);
  }
  return out;
}

OracleProblem build_oracle_problem(const Scenario& s) {
  require_valid(s);
  OracleProblem problem;
  auto table = [](const ProbabilityTable& t, Condition c) { return lookup(t, c, "table"); };

  if (!has_covariate(s.structure)) {
    OracleStratum st;
    if (has_mediator(s.structure)) {
      st.mediator = frechet_box(table(s.mediator, {.e = 0}), table(s.mediator, {.e = 1}));
      st.response = frechet_box(table(s.response, {.m = 0}), table(s.response, {.m = 1}));
    } else {
      st.response = frechet_box(table(s.response, {.e = 0}), table(s.response, {.e = 1}));
    }
    problem.strata.push_back(st);
    return problem;
  }

  // P(S=s | E=1) by Bayes over the strata that carry prior mass.
  double exposed = 0;
  for (std::size_t k = 0; k < s.covariate_prior.size(); ++k) {
    exposed += s.covariate_prior[k] * table(s.exposure, {.s = static_cast<int>(k)});
  }
  if (!(exposed > 0)) throw UndefinedConditional("P(E=1) = 0: stratum weights P(S=s|E=1) are undefined");

  for (std::size_t k = 0; k < s.covariate_prior.size(); ++k) {
    if (s.covariate_prior[k] == 0) continue;
    const int sk = static_cast<int>(k);
    OracleStratum st;
    st.label = "S=" + std::to_string(sk);
    st.weight = s.covariate_prior[k] * table(s.exposure, {.s = sk}) / exposed;
    if (has_mediator(s.structure)) {
      st.mediator = frechet_box(table(s.mediator, {.e = 0, .s = sk}), table(s.mediator, {.e = 1, .s = sk}));
      st.response = frechet_box(table(s.response, {.m = 0, .s = sk}), table(s.response, {.m = 1, .s = sk}));
    } else {
      st.response = frechet_box(table(s.response, {.e = 0, .s = sk}), table(s.response, {.e = 1, .s = sk}));
    }
    problem.strata.push_back(st);
  }
  return problem;
}

namespace {

// Sum over potential-outcome cells of one stratum. With a mediator the
// response under exposure e is R(M(e)); without one it is R(e).
// `want_causal` selects R(0)=0, R(1)=1; otherwise the event R(1)=1.
double stratum_probability(const OracleStratum& st, double q_m, double q_r, bool want_causal) {
  const auto pr = st.response.cells(q_r);
  const auto pm = st.mediator ? st.mediator->cells(q_m) : std::array<std::array<double, 2>, 2>{{{0, 1}, {0, 0}}};

  double total = 0;
  for (int m0 = 0; m0 < 2; ++m0) {
    for (int m1 = 0; m1 < 2; ++m1) {
      if (pm[m0][m1] == 0) continue;
      for (int r0 = 0; r0 < 2; ++r0) {
        for (int r1 = 0; r1 < 2; ++r1) {
          const int potential[2] = {r0, r1};
          const int under_control = potential[m0];
          const int under_exposure = potential[m1];
          const bool hit = want_causal ? (under_control == 0 && under_exposure == 1) : under_exposure == 1;
          if (hit) total += pm[m0][m1] * pr[r0][r1];
        }
      }
    }
  }
  return total;
}

std::vector<double> corners(const FrechetBox& box) {
  if (box.degenerate()) return {box.q_min};
  return {box.q_min, box.q_max};
}

double response_or_throw(const OracleProblem& problem) {
  const double p = response_probability(problem);
  if (!(p > 0)) throw UndefinedPC("P(R=1|E=1) = 0: the probability of causation is undefined");
  return p;
}

struct StratumExtremes {
  double min_value = std::numeric_limits<double>::infinity();
  double max_value = -std::numeric_limits<double>::infinity();
  std::array<double, 2> argmin{};  // (q_m, q_r)
  std::array<double, 2> argmax{};
};

template <typename Values>
StratumExtremes scan_stratum(const OracleStratum& st, const Values& m_values, const Values& r_values) {
  StratumExtremes ext;
  for (double qm : m_values) {
    for (double qr : r_values) {
      const double v = stratum_probability(st, qm, qr, true);
      if (v < ext.min_value) {
        ext.min_value = v;
        ext.argmin = {qm, qr};
      }
      if (v > ext.max_value) {
        ext.max_value = v;
        ext.argmax = {qm, qr};
      }
    }
  }
  return ext;
}

std::vector<double> grid(const FrechetBox& box, int resolution) {
  if (box.degenerate()) return {box.q_min};
  std::vector<double> out(static_cast<std::size_t>(resolution));
  for (int i = 0; i < resolution; ++i) {
    out[static_cast<std::size_t>(i)] =
        std::lerp(box.q_min, box.q_max, static_cast<double>(i) / static_cast<double>(resolution - 1));
  }
  return out;
}

void check_resolution(int resolution) {
  if (resolution < 2) throw std::invalid_argument("grid resolution must be at least 2");
}

PcInterval grid_interval(const OracleProblem& problem, const std::vector<double>& mins,
                         const std::vector<double>& maxs, AnalysisMode mode, int resolution) {
  const double denominator = response_or_throw(problem);
  double lo = 0;
  double hi = 0;
  for (std::size_t k = 0; k < problem.strata.size(); ++k) {
    lo += problem.strata[k].weight * mins[k];
    hi += problem.strata[k].weight * maxs[k];
  }
  return make_interval(lo / denominator, hi / denominator, Method::Oracle, mode,
                       {"grid scan, " + std::to_string(resolution) + " points per box"});
}

}  // namespace

double causal_numerator(const OracleProblem& problem, std::span<const double> q) {
  if (q.size() != problem.parameter_count()) throw std::invalid_argument("wrong number of box parameters");
  double total = 0;
  std::size_t at = 0;
  for (const auto& st : problem.strata) {
    const double qm = st.mediator ? q[at++] : 0.0;
    const double qr = q[at++];
    total += st.weight * stratum_probability(st, qm, qr, true);
  }
  return total;
}

double response_probability(const OracleProblem& problem) {
  double total = 0;
  for (const auto& st : problem.strata) {
    const double qm = st.mediator ? st.mediator->q_min : 0.0;
    total += st.weight * stratum_probability(st, qm, st.response.q_min, false);
  }
  return total;
}

double evaluate_pc(const OracleProblem& problem, std::span<const double> q) {
  return causal_numerator(problem, q) / response_or_throw(problem);
}

OracleCertificate oracle_bounds(const OracleProblem& problem, AnalysisMode mode) {
  response_or_throw(problem);

  std::vector<double> arg_lo;
  std::vector<double> arg_hi;
  for (const auto& st : problem.strata) {
    const auto m_corners = st.mediator ? corners(*st.mediator) : std::vector<double>{0.0};
    const auto ext = scan_stratum(st, m_corners, corners(st.response));
    if (st.mediator) {
      arg_lo.push_back(ext.argmin[0]);
      arg_hi.push_back(ext.argmax[0]);
    }
    arg_lo.push_back(ext.argmin[1]);
    arg_hi.push_back(ext.argmax[1]);
  }

  OracleCertificate cert;
  cert.interval = make_interval(evaluate_pc(problem, arg_lo), evaluate_pc(problem, arg_hi), Method::Oracle, mode,
                                {"exact corner enumeration over Frechet boxes"});
  const auto labels = problem.parameter_labels();
  for (std::size_t i = 0; i < labels.size(); ++i) {
    cert.argmin.push_back({labels[i], arg_lo[i]});
    cert.argmax.push_back({labels[i], arg_hi[i]});
  }
  return cert;
}

OracleCertificate oracle_bounds(const Scenario& s, AnalysisMode mode) {
  return oracle_bounds(build_oracle_problem(analyst_view(s, mode)), mode);
}

PcInterval grid_scan_bounds(const Scenario& s, int resolution, AnalysisMode mode) {
  check_resolution(resolution);
  const auto problem = build_oracle_problem(analyst_view(s, mode));
  std::vector<double> mins;
  std::vector<double> maxs;
  for (const auto& st : problem.strata) {
    const auto m_grid = st.mediator ? grid(*st.mediator, resolution) : std::vector<double>{0.0};
    const auto ext = scan_stratum(st, m_grid, grid(st.response, resolution));
    mins.push_back(ext.min_value);
    maxs.push_back(ext.max_value);
  }
  return grid_interval(problem, mins, maxs, mode, resolution);
}

PcInterval grid_scan_bounds_parallel(const Scenario& s, int resolution, AnalysisMode mode) {
  check_resolution(resolution);
  const auto problem = build_oracle_problem(analyst_view(s, mode));
  std::vector<double> mins;
  std::vector<double> maxs;
  for (const auto& st : problem.strata) {
    const auto m_grid = st.mediator ? grid(*st.mediator, resolution) : std::vector<double>{0.0};
    const auto r_grid = grid(st.response, resolution);
    const long outer = static_cast<long>(m_grid.size());
    const long inner = static_cast<long>(r_grid.size());

    double lo = std::numeric_limits<double>::infinity();
    double hi = -std::numeric_limits<double>::infinity();
#pragma omp parallel for collapse(2) reduction(min : lo) reduction(max : hi) schedule(static)
    for (long i = 0; i < outer; ++i) {
      for (long j = 0; j < inner; ++j) {
        const double v = stratum_probability(st, m_grid[static_cast<std::size_t>(i)],
                                             r_grid[static_cast<std::size_t>(j)], true);
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    mins.push_back(lo);
    maxs.push_back(hi);
  }
  return grid_interval(problem, mins, maxs, mode, resolution);
}

}  // namespace causabound

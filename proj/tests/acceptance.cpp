// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.
#include <sys/wait.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "causabound/audit.hpp"
#include "causabound/bounds.hpp"
#include "causabound/commands.hpp"
#include "causabound/oracle.hpp"
#include "causabound/report.hpp"
#include "causabound/sweep.hpp"

using namespace causabound;
namespace fs = std::filesystem;

namespace {

constexpr double kMethodTolerance = 1e-9;
constexpr double kDisplayTolerance = 5e-3;
constexpr double kRefinementSlack = 1e-12;
constexpr double kGridTolerance = 1e-9;
constexpr std::uint64_t kSeed = 42;
constexpr int kTrials = 1000;
constexpr int kGridScenarios = 200;
constexpr int kGridResolution = 201;

const fs::path kData = CAUSABOUND_DATA_DIR;

struct Outcome {
  bool pass = true;
  std::string detail;
  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail = what;
    pass = pass && ok;
  }
};

int cli_status(const std::string& args) {
  const std::string command = std::string("\"") + CAUSABOUND_CLI + "\" " + args + " >/dev/null 2>&1";
  const int raw = std::system(command.c_str());
  return WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
}

template <typename... Args>
std::string fmt(const char* pattern, Args... args) {
  char buf[160];
  std::snprintf(buf, sizeof buf, pattern, args...);
  return buf;
}

const AuditEntry& entry(const AuditReport& r, AnalysisMode mode, std::size_t* index = nullptr) {
  for (std::size_t i = 0; i < r.entries.size(); ++i) {
    if (r.entries[i].mode == mode) {
      if (index) *index = i;
      return r.entries[i];
    }
  }
  throw std::runtime_error("missing audit entry " + to_string(mode));
}

Outcome example1() {
  Outcome o;
  BoundOptions options;
  options.input = kData / "example1.csv";
  options.methods = {Method::ClosedForm, Method::Oracle};
  std::ostringstream out;
  std::ostringstream err;
  o.require(cmd_bound(options, out, err) == kExitOk, "bound failed: " + err.str());
  if (!o.pass) return o;
  const auto doc = nlohmann::json::parse(out.str());
  for (const auto& iv : doc["intervals"]) {
    const double lo = iv["lower"];
    const double hi = iv["upper"];
    o.require(lo == 0.6 && hi == 1.0, fmt("got [%.17g, %.17g]", lo, hi));
    o.require(iv["display"]["lower"] == "0.60" && iv["display"]["upper"] == "1.00", "display differs");
  }
  o.detail = o.pass ? "[0.60, 1.00] from counts 30/70/12/88, both methods" : o.detail;
  return o;
}

Outcome example2() {
  Outcome o;
  const auto s = load_input(kData / "example2.json").scenario;
  const auto closed = pc_bounds(derive_observables(s, AnalysisMode::Full));
  const auto oracle = oracle_bounds(s).interval;
  o.require(std::abs(closed.lower - oracle.lower) <= kMethodTolerance, "lower: methods disagree");
  o.require(std::abs(closed.upper - oracle.upper) <= kMethodTolerance, "upper: methods disagree");
  o.require(std::abs(closed.lower - 0.60) <= kDisplayTolerance, "lower far from 0.60");
  o.require(std::abs(closed.upper - 0.76) <= kDisplayTolerance, "upper far from 0.76");
  o.require(std::abs(closed.upper - 0.7583333333333) <= kMethodTolerance, "upper is not 0.7583...");
  if (o.pass) o.detail = fmt("closed/oracle [%.12g, %.12g]", closed.lower, closed.upper);
  return o;
}

Outcome example3() {
  Outcome o;
  const auto s = load_input(kData / "example3.json").scenario;
  const auto report = run_audit(s, {Method::ClosedForm});
  std::size_t i = 0;
  std::size_t j = 0;
  const auto& full = entry(report, AnalysisMode::Full, &i);
  const auto& blind = entry(report, AnalysisMode::IgnoreCovariate, &j);
  o.require(full.interval && blind.interval, "interval missing");
  if (!o.pass) return o;
  o.require(std::abs(full.interval->lower - 12.0 / 17) <= kMethodTolerance, "full lower");
  o.require(std::abs(full.interval->upper - 1.0) <= kMethodTolerance, "full upper");
  o.require(std::abs(blind.interval->lower) <= kMethodTolerance, "ignore-covariate lower");
  o.require(std::abs(blind.interval->upper - 8.0 / 17) <= kMethodTolerance, "ignore-covariate upper");
  o.require(report.relations[i][j] == Relation::Disjoint, "not flagged disjoint");
  o.require(report.headline, "headline not set");
  if (o.pass) {
    o.detail = fmt("full [%.5f, %.5f]", full.interval->lower, full.interval->upper) +
               fmt(" vs ignore-covariate [%.5f, %.5f], disjoint", blind.interval->lower, blind.interval->upper);
  }
  return o;
}

Outcome example4() {
  Outcome o;
  const auto s = load_input(kData / "example4.json").scenario;
  const auto report = run_audit(s, {Method::ClosedForm});
  struct Want {
    AnalysisMode mode;
    const char* lower;
    const char* upper;
    std::optional<Relation> vs_full;
  };
  const Want wants[] = {{AnalysisMode::Full, "0.00", "0.21", std::nullopt},
                        {AnalysisMode::IgnoreMediator, "0.00", "0.53", Relation::Nested},
                        {AnalysisMode::IgnoreCovariate, "0.24", "0.59", Relation::Disjoint},
                        {AnalysisMode::IgnoreBoth, "0.29", "0.97", Relation::Disjoint}};
  std::size_t full_index = 0;
  const auto& full = entry(report, AnalysisMode::Full, &full_index);
  for (const auto& w : wants) {
    std::size_t k = 0;
    const auto& e = entry(report, w.mode, &k);
    o.require(e.interval.has_value(), to_string(w.mode) + " failed");
    if (!e.interval) continue;
    o.require(display(e.interval->lower) == w.lower && display(e.interval->upper) == w.upper,
              to_string(w.mode) + " displays [" + display(e.interval->lower) + ", " + display(e.interval->upper) + "]");
    if (w.vs_full) o.require(report.relations[full_index][k] == *w.vs_full, to_string(w.mode) + " relation");
  }
  if (full.interval) {
    const auto& wide = entry(report, AnalysisMode::IgnoreMediator).interval;
    o.require(wide && wide->lower <= full.interval->lower && full.interval->upper <= wide->upper,
              "ignore-mediator does not contain full");
  }
  if (o.pass) o.detail = "[0.00,0.21] [0.00,0.53] [0.24,0.59] [0.29,0.97]; nested, disjoint, disjoint";
  return o;
}

Outcome oracle_equivalence() {
  Outcome o;
  const auto summary = oracle_sweep_parallel(kSeed, kTrials);
  o.require(summary.passed(), fmt("max discrepancy %.3e", summary.max_discrepancy()));
  const int status = cli_status("oracle-check --seed 42 --trials 1000");
  o.require(status == 0, "oracle-check exited " + std::to_string(status));
  if (o.pass) o.detail = fmt("%d scenarios per structure, max |closed - oracle| = %.3e, CLI exit 0", kTrials, summary.max_discrepancy());
  return o;
}

Outcome refinement() {
  Outcome o;
  int checked = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto med_s = random_scenario(Structure::Mediator, kSeed, trial);
    const auto obs = derive_observables(med_s, AnalysisMode::Full);
    const auto med = pc_bounds_mediator(obs);
    const auto basic = pc_bounds_basic(obs);
    o.require(med.upper <= basic.upper + kRefinementSlack, "mediator upper above basic, trial " + std::to_string(trial));
    o.require(med.lower == basic.lower, "mediator lower differs from basic, trial " + std::to_string(trial));

    const auto mc_s = random_scenario(Structure::MediatorCovariate, kSeed, trial);
    const auto mc = pc_bounds(derive_observables(mc_s, AnalysisMode::Full));
    const auto cov = pc_bounds(derive_observables(mc_s, AnalysisMode::IgnoreMediator));
    o.require(cov.lower <= mc.lower + kRefinementSlack && mc.upper <= cov.upper + kRefinementSlack,
              "med-cov not inside covariate, trial " + std::to_string(trial));
    checked += 2;
  }
  if (o.pass) o.detail = std::to_string(checked) + " scenarios, seed 42";
  return o;
}

Outcome risk_ratio_threshold() {
  Outcome o;
  int above = 0;
  for (int trial = 0; trial < kTrials; ++trial) {
    const auto s = random_scenario(Structure::Basic, kSeed, trial);
    const auto obs = derive_observables(s, AnalysisMode::Full);
    const bool lower_above_half = pc_bounds(obs).lower > 0.5;
    const bool rr_above_two = obs.risk_ratio > 2;
    o.require(lower_above_half == rr_above_two, "threshold broken, trial " + std::to_string(trial));
    above += rr_above_two;
  }
  Scenario strong;
  strong.structure = Structure::Basic;
  strong.response = {{{.e = 1}, 0.334}, {{.e = 0}, 0.01}};
  const auto obs = derive_observables(strong, AnalysisMode::Full);
  const auto pc = pc_bounds(obs);
  o.require(obs.risk_ratio >= 33.4 && pc.lower >= 0.97, fmt("RR %.4g gives lower %.4g", obs.risk_ratio, pc.lower));
  if (o.pass) {
    o.detail = std::to_string(kTrials) + " basic scenarios (" + std::to_string(above) + " with RR > 2)" +
               fmt("; RR %.1f gives lower %.4f", obs.risk_ratio, pc.lower);
  }
  return o;
}

Outcome frechet_range() {
  Outcome o;
  const auto s = load_input(kData / "example1.csv").scenario;
  const auto problem = build_oracle_problem(s);
  const auto& box = problem.strata.at(0).response;
  const double at_max = 100 * box.cells(box.q_max)[0][1];
  const double at_min = 100 * box.cells(box.q_min)[0][1];
  o.require(at_max == 18.0 && at_min == 30.0, fmt("range [%.17g, %.17g]", at_max, at_min));
  if (o.pass) o.detail = "count range [18, 30]";
  return o;
}

Outcome corner_sufficiency() {
  Outcome o;
  double worst = 0;
  for (int trial = 0; trial < kGridScenarios; ++trial) {
    const auto s = random_scenario(Structure::Mediator, kSeed, trial);
    const auto corners = oracle_bounds(s).interval;
    const auto grid = grid_scan_bounds_parallel(s, kGridResolution);
    const double gain = std::max(corners.lower - grid.lower, grid.upper - corners.upper);
    worst = std::max(worst, gain);
    o.require(gain <= kGridTolerance, fmt("grid beats corners by %.3e", gain));
  }
  if (o.pass) o.detail = fmt("%d mediator scenarios at resolution 201, largest grid gain %.3e", kGridScenarios, worst);
  return o;
}

}  // namespace

int main() {
  const std::pair<const char*, std::function<Outcome()>> criteria[] = {
      {"AC1 example 1 bound from counts", example1},
      {"AC2 example 2 mediator, closed form vs oracle", example2},
      {"AC3 example 3 covariate audit", example3},
      {"AC4 example 4 four analyses and relations", example4},
      {"AC5 oracle equivalence sweep", oracle_equivalence},
      {"AC6 refinement properties", refinement},
      {"AC7 risk-ratio threshold", risk_ratio_threshold},
      {"AC8 Frechet count range", frechet_range},
      {"AC9 corner sufficiency", corner_sufficiency},
  };

  int failures = 0;
  for (const auto& [name, run] : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = run();
    } catch (const std::exception& e) {
      outcome.pass = false;
      outcome.detail = std::string("exception: ") + e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    std::printf("[%s] %-48s %s (%.0f ms)\n", outcome.pass ? "PASS" : "FAIL", name, outcome.detail.c_str(), ms);
    failures += !outcome.pass;
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failures, std::size(criteria));
  return failures == 0 ? 0 : 1;
}

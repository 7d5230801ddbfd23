#include "causabound/audit.hpp"

#include "causabound/scenario_io.hpp"

namespace causabound {

namespace {
constexpr double kNestingSlack = 1e-12;

bool contains(const PcInterval& outer, const PcInterval& inner) {
  return outer.lower <= inner.lower + kNestingSlack && inner.upper <= outer.upper + kNestingSlack;
}
}  // namespace

std::string to_string(Relation r) {
  switch (r) {
    case Relation::Nested: return "nested";
    case Relation::Overlapping: return "overlapping";
    case Relation::Disjoint: return "disjoint";
  }
  return "?";
}

Relation relate(const PcInterval& x, const PcInterval& y) {
  if (x.upper < y.lower || y.upper < x.lower) return Relation::Disjoint;
  if (contains(x, y) || contains(y, x)) return Relation::Nested;
  return Relation::Overlapping;
}

AuditEntry evaluate_entry(const Scenario& s, AnalysisMode mode, Method method) {
  AuditEntry entry{mode, method, std::nullopt, std::nullopt, {}};
  try {
    if (method == Method::ClosedForm) {
      entry.interval = pc_bounds(derive_observables(s, mode));
    } else {
      entry.certificate = oracle_bounds(s, mode);
      entry.interval = entry.certificate->interval;
    }
  } catch (const CausaboundError& e) {
    entry.error = e.what();
  }
  return entry;
}

AuditReport run_audit(const Scenario& s, const std::set<Method>& methods) {
  require_valid(s);
  AuditReport report;
  report.scenario_digest = sha256_hex(scenario_to_json(s).dump());

  for (auto mode : applicable_modes(s.structure)) {
    for (auto method : methods) report.entries.push_back(evaluate_entry(s, mode, method));
  }

  const std::size_t n = report.entries.size();
  report.relations.assign(n, std::vector<std::optional<Relation>>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      const auto& a = report.entries[i];
      const auto& b = report.entries[j];
      if (!a.interval || !b.interval) continue;
      const Relation r = relate(*a.interval, *b.interval);
      report.relations[i][j] = r;
      if (a.mode == AnalysisMode::Full && b.mode != AnalysisMode::Full && r == Relation::Disjoint) {
        report.headline = true;
      }
    }
  }
  return report;
}

}  // namespace causabound

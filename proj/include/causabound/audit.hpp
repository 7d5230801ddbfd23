// Correct vs. deliberately mis-specified analyses of one scenario.
#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "causabound/bounds.hpp"
#include "causabound/oracle.hpp"
#include "causabound/probability.hpp"

namespace causabound {

enum class Relation { Nested, Overlapping, Disjoint };

std::string to_string(Relation r);

// Closed intervals: disjoint iff one ends strictly before the other
// starts; nested iff one contains both endpoints of the other (1e-12 slack).
Relation relate(const PcInterval& x, const PcInterval& y);

struct AuditEntry {
  AnalysisMode mode = AnalysisMode::Full;
  Method method = Method::ClosedForm;
  std::optional<PcInterval> interval;
  std::optional<OracleCertificate> certificate;  // oracle entries only
  std::string error;                             // set iff interval is empty
};

struct AuditReport {
  std::string scenario_digest;  // SHA-256 of the canonical scenario JSON
  std::vector<AuditEntry> entries;
  // relations[i][j]; empty when either entry failed.
  std::vector<std::vector<std::optional<Relation>>> relations;
  bool headline = false;  // some non-Full interval is disjoint from a Full one
};

// Runs every analysis mode applicable to the structure with each requested
// method. Per-mode failures are recorded in the entry, not thrown.
AuditReport run_audit(const Scenario& s, const std::set<Method>& methods);

// Interval for one mode and method, the way run_audit computes it.
AuditEntry evaluate_entry(const Scenario& s, AnalysisMode mode, Method method);

}  // namespace causabound

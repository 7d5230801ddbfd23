#include "causabound/commands.hpp"

#include <cstdio>
#include <ostream>

#include "causabound/audit.hpp"
#include "causabound/oracle.hpp"
#include "causabound/report.hpp"
#include "causabound/scenario_io.hpp"
#include "causabound/sweep.hpp"

namespace causabound {

OutputFormat parse_output_format(const std::string& name) {
  if (name == "json") return OutputFormat::Json;
  if (name == "csv") return OutputFormat::Csv;
  throw InputError("unknown output format \"" + name + "\"");
}

std::set<Method> parse_methods(const std::string& name) {
  if (name == "both") return {Method::ClosedForm, Method::Oracle};
  return {parse_method(name)};
}

namespace {

void emit(const nlohmann::json& doc, std::ostream& out) { out << doc.dump(2) << '\n'; }

}  // namespace

int cmd_bound(const BoundOptions& options, std::ostream& out, std::ostream& err) {
  InputDocument input;
  std::vector<AuditEntry> entries;
  try {
    input = load_input(options.input);
    if (!mode_applies(input.scenario.structure, options.mode)) {
      throw InputError("mode " + to_string(options.mode) + " does not apply to a " +
                       to_string(input.scenario.structure) + " scenario");
    }
    for (auto method : options.methods) {
      AuditEntry entry{options.mode, method, std::nullopt, std::nullopt, {}};
      if (method == Method::ClosedForm) {
        entry.interval = pc_bounds(derive_observables(input.scenario, options.mode));
      } else {
        entry.certificate = oracle_bounds(input.scenario, options.mode);
        entry.interval = entry.certificate->interval;
      }
      entries.push_back(std::move(entry));
    }
  } catch (const InputError& e) {
    err << "causabound: " << e.what() << '\n';
    return kExitInputError;
  } catch (const CausaboundError& e) {
    err << "causabound: " << e.what() << '\n';
    return kExitUndefined;
  }

  if (options.format == OutputFormat::Csv) {
    out << entries_csv(entries);
  } else {
    emit(report_document("bound", input, entries), out);
  }
  return kExitOk;
}

int cmd_audit(const AuditOptions& options, std::ostream& out, std::ostream& err) {
  InputDocument input;
  AuditReport audit;
  try {
    input = load_input(options.input);
    audit = run_audit(input.scenario, options.methods);
  } catch (const InputError& e) {
    err << "causabound: " << e.what() << '\n';
    return kExitInputError;
  }
  for (const auto& e : audit.entries) {
    if (!e.interval) err << "causabound: " << to_string(e.mode) << "/" << to_string(e.method) << ": " << e.error << '\n';
  }

  if (options.format == OutputFormat::Csv) {
    out << entries_csv(audit.entries);
  } else {
    emit(report_document("audit", input, audit.entries, &audit), out);
  }
  return kExitOk;
}

int cmd_estimate(const std::filesystem::path& input, std::optional<Structure> structure, std::ostream& out,
                 std::ostream& err) {
  try {
    const auto table = parse_contingency_csv(read_file(input));
    if (const auto violations = validate_table(table); !violations.empty()) {
      throw InputError("invalid contingency table: " + describe(violations));
    }
    emit(scenario_to_json(estimate_from_counts(table, structure.value_or(infer_structure(table)))), out);
  } catch (const InputError& e) {
    err << "causabound: " << e.what() << '\n';
    return kExitInputError;
  }
  return kExitOk;
}

int cmd_oracle_check(const OracleCheckOptions& options, std::ostream& out, std::ostream& err) {
  if (options.trials < 1) {
    err << "causabound: --trials must be at least 1\n";
    return kExitInputError;
  }
  const auto summary = options.serial ? oracle_sweep(options.seed, options.trials)
                                      : oracle_sweep_parallel(options.seed, options.trials);

  char line[160];
  out << "oracle-check seed=" << options.seed << " trials=" << options.trials << " per structure\n";
  std::snprintf(line, sizeof line,
                "generator: uniform probabilities, 2-3 strata, scenarios with a denominator below %g rejected\n",
                kMinDenominator);
  out << line;
  for (const auto& s : summary.structures) {
    std::snprintf(line, sizeof line, "%-20s max |closed - oracle| = %.6e (trial %d)\n", to_string(s.structure).c_str(),
                  s.max_discrepancy, s.worst_trial);
    out << line;
  }
  std::snprintf(line, sizeof line, "max discrepancy %.6e, tolerance %g: %s\n", summary.max_discrepancy(),
                kEquivalenceTolerance, summary.passed() ? "PASS" : "FAIL");
  out << line;

  if (!summary.passed()) {
    const auto& worst = summary.worst();
    out << "offending scenario (" << to_string(worst.structure) << ", trial " << worst.worst_trial << "):\n";
    emit(scenario_to_json(random_scenario(worst.structure, options.seed, worst.worst_trial)), out);
    return kExitCheckFailed;
  }
  return kExitOk;
}

int cmd_demo(bool json, std::ostream& out, std::ostream& err) {
  const auto outcome = run_demo(builtin_demo_cases());
  if (json) {
    emit(outcome.bundle, out);
  } else {
    out << outcome.table;
  }
  for (const auto& m : outcome.mismatches) err << "mismatch: " << m << '\n';
  return outcome.passed() ? kExitOk : kExitCheckFailed;
}

}  // namespace causabound

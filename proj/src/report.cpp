#include "causabound/report.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

#include "causabound/scenario_io.hpp"

namespace causabound {

using nlohmann::json;

double round_significant(double x, int digits) {
  if (!std::isfinite(x)) return x;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, x);
  return std::strtod(buf, nullptr);
}

std::string display(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.*f", kDisplayDecimals, x);
  return buf;
}

InputDocument load_input_text(std::string_view text, std::string_view format) {
  InputDocument doc;
  doc.format = std::string(format);
  doc.sha256 = sha256_hex(text);
  if (format == "scenario_json") {
    doc.scenario = parse_scenario(text);
  } else if (format == "contingency_csv") {
    doc.counts = parse_contingency_csv(text);
    if (const auto violations = validate_table(*doc.counts); !violations.empty()) {
      throw InputError("invalid contingency table: " + describe(violations));
    }
    doc.scenario = estimate_from_counts(*doc.counts, infer_structure(*doc.counts));
  } else {
    throw InputError("unsupported input format " + std::string(format));
  }
  return doc;
}

InputDocument load_input(const std::filesystem::path& path) {
  const auto ext = path.extension().string();
  if (ext == ".json") return load_input_text(read_file(path), "scenario_json");
  if (ext == ".csv") return load_input_text(read_file(path), "contingency_csv");
  throw InputError("cannot tell the input format of " + path.string() + " (expected .json or .csv)");
}

json interval_json(const PcInterval& interval) {
  return {
      {"mode", to_string(interval.mode)},
      {"method", to_string(interval.method)},
      {"lower", round_significant(interval.lower)},
      {"upper", round_significant(interval.upper)},
      {"display", {{"lower", display(interval.lower)}, {"upper", display(interval.upper)}}},
      {"notes", interval.notes},
  };
}

json entry_json(const AuditEntry& entry) {
  if (!entry.interval) {
    return {{"mode", to_string(entry.mode)}, {"method", to_string(entry.method)}, {"status", "undefined"},
            {"error", entry.error}};
  }
  json out = interval_json(*entry.interval);
  out["status"] = "ok";
  if (entry.certificate) {
    auto vertices = [](const std::vector<VertexChoice>& choices) {
      json arr = json::array();
      for (const auto& v : choices) arr.push_back({{"box", v.box}, {"q", round_significant(v.q)}});
      return arr;
    };
    out["certificate"] = {{"argmin", vertices(entry.certificate->argmin)},
                          {"argmax", vertices(entry.certificate->argmax)}};
  }
  return out;
}

json audit_json(const AuditReport& report) {
  json labels = json::array();
  for (const auto& e : report.entries) labels.push_back(to_string(e.mode) + "/" + to_string(e.method));
  json matrix = json::array();
  for (const auto& row : report.relations) {
    json r = json::array();
    for (const auto& cell : row) r.push_back(cell ? json(to_string(*cell)) : json(nullptr));
    matrix.push_back(r);
  }
  return {{"scenario_digest", report.scenario_digest},
          {"labels", labels},
          {"relations", matrix},
          {"headline_inconsistent", report.headline}};
}

json report_document(const std::string& command, const InputDocument& input, const std::vector<AuditEntry>& entries,
                     const AuditReport* audit) {
  json intervals = json::array();
  for (const auto& e : entries) intervals.push_back(entry_json(e));
  json doc = {
      {"tool", {{"name", kToolName}, {"version", kToolVersion}}},
      {"command", command},
      {"input", {{"format", input.format}, {"sha256", input.sha256}}},
      {"scenario", scenario_to_json(input.scenario)},
      {"intervals", intervals},
      {"rounding", {{"display_decimals", kDisplayDecimals}, {"significant_digits", kSignificantDigits}}},
  };
  if (audit) doc["audit"] = audit_json(*audit);
  return doc;
}

std::string entries_csv(const std::vector<AuditEntry>& entries) {
  std::string out = "mode,method,status,lower,upper,lower_display,upper_display\n";
  char buf[64];
  for (const auto& e : entries) {
    out += to_string(e.mode) + "," + to_string(e.method) + ",";
    if (!e.interval) {
      out += "undefined,,,,\n";
      continue;
    }
    out += "ok,";
    std::snprintf(buf, sizeof buf, "%.*g,", kSignificantDigits, e.interval->lower);
    out += buf;
    std::snprintf(buf, sizeof buf, "%.*g,", kSignificantDigits, e.interval->upper);
    out += buf;
    out += display(e.interval->lower) + "," + display(e.interval->upper) + "\n";
  }
  return out;
}

// ---------------------------------------------------------------------------
// Demo

std::vector<DemoCase> builtin_demo_cases() {
  using M = AnalysisMode;
  std::vector<DemoCase> cases;

  // Randomized trial: 30/100 exposed and 12/100 unexposed with the outcome.
  ContingencyTable trial;
  trial.variables = {'E', 'R'};
  trial.counts = {{{1, 1}, 30}, {{1, 0}, 70}, {{0, 1}, 12}, {{0, 0}, 88}};
  cases.push_back({"example-1", estimate_from_counts(trial, Structure::Basic), {{M::Full, "0.60", "1.00"}}});

  Scenario mediated;
  mediated.structure = Structure::Mediator;
  mediated.mediator = {{{.e = 1}, 0.75}, {{.e = 0}, 0.975}};
  mediated.response = {{{.m = 1}, 0.1}, {{.m = 0}, 0.9}};
  cases.push_back({"example-2", mediated, {{M::Full, "0.60", "0.76"}, {M::IgnoreMediator, "0.60", "1.00"}}});

  Scenario confounded;
  confounded.structure = Structure::Covariate;
  confounded.covariate_prior = {0.5, 0.5};
  confounded.exposure = {{{.s = 0}, 0.8}, {{.s = 1}, 0.2}};
  confounded.response = {
      {{.e = 1, .s = 0}, 0.8}, {{.e = 0, .s = 0}, 0.2}, {{.e = 1, .s = 1}, 0.2}, {{.e = 0, .s = 1}, 0.8}};
  cases.push_back({"example-3", confounded, {{M::Full, "0.71", "1.00"}, {M::IgnoreCovariate, "0.00", "0.47"}}});

  Scenario both;
  both.structure = Structure::MediatorCovariate;
  both.covariate_prior = {0.1, 0.9};
  both.exposure = {{{.s = 0}, 0.9}, {{.s = 1}, 0.1}};
  both.mediator = {
      {{.e = 0, .s = 0}, 0.1}, {{.e = 0, .s = 1}, 0.8}, {{.e = 1, .s = 0}, 0.3}, {{.e = 1, .s = 1}, 0.8}};
  both.response = {
      {{.m = 0, .s = 0}, 0.8}, {{.m = 0, .s = 1}, 0.9}, {{.m = 1, .s = 0}, 0.7}, {{.m = 1, .s = 1}, 0.3}};
  cases.push_back({"example-4",
                   both,
                   {{M::Full, "0.00", "0.21"},
                    {M::IgnoreMediator, "0.00", "0.53"},
                    {M::IgnoreCovariate, "0.24", "0.59"},
                    {M::IgnoreBoth, "0.29", "0.97"}}});
  return cases;
}

DemoOutcome run_demo(const std::vector<DemoCase>& cases) {
  DemoOutcome outcome;
  outcome.bundle = {{"tool", {{"name", kToolName}, {"version", kToolVersion}}},
                    {"rounding", {{"display_decimals", kDisplayDecimals}, {"significant_digits", kSignificantDigits}}},
                    {"examples", json::array()}};

  char line[256];
  std::snprintf(line, sizeof line, "%-10s %-17s %-12s %-13s %-13s %-32s %s\n", "example", "mode", "method", "expected",
                "computed", "full precision", "match");
  outcome.table += line;

  for (const auto& c : cases) {
    json example = {{"name", c.name}, {"scenario", scenario_to_json(c.scenario)}, {"intervals", json::array()}};
    for (const auto& expected : c.expected) {
      for (auto method : {Method::ClosedForm, Method::Oracle}) {
        const AuditEntry entry = evaluate_entry(c.scenario, expected.mode, method);
        const std::string want = "[" + expected.lower + ", " + expected.upper + "]";
        std::string got = "error";
        std::string precise = entry.error;
        if (entry.interval) {
          got = "[" + display(entry.interval->lower) + ", " + display(entry.interval->upper) + "]";
          char buf[80];
          std::snprintf(buf, sizeof buf, "[%.12g, %.12g]", entry.interval->lower, entry.interval->upper);
          precise = buf;
        }
        const bool match = got == want;
        std::snprintf(line, sizeof line, "%-10s %-17s %-12s %-13s %-13s %-32s %s\n", c.name.c_str(),
                      to_string(expected.mode).c_str(), to_string(method).c_str(), want.c_str(), got.c_str(),
                      precise.c_str(), match ? "ok" : "MISMATCH");
        outcome.table += line;
        if (!match) {
          outcome.mismatches.push_back(c.name + " " + to_string(expected.mode) + " " + to_string(method) +
                                       ": expected " + want + ", got " + got + " " + precise);
        }

        json item = entry_json(entry);
        item["expected_display"] = {{"lower", expected.lower}, {"upper", expected.upper}};
        item["match"] = match;
        example["intervals"].push_back(item);
      }
    }
    outcome.bundle["examples"].push_back(example);
  }
  outcome.bundle["passed"] = outcome.passed();
  return outcome;
}

}  // namespace causabound

// Machine-readable reports and the built-in worked examples.
//
// Full-precision values are written at 12 significant digits; the
// two-decimal display strings are derived from them and never parsed back.
#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "causabound/audit.hpp"
#include "causabound/probability.hpp"

namespace causabound {

inline constexpr const char* kToolName = "causabound";
inline constexpr const char* kToolVersion = "1.0.0";
inline constexpr int kDisplayDecimals = 2;
inline constexpr int kSignificantDigits = 12;

double round_significant(double x, int digits = kSignificantDigits);
std::string display(double x);  // fixed, kDisplayDecimals places

struct InputDocument {
  std::string format;  // "scenario_json" or "contingency_csv"
  std::string sha256;  // of the raw file bytes
  Scenario scenario;
  std::optional<ContingencyTable> counts;
};

// Chooses the parser by extension (.json scenario, .csv counts). Counts are
// turned into a scenario with the structure implied by their variables.
InputDocument load_input(const std::filesystem::path& path);
InputDocument load_input_text(std::string_view text, std::string_view format);

nlohmann::json interval_json(const PcInterval& interval);
nlohmann::json entry_json(const AuditEntry& entry);
nlohmann::json audit_json(const AuditReport& report);

nlohmann::json report_document(const std::string& command, const InputDocument& input,
                               const std::vector<AuditEntry>& entries, const AuditReport* audit = nullptr);

std::string entries_csv(const std::vector<AuditEntry>& entries);

// ---------------------------------------------------------------------------
// Demo

struct ExpectedDisplay {
  AnalysisMode mode = AnalysisMode::Full;
  std::string lower;
  std::string upper;
};

struct DemoCase {
  std::string name;
  Scenario scenario;
  std::vector<ExpectedDisplay> expected;  // one per applicable mode
};

std::vector<DemoCase> builtin_demo_cases();

struct DemoOutcome {
  nlohmann::json bundle;
  std::string table;
  std::vector<std::string> mismatches;
  bool passed() const { return mismatches.empty(); }
};

// Runs every case under both methods and compares the two-decimal display
// with the expected strings.
DemoOutcome run_demo(const std::vector<DemoCase>& cases);

}  // namespace causabound

// Subcommands behind the causabound CLI. Each writes its report to `out`,
// diagnostics to `err`, and returns the process exit status.
#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <optional>
#include <set>
#include <string>

#include "causabound/bounds.hpp"
#include "causabound/probability.hpp"

namespace causabound {

enum ExitCode : int {
  kExitOk = 0,
  kExitCheckFailed = 1,
  kExitInputError = 2,
  kExitUndefined = 3,
};

enum class OutputFormat { Json, Csv };

OutputFormat parse_output_format(const std::string& name);
// "closed", "oracle" or "both".
std::set<Method> parse_methods(const std::string& name);

struct BoundOptions {
  std::filesystem::path input;
  AnalysisMode mode = AnalysisMode::Full;
  std::set<Method> methods = {Method::ClosedForm};
  OutputFormat format = OutputFormat::Json;
};

struct AuditOptions {
  std::filesystem::path input;
  std::set<Method> methods = {Method::ClosedForm};
  OutputFormat format = OutputFormat::Json;
};

struct OracleCheckOptions {
  std::uint64_t seed = 42;
  int trials = 1000;
  bool serial = false;
};

int cmd_bound(const BoundOptions& options, std::ostream& out, std::ostream& err);
int cmd_audit(const AuditOptions& options, std::ostream& out, std::ostream& err);
int cmd_estimate(const std::filesystem::path& input, std::optional<Structure> structure, std::ostream& out,
                 std::ostream& err);
int cmd_oracle_check(const OracleCheckOptions& options, std::ostream& out, std::ostream& err);
int cmd_demo(bool json, std::ostream& out, std::ostream& err);

}  // namespace causabound

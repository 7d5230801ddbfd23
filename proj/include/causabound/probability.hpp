// Probability tables, scenarios and the observables derived from them.
//
// All variables are binary except the covariate S, which may have K >= 1
// levels. A Scenario stores, per table, the probability that the indexed
// variable equals 1 given a conditioning assignment.
#pragma once

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace causabound {

inline constexpr double kProbabilityTolerance = 1e-9;

enum class Structure { Basic, Mediator, Covariate, MediatorCovariate };

enum class AnalysisMode { Full, IgnoreMediator, IgnoreCovariate, IgnoreBoth };

constexpr bool has_mediator(Structure s) {
  return s == Structure::Mediator || s == Structure::MediatorCovariate;
}
constexpr bool has_covariate(Structure s) {
  return s == Structure::Covariate || s == Structure::MediatorCovariate;
}

std::string to_string(Structure s);
std::string to_string(AnalysisMode m);
Structure parse_structure(const std::string& name);
AnalysisMode parse_mode(const std::string& name);

// Analysis modes that make sense for a structure, Full first.
std::vector<AnalysisMode> applicable_modes(Structure s);
bool mode_applies(Structure s, AnalysisMode m);

// ---------------------------------------------------------------------------
// Errors

class CausaboundError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or invalid input (parse failure, violated scenario invariant).
class InputError : public CausaboundError {
 public:
  using CausaboundError::CausaboundError;
};

// A conditional estimated from counts has a zero denominator.
class EmptyConditioningCell : public InputError {
 public:
  using InputError::InputError;
};

// A required conditioning event (P(E=1), P(M=m), ...) has probability 0.
class UndefinedConditional : public CausaboundError {
 public:
  using CausaboundError::CausaboundError;
};

// P(R=1 | E=1) = 0, so the probability of causation is not defined.
class UndefinedPC : public CausaboundError {
 public:
  using CausaboundError::CausaboundError;
};

// ---------------------------------------------------------------------------
// Scenario

// Conditioning assignment such as "E=1,S=0". Unset variables are absent.
struct Condition {
  std::optional<int> e = std::nullopt;
  std::optional<int> m = std::nullopt;
  std::optional<int> s = std::nullopt;

  auto operator<=>(const Condition&) const = default;
  bool operator==(const Condition&) const = default;
};

// Canonical text form, variables ordered E, M, S: "E=1,S=0". Empty when
// the condition is unconditional.
std::string format_condition(const Condition& c);
Condition parse_condition(const std::string& text);

// Maps a conditioning assignment to P(variable = 1 | assignment).
using ProbabilityTable = std::map<Condition, double>;

struct Scenario {
  Structure structure = Structure::Basic;
  std::vector<double> covariate_prior;  // P(S=s), only with S
  ProbabilityTable exposure;            // P(E=1 | S=s), or {"": P(E=1)} without S
  ProbabilityTable mediator;            // P(M=1 | E=e[,S=s])
  ProbabilityTable response;            // P(R=1 | E|M [,S])

  bool operator==(const Scenario&) const = default;
};

struct Violation {
  std::string location;  // e.g. "mediator[E=1]"
  std::string message;   // e.g. "probability out of range"
};

std::vector<Violation> validate_scenario(const Scenario& s);
std::string describe(const std::vector<Violation>& violations);

// Throws InputError listing every violation.
void require_valid(const Scenario& s);

std::size_t stratum_count(const Scenario& s);

// Table lookup; throws InputError when the entry is missing.
double lookup(const ProbabilityTable& table, const Condition& at, const char* table_name);

// ---------------------------------------------------------------------------
// Contingency counts

struct ContingencyTable {
  std::vector<char> variables;                         // subset of E, M, R, S
  std::map<std::vector<int>, std::uint64_t> counts;    // keyed in `variables` order

  bool operator==(const ContingencyTable&) const = default;
};

std::vector<Violation> validate_table(const ContingencyTable& t);

// Structure implied by the variable set: {E,R} Basic, {E,M,R} Mediator,
// {E,R,S} Covariate, {E,M,R,S} MediatorCovariate.
Structure infer_structure(const ContingencyTable& t);

// Conditional relative frequencies. Under the mediator structures the
// response table pools over E (R depends on E only through M).
Scenario estimate_from_counts(const ContingencyTable& t, Structure structure);

// ---------------------------------------------------------------------------
// Observables

// Which closed-form bound consumes an ObservableSet.
using Formula = Structure;

// How p_r1_given_e1 / p_r1_given_e0 were obtained.
enum class ResponseSource {
  Direct,             // read from the response table
  MediatorChain,      // sum_m P(R=1|M=m[,s]) P(M=m|E=e[,s]) with the true law
  CovariateCollapse,  // sum_s P(R=1|E=e,s) P(S=s|E=e)
  MarkovFactorized,   // chain through M on covariate-collapsed tables
};
std::string to_string(ResponseSource r);

// a = P(M=0|E=0), b = P(M=1|E=1), c = P(R=0|M=0), d = P(R=1|M=1)
struct MediatorSummary {
  double a = 0, b = 0, c = 0, d = 0;
  bool operator==(const MediatorSummary&) const = default;
};

struct StratumObservables {
  int level = 0;
  double weight = 0;  // P(S=s | E=1)
  double r1_e1 = 0;   // P(R=1 | E=1, S=s)
  double r1_e0 = 0;   // P(R=1 | E=0, S=s)
  std::optional<MediatorSummary> mediator;
};

struct ObservableSet {
  Formula formula = Formula::Basic;
  AnalysisMode mode = AnalysisMode::Full;
  ResponseSource source = ResponseSource::Direct;

  double p_r1_given_e1 = 0;
  // NaN for covariate formulas when P(E=0) = 0; the bound does not use it.
  double p_r1_given_e0 = 0;
  // +infinity when p_r1_given_e0 = 0 < p_r1_given_e1.
  double risk_ratio = 0;

  // Joint-law marginal P(R=1|E=1), set when the consumed value was
  // Markov-factorized and may differ from it.
  std::optional<double> true_p_r1_given_e1;

  std::optional<MediatorSummary> mediator_summary;  // Mediator formula
  std::vector<StratumObservables> strata;           // covariate formulas
};

// The scenario a (possibly mis-specified) analyst in `mode` would work
// with: ignored variables are marginalized out using the full joint law.
// Throws InputError for a mode the structure does not support and
// UndefinedConditional when a collapse divides by a null event.
Scenario analyst_view(const Scenario& s, AnalysisMode mode);

ObservableSet derive_observables(const Scenario& s, AnalysisMode mode);

}  // namespace causabound

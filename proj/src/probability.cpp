#include "causabound/probability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>
#include <sstream>

namespace causabound {

std::string to_string(Structure s) {
  switch (s) {
    case Structure::Basic: return "basic";
    case Structure::Mediator: return "mediator";
    case Structure::Covariate: return "covariate";
    case Structure::MediatorCovariate: return "mediator_covariate";
  }
  return "?";
}

std::string to_string(AnalysisMode m) {
  switch (m) {
    case AnalysisMode::Full: return "full";
    case AnalysisMode::IgnoreMediator: return "ignore-mediator";
    case AnalysisMode::IgnoreCovariate: return "ignore-covariate";
    case AnalysisMode::IgnoreBoth: return "ignore-both";
  }
  return "?";
}

std::string to_string(ResponseSource r) {
  switch (r) {
    case ResponseSource::Direct: return "direct";
    case ResponseSource::MediatorChain: return "mediator_chain";
    case ResponseSource::CovariateCollapse: return "covariate_collapse";
    case ResponseSource::MarkovFactorized: return "markov_factorized";
  }
  return "?";
}

Structure parse_structure(const std::string& name) {
  for (auto s : {Structure::Basic, Structure::Mediator, Structure::Covariate,
                 Structure::MediatorCovariate}) {
    if (to_string(s) == name) return s;
  }
  throw InputError("unknown structure \"" + name + "\"");
}

AnalysisMode parse_mode(const std::string& name) {
  for (auto m : {AnalysisMode::Full, AnalysisMode::IgnoreMediator, AnalysisMode::IgnoreCovariate,
                 AnalysisMode::IgnoreBoth}) {
    if (to_string(m) == name) return m;
  }
  throw InputError("unknown analysis mode \"" + name + "\"");
}

bool mode_applies(Structure s, AnalysisMode m) {
  switch (m) {
    case AnalysisMode::Full: return true;
    case AnalysisMode::IgnoreMediator: return has_mediator(s);
    case AnalysisMode::IgnoreCovariate: return has_covariate(s);
    case AnalysisMode::IgnoreBoth: return has_mediator(s) && has_covariate(s);
  }
  return false;
}

std::vector<AnalysisMode> applicable_modes(Structure s) {
  std::vector<AnalysisMode> out;
  for (auto m : {AnalysisMode::Full, AnalysisMode::IgnoreMediator, AnalysisMode::IgnoreCovariate,
                 AnalysisMode::IgnoreBoth}) {
    if (mode_applies(s, m)) out.push_back(m);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Conditions

std::string format_condition(const Condition& c) {
  std::string out;
  auto add = [&](char var, const std::optional<int>& v) {
    if (!v) return;
    if (!out.empty()) out += ',';
    out += var;
    out += '=';
    out += std::to_string(*v);
  };
  add('E', c.e);
  add('M', c.m);
  add('S', c.s);
  return out;
}

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

int parse_level(const std::string& text, const std::string& context) {
  if (text.empty() || !std::all_of(text.begin(), text.end(), [](char ch) { return ch >= '0' && ch <= '9'; })) {
    throw InputError("bad level \"" + text + "\" in condition \"" + context + "\"");
  }
  return std::stoi(text);
}

}  // namespace

Condition parse_condition(const std::string& text) {
  Condition c;
  const std::string body = trim(text);
  if (body.empty()) return c;

  std::stringstream in(body);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw InputError("expected VAR=value in condition \"" + text + "\"");
    const std::string var = trim(item.substr(0, eq));
    const int level = parse_level(trim(item.substr(eq + 1)), text);
    std::optional<int>* slot = nullptr;
    if (var == "E") slot = &c.e;
    else if (var == "M") slot = &c.m;
    else if (var == "S") slot = &c.s;
    else throw InputError("unknown conditioning variable \"" + var + "\" in \"" + text + "\"");
    if (slot->has_value()) throw InputError("variable " + var + " repeated in \"" + text + "\"");
    if (var != "S" && level > 1) throw InputError(var + " is binary in \"" + text + "\"");
    *slot = level;
  }
  return c;
}

// ---------------------------------------------------------------------------
// Validation

namespace {

struct TableLayout {
  std::vector<Condition> keys;
  bool optional = false;
};

struct ScenarioLayout {
  TableLayout exposure, mediator, response;
};

ScenarioLayout layout_for(Structure structure, std::size_t strata) {
  ScenarioLayout l;
  auto stratified = [&](auto make) {
    std::vector<Condition> keys;
    for (int s = 0; s < static_cast<int>(strata); ++s) {
      for (int v = 0; v < 2; ++v) keys.push_back(make(v, s));
    }
    return keys;
  };
  switch (structure) {
    case Structure::Basic:
      l.exposure = {{Condition{}}, true};
      l.response = {{Condition{.e = 0}, Condition{.e = 1}}, false};
      break;
    case Structure::Mediator:
      l.exposure = {{Condition{}}, true};
      l.mediator = {{Condition{.e = 0}, Condition{.e = 1}}, false};
      l.response = {{Condition{.m = 0}, Condition{.m = 1}}, false};
      break;
    case Structure::Covariate:
      for (int s = 0; s < static_cast<int>(strata); ++s) l.exposure.keys.push_back(Condition{.s = s});
      l.response.keys = stratified([](int v, int s) { return Condition{.e = v, .s = s}; });
      break;
    case Structure::MediatorCovariate:
      for (int s = 0; s < static_cast<int>(strata); ++s) l.exposure.keys.push_back(Condition{.s = s});
      l.mediator.keys = stratified([](int v, int s) { return Condition{.e = v, .s = s}; });
      l.response.keys = stratified([](int v, int s) { return Condition{.m = v, .s = s}; });
      break;
  }
  return l;
}

bool in_unit_interval(double p) {
  return std::isfinite(p) && p >= -kProbabilityTolerance && p <= 1.0 + kProbabilityTolerance;
}

void check_table(const char* name, const ProbabilityTable& table, const TableLayout& layout,
                 std::vector<Violation>& out) {
  auto where = [&](const Condition& c) { return std::string(name) + "[" + format_condition(c) + "]"; };

  for (const auto& [cond, p] : table) {
    if (std::find(layout.keys.begin(), layout.keys.end(), cond) == layout.keys.end()) {
      out.push_back({where(cond), "unexpected entry"});
    } else if (!in_unit_interval(p)) {
      out.push_back({where(cond), "probability out of range"});
    }
  }
  if (layout.optional && table.empty()) return;
  for (const auto& key : layout.keys) {
    if (!table.contains(key)) out.push_back({where(key), "missing entry"});
  }
}

}  // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
  std::vector<Violation> out;

  if (has_covariate(s.structure)) {
    if (s.covariate_prior.empty()) {
      out.push_back({"covariate_prior", "missing covariate prior"});
    }
    for (std::size_t i = 0; i < s.covariate_prior.size(); ++i) {
      if (!in_unit_interval(s.covariate_prior[i])) {
        out.push_back({"covariate_prior[" + std::to_string(i) + "]", "probability out of range"});
      }
    }
    const double total = std::accumulate(s.covariate_prior.begin(), s.covariate_prior.end(), 0.0);
    if (!s.covariate_prior.empty() && std::abs(total - 1.0) > kProbabilityTolerance) {
      out.push_back({"covariate_prior", "prior does not sum to 1"});
    }
  } else if (!s.covariate_prior.empty()) {
    out.push_back({"covariate_prior", "unexpected covariate prior for a structure without S"});
  }

  const auto layout = layout_for(s.structure, s.covariate_prior.size());
  check_table("exposure", s.exposure, layout.exposure, out);
  check_table("mediator", s.mediator, layout.mediator, out);
  check_table("response", s.response, layout.response, out);
  return out;
}

std::string describe(const std::vector<Violation>& violations) {
  std::string out;
  for (const auto& v : violations) {
    if (!out.empty()) out += "; ";
    out += v.location + ": " + v.message;
  }
  return out;
}

void require_valid(const Scenario& s) {
  const auto violations = validate_scenario(s);
  if (!violations.empty()) throw InputError("invalid scenario: " + describe(violations));
}

std::size_t stratum_count(const Scenario& s) { return s.covariate_prior.size(); }

double lookup(const ProbabilityTable& table, const Condition& at, const char* table_name) {
  const auto it = table.find(at);
  if (it == table.end()) {
    throw InputError(std::string(table_name) + "[" + format_condition(at) + "]: missing entry");
  }
  return it->second;
}

// ---------------------------------------------------------------------------
// Contingency tables

namespace {

bool is_known_variable(char v) { return v == 'E' || v == 'M' || v == 'R' || v == 'S'; }

std::string variable_set(const ContingencyTable& t) {
  std::string vars(t.variables.begin(), t.variables.end());
  std::sort(vars.begin(), vars.end());
  return vars;
}

}  // namespace

std::vector<Violation> validate_table(const ContingencyTable& t) {
  std::vector<Violation> out;
  std::set<char> seen;
  for (char v : t.variables) {
    if (!is_known_variable(v)) out.push_back({"header", std::string("unknown variable ") + v});
    if (!seen.insert(v).second) out.push_back({"header", std::string("variable repeated: ") + v});
  }
  if (!out.empty()) return out;

  int strata = 1;
  std::uint64_t total = 0;
  for (const auto& [key, count] : t.counts) {
    if (key.size() != t.variables.size()) {
      out.push_back({"counts", "assignment has wrong arity"});
      return out;
    }
    for (std::size_t i = 0; i < key.size(); ++i) {
      const int upper = t.variables[i] == 'S' ? std::numeric_limits<int>::max() : 1;
      if (key[i] < 0 || key[i] > upper) {
        out.push_back({"counts", std::string("level out of range for ") + t.variables[i]});
      }
      if (t.variables[i] == 'S') strata = std::max(strata, key[i] + 1);
    }
    total += count;
  }
  if (!out.empty()) return out;

  std::size_t expected = 1;
  for (char v : t.variables) expected *= (v == 'S') ? static_cast<std::size_t>(strata) : 2;
  if (t.counts.size() != expected) {
    out.push_back({"counts", "missing assignment rows: every joint assignment must appear exactly once"});
  }
  if (total == 0) out.push_back({"counts", "total count is zero"});
  return out;
}

Structure infer_structure(const ContingencyTable& t) {
  const std::string vars = variable_set(t);
  if (vars == "ER") return Structure::Basic;
  if (vars == "EMR") return Structure::Mediator;
  if (vars == "ERS") return Structure::Covariate;
  if (vars == "EMRS") return Structure::MediatorCovariate;
  throw InputError("variables {" + vars + "} do not match any causal structure");
}

Scenario estimate_from_counts(const ContingencyTable& t, Structure structure) {
  if (const auto violations = validate_table(t); !violations.empty()) {
    throw InputError("invalid contingency table: " + describe(violations));
  }
  if (infer_structure(t) != structure) {
    throw InputError("contingency table variables do not match structure " + to_string(structure));
  }

  auto index_of = [&](char v) {
    return static_cast<std::size_t>(std::find(t.variables.begin(), t.variables.end(), v) - t.variables.begin());
  };
  // Count of rows matching every (variable, level) pair in `where`.
  auto count = [&](std::initializer_list<std::pair<char, int>> where) {
    std::uint64_t n = 0;
    for (const auto& [key, c] : t.counts) {
      bool match = true;
      for (const auto& [var, level] : where) match = match && key[index_of(var)] == level;
      if (match) n += c;
    }
    return n;
  };
  auto ratio = [](std::uint64_t num, std::uint64_t den, const std::string& cell) {
    if (den == 0) throw EmptyConditioningCell("no observations with " + cell + ": conditional is 0/0");
    return static_cast<double>(num) / static_cast<double>(den);
  };
  auto cell_name = [](std::initializer_list<std::pair<char, int>> where) {
    std::string s;
    for (const auto& [var, level] : where) {
      if (!s.empty()) s += ',';
      s += std::string(1, var) + "=" + std::to_string(level);
    }
    return s;
  };

  const std::uint64_t total = count({});
  Scenario out;
  out.structure = structure;

  int strata = 0;
  if (has_covariate(structure)) {
    for (const auto& [key, c] : t.counts) strata = std::max(strata, key[index_of('S')] + 1);
    for (int s = 0; s < strata; ++s) out.covariate_prior.push_back(ratio(count({{'S', s}}), total, "any"));
  }

  switch (structure) {
    case Structure::Basic:
      out.exposure[{}] = ratio(count({{'E', 1}}), total, "any");
      for (int e = 0; e < 2; ++e) {
        out.response[{.e = e}] = ratio(count({{'E', e}, {'R', 1}}), count({{'E', e}}), cell_name({{'E', e}}));
      }
      break;
    case Structure::Mediator:
      out.exposure[{}] = ratio(count({{'E', 1}}), total, "any");
      for (int v = 0; v < 2; ++v) {
        out.mediator[{.e = v}] = ratio(count({{'E', v}, {'M', 1}}), count({{'E', v}}), cell_name({{'E', v}}));
        out.response[{.m = v}] = ratio(count({{'M', v}, {'R', 1}}), count({{'M', v}}), cell_name({{'M', v}}));
      }
      break;
    case Structure::Covariate:
      for (int s = 0; s < strata; ++s) {
        out.exposure[{.s = s}] = ratio(count({{'S', s}, {'E', 1}}), count({{'S', s}}), cell_name({{'S', s}}));
        for (int e = 0; e < 2; ++e) {
          out.response[{.e = e, .s = s}] = ratio(count({{'E', e}, {'S', s}, {'R', 1}}),
                                                 count({{'E', e}, {'S', s}}), cell_name({{'E', e}, {'S', s}}));
        }
      }
      break;
    case Structure::MediatorCovariate:
      for (int s = 0; s < strata; ++s) {
        out.exposure[{.s = s}] = ratio(count({{'S', s}, {'E', 1}}), count({{'S', s}}), cell_name({{'S', s}}));
        for (int v = 0; v < 2; ++v) {
          out.mediator[{.e = v, .s = s}] = ratio(count({{'E', v}, {'S', s}, {'M', 1}}),
                                                 count({{'E', v}, {'S', s}}), cell_name({{'E', v}, {'S', s}}));
          out.response[{.m = v, .s = s}] = ratio(count({{'M', v}, {'S', s}, {'R', 1}}),
                                                 count({{'M', v}, {'S', s}}), cell_name({{'M', v}, {'S', s}}));
        }
      }
      break;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Analyst views and observables

namespace {

double exposure_given_stratum(const Scenario& s, int stratum, int e) {
  const double p1 = lookup(s.exposure, {.s = stratum}, "exposure");
  return e == 1 ? p1 : 1.0 - p1;
}

// P(E=e) under the covariate model.
double exposure_marginal(const Scenario& s, int e) {
  double total = 0;
  for (std::size_t k = 0; k < s.covariate_prior.size(); ++k) {
    total += s.covariate_prior[k] * exposure_given_stratum(s, static_cast<int>(k), e);
  }
  return total;
}

// P(S=s | E=e) for every stratum.
std::vector<double> strata_given_exposure(const Scenario& s, int e) {
  const double pe = exposure_marginal(s, e);
  if (!(pe > 0)) {
    throw UndefinedConditional("P(E=" + std::to_string(e) + ") = 0: cannot condition strata on exposure");
  }
  std::vector<double> w(s.covariate_prior.size());
  for (std::size_t k = 0; k < w.size(); ++k) {
    w[k] = s.covariate_prior[k] * exposure_given_stratum(s, static_cast<int>(k), e) / pe;
  }
  return w;
}

// sum_m P(R=1|M=m[,S]) P(M=m|E=e[,S])
double mediator_chain(const Scenario& s, int e, std::optional<int> stratum) {
  const double m1 = lookup(s.mediator, {.e = e, .s = stratum}, "mediator");
  const double r_m1 = lookup(s.response, {.m = 1, .s = stratum}, "response");
  const double r_m0 = lookup(s.response, {.m = 0, .s = stratum}, "response");
  return m1 * r_m1 + (1.0 - m1) * r_m0;
}

Scenario drop_mediator(const Scenario& s) {
  Scenario out;
  out.covariate_prior = s.covariate_prior;
  out.exposure = s.exposure;
  if (s.structure == Structure::Mediator) {
    out.structure = Structure::Basic;
    for (int e = 0; e < 2; ++e) out.response[{.e = e}] = mediator_chain(s, e, std::nullopt);
  } else {
    out.structure = Structure::Covariate;
    for (int k = 0; k < static_cast<int>(stratum_count(s)); ++k) {
      for (int e = 0; e < 2; ++e) out.response[{.e = e, .s = k}] = mediator_chain(s, e, k);
    }
  }
  return out;
}

Scenario drop_covariate(const Scenario& s) {
  const std::size_t strata = stratum_count(s);
  Scenario out;
  out.exposure[{}] = exposure_marginal(s, 1);

  if (s.structure == Structure::Covariate) {
    out.structure = Structure::Basic;
    for (int e = 0; e < 2; ++e) {
      const auto w = strata_given_exposure(s, e);
      double r = 0;
      for (std::size_t k = 0; k < strata; ++k) {
        r += w[k] * lookup(s.response, {.e = e, .s = static_cast<int>(k)}, "response");
      }
      out.response[{.e = e}] = r;
    }
    return out;
  }

  out.structure = Structure::Mediator;
  for (int e = 0; e < 2; ++e) {
    const auto w = strata_given_exposure(s, e);
    double m = 0;
    for (std::size_t k = 0; k < strata; ++k) {
      m += w[k] * lookup(s.mediator, {.e = e, .s = static_cast<int>(k)}, "mediator");
    }
    out.mediator[{.e = e}] = m;
  }

  // P(S=s, M=m) = P(s) sum_e P(e|s) P(m|e,s), then P(R=1|M=m) by Bayes.
  for (int m = 0; m < 2; ++m) {
    std::vector<double> joint(strata);
    double pm = 0;
    for (std::size_t k = 0; k < strata; ++k) {
      const int sk = static_cast<int>(k);
      double given_stratum = 0;
      for (int e = 0; e < 2; ++e) {
        const double m1 = lookup(s.mediator, {.e = e, .s = sk}, "mediator");
        given_stratum += exposure_given_stratum(s, sk, e) * (m == 1 ? m1 : 1.0 - m1);
      }
      joint[k] = s.covariate_prior[k] * given_stratum;
      pm += joint[k];
    }
    if (!(pm > 0)) {
      throw UndefinedConditional("P(M=" + std::to_string(m) + ") = 0: cannot collapse the response table");
    }
    double r = 0;
    for (std::size_t k = 0; k < strata; ++k) {
      r += joint[k] / pm * lookup(s.response, {.m = m, .s = static_cast<int>(k)}, "response");
    }
    out.response[{.m = m}] = r;
  }
  return out;
}

double risk_ratio(double p1, double p0) {
  if (std::isnan(p1) || std::isnan(p0)) return std::numeric_limits<double>::quiet_NaN();
  if (p0 == 0) return p1 > 0 ? std::numeric_limits<double>::infinity() : std::numeric_limits<double>::quiet_NaN();
  return p1 / p0;
}

MediatorSummary summarize_mediator(const Scenario& s, std::optional<int> stratum) {
  return {
      .a = 1.0 - lookup(s.mediator, {.e = 0, .s = stratum}, "mediator"),
      .b = lookup(s.mediator, {.e = 1, .s = stratum}, "mediator"),
      .c = 1.0 - lookup(s.response, {.m = 0, .s = stratum}, "response"),
      .d = lookup(s.response, {.m = 1, .s = stratum}, "response"),
  };
}

// Observables of a scenario taken at face value (no variables ignored).
ObservableSet observe(const Scenario& s) {
  ObservableSet obs;
  obs.formula = s.structure;

  switch (s.structure) {
    case Structure::Basic:
      obs.p_r1_given_e1 = lookup(s.response, {.e = 1}, "response");
      obs.p_r1_given_e0 = lookup(s.response, {.e = 0}, "response");
      break;
    case Structure::Mediator: {
      const auto ms = summarize_mediator(s, std::nullopt);
      obs.mediator_summary = ms;
      obs.p_r1_given_e1 = ms.b * ms.d + (1.0 - ms.b) * (1.0 - ms.c);
      obs.p_r1_given_e0 = (1.0 - ms.a) * ms.d + ms.a * (1.0 - ms.c);
      break;
    }
    case Structure::Covariate:
    case Structure::MediatorCovariate: {
      const bool mediated = s.structure == Structure::MediatorCovariate;
      const double pe1 = exposure_marginal(s, 1);
      const double pe0 = exposure_marginal(s, 0);
      if (!(pe1 > 0)) throw UndefinedConditional("P(E=1) = 0: stratum weights P(S=s|E=1) are undefined");

      double p1 = 0;
      double p0 = 0;
      for (std::size_t k = 0; k < stratum_count(s); ++k) {
        const double prior = s.covariate_prior[k];
        if (prior == 0) continue;
        const int sk = static_cast<int>(k);
        StratumObservables st;
        st.level = sk;
        st.weight = prior * exposure_given_stratum(s, sk, 1) / pe1;
        if (mediated) {
          st.mediator = summarize_mediator(s, sk);
          st.r1_e1 = mediator_chain(s, 1, sk);
          st.r1_e0 = mediator_chain(s, 0, sk);
        } else {
          st.r1_e1 = lookup(s.response, {.e = 1, .s = sk}, "response");
          st.r1_e0 = lookup(s.response, {.e = 0, .s = sk}, "response");
        }
        p1 += st.weight * st.r1_e1;
        if (pe0 > 0) p0 += prior * exposure_given_stratum(s, sk, 0) / pe0 * st.r1_e0;
        obs.strata.push_back(st);
      }
      obs.p_r1_given_e1 = p1;
      obs.p_r1_given_e0 = pe0 > 0 ? p0 : std::numeric_limits<double>::quiet_NaN();
      break;
    }
  }
  obs.risk_ratio = risk_ratio(obs.p_r1_given_e1, obs.p_r1_given_e0);
  return obs;
}

ResponseSource source_for(Formula formula, AnalysisMode mode) {
  switch (formula) {
    case Formula::Basic:
      if (mode == AnalysisMode::Full) return ResponseSource::Direct;
      if (mode == AnalysisMode::IgnoreMediator) return ResponseSource::MediatorChain;
      return ResponseSource::CovariateCollapse;
    case Formula::Mediator:
      return mode == AnalysisMode::Full ? ResponseSource::MediatorChain : ResponseSource::MarkovFactorized;
    case Formula::Covariate:
    case Formula::MediatorCovariate:
      return ResponseSource::CovariateCollapse;
  }
  return ResponseSource::Direct;
}

}  // namespace

Scenario analyst_view(const Scenario& s, AnalysisMode mode) {
  require_valid(s);
  if (!mode_applies(s.structure, mode)) {
    throw InputError("analysis mode " + to_string(mode) + " does not apply to structure " + to_string(s.structure));
  }
  switch (mode) {
    case AnalysisMode::Full: return s;
    case AnalysisMode::IgnoreMediator: return drop_mediator(s);
    case AnalysisMode::IgnoreCovariate: return drop_covariate(s);
    // Marginalize M per stratum first so the response is the true P(R|E).
    case AnalysisMode::IgnoreBoth: return drop_covariate(drop_mediator(s));
  }
  return s;
}

ObservableSet derive_observables(const Scenario& s, AnalysisMode mode) {
  ObservableSet obs = observe(analyst_view(s, mode));
  obs.mode = mode;
  obs.source = source_for(obs.formula, mode);
  if (obs.source == ResponseSource::MarkovFactorized) {
    obs.true_p_r1_given_e1 = observe(analyst_view(s, AnalysisMode::IgnoreBoth)).p_r1_given_e1;
  }
  return obs;
}

}  // namespace causabound

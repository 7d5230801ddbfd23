#include "causabound/scenario_io.hpp"

#include <charconv>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

#include <openssl/evp.h>

namespace causabound {

using nlohmann::json;

namespace {

json table_to_json(const ProbabilityTable& table) {
  json out = json::object();
  for (const auto& [cond, p] : table) out[format_condition(cond)] = p;
  return out;
}

ProbabilityTable table_from_json(const json& doc, const char* name) {
  ProbabilityTable table;
  if (!doc.is_object()) throw InputError(std::string("\"") + name + "\" must be an object");
  for (const auto& [key, value] : doc.items()) {
    if (!value.is_number()) throw InputError(std::string(name) + "[" + key + "]: expected a number");
    const Condition cond = parse_condition(key);
    if (!table.emplace(cond, value.get<double>()).second) {
      throw InputError(std::string(name) + "[" + key + "]: duplicate condition");
    }
  }
  return table;
}

std::string trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return std::string(s.substr(first, last - first + 1));
}

std::vector<std::string> split_row(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

template <typename T>
T parse_number(const std::string& cell, std::size_t line_no) {
  T value{};
  const auto* end = cell.data() + cell.size();
  const auto [ptr, ec] = std::from_chars(cell.data(), end, value);
  if (cell.empty() || ec != std::errc{} || ptr != end) {
    throw InputError("line " + std::to_string(line_no) + ": expected a non-negative integer, got \"" + cell + "\"");
  }
  return value;
}

}  // namespace

json scenario_to_json(const Scenario& s) {
  json doc;
  doc["structure"] = to_string(s.structure);
  if (has_covariate(s.structure) || !s.covariate_prior.empty()) doc["covariate_prior"] = s.covariate_prior;
  if (!s.exposure.empty()) doc["exposure"] = table_to_json(s.exposure);
  if (!s.mediator.empty()) doc["mediator"] = table_to_json(s.mediator);
  doc["response"] = table_to_json(s.response);
  return doc;
}

Scenario scenario_from_json(const json& doc) {
  if (!doc.is_object()) throw InputError("scenario must be a JSON object");
  static const std::set<std::string> known = {"structure", "covariate_prior", "exposure", "mediator", "response"};
  for (const auto& [key, value] : doc.items()) {
    if (!known.contains(key)) throw InputError("unknown scenario field \"" + key + "\"");
  }
  if (!doc.contains("structure") || !doc["structure"].is_string()) {
    throw InputError("scenario needs a \"structure\" string");
  }

  Scenario s;
  s.structure = parse_structure(doc["structure"].get<std::string>());
  if (doc.contains("covariate_prior")) {
    const auto& prior = doc["covariate_prior"];
    if (!prior.is_array()) throw InputError("\"covariate_prior\" must be an array");
    for (const auto& p : prior) {
      if (!p.is_number()) throw InputError("\"covariate_prior\" entries must be numbers");
      s.covariate_prior.push_back(p.get<double>());
    }
  }
  if (doc.contains("exposure")) s.exposure = table_from_json(doc["exposure"], "exposure");
  if (doc.contains("mediator")) s.mediator = table_from_json(doc["mediator"], "mediator");
  if (doc.contains("response")) s.response = table_from_json(doc["response"], "response");
  return s;
}

Scenario parse_scenario(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed scenario JSON: ") + e.what());
  }
  Scenario s = scenario_from_json(doc);
  require_valid(s);
  return s;
}

ContingencyTable parse_contingency_csv(std::string_view text) {
  ContingencyTable t;
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string row = trim(line);
    if (row.empty() || row.front() == '#') continue;
    const auto cells = split_row(row);

    if (!have_header) {
      if (cells.size() < 2 || cells.back() != "count") {
        throw InputError("line " + std::to_string(line_no) + ": header must list variables then \"count\"");
      }
      for (std::size_t i = 0; i + 1 < cells.size(); ++i) {
        if (cells[i].size() != 1) throw InputError("line " + std::to_string(line_no) + ": bad variable \"" + cells[i] + "\"");
        t.variables.push_back(cells[i][0]);
      }
      have_header = true;
      continue;
    }

    if (cells.size() != t.variables.size() + 1) {
      throw InputError("line " + std::to_string(line_no) + ": expected " + std::to_string(t.variables.size() + 1) +
                       " columns");
    }
    std::vector<int> key;
    for (std::size_t i = 0; i < t.variables.size(); ++i) key.push_back(parse_number<int>(cells[i], line_no));
    const auto count = parse_number<std::uint64_t>(cells.back(), line_no);
    if (!t.counts.emplace(std::move(key), count).second) {
      throw InputError("line " + std::to_string(line_no) + ": duplicate assignment");
    }
  }
  if (!have_header) throw InputError("contingency file is empty: no header row");
  return t;
}

std::string format_contingency_csv(const ContingencyTable& t) {
  std::string out;
  for (char v : t.variables) {
    out += v;
    out += ',';
  }
  out += "count\n";
  for (const auto& [key, count] : t.counts) {
    for (int level : key) out += std::to_string(level) + ",";
    out += std::to_string(count) + "\n";
  }
  return out;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::string sha256_hex(std::string_view bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr);
  std::ostringstream out;
  for (unsigned int i = 0; i < length; ++i) out << std::hex << std::setw(2) << std::setfill('0') << int(digest[i]);
  return out.str();
}

}  // namespace causabound

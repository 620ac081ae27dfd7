#include "qumpi/config_io.hpp"

#include <cstdint>
#include <fstream>
#include <sstream>
#include <set>

#include <json.hpp>

#include "qumpi/error.hpp"

namespace qumpi {

using nlohmann::json;

namespace {

[[noreturn]] void semantic(const std::string& field, const std::string& what) {
  fail(ErrorCategory::Parse, field + ": " + what);
}

void rejectUnknown(const json& obj, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, _] : obj.items()) {
    if (!allowed.count(key)) semantic(where.empty() ? key : where + "." + key, "unknown key");
  }
}

const json& requireObject(const json& parent, const std::string& key, const std::string& field) {
  auto it = parent.find(key);
  if (it == parent.end()) semantic(field, "missing required block");
  if (!it->is_object()) semantic(field, "expected an object");
  return *it;
}

double number(const json& obj, const std::string& key, const std::string& field, const double* fallback) {
  auto it = obj.find(key);
  if (it == obj.end()) {
    if (!fallback) semantic(field, "missing required field");
    return *fallback;
  }
  if (!it->is_number()) semantic(field, "expected a number");
  return it->get<double>();
}

double optionalNumber(const json& obj, const std::string& key, const std::string& field, double fallback) {
  return number(obj, key, field, &fallback);
}

double requiredNumber(const json& obj, const std::string& key, const std::string& field) {
  return number(obj, key, field, nullptr);
}

void checkTransmissivity(double eta, const std::string& field) {
  if (eta < 0.0 || eta > 1.0) semantic(field, "transmissivity out of range");
}

void checkNonNegative(double value, const std::string& field) {
  if (value < 0.0) semantic(field, "must be non-negative");
}

JpaParams parseJpa(const json& obj, const std::string& where) {
  rejectUnknown(obj, {"gain_db", "gamma", "n_added", "eta_in"}, where);
  JpaParams p;
  p.gain_db = requiredNumber(obj, "gain_db", where + ".gain_db");
  p.gamma = requiredNumber(obj, "gamma", where + ".gamma");
  p.n_added = optionalNumber(obj, "n_added", where + ".n_added", 0.0);
  p.eta_in = optionalNumber(obj, "eta_in", where + ".eta_in", 1.0);
  checkNonNegative(p.gain_db, where + ".gain_db");
  checkNonNegative(p.n_added, where + ".n_added");
  checkTransmissivity(p.eta_in, where + ".eta_in");
  return p;
}

InputSpec parseInput(const json& parent, const std::string& key) {
  auto it = parent.find(key);
  if (it == parent.end()) return InputSpec::vacuum();
  if (!it->is_object()) semantic(key, "expected an object");
  const json& obj = *it;
  auto kind = obj.find("kind");
  if (kind == obj.end() || !kind->is_string()) semantic(key + ".kind", "expected one of vacuum|thermal|coherent");
  const std::string k = kind->get<std::string>();
  if (k == "vacuum") {
    rejectUnknown(obj, {"kind"}, key);
    return InputSpec::vacuum();
  }
  if (k == "thermal") {
    rejectUnknown(obj, {"kind", "n"}, key);
    const double n = requiredNumber(obj, "n", key + ".n");
    checkNonNegative(n, key + ".n");
    return InputSpec::thermal(n);
  }
  if (k == "coherent") {
    rejectUnknown(obj, {"kind", "alpha", "theta"}, key);
    const double a = requiredNumber(obj, "alpha", key + ".alpha");
    checkNonNegative(a, key + ".alpha");
    return InputSpec::coherent(a, optionalNumber(obj, "theta", key + ".theta", 0.0));
  }
  semantic(key + ".kind", "expected one of vacuum|thermal|coherent");
}

json inputToJson(const InputSpec& in) {
  switch (in.kind) {
    case InputSpec::Kind::Thermal: return {{"kind", "thermal"}, {"n", in.n_mean}};
    case InputSpec::Kind::Coherent: return {{"kind", "coherent"}, {"alpha", in.amplitude}, {"theta", in.theta}};
    case InputSpec::Kind::Vacuum: break;
  }
  return {{"kind", "vacuum"}};
}

json jpaToJson(const JpaParams& p) {
  return {{"gain_db", p.gain_db}, {"gamma", p.gamma}, {"n_added", p.n_added}, {"eta_in", p.eta_in}};
}

std::pair<int, int> lineColumn(std::string_view text, std::size_t byte) {
  int line = 1;
  int col = 1;
  for (std::size_t i = 0; i + 1 < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

CircuitConfig parseCircuitConfig(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    auto [line, col] = lineColumn(text, e.byte);
    fail(ErrorCategory::Parse,
         "syntax error at line " + std::to_string(line) + ", column " + std::to_string(col) + ": " + e.what());
  }
  if (!root.is_object()) semantic("<root>", "expected a JSON object");
  rejectUnknown(root, {"jpa1", "jpa2", "path_phase", "eta_hr1", "eta_hr2", "input1", "input2", "env_n"}, "");

  CircuitConfig c;
  c.jpa1 = parseJpa(requireObject(root, "jpa1", "jpa1"), "jpa1");
  c.jpa2 = parseJpa(requireObject(root, "jpa2", "jpa2"), "jpa2");
  c.path_phase = optionalNumber(root, "path_phase", "path_phase", 0.0);
  c.eta_hr1 = optionalNumber(root, "eta_hr1", "eta_hr1", 1.0);
  c.eta_hr2 = optionalNumber(root, "eta_hr2", "eta_hr2", 1.0);
  c.env_n = optionalNumber(root, "env_n", "env_n", 0.0);
  checkTransmissivity(c.eta_hr1, "eta_hr1");
  checkTransmissivity(c.eta_hr2, "eta_hr2");
  checkNonNegative(c.env_n, "env_n");
  c.input1 = parseInput(root, "input1");
  c.input2 = parseInput(root, "input2");
  return c;
}

std::string serializeCircuitConfig(const CircuitConfig& c) {
  json root = {
      {"jpa1", jpaToJson(c.jpa1)},     {"jpa2", jpaToJson(c.jpa2)},     {"path_phase", c.path_phase},
      {"eta_hr1", c.eta_hr1},          {"eta_hr2", c.eta_hr2},          {"env_n", c.env_n},
      {"input1", inputToJson(c.input1)}, {"input2", inputToJson(c.input2)},
  };
  return root.dump(2) + "\n";
}

CircuitConfig loadCircuitConfig(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCategory::Io, "cannot open config file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  try {
    return parseCircuitConfig(buf.str());
  } catch (const Error& e) {
    throw Error(e.category(), path + ": " + e.what());
  }
}

std::string configHash(const CircuitConfig& config) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char ch : serializeCircuitConfig(config)) {
    h ^= ch;
    h *= 1099511628211ull;
  }
  std::ostringstream out;
  out << std::hex << h;
  return out.str();
}

}  // namespace qumpi

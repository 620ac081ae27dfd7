#include "qumpi/sweep.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <json.hpp>

#include "qumpi/config_io.hpp"
#include "qumpi/error.hpp"

namespace qumpi {

using ordered_json = nlohmann::ordered_json;

std::vector<double> AxisSpec::values() const { return linspace(start, stop, count); }

namespace {

double parseNumber(std::string_view text, std::string_view what) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || text.empty()) {
    fail(ErrorCategory::Parse, "axis " + std::string(what) + ": cannot parse '" + std::string(text) + "'");
  }
  return value;
}

bool isAxisName(const std::string& name) {
  const auto& names = axisNames();
  return std::find(names.begin(), names.end(), name) != names.end();
}

}  // namespace

AxisSpec parseAxisSpec(std::string_view text) {
  const auto eq = text.find('=');
  if (eq == std::string_view::npos) fail(ErrorCategory::Parse, "axis '" + std::string(text) + "': expected name=start:stop:count");
  AxisSpec axis;
  axis.name = std::string(text.substr(0, eq));
  std::string_view rest = text.substr(eq + 1);
  const auto c1 = rest.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : rest.find(':', c1 + 1);
  if (c2 == std::string_view::npos) fail(ErrorCategory::Parse, "axis '" + axis.name + "': expected start:stop:count");
  axis.start = parseNumber(rest.substr(0, c1), "start");
  axis.stop = parseNumber(rest.substr(c1 + 1, c2 - c1 - 1), "stop");
  const std::string_view count = rest.substr(c2 + 1);
  const auto [ptr, ec] = std::from_chars(count.data(), count.data() + count.size(), axis.count);
  if (ec != std::errc() || ptr != count.data() + count.size() || count.empty()) {
    fail(ErrorCategory::Parse, "axis '" + axis.name + "': count must be an integer");
  }
  if (!isAxisName(axis.name)) fail(ErrorCategory::InvalidArgument, "unknown axis '" + axis.name + "'");
  require(axis.count >= 1, "axis '" + axis.name + "': count must be positive");
  return axis;
}

const std::vector<std::string>& axisNames() {
  static const std::vector<std::string> names = {
      "theta1",   "theta2", "gamma1", "gamma2", "gain_db", "gain1_db", "gain2_db", "path_phase",
      "alpha1",   "alpha2", "alpha_sq", "eta_in", "eta_hr1", "eta_hr2", "n_added", "env_n"};
  return names;
}

void setParameter(CircuitConfig& c, const std::string& name, double v) {
  auto coherent = [&](InputSpec& in, double amplitude) {
    const double theta = in.theta;
    in = InputSpec::coherent(amplitude, theta);
  };
  if (name == "theta1") c.input1.theta = v;
  else if (name == "theta2") c.input2.theta = v;
  else if (name == "gamma1") c.jpa1.gamma = v;
  else if (name == "gamma2") c.jpa2.gamma = v;
  else if (name == "gain_db") c.jpa1.gain_db = c.jpa2.gain_db = v;
  else if (name == "gain1_db") c.jpa1.gain_db = v;
  else if (name == "gain2_db") c.jpa2.gain_db = v;
  else if (name == "path_phase") c.path_phase = v;
  else if (name == "alpha1") coherent(c.input1, v);
  else if (name == "alpha2") coherent(c.input2, v);
  else if (name == "alpha_sq") {
    require(v >= 0.0, "alpha_sq must be non-negative");
    coherent(c.input1, std::sqrt(v));
    coherent(c.input2, std::sqrt(v));
  } else if (name == "eta_in") c.jpa1.eta_in = c.jpa2.eta_in = v;
  else if (name == "eta_hr1") c.eta_hr1 = v;
  else if (name == "eta_hr2") c.eta_hr2 = v;
  else if (name == "n_added") c.jpa1.n_added = c.jpa2.n_added = v;
  else if (name == "env_n") c.env_n = v;
  else fail(ErrorCategory::InvalidArgument, "unknown axis '" + name + "'");
}

const std::vector<std::string>& observableColumns() {
  static const std::vector<std::string> cols = {"N1", "N2", "P", "g2_1", "g2_2", "g2_C", "B"};
  return cols;
}

namespace {

std::optional<double> guarded(const std::function<double()>& f) {
  try {
    const double v = f();
    if (std::isfinite(v)) return v;
  } catch (const Error&) {
  }
  return std::nullopt;
}

std::vector<std::optional<double>*> fields(SweepRecord& r) { return {&r.n1, &r.n2, &r.p, &r.g2_1, &r.g2_2, &r.g2_c, &r.b}; }
std::vector<const std::optional<double>*> fields(const SweepRecord& r) {
  return {&r.n1, &r.n2, &r.p, &r.g2_1, &r.g2_2, &r.g2_c, &r.b};
}

}  // namespace

SweepRecord evaluatePoint(const CircuitConfig& config, const IpOptions& ip) {
  SweepRecord rec;
  std::optional<GaussianState> state;
  try {
    validate(config);
    state = runQumpi(config);
  } catch (const Error&) {
    return rec;  // unphysical or invalid point: whole row null
  }
  IpOptions serial_ip = ip;
  serial_ip.execution = Execution::Serial;  // the sweep already parallelizes over points
  const GaussianState& s = *state;
  rec.n1 = guarded([&] { return photonNumber(s, 0); });
  rec.n2 = guarded([&] { return photonNumber(s, 1); });
  rec.p = guarded([&] { return interferometricPower(s, 0, serial_ip).value; });
  rec.g2_1 = guarded([&] { return g2Auto(s, 0); });
  rec.g2_2 = guarded([&] { return g2Auto(s, 1); });
  rec.g2_c = guarded([&] { return g2Cross(s); });
  rec.b = guarded([&] { return balancing(s); });
  return rec;
}

SweepResult sweep(const CircuitConfig& config, const std::vector<AxisSpec>& axes, const SweepOptions& options) {
  SweepResult result;
  result.axes = axes;
  result.metadata.config_hash = configHash(config);
  result.metadata.timestamp = options.timestamp;

  std::vector<std::vector<double>> grids;
  long total = 1;
  for (const auto& axis : axes) {
    if (!isAxisName(axis.name)) fail(ErrorCategory::InvalidArgument, "unknown axis '" + axis.name + "'");
    require(axis.count >= 1, "axis '" + axis.name + "': count must be positive");
    grids.push_back(axis.values());
    total *= axis.count;
  }

  result.records.resize(total);
  auto evaluate = [&](long index) {
    std::vector<double> point(axes.size());
    long rem = index;
    for (int a = static_cast<int>(axes.size()) - 1; a >= 0; --a) {
      point[a] = grids[a][rem % axes[a].count];
      rem /= axes[a].count;
    }
    CircuitConfig cfg = config;
    for (std::size_t a = 0; a < axes.size(); ++a) setParameter(cfg, axes[a].name, point[a]);
    SweepRecord rec = evaluatePoint(cfg, options.ip);
    rec.point = std::move(point);
    result.records[index] = std::move(rec);
  };

  if (options.execution == Execution::Parallel) {
#pragma omp parallel for schedule(dynamic, 8)
    for (long i = 0; i < total; ++i) evaluate(i);
  } else {
    for (long i = 0; i < total; ++i) evaluate(i);
  }
  return result;
}

ThresholdResult findAntibunchingThreshold(const CircuitConfig& config, const ThresholdOptions& options) {
  require(config.input1.kind == InputSpec::Kind::Coherent && config.input2.kind == InputSpec::Kind::Coherent,
          "threshold search needs coherent inputs at both ports");
  require(options.alpha_sq_min >= 0.0 && options.alpha_sq_max > options.alpha_sq_min, "invalid |alpha|^2 range");
  require(options.scan_points >= 2, "scan needs at least two points");
  require(options.tolerance > 0.0, "tolerance must be positive");

  auto g2c = [&](double alpha_sq) -> std::optional<double> {
    CircuitConfig cfg = config;
    setParameter(cfg, "alpha_sq", alpha_sq);
    return guarded([&] { return g2Cross(runQumpi(cfg)); });
  };
  // Strictly below the classical bound; values within rounding of 1 count as classical.
  auto below = [](double g) { return g < 1.0 - 1e-12; };

  ThresholdResult result;
  for (double x : linspace(options.alpha_sq_min, options.alpha_sq_max, options.scan_points)) {
    result.scan.emplace_back(x, g2c(x));
  }
  int crossings = 0;
  std::size_t first = 0, before = 0;
  std::optional<std::size_t> last_defined;
  for (std::size_t i = 0; i < result.scan.size(); ++i) {
    if (!result.scan[i].second) continue;
    const bool b = below(*result.scan[i].second);
    if (last_defined) {
      const bool prev = below(*result.scan[*last_defined].second);
      if (b != prev) {
        if (!prev) {
          if (crossings == 0) {
            first = i;
            before = *last_defined;
          }
          ++crossings;
        } else {
          fail(ErrorCategory::NoCrossing, "g2_C returns above 1 inside the scan range; no single threshold");
        }
      }
    } else if (b) {
      fail(ErrorCategory::NoCrossing, "g2_C is already below 1 at the start of the scan range");
    }
    last_defined = i;
  }
  if (crossings == 0) fail(ErrorCategory::NoCrossing, "g2_C stays at or above 1 over the scan range");

  double lo = result.scan[before].first;
  double hi = result.scan[first].first;
  while (hi - lo > options.tolerance) {
    const double mid = 0.5 * (lo + hi);
    const auto g = g2c(mid);
    if (g && below(*g)) hi = mid;
    else lo = mid;
  }
  result.alpha_sq = 0.5 * (lo + hi);
  return result;
}

DatasetFormat parseFormat(std::string_view text) {
  if (text == "csv") return DatasetFormat::Csv;
  if (text == "json") return DatasetFormat::Json;
  fail(ErrorCategory::InvalidArgument, "unknown format '" + std::string(text) + "' (expected csv or json)");
}

namespace {

std::string formatNumber(double v) {
  char buf[64];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, ptr);
}

std::string toCsv(const SweepResult& r) {
  std::string out;
  bool first = true;
  auto cell = [&](const std::string& s) {
    if (!first) out += ',';
    out += s;
    first = false;
  };
  for (const auto& a : r.axes) cell(a.name);
  for (const auto& c : observableColumns()) cell(c);
  out += '\n';
  for (const auto& rec : r.records) {
    first = true;
    for (double x : rec.point) cell(formatNumber(x));
    for (const auto* f : fields(rec)) cell(*f ? formatNumber(**f) : "null");
    out += '\n';
  }
  return out;
}

std::string toJson(const SweepResult& r) {
  ordered_json j;
  j["metadata"] = {{"config_hash", r.metadata.config_hash},
                   {"version", r.metadata.version},
                   {"timestamp", r.metadata.timestamp}};
  j["axes"] = ordered_json::array();
  for (const auto& a : r.axes) {
    j["axes"].push_back({{"name", a.name}, {"start", a.start}, {"stop", a.stop}, {"count", a.count}});
  }
  j["columns"] = observableColumns();
  j["records"] = ordered_json::array();
  const auto& cols = observableColumns();
  for (const auto& rec : r.records) {
    ordered_json row;
    row["point"] = rec.point;
    const auto fs = fields(rec);
    for (std::size_t i = 0; i < cols.size(); ++i) row[cols[i]] = *fs[i] ? ordered_json(**fs[i]) : ordered_json(nullptr);
    j["records"].push_back(std::move(row));
  }
  return j.dump(2) + "\n";
}

}  // namespace

std::string datasetToString(const SweepResult& result, DatasetFormat format) {
  return format == DatasetFormat::Csv ? toCsv(result) : toJson(result);
}

void emitDataset(const SweepResult& result, DatasetFormat format, const std::string& path) {
  const std::string text = datasetToString(result, format);
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCategory::Io, "cannot open '" + path + "' for writing");
  out << text;
  out.close();
  if (!out) fail(ErrorCategory::Io, "write failed for '" + path + "'");
}

SweepResult parseDatasetJson(std::string_view text) {
  SweepResult r;
  try {
    const auto j = nlohmann::json::parse(text);
    r.metadata.config_hash = j.at("metadata").at("config_hash").get<std::string>();
    r.metadata.version = j.at("metadata").at("version").get<std::string>();
    r.metadata.timestamp = j.at("metadata").at("timestamp").get<std::string>();
    for (const auto& a : j.at("axes")) {
      r.axes.push_back({a.at("name").get<std::string>(), a.at("start").get<double>(), a.at("stop").get<double>(),
                        a.at("count").get<int>()});
    }
    const auto& cols = observableColumns();
    for (const auto& row : j.at("records")) {
      SweepRecord rec;
      rec.point = row.at("point").get<std::vector<double>>();
      auto fs = fields(rec);
      for (std::size_t i = 0; i < cols.size(); ++i) {
        const auto& v = row.at(cols[i]);
        if (!v.is_null()) *fs[i] = v.get<double>();
      }
      r.records.push_back(std::move(rec));
    }
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorCategory::Parse, std::string("dataset: ") + e.what());
  }
  return r;
}

}  // namespace qumpi

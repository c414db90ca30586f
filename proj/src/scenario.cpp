#include "dce/scenario.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <thread>

#include "dce/error.hpp"
#include "verbs.hpp"

namespace dce::scenario {

namespace {

constexpr struct {
  Verb verb;
  const char* name;
} kVerbs[] = {{Verb::Mirror, "mirror"}, {Verb::Moore, "moore"},     {Verb::Cavity, "cavity"},
              {Verb::Friction, "friction"}, {Verb::Plasma, "plasma"}, {Verb::Estimate, "estimate"}};

std::vector<double> grid_values(const json& axis, const std::string& where) {
  std::vector<double> v;
  int forms = 0;
  if (axis.contains("values")) {
    ++forms;
    const auto& a = axis.at("values");
    if (!a.is_array()) throw ValidationError(where + ".values: expected an array");
    for (const auto& e : a) {
      if (!e.is_number()) throw ValidationError(where + ".values: expected numbers");
      v.push_back(e.get<double>());
    }
  }
  for (const char* kind : {"linspace", "logspace"}) {
    if (!axis.contains(kind)) continue;
    ++forms;
    const auto& a = axis.at(kind);
    if (!a.is_array() || a.size() != 3 || !a[0].is_number() || !a[1].is_number() ||
        !a[2].is_number_integer())
      throw ValidationError(where + "." + kind + ": expected [start, stop, count]");
    const double lo = a[0].get<double>(), hi = a[1].get<double>();
    const int n = a[2].get<int>();
    const bool log = std::string(kind) == "logspace";
    if (log && !(lo > 0 && hi > 0)) throw ValidationError(where + ".logspace: bounds must be > 0");
    for (int i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : double(i) / (n - 1);
      v.push_back(log ? lo * std::pow(hi / lo, f) : lo + (hi - lo) * f);
    }
  }
  if (forms != 1) throw ValidationError(where + ": give exactly one of values, linspace, logspace");
  if (v.empty()) throw ValidationError(where + ": empty sweep axis");
  for (double x : v)
    if (!std::isfinite(x)) throw ValidationError(where + ": non-finite grid value");
  return v;
}

void set_param(json& params, const SweepAxis& axis, double value) {
  json* node = &params;
  std::stringstream ss(axis.param);
  std::string part;
  std::vector<std::string> parts;
  while (std::getline(ss, part, '.')) parts.push_back(part);
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    if (!node->is_object() || !node->contains(parts[i]))
      throw ValidationError("sweep: unknown parameter " + axis.param);
    node = &(*node)[parts[i]];
  }
  if (!node->is_object()) throw ValidationError("sweep: unknown parameter " + axis.param);
  json& leaf = (*node)[parts.back()];
  if (leaf.is_object()) {
    leaf["value"] = value;
    if (!axis.unit.empty()) leaf["unit"] = axis.unit;
  } else if (!axis.unit.empty()) {
    leaf = json{{"value", value}, {"unit", axis.unit}};
  } else {
    leaf = value;
  }
}

// Point i of the Cartesian product, first axis slowest.
std::vector<std::size_t> point_indices(const Scenario& s, std::size_t i) {
  std::vector<std::size_t> idx(s.sweep.size());
  for (std::size_t a = s.sweep.size(); a-- > 0;) {
    idx[a] = i % s.sweep[a].values.size();
    i /= s.sweep[a].values.size();
  }
  return idx;
}

void emit_json(const json& j, std::string& out, int level) {
  const std::string pad(2 * (level + 1), ' '), close(2 * level, ' ');
  switch (j.type()) {
    case json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (const auto& [k, v] : j.items()) {
        if (!first) out += ",\n";
        first = false;
        out += pad + json(k).dump() + ": ";
        emit_json(v, out, level + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        emit_json(j[i], out, level + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case json::value_t::number_float: {
      const double x = j.get<double>();
      if (!std::isfinite(x)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", x);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string csv_number(double x) {
  if (!std::isfinite(x)) return std::isnan(x) ? "nan" : (x > 0 ? "inf" : "-inf");
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

std::string csv_field(const json& v) {
  if (v.is_null()) return "";
  if (v.is_number_float()) return csv_number(v.get<double>());
  if (v.is_number() || v.is_boolean()) return v.dump();
  std::string s = v.is_string() ? v.get<std::string>() : v.dump();
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) q += c == '"' ? std::string("\"\"") : std::string(1, c);
  return q + "\"";
}

void write_atomic(const std::filesystem::path& target, const std::string& data) {
  auto tmp = target;
  tmp += ".tmp";
  {
    std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
    if (!f) throw ValidationError("cannot write " + tmp.string());
    f << data;
    f.flush();
    if (!f) throw ValidationError("write failed: " + tmp.string());
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace

const char* to_string(Verb v) noexcept {
  for (const auto& e : kVerbs)
    if (e.verb == v) return e.name;
  return "?";
}

Verb parse_verb(const std::string& s) {
  for (const auto& e : kVerbs)
    if (s == e.name) return e.verb;
  throw ValidationError("unknown verb '" + s + "' (mirror, moore, cavity, friction, plasma, estimate)");
}

Scenario parse_scenario(const std::string& text, const std::string& origin) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw ValidationError(origin + ": " + e.what());
  }
  if (!doc.is_object()) throw ValidationError(origin + ": top level must be an object");
  for (const auto& [k, _] : doc.items())
    if (k != "name" && k != "verb" && k != "params" && k != "sweep" && k != "output" &&
        k != "annotations" && k != "description")
      throw ValidationError(origin + ": " + k + ": unknown field");
  Scenario s;
  s.source = doc;
  if (!doc.contains("verb") || !doc["verb"].is_string())
    throw ValidationError(origin + ": verb: missing or not a string");
  try {
    s.verb = parse_verb(doc["verb"].get<std::string>());
  } catch (const ValidationError& e) {
    throw ValidationError(origin + ": verb: " + e.what());
  }
  s.name = to_string(s.verb);
  if (doc.contains("name")) {
    if (!doc["name"].is_string()) throw ValidationError(origin + ": name: expected a string");
    s.name = doc["name"].get<std::string>();
    if (s.name.empty() || s.name.find_first_not_of(
                              "abcdefghijklmnopqrstuvwxyzABCDEFGHIJKLMNOPQRSTUVWXYZ0123456789_-.") !=
                              std::string::npos || s.name[0] == '.')
      throw ValidationError(origin + ": name: use letters, digits, '_', '-', '.'");
  }
  if (!doc.contains("params") || !doc["params"].is_object())
    throw ValidationError(origin + ": params: missing or not an object");
  s.params = doc["params"];
  if (doc.contains("sweep")) {
    const auto& sw = doc["sweep"];
    if (!sw.is_array()) throw ValidationError(origin + ": sweep: expected an array of axes");
    for (std::size_t i = 0; i < sw.size(); ++i) {
      const std::string where = origin + ": sweep[" + std::to_string(i) + "]";
      const auto& ax = sw[i];
      if (!ax.is_object() || !ax.contains("param") || !ax["param"].is_string())
        throw ValidationError(where + ".param: missing");
      for (const auto& [k, _] : ax.items())
        if (k != "param" && k != "unit" && k != "values" && k != "linspace" && k != "logspace")
          throw ValidationError(where + "." + k + ": unknown field");
      SweepAxis axis;
      axis.param = ax["param"].get<std::string>();
      if (ax.contains("unit")) {
        if (!ax["unit"].is_string()) throw ValidationError(where + ".unit: expected a string");
        axis.unit = ax["unit"].get<std::string>();
      }
      axis.values = grid_values(ax, where);
      s.sweep.push_back(std::move(axis));
    }
  }
  if (doc.contains("output")) {
    const auto& o = doc["output"];
    if (!o.is_object()) throw ValidationError(origin + ": output: expected an object");
    for (const auto& [k, v] : o.items()) {
      if ((k != "csv" && k != "json") || !v.is_boolean())
        throw ValidationError(origin + ": output." + k + ": expected csv/json booleans");
      (k == "csv" ? s.write_csv : s.write_json) = v.get<bool>();
    }
  }
  if (doc.contains("annotations")) {
    if (!doc["annotations"].is_object())
      throw ValidationError(origin + ": annotations: expected an object");
    s.annotations = doc["annotations"];
  }
  if (doc.contains("description") && !doc["description"].is_string())
    throw ValidationError(origin + ": description: expected a string");
  // Fail early on schema errors in the base parameter block.
  const std::size_t n = point_count(s);
  for (std::size_t i = 0; i < n; ++i) {
    json p = s.params;
    const auto idx = point_indices(s, i);
    try {
      for (std::size_t a = 0; a < s.sweep.size(); ++a) set_param(p, s.sweep[a], s.sweep[a].values[idx[a]]);
      (void)detail::decode_job(s.verb, p);
    } catch (const ValidationError& e) {
      throw ValidationError(origin + (n > 1 ? " (sweep point " + std::to_string(i) + ")" : "") +
                            ": " + e.what());
    }
  }
  return s;
}

Scenario load_scenario(const std::filesystem::path& file) {
  std::ifstream f(file, std::ios::binary);
  if (!f) throw ValidationError("cannot read scenario file " + file.string());
  std::stringstream ss;
  ss << f.rdbuf();
  auto s = parse_scenario(ss.str(), file.filename().string());
  return s;
}

std::size_t point_count(const Scenario& s) {
  std::size_t n = 1;
  for (const auto& a : s.sweep) n *= a.values.size();
  return n;
}

std::size_t Report::failed() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const PointResult& p) { return !p.ok; }));
}

Report run_scenario(const Scenario& s, int jobs) {
  const std::size_t n = point_count(s);
  Report r;
  r.scenario = s;
  r.points.resize(n);
  std::vector<detail::Job> work(n);
  for (std::size_t i = 0; i < n; ++i) {
    json p = s.params;
    const auto idx = point_indices(s, i);
    auto& pt = r.points[i];
    pt.index = i;
    for (std::size_t a = 0; a < s.sweep.size(); ++a) {
      set_param(p, s.sweep[a], s.sweep[a].values[idx[a]]);
      pt.values[s.sweep[a].param] = s.sweep[a].values[idx[a]];
    }
    work[i] = detail::decode_job(s.verb, p);
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (std::size_t i; (i = next.fetch_add(1)) < n;) {
      auto& pt = r.points[i];
      try {
        work[i](pt);
        pt.ok = true;
      } catch (const Error& e) {
        pt.error_kind = dce::to_string(e.kind());
        pt.error = e.what();
      } catch (const std::exception& e) {
        pt.error_kind = "internal";
        pt.error = e.what();
      }
      if (!pt.ok) {
        pt.record = json::object();
        pt.table = {};
      }
    }
  };
  const int threads = std::clamp<int>(jobs, 1, static_cast<int>(std::max<std::size_t>(n, 1)));
  std::vector<std::thread> pool;
  for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& t : pool) t.join();
  return r;
}

std::string report_json(const Report& r) {
  json doc;
  doc["scenario"] = r.scenario.source;
  doc["git_describe"] = git_describe();
  json results = json::array(), failures = json::array();
  for (const auto& p : r.points) {
    json e;
    e["index"] = p.index;
    e["values"] = p.values;
    e["status"] = p.ok ? "ok" : "failed";
    if (p.ok) {
      e["record"] = p.record;
      if (!p.table.rows.empty()) e["table_rows"] = p.table.rows.size();
    }
    e["warnings"] = p.warnings;
    results.push_back(e);
    if (!p.ok) {
      failures.push_back(json{{"index", p.index}, {"values", p.values},
                              {"kind", p.error_kind}, {"message", p.error}});
    }
  }
  doc["results"] = results;
  doc["failures"] = failures;
  std::string out;
  emit_json(doc, out, 0);
  return out + "\n";
}

std::string report_csv(const Report& r) {
  std::vector<std::string> axes;
  for (const auto& a : r.scenario.sweep) axes.push_back(a.param);
  const bool tabular = std::any_of(r.points.begin(), r.points.end(),
                                   [](const PointResult& p) { return p.ok && !p.table.rows.empty(); });
  std::string out = "point";
  const auto header_tail = [&](const std::vector<std::string>& cols) {
    for (const auto& c : cols) out += "," + csv_field(json(c));
    out += "\n";
  };
  if (tabular) {
    std::vector<std::string> cols = axes;
    for (const auto& p : r.points)
      if (p.ok && !p.table.rows.empty()) {
        cols.insert(cols.end(), p.table.columns.begin(), p.table.columns.end());
        break;
      }
    header_tail(cols);
    for (const auto& p : r.points) {
      for (const auto& row : p.table.rows) {
        out += std::to_string(p.index);
        for (const auto& a : axes) out += "," + csv_field(p.values[a]);
        for (double x : row) out += "," + csv_number(x);
        out += "\n";
      }
    }
    return out;
  }
  std::vector<std::string> keys;
  for (const auto& p : r.points)
    for (const auto& [k, _] : p.record.items())
      if (std::find(keys.begin(), keys.end(), k) == keys.end()) keys.push_back(k);
  std::vector<std::string> cols{"status"};
  cols.insert(cols.end(), axes.begin(), axes.end());
  cols.insert(cols.end(), keys.begin(), keys.end());
  header_tail(cols);
  for (const auto& p : r.points) {
    out += std::to_string(p.index) + "," + (p.ok ? "ok" : "failed");
    for (const auto& a : axes) out += "," + csv_field(p.values[a]);
    for (const auto& k : keys) out += "," + (p.record.contains(k) ? csv_field(p.record[k]) : "");
    out += "\n";
  }
  return out;
}

std::vector<std::filesystem::path> write_report(const Report& r, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  std::vector<std::filesystem::path> written;
  if (r.scenario.write_json) {
    const auto p = dir / (r.scenario.name + ".json");
    write_atomic(p, report_json(r));
    written.push_back(p);
  }
  if (r.scenario.write_csv) {
    const auto p = dir / (r.scenario.name + ".csv");
    write_atomic(p, report_csv(r));
    written.push_back(p);
  }
  return written;
}

const char* git_describe() noexcept {
#ifdef DCE_GIT_DESCRIBE
  return DCE_GIT_DESCRIBE;
#else
  return "unknown";
#endif
}

}  // namespace dce::scenario

#include "report.hpp"

#include <cmath>
#include <cstdio>

namespace nssing::cli {

std::string Table::to_csv() const {
  std::string out;
  for (std::size_t c = 0; c < columns.size(); ++c) out += (c ? "," : "") + columns[c];
  out += '\n';
  char buf[32];
  for (const auto& row : rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (std::isnan(row[c])) {
        out += c ? ",nan" : "nan";
        continue;
      }
      std::snprintf(buf, sizeof buf, "%.17g", row[c]);
      if (c) out += ',';
      out += buf;
    }
    out += '\n';
  }
  return out;
}

void Report::check(const std::string& name, double value, const std::string& relation, double tolerance) {
  bool pass = false;
  if (relation == "<") {
    pass = value < tolerance;
  } else if (relation == "<=") {
    pass = value <= tolerance;
  }
  checks_.push_back({name, value, relation, tolerance, pass});
}

bool Report::passed() const {
  if (out_of_regime_) return false;
  for (const auto& c : checks_)
    if (!c.pass) return false;
  return true;
}

std::string Report::status() const {
  if (out_of_regime_) return "out_of_regime";
  return passed() ? "pass" : "fail";
}

json Report::to_json(bool timing) const {
  json j;
  j["schema"] = "nssing.report";
  j["schema_version"] = kSchemaVersion;
  j["command"] = command_;
  j["config"] = config_;
  j["results"] = results_;
  json checks = json::array();
  for (const auto& c : checks_)
    checks.push_back({{"name", c.name},
                      {"value", number(c.value)},
                      {"relation", c.relation},
                      {"tolerance", number(c.tolerance)},
                      {"pass", c.pass}});
  j["checks"] = checks;
  j["pass"] = passed();
  j["status"] = status();
  if (timing) j["timing"] = {{"duration_seconds", duration_}};
  return j;
}

json number(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

json to_json(const Vec3& v) { return json::array({number(v.x()), number(v.y()), number(v.z())}); }

json to_json(const Mat3& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < 3; ++i) rows.push_back(json::array({number(m(i, 0)), number(m(i, 1)), number(m(i, 2))}));
  return rows;
}

}  // namespace nssing::cli

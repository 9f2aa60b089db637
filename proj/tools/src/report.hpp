#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "json.hpp"
#include "nssing/vec3.hpp"

namespace nssing::cli {

using json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

/// One tolerance test: pass iff `value relation tolerance`, relation one of
/// "<" or "<=". Stored with its inputs so it can be recomputed from the report.
struct Check {
  std::string name;
  double value = 0.0;
  std::string relation;
  double tolerance = 0.0;
  bool pass = false;
};

/// Plot-ready table with fixed columns.
struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<double>> rows;
  std::string to_csv() const;
};

class Report {
 public:
  explicit Report(std::string command) : command_(std::move(command)) {}

  json& config() { return config_; }
  json& results() { return results_; }
  Table& table() { return table_; }
  const Table& table() const { return table_; }

  void check(const std::string& name, double value, const std::string& relation, double tolerance);
  void set_out_of_regime(bool v) { out_of_regime_ = v; }
  void set_duration(double seconds) { duration_ = seconds; }

  bool passed() const;
  bool out_of_regime() const { return out_of_regime_; }
  std::string status() const;
  json to_json(bool timing) const;

 private:
  std::string command_;
  json config_ = json::object();
  json results_ = json::object();
  std::vector<Check> checks_;
  Table table_;
  bool out_of_regime_ = false;
  double duration_ = 0.0;
};

json to_json(const Vec3& v);
json to_json(const Mat3& m);
/// NaN and infinities become null.
json number(double v);

}  // namespace nssing::cli

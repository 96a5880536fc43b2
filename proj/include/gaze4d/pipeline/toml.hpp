#pragma once

#include <cstdint>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace gaze4d {

// Minimal TOML subset: [section] headers (nested via dots), `key = value`
// pairs, strings, booleans, integers, floats, homogeneous arrays and #
// comments. No array-of-tables, no multiline strings, no datetimes.
class TomlTable {
public:
  static TomlTable parse_file(const std::string& path);
  static TomlTable parse_string(const std::string& text,
                                const std::string& origin);

  bool has(const std::string& key) const;

  // Typed getters; missing keys or type mismatches raise ConfigError.
  std::string get_string(const std::string& key) const;
  std::string get_string(const std::string& key,
                         const std::string& fallback) const;
  int64_t get_int(const std::string& key) const;
  int64_t get_int(const std::string& key, int64_t fallback) const;
  double get_double(const std::string& key) const;  // ints promote
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key) const;
  std::vector<std::string> get_strings(const std::string& key) const;

  // Immediate child table names under a dotted prefix, e.g.
  // subtables("instances") -> {"board", "cube"}.
  std::set<std::string> subtables(const std::string& prefix) const;

  const std::string& origin() const { return origin_; }

private:
  struct Value {
    enum class Kind { kString, kInt, kFloat, kBool, kNumArray, kStrArray };
    Kind kind = Kind::kString;
    std::string s;
    int64_t i = 0;
    double f = 0.0;
    bool b = false;
    std::vector<double> nums;
    std::vector<std::string> strs;
  };

  const Value& require(const std::string& key, Value::Kind kind) const;
  [[noreturn]] void fail(const std::string& key, const char* what) const;

  std::map<std::string, Value> values_;
  std::string origin_;
};

}  // namespace gaze4d

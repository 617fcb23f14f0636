#ifndef KICKOFF_COMMON_TOML_HPP_
#define KICKOFF_COMMON_TOML_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace kickoff::toml {

// Minimal TOML subset reader covering what the config and scenario files
// use: [table] headers, key = value pairs, strings, integers, floats,
// booleans, and (nested) arrays. Full-line and trailing # comments.

struct Value;
using Array = std::vector<Value>;

struct Value {
  std::variant<std::int64_t, double, bool, std::string, Array> data;

  bool is_int() const { return std::holds_alternative<std::int64_t>(data); }
  bool is_double() const { return std::holds_alternative<double>(data); }
  bool is_bool() const { return std::holds_alternative<bool>(data); }
  bool is_string() const { return std::holds_alternative<std::string>(data); }
  bool is_array() const { return std::holds_alternative<Array>(data); }

  std::int64_t as_int() const;
  double as_double() const;  // accepts integer values too
  bool as_bool() const;
  const std::string& as_string() const;
  const Array& as_array() const;
};

class Document {
 public:
  // Keys are "table.key" (bare "key" for the root table).
  static Document parse(const std::string& text);
  static Document parse_file(const std::string& path);

  bool has(const std::string& key) const { return values_.count(key) > 0; }
  const Value& at(const std::string& key) const;

  std::int64_t get_int(const std::string& key, std::int64_t fallback) const;
  double get_double(const std::string& key, double fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::string get_string(const std::string& key, std::string fallback) const;
  std::vector<double> get_double_array(const std::string& key) const;

  const std::map<std::string, Value>& values() const { return values_; }

 private:
  std::map<std::string, Value> values_;
};

}  // namespace kickoff::toml

#endif  // KICKOFF_COMMON_TOML_HPP_

#include "kickoff/common/toml.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace kickoff::toml {
namespace {

void fail(std::size_t line, const std::string& what) {
  throw std::runtime_error("toml: line " + std::to_string(line) + ": " + what);
}

std::string strip(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

// Cuts a trailing comment, respecting quoted strings.
std::string strip_comment(const std::string& s) {
  bool in_string = false;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] == '"') in_string = !in_string;
    if (s[i] == '#' && !in_string) return s.substr(0, i);
  }
  return s;
}

struct Cursor {
  const std::string& text;
  std::size_t pos = 0;
  std::size_t line;

  bool done() const { return pos >= text.size(); }
  char peek() const { return text[pos]; }
  void skip_ws() {
    while (!done() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  }
};

Value parse_value(Cursor& c);

Value parse_string(Cursor& c) {
  ++c.pos;  // opening quote
  std::string out;
  while (!c.done() && c.peek() != '"') {
    char ch = c.peek();
    if (ch == '\\') {
      ++c.pos;
      if (c.done()) fail(c.line, "dangling escape in string");
      switch (c.peek()) {
        case 'n': out.push_back('\n'); break;
        case 't': out.push_back('\t'); break;
        case '"': out.push_back('"'); break;
        case '\\': out.push_back('\\'); break;
        default: fail(c.line, "unsupported escape in string");
      }
    } else {
      out.push_back(ch);
    }
    ++c.pos;
  }
  if (c.done()) fail(c.line, "unterminated string");
  ++c.pos;  // closing quote
  return Value{out};
}

Value parse_array(Cursor& c) {
  ++c.pos;  // '['
  Array items;
  c.skip_ws();
  while (!c.done() && c.peek() != ']') {
    items.push_back(parse_value(c));
    c.skip_ws();
    if (!c.done() && c.peek() == ',') {
      ++c.pos;
      c.skip_ws();
    }
  }
  if (c.done()) fail(c.line, "unterminated array");
  ++c.pos;  // ']'
  return Value{items};
}

Value parse_scalar(Cursor& c) {
  std::size_t start = c.pos;
  while (!c.done() && c.peek() != ',' && c.peek() != ']' &&
         !std::isspace(static_cast<unsigned char>(c.peek()))) {
    ++c.pos;
  }
  std::string tok = c.text.substr(start, c.pos - start);
  if (tok.empty()) fail(c.line, "missing value");
  if (tok == "true") return Value{true};
  if (tok == "false") return Value{false};
  bool flt = tok.find_first_of(".eE") != std::string::npos;
  // "1e5" is a float; a leading sign alone does not make one.
  errno = 0;
  char* end = nullptr;
  if (!flt) {
    long long v = std::strtoll(tok.c_str(), &end, 10);
    if (errno == 0 && end && *end == '\0') return Value{static_cast<std::int64_t>(v)};
  }
  errno = 0;
  double d = std::strtod(tok.c_str(), &end);
  if (errno != 0 || !end || *end != '\0') fail(c.line, "bad value '" + tok + "'");
  return Value{d};
}

Value parse_value(Cursor& c) {
  c.skip_ws();
  if (c.done()) fail(c.line, "missing value");
  if (c.peek() == '"') return parse_string(c);
  if (c.peek() == '[') return parse_array(c);
  return parse_scalar(c);
}

}  // namespace

std::int64_t Value::as_int() const {
  if (!is_int()) throw std::runtime_error("toml: value is not an integer");
  return std::get<std::int64_t>(data);
}

double Value::as_double() const {
  if (is_int()) return static_cast<double>(std::get<std::int64_t>(data));
  if (!is_double()) throw std::runtime_error("toml: value is not a number");
  return std::get<double>(data);
}

bool Value::as_bool() const {
  if (!is_bool()) throw std::runtime_error("toml: value is not a boolean");
  return std::get<bool>(data);
}

const std::string& Value::as_string() const {
  if (!is_string()) throw std::runtime_error("toml: value is not a string");
  return std::get<std::string>(data);
}

const Array& Value::as_array() const {
  if (!is_array()) throw std::runtime_error("toml: value is not an array");
  return std::get<Array>(data);
}

Document Document::parse(const std::string& text) {
  Document doc;
  std::istringstream in(text);
  std::string raw;
  std::string table;
  std::size_t lineno = 0;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string line = strip(strip_comment(raw));
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail(lineno, "malformed table header");
      table = strip(line.substr(1, line.size() - 2));
      if (table.empty()) fail(lineno, "empty table name");
      continue;
    }
    std::size_t eq = std::string::npos;
    bool in_string = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
      if (line[i] == '"') in_string = !in_string;
      if (line[i] == '=' && !in_string) {
        eq = i;
        break;
      }
    }
    if (eq == std::string::npos) fail(lineno, "expected key = value");
    std::string key = strip(line.substr(0, eq));
    if (key.empty()) fail(lineno, "empty key");
    std::string rest = strip(line.substr(eq + 1));
    // Multi-line arrays: keep appending lines until brackets balance.
    while (true) {
      int depth = 0;
      bool in_str = false;
      for (char ch : rest) {
        if (ch == '"') in_str = !in_str;
        if (in_str) continue;
        if (ch == '[') ++depth;
        if (ch == ']') --depth;
      }
      if (depth <= 0) break;
      if (!std::getline(in, raw)) fail(lineno, "unterminated array");
      ++lineno;
      rest += " " + strip(strip_comment(raw));
    }
    Cursor c{rest, 0, lineno};
    Value v = parse_value(c);
    c.skip_ws();
    if (!c.done()) fail(lineno, "trailing content after value");
    std::string full = table.empty() ? key : table + "." + key;
    doc.values_[full] = std::move(v);
  }
  return doc;
}

Document Document::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("toml: cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse(buf.str());
}

const Value& Document::at(const std::string& key) const {
  auto it = values_.find(key);
  if (it == values_.end()) throw std::runtime_error("toml: missing key '" + key + "'");
  return it->second;
}

std::int64_t Document::get_int(const std::string& key, std::int64_t fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_int();
}

double Document::get_double(const std::string& key, double fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_double();
}

bool Document::get_bool(const std::string& key, bool fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? fallback : it->second.as_bool();
}

std::string Document::get_string(const std::string& key, std::string fallback) const {
  auto it = values_.find(key);
  return it == values_.end() ? std::move(fallback) : it->second.as_string();
}

std::vector<double> Document::get_double_array(const std::string& key) const {
  std::vector<double> out;
  for (const Value& v : at(key).as_array()) out.push_back(v.as_double());
  return out;
}

}  // namespace kickoff::toml

#include "gaze4d/pipeline/toml.hpp"

#include <cctype>
#include <fstream>
#include <sstream>

#include "gaze4d/core/errors.hpp"

namespace gaze4d {

namespace {

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return "";
  size_t e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

// Strips a # comment that is not inside a quoted string.
std::string strip_comment(const std::string& line) {
  bool in_string = false;
  for (size_t i = 0; i < line.size(); ++i) {
    const char c = line[i];
    if (c == '"' && (i == 0 || line[i - 1] != '\\')) in_string = !in_string;
    if (c == '#' && !in_string) return line.substr(0, i);
  }
  return line;
}

bool valid_key(const std::string& k) {
  if (k.empty()) return false;
  for (char c : k)
    if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' ||
          c == '-' || c == '.'))
      return false;
  return true;
}

std::string unescape(const std::string& raw, const std::string& where) {
  std::string out;
  for (size_t i = 0; i < raw.size(); ++i) {
    if (raw[i] != '\\') {
      out += raw[i];
      continue;
    }
    if (i + 1 >= raw.size())
      throw ParseError(where + ": dangling escape in string");
    const char c = raw[++i];
    switch (c) {
      case '"': out += '"'; break;
      case '\\': out += '\\'; break;
      case 'n': out += '\n'; break;
      case 't': out += '\t'; break;
      default:
        throw ParseError(where + ": unsupported escape \\" +
                         std::string(1, c));
    }
  }
  return out;
}

bool parse_number(const std::string& tok, int64_t* i, double* f,
                  bool* is_float) {
  const std::string t = trim(tok);
  if (t.empty()) return false;
  *is_float = t.find_first_of(".eE") != std::string::npos &&
              t.find("0x") != 0;
  // "inf"/"nan" intentionally unsupported.
  try {
    size_t pos = 0;
    if (*is_float) {
      *f = std::stod(t, &pos);
    } else {
      *i = std::stoll(t, &pos, 10);
      *f = static_cast<double>(*i);
    }
    return pos == t.size();
  } catch (const std::exception&) {
    return false;
  }
}

// Splits a [a, b, c] body at top-level commas (strings may hold commas).
std::vector<std::string> split_array(const std::string& body,
                                     const std::string& where) {
  std::vector<std::string> items;
  std::string cur;
  bool in_string = false;
  for (size_t i = 0; i < body.size(); ++i) {
    const char c = body[i];
    if (c == '"' && (i == 0 || body[i - 1] != '\\')) in_string = !in_string;
    if (c == ',' && !in_string) {
      items.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  if (in_string) throw ParseError(where + ": unterminated string in array");
  const std::string last = trim(cur);
  if (!last.empty()) items.push_back(last);
  return items;
}

}  // namespace

TomlTable TomlTable::parse_string(const std::string& text,
                                  const std::string& origin) {
  TomlTable table;
  table.origin_ = origin;
  std::istringstream in(text);
  std::string line;
  std::string prefix;
  int line_no = 0;

  while (std::getline(in, line)) {
    ++line_no;
    const std::string where = origin + ":" + std::to_string(line_no);
    line = trim(strip_comment(line));
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.size() >= 2 && line[1] == '[')
        throw ParseError(where + ": array-of-tables is not supported");
      if (line.back() != ']')
        throw ParseError(where + ": malformed section header");
      prefix = trim(line.substr(1, line.size() - 2));
      if (!valid_key(prefix))
        throw ParseError(where + ": invalid section name '" + prefix + "'");
      continue;
    }

    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ParseError(where + ": expected `key = value`");
    const std::string key = trim(line.substr(0, eq));
    const std::string raw = trim(line.substr(eq + 1));
    if (!valid_key(key))
      throw ParseError(where + ": invalid key '" + key + "'");
    if (raw.empty()) throw ParseError(where + ": missing value");
    const std::string full = prefix.empty() ? key : prefix + "." + key;
    if (table.values_.count(full))
      throw ParseError(where + ": duplicate key '" + full + "'");

    Value v;
    if (raw.front() == '"') {
      if (raw.size() < 2 || raw.back() != '"')
        throw ParseError(where + ": unterminated string");
      v.kind = Value::Kind::kString;
      v.s = unescape(raw.substr(1, raw.size() - 2), where);
    } else if (raw == "true" || raw == "false") {
      v.kind = Value::Kind::kBool;
      v.b = raw == "true";
    } else if (raw.front() == '[') {
      if (raw.back() != ']')
        throw ParseError(where + ": unterminated array");
      const auto items = split_array(raw.substr(1, raw.size() - 2), where);
      bool strings = !items.empty() && items.front().front() == '"';
      v.kind = strings ? Value::Kind::kStrArray : Value::Kind::kNumArray;
      for (const std::string& item : items) {
        if (strings) {
          if (item.size() < 2 || item.front() != '"' || item.back() != '"')
            throw ParseError(where + ": mixed or malformed array element");
          v.strs.push_back(unescape(item.substr(1, item.size() - 2), where));
        } else {
          int64_t iv;
          double fv;
          bool is_float;
          if (!parse_number(item, &iv, &fv, &is_float))
            throw ParseError(where + ": bad array number '" + item + "'");
          v.nums.push_back(fv);
        }
      }
    } else {
      int64_t iv;
      double fv;
      bool is_float;
      if (!parse_number(raw, &iv, &fv, &is_float))
        throw ParseError(where + ": unparseable value '" + raw + "'");
      if (is_float) {
        v.kind = Value::Kind::kFloat;
        v.f = fv;
      } else {
        v.kind = Value::Kind::kInt;
        v.i = iv;
        v.f = fv;
      }
    }
    table.values_.emplace(full, std::move(v));
  }
  return table;
}

TomlTable TomlTable::parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open config: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_string(ss.str(), path);
}

bool TomlTable::has(const std::string& key) const {
  return values_.count(key) != 0;
}

void TomlTable::fail(const std::string& key, const char* what) const {
  throw ConfigError(origin_ + ": key '" + key + "' " + what);
}

const TomlTable::Value& TomlTable::require(const std::string& key,
                                           Value::Kind kind) const {
  const auto it = values_.find(key);
  if (it == values_.end()) fail(key, "is missing");
  const Value& v = it->second;
  if (v.kind == kind) return v;
  // Ints promote to floats.
  if (kind == Value::Kind::kFloat && v.kind == Value::Kind::kInt) return v;
  fail(key, "has the wrong type");
}

std::string TomlTable::get_string(const std::string& key) const {
  return require(key, Value::Kind::kString).s;
}
std::string TomlTable::get_string(const std::string& key,
                                  const std::string& fallback) const {
  return has(key) ? get_string(key) : fallback;
}
int64_t TomlTable::get_int(const std::string& key) const {
  return require(key, Value::Kind::kInt).i;
}
int64_t TomlTable::get_int(const std::string& key, int64_t fallback) const {
  return has(key) ? get_int(key) : fallback;
}
double TomlTable::get_double(const std::string& key) const {
  return require(key, Value::Kind::kFloat).f;
}
double TomlTable::get_double(const std::string& key, double fallback) const {
  return has(key) ? get_double(key) : fallback;
}
bool TomlTable::get_bool(const std::string& key) const {
  return require(key, Value::Kind::kBool).b;
}
bool TomlTable::get_bool(const std::string& key, bool fallback) const {
  return has(key) ? get_bool(key) : fallback;
}
std::vector<double> TomlTable::get_doubles(const std::string& key) const {
  return require(key, Value::Kind::kNumArray).nums;
}
std::vector<std::string> TomlTable::get_strings(
    const std::string& key) const {
  return require(key, Value::Kind::kStrArray).strs;
}

std::set<std::string> TomlTable::subtables(const std::string& prefix) const {
  std::set<std::string> names;
  const std::string p = prefix + ".";
  for (const auto& [key, value] : values_) {
    if (key.rfind(p, 0) != 0) continue;
    const size_t dot = key.find('.', p.size());
    if (dot != std::string::npos)
      names.insert(key.substr(p.size(), dot - p.size()));
  }
  return names;
}

}  // namespace gaze4d

#include "levlab/toml_lite.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>
#include <vector>

#include "levlab/error.hpp"

namespace levlab::toml_lite {
namespace {

using Json = nlohmann::ordered_json;

class Parser {
 public:
  explicit Parser(const std::string& text) : s_(text) {}

  Json run() {
    Json root = Json::object();
    Json* table = &root;
    while (true) {
      skip_blank_lines();
      if (eof()) break;
      if (peek() == '[') {
        table = &open_table(root);
      } else {
        const std::vector<std::string> key = parse_key();
        skip_ws();
        expect('=');
        skip_ws();
        Json value = parse_value();
        assign(*table, key, std::move(value));
      }
      end_of_line();
    }
    return root;
  }

 private:
  const std::string& s_;
  std::size_t i_ = 0;
  int line_ = 1;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("toml line " + std::to_string(line_) + ": " + what);
  }
  bool eof() const { return i_ >= s_.size(); }
  char peek() const { return eof() ? '\0' : s_[i_]; }
  char get() {
    const char c = s_[i_++];
    if (c == '\n') ++line_;
    return c;
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    get();
  }
  void skip_ws() {
    while (!eof() && (peek() == ' ' || peek() == '\t')) get();
  }
  void skip_comment() {
    if (peek() == '#') {
      while (!eof() && peek() != '\n') get();
    }
  }
  void skip_blank_lines() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  // Whitespace, comments and newlines inside arrays.
  void skip_all() {
    while (!eof()) {
      skip_ws();
      skip_comment();
      if (peek() == '\n' || peek() == '\r') {
        get();
      } else {
        break;
      }
    }
  }
  void end_of_line() {
    skip_ws();
    skip_comment();
    if (eof()) return;
    if (peek() == '\r') get();
    if (peek() != '\n') fail("unexpected text after value");
    get();
  }

  std::vector<std::string> parse_key() {
    std::vector<std::string> parts;
    while (true) {
      skip_ws();
      if (peek() == '"') {
        parts.push_back(parse_basic_string());
      } else if (peek() == '\'') {
        parts.push_back(parse_literal_string());
      } else {
        std::string k;
        while (!eof() && (std::isalnum(static_cast<unsigned char>(peek())) || peek() == '_' || peek() == '-')) {
          k += get();
        }
        if (k.empty()) fail("expected a key");
        parts.push_back(k);
      }
      skip_ws();
      if (peek() != '.') break;
      get();
    }
    return parts;
  }

  Json& open_table(Json& root) {
    expect('[');
    if (peek() == '[') fail("arrays of tables are not supported");
    const std::vector<std::string> key = parse_key();
    expect(']');
    Json* t = &root;
    for (const auto& k : key) {
      if (!t->contains(k)) (*t)[k] = Json::object();
      t = &(*t)[k];
      if (!t->is_object()) fail("'" + k + "' is not a table");
    }
    return *t;
  }

  void assign(Json& table, const std::vector<std::string>& key, Json value) {
    Json* t = &table;
    for (std::size_t n = 0; n + 1 < key.size(); ++n) {
      if (!t->contains(key[n])) (*t)[key[n]] = Json::object();
      t = &(*t)[key[n]];
      if (!t->is_object()) fail("'" + key[n] + "' is not a table");
    }
    if (t->contains(key.back())) fail("duplicate key '" + key.back() + "'");
    (*t)[key.back()] = std::move(value);
  }

  std::string parse_basic_string() {
    expect('"');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      char c = get();
      if (c == '"') break;
      if (c == '\\') {
        if (eof()) fail("unterminated escape");
        const char e = get();
        switch (e) {
          case 'n': out += '\n'; break;
          case 't': out += '\t'; break;
          case 'r': out += '\r'; break;
          case '"': out += '"'; break;
          case '\\': out += '\\'; break;
          default: fail(std::string("unsupported escape \\") + e);
        }
      } else {
        out += c;
      }
    }
    return out;
  }

  std::string parse_literal_string() {
    expect('\'');
    std::string out;
    while (true) {
      if (eof() || peek() == '\n') fail("unterminated string");
      const char c = get();
      if (c == '\'') break;
      out += c;
    }
    return out;
  }

  Json parse_value() {
    const char c = peek();
    if (c == '"') return parse_basic_string();
    if (c == '\'') return parse_literal_string();
    if (c == '[') return parse_array();
    if (c == '{') return parse_inline_table();
    std::string tok;
    while (!eof() && !std::isspace(static_cast<unsigned char>(peek())) && peek() != ',' && peek() != ']' &&
           peek() != '}' && peek() != '#') {
      tok += get();
    }
    if (tok == "true") return true;
    if (tok == "false") return false;
    return parse_number(tok);
  }

  Json parse_number(std::string tok) {
    if (tok.empty()) fail("expected a value");
    std::string clean;
    for (char ch : tok) {
      if (ch != '_') clean += ch;
    }
    const bool neg = !clean.empty() && clean[0] == '-';
    const std::string body = (!clean.empty() && (clean[0] == '-' || clean[0] == '+')) ? clean.substr(1) : clean;
    if (body == "inf") return neg ? -std::numeric_limits<double>::infinity() : std::numeric_limits<double>::infinity();
    if (body == "nan") return std::numeric_limits<double>::quiet_NaN();
    const bool is_float = clean.find_first_of(".eE") != std::string::npos;
    try {
      std::size_t used = 0;
      if (is_float) {
        const double v = std::stod(clean, &used);
        if (used == clean.size()) return v;
      } else {
        const long long v = std::stoll(clean, &used);
        if (used == clean.size()) return v;
      }
    } catch (const std::exception&) {
    }
    fail("cannot parse value '" + tok + "'");
  }

  Json parse_array() {
    expect('[');
    Json arr = Json::array();
    while (true) {
      skip_all();
      if (peek() == ']') {
        get();
        return arr;
      }
      arr.push_back(parse_value());
      skip_all();
      if (peek() == ',') {
        get();
      } else if (peek() != ']') {
        fail("expected ',' or ']' in array");
      }
    }
  }

  Json parse_inline_table() {
    expect('{');
    Json t = Json::object();
    skip_ws();
    if (peek() == '}') {
      get();
      return t;
    }
    while (true) {
      const std::vector<std::string> key = parse_key();
      skip_ws();
      expect('=');
      skip_ws();
      assign(t, key, parse_value());
      skip_ws();
      if (peek() == ',') {
        get();
        continue;
      }
      expect('}');
      return t;
    }
  }
};

}  // namespace

nlohmann::ordered_json parse(const std::string& text) { return Parser(text).run(); }

nlohmann::ordered_json parse_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace levlab::toml_lite

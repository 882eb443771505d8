#include "qcorr_app/config.hpp"

#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qcorr::app {

namespace {

std::string located(const std::string& source, int line, int column, const std::string& message) {
  std::ostringstream os;
  os << source;
  if (line > 0) os << ':' << line << ':' << column;
  os << ": " << message;
  return os.str();
}

bool is_key_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_key_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }
bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }

}  // namespace

ParseError::ParseError(const std::string& source, int line, int column, const std::string& message)
    : std::runtime_error(located(source, line, column, message)), line_(line), column_(column) {}

KeyValueFile KeyValueFile::parse(std::string_view text, std::string source) {
  KeyValueFile out;
  out.source_ = std::move(source);
  int line_no = 0;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t end = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    pos = end + 1;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);

    std::size_t first = 0;
    while (first < line.size() && is_blank(line[first])) ++first;
    if (first == line.size()) continue;
    const auto fail = [&](std::size_t col, const std::string& msg) {
      throw ParseError(out.source_, line_no, int(col) + 1, msg);
    };

    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) fail(first, "expected 'key = value'");
    std::size_t key_end = eq;
    while (key_end > first && is_blank(line[key_end - 1])) --key_end;
    if (key_end == first) fail(first, "missing key before '='");
    if (!is_key_start(line[first])) fail(first, "malformed key");
    for (std::size_t i = first; i < key_end; ++i)
      if (!is_key_char(line[i])) fail(i, "malformed key");

    std::size_t value_start = eq + 1;
    while (value_start < line.size() && is_blank(line[value_start])) ++value_start;
    std::size_t value_end = line.size();
    while (value_end > value_start && is_blank(line[value_end - 1])) --value_end;
    if (value_start == value_end) fail(eq + 1, "missing value after '='");

    Entry e{std::string(line.substr(first, key_end - first)),
            std::string(line.substr(value_start, value_end - value_start)), line_no,
            int(first) + 1, int(value_start) + 1};
    if (const Entry* dup = out.find(e.key))
      fail(first, "duplicate key '" + e.key + "' (first set on line " + std::to_string(dup->line) + ")");
    out.entries_.push_back(std::move(e));
  }
  out.line_count_ = line_no;
  return out;
}

KeyValueFile KeyValueFile::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(path.string(), 0, 0, "cannot open file");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse(buffer.str(), path.string());
}

const Entry* KeyValueFile::find(std::string_view key) const {
  for (const Entry& e : entries_)
    if (e.key == key) return &e;
  return nullptr;
}

double KeyValueFile::number(std::string_view key, bool allow_infinite) const {
  const auto v = optional_number(key, allow_infinite);
  if (!v) fail_missing(key);
  return *v;
}

std::optional<double> KeyValueFile::optional_number(std::string_view key, bool allow_infinite) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  const char* begin = e->value.data();
  const char* end = begin + e->value.size();
  if (begin != end && *begin == '+') ++begin;
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(begin, end, v);
  if (ec != std::errc() || ptr != end || std::isnan(v))
    fail_at(*e, true, "'" + e->value + "' is not a number");
  if (std::isinf(v) && !allow_infinite) fail_at(*e, true, "'" + e->key + "' must be finite");
  return v;
}

std::optional<long> KeyValueFile::optional_count(std::string_view key) const {
  const Entry* e = find(key);
  if (!e) return std::nullopt;
  long v = 0;
  const char* end = e->value.data() + e->value.size();
  const auto [ptr, ec] = std::from_chars(e->value.data(), end, v);
  if (ec != std::errc() || ptr != end || v < 0)
    fail_at(*e, true, "'" + e->key + "' must be a non-negative integer");
  return v;
}

void KeyValueFile::require_known(std::span<const std::string_view> allowed) const {
  for (const Entry& e : entries_) {
    bool ok = false;
    for (std::string_view a : allowed) ok = ok || e.key == a;
    if (!ok) fail_at(e, false, "unknown key '" + e.key + "'");
  }
}

void KeyValueFile::fail_missing(std::string_view key) const {
  throw ParseError(source_, line_count_ + 1, 1, "missing required key '" + std::string(key) + "'");
}

void KeyValueFile::fail_at(const Entry& e, bool at_value, const std::string& message) const {
  throw ParseError(source_, e.line, at_value ? e.value_column : e.key_column, message);
}

}  // namespace qcorr::app

#pragma once

// Flat `key = value` text files with `#` comments.

#include <filesystem>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace qcorr::app {

/// Syntax or key error at a 1-based line and column. Line 0 means the
/// error is not tied to a particular line.
class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& source, int line, int column, const std::string& message);
  int line() const noexcept { return line_; }
  int column() const noexcept { return column_; }

 private:
  int line_;
  int column_;
};

struct Entry {
  std::string key;
  std::string value;
  int line = 0;
  int key_column = 0;
  int value_column = 0;
};

class KeyValueFile {
 public:
  static KeyValueFile parse(std::string_view text, std::string source = "<input>");
  /// Reads and parses a file; an unreadable file is reported as a ParseError.
  static KeyValueFile load(const std::filesystem::path& path);

  const std::string& source() const { return source_; }
  std::span<const Entry> entries() const { return entries_; }
  const Entry* find(std::string_view key) const;
  bool contains(std::string_view key) const { return find(key) != nullptr; }

  /// Finite number; `allow_infinite` also accepts inf.
  double number(std::string_view key, bool allow_infinite = false) const;
  std::optional<double> optional_number(std::string_view key, bool allow_infinite = false) const;
  /// Non-negative integer.
  std::optional<long> optional_count(std::string_view key) const;

  /// Rejects any key outside `allowed`, pointing at the first offender.
  void require_known(std::span<const std::string_view> allowed) const;
  /// Error located just past the last line, for missing keys.
  [[noreturn]] void fail_missing(std::string_view key) const;
  [[noreturn]] void fail_at(const Entry& e, bool at_value, const std::string& message) const;

 private:
  std::string source_;
  std::vector<Entry> entries_;
  int line_count_ = 0;
};

}  // namespace qcorr::app

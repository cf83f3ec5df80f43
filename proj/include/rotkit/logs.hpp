#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace rotkit {

// One log position: a residue in 1..m-1 or a vortex letter.
struct LogEntry {
  int residue = 0;
  std::string letter;  // nonempty for vortex entries

  bool is_letter() const { return !letter.empty(); }
  static LogEntry of(int r) { return {r, {}}; }
  static LogEntry of(std::string l) { return {0, std::move(l)}; }
  std::string text() const { return is_letter() ? letter : std::to_string(residue); }

  friend bool operator==(const LogEntry&, const LogEntry&) = default;
};

struct CircuitLog {
  int circuit_id = 0;
  std::vector<LogEntry> entries;

  friend bool operator==(const CircuitLog&, const CircuitLog&) = default;
};

struct LogBundle {
  int m = 0;
  int k = 0;
  std::vector<std::string> letters;
  std::string case_name;
  std::vector<CircuitLog> logs;
  std::vector<std::string> comments;  // leading `#` lines, kept for round-trip

  friend bool operator==(const LogBundle&, const LogBundle&) = default;
};

// Format:
//   # comment lines
//   logs Z<m> index <k> [letters <l1,l2,...>]
//   case <name>            (optional)
//   [0]. e1 e2 ...
// Structural errors (wrong header, log count != k, residue out of range) raise
// Error(parse); content checks are left to check_log_bundle.
LogBundle parse_log_bundle(std::string_view text);
std::string write_log_bundle(const LogBundle& bundle);

// True when two logs agree up to cyclic rotation (reflection is not allowed).
bool logs_equal_up_to_rotation(const std::vector<LogEntry>& a, const std::vector<LogEntry>& b);

}  // namespace rotkit

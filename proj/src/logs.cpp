#include "rotkit/logs.hpp"

#include "rotkit/error.hpp"
#include "rotkit/text_io.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>

namespace rotkit {

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + msg);
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

bool is_letter_token(std::string_view s) {
  if (s.empty() || !std::isalpha(static_cast<unsigned char>(s[0]))) return false;
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isalnum(static_cast<unsigned char>(c)); });
}

}  // namespace

LogBundle parse_log_bundle(std::string_view text) {
  LogBundle b;
  bool have_header = false;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_header) parse_error(line_no, "comments are only allowed before the header");
      b.comments.push_back(line);
      continue;
    }
    auto toks = split_tokens(line);
    if (toks[0] == "logs") {
      if (have_header) parse_error(line_no, "duplicate header");
      if (toks.size() != 4 && toks.size() != 6) parse_error(line_no, "expected 'logs Z<m> index <k> [letters a,b]'");
      if (toks[1].size() < 2 || toks[1][0] != 'Z' || !parse_int(std::string_view(toks[1]).substr(1), b.m) || b.m < 2)
        parse_error(line_no, "bad group '" + toks[1] + "'");
      if (toks[2] != "index" || !parse_int(toks[3], b.k) || b.k < 1) parse_error(line_no, "bad index");
      if (toks.size() == 6) {
        if (toks[4] != "letters") parse_error(line_no, "expected 'letters'");
        std::string_view l = toks[5];
        std::size_t s = 0;
        while (s <= l.size()) {
          auto c = l.find(',', s);
          if (c == std::string_view::npos) c = l.size();
          std::string name(l.substr(s, c - s));
          if (!is_letter_token(name)) parse_error(line_no, "bad letter '" + name + "'");
          if (std::find(b.letters.begin(), b.letters.end(), name) != b.letters.end())
            parse_error(line_no, "letter " + name + " declared twice");
          b.letters.push_back(std::move(name));
          s = c + 1;
        }
      }
      have_header = true;
      continue;
    }
    if (!have_header) parse_error(line_no, "missing 'logs' header");
    if (toks[0] == "case") {
      if (toks.size() != 2) parse_error(line_no, "expected 'case <name>'");
      b.case_name = toks[1];
      continue;
    }
    const std::string& head = toks[0];
    int id = -1;
    if (head.size() < 4 || head.front() != '[' || head.substr(head.size() - 2) != "]." ||
        !parse_int(std::string_view(head).substr(1, head.size() - 3), id))
      parse_error(line_no, "expected '[i].' log line, got '" + head + "'");
    if (id != static_cast<int>(b.logs.size()))
      parse_error(line_no, "log [" + std::to_string(id) + "] out of order");
    CircuitLog log;
    log.circuit_id = id;
    for (std::size_t t = 1; t < toks.size(); ++t) {
      int r = 0;
      if (parse_int(toks[t], r)) {
        if (r <= 0 || r >= b.m) parse_error(line_no, "residue " + toks[t] + " outside 1.." + std::to_string(b.m - 1));
        log.entries.push_back(LogEntry::of(r));
      } else if (is_letter_token(toks[t])) {
        if (std::find(b.letters.begin(), b.letters.end(), toks[t]) == b.letters.end())
          parse_error(line_no, "undeclared letter '" + toks[t] + "'");
        log.entries.push_back(LogEntry::of(toks[t]));
      } else {
        parse_error(line_no, "bad log entry '" + toks[t] + "'");
      }
    }
    b.logs.push_back(std::move(log));
  }
  if (!have_header) fail(ErrorCode::parse, "missing 'logs' header");
  if (static_cast<int>(b.logs.size()) != b.k)
    fail(ErrorCode::parse, "expected " + std::to_string(b.k) + " logs, found " + std::to_string(b.logs.size()));
  return b;
}

std::string write_log_bundle(const LogBundle& b) {
  std::string out;
  for (const auto& c : b.comments) out += c + "\n";
  out += "logs Z" + std::to_string(b.m) + " index " + std::to_string(b.k);
  if (!b.letters.empty()) {
    out += " letters ";
    for (std::size_t i = 0; i < b.letters.size(); ++i) out += (i ? "," : "") + b.letters[i];
  }
  out += "\n";
  if (!b.case_name.empty()) out += "case " + b.case_name + "\n";
  for (const auto& log : b.logs) {
    out += "[" + std::to_string(log.circuit_id) + "].";
    for (const auto& e : log.entries) out += " " + e.text();
    out += "\n";
  }
  return out;
}

bool logs_equal_up_to_rotation(const std::vector<LogEntry>& a, const std::vector<LogEntry>& b) {
  if (a.size() != b.size()) return false;
  if (a.empty()) return true;
  for (std::size_t s = 0; s < b.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(s + i) % b.size()];
    if (ok) return true;
  }
  return false;
}

}  // namespace rotkit

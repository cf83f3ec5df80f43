#include "rotkit/report.hpp"

#include "rotkit/error.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace rotkit {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::parse: return "parse";
    case ErrorCode::structure: return "structure";
    case ErrorCode::domain: return "domain";
    case ErrorCode::derivation: return "derivation";
    case ErrorCode::surgery: return "surgery";
    case ErrorCode::not_found: return "not-found";
    case ErrorCode::io: return "io";
  }
  return "unknown";
}

void VerificationReport::add(std::string check, bool passed, std::string witness) {
  entries_.push_back({std::move(check), passed, std::move(witness)});
}

void VerificationReport::set_count(const std::string& key, std::int64_t value) {
  for (auto& [k, v] : counts_) {
    if (k == key) {
      v = value;
      return;
    }
  }
  counts_.emplace_back(key, value);
}

std::int64_t VerificationReport::count(const std::string& key) const {
  for (const auto& [k, v] : counts_)
    if (k == key) return v;
  return -1;
}

void VerificationReport::merge(const VerificationReport& other, const std::string& prefix) {
  for (const auto& e : other.entries_) add(prefix + e.check, e.passed, e.witness);
  for (const auto& [k, v] : other.counts_) set_count(prefix + k, v);
}

bool VerificationReport::passed() const {
  return std::all_of(entries_.begin(), entries_.end(), [](const Entry& e) { return e.passed; });
}

const VerificationReport::Entry* VerificationReport::first_failure() const {
  for (const auto& e : entries_)
    if (!e.passed) return &e;
  return nullptr;
}

std::size_t VerificationReport::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(entries_.begin(), entries_.end(), [](const Entry& e) { return !e.passed; }));
}

std::string VerificationReport::to_text() const {
  std::ostringstream out;
  out << "report: " << subject_ << "\n";
  for (const auto& [k, v] : counts_) out << "  " << k << " = " << v << "\n";
  for (const auto& e : entries_) {
    out << "  [" << (e.passed ? "PASS" : "FAIL") << "] " << e.check;
    if (!e.witness.empty()) out << " -- " << e.witness;
    out << "\n";
  }
  out << "result: " << (passed() ? "PASS" : "FAIL") << "\n";
  return out.str();
}

std::string VerificationReport::to_json() const {
  nlohmann::ordered_json j;
  j["subject"] = subject_;
  j["passed"] = passed();
  auto counts = nlohmann::ordered_json::object();
  for (const auto& [k, v] : counts_) counts[k] = v;
  j["counts"] = counts;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& e : entries_) {
    nlohmann::ordered_json c;
    c["check"] = e.check;
    c["passed"] = e.passed;
    if (!e.witness.empty()) c["witness"] = e.witness;
    checks.push_back(std::move(c));
  }
  j["checks"] = checks;
  return j.dump(2) + "\n";
}

}  // namespace rotkit

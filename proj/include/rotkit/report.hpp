#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace rotkit {

// Structured pass/fail evidence. Every checker in the library returns one of
// these; the CLI prints to_text() and writes to_json() next to it.
class VerificationReport {
 public:
  struct Entry {
    std::string check;
    bool passed = true;
    std::string witness;
  };

  explicit VerificationReport(std::string subject = {}) : subject_(std::move(subject)) {}

  void add(std::string check, bool passed, std::string witness = {});
  void pass(std::string check) { add(std::move(check), true); }
  void fail(std::string check, std::string witness) { add(std::move(check), false, std::move(witness)); }

  void set_count(const std::string& key, std::int64_t value);
  std::int64_t count(const std::string& key) const;  // -1 when absent

  // Appends all entries and counts of `other`, prefixing check names.
  void merge(const VerificationReport& other, const std::string& prefix = {});

  bool passed() const;
  const std::string& subject() const { return subject_; }
  const std::vector<Entry>& entries() const { return entries_; }
  const std::vector<std::pair<std::string, std::int64_t>>& counts() const { return counts_; }

  // First failing entry, or nullptr.
  const Entry* first_failure() const;
  std::size_t failure_count() const;

  std::string to_text() const;
  std::string to_json() const;

 private:
  std::string subject_;
  std::vector<Entry> entries_;
  std::vector<std::pair<std::string, std::int64_t>> counts_;
};

}  // namespace rotkit

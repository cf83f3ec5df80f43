#pragma once

#include "rotkit/derivation.hpp"
#include "rotkit/report.hpp"
#include "rotkit/search.hpp"
#include "rotkit/surgery.hpp"

#include <optional>
#include <set>
#include <string>

namespace rotkit {

struct CaseSpec {
  std::string name;         // k18, k20 or k23
  std::string bundle_path;
  std::string script_path;  // stored completion; searched for when the file is absent
  std::string spec_path;
  int target_n = 0;
  std::int64_t derived_v = 0, derived_e = 0, derived_f = 0, derived_genus = 0;
  std::set<LabelPair> derived_missing;
};

// The shipped cases, with files looked up in `data_dir`.
CaseSpec builtin_case(const std::string& name, const std::string& data_dir);

struct CaseRun {
  VerificationReport report;
  std::optional<DerivedEmbedding> derived;
  std::optional<ScriptResult> completion;
  SurgeryScript script;
  bool searched = false;
};

// derive -> check against expectations -> replay (or search) -> verify. When
// `out_dir` is nonempty writes <name>.derived.rot, <name>.final.rot, <name>.ops
// and the report as <name>.report.txt / .json. A failing stage stops the run;
// its entry carries the witness.
CaseRun run_case(const CaseSpec& spec, const std::string& out_dir = {});

// Validity, face census and genus of a rotation file; with n also K_n
// completeness and genus_target(n).
VerificationReport verify_file(const std::string& path, std::optional<int> complete = std::nullopt);

// check_log_bundle plus a per-log census.
VerificationReport check_logs_file(const std::string& path);

}  // namespace rotkit

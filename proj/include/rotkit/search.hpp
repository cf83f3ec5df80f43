#pragma once

#include "rotkit/derivation.hpp"
#include "rotkit/embedding.hpp"
#include "rotkit/report.hpp"
#include "rotkit/surgery.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotkit {

// One handle of a completion. The handle is searched as: delete a set D of
// edges near the anchors, join two of the resulting faces by one new edge, then
// re-add the rest of D and the targets as chords of the merged faces.
struct HandleSpec {
  std::string name;                      // written as `handle <name>`
  std::vector<std::string> anchors;      // deletions come from faces at these vertices
  std::vector<LabelPair> targets;        // empty: every edge still missing
  int max_costs = 0;                     // deleted edges this handle may leave out
  std::vector<std::string> cost_vertices;  // costs must touch one of these (empty: any)
  std::vector<LabelPair> pre_deletions;  // always deleted before the search proper
  bool spokes_only = false;              // delete only edges at the anchors, not all edges of their faces
};

struct SearchSpec {
  int target_n = 0;
  std::vector<LabelPair> missing_edges;
  std::vector<HandleSpec> handles;
  int max_deletions = 5;         // extra deletions on top of pre_deletions
  int max_disk_faces = 8;        // faces one merged region may contain
  int max_flips_per_handle = 4;  // flips whose diagonal is a target, tried before the handle
  bool require_restore_costs = true;
  std::optional<int> symmetry_shift;  // later handles reuse handle 1 shifted by k*s
  int shift_modulus = 0;              // 0: target_n
  std::vector<SurgeryOp> post_ops;    // applied after the last handle (e.g. a contraction)
  std::vector<std::pair<std::string, std::string>> twins;  // a deleted or target edge (u,w) may be placed as (v,w)
  int max_results = 1;
  int max_seconds = 0;  // 0: no time limit
  // false: accept once the listed edges are present and each handle added one
  // genus, instead of requiring K_target_n at genus_target
  bool require_complete = true;
};

// Key = value lines; `#` starts a comment. Handle keys carry the handle number:
//   target_n = 18
//   missing = 0-9 1-10 ...
//   handle.1.anchors = 0 7
//   handle.1.targets = 1-10 3-12
//   post = contract y0 y1
SearchSpec parse_search_spec(std::string_view text);
std::string write_search_spec(const SearchSpec& spec);

struct SearchResult {
  SurgeryScript script;
  SurfaceStats final_stats;
  VerificationReport certificate;
};

struct SearchOutcome {
  std::vector<SearchResult> results;  // canonical order
  bool exhausted = false;             // true when the bounds were searched without a result
  bool timed_out = false;             // max_seconds ran out first
  std::string bounds;                 // the bounds in force, for the not-found message
  long long nodes = 0;
};

SearchOutcome search_completion(const RotationSystem& emb, const SearchSpec& spec);
inline SearchOutcome search_completion(const DerivedEmbedding& emb, const SearchSpec& spec) {
  return search_completion(emb.rotation_system, spec);
}

// Pass iff the graph is K_n and the genus is genus_target(n).
VerificationReport verify_completion(const RotationSystem& emb, int n);

}  // namespace rotkit

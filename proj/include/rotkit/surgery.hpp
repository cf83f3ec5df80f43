#pragma once

#include "rotkit/embedding.hpp"
#include "rotkit/report.hpp"
#include "rotkit/rotation_system.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace rotkit {

// An embedding with boundary cycles left open by excise_disk, waiting for glue_annulus.
struct OpenEmbedding {
  RotationSystem rot;
  std::vector<Face> boundaries;           // face walks of the excised holes
  std::vector<LabelPair> cost_edges;      // interior edges removed by the excisions
  std::vector<std::string> cost_vertices; // interior vertices removed by the excisions
};

// Requires e on two distinct triangles (a,b,c), (b,a,d) with c != d and (c,d)
// absent. The result has (c,d) in place of (a,b).
RotationSystem flip_edge(const RotationSystem& rot, Vertex a, Vertex b);

// Removes the interior of a union of faces that forms a disk. Each face is given
// by its vertex cycle (any starting point, tracing direction).
OpenEmbedding excise_disk(const RotationSystem& rot, const std::vector<std::vector<Vertex>>& faces);
OpenEmbedding excise_disk(OpenEmbedding open, const std::vector<std::vector<std::string>>& faces);

// Triangulated annulus between two open boundaries. b1 lists a hole in its
// tracing direction, b2 lists the other hole against its tracing direction;
// the merge string says which boundary supplies the next triangle ('1' or '2'),
// starting from the cross edge (b1[0], b2[0]).
RotationSystem glue_annulus(const OpenEmbedding& open, const std::vector<std::string>& b1,
                            const std::vector<std::string>& b2, const std::string& merge);

// Merges v into u. Common neighbors must be exactly the apexes of the triangles
// on (u,v). The merged vertex takes `label`, or u's label when empty.
RotationSystem contract_edge(const RotationSystem& rot, Vertex u, Vertex v, const std::string& label = {});

// Removes (u,v), which must separate two distinct faces.
RotationSystem delete_edge(const RotationSystem& rot, Vertex u, Vertex v);

// Adds (u,v) with v placed right after `u_after` in rotation(u) and u right after
// `v_after` in rotation(v). If the two corners lie on one face this splits it;
// otherwise it joins two faces through a new handle (genus + 1).
RotationSystem add_edge(const RotationSystem& rot, Vertex u, Vertex v, Vertex u_after, Vertex v_after);

struct FlipOp { std::string a, b; };
struct DeleteOp { std::string a, b; };
struct AddOp { std::string a, b, a_after, b_after; };
struct ExciseOp { std::vector<std::vector<std::string>> faces; };
struct GlueOp { std::vector<std::string> b1, b2; std::string merge; };
struct ContractOp { std::string u, v, label; };
struct HandleMark { std::string name; };  // starts a new handle group in the ledger

using SurgeryOp = std::variant<FlipOp, DeleteOp, AddOp, ExciseOp, GlueOp, ContractOp, HandleMark>;

struct ScriptLine {
  bool is_op = false;
  SurgeryOp op;
  std::string note;  // trailing `# ...` of an op line, or the whole comment/blank line
};

struct SurgeryScript {
  std::vector<ScriptLine> lines;

  std::vector<SurgeryOp> ops() const;
  void push(SurgeryOp op, std::string note = {});
};

// One op per line:
//   flip a b | delete a b | add a b after c d | contract u v [as w]
//   excise f(v1,v2,v3) f(...) ...
//   glue B1=(...) B2=(...) merge=1212...
//   handle <name>
// `# note` may follow an op; comment and blank lines are kept.
SurgeryScript parse_script(std::string_view text);
std::string write_script(const SurgeryScript& script);
std::string op_text(const SurgeryOp& op);

// Adds s (mod m) to every numbered vertex label in the script; letters stay.
SurgeryScript shift_script(const SurgeryScript& script, int s, int m);

struct HandleLedger {
  std::string name;
  int genus_before = 0;
  int genus_after = 0;
  std::vector<LabelPair> added;     // new edges present at the end of the group
  std::vector<LabelPair> costs;     // edges present before the group and gone after it
  std::vector<LabelPair> restored;  // earlier costs brought back by this group
};

struct ScriptResult {
  RotationSystem rotation_system;
  std::vector<HandleLedger> handles;
  std::vector<LabelPair> outstanding_costs;
  VerificationReport report;
};

// Applies the ops in order, re-verifying genus bookkeeping after each one. The
// first failing op aborts with Error(surgery) naming its index.
ScriptResult apply_script(const RotationSystem& rot, const SurgeryScript& script);

}  // namespace rotkit

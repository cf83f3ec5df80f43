#pragma once

#include "rotkit/logs.hpp"
#include "rotkit/report.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace rotkit {

// One end of an arc at a node: the tail end (arc leaves the node) or the head end.
struct ArcEnd {
  int arc = 0;
  bool head = false;

  friend bool operator==(const ArcEnd&, const ArcEnd&) = default;
};

struct CurrentNode {
  std::string id;
  bool hollow = false;       // hollow nodes use the reverse of the stored rotation
  std::string vortex;        // letter, empty for ordinary nodes
  std::vector<ArcEnd> rotation;
};

struct CurrentArc {
  std::string id;
  int tail = 0;
  int head = -1;             // -1 for an endmarked arc whose far end is an omitted degree-1 vertex
  std::string head_name;     // the omitted vertex's name when endmarked
  int current = 0;
  bool endmark = false;
};

// A step of a circuit: an arc traversed along (forward) or against its orientation.
struct Dart {
  int arc = 0;
  bool forward = true;

  friend bool operator==(const Dart&, const Dart&) = default;
};

struct CircuitStart {
  int circuit_id = 0;
  Dart dart;
};

struct CurrentGraph {
  int m = 0;
  int k = 0;
  std::vector<CurrentNode> nodes;
  std::vector<CurrentArc> arcs;
  std::vector<CircuitStart> starts;   // optional id assignment
  std::vector<std::string> comments;  // leading `#` lines

  std::optional<int> find_node(std::string_view id) const;
  std::optional<int> find_arc(std::string_view id) const;
};

struct Circuit {
  int id = 0;
  std::vector<Dart> walk;
};

// Format:
//   group Z<m> index <k>
//   node <id> [solid|hollow] [vortex <letter>] rotation <end>,<end>,...
//   arc <id> <tail> <head> current <c> [endmark]
//   circuit <id> starts <arc> <+|->
// An end is `+<arc>` (tail end) or `-<arc>` (head end). An endmarked arc's head
// names an omitted degree-1 vertex and is not declared as a node.
CurrentGraph parse_current_graph(std::string_view text);
std::string write_current_graph(const CurrentGraph& cg);

// Checks the structural invariants (ends match incidences, nonzero currents,
// ids unique). Throws Error(structure).
void validate_current_graph(const CurrentGraph& cg);

// Face boundary walks of the embedded digraph. Arriving at a node through an
// end, the walk leaves through the next end in that node's rotation. Circuits
// named by `circuit` lines get that id and start there; the rest take the
// unused ids in order of their first dart. Throws Error(structure) when the
// number of circuits differs from k.
std::vector<Circuit> trace_circuits(const CurrentGraph& cg);

// Currents read along the walk (negated against the orientation), with vortex
// letters where the walk passes a vortex. The two readings of an endmarked
// order-2 arc are condensed into one entry.
CircuitLog circuit_log(const CurrentGraph& cg, const Circuit& c);

// Logs of all circuits as a bundle (letters in order of first appearance).
LogBundle current_graph_logs(const CurrentGraph& cg);

// Construction principles (C1)-(C6). When no `circuit` lines are present the
// C6 check tries every assignment of ids and reports a satisfying one.
VerificationReport check_principles(const CurrentGraph& cg);

// Log-level consequences of (C4) and (C5) on a bundle.
VerificationReport check_log_bundle(const std::vector<CircuitLog>& logs, int m, int k,
                                    const std::vector<std::string>& letters);
VerificationReport check_log_bundle(const LogBundle& bundle);

}  // namespace rotkit

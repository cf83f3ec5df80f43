#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace rotkit {

using Vertex = std::int32_t;
inline constexpr Vertex kNoVertex = -1;

// Undirected edge, stored with u < v.
struct Edge {
  Vertex u = kNoVertex;
  Vertex v = kNoVertex;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(a < b ? a : b), v(a < b ? b : a) {}

  friend bool operator==(const Edge&, const Edge&) = default;
  friend auto operator<=>(const Edge&, const Edge&) = default;
};

// True when `label` names a numbered vertex ("0", "17").
bool is_numbered_label(std::string_view label);
// Total order on labels: numbered vertices by value, then letter labels lexicographically.
bool label_less(std::string_view a, std::string_view b);

// A cellular orientable embedding of a simple graph, given by the cyclic order of
// neighbors around every vertex. Faces are traced with the successor rule: the
// directed edge (u,v) is followed by (v,w) where w follows u in rotation(v).
//
// Invariants (checked by the constructor): adjacency is symmetric, no rotation
// repeats a vertex or contains its owner, and every vertex has degree >= 2.
class RotationSystem {
 public:
  RotationSystem() = default;
  RotationSystem(std::vector<std::string> labels, std::vector<std::vector<Vertex>> rotations);

  // Skips validation; surgery code builds intermediate states this way and
  // validates at checkpoints.
  static RotationSystem unchecked(std::vector<std::string> labels,
                                  std::vector<std::vector<Vertex>> rotations);

  // Throws Error(structure) naming the first violated invariant.
  void validate() const;

  int vertex_count() const { return static_cast<int>(rot_.size()); }
  std::size_t edge_count() const;
  std::size_t degree(Vertex v) const { return rot_[static_cast<std::size_t>(v)].size(); }

  std::span<const Vertex> rotation(Vertex v) const { return rot_[static_cast<std::size_t>(v)]; }
  const std::vector<std::vector<Vertex>>& rotations() const { return rot_; }
  const std::string& label(Vertex v) const { return labels_[static_cast<std::size_t>(v)]; }
  const std::vector<std::string>& labels() const { return labels_; }
  std::optional<Vertex> find(std::string_view label) const;
  Vertex require(std::string_view label) const;  // throws Error(domain) when absent

  // Index of `u` in rotation(v), or -1.
  int position(Vertex v, Vertex u) const;
  bool adjacent(Vertex u, Vertex v) const { return position(u, v) >= 0; }
  // Neighbor following / preceding `u` in rotation(v). Throws Error(structure) if u is not a neighbor.
  Vertex successor(Vertex v, Vertex u) const;
  Vertex predecessor(Vertex v, Vertex u) const;

  std::vector<Edge> edges() const;  // sorted
  std::string edge_name(Edge e) const;

  RotationSystem reversed() const;

  // Raw edits without revalidation. insert_after and erase_neighbor touch only
  // rotation(v); remove_edge updates both endpoints.
  void insert_after(Vertex v, Vertex after, Vertex w);
  void erase_neighbor(Vertex v, Vertex w);
  void remove_edge(Vertex u, Vertex v);

  friend bool operator==(const RotationSystem&, const RotationSystem&) = default;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<Vertex>> rot_;
};

}  // namespace rotkit

#include "rotkit/rotation_system.hpp"

#include "rotkit/error.hpp"

#include <algorithm>
#include <charconv>
#include <unordered_set>

namespace rotkit {

bool is_numbered_label(std::string_view label) {
  return !label.empty() &&
         std::all_of(label.begin(), label.end(), [](char c) { return c >= '0' && c <= '9'; });
}

bool label_less(std::string_view a, std::string_view b) {
  const bool na = is_numbered_label(a);
  const bool nb = is_numbered_label(b);
  if (na != nb) return na;
  if (na) {
    if (a.size() != b.size()) return a.size() < b.size();
  }
  return a < b;
}

RotationSystem::RotationSystem(std::vector<std::string> labels,
                               std::vector<std::vector<Vertex>> rotations)
    : labels_(std::move(labels)), rot_(std::move(rotations)) {
  validate();
}

RotationSystem RotationSystem::unchecked(std::vector<std::string> labels,
                                         std::vector<std::vector<Vertex>> rotations) {
  RotationSystem r;
  r.labels_ = std::move(labels);
  r.rot_ = std::move(rotations);
  return r;
}

void RotationSystem::validate() const {
  if (labels_.size() != rot_.size())
    fail(ErrorCode::structure, "label table and rotation table differ in size");
  std::unordered_set<std::string> seen_labels;
  for (const auto& l : labels_)
    if (!seen_labels.insert(l).second) fail(ErrorCode::structure, "duplicate vertex label " + l);
  const auto n = static_cast<Vertex>(rot_.size());
  for (Vertex v = 0; v < n; ++v) {
    const auto& r = rot_[static_cast<std::size_t>(v)];
    if (r.size() < 2)
      fail(ErrorCode::structure, "vertex " + label(v) + " has degree " + std::to_string(r.size()) +
                                     " (isolated and degree-1 vertices are not supported)");
    std::vector<Vertex> sorted(r.begin(), r.end());
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t i = 0; i < sorted.size(); ++i) {
      if (sorted[i] < 0 || sorted[i] >= n)
        fail(ErrorCode::structure, "vertex " + label(v) + " references an unknown vertex");
      if (sorted[i] == v) fail(ErrorCode::structure, "vertex " + label(v) + " appears in its own rotation");
      if (i > 0 && sorted[i] == sorted[i - 1])
        fail(ErrorCode::structure,
             "vertex " + label(sorted[i]) + " appears twice in the rotation of " + label(v));
    }
    for (Vertex u : r)
      if (position(u, v) < 0)
        fail(ErrorCode::structure,
             "asymmetric adjacency: " + label(u) + " is in rotation(" + label(v) + ") but " +
                 label(v) + " is not in rotation(" + label(u) + ")");
  }
}

std::size_t RotationSystem::edge_count() const {
  std::size_t darts = 0;
  for (const auto& r : rot_) darts += r.size();
  return darts / 2;
}

std::optional<Vertex> RotationSystem::find(std::string_view label) const {
  for (std::size_t i = 0; i < labels_.size(); ++i)
    if (labels_[i] == label) return static_cast<Vertex>(i);
  return std::nullopt;
}

Vertex RotationSystem::require(std::string_view label) const {
  if (auto v = find(label)) return *v;
  fail(ErrorCode::domain, "unknown vertex " + std::string(label));
}

int RotationSystem::position(Vertex v, Vertex u) const {
  const auto& r = rot_[static_cast<std::size_t>(v)];
  for (std::size_t i = 0; i < r.size(); ++i)
    if (r[i] == u) return static_cast<int>(i);
  return -1;
}

Vertex RotationSystem::successor(Vertex v, Vertex u) const {
  const int p = position(v, u);
  if (p < 0)
    fail(ErrorCode::structure, "asymmetric adjacency: " + label(u) + " is not in rotation(" + label(v) + ")");
  const auto& r = rot_[static_cast<std::size_t>(v)];
  return r[(static_cast<std::size_t>(p) + 1) % r.size()];
}

Vertex RotationSystem::predecessor(Vertex v, Vertex u) const {
  const int p = position(v, u);
  if (p < 0)
    fail(ErrorCode::structure, "asymmetric adjacency: " + label(u) + " is not in rotation(" + label(v) + ")");
  const auto& r = rot_[static_cast<std::size_t>(v)];
  return r[(static_cast<std::size_t>(p) + r.size() - 1) % r.size()];
}

std::vector<Edge> RotationSystem::edges() const {
  std::vector<Edge> out;
  for (Vertex v = 0; v < vertex_count(); ++v)
    for (Vertex u : rotation(v))
      if (v < u) out.emplace_back(v, u);
  std::sort(out.begin(), out.end());
  return out;
}

std::string RotationSystem::edge_name(Edge e) const {
  return "(" + label(e.u) + "," + label(e.v) + ")";
}

RotationSystem RotationSystem::reversed() const {
  RotationSystem r = *this;
  for (auto& rot : r.rot_) std::reverse(rot.begin(), rot.end());
  return r;
}

void RotationSystem::insert_after(Vertex v, Vertex after, Vertex w) {
  auto& r = rot_[static_cast<std::size_t>(v)];
  const int p = position(v, after);
  if (p < 0) fail(ErrorCode::structure, label(after) + " is not in rotation(" + label(v) + ")");
  r.insert(r.begin() + p + 1, w);
}

void RotationSystem::erase_neighbor(Vertex v, Vertex w) {
  auto& r = rot_[static_cast<std::size_t>(v)];
  auto it = std::find(r.begin(), r.end(), w);
  if (it == r.end()) fail(ErrorCode::structure, label(w) + " is not in rotation(" + label(v) + ")");
  r.erase(it);
}

void RotationSystem::remove_edge(Vertex u, Vertex v) {
  erase_neighbor(u, v);
  erase_neighbor(v, u);
}

}  // namespace rotkit

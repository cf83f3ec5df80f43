#pragma once
// Test-side oracles. They work on plain neighbor lists and never call the
// library's face tracing, so they can check it.
#include "rotkit/rotation_system.hpp"

#include <algorithm>
#include <array>
#include <cstdint>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

namespace oracle {

using Rot = std::vector<std::vector<int>>;

inline Rot rot_of(const rotkit::RotationSystem& r) {
  Rot out;
  for (const auto& v : r.rotations()) out.emplace_back(v.begin(), v.end());
  return out;
}

// Orbits of the dart permutation (u,v) -> (v, successor of u in rotation(v)).
inline std::int64_t face_count(const Rot& rot) {
  std::map<std::pair<int, int>, bool> seen;
  std::int64_t faces = 0;
  for (int u = 0; u < static_cast<int>(rot.size()); ++u)
    for (int v : rot[static_cast<std::size_t>(u)]) {
      if (seen[{u, v}]) continue;
      ++faces;
      int a = u, b = v;
      while (!seen[{a, b}]) {
        seen[{a, b}] = true;
        const auto& rb = rot[static_cast<std::size_t>(b)];
        const auto it = std::find(rb.begin(), rb.end(), a);
        const int c = rb[static_cast<std::size_t>((it - rb.begin() + 1) % static_cast<long>(rb.size()))];
        a = b;
        b = c;
      }
    }
  return faces;
}

inline std::int64_t edge_count(const Rot& rot) {
  std::int64_t d = 0;
  for (const auto& r : rot) d += static_cast<std::int64_t>(r.size());
  return d / 2;
}

// Genus of a connected rotation system.
inline std::int64_t genus(const Rot& rot) {
  const std::int64_t chi = static_cast<std::int64_t>(rot.size()) - edge_count(rot) + face_count(rot);
  return (2 - chi) / 2;
}

inline std::int64_t genus(const rotkit::RotationSystem& r) { return genus(rot_of(r)); }

// Smallest g with 12g >= (n-3)(n-4), found by counting up.
inline std::int64_t heawood(std::int64_t n) {
  std::int64_t g = 0;
  while (12 * g < (n - 3) * (n - 4)) ++g;
  return g;
}

inline bool all_faces_triangles(const Rot& rot) { return 2 * edge_count(rot) == 3 * face_count(rot); }

inline std::set<std::pair<int, int>> missing(const Rot& rot) {
  std::set<std::pair<int, int>> out;
  const int n = static_cast<int>(rot.size());
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b) {
      const auto& ra = rot[static_cast<std::size_t>(a)];
      if (std::find(ra.begin(), ra.end(), b) == ra.end()) out.insert({a, b});
    }
  return out;
}

// Each rotation rotated to start at its smallest neighbor.
inline Rot canonical(Rot rot) {
  for (auto& r : rot)
    if (!r.empty()) std::rotate(r.begin(), std::min_element(r.begin(), r.end()), r.end());
  return rot;
}

inline rotkit::RotationSystem make(const Rot& rot) {
  std::vector<std::string> labels;
  std::vector<std::vector<rotkit::Vertex>> rs;
  for (std::size_t i = 0; i < rot.size(); ++i) {
    labels.push_back(std::to_string(i));
    rs.emplace_back(rot[i].begin(), rot[i].end());
  }
  return rotkit::RotationSystem(labels, rs);
}

inline Rot tetrahedron() { return {{1, 2, 3}, {0, 3, 2}, {0, 1, 3}, {0, 2, 1}}; }

// Triangle faces (a,b,c) in tracing order, listed once each.
inline std::vector<std::array<int, 3>> triangles(const Rot& rot) {
  std::vector<std::array<int, 3>> out;
  std::set<std::pair<int, int>> seen;
  for (int a = 0; a < static_cast<int>(rot.size()); ++a)
    for (int b : rot[static_cast<std::size_t>(a)]) {
      if (seen.count({a, b})) continue;
      const auto& rb = rot[static_cast<std::size_t>(b)];
      const int c = rb[static_cast<std::size_t>((std::find(rb.begin(), rb.end(), a) - rb.begin() + 1) % static_cast<long>(rb.size()))];
      seen.insert({a, b});
      seen.insert({b, c});
      seen.insert({c, a});
      out.push_back({a, b, c});
    }
  return out;
}

inline void insert_after(std::vector<int>& r, int after, int w) {
  r.insert(std::find(r.begin(), r.end(), after) + 1, w);
}

// Puts a new vertex inside the triangle (a,b,c).
inline void stack_vertex(Rot& rot, int a, int b, int c) {
  const int w = static_cast<int>(rot.size());
  insert_after(rot[static_cast<std::size_t>(a)], c, w);
  insert_after(rot[static_cast<std::size_t>(b)], a, w);
  insert_after(rot[static_cast<std::size_t>(c)], b, w);
  rot.push_back({c, b, a});
}

// Random sphere triangulation on n >= 4 vertices.
inline Rot random_sphere(int n, std::mt19937& rng) {
  Rot rot = tetrahedron();
  while (static_cast<int>(rot.size()) < n) {
    const auto t = triangles(rot);
    const auto& f = t[std::uniform_int_distribution<std::size_t>(0, t.size() - 1)(rng)];
    stack_vertex(rot, f[0], f[1], f[2]);
  }
  return rot;
}

// Random connected rotation system with minimum degree 2: a Hamiltonian
// cycle plus chords, neighbors in random order.
inline Rot random_rotation(int n, int chords, std::mt19937& rng) {
  std::vector<int> perm(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
  std::shuffle(perm.begin(), perm.end(), rng);
  std::set<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const int a = perm[static_cast<std::size_t>(i)], b = perm[static_cast<std::size_t>((i + 1) % n)];
    edges.insert({std::min(a, b), std::max(a, b)});
  }
  std::uniform_int_distribution<int> pick(0, n - 1);
  for (int t = 0; t < chords; ++t) {
    const int a = pick(rng), b = pick(rng);
    if (a != b) edges.insert({std::min(a, b), std::max(a, b)});
  }
  Rot rot(static_cast<std::size_t>(n));
  for (auto [a, b] : edges) {
    rot[static_cast<std::size_t>(a)].push_back(b);
    rot[static_cast<std::size_t>(b)].push_back(a);
  }
  for (auto& r : rot) std::shuffle(r.begin(), r.end(), rng);
  return rot;
}

}  // namespace oracle

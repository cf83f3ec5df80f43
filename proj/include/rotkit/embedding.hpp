#pragma once

#include "rotkit/report.hpp"
#include "rotkit/rotation_system.hpp"

#include <cstdint>
#include <set>
#include <vector>

namespace rotkit {

// A face is stored as its vertex cycle f[0], f[1], ..., f[n-1]; its directed
// edges are (f[i], f[i+1]) with wrap-around.
using Face = std::vector<Vertex>;

struct FaceSet {
  std::vector<Face> faces;

  std::size_t size() const { return faces.size(); }
  std::size_t total_length() const;
  // Histogram: length -> number of faces.
  std::vector<std::pair<std::size_t, std::size_t>> length_census() const;
  bool all_triangles() const;
};

struct SurfaceStats {
  std::int64_t v_count = 0;
  std::int64_t e_count = 0;
  std::int64_t f_count = 0;
  std::int64_t euler_characteristic = 0;
  std::int64_t genus = 0;

  friend bool operator==(const SurfaceStats&, const SurfaceStats&) = default;
};

// Face containing the directed edge (u,v).
Face face_walk(const RotationSystem& rot, Vertex u, Vertex v);

// Faces in canonical order: seeded from directed edges (v, rotation(v)[i]) by
// increasing v then i.
FaceSet trace_faces(const RotationSystem& rot);

SurfaceStats surface_stats(const RotationSystem& rot, const FaceSet& faces);
SurfaceStats surface_stats(const RotationSystem& rot);
SurfaceStats surface_stats(std::int64_t v, std::int64_t e, std::int64_t f);

// (e - 3v + 6) / 6; throws Error(domain) when not integral.
std::int64_t triangular_genus(std::int64_t v_count, std::int64_t e_count);

// ceil((n-3)(n-4)/12); throws Error(domain) for n < 3.
std::int64_t genus_target(std::int64_t n);

// Unordered vertex pairs by label, e.g. {"a","b"}.
using LabelPair = std::pair<std::string, std::string>;
LabelPair make_label_pair(std::string a, std::string b);

// Graph equals K_n on the rotation system's vertices minus exactly `expected_missing`.
VerificationReport verify_graph_structure(const RotationSystem& rot, int n,
                                          const std::set<LabelPair>& expected_missing);

// Non-adjacent vertex pairs, sorted by label order.
std::vector<LabelPair> missing_pairs(const RotationSystem& rot);

// For each directed edge (i,k) with j,k,l consecutive in rotation(i), checks that
// l,i,j are consecutive in rotation(k).
VerificationReport verify_rule_r_star(const RotationSystem& rot);

// Validity, face census and genus of an arbitrary rotation system.
VerificationReport describe_embedding(const RotationSystem& rot, const std::string& subject);

}  // namespace rotkit

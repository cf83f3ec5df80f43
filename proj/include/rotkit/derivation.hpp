#pragma once

#include "rotkit/embedding.hpp"
#include "rotkit/logs.hpp"
#include "rotkit/report.hpp"
#include "rotkit/rotation_system.hpp"

#include <string>
#include <vector>

namespace rotkit {

// Numbered rotations with vortex letters still in place.
struct PartialRotations {
  int m = 0;
  std::vector<std::string> letters;
  std::vector<std::vector<LogEntry>> rotation;  // index = numbered vertex
};

// Which way the manufactured vortex rotations run. `forward` orders each letter
// by the successor map of Rule R*; `reversed` uses its inverse. Exactly one of
// the two gives a triangular embedding when a bundle has letters.
enum class VortexOrientation { forward, reversed };
const char* to_string(VortexOrientation o) noexcept;

struct VortexCopy {
  std::string label;           // "x", or "y0", "y1" after splitting
  std::vector<int> cycle;      // numbered neighbors in rotation order, starting at the smallest
};

struct LetterSplit {
  std::string letter;
  std::vector<VortexCopy> copies;
};

struct DerivedEmbedding {
  RotationSystem rotation_system;
  std::vector<LetterSplit> letter_map;
  SurfaceStats stats;
  std::vector<LabelPair> missing_edges;
  VortexOrientation orientation = VortexOrientation::forward;
  std::string case_name;
};

// rotation(g) = logs[g mod k] with residues shifted by +g (mod m); letters kept.
PartialRotations derive_numbered_rotations(const LogBundle& bundle);

// Builds every letter's rotation from the successor map l -> i (rotation(i)
// contains j, L, l), splits it into cycles, substitutes the copies and checks the
// result is a triangular embedding. Throws Error(derivation) with a witness.
DerivedEmbedding complete_vortex_rotations(const PartialRotations& partial,
                                           VortexOrientation orientation = VortexOrientation::forward);

// Tries both vortex orientations and keeps the triangular one. Throws
// Error(derivation) if none works, or if both do for a bundle with letters.
DerivedEmbedding derive_embedding(const LogBundle& bundle);

// Outcome of each orientation attempt, for diagnostics and tests.
struct OrientationTrial {
  VortexOrientation orientation;
  bool triangular = false;
  std::string failure;
};
std::vector<OrientationTrial> try_orientations(const LogBundle& bundle);

// The pattern
//   j.   ... j+1 j+5 ... j-2 j-8 ... j-4 j+7 ...
//   j+7. ... j+3 j-8 j-6 ...
// with arithmetic mod m on numbered vertices.
VerificationReport check_substructure_star(const RotationSystem& rot, int j, int m = 18);

}  // namespace rotkit

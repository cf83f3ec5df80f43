#include "rotkit/derivation.hpp"

#include "rotkit/error.hpp"

#include <algorithm>
#include <map>

namespace rotkit {

const char* to_string(VortexOrientation o) noexcept {
  return o == VortexOrientation::forward ? "forward" : "reversed";
}

PartialRotations derive_numbered_rotations(const LogBundle& bundle) {
  if (bundle.k < 1 || static_cast<int>(bundle.logs.size()) != bundle.k)
    fail(ErrorCode::domain, "bundle needs exactly k logs");
  PartialRotations p;
  p.m = bundle.m;
  p.letters = bundle.letters;
  p.rotation.resize(static_cast<std::size_t>(bundle.m));
  for (int g = 0; g < bundle.m; ++g) {
    const auto& log = bundle.logs[static_cast<std::size_t>(g % bundle.k)];
    auto& r = p.rotation[static_cast<std::size_t>(g)];
    for (const auto& e : log.entries)
      r.push_back(e.is_letter() ? e : LogEntry::of((e.residue + g) % bundle.m));
  }
  return p;
}

namespace {

std::string num(int v) { return std::to_string(v); }

}  // namespace

DerivedEmbedding complete_vortex_rotations(const PartialRotations& partial, VortexOrientation orientation) {
  const int m = partial.m;
  std::vector<std::string> labels;
  for (int g = 0; g < m; ++g) labels.push_back(num(g));

  // Per letter: successor map on numbered vertices, then its cycles.
  DerivedEmbedding out;
  std::map<std::pair<std::string, int>, Vertex> copy_of;  // (letter, numbered vertex) -> copy id
  std::vector<std::vector<Vertex>> letter_rot;
  for (const auto& L : partial.letters) {
    std::map<int, int> succ;
    std::map<int, int> companion;  // i -> j, the other half of Rule R*
    for (int i = 0; i < m; ++i) {
      const auto& r = partial.rotation[static_cast<std::size_t>(i)];
      const std::size_t d = r.size();
      int hits = 0;
      for (std::size_t t = 0; t < d; ++t) {
        if (r[t].letter != L) continue;
        ++hits;
        const auto& j = r[(t + d - 1) % d];
        const auto& l = r[(t + 1) % d];
        if (j.is_letter() || l.is_letter())
          fail(ErrorCode::derivation, "letter " + L + " in rotation(" + num(i) + ") is next to another letter");
        if (!succ.emplace(l.residue, i).second)
          fail(ErrorCode::derivation, "conflicting successors at " + L + ": " + num(l.residue) + " -> " +
                                          num(succ[l.residue]) + " and " + num(i));
        companion[i] = j.residue;
      }
      if (hits > 1) fail(ErrorCode::derivation, "letter " + L + " appears twice in rotation(" + num(i) + ")");
    }
    if (succ.empty()) fail(ErrorCode::derivation, "letter " + L + " never occurs");
    for (const auto& [l, i] : succ)
      if (!companion.count(l))
        fail(ErrorCode::derivation, "successor map at " + L + " leaves its domain at " + num(l) + " -> " + num(i));
    // Rule R* at (i, L) also forces succ(i) = j; a mismatch means the letter
    // cannot be completed to a triangular rotation.
    for (const auto& [i, j] : companion)
      if (succ.at(i) != j)
        fail(ErrorCode::derivation, "Rule R* halves disagree at " + L + ": successor of " + num(i) + " is " +
                                        num(succ.at(i)) + ", expected " + num(j));

    LetterSplit split;
    split.letter = L;
    std::vector<char> seen(static_cast<std::size_t>(m), 0);
    std::vector<std::vector<int>> cycles;
    for (const auto& [start, unused] : succ) {
      (void)unused;
      if (seen[static_cast<std::size_t>(start)]) continue;
      std::vector<int> c;
      int x = start;
      do {
        seen[static_cast<std::size_t>(x)] = 1;
        c.push_back(x);
        x = succ.at(x);
      } while (x != start);
      if (orientation == VortexOrientation::reversed) std::reverse(c.begin() + 1, c.end());
      cycles.push_back(std::move(c));
    }
    for (std::size_t ci = 0; ci < cycles.size(); ++ci) {
      VortexCopy copy;
      copy.label = cycles.size() == 1 ? L : L + std::to_string(ci);
      copy.cycle = cycles[ci];
      const auto id = static_cast<Vertex>(labels.size());
      labels.push_back(copy.label);
      std::vector<Vertex> rot;
      for (int v : copy.cycle) {
        rot.push_back(v);
        copy_of[{L, v}] = id;
      }
      letter_rot.push_back(std::move(rot));
      split.copies.push_back(std::move(copy));
    }
    out.letter_map.push_back(std::move(split));
  }

  std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(m));
  for (int g = 0; g < m; ++g) {
    for (const auto& e : partial.rotation[static_cast<std::size_t>(g)]) {
      if (e.is_letter()) {
        auto it = copy_of.find({e.letter, g});
        if (it == copy_of.end())
          fail(ErrorCode::derivation, "vertex " + num(g) + " sees " + e.letter + " but no copy contains it");
        rot[static_cast<std::size_t>(g)].push_back(it->second);
      } else {
        rot[static_cast<std::size_t>(g)].push_back(e.residue);
      }
    }
  }
  for (auto& r : letter_rot) rot.push_back(std::move(r));

  try {
    out.rotation_system = RotationSystem(std::move(labels), std::move(rot));
  } catch (const Error& e) {
    fail(ErrorCode::derivation, std::string("derived rotations are not a valid system: ") + e.what());
  }
  const FaceSet faces = trace_faces(out.rotation_system);
  if (!faces.all_triangles()) {
    for (const auto& f : faces.faces) {
      if (f.size() != 3) {
        std::string w;
        for (Vertex v : f) w += (w.empty() ? "" : " ") + out.rotation_system.label(v);
        fail(ErrorCode::derivation, "non-triangular face of length " + std::to_string(f.size()) + ": " + w);
      }
    }
  }
  out.stats = surface_stats(out.rotation_system, faces);
  out.missing_edges = missing_pairs(out.rotation_system);
  out.orientation = orientation;
  return out;
}

std::vector<OrientationTrial> try_orientations(const LogBundle& bundle) {
  const PartialRotations partial = derive_numbered_rotations(bundle);
  std::vector<OrientationTrial> trials;
  for (auto o : {VortexOrientation::forward, VortexOrientation::reversed}) {
    OrientationTrial t{o, false, {}};
    try {
      complete_vortex_rotations(partial, o);
      t.triangular = true;
    } catch (const Error& e) {
      t.failure = e.what();
    }
    trials.push_back(std::move(t));
    if (bundle.letters.empty()) break;  // both orientations coincide
  }
  return trials;
}

DerivedEmbedding derive_embedding(const LogBundle& bundle) {
  const PartialRotations partial = derive_numbered_rotations(bundle);
  const auto trials = try_orientations(bundle);
  std::vector<VortexOrientation> ok;
  for (const auto& t : trials)
    if (t.triangular) ok.push_back(t.orientation);
  if (ok.empty())
    fail(ErrorCode::derivation, "no vortex orientation yields a triangular embedding: " + trials.front().failure);
  if (ok.size() > 1) fail(ErrorCode::derivation, "both vortex orientations yield triangular embeddings");
  DerivedEmbedding d = complete_vortex_rotations(partial, ok.front());
  d.case_name = bundle.case_name;
  return d;
}

VerificationReport check_substructure_star(const RotationSystem& rot, int j, int m) {
  VerificationReport rep("substructure (*) at j=" + std::to_string(j));
  auto mod = [m](int x) { return ((x % m) + m) % m; };
  auto vid = [&](int x) -> std::optional<Vertex> { return rot.find(std::to_string(mod(x))); };
  auto name = [&](int x) { return std::to_string(mod(x)); };

  auto consecutive = [&](int at, int a, int b) -> int {
    auto va = vid(at), xa = vid(a), xb = vid(b);
    if (!va || !xa || !xb) return -1;
    const int p = rot.position(*va, *xa);
    if (p < 0 || rot.successor(*va, *xa) != *xb) return -1;
    return p;
  };

  const int p1 = consecutive(j, j + 1, j + 5);
  const int p2 = consecutive(j, j - 2, j - 8);
  const int p3 = consecutive(j, j - 4, j + 7);
  const std::string at_j = "rotation(" + name(j) + ")";
  auto pair_check = [&](int p, int a, int b) {
    const std::string c = at_j + " contains " + name(a) + " " + name(b);
    if (p >= 0)
      rep.pass(c);
    else
      rep.fail(c, "pair not consecutive");
  };
  pair_check(p1, j + 1, j + 5);
  pair_check(p2, j - 2, j - 8);
  pair_check(p3, j - 4, j + 7);
  if (p1 >= 0 && p2 >= 0 && p3 >= 0) {
    const auto d = static_cast<int>(rot.degree(*vid(j)));
    const int a = mod(p2 - p1 + d) % d, b = ((p3 - p1) % d + d) % d;
    if (a < b)
      rep.pass(at_j + " pairs in cyclic order");
    else
      rep.fail(at_j + " pairs in cyclic order", "positions " + std::to_string(p1) + ", " + std::to_string(p2) +
                                                     ", " + std::to_string(p3));
  }

  const std::string c7 = "rotation(" + name(j + 7) + ") contains " + name(j + 3) + " " + name(j - 8) + " " +
                         name(j - 6);
  const int q = consecutive(j + 7, j + 3, j - 8);
  if (q >= 0 && consecutive(j + 7, j - 8, j - 6) >= 0)
    rep.pass(c7);
  else
    rep.fail(c7, "triple not consecutive");
  return rep;
}

}  // namespace rotkit

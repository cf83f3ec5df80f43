#include "rotkit/embedding.hpp"

#include "rotkit/error.hpp"

#include <algorithm>
#include <map>
#include <sstream>

namespace rotkit {

std::size_t FaceSet::total_length() const {
  std::size_t t = 0;
  for (const auto& f : faces) t += f.size();
  return t;
}

std::vector<std::pair<std::size_t, std::size_t>> FaceSet::length_census() const {
  std::map<std::size_t, std::size_t> h;
  for (const auto& f : faces) ++h[f.size()];
  return {h.begin(), h.end()};
}

bool FaceSet::all_triangles() const {
  return std::all_of(faces.begin(), faces.end(), [](const Face& f) { return f.size() == 3; });
}

Face face_walk(const RotationSystem& rot, Vertex u, Vertex v) {
  Face f;
  Vertex a = u, b = v;
  const std::size_t limit = 2 * rot.edge_count() + 1;
  do {
    f.push_back(a);
    const Vertex c = rot.successor(b, a);
    a = b;
    b = c;
    if (f.size() > limit) fail(ErrorCode::structure, "face walk does not close");
  } while (a != u || b != v);
  return f;
}

FaceSet trace_faces(const RotationSystem& rot) {
  const int n = rot.vertex_count();
  // Dart (v, i) is the i-th entry of rotation(v); offsets index a flat visited table.
  std::vector<std::size_t> offset(static_cast<std::size_t>(n) + 1, 0);
  for (Vertex v = 0; v < n; ++v) offset[static_cast<std::size_t>(v) + 1] = offset[static_cast<std::size_t>(v)] + rot.degree(v);
  std::vector<char> seen(offset.back(), 0);
  FaceSet out;
  for (Vertex v = 0; v < n; ++v) {
    const auto r = rot.rotation(v);
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (seen[offset[static_cast<std::size_t>(v)] + i]) continue;
      Face f;
      Vertex a = v, b = r[i];
      std::size_t ai = i;
      while (!seen[offset[static_cast<std::size_t>(a)] + ai]) {
        seen[offset[static_cast<std::size_t>(a)] + ai] = 1;
        f.push_back(a);
        const int p = rot.position(b, a);
        if (p < 0)
          fail(ErrorCode::structure, "asymmetric adjacency: " + rot.label(a) + " is not in rotation(" +
                                         rot.label(b) + ")");
        const std::size_t ni = (static_cast<std::size_t>(p) + 1) % rot.degree(b);
        a = b;
        ai = ni;
        b = rot.rotation(a)[ai];
      }
      out.faces.push_back(std::move(f));
    }
  }
  return out;
}

SurfaceStats surface_stats(std::int64_t v, std::int64_t e, std::int64_t f) {
  SurfaceStats s;
  s.v_count = v;
  s.e_count = e;
  s.f_count = f;
  s.euler_characteristic = v - e + f;
  if (s.euler_characteristic % 2 != 0)
    fail(ErrorCode::structure, "odd Euler characteristic " + std::to_string(s.euler_characteristic));
  s.genus = (2 - s.euler_characteristic) / 2;
  if (s.genus < 0) fail(ErrorCode::structure, "negative genus (disconnected embedding?)");
  return s;
}

SurfaceStats surface_stats(const RotationSystem& rot, const FaceSet& faces) {
  return surface_stats(rot.vertex_count(), static_cast<std::int64_t>(rot.edge_count()),
                       static_cast<std::int64_t>(faces.size()));
}

SurfaceStats surface_stats(const RotationSystem& rot) { return surface_stats(rot, trace_faces(rot)); }

std::int64_t triangular_genus(std::int64_t v_count, std::int64_t e_count) {
  const std::int64_t num = e_count - 3 * v_count + 6;
  if (num % 6 != 0 || num < 0)
    fail(ErrorCode::domain, "(" + std::to_string(v_count) + ", " + std::to_string(e_count) +
                                ") is not the vertex/edge count of a triangulation");
  return num / 6;
}

std::int64_t genus_target(std::int64_t n) {
  if (n < 3) fail(ErrorCode::domain, "genus_target needs n >= 3, got " + std::to_string(n));
  const std::int64_t p = (n - 3) * (n - 4);
  return (p + 11) / 12;
}

LabelPair make_label_pair(std::string a, std::string b) {
  if (label_less(b, a)) std::swap(a, b);
  return {std::move(a), std::move(b)};
}

std::vector<LabelPair> missing_pairs(const RotationSystem& rot) {
  std::vector<LabelPair> out;
  const int n = rot.vertex_count();
  for (Vertex u = 0; u < n; ++u)
    for (Vertex v = u + 1; v < n; ++v)
      if (!rot.adjacent(u, v)) out.push_back(make_label_pair(rot.label(u), rot.label(v)));
  std::sort(out.begin(), out.end(), [](const LabelPair& a, const LabelPair& b) {
    if (a.first != b.first) return label_less(a.first, b.first);
    return label_less(a.second, b.second);
  });
  return out;
}

namespace {

std::string pair_text(const LabelPair& p) { return "(" + p.first + "," + p.second + ")"; }

}  // namespace

VerificationReport verify_graph_structure(const RotationSystem& rot, int n,
                                          const std::set<LabelPair>& expected_missing) {
  VerificationReport rep("graph structure");
  rep.set_count("vertices", rot.vertex_count());
  rep.set_count("edges", static_cast<std::int64_t>(rot.edge_count()));
  if (rot.vertex_count() == n)
    rep.pass("vertex count " + std::to_string(n));
  else
    rep.fail("vertex count " + std::to_string(n), "found " + std::to_string(rot.vertex_count()));

  for (const auto& p : expected_missing) {
    if (!rot.find(p.first) || !rot.find(p.second))
      rep.fail("expected missing pair names known vertices", pair_text(p));
  }
  const auto missing = missing_pairs(rot);
  std::set<LabelPair> actual(missing.begin(), missing.end());
  std::vector<std::string> extra, absent;
  for (const auto& p : actual)
    if (!expected_missing.count(p)) extra.push_back(pair_text(p));
  for (const auto& p : expected_missing)
    if (!actual.count(p) && rot.find(p.first) && rot.find(p.second)) absent.push_back(pair_text(p));
  rep.set_count("missing_edges", static_cast<std::int64_t>(actual.size()));

  auto join = [](const std::vector<std::string>& v) {
    std::string s;
    for (const auto& x : v) s += (s.empty() ? "" : " ") + x;
    return s;
  };
  if (extra.empty())
    rep.pass("no unexpected missing edges");
  else
    rep.fail("no unexpected missing edges", join(extra));
  if (absent.empty())
    rep.pass("every expected missing edge is absent");
  else
    rep.fail("every expected missing edge is absent", "present: " + join(absent));
  return rep;
}

VerificationReport verify_rule_r_star(const RotationSystem& rot) {
  VerificationReport rep("rule R*");
  std::int64_t checked = 0, violations = 0;
  std::string witness;
  for (Vertex i = 0; i < rot.vertex_count(); ++i) {
    const auto r = rot.rotation(i);
    const std::size_t d = r.size();
    for (std::size_t t = 0; t < d; ++t) {
      const Vertex j = r[(t + d - 1) % d], k = r[t], l = r[(t + 1) % d];
      ++checked;
      const int p = rot.position(k, i);
      const bool ok = p >= 0 && rot.predecessor(k, i) == l && rot.successor(k, i) == j;
      if (!ok) {
        ++violations;
        if (witness.empty())
          witness = "rotation(" + rot.label(i) + ") has " + rot.label(j) + " " + rot.label(k) + " " +
                    rot.label(l) + " but rotation(" + rot.label(k) + ") lacks " + rot.label(l) + " " +
                    rot.label(i) + " " + rot.label(j);
      }
    }
  }
  rep.set_count("directed_edges", checked);
  rep.set_count("violations", violations);
  if (violations == 0)
    rep.pass("rule R* holds at every directed edge");
  else
    rep.fail("rule R* holds at every directed edge", witness);
  return rep;
}

VerificationReport describe_embedding(const RotationSystem& rot, const std::string& subject) {
  VerificationReport rep(subject);
  try {
    rot.validate();
    rep.pass("valid simple rotation system");
  } catch (const Error& e) {
    rep.fail("valid simple rotation system", e.what());
    return rep;
  }
  const FaceSet faces = trace_faces(rot);
  const SurfaceStats s = surface_stats(rot, faces);
  rep.set_count("vertices", s.v_count);
  rep.set_count("edges", s.e_count);
  rep.set_count("faces", s.f_count);
  rep.set_count("euler_characteristic", s.euler_characteristic);
  rep.set_count("genus", s.genus);
  for (const auto& [len, cnt] : faces.length_census())
    rep.set_count("faces_of_length_" + std::to_string(len), static_cast<std::int64_t>(cnt));
  if (faces.total_length() == 2 * rot.edge_count())
    rep.pass("faces partition the directed edges");
  else
    rep.fail("faces partition the directed edges",
             "total face length " + std::to_string(faces.total_length()));
  return rep;
}

}  // namespace rotkit

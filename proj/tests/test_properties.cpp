// Randomized properties, each over at least 100 instances with fixed seeds.

#include "doctest.h"

#include "rotkit/derivation.hpp"
#include "rotkit/search.hpp"
#include "rotkit/surgery.hpp"
#include "rotkit/text_io.hpp"
#include "support/oracles.hpp"

#include <map>
#include <random>

using namespace rotkit;

namespace {

std::string data(const std::string& f) { return std::string(ROTKIT_DATA_DIR) + "/" + f; }

int pick(std::mt19937& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }

// Triangles sharing no vertex and no edge between them.
std::optional<std::pair<std::array<int, 3>, std::array<int, 3>>> far_triangles(const oracle::Rot& rot,
                                                                              std::mt19937& rng) {
  const auto tris = oracle::triangles(rot);
  std::set<std::pair<int, int>> adj;
  for (std::size_t v = 0; v < rot.size(); ++v)
    for (int w : rot[v]) adj.insert({static_cast<int>(v), w});
  for (int tries = 0; tries < 200; ++tries) {
    const auto& a = tris[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(tris.size()) - 1))];
    const auto& b = tris[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(tris.size()) - 1))];
    bool clash = false;
    for (int x : a)
      for (int y : b) clash = clash || x == y || adj.count({x, y});
    if (!clash) return std::make_pair(a, b);
  }
  return std::nullopt;
}

// The annulus visits cross edges (i mod 3, j mod 3); a usable merge string
// never comes back to one before the end.
bool simple_merge(const std::string& merge) {
  std::set<std::pair<int, int>> seen{{0, 0}};
  int i = 0, j = 0;
  for (std::size_t k = 0; k + 1 < merge.size(); ++k) {
    (merge[k] == '1' ? i : j)++;
    if (!seen.insert({i % 3, j % 3}).second) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("face tracing partitions the directed edges") {
  std::mt19937 rng(101);
  for (int t = 0; t < 150; ++t) {
    const int n = pick(rng, 3, 14);
    const auto rot = oracle::random_rotation(n, pick(rng, 0, 3 * n), rng);
    const auto r = oracle::make(rot);
    const auto fs = trace_faces(r);
    std::map<std::pair<int, int>, int> seen;
    for (const Face& f : fs.faces)
      for (std::size_t i = 0; i < f.size(); ++i) ++seen[{f[i], f[(i + 1) % f.size()]}];
    CHECK(seen.size() == 2 * static_cast<std::size_t>(oracle::edge_count(rot)));
    for (const auto& [dart, c] : seen) CHECK(c == 1);
    CHECK(static_cast<std::int64_t>(fs.size()) == oracle::face_count(rot));
  }
}

TEST_CASE("reversing every rotation keeps the genus") {
  std::mt19937 rng(102);
  for (int t = 0; t < 150; ++t) {
    const int n = pick(rng, 3, 14);
    auto rot = oracle::random_rotation(n, pick(rng, 0, 3 * n), rng);
    const auto r = oracle::make(rot);
    for (auto& v : rot) std::reverse(v.begin(), v.end());
    CHECK(oracle::canonical(oracle::rot_of(r.reversed())) == oracle::canonical(rot));
    CHECK(surface_stats(r.reversed()).genus == oracle::genus(r));
    CHECK(oracle::genus(rot) == oracle::genus(r));
  }
}

TEST_CASE("flips and apex contractions keep the genus") {
  std::mt19937 rng(103);
  const auto k18 = derive_embedding(parse_log_bundle(read_file(data("k18.logs")))).rotation_system;
  int flips = 0, contractions = 0;
  for (int t = 0; t < 150; ++t) {
    const RotationSystem r = t % 3 == 0 ? k18 : oracle::make(oracle::random_sphere(pick(rng, 6, 20), rng));
    const auto g = oracle::genus(r);
    auto edges = r.edges();
    std::shuffle(edges.begin(), edges.end(), rng);
    for (Edge e : edges) {
      const Vertex c = r.successor(e.v, e.u), d = r.successor(e.u, e.v);
      if (c == d || r.adjacent(c, d)) continue;
      const auto f = flip_edge(r, e.u, e.v);
      CHECK(oracle::genus(f) == g);
      CHECK(oracle::all_faces_triangles(oracle::rot_of(f)));
      ++flips;
      break;
    }
    if (t % 3 == 0) continue;
    for (Edge e : edges) {
      const Vertex c = r.successor(e.v, e.u), d = r.successor(e.u, e.v);
      std::set<Vertex> nu(r.rotation(e.u).begin(), r.rotation(e.u).end()), common;
      for (Vertex w : r.rotation(e.v))
        if (nu.count(w)) common.insert(w);
      if (common != std::set<Vertex>{c, d} || r.vertex_count() <= 4) continue;
      const auto k = contract_edge(r, e.u, e.v);
      CHECK(oracle::genus(k) == g);
      CHECK(oracle::edge_count(oracle::rot_of(k)) == oracle::edge_count(oracle::rot_of(r)) - 3);
      ++contractions;
      break;
    }
  }
  CHECK(flips >= 100);
  CHECK(contractions >= 90);
}

TEST_CASE("excising two far triangles and gluing an annulus adds one handle") {
  std::mt19937 rng(104);
  int done = 0;
  for (int t = 0; t < 300 && done < 120; ++t) {
    const auto rot = oracle::random_sphere(pick(rng, 12, 22), rng);
    const auto ft = far_triangles(rot, rng);
    if (!ft) continue;
    const auto r = oracle::make(rot);
    auto [a, b] = *ft;
    std::rotate(b.begin(), b.begin() + pick(rng, 0, 2), b.end());
    std::string merge = "111222";
    do std::shuffle(merge.begin(), merge.end(), rng);
    while (!simple_merge(merge));
    std::vector<std::string> b1, b2, f2;
    for (int v : a) b1.push_back(r.label(v));
    for (int v : b) f2.push_back(r.label(v));
    b2.assign(f2.rbegin(), f2.rend());
    OpenEmbedding open = excise_disk(r, {{a[0], a[1], a[2]}});
    open = excise_disk(open, {f2});
    const auto g = glue_annulus(open, b1, b2, merge);
    CAPTURE(merge);
    CHECK(oracle::genus(g) == 1);
    CHECK(oracle::edge_count(oracle::rot_of(g)) == oracle::edge_count(rot) + 6);
    CHECK(oracle::all_faces_triangles(oracle::rot_of(g)));
    ++done;
  }
  CHECK(done >= 100);
}

TEST_CASE("Rule R* holds exactly when every face is a triangle") {
  std::mt19937 rng(105);
  int yes = 0, no = 0;
  for (int t = 0; t < 200; ++t) {
    oracle::Rot rot = oracle::random_sphere(pick(rng, 4, 16), rng);
    if (t % 2) {
      auto& v = rot[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(rot.size()) - 1))];
      const std::size_t i = static_cast<std::size_t>(pick(rng, 0, static_cast<int>(v.size()) - 1));
      std::swap(v[i], v[(i + 1) % v.size()]);
    }
    if (t % 5 == 4) rot = oracle::random_rotation(pick(rng, 4, 10), pick(rng, 0, 20), rng);
    const bool tri = oracle::all_faces_triangles(rot);
    CHECK(verify_rule_r_star(oracle::make(rot)).passed() == tri);
    (tri ? yes : no)++;
  }
  CHECK(yes > 20);
  CHECK(no > 20);
}

TEST_CASE("derived rotations are equivariant under shifts by the index") {
  std::mt19937 rng(106);
  int checked = 0;
  for (const char* name : {"k18", "k20", "k23"}) {
    const LogBundle b = parse_log_bundle(read_file(data(std::string(name) + ".logs")));
    const auto r = derive_embedding(b).rotation_system;
    auto base = [](const std::string& l) { return is_numbered_label(l) ? l : l.substr(0, 1); };
    for (int t = 0; t < 40; ++t) {
      const int g = pick(rng, 0, b.m - 1), s = b.k * pick(rng, 1, b.m / b.k - 1);
      const auto rg = r.rotation(r.require(std::to_string(g)));
      const auto rs = r.rotation(r.require(std::to_string((g + s) % b.m)));
      REQUIRE(rg.size() == rs.size());
      bool same = true;
      for (std::size_t i = 0; i < rg.size(); ++i) {
        const std::string& lg = r.label(rg[i]);
        const std::string want = is_numbered_label(lg) ? std::to_string((std::stoi(lg) + s) % b.m) : base(lg);
        same = same && base(r.label(rs[i])) == want;
      }
      CAPTURE(name);
      CAPTURE(g);
      CAPTURE(s);
      CHECK(same);
      ++checked;
    }
  }
  CHECK(checked >= 100);
}

// Plant a handle on a random sphere the way the search builds one: delete a few
// edges from faces at an anchor, join two faces by a missing edge, re-add the
// deleted edges as chords. The search must list the planted embedding.
TEST_CASE("the search rediscovers planted handles") {
  std::mt19937 rng(107);
  int planted = 0, found = 0;
  for (int t = 0; t < 400 && planted < 110; ++t) {
    const int n = pick(rng, 7, 10);
    const auto r = oracle::make(oracle::random_sphere(n, rng));
    const Vertex anchor = pick(rng, 0, n - 1);

    std::set<Edge> cand_set;
    for (const auto& tri : oracle::triangles(oracle::rot_of(r)))
      if (std::find(tri.begin(), tri.end(), anchor) != tri.end())
        for (int i = 0; i < 3; ++i) cand_set.insert(Edge(tri[static_cast<std::size_t>(i)], tri[static_cast<std::size_t>((i + 1) % 3)]));
    std::vector<Edge> cand(cand_set.begin(), cand_set.end());
    std::shuffle(cand.begin(), cand.end(), rng);
    cand.resize(static_cast<std::size_t>(pick(rng, 1, 2)));
    std::sort(cand.begin(), cand.end());

    RotationSystem cur = r;
    bool ok = true;
    for (Edge e : cand) {
      if (cur.degree(e.u) <= 2 || cur.degree(e.v) <= 2) ok = false;
      const Face f = face_walk(cur, e.u, e.v);
      for (std::size_t i = 0; ok && i < f.size(); ++i)
        if (f[i] == e.v && f[(i + 1) % f.size()] == e.u) ok = false;
      if (!ok) break;
      cur = delete_edge(cur, e.u, e.v);
    }
    if (!ok) continue;

    // e*: a missing pair whose endpoints share no face, joined at random corners
    std::vector<std::pair<int, int>> far;
    const auto faces = trace_faces(cur).faces;
    for (auto [u, v] : oracle::missing(oracle::rot_of(cur))) {
      bool shared = false;
      for (const Face& f : faces)
        shared = shared || (std::count(f.begin(), f.end(), u) && std::count(f.begin(), f.end(), v));
      if (!shared && !cand_set.count(Edge(u, v))) far.push_back({u, v});
    }
    if (far.empty()) continue;
    const auto [u, v] = far[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(far.size()) - 1))];
    cur = add_edge(cur, u, v, cur.rotation(u)[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(cur.degree(u)) - 1))],
                   cur.rotation(v)[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(cur.degree(v)) - 1))]);

    // deleted edges come back as chords at random corners sharing a face
    for (Edge e : cand) {
      std::vector<std::pair<Vertex, Vertex>> corners;
      for (Vertex a : cur.rotation(e.u))
        for (Vertex b : cur.rotation(e.v)) {
          const Face fa = face_walk(cur, e.u, cur.successor(e.u, a));
          for (std::size_t i = 0; i < fa.size(); ++i)
            if (fa[i] == e.v && fa[(i + 1) % fa.size()] == cur.successor(e.v, b)) corners.push_back({a, b});
        }
      if (corners.empty()) {
        ok = false;
        break;
      }
      const auto [a, b] = corners[static_cast<std::size_t>(pick(rng, 0, static_cast<int>(corners.size()) - 1))];
      cur = add_edge(cur, e.u, e.v, a, b);
    }
    if (!ok || oracle::genus(cur) != 1) continue;
    ++planted;

    SearchSpec spec;
    spec.target_n = n;
    spec.require_complete = false;
    spec.max_deletions = static_cast<int>(cand.size());
    spec.max_flips_per_handle = 0;
    spec.max_results = 1 << 20;
    HandleSpec h;
    h.anchors = {r.label(anchor)};
    h.targets = {{r.label(u), r.label(v)}};
    spec.handles = {h};
    const auto out = search_completion(r, spec);
    const auto want = oracle::canonical(oracle::rot_of(cur));
    bool hit = false;
    for (const auto& res : out.results) {
      CHECK(res.certificate.passed());
      hit = hit || oracle::canonical(oracle::rot_of(apply_script(r, res.script).rotation_system)) == want;
    }
    CAPTURE(t);
    CHECK(hit);
    found += hit ? 1 : 0;
  }
  CHECK(planted >= 100);
  CHECK(found == planted);
}

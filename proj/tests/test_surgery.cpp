#include "doctest.h"

#include "rotkit/derivation.hpp"
#include "rotkit/error.hpp"
#include "rotkit/surgery.hpp"
#include "rotkit/text_io.hpp"
#include "support/oracles.hpp"

#include <random>

using namespace rotkit;

namespace {

std::string data(const std::string& f) { return std::string(ROTKIT_DATA_DIR) + "/" + f; }

RotationSystem sphere(int n, unsigned seed) {
  std::mt19937 rng(seed);
  return oracle::make(oracle::random_sphere(n, rng));
}

// An edge whose two triangles have distinct, non-adjacent apexes.
std::optional<Edge> flippable(const RotationSystem& r) {
  for (Edge e : r.edges()) {
    const Vertex c = r.successor(e.v, e.u), d = r.successor(e.u, e.v);
    if (c != d && !r.adjacent(c, d)) return e;
  }
  return std::nullopt;
}

}  // namespace

TEST_CASE("flip replaces an edge by the other diagonal") {
  const auto r = sphere(9, 3);
  const auto e = flippable(r);
  REQUIRE(e);
  const Vertex c = r.successor(e->v, e->u), d = r.successor(e->u, e->v);
  const auto f = flip_edge(r, e->u, e->v);
  CHECK_FALSE(f.adjacent(e->u, e->v));
  CHECK(f.adjacent(c, d));
  CHECK(oracle::genus(f) == 0);
  CHECK(oracle::all_faces_triangles(oracle::rot_of(f)));
  CHECK(f.edge_count() == r.edge_count());
}

TEST_CASE("flip refuses when the other diagonal exists") {
  const auto r = oracle::make(oracle::tetrahedron());
  CHECK_THROWS_AS(flip_edge(r, 0, 1), Error);
}

TEST_CASE("delete then add at the same corners restores the embedding") {
  const auto r = sphere(10, 5);
  for (Edge e : r.edges()) {
    if (r.degree(e.u) < 4 || r.degree(e.v) < 4) continue;
    const Vertex ua = r.predecessor(e.u, e.v), va = r.predecessor(e.v, e.u);
    const auto d = delete_edge(r, e.u, e.v);
    CHECK(oracle::genus(d) == 0);
    const auto back = add_edge(d, e.u, e.v, ua, va);
    CHECK(oracle::canonical(oracle::rot_of(back)) == oracle::canonical(oracle::rot_of(r)));
    break;
  }
}

TEST_CASE("an edge between two faces adds a handle") {
  const auto r = sphere(12, 11);
  const auto missing = oracle::missing(oracle::rot_of(r));
  REQUIRE_FALSE(missing.empty());
  // all faces are triangles, so a missing pair never shares a face
  const auto [u, v] = *missing.begin();
  const auto a = add_edge(r, u, v, r.rotation(u)[0], r.rotation(v)[0]);
  CHECK(oracle::genus(a) == 1);
  CHECK(a.adjacent(u, v));
}

TEST_CASE("add_edge rejects loops and existing edges") {
  const auto r = sphere(8, 2);
  const Edge e = r.edges().front();
  CHECK_THROWS_AS(add_edge(r, e.u, e.v, r.rotation(e.u)[0], r.rotation(e.v)[0]), Error);
  CHECK_THROWS_AS(add_edge(r, e.u, e.u, r.rotation(e.u)[0], r.rotation(e.u)[1]), Error);
}

TEST_CASE("delete_edge refuses a bridge") {
  // two triangles joined by the bridge (2,3)
  const auto r = oracle::make({{1, 2}, {0, 2}, {0, 1, 3}, {4, 5, 2}, {3, 5}, {3, 4}});
  CHECK_THROWS_AS(delete_edge(r, 2, 3), Error);
}

TEST_CASE("contract keeps the surface and merges the neighborhoods") {
  const auto r = sphere(12, 17);
  int done = 0;
  for (Edge e : r.edges()) {
    const Vertex c = r.successor(e.v, e.u), d = r.successor(e.u, e.v);
    std::set<Vertex> nu(r.rotation(e.u).begin(), r.rotation(e.u).end()), common;
    for (Vertex w : r.rotation(e.v))
      if (nu.count(w)) common.insert(w);
    if (common != std::set<Vertex>{c, d}) continue;
    const auto k = contract_edge(r, e.u, e.v, "m");
    CHECK(k.vertex_count() == r.vertex_count() - 1);
    CHECK(k.edge_count() == r.edge_count() - 3);
    CHECK(oracle::genus(k) == 0);
    CHECK(k.find("m"));
    if (++done == 3) break;
  }
  CHECK(done > 0);
}

TEST_CASE("contract refuses a common neighbor that is not an apex") {
  // tetrahedron with a vertex stacked into (a,b,c): a and b still share c, which
  // no longer sits on a triangle with the edge (a,b)
  auto rot = oracle::tetrahedron();
  const auto t = oracle::triangles(rot)[0];
  oracle::stack_vertex(rot, t[0], t[1], t[2]);
  CHECK_THROWS_AS(contract_edge(oracle::make(rot), t[0], t[1]), Error);
}

TEST_CASE("excise two disjoint triangles and glue an annulus: genus + 1") {
  std::mt19937 rng(4);
  for (int attempt = 0; attempt < 50; ++attempt) {
    const auto rot = oracle::random_sphere(16, rng);
    const auto r = oracle::make(rot);
    const auto tris = oracle::triangles(rot);
    for (std::size_t i = 0; i < tris.size(); ++i)
      for (std::size_t j = i + 1; j < tris.size(); ++j) {
        bool clash = false;
        for (int a : tris[i])
          for (int b : tris[j]) clash = clash || a == b || r.adjacent(a, b);
        if (clash) continue;
        OpenEmbedding open = excise_disk(r, {{tris[i][0], tris[i][1], tris[i][2]}});
        std::vector<std::string> f2;
        for (int v : tris[j]) f2.push_back(r.label(v));
        open = excise_disk(open, {f2});
        std::vector<std::string> b1, b2;
        for (int v : tris[i]) b1.push_back(r.label(v));
        for (int k = 2; k >= 0; --k) b2.push_back(r.label(tris[j][static_cast<std::size_t>(k)]));
        const auto g = glue_annulus(open, b1, b2, "121212");
        CHECK(oracle::genus(g) == 1);
        CHECK(g.edge_count() == r.edge_count() + 6);
        CHECK(oracle::all_faces_triangles(oracle::rot_of(g)));
        return;
      }
  }
  FAIL("no pair of far-apart triangles found");
}

TEST_CASE("script text round-trips with comments and notes") {
  const std::string text =
      "# a comment\n"
      "handle near 0\n"
      "delete 0 5\n"
      "add 0 5 after 14 13  # the handle edge\n"
      "\n"
      "flip 7 10\n"
      "contract y0 y1 as y\n";
  const auto s = parse_script(text);
  CHECK(write_script(s) == text);
  CHECK(s.ops().size() == 5);
  CHECK_THROWS_AS(parse_script("frobnicate 1 2\n"), Error);
  try {
    parse_script("delete 1 2\nadd 1 2 after 3\n");
    FAIL("expected a parse error");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}

TEST_CASE("the second K18 handle is the first shifted by 8") {
  const auto s = parse_script(read_file(data("k18.ops")));
  SurgeryScript first, second;
  int group = 0;
  for (const auto& op : s.ops()) {
    if (std::holds_alternative<HandleMark>(op)) {
      ++group;
      continue;
    }
    (group == 1 ? first : second).push(op);
  }
  CHECK(write_script(shift_script(first, 8, 18)) == write_script(second));
}

TEST_CASE("apply_script keeps a per-handle ledger") {
  const auto d = derive_embedding(parse_log_bundle(read_file(data("k23.logs"))));
  const auto res = apply_script(d.rotation_system, parse_script(read_file(data("k23.ops"))));
  REQUIRE(res.handles.size() == 2);
  const auto& h1 = res.handles[0];
  CHECK(h1.genus_before == 30);
  CHECK(h1.genus_after == 31);
  CHECK(h1.costs.size() == 4);
  for (const auto& [a, b] : h1.costs) CHECK((a == "0" || b == "0"));
  CHECK(h1.added.size() == 10);
  CHECK(std::set<LabelPair>(res.handles[1].restored.begin(), res.handles[1].restored.end()) ==
        std::set<LabelPair>(h1.costs.begin(), h1.costs.end()));
  CHECK(res.outstanding_costs.empty());
  CHECK(oracle::genus(res.rotation_system) == 32);
}

TEST_CASE("a failing op is named by its index") {
  const auto r = sphere(8, 9);
  const Edge e = r.edges().front();
  SurgeryScript s;
  s.push(DeleteOp{r.label(e.u), r.label(e.v)});
  s.push(DeleteOp{r.label(e.u), r.label(e.v)});
  try {
    apply_script(r, s);
    FAIL("expected a surgery error");
  } catch (const Error& e2) {
    CHECK(e2.code() == ErrorCode::surgery);
    CHECK(std::string(e2.what()).find("op 2") != std::string::npos);
  }
}

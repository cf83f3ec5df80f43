#include "rotkit/surgery.hpp"

#include "rotkit/error.hpp"
#include "rotkit/text_io.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace rotkit {

namespace {

std::string name(const RotationSystem& r, Vertex v) { return r.label(v); }

std::string pair_name(const RotationSystem& r, Vertex u, Vertex v) {
  return "(" + r.label(u) + "," + r.label(v) + ")";
}

// face id of every directed edge (v, rotation(v)[i])
std::vector<std::vector<int>> dart_faces(const RotationSystem& r) {
  std::vector<std::vector<int>> f(static_cast<std::size_t>(r.vertex_count()));
  for (Vertex v = 0; v < r.vertex_count(); ++v) f[static_cast<std::size_t>(v)].assign(r.degree(v), -1);
  int id = 0;
  for (Vertex v = 0; v < r.vertex_count(); ++v)
    for (std::size_t i = 0; i < r.degree(v); ++i) {
      Vertex a = v;
      std::size_t ai = i;
      while (f[static_cast<std::size_t>(a)][ai] < 0) {
        f[static_cast<std::size_t>(a)][ai] = id;
        const Vertex b = r.rotation(a)[ai];
        ai = (static_cast<std::size_t>(r.position(b, a)) + 1) % r.degree(b);
        a = b;
      }
      ++id;
    }
  return f;
}

// Face of the corner at v that follows neighbor `after`.
int corner_face(const RotationSystem& r, const std::vector<std::vector<int>>& f, Vertex v, Vertex after) {
  const auto p = static_cast<std::size_t>(r.position(v, after));
  return f[static_cast<std::size_t>(v)][(p + 1) % r.degree(v)];
}

std::int64_t genus_of(const RotationSystem& r) { return surface_stats(r).genus; }

RotationSystem checked(RotationSystem r, const std::string& what) {
  try {
    r.validate();
  } catch (const Error& e) {
    fail(ErrorCode::surgery, what + " leaves an invalid rotation system: " + e.what());
  }
  return r;
}

bool cyclic_equal(const std::vector<Vertex>& a, const std::vector<Vertex>& b, std::size_t* shift = nullptr) {
  if (a.size() != b.size() || a.empty()) return false;
  for (std::size_t s = 0; s < b.size(); ++s) {
    bool ok = true;
    for (std::size_t i = 0; i < a.size() && ok; ++i) ok = a[i] == b[(s + i) % b.size()];
    if (ok) {
      if (shift) *shift = s;
      return true;
    }
  }
  return false;
}

std::vector<std::string> split_list(std::string_view s, std::size_t line_no) {
  std::vector<std::string> out;
  std::size_t p = 0;
  while (p <= s.size()) {
    auto c = s.find(',', p);
    if (c == std::string_view::npos) c = s.size();
    std::string item = trim(s.substr(p, c - p));
    if (item.empty()) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": empty vertex in list");
    out.push_back(std::move(item));
    p = c + 1;
  }
  return out;
}

std::string join(const std::vector<std::string>& v) {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + v[i];
  return s;
}

std::vector<Vertex> vertices_of(const RotationSystem& r, const std::vector<std::string>& labels) {
  std::vector<Vertex> out;
  for (const auto& l : labels) {
    auto v = r.find(l);
    if (!v) fail(ErrorCode::surgery, "unknown vertex " + l);
    out.push_back(*v);
  }
  return out;
}

}  // namespace

RotationSystem delete_edge(const RotationSystem& rot, Vertex u, Vertex v) {
  if (!rot.adjacent(u, v)) fail(ErrorCode::surgery, "delete: " + pair_name(rot, u, v) + " is not an edge");
  const auto f = dart_faces(rot);
  const int fu = f[static_cast<std::size_t>(u)][static_cast<std::size_t>(rot.position(u, v))];
  const int fv = f[static_cast<std::size_t>(v)][static_cast<std::size_t>(rot.position(v, u))];
  if (fu == fv) fail(ErrorCode::surgery, "delete: both sides of " + pair_name(rot, u, v) + " lie on one face");
  if (rot.degree(u) <= 2 || rot.degree(v) <= 2)
    fail(ErrorCode::surgery, "delete: " + pair_name(rot, u, v) + " would leave a vertex of degree 1");
  RotationSystem out = rot;
  out.remove_edge(u, v);
  return checked(std::move(out), "delete " + pair_name(rot, u, v));
}

RotationSystem add_edge(const RotationSystem& rot, Vertex u, Vertex v, Vertex u_after, Vertex v_after) {
  const std::string what = "add " + pair_name(rot, u, v);
  if (u == v) fail(ErrorCode::surgery, what + ": loop");
  if (rot.adjacent(u, v)) fail(ErrorCode::surgery, what + ": edge already present");
  if (!rot.adjacent(u, u_after)) fail(ErrorCode::surgery, what + ": " + name(rot, u_after) + " is not a neighbor of " + name(rot, u));
  if (!rot.adjacent(v, v_after)) fail(ErrorCode::surgery, what + ": " + name(rot, v_after) + " is not a neighbor of " + name(rot, v));
  const auto f = dart_faces(rot);
  const bool same_face = corner_face(rot, f, u, u_after) == corner_face(rot, f, v, v_after);
  const std::int64_t before = genus_of(rot);
  RotationSystem out = rot;
  out.insert_after(u, u_after, v);
  out.insert_after(v, v_after, u);
  out = checked(std::move(out), what);
  const std::int64_t after = genus_of(out);
  if (after != before + (same_face ? 0 : 1))
    fail(ErrorCode::surgery, what + ": genus went from " + std::to_string(before) + " to " + std::to_string(after));
  return out;
}

RotationSystem flip_edge(const RotationSystem& rot, Vertex a, Vertex b) {
  const std::string what = "flip " + pair_name(rot, a, b);
  if (!rot.adjacent(a, b)) fail(ErrorCode::surgery, what + ": not an edge");
  const Face f1 = face_walk(rot, a, b), f2 = face_walk(rot, b, a);
  if (f1.size() != 3 || f2.size() != 3) fail(ErrorCode::surgery, what + ": a side of the edge is not a triangle");
  const Vertex c = f1[2], d = f2[2];
  if (c == d) fail(ErrorCode::surgery, what + ": both triangles share the third vertex " + name(rot, c));
  if (rot.adjacent(c, d)) fail(ErrorCode::surgery, what + ": diagonal " + pair_name(rot, c, d) + " already present");
  RotationSystem out = rot;
  out.remove_edge(a, b);
  // The merged quadrilateral is c -> a -> d -> b -> c.
  out.insert_after(c, b, d);
  out.insert_after(d, a, c);
  out = checked(std::move(out), what);
  if (genus_of(out) != genus_of(rot)) fail(ErrorCode::surgery, what + ": genus changed");
  return out;
}

RotationSystem contract_edge(const RotationSystem& rot, Vertex u, Vertex v, const std::string& label) {
  const std::string what = "contract " + pair_name(rot, u, v);
  if (!rot.adjacent(u, v)) fail(ErrorCode::surgery, what + ": not an edge");
  std::set<Vertex> apex;
  for (const Face& f : {face_walk(rot, u, v), face_walk(rot, v, u)})
    if (f.size() == 3) apex.insert(f[2]);
  for (Vertex w : rot.rotation(u))
    if (w != v && rot.adjacent(v, w) && !apex.count(w))
      fail(ErrorCode::surgery, what + ": common neighbor " + name(rot, w) + " would become a double edge");

  auto from = [&](Vertex x, Vertex skip) {
    std::vector<Vertex> s;
    const auto r = rot.rotation(x);
    const auto p = static_cast<std::size_t>(rot.position(x, skip));
    for (std::size_t t = 1; t < r.size(); ++t) s.push_back(r[(p + t) % r.size()]);
    return s;
  };
  std::vector<Vertex> merged = from(u, v);
  for (Vertex w : from(v, u)) merged.push_back(w);

  auto map_id = [&](Vertex w) { return w == v ? u : (w > v ? w - 1 : w); };
  auto dedup = [](std::vector<Vertex> s) {
    std::vector<Vertex> out;
    for (Vertex w : s)
      if (out.empty() || out.back() != w) out.push_back(w);
    while (out.size() > 1 && out.front() == out.back()) out.pop_back();
    return out;
  };
  std::vector<std::string> labels;
  std::vector<std::vector<Vertex>> rots;
  for (Vertex w = 0; w < rot.vertex_count(); ++w) {
    if (w == v) continue;
    labels.push_back(w == u && !label.empty() ? label : rot.label(w));
    std::vector<Vertex> src = w == u ? merged : std::vector<Vertex>(rot.rotation(w).begin(), rot.rotation(w).end());
    std::vector<Vertex> mapped;
    for (Vertex x : src) mapped.push_back(map_id(x));
    rots.push_back(dedup(std::move(mapped)));
  }
  if (!label.empty() && label != rot.label(u) && rot.find(label))
    fail(ErrorCode::surgery, what + ": label " + label + " already in use");
  RotationSystem out = checked(RotationSystem::unchecked(std::move(labels), std::move(rots)), what);
  if (genus_of(out) != genus_of(rot)) fail(ErrorCode::surgery, what + ": genus changed");
  return out;
}

OpenEmbedding excise_disk(const RotationSystem& rot, const std::vector<std::vector<Vertex>>& faces) {
  OpenEmbedding open;
  open.rot = rot;
  std::vector<std::vector<std::string>> named;
  for (const auto& f : faces) {
    std::vector<std::string> l;
    for (Vertex v : f) l.push_back(rot.label(v));
    named.push_back(std::move(l));
  }
  return excise_disk(std::move(open), named);
}

OpenEmbedding excise_disk(OpenEmbedding open, const std::vector<std::vector<std::string>>& faces) {
  const RotationSystem& rot = open.rot;
  if (faces.empty()) fail(ErrorCode::surgery, "excise: no faces given");
  const auto fid = dart_faces(rot);
  auto dart_face = [&](Vertex a, Vertex b) {
    return fid[static_cast<std::size_t>(a)][static_cast<std::size_t>(rot.position(a, b))];
  };
  std::set<int> chosen;
  std::vector<Face> walks;
  for (const auto& lf : faces) {
    const auto f = vertices_of(rot, lf);
    std::string text = "f(" + join(lf) + ")";
    if (f.size() < 3 || !rot.adjacent(f[0], f[1])) fail(ErrorCode::surgery, "excise: " + text + " is not a face");
    const Face w = face_walk(rot, f[0], f[1]);
    if (!cyclic_equal(f, w)) fail(ErrorCode::surgery, "excise: " + text + " is not a face");
    if (!chosen.insert(dart_face(f[0], f[1])).second) fail(ErrorCode::surgery, "excise: " + text + " listed twice");
    walks.push_back(w);
  }
  for (const Face& b : open.boundaries)
    if (chosen.count(dart_face(b[0], b[1]))) fail(ErrorCode::surgery, "excise: a chosen face is already a hole");

  // interior edges have both sides chosen; boundary darts only one
  std::set<Edge> interior, all_edges;
  std::map<Vertex, Vertex> boundary_next;
  std::set<Vertex> verts;
  for (const Face& w : walks)
    for (std::size_t i = 0; i < w.size(); ++i) {
      const Vertex a = w[i], b = w[(i + 1) % w.size()];
      verts.insert(a);
      all_edges.insert(Edge(a, b));
      if (chosen.count(dart_face(b, a))) {
        interior.insert(Edge(a, b));
      } else if (!boundary_next.emplace(a, b).second) {
        fail(ErrorCode::surgery, "excise: boundary is pinched at " + name(rot, a));
      }
    }
  // dual connectivity through interior edges
  {
    std::map<int, int> parent;
    for (int c : chosen) parent[c] = c;
    std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
    for (const Edge& e : interior) parent[find(dart_face(e.u, e.v))] = find(dart_face(e.v, e.u));
    std::set<int> roots;
    for (int c : chosen) roots.insert(find(c));
    if (roots.size() != 1) fail(ErrorCode::surgery, "excise: faces are not edge-connected");
  }
  if (boundary_next.empty()) fail(ErrorCode::surgery, "excise: faces cover the whole surface");
  Face boundary;
  {
    Vertex start = boundary_next.begin()->first, x = start;
    do {
      boundary.push_back(x);
      auto it = boundary_next.find(x);
      if (it == boundary_next.end()) fail(ErrorCode::surgery, "excise: boundary is not a closed cycle");
      x = it->second;
    } while (x != start && boundary.size() <= boundary_next.size());
    if (x != start || boundary.size() != boundary_next.size())
      fail(ErrorCode::surgery, "excise: boundary is not a single simple cycle");
  }
  const auto euler = static_cast<std::int64_t>(verts.size()) - static_cast<std::int64_t>(all_edges.size()) +
                     static_cast<std::int64_t>(chosen.size());
  if (euler != 1) fail(ErrorCode::surgery, "excise: union of faces is not a disk (Euler count " + std::to_string(euler) + ")");

  std::set<Vertex> on_boundary(boundary.begin(), boundary.end());
  std::vector<char> removed(static_cast<std::size_t>(rot.vertex_count()), 0);
  for (Vertex v : verts)
    if (!on_boundary.count(v)) {
      removed[static_cast<std::size_t>(v)] = 1;
      open.cost_vertices.push_back(rot.label(v));
    }
  for (const Edge& e : interior) open.cost_edges.push_back(make_label_pair(rot.label(e.u), rot.label(e.v)));

  std::vector<Vertex> new_id(static_cast<std::size_t>(rot.vertex_count()), kNoVertex);
  std::vector<std::string> labels;
  for (Vertex v = 0; v < rot.vertex_count(); ++v)
    if (!removed[static_cast<std::size_t>(v)]) {
      new_id[static_cast<std::size_t>(v)] = static_cast<Vertex>(labels.size());
      labels.push_back(rot.label(v));
    }
  std::vector<std::vector<Vertex>> rots;
  for (Vertex v = 0; v < rot.vertex_count(); ++v) {
    if (removed[static_cast<std::size_t>(v)]) continue;
    std::vector<Vertex> r;
    for (Vertex w : rot.rotation(v))
      if (!removed[static_cast<std::size_t>(w)] && !interior.count(Edge(v, w))) r.push_back(new_id[static_cast<std::size_t>(w)]);
    rots.push_back(std::move(r));
  }
  RotationSystem out = checked(RotationSystem::unchecked(std::move(labels), std::move(rots)), "excise");
  for (Face& b : open.boundaries)
    for (Vertex& v : b) {
      v = new_id[static_cast<std::size_t>(v)];
      if (v == kNoVertex) fail(ErrorCode::surgery, "excise: removes a vertex of an open hole");
    }
  for (Vertex& v : boundary) v = new_id[static_cast<std::size_t>(v)];
  if (!cyclic_equal(boundary, face_walk(out, boundary[0], boundary[1])))
    fail(ErrorCode::surgery, "excise: hole is not a face after removal");
  if (genus_of(out) != genus_of(rot)) fail(ErrorCode::surgery, "excise: genus changed");
  open.rot = std::move(out);
  open.boundaries.push_back(std::move(boundary));
  return open;
}

RotationSystem glue_annulus(const OpenEmbedding& open, const std::vector<std::string>& b1_labels,
                            const std::vector<std::string>& b2_labels, const std::string& merge) {
  const RotationSystem& rot = open.rot;
  const auto b1 = vertices_of(rot, b1_labels);
  const auto b2 = vertices_of(rot, b2_labels);
  const std::size_t n1 = b1.size(), n2 = b2.size();
  if (n1 < 3 || n2 < 3) fail(ErrorCode::surgery, "glue: boundaries need at least 3 vertices");
  std::vector<Vertex> b2_walk(b2.rbegin(), b2.rend());
  int h1 = -1, h2 = -1;
  for (std::size_t h = 0; h < open.boundaries.size(); ++h) {
    if (cyclic_equal(b1, open.boundaries[h])) h1 = static_cast<int>(h);
    if (cyclic_equal(b2_walk, open.boundaries[h])) h2 = static_cast<int>(h);
  }
  if (h1 < 0) fail(ErrorCode::surgery, "glue: B1=(" + join(b1_labels) + ") is not an open hole in tracing direction");
  if (h2 < 0) fail(ErrorCode::surgery, "glue: B2=(" + join(b2_labels) + ") is not an open hole against tracing direction");
  if (h1 == h2) fail(ErrorCode::surgery, "glue: B1 and B2 are the same hole");
  for (Vertex v : b1)
    if (std::find(b2.begin(), b2.end(), v) != b2.end())
      fail(ErrorCode::surgery, "glue: boundaries share vertex " + name(rot, v));
  if (merge.size() != n1 + n2 || std::count(merge.begin(), merge.end(), '1') != static_cast<long>(n1) ||
      std::count(merge.begin(), merge.end(), '2') != static_cast<long>(n2))
    fail(ErrorCode::surgery, "glue: merge needs " + std::to_string(n1) + " '1's and " + std::to_string(n2) + " '2's");

  // successor relations at each vertex contributed by the new triangles
  std::map<Vertex, std::map<Vertex, Vertex>> succ;
  auto triangle = [&](Vertex p, Vertex q, Vertex r) {
    succ[q][p] = r;
    succ[r][q] = p;
    succ[p][r] = q;
  };
  std::set<Edge> cross;
  std::size_t i = 0, t = 0;
  cross.insert(Edge(b1[0], b2[0]));
  for (char c : merge) {
    if (c == '1') {
      triangle(b1[i % n1], b1[(i + 1) % n1], b2[t % n2]);
      ++i;
    } else {
      triangle(b2[(t + 1) % n2], b2[t % n2], b1[i % n1]);
      ++t;
    }
    cross.insert(Edge(b1[i % n1], b2[t % n2]));
  }
  if (cross.size() != n1 + n2) fail(ErrorCode::surgery, "glue: merge repeats a cross edge");
  for (const Edge& e : cross)
    if (rot.adjacent(e.u, e.v)) fail(ErrorCode::surgery, "glue: cross edge " + pair_name(rot, e.u, e.v) + " already present");

  RotationSystem out = rot;
  auto fill = [&](Vertex v, Vertex pred, Vertex next) {
    const auto& s = succ[v];
    std::vector<Vertex> chain;
    Vertex x = pred;
    for (std::size_t guard = 0; guard <= s.size(); ++guard) {
      auto it = s.find(x);
      if (it == s.end()) break;
      x = it->second;
      if (x == next) break;
      chain.push_back(x);
    }
    if (x != next) fail(ErrorCode::surgery, "glue: incompatible cyclic orders at " + name(rot, v));
    Vertex after = pred;
    for (Vertex w : chain) {
      out.insert_after(v, after, w);
      after = w;
    }
  };
  for (std::size_t k = 0; k < n1; ++k) fill(b1[k], b1[(k + n1 - 1) % n1], b1[(k + 1) % n1]);
  for (std::size_t k = 0; k < n2; ++k) fill(b2[k], b2[(k + 1) % n2], b2[(k + n2 - 1) % n2]);
  out = checked(std::move(out), "glue");
  if (genus_of(out) != genus_of(rot) + 1) fail(ErrorCode::surgery, "glue: genus did not grow by one");
  for (const Edge& e : cross)
    for (const Face& f : {face_walk(out, e.u, e.v), face_walk(out, e.v, e.u)})
      if (f.size() != 3) fail(ErrorCode::surgery, "glue: a face along the annulus is not a triangle");
  return out;
}

std::vector<SurgeryOp> SurgeryScript::ops() const {
  std::vector<SurgeryOp> out;
  for (const auto& l : lines)
    if (l.is_op) out.push_back(l.op);
  return out;
}

void SurgeryScript::push(SurgeryOp op, std::string note) { lines.push_back({true, std::move(op), std::move(note)}); }

std::string op_text(const SurgeryOp& op) {
  struct V {
    std::string operator()(const FlipOp& o) const { return "flip " + o.a + " " + o.b; }
    std::string operator()(const DeleteOp& o) const { return "delete " + o.a + " " + o.b; }
    std::string operator()(const AddOp& o) const { return "add " + o.a + " " + o.b + " after " + o.a_after + " " + o.b_after; }
    std::string operator()(const ExciseOp& o) const {
      std::string s = "excise";
      for (const auto& f : o.faces) s += " f(" + join(f) + ")";
      return s;
    }
    std::string operator()(const GlueOp& o) const {
      return "glue B1=(" + join(o.b1) + ") B2=(" + join(o.b2) + ") merge=" + o.merge;
    }
    std::string operator()(const ContractOp& o) const {
      return "contract " + o.u + " " + o.v + (o.label.empty() ? "" : " as " + o.label);
    }
    std::string operator()(const HandleMark& o) const { return "handle " + o.name; }
  };
  return std::visit(V{}, op);
}

SurgeryScript parse_script(std::string_view text) {
  SurgeryScript script;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string raw(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    const std::string line = trim(raw);
    if (line.empty() || line[0] == '#') {
      script.lines.push_back({false, {}, raw});
      continue;
    }
    std::string body = line, note;
    if (auto h = line.find(" #"); h != std::string::npos) {
      body = trim(std::string_view(line).substr(0, h));
      note = trim(std::string_view(line).substr(h + 2));
    }
    const auto t = split_tokens(body);
    auto bad = [&](const std::string& msg) { fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + msg); };
    SurgeryOp op;
    if (t[0] == "flip" || t[0] == "delete") {
      if (t.size() != 3) bad("expected '" + t[0] + " a b'");
      if (t[0] == "flip")
        op = FlipOp{t[1], t[2]};
      else
        op = DeleteOp{t[1], t[2]};
    } else if (t[0] == "add") {
      if (t.size() != 6 || t[3] != "after") bad("expected 'add a b after c d'");
      op = AddOp{t[1], t[2], t[4], t[5]};
    } else if (t[0] == "contract") {
      if (t.size() == 3)
        op = ContractOp{t[1], t[2], {}};
      else if (t.size() == 5 && t[3] == "as")
        op = ContractOp{t[1], t[2], t[4]};
      else
        bad("expected 'contract u v [as w]'");
    } else if (t[0] == "excise") {
      ExciseOp e;
      for (std::size_t k = 1; k < t.size(); ++k) {
        if (t[k].size() < 4 || t[k].substr(0, 2) != "f(" || t[k].back() != ')') bad("expected f(v1,v2,...)");
        e.faces.push_back(split_list(std::string_view(t[k]).substr(2, t[k].size() - 3), line_no));
      }
      if (e.faces.empty()) bad("excise needs at least one face");
      op = std::move(e);
    } else if (t[0] == "glue") {
      if (t.size() != 4 || t[1].rfind("B1=(", 0) != 0 || t[2].rfind("B2=(", 0) != 0 || t[3].rfind("merge=", 0) != 0 ||
          t[1].back() != ')' || t[2].back() != ')')
        bad("expected 'glue B1=(...) B2=(...) merge=...'");
      GlueOp g;
      g.b1 = split_list(std::string_view(t[1]).substr(4, t[1].size() - 5), line_no);
      g.b2 = split_list(std::string_view(t[2]).substr(4, t[2].size() - 5), line_no);
      g.merge = t[3].substr(6);
      if (g.merge.find_first_not_of("12") != std::string::npos) bad("merge may only contain 1 and 2");
      op = std::move(g);
    } else if (t[0] == "handle") {
      op = HandleMark{trim(std::string_view(body).substr(6))};
    } else {
      bad("unknown op '" + t[0] + "'");
    }
    script.lines.push_back({true, std::move(op), std::move(note)});
  }
  return script;
}

std::string write_script(const SurgeryScript& script) {
  std::string out;
  for (const auto& l : script.lines) {
    if (!l.is_op)
      out += l.note;
    else
      out += op_text(l.op) + (l.note.empty() ? "" : "  # " + l.note);
    out += "\n";
  }
  return out;
}

SurgeryScript shift_script(const SurgeryScript& script, int s, int m) {
  auto sh = [&](const std::string& l) {
    if (!is_numbered_label(l)) return l;
    return std::to_string(((std::stoi(l) + s) % m + m) % m);
  };
  auto shv = [&](std::vector<std::string> v) {
    for (auto& x : v) x = sh(x);
    return v;
  };
  struct V {
    decltype(sh)& f;
    decltype(shv)& fv;
    SurgeryOp operator()(const FlipOp& o) const { return FlipOp{f(o.a), f(o.b)}; }
    SurgeryOp operator()(const DeleteOp& o) const { return DeleteOp{f(o.a), f(o.b)}; }
    SurgeryOp operator()(const AddOp& o) const { return AddOp{f(o.a), f(o.b), f(o.a_after), f(o.b_after)}; }
    SurgeryOp operator()(const ExciseOp& o) const {
      ExciseOp e;
      for (const auto& face : o.faces) e.faces.push_back(fv(face));
      return e;
    }
    SurgeryOp operator()(const GlueOp& o) const { return GlueOp{fv(o.b1), fv(o.b2), o.merge}; }
    SurgeryOp operator()(const ContractOp& o) const { return ContractOp{f(o.u), f(o.v), o.label}; }
    SurgeryOp operator()(const HandleMark& o) const { return o; }
  };
  SurgeryScript out;
  for (const auto& l : script.lines) {
    if (l.is_op)
      out.lines.push_back({true, std::visit(V{sh, shv}, l.op), l.note});
    else
      out.lines.push_back(l);
  }
  return out;
}

namespace {

std::set<LabelPair> label_edges(const RotationSystem& r) {
  std::set<LabelPair> s;
  for (const Edge& e : r.edges()) s.insert(make_label_pair(r.label(e.u), r.label(e.v)));
  return s;
}

std::vector<LabelPair> minus(const std::set<LabelPair>& a, const std::set<LabelPair>& b) {
  std::vector<LabelPair> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

}  // namespace

ScriptResult apply_script(const RotationSystem& rot, const SurgeryScript& script) {
  rot.validate();
  OpenEmbedding state;
  state.rot = rot;
  ScriptResult res;
  res.report = VerificationReport("surgery script");
  std::set<LabelPair> outstanding;
  std::set<LabelPair> group_start = label_edges(rot);
  bool group_open = false;

  auto close_group = [&]() {
    if (!group_open) return;
    auto& g = res.handles.back();
    const auto now = label_edges(state.rot);
    g.genus_after = static_cast<int>(genus_of(state.rot));
    g.added = minus(now, group_start);
    g.costs = minus(group_start, now);
    for (const auto& e : g.added)
      if (outstanding.erase(e)) g.restored.push_back(e);
    for (const auto& e : g.costs) outstanding.insert(e);
    group_start = now;
    group_open = false;
  };

  const auto ops = script.ops();
  for (std::size_t idx = 0; idx < ops.size(); ++idx) {
    const SurgeryOp& op = ops[idx];
    const std::string text = op_text(op);
    const std::int64_t g0 = genus_of(state.rot);
    try {
      if (const auto* h = std::get_if<HandleMark>(&op)) {
        if (!state.boundaries.empty()) fail(ErrorCode::surgery, "open holes left before the next handle");
        close_group();
        res.handles.push_back({h->name, static_cast<int>(g0), static_cast<int>(g0), {}, {}, {}});
        group_open = true;
        continue;
      }
      if (!group_open) {
        res.handles.push_back({"", static_cast<int>(g0), static_cast<int>(g0), {}, {}, {}});
        group_open = true;
      }
      const RotationSystem& r = state.rot;
      std::int64_t expect = g0;
      if (const auto* o = std::get_if<ExciseOp>(&op)) {
        state = excise_disk(std::move(state), o->faces);
      } else if (const auto* o = std::get_if<GlueOp>(&op)) {
        RotationSystem next = glue_annulus(state, o->b1, o->b2, o->merge);
        const auto b1 = vertices_of(r, o->b1);
        const auto b2 = vertices_of(r, o->b2);
        std::vector<Face> keep;
        for (const Face& b : state.boundaries) {
          std::vector<Vertex> rb2(b2.rbegin(), b2.rend());
          if (!cyclic_equal(b1, b) && !cyclic_equal(rb2, b)) keep.push_back(b);
        }
        state.rot = std::move(next);
        state.boundaries = std::move(keep);
        expect = g0 + 1;
      } else {
        if (!state.boundaries.empty()) fail(ErrorCode::surgery, "holes must be glued before " + text);
        if (const auto* o = std::get_if<FlipOp>(&op)) {
          state.rot = flip_edge(r, r.require(o->a), r.require(o->b));
        } else if (const auto* o = std::get_if<DeleteOp>(&op)) {
          state.rot = delete_edge(r, r.require(o->a), r.require(o->b));
        } else if (const auto* o = std::get_if<AddOp>(&op)) {
          const auto f = dart_faces(r);
          const Vertex a = r.require(o->a), b = r.require(o->b), aa = r.require(o->a_after), bb = r.require(o->b_after);
          if (r.adjacent(a, aa) && r.adjacent(b, bb) && corner_face(r, f, a, aa) != corner_face(r, f, b, bb)) expect = g0 + 1;
          state.rot = add_edge(r, a, b, aa, bb);
        } else if (const auto* o = std::get_if<ContractOp>(&op)) {
          state.rot = contract_edge(r, r.require(o->u), r.require(o->v), o->label);
        }
      }
      const std::int64_t g1 = genus_of(state.rot);
      if (g1 != expect)
        fail(ErrorCode::surgery, "genus " + std::to_string(g0) + " -> " + std::to_string(g1) + ", expected " + std::to_string(expect));
      res.report.add("op " + std::to_string(idx + 1) + ": " + text, true,
                     "genus " + std::to_string(g1) + ", E=" + std::to_string(state.rot.edge_count()));
    } catch (const Error& e) {
      fail(ErrorCode::surgery, "op " + std::to_string(idx + 1) + " (" + text + "): " + e.what());
    }
  }
  if (!state.boundaries.empty()) fail(ErrorCode::surgery, "script ends with open holes");
  close_group();
  state.rot.validate();
  res.rotation_system = std::move(state.rot);
  res.outstanding_costs.assign(outstanding.begin(), outstanding.end());
  const auto s = surface_stats(res.rotation_system);
  res.report.set_count("vertices", s.v_count);
  res.report.set_count("edges", s.e_count);
  res.report.set_count("faces", s.f_count);
  res.report.set_count("genus", s.genus);
  return res;
}

}  // namespace rotkit

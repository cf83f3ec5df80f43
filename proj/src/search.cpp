#include "rotkit/search.hpp"

#include "rotkit/error.hpp"
#include "rotkit/text_io.hpp"

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <map>
#include <set>

namespace rotkit {

namespace {

std::vector<LabelPair> parse_pairs(const std::string& value, std::size_t line_no) {
  std::vector<LabelPair> out;
  for (const auto& tok : split_tokens(value)) {
    const auto dash = tok.find('-');
    if (dash == std::string::npos || dash == 0 || dash + 1 == tok.size())
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected a pair like 3-12, got '" + tok + "'");
    out.push_back(make_label_pair(tok.substr(0, dash), tok.substr(dash + 1)));
  }
  return out;
}

std::string pairs_text(const std::vector<LabelPair>& pairs) {
  std::string s;
  for (const auto& p : pairs) s += (s.empty() ? "" : " ") + p.first + "-" + p.second;
  return s;
}

std::string words_text(const std::vector<std::string>& words) {
  std::string s;
  for (const auto& w : words) s += (s.empty() ? "" : " ") + w;
  return s;
}

int parse_int(const std::string& value, std::size_t line_no) {
  try {
    std::size_t used = 0;
    const int v = std::stoi(value, &used);
    if (used == value.size()) return v;
  } catch (const std::exception&) {
  }
  fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected an integer, got '" + value + "'");
}

bool parse_bool(const std::string& value, std::size_t line_no) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected true or false, got '" + value + "'");
}

}  // namespace

SearchSpec parse_search_spec(std::string_view text) {
  SearchSpec spec;
  std::map<int, HandleSpec> handles;
  int handle_count = -1;
  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    std::string line(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.erase(h);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected key = value");
    const std::string key = trim(std::string_view(line).substr(0, eq));
    const std::string value = trim(std::string_view(line).substr(eq + 1));
    if (key == "target_n") {
      spec.target_n = parse_int(value, line_no);
    } else if (key == "missing") {
      spec.missing_edges = parse_pairs(value, line_no);
    } else if (key == "max_deletions") {
      spec.max_deletions = parse_int(value, line_no);
    } else if (key == "max_disk_faces") {
      spec.max_disk_faces = parse_int(value, line_no);
    } else if (key == "max_flips_per_handle") {
      spec.max_flips_per_handle = parse_int(value, line_no);
    } else if (key == "require_restore_costs") {
      spec.require_restore_costs = parse_bool(value, line_no);
    } else if (key == "symmetry_shift") {
      spec.symmetry_shift = parse_int(value, line_no);
    } else if (key == "shift_modulus") {
      spec.shift_modulus = parse_int(value, line_no);
    } else if (key == "require_complete") {
      spec.require_complete = parse_bool(value, line_no);
    } else if (key == "max_seconds") {
      spec.max_seconds = parse_int(value, line_no);
    } else if (key == "max_results") {
      spec.max_results = parse_int(value, line_no);
    } else if (key == "handle_count") {
      handle_count = parse_int(value, line_no);
    } else if (key == "post") {
      const auto s = parse_script(value);
      for (const auto& op : s.ops()) spec.post_ops.push_back(op);
    } else if (key == "twins") {
      const auto t = split_tokens(value);
      if (t.size() != 2) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": twins takes two vertices");
      spec.twins.emplace_back(t[0], t[1]);
    } else if (key.rfind("handle.", 0) == 0) {
      const auto dot = key.find('.', 7);
      if (dot == std::string::npos) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": expected handle.<n>.<field>");
      const int idx = parse_int(key.substr(7, dot - 7), line_no);
      if (idx < 1) fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": handles are numbered from 1");
      const std::string field = key.substr(dot + 1);
      HandleSpec& h = handles[idx];
      if (field == "name") {
        h.name = value;
      } else if (field == "anchors") {
        h.anchors = split_tokens(value);
      } else if (field == "targets") {
        h.targets = parse_pairs(value, line_no);
      } else if (field == "max_costs") {
        h.max_costs = parse_int(value, line_no);
      } else if (field == "cost_vertices") {
        h.cost_vertices = split_tokens(value);
      } else if (field == "spokes_only") {
        h.spokes_only = parse_bool(value, line_no);
      } else if (field == "pre_deletions") {
        h.pre_deletions = parse_pairs(value, line_no);
      } else {
        fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": unknown handle field '" + field + "'");
      }
    } else {
      fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": unknown key '" + key + "'");
    }
  }
  int expect = 1;
  for (auto& [idx, h] : handles) {
    if (idx != expect++) fail(ErrorCode::parse, "handle numbers must run 1, 2, ... without gaps");
    if (h.anchors.empty()) fail(ErrorCode::parse, "handle." + std::to_string(idx) + " has no anchors");
    spec.handles.push_back(std::move(h));
  }
  if (handle_count >= 0 && handle_count != static_cast<int>(spec.handles.size()))
    fail(ErrorCode::parse, "handle_count is " + std::to_string(handle_count) + " but " +
                               std::to_string(spec.handles.size()) + " handles are described");
  if (spec.target_n < 3) fail(ErrorCode::parse, "target_n must be at least 3");
  if (spec.max_deletions < 0 || spec.max_flips_per_handle < 0 || spec.max_results < 1)
    fail(ErrorCode::parse, "bounds must be nonnegative and max_results at least 1");
  return spec;
}

std::string write_search_spec(const SearchSpec& spec) {
  std::string out;
  out += "target_n = " + std::to_string(spec.target_n) + "\n";
  if (!spec.missing_edges.empty()) out += "missing = " + pairs_text(spec.missing_edges) + "\n";
  out += "handle_count = " + std::to_string(spec.handles.size()) + "\n";
  out += "max_deletions = " + std::to_string(spec.max_deletions) + "\n";
  out += "max_disk_faces = " + std::to_string(spec.max_disk_faces) + "\n";
  out += "max_flips_per_handle = " + std::to_string(spec.max_flips_per_handle) + "\n";
  out += std::string("require_restore_costs = ") + (spec.require_restore_costs ? "true" : "false") + "\n";
  if (spec.symmetry_shift) out += "symmetry_shift = " + std::to_string(*spec.symmetry_shift) + "\n";
  if (spec.shift_modulus) out += "shift_modulus = " + std::to_string(spec.shift_modulus) + "\n";
  out += "max_results = " + std::to_string(spec.max_results) + "\n";
  if (!spec.require_complete) out += "require_complete = false\n";
  if (spec.max_seconds > 0) out += "max_seconds = " + std::to_string(spec.max_seconds) + "\n";
  for (const auto& [a, b] : spec.twins) out += "twins = " + a + " " + b + "\n";
  for (const auto& op : spec.post_ops) out += "post = " + op_text(op) + "\n";
  for (std::size_t i = 0; i < spec.handles.size(); ++i) {
    const HandleSpec& h = spec.handles[i];
    const std::string p = "handle." + std::to_string(i + 1) + ".";
    if (!h.name.empty()) out += p + "name = " + h.name + "\n";
    out += p + "anchors = " + words_text(h.anchors) + "\n";
    if (!h.targets.empty()) out += p + "targets = " + pairs_text(h.targets) + "\n";
    if (h.max_costs) out += p + "max_costs = " + std::to_string(h.max_costs) + "\n";
    if (!h.cost_vertices.empty()) out += p + "cost_vertices = " + words_text(h.cost_vertices) + "\n";
    if (h.spokes_only) out += p + "spokes_only = true\n";
    if (!h.pre_deletions.empty()) out += p + "pre_deletions = " + pairs_text(h.pre_deletions) + "\n";
  }
  return out;
}

VerificationReport verify_completion(const RotationSystem& emb, int n) {
  VerificationReport report("completion K" + std::to_string(n));
  try {
    emb.validate();
    report.pass("rotation system valid");
  } catch (const Error& e) {
    report.fail("rotation system valid", e.what());
    return report;
  }
  const SurfaceStats s = surface_stats(emb);
  report.set_count("vertices", s.v_count);
  report.set_count("edges", s.e_count);
  report.set_count("faces", s.f_count);
  report.set_count("genus", s.genus);
  report.add("vertex count", s.v_count == n, "V=" + std::to_string(s.v_count) + ", expected " + std::to_string(n));
  const auto missing = missing_pairs(emb);
  report.set_count("missing_edges", static_cast<std::int64_t>(missing.size()));
  std::string w;
  for (std::size_t i = 0; i < missing.size() && i < 12; ++i) w += (i ? " " : "") + missing[i].first + "-" + missing[i].second;
  if (missing.size() > 12) w += " ...";
  report.add("graph is complete", missing.empty(), missing.empty() ? "" : std::to_string(missing.size()) + " missing edges: " + w);
  const std::int64_t target = n >= 3 ? genus_target(n) : 0;
  report.set_count("genus_target", target);
  report.add("genus equals genus_target", s.genus == target,
             "genus " + std::to_string(s.genus) + ", target " + std::to_string(target));
  return report;
}

namespace {

// Face ids per directed edge (v, rotation(v)[i]).
std::vector<std::vector<int>> face_ids(const RotationSystem& r, int* count) {
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
  if (count) *count = id;
  return f;
}

// Corner i at u lies between rotation(u)[i] and rotation(u)[i+1].
int corner_face(const RotationSystem& r, const std::vector<std::vector<int>>& f, Vertex u, std::size_t i) {
  return f[static_cast<std::size_t>(u)][(i + 1) % r.degree(u)];
}

using Mask = std::uint64_t;
Mask bit(Vertex v) { return Mask{1} << v; }

struct Budget {
  long long nodes = 0;
  std::optional<std::chrono::steady_clock::time_point> deadline;
  bool timed_out = false;
  int tick = 0;

  bool expired() {
    if (timed_out) return true;
    if (!deadline || ++tick % 256) return false;
    timed_out = std::chrono::steady_clock::now() > *deadline;
    return timed_out;
  }
};

// Returns true to stop the search.
using FoundFn = std::function<bool(const RotationSystem&, const std::vector<SurgeryOp>&)>;

// One handle search from a fixed state.
class HandleSearch {
 public:
  HandleSearch(const SearchSpec& spec, const HandleSpec& h, RotationSystem base, std::vector<Edge> targets,
               std::function<bool(const RotationSystem&)> accept, Budget* budget)
      : spec_(spec), h_(h), base_(std::move(base)), targets_(std::move(targets)), accept_(std::move(accept)),
        budget_(budget) {
    g0_ = surface_stats(base_).genus;
    for (const auto& [a, b] : spec.twins) {
      auto u = base_.find(a), v = base_.find(b);
      if (u && v) {
        twin_[*u] = *v;
        twin_[*v] = *u;
      }
    }
    for (const auto& l : h.cost_vertices) cost_vertices_.insert(base_.require(l));
  }

  void run(FoundFn on_found) {
    on_found_ = std::move(on_found);
    for (int flips = 0; flips <= spec_.max_flips_per_handle && !done(); ++flips)
      for (int dels = 0; dels <= spec_.max_deletions && !done(); ++dels) {
        flips_wanted_ = flips;
        dels_wanted_ = dels;
        RotationSystem r = base_;
        std::vector<SurgeryOp> ops;
        std::vector<Edge> targets = targets_;
        flip_stage(r, ops, targets, {}, 0);
      }
  }

 private:
  bool done() const { return stop_ || budget_->expired(); }

  std::vector<Edge> candidates(const RotationSystem& r) const {
    std::set<Vertex> anchors;
    for (const auto& l : h_.anchors) anchors.insert(r.require(l));
    std::set<Edge> cs;
    if (h_.spokes_only) {
      for (Vertex a : anchors)
        for (Vertex w : r.rotation(a)) cs.insert(Edge(a, w));
      return {cs.begin(), cs.end()};
    }
    for (const Face& f : trace_faces(r).faces) {
      if (std::none_of(f.begin(), f.end(), [&](Vertex v) { return anchors.count(v) > 0; })) continue;
      for (std::size_t t = 0; t < f.size(); ++t) cs.insert(Edge(f[t], f[(t + 1) % f.size()]));
    }
    return {cs.begin(), cs.end()};
  }

  // Flips whose new diagonal is a target; the flipped-out edge becomes a target.
  void flip_stage(RotationSystem& r, std::vector<SurgeryOp>& ops, std::vector<Edge>& targets, std::vector<Edge> flipped,
                  std::size_t from) {
    if (done()) return;
    if (static_cast<int>(flipped.size()) == flips_wanted_) {
      deletion_stage(r, ops, targets);
      return;
    }
    const auto cand = candidates(r);
    for (std::size_t k = from; k < cand.size() && !done(); ++k) {
      const Edge e = cand[k];
      if (!r.adjacent(e.u, e.v)) continue;
      const Face f1 = face_walk(r, e.u, e.v), f2 = face_walk(r, e.v, e.u);
      if (f1.size() != 3 || f2.size() != 3 || f1[2] == f2[2]) continue;
      const Edge diag(f1[2], f2[2]);
      auto it = std::find(targets.begin(), targets.end(), diag);
      if (it == targets.end() || r.adjacent(diag.u, diag.v)) continue;
      RotationSystem r2 = flip_edge(r, e.u, e.v);
      auto t2 = targets;
      t2.erase(t2.begin() + (it - targets.begin()));
      t2.push_back(e);
      ops.push_back(FlipOp{r.label(e.u), r.label(e.v)});
      auto fl = flipped;
      fl.push_back(e);
      flip_stage(r2, ops, t2, fl, k + 1);
      ops.pop_back();
    }
  }

  void deletion_stage(const RotationSystem& r0, std::vector<SurgeryOp>& ops, const std::vector<Edge>& targets) {
    RotationSystem r = r0;
    deleted_.clear();
    is_cost_.clear();
    const std::size_t ops_mark = ops.size();
    for (const auto& p : h_.pre_deletions) {
      const Edge e(r.require(p.first), r.require(p.second));
      if (!r.adjacent(e.u, e.v)) fail(ErrorCode::domain, "pre-deletion " + p.first + "-" + p.second + " is not an edge");
      r.remove_edge(e.u, e.v);
      deleted_.push_back(e);
      is_cost_.push_back(false);
      ops.push_back(DeleteOp{r0.label(e.u), r0.label(e.v)});
    }
    cur_targets_ = targets;
    cand_ = candidates(r);
    delete_dfs(r, ops, 0, 0);
    ops.resize(ops_mark);
  }

  bool separates(const RotationSystem& r, Edge e) const {
    const Face fw = face_walk(r, e.u, e.v);
    for (std::size_t t = 0; t < fw.size(); ++t)
      if (fw[t] == e.v && fw[(t + 1) % fw.size()] == e.u) return false;
    return true;
  }

  void delete_dfs(RotationSystem& r, std::vector<SurgeryOp>& ops, std::size_t from, int extra) {
    if (done()) return;
    if (extra == dels_wanted_) {
      try_merge(r, ops);
      return;
    }
    for (std::size_t k = from; k < cand_.size() && !done(); ++k) {
      const Edge e = cand_[k];
      if (!r.adjacent(e.u, e.v) || !separates(r, e)) continue;
      if (r.degree(e.u) <= 2 || r.degree(e.v) <= 2) continue;
      RotationSystem r2 = r;
      r2.remove_edge(e.u, e.v);
      ops.push_back(DeleteOp{r.label(e.u), r.label(e.v)});
      deleted_.push_back(e);
      // costs first: a cost shortens the script by one chord
      for (int cost = 1; cost >= 0 && !done(); --cost) {
        if (cost) {
          const int used = static_cast<int>(std::count(is_cost_.begin(), is_cost_.end(), true));
          if (used >= h_.max_costs) continue;
          if (!cost_vertices_.empty() && !cost_vertices_.count(e.u) && !cost_vertices_.count(e.v)) continue;
        }
        is_cost_.push_back(cost != 0);
        delete_dfs(r2, ops, k + 1, extra + 1);
        is_cost_.pop_back();
      }
      deleted_.pop_back();
      ops.pop_back();
    }
  }

  using Item = std::vector<Edge>;  // alternatives; placing any one satisfies the item

  // With twins (u,v), an edge (u,w) may be replaced by (v,w).
  Item alternatives(Edge d) const {
    Item out{d};
    for (Vertex end : {d.u, d.v}) {
      auto it = twin_.find(end);
      if (it == twin_.end()) continue;
      const Vertex other = end == d.u ? d.v : d.u;
      if (it->second != other) out.push_back(Edge(it->second, other));
    }
    return out;
  }

  bool region_small_enough(const RotationSystem& r) const {
    if (spec_.max_disk_faces <= 0) return true;
    // every merged face may absorb at most max_disk_faces faces of the state before deletions
    const std::size_t limit = static_cast<std::size_t>(spec_.max_disk_faces);
    for (const Face& f : trace_faces(r).faces)
      if (f.size() > limit + 2 * (limit - 1) + 3) return false;
    return true;
  }

  void try_merge(RotationSystem& r, std::vector<SurgeryOp>& ops) {
    if (!region_small_enough(r)) return;
    std::vector<Item> pool;
    for (std::size_t i = 0; i < deleted_.size(); ++i)
      if (!is_cost_[i]) pool.push_back(alternatives(deleted_[i]));
    for (Edge t : cur_targets_) pool.push_back(alternatives(t));
    int nf = 0;
    const auto f = face_ids(r, &nf);
    std::vector<Mask> fmask(static_cast<std::size_t>(nf), 0);
    for (Vertex v = 0; v < r.vertex_count(); ++v)
      for (int x : f[static_cast<std::size_t>(v)]) fmask[static_cast<std::size_t>(x)] |= bit(v);
    std::vector<std::vector<int>> cof(pool.size());
    for (std::size_t t = 0; t < pool.size(); ++t) {
      bool any = false;
      for (Edge e : pool[t]) {
        if (r.adjacent(e.u, e.v)) continue;
        any = true;
        const Mask need = bit(e.u) | bit(e.v);
        for (int x = 0; x < nf; ++x)
          if ((fmask[static_cast<std::size_t>(x)] & need) == need) cof[t].push_back(x);
      }
      if (!any) return;
    }
    // Items with no face of their own must all land in the two merged faces.
    Mask need = 0;
    for (std::size_t t = 0; t < pool.size(); ++t)
      if (cof[t].empty() && pool[t].size() == 1) need |= bit(pool[t][0].u) | bit(pool[t][0].v);
    if (need) {
      bool coverable = false;
      for (int p = 0; p < nf && !coverable; ++p)
        for (int q = p + 1; q < nf && !coverable; ++q)
          coverable = ((fmask[static_cast<std::size_t>(p)] | fmask[static_cast<std::size_t>(q)]) & need) == need;
      if (!coverable) return;
    }
    std::vector<signed char> pair_ok;
    for (std::size_t k = 0; k < pool.size() && !done(); ++k) {
      std::vector<Item> rest;
      for (std::size_t t = 0; t < pool.size(); ++t)
        if (t != k) rest.push_back(pool[t]);
      pair_ok.assign(static_cast<std::size_t>(nf) * static_cast<std::size_t>(nf), -1);
      for (Edge es : pool[k]) {
        if (r.adjacent(es.u, es.v)) continue;
        for (std::size_t i = 0; i < r.degree(es.u) && !done(); ++i)
          for (std::size_t j = 0; j < r.degree(es.v) && !done(); ++j) {
            const int P = corner_face(r, f, es.u, i), Q = corner_face(r, f, es.v, j);
            if (P == Q) continue;
            signed char& cached = pair_ok[static_cast<std::size_t>(P) * static_cast<std::size_t>(nf) +
                                          static_cast<std::size_t>(Q)];
            if (cached == 0) continue;
            const Mask M = fmask[static_cast<std::size_t>(P)] | fmask[static_cast<std::size_t>(Q)];
            bool ok = cached == 1 || (M & need) == need;
            for (std::size_t t = 0; t < pool.size() && ok && cached < 0; ++t) {
              if (t == k) continue;
              bool good = false;
              for (Edge e : pool[t])
                if (!r.adjacent(e.u, e.v) && (M & (bit(e.u) | bit(e.v))) == (bit(e.u) | bit(e.v))) good = true;
              for (int x : cof[t])
                if (x != P && x != Q) good = true;
              ok = good;
            }
            cached = ok ? 1 : 0;
            if (!ok) continue;
            const Vertex ua = r.rotation(es.u)[i], va = r.rotation(es.v)[j];
            RotationSystem r2 = r;
            r2.insert_after(es.u, ua, es.v);
            r2.insert_after(es.v, va, es.u);
            ops.push_back(AddOp{r.label(es.u), r.label(es.v), r.label(ua), r.label(va)});
            ++budget_->nodes;
            place_chords(r2, rest, ops);
            ops.pop_back();
          }
      }
    }
  }

  void place_chords(RotationSystem& r, std::vector<Item>& todo, std::vector<SurgeryOp>& ops) {
    if (done()) return;
    if (todo.empty()) {
      if (surface_stats(r).genus != g0_ + 1) return;
      for (Edge t : targets_) {
        const Item alt = alternatives(t);
        if (std::none_of(alt.begin(), alt.end(), [&](Edge e) { return r.adjacent(e.u, e.v); })) return;
      }
      if (accept_ && !accept_(r)) return;
      stop_ = on_found_(r, ops);
      return;
    }
    const auto f = face_ids(r, nullptr);
    std::size_t best = 0;
    std::vector<std::tuple<Edge, std::size_t, std::size_t>> best_opts;
    bool have = false;
    for (std::size_t t = 0; t < todo.size(); ++t) {
      std::vector<std::tuple<Edge, std::size_t, std::size_t>> opts;
      for (Edge e : todo[t]) {
        if (r.adjacent(e.u, e.v)) continue;
        for (std::size_t i = 0; i < r.degree(e.u); ++i) {
          const int fi = corner_face(r, f, e.u, i);
          for (std::size_t j = 0; j < r.degree(e.v); ++j)
            if (corner_face(r, f, e.v, j) == fi) opts.emplace_back(e, i, j);
        }
      }
      if (opts.empty()) return;
      if (!have || opts.size() < best_opts.size()) {
        have = true;
        best = t;
        best_opts = std::move(opts);
      }
    }
    Item it = todo[best];
    todo.erase(todo.begin() + static_cast<long>(best));
    for (auto [e, i, j] : best_opts) {
      if (done()) break;
      const Vertex ua = r.rotation(e.u)[i], va = r.rotation(e.v)[j];
      RotationSystem r2 = r;
      r2.insert_after(e.u, ua, e.v);
      r2.insert_after(e.v, va, e.u);
      ops.push_back(AddOp{r.label(e.u), r.label(e.v), r.label(ua), r.label(va)});
      place_chords(r2, todo, ops);
      ops.pop_back();
    }
    todo.insert(todo.begin() + static_cast<long>(best), it);
  }

  const SearchSpec& spec_;
  const HandleSpec& h_;
  RotationSystem base_;
  std::vector<Edge> targets_;
  std::function<bool(const RotationSystem&)> accept_;
  Budget* budget_;
  std::int64_t g0_ = 0;
  std::map<Vertex, Vertex> twin_;
  std::set<Vertex> cost_vertices_;
  FoundFn on_found_;
  bool stop_ = false;
  int flips_wanted_ = 0, dels_wanted_ = 0;
  std::vector<Edge> cand_;
  std::vector<Edge> deleted_;
  std::vector<bool> is_cost_;
  std::vector<Edge> cur_targets_;
};

std::string bounds_text(const SearchSpec& spec) {
  return "max_deletions=" + std::to_string(spec.max_deletions) + " max_flips_per_handle=" +
         std::to_string(spec.max_flips_per_handle) + " max_disk_faces=" + std::to_string(spec.max_disk_faces) +
         " handles=" + std::to_string(spec.handles.size()) +
         (spec.max_seconds > 0 ? " max_seconds=" + std::to_string(spec.max_seconds) : "");
}

RotationSystem apply_ops(const RotationSystem& r, const std::vector<SurgeryOp>& ops) {
  SurgeryScript s;
  for (const auto& op : ops) s.push(op);
  return apply_script(r, s).rotation_system;
}

std::vector<SurgeryOp> handle_body(const std::vector<SurgeryOp>& ops) {
  std::vector<SurgeryOp> out;
  for (const auto& op : ops)
    if (!std::holds_alternative<HandleMark>(op)) out.push_back(op);
  return out;
}

}  // namespace

SearchOutcome search_completion(const RotationSystem& emb, const SearchSpec& spec) {
  emb.validate();
  if (emb.vertex_count() > 64) fail(ErrorCode::domain, "completion search supports at most 64 vertices");
  SearchOutcome outcome;
  outcome.bounds = bounds_text(spec);
  Budget budget;
  if (spec.max_seconds > 0)
    budget.deadline = std::chrono::steady_clock::now() + std::chrono::seconds(spec.max_seconds);

  const std::int64_t start_genus = surface_stats(emb).genus;
  // Without require_complete a result only has to add the listed edges, one genus per handle.
  auto certify = [&](const RotationSystem& r) {
    if (spec.require_complete) return verify_completion(r, spec.target_n);
    VerificationReport rep("handles added");
    const SurfaceStats s = surface_stats(r);
    rep.set_count("vertices", s.v_count);
    rep.set_count("edges", s.e_count);
    rep.set_count("faces", s.f_count);
    rep.set_count("genus", s.genus);
    const std::int64_t want = start_genus + static_cast<std::int64_t>(spec.handles.size());
    rep.add("genus rises by one per handle", s.genus == want,
            "genus " + std::to_string(s.genus) + ", expected " + std::to_string(want));
    std::vector<LabelPair> listed = spec.missing_edges;
    for (const auto& h : spec.handles) listed.insert(listed.end(), h.targets.begin(), h.targets.end());
    std::string absent;
    for (const auto& [a, b] : listed) {
      const auto u = r.find(a), v = r.find(b);
      if (!u || !v || !r.adjacent(*u, *v)) absent += " " + a + "-" + b;
    }
    rep.add("listed edges present", absent.empty(), absent.empty() ? "" : "absent:" + absent);
    return rep;
  };

  auto finish = [&](const RotationSystem& r, std::vector<SurgeryOp> ops) {
    SearchResult res;
    RotationSystem final_rot = r;
    if (!spec.post_ops.empty()) {
      final_rot = apply_ops(r, spec.post_ops);
      for (const auto& op : spec.post_ops) ops.push_back(op);
    }
    for (const auto& op : ops) res.script.push(op);
    // Soundness: replay from scratch and certify.
    const RotationSystem replay = apply_script(emb, res.script).rotation_system;
    res.certificate = certify(replay);
    res.certificate.add("replay reproduces the search state", replay == final_rot);
    res.final_stats = surface_stats(replay);
    return res;
  };

  auto complete_after_post = [&](const RotationSystem& r) {
    try {
      const RotationSystem f = spec.post_ops.empty() ? r : apply_ops(r, spec.post_ops);
      return certify(f).passed();
    } catch (const Error&) {
      return false;
    }
  };

  if (spec.handles.empty()) {
    if (complete_after_post(emb)) outcome.results.push_back(finish(emb, {}));
    outcome.exhausted = outcome.results.empty();
    return outcome;
  }

  std::vector<SurgeryOp> first_body;  // handle 1's ops, for shift reuse
  std::function<void(std::size_t, const RotationSystem&, std::vector<SurgeryOp>&)> go =
      [&](std::size_t hi, const RotationSystem& r, std::vector<SurgeryOp>& ops) {
        if (static_cast<int>(outcome.results.size()) >= spec.max_results) return;
        const HandleSpec& h = spec.handles[hi];
        const bool last = hi + 1 == spec.handles.size();
        const std::string name = h.name.empty() ? "near " + h.anchors.front() : h.name;
        if (hi > 0 && spec.symmetry_shift) {
          const int m = spec.shift_modulus ? spec.shift_modulus : spec.target_n;
          SurgeryScript body;
          for (const auto& op : first_body) body.push(op);
          const SurgeryScript shifted = shift_script(body, *spec.symmetry_shift * static_cast<int>(hi), m);
          RotationSystem next;
          try {
            next = apply_ops(r, shifted.ops());
          } catch (const Error&) {
            return;  // the shifted template does not apply here
          }
          if (surface_stats(next).genus != surface_stats(r).genus + 1) return;
          if (last && !complete_after_post(next)) return;
          const std::size_t mark = ops.size();
          ops.push_back(HandleMark{name});
          for (const auto& op : shifted.ops()) ops.push_back(op);
          if (last)
            outcome.results.push_back(finish(next, ops));
          else
            go(hi + 1, next, ops);
          ops.resize(mark);
          return;
        }
        std::vector<Edge> targets;
        if (h.targets.empty()) {
          for (Vertex a = 0; a < r.vertex_count(); ++a)
            for (Vertex b = a + 1; b < r.vertex_count(); ++b)
              if (!r.adjacent(a, b)) targets.emplace_back(a, b);
        } else {
          for (const auto& p : h.targets) targets.emplace_back(r.require(p.first), r.require(p.second));
        }
        std::function<bool(const RotationSystem&)> accept;
        if (last) accept = complete_after_post;
        HandleSearch hs(spec, h, r, targets, accept, &budget);
        hs.run([&](const RotationSystem& found, const std::vector<SurgeryOp>& body) {
          const std::size_t mark = ops.size();
          ops.push_back(HandleMark{name});
          for (const auto& op : body) ops.push_back(op);
          if (hi == 0) first_body = handle_body(body);
          if (last)
            outcome.results.push_back(finish(found, ops));
          else
            go(hi + 1, found, ops);
          ops.resize(mark);
          return static_cast<int>(outcome.results.size()) >= spec.max_results;
        });
      };
  std::vector<SurgeryOp> ops;
  go(0, emb, ops);
  outcome.nodes = budget.nodes;
  outcome.timed_out = budget.timed_out;
  std::sort(outcome.results.begin(), outcome.results.end(), [](const SearchResult& a, const SearchResult& b) {
    return write_script(a.script) < write_script(b.script);
  });
  outcome.exhausted = outcome.results.empty() && !outcome.timed_out;
  return outcome;
}

}  // namespace rotkit

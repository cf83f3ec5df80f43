#include "rotkit/current_graph.hpp"

#include "rotkit/error.hpp"
#include "rotkit/text_io.hpp"

#include <algorithm>
#include <charconv>
#include <map>
#include <numeric>

namespace rotkit {

std::optional<int> CurrentGraph::find_node(std::string_view id) const {
  for (std::size_t i = 0; i < nodes.size(); ++i)
    if (nodes[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

std::optional<int> CurrentGraph::find_arc(std::string_view id) const {
  for (std::size_t i = 0; i < arcs.size(); ++i)
    if (arcs[i].id == id) return static_cast<int>(i);
  return std::nullopt;
}

namespace {

[[noreturn]] void parse_error(std::size_t line_no, const std::string& msg) {
  fail(ErrorCode::parse, "line " + std::to_string(line_no) + ": " + msg);
}

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

int mod(long long x, int m) { return static_cast<int>(((x % m) + m) % m); }

int order_of(int c, int m) { return m / std::gcd(mod(c, m), m); }

std::string end_text(const CurrentGraph& cg, ArcEnd e) {
  return (e.head ? "-" : "+") + cg.arcs[static_cast<std::size_t>(e.arc)].id;
}

std::string dart_text(const CurrentGraph& cg, Dart d) {
  return cg.arcs[static_cast<std::size_t>(d.arc)].id + (d.forward ? " +" : " -");
}

// Position of every arc end in its node's effective rotation.
struct EndIndex {
  std::vector<std::vector<ArcEnd>> rot;       // per node, hollow already reversed
  std::map<std::pair<int, bool>, std::pair<int, int>> where;  // (arc, head) -> (node, position)
};

EndIndex index_ends(const CurrentGraph& cg) {
  EndIndex ix;
  for (std::size_t v = 0; v < cg.nodes.size(); ++v) {
    auto r = cg.nodes[v].rotation;
    if (cg.nodes[v].hollow) std::reverse(r.begin(), r.end());
    for (std::size_t p = 0; p < r.size(); ++p)
      ix.where[{r[p].arc, r[p].head}] = {static_cast<int>(v), static_cast<int>(p)};
    ix.rot.push_back(std::move(r));
  }
  return ix;
}

int dart_index(Dart d) { return 2 * d.arc + (d.forward ? 0 : 1); }

Dart next_dart(const CurrentGraph& cg, const EndIndex& ix, Dart d) {
  const auto& a = cg.arcs[static_cast<std::size_t>(d.arc)];
  if (d.forward && a.endmark) return {d.arc, false};
  const auto [v, p] = ix.where.at({d.arc, d.forward});
  const auto& r = ix.rot[static_cast<std::size_t>(v)];
  const ArcEnd e = r[(static_cast<std::size_t>(p) + 1) % r.size()];
  return {e.arc, !e.head};
}

// Node reached by a dart, or -1 for an omitted end vertex.
int arrival_node(const CurrentGraph& cg, Dart d) {
  const auto& a = cg.arcs[static_cast<std::size_t>(d.arc)];
  return d.forward ? a.head : a.tail;
}

}  // namespace

CurrentGraph parse_current_graph(std::string_view text) {
  CurrentGraph cg;
  bool have_header = false;
  struct PendingNode {
    std::size_t line;
    std::vector<std::string> ends;
  };
  struct PendingArc {
    std::size_t line;
    std::string tail, head;
  };
  struct PendingStart {
    std::size_t line;
    std::string arc;
  };
  std::vector<PendingNode> pn;
  std::vector<PendingArc> pa;
  std::vector<PendingStart> ps;

  std::size_t line_no = 0, pos = 0;
  while (pos < text.size()) {
    auto nl = text.find('\n', pos);
    if (nl == std::string_view::npos) nl = text.size();
    const std::string line = trim(text.substr(pos, nl - pos));
    pos = nl + 1;
    ++line_no;
    if (line.empty()) continue;
    if (line[0] == '#') {
      if (have_header) parse_error(line_no, "comments are only allowed before the header");
      cg.comments.push_back(line);
      continue;
    }
    const auto t = split_tokens(line);
    if (t[0] == "group") {
      if (have_header) parse_error(line_no, "duplicate header");
      if (t.size() != 4 || t[1].size() < 2 || t[1][0] != 'Z' || !parse_int(std::string_view(t[1]).substr(1), cg.m) ||
          cg.m < 2 || t[2] != "index" || !parse_int(t[3], cg.k) || cg.k < 1)
        parse_error(line_no, "expected 'group Z<m> index <k>'");
      have_header = true;
      continue;
    }
    if (!have_header) parse_error(line_no, "missing 'group' header");
    if (t[0] == "node") {
      if (t.size() < 3) parse_error(line_no, "node line too short");
      CurrentNode n;
      n.id = t[1];
      std::size_t i = 2;
      if (i < t.size() && (t[i] == "solid" || t[i] == "hollow")) n.hollow = t[i++] == "hollow";
      if (i < t.size() && t[i] == "vortex") {
        if (i + 1 >= t.size()) parse_error(line_no, "vortex needs a letter");
        n.vortex = t[i + 1];
        i += 2;
      }
      if (i >= t.size() || t[i] != "rotation") parse_error(line_no, "expected 'rotation'");
      std::string joined;
      for (++i; i < t.size(); ++i) joined += t[i];
      PendingNode p{line_no, {}};
      std::size_t s = 0;
      while (s < joined.size()) {
        auto c = joined.find(',', s);
        if (c == std::string::npos) c = joined.size();
        p.ends.push_back(joined.substr(s, c - s));
        s = c + 1;
      }
      if (p.ends.empty()) parse_error(line_no, "empty rotation");
      if (cg.find_node(n.id)) parse_error(line_no, "node " + n.id + " declared twice");
      cg.nodes.push_back(std::move(n));
      pn.push_back(std::move(p));
    } else if (t[0] == "arc") {
      if (t.size() != 6 && !(t.size() == 7 && t[6] == "endmark")) parse_error(line_no, "expected 'arc <id> <tail> <head> current <c> [endmark]'");
      if (t[4] != "current") parse_error(line_no, "expected 'current'");
      CurrentArc a;
      a.id = t[1];
      if (!parse_int(t[5], a.current)) parse_error(line_no, "bad current '" + t[5] + "'");
      a.endmark = t.size() == 7;
      if (cg.find_arc(a.id)) parse_error(line_no, "arc " + a.id + " declared twice");
      cg.arcs.push_back(std::move(a));
      pa.push_back({line_no, t[2], t[3]});
    } else if (t[0] == "circuit") {
      CircuitStart s;
      if (t.size() != 5 || t[2] != "starts" || !parse_int(t[1], s.circuit_id) || (t[4] != "+" && t[4] != "-"))
        parse_error(line_no, "expected 'circuit <id> starts <arc> <+|->'");
      s.dart.forward = t[4] == "+";
      cg.starts.push_back(s);
      ps.push_back({line_no, t[3]});
    } else {
      parse_error(line_no, "unknown line kind '" + t[0] + "'");
    }
  }
  if (!have_header) fail(ErrorCode::parse, "missing 'group' header");

  for (std::size_t i = 0; i < cg.arcs.size(); ++i) {
    auto& a = cg.arcs[i];
    auto tail = cg.find_node(pa[i].tail);
    if (!tail) parse_error(pa[i].line, "unknown node '" + pa[i].tail + "'");
    a.tail = *tail;
    if (a.endmark) {
      if (cg.find_node(pa[i].head)) parse_error(pa[i].line, "endmarked arc must end at an omitted vertex");
      a.head = -1;
      a.head_name = pa[i].head;
    } else {
      auto head = cg.find_node(pa[i].head);
      if (!head) parse_error(pa[i].line, "unknown node '" + pa[i].head + "'");
      a.head = *head;
    }
  }
  for (std::size_t v = 0; v < cg.nodes.size(); ++v) {
    for (const auto& e : pn[v].ends) {
      if (e.size() < 2 || (e[0] != '+' && e[0] != '-')) parse_error(pn[v].line, "bad arc end '" + e + "'");
      auto a = cg.find_arc(std::string_view(e).substr(1));
      if (!a) parse_error(pn[v].line, "unknown arc '" + e.substr(1) + "'");
      cg.nodes[v].rotation.push_back({*a, e[0] == '-'});
    }
  }
  for (std::size_t i = 0; i < cg.starts.size(); ++i) {
    auto a = cg.find_arc(ps[i].arc);
    if (!a) parse_error(ps[i].line, "unknown arc '" + ps[i].arc + "'");
    cg.starts[i].dart.arc = *a;
  }
  validate_current_graph(cg);
  return cg;
}

std::string write_current_graph(const CurrentGraph& cg) {
  std::string out;
  for (const auto& c : cg.comments) out += c + "\n";
  out += "group Z" + std::to_string(cg.m) + " index " + std::to_string(cg.k) + "\n";
  for (const auto& n : cg.nodes) {
    out += "node " + n.id;
    if (n.hollow) out += " hollow";
    if (!n.vortex.empty()) out += " vortex " + n.vortex;
    out += " rotation ";
    for (std::size_t i = 0; i < n.rotation.size(); ++i) out += (i ? "," : "") + end_text(cg, n.rotation[i]);
    out += "\n";
  }
  for (const auto& a : cg.arcs) {
    out += "arc " + a.id + " " + cg.nodes[static_cast<std::size_t>(a.tail)].id + " " +
           (a.endmark ? a.head_name : cg.nodes[static_cast<std::size_t>(a.head)].id) + " current " +
           std::to_string(a.current) + (a.endmark ? " endmark" : "") + "\n";
  }
  for (const auto& s : cg.starts)
    out += "circuit " + std::to_string(s.circuit_id) + " starts " + dart_text(cg, s.dart) + "\n";
  return out;
}

void validate_current_graph(const CurrentGraph& cg) {
  if (cg.m < 2 || cg.k < 1) fail(ErrorCode::structure, "group order must be >= 2 and index >= 1");
  std::map<std::pair<int, bool>, int> seen;
  for (std::size_t v = 0; v < cg.nodes.size(); ++v) {
    if (cg.nodes[v].rotation.empty()) fail(ErrorCode::structure, "node " + cg.nodes[v].id + " has no arcs");
    for (const auto& e : cg.nodes[v].rotation) {
      if (e.arc < 0 || e.arc >= static_cast<int>(cg.arcs.size()))
        fail(ErrorCode::structure, "node " + cg.nodes[v].id + " references a missing arc");
      if (!seen.emplace(std::make_pair(e.arc, e.head), static_cast<int>(v)).second)
        fail(ErrorCode::structure, "arc end " + end_text(cg, e) + " appears twice");
    }
  }
  for (std::size_t i = 0; i < cg.arcs.size(); ++i) {
    const auto& a = cg.arcs[i];
    if (mod(a.current, cg.m) == 0) fail(ErrorCode::structure, "arc " + a.id + " carries the zero current");
    auto t = seen.find({static_cast<int>(i), false});
    if (t == seen.end() || t->second != a.tail)
      fail(ErrorCode::structure, "tail end of arc " + a.id + " is not in the rotation of " +
                                     cg.nodes[static_cast<std::size_t>(a.tail)].id);
    auto h = seen.find({static_cast<int>(i), true});
    if (a.endmark) {
      if (h != seen.end()) fail(ErrorCode::structure, "endmarked arc " + a.id + " has its head end at a node");
    } else if (h == seen.end() || h->second != a.head) {
      fail(ErrorCode::structure, "head end of arc " + a.id + " is not in the rotation of " +
                                     cg.nodes[static_cast<std::size_t>(a.head)].id);
    }
  }
  for (const auto& s : cg.starts)
    if (s.circuit_id < 0 || s.circuit_id >= cg.k)
      fail(ErrorCode::structure, "circuit id " + std::to_string(s.circuit_id) + " outside 0.." + std::to_string(cg.k - 1));
}

std::vector<Circuit> trace_circuits(const CurrentGraph& cg) {
  validate_current_graph(cg);
  const EndIndex ix = index_ends(cg);
  std::vector<int> owner(2 * cg.arcs.size(), -1);
  std::vector<Circuit> circuits;
  for (std::size_t a = 0; a < cg.arcs.size(); ++a) {
    for (bool fwd : {true, false}) {
      Dart d{static_cast<int>(a), fwd};
      if (owner[static_cast<std::size_t>(dart_index(d))] >= 0) continue;
      Circuit c;
      const int cid = static_cast<int>(circuits.size());
      while (owner[static_cast<std::size_t>(dart_index(d))] < 0) {
        owner[static_cast<std::size_t>(dart_index(d))] = cid;
        c.walk.push_back(d);
        d = next_dart(cg, ix, d);
      }
      circuits.push_back(std::move(c));
    }
  }
  if (static_cast<int>(circuits.size()) != cg.k)
    fail(ErrorCode::structure, "not an index-" + std::to_string(cg.k) + " embedding: traced " +
                                   std::to_string(circuits.size()) + " circuits");

  std::vector<int> id(circuits.size(), -1);
  std::vector<char> used(static_cast<std::size_t>(cg.k), 0);
  for (const auto& s : cg.starts) {
    const int c = owner[static_cast<std::size_t>(dart_index(s.dart))];
    if (id[static_cast<std::size_t>(c)] >= 0 || used[static_cast<std::size_t>(s.circuit_id)])
      fail(ErrorCode::structure, "circuit " + std::to_string(s.circuit_id) + " assigned twice");
    id[static_cast<std::size_t>(c)] = s.circuit_id;
    used[static_cast<std::size_t>(s.circuit_id)] = 1;
    auto& w = circuits[static_cast<std::size_t>(c)].walk;
    std::rotate(w.begin(), std::find(w.begin(), w.end(), s.dart), w.end());
  }
  int next_free = 0;
  for (std::size_t c = 0; c < circuits.size(); ++c) {
    if (id[c] >= 0) continue;
    while (used[static_cast<std::size_t>(next_free)]) ++next_free;
    id[c] = next_free;
    used[static_cast<std::size_t>(next_free)] = 1;
  }
  for (std::size_t c = 0; c < circuits.size(); ++c) circuits[c].id = id[c];
  std::sort(circuits.begin(), circuits.end(), [](const Circuit& a, const Circuit& b) { return a.id < b.id; });
  return circuits;
}

CircuitLog circuit_log(const CurrentGraph& cg, const Circuit& c) {
  CircuitLog log;
  log.circuit_id = c.id;
  for (const Dart d : c.walk) {
    const auto& a = cg.arcs[static_cast<std::size_t>(d.arc)];
    const bool condensed = a.endmark && mod(2LL * a.current, cg.m) == 0;
    if (!(condensed && !d.forward)) log.entries.push_back(LogEntry::of(mod(d.forward ? a.current : -a.current, cg.m)));
    const int v = arrival_node(cg, d);
    if (v >= 0 && !cg.nodes[static_cast<std::size_t>(v)].vortex.empty())
      log.entries.push_back(LogEntry::of(cg.nodes[static_cast<std::size_t>(v)].vortex));
  }
  return log;
}

LogBundle current_graph_logs(const CurrentGraph& cg) {
  LogBundle b;
  b.m = cg.m;
  b.k = cg.k;
  for (const auto& n : cg.nodes)
    if (!n.vortex.empty() && std::find(b.letters.begin(), b.letters.end(), n.vortex) == b.letters.end())
      b.letters.push_back(n.vortex);
  for (const auto& c : trace_circuits(cg)) b.logs.push_back(circuit_log(cg, c));
  return b;
}

VerificationReport check_log_bundle(const std::vector<CircuitLog>& logs, int m, int k,
                                    const std::vector<std::string>& letters) {
  VerificationReport rep("log bundle Z" + std::to_string(m) + " index " + std::to_string(k));
  rep.set_count("logs", static_cast<std::int64_t>(logs.size()));
  if (static_cast<int>(logs.size()) == k)
    rep.pass("log count equals index");
  else
    rep.fail("log count equals index", "found " + std::to_string(logs.size()) + " logs");

  const int half = m % 2 == 0 ? m / 2 : -1;
  std::vector<int> half_counts;
  for (const auto& log : logs) {
    const std::string at = "circuit [" + std::to_string(log.circuit_id) + "]";
    std::map<int, int> res;
    std::map<std::string, int> let;
    std::string stray;
    for (const auto& e : log.entries) {
      if (e.is_letter()) {
        ++let[e.letter];
        if (std::find(letters.begin(), letters.end(), e.letter) == letters.end() && stray.empty())
          stray = "undeclared letter " + e.letter;
      } else if (e.residue <= 0 || e.residue >= m) {
        if (stray.empty()) stray = "element " + std::to_string(e.residue) + " outside 1.." + std::to_string(m - 1);
      } else {
        ++res[e.residue];
      }
    }
    std::string c4;
    for (const auto& L : letters) {
      const int n = let.count(L) ? let[L] : 0;
      if (n != 1 && c4.empty()) c4 = at + ": letter " + L + " appears " + std::to_string(n) + " times";
    }
    if (c4.empty())
      rep.pass("C4 " + at + " meets every vortex once");
    else
      rep.fail("C4 " + at + " meets every vortex once", c4);

    std::string c5 = stray.empty() ? "" : at + ": " + stray;
    for (int r = 1; r < m && c5.empty(); ++r) {
      const int n = res.count(r) ? res[r] : 0;
      if (r == half) {
        if (n > 1) c5 = at + ": element " + std::to_string(r) + " appears " + std::to_string(n) + " times";
        half_counts.push_back(n);
      } else if (n == 0) {
        c5 = at + ": element " + std::to_string(r) + " missing";
      } else if (n > 1) {
        c5 = at + ": element " + std::to_string(r) + " appears " + std::to_string(n) + " times";
      }
    }
    if (c5.empty())
      rep.pass("C5 " + at + " lists each element once");
    else
      rep.fail("C5 " + at + " lists each element once", c5);
  }
  if (half > 0) {
    const bool uniform = std::adjacent_find(half_counts.begin(), half_counts.end(), std::not_equal_to<>()) == half_counts.end();
    const std::string name = "order-2 element " + std::to_string(half) + " present in all logs or in none";
    if (uniform)
      rep.pass(name);
    else
      rep.fail(name, "present in some logs only");
    rep.set_count("order2_present", !half_counts.empty() && half_counts.front() > 0 ? 1 : 0);
  }
  return rep;
}

VerificationReport check_log_bundle(const LogBundle& bundle) {
  VerificationReport rep = check_log_bundle(bundle.logs, bundle.m, bundle.k, bundle.letters);
  for (std::size_t i = 0; i < bundle.logs.size(); ++i) {
    const std::string name = "log [" + std::to_string(i) + "] numbered in order";
    if (bundle.logs[i].circuit_id == static_cast<int>(i))
      rep.pass(name);
    else
      rep.fail(name, "found id " + std::to_string(bundle.logs[i].circuit_id));
  }
  return rep;
}

VerificationReport check_principles(const CurrentGraph& cg) {
  VerificationReport rep("current graph Z" + std::to_string(cg.m) + " index " + std::to_string(cg.k));
  std::vector<Circuit> circuits;
  try {
    circuits = trace_circuits(cg);
  } catch (const Error& e) {
    rep.fail("circuits", e.what());
    return rep;
  }
  rep.pass("circuits");
  rep.set_count("circuits", static_cast<std::int64_t>(circuits.size()));
  rep.set_count("nodes", static_cast<std::int64_t>(cg.nodes.size()));
  rep.set_count("arcs", static_cast<std::int64_t>(cg.arcs.size()));

  for (const auto& n : cg.nodes) {
    const int deg = static_cast<int>(n.rotation.size());
    const bool ok = n.vortex.empty() ? (deg == 3 || deg == 1) : deg == cg.k;
    const std::string name = "C1 degree of " + n.id;
    if (ok)
      rep.pass(name);
    else
      rep.fail(name, "degree " + std::to_string(deg) + (n.vortex.empty() ? "" : " at vortex " + n.vortex));
  }

  for (std::size_t v = 0; v < cg.nodes.size(); ++v) {
    const auto& n = cg.nodes[v];
    if (!n.vortex.empty() || n.rotation.size() != 3) continue;
    long long in = 0;
    for (const auto& e : n.rotation) in += e.head ? cg.arcs[static_cast<std::size_t>(e.arc)].current
                                                   : -cg.arcs[static_cast<std::size_t>(e.arc)].current;
    const std::string name = "C2 KCL at " + n.id;
    if (mod(in, cg.m) == 0)
      rep.pass(name);
    else
      rep.fail(name, "incoming currents sum to " + std::to_string(mod(in, cg.m)));
  }

  auto c3 = [&](const std::string& where, int current) {
    const int ord = order_of(current, cg.m);
    const std::string name = "C3 current at degree-1 vertex " + where;
    if (ord == 2 || ord == 3)
      rep.pass(name);
    else
      rep.fail(name, "current " + std::to_string(mod(current, cg.m)) + " has order " + std::to_string(ord));
  };
  for (const auto& a : cg.arcs)
    if (a.endmark) c3(a.head_name, a.current);
  for (const auto& n : cg.nodes)
    if (n.vortex.empty() && n.rotation.size() == 1) c3(n.id, cg.arcs[static_cast<std::size_t>(n.rotation[0].arc)].current);

  for (std::size_t v = 0; v < cg.nodes.size(); ++v) {
    if (cg.nodes[v].vortex.empty()) continue;
    for (const auto& c : circuits) {
      const bool meets = std::any_of(c.walk.begin(), c.walk.end(),
                                     [&](Dart d) { return arrival_node(cg, d) == static_cast<int>(v); });
      const std::string name = "C4 vortex " + cg.nodes[v].vortex + " on circuit [" + std::to_string(c.id) + "]";
      if (meets)
        rep.pass(name);
      else
        rep.fail(name, "circuit [" + std::to_string(c.id) + "] misses " + cg.nodes[v].id);
    }
  }

  std::vector<CircuitLog> logs;
  for (const auto& c : circuits) logs.push_back(circuit_log(cg, c));
  std::vector<std::string> letters;
  for (const auto& n : cg.nodes)
    if (!n.vortex.empty()) letters.push_back(n.vortex);
  const VerificationReport c5 = check_log_bundle(logs, cg.m, cg.k, letters);
  for (const auto& e : c5.entries())
    if (e.check.rfind("C5", 0) == 0) rep.add(e.check, e.passed, e.witness);

  // C6 in terms of the traced circuits, then over id permutations if unassigned.
  std::vector<int> side_fwd(cg.arcs.size(), -1), side_back(cg.arcs.size(), -1);
  for (std::size_t c = 0; c < circuits.size(); ++c)
    for (const Dart d : circuits[c].walk)
      (d.forward ? side_fwd : side_back)[static_cast<std::size_t>(d.arc)] = static_cast<int>(c);
  auto c6_violation = [&](const std::vector<int>& ids) -> std::string {
    for (std::size_t a = 0; a < cg.arcs.size(); ++a) {
      if (cg.arcs[a].endmark) continue;
      const int ia = ids[static_cast<std::size_t>(side_fwd[a])], ib = ids[static_cast<std::size_t>(side_back[a])];
      if (mod(cg.arcs[a].current, cg.k) != mod(ib - ia, cg.k))
        return "arc " + cg.arcs[a].id + ": current " + std::to_string(cg.arcs[a].current) + ", circuits [" +
               std::to_string(ia) + "] and [" + std::to_string(ib) + "]";
    }
    return {};
  };
  std::vector<int> ids;
  for (const auto& c : circuits) ids.push_back(c.id);
  if (!cg.starts.empty()) {
    const std::string v = c6_violation(ids);
    if (v.empty())
      rep.pass("C6 currents match circuit ids");
    else
      rep.fail("C6 currents match circuit ids", v);
  } else {
    std::vector<int> perm(circuits.size());
    std::iota(perm.begin(), perm.end(), 0);
    std::string first_violation, found;
    do {
      const std::string v = c6_violation(perm);
      if (v.empty()) {
        for (std::size_t c = 0; c < perm.size(); ++c)
          found += (c ? ", " : "") + std::string("traced ") + std::to_string(c) + " -> [" + std::to_string(perm[c]) + "]";
        break;
      }
      if (first_violation.empty()) first_violation = v;
    } while (std::next_permutation(perm.begin(), perm.end()));
    if (!found.empty())
      rep.add("C6 currents match some circuit id assignment", true, found);
    else
      rep.fail("C6 currents match some circuit id assignment", first_violation);
  }
  return rep;
}

}  // namespace rotkit

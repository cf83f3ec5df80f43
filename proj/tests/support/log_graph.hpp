#pragma once
// Rebuilds an embedded current graph whose circuits read the given logs. Arcs
// pair the entry r in log [a] with -r in log [a+r mod k]; vertices are the
// cycles of the end permutation implied by consecutive log entries.
#include "rotkit/current_graph.hpp"

#include <map>
#include <stdexcept>

namespace testsupport {

inline rotkit::CurrentGraph current_graph_from_logs(const rotkit::LogBundle& b) {
  using namespace rotkit;
  struct D {
    int arc;
    bool forward;
  };
  std::vector<D> darts;
  std::vector<std::vector<int>> walk(b.logs.size());
  std::vector<std::vector<std::string>> letter_after(b.logs.size());
  std::map<std::pair<int, int>, int> entry_dart;  // (log, residue) -> dart of that reading
  CurrentGraph cg;
  cg.m = b.m;
  cg.k = b.k;
  auto md = [&](int x) { return ((x % b.m) + b.m) % b.m; };
  auto mk = [&](int x) { return ((x % b.k) + b.k) % b.k; };

  for (std::size_t a = 0; a < b.logs.size(); ++a) {
    for (const auto& e : b.logs[a].entries) {
      if (e.is_letter()) {
        if (walk[a].empty()) throw std::runtime_error("log starts with a letter");
        letter_after[a].back() = e.letter;
        continue;
      }
      const int r = e.residue;
      if (md(2 * r) == 0) {
        CurrentArc arc{"e" + std::to_string(cg.arcs.size()), 0, -1, "t" + std::to_string(cg.arcs.size()), r, true};
        const int id = static_cast<int>(cg.arcs.size());
        cg.arcs.push_back(arc);
        darts.push_back({id, true});
        walk[a].push_back(static_cast<int>(darts.size()) - 1);
        letter_after[a].push_back({});
        darts.push_back({id, false});
        walk[a].push_back(static_cast<int>(darts.size()) - 1);
        letter_after[a].push_back({});
        continue;
      }
      const int partner_log = mk(static_cast<int>(a) + (r <= b.m / 2 ? r : -md(-r)));
      int arc_id;
      bool forward = r <= b.m / 2;
      auto it = entry_dart.find({partner_log, md(-r)});
      if (it != entry_dart.end()) {
        arc_id = darts[static_cast<std::size_t>(it->second)].arc;
      } else {
        arc_id = static_cast<int>(cg.arcs.size());
        cg.arcs.push_back({"e" + std::to_string(arc_id), 0, 0, {}, forward ? r : md(-r), false});
      }
      darts.push_back({arc_id, forward});
      const int d = static_cast<int>(darts.size()) - 1;
      entry_dart[{static_cast<int>(a), r}] = d;
      walk[a].push_back(d);
      letter_after[a].push_back({});
    }
  }
  std::map<std::pair<int, bool>, int> by_side;
  for (std::size_t d = 0; d < darts.size(); ++d) by_side[{darts[d].arc, darts[d].forward}] = static_cast<int>(d);
  auto reverse = [&](int d) { return by_side.at({darts[static_cast<std::size_t>(d)].arc, !darts[static_cast<std::size_t>(d)].forward}); };

  std::vector<int> sigma(darts.size(), -1);
  std::vector<std::string> vortex_of(darts.size());
  for (std::size_t a = 0; a < walk.size(); ++a)
    for (std::size_t i = 0; i < walk[a].size(); ++i) {
      const int d = walk[a][i], nxt = walk[a][(i + 1) % walk[a].size()];
      const int rd = reverse(d);
      if (sigma[static_cast<std::size_t>(rd)] >= 0) throw std::runtime_error("logs are not a rotation");
      sigma[static_cast<std::size_t>(rd)] = nxt;
      if (!letter_after[a][i].empty()) vortex_of[static_cast<std::size_t>(nxt)] = letter_after[a][i];
    }

  std::vector<int> node_of(darts.size(), -1);
  for (std::size_t s = 0; s < darts.size(); ++s) {
    if (node_of[s] >= 0) continue;
    const auto& arc0 = cg.arcs[static_cast<std::size_t>(darts[s].arc)];
    if (arc0.endmark && !darts[s].forward) continue;  // the omitted end vertex
    CurrentNode n;
    const int id = static_cast<int>(cg.nodes.size());
    int d = static_cast<int>(s);
    do {
      node_of[static_cast<std::size_t>(d)] = id;
      n.rotation.push_back({darts[static_cast<std::size_t>(d)].arc, !darts[static_cast<std::size_t>(d)].forward});
      if (!vortex_of[static_cast<std::size_t>(d)].empty()) n.vortex = vortex_of[static_cast<std::size_t>(d)];
      d = sigma[static_cast<std::size_t>(d)];
    } while (d != static_cast<int>(s));
    n.id = n.vortex.empty() ? "v" + std::to_string(id) : n.vortex;
    cg.nodes.push_back(std::move(n));
  }
  for (std::size_t d = 0; d < darts.size(); ++d) {
    auto& arc = cg.arcs[static_cast<std::size_t>(darts[d].arc)];
    if (node_of[d] < 0) continue;
    if (darts[d].forward)
      arc.tail = node_of[d];
    else
      arc.head = node_of[d];
  }
  for (std::size_t a = 0; a < walk.size(); ++a) {
    const auto& d = darts[static_cast<std::size_t>(walk[a][0])];
    cg.starts.push_back({static_cast<int>(a), {d.arc, d.forward}});
  }
  return cg;
}

}  // namespace testsupport
